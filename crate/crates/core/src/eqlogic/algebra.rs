use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::presentations::{cat_presentation, ccc_ops, hom_sort, CccOp, Presentation};
use super::{EqLogicError, Equation, Signature, Term};
use crate::fincat::{CCStructure, CategoryBuilder, FinCategory, MorId, ObjId};
use crate::freeccc::{translate_object, ObjExpr};

/// Valuations map `(name, sort)` to an element index.
pub type Valuation = BTreeMap<(String, String), usize>;

/// Finite carriers per sort and total operation tables.
///
/// Elements of a sort are indices into its carrier list. The table of an
/// operation is indexed by its arguments in row-major order, the last
/// argument varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    signature: Signature,
    carriers: BTreeMap<String, Vec<String>>,
    tables: BTreeMap<String, Vec<usize>>,
}

impl FinAlgebra {
    pub fn new(
        signature: Signature,
        carriers: BTreeMap<String, Vec<String>>,
        tables: BTreeMap<String, Vec<usize>>,
    ) -> Result<Self, EqLogicError> {
        for s in signature.sorts() {
            if !carriers.contains_key(s) {
                return Err(EqLogicError::Algebra(format!("no carrier for sort `{s}`")));
            }
        }
        if let Some(s) = carriers.keys().find(|s| !signature.has_sort(s)) {
            return Err(EqLogicError::UnknownSort(s.clone()));
        }
        if let Some(o) = tables.keys().find(|o| signature.op(o).is_none()) {
            return Err(EqLogicError::UnknownOp(o.clone()));
        }
        for op in signature.ops() {
            let t = tables.get(&op.name).ok_or_else(|| EqLogicError::Algebra(format!("no table for `{}`", op.name)))?;
            let rows: usize = op.args.iter().map(|s| carriers[s].len()).product();
            if t.len() != rows {
                return Err(EqLogicError::Algebra(format!(
                    "table of `{}` has {} entries, expected {rows}",
                    op.name,
                    t.len()
                )));
            }
            let n = carriers[&op.result].len();
            if let Some(v) = t.iter().find(|&&v| v >= n) {
                return Err(EqLogicError::Algebra(format!(
                    "table of `{}` has entry {v} outside `{}`",
                    op.name, op.result
                )));
            }
        }
        Ok(FinAlgebra { signature, carriers, tables })
    }

    /// Tables filled from `f(op, args)`.
    pub fn from_fn(
        signature: Signature,
        carriers: BTreeMap<String, Vec<String>>,
        mut f: impl FnMut(&str, &[usize]) -> usize,
    ) -> Result<Self, EqLogicError> {
        let mut tables = BTreeMap::new();
        for op in signature.ops() {
            let sizes: Vec<usize> = op.args.iter().map(|s| carriers.get(s).map_or(0, Vec::len)).collect();
            let mut t = Vec::new();
            for_each_tuple(&sizes, |args| t.push(f(&op.name, args)));
            tables.insert(op.name.clone(), t);
        }
        Self::new(signature, carriers, tables)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn carrier(&self, sort: &str) -> &[String] {
        self.carriers.get(sort).map_or(&[], Vec::as_slice)
    }

    pub fn carriers(&self) -> &BTreeMap<String, Vec<String>> {
        &self.carriers
    }

    /// The value of `op` at `args`.
    pub fn apply(&self, op: &str, args: &[usize]) -> Result<usize, EqLogicError> {
        let decl = self.signature.op(op).ok_or_else(|| EqLogicError::UnknownOp(op.to_string()))?;
        if decl.args.len() != args.len() {
            return Err(EqLogicError::Arity { op: op.to_string(), expected: decl.args.len(), got: args.len() });
        }
        let mut idx = 0;
        for (a, s) in args.iter().zip(&decl.args) {
            let n = self.carriers[s].len();
            if *a >= n {
                return Err(EqLogicError::Algebra(format!("element {a} outside `{s}`")));
            }
            idx = idx * n + a;
        }
        Ok(self.tables[op][idx])
    }

    /// Whether the equation holds under every valuation of its context.
    pub fn satisfies(&self, eq: &Equation) -> bool {
        self.counterexample(eq).is_none()
    }

    /// A valuation where the sides differ, if any.
    pub fn counterexample(&self, eq: &Equation) -> Option<Valuation> {
        let sizes: Vec<usize> = eq.context.iter().map(|(_, s)| self.carrier(s).len()).collect();
        let mut found = None;
        for_each_tuple(&sizes, |vals| {
            if found.is_some() {
                return;
            }
            let v: Valuation = eq.context.iter().cloned().zip(vals.iter().copied()).collect();
            let l = interpret_term(self, &eq.lhs, &v);
            let r = interpret_term(self, &eq.rhs, &v);
            if l.is_err() || l != r {
                found = Some(v);
            }
        });
        found
    }
}

/// Calls `f` on every tuple below `sizes`, last coordinate fastest. An empty
/// size list gives the empty tuple once; a zero size gives nothing.
pub(crate) fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut cur = vec![0; sizes.len()];
    loop {
        f(&cur);
        let mut k = sizes.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < sizes[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// `[[t]]_v`.
pub fn interpret_term(a: &FinAlgebra, t: &Term, v: &Valuation) -> Result<usize, EqLogicError> {
    match t {
        Term::Var { name, sort } => {
            v.get(&(name.clone(), sort.clone())).copied().ok_or_else(|| EqLogicError::FreeVariable(name.clone()))
        }
        Term::App { op, args } => {
            let vals = args.iter().map(|s| interpret_term(a, s, v)).collect::<Result<Vec<_>, _>>()?;
            a.apply(op, &vals)
        }
    }
}

fn check_model(a: &FinAlgebra, p: &Presentation) -> Result<(), EqLogicError> {
    if a.signature != p.signature {
        return Err(EqLogicError::Algebra("algebra is over a different signature".into()));
    }
    for (index, eq) in p.equations.iter().enumerate() {
        if !a.satisfies(eq) {
            return Err(EqLogicError::Unsatisfied { index, equation: eq.to_string() });
        }
    }
    Ok(())
}

/// The category whose hom-set `(X, Y)` is the carrier of that sort.
///
/// Morphisms keep their element names when those are distinct across all
/// sorts, and are named `name:X->Y` otherwise.
pub fn algebra_to_category(objects: &[&str], a: &FinAlgebra) -> Result<FinCategory, EqLogicError> {
    let p = cat_presentation(objects)?;
    check_model(a, &p)?;
    let mut seen = BTreeSet::new();
    let mut unique = true;
    for x in objects {
        for y in objects {
            for e in a.carrier(&hom_sort(x, y)) {
                unique &= seen.insert(e.clone());
            }
        }
    }
    let label = |x: &str, y: &str, k: usize| {
        let e = &a.carrier(&hom_sort(x, y))[k];
        if unique {
            e.clone()
        } else {
            format!("{e}:{x}->{y}")
        }
    };
    let cat_err = |e: crate::fincat::CategoryError| EqLogicError::Algebra(e.to_string());
    let mut b = CategoryBuilder::new();
    let mut ids = BTreeMap::new();
    for x in objects {
        let e = a.apply(&format!("id[{x}]"), &[])?;
        b.object_with_identity(x, &label(x, x, e)).map_err(cat_err)?;
        ids.insert(*x, e);
    }
    let mut mors: BTreeMap<(&str, &str, usize), MorId> = BTreeMap::new();
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            for k in 0..a.carrier(&hom_sort(x, y)).len() {
                let m = if x == y && ids[x] == k {
                    b.id(ObjId(i))
                } else {
                    b.morphism(&label(x, y, k), ObjId(i), ObjId(j)).map_err(cat_err)?
                };
                mors.insert((x, y, k), m);
            }
        }
    }
    for x in objects {
        for y in objects {
            for z in objects {
                let (nf, ng) = (a.carrier(&hom_sort(x, y)).len(), a.carrier(&hom_sort(y, z)).len());
                for g in 0..ng {
                    for f in 0..nf {
                        let h = a.apply(&format!("comp[{x}, {y}, {z}]"), &[g, f])?;
                        b.compose(mors[&(*y, *z, g)], mors[&(*x, *y, f)], mors[&(*x, *z, h)]).map_err(cat_err)?;
                    }
                }
            }
        }
    }
    b.build().map_err(cat_err)
}

/// A finite category as a model of the presentation of categories on its
/// objects; elements are morphism names.
pub fn category_to_algebra(c: &FinCategory) -> Result<FinAlgebra, EqLogicError> {
    let names: Vec<&str> = c.objects().map(|x| c.obj_name(x)).collect();
    let p = cat_presentation(&names)?;
    let mut carriers = BTreeMap::new();
    for x in c.objects() {
        for y in c.objects() {
            let hom = c.hom(x, y).iter().map(|&m| c.mor_name(m).to_string()).collect();
            carriers.insert(hom_sort(c.obj_name(x), c.obj_name(y)), hom);
        }
    }
    let pos = |m: MorId| c.hom(c.src(m), c.tgt(m)).iter().position(|&n| n == m).expect("in its hom-set");
    let mut tables = BTreeMap::new();
    for x in c.objects() {
        tables.insert(format!("id[{}]", c.obj_name(x)), vec![pos(c.id(x))]);
        for y in c.objects() {
            for z in c.objects() {
                let mut t = Vec::new();
                for &g in c.hom(y, z) {
                    for &f in c.hom(x, y) {
                        t.push(pos(c.comp(g, f)));
                    }
                }
                tables.insert(format!("comp[{}, {}, {}]", c.obj_name(x), c.obj_name(y), c.obj_name(z)), t);
            }
        }
    }
    FinAlgebra::new(p.signature, carriers, tables)
}

/// A finite category with complete cartesian closed structure as a model of
/// the truncated presentation of cartesian closed categories. Each sort is
/// sent to `objects[sort]`; the carrier of `(A, B)` is the hom-set between
/// the translated objects.
pub fn ccc_algebra(
    c: &FinCategory,
    s: &CCStructure,
    objects: &BTreeMap<String, ObjId>,
    sorts: &[&str],
    maxdepth: usize,
) -> Result<(Presentation, FinAlgebra), EqLogicError> {
    let (p, ops) = ccc_ops(sorts, maxdepth)?;
    let tr = |o: &ObjExpr| translate_object(s, objects, o).map_err(|e| EqLogicError::Algebra(e.to_string()));
    let objs = super::presentations::ccc_objects(sorts, maxdepth);
    let mut trans = BTreeMap::new();
    for o in &objs {
        trans.insert(o.clone(), tr(o)?);
    }
    let hom = |a: &ObjExpr, b: &ObjExpr| c.hom(trans[a], trans[b]);
    let mut carriers = BTreeMap::new();
    for a in &objs {
        for b in &objs {
            let names = hom(a, b).iter().map(|&m| c.mor_name(m).to_string()).collect();
            carriers.insert(hom_sort(&a.to_string(), &b.to_string()), names);
        }
    }
    let at = |a: &ObjExpr, b: &ObjExpr, k: usize| hom(a, b)[k];
    let pos = |a: &ObjExpr, b: &ObjExpr, m: MorId| hom(a, b).iter().position(|&n| n == m).expect("in its hom-set");
    let st = |e: crate::fincat::StructureError| EqLogicError::Algebra(e.to_string());
    let mut tables = BTreeMap::new();
    for (name, op) in &ops {
        let mut t = Vec::new();
        match op {
            CccOp::Comp(x, y, z) => {
                for g in 0..hom(y, z).len() {
                    for f in 0..hom(x, y).len() {
                        t.push(pos(x, z, c.comp(at(y, z, g), at(x, y, f))));
                    }
                }
            }
            CccOp::Id(x) => t.push(pos(x, x, c.id(trans[x]))),
            CccOp::Bang(w) => t.push(pos(w, &ObjExpr::Unit, s.bang(c, trans[w]).map_err(st)?)),
            CccOp::Pair(w, a, b) => {
                let ab = ObjExpr::prod(a.clone(), b.clone());
                for f1 in 0..hom(w, a).len() {
                    for f2 in 0..hom(w, b).len() {
                        let m = s.pairing(c, trans[a], trans[b], at(w, a, f1), at(w, b, f2)).map_err(st)?;
                        t.push(pos(w, &ab, m));
                    }
                }
            }
            CccOp::Proj1(a, b) | CccOp::Proj2(a, b) => {
                let pr = s
                    .product(trans[a], trans[b])
                    .ok_or_else(|| EqLogicError::Algebra(format!("no product {a}, {b}")))?;
                let ab = ObjExpr::prod(a.clone(), b.clone());
                if matches!(op, CccOp::Proj1(..)) {
                    t.push(pos(&ab, a, pr.p1));
                } else {
                    t.push(pos(&ab, b, pr.p2));
                }
            }
            CccOp::Ev(y, z) => {
                let e = s
                    .exponential(trans[y], trans[z])
                    .ok_or_else(|| EqLogicError::Algebra(format!("no exponential {z} ^ {y}")))?;
                let src = ObjExpr::prod(ObjExpr::exp(z.clone(), y.clone()), y.clone());
                t.push(pos(&src, z, e.ev));
            }
            CccOp::Lam(x, y, z) => {
                let xy = ObjExpr::prod(x.clone(), y.clone());
                let zy = ObjExpr::exp(z.clone(), y.clone());
                for g in 0..hom(&xy, z).len() {
                    let m = s.lambda(c, trans[x], trans[y], at(&xy, z, g)).map_err(st)?;
                    t.push(pos(x, &zy, m));
                }
            }
        }
        tables.insert(name.clone(), t);
    }
    let a = FinAlgebra::new(p.signature.clone(), carriers, tables)?;
    Ok((p, a))
}
