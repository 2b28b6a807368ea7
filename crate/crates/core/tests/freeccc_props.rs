mod common;

use std::collections::BTreeMap;

use catcoh_core::fincat::chain3_heyting;
use catcoh_core::freeccc::{equal, interpret, normalize, typecheck, CCSignature, Interpretation, MorExpr, ObjExpr};
use common::Tape;
use proptest::prelude::*;

fn s(n: &str) -> ObjExpr {
    ObjExpr::sort(n)
}

fn sig() -> CCSignature {
    CCSignature::new(&["A", "B"])
        .with_generator("f", s("A"), s("B"))
        .with_generator("g", ObjExpr::prod(s("B"), s("A")), s("A"))
        .with_generator("h", s("A"), ObjExpr::exp(s("B"), s("A")))
        .with_generator("a0", ObjExpr::Unit, s("A"))
        .with_generator("b0", ObjExpr::Unit, s("B"))
}

fn random_type(t: &mut Tape, depth: usize) -> ObjExpr {
    let k = if depth == 0 { t.below(3) } else { t.below(5) };
    match k {
        0 => s("A"),
        1 => s("B"),
        2 => ObjExpr::Unit,
        3 => ObjExpr::prod(random_type(t, depth - 1), random_type(t, depth - 1)),
        _ => ObjExpr::exp(random_type(t, depth - 1), random_type(t, depth - 1)),
    }
}

/// A term of type `src -> tgt`, built from the tape.
fn term(t: &mut Tape, src: &ObjExpr, tgt: &ObjExpr, fuel: usize) -> MorExpr {
    let sg = sig();
    if fuel > 0 {
        match t.below(6) {
            1 => {
                let mid = random_type(t, 1);
                return MorExpr::comp(term(t, &mid, tgt, fuel - 1), term(t, src, &mid, fuel - 1));
            }
            2 => {
                if let ObjExpr::Prod(a, b) = src {
                    return if t.below(2) == 0 {
                        MorExpr::comp(term(t, a, tgt, fuel - 1), MorExpr::Proj1((**a).clone(), (**b).clone()))
                    } else {
                        MorExpr::comp(term(t, b, tgt, fuel - 1), MorExpr::Proj2((**a).clone(), (**b).clone()))
                    };
                }
            }
            3 => {
                let y = random_type(t, 0);
                let fy = ObjExpr::exp(tgt.clone(), y.clone());
                let p = MorExpr::pair(term(t, src, &fy, fuel - 1), term(t, src, &y, fuel - 1));
                return MorExpr::comp(MorExpr::Ev(y, tgt.clone()), p);
            }
            4 => {
                let cands: Vec<_> = sg.generators.iter().filter(|g| &g.tgt == tgt).collect();
                if !cands.is_empty() {
                    let g = cands[t.below(cands.len())];
                    return MorExpr::comp(MorExpr::gen(&g.name), term(t, src, &g.src, fuel - 1));
                }
            }
            5 if src == tgt => return MorExpr::Id(src.clone()),
            _ => {}
        }
    }
    let f = fuel.saturating_sub(1);
    match tgt {
        ObjExpr::Unit => MorExpr::Bang(src.clone()),
        ObjExpr::Prod(a, b) => MorExpr::pair(term(t, src, a, f), term(t, src, b, f)),
        ObjExpr::Exp(z, y) => MorExpr::curry(term(t, &ObjExpr::prod(src.clone(), (**y).clone()), z, f)),
        ObjExpr::Sort(n) if src == tgt && t.below(2) == 0 => MorExpr::Id(s(n)),
        ObjExpr::Sort(n) => {
            let c = if n == "A" { "a0" } else { "b0" };
            MorExpr::comp(MorExpr::gen(c), MorExpr::Bang(src.clone()))
        }
    }
}

/// The category of finite sets: objects are encoded by their size, pairs as
/// `x * |B| + y`, functions `Y -> Z` as base-`|Z|` digit strings.
struct SetModel {
    sizes: BTreeMap<String, usize>,
    tables: BTreeMap<String, Vec<usize>>,
}

const MAX_SET: usize = 4096;

impl SetModel {
    fn new(t: &mut Tape) -> Option<Self> {
        let sizes: BTreeMap<String, usize> =
            [("A".to_string(), 1 + t.below(2)), ("B".to_string(), 1 + t.below(2))].into();
        let mut m = SetModel { sizes, tables: BTreeMap::new() };
        for g in sig().generators {
            let (n, k) = (m.size(&g.src)?, m.size(&g.tgt)?);
            let tab = (0..n).map(|_| t.below(k)).collect();
            m.tables.insert(g.name.clone(), tab);
        }
        Some(m)
    }

    fn size(&self, o: &ObjExpr) -> Option<usize> {
        let n = match o {
            ObjExpr::Sort(n) => self.sizes[n],
            ObjExpr::Unit => 1,
            ObjExpr::Prod(a, b) => self.size(a)?.checked_mul(self.size(b)?)?,
            ObjExpr::Exp(z, y) => self.size(z)?.checked_pow(u32::try_from(self.size(y)?).ok()?)?,
        };
        (n <= MAX_SET).then_some(n)
    }

    fn eval(&self, e: &MorExpr, x: usize) -> Option<usize> {
        let sg = sig();
        Some(match e {
            MorExpr::Gen(n) => self.tables[n][x],
            MorExpr::Id(_) => x,
            MorExpr::Bang(_) => 0,
            MorExpr::Proj1(_, b) => x / self.size(b)?,
            MorExpr::Proj2(_, b) => x % self.size(b)?,
            MorExpr::Ev(y, z) => {
                let (ny, nz) = (self.size(y)?, self.size(z)?);
                let (f, w) = (x / ny, x % ny);
                (f / nz.pow(w as u32)) % nz
            }
            MorExpr::Comp(g, f) => self.eval(g, self.eval(f, x)?)?,
            MorExpr::Pair(f, g) => {
                let (_, b) = typecheck(&sg, g).ok()?;
                self.eval(f, x)? * self.size(&b)? + self.eval(g, x)?
            }
            MorExpr::Curry(f) => {
                let (ObjExpr::Prod(_, y), z) = typecheck(&sg, f).ok()? else { return None };
                let (ny, nz) = (self.size(&y)?, self.size(&z)?);
                let mut code = 0;
                for w in (0..ny).rev() {
                    code = code * nz + self.eval(f, x * ny + w)?;
                }
                code
            }
        })
    }

    /// The function denoted by `e` as a table, if every set stays small.
    fn table(&self, e: &MorExpr) -> Option<Vec<usize>> {
        let (a, _) = typecheck(&sig(), e).ok()?;
        (0..self.size(&a)?).map(|x| self.eval(e, x)).collect()
    }
}

fn eq(a: &MorExpr, b: &MorExpr) -> bool {
    equal(&sig(), a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_terms_have_requested_type(bytes in prop::collection::vec(any::<u8>(), 60)) {
        let mut t = Tape::new(bytes);
        let (x, y) = (random_type(&mut t, 2), random_type(&mut t, 2));
        let e = term(&mut t, &x, &y, 4);
        prop_assert_eq!(typecheck(&sig(), &e).unwrap(), (x, y));
    }

    #[test]
    fn normalization_is_idempotent_and_sound(bytes in prop::collection::vec(any::<u8>(), 80)) {
        let mut t = Tape::new(bytes);
        let (x, y) = (random_type(&mut t, 1), random_type(&mut t, 1));
        let e = term(&mut t, &x, &y, 4);
        let n = normalize(&sig(), &e).unwrap();
        prop_assert_eq!(typecheck(&sig(), &n.term).unwrap(), (x, y));
        let n2 = normalize(&sig(), &n.term).unwrap();
        prop_assert_eq!(&n2.nf, &n.nf);
        prop_assert_eq!(&n2.term, &n.term);
        if let Some(m) = SetModel::new(&mut t) {
            if let (Some(a), Some(b)) = (m.table(&e), m.table(&n.term)) {
                prop_assert_eq!(a, b, "{} vs {}", e, n.term);
            }
        }
    }

    #[test]
    fn equal_terms_agree_in_set_models(bytes in prop::collection::vec(any::<u8>(), 100)) {
        let mut t = Tape::new(bytes);
        let (x, y) = (random_type(&mut t, 1), random_type(&mut t, 0));
        let e1 = term(&mut t, &x, &y, 3);
        let e2 = term(&mut t, &x, &y, 3);
        if eq(&e1, &e2) {
            for _ in 0..3 {
                if let Some(m) = SetModel::new(&mut t) {
                    prop_assert_eq!(m.table(&e1), m.table(&e2));
                }
            }
        }
    }

    #[test]
    fn equation_schemata(bytes in prop::collection::vec(any::<u8>(), 120)) {
        let mut t = Tape::new(bytes);
        let (w, x, y, z) = (random_type(&mut t, 1), random_type(&mut t, 1), random_type(&mut t, 1), random_type(&mut t, 1));
        let f = term(&mut t, &w, &x, 2);
        let g = term(&mut t, &x, &y, 2);
        let h = term(&mut t, &y, &z, 2);
        // category laws
        prop_assert!(eq(&MorExpr::comp(MorExpr::comp(h.clone(), g.clone()), f.clone()), &MorExpr::comp(h.clone(), MorExpr::comp(g.clone(), f.clone()))));
        prop_assert!(eq(&MorExpr::comp(MorExpr::Id(x.clone()), f.clone()), &f));
        prop_assert!(eq(&MorExpr::comp(f.clone(), MorExpr::Id(w.clone())), &f));
        // terminal
        let u = term(&mut t, &w, &ObjExpr::Unit, 3);
        prop_assert!(eq(&u, &MorExpr::Bang(w.clone())));
        // products
        let k = term(&mut t, &w, &y, 2);
        let p = MorExpr::pair(f.clone(), k.clone());
        prop_assert!(eq(&MorExpr::comp(MorExpr::Proj1(x.clone(), y.clone()), p.clone()), &f));
        prop_assert!(eq(&MorExpr::comp(MorExpr::Proj2(x.clone(), y.clone()), p.clone()), &k));
        let q = term(&mut t, &w, &ObjExpr::prod(x.clone(), y.clone()), 2);
        let eta = MorExpr::pair(MorExpr::comp(MorExpr::Proj1(x.clone(), y.clone()), q.clone()), MorExpr::comp(MorExpr::Proj2(x.clone(), y.clone()), q.clone()));
        prop_assert!(eq(&eta, &q));
        // exponentials: ev . (curry(r) x id) = r and curry(ev . (l x id)) = l
        let r = term(&mut t, &ObjExpr::prod(w.clone(), x.clone()), &y, 2);
        let lhs = MorExpr::comp(MorExpr::Ev(x.clone(), y.clone()), MorExpr::times(MorExpr::curry(r.clone()), &w, MorExpr::Id(x.clone()), &x));
        prop_assert!(eq(&lhs, &r));
        let l = term(&mut t, &w, &ObjExpr::exp(y.clone(), x.clone()), 2);
        let lhs = MorExpr::curry(MorExpr::comp(MorExpr::Ev(x.clone(), y.clone()), MorExpr::times(l.clone(), &w, MorExpr::Id(x.clone()), &x)));
        prop_assert!(eq(&lhs, &l));
    }

    #[test]
    fn interpretation_respects_equality(bytes in prop::collection::vec(any::<u8>(), 100)) {
        // the constants force both sorts onto the top element, and a preorder
        // cannot separate parallel maps anyway: this checks typing and the
        // use of the chosen structure
        let mut t = Tape::new(bytes);
        let (c, st) = chain3_heyting();
        let obj = |n: &str| c.obj_by_name(n).unwrap();
        let objects: BTreeMap<String, _> = [("A".to_string(), obj("1")), ("B".to_string(), obj("1"))].into();
        let sg = sig();
        let mut generators = BTreeMap::new();
        for g in &sg.generators {
            let src = catcoh_core::freeccc::translate_object(&st, &objects, &g.src).unwrap();
            let tgt = catcoh_core::freeccc::translate_object(&st, &objects, &g.tgt).unwrap();
            let Some(&m) = c.hom(src, tgt).first() else { return Ok(()) };
            generators.insert(g.name.clone(), m);
        }
        let interp = Interpretation { category: &c, structure: &st, objects, generators };
        let (x, y) = (random_type(&mut t, 1), random_type(&mut t, 1));
        let e = term(&mut t, &x, &y, 3);
        let n = normalize(&sg, &e).unwrap();
        let m1 = interpret(&sg, &interp, &e).unwrap();
        let m2 = interpret(&sg, &interp, &n.term).unwrap();
        prop_assert_eq!(m1, m2);
        prop_assert_eq!(c.src(m1), interp.object(&x).unwrap());
        prop_assert_eq!(c.tgt(m1), interp.object(&y).unwrap());
    }
}
