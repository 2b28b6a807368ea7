//! Linear extensions of finite categories by natural systems.
//!
//! An extension `p : E -> C` is identity on objects and full, each fiber
//! `p^-1(f)` is a `D_f`-torsor, and composition satisfies
//! `(ξ + f~) . (η + g~) = f_* η + g^* ξ + f~ . g~`.
//!
//! The trivial extension composes `(ξ, f) . (η, g) = (f_* η + g^* ξ, f g)`;
//! the pre-composition term is `g^* ξ`, which is the only reading that lands
//! in `D_(f g)`.

mod classify;
mod finite;

pub use classify::{are_equivalent, classify, Classification};
pub use finite::FiniteSystem;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::Int;
use crate::fincat::{
    CCStructure, CategoryBuilder, Exponential, FinCategory, FinFunctor, MorId, ObjId, Product, StructureError,
};
use crate::natsys::{NatSysError, NaturalSystem};

/// Default bound on the order of each fiber group.
pub const DEFAULT_MAX_FIBER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinExtError {
    #[error(transparent)]
    NatSys(#[from] NatSysError),
    #[error("cochain is not normalized at ({0}, {1})")]
    NotNormalized(String, String),
    #[error("cochain is not a cocycle at ({0}, {1}, {2})")]
    NotACocycle(String, String, String),
    #[error("value at ({0}, {1}) has the wrong length")]
    CochainShape(String, String),
    #[error("lift of `{0}` lies over the wrong morphism")]
    BadLift(String),
    #[error("lift of the identity of `{0}` is not the identity")]
    IdentityLift(String),
    #[error("action table has the wrong shape")]
    ActionShape,
    #[error("search space of {0} cochains exceeds the limit")]
    TooLarge(u128),
    #[error("lifted structure is invalid: {0}")]
    Lift(#[from] StructureError),
    #[error("not cartesian closed: {0}")]
    NotCartesianClosed(String),
}

/// A violated extension axiom.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionViolation {
    #[error("projection is not the identity on objects")]
    NotIdentityOnObjects,
    #[error("projection misses `{0}`")]
    NotFull(String),
    #[error("action on the fiber over `{0}` is not an action")]
    NotAnAction(String),
    #[error("action on the fiber over `{0}` is not free and transitive")]
    NotTorsor(String),
    #[error("composition law fails at ({0}, {1})")]
    CompositionLaw(String, String),
    #[error("total category: {0}")]
    Category(String),
}

/// A normalized 2-cochain: values on composable pairs `(f, g)` of
/// non-identities, in `D_(f g)`, as generator coordinates. Missing pairs are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoCochain {
    values: BTreeMap<(MorId, MorId), Vec<Int>>,
}

impl TwoCochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn set(&mut self, f: MorId, g: MorId, x: Vec<Int>) {
        self.values.insert((f, g), x);
    }

    pub fn get(&self, f: MorId, g: MorId) -> Option<&[Int]> {
        self.values.get(&(f, g)).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((MorId, MorId), &[Int])> {
        self.values.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// Keyed by chain, for [`crate::bwcoh::BWComplex::cochain_vector`].
    pub fn as_chains(&self) -> BTreeMap<Vec<MorId>, Vec<Int>> {
        self.values.iter().map(|(&(f, g), v)| (vec![f, g], v.clone())).collect()
    }
}

/// A normalized 1-cochain `f -> b(f) in D_f`, zero on identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneCochain {
    pub values: BTreeMap<MorId, Vec<Int>>,
}

#[derive(Clone, Debug)]
pub struct LinearExtension {
    coeff: NaturalSystem,
    fin: FiniteSystem,
    total: FinCategory,
    proj: FinFunctor,
    /// `action[e][i]` is element `i` of `D_(p e)` acting on `e`.
    action: Vec<Vec<MorId>>,
}

impl LinearExtension {
    /// Assembles an extension; only shapes are checked here, the axioms by
    /// [`validate`](Self::validate).
    pub fn from_parts(
        coeff: &NaturalSystem,
        total: FinCategory,
        proj: FinFunctor,
        action: Vec<Vec<MorId>>,
    ) -> Result<Self, LinExtError> {
        let fin = FiniteSystem::new(coeff, DEFAULT_MAX_FIBER)?;
        if action.len() != total.num_morphisms() || proj.dst() != coeff.base() || proj.src() != &total {
            return Err(LinExtError::ActionShape);
        }
        for (e, row) in action.iter().enumerate() {
            let f = proj.mor(MorId(e));
            if row.len() != fin.order(f) || row.iter().any(|m| m.0 >= total.num_morphisms()) {
                return Err(LinExtError::ActionShape);
            }
        }
        Ok(LinearExtension { coeff: coeff.clone(), fin, total, proj, action })
    }

    pub fn base(&self) -> &FinCategory {
        self.coeff.base()
    }

    pub fn coeff(&self) -> &NaturalSystem {
        &self.coeff
    }

    pub fn finite(&self) -> &FiniteSystem {
        &self.fin
    }

    pub fn total(&self) -> &FinCategory {
        &self.total
    }

    pub fn proj(&self) -> &FinFunctor {
        &self.proj
    }

    pub fn action_table(&self) -> &[Vec<MorId>] {
        &self.action
    }

    /// `ξ + e` for `ξ` an element index of `D_(p e)`.
    #[inline]
    pub fn act(&self, xi: usize, e: MorId) -> MorId {
        self.action[e.0][xi]
    }

    /// Morphisms of `E` over `f`, sorted by id.
    pub fn fiber(&self, f: MorId) -> Vec<MorId> {
        let c = self.base();
        self.total
            .hom(self.obj(c.src(f)), self.obj(c.tgt(f)))
            .iter()
            .copied()
            .filter(|&e| self.proj.mor(e) == f)
            .collect()
    }

    fn obj(&self, x: ObjId) -> ObjId {
        // identity on objects
        x
    }

    /// The unique `ξ` with `ξ + e1 = e2`, for `e1`, `e2` in one fiber.
    pub fn difference(&self, e2: MorId, e1: MorId) -> Option<usize> {
        self.action[e1.0].iter().position(|&m| m == e2)
    }

    pub fn validate(&self) -> Result<(), ExtensionViolation> {
        let c = self.base();
        let e = &self.total;
        e.validate().map_err(|v| ExtensionViolation::Category(v.to_string()))?;
        if !self.proj.is_identity_on_objects() {
            return Err(ExtensionViolation::NotIdentityOnObjects);
        }
        for f in c.morphisms() {
            let fiber = self.fiber(f);
            if fiber.is_empty() {
                return Err(ExtensionViolation::NotFull(c.mor_name(f).to_string()));
            }
            let g = &self.fin.groups()[f.0];
            for &m in &fiber {
                if self.act(0, m) != m {
                    return Err(ExtensionViolation::NotAnAction(c.mor_name(f).to_string()));
                }
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        if self.act(x, self.act(y, m)) != self.act(g.add(x, y), m) {
                            return Err(ExtensionViolation::NotAnAction(c.mor_name(f).to_string()));
                        }
                    }
                }
                let mut orbit: Vec<MorId> = self.action[m.0].clone();
                orbit.sort();
                orbit.dedup();
                if orbit.len() != g.order() || orbit != fiber {
                    return Err(ExtensionViolation::NotTorsor(c.mor_name(f).to_string()));
                }
            }
        }
        for ft in e.morphisms() {
            let f = self.proj.mor(ft);
            for &gt in e.hom_into(e.src(ft)) {
                let g = self.proj.mor(gt);
                let fg = c.comp(f, g);
                let base = e.comp(ft, gt);
                for xi in 0..self.fin.order(f) {
                    for eta in 0..self.fin.order(g) {
                        let lhs = e.comp(self.act(xi, ft), self.act(eta, gt));
                        let shift = self.fin.add(fg, self.fin.post(f, g, eta), self.fin.pre(g, f, xi));
                        if lhs != self.act(shift, base) {
                            return Err(ExtensionViolation::CompositionLaw(
                                e.mor_name(ft).to_string(),
                                e.mor_name(gt).to_string(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The 2-cocycle of a set-level lift `s`, with `s(id) = id`:
    /// `s(f) . s(g) = c(f, g) + s(f g)`.
    pub fn cocycle_of(&self, lift: &[MorId]) -> Result<TwoCochain, LinExtError> {
        let c = self.base();
        self.check_lift(lift)?;
        let mut out = TwoCochain::zero();
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            for &g in c.hom_into(c.src(f)) {
                if c.is_identity(g) {
                    continue;
                }
                let fg = c.comp(f, g);
                let prod = self.total.comp(lift[f.0], lift[g.0]);
                let xi = self
                    .difference(prod, lift[fg.0])
                    .ok_or_else(|| LinExtError::BadLift(c.mor_name(fg).to_string()))?;
                out.set(f, g, self.fin.element(fg, xi));
            }
        }
        Ok(out)
    }

    fn check_lift(&self, lift: &[MorId]) -> Result<(), LinExtError> {
        let c = self.base();
        if lift.len() != c.num_morphisms() {
            return Err(LinExtError::ActionShape);
        }
        for f in c.morphisms() {
            if self.proj.mor(lift[f.0]) != f {
                return Err(LinExtError::BadLift(c.mor_name(f).to_string()));
            }
            if c.is_identity(f) && !self.total.is_identity(lift[f.0]) {
                return Err(LinExtError::IdentityLift(c.obj_name(c.src(f)).to_string()));
            }
        }
        Ok(())
    }

    /// The lift `f -> (0, f)` of an extension built by [`extension_of_cocycle`].
    pub fn canonical_lift(&self) -> Vec<MorId> {
        self.base().morphisms().map(|f| self.fiber(f)[0]).collect()
    }

    /// Backtracking search for a functorial section `s` with `p s = id`.
    pub fn find_section(&self) -> Option<FinFunctor> {
        let c = self.base();
        let order: Vec<MorId> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
        let mut lift: Vec<Option<MorId>> =
            c.morphisms().map(|f| c.is_identity(f).then(|| self.total.id(c.src(f)))).collect();
        let fibers: Vec<Vec<MorId>> = c.morphisms().map(|f| self.fiber(f)).collect();
        if self.search(0, &order, &fibers, &mut lift) {
            let mor_map: Vec<MorId> = lift.into_iter().map(|m| m.expect("complete")).collect();
            FinFunctor::new(c.clone(), self.total.clone(), c.objects().collect(), mor_map).ok()
        } else {
            None
        }
    }

    fn consistent(&self, lift: &[Option<MorId>]) -> bool {
        let c = self.base();
        for f in c.morphisms() {
            let Some(sf) = lift[f.0] else { continue };
            for &g in c.hom_into(c.src(f)) {
                let (Some(sg), Some(sfg)) = (lift[g.0], lift[c.comp(f, g).0]) else { continue };
                if self.total.comp(sf, sg) != sfg {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self, k: usize, order: &[MorId], fibers: &[Vec<MorId>], lift: &mut Vec<Option<MorId>>) -> bool {
        let Some(&f) = order.get(k) else { return true };
        for &cand in &fibers[f.0] {
            lift[f.0] = Some(cand);
            if self.consistent(lift) && self.search(k + 1, order, fibers, lift) {
                return true;
            }
        }
        lift[f.0] = None;
        false
    }

    /// Whether `ε` is an equivalence of extensions `self -> other`:
    /// a functor over `C` commuting with the actions.
    pub fn is_equivalence(&self, other: &LinearExtension, eps: &FinFunctor) -> bool {
        if eps.src() != &self.total || eps.dst() != &other.total {
            return false;
        }
        self.total.morphisms().all(|e| {
            let f = self.proj.mor(e);
            other.proj.mor(eps.mor(e)) == f
                && (0..self.fin.order(f)).all(|xi| eps.mor(self.act(xi, e)) == other.act(xi, eps.mor(e)))
        })
    }
}

/// The extension with fibers `D_f x {f}` and composition
/// `(ξ, f) . (η, g) = (f_* η + g^* ξ + c(f, g), f g)`.
pub fn extension_of_cocycle(d: &NaturalSystem, cocycle: &TwoCochain) -> Result<LinearExtension, LinExtError> {
    let fin = FiniteSystem::new(d, DEFAULT_MAX_FIBER)?;
    let c = d.base();
    let cvals = fin.cochain_indices(cocycle)?;
    if let Some((f, g, h)) = fin.cocycle_failure(&cvals) {
        return Err(LinExtError::NotACocycle(
            c.mor_name(f).to_string(),
            c.mor_name(g).to_string(),
            c.mor_name(h).to_string(),
        ));
    }
    let mut b = CategoryBuilder::new();
    for x in c.objects() {
        let id = c.id(x);
        b.object_with_identity(c.obj_name(x), &format!("{}#0", c.mor_name(id))).expect("names are distinct");
    }
    // ids[f][xi]
    let mut ids: Vec<Vec<MorId>> = Vec::with_capacity(c.num_morphisms());
    for f in c.morphisms() {
        let mut row = Vec::with_capacity(fin.order(f));
        for xi in 0..fin.order(f) {
            if xi == 0 && c.is_identity(f) {
                row.push(b.id(c.src(f)));
            } else {
                let m = b.morphism(&format!("{}#{xi}", c.mor_name(f)), c.src(f), c.tgt(f)).expect("names are distinct");
                row.push(m);
            }
        }
        ids.push(row);
    }
    let mut proj_map = vec![MorId(0); ids.iter().map(Vec::len).sum()];
    let mut elem = vec![0; proj_map.len()];
    for f in c.morphisms() {
        for (xi, &m) in ids[f.0].iter().enumerate() {
            proj_map[m.0] = f;
            elem[m.0] = xi;
        }
    }
    for f in c.morphisms() {
        for &g in c.hom_into(c.src(f)) {
            let fg = c.comp(f, g);
            let shift = cvals.get(&(f, g)).copied().unwrap_or(0);
            for xi in 0..fin.order(f) {
                for eta in 0..fin.order(g) {
                    let v = fin.add(fg, fin.add(fg, fin.post(f, g, eta), fin.pre(g, f, xi)), shift);
                    let (l, r) = (ids[f.0][xi], ids[g.0][eta]);
                    if b.id(c.src(f)) == r || b.id(c.tgt(f)) == l {
                        // identity composites are implicit; normalization makes them agree
                        continue;
                    }
                    b.compose(l, r, ids[fg.0][v]).expect("well typed");
                }
            }
        }
    }
    let total = b.build().map_err(|_| LinExtError::NotNormalized(String::new(), String::new()))?;
    let action: Vec<Vec<MorId>> = total
        .morphisms()
        .map(|m| {
            let f = proj_map[m.0];
            let g = &fin.groups()[f.0];
            (0..g.order()).map(|x| ids[f.0][g.add(x, elem[m.0])]).collect()
        })
        .collect();
    let proj = FinFunctor::new(total.clone(), c.clone(), c.objects().collect(), proj_map)
        .map_err(|_| LinExtError::NotNormalized(String::new(), String::new()))?;
    Ok(LinearExtension { coeff: d.clone(), fin, total, proj, action })
}

/// `D ⋊ C`: the extension of the zero cocycle.
pub fn trivial_extension(d: &NaturalSystem) -> Result<LinearExtension, LinExtError> {
    extension_of_cocycle(d, &TwoCochain::zero())
}

/// Lifts chosen cartesian closed structure from `C` to `E` along `p`, taking
/// the first morphism of each fiber as the lift of a projection or
/// evaluation, and checks the result on `E`.
pub fn cc_structure_lift(ext: &LinearExtension, s: &CCStructure) -> Result<CCStructure, LinExtError> {
    let lift = |f: MorId| ext.fiber(f)[0];
    let mut out = CCStructure::new();
    if let Some(t) = s.terminal() {
        out.set_terminal(t);
    }
    for ((x, y), p) in s.products() {
        out.add_product(x, y, Product { object: p.object, p1: lift(p.p1), p2: lift(p.p2) });
    }
    for ((y, z), e) in s.exponentials() {
        out.add_exponential(y, z, Exponential { object: e.object, ev: lift(e.ev) });
    }
    out.validate_terminal(&ext.total)?;
    out.validate_products(&ext.total)?;
    out.validate_exponentials(&ext.total).map_err(|err| match err {
        StructureError::Transpose { y, z, .. } => LinExtError::NotCartesianClosed(format!("exponential ({y}, {z})")),
        other => LinExtError::Lift(other),
    })?;
    Ok(out)
}
