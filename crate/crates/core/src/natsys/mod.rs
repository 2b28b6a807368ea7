//! Natural systems on finite categories.
//!
//! A natural system `D` assigns an abelian group `D_f` to each morphism `f`,
//! with maps `a^* : D_f -> D_(f.a)` and `b_* : D_f -> D_(b.f)` satisfying the
//! functor laws of the factorization category.

mod cartesian;
mod catalog;

pub use crate::linext::trivial_extension;
pub use cartesian::{is_cartesian, is_cartesian_closed, CartesianReport, Condition, Verdict};
pub use catalog::{chain_top_system, square_counterexample};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{AbelianError, FPAbelianGroup, GroupHom, IntMatrix};
use crate::fincat::{FinCategory, FinFunctor, MorId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NatSysError {
    #[error("no group given for `{0}`")]
    MissingValue(String),
    #[error("missing map {kind} {a} on {f}")]
    MissingMap { kind: &'static str, a: String, f: String },
    #[error("{kind} {a} on {f}: {source}")]
    Map { kind: &'static str, a: String, f: String, source: AbelianError },
    #[error("{kind} {a} on {f} is not defined: `{a}` and `{f}` do not compose")]
    NotComposable { kind: &'static str, a: String, f: String },
    #[error("category is not a group: {0}")]
    NotAGroup(&'static str),
    #[error("action matrix for `{0}` is not an endomorphism of the module")]
    BadAction(String),
    #[error("action does not respect the group law at `{0}`")]
    ActionConflict(String),
    #[error("the given generators do not generate `{0}`")]
    NotGenerated(String),
    #[error("natural system is not cartesian")]
    NotCartesian,
    #[error("group of `{0}` is infinite or too large to enumerate")]
    InfiniteFiber(String),
}

/// A failed functor law, naming the first failing instance.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NatSysViolation {
    #[error("pre-composition with the identity is not the identity on D_{f}")]
    PreIdentity { f: String },
    #[error("post-composition with the identity is not the identity on D_{f}")]
    PostIdentity { f: String },
    #[error("({a} . {a2})^* differs from {a2}^* . {a}^* on D_{f}")]
    Contravariant { a: String, a2: String, f: String },
    #[error("({b2} . {b})_* differs from {b2}_* . {b}_* on D_{f}")]
    Covariant { b: String, b2: String, f: String },
    #[error("{b}_* {a}^* differs from {a}^* {b}_* on D_{f}")]
    Commutation { a: String, b: String, f: String },
}

#[derive(Clone, Debug)]
pub struct NaturalSystem {
    base: FinCategory,
    values: Vec<FPAbelianGroup>,
    /// `pre[a * n + f]`: matrix of `a^* : D_f -> D_(f.a)`.
    pre: Vec<Option<IntMatrix>>,
    /// `post[b * n + f]`: matrix of `b_* : D_f -> D_(b.f)`.
    post: Vec<Option<IntMatrix>>,
}

impl NaturalSystem {
    /// Builds a system from closures; each map is checked to be a well-defined
    /// homomorphism, but the functor laws are left to [`validate`](Self::validate).
    pub fn from_fn(
        base: &FinCategory,
        mut value: impl FnMut(MorId) -> FPAbelianGroup,
        mut pre: impl FnMut(MorId, MorId) -> IntMatrix,
        mut post: impl FnMut(MorId, MorId) -> IntMatrix,
    ) -> Result<Self, NatSysError> {
        let values: Vec<FPAbelianGroup> = base.morphisms().map(&mut value).collect();
        let mut b = NatSysBuilder::new(base);
        for (f, g) in base.morphisms().zip(values) {
            b.set_value(f, g);
        }
        for f in base.morphisms() {
            for &a in base.hom_into(base.src(f)) {
                b.set_pre(a, f, pre(a, f))?;
            }
            for b2 in base.morphisms().filter(|&m| base.src(m) == base.tgt(f)) {
                b.set_post(b2, f, post(b2, f))?;
            }
        }
        b.build()
    }

    pub fn zero(base: &FinCategory) -> Self {
        Self::constant(base, &FPAbelianGroup::zero())
    }

    /// `D_f = G` for every `f`, all maps the identity.
    pub fn constant(base: &FinCategory, g: &FPAbelianGroup) -> Self {
        let n = g.ngens();
        Self::from_fn(base, |_| g.clone(), |_, _| IntMatrix::identity(n), |_, _| IntMatrix::identity(n))
            .expect("identity maps are well defined")
    }

    /// `D_f = Z/modulus` (or `Z` for modulus 0), `a^*` multiplication by
    /// `alpha[a]` and `b_*` multiplication by `beta[b]`.
    pub fn scalar(base: &FinCategory, modulus: u64, alpha: &[i64], beta: &[i64]) -> Result<Self, NatSysError> {
        let g = FPAbelianGroup::cyclic(modulus);
        Self::from_fn(
            base,
            |_| g.clone(),
            |a, _| IntMatrix::from_rows(&[[alpha[a.0]]]),
            |b, _| IntMatrix::from_rows(&[[beta[b.0]]]),
        )
    }

    /// A module over a one-object group category: `D_g = M`, `b_*` the action
    /// of `b`, `a^*` the identity. The action is given on generators and
    /// extended multiplicatively.
    pub fn from_group_module(
        group: &FinCategory,
        module: &FPAbelianGroup,
        action: &[(MorId, IntMatrix)],
    ) -> Result<Self, NatSysError> {
        if group.num_objects() != 1 {
            return Err(NatSysError::NotAGroup("more than one object"));
        }
        if !group.morphisms().all(|f| group.is_iso(f)) {
            return Err(NatSysError::NotAGroup("some morphism is not invertible"));
        }
        let mut gens = Vec::new();
        for (s, m) in action {
            let h = GroupHom::new(module.clone(), module.clone(), m.clone())
                .map_err(|_| NatSysError::BadAction(group.mor_name(*s).to_string()))?;
            gens.push((*s, h));
        }
        let e = group.id(group.src(MorId(0)));
        let mut acts: BTreeMap<MorId, GroupHom> = BTreeMap::new();
        acts.insert(e, GroupHom::identity(module));
        let mut queue = vec![e];
        while let Some(g) = queue.pop() {
            for (s, hs) in &gens {
                let sg = group.comp(*s, g);
                let h = hs.compose(&acts[&g]).expect("endomorphisms compose");
                match acts.get(&sg) {
                    Some(old) if !old.equals(&h) => {
                        return Err(NatSysError::ActionConflict(group.mor_name(sg).to_string()))
                    }
                    Some(_) => {}
                    None => {
                        acts.insert(sg, h);
                        queue.push(sg);
                    }
                }
            }
        }
        if let Some(missing) = group.morphisms().find(|f| !acts.contains_key(f)) {
            return Err(NatSysError::NotGenerated(group.mor_name(missing).to_string()));
        }
        // the generated action must also respect every product in the table
        for a in group.morphisms() {
            for b in group.morphisms() {
                let ab = acts[&a].compose(&acts[&b]).expect("endomorphisms compose");
                if !ab.equals(&acts[&group.comp(a, b)]) {
                    return Err(NatSysError::ActionConflict(group.mor_name(group.comp(a, b)).to_string()));
                }
            }
        }
        let n = module.ngens();
        Self::from_fn(group, |_| module.clone(), |_, _| IntMatrix::identity(n), |b, _| acts[&b].matrix().clone())
    }

    /// `f -> D'_(F f)` with maps transported along `F`.
    pub fn pullback(functor: &FinFunctor, d: &NaturalSystem) -> NaturalSystem {
        let c = functor.src();
        let n = c.num_morphisms();
        let mut pre = vec![None; n * n];
        let mut post = vec![None; n * n];
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                pre[a.0 * n + f.0] = Some(d.pre_matrix(functor.mor(a), functor.mor(f)).clone());
            }
            for b in c.morphisms().filter(|&m| c.src(m) == c.tgt(f)) {
                post[b.0 * n + f.0] = Some(d.post_matrix(functor.mor(b), functor.mor(f)).clone());
            }
        }
        NaturalSystem {
            base: c.clone(),
            values: c.morphisms().map(|f| d.value(functor.mor(f)).clone()).collect(),
            pre,
            post,
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    #[inline]
    pub fn value(&self, f: MorId) -> &FPAbelianGroup {
        &self.values[f.0]
    }

    pub fn values(&self) -> &[FPAbelianGroup] {
        &self.values
    }

    /// Matrix of `a^* : D_f -> D_(f.a)`; panics unless `tgt a == src f`.
    #[inline]
    pub fn pre_matrix(&self, a: MorId, f: MorId) -> &IntMatrix {
        self.pre[a.0 * self.base.num_morphisms() + f.0].as_ref().expect("a^* needs tgt a = src f")
    }

    /// Matrix of `b_* : D_f -> D_(b.f)`; panics unless `src b == tgt f`.
    #[inline]
    pub fn post_matrix(&self, b: MorId, f: MorId) -> &IntMatrix {
        self.post[b.0 * self.base.num_morphisms() + f.0].as_ref().expect("b_* needs src b = tgt f")
    }

    pub fn pre(&self, a: MorId, f: MorId) -> GroupHom {
        let fa = self.base.comp(f, a);
        GroupHom::new(self.values[f.0].clone(), self.values[fa.0].clone(), self.pre_matrix(a, f).clone())
            .expect("checked at construction")
    }

    pub fn post(&self, b: MorId, f: MorId) -> GroupHom {
        let bf = self.base.comp(b, f);
        GroupHom::new(self.values[f.0].clone(), self.values[bf.0].clone(), self.post_matrix(b, f).clone())
            .expect("checked at construction")
    }

    /// Whether two matrices denote the same map into `D_target`.
    fn same_map(&self, target: MorId, x: &IntMatrix, y: &IntMatrix) -> bool {
        self.values[target.0].relation_lattice().contains_columns(&x.sub(y))
    }

    /// Checks identities, contravariance, covariance and commutation
    /// exhaustively.
    pub fn validate(&self) -> Result<(), NatSysViolation> {
        let c = &self.base;
        let name = |m: MorId| c.mor_name(m).to_string();
        for f in c.morphisms() {
            let k = self.values[f.0].ngens();
            let ida = c.id(c.src(f));
            let idb = c.id(c.tgt(f));
            if !self.same_map(f, self.pre_matrix(ida, f), &IntMatrix::identity(k)) {
                return Err(NatSysViolation::PreIdentity { f: name(f) });
            }
            if !self.same_map(f, self.post_matrix(idb, f), &IntMatrix::identity(k)) {
                return Err(NatSysViolation::PostIdentity { f: name(f) });
            }
        }
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                let fa = c.comp(f, a);
                for &a2 in c.hom_into(c.src(a)) {
                    let faa = c.comp(fa, a2);
                    let lhs = self.pre_matrix(c.comp(a, a2), f);
                    let rhs = self.pre_matrix(a2, fa).mul(self.pre_matrix(a, f));
                    if !self.same_map(faa, lhs, &rhs) {
                        return Err(NatSysViolation::Contravariant { a: name(a), a2: name(a2), f: name(f) });
                    }
                }
            }
        }
        let out_of = |x| c.morphisms().filter(move |&m| c.src(m) == x);
        for f in c.morphisms() {
            for b in out_of(c.tgt(f)) {
                let bf = c.comp(b, f);
                for b2 in out_of(c.tgt(b)) {
                    let lhs = self.post_matrix(c.comp(b2, b), f);
                    let rhs = self.post_matrix(b2, bf).mul(self.post_matrix(b, f));
                    if !self.same_map(c.comp(b2, bf), lhs, &rhs) {
                        return Err(NatSysViolation::Covariant { b: name(b), b2: name(b2), f: name(f) });
                    }
                }
            }
        }
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                let fa = c.comp(f, a);
                for b in out_of(c.tgt(f)) {
                    let bf = c.comp(b, f);
                    let bfa = c.comp(bf, a);
                    let lhs = self.post_matrix(b, fa).mul(self.pre_matrix(a, f));
                    let rhs = self.pre_matrix(a, bf).mul(self.post_matrix(b, f));
                    if !self.same_map(bfa, &lhs, &rhs) {
                        return Err(NatSysViolation::Commutation { a: name(a), b: name(b), f: name(f) });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental constructor for [`NaturalSystem`].
///
/// Maps along identities default to the identity, and maps out of or into a
/// group with no generators default to zero; every other map must be given.
#[derive(Clone, Debug)]
pub struct NatSysBuilder {
    base: FinCategory,
    values: Vec<Option<FPAbelianGroup>>,
    pre: BTreeMap<(MorId, MorId), IntMatrix>,
    post: BTreeMap<(MorId, MorId), IntMatrix>,
}

impl NatSysBuilder {
    pub fn new(base: &FinCategory) -> Self {
        NatSysBuilder {
            base: base.clone(),
            values: vec![None; base.num_morphisms()],
            pre: BTreeMap::new(),
            post: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn set_value(&mut self, f: MorId, g: FPAbelianGroup) {
        self.values[f.0] = Some(g);
    }

    pub fn value(&self, f: MorId) -> Option<&FPAbelianGroup> {
        self.values[f.0].as_ref()
    }

    /// Records `a^*` on `D_f`.
    pub fn set_pre(&mut self, a: MorId, f: MorId, m: IntMatrix) -> Result<(), NatSysError> {
        if self.base.tgt(a) != self.base.src(f) {
            return Err(self.not_composable("pre", a, f));
        }
        self.pre.insert((a, f), m);
        Ok(())
    }

    /// Records `b_*` on `D_f`.
    pub fn set_post(&mut self, b: MorId, f: MorId, m: IntMatrix) -> Result<(), NatSysError> {
        if self.base.src(b) != self.base.tgt(f) {
            return Err(self.not_composable("post", b, f));
        }
        self.post.insert((b, f), m);
        Ok(())
    }

    fn not_composable(&self, kind: &'static str, a: MorId, f: MorId) -> NatSysError {
        NatSysError::NotComposable { kind, a: self.base.mor_name(a).to_string(), f: self.base.mor_name(f).to_string() }
    }

    fn resolve(
        &self,
        kind: &'static str,
        a: MorId,
        f: MorId,
        target: MorId,
        values: &[FPAbelianGroup],
    ) -> Result<IntMatrix, NatSysError> {
        let (src, dst) = (&values[f.0], &values[target.0]);
        let given = if kind == "pre" { self.pre.get(&(a, f)) } else { self.post.get(&(a, f)) };
        let m = match given {
            Some(m) => m.clone(),
            None if self.base.is_identity(a) => IntMatrix::identity(src.ngens()),
            None if src.ngens() == 0 || dst.ngens() == 0 => IntMatrix::zeros(dst.ngens(), src.ngens()),
            None => {
                return Err(NatSysError::MissingMap {
                    kind,
                    a: self.base.mor_name(a).to_string(),
                    f: self.base.mor_name(f).to_string(),
                })
            }
        };
        GroupHom::new(src.clone(), dst.clone(), m.clone()).map_err(|source| NatSysError::Map {
            kind,
            a: self.base.mor_name(a).to_string(),
            f: self.base.mor_name(f).to_string(),
            source,
        })?;
        Ok(m)
    }

    pub fn build(self) -> Result<NaturalSystem, NatSysError> {
        let c = &self.base;
        let values: Vec<FPAbelianGroup> = c
            .morphisms()
            .map(|f| self.values[f.0].clone().ok_or_else(|| NatSysError::MissingValue(c.mor_name(f).to_string())))
            .collect::<Result<_, _>>()?;
        let n = c.num_morphisms();
        let mut pre = vec![None; n * n];
        let mut post = vec![None; n * n];
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                pre[a.0 * n + f.0] = Some(self.resolve("pre", a, f, c.comp(f, a), &values)?);
            }
            for b in c.morphisms().filter(|&m| c.src(m) == c.tgt(f)) {
                post[b.0 * n + f.0] = Some(self.resolve("post", b, f, c.comp(b, f), &values)?);
            }
        }
        Ok(NaturalSystem { base: self.base, values, pre, post })
    }
}
