use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{LinExtError, TwoCochain};
use crate::abelian::{FiniteGroup, Int};
use crate::fincat::{FinCategory, MorId};
use crate::natsys::{NatSysError, NaturalSystem};

/// A natural system with every `D_f` enumerated and every map tabulated.
#[derive(Clone, Debug)]
pub struct FiniteSystem {
    base: FinCategory,
    groups: Vec<FiniteGroup>,
    /// `pre[a * n + f][x]`: index of `a^* x` in `D_(f a)`.
    pre: Vec<Option<Vec<usize>>>,
    post: Vec<Option<Vec<usize>>>,
}

impl FiniteSystem {
    pub fn new(d: &NaturalSystem, max_order: usize) -> Result<Self, NatSysError> {
        let c = d.base();
        let groups: Vec<FiniteGroup> = c
            .morphisms()
            .map(|f| {
                FiniteGroup::new(d.value(f), max_order)
                    .map_err(|_| NatSysError::InfiniteFiber(c.mor_name(f).to_string()))
            })
            .collect::<Result<_, _>>()?;
        let n = c.num_morphisms();
        let mut pre = alloc::vec![None; n * n];
        let mut post = alloc::vec![None; n * n];
        for f in c.morphisms() {
            for &a in c.hom_into(c.src(f)) {
                let fa = c.comp(f, a);
                pre[a.0 * n + f.0] = Some(groups[f.0].hom_table(&d.pre(a, f), &groups[fa.0]));
            }
            for b in c.morphisms().filter(|&m| c.src(m) == c.tgt(f)) {
                let bf = c.comp(b, f);
                post[b.0 * n + f.0] = Some(groups[f.0].hom_table(&d.post(b, f), &groups[bf.0]));
            }
        }
        Ok(FiniteSystem { base: c.clone(), groups, pre, post })
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    #[inline]
    pub fn order(&self, f: MorId) -> usize {
        self.groups[f.0].order()
    }

    #[inline]
    pub fn add(&self, f: MorId, x: usize, y: usize) -> usize {
        self.groups[f.0].add(x, y)
    }

    #[inline]
    pub fn sub(&self, f: MorId, x: usize, y: usize) -> usize {
        self.groups[f.0].sub(x, y)
    }

    /// `a^* x` for `x` in `D_f`.
    #[inline]
    pub fn pre(&self, a: MorId, f: MorId, x: usize) -> usize {
        self.pre[a.0 * self.base.num_morphisms() + f.0].as_ref().expect("composable")[x]
    }

    /// `b_* x` for `x` in `D_f`.
    #[inline]
    pub fn post(&self, b: MorId, f: MorId, x: usize) -> usize {
        self.post[b.0 * self.base.num_morphisms() + f.0].as_ref().expect("composable")[x]
    }

    pub fn element(&self, f: MorId, x: usize) -> Vec<Int> {
        self.groups[f.0].element(x)
    }

    pub fn index_of(&self, f: MorId, coords: &[Int]) -> usize {
        self.groups[f.0].index_of(coords)
    }

    /// Composable pairs `(f, g)` of non-identities, lexicographically.
    pub fn pairs(&self) -> Vec<(MorId, MorId)> {
        let c = &self.base;
        let mut out = Vec::new();
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            for &g in c.hom_into(c.src(f)) {
                if !c.is_identity(g) {
                    out.push((f, g));
                }
            }
        }
        out
    }

    /// Element indices of a normalized cochain; rejects values on pairs with
    /// an identity (unless zero) and on non-composable pairs.
    pub fn cochain_indices(&self, c2: &TwoCochain) -> Result<BTreeMap<(MorId, MorId), usize>, LinExtError> {
        let c = &self.base;
        let mut out = BTreeMap::new();
        for ((f, g), x) in c2.iter() {
            let names = || (c.mor_name(f).to_string(), c.mor_name(g).to_string());
            let fg = c.compose(f, g).ok_or_else(|| {
                let (a, b) = names();
                LinExtError::CochainShape(a, b)
            })?;
            if x.len() != self.groups[fg.0].group().ngens() {
                let (a, b) = names();
                return Err(LinExtError::CochainShape(a, b));
            }
            let idx = self.index_of(fg, x);
            if idx == 0 {
                continue;
            }
            if c.is_identity(f) || c.is_identity(g) {
                let (a, b) = names();
                return Err(LinExtError::NotNormalized(a, b));
            }
            out.insert((f, g), idx);
        }
        Ok(out)
    }

    /// The first non-identity triple where `δc` is nonzero.
    pub fn cocycle_failure(&self, cv: &BTreeMap<(MorId, MorId), usize>) -> Option<(MorId, MorId, MorId)> {
        let c = &self.base;
        let val = |f: MorId, g: MorId| cv.get(&(f, g)).copied().unwrap_or(0);
        for (f, g) in self.pairs() {
            let fg = c.comp(f, g);
            for &h in c.hom_into(c.src(g)) {
                if c.is_identity(h) {
                    continue;
                }
                let gh = c.comp(g, h);
                let t = c.comp(fg, h);
                // f_* c(g, h) - c(fg, h) + c(f, gh) - h^* c(f, g)
                let mut acc = self.post(f, gh, val(g, h));
                acc = self.sub(t, acc, val(fg, h));
                acc = self.add(t, acc, val(f, gh));
                acc = self.sub(t, acc, self.pre(h, fg, val(f, g)));
                if acc != 0 {
                    return Some((f, g, h));
                }
            }
        }
        None
    }

    /// The cochain with the given element indices.
    pub fn cochain_from_indices(&self, pairs: &[(MorId, MorId)], idx: &[usize]) -> TwoCochain {
        let mut out = TwoCochain::zero();
        for (&(f, g), &x) in pairs.iter().zip(idx) {
            if x != 0 {
                out.set(f, g, self.element(self.base.comp(f, g), x));
            }
        }
        out
    }
}
