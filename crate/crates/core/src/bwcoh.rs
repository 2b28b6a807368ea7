//! The Baues-Wirsching cochain complex of a finite category.
//!
//! `C^n` is the direct sum of `D_(λ_1...λ_n)` over composable chains
//! `λ_1, ..., λ_n`, and `C^0` the sum of `D_(id_A)` over objects. The
//! coboundary is
//!
//! ```text
//! (δf)(λ_1, ..., λ_(n+1)) = λ_1* f(λ_2, ..., λ_(n+1))
//!                         + Σ_(i=1..n) (-1)^i f(..., λ_i λ_(i+1), ...)
//!                         + (-1)^(n+1) λ_(n+1)^* f(λ_1, ..., λ_n)
//! ```
//!
//! where the inner faces act as the identity on coefficients since the
//! composite is unchanged. By default only normalized cochains (vanishing on
//! chains containing an identity) are used; they form a quasi-isomorphic
//! subcomplex with far fewer generators.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{
    direct_sum, AbelianError, CochainComplex, FPAbelianGroup, GroupHom, Int, IntMatrix, Invariants, Subquotient,
};
use crate::fincat::{nerve, nerve_count, nerve_normalized, FinFunctor, FunctorError, MorId, NerveTuple};
use crate::natsys::NaturalSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BWError {
    #[error("degree {degree} needs {projected} generators, above the cap of {cap}")]
    TooLarge { degree: usize, projected: u128, cap: usize },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

#[derive(Clone, Copy, Debug)]
pub struct BWOptions {
    /// Restrict to normalized cochains.
    pub normalized: bool,
    /// Abort when a degree would need more generators than this.
    pub max_generators: usize,
}

impl Default for BWOptions {
    fn default() -> Self {
        BWOptions { normalized: true, max_generators: 1_000_000 }
    }
}

impl BWOptions {
    pub fn full() -> Self {
        BWOptions { normalized: false, ..Self::default() }
    }
}

/// One degree of the complex: its chains and where each block starts.
#[derive(Clone, Debug)]
pub struct Degree {
    pub tuples: Vec<NerveTuple>,
    pub offsets: Vec<usize>,
    index: BTreeMap<Vec<MorId>, usize>,
}

impl Degree {
    /// Position of a chain in this degree, if present.
    pub fn position(&self, chain: &[MorId]) -> Option<usize> {
        self.index.get(chain).copied()
    }
}

#[derive(Clone, Debug)]
pub struct BWComplex {
    coeff: NaturalSystem,
    options: BWOptions,
    degrees: Vec<Degree>,
    complex: CochainComplex,
}

fn degree_tuples(d: &NaturalSystem, n: usize, opts: &BWOptions) -> Result<Degree, BWError> {
    let c = d.base();
    let projected = nerve_count(c, n, opts.normalized);
    let max_gens = d.values().iter().map(FPAbelianGroup::ngens).max().unwrap_or(0).max(1) as u128;
    if projected.saturating_mul(max_gens) > opts.max_generators as u128 {
        return Err(BWError::TooLarge {
            degree: n,
            projected: projected.saturating_mul(max_gens),
            cap: opts.max_generators,
        });
    }
    let tuples = if opts.normalized { nerve_normalized(c, n) } else { nerve(c, n) };
    let mut offsets = Vec::with_capacity(tuples.len());
    let mut index = BTreeMap::new();
    let mut off = 0;
    for (k, t) in tuples.iter().enumerate() {
        offsets.push(off);
        off += d.value(t.composite).ngens();
        // degree 0 chains are keyed by their identity
        let key = if n == 0 { vec![t.composite] } else { t.chain.clone() };
        index.insert(key, k);
    }
    Ok(Degree { tuples, offsets, index })
}

/// Builds `C^0 -> ... -> C^nmax` and checks `δδ = 0`.
pub fn bw_complex(d: &NaturalSystem, nmax: usize, opts: BWOptions) -> Result<BWComplex, BWError> {
    let c = d.base();
    let mut degrees = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        degrees.push(degree_tuples(d, n, &opts)?);
    }
    let groups: Vec<FPAbelianGroup> = degrees
        .iter()
        .map(|deg| {
            let blocks: Vec<FPAbelianGroup> = deg.tuples.iter().map(|t| d.value(t.composite).clone()).collect();
            direct_sum(&blocks).group
        })
        .collect();
    let mut diffs = Vec::with_capacity(nmax);
    for n in 0..nmax {
        let (src, dst) = (&degrees[n], &degrees[n + 1]);
        let mut m = IntMatrix::zeros(groups[n + 1].ngens(), groups[n].ngens());
        for (row, t) in dst.tuples.iter().enumerate() {
            let r = dst.offsets[row];
            let ch = &t.chain;
            // λ_1* f(λ_2, ..., λ_(n+1))
            let first: Vec<MorId> = if n == 0 { vec![c.id(c.src(ch[0]))] } else { ch[1..].to_vec() };
            if let Some(k) = src.position(&first) {
                m.add_block(r, src.offsets[k], d.post_matrix(ch[0], src.tuples[k].composite), 1);
            }
            // inner faces
            for i in 1..=n {
                let mut face = ch[..i - 1].to_vec();
                face.push(c.comp(ch[i - 1], ch[i]));
                face.extend_from_slice(&ch[i + 1..]);
                if let Some(k) = src.position(&face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.add_block(r, src.offsets[k], &IntMatrix::identity(d.value(t.composite).ngens()), sign);
                }
            }
            // (-1)^(n+1) λ_(n+1)^* f(λ_1, ..., λ_n)
            let last_mor = ch[n];
            let last: Vec<MorId> = if n == 0 { vec![c.id(c.tgt(ch[0]))] } else { ch[..n].to_vec() };
            if let Some(k) = src.position(&last) {
                let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
                m.add_block(r, src.offsets[k], d.pre_matrix(last_mor, src.tuples[k].composite), sign);
            }
        }
        diffs.push(GroupHom::new(groups[n].clone(), groups[n + 1].clone(), m)?);
    }
    let complex = CochainComplex::new(groups, diffs)?;
    Ok(BWComplex { coeff: d.clone(), options: opts, degrees, complex })
}

impl BWComplex {
    pub fn coeff(&self) -> &NaturalSystem {
        &self.coeff
    }

    pub fn options(&self) -> BWOptions {
        self.options
    }

    pub fn nmax(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &Degree {
        &self.degrees[n]
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    /// Cohomology in degree `n < nmax`, with representatives.
    pub fn cohomology_with_representatives(&self, n: usize) -> Subquotient {
        assert!(n < self.nmax(), "H^{n} needs the complex through degree {}", n + 1);
        self.complex.cohomology_with_representatives(n)
    }

    pub fn cohomology(&self, n: usize) -> FPAbelianGroup {
        self.cohomology_with_representatives(n).group
    }

    /// Flattens per-chain coordinates (chains missing from `values` count as zero).
    pub fn cochain_vector(&self, n: usize, values: &BTreeMap<Vec<MorId>, Vec<Int>>) -> Vec<Int> {
        let deg = &self.degrees[n];
        let total = self.complex.group(n).ngens();
        let mut v = vec![Int::from(0); total];
        for (chain, x) in values {
            if let Some(k) = deg.position(chain) {
                for (i, xi) in x.iter().enumerate() {
                    v[deg.offsets[k] + i] = xi.clone();
                }
            }
        }
        v
    }

    /// Block of chain `k` in a flattened degree-`n` cochain.
    pub fn block<'a>(&self, n: usize, k: usize, v: &'a [Int]) -> &'a [Int] {
        let deg = &self.degrees[n];
        let len = self.coeff.value(deg.tuples[k].composite).ngens();
        &v[deg.offsets[k]..deg.offsets[k] + len]
    }
}

/// `H^n(C; D)`, building the complex through degree `n + 1`.
pub fn bw_cohomology(d: &NaturalSystem, n: usize) -> Result<FPAbelianGroup, BWError> {
    Ok(bw_complex(d, n + 1, BWOptions::default())?.cohomology(n))
}

/// `H^0, ..., H^nmax` from a single complex.
pub fn bw_cohomology_range(d: &NaturalSystem, nmax: usize, opts: BWOptions) -> Result<Vec<FPAbelianGroup>, BWError> {
    let cx = bw_complex(d, nmax + 1, opts)?;
    Ok((0..=nmax).map(|n| cx.cohomology(n)).collect())
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// `(H^n(C, F^* D'), H^n(C', D'))` for each degree.
    pub degrees: Vec<(Invariants, Invariants)>,
}

impl InvarianceReport {
    pub fn agrees(&self) -> bool {
        self.degrees.iter().all(|(a, b)| a == b)
    }
}

/// Compares cohomology of `D'` with that of its pullback along an equivalence.
pub fn equivalence_invariance_check(
    functor: &FinFunctor,
    d: &NaturalSystem,
    nmax: usize,
) -> Result<InvarianceReport, BWError> {
    functor.check_equivalence()?;
    let pulled = NaturalSystem::pullback(functor, d);
    let left = bw_cohomology_range(&pulled, nmax, BWOptions::default())?;
    let right = bw_cohomology_range(d, nmax, BWOptions::default())?;
    Ok(InvarianceReport {
        degrees: left.iter().zip(&right).map(|(a, b)| (a.invariant_factors(), b.invariant_factors())).collect(),
    })
}
