//! Derivations `d(f g) = f_* d(g) + g^* d(f)` as kernels of integer linear
//! systems, and the splitting of `ker δ¹` on free categories.
//!
//! On a free category the 1-cocycles of the full complex are determined by
//! their values on the generating edges. Splitting the edges into
//! generators and structural edges, `ker δ¹` is the internal direct sum of
//! the cocycles vanishing on generators and the derivations vanishing on
//! structural edges. It is not the group of structured derivations alone.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::{direct_sum, integer_kernel, subquotient, FPAbelianGroup, Int, IntMatrix, Lattice, Subquotient};
use crate::bwcoh::{bw_complex, BWError, BWOptions};
use crate::fincat::{CCStructure, FinCategory, FinFunctor, MorId, StructureError};
use crate::linext::LinearExtension;
use crate::natsys::NaturalSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// Derivations of the bare category.
    Plain,
    /// Also vanishing on chosen projections.
    Lawvere,
    /// Also vanishing on chosen projections and evaluations.
    Ccc,
}

impl core::str::FromStr for Flavor {
    type Err = DerError;

    fn from_str(s: &str) -> Result<Self, DerError> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "lawvere" => Ok(Flavor::Lawvere),
            "ccc" => Ok(Flavor::Ccc),
            _ => Err(DerError::UnknownFlavor(s.to_string())),
        }
    }
}

impl core::fmt::Display for Flavor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Flavor::Plain => "plain",
            Flavor::Lawvere => "lawvere",
            Flavor::Ccc => "ccc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerError {
    #[error("unknown flavor `{0}`")]
    UnknownFlavor(String),
    #[error("flavor `{0}` needs a cartesian structure")]
    MissingStructure(Flavor),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("not free on the designated edges: {0}")]
    NotFree(String),
    #[error(transparent)]
    BW(#[from] BWError),
    #[error("vector has the wrong length")]
    Shape,
}

/// Solutions of the derivation system, embedded in `⊕_f D_f`.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    flavor: Flavor,
    coeff: NaturalSystem,
    vanishing: Vec<MorId>,
    ambient: FPAbelianGroup,
    offsets: Vec<usize>,
    solutions: Subquotient,
}

impl DerivationSpace {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn coeff(&self) -> &NaturalSystem {
        &self.coeff
    }

    /// `Der` as an abstract group.
    pub fn group(&self) -> &FPAbelianGroup {
        &self.solutions.group
    }

    /// `⊕_f D_f`, one block per morphism in id order.
    pub fn ambient(&self) -> &FPAbelianGroup {
        &self.ambient
    }

    /// Columns are the generators of [`group`](Self::group) in `⊕_f D_f`.
    pub fn embedding(&self) -> &IntMatrix {
        &self.solutions.lift
    }

    /// Morphisms on which every solution vanishes by flavor.
    pub fn structural(&self) -> &[MorId] {
        &self.vanishing
    }

    /// The ambient vector of an element given in generators of `group`.
    pub fn element(&self, coords: &[Int]) -> Vec<Int> {
        self.solutions.representative(coords)
    }

    /// The block of `x` at `f`.
    pub fn value<'a>(&self, x: &'a [Int], f: MorId) -> &'a [Int] {
        let n = self.coeff.value(f).ngens();
        &x[self.offsets[f.0]..self.offsets[f.0] + n]
    }

    /// Checks Leibniz on every composable pair and the flavor constraints
    /// directly, without the solver.
    pub fn contains(&self, x: &[Int]) -> bool {
        x.len() == self.ambient.ngens() && is_derivation(&self.coeff, &self.vanishing, |f| self.value(x, f).to_vec())
    }

    /// Every element, for finite `Der` of order at most `max`.
    pub fn elements(&self, max: usize) -> Option<Vec<Vec<Int>>> {
        let fg = crate::abelian::FiniteGroup::new(self.group(), max).ok()?;
        Some((0..fg.order()).map(|i| self.element(&fg.element(i))).collect())
    }
}

/// Whether `d` satisfies Leibniz on all composable pairs and vanishes on
/// `vanishing`.
pub fn is_derivation(coeff: &NaturalSystem, vanishing: &[MorId], d: impl Fn(MorId) -> Vec<Int>) -> bool {
    let c = coeff.base();
    for f in c.morphisms() {
        for &g in c.hom_into(c.src(f)) {
            let fg = c.comp(f, g);
            let lhs = d(fg);
            let rhs = coeff.post_matrix(f, g).mul_vec(&d(g));
            let rhs2 = coeff.pre_matrix(g, f).mul_vec(&d(f));
            let diff: Vec<Int> = rhs.iter().zip(&rhs2).zip(&lhs).map(|((a, b), l)| a + b - l).collect();
            if !coeff.value(fg).is_zero_element(&diff) {
                return false;
            }
        }
    }
    vanishing.iter().all(|&s| coeff.value(s).is_zero_element(&d(s)))
}

fn structural(c: &FinCategory, s: Option<&CCStructure>, flavor: Flavor) -> Result<Vec<MorId>, DerError> {
    if flavor == Flavor::Plain {
        return Ok(Vec::new());
    }
    let s = s.ok_or(DerError::MissingStructure(flavor))?;
    s.validate_terminal(c)?;
    s.validate_products(c)?;
    let mut out: Vec<MorId> = s.products().flat_map(|(_, p)| [p.p1, p.p2]).collect();
    if flavor == Flavor::Ccc {
        s.validate_exponentials(c)?;
        out.extend(s.exponentials().map(|(_, e)| e.ev));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Leibniz rows over all composable pairs, then one identity block per
/// vanishing morphism.
fn solve_system(d: &NaturalSystem, vanishing: &[MorId]) -> (FPAbelianGroup, Vec<usize>, Subquotient) {
    let c = d.base();
    let sum = direct_sum(d.values());
    let offsets = sum.offsets.clone();
    let mut targets = Vec::new();
    let mut blocks: Vec<(MorId, MorId)> = Vec::new();
    for f in c.morphisms() {
        for &g in c.hom_into(c.src(f)) {
            blocks.push((f, g));
            targets.push(d.value(c.comp(f, g)).clone());
        }
    }
    for &s in vanishing {
        targets.push(d.value(s).clone());
    }
    let target = direct_sum(&targets);
    let mut m = IntMatrix::zeros(target.group.ngens(), sum.group.ngens());
    for (k, &(f, g)) in blocks.iter().enumerate() {
        let r = target.offsets[k];
        let fg = c.comp(f, g);
        m.add_block(r, offsets[g.0], d.post_matrix(f, g), 1);
        m.add_block(r, offsets[fg.0], &IntMatrix::identity(d.value(fg).ngens()), -1);
        m.add_block(r, offsets[f.0], d.pre_matrix(g, f), 1);
    }
    for (k, &s) in vanishing.iter().enumerate() {
        m.add_block(target.offsets[blocks.len() + k], offsets[s.0], &IntMatrix::identity(d.value(s).ngens()), 1);
    }
    let image = IntMatrix::zeros(sum.group.ngens(), 0);
    let sq = subquotient(&sum.group, &image, &m, &target.group).expect("empty image");
    (sum.group, offsets, sq)
}

pub fn derivations(d: &NaturalSystem, s: Option<&CCStructure>, flavor: Flavor) -> Result<DerivationSpace, DerError> {
    let vanishing = structural(d.base(), s, flavor)?;
    let (ambient, offsets, solutions) = solve_system(d, &vanishing);
    Ok(DerivationSpace { flavor, coeff: d.clone(), vanishing, ambient, offsets, solutions })
}

/// `f -> (d(f), f)` into the trivial extension `ext`.
pub fn derivation_to_section(
    space: &DerivationSpace,
    ext: &LinearExtension,
    x: &[Int],
) -> Result<FinFunctor, DerError> {
    if x.len() != space.ambient.ngens() {
        return Err(DerError::Shape);
    }
    let c = ext.base();
    let fin = ext.finite();
    let mor_map: Vec<MorId> =
        c.morphisms().map(|f| ext.act(fin.index_of(f, space.value(x, f)), ext.fiber(f)[0])).collect();
    FinFunctor::new(c.clone(), ext.total().clone(), c.objects().collect(), mor_map)
        .map_err(|e| DerError::NotFree(e.to_string()))
}

/// Outcome of [`ker_delta1_decomposition`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `ker δ¹` in the full complex.
    pub kernel: FPAbelianGroup,
    /// Cocycles vanishing on the generators.
    pub c0: FPAbelianGroup,
    /// Derivations vanishing on the structural edges.
    pub der: FPAbelianGroup,
    pub der_in_kernel: bool,
    pub c0_in_kernel: bool,
    pub intersection_trivial: bool,
    pub spans: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.der_in_kernel && self.c0_in_kernel && self.intersection_trivial && self.spans
    }
}

/// Checks that every non-identity morphism is a unique composite of `edges`.
pub fn check_free(c: &FinCategory, edges: &[MorId]) -> Result<(), DerError> {
    let name = |f: MorId| c.mor_name(f).to_string();
    let mut seen = BTreeMap::new();
    for &e in edges {
        if c.is_identity(e) {
            return Err(DerError::NotFree(alloc::format!("edge `{}` is an identity", name(e))));
        }
        if seen.insert(e, ()).is_some() {
            return Err(DerError::NotFree(alloc::format!("edge `{}` listed twice", name(e))));
        }
    }
    let mut count = vec![0usize; c.num_morphisms()];
    // paths as (composite, length)
    let mut frontier: Vec<(MorId, usize)> = edges.iter().map(|&e| (e, 1)).collect();
    while let Some((p, len)) = frontier.pop() {
        if c.is_identity(p) {
            return Err(DerError::NotFree(alloc::format!("a path of edges composes to `{}`", name(p))));
        }
        if len > c.num_objects() {
            return Err(DerError::NotFree("edges form a cycle".to_string()));
        }
        count[p.0] += 1;
        if count[p.0] > 1 {
            return Err(DerError::NotFree(alloc::format!("`{}` factors in two ways", name(p))));
        }
        for &e in edges {
            if c.src(e) == c.tgt(p) {
                frontier.push((c.comp(e, p), len + 1));
            }
        }
    }
    match c.morphisms().find(|&f| !c.is_identity(f) && count[f.0] == 0) {
        Some(f) => Err(DerError::NotFree(alloc::format!("`{}` is not a composite of edges", name(f)))),
        None => Ok(()),
    }
}

/// Moves row `i` of `m` to row `place[i]` of a `rows`-row matrix.
fn permute_rows(m: &IntMatrix, rows: usize, place: &[usize]) -> IntMatrix {
    let mut from = vec![None; rows];
    for (i, &p) in place.iter().enumerate() {
        from[p] = Some(i);
    }
    IntMatrix::from_fn(rows, m.cols(), |r, j| from[r].map_or_else(Int::default, |i| m[(i, j)].clone()))
}

/// Splits `ker(δ : C¹ -> C²)` of the full complex on a free category with
/// edges `generators ∪ structural`.
pub fn ker_delta1_decomposition(
    d: &NaturalSystem,
    generators: &[MorId],
    structural: &[MorId],
) -> Result<Decomposition, DerError> {
    let c = d.base();
    let edges: Vec<MorId> = generators.iter().chain(structural).copied().collect();
    check_free(c, &edges)?;

    let cx = bw_complex(d, 2, BWOptions::full())?;
    let c1 = cx.complex().group(1).clone();
    let delta = cx.complex().differentials()[1].clone();
    let deg1 = cx.degree(1);
    let bw_off = |f: MorId| deg1.offsets[deg1.position(&[f]).expect("every morphism is a 1-chain")];

    let kernel = delta.kernel();

    // C~0: δφ = 0 and φ(generator) = 0
    let mut targets = vec![delta.dst().clone()];
    targets.extend(generators.iter().map(|&g| d.value(g).clone()));
    let target = direct_sum(&targets);
    let mut m = IntMatrix::zeros(target.group.ngens(), c1.ngens());
    m.set_block(0, 0, delta.matrix());
    for (k, &g) in generators.iter().enumerate() {
        m.add_block(target.offsets[k + 1], bw_off(g), &IntMatrix::identity(d.value(g).ngens()), 1);
    }
    let c0 = subquotient(&c1, &IntMatrix::zeros(c1.ngens(), 0), &m, &target.group).expect("empty image");

    // Der by the Leibniz system, moved into the complex's coordinates
    let (_, offsets, der) = solve_system(d, structural);
    let mut place = vec![0; der.lift.rows()];
    for f in c.morphisms() {
        for i in 0..d.value(f).ngens() {
            place[offsets[f.0] + i] = bw_off(f) + i;
        }
    }
    let der_lift = permute_rows(&der.lift, c1.ngens(), &place);

    let kl = Lattice::spanned_by(&kernel.lift);
    let rel = Lattice::spanned_by(c1.relations());
    let der_in_kernel = kl.contains_columns(&der_lift);
    let c0_in_kernel = kl.contains_columns(&c0.lift);
    let spans = Lattice::spanned_by(&der_lift.hcat(&c0.lift)).contains_columns(&kernel.lift);
    // u, v with der u = c0 v must give a relation
    let k = integer_kernel(&der_lift.hcat(&c0.lift.neg()));
    let common = der_lift.mul(&k.row_range(0, der_lift.cols()));
    let intersection_trivial = rel.contains_columns(&common);

    Ok(Decomposition {
        kernel: kernel.group,
        c0: c0.group,
        der: der.group,
        der_in_kernel,
        c0_in_kernel,
        intersection_trivial,
        spans,
    })
}
