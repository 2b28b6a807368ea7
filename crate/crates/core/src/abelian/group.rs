use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{smith_normal_form, Lattice};
use super::{AbelianError, Int, IntMatrix};

/// The abelian group `Z^ngens / column-span(relations)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FPAbelianGroup {
    ngens: usize,
    relations: IntMatrix,
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_i | d_{i+1}` and every `d_i >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl Invariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(Int::one(), |acc, d| acc * d))
    }
}

/// Formats as `Z^r + Z/d1 + Z/d2`, with `Z` for rank one and `0` for the trivial group.
impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(" + ")
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

impl FPAbelianGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self, AbelianError> {
        if relations.rows() != ngens {
            return Err(AbelianError::RelationShape { ngens, rows: relations.rows() });
        }
        Ok(FPAbelianGroup { ngens, relations })
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FPAbelianGroup { ngens: rank, relations: IntMatrix::zeros(rank, 0) }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = 1` the trivial group on one generator.
    pub fn cyclic(d: impl Into<Int>) -> Self {
        let d = d.into();
        if d.is_zero() {
            return Self::free(1);
        }
        FPAbelianGroup { ngens: 1, relations: IntMatrix::from_vec(1, 1, vec![d]) }
    }

    /// The canonical presentation of the given invariants: torsion generators
    /// first, then the free ones.
    pub fn from_invariants(inv: &Invariants) -> Self {
        let t = inv.torsion.len();
        let n = t + inv.free_rank;
        let mut rel = IntMatrix::zeros(n, t);
        for (i, d) in inv.torsion.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        FPAbelianGroup { ngens: n, relations: rel }
    }

    #[inline]
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    #[inline]
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariant_factors(&self) -> Invariants {
        let sm = smith_normal_form(&self.relations);
        let mut torsion = Vec::new();
        for d in sm.diagonal() {
            if !d.is_one() {
                torsion.push(d);
            }
        }
        Invariants { free_rank: self.ngens - sm.rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.relation_lattice().rank() == self.ngens && self.invariant_factors().is_trivial()
    }

    pub fn order(&self) -> Option<Int> {
        self.invariant_factors().order()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::spanned_by(&self.relations)
    }

    /// Whether the coordinate vector `x` denotes the zero element.
    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.relation_lattice().contains(x)
    }

    pub fn elements_equal(&self, x: &[Int], y: &[Int]) -> bool {
        let d: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.invariant_factors(), f)
    }
}

/// A homomorphism given by an integer matrix on generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    src: FPAbelianGroup,
    dst: FPAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and that relations of `src` map into relations of `dst`.
    pub fn new(src: FPAbelianGroup, dst: FPAbelianGroup, matrix: IntMatrix) -> Result<Self, AbelianError> {
        if matrix.rows() != dst.ngens || matrix.cols() != src.ngens {
            return Err(AbelianError::HomShape {
                expected: (dst.ngens, src.ngens),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        let image = matrix.mul(&src.relations);
        if !dst.relation_lattice().contains_columns(&image) {
            return Err(AbelianError::NotWellDefined);
        }
        Ok(GroupHom { src, dst, matrix })
    }

    pub fn identity(g: &FPAbelianGroup) -> Self {
        GroupHom { src: g.clone(), dst: g.clone(), matrix: IntMatrix::identity(g.ngens) }
    }

    pub fn zero(src: &FPAbelianGroup, dst: &FPAbelianGroup) -> Self {
        GroupHom { src: src.clone(), dst: dst.clone(), matrix: IntMatrix::zeros(dst.ngens, src.ngens) }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FPAbelianGroup, k: impl Into<Int>) -> Self {
        let k = k.into();
        GroupHom { src: g.clone(), dst: g.clone(), matrix: IntMatrix::identity(g.ngens).scale(&k) }
    }

    pub fn src(&self) -> &FPAbelianGroup {
        &self.src
    }

    pub fn dst(&self) -> &FPAbelianGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom, AbelianError> {
        if first.dst != self.src {
            return Err(AbelianError::ComposeMismatch);
        }
        Ok(GroupHom { src: first.src.clone(), dst: self.dst.clone(), matrix: self.matrix.mul(&first.matrix) })
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        self.same_type(other)?;
        Ok(GroupHom { src: self.src.clone(), dst: self.dst.clone(), matrix: self.matrix.add(&other.matrix) })
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom, AbelianError> {
        self.same_type(other)?;
        Ok(GroupHom { src: self.src.clone(), dst: self.dst.clone(), matrix: self.matrix.sub(&other.matrix) })
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom { src: self.src.clone(), dst: self.dst.clone(), matrix: self.matrix.neg() }
    }

    fn same_type(&self, other: &GroupHom) -> Result<(), AbelianError> {
        if self.src != other.src || self.dst != other.dst {
            Err(AbelianError::ComposeMismatch)
        } else {
            Ok(())
        }
    }

    /// Equality of the denoted maps: matrices may differ by relation columns of `dst`.
    pub fn equals(&self, other: &GroupHom) -> bool {
        if self.src != other.src || self.dst != other.dst {
            return false;
        }
        self.dst.relation_lattice().contains_columns(&self.matrix.sub(&other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.dst.relation_lattice().contains_columns(&self.matrix)
    }

    /// The kernel, presented on its own generators, with its inclusion into `src`.
    pub fn kernel(&self) -> super::Subquotient {
        super::complex::subquotient(&self.src, &IntMatrix::zeros(self.src.ngens, 0), &self.matrix, &self.dst)
            .expect("empty image lies in every kernel")
    }

    /// `dst / (image + relations)`.
    pub fn cokernel(&self) -> FPAbelianGroup {
        FPAbelianGroup { ngens: self.dst.ngens, relations: self.matrix.hcat(&self.dst.relations) }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    /// Bijectivity on the denoted groups: trivial kernel and trivial cokernel.
    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// The inverse map, if `self` is an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        // solve M x + R_dst y = e_j for every generator of dst
        let system = self.matrix.hcat(&self.dst.relations);
        let n = self.dst.ngens;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Int::zero(); n];
            e[j] = Int::one();
            let sol = super::snf::solve(&system, &e)?;
            cols.push(sol[..self.src.ngens].to_vec());
        }
        let matrix = IntMatrix::from_columns(self.src.ngens, &cols);
        Some(GroupHom { src: self.dst.clone(), dst: self.src.clone(), matrix })
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FPAbelianGroup,
    pub inclusions: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
    /// Generator offset of each summand.
    pub offsets: Vec<usize>,
}

pub fn direct_sum(groups: &[FPAbelianGroup]) -> DirectSum {
    let ngens: usize = groups.iter().map(|g| g.ngens).sum();
    let nrel: usize = groups.iter().map(|g| g.relations.cols()).sum();
    let mut rel = IntMatrix::zeros(ngens, nrel);
    let mut offsets = Vec::with_capacity(groups.len());
    let (mut r, mut c) = (0, 0);
    for g in groups {
        offsets.push(r);
        rel.set_block(r, c, &g.relations);
        r += g.ngens;
        c += g.relations.cols();
    }
    let sum = FPAbelianGroup { ngens, relations: rel };
    let mut inclusions = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    for (g, &off) in groups.iter().zip(&offsets) {
        let mut inc = IntMatrix::zeros(ngens, g.ngens);
        let mut proj = IntMatrix::zeros(g.ngens, ngens);
        for i in 0..g.ngens {
            inc[(off + i, i)] = Int::one();
            proj[(i, off + i)] = Int::one();
        }
        inclusions.push(GroupHom { src: g.clone(), dst: sum.clone(), matrix: inc });
        projections.push(GroupHom { src: sum.clone(), dst: g.clone(), matrix: proj });
    }
    DirectSum { group: sum, inclusions, projections, offsets }
}

/// Explicit enumeration of a finite group.
///
/// Elements are indexed `0..order` by mixed-radix canonical coordinates over
/// the invariant factors; index `0` is the zero element.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    group: FPAbelianGroup,
    moduli: Vec<usize>,
    /// Rows of the Smith transform that carry the nontrivial factors.
    to_canon: IntMatrix,
    /// Generator-coordinate representatives of the canonical basis.
    from_canon: IntMatrix,
    order: usize,
}

impl FiniteGroup {
    /// Fails if the group is infinite or its order exceeds `max_order`.
    pub fn new(group: &FPAbelianGroup, max_order: usize) -> Result<Self, AbelianError> {
        let sm = smith_normal_form(&group.relations);
        if sm.rank < group.ngens {
            return Err(AbelianError::Infinite);
        }
        let mut moduli = Vec::new();
        let mut rows = Vec::new();
        let mut order: usize = 1;
        for (i, d) in sm.diagonal().into_iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let m = d.to_usize().filter(|&m| m <= max_order).ok_or(AbelianError::TooLarge)?;
            order = order.checked_mul(m).filter(|&o| o <= max_order).ok_or(AbelianError::TooLarge)?;
            moduli.push(m);
            rows.push(i);
        }
        let to_canon = IntMatrix::from_fn(rows.len(), group.ngens, |k, j| sm.u[(rows[k], j)].clone());
        let from_canon = IntMatrix::from_fn(group.ngens, rows.len(), |i, k| sm.u_inv[(i, rows[k])].clone());
        Ok(FiniteGroup { group: group.clone(), moduli, to_canon, from_canon, order })
    }

    pub fn group(&self) -> &FPAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.moduli.len());
        for &m in self.moduli.iter().rev() {
            out.push(idx % m);
            idx /= m;
        }
        out.reverse();
        out
    }

    fn index_from_digits(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.moduli).fold(0, |acc, (&d, &m)| acc * m + d)
    }

    /// Index of the element with generator coordinates `x`.
    pub fn index_of(&self, x: &[Int]) -> usize {
        let c = self.to_canon.mul_vec(x);
        let digits: Vec<usize> =
            c.iter().zip(&self.moduli).map(|(v, &m)| v.mod_floor(&Int::from(m)).to_usize().unwrap_or(0)).collect();
        self.index_from_digits(&digits)
    }

    /// A generator-coordinate representative of element `idx`.
    pub fn element(&self, idx: usize) -> Vec<Int> {
        let d: Vec<Int> = self.digits(idx).into_iter().map(Int::from).collect();
        self.from_canon.mul_vec(&d)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da.iter().zip(&db).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect();
        self.index_from_digits(&s)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = self.digits(a).iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect();
        self.index_from_digits(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Lookup table of `h` from `self` into `target`.
    pub fn hom_table(&self, h: &GroupHom, target: &FiniteGroup) -> Vec<usize> {
        (0..self.order).map(|i| target.index_of(&h.apply(&self.element(i)))).collect()
    }
}
