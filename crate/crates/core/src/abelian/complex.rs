use alloc::vec::Vec;

use super::snf::{integer_kernel, Lattice};
use super::{AbelianError, FPAbelianGroup, GroupHom, Int, IntMatrix};

/// A subquotient `K / I` of an ambient group, presented on a basis of `K`.
///
/// `lift` has one column per generator of `group`, giving its coordinates in
/// the ambient generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FPAbelianGroup,
    pub lift: IntMatrix,
    basis: Lattice,
}

impl Subquotient {
    /// Coordinates of an ambient element of `K` in the generators of `group`.
    pub fn class_of(&self, x: &[Int]) -> Option<Vec<Int>> {
        self.basis.coordinates(x)
    }

    /// An ambient representative of a class.
    pub fn representative(&self, coords: &[Int]) -> Vec<Int> {
        self.lift.mul_vec(coords)
    }
}

/// `ker(map) / (span(image) + relations)` inside `ambient`.
///
/// `map` is a generator matrix `ambient -> target`; `image` holds ambient
/// elements that must lie in the kernel. Returns `None` if one does not.
pub fn subquotient(
    ambient: &FPAbelianGroup,
    image: &IntMatrix,
    map: &IntMatrix,
    target: &FPAbelianGroup,
) -> Option<Subquotient> {
    let n = ambient.ngens();
    // x with map x in the relation span of target
    let stacked = map.hcat(target.relations());
    let k = integer_kernel(&stacked).row_range(0, n);
    let basis = Lattice::spanned_by(&k);
    let lift = basis.basis().clone();
    let quot = image.hcat(ambient.relations());
    let mut cols = Vec::with_capacity(quot.cols());
    for j in 0..quot.cols() {
        cols.push(basis.coordinates(&quot.column(j))?);
    }
    let rel = IntMatrix::from_columns(basis.rank(), &cols);
    let group = FPAbelianGroup::new(basis.rank(), rel).ok()?;
    Some(Subquotient { group, lift, basis })
}

/// A finite cochain complex `C^0 -> C^1 -> ... -> C^top`.
///
/// Degrees outside the stored range denote the zero group.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    groups: Vec<FPAbelianGroup>,
    differentials: Vec<GroupHom>,
}

impl CochainComplex {
    /// `differentials[n]` maps `groups[n]` to `groups[n + 1]`; either one
    /// fewer differential than groups, or equally many with the last one
    /// dropped as it leaves the stored range.
    pub fn new(groups: Vec<FPAbelianGroup>, differentials: Vec<GroupHom>) -> Result<Self, AbelianError> {
        for (n, d) in differentials.iter().enumerate() {
            if groups.get(n) != Some(d.src()) || groups.get(n + 1) != Some(d.dst()) {
                return Err(AbelianError::DegreeShape { degree: n });
            }
        }
        for n in 1..differentials.len() {
            if !differentials[n].compose(&differentials[n - 1])?.is_zero() {
                return Err(AbelianError::NotAComplex { degree: n - 1 });
            }
        }
        Ok(CochainComplex { groups, differentials })
    }

    pub fn groups(&self) -> &[FPAbelianGroup] {
        &self.groups
    }

    pub fn differentials(&self) -> &[GroupHom] {
        &self.differentials
    }

    pub fn group(&self, n: usize) -> FPAbelianGroup {
        self.groups.get(n).cloned().unwrap_or_else(FPAbelianGroup::zero)
    }

    /// `d^n` as a matrix, zero when it leaves the stored range.
    fn differential_matrix(&self, n: usize) -> IntMatrix {
        match self.differentials.get(n) {
            Some(d) => d.matrix().clone(),
            None => IntMatrix::zeros(self.group(n + 1).ngens(), self.group(n).ngens()),
        }
    }

    /// `ker d^n / im d^(n-1)` with representatives.
    pub fn cohomology_with_representatives(&self, n: usize) -> Subquotient {
        let here = self.group(n);
        let image = if n == 0 { IntMatrix::zeros(here.ngens(), 0) } else { self.differential_matrix(n - 1) };
        subquotient(&here, &image, &self.differential_matrix(n), &self.group(n + 1))
            .expect("validated complex has d d = 0")
    }

    pub fn cohomology(&self, n: usize) -> FPAbelianGroup {
        self.cohomology_with_representatives(n).group
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Invariants;
    use alloc::vec;

    fn z() -> FPAbelianGroup {
        FPAbelianGroup::free(1)
    }

    #[test]
    fn times_two() {
        let d = GroupHom::scalar(&z(), 2);
        let cx = CochainComplex::new(vec![z(), z()], vec![d]).unwrap();
        assert!(cx.cohomology(0).is_trivial());
        assert_eq!(cx.cohomology(1).invariant_factors(), Invariants { free_rank: 0, torsion: vec![Int::from(2)] });
        assert!(cx.cohomology(5).is_trivial());
    }

    #[test]
    fn zero_complex() {
        let zero = FPAbelianGroup::zero();
        let d = GroupHom::zero(&zero, &zero);
        let cx = CochainComplex::new(vec![zero.clone(), zero], vec![d]).unwrap();
        for n in 0..4 {
            assert!(cx.cohomology(n).is_trivial());
        }
    }

    #[test]
    fn short_exact() {
        let z2 = FPAbelianGroup::free(2);
        let d0 = GroupHom::new(z(), z2.clone(), IntMatrix::from_rows(&[[1], [-1]])).unwrap();
        let d1 = GroupHom::new(z2.clone(), z(), IntMatrix::from_rows(&[[1, 1]])).unwrap();
        let cx = CochainComplex::new(vec![z(), z2, z()], vec![d0, d1]).unwrap();
        for n in 0..3 {
            assert!(cx.cohomology(n).is_trivial(), "degree {n}");
        }
    }

    #[test]
    fn rejects_non_complex() {
        let d = GroupHom::identity(&z());
        let err = CochainComplex::new(vec![z(), z(), z()], vec![d.clone(), d]).unwrap_err();
        assert_eq!(err, AbelianError::NotAComplex { degree: 0 });
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 --x2--> Z/4 --x2--> Z/4: H^1 = ker 2 / im 2 = 0
        let g = FPAbelianGroup::cyclic(4);
        let d = GroupHom::scalar(&g, 2);
        let cx = CochainComplex::new(vec![g.clone(), g.clone(), g], vec![d.clone(), d]).unwrap();
        assert_eq!(cx.cohomology(0).order(), Some(Int::from(2)));
        assert!(cx.cohomology(1).is_trivial());
        assert_eq!(cx.cohomology(2).order(), Some(Int::from(2)));
    }
}
