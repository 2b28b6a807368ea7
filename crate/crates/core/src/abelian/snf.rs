//! Unimodular reductions: Smith normal form and column echelon form.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, IntMatrix};

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// A unimodular `[[p, q], [r, t]]` sending `(a, b)` to `(gcd, 0)`.
fn bezout(a: &Int, b: &Int) -> [Int; 4] {
    if b.is_multiple_of(a) {
        return [Int::one(), Int::zero(), -(b / a), Int::one()];
    }
    let e = a.extended_gcd(b);
    [e.x, e.y, -(b / &e.gcd), a / &e.gcd]
}

/// `(row i, row j) <- T (row i, row j)`.
fn mix_rows(m: &mut IntMatrix, i: usize, j: usize, t: &[Int; 4]) {
    for c in 0..m.cols() {
        let (x, y) = (m[(i, c)].clone(), m[(j, c)].clone());
        m[(i, c)] = &t[0] * &x + &t[1] * &y;
        m[(j, c)] = &t[2] * &x + &t[3] * &y;
    }
}

/// `(col i, col j) <- (col i, col j) T^T`, the column form of [`mix_rows`].
fn mix_cols(m: &mut IntMatrix, i: usize, j: usize, t: &[Int; 4]) {
    for r in 0..m.rows() {
        let (x, y) = (m[(r, i)].clone(), m[(r, j)].clone());
        m[(r, i)] = &t[0] * &x + &t[1] * &y;
        m[(r, j)] = &t[2] * &x + &t[3] * &y;
    }
}

/// Inverse of a unimodular 2 x 2 matrix with determinant 1.
fn inverse2(t: &[Int; 4]) -> [Int; 4] {
    [t[3].clone(), -&t[1], -&t[2], t[0].clone()]
}

/// Diagonalizes `a` by unimodular row and column operations.
///
/// The returned diagonal is nonnegative and forms a divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    // row ops on s and u are mirrored by inverse column ops on u_inv
    let rows = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i, j, t: &[Int; 4]| {
        mix_rows(s, i, j, t);
        mix_rows(u, i, j, t);
        let inv = inverse2(t);
        // u_inv <- u_inv T^-1 acts on columns i, j by the transpose pattern
        mix_cols(u_inv, i, j, &[inv[0].clone(), inv[2].clone(), inv[1].clone(), inv[3].clone()]);
    };
    let row_swap = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a, b| {
        s.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    };

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &s[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap(&mut s, &mut u, &mut u_inv, t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !s[(i, t)].is_zero() {
                    let tr = bezout(&s[(t, t)], &s[(i, t)]);
                    rows(&mut s, &mut u, &mut u_inv, t, i, &tr);
                }
            }
            for j in t + 1..n {
                if !s[(t, j)].is_zero() {
                    let tr = bezout(&s[(t, t)], &s[(t, j)]);
                    mix_cols(&mut s, t, j, &tr);
                    mix_cols(&mut v, t, j, &tr);
                    dirty |= (t + 1..m).any(|i| !s[(i, t)].is_zero());
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let p = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => rows(&mut s, &mut u, &mut u_inv, t, i, &[Int::one(), Int::one(), Int::zero(), Int::one()]),
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    Smith { s, u, v, u_inv, rank: t }
}

/// Column echelon form `h = a * v` with `v` unimodular.
///
/// The first `pivots.len()` columns of `h` are nonzero; column `k` has its
/// first nonzero entry, which is positive, at row `pivots[k]`, and the pivot
/// rows strictly increase. The remaining columns are zero, so the matching
/// columns of `v` form a basis of the integer kernel of `a`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : a x = 0}` as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.v.column_range(self.rank(), self.v.cols())
    }

    /// Basis of the lattice spanned by the columns of `a`.
    pub fn image_basis(&self) -> IntMatrix {
        self.h.column_range(0, self.rank())
    }
}

pub fn column_echelon(a: &IntMatrix) -> ColumnEchelon {
    column_echelon_impl(a, true)
}

fn column_echelon_impl(a: &IntMatrix, track: bool) -> ColumnEchelon {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut v = if track { IntMatrix::identity(n) } else { IntMatrix::zeros(0, n) };
    let mut pivots = Vec::new();
    let mut col = 0;
    for r in 0..m {
        if col == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in col..n {
                let x = &h[(r, j)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h[(r, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(col, b);
            if track {
                v.swap_cols(col, b);
            }
            let mut done = true;
            for j in col + 1..n {
                if h[(r, j)].is_zero() {
                    continue;
                }
                let q = h[(r, j)].div_floor(&h[(r, col)]);
                h.add_col_multiple(j, col, &-&q);
                if track {
                    v.add_col_multiple(j, col, &-q);
                }
                if !h[(r, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                if h[(r, col)].is_negative() {
                    h.negate_col(col);
                    if track {
                        v.negate_col(col);
                    }
                }
                pivots.push(r);
                col += 1;
                break;
            }
        }
    }
    ColumnEchelon { h, v, pivots }
}

/// A sublattice of `Z^dim`, stored as a column echelon basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by the columns of `generators`.
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        let ech = column_echelon_impl(generators, false);
        Lattice { dim: generators.rows(), basis: ech.image_basis(), pivots: ech.pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis columns, in echelon form.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `x` in the echelon basis, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.dim);
        let mut rest: Vec<Int> = x.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let piv = &self.basis[(p, k)];
            let (q, r) = rest[p].div_rem(piv);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, item) in rest.iter_mut().enumerate().skip(p) {
                    let b = &self.basis[(i, k)];
                    if !b.is_zero() {
                        *item -= b * &q;
                    }
                }
            }
            coords.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Whether every column of `m` lies in the lattice.
    pub fn contains_columns(&self, m: &IntMatrix) -> bool {
        (0..m.cols()).all(|j| self.contains(&m.column(j)))
    }
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let ech = column_echelon(a);
    let lat = Lattice { dim: a.rows(), basis: ech.image_basis(), pivots: ech.pivots.clone() };
    let y = lat.coordinates(b)?;
    let basis_part = ech.v.column_range(0, ech.rank());
    Some(basis_part.mul_vec(&y))
}

/// Basis of the integer kernel `{x : a x = 0}`, as columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    column_echelon(a).kernel_basis()
}
