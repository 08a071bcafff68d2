//! Kernels, images, solving and sublattice comparisons over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::snf;
use crate::IntMatrix;

/// Saturated integer kernel of `a` (as columns) together with a left inverse of that basis.
pub fn kernel_with_left_inverse(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = a.cols();
    let s = snf(a);
    let r = s.rank();
    (s.v.column_range(r..n), s.v_inv.row_range(r..n))
}

/// Basis (columns) of the saturated integer kernel `{x ∈ ℤⁿ : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    kernel_with_left_inverse(a).0
}

pub fn rank(a: &IntMatrix) -> usize {
    snf(a).rank()
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let s = snf(a);
    let c = s.u.mul_vec(b);
    let r = s.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&s.invariant_factors[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(s.v.mul_vec(&y))
}

/// Column-wise solution of `A X = B`.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let s = snf(a);
    let c = s.u.mul(b);
    let r = s.rank();
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for i in r..c.rows() {
            if !c.get(i, j).is_zero() {
                return None;
            }
        }
        for i in 0..r {
            let (q, rem) = c.get(i, j).div_rem(&s.invariant_factors[i]);
            if !rem.is_zero() {
                return None;
            }
            y.set(i, j, q);
        }
    }
    Some(s.v.mul(&y))
}

/// Does the column span of `gens` contain `v`?
pub fn contains(gens: &IntMatrix, v: &[BigInt]) -> bool {
    solve(gens, v).is_some()
}

/// Is the column span of `a` contained in that of `b`?
pub fn is_sublattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.rows(), b.rows(), "ambient dimension mismatch");
    a.cols() == 0 || solve_matrix(b, a).is_some()
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    is_sublattice(a, b) && is_sublattice(b, a)
}

/// A basis (columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let s = snf(gens);
    let r = s.rank();
    // gens = U⁻¹ D V⁻¹, so the span is U⁻¹ · diag(d) restricted to the first r columns.
    let mut b = s.u_inv.column_range(0..r);
    for j in 0..r {
        for i in 0..b.rows() {
            let e = b.get(i, j) * &s.invariant_factors[j];
            b.set(i, j, e);
        }
    }
    b
}

/// `{x : A x ∈ span(L)}` as a generating set of columns.
pub fn preimage(a: &IntMatrix, l: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), l.rows(), "preimage shape mismatch");
    let n = a.cols();
    let stacked = a.hstack(&l.scale(&BigInt::from(-1)));
    let k = kernel_basis(&stacked);
    lattice_basis(&k.row_range(0..n))
}

/// Saturation of the column span: `(ℚ · span) ∩ ℤⁿ`.
pub fn saturation(gens: &IntMatrix) -> IntMatrix {
    // The left kernel of the span cuts out its rational hull.
    let orth = kernel_basis(&gens.transpose());
    kernel_basis(&orth.transpose())
}

/// Index `[ℤⁿ ∩ ℚ·span : span]` of a full-rank-in-its-hull sublattice (0 if not of equal rank).
pub fn index_in_saturation(gens: &IntMatrix) -> BigInt {
    let s = snf(gens);
    s.invariant_factors.iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&IntMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k.cols(), 1);
        assert!(k.column(0) == v(&[1, -1]) || k.column(0) == v(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&IntMatrix::from_rows(&[[2, 4]]));
        assert!(k.column(0) == v(&[2, -1]) || k.column(0) == v(&[-2, 1]));
    }

    #[test]
    fn solving() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(solve(&a, &v(&[4, 9])), Some(v(&[2, 3])));
        assert_eq!(solve(&a, &v(&[1, 0])), None);
        assert!(contains(&IntMatrix::from_rows(&[[2], [2]]), &v(&[4, 4])));
        assert!(!contains(&IntMatrix::from_rows(&[[2], [2]]), &v(&[2, 4])));
    }

    #[test]
    fn lattices() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 2]]);
        let b = IntMatrix::from_rows(&[[1, 0], [1, 2]]);
        assert!(is_sublattice(&a, &b));
        assert!(!is_sublattice(&b, &a));
        assert!(same_lattice(&saturation(&a), &IntMatrix::identity(2)));
        assert_eq!(index_in_saturation(&a), BigInt::from(4));
        let p = preimage(&IntMatrix::from_rows(&[[3]]), &IntMatrix::from_rows(&[[6]]));
        assert!(same_lattice(&p, &IntMatrix::from_rows(&[[2]])));
    }
}
