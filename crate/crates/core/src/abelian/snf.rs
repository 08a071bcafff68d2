use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{neg, Matrix, Overflow, Scalar};

/// Smith normal form `U · A · V = D` together with the inverses of both transforms.
#[derive(Clone, PartialEq, Eq)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_r`, all positive.
    pub invariant_factors: Vec<T>,
}

pub type SnfResult = Snf<BigInt>;

impl<T: std::fmt::Display> std::fmt::Debug for Snf<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Snf {{ u: {}, d: {}, v: {} }}", self.u, self.d, self.v)
    }
}

impl<T: Scalar> Snf<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Work<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] -= q·row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.d.row_axpy(dst, src, q)?;
        self.u.row_axpy(dst, src, q)?;
        self.u_inv.col_axpy(src, dst, &neg(q)?)
    }

    /// col[dst] -= q·col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.d.col_axpy(dst, src, q)?;
        self.v.col_axpy(dst, src, q)?;
        self.v_inv.row_axpy(src, dst, &neg(q)?)
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        self.d.negate_row(i)?;
        self.u.negate_row(i)?;
        self.u_inv.negate_col(i)
    }

    /// Smallest nonzero |entry| in the trailing block, ties to the smallest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = self.d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let unit = a.is_one();
                    best = Some((i, j, a));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form over any [`Scalar`]. Fixed-width scalars report [`Overflow`] rather than wrap.
///
/// Pivot rule: smallest nonzero absolute value in the remaining block, ties broken by the
/// lexicographically smallest (row, col). The output is a deterministic function of the input.
pub fn smith<T: Scalar>(a: &Matrix<T>) -> Result<Snf<T>, Overflow> {
    let (m, n) = a.shape();
    let mut w = Work {
        d: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let e = w.d.get(i, t).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(&p);
                w.row_op(i, t, &q)?;
                if !w.d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let e = w.d.get(t, j).clone();
                if e.is_zero() {
                    continue;
                }
                let q = e.div_floor(&p);
                w.col_op(j, t, &q)?;
                if !w.d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder is now smaller than the pivot: re-pivot within row t / column t.
                let (pi, pj) = w.pivot(t).expect("nonzero block");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // Row and column cleared; enforce divisibility on the rest of the block.
            let mut bad = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.d.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row[t] += row[i]
                    w.row_op(t, i, &neg(&T::one())?)?;
                }
                None => break,
            }
        }
        if w.d.get(t, t).is_negative() {
            w.negate_row(t)?;
        }
        factors.push(w.d.get(t, t).clone());
        t += 1;
    }
    Ok(Snf { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, v_inv: w.v_inv, invariant_factors: factors })
}

/// Smith normal form of an arbitrary-precision matrix. Runs in `i64` when the entries fit and
/// silently restarts in `BigInt` if an intermediate value overflows.
pub fn snf(a: &Matrix<BigInt>) -> SnfResult {
    if let Some(small) = a.to_i64() {
        if let Ok(s) = smith(&small) {
            return Snf {
                u: s.u.to_big(),
                u_inv: s.u_inv.to_big(),
                d: s.d.to_big(),
                v: s.v.to_big(),
                v_inv: s.v_inv.to_big(),
                invariant_factors: s.invariant_factors.into_iter().map(BigInt::from).collect(),
            };
        }
    }
    smith(a).expect("BigInt arithmetic cannot overflow")
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &Matrix<BigInt>) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}
