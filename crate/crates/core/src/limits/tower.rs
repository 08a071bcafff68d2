use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::{radical, GroupExpr};
use crate::abelian::lattice::{is_sublattice, kernel_basis, preimage, same_lattice};
use crate::abelian::{induced_hom, solve, FgAbGroup, GroupHom};
use crate::IntMatrix;

/// Largest |eigenvalue| candidate scanned when searching for integer roots.
const ROOT_SEARCH_LIMIT: u64 = 1 << 20;

/// A stationary direct system `G → G → G → …` under one endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerGroup {
    pub group: Arc<FgAbGroup>,
    pub endo: GroupHom,
    /// Optional a-priori bound on the absolute value of every eigenvalue of the endomorphism,
    /// typically the max row sum of the cochain-level map it was induced from.
    pub spectral_bound: Option<u64>,
}

impl TowerGroup {
    pub fn new(endo: GroupHom) -> Self {
        assert!(endo.domain.is_isomorphic(&endo.codomain), "tower endomorphism must be a self-map");
        TowerGroup { group: endo.domain.clone(), endo, spectral_bound: None }
    }

    /// Tower on `ℤ/o₁ ⊕ …` (0 = free) with the given coordinate matrix.
    pub fn from_matrix(orders: &[i64], m: IntMatrix) -> crate::Result<Self> {
        let g = Arc::new(FgAbGroup::from_orders(orders));
        Ok(Self::new(GroupHom::new(g.clone(), g, m)?))
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.spectral_bound = Some(bound);
        self
    }

    pub fn orders(&self) -> &[BigInt] {
        self.group.orders()
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.endo.matrix()
    }

    /// Same tower with the endomorphism replaced by its `j`-th power (cofinal subsystem).
    pub fn power(&self, j: u32) -> TowerGroup {
        let mut h = GroupHom::identity(self.group.clone());
        for _ in 0..j {
            h = self.endo.compose(&h);
        }
        TowerGroup {
            group: self.group.clone(),
            endo: h,
            spectral_bound: self.spectral_bound.and_then(|b| b.checked_pow(j)),
        }
    }

    pub fn summary(&self) -> String {
        format!("{} under {}", self.group, self.endo.matrix())
    }

    /// Lattice of coordinate vectors that eventually map to zero (contains the torsion relations).
    pub fn eventual_kernel(&self) -> IntMatrix {
        stable_preimage(self.matrix(), self.group.order_matrix())
    }

    /// Is the element with coordinates `x` divisible by `m` in the direct limit?
    pub fn limit_divisible(&self, x: &[BigInt], m: &BigInt) -> bool {
        let g = self.group.ngens();
        let target = IntMatrix::identity(g).scale(m).hstack(&self.group.order_matrix());
        let lat = stable_preimage(self.matrix(), target);
        crate::abelian::contains(&lat, x)
    }

    /// Does the element eventually vanish?
    pub fn limit_is_zero(&self, x: &[BigInt]) -> bool {
        crate::abelian::contains(&self.eventual_kernel(), x)
    }
}

/// `⋃_N {x : E^N x ∈ L}`; the chain is ascending and stops once two successive terms agree.
pub(crate) fn stable_preimage(e: &IntMatrix, l: IntMatrix) -> IntMatrix {
    let mut cur = l;
    loop {
        let next = preimage(e, &cur);
        if is_sublattice(&next, &cur) {
            return cur;
        }
        cur = next;
    }
}

/// Restriction to a subsystem on which the endomorphism is injective: quotient by the eventual
/// kernel. The direct limit is unchanged and the free rank equals the eventual rank.
pub fn eventual_restriction(t: &TowerGroup) -> TowerGroup {
    let k = t.eventual_kernel();
    let g = t.group.ngens();
    let q = Arc::new(FgAbGroup::subquotient(&IntMatrix::zeros(0, g), &k).expect("no cocycle condition"));
    let endo = induced_hom(t.matrix(), &q, &q).expect("the eventual kernel is invariant");
    TowerGroup { group: q, endo, spectral_bound: t.spectral_bound }
}

/// Characteristic polynomial `det(xI − M)`, coefficients from the constant term up (monic).
pub fn charpoly(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "characteristic polynomial of a non-square matrix");
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        mk = next;
        let tr = m.mul(&mk).trace();
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides `p` by `(x − r)`, assuming `r` is a root.
fn deflate(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + carry * r;
        q[i] = carry.clone();
    }
    q
}

/// Integer roots of a monic polynomial with multiplicity, or `None` if some root is not an integer
/// within `bound`.
fn integer_roots(p: &[BigInt], bound: u64) -> Option<Vec<(BigInt, usize)>> {
    let mut p = p.to_vec();
    let mut roots = Vec::new();
    if p.len() == 1 {
        return Some(roots);
    }
    'outer: for a in 0..=bound {
        for s in [1i64, -1] {
            if a == 0 && s == -1 {
                continue;
            }
            let r = BigInt::from(a) * s;
            let mut mult = 0;
            while p.len() > 1 && eval(&p, &r).is_zero() {
                p = deflate(&p, &r);
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
            if p.len() == 1 {
                break 'outer;
            }
        }
    }
    (p.len() == 1).then_some(roots)
}

fn poly_of_matrix(m: &IntMatrix, roots: &[(BigInt, usize)]) -> IntMatrix {
    let n = m.rows();
    let mut acc = IntMatrix::identity(n);
    for (r, mult) in roots {
        let shifted = m.sub(&IntMatrix::identity(n).scale(r));
        for _ in 0..*mult {
            acc = acc.mul(&shifted);
        }
    }
    acc
}

fn gershgorin(m: &IntMatrix) -> Option<u64> {
    let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.abs()).sum::<BigInt>()).max();
    let cols = (0..m.cols()).map(|j| m.column(j).iter().map(|x| x.abs()).sum::<BigInt>()).max();
    match (rows, cols) {
        (Some(r), Some(c)) => r.min(c).to_u64(),
        _ => Some(0),
    }
}

/// Classifies `lim (ℤᶠ, M)` for `M` with nonzero determinant and integer eigenvalues.
///
/// Eigenvalues are grouped by the radical of their absolute value. The ±1 part always splits off
/// as a free summand (the quotient by the saturated non-unit part carries an automorphism). Each
/// non-unit class contributes `ℤ[1/radical]^{multiplicity}`, provided the direct sum of the
/// generalized eigenlattices has the same limit as the saturated non-unit part, which is checked
/// by testing that `M` acts nilpotently on the finite quotient.
fn classify_free(m: &IntMatrix, hint: Option<u64>) -> Option<(Vec<(BigInt, usize)>, usize)> {
    let f = m.rows();
    if f == 0 {
        return Some((vec![], 0));
    }
    let bound = match (gershgorin(m), hint) {
        (Some(g), Some(h)) => g.min(h),
        (Some(g), None) => g,
        (None, Some(h)) => h,
        (None, None) => return None,
    };
    if bound > ROOT_SEARCH_LIMIT {
        return None;
    }
    let roots = integer_roots(&charpoly(m), bound)?;
    if roots.iter().any(|(r, _)| r.is_zero()) {
        return None;
    }
    let mut types: BTreeMap<BigInt, Vec<(BigInt, usize)>> = BTreeMap::new();
    for (r, mult) in roots {
        types.entry(radical(&r)).or_default().push((r, mult));
    }
    let unit = types.remove(&BigInt::one()).map_or(0, |v| v.iter().map(|(_, k)| k).sum());
    let mut locs = Vec::new();
    let mut blocks = Vec::new();
    let mut all_nonunit = Vec::new();
    for (rad, rs) in &types {
        let k = kernel_basis(&poly_of_matrix(m, rs));
        let mult: usize = rs.iter().map(|(_, k)| k).sum();
        if k.cols() != mult {
            return None;
        }
        locs.push((rad.clone(), mult));
        blocks.push(k);
        all_nonunit.extend(rs.iter().cloned());
    }
    if blocks.len() > 1 {
        let n = kernel_basis(&poly_of_matrix(m, &all_nonunit));
        let l = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.hstack(b));
        let mut img = n;
        loop {
            let next = m.mul(&img).hstack(&l);
            if same_lattice(&next, &img) {
                break;
            }
            img = next;
        }
        if !same_lattice(&img, &l) {
            return None;
        }
    }
    Some((locs, unit))
}

struct Blocks {
    torsion: Vec<usize>,
    free: Vec<usize>,
}

fn blocks(orders: &[BigInt]) -> Blocks {
    let torsion = (0..orders.len()).filter(|&i| !orders[i].is_zero()).collect();
    let free = (0..orders.len()).filter(|&i| orders[i].is_zero()).collect();
    Blocks { torsion, free }
}

/// Names the direct limit of a tower. Falls back to an unclassified expression (carrying the
/// restricted tower) when the free part is not covered by the integer-eigenvalue splitting.
///
/// The torsion of the limit is the torsion of the restricted tower, on which the endomorphism
/// is bijective. The extension of the torsion-free quotient by this finite group always splits:
/// the quotient is a sequential colimit of free groups and `Hom(ℤᶠ, T)` is finite, so the
/// relevant `lim¹` vanishes.
pub fn classify(t: &TowerGroup) -> GroupExpr {
    let r = eventual_restriction(t);
    let b = blocks(r.orders());
    let e = r.matrix();
    debug_assert!(e.select_rows(&b.free).select_columns(&b.torsion).is_zero());
    let m = e.select_rows(&b.free).select_columns(&b.free);
    let torsion: Vec<BigInt> = b.torsion.iter().map(|&i| r.orders()[i].clone()).collect();
    match classify_free(&m, r.spectral_bound) {
        Some((locs, free)) => GroupExpr::new(&torsion, &locs, free),
        None => GroupExpr::unclassified(r),
    }
}

/// Searches for an explicit splitting of the torsion part at a finite stage: a map `S` from the
/// free coordinates to the torsion coordinates with `A·S + C ≡ S·M` for some power of the
/// (restricted) endomorphism `[[A, C], [0, M]]`.
pub fn torsion_section(t: &TowerGroup, max_power: u32) -> Option<(u32, IntMatrix)> {
    let r = eventual_restriction(t);
    let b = blocks(r.orders());
    let (nt, nf) = (b.torsion.len(), b.free.len());
    if nt == 0 || nf == 0 {
        return Some((1, IntMatrix::zeros(nt, nf)));
    }
    for j in 1..=max_power {
        let p = r.power(j);
        let e = p.matrix();
        let a = e.select_rows(&b.torsion).select_columns(&b.torsion);
        let c = e.select_rows(&b.torsion).select_columns(&b.free);
        let m = e.select_rows(&b.free).select_columns(&b.free);
        // Unknowns: S (nt×nf, row-major) then K (nt×nf); equation (i,j):
        //   Σ_k A[i,k] S[k,j] − Σ_k S[i,k] M[k,j] − o_i K[i,j] = −C[i,j]
        let neq = nt * nf;
        let mut sys = IntMatrix::zeros(neq, 2 * neq);
        let mut rhs = vec![BigInt::zero(); neq];
        for i in 0..nt {
            for jj in 0..nf {
                let row = i * nf + jj;
                for k in 0..nt {
                    let v = sys.get(row, k * nf + jj) + a.get(i, k);
                    sys.set(row, k * nf + jj, v);
                }
                for k in 0..nf {
                    let v = sys.get(row, i * nf + k) - m.get(k, jj);
                    sys.set(row, i * nf + k, v);
                }
                sys.set(row, neq + row, -r.orders()[b.torsion[i]].clone());
                rhs[row] = -c.get(i, jj).clone();
            }
        }
        if let Some(x) = solve(&sys, &rhs) {
            let s = IntMatrix::from_vec(nt, nf, x[..neq].to_vec());
            return Some((j, s));
        }
    }
    None
}
