use std::sync::Arc;

use num_traits::One;

use super::cochain::CochainComplex;
use super::map::{CellularMap, DynamicalComplex, FactorMap};
use crate::abelian::{induced_hom, snf, FgAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::limits::{classify, limit_injective, limit_les_labeled, GroupExpr, LesReport, TowerGroup};
use crate::IntMatrix;

/// Quotient cochain complex `C^k(X) / f^* C^k(Y)` with explicit splitting data.
///
/// For every degree: `proj` maps `C^k(X)` onto the quotient basis, `section` is a right inverse
/// of `proj`, and `left_inv` is a left inverse of `f^*` with `I = f^*·left_inv + section·proj`.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    pub complex: Arc<CochainComplex>,
    pub proj: Vec<IntMatrix>,
    pub section: Vec<IntMatrix>,
    pub left_inv: Vec<IntMatrix>,
}

struct Split {
    names: Vec<String>,
    proj: IntMatrix,
    section: IntMatrix,
    left_inv: IntMatrix,
}

/// Splitting for a cell-to-cell quotient map: the first cell of each fiber represents the fiber.
fn split_cells(f: &CellularMap, k: usize) -> Result<Split> {
    let x_names = f.source.cells(k);
    let nx = x_names.len();
    let fibers = f.fibers(k);
    if fibers.iter().any(Vec::is_empty) {
        return Err(Error::NotInjectiveOnCochains { degree: k });
    }
    let mut is_rep = vec![false; nx];
    for fib in &fibers {
        is_rep[fib[0]] = true;
    }
    let kept: Vec<usize> = (0..nx).filter(|&x| !is_rep[x]).collect();
    let mut qidx = vec![usize::MAX; nx];
    for (q, &x) in kept.iter().enumerate() {
        qidx[x] = q;
    }
    let mut proj = IntMatrix::zeros(kept.len(), nx);
    let mut section = IntMatrix::zeros(nx, kept.len());
    let mut left_inv = IntMatrix::zeros(fibers.len(), nx);
    for (q, &x) in kept.iter().enumerate() {
        proj.set(q, x, One::one());
        section.set(x, q, One::one());
    }
    for (y, fib) in fibers.iter().enumerate() {
        left_inv.set(y, fib[0], One::one());
        for &x in &fib[1..] {
            proj.set(qidx[x], fib[0], (-1).into());
        }
    }
    Ok(Split { names: kept.iter().map(|&x| x_names[x].clone()).collect(), proj, section, left_inv })
}

/// Splitting for an arbitrary injective pullback with saturated image, via Smith form.
fn split_general(f: &CellularMap, k: usize) -> Result<Split> {
    let p = f.pullback_matrix(k);
    let s = snf(p);
    let r = s.rank();
    if r != p.cols() {
        return Err(Error::NotInjectiveOnCochains { degree: k });
    }
    if s.invariant_factors.iter().any(|d| !d.is_one()) {
        return Err(Error::QuotientNotFree { degree: k });
    }
    let n = p.rows();
    // P = U⁻¹ [I; 0] V⁻¹.
    let proj = s.u.row_range(r..n);
    let section = s.u_inv.column_range(r..n);
    let left_inv = s.v.mul(&s.u.row_range(0..r));
    let names = (0..n - r).map(|i| format!("q{k}.{i}")).collect();
    Ok(Split { names, proj, section, left_inv })
}

/// The quotient complex `C_Q = C(X) / f^* C(Y)`.
pub fn quotient_complex(f: &CellularMap) -> Result<QuotientComplex> {
    let d = f.source.dim();
    let cell_map = f.is_cell_map();
    let mut splits = Vec::new();
    for k in 0..=d {
        splits.push(if cell_map { split_cells(f, k)? } else { split_general(f, k)? });
    }
    let mut delta = Vec::new();
    for k in 0..d {
        delta.push(splits[k + 1].proj.mul(&f.source.delta(k)).mul(&splits[k].section));
    }
    let cells = splits.iter().map(|s| s.names.clone()).collect();
    let complex = Arc::new(CochainComplex::new(cells, delta)?);
    Ok(QuotientComplex {
        complex,
        proj: splits.iter().map(|s| s.proj.clone()).collect(),
        section: splits.iter().map(|s| s.section.clone()).collect(),
        left_inv: splits.into_iter().map(|s| s.left_inv).collect(),
    })
}

impl QuotientComplex {
    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Cochain matrix of the connecting map `C^k_Q → C^{k+1}(Y)` (lift, coboundary, pull back).
    pub fn connecting(&self, x: &CochainComplex, k: usize) -> IntMatrix {
        self.left_inv[k + 1].mul(&x.delta(k)).mul(&self.section[k])
    }

    /// The self-map induced on the quotient by the self-map of `X`.
    pub fn dynamical(&self, x: &DynamicalComplex) -> Result<DynamicalComplex> {
        let pullback =
            (0..=self.dim()).map(|k| self.proj[k].mul(x.endo.pullback_matrix(k)).mul(&self.section[k])).collect();
        let endo = CellularMap::new(self.complex.clone(), self.complex.clone(), pullback)?;
        DynamicalComplex::new(self.complex.clone(), endo)
    }
}

/// Direct-limit groups of the long exact sequence of a factor map, with exactness verified.
#[derive(Clone, Debug)]
pub struct QuotientLes {
    pub report: LesReport,
    /// `H^k(Y)` in the limit.
    pub target: Vec<GroupExpr>,
    /// `H^k(X)` in the limit.
    pub source: Vec<GroupExpr>,
    /// `H^k_Q(X, Y)` in the limit.
    pub quotient: Vec<GroupExpr>,
}

/// Builds `… → H^{k-1}_Q → H^k(Y) → H^k(X) → H^k_Q → …` for the approximants, passes it to the
/// limit, and verifies exactness at every node (with zero groups at both ends).
pub fn les_quotient(f: &FactorMap) -> Result<QuotientLes> {
    let q = quotient_complex(&f.map)?;
    let dq = q.dynamical(&f.source)?;
    let d = f.source.dim();
    let bound = (0..=d).map(|k| f.source.endo.row_sum_bound(k)).max().unwrap_or(0);
    let zero = zero_tower();
    let mut terms = vec![zero.clone()];
    let mut labels = vec!["0".to_string()];
    let mut maps: Vec<GroupHom> = Vec::new();
    let mut ty = Vec::new();
    let mut tx = Vec::new();
    let mut tq = Vec::new();
    for k in 0..=d {
        ty.push(f.target.tower(k));
        tx.push(f.source.tower(k));
        let mut t = dq.tower(k);
        t.spectral_bound = Some(bound.min(t.spectral_bound.unwrap_or(u64::MAX)));
        tq.push(t);
    }
    for k in 0..=d {
        let prev = terms.last().expect("nonempty").clone();
        let into_y = if k == 0 {
            GroupHom::zero(prev.group.clone(), ty[0].group.clone())
        } else {
            induced_hom(&q.connecting(&f.source.complex, k - 1), &tq[k - 1].group, &ty[k].group)?
        };
        maps.push(into_y);
        maps.push(induced_hom(f.map.pullback_matrix(k), &ty[k].group, &tx[k].group)?);
        maps.push(induced_hom(&q.proj[k], &tx[k].group, &tq[k].group)?);
        terms.extend([ty[k].clone(), tx[k].clone(), tq[k].clone()]);
        labels.extend([format!("H^{k}(Y)"), format!("H^{k}(X)"), format!("H^{k}_Q")]);
    }
    maps.push(GroupHom::zero(tq[d].group.clone(), zero.group.clone()));
    terms.push(zero);
    labels.push("0".into());
    let report = limit_les_labeled(&terms, &maps, &labels)?;
    let pick = |off: usize| (0..=d).map(|k| report.groups[1 + 3 * k + off].clone()).collect();
    Ok(QuotientLes { target: pick(0), source: pick(1), quotient: pick(2), report })
}

fn zero_tower() -> TowerGroup {
    TowerGroup::new(GroupHom::identity(Arc::new(FgAbGroup::trivial())))
}

/// Result of the cokernel shortcut.
#[derive(Clone, Debug)]
pub struct Lemma1 {
    /// `f^*_1` is injective in the limit, equivalently `H^0_Q = 0`.
    pub h0_vanishes: bool,
    /// `H^n_Q` computed as the limit of `coker f^*_n`.
    pub hn: GroupExpr,
}

/// `H^n_Q(X,Y) = H^n(X) / f^*_n H^n(Y)` when `H^{n+1}(Y) = 0`, and the `H^0_Q` criterion.
pub fn lemma1_shortcut(f: &FactorMap, n: usize) -> Result<Lemma1> {
    let d = f.source.dim();
    if n < d {
        let next = classify(&f.target.tower(n + 1));
        if !next.is_zero() {
            return Err(Error::HypothesisFailed(format!("H^{}(Y) = {next} is not zero", n + 1)));
        }
    }
    let tx = f.source.tower(n);
    let ty = f.target.tower(n);
    let image = f.map.pullback_matrix(n).mul(ty.group.gens());
    let coker = Arc::new(tx.group.quotient_by(&image)?);
    let endo = induced_hom(f.source.endo.pullback_matrix(n), &coker, &coker)?;
    let hn = classify(&TowerGroup::new(endo).with_bound(f.source.endo.row_sum_bound(n)));
    let h0_vanishes = if d >= 1 {
        let t1y = f.target.tower(1);
        let t1x = f.source.tower(1);
        let f1 = induced_hom(f.map.pullback_matrix(1), &t1y.group, &t1x.group)?;
        limit_injective(&f1, &t1y, &t1x)
    } else {
        true
    };
    Ok(Lemma1 { h0_vanishes, hn })
}
