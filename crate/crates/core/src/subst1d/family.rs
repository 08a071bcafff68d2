use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::ap::{ap_complex_collared, Space1D};
use super::word::Substitution1D;
use crate::abelian::{induced_hom, FgAbGroup, GroupHom};
use crate::complex::{les_quotient, quotient_complex, CellularMap, FactorMap, QuotientComplex};
use crate::error::{Error, Result};
use crate::limits::{limit_les_labeled, GroupExpr, TowerGroup};

/// The one-dimensional spaces of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family1D {
    /// Generalised Thue–Morse: `1 ↦ 1^k 1̄^ℓ`, `1̄ ↦ 1̄^k 1^ℓ`.
    Tm(u32, u32),
    /// Generalised period doubling: `a ↦ b^{k-1} a b^{ℓ-1} b`, `b ↦ b^{k-1} a b^{ℓ-1} a`.
    Pd(u32, u32),
    /// Solenoid `s ↦ s^m`.
    Sol(u32),
}

impl Family1D {
    pub fn substitution(self) -> Result<Substitution1D> {
        let rep = |x: &'static str, n: u32| std::iter::repeat_n(x, n as usize);
        match self {
            Family1D::Tm(k, l) | Family1D::Pd(k, l) if k == 0 || l == 0 => {
                Err(Error::Parse(format!("{self}: k and ℓ must be at least 1")))
            }
            Family1D::Sol(m) if m < 2 => Err(Error::Parse(format!("{self}: m must be at least 2"))),
            Family1D::Tm(k, l) => {
                let one: Vec<&str> = rep("1", k).chain(rep("1b", l)).collect();
                let bar: Vec<&str> = rep("1b", k).chain(rep("1", l)).collect();
                Substitution1D::from_named(&[("1", &one), ("1b", &bar)])
            }
            Family1D::Pd(k, l) => {
                let body =
                    |last| -> Vec<&str> { rep("b", k - 1).chain(["a"]).chain(rep("b", l - 1)).chain([last]).collect() };
                Substitution1D::from_named(&[("a", &body("b")), ("b", &body("a"))])
            }
            Family1D::Sol(m) => Substitution1D::from_named(&[("s", &rep("s", m).collect::<Vec<_>>())]),
        }
    }

    /// Length of every image (the expansion factor).
    pub fn expansion(self) -> u32 {
        match self {
            Family1D::Tm(k, l) | Family1D::Pd(k, l) => k + l,
            Family1D::Sol(m) => m,
        }
    }

    /// Once-collared approximant.
    pub fn space(self) -> Result<Space1D> {
        self.space_with_collar(1, 1)
    }

    pub fn space_with_collar(self, left: usize, right: usize) -> Result<Space1D> {
        ap_complex_collared(&self.substitution()?, left, right)
    }
}

impl fmt::Display for Family1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family1D::Tm(k, l) => write!(f, "tm:{k},{l}"),
            Family1D::Pd(k, l) => write!(f, "pd:{k},{l}"),
            Family1D::Sol(m) => write!(f, "sol:{m}"),
        }
    }
}

/// Realizes a sliding block code as a cell-to-cell map between collared complexes.
///
/// `code` reads `width` consecutive base letters of the source and returns one base letter of the
/// target, which sits over the first letter of the window. The target collar must fit inside the
/// source collar.
pub fn sliding_block_map(
    src: &Space1D,
    dst: &Space1D,
    width: usize,
    code: impl Fn(&[usize]) -> usize,
) -> Result<CellularMap> {
    let (sl, sr) = (src.system.left, src.system.right);
    let (dl, dr) = (dst.system.left, dst.system.right);
    if dl > sl || dr + width - 1 > sr {
        return Err(Error::NotACochainMap("target collar does not fit inside the source collar".into()));
    }
    let mut edges = Vec::with_capacity(src.system.letters.len());
    for w in &src.system.letters {
        let coded: Vec<usize> = (sl - dl..=sl + dr).map(|i| code(&w[i..i + width])).collect();
        let e = dst
            .system
            .index_of(&coded)
            .ok_or_else(|| Error::NotACochainMap(format!("block image {coded:?} is not a legal collared letter")))?;
        edges.push(e);
    }
    let nv = src.complex().ncells(0);
    let mut verts = vec![usize::MAX; nv];
    for (e, &img) in edges.iter().enumerate() {
        for end in [false, true] {
            let (v, w) = (src.endpoint(e, end), dst.endpoint(img, end));
            if verts[v] == usize::MAX {
                verts[v] = w;
            } else if verts[v] != w {
                return Err(Error::NotACochainMap(format!("vertex v{v} has two different images")));
            }
        }
    }
    CellularMap::from_assignment(src.complex().clone(), dst.complex().clone(), &[verts, edges])
}

fn factor(src: &Space1D, dst: &Space1D, width: usize, code: impl Fn(&[usize]) -> usize) -> Result<FactorMap> {
    let map = sliding_block_map(src, dst, width, code)?;
    FactorMap::new(src.dynamics.clone(), dst.dynamics.clone(), map)
}

const MAX_RETRIES: usize = 3;

/// `φ: Y^TM → Y^pd`, the 2-block code sending a differing pair to `a` and an equal pair to `b`.
///
/// The target is once-collared; the source starts with collar (1, 2), the least depth on which
/// the code is cell-to-cell, and is deepened on its shorter side on failure.
pub fn factor_map_phi(k: u32, l: u32) -> Result<FactorMap> {
    let pd = Family1D::Pd(k, l).space()?;
    let tm = Family1D::Tm(k, l).substitution()?;
    let (mut left, mut right) = (1, 2);
    let mut last = None;
    for _ in 0..=MAX_RETRIES {
        let src = ap_complex_collared(&tm, left, right)?;
        match factor(&src, &pd, 2, |w| if w[0] != w[1] { 0 } else { 1 }) {
            Ok(f) => return Ok(f),
            Err(e) => last = Some(e),
        }
        if left <= right {
            left += 1;
        } else {
            right += 1;
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `ψ: Y^pd → 𝕊_{k+ℓ}`, identifying `a` and `b` with `s`.
pub fn factor_map_psi(k: u32, l: u32) -> Result<FactorMap> {
    let pd = Family1D::Pd(k, l).space()?;
    let sol = Family1D::Sol(k + l).space()?;
    factor(&pd, &sol, 1, |_| 0)
}

/// The factor map between two one-dimensional spaces: φ, ψ, or `ψ ∘ φ`.
pub fn factor_map_1d(from: Family1D, to: Family1D) -> Result<FactorMap> {
    match (from, to) {
        (Family1D::Tm(k, l), Family1D::Pd(k2, l2)) if (k, l) == (k2, l2) => factor_map_phi(k, l),
        (Family1D::Pd(k, l), Family1D::Sol(m)) if k + l == m => factor_map_psi(k, l),
        (Family1D::Tm(k, l), Family1D::Sol(m)) if k + l == m => factor_map_phi(k, l)?.then(&factor_map_psi(k, l)?),
        _ => Err(Error::InvalidPath(format!("no factor map {from} → {to}"))),
    }
}

/// `[H^0_Q, H^1_Q]` of a one-dimensional factor pair, through the quotient complex and the
/// verified long exact sequence.
pub fn quotient_cohomology_1d(from: Family1D, to: Family1D) -> Result<Vec<GroupExpr>> {
    Ok(les_quotient(&factor_map_1d(from, to)?)?.quotient)
}

/// The verified sequence `0 → H¹_Q(pd,𝕊) → H¹_Q(TM,𝕊) → H¹_Q(TM,pd) → 0`.
#[derive(Clone, Debug)]
pub struct Times2Verdict {
    /// The three limit groups in order.
    pub groups: [GroupExpr; 3],
}

/// The towers and maps of `0 → H¹_Q(pd,𝕊) → H¹_Q(TM,𝕊) → H¹_Q(TM,pd) → 0` before passing to the
/// limit, with node labels.
#[derive(Clone, Debug)]
pub struct Times2Sequence {
    pub terms: Vec<TowerGroup>,
    pub maps: Vec<GroupHom>,
    pub labels: Vec<String>,
}

pub fn times2_sequence(k: u32, l: u32) -> Result<Times2Sequence> {
    let phi = factor_map_phi(k, l)?;
    let psi = factor_map_psi(k, l)?;
    let tm_s = phi.then(&psi)?;
    let q_pd_s = quotient_complex(&psi.map)?;
    let q_tm_s = quotient_complex(&tm_s.map)?;
    let q_tm_pd = quotient_complex(&phi.map)?;
    let bound = phi.source.endo.row_sum_bound(1);
    let tower = |q: &QuotientComplex, x| -> Result<TowerGroup> {
        let mut t = q.dynamical(x)?.tower(1);
        t.spectral_bound = Some(bound);
        Ok(t)
    };
    let t1 = tower(&q_pd_s, &psi.source)?;
    let t2 = tower(&q_tm_s, &tm_s.source)?;
    let t3 = tower(&q_tm_pd, &phi.source)?;
    let first = q_tm_s.proj[1].mul(phi.map.pullback_matrix(1)).mul(&q_pd_s.section[1]);
    let second = q_tm_pd.proj[1].mul(&q_tm_s.section[1]);
    let a = induced_hom(&first, &t1.group, &t2.group)?;
    let b = induced_hom(&second, &t2.group, &t3.group)?;
    let zero = TowerGroup::new(GroupHom::identity(Arc::new(FgAbGroup::trivial())));
    let maps = vec![
        GroupHom::zero(zero.group.clone(), t1.group.clone()),
        a,
        b,
        GroupHom::zero(t3.group.clone(), zero.group.clone()),
    ];
    let terms = vec![zero.clone(), t1, t2, t3, zero];
    let labels = ["0", "H^1_Q(pd,S)", "H^1_Q(TM,S)", "H^1_Q(TM,pd)", "0"].iter().map(|s| s.to_string()).collect();
    Ok(Times2Sequence { terms, maps, labels })
}

/// Checks that the sequence of quotient cohomologies is exact in the limit and that its first map
/// is twice a map: every image is divisible by 2 in the limit, and some image is not divisible
/// by 4.
pub fn verify_times2_ses(k: u32, l: u32) -> Result<Times2Verdict> {
    let Times2Sequence { terms, maps, labels } = times2_sequence(k, l)?;
    let report = limit_les_labeled(&terms, &maps, &labels)?;
    let (t1, t2, a) = (&terms[1], &terms[2], &maps[1]);
    let (two, four) = (BigInt::from(2), BigInt::from(4));
    let mut doubled = true;
    let mut sharp = false;
    for j in 0..t1.group.ngens() {
        let mut g = vec![BigInt::from(0); t1.group.ngens()];
        g[j] = BigInt::from(1);
        let y = a.apply(&g);
        doubled &= t2.limit_divisible(&y, &two);
        sharp |= !t2.limit_divisible(&y, &four);
    }
    if !(doubled && sharp) {
        return Err(Error::ExactnessFailure { node: 1, label: "first map is not ×2".into() });
    }
    let g = &report.groups;
    Ok(Times2Verdict { groups: [g[1].clone(), g[2].clone(), g[3].clone()] })
}
