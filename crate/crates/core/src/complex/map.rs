use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cochain::CochainComplex;
use crate::abelian::{induced_hom, rank};
use crate::error::{Error, Result};
use crate::limits::{classify, GroupExpr, TowerGroup};
use crate::IntMatrix;

/// Cellular map `f: X → Y`, stored through its cochain pullbacks.
///
/// `pullback[k]` has one row per k-cell of `X` and one column per k-cell of `Y`; entry `(x, y)`
/// is the coefficient of `y` in the image of `x`, so `(f^*c)(x) = Σ_y pullback[x][y] · c(y)`.
#[derive(Clone, Debug)]
pub struct CellularMap {
    pub source: Arc<CochainComplex>,
    pub target: Arc<CochainComplex>,
    pullback: Vec<IntMatrix>,
}

impl CellularMap {
    /// Checks `δ_X ∘ f^* = f^* ∘ δ_Y` in every degree.
    pub fn new(source: Arc<CochainComplex>, target: Arc<CochainComplex>, pullback: Vec<IntMatrix>) -> Result<Self> {
        if source.dim() != target.dim() || pullback.len() != source.dim() + 1 {
            return Err(Error::NotACochainMap("dimension mismatch".into()));
        }
        for (k, p) in pullback.iter().enumerate() {
            if p.shape() != (source.ncells(k), target.ncells(k)) {
                return Err(Error::NotACochainMap(format!("pullback shape mismatch in degree {k}")));
            }
        }
        for k in 0..source.dim() {
            let lhs = source.delta(k).mul(&pullback[k]);
            let rhs = pullback[k + 1].mul(&target.delta(k));
            if lhs != rhs {
                return Err(Error::NotACochainMap(format!("coboundaries do not commute in degree {k}")));
            }
        }
        Ok(CellularMap { source, target, pullback })
    }

    /// Builds the map from per-degree lists `images[k][x] = [(y, coefficient), …]`.
    pub fn from_cell_images(
        source: Arc<CochainComplex>,
        target: Arc<CochainComplex>,
        images: &[Vec<Vec<(usize, i64)>>],
    ) -> Result<Self> {
        let mut pullback = Vec::new();
        for (k, img) in images.iter().enumerate() {
            let mut p = IntMatrix::zeros(source.ncells(k), target.ncells(k));
            for (x, terms) in img.iter().enumerate() {
                for &(y, c) in terms {
                    let v = p.get(x, y) + BigInt::from(c);
                    p.set(x, y, v);
                }
            }
            pullback.push(p);
        }
        Self::new(source, target, pullback)
    }

    /// A map sending each source cell to one target cell: `assignment[k][x] = y`.
    pub fn from_assignment(
        source: Arc<CochainComplex>,
        target: Arc<CochainComplex>,
        assignment: &[Vec<usize>],
    ) -> Result<Self> {
        let images: Vec<Vec<Vec<(usize, i64)>>> =
            assignment.iter().map(|a| a.iter().map(|&y| vec![(y, 1)]).collect()).collect();
        Self::from_cell_images(source, target, &images)
    }

    pub fn identity(c: Arc<CochainComplex>) -> Self {
        let pullback = (0..=c.dim()).map(|k| IntMatrix::identity(c.ncells(k))).collect();
        CellularMap { source: c.clone(), target: c, pullback }
    }

    pub fn pullback_matrix(&self, k: usize) -> &IntMatrix {
        &self.pullback[k]
    }

    pub fn pullbacks(&self) -> &[IntMatrix] {
        &self.pullback
    }

    /// `next ∘ self` for `self: X → Y`, `next: Y → Z`.
    pub fn then(&self, next: &CellularMap) -> Result<CellularMap> {
        if *self.target != *next.source {
            return Err(Error::NotACochainMap("composing maps between different complexes".into()));
        }
        let pullback = self.pullback.iter().zip(&next.pullback).map(|(a, b)| a.mul(b)).collect();
        Ok(CellularMap { source: self.source.clone(), target: next.target.clone(), pullback })
    }

    /// Does every source cell map onto a single target cell with coefficient +1?
    pub fn is_cell_map(&self) -> bool {
        self.pullback.iter().all(|p| {
            (0..p.rows()).all(|i| {
                let row = p.row(i);
                row.iter().filter(|x| !x.is_zero()).count() == 1 && row.iter().any(One::is_one)
            })
        })
    }

    /// Fiber of each target cell (source cells mapping onto it), for cell maps.
    pub fn fibers(&self, k: usize) -> Vec<Vec<usize>> {
        let p = &self.pullback[k];
        let mut fib = vec![Vec::new(); p.cols()];
        for x in 0..p.rows() {
            for y in 0..p.cols() {
                if !p.get(x, y).is_zero() {
                    fib[y].push(x);
                }
            }
        }
        fib
    }

    /// Max absolute row sum of the degree-`k` pullback: bounds every eigenvalue of `f^*_k`.
    pub fn row_sum_bound(&self, k: usize) -> u64 {
        let p = &self.pullback[k];
        (0..p.rows())
            .map(|i| p.row(i).iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .and_then(|b| b.to_u64())
            .unwrap_or(0)
    }
}

/// Cochain pullbacks of `f`, checked to be injective when `f` is a cellular quotient map.
pub fn pullback(f: &CellularMap) -> Result<Vec<IntMatrix>> {
    if f.is_cell_map() {
        for (k, p) in f.pullback.iter().enumerate() {
            if rank(p) != p.cols() {
                return Err(Error::NotInjectiveOnCochains { degree: k });
            }
        }
    }
    Ok(f.pullback.clone())
}

/// An approximant complex together with its substitution-induced self-map.
#[derive(Clone, Debug)]
pub struct DynamicalComplex {
    pub complex: Arc<CochainComplex>,
    pub endo: CellularMap,
}

impl DynamicalComplex {
    pub fn new(complex: Arc<CochainComplex>, endo: CellularMap) -> Result<Self> {
        if *endo.source != *complex || *endo.target != *complex {
            return Err(Error::NotACochainMap("self-map lives on a different complex".into()));
        }
        Ok(DynamicalComplex { complex, endo })
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// `H^k` of the approximant with the induced endomorphism.
    pub fn tower(&self, k: usize) -> TowerGroup {
        let h = Arc::new(self.complex.cohomology(k));
        let e = induced_hom(self.endo.pullback_matrix(k), &h, &h).expect("cellular self-map");
        TowerGroup::new(e).with_bound(self.endo.row_sum_bound(k))
    }

    /// Direct-limit cohomology in every degree.
    pub fn limit_cohomology(&self) -> Vec<GroupExpr> {
        (0..=self.dim()).map(|k| classify(&self.tower(k))).collect()
    }
}

/// A cellular map between two dynamical complexes that intertwines their self-maps.
#[derive(Clone, Debug)]
pub struct FactorMap {
    pub source: DynamicalComplex,
    pub target: DynamicalComplex,
    pub map: CellularMap,
}

impl FactorMap {
    /// Checks `σ_X^* f^* = f^* σ_Y^*` in every degree.
    pub fn new(source: DynamicalComplex, target: DynamicalComplex, map: CellularMap) -> Result<Self> {
        if *map.source != *source.complex || *map.target != *target.complex {
            return Err(Error::NotACochainMap("factor map between different complexes".into()));
        }
        for k in 0..=source.dim() {
            let lhs = source.endo.pullback_matrix(k).mul(map.pullback_matrix(k));
            let rhs = map.pullback_matrix(k).mul(target.endo.pullback_matrix(k));
            if lhs != rhs {
                return Err(Error::NotACochainMap(format!(
                    "factor map does not commute with the substitution self-maps in degree {k}"
                )));
            }
        }
        Ok(FactorMap { source, target, map })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FactorMap) -> Result<FactorMap> {
        let map = self.map.then(&next.map)?;
        Ok(FactorMap { source: self.source.clone(), target: next.target.clone(), map })
    }

    pub fn identity(x: DynamicalComplex) -> FactorMap {
        let map = CellularMap::identity(x.complex.clone());
        FactorMap { source: x.clone(), target: x, map }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> Arc<CochainComplex> {
        Arc::new(CochainComplex::circle())
    }

    #[test]
    fn identity_pullback() {
        let c = circle();
        let id = CellularMap::identity(c);
        let p = pullback(&id).unwrap();
        assert!(p.iter().all(|m| *m == IntMatrix::identity(1)));
    }

    #[test]
    fn solenoid_wrap_is_times_two() {
        let c = circle();
        let wrap =
            CellularMap::from_cell_images(c.clone(), c.clone(), &[vec![vec![(0, 1)]], vec![vec![(0, 2)]]]).unwrap();
        let d = DynamicalComplex::new(c, wrap).unwrap();
        assert_eq!(d.limit_cohomology().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["Z", "Z[1/2]"]);
    }

    #[test]
    fn non_injective_pullback_is_rejected() {
        // The circle mapped into a circle with an extra isolated vertex.
        let x = circle();
        let y = Arc::new(
            CochainComplex::new(vec![vec!["v0".into(), "v1".into()], vec!["e".into()]], vec![IntMatrix::zeros(1, 2)])
                .unwrap(),
        );
        let f = CellularMap::from_assignment(x, y, &[vec![0], vec![0]]).unwrap();
        assert_eq!(pullback(&f).unwrap_err(), Error::NotInjectiveOnCochains { degree: 0 });
    }

    #[test]
    fn non_cochain_maps_are_rejected() {
        let x = circle();
        let y = Arc::new(
            CochainComplex::new(
                vec![vec!["v0".into(), "v1".into()], vec!["e0".into(), "e1".into()]],
                vec![IntMatrix::from_rows(&[[-1, 1], [1, -1]])],
            )
            .unwrap(),
        );
        let r = CellularMap::from_assignment(x, y, &[vec![0], vec![0]]);
        assert!(matches!(r, Err(Error::NotACochainMap(_))));
    }
}
