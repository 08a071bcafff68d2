use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::word::{CollaredSystem1D, Substitution1D};
use crate::complex::{CellularMap, CochainComplex, DynamicalComplex};
use crate::error::Result;
use crate::IntMatrix;

const START: usize = 0;
const END: usize = 1;

/// Anderson–Putnam complex of a collared system: one edge per collared letter, vertices are the
/// classes of edge endpoints glued along every legal transition.
#[derive(Clone, Debug)]
pub struct Space1D {
    pub system: CollaredSystem1D,
    pub dynamics: DynamicalComplex,
    /// `endpoints[e] = [start vertex, end vertex]`.
    pub endpoints: Vec<[usize; 2]>,
}

impl Space1D {
    pub fn new(system: CollaredSystem1D) -> Result<Self> {
        let sub = &system.substitution;
        let n = sub.len();
        let mut uf = UnionFind::<usize>::new(2 * n);
        for (a, b) in system.transitions()? {
            uf.union(2 * a + END, 2 * b + START);
        }
        let mut class = vec![usize::MAX; 2 * n];
        let mut reps = Vec::new();
        for node in 0..2 * n {
            let root = uf.find(node);
            if class[root] == usize::MAX {
                class[root] = reps.len();
                reps.push(node);
            }
            class[node] = class[root];
        }
        let endpoints: Vec<[usize; 2]> = (0..n).map(|e| [class[2 * e + START], class[2 * e + END]]).collect();
        let mut delta = IntMatrix::zeros(n, reps.len());
        for (e, &[s, t]) in endpoints.iter().enumerate() {
            delta.set(e, s, delta.get(e, s) - 1);
            delta.set(e, t, delta.get(e, t) + 1);
        }
        let vnames = (0..reps.len()).map(|i| format!("v{i}")).collect();
        let complex = Arc::new(CochainComplex::new(vec![vnames, sub.names().to_vec()], vec![delta])?);

        // A vertex goes to the same end of the first (or last) tile of the image of its edge.
        let vimg: Vec<usize> = reps
            .iter()
            .map(|&node| {
                let (e, side) = (node / 2, node % 2);
                let img = sub.image(e);
                let child = if side == START { img[0] } else { img[img.len() - 1] };
                class[2 * child + side]
            })
            .collect();
        let vertex_images: Vec<Vec<(usize, i64)>> = vimg.iter().map(|&v| vec![(v, 1)]).collect();
        let edge_images: Vec<Vec<(usize, i64)>> =
            (0..n).map(|e| sub.image(e).iter().map(|&c| (c, 1)).collect()).collect();
        let endo = CellularMap::from_cell_images(complex.clone(), complex.clone(), &[vertex_images, edge_images])?;
        let dynamics = DynamicalComplex::new(complex, endo)?;
        Ok(Space1D { system, dynamics, endpoints })
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.dynamics.complex
    }

    /// Vertex class of the chosen end of edge `e`.
    pub fn endpoint(&self, e: usize, end: bool) -> usize {
        self.endpoints[e][usize::from(end)]
    }
}

/// Collared AP complex with collar `(left, right)` and its substitution self-map.
pub fn ap_complex_collared(s: &Substitution1D, left: usize, right: usize) -> Result<Space1D> {
    Space1D::new(CollaredSystem1D::new(s, left, right)?)
}

/// Once-collared AP complex (edges are legal triples).
pub fn ap_complex_1d(s: &Substitution1D) -> Result<Space1D> {
    ap_complex_collared(s, 1, 1)
}
