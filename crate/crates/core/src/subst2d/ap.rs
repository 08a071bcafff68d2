use std::str::FromStr;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::substitution::{border_forcing_check, legal_patches, Collared2D, Substitution2D};
use crate::complex::{CellularMap, CochainComplex, DynamicalComplex};
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Whether to build the approximant on collared tiles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Collar {
    /// Collar exactly when the rule does not force the border.
    #[default]
    Auto,
    Forced,
    Off,
}

impl FromStr for Collar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Collar::Auto),
            "on" | "forced" => Ok(Collar::Forced),
            "off" => Ok(Collar::Off),
            _ => Err(Error::Parse(format!("collar must be auto, on or off, not {s:?}"))),
        }
    }
}

const L: usize = 0;
const T: usize = 1;
const R: usize = 2;
const B: usize = 3;
const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;
/// `(start corner, end corner)` of each side: vertical sides point up, horizontal ones right.
const ENDS: [(usize, usize); 4] = [(BL, TL), (TL, TR), (BR, TR), (BL, BR)];
const FACE_SIGN: [i64; 4] = [-1, -1, 1, 1];
/// Child blocks carrying the two halves of each side.
const SIDE_KIDS: [[(usize, usize); 2]; 4] = [[(0, 0), (1, 0)], [(0, 0), (0, 1)], [(0, 1), (1, 1)], [(1, 0), (1, 1)]];
const CORNER_KID: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Anderson–Putnam complex of a 2×2 block substitution with its self-map.
#[derive(Clone, Debug)]
pub struct Space2D {
    pub base: Substitution2D,
    pub collared: Option<Collared2D>,
    pub dynamics: DynamicalComplex,
    /// `edge_of[face][side]`, sides ordered left, top, right, bottom.
    pub edge_of: Vec<[usize; 4]>,
    /// `vertex_of[face][corner]`, corners ordered TL, TR, BL, BR.
    pub vertex_of: Vec<[usize; 4]>,
}

fn classes(uf: &mut UnionFind<usize>, n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for node in 0..n {
        let root = uf.find(node);
        if class[root] == usize::MAX {
            class[root] = reps.len();
            reps.push(node);
        }
        class[node] = class[root];
    }
    (class, reps)
}

impl Space2D {
    /// The complex on the (possibly collared) tiles; the face substitution must force its border.
    fn build(base: Substitution2D, collared: Option<Collared2D>) -> Result<Self> {
        let sub = collared.as_ref().map_or(&base, |c| &c.substitution).clone();
        let n = sub.len();
        let mut e_uf = UnionFind::<usize>::new(4 * n);
        let mut v_uf = UnionFind::<usize>::new(4 * n);
        for p in legal_patches(&sub, 2)? {
            let [[a, b], [c, d]] = [[p[0][0], p[0][1]], [p[1][0], p[1][1]]];
            for (x, y) in [(a, b), (c, d)] {
                e_uf.union(4 * x + R, 4 * y + L);
                v_uf.union(4 * x + TR, 4 * y + TL);
                v_uf.union(4 * x + BR, 4 * y + BL);
            }
            for (x, y) in [(a, c), (b, d)] {
                e_uf.union(4 * x + B, 4 * y + T);
                v_uf.union(4 * x + BL, 4 * y + TL);
                v_uf.union(4 * x + BR, 4 * y + TR);
            }
            v_uf.union(4 * a + BR, 4 * d + TL);
        }
        let (e_class, e_reps) = classes(&mut e_uf, 4 * n);
        let (v_class, v_reps) = classes(&mut v_uf, 4 * n);
        let edge_of: Vec<[usize; 4]> = (0..n).map(|f| [0, 1, 2, 3].map(|s| e_class[4 * f + s])).collect();
        let vertex_of: Vec<[usize; 4]> = (0..n).map(|f| [0, 1, 2, 3].map(|c| v_class[4 * f + c])).collect();

        let (ne, nv) = (e_reps.len(), v_reps.len());
        let mut d0 = IntMatrix::zeros(ne, nv);
        for (e, &node) in e_reps.iter().enumerate() {
            let (f, s) = (node / 4, node % 4);
            let (start, end) = ENDS[s];
            d0.set(e, vertex_of[f][start], d0.get(e, vertex_of[f][start]) - 1);
            d0.set(e, vertex_of[f][end], d0.get(e, vertex_of[f][end]) + 1);
        }
        let mut d1 = IntMatrix::zeros(n, ne);
        for f in 0..n {
            for s in 0..4 {
                d1.set(f, edge_of[f][s], d1.get(f, edge_of[f][s]) + FACE_SIGN[s]);
            }
        }
        let cells = vec![
            (0..nv).map(|i| format!("v{i}")).collect(),
            (0..ne).map(|i| format!("e{i}")).collect(),
            sub.names().to_vec(),
        ];
        let complex = Arc::new(CochainComplex::new(cells, vec![d0, d1])?);

        // Self-map, checked to be the same on every member of a class.
        let mut e_img: Vec<Option<[usize; 2]>> = vec![None; ne];
        let mut v_img: Vec<Option<usize>> = vec![None; nv];
        for f in 0..n {
            let blk = sub.image(f);
            for s in 0..4 {
                let mut img = SIDE_KIDS[s].map(|(i, j)| edge_of[blk[i][j]][s]);
                img.sort_unstable();
                let slot = &mut e_img[edge_of[f][s]];
                if slot.is_some_and(|prev| prev != img) {
                    return Err(Error::NotWellDefined(format!("edge e{} has two images", edge_of[f][s])));
                }
                *slot = Some(img);
            }
            for c in 0..4 {
                let (i, j) = CORNER_KID[c];
                let img = vertex_of[blk[i][j]][c];
                let slot = &mut v_img[vertex_of[f][c]];
                if slot.is_some_and(|prev| prev != img) {
                    return Err(Error::NotWellDefined(format!("vertex v{} has two images", vertex_of[f][c])));
                }
                *slot = Some(img);
            }
        }
        let images = vec![
            v_img.iter().map(|v| vec![(v.expect("every vertex bounds a face"), 1)]).collect(),
            e_img.iter().map(|e| e.expect("every edge bounds a face").iter().map(|&x| (x, 1)).collect()).collect(),
            (0..n).map(|f| sub.image(f).iter().flatten().map(|&c| (c, 1)).collect()).collect(),
        ];
        let endo = CellularMap::from_cell_images(complex.clone(), complex.clone(), &images)?;
        let dynamics = DynamicalComplex::new(complex, endo)?;
        Ok(Space2D { base, collared, dynamics, edge_of, vertex_of })
    }

    pub fn complex(&self) -> &Arc<CochainComplex> {
        &self.dynamics.complex
    }

    pub fn is_collared(&self) -> bool {
        self.collared.is_some()
    }

    /// The base tile under face `f`.
    pub fn base_tile(&self, f: usize) -> usize {
        self.collared.as_ref().map_or(f, |c| c.centre(f))
    }
}

/// Builds the approximant, collaring according to `collar`.
pub fn ap_complex_2d(s: &Substitution2D, collar: Collar) -> Result<Space2D> {
    let forcing = border_forcing_check(s)?.is_some();
    let collared = match collar {
        Collar::Forced => true,
        Collar::Auto => !forcing,
        Collar::Off if forcing => false,
        Collar::Off => return Err(Error::NotBorderForcing),
    };
    let c = if collared { Some(Collared2D::new(s)?) } else { None };
    Space2D::build(s.clone(), c)
}

/// The cellular map determined by a map on faces, extended to edges and vertices through the
/// sides and corners of each face.
pub fn face_induced_map(src: &Space2D, dst: &Space2D, faces: &[usize]) -> Result<CellularMap> {
    let (ne, nv) = (src.complex().ncells(1), src.complex().ncells(0));
    let mut edges = vec![usize::MAX; ne];
    let mut verts = vec![usize::MAX; nv];
    for (f, &g) in faces.iter().enumerate() {
        for k in 0..4 {
            for (slot, img, what) in [
                (&mut edges[src.edge_of[f][k]], dst.edge_of[g][k], "edge"),
                (&mut verts[src.vertex_of[f][k]], dst.vertex_of[g][k], "vertex"),
            ] {
                if *slot != usize::MAX && *slot != img {
                    return Err(Error::NotACochainMap(format!("an {what} class has two images")));
                }
                *slot = img;
            }
        }
    }
    CellularMap::from_assignment(src.complex().clone(), dst.complex().clone(), &[verts, edges, faces.to_vec()])
}
