use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::subst1d::Substitution1D;
use crate::IntMatrix;

/// A rectangular patch of tiles, rows top first.
pub type Patch = Vec<Vec<usize>>;

/// A 2×2 block substitution on a finite set of square prototiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution2D {
    names: Vec<String>,
    rule: Vec<[[usize; 2]; 2]>,
    primitive: bool,
}

impl Substitution2D {
    pub fn new(names: Vec<String>, rule: Vec<[[usize; 2]; 2]>) -> Result<Self> {
        if names.is_empty() || names.len() != rule.len() {
            return Err(Error::Parse("one rule per prototile".into()));
        }
        if rule.iter().flatten().flatten().any(|&c| c >= names.len()) {
            return Err(Error::Parse("rule is not closed on the prototile set".into()));
        }
        // Primitivity of the tile-count matrix, via the 1-D test on flattened images.
        let flat =
            Substitution1D::new(names.clone(), rule.iter().map(|b| b.iter().flatten().copied().collect()).collect())?;
        Ok(Substitution2D { names, rule, primitive: flat.is_primitive() })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn image(&self, t: usize) -> &[[usize; 2]; 2] {
        &self.rule[t]
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Entry `(s, t)` counts the copies of `t` in the block of `s`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for (s, b) in self.rule.iter().enumerate() {
            for &t in b.iter().flatten() {
                m.set(s, t, m.get(s, t) + 1);
            }
        }
        m
    }

    pub fn apply(&self, p: &[Vec<usize>]) -> Patch {
        let mut out = Vec::with_capacity(2 * p.len());
        for row in p {
            for half in 0..2 {
                out.push(row.iter().flat_map(|&t| self.rule[t][half]).collect());
            }
        }
        out
    }

    pub fn iterate(&self, p: &[Vec<usize>], n: u32) -> Patch {
        let mut g = p.to_vec();
        for _ in 0..n {
            g = self.apply(&g);
        }
        g
    }

    fn check(&self) -> Result<()> {
        if self.primitive {
            Ok(())
        } else {
            Err(Error::NotPrimitive)
        }
    }
}

/// All `h × w` windows of a patch.
pub fn windows(g: &[Vec<usize>], h: usize, w: usize) -> Vec<Patch> {
    let mut out = Vec::new();
    if g.len() < h || g[0].len() < w {
        return out;
    }
    for i in 0..=g.len() - h {
        for j in 0..=g[0].len() - w {
            out.push(g[i..i + h].iter().map(|r| r[j..j + w].to_vec()).collect());
        }
    }
    out
}

/// Legal `n × n` patches for `n ∈ {2, 3, 4}`.
///
/// The 2×2 patches are the closure of the windows of the second-order supertiles under
/// `P ← P ∪ windows₂(ρ(P))`: a 2×2 window of `ρ^{j+1}(t)` always lies in the block of a 2×2
/// window of `ρ^j(t)`. A 3×3 window of a supertile lies in the block of a 2×2 patch, and a 4×4
/// window in the block of a 3×3 patch.
pub fn legal_patches(s: &Substitution2D, n: usize) -> Result<BTreeSet<Patch>> {
    s.check()?;
    assert!((2..=4).contains(&n), "patch size must be 2, 3 or 4");
    let mut set: BTreeSet<Patch> = BTreeSet::new();
    for t in 0..s.len() {
        set.extend(windows(&s.iterate(&[vec![t]], 2), 2, 2));
    }
    let mut frontier: Vec<Patch> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for q in windows(&s.apply(p), 2, 2) {
                if set.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    for size in 3..=n {
        set = set.iter().flat_map(|p| windows(&s.apply(p), size, size)).collect();
    }
    Ok(set)
}

/// Horizontal pairs `(left, right)` and vertical pairs `(top, bottom)` of adjacent tiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacencies {
    pub horizontal: BTreeSet<(usize, usize)>,
    pub vertical: BTreeSet<(usize, usize)>,
    /// The 2×2 corner configurations.
    pub corners: BTreeSet<Patch>,
}

pub fn legal_adjacencies(s: &Substitution2D) -> Result<Adjacencies> {
    let corners = legal_patches(s, 2)?;
    let mut horizontal = BTreeSet::new();
    let mut vertical = BTreeSet::new();
    for p in &corners {
        horizontal.insert((p[0][0], p[0][1]));
        horizontal.insert((p[1][0], p[1][1]));
        vertical.insert((p[0][0], p[1][0]));
        vertical.insert((p[0][1], p[1][1]));
    }
    Ok(Adjacencies { horizontal, vertical, corners })
}

/// Adjacencies seen in supertiles of orders `1..=order` (the direct enumeration the closure
/// must agree with).
pub fn supertile_adjacencies(s: &Substitution2D, order: u32) -> BTreeSet<Patch> {
    let mut out = BTreeSet::new();
    for t in 0..s.len() {
        let mut g = vec![vec![t]];
        for _ in 0..order {
            g = s.apply(&g);
            out.extend(windows(&g, 2, 2));
        }
    }
    out
}

/// Does some power `ρ^n` (`n ≤ 3`) force the border? For each tile, the ring of tiles around its
/// `n`-th supertile must be the same in every legal 3×3 neighbourhood of that tile.
pub fn border_forcing_check(s: &Substitution2D) -> Result<Option<u32>> {
    let patches = legal_patches(s, 3)?;
    'power: for n in 1..=3u32 {
        let k = 1usize << n;
        let mut ring: HashMap<usize, Vec<usize>> = HashMap::new();
        for p in &patches {
            let g = s.iterate(p, n);
            let mut r = Vec::with_capacity(4 * k + 4);
            for i in k - 1..=2 * k {
                for j in k - 1..=2 * k {
                    if !((k..2 * k).contains(&i) && (k..2 * k).contains(&j)) {
                        r.push(g[i][j]);
                    }
                }
            }
            match ring.get(&p[1][1]) {
                Some(prev) if *prev != r => continue 'power,
                Some(_) => {}
                None => {
                    ring.insert(p[1][1], r);
                }
            }
        }
        return Ok(Some(n));
    }
    Ok(None)
}

/// Collared substitution: tiles are legal 3×3 patches, read as the centre tile decorated with its
/// eight neighbours.
#[derive(Clone, Debug)]
pub struct Collared2D {
    pub base: Substitution2D,
    pub patches: Vec<Patch>,
    pub substitution: Substitution2D,
}

impl Collared2D {
    pub fn new(base: &Substitution2D) -> Result<Self> {
        let patches: Vec<Patch> = legal_patches(base, 3)?.into_iter().collect();
        let mut rule = Vec::with_capacity(patches.len());
        for p in &patches {
            let g = base.apply(p);
            let child = |i: usize, j: usize| -> usize {
                let w: Patch = g[1 + i..4 + i].iter().map(|r| r[1 + j..4 + j].to_vec()).collect();
                patches.binary_search(&w).expect("windows of legal patches are legal")
            };
            rule.push([[child(0, 0), child(0, 1)], [child(1, 0), child(1, 1)]]);
        }
        let names = patches
            .iter()
            .map(|p| {
                let rows: Vec<String> =
                    p.iter().map(|r| r.iter().map(|&t| base.names[t].as_str()).collect::<Vec<_>>().join(" ")).collect();
                format!("[{}]", rows.join(" / "))
            })
            .collect();
        let substitution = Substitution2D::new(names, rule)?;
        Ok(Collared2D { base: base.clone(), patches, substitution })
    }

    pub fn index_of(&self, p: &[Vec<usize>]) -> Option<usize> {
        self.patches.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    pub fn centre(&self, i: usize) -> usize {
        self.patches[i][1][1]
    }
}
