use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::ap::{ap_complex_2d, face_induced_map, Collar, Space2D};
use super::substitution::border_forcing_check;
use super::tiles::{descend_rule, ArrowMode, ChairSystem, DecorationScheme, LabelMode};
use crate::complex::FactorMap;
use crate::error::{Error, Result};

/// Edge labels of the factor lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    A,
    B,
    C,
}

impl EdgeLabel {
    pub fn parse_word(word: &str) -> Result<Vec<EdgeLabel>> {
        word.chars()
            .map(|c| match c {
                'A' => Ok(EdgeLabel::A),
                'B' => Ok(EdgeLabel::B),
                'C' => Ok(EdgeLabel::C),
                _ => Err(Error::Parse(format!("path letters are A, B, C, not {c:?}"))),
            })
            .collect()
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::A => "A",
            EdgeLabel::B => "B",
            EdgeLabel::C => "C",
        })
    }
}

/// The twelve edges of the lattice of the nine spaces.
pub fn lattice_edges() -> Vec<(DecorationScheme, EdgeLabel, DecorationScheme)> {
    use ArrowMode::{Slash, Zero as A0, X};
    use EdgeLabel::*;
    use LabelMode::{Minus, Plus, Zero as L0};
    let s = DecorationScheme::new;
    vec![
        (s(X, Plus), A, s(Slash, Plus)),
        (s(Slash, Plus), A, s(A0, Plus)),
        (s(X, Minus), A, s(Slash, Minus)),
        (s(Slash, Minus), A, s(A0, Minus)),
        (s(X, Minus), A, s(X, L0)),
        (s(Slash, Minus), A, s(Slash, L0)),
        (s(X, L0), A, s(Slash, L0)),
        (s(X, Plus), B, s(X, Minus)),
        (s(Slash, Plus), B, s(Slash, Minus)),
        (s(A0, Plus), B, s(A0, Minus)),
        (s(A0, Minus), C, s(A0, L0)),
        (s(Slash, L0), C, s(A0, L0)),
    ]
}

pub fn edge_label(from: DecorationScheme, to: DecorationScheme) -> Option<EdgeLabel> {
    lattice_edges().into_iter().find(|&(a, _, b)| a == from && b == to).map(|(_, l, _)| l)
}

/// Every sequence of spaces that realizes `word` from `start`.
pub fn realizations(word: &[EdgeLabel], start: DecorationScheme) -> Vec<Vec<DecorationScheme>> {
    let edges = lattice_edges();
    let mut paths = vec![vec![start]];
    for &l in word {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().expect("nonempty");
                edges
                    .iter()
                    .filter(move |&&(a, m, _)| a == last && m == l)
                    .map(move |&(_, _, b)| {
                        let mut q = p.clone();
                        q.push(b);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    paths
}

/// A space of the chair family with its approximant.
#[derive(Debug)]
pub struct ChairSpace {
    pub scheme: DecorationScheme,
    pub system: ChairSystem,
    pub space: Space2D,
}

type Cache = Mutex<HashMap<(DecorationScheme, bool), Arc<ChairSpace>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub fn chair_system(scheme: DecorationScheme) -> Result<ChairSystem> {
    descend_rule(&scheme.coarsening())
}

pub fn forces_border(scheme: DecorationScheme) -> Result<bool> {
    Ok(border_forcing_check(&chair_system(scheme)?.substitution)?.is_some())
}

/// The approximant of `Ω_{a,b}`, collared or not. Built once per process.
pub fn chair_space(scheme: DecorationScheme, collared: bool) -> Result<Arc<ChairSpace>> {
    if let Some(s) = cache().lock().expect("cache").get(&(scheme, collared)) {
        return Ok(s.clone());
    }
    let system = chair_system(scheme)?;
    let space = ap_complex_2d(&system.substitution, if collared { Collar::Forced } else { Collar::Off })?;
    let s = Arc::new(ChairSpace { scheme, system, space });
    cache().lock().expect("cache").insert((scheme, collared), s.clone());
    Ok(s)
}

/// Resolves the collar policy for one space.
pub fn chair_space_with(scheme: DecorationScheme, collar: Collar) -> Result<Arc<ChairSpace>> {
    let forcing = forces_border(scheme)?;
    match collar {
        Collar::Off if !forcing => Err(Error::NotBorderForcing),
        Collar::Off => chair_space(scheme, false),
        Collar::Forced => chair_space(scheme, true),
        Collar::Auto => chair_space(scheme, !forcing),
    }
}

/// Collaring along a chain of spaces. A collared space cannot map cell-to-cell onto a collared
/// one from an uncollared one, so under `auto` every space before a collared one is collared too.
pub fn plan_collars(nodes: &[DecorationScheme], collar: Collar) -> Result<Vec<bool>> {
    let mut out = vec![false; nodes.len()];
    let mut next = false;
    for (i, &s) in nodes.iter().enumerate().rev() {
        let forcing = forces_border(s)?;
        out[i] = match collar {
            Collar::Forced => true,
            Collar::Off if !forcing => return Err(Error::NotBorderForcing),
            Collar::Off => false,
            Collar::Auto => !forcing || next,
        };
        next = out[i];
    }
    Ok(out)
}

/// The factor map induced by coarsening decorations, between two realized approximants.
pub fn coarsening_map(src: &ChairSpace, dst: &ChairSpace) -> Result<FactorMap> {
    if !src.system.coarsening.refines(&dst.system.coarsening) {
        return Err(Error::InvalidPath(format!(
            "Ω_{} does not factor onto Ω_{} by coarsening",
            src.scheme, dst.scheme
        )));
    }
    if !src.space.is_collared() && dst.space.is_collared() {
        return Err(Error::InvalidPath("an uncollared complex cannot map onto a collared one".into()));
    }
    let c = &dst.system.coarsening;
    let tile: Vec<usize> = src
        .system
        .representatives
        .iter()
        .map(|t| dst.system.index_of(&c.apply(t)).expect("coarsened tile exists"))
        .collect();
    let faces: Vec<usize> = match (&src.space.collared, &dst.space.collared) {
        (Some(a), Some(b)) => a
            .patches
            .iter()
            .map(|p| {
                let q: Vec<Vec<usize>> = p.iter().map(|r| r.iter().map(|&t| tile[t]).collect()).collect();
                b.index_of(&q).ok_or_else(|| Error::NotWellDefined("coarsened patch is not legal".into()))
            })
            .collect::<Result<_>>()?,
        (Some(a), None) => (0..a.patches.len()).map(|f| tile[a.centre(f)]).collect(),
        _ => tile,
    };
    let map = face_induced_map(&src.space, &dst.space, &faces)?;
    FactorMap::new(src.space.dynamics.clone(), dst.space.dynamics.clone(), map)
}

/// The map along one lattice edge.
pub fn factor_map_edge(from: DecorationScheme, to: DecorationScheme, collar: Collar) -> Result<FactorMap> {
    compose_path(&[from, to], collar)
}

/// The composite factor map along a chain of adjacent spaces.
pub fn compose_path(nodes: &[DecorationScheme], collar: Collar) -> Result<FactorMap> {
    if nodes.len() < 2 {
        return Err(Error::InvalidPath("a path needs at least one edge".into()));
    }
    for w in nodes.windows(2) {
        if edge_label(w[0], w[1]).is_none() {
            return Err(Error::InvalidPath(format!("Ω_{} → Ω_{} is not a lattice edge", w[0], w[1])));
        }
    }
    let collars = plan_collars(nodes, collar)?;
    let spaces: Vec<Arc<ChairSpace>> =
        nodes.iter().zip(&collars).map(|(&s, &c)| chair_space(s, c)).collect::<Result<_>>()?;
    let mut f = coarsening_map(&spaces[0], &spaces[1])?;
    for w in spaces[1..].windows(2) {
        f = f.then(&coarsening_map(&w[0], &w[1])?)?;
    }
    Ok(f)
}
