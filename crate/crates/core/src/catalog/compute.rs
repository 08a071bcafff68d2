use std::collections::VecDeque;

use super::id::{FactorPath, SpaceId};
use crate::complex::{lemma1_shortcut, les_quotient, DynamicalComplex, FactorMap, QuotientLes};
use crate::error::{Error, Result};
use crate::limits::GroupExpr;
use crate::subst1d::{ap_complex_collared, border_forcing_1d, factor_map_1d, Family1D};
use crate::subst2d::{chair_space_with, compose_path, lattice_edges, Collar, DecorationScheme};

/// The approximant of a catalog space with its self-map.
///
/// One-dimensional spaces are collared once on each side unless `collar` is `off`, which needs a
/// border-forcing rule.
pub fn dynamics(id: SpaceId, collar: Collar) -> Result<DynamicalComplex> {
    match (id.family_1d(), id.scheme()) {
        (Some(f), _) => {
            let s = f.substitution()?;
            let c = match collar {
                Collar::Off if !border_forcing_1d(&s, 3)? => return Err(Error::NotBorderForcing),
                Collar::Off => 0,
                _ => 1,
            };
            Ok(ap_complex_collared(&s, c, c)?.dynamics)
        }
        (None, Some(s)) => Ok(chair_space_with(s, collar)?.space.dynamics.clone()),
        (None, None) => unreachable!("every id is 1-D or a chair"),
    }
}

/// `[H^0, H^1, …]` of a catalog space.
pub fn cohomology(id: SpaceId, collar: Collar) -> Result<Vec<GroupExpr>> {
    Ok(dynamics(id, collar)?.limit_cohomology())
}

/// A chain of lattice edges from `from` down to `to`, if any.
pub fn lattice_path(from: DecorationScheme, to: DecorationScheme) -> Option<Vec<DecorationScheme>> {
    let edges = lattice_edges();
    let mut queue = VecDeque::from([vec![from]]);
    while let Some(p) = queue.pop_front() {
        let last = *p.last().expect("nonempty");
        if last == to {
            return Some(p);
        }
        for &(a, _, b) in &edges {
            if a == last {
                let mut q = p.clone();
                q.push(b);
                queue.push_back(q);
            }
        }
    }
    None
}

/// The factor map between two catalog spaces. Chair spaces are joined through the lattice; a
/// space maps to itself by the identity.
pub fn factor_map(from: SpaceId, to: SpaceId, collar: Collar) -> Result<FactorMap> {
    match (from, to) {
        (SpaceId::Chair(a), SpaceId::Chair(b)) if a == b => Ok(FactorMap::identity(dynamics(from, collar)?)),
        (SpaceId::Chair(a), SpaceId::Chair(b)) => {
            let nodes =
                lattice_path(a, b).ok_or_else(|| Error::InvalidPath(format!("{from} does not factor onto {to}")))?;
            compose_path(&nodes, collar)
        }
        _ => match (from.family_1d(), to.family_1d()) {
            (Some(x), Some(y)) => factor_map_1d(x, y),
            _ => Err(Error::InvalidPath(format!("no factor map {from} → {to}"))),
        },
    }
}

/// The verified long exact sequence of a factor pair.
pub fn quotient(from: SpaceId, to: SpaceId, collar: Collar) -> Result<QuotientLes> {
    les_quotient(&factor_map(from, to, collar)?)
}

/// The two ways of computing the top quotient group must agree, and `H^0_Q = 0` must coincide
/// with injectivity of `f^*_1`. Returns the shortcut's top group.
pub fn shortcut_agrees(f: &FactorMap, les: &QuotientLes) -> Result<GroupExpr> {
    let d = f.source.dim();
    let l = lemma1_shortcut(f, d)?;
    if l.h0_vanishes != les.quotient[0].is_zero() {
        return Err(Error::HypothesisFailed(format!(
            "H^0_Q = {} but f*_1 injective = {}",
            les.quotient[0], l.h0_vanishes
        )));
    }
    if l.hn != les.quotient[d] {
        return Err(Error::HypothesisFailed(format!(
            "cokernel gives {} but the sequence gives {}",
            l.hn, les.quotient[d]
        )));
    }
    Ok(l.hn)
}

/// One realization of a path and its quotient groups.
#[derive(Clone, Debug)]
pub struct Realization {
    pub nodes: Vec<SpaceId>,
    pub quotient: Vec<GroupExpr>,
}

/// Every realization of a path, each with its quotient groups `[H^0_Q, …]`.
pub fn path_realizations(p: &FactorPath, collar: Collar) -> Result<Vec<Realization>> {
    if let Some((x, y)) = p.ends_1d() {
        let les = les_quotient(&factor_map_1d(x, y)?)?;
        let nodes = vec![SpaceId::from_family(x), SpaceId::from_family(y)];
        return Ok(vec![Realization { nodes, quotient: les.quotient }]);
    }
    let chains = p.chair_realizations().ok_or_else(|| Error::InvalidPath(format!("{} from {}", p.word, p.start)))?;
    chains
        .into_iter()
        .map(|nodes| {
            let les = les_quotient(&compose_path(&nodes, collar)?)?;
            Ok(Realization { nodes: nodes.into_iter().map(SpaceId::Chair).collect(), quotient: les.quotient })
        })
        .collect()
}

/// Quotient groups of a path, checked to be the same for every realization.
pub fn path_quotient(p: &FactorPath, collar: Collar) -> Result<Vec<GroupExpr>> {
    let rs = path_realizations(p, collar)?;
    let first = rs.first().ok_or_else(|| Error::InvalidPath(format!("{} from {}", p.word, p.start)))?;
    if let Some(r) = rs.iter().find(|r| r.quotient != first.quotient) {
        return Err(Error::NotWellDefined(format!(
            "{} from {} depends on the realization: {:?} vs {:?}",
            p.word, p.start, first.quotient, r.quotient
        )));
    }
    Ok(first.quotient.clone())
}

impl SpaceId {
    pub fn from_family(f: Family1D) -> SpaceId {
        match f {
            Family1D::Tm(k, l) => SpaceId::Tm(k, l),
            Family1D::Pd(k, l) => SpaceId::Pd(k, l),
            Family1D::Sol(m) => SpaceId::Sol(m),
        }
    }
}
