use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::subst1d::Family1D;
use crate::subst2d::{realizations, ArrowMode, DecorationScheme, EdgeLabel, LabelMode};

/// A named tiling space of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceId {
    Tm(u32, u32),
    Pd(u32, u32),
    Sol(u32),
    Chair(DecorationScheme),
}

impl SpaceId {
    pub fn family_1d(self) -> Option<Family1D> {
        match self {
            SpaceId::Tm(k, l) => Some(Family1D::Tm(k, l)),
            SpaceId::Pd(k, l) => Some(Family1D::Pd(k, l)),
            SpaceId::Sol(m) => Some(Family1D::Sol(m)),
            SpaceId::Chair(_) => None,
        }
    }

    pub fn scheme(self) -> Option<DecorationScheme> {
        match self {
            SpaceId::Chair(s) => Some(s),
            _ => None,
        }
    }

    /// The nine chair spaces in table order.
    pub fn chairs() -> Vec<SpaceId> {
        DecorationScheme::all().into_iter().map(SpaceId::Chair).collect()
    }

    pub fn solenoid_chair() -> SpaceId {
        SpaceId::Chair(DecorationScheme::new(ArrowMode::Zero, LabelMode::Zero))
    }
}

fn parse_pair(id: &str, body: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("{id:?}: expected two positive integers k,l"));
    let (k, l) = body.split_once(',').ok_or_else(bad)?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    let l: u32 = l.trim().parse().map_err(|_| bad())?;
    if k == 0 || l == 0 {
        return Err(bad());
    }
    Ok((k, l))
}

impl FromStr for SpaceId {
    type Err = Error;

    /// `tm:2,1`, `pd:2,1`, `sol:3`, `chair:X,+` (label `-`, `−` or `0`; arrow `X`, `/` or `0`).
    fn from_str(s: &str) -> Result<Self> {
        let (family, body) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("{s:?}: expected family:parameters")))?;
        match family {
            "tm" => parse_pair(s, body).map(|(k, l)| SpaceId::Tm(k, l)),
            "pd" => parse_pair(s, body).map(|(k, l)| SpaceId::Pd(k, l)),
            "sol" => match body.trim().parse::<u32>() {
                Ok(m) if m >= 2 => Ok(SpaceId::Sol(m)),
                _ => Err(Error::Parse(format!("{s:?}: solenoid base must be an integer at least 2"))),
            },
            "chair" => {
                let (a, l) =
                    body.split_once(',').ok_or_else(|| Error::Parse(format!("{s:?}: expected chair:arrow,label")))?;
                let arrow = match a.trim() {
                    "X" | "x" => ArrowMode::X,
                    "/" => ArrowMode::Slash,
                    "0" => ArrowMode::Zero,
                    other => return Err(Error::Parse(format!("{s:?}: arrow mode {other:?} is not X, / or 0"))),
                };
                let label = match l.trim() {
                    "+" => LabelMode::Plus,
                    "-" | "−" => LabelMode::Minus,
                    "0" => LabelMode::Zero,
                    other => return Err(Error::Parse(format!("{s:?}: label mode {other:?} is not +, - or 0"))),
                };
                Ok(SpaceId::Chair(DecorationScheme::new(arrow, label)))
            }
            other => Err(Error::Parse(format!("{s:?}: unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::Tm(k, l) => write!(f, "tm:{k},{l}"),
            SpaceId::Pd(k, l) => write!(f, "pd:{k},{l}"),
            SpaceId::Sol(m) => write!(f, "sol:{m}"),
            SpaceId::Chair(s) => write!(f, "chair:{s}"),
        }
    }
}

/// The labels of a composed factor map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathWord {
    /// A word over the chair lattice labels.
    Chair(Vec<EdgeLabel>),
    /// The two-block code from Thue–Morse to period doubling.
    Phi,
    /// Period doubling onto the solenoid.
    Psi,
    /// Thue–Morse onto the solenoid.
    PsiPhi,
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathWord::Chair(w) => w.iter().try_for_each(|l| write!(f, "{l}")),
            PathWord::Phi => f.write_str("phi"),
            PathWord::Psi => f.write_str("psi"),
            PathWord::PsiPhi => f.write_str("psi.phi"),
        }
    }
}

/// A composed factor map named by its start and its labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorPath {
    pub start: SpaceId,
    pub word: PathWord,
}

impl FactorPath {
    /// Checks that the word can be followed from `start`.
    pub fn new(start: SpaceId, word: &str) -> Result<Self> {
        let w = match (start, word) {
            (SpaceId::Chair(_), w) => PathWord::Chair(EdgeLabel::parse_word(w)?),
            (SpaceId::Tm(..), "phi") => PathWord::Phi,
            (SpaceId::Tm(..), "psi.phi" | "psiphi") => PathWord::PsiPhi,
            (SpaceId::Pd(..), "psi") => PathWord::Psi,
            (_, w) => return Err(Error::InvalidPath(format!("{w:?} is not a factor map out of {start}"))),
        };
        let p = FactorPath { start, word: w };
        if p.chair_realizations().is_some_and(|r| r.is_empty()) {
            return Err(Error::InvalidPath(format!("{} cannot be followed from {start}", p.word)));
        }
        Ok(p)
    }

    /// Source and target of a one-dimensional path.
    pub fn ends_1d(&self) -> Option<(Family1D, Family1D)> {
        let m = |k, l| Family1D::Sol(k + l);
        match (self.start, &self.word) {
            (SpaceId::Tm(k, l), PathWord::Phi) => Some((Family1D::Tm(k, l), Family1D::Pd(k, l))),
            (SpaceId::Tm(k, l), PathWord::PsiPhi) => Some((Family1D::Tm(k, l), m(k, l))),
            (SpaceId::Pd(k, l), PathWord::Psi) => Some((Family1D::Pd(k, l), m(k, l))),
            _ => None,
        }
    }

    /// Every chain of chair spaces realizing the word.
    pub fn chair_realizations(&self) -> Option<Vec<Vec<DecorationScheme>>> {
        match (self.start, &self.word) {
            (SpaceId::Chair(s), PathWord::Chair(w)) => Some(realizations(w, s)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["tm:2,1", "pd:3,2", "sol:5", "chair:X,+", "chair:/,-", "chair:0,0"] {
            assert_eq!(s.parse::<SpaceId>().unwrap().to_string(), s);
        }
        assert_eq!("chair:X,−".parse::<SpaceId>().unwrap().to_string(), "chair:X,-");
        for bad in ["tm:0,1", "sol:1", "chair:Y,+", "tm", "cube:1"] {
            assert!(bad.parse::<SpaceId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn paths() {
        let x = "chair:X,+".parse().unwrap();
        assert_eq!(FactorPath::new(x, "ABAC").unwrap().chair_realizations().unwrap().len(), 2);
        assert!(matches!(FactorPath::new(x, "C"), Err(Error::InvalidPath(_))));
        assert!(FactorPath::new(x, "AD").is_err());
        let tm = SpaceId::Tm(2, 1);
        let p = FactorPath::new(tm, "psi.phi").unwrap();
        assert_eq!(p.ends_1d(), Some((Family1D::Tm(2, 1), Family1D::Sol(3))));
        assert!(FactorPath::new(tm, "psi").is_err());
    }
}
