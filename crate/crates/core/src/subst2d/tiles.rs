use std::collections::BTreeMap;
use std::fmt;

use super::substitution::Substitution2D;
use crate::error::{Error, Result};

pub const NE: u8 = 0;
pub const NW: u8 = 1;
pub const SE: u8 = 2;
pub const SW: u8 = 3;
const ARROW_NAMES: [&str; 4] = ["NE", "NW", "SE", "SW"];

/// A decorated square: an arrow class (bitmask over NE, NW, SE, SW) and four edge labels, where
/// `None` marks an erased label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub arrow: u8,
    pub labels: [Option<u8>; 4],
}

impl Decoration {
    pub fn raw(arrow: u8, w: u8, y: u8, x: u8, z: u8) -> Self {
        Decoration { arrow: 1 << arrow, labels: [Some(w), Some(y), Some(x), Some(z)] }
    }

    /// The two labels next to the arrowhead agree.
    pub fn head_ok(&self) -> bool {
        let [l, t, r, b] = self.labels;
        let pairs = [(t, r), (l, t), (r, b), (b, l)];
        (0..4).filter(|&a| self.arrow & (1 << a) != 0).all(|a| pairs[a].0 == pairs[a].1)
    }

    fn single_arrow(&self) -> u8 {
        debug_assert_eq!(self.arrow.count_ones(), 1);
        self.arrow.trailing_zeros() as u8
    }
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<&str> = (0..4).filter(|a| self.arrow & (1 << a) != 0).map(|a| ARROW_NAMES[a]).collect();
        let head = if arrows.len() == 4 { "*".to_string() } else { arrows.join("|") };
        let labels: String = self.labels.iter().map(|l| l.map_or('.', |v| char::from(b'0' + v))).collect();
        write!(f, "{head}:{labels}")
    }
}

/// All 32 fully decorated prototiles.
pub fn raw_tiles() -> Vec<Decoration> {
    let mut out = Vec::new();
    for a in [NE, NW, SE, SW] {
        for bits in 0..16u8 {
            let d = Decoration::raw(a, bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1);
            if d.head_ok() {
                out.push(d);
            }
        }
    }
    out
}

/// The generalised chair rule on a fully decorated tile; rows top first.
pub fn chair_rule(t: &Decoration) -> [[Decoration; 2]; 2] {
    let a = t.single_arrow();
    let [w, y, x, z] = t.labels.map(|l| l.expect("fully decorated"));
    let r = Decoration::raw;
    if a == NW || a == SE {
        [[r(a, w, y, 1, 1), r(SW, 0, y, x, 0)], [r(NE, w, 0, 0, z), r(a, 1, 1, x, z)]]
    } else {
        [[r(SE, w, y, 0, 0), r(a, 1, y, x, 1)], [r(a, w, 1, 1, z), r(NW, 0, 0, x, z)]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowMode {
    /// All four arrows remain.
    X,
    /// NE and SW remain, NW and SE are identified.
    Slash,
    /// Arrows identified.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelMode {
    Plus,
    /// Left and right labels remain; top and bottom are erased.
    Minus,
    Zero,
}

impl ArrowMode {
    pub fn symbol(self) -> &'static str {
        match self {
            ArrowMode::X => "X",
            ArrowMode::Slash => "/",
            ArrowMode::Zero => "0",
        }
    }
}

impl LabelMode {
    pub fn symbol(self) -> &'static str {
        match self {
            LabelMode::Plus => "+",
            LabelMode::Minus => "-",
            LabelMode::Zero => "0",
        }
    }
}

/// One of the nine decoration schemes `Ω_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecorationScheme {
    pub arrow: ArrowMode,
    pub label: LabelMode,
}

impl DecorationScheme {
    pub const fn new(arrow: ArrowMode, label: LabelMode) -> Self {
        DecorationScheme { arrow, label }
    }

    pub fn all() -> Vec<DecorationScheme> {
        let mut out = Vec::new();
        for label in [LabelMode::Plus, LabelMode::Minus, LabelMode::Zero] {
            for arrow in [ArrowMode::X, ArrowMode::Slash, ArrowMode::Zero] {
                out.push(DecorationScheme { arrow, label });
            }
        }
        out
    }

    /// The identification on decorations.
    ///
    /// Identifying all four arrows while labels survive does not commute with the rule, since
    /// the two arrow pairs place their fixed labels differently. In that case the arrows keep
    /// only their diagonal, `{NE, SW}` and `{NW, SE}`; with labels erased the single remaining
    /// tile carries no arrow at all.
    pub fn coarsening(self) -> Coarsening {
        let (ne, nw, se, sw) = (1 << NE, 1 << NW, 1 << SE, 1 << SW);
        let arrow_classes = match (self.arrow, self.label) {
            (ArrowMode::X, _) => vec![ne, nw, se, sw],
            (ArrowMode::Slash, _) => vec![ne, sw, nw | se],
            (ArrowMode::Zero, LabelMode::Zero) => vec![ne | nw | se | sw],
            (ArrowMode::Zero, _) => vec![ne | sw, nw | se],
        };
        let keep_labels = match self.label {
            LabelMode::Plus => [true; 4],
            LabelMode::Minus => [true, false, true, false],
            LabelMode::Zero => [false; 4],
        };
        Coarsening { arrow_classes, keep_labels }
    }
}

impl fmt::Display for DecorationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.arrow.symbol(), self.label.symbol())
    }
}

/// A partition of the arrows together with the set of surviving label slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coarsening {
    pub arrow_classes: Vec<u8>,
    pub keep_labels: [bool; 4],
}

impl Coarsening {
    pub fn apply(&self, t: &Decoration) -> Decoration {
        let arrow = self
            .arrow_classes
            .iter()
            .copied()
            .find(|c| c & t.arrow == t.arrow)
            .expect("arrow classes cover every arrow");
        let mut labels = t.labels;
        for (l, keep) in labels.iter_mut().zip(self.keep_labels) {
            if !keep {
                *l = None;
            }
        }
        Decoration { arrow, labels }
    }

    /// Is every class of `self` contained in a class of `coarser`?
    pub fn refines(&self, coarser: &Coarsening) -> bool {
        self.arrow_classes.iter().all(|c| coarser.arrow_classes.iter().any(|d| c & d == *c))
            && self.keep_labels.iter().zip(coarser.keep_labels).all(|(&a, b)| a || !b)
    }
}

/// All legal decorations up to the scheme's identifications.
pub fn enumerate_prototiles(c: &Coarsening) -> Vec<Decoration> {
    let mut out: Vec<Decoration> = raw_tiles().iter().map(|t| c.apply(t)).collect();
    out.sort();
    out.dedup();
    out
}

/// A chair-family substitution on coarsened decorations.
#[derive(Clone, Debug)]
pub struct ChairSystem {
    pub coarsening: Coarsening,
    pub tiles: Vec<Decoration>,
    /// A fully decorated tile in each class.
    pub representatives: Vec<Decoration>,
    pub substitution: Substitution2D,
}

impl ChairSystem {
    pub fn index_of(&self, d: &Decoration) -> Option<usize> {
        self.tiles.binary_search(d).ok()
    }
}

/// Pushes the chair rule down along a coarsening, rejecting identifications that do not commute
/// with the rule.
pub fn descend_rule(c: &Coarsening) -> Result<ChairSystem> {
    let tiles = enumerate_prototiles(c);
    let idx = |d: &Decoration| tiles.binary_search(d).expect("coarsened tile is enumerated");
    let mut images: BTreeMap<usize, ([[usize; 2]; 2], Decoration)> = BTreeMap::new();
    for t in raw_tiles() {
        let img = chair_rule(&t).map(|row| row.map(|d| idx(&c.apply(&d))));
        let k = idx(&c.apply(&t));
        match images.get(&k) {
            Some((prev, witness)) if *prev != img => {
                return Err(Error::NotWellDefined(format!(
                    "{witness} and {t} are identified to {} but their images differ",
                    tiles[k]
                )));
            }
            Some(_) => {}
            None => {
                images.insert(k, (img, t));
            }
        }
    }
    let names = tiles.iter().map(ToString::to_string).collect();
    let representatives = images.values().map(|(_, t)| *t).collect();
    let rule = images.into_values().map(|(img, _)| img).collect();
    let substitution = Substitution2D::new(names, rule)?;
    Ok(ChairSystem { coarsening: c.clone(), tiles, representatives, substitution })
}
