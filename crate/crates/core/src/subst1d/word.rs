use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::IntMatrix;

/// A word over an alphabet, letters given by index.
pub type Word = Vec<usize>;

/// Substitution `ρ: A → A⁺` on a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution1D {
    names: Vec<String>,
    rule: Vec<Word>,
    primitive: bool,
}

impl Substitution1D {
    pub fn new(names: Vec<String>, rule: Vec<Word>) -> Result<Self> {
        if names.is_empty() || names.len() != rule.len() {
            return Err(Error::Parse("one rule per letter of a nonempty alphabet".into()));
        }
        if rule.iter().any(|w| w.is_empty() || w.iter().any(|&c| c >= names.len())) {
            return Err(Error::Parse("images must be nonempty words over the alphabet".into()));
        }
        let primitive = is_primitive(&rule);
        Ok(Substitution1D { names, rule, primitive })
    }

    /// Rules given by letter names, e.g. `[("a", &["a", "b"]), ("b", &["a"])]`.
    pub fn from_named(rules: &[(&str, &[&str])]) -> Result<Self> {
        let names: Vec<String> = rules.iter().map(|(a, _)| a.to_string()).collect();
        let index: HashMap<&str, usize> = rules.iter().enumerate().map(|(i, (a, _))| (*a, i)).collect();
        let rule = rules
            .iter()
            .map(|(_, img)| {
                img.iter()
                    .map(|c| index.get(c).copied().ok_or_else(|| Error::Parse(format!("unknown letter {c}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::new(names, rule)
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

    pub fn image(&self, a: usize) -> &[usize] {
        &self.rule[a]
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Entry `(a, b)` counts the occurrences of `b` in `ρ(a)`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = vec![0i64; n * n];
        for (a, w) in self.rule.iter().enumerate() {
            for &b in w {
                m[a * n + b] += 1;
            }
        }
        IntMatrix::from_fn(n, n, |i, j| m[i * n + j].into())
    }

    pub fn apply(&self, w: &[usize]) -> Word {
        w.iter().flat_map(|&a| self.rule[a].iter().copied()).collect()
    }

    pub fn iterate(&self, a: usize, n: u32) -> Word {
        let mut w = vec![a];
        for _ in 0..n {
            w = self.apply(&w);
        }
        w
    }

    pub fn word_name(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.names[a].as_str()).collect::<Vec<_>>().join(".")
    }

    /// Letters separated by `.` or whitespace.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split(|c: char| c == '.' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| self.names.iter().position(|n| n == t).ok_or_else(|| Error::Parse(format!("unknown letter {t}"))))
            .collect()
    }

    fn check(&self) -> Result<()> {
        // Expanding is needed for iterated images to reach every length.
        if !self.primitive || self.rule.iter().all(|w| w.len() < 2) {
            return Err(Error::NotPrimitive);
        }
        Ok(())
    }
}

fn is_primitive(rule: &[Word]) -> bool {
    let n = rule.len();
    let mut step = vec![vec![false; n]; n];
    for (a, w) in rule.iter().enumerate() {
        for &b in w {
            step[a][b] = true;
        }
    }
    // Wielandt: a primitive n×n matrix has a positive power at or below n² − 2n + 2.
    let mut cur = step.clone();
    for _ in 0..(n * n).saturating_sub(2 * n) + 2 {
        if cur.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        let next = (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| cur[i][k] && step[k][j])).collect()).collect();
        cur = next;
    }
    false
}

pub(crate) fn factors(w: &[usize], n: usize) -> impl Iterator<Item = &[usize]> {
    w.windows(n)
}

/// The length-`n` factors of the substitution language.
///
/// Seeded with the factors of one long iterate, then closed under `W ← W ∪ factors_n(ρ(W))` until
/// nothing new appears. Every `n`-factor of `ρ^{j+1}(a)` sits inside `ρ(w)` for an `n`-factor `w`
/// of `ρ^j(a)`, so the closure is the whole language.
pub fn legal_words(s: &Substitution1D, n: usize) -> Result<BTreeSet<Word>> {
    s.check()?;
    assert!(n >= 1, "words have positive length");
    let mut seed = vec![0];
    while seed.len() < n {
        seed = s.apply(&seed);
    }
    let mut set: BTreeSet<Word> = factors(&seed, n).map(<[usize]>::to_vec).collect();
    let mut frontier: Vec<Word> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for f in factors(&s.apply(w), n) {
                if set.insert(f.to_vec()) {
                    next.push(f.to_vec());
                }
            }
        }
        frontier = next;
    }
    Ok(set)
}

/// Collared substitution: letters are legal words `x_{-L} … x_0 … x_R`, read as the tile `x_0`
/// decorated with its neighbourhood.
#[derive(Clone, Debug)]
pub struct CollaredSystem1D {
    pub base: Substitution1D,
    pub left: usize,
    pub right: usize,
    /// Collared letters, as base words of length `left + 1 + right`.
    pub letters: Vec<Word>,
    /// Induced substitution on the collared letters.
    pub substitution: Substitution1D,
}

impl CollaredSystem1D {
    pub fn new(base: &Substitution1D, left: usize, right: usize) -> Result<Self> {
        let width = left + 1 + right;
        let letters: Vec<Word> = legal_words(base, width)?.into_iter().collect();
        let index: HashMap<&[usize], usize> = letters.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut rule = Vec::with_capacity(letters.len());
        for w in &letters {
            let img = base.apply(w);
            let off = base.apply(&w[..left]).len();
            let centre = base.image(w[left]).len();
            let children = (0..centre)
                .map(|i| {
                    let start = off + i - left;
                    *index.get(&img[start..start + width]).expect("factors of legal words are legal")
                })
                .collect();
            rule.push(children);
        }
        let names = letters.iter().map(|w| base.word_name(w)).collect();
        let substitution = Substitution1D::new(names, rule)?;
        Ok(CollaredSystem1D { base: base.clone(), left, right, letters, substitution })
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.letters.binary_search_by(|x| x.as_slice().cmp(w)).ok()
    }

    /// Pairs of collared letters that occur next to each other: overlapping windows of a legal
    /// word of length `left + 2 + right`.
    pub fn transitions(&self) -> Result<Vec<(usize, usize)>> {
        let width = self.left + 1 + self.right;
        Ok(legal_words(&self.base, width + 1)?
            .into_iter()
            .map(|w| {
                let a = self.index_of(&w[..width]).expect("legal");
                let b = self.index_of(&w[1..]).expect("legal");
                (a, b)
            })
            .collect())
    }
}

/// Does `ρ^n` force the border? For every legal `x a y`, the letter before `ρ^n(a)` and the letter
/// after it must depend on `a` alone.
pub fn border_forcing_1d(s: &Substitution1D, max_power: u32) -> Result<bool> {
    let triples = legal_words(s, 3)?;
    for n in 1..=max_power {
        let mut before: HashMap<usize, usize> = HashMap::new();
        let mut after: HashMap<usize, usize> = HashMap::new();
        let mut ok = true;
        for t in &triples {
            let l = *s.iterate(t[0], n).last().expect("nonempty");
            let r = s.iterate(t[2], n)[0];
            ok &= *before.entry(t[1]).or_insert(l) == l;
            ok &= *after.entry(t[1]).or_insert(r) == r;
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}
