use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::limits::GroupExpr;

/// The bundled expected-value table.
pub const GOLDEN_TSV: &str = include_str!("../../data/golden.tsv");

/// What a golden row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Absolute cohomology of a space.
    Space,
    /// Quotient cohomology of a one-dimensional factor pair `source>target`.
    Pair,
    /// Quotient cohomology along one lattice edge, keyed by its label.
    Edge,
    /// Quotient cohomology along a composed path, keyed by its word.
    Path,
    /// Quotient cohomology of a chair space relative to the solenoid chair space.
    Relative,
}

impl Kind {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "space" => Kind::Space,
            "pair" => Kind::Pair,
            "edge" => Kind::Edge,
            "path" => Kind::Path,
            "relative" => Kind::Relative,
            _ => return Err(Error::Parse(format!("unknown golden kind {s:?}"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Space => "space",
            Kind::Pair => "pair",
            Kind::Edge => "edge",
            Kind::Path => "path",
            Kind::Relative => "relative",
        }
    }
}

/// One expected group. `key` and `expected` may be templates in `k` and `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub kind: Kind,
    pub key: String,
    pub degree: usize,
    pub expected: String,
    /// Provenance note; `boxed` marks a corrected value.
    pub note: Option<String>,
}

impl GoldenEntry {
    pub fn is_template(&self) -> bool {
        self.key.contains('k')
    }

    pub fn is_boxed(&self) -> bool {
        self.note.as_deref() == Some("boxed")
    }

    /// Substitutes a parameter pair into a template row.
    pub fn instantiate(&self, k: u32, l: u32) -> GoldenEntry {
        let (sum, diff) = ((k + l).to_string(), k.abs_diff(l).to_string());
        let key = self.key.replace("k+l", &sum).replace("k,l", &format!("{k},{l}"));
        let expected = self.expected.replace("(k+l)", &sum).replace("|k-l|", &diff);
        GoldenEntry { key, expected, ..self.clone() }
    }

    pub fn expected_group(&self) -> Result<GroupExpr> {
        GroupExpr::parse(&self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Line {
    Comment(String),
    Entry(GoldenEntry),
}

/// Expected results, one record per line: `kind  key  degree  expected  [note]`, tab separated.
/// Lines starting with `#` are comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    lines: Vec<Line>,
    trailing_newline: bool,
}

impl GoldenTable {
    pub fn bundled() -> Self {
        Self::parse(GOLDEN_TSV).expect("bundled golden table parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            if raw.starts_with('#') {
                lines.push(Line::Comment(raw.to_string()));
                continue;
            }
            let f: Vec<&str> = raw.split('\t').collect();
            if !(4..=5).contains(&f.len()) {
                return Err(Error::Parse(format!("golden line {}: expected 4 or 5 tab-separated fields", n + 1)));
            }
            let degree =
                f[2].parse().map_err(|_| Error::Parse(format!("golden line {}: bad degree {:?}", n + 1, f[2])))?;
            let entry = GoldenEntry {
                kind: Kind::parse(f[0])?,
                key: f[1].to_string(),
                degree,
                expected: f[3].to_string(),
                note: f.get(4).map(|s| s.to_string()),
            };
            if !entry.is_template() {
                entry.expected_group()?;
            }
            lines.push(Line::Entry(entry));
        }
        Ok(GoldenTable { lines, trailing_newline: text.ends_with('\n') })
    }

    pub fn entries(&self) -> impl Iterator<Item = &GoldenEntry> {
        self.lines.iter().filter_map(|l| match l {
            Line::Entry(e) => Some(e),
            Line::Comment(_) => None,
        })
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &GoldenEntry> {
        self.entries().filter(move |e| e.kind == kind)
    }

    /// The expected groups for one key in degree order, with templates instantiated.
    pub fn lookup(&self, kind: Kind, key: &str, params: Option<(u32, u32)>) -> Vec<GoldenEntry> {
        let mut out: Vec<GoldenEntry> = self
            .of_kind(kind)
            .map(|e| match params {
                Some((k, l)) if e.is_template() => e.instantiate(k, l),
                _ => e.clone(),
            })
            .filter(|e| e.key == key)
            .collect();
        out.sort_by_key(|e| e.degree);
        out
    }
}

impl fmt::Display for GoldenTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            match line {
                Line::Comment(c) => f.write_str(c)?,
                Line::Entry(e) => {
                    write!(f, "{}\t{}\t{}\t{}", e.kind.as_str(), e.key, e.degree, e.expected)?;
                    if let Some(n) = &e.note {
                        write!(f, "\t{n}")?;
                    }
                }
            }
        }
        if self.trailing_newline {
            f.write_str("\n")?;
        }
        Ok(())
    }
}
