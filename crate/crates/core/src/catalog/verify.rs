use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::compute::{cohomology, factor_map, path_realizations, shortcut_agrees};
use super::golden::{GoldenEntry, GoldenTable, Kind};
use super::id::{FactorPath, PathWord, SpaceId};
use crate::complex::{les_quotient, FactorMap};
use crate::error::{Error, Result};
use crate::limits::GroupExpr;
use crate::subst1d::verify_times2_ses;
use crate::subst2d::{compose_path, lattice_edges, realizations, Collar, DecorationScheme, EdgeLabel};

/// Parameter pairs checked when no grid is given.
pub const DEFAULT_GRID: [(u32, u32); 5] = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    OneD,
    TwoD,
    All,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1d" => Ok(Scope::OneD),
            "2d" => Ok(Scope::TwoD),
            "all" => Ok(Scope::All),
            _ => Err(Error::Parse(format!("scope must be 1d, 2d or all, not {s:?}"))),
        }
    }
}

/// One comparison of a computed value against an expected one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub degree: Option<usize>,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    /// Time of the computation this check belongs to.
    pub runtime_ms: u128,
    pub note: Option<String>,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "degree": self.degree,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.pass,
            "runtime_ms": self.runtime_ms,
            "note": self.note,
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.id)?;
        if let Some(d) = self.degree {
            write!(f, " [{d}]")?;
        }
        if self.pass {
            write!(f, ": {}", self.computed)?;
        } else {
            write!(f, ": expected {}, computed {}", self.expected, self.computed)?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Checks in catalog order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.checks.iter().filter(|c| c.pass).count(),
            "failed": self.failures().count(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} passed, {failed} failed", self.checks.len(), self.checks.len() - failed)
    }
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

fn run(jobs: Vec<Job>) -> Report {
    let parts: Vec<Vec<Check>> = jobs.par_iter().map(|j| j()).collect();
    Report { checks: parts.concat() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_millis())
}

/// Compares each expected row against the computed groups.
fn compare(id: &str, rows: &[GoldenEntry], computed: &Result<Vec<GroupExpr>>, ms: u128) -> Vec<Check> {
    rows.iter()
        .map(|row| {
            let (computed, pass) = match (computed, row.expected_group()) {
                (Ok(gs), Ok(want)) => match gs.get(row.degree) {
                    Some(g) => (g.to_string(), *g == want),
                    None => ("absent".into(), false),
                },
                (Err(e), _) => (format!("error: {e}"), false),
                (_, Err(e)) => (format!("error: {e}"), false),
            };
            Check {
                id: id.to_string(),
                degree: Some(row.degree),
                expected: row.expected.clone(),
                computed,
                pass,
                runtime_ms: ms,
                note: row.note.clone().filter(|n| !n.is_empty()),
            }
        })
        .collect()
}

fn h0_row(key: &str) -> GoldenEntry {
    GoldenEntry { kind: Kind::Path, key: key.into(), degree: 0, expected: "0".into(), note: Some("H^0_Q = 0".into()) }
}

fn outcome(id: String, expected: &str, got: Result<String>, ms: u128) -> Check {
    let (computed, pass) = match got {
        Ok(s) => (s.clone(), s == expected),
        Err(e) => (format!("error: {e}"), false),
    };
    Check { id, degree: None, expected: expected.into(), computed, pass, runtime_ms: ms, note: None }
}

/// Quotient groups and the cokernel cross-check for one factor map.
fn quotient_job(
    id: String,
    rows: Vec<GoldenEntry>,
    make: impl Fn() -> Result<FactorMap> + Send + Sync + 'static,
) -> Job {
    Box::new(move || {
        let (res, ms) = timed(|| -> Result<(Vec<GroupExpr>, Result<GroupExpr>)> {
            let f = make()?;
            let les = les_quotient(&f)?;
            let l = shortcut_agrees(&f, &les);
            Ok((les.quotient, l))
        });
        let (groups, lemma) = match res {
            Ok((g, l)) => (Ok(g), l.map(|_| "agrees".to_string())),
            Err(e) => (Err(e.clone()), Err(e)),
        };
        let mut out = compare(&id, &rows, &groups, ms);
        out.push(outcome(format!("shortcut {id}"), "agrees", lemma, ms));
        out
    })
}

fn pair_job(id: String, from: SpaceId, to: SpaceId, collar: Collar, rows: Vec<GoldenEntry>) -> Job {
    quotient_job(id, rows, move || factor_map(from, to, collar))
}

fn space_job(id: SpaceId, collar: Collar, rows: Vec<GoldenEntry>) -> Job {
    Box::new(move || {
        let (res, ms) = timed(|| cohomology(id, collar));
        compare(&format!("space {id}"), &rows, &res, ms)
    })
}

fn chain_name(nodes: &[DecorationScheme]) -> String {
    nodes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" > ")
}

fn word_name(w: &[EdgeLabel]) -> String {
    w.iter().map(ToString::to_string).collect()
}

/// Realized chains of `word` from every chair space.
fn all_realizations(word: &[EdgeLabel]) -> Vec<Vec<DecorationScheme>> {
    DecorationScheme::all().into_iter().flat_map(|s| realizations(word, s)).collect()
}

fn chain_job(id: String, nodes: Vec<DecorationScheme>, collar: Collar, rows: Vec<GoldenEntry>) -> Job {
    quotient_job(id, rows, move || compose_path(&nodes, collar))
}

/// Distinct rearrangements of a word other than itself.
fn rearrangements(w: &[EdgeLabel]) -> Vec<Vec<EdgeLabel>> {
    let mut out: Vec<Vec<EdgeLabel>> = Vec::new();
    let mut cur = w.to_vec();
    cur.sort();
    loop {
        if cur != w {
            out.push(cur.clone());
        }
        // Next lexicographic permutation.
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn jobs_1d(table: &GoldenTable, grid: &[(u32, u32)]) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for &(k, l) in grid {
        let p = Some((k, l));
        for id in [SpaceId::Sol(k + l), SpaceId::Pd(k, l), SpaceId::Tm(k, l)] {
            jobs.push(space_job(id, Collar::Auto, table.lookup(Kind::Space, &id.to_string(), p)));
        }
        let (tm, pd, sol) = (SpaceId::Tm(k, l), SpaceId::Pd(k, l), SpaceId::Sol(k + l));
        for (a, b) in [(pd, sol), (tm, sol), (tm, pd)] {
            let key = format!("{a}>{b}");
            jobs.push(pair_job(format!("pair {key}"), a, b, Collar::Auto, table.lookup(Kind::Pair, &key, p)));
        }
        let h1 =
            |key: String| -> String {
                table.lookup(Kind::Pair, &key, p).into_iter().find(|e| e.degree == 1).map_or("?".into(), |e| {
                    e.expected_group().map_or_else(|e| format!("error: {e}"), |g| g.to_string())
                })
            };
        let expected = format!(
            "0 → {} → {} → {} → 0",
            h1(format!("{pd}>{sol}")),
            h1(format!("{tm}>{sol}")),
            h1(format!("{tm}>{pd}"))
        );
        jobs.push(Box::new(move || {
            let (res, ms) = timed(|| verify_times2_ses(k, l));
            let got = res.map(|v| format!("0 → {} → {} → {} → 0", v.groups[0], v.groups[1], v.groups[2]));
            let mut c = outcome(format!("ses {tm}"), &expected, got, ms);
            c.note = Some("first map is ×2".into());
            vec![c]
        }));
    }
    jobs
}

fn path_words(table: &GoldenTable) -> Vec<String> {
    let mut words: Vec<String> = Vec::new();
    for e in table.of_kind(Kind::Path) {
        if !words.contains(&e.key) {
            words.push(e.key.clone());
        }
    }
    words
}

fn jobs_2d(table: &GoldenTable, collar: Collar) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for id in SpaceId::chairs() {
        jobs.push(space_job(id, collar, table.lookup(Kind::Space, &id.to_string(), None)));
    }
    for (a, label, b) in lattice_edges() {
        let rows = table.lookup(Kind::Edge, &label.to_string(), None);
        jobs.push(chain_job(format!("edge {label} {}", chain_name(&[a, b])), vec![a, b], collar, rows));
    }
    for word in path_words(table) {
        let w = EdgeLabel::parse_word(&word).expect("golden words are over A, B, C");
        let mut rows = table.lookup(Kind::Path, &word, None);
        rows.insert(0, h0_row(&word));
        for nodes in all_realizations(&w) {
            jobs.push(chain_job(format!("path {word} {}", chain_name(&nodes)), nodes, collar, rows.clone()));
        }
        // The groups depend only on the letters used, not their order.
        for r in rearrangements(&w) {
            for nodes in all_realizations(&r) {
                let id = format!("path {} as {word} {}", word_name(&r), chain_name(&nodes));
                jobs.push(chain_job(id, nodes, collar, rows.clone()));
            }
        }
    }
    let zero = SpaceId::solenoid_chair();
    for id in SpaceId::chairs() {
        let mut rows = table.lookup(Kind::Relative, &id.to_string(), None);
        rows.insert(0, h0_row(&id.to_string()));
        jobs.push(pair_job(format!("relative {id}"), id, zero, collar, rows));
    }
    jobs
}

/// Compares every computed group in scope against the golden table. Failures are recorded in the
/// report, never raised.
pub fn verify_all(scope: Scope, grid: &[(u32, u32)], collar: Collar) -> Report {
    verify_with(&GoldenTable::bundled(), scope, grid, collar)
}

pub fn verify_with(table: &GoldenTable, scope: Scope, grid: &[(u32, u32)], collar: Collar) -> Report {
    let mut jobs = Vec::new();
    if scope != Scope::TwoD {
        jobs.extend(jobs_1d(table, grid));
    }
    if scope != Scope::OneD {
        jobs.extend(jobs_2d(table, collar));
    }
    run(jobs)
}

/// The path whose quotient groups equal those of a chair space relative to the solenoid chair.
pub fn relative_word(s: DecorationScheme) -> &'static str {
    use crate::subst2d::{ArrowMode as A, LabelMode as L};
    match (s.arrow, s.label) {
        (A::X, L::Plus) => "ABAC",
        (A::Slash, L::Plus) => "BAC",
        (A::Zero, L::Plus) => "BC",
        (A::X, L::Minus) => "AAC",
        (A::Slash, L::Minus) => "AC",
        (A::Zero, L::Minus) => "C",
        (A::X, L::Zero) => "AC",
        (A::Slash, L::Zero) => "C",
        (A::Zero, L::Zero) => "",
    }
}

/// Table rows of a word: a path row, an edge row for single letters, all zero for the empty word.
fn word_rows(table: &GoldenTable, word: &str) -> Vec<GoldenEntry> {
    match word.len() {
        0 => (1..=2).map(|d| GoldenEntry { degree: d, note: None, ..h0_row("") }).collect(),
        1 => table.lookup(Kind::Edge, word, None).into_iter().filter(|e| e.degree > 0).collect(),
        _ => table.lookup(Kind::Path, word, None),
    }
}

/// Relative quotient groups against path rows (both as tabulated and as computed), and
/// `H^0 = Z` for every space.
pub fn consistency_cross_checks(collar: Collar) -> Report {
    let table = GoldenTable::bundled();
    let zero = SpaceId::solenoid_chair();
    let mut jobs: Vec<Job> = Vec::new();
    for id in SpaceId::chairs() {
        let s = id.scheme().expect("chair");
        let word = relative_word(s);
        let shown = if word.is_empty() { "identity" } else { word };
        let rows = word_rows(&table, word);
        // Tabulated relative rows against the tabulated path rows.
        let tab: Result<Vec<GroupExpr>> = {
            let rel = table.lookup(Kind::Relative, &id.to_string(), None);
            let mut gs = vec![GroupExpr::zero(); 3];
            rel.iter().try_for_each(|e| e.expected_group().map(|g| gs[e.degree] = g)).map(|_| gs)
        };
        jobs.push(Box::new({
            let rows = rows.clone();
            move || compare(&format!("table relative {id} ~ {shown}"), &rows, &tab, 0)
        }));
        let rows = rows.clone();
        jobs.push(Box::new(move || {
            let (res, ms) = timed(|| -> Result<Vec<GroupExpr>> {
                let rel = les_quotient(&factor_map(id, zero, collar)?)?.quotient;
                if !word.is_empty() {
                    let p = FactorPath { start: id, word: PathWord::Chair(EdgeLabel::parse_word(word)?) };
                    for r in path_realizations(&p, collar)? {
                        if r.quotient != rel {
                            return Err(Error::NotWellDefined(format!("{word} from {id} gives {:?}", r.quotient)));
                        }
                    }
                }
                Ok(rel)
            });
            compare(&format!("computed relative {id} ~ {shown}"), &rows, &res, ms)
        }));
    }
    let mut spaces = SpaceId::chairs();
    for (k, l) in DEFAULT_GRID {
        spaces.extend([SpaceId::Sol(k + l), SpaceId::Pd(k, l), SpaceId::Tm(k, l)]);
    }
    for id in spaces {
        jobs.push(Box::new(move || {
            let (res, ms) = timed(|| cohomology(id, collar));
            let row =
                GoldenEntry { kind: Kind::Space, key: id.to_string(), degree: 0, expected: "Z".into(), note: None };
            compare(&format!("H^0 {id}"), &[row], &res, ms)
        }));
    }
    run(jobs)
}
