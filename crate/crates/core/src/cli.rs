//! Command-line front end.
//!
//! ```text
//! tilecoh space tm:2,1
//! tilecoh quotient tm:1,1 pd:1,1
//! tilecoh path chair:X,+ ABAC
//! tilecoh verify all --grid "1,1;2,1"
//! tilecoh dump chair:0,0 --json
//! ```
//!
//! Exit status: 0 on success, 1 on a failed verification or computation, 2 on a usage error.

use std::io::Write;
use std::str::FromStr;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{self, FactorPath, Scope, SpaceId, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::limits::GroupExpr;
use crate::subst2d::Collar;

#[derive(Parser, Debug, Clone)]
#[command(name = "tilecoh", version, about = "Čech and quotient cohomology of substitution tiling spaces")]
pub struct Cli {
    /// Collaring of the approximants: auto, on or off.
    #[arg(long, global = true, default_value = "auto", value_parser = Collar::from_str)]
    pub collar: Collar,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Parameter pairs for the one-dimensional checks, as "k,l;k,l;...".
    #[arg(long, global = true, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    /// Give up after this many seconds.
    #[arg(long = "timeout-sec", global = true)]
    pub timeout_sec: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cohomology of a space, e.g. tm:2,1, pd:3,1, sol:4, chair:X,+.
    Space {
        #[arg(value_parser = SpaceId::from_str)]
        id: SpaceId,
    },
    /// Quotient cohomology of a factor pair.
    Quotient {
        #[arg(value_parser = SpaceId::from_str)]
        from: SpaceId,
        #[arg(value_parser = SpaceId::from_str)]
        to: SpaceId,
    },
    /// Quotient cohomology along a path: a word over A, B, C for chairs, or phi, psi, psi.phi.
    Path {
        #[arg(value_parser = SpaceId::from_str)]
        start: SpaceId,
        word: String,
    },
    /// Check computed groups against the expected table.
    Verify {
        #[arg(default_value = "all", value_parser = Scope::from_str)]
        scope: Scope,
    },
    /// Cells and coboundary matrices of an approximant.
    Dump {
        #[arg(value_parser = SpaceId::from_str)]
        id: SpaceId,
    },
}

/// Parameter pairs `k,l` (a newtype so clap takes the whole list as one value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<(u32, u32)>);

fn parse_grid(s: &str) -> Result<Grid> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let bad = || Error::Parse(format!("grid entry {p:?} is not k,l with k, l >= 1"));
            let (k, l) = p.split_once(',').ok_or_else(bad)?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            let l: u32 = l.trim().parse().map_err(|_| bad())?;
            if k == 0 || l == 0 {
                return Err(bad());
            }
            Ok((k, l))
        })
        .collect::<Result<Vec<_>>>()
        .and_then(|g| if g.is_empty() { Err(Error::Parse("empty grid".into())) } else { Ok(Grid(g)) })
}

/// Rendered output and exit status.
struct Outcome {
    text: String,
    code: i32,
}

fn degrees_text(groups: &[GroupExpr], suffix: &str, from: usize) -> String {
    groups.iter().enumerate().skip(from).map(|(k, g)| format!("H^{k}{suffix} = {g}")).collect::<Vec<_>>().join("; ")
}

fn degrees_json(groups: &[GroupExpr], from: usize) -> Value {
    groups
        .iter()
        .enumerate()
        .skip(from)
        .map(|(k, g)| {
            let mut v = g.to_json();
            v["degree"] = k.into();
            v
        })
        .collect()
}

fn groups_outcome(
    cli: &Cli,
    key: &str,
    name: String,
    groups: &[GroupExpr],
    suffix: &str,
    from: usize,
    ms: u128,
) -> Outcome {
    let text = if cli.json {
        json!({ key: name, "runtime_ms": ms, "degrees": degrees_json(groups, from) }).to_string()
    } else {
        degrees_text(groups, suffix, from)
    };
    Outcome { text, code: 0 }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let t = Instant::now();
    let ms = |t: Instant| t.elapsed().as_millis();
    match &cli.command {
        Command::Space { id } => {
            let g = catalog::cohomology(*id, cli.collar)?;
            Ok(groups_outcome(cli, "space", id.to_string(), &g, "", 0, ms(t)))
        }
        Command::Quotient { from, to } => {
            let g = catalog::quotient(*from, *to, cli.collar)?.quotient;
            Ok(groups_outcome(cli, "pair", format!("{from}>{to}"), &g, "_Q", 0, ms(t)))
        }
        Command::Path { start, word } => {
            let p = FactorPath::new(*start, word)?;
            let g = catalog::path_quotient(&p, cli.collar)?;
            Ok(groups_outcome(cli, "path", format!("{start} {}", p.word), &g, "_Q", 1, ms(t)))
        }
        Command::Verify { scope } => {
            let grid = cli.grid.clone().map_or_else(|| DEFAULT_GRID.to_vec(), |g| g.0);
            let mut report = catalog::verify_all(*scope, &grid, cli.collar);
            if *scope != Scope::OneD {
                report.checks.extend(catalog::consistency_cross_checks(cli.collar).checks);
            }
            let code = if report.all_pass() { 0 } else { 1 };
            let text = if cli.json {
                let mut v = report.to_json();
                v["runtime_ms"] = (ms(t) as u64).into();
                v.to_string()
            } else {
                report.to_string()
            };
            Ok(Outcome { text, code })
        }
        Command::Dump { id } => {
            let d = catalog::dynamics(*id, cli.collar)?;
            let text = if cli.json {
                json!({ "space": id.to_string(), "complex": d.complex.dump_json() }).to_string()
            } else {
                format!("{id}\n{}", d.complex.dump_text().trim_end())
            };
            Ok(Outcome { text, code: 0 })
        }
    }
}

/// Runs the command line `args` (program name first), writing to `out` and `err`; returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    let result = match cli.timeout_sec {
        None => execute(&cli),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            let job = cli.clone();
            std::thread::spawn(move || {
                let _ = tx.send(execute(&job));
            });
            match rx.recv_timeout(Duration::from_secs(secs)) {
                Ok(r) => r,
                Err(_) => {
                    let _ = writeln!(err, "error: timed out after {secs} s");
                    return 1;
                }
            }
        }
    };
    match result {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.code
        }
        Err(e @ (Error::Parse(_) | Error::InvalidPath(_))) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("tilecoh").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid() {
        assert_eq!(parse_grid("1,1;2,1").unwrap().0, [(1, 1), (2, 1)]);
        assert!(parse_grid("1,0").is_err());
        assert!(parse_grid("").is_err());
    }

    #[test]
    fn usage_errors_name_the_token() {
        let (code, _, err) = call(&["space", "tm:0,3"]);
        assert_eq!(code, 2);
        assert!(err.contains("tm:0,3"), "{err}");
        let (code, _, err) = call(&["space", "tm:1,1", "--collar", "sideways"]);
        assert_eq!(code, 2);
        assert!(err.contains("sideways"), "{err}");
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn space_text() {
        let (code, out, _) = call(&["space", "sol:2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "H^0 = Z; H^1 = Z[1/2]");
    }

    #[test]
    fn grid_flag() {
        let (code, out, err) = call(&["verify", "1d", "--grid", "1,1;2,1"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("tm:2,1"), "{out}");
    }
}
