use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::TowerGroup;
use crate::abelian::snf;
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Canonical description of a direct-limit group: `⊕ ℤ_tᵢ ⊕ ⊕ ℤ[1/mⱼ]^{aⱼ} ⊕ ℤᵇ`.
///
/// Torsion is kept as invariant factors (`t₁ | t₂ | …`), localization bases as square-free
/// radicals (`ℤ[1/4] = ℤ[1/2]`), merged and sorted. `ℤ[1/1]` becomes a free summand and
/// `ℤ[1/0]` disappears.
#[derive(Clone)]
pub struct GroupExpr {
    torsion: Vec<BigInt>,
    localizations: Vec<(BigInt, usize)>,
    free_rank: usize,
    unclassified: Option<Box<TowerGroup>>,
}

impl PartialEq for GroupExpr {
    fn eq(&self, other: &Self) -> bool {
        self.unclassified.is_none()
            && other.unclassified.is_none()
            && self.torsion == other.torsion
            && self.localizations == other.localizations
            && self.free_rank == other.free_rank
    }
}

/// Product of the distinct prime factors of `n > 0`.
pub fn radical(n: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut r = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            r *= &p;
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        r *= n;
    }
    r
}

fn invariant_factors(orders: &[BigInt]) -> Vec<BigInt> {
    let d: Vec<BigInt> = orders.iter().map(|o| o.abs()).filter(|o| !o.is_zero()).collect();
    snf(&IntMatrix::diagonal(&d)).invariant_factors.into_iter().filter(|t| !t.is_one()).collect()
}

impl GroupExpr {
    pub fn zero() -> Self {
        GroupExpr { torsion: vec![], localizations: vec![], free_rank: 0, unclassified: None }
    }

    /// Normalizing constructor. Torsion orders 0 and 1 are dropped; base 0 drops the summand and
    /// base 1 turns it into a free summand.
    pub fn new(torsion: &[BigInt], localizations: &[(BigInt, usize)], free_rank: usize) -> Self {
        let mut free = free_rank;
        let mut locs: Vec<(BigInt, usize)> = Vec::new();
        for (base, mult) in localizations {
            if *mult == 0 || base.is_zero() {
                continue;
            }
            let r = radical(base);
            if r.is_one() {
                free += mult;
                continue;
            }
            match locs.iter_mut().find(|(b, _)| *b == r) {
                Some((_, m)) => *m += mult,
                None => locs.push((r, *mult)),
            }
        }
        locs.sort();
        GroupExpr { torsion: invariant_factors(torsion), localizations: locs, free_rank: free, unclassified: None }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(&[], &[], rank)
    }

    pub fn localization(base: u64, mult: usize) -> Self {
        Self::new(&[], &[(BigInt::from(base), mult)], 0)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(&[BigInt::from(order)], &[], 0)
    }

    pub fn unclassified(t: TowerGroup) -> Self {
        GroupExpr { unclassified: Some(Box::new(t)), ..Self::zero() }
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        let mut l = self.localizations.clone();
        l.extend(other.localizations.iter().cloned());
        Self::new(&t, &l, self.free_rank + other.free_rank)
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn localizations(&self) -> &[(BigInt, usize)] {
        &self.localizations
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_classified(&self) -> bool {
        self.unclassified.is_none()
    }

    pub fn unclassified_payload(&self) -> Option<&TowerGroup> {
        self.unclassified.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.is_classified() && self.torsion.is_empty() && self.localizations.is_empty() && self.free_rank == 0
    }

    /// Rank over ℚ (torsion-free rank).
    pub fn rational_rank(&self) -> usize {
        self.free_rank + self.localizations.iter().map(|(_, m)| m).sum::<usize>()
    }

    /// Parses the text form, e.g. `Z_3 + Z[1/2]^3 + Z`, `(1/3)Z[1/4] + Z^2`, `0`.
    ///
    /// `⊕` is accepted as a separator, and a rational prefix like `(1/3)` on a localization is
    /// ignored (it does not change the abstract group).
    pub fn parse(s: &str) -> Result<Self> {
        let src = s.replace('⊕', "+");
        let mut torsion = Vec::new();
        let mut locs = Vec::new();
        let mut free = 0usize;
        for raw in src.split('+') {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || Error::Parse(format!("bad group term '{}' in '{s}'", raw.trim()));
            if term.is_empty() {
                return Err(bad());
            }
            if term == "0" {
                continue;
            }
            let mut rest = term.as_str();
            if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(bad)?;
                let (p, q) = r[..close].split_once('/').ok_or_else(bad)?;
                let p: BigInt = p.parse().map_err(|_| bad())?;
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if p.is_zero() || q.is_zero() {
                    return Err(bad());
                }
                rest = &r[close + 1..];
            }
            let rest = rest.strip_prefix('Z').ok_or_else(bad)?;
            let (body, exp) = match rest.rsplit_once('^') {
                Some((b, e)) if !b.ends_with('[') => (b, e.parse::<usize>().map_err(|_| bad())?),
                _ => (rest, 1),
            };
            if body.is_empty() {
                free += exp;
            } else if let Some(n) = body.strip_prefix('_') {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                if n.is_negative() {
                    return Err(bad());
                }
                if n.is_zero() {
                    free += exp; // ℤ/0 = ℤ
                } else {
                    torsion.extend(std::iter::repeat_n(n, exp));
                }
            } else if let Some(inner) = body.strip_prefix("[1/").and_then(|b| b.strip_suffix(']')) {
                let m: BigInt = inner.parse().map_err(|_| bad())?;
                if m.is_negative() {
                    return Err(bad());
                }
                locs.push((m, exp));
            } else {
                return Err(bad());
            }
        }
        Ok(Self::new(&torsion, &locs, free))
    }

    /// Structured form `{torsion: [...], localizations: [{base, mult}], free_rank}`.
    pub fn to_json(&self) -> Value {
        let num = |b: &BigInt| b.to_u64().map(Value::from).unwrap_or_else(|| Value::String(b.to_string()));
        let mut v = json!({
            "torsion": self.torsion.iter().map(num).collect::<Vec<_>>(),
            "localizations": self.localizations.iter()
                .map(|(b, m)| json!({"base": num(b), "mult": m}))
                .collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "expr": self.to_string(),
        });
        if self.unclassified.is_some() {
            v["unclassified"] = Value::Bool(true);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("bad structured group: {v}"));
        let int = |x: &Value| -> Option<BigInt> {
            match x {
                Value::Number(n) => n.as_u64().map(BigInt::from),
                Value::String(s) => s.parse().ok(),
                _ => None,
            }
        };
        let torsion =
            v["torsion"].as_array().ok_or_else(bad)?.iter().map(int).collect::<Option<Vec<_>>>().ok_or_else(bad)?;
        let locs = v["localizations"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|l| Some((int(&l["base"])?, usize::try_from(l["mult"].as_u64()?).ok()?)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        let free = v["free_rank"].as_u64().ok_or_else(bad)? as usize;
        Ok(Self::new(&torsion, &locs, free))
    }
}

/// Abstract isomorphism of two classified limit groups.
pub fn iso_check(a: &GroupExpr, b: &GroupExpr) -> Result<bool> {
    if !a.is_classified() || !b.is_classified() {
        return Err(Error::Unclassified("cannot compare an unclassified group".into()));
    }
    Ok(a == b)
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.unclassified {
            return write!(f, "unclassified[{}]", t.summary());
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z_{t}")).collect();
        for (b, m) in &self.localizations {
            parts.push(if *m == 1 { format!("Z[1/{b}]") } else { format!("Z[1/{b}]^{m}") });
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupExpr({self})")
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
