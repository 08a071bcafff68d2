#![allow(dead_code)]

pub mod criteria;
pub mod published;

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use tilecoh::abelian::{det, snf};
use tilecoh::complex::{lemma1_shortcut, les_quotient, CellularMap, CochainComplex, DynamicalComplex, FactorMap};
use tilecoh::limits::{charpoly, classify, eventual_restriction, TowerGroup};
use tilecoh::subst1d::{ap_complex_collared, Substitution1D};
use tilecoh::subst2d::{ap_complex_2d, Collar, Substitution2D};
use tilecoh::{GroupExpr, IntMatrix};

pub const CASES: u32 = 1000;

/// Canonical text of `⊕ Z_t ⊕ Z[1/m] ⊕ Z^free`, normalized by hand: bases reduced to their
/// radical, `Z[1/1] = Z`, `Z[1/0] = 0`, torsion as invariant factors.
pub fn render(torsion: &[u64], bases: &[u64], free: usize) -> String {
    let radical = |mut n: u64| {
        let mut r = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                r *= p;
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            r * n
        } else {
            r
        }
    };
    let mut free = free;
    let mut locs: Vec<(u64, usize)> = Vec::new();
    for &b in bases {
        match b {
            0 => {}
            1 => free += 1,
            _ => {
                let r = radical(b);
                match locs.iter_mut().find(|(x, _)| *x == r) {
                    Some((_, m)) => *m += 1,
                    None => locs.push((r, 1)),
                }
            }
        }
    }
    locs.sort();
    // Invariant factors: split every order into prime powers, then stack the largest powers.
    let mut prime_powers: Vec<(u64, Vec<u64>)> = Vec::new();
    for &t in torsion.iter().filter(|&&t| t > 1) {
        let mut n = t;
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                match prime_powers.iter_mut().find(|(x, _)| *x == p) {
                    Some((_, v)) => v.push(q),
                    None => prime_powers.push((p, vec![q])),
                }
            }
            p += 1;
        }
    }
    let depth = prime_powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; depth];
    for (_, v) in &mut prime_powers {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in v.iter().enumerate() {
            factors[depth - 1 - i] *= q;
        }
    }
    let mut parts: Vec<String> = factors.iter().map(|t| format!("Z_{t}")).collect();
    for (b, m) in locs {
        parts.push(if m == 1 { format!("Z[1/{b}]") } else { format!("Z[1/{b}]^{m}") });
    }
    match free {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn strings(v: &[GroupExpr]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn run_prop<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn matrix(rows: usize, cols: usize, entries: Vec<i64>) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]))
}

fn small_matrix(max: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-range..=range, r * c).prop_map(move |e| matrix(r, c, e))
    })
}

/// `gcd` of all `k × k` minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            g = g.gcd(&det(&a.select_rows(&rs).select_columns(&cs)));
        }
    }
    g
}

/// `U·A·V = D`, both transforms unimodular with the stated inverses, `D` diagonal with a
/// divisibility chain, and the chain agrees with the determinantal divisors.
pub fn prop_snf() -> Result<(), String> {
    run_prop("snf", small_matrix(4, 12), |a| {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        prop_assert!(det(&s.u).abs().is_one() && det(&s.v).abs().is_one());
        let r = s.invariant_factors.len();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let want = if i == j && i < r { s.invariant_factors[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(s.d.get(i, j), &want);
            }
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
        let mut prefix = BigInt::one();
        for k in 1..=a.rows().min(a.cols()) {
            let dk = determinantal_divisor(&a, k);
            if k <= r {
                prefix *= &s.invariant_factors[k - 1];
                prop_assert_eq!(&dk, &prefix);
            } else {
                prop_assert!(dk.is_zero());
            }
        }
        Ok(())
    })
}

/// Random primitive substitution on two or three letters, images of length 2 to 4.
pub fn substitution_1d() -> impl Strategy<Value = Substitution1D> {
    (2usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0..n, 2..=4), n))
        .prop_filter_map("primitive", |rule| {
            let names = (0..rule.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let s = Substitution1D::new(names, rule).ok()?;
            s.is_primitive().then_some(s)
        })
}

/// Two letters, constant length.
pub fn constant_length_1d() -> impl Strategy<Value = Substitution1D> {
    (Just(2usize), 2usize..=4)
        .prop_flat_map(|(n, q)| proptest::collection::vec(proptest::collection::vec(0..n, q), n))
        .prop_filter_map("primitive", |rule| {
            let names = (0..rule.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let s = Substitution1D::new(names, rule).ok()?;
            s.is_primitive().then_some(s)
        })
}

/// Random primitive 2×2 block substitution on one or two tiles.
pub fn substitution_2d() -> impl Strategy<Value = Substitution2D> {
    (1usize..=2).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0..n, 4), n)).prop_filter_map(
        "primitive",
        |rule| {
            let names = (0..rule.len()).map(|i| format!("t{i}")).collect();
            let rule = rule.iter().map(|b| [[b[0], b[1]], [b[2], b[3]]]).collect();
            let s = Substitution2D::new(names, rule).ok()?;
            s.is_primitive().then_some(s)
        },
    )
}

/// `δ∘δ = 0` and the self-map is a cochain map.
fn check_dynamics(d: &DynamicalComplex) -> Result<(), TestCaseError> {
    let c = &d.complex;
    for k in 1..c.dim() {
        prop_assert!(c.delta(k).mul(&c.delta(k - 1)).is_zero());
    }
    let p = &d.endo;
    for k in 0..c.dim() {
        prop_assert_eq!(c.delta(k).mul(p.pullback_matrix(k)), p.pullback_matrix(k + 1).mul(&c.delta(k)));
    }
    Ok(())
}

/// Coboundaries of every approximant compose to zero.
pub fn prop_delta_squared() -> Result<(), String> {
    run_prop("delta squared 1d", (substitution_1d(), 1usize..=2, 1usize..=2), |(s, l, r)| {
        let x = ap_complex_collared(&s, l, r).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check_dynamics(&x.dynamics)
    })?;
    run_prop("delta squared 2d", substitution_2d(), |s| {
        let x = ap_complex_2d(&s, Collar::Auto).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check_dynamics(&x.dynamics)
    })?;
    // Products of circles carry a nonzero δ₁.
    let torus = CochainComplex::torus();
    if !torus.delta(1).mul(&torus.delta(0)).is_zero() {
        return Err("torus δ∘δ ≠ 0".into());
    }
    Ok(())
}

/// A wedge of `n` circles whose edges are sent by `rows` onto the edges, collapsed onto a circle
/// wound `m` times, where every row sums to `m`.
pub fn wedge_pair(rows: &[Vec<i64>], m: i64) -> FactorMap {
    let n = rows.len();
    let x = Arc::new(
        CochainComplex::new(
            vec![vec!["v".into()], (0..n).map(|i| format!("e{i}")).collect()],
            vec![IntMatrix::zeros(n, 1)],
        )
        .expect("wedge"),
    );
    let y = Arc::new(CochainComplex::circle());
    let images: Vec<Vec<(usize, i64)>> =
        rows.iter().map(|r| r.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect()).collect();
    let ex = CellularMap::from_cell_images(x.clone(), x.clone(), &[vec![vec![(0, 1)]], images]).expect("endo");
    let ey =
        CellularMap::from_cell_images(y.clone(), y.clone(), &[vec![vec![(0, 1)]], vec![vec![(0, m)]]]).expect("endo");
    let f = CellularMap::from_assignment(x.clone(), y.clone(), &[vec![0], vec![0; n]]).expect("collapse");
    FactorMap::new(DynamicalComplex::new(x, ex).expect("x"), DynamicalComplex::new(y, ey).expect("y"), f)
        .expect("commutes")
}

/// Rows of `n` nonnegative entries summing to `m`.
fn stochastic_rows() -> impl Strategy<Value = (Vec<Vec<i64>>, i64)> {
    (1usize..=3, 2i64..=4).prop_flat_map(|(n, m)| {
        let row = proptest::collection::vec(0..=m, n - 1).prop_map(move |mut cuts| {
            cuts.sort_unstable();
            let mut out = Vec::with_capacity(n);
            let mut prev = 0;
            for c in cuts {
                out.push(c - prev);
                prev = c;
            }
            out.push(m - prev);
            out
        });
        (proptest::collection::vec(row, n), Just(m))
    })
}

/// Every long exact sequence built from a random collapse is exact at every node (checked by
/// construction), its rational ranks alternate to zero, and the cokernel shortcut agrees.
pub fn prop_les_exact() -> Result<(), String> {
    run_prop("les exactness", stochastic_rows(), |(rows, m)| {
        let f = wedge_pair(&rows, m);
        let les = les_quotient(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if les.report.groups.iter().all(GroupExpr::is_classified) {
            let ranks: Vec<i64> = les.report.groups.iter().map(|g| g.rational_rank() as i64).collect();
            let alt: i64 = ranks.iter().enumerate().map(|(i, r)| if i % 2 == 0 { *r } else { -r }).sum();
            prop_assert_eq!(alt, 0, "{:?}", les.report.groups);
        }
        let l = lemma1_shortcut(&f, 1).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(same(&l.hn, &les.quotient[1]), "{} vs {}", l.hn, les.quotient[1]);
        prop_assert_eq!(l.h0_vanishes, les.quotient[0].is_zero());
        Ok(())
    })
}

/// A tower on `Z_t ⊕ Z^n` whose free part is conjugate to a triangular matrix with integral
/// diagonal.
fn tower() -> impl Strategy<Value = TowerGroup> {
    (1usize..=3, prop::sample::select(vec![0u64, 0, 2, 3, 4]))
        .prop_flat_map(|(n, t)| {
            let diag = proptest::collection::vec(prop::sample::select(vec![-2i64, 0, 1, 2, 3, 4, 6]), n);
            let upper = proptest::collection::vec(-3i64..=3, n * n);
            let ops = proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..6);
            let mix = proptest::collection::vec(-3i64..=3, n + 1);
            (Just(n), Just(t), diag, upper, ops, mix)
        })
        .prop_map(|(n, t, diag, upper, ops, mix)| {
            let mut m = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => BigInt::from(diag[i]),
                std::cmp::Ordering::Less => BigInt::from(upper[i * n + j]),
                std::cmp::Ordering::Greater => BigInt::zero(),
            });
            let mut p = IntMatrix::identity(n);
            let mut p_inv = IntMatrix::identity(n);
            for (i, j, c) in ops {
                if i != j {
                    let mut e = IntMatrix::identity(n);
                    e.set(i, j, BigInt::from(c));
                    let mut e_inv = IntMatrix::identity(n);
                    e_inv.set(i, j, BigInt::from(-c));
                    p = p.mul(&e);
                    p_inv = e_inv.mul(&p_inv);
                }
            }
            m = p.mul(&m).mul(&p_inv);
            if t == 0 {
                return TowerGroup::from_matrix(&vec![0; n], m).expect("free tower");
            }
            // Torsion generator first; free generators may map into it.
            let size = n + 1;
            let full = IntMatrix::from_fn(size, size, |i, j| match (i, j) {
                (0, 0) => BigInt::from(mix[0]),
                (0, j) => BigInt::from(mix[j]),
                (_, 0) => BigInt::zero(),
                (i, j) => m.get(i - 1, j - 1).clone(),
            });
            let mut orders = vec![t as i64];
            orders.extend(std::iter::repeat_n(0, n));
            TowerGroup::from_matrix(&orders, full).expect("tower")
        })
}

fn bad_rendering(g: &GroupExpr) -> bool {
    let s = g.to_string();
    s.contains("Z[1/1]") || s.contains("Z[1/0]") || s.contains("[1/-")
}

/// Same classification status, and the same group when classified.
fn same(a: &GroupExpr, b: &GroupExpr) -> bool {
    a.is_classified() == b.is_classified() && (!a.is_classified() || a == b)
}

/// Classification is unchanged by powers of the endomorphism and by restriction to the eventual
/// image, and never renders `Z[1/1]` or `Z[1/0]`. Towers whose eigenspaces only split up to an
/// index coprime to the eigenvalues stay unclassified; at least half the cases must classify.
pub fn prop_cofinality() -> Result<(), String> {
    let classified = AtomicU32::new(0);
    run_prop("cofinality", tower(), |t| {
        let g = classify(&t);
        if g.is_classified() {
            classified.fetch_add(1, Ordering::Relaxed);
        }
        prop_assert!(!bad_rendering(&g), "{g}");
        for j in 2..=3 {
            let h = classify(&t.power(j));
            prop_assert!(same(&h, &g), "power {}: {} vs {}", j, h, g);
        }
        let h = classify(&eventual_restriction(&t));
        prop_assert!(same(&h, &g), "restriction: {} vs {}", h, g);
        Ok(())
    })?;
    let n = classified.into_inner();
    if n < CASES / 2 {
        return Err(format!("cofinality: only {n} of {CASES} towers classified"));
    }
    Ok(())
}

/// The normalizing constructor agrees with the hand normalization and never emits `Z[1/1]` or
/// `Z[1/0]`, and the text form parses back to itself.
pub fn prop_normalization() -> Result<(), String> {
    let s = (proptest::collection::vec(0u64..=12, 0..4), proptest::collection::vec(0u64..=12, 0..4), 0usize..=3);
    run_prop("normalization", s, |(tors, bases, free)| {
        let t: Vec<BigInt> = tors.iter().map(|&x| BigInt::from(x)).collect();
        let l: Vec<(BigInt, usize)> = bases.iter().map(|&b| (BigInt::from(b), 1)).collect();
        let g = GroupExpr::new(&t, &l, free);
        prop_assert!(!bad_rendering(&g));
        prop_assert_eq!(g.to_string(), render(&tors, &bases, free));
        prop_assert_eq!(&GroupExpr::parse(&g.to_string()).unwrap(), &g);
        Ok(())
    })
}

/// The group when classified; otherwise the characteristic polynomial of the tower on its
/// eventual image, which depends only on the shift-equivalence class of the tower.
fn fingerprint(g: &GroupExpr) -> String {
    match g.unclassified_payload() {
        None => g.to_string(),
        Some(t) => {
            let r = eventual_restriction(t);
            format!("{:?} {:?}", r.orders(), charpoly(r.matrix()))
        }
    }
}

/// Cohomology of a one-dimensional hull does not depend on the collar depth.
pub fn prop_collar_invariance() -> Result<(), String> {
    let classified = AtomicU32::new(0);
    run_prop("collar invariance", constant_length_1d(), |s| {
        let h = |l, r| -> Result<Vec<String>, TestCaseError> {
            let gs = ap_complex_collared(&s, l, r)
                .map_err(|e| TestCaseError::fail(e.to_string()))?
                .dynamics
                .limit_cohomology();
            prop_assert!(!gs.iter().any(bad_rendering));
            if (l, r) == (1, 1) && gs.iter().all(GroupExpr::is_classified) {
                classified.fetch_add(1, Ordering::Relaxed);
            }
            Ok(gs.iter().map(fingerprint).collect())
        };
        let base = h(1, 1)?;
        for (l, r) in [(2, 1), (1, 2), (2, 2)] {
            prop_assert_eq!(&h(l, r)?, &base, "collar ({}, {})", l, r);
        }
        Ok(())
    })?;
    let n = classified.into_inner();
    if n < CASES / 2 {
        return Err(format!("collar invariance: only {n} of {CASES} hulls classified"));
    }
    Ok(())
}
