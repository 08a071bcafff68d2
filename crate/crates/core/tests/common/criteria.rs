//! The acceptance criteria, each returning a one-line summary or the first failure.

use std::time::{Duration, Instant};

use tilecoh::catalog::{self, FactorPath, SpaceId, DEFAULT_GRID};
use tilecoh::complex::{les_quotient, quotient_complex, CellularMap, CochainComplex};
use tilecoh::limits::{iso_check, limit_les_labeled};
use tilecoh::subst1d::{times2_sequence, verify_times2_ses};
use tilecoh::subst2d::{
    compose_path, descend_rule, lattice_edges, realizations, Coarsening, Collar, DecorationScheme, EdgeLabel, NE, NW,
    SE, SW,
};
use tilecoh::{Error, GroupExpr, IntMatrix};

use super::published;
use super::render;

pub type Outcome = Result<String, String>;

fn expect_eq(what: &str, got: &str, want: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: expected {want}, computed {got}"))
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn h(id: SpaceId) -> Result<Vec<GroupExpr>, String> {
    catalog::cohomology(id, Collar::Auto).map_err(err)
}

fn q(from: SpaceId, to: SpaceId) -> Result<Vec<GroupExpr>, String> {
    Ok(catalog::quotient(from, to, Collar::Auto).map_err(err)?.quotient)
}

fn within(what: &str, t: Instant, limit: Duration) -> Result<(), String> {
    if t.elapsed() > limit {
        Err(format!("{what} took {:?}, over {limit:?}", t.elapsed()))
    } else {
        Ok(())
    }
}

/// `H^1` of the solenoid, period doubling and Thue–Morse hulls on the grid.
pub fn absolute_1d() -> Outcome {
    for (k, l) in DEFAULT_GRID {
        let t = Instant::now();
        let (s, d) = ((k + l) as u64, k.abs_diff(l) as u64);
        expect_eq(&format!("sol:{s}"), &h(SpaceId::Sol(k + l))?[1].to_string(), &render(&[], &[s], 0))?;
        expect_eq(&format!("pd:{k},{l}"), &h(SpaceId::Pd(k, l))?[1].to_string(), &render(&[], &[s], 1))?;
        expect_eq(&format!("tm:{k},{l}"), &h(SpaceId::Tm(k, l))?[1].to_string(), &render(&[], &[s, d], 1))?;
        within(&format!("({k},{l})"), t, Duration::from_secs(5))?;
    }
    Ok(format!("{} parameter pairs", DEFAULT_GRID.len()))
}

/// Quotient groups of the three one-dimensional factor maps on the grid.
pub fn quotient_1d() -> Outcome {
    for (k, l) in DEFAULT_GRID {
        let t = Instant::now();
        let d = k.abs_diff(l) as u64;
        let (tm, pd, sol) = (SpaceId::Tm(k, l), SpaceId::Pd(k, l), SpaceId::Sol(k + l));
        for (a, b, want) in
            [(pd, sol, render(&[], &[], 1)), (tm, sol, render(&[], &[d], 1)), (tm, pd, render(&[2], &[d], 0))]
        {
            let g = q(a, b)?;
            expect_eq(&format!("{a} > {b} degree 0"), &g[0].to_string(), "0")?;
            expect_eq(&format!("{a} > {b} degree 1"), &g[1].to_string(), &want)?;
        }
        within(&format!("({k},{l})"), t, Duration::from_secs(5))?;
    }
    Ok(format!("{} parameter pairs, 3 maps each", DEFAULT_GRID.len()))
}

/// The ×2 short exact sequence on the grid.
pub fn times2_1d() -> Outcome {
    for (k, l) in DEFAULT_GRID {
        let d = k.abs_diff(l) as u64;
        let v = verify_times2_ses(k, l).map_err(|e| format!("({k},{l}): {e}"))?;
        let got: Vec<String> = v.groups.iter().map(ToString::to_string).collect();
        let want = [render(&[], &[], 1), render(&[], &[d], 1), render(&[2], &[d], 0)];
        expect_eq(&format!("({k},{l})"), &got.join(" ; "), &want.join(" ; "))?;
    }
    Ok(format!("exact with first map x2 on {} parameter pairs", DEFAULT_GRID.len()))
}

/// Every factor map of the catalog: `H^0_Q = 0` exactly when `f*_1` is injective, and the
/// cokernel shortcut gives the top quotient group.
pub fn shortcut_both_ways() -> Outcome {
    let mut maps = Vec::new();
    for (k, l) in DEFAULT_GRID {
        let (tm, pd, sol) = (SpaceId::Tm(k, l), SpaceId::Pd(k, l), SpaceId::Sol(k + l));
        for (a, b) in [(pd, sol), (tm, sol), (tm, pd)] {
            maps.push((format!("{a} > {b}"), catalog::factor_map(a, b, Collar::Auto).map_err(err)?));
        }
    }
    let mut chains: Vec<Vec<DecorationScheme>> = lattice_edges().into_iter().map(|(a, _, b)| vec![a, b]).collect();
    for (word, _) in published::PATHS {
        let w = EdgeLabel::parse_word(word).map_err(err)?;
        for s in DecorationScheme::all() {
            chains.extend(realizations(&w, s));
        }
    }
    for nodes in chains {
        maps.push((format!("{nodes:?}"), compose_path(&nodes, Collar::Auto).map_err(err)?));
    }
    let zero = SpaceId::solenoid_chair();
    for id in SpaceId::chairs() {
        maps.push((format!("{id} > {zero}"), catalog::factor_map(id, zero, Collar::Auto).map_err(err)?));
    }
    for (name, f) in &maps {
        let les = les_quotient(f).map_err(|e| format!("{name}: {e}"))?;
        catalog::shortcut_agrees(f, &les).map_err(|e| format!("{name}: {e}"))?;
        if !les.quotient[0].is_zero() {
            return Err(format!("{name}: H^0_Q = {}", les.quotient[0]));
        }
    }
    Ok(format!("{} factor maps", maps.len()))
}

fn all_chains(word: &str) -> Result<Vec<Vec<DecorationScheme>>, String> {
    let w = EdgeLabel::parse_word(word).map_err(err)?;
    Ok(DecorationScheme::all().into_iter().flat_map(|s| realizations(&w, s)).collect())
}

fn chain_groups(nodes: &[DecorationScheme]) -> Result<Vec<String>, String> {
    let f = compose_path(nodes, Collar::Auto).map_err(err)?;
    Ok(les_quotient(&f).map_err(err)?.quotient.iter().map(ToString::to_string).collect())
}

/// Each edge label gives the published groups, identically for every edge carrying it.
pub fn chair_edges() -> Outcome {
    let mut n = 0;
    for (label, want) in published::EDGES {
        let edges: Vec<_> = lattice_edges().into_iter().filter(|(_, l, _)| l.to_string() == label).collect();
        if edges.is_empty() {
            return Err(format!("no edge labelled {label}"));
        }
        for (a, _, b) in edges {
            let t = Instant::now();
            let got = chain_groups(&[a, b])?;
            expect_eq(&format!("{label}: {a} > {b}"), &got.join(" ; "), &want.join(" ; "))?;
            within(&format!("{a} > {b}"), t, Duration::from_secs(600))?;
            n += 1;
        }
    }
    Ok(format!("{n} edges over labels A, B, C"))
}

/// The eight composed paths from every start and along every realization, and every
/// rearrangement of their letters.
pub fn chair_paths() -> Outcome {
    let mut n = 0;
    let mut rearranged = 0;
    for (word, want) in published::PATHS {
        let chains = all_chains(word)?;
        if chains.is_empty() {
            return Err(format!("{word} has no realization"));
        }
        for nodes in chains {
            expect_eq(&format!("{word} along {nodes:?}"), &chain_groups(&nodes)?.join(" ; "), &want.join(" ; "))?;
            n += 1;
        }
        if word.contains("AC") != want[2].contains("Z_3") {
            return Err(format!("{word}: Z_3 does not track the A,C interaction"));
        }
        let mut letters: Vec<char> = word.chars().collect();
        letters.sort_unstable();
        for other in permutations(&letters) {
            if other == word {
                continue;
            }
            for nodes in all_chains(&other)? {
                expect_eq(
                    &format!("{other} (as {word}) along {nodes:?}"),
                    &chain_groups(&nodes)?.join(" ; "),
                    &want.join(" ; "),
                )?;
                rearranged += 1;
            }
        }
    }
    Ok(format!("{n} realizations of 8 words, {rearranged} realizations of rearranged words"))
}

fn permutations(sorted: &[char]) -> Vec<String> {
    if sorted.len() <= 1 {
        return vec![sorted.iter().collect()];
    }
    let mut out = Vec::new();
    for i in 0..sorted.len() {
        if i > 0 && sorted[i] == sorted[i - 1] {
            continue;
        }
        let mut rest = sorted.to_vec();
        let c = rest.remove(i);
        for p in permutations(&rest) {
            out.push(format!("{c}{p}"));
        }
    }
    out
}

/// Absolute and solenoid-relative groups of the nine chair spaces, as abstract groups.
pub fn chair_tables() -> Outcome {
    let zero = SpaceId::solenoid_chair();
    let mut z3 = 0;
    for ((name, abs), (name2, rel)) in published::SPACES.iter().zip(published::RELATIVE.iter()) {
        assert_eq!(name, name2);
        let id: SpaceId = name.parse().map_err(err)?;
        let got = h(id)?;
        for d in 0..3 {
            let want = GroupExpr::parse(abs[d]).map_err(err)?;
            if !iso_check(&got[d], &want).map_err(err)? {
                return Err(format!("{name} H^{d}: expected {}, computed {}", abs[d], got[d]));
            }
        }
        let got = q(id, zero)?;
        for d in 0..3 {
            let want = GroupExpr::parse(rel[d]).map_err(err)?;
            if !iso_check(&got[d], &want).map_err(err)? {
                return Err(format!("{name} relative H^{d}_Q: expected {}, computed {}", rel[d], got[d]));
            }
        }
        z3 += usize::from(got[2].torsion().iter().any(|t| *t == 3.into()));
    }
    Ok(format!("9 spaces in degrees 0 to 2, absolute and relative; Z_3 recovered in {z3} quotients"))
}

/// The six randomized suites.
pub fn properties() -> Outcome {
    super::prop_snf()?;
    super::prop_delta_squared()?;
    super::prop_les_exact()?;
    super::prop_cofinality()?;
    super::prop_collar_invariance()?;
    super::prop_normalization()?;
    Ok(format!("6 suites, {} cases each", super::CASES))
}

/// Broken inputs are refused with the right error.
pub fn negative_controls() -> Outcome {
    // NE and NW identified with all labels kept.
    let c = Coarsening { arrow_classes: vec![1 << NE | 1 << NW, 1 << SE, 1 << SW], keep_labels: [true; 4] };
    match descend_rule(&c) {
        Err(Error::NotWellDefined(_)) => {}
        other => return Err(format!("broken arrow identification: {:?}", other.map(|_| ()))),
    }
    // The ×2 map replaced by zero.
    let mut s = times2_sequence(1, 1).map_err(err)?;
    s.maps[1] = tilecoh::GroupHom::zero(s.terms[1].group.clone(), s.terms[2].group.clone());
    match limit_les_labeled(&s.terms, &s.maps, &s.labels) {
        Err(Error::ExactnessFailure { .. }) => {}
        other => return Err(format!("dropped x2 map: {:?}", other.map(|_| ()))),
    }
    // A circle sent onto one of two vertices: the pullback forgets the other vertex.
    let x = std::sync::Arc::new(CochainComplex::circle());
    let y = std::sync::Arc::new(
        CochainComplex::new(vec![vec!["v0".into(), "v1".into()], vec!["e".into()]], vec![IntMatrix::zeros(1, 2)])
            .map_err(err)?,
    );
    let f = CellularMap::from_assignment(x, y, &[vec![0], vec![0]]).map_err(err)?;
    match quotient_complex(&f) {
        Err(Error::NotInjectiveOnCochains { degree: 0 }) => {}
        other => return Err(format!("non-injective pullback: {:?}", other.map(|_| ()))),
    }
    // A path that does not exist.
    match FactorPath::new(SpaceId::solenoid_chair(), "A") {
        Err(Error::InvalidPath(_)) => {}
        other => return Err(format!("unrealizable path: {other:?}")),
    }
    Ok("NotWellDefined, ExactnessFailure, NotInjectiveOnCochains, InvalidPath".into())
}
