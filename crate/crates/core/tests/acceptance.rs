//! Acceptance suite: one line per criterion, `PASS`, `FAIL` or `SKIP`.
//!
//! Run with `cargo test -p hypersat --test acceptance`. Exits nonzero if any
//! criterion fails or overruns its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hypersat::codes::{enumerate_short_cycles, find_coloring, hamming_code, verify_coloring, verify_perfect_code};
use hypersat::cycle_tree::build_cycle_tree;
use hypersat::linalg::{all_dependency_certificates, rank_lower_bound, CertSpace};
use hypersat::oracle::{self, min_wsat, SearchBudget};
use hypersat::percolation::{certify_order, closure_in_order, is_weakly_saturated, percolate, Pattern, PatternFamily};
use hypersat::sat::{complete_to_saturated, derive_params, CheckMode, CheckReport, SatConstruction, VertexClass};
use hypersat::wsat::{build_wsat_graph, canonical_percolation_order, wsat_cube_formula, wsat_grid_formula};
use hypersat::{EdgeId, EdgeSubgraph, Error, GridSpace};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const COLORING_SEED: u64 = 1;
const SAMPLE_SEED: u64 = 2024;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = Result<String, String>;

/// Number, name, time budget in seconds, body.
type Criterion = (u32, &'static str, u64, Box<dyn FnOnce() -> Verdict>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: hypersat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let mut cases = Vec::new();
    for k in 2..=4 {
        for r in 2..=k {
            for d in 1..=3 {
                for m in 1..=d {
                    cases.push((k, r, d, m));
                }
            }
        }
    }
    for d in 1..=7 {
        for m in 1..=d.min(3) {
            cases.push((2, 2, d, m));
        }
    }
    for &(k, r, d, m) in &cases {
        let g = lib(build_wsat_graph(k, r, d, m))?;
        let formula = lib(wsat_grid_formula(k, r, d, m))?;
        ensure!(BigInt::from(g.len()) == formula, "({k},{r},{d},{m}): {} edges, formula {formula}", g.len());
        let family = lib(PatternFamily::axis_subgrid(g.space(), r, m))?;
        ensure!(is_weakly_saturated(&g, &family), "({k},{r},{d},{m}) does not percolate");
        let cert = lib(certify_order(&g, &family, &canonical_percolation_order(&g)))?;
        ensure!(cert.percolates(), "({k},{r},{d},{m}): canonical order stalls");
    }
    Ok(format!("{} instances agree and percolate", cases.len()))
}

fn criterion_2() -> Check {
    for d in 2..=7 {
        let expected = (BigInt::from(1) << d) - 1;
        ensure!(lib(wsat_cube_formula(d, 2))? == expected, "formula at d={d}");
        let g = lib(build_wsat_graph(2, 2, d, 2))?;
        ensure!(BigInt::from(g.len()) == expected, "construction at d={d} has {} edges", g.len());
        ensure!(is_weakly_saturated(&g, &lib(PatternFamily::subcube(g.space(), 2))?), "engine at d={d}");
    }
    Ok("wsat(Q_d, Q_2) = 2^d - 1 for d = 2..7".into())
}

fn criterion_3() -> Check {
    let budget = SearchBudget::wsat_default();
    let cases = [
        ((2, 2), Pattern::Subcube { m: 2 }, 3),
        ((2, 3), Pattern::Subcube { m: 2 }, 7),
        ((2, 3), Pattern::Subcube { m: 3 }, 11),
        ((3, 2), Pattern::AxisSubgrid { r: 2, m: 2 }, 8),
        ((3, 2), Pattern::AxisSubgrid { r: 3, m: 2 }, 11),
        ((2, 3), Pattern::EvenCycle { length: 4 }, 7),
        ((3, 2), Pattern::EvenCycle { length: 4 }, 8),
    ];
    let mut found = Vec::new();
    for ((k, d), pattern, expected) in cases {
        let space = lib(GridSpace::new(k, d))?;
        let res = lib(min_wsat(&space, pattern, &budget))?;
        ensure!(res.value == expected, "P_{k}^{d} {pattern}: {} != {expected}", res.value);
        found.push(res.value.to_string());
    }
    Ok(format!("minima {}", found.join(", ")))
}

fn criterion_4() -> Check {
    let mut ranked = 0;
    for k in 2..=4u32 {
        for r in 2..=k {
            for d in 1..=3u32 {
                for m in 1..=d {
                    if lib(GridSpace::new(k, d))?.edge_count() > 200 {
                        continue;
                    }
                    let report = lib(rank_lower_bound(k, r, d, m))?;
                    let formula = lib(wsat_grid_formula(k, r, d, m))?;
                    ensure!(
                        BigInt::from(report.rank) == formula,
                        "({k},{r},{d},{m}): rank {} vs {formula}",
                        report.rank
                    );
                    ensure!(report.rank_mod_p <= report.rank, "mod-p rank exceeds rational rank");
                    ranked += 1;
                }
            }
        }
    }
    for d in 4..=7 {
        for m in 1..=3 {
            let report = lib(rank_lower_bound(2, 2, d, m))?;
            ensure!(BigInt::from(report.rank) == lib(wsat_cube_formula(d, m))?, "Q_{d}, m={m}");
            ranked += 1;
        }
    }
    let mut certified = 0;
    for (k, r, d, m) in [(4, 3, 2, 2), (2, 2, 4, 3)] {
        let cs = lib(CertSpace::new(k, r, d, m))?;
        let certs = lib(all_dependency_certificates(&cs))?;
        ensure!(!certs.is_empty(), "no copies in ({k},{r},{d},{m})");
        ensure!(certs.iter().all(|c| c.verified), "unverified certificate in ({k},{r},{d},{m})");
        certified += certs.len();
    }
    Ok(format!("{ranked} ranks equal the formula; {certified} dependency certificates verified"))
}

fn criterion_5() -> Check {
    let triples = [(2, 2, 2), (2, 3, 2), (2, 3, 3), (2, 4, 3), (2, 4, 4), (3, 2, 2), (3, 3, 2), (4, 2, 2)];
    for (k, d, l) in triples {
        let g = lib(build_cycle_tree(k, d, l))?;
        ensure!(g.len() as u64 + 1 == (k as u64).pow(d), "({k},{d},{l}) has {} edges", g.len());
        ensure!(g.is_connected_spanning() && g.is_spanning_tree(), "({k},{d},{l}) is not a spanning tree");
        let family = lib(PatternFamily::even_cycle(g.space(), 2 * l))?;
        ensure!(is_weakly_saturated(&g, &family), "({k},{d},{l}) does not percolate");
    }
    Ok(format!("{} spanning trees percolate", triples.len()))
}

fn criterion_6() -> Check {
    let mut sizes = Vec::new();
    for (t, size) in [(1, 1), (2, 2), (3, 16)] {
        let code = lib(hamming_code(t))?;
        ensure!(code.size() == size, "t={t}: size {}", code.size());
        ensure!(verify_perfect_code(code.length(), &lib(code.members())?), "t={t} is not perfect");
        sizes.push(code.size().to_string());
    }
    Ok(format!("sizes {}", sizes.join(", ")))
}

fn criterion_7() -> Check {
    let mut out = Vec::new();
    for (s, fours, sixes) in [(4, 24, 128), (6, 240, 2560)] {
        let c = lib(find_coloring(s, COLORING_SEED, Duration::from_secs(600)))?;
        let n4 = lib(enumerate_short_cycles(s, 4))?.count();
        let n6 = lib(enumerate_short_cycles(s, 6))?.count();
        ensure!((n4, n6) == (fours, sixes), "Q_{s}: {n4} four-cycles, {n6} six-cycles");
        ensure!(verify_coloring(&c), "Q_{s} colouring has a monochromatic short cycle");
        out.push(format!("Q_{s} ({n4}/{n6} cycles)"));
    }
    Ok(format!("valid colourings of {}", out.join(" and ")))
}

fn sat_construction(d: u32) -> Result<SatConstruction, String> {
    lib(SatConstruction::search(lib(derive_params(2, d))?, COLORING_SEED, Duration::from_secs(600)))
}

fn criterion_8() -> Check {
    let c = sat_construction(12)?;
    let g = lib(c.build_base_graph())?;
    let free = lib(c.verify_qm_free(CheckMode::Exhaustive))?;
    ensure!(free == CheckReport { checked: 67_584, passed: true }, "Q_2-freeness: {free:?}");
    ensure!(c.observations(&g).all(), "observations: {:?}", c.observations(&g));
    let a0 = lib(c.verify_a0_saturation(CheckMode::Exhaustive))?;
    ensure!(a0.passed, "A_0 saturation failed");
    let done = lib(complete_to_saturated(&g, 2))?;
    ensure!(g.is_subset(&done), "completion dropped edges");
    ensure!(lib(oracle::is_saturated(&done, 2))?, "completion is not saturated");
    let space = done.space();
    let a0_edges = done
        .edges()
        .filter(|&e| {
            let (a, b) = space.endpoints(e);
            c.classify(a) == VertexClass::A(0) && c.classify(b) == VertexClass::A(0)
        })
        .count();
    ensure!(a0_edges == 0, "A_0 not independent in G': {a0_edges} edges");
    let census = lib(c.census(false))?;
    ensure!(done.len() as u128 <= census.incident_edge_bound, "edge accounting bound violated");
    ensure!(census.classes.a[1] <= census.a1_estimate, "|A_1| above its closed form");
    Ok(format!(
        "67584 subcubes Q_2-free; A_0-A_0 pairs checked {}; |A_0|={} |A_1|={} |A_2|={} |X|={}; |E(G)|={} |E(G')|={} ({:.3} per vertex); d|A_1|+d|rest| = {} <= 72m^2 2^d = {}, 36m^2 2^d = {}",
        a0.checked,
        census.classes.a[0],
        census.classes.a[1],
        census.classes.a[2],
        census.classes.x,
        g.len(),
        done.len(),
        done.len() as f64 / 4096.0,
        census.incident_edge_bound,
        census.general_bound,
        census.sharper_bound.unwrap_or_default(),
    ))
}

fn criterion_9() -> Check {
    let c = sat_construction(15)?;
    let space = lib(c.space())?;
    let mut pairs = 0;
    for e in space.edges() {
        let (u, v) = space.endpoints(e);
        if c.classify(u) != VertexClass::A(0) || c.classify(v) != VertexClass::A(0) {
            continue;
        }
        pairs += 1;
        ensure!(!lib(c.edge_in_g(u, v))?, "A_0 edge {e} is in G");
        let w = lib(c.witness_subcube(u, v))?;
        ensure!(c.witness_is_valid(u, v, &w), "witness for {e} is invalid");
    }
    ensure!(pairs > 0, "no A_0-A_0 host edges at d=15");
    Ok(format!("s={}: {pairs} A_0-A_0 host edges, every witness valid", c.params().s()))
}

fn criterion_10() -> Verdict {
    let params = match derive_params(2, 36) {
        Ok(p) => p,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let c = match SatConstruction::search(params, COLORING_SEED, Duration::from_secs(600)) {
        Ok(c) => c,
        Err(Error::BudgetExhausted(msg)) => return Verdict::Skip(format!("Q_18 colouring search: {msg}")),
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let run = || -> Check {
        let free = lib(c.verify_qm_free(CheckMode::Sampled { samples: 10_000, seed: SAMPLE_SEED }))?;
        ensure!(free.passed && free.checked == 10_000, "sampled Q_2-freeness: {free:?}");
        let sat = lib(c.verify_a0_saturation(CheckMode::Sampled { samples: 1_000, seed: SAMPLE_SEED }))?;
        ensure!(sat == CheckReport { checked: 1_000, passed: true }, "sampled witnesses: {sat:?}");
        Ok(format!("t={}: 10000 sampled subcubes Q_2-free, 1000 sampled A_0 witnesses valid", c.params().t()))
    };
    match run() {
        Ok(msg) => Verdict::Pass(msg),
        Err(msg) => Verdict::Fail(msg),
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> Result<(EdgeSubgraph, PatternFamily), String> {
    let (k, d) = match rng.random_range(0..3) {
        0 => (2, rng.random_range(2..=7)),
        1 => (3, rng.random_range(2..=4)),
        _ => (rng.random_range(4..=6), 2),
    };
    let space = lib(GridSpace::new(k, d))?;
    let family = match rng.random_range(0..3) {
        0 => lib(PatternFamily::axis_subgrid(&space, 2, 2))?,
        1 => lib(PatternFamily::even_cycle(&space, 4))?,
        _ => lib(PatternFamily::axis_subgrid(&space, k.min(3), 1 + (d > 2 && rng.random_bool(0.5)) as u32))?,
    };
    let density = rng.random_range(0.1..0.7);
    let g = lib(EdgeSubgraph::from_edges(&space, space.edges().filter(|_| rng.random_bool(density))))?;
    Ok((g, family))
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for trial in 0..100 {
        let (g0, family) = random_instance(&mut rng)?;
        ensure!(g0.space().edge_count() <= 1000, "host too large");
        let canonical = percolate(&g0, &family).final_graph;
        let mut order: Vec<EdgeId> = g0.space().edges().collect();
        order.shuffle(&mut rng);
        ensure!(closure_in_order(&g0, &family, &order) == canonical, "trial {trial}: closures differ");
    }
    for trial in 0..100 {
        let (small, family) = random_instance(&mut rng)?;
        let mut large = small.clone();
        for e in small.space().edges() {
            if rng.random_bool(0.2) {
                large.insert(e);
            }
        }
        let a = percolate(&small, &family).final_graph;
        let b = percolate(&large, &family).final_graph;
        ensure!(a.is_subset(&b), "trial {trial}: closure is not monotone");
    }
    let c = sat_construction(12)?;
    let g = lib(c.build_base_graph())?;
    let space = g.space();
    for e in space.edges() {
        let (a, b) = space.endpoints(e);
        ensure!(g.contains(e) == lib(c.edge_in_g(a, b))?, "edge {e}: predicate and graph disagree");
    }
    Ok(format!("100 order trials, 100 monotone pairs, {} adjacent pairs agree", space.edge_count()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "formula/construction agreement", 60, Box::new(|| check(criterion_1))),
        (2, "wsat(Q_d, Q_2) = 2^d - 1", 60, Box::new(|| check(criterion_2))),
        (3, "oracle minimality", 600, Box::new(|| check(criterion_3))),
        (4, "rank certificates", 300, Box::new(|| check(criterion_4))),
        (5, "cycle trees", 120, Box::new(|| check(criterion_5))),
        (6, "Hamming codes", 1, Box::new(|| check(criterion_6))),
        (7, "colourings of Q_4 and Q_6", 600, Box::new(|| check(criterion_7))),
        (8, "sat construction, m=2 d=12", 600, Box::new(|| check(criterion_8))),
        (9, "sat construction, m=2 d=15", 600, Box::new(|| check(criterion_9))),
        (10, "sat construction, m=2 d=36 sampled (optional)", 1200, Box::new(criterion_10)),
        (11, "engine properties", 300, Box::new(|| check(criterion_11))),
    ];
    let mut failed = 0;
    for (n, name, budget_secs, f) in criteria {
        let started = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::Fail(format!("panicked: {msg}"))
        });
        let elapsed = started.elapsed();
        let verdict = match verdict {
            Verdict::Pass(msg) if elapsed > Duration::from_secs(budget_secs) => {
                Verdict::Fail(format!("over budget; {msg}"))
            }
            v => v,
        };
        let (tag, msg) = match verdict {
            Verdict::Pass(m) => ("PASS", m),
            Verdict::Fail(m) => {
                failed += 1;
                ("FAIL", m)
            }
            Verdict::Skip(m) => ("SKIP", m),
        };
        println!("{tag} {n:>2} {name} [{:.1} s / {budget_secs} s]: {msg}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn check(f: fn() -> Check) -> Verdict {
    match f() {
        Ok(m) => Verdict::Pass(m),
        Err(m) => Verdict::Fail(m),
    }
}
