use std::collections::BTreeSet;

use hypersat::codes::{find_coloring, hamming_code, verify_coloring, verify_perfect_code};
use hypersat::cycle_tree::build_cycle_tree;
use hypersat::linalg::{rank_lower_bound, rank_of_edges, y_laws_hold, CertSpace};
use hypersat::oracle::{enumerate_copies, min_wsat, SearchBudget};
use hypersat::percolation::{
    closure_in_order, parse_certificate, percolate, verify_certificate, Pattern, PatternFamily,
};
use hypersat::wsat::{build_wsat_graph, wsat_grid_formula};
use hypersat::{EdgeId, EdgeSubgraph, GridSpace, VertexId};
use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_space() -> impl Strategy<Value = GridSpace> {
    prop_oneof![
        (2u32..=6).prop_map(|d| GridSpace::hypercube(d).unwrap()),
        (3u32..=5, 1u32..=3).prop_map(|(k, d)| GridSpace::new(k, d).unwrap()),
    ]
}

fn family_for(space: &GridSpace, choice: u8) -> PatternFamily {
    match choice % 3 {
        0 => PatternFamily::axis_subgrid(space, 2, 2.min(space.d())).unwrap(),
        1 => PatternFamily::even_cycle(space, 4).unwrap(),
        _ => PatternFamily::axis_subgrid(space, space.k().min(3), 1).unwrap(),
    }
}

/// A random subgraph with each edge kept when its hashed bit is set.
fn random_subgraph(space: &GridSpace, bits: &[bool]) -> EdgeSubgraph {
    EdgeSubgraph::from_edges(space, space.edges().filter(|e| bits[e.index() % bits.len()])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_counts(space in small_space()) {
        let (k, d) = (space.k() as u64, space.d());
        prop_assert_eq!(space.edges().count() as u64, d as u64 * (k - 1) * k.pow(d - 1));
        let mut seen = BTreeSet::new();
        for line in space.lines() {
            for e in space.line_edges(line) {
                prop_assert!(seen.insert(e));
            }
        }
        prop_assert_eq!(seen.len() as u64, space.edge_count());
        for r in 2..=space.k() {
            for m in 1..=space.d() {
                for sub in space.axis_subgrids(r, m).unwrap().take(50) {
                    let expected = m as usize * (r as usize).pow(m - 1) * (r as usize - 1);
                    prop_assert_eq!(sub.edges(&space).len(), expected);
                }
            }
        }
    }

    #[test]
    fn encode_decode_round_trip(k in 2u32..=9, coords in proptest::collection::vec(0u32..9, 1..=8)) {
        let coords: Vec<u32> = coords.into_iter().map(|c| c % k).collect();
        let space = GridSpace::new(k, coords.len() as u32).unwrap();
        let v = space.encode(&coords).unwrap();
        prop_assert_eq!(space.decode(v), coords);
    }

    #[test]
    fn neighbors_are_symmetric(space in small_space(), seed in any::<u64>()) {
        let v = VertexId(seed % space.vertex_count());
        for u in space.neighbors(v) {
            prop_assert!(space.neighbors(u).contains(&v));
            prop_assert!(space.edge_between(u, v).is_some());
        }
    }

    #[test]
    fn closure_is_order_independent(
        space in small_space(),
        choice in any::<u8>(),
        bits in proptest::collection::vec(any::<bool>(), 1..40),
        shuffle_seed in any::<u64>(),
    ) {
        let family = family_for(&space, choice);
        let g0 = random_subgraph(&space, &bits);
        let canonical = percolate(&g0, &family).final_graph;
        let mut order: Vec<EdgeId> = space.edges().collect();
        let mut rng = shuffle_seed;
        for i in (1..order.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (rng >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(closure_in_order(&g0, &family, &order), canonical);
    }

    #[test]
    fn closure_is_monotone(
        space in small_space(),
        choice in any::<u8>(),
        bits in proptest::collection::vec(any::<bool>(), 1..40),
        extra in proptest::collection::vec(any::<bool>(), 1..40),
    ) {
        let family = family_for(&space, choice);
        let small = random_subgraph(&space, &bits);
        let mut large = small.clone();
        large.union_with(&random_subgraph(&space, &extra));
        let a = percolate(&small, &family).final_graph;
        let b = percolate(&large, &family).final_graph;
        prop_assert!(a.is_subset(&b));
    }

    #[test]
    fn certificates_replay(space in small_space(), choice in any::<u8>(), bits in proptest::collection::vec(any::<bool>(), 1..40)) {
        let family = family_for(&space, choice);
        let g0 = random_subgraph(&space, &bits);
        let cert = percolate(&g0, &family);
        let replayed = verify_certificate(&g0, &family, &cert.order).unwrap();
        prop_assert_eq!(&replayed, &cert.final_graph);
        let reparsed = parse_certificate(&cert.to_text()).unwrap();
        prop_assert_eq!(reparsed, cert.order);
    }

    #[test]
    fn wsat_graph_vectors_independent(k in 2u32..=4, r_off in 0u32..3, d in 1u32..=3, m_off in 0u32..3) {
        let r = 2 + r_off % (k - 1);
        let m = 1 + m_off % d;
        let cs = CertSpace::new(k, r, d, m).unwrap();
        let g = build_wsat_graph(k, r, d, m).unwrap();
        prop_assert_eq!(rank_of_edges(&cs, g.edges()).rank, g.len());
    }
}

#[test]
fn hamming_codes_are_perfect() {
    for t in 1..=3 {
        let code = hamming_code(t).unwrap();
        assert_eq!(code.size(), 1 << ((1 << t) - t - 1));
        assert!(verify_perfect_code(code.length(), &code.members().unwrap()));
    }
}

#[test]
fn found_colorings_verify() {
    for s in 0..=6 {
        for seed in [1, 2] {
            let c = find_coloring(s, seed, std::time::Duration::from_secs(120)).unwrap();
            assert!(verify_coloring(&c), "s={s} seed={seed}");
        }
    }
}

#[test]
fn rank_equals_formula_on_small_hosts() {
    for k in 2..=4u32 {
        for r in 2..=k {
            for d in 1..=3u32 {
                for m in 1..=d {
                    let space = GridSpace::new(k, d).unwrap();
                    if space.edge_count() > 200 {
                        continue;
                    }
                    let rank = rank_lower_bound(k, r, d, m).unwrap();
                    assert_eq!(rank.rank, rank.rank_mod_p);
                    assert_eq!(BigInt::from(rank.rank), wsat_grid_formula(k, r, d, m).unwrap(), "{k} {r} {d} {m}");
                }
            }
        }
    }
}

#[test]
fn y_laws() {
    for k in 2..=12 {
        for r in 2..=k {
            assert!(y_laws_hold(k, r));
        }
    }
}

/// Weakly cycle-saturated graphs are connected, so nothing smaller than a
/// spanning tree percolates.
#[test]
fn no_smaller_cycle_saturated_graph() {
    for (k, d) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let space = GridSpace::new(k, d).unwrap();
        let family = PatternFamily::even_cycle(&space, 4).unwrap();
        let n = space.vertex_count() as usize;
        for subset in space.edges().combinations(n - 2) {
            let g = EdgeSubgraph::from_edges(&space, subset).unwrap();
            assert!(!g.is_connected_spanning());
            assert!(!percolate(&g, &family).percolates());
        }
        let best = min_wsat(&space, Pattern::EvenCycle { length: 4 }, &SearchBudget::wsat_default()).unwrap();
        assert_eq!(best.value, n as u64 - 1);
        let tree = build_cycle_tree(k, d, 2).unwrap();
        assert_eq!(tree.len(), n - 1);
    }
    let q3 = GridSpace::hypercube(3).unwrap();
    assert_eq!(enumerate_copies(&q3, Pattern::EvenCycle { length: 4 }).unwrap().len(), 6);
}
