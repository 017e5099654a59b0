#![no_main]

use hypersat::percolation::{additions_to_text, parse_certificate, verify_certificate, PatternFamily};
use hypersat::{EdgeSubgraph, GridSpace};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(order) = parse_certificate(text) else { return };
    assert_eq!(parse_certificate(&additions_to_text(&order)).unwrap(), order);
    // replaying arbitrary certificates must fail cleanly, never panic
    let q4 = GridSpace::hypercube(4).unwrap();
    let g0 = EdgeSubgraph::empty(&q4).unwrap();
    for family in [PatternFamily::subcube(&q4, 2).unwrap(), PatternFamily::even_cycle(&q4, 6).unwrap()] {
        let _ = verify_certificate(&g0, &family, &order);
    }
});
