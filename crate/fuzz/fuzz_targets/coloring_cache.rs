#![no_main]

use hypersat::codes::{coloring_to_text, parse_coloring};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((coloring, seed)) = parse_coloring(text) else { return };
    let (again, seed_again) = parse_coloring(&coloring_to_text(&coloring, seed)).unwrap();
    assert_eq!(seed, seed_again);
    assert_eq!(again.colors(), coloring.colors());
    if coloring.s() <= 6 {
        let _ = coloring.violations();
    }
});
