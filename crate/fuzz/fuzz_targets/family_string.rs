#![no_main]

use hypersat::percolation::{Pattern, PatternFamily};
use hypersat::GridSpace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pattern) = text.parse::<Pattern>() else { return };
    assert_eq!(pattern.to_string().parse::<Pattern>().unwrap(), pattern);
    let host = GridSpace::new(3, 3).unwrap();
    let _ = PatternFamily::new(&host, pattern);
});
