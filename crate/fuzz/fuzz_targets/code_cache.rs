#![no_main]

use hypersat::codes::{parse_code, verify_perfect_code};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((t, members)) = parse_code(text) else { return };
    assert!(members.windows(2).all(|w| w[0] < w[1]));
    if t <= 4 {
        let _ = verify_perfect_code((1 << t) - 1, &members);
    }
});
