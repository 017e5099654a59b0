#![no_main]

use hypersat::oracle::{parse_fixtures, FixtureLine};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(lines) = parse_fixtures(text) else { return };
    for line in lines {
        let back: FixtureLine = line.to_string().parse().expect("formatted line reparses");
        assert_eq!(back, line);
    }
});
