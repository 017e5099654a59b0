#![no_main]

use hypersat_cli::{export_dot, GraphDocument};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = GraphDocument::from_json(text) else { return };
    let json = doc.to_json();
    let back = GraphDocument::from_json(&json).expect("canonical output reparses");
    assert_eq!(back, doc);
    assert_eq!(back.to_json(), json);
    if doc.space().is_ok_and(|s| s.vertex_count() <= 4096) {
        let dot = export_dot(&doc).expect("valid document exports");
        assert_eq!(dot.matches(" -- ").count(), doc.edges.len());
    }
});
