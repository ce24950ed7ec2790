#![no_main]

use libfuzzer_sys::fuzz_target;
use treeverify::{canonical_code, parse_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(tree) = parse_edge_list(text) else {
        return;
    };
    assert_eq!(tree.edges().len() + 1, tree.order());
    let again = parse_edge_list(&tree.to_edge_list()).expect("emitted edge list parses");
    assert_eq!(again, tree);
    if tree.order() <= 512 {
        let code = canonical_code(&tree);
        assert_eq!(canonical_code(&code.to_tree()), code);
    }
});
