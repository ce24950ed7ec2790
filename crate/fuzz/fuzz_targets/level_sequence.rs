#![no_main]

use libfuzzer_sys::fuzz_target;
use treeverify::{canonical_code, CanonicalCode};

const MAX_LEVELS: usize = 256;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 8 * MAX_LEVELS {
        return;
    }
    let Ok(code) = text.parse::<CanonicalCode>() else {
        return;
    };
    let tree = code.to_tree();
    assert_eq!(tree.order(), code.order());
    let canon = canonical_code(&tree);
    assert!(canon.is_canonical());
    assert_eq!(code.is_canonical(), canon == code);
    let reparsed: CanonicalCode = canon.to_string().parse().expect("display output parses");
    assert_eq!(reparsed, canon);
});
