#![no_main]

use libfuzzer_sys::fuzz_target;
use treeverify::verify::{read_csv, tally_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(rows) = read_csv(data) else {
        return;
    };
    for row in rows.iter().take(64) {
        let _ = row.reproduce();
    }
    let tallies = tally_csv(&rows);
    assert_eq!(tallies.iter().map(|t| t.class_count).sum::<usize>(), rows.len());
});
