#![no_main]

use libfuzzer_sys::fuzz_target;
use monogenic::cli::parse_point_list;
use monogenic::Error;

// First byte picks the dimension, the rest is the point list text.
fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let m = 1 + (first as usize % 4);
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    match parse_point_list(text, m) {
        Ok(points) => {
            for p in points {
                assert_eq!(p.dim(), m);
                assert!(p.components().iter().all(|c| c.is_finite()));
            }
        }
        Err(Error::Parse { offset, .. }) => assert!(offset <= text.len()),
        Err(e) => panic!("unexpected error kind: {e}"),
    }
});
