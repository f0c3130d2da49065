#![no_main]

use libfuzzer_sys::fuzz_target;
use monogenic::gridfile::{encode_grid, parse_grid, Encoding};

// Any accepted file re-encodes to bytes that parse back to the same grid.
fuzz_target!(|data: &[u8]| {
    if let Ok(grid) = parse_grid(data) {
        let binary = encode_grid(&grid, Encoding::F64le).expect("binary encoding is total");
        let again = parse_grid(&binary).expect("own output parses");
        assert_eq!(encode_grid(&again, Encoding::F64le).unwrap(), binary);
        if let Ok(json) = encode_grid(&grid, Encoding::Json) {
            assert_eq!(parse_grid(&json).expect("own JSON parses"), grid);
        }
    }
});
