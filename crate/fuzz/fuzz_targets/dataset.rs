#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::evaluator::{parse_dataset, DatasetFormat};

// The first byte picks the format.
fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let Ok(src) = std::str::from_utf8(rest) else { return };
    let format = if first % 2 == 0 { DatasetFormat::Csv } else { DatasetFormat::Tsv };
    let _ = parse_dataset(src, format, "fuzz");
});
