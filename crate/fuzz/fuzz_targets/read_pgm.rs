#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = fibsteg::read_pgm(data) {
        assert_eq!(img.len(), img.width() * img.height());
    }
});
