#![no_main]

use libfuzzer_sys::fuzz_target;

// First byte picks the width; the rest is the raster.
fuzz_target!(|data: &[u8]| {
    let Some((&w, px)) = data.split_first() else { return };
    let width = usize::from(w).max(1);
    let height = px.len() / width;
    if height == 0 {
        return;
    }
    let img = fibsteg::GrayImage::new(width, height, px[..width * height].to_vec()).unwrap();
    let bytes = fibsteg::write_pgm(&img);
    assert_eq!(fibsteg::read_pgm(&bytes).unwrap(), img);
});
