#![no_main]

use libfuzzer_sys::fuzz_target;
use fibsteg::{extract, Framing, GrayImage, Method, Scheme};

// Header-framed extraction from arbitrary pixels must fail cleanly or
// return no more bits than the image can hold.
fuzz_target!(|data: &[u8]| {
    if data.len() < 10 {
        return;
    }
    let method = Method::ALL[usize::from(data[0] % 4)];
    let seed = u64::from_le_bytes(data[1..9].try_into().unwrap());
    let px = &data[9..];
    let width = px.len().min(64);
    let height = px.len() / width;
    let img = GrayImage::new(width, height, px[..width * height].to_vec()).unwrap();
    let scheme = Scheme::new(method, seed).with_random_order(data[0] & 4 != 0);
    if let Ok(bits) = extract(&img, &scheme, Framing::Header) {
        assert!(bits.len() + 32 <= scheme.capacity(&img));
    }
});
