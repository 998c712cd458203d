//! Float helpers backed by `libm`, since `core` has no transcendental
//! functions.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Power ratio in dB.
#[inline]
pub fn db10(ratio: f64) -> f64 {
    10.0 * libm::log10(ratio)
}

/// `10^(db/10)`: dB to power ratio.
#[inline]
pub fn from_db10(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// `10^(db/20)`: dB to amplitude ratio.
#[inline]
pub fn from_db20(db: f64) -> f64 {
    libm::pow(10.0, db / 20.0)
}

/// Dot product with split accumulators so the loop vectorizes.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 8];
    let chunks_a = a.chunks_exact(8);
    let chunks_b = b.chunks_exact(8);
    let tail: f64 = chunks_a.remainder().iter().zip(chunks_b.remainder()).map(|(x, y)| x * y).sum();
    for (ca, cb) in chunks_a.zip(chunks_b) {
        for i in 0..8 {
            acc[i] += ca[i] * cb[i];
        }
    }
    let head = ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]));
    head + tail
}

#[inline]
pub fn energy(a: &[f64]) -> f64 {
    dot(a, a)
}
