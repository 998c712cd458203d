//! Hadamard transform kernels: the dense reference matrix, the floating-point
//! fast transform and the bit-true fixed-point datapath.
//!
//! All transforms use the natural (Sylvester) ordering produced by the
//! recursive block construction, so row `k` of the unnormalized matrix has
//! entry `(-1)^popcount(k & j)` in column `j`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::{math, Error, Result};

/// Largest transform order accepted by default (`M = 2^20`).
pub const MAX_ORDER: u32 = 20;

/// Widest word the fixed-point datapath may produce.
pub const MAX_FIXED_BITS: u32 = 62;

/// Transform order `m` with dimension `M = 2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformSpec {
    order: u32,
}

impl TransformSpec {
    pub fn new(order: u32) -> Result<Self> {
        Self::with_max_order(order, MAX_ORDER)
    }

    /// Like [`TransformSpec::new`] with a caller-chosen order cap.
    pub fn with_max_order(order: u32, max: u32) -> Result<Self> {
        if order > max || order >= usize::BITS {
            return Err(Error::OrderTooLarge { order, max });
        }
        Ok(Self { order })
    }

    /// Spec for a dimension that must be a power of two.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::invalid("transform dimension must be a power of two"));
        }
        Self::new(dim.trailing_zeros())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        1usize << self.order
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), actual: len });
        }
        Ok(())
    }
}

/// Entry of the unnormalized Sylvester Hadamard matrix.
#[inline]
pub fn hadamard_sign(row: usize, col: usize) -> f64 {
    if (row & col).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: x.len() });
        }
        Ok((0..self.rows).map(|r| math::dot(self.row(r), x)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, actual: other.rows });
        }
        let ot = other.transpose();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                out.data[r * other.cols + c] = math::dot(self.row(r), ot.row(c));
            }
        }
        Ok(out)
    }
}

/// Builds the orthonormal `H_m` by the block recursion
/// `H_m = [[H, H], [H, -H]] / sqrt(2)` starting from `H_0 = [1]`.
pub fn hadamard_matrix(spec: TransformSpec) -> Result<Matrix> {
    let dim = spec.dim();
    let elements = dim.checked_mul(dim).ok_or(Error::ResourceLimit { elements: usize::MAX })?;
    let mut data: Vec<f64> = Vec::new();
    data.try_reserve_exact(elements).map_err(|_| Error::ResourceLimit { elements })?;
    data.push(1.0);

    let mut n = 1usize;
    for _ in 0..spec.order() {
        let next = 2 * n;
        let mut grown = vec![0.0; next * next];
        for r in 0..n {
            for c in 0..n {
                let v = data[r * n + c] * FRAC_1_SQRT_2;
                grown[r * next + c] = v;
                grown[r * next + c + n] = v;
                grown[(r + n) * next + c] = v;
                grown[(r + n) * next + c + n] = -v;
            }
        }
        data = grown;
        n = next;
    }
    Ok(Matrix { rows: dim, cols: dim, data })
}

/// In-place orthonormal fast Hadamard transform.
///
/// Decimation in frequency: stage `s` pairs elements `M / 2^s` apart. Every
/// butterfly is scaled by `1/sqrt(2)`.
pub fn fht_real_in_place(v: &mut [f64]) -> Result<()> {
    let spec = TransformSpec::from_dim(v.len())?;
    let mut span = spec.dim() >> 1;
    while span > 0 {
        for block in v.chunks_exact_mut(2 * span) {
            let (lo, hi) = block.split_at_mut(span);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }
        span >>= 1;
    }
    Ok(())
}

/// Orthonormal fast Hadamard transform; equals `hadamard_matrix(spec) * x`.
pub fn fht_real(x: &[f64], spec: TransformSpec) -> Result<Vec<f64>> {
    spec.check_len(x.len())?;
    let mut y = x.to_vec();
    fht_real_in_place(&mut y)?;
    Ok(y)
}

/// Two's-complement word format.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointFormat {
    total_bits: u32,
    lsb_weight: f64,
}

impl FixedPointFormat {
    pub fn new(total_bits: u32, lsb_weight: f64) -> Result<Self> {
        if !(2..=MAX_FIXED_BITS).contains(&total_bits) {
            return Err(Error::invalid("fixed-point word must have 2..=62 bits"));
        }
        if !(lsb_weight > 0.0 && lsb_weight.is_finite()) {
            return Err(Error::invalid("lsb weight must be positive and finite"));
        }
        Ok(Self { total_bits, lsb_weight })
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    /// Signal value of one code step.
    pub fn lsb_weight(&self) -> f64 {
        self.lsb_weight
    }

    pub fn min_code(&self) -> i64 {
        -(1i64 << (self.total_bits - 1))
    }

    pub fn max_code(&self) -> i64 {
        (1i64 << (self.total_bits - 1)) - 1
    }

    pub fn contains(&self, code: i64) -> bool {
        (self.min_code()..=self.max_code()).contains(&code)
    }

    fn widened(&self, extra: u32) -> Self {
        Self { total_bits: self.total_bits + extra, lsb_weight: self.lsb_weight }
    }
}

/// Integer codes tagged with their word format.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeVector {
    codes: Vec<i64>,
    format: FixedPointFormat,
}

impl CodeVector {
    pub fn new(codes: Vec<i64>, format: FixedPointFormat) -> Result<Self> {
        if let Some((index, &code)) = codes.iter().enumerate().find(|(_, c)| !format.contains(**c)) {
            return Err(Error::CodeOutOfRange { index, code, bits: format.total_bits });
        }
        Ok(Self { codes, format })
    }

    pub fn codes(&self) -> &[i64] {
        &self.codes
    }

    pub fn format(&self) -> FixedPointFormat {
        self.format
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn into_codes(self) -> Vec<i64> {
        self.codes
    }
}

/// Number of extra bits the datapath adds: one per odd stage.
pub fn fixed_bit_growth(order: u32) -> u32 {
    order.div_ceil(2)
}

/// Gain of the widen/halve schedule relative to the orthonormal transform:
/// `2^((m mod 2) / 2)`.
pub fn residual_gain(order: u32) -> f64 {
    if order % 2 == 0 {
        1.0
    } else {
        core::f64::consts::SQRT_2
    }
}

/// `(a + b) / 2`, rounded to nearest with ties away from zero.
#[inline]
pub fn halve_round(sum: i64) -> i64 {
    if sum & 1 == 0 {
        sum / 2
    } else if sum > 0 {
        (sum + 1) / 2
    } else {
        (sum - 1) / 2
    }
}

/// Bit-true fixed-point fast Hadamard transform.
///
/// Stage `s` (1-based) pairs elements `M / 2^s` apart like [`fht_real`].
/// Odd stages keep full precision and grow the word by one bit; even stages
/// halve the butterfly outputs (see [`halve_round`]) and keep the width. The
/// output codes carry the input `lsb_weight`; divide by [`residual_gain`] to
/// land on the orthonormal scale, as [`dequantize_fht_output`] does.
pub fn fht_fixed(x: &CodeVector, spec: TransformSpec) -> Result<CodeVector> {
    spec.check_len(x.len())?;
    let input = x.format();
    let growth = fixed_bit_growth(spec.order());
    if input.total_bits() + growth > MAX_FIXED_BITS {
        return Err(Error::invalid("fixed-point output word would exceed 62 bits"));
    }
    if let Some((index, &code)) = x.codes.iter().enumerate().find(|(_, c)| !input.contains(**c)) {
        return Err(Error::CodeOutOfRange { index, code, bits: input.total_bits() });
    }

    let mut v = x.codes.clone();
    let mut width = input;
    let mut span = spec.dim() >> 1;
    let mut stage = 1u32;
    while span > 0 {
        let halving = stage % 2 == 0;
        if !halving {
            width = width.widened(1);
        }
        for block in v.chunks_exact_mut(2 * span) {
            let (lo, hi) = block.split_at_mut(span);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (p, q) = (*a + *b, *a - *b);
                let (p, q) = if halving { (halve_round(p), halve_round(q)) } else { (p, q) };
                debug_assert!(width.contains(p) && width.contains(q), "stage {stage} overflow");
                *a = p;
                *b = q;
            }
        }
        span >>= 1;
        stage += 1;
    }
    Ok(CodeVector { codes: v, format: width })
}

/// Maps datapath output codes back to orthonormal signal units:
/// `code * lsb_weight / residual_gain(m)`.
pub fn dequantize_fht_output(y: &CodeVector, spec: TransformSpec) -> Result<Vec<f64>> {
    spec.check_len(y.len())?;
    let scale = y.format().lsb_weight() / residual_gain(spec.order());
    Ok(y.codes.iter().map(|&c| c as f64 * scale).collect())
}
