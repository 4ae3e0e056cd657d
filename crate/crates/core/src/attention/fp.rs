use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A binary floating-point format with `mantissa_bits` stored fraction bits,
/// `exponent_bits` exponent bits, gradual underflow and round-to-nearest-even.
///
/// There are no infinities or NaNs: results beyond the largest finite value
/// saturate, and results below half the smallest subnormal become signed zero.
///
/// Every primitive is evaluated in `f64` and rounded once into the format.
/// For `mantissa_bits ≤ 24` the precision `p` satisfies `53 ≥ 2p + 2`, so the
/// intermediate `f64` rounding of `+ − × ÷ √` never changes the final result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFormat", into = "RawFormat")]
pub struct FpFormat {
    exponent_bits: u32,
    mantissa_bits: u32,
    emin: i32,
    /// Bits of the largest finite value.
    max_bits: u64,
}

#[derive(Serialize, Deserialize)]
struct RawFormat {
    exponent_bits: u32,
    mantissa_bits: u32,
}

impl TryFrom<RawFormat> for FpFormat {
    type Error = Error;

    fn try_from(r: RawFormat) -> Result<Self> {
        FpFormat::new(r.exponent_bits, r.mantissa_bits)
    }
}

impl From<FpFormat> for RawFormat {
    fn from(f: FpFormat) -> Self {
        RawFormat {
            exponent_bits: f.exponent_bits,
            mantissa_bits: f.mantissa_bits,
        }
    }
}

/// `2^e` for `e` in the normal `f64` range.
fn pow2(e: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl FpFormat {
    pub const BINARY32: FpFormat = FpFormat {
        exponent_bits: 8,
        mantissa_bits: 23,
        emin: -126,
        max_bits: (f32::MAX as f64).to_bits(),
    };

    pub fn new(exponent_bits: u32, mantissa_bits: u32) -> Result<Self> {
        if !(2..=10).contains(&exponent_bits) {
            return Err(Error::Format(format!("exponent_bits must be in 2..=10, got {exponent_bits}")));
        }
        if !(1..=24).contains(&mantissa_bits) {
            return Err(Error::Format(format!("mantissa_bits must be in 1..=24, got {mantissa_bits}")));
        }
        let bias = (1i32 << (exponent_bits - 1)) - 1;
        let emax = bias;
        let max = (2.0 - pow2(-(mantissa_bits as i32))) * pow2(emax);
        Ok(FpFormat {
            exponent_bits,
            mantissa_bits,
            emin: 1 - bias,
            max_bits: max.to_bits(),
        })
    }

    pub fn exponent_bits(&self) -> u32 {
        self.exponent_bits
    }

    pub fn mantissa_bits(&self) -> u32 {
        self.mantissa_bits
    }

    pub fn max_finite(&self) -> f64 {
        f64::from_bits(self.max_bits)
    }

    pub fn min_subnormal(&self) -> f64 {
        pow2(self.emin - self.mantissa_bits as i32)
    }

    /// Spacing of format values around `x`.
    pub fn ulp(&self, x: f64) -> f64 {
        pow2(exponent_of(x.abs()).max(self.emin) - self.mantissa_bits as i32)
    }

    /// Nearest format value, ties to even.
    pub fn round(&self, x: f64) -> f64 {
        if x == 0.0 || x.is_nan() {
            return x;
        }
        let a = x.abs();
        let q = exponent_of(a).max(self.emin) - self.mantissa_bits as i32;
        let r = (a * pow2(-q)).round_ties_even() * pow2(q);
        r.min(self.max_finite()).copysign(x)
    }

    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && self.round(x) == x
    }

    pub fn add(&self, x: f64, y: f64) -> f64 {
        self.round(x + y)
    }

    pub fn sub(&self, x: f64, y: f64) -> f64 {
        self.round(x - y)
    }

    pub fn mul(&self, x: f64, y: f64) -> f64 {
        self.round(x * y)
    }

    /// Division by zero saturates (and `0/0` is taken to be 0).
    pub fn div(&self, x: f64, y: f64) -> f64 {
        if y == 0.0 {
            return if x == 0.0 { 0.0 } else { self.max_finite().copysign(x) * y.signum() };
        }
        self.round(x / y)
    }

    /// `f64::exp` rounded once; accurate to within an ulp of `f64`.
    pub fn exp(&self, x: f64) -> f64 {
        self.round(x.exp())
    }

    pub fn sqrt(&self, x: f64) -> f64 {
        self.round(x.sqrt())
    }

    pub fn max(&self, x: f64, y: f64) -> f64 {
        x.max(y)
    }

    /// `Σ xs` folded left to right with a rounding after each addition.
    pub fn sum(&self, xs: impl IntoIterator<Item = f64>) -> f64 {
        xs.into_iter().fold(0.0, |acc, x| self.add(acc, x))
    }

    /// `Σ_i a_i b_i`, products and partial sums rounded, left to right.
    pub fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

impl Default for FpFormat {
    fn default() -> Self {
        FpFormat::BINARY32
    }
}

impl std::fmt::Display for FpFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}m{}", self.exponent_bits, self.mantissa_bits)
    }
}

/// Unbiased binary exponent of a positive finite `f64` (`-1023` for `f64`
/// subnormals, which lie far below every supported format's range).
fn exponent_of(a: f64) -> i32 {
    ((a.to_bits() >> 52) & 0x7ff) as i32 - 1023
}
