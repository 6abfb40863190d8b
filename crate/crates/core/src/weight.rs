//! Exact non-negative edge weights.
//!
//! Weights are decimal numbers read verbatim from the input. A graph stores
//! every weight as an integer count of `10^-scale` units, where `scale` is the
//! largest number of fractional digits among its inputs. All sums and
//! comparisons are therefore exact.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted number of fractional digits.
pub const MAX_SCALE: u32 = 18;

/// Single weights are capped well below `u128::MAX` so that sums over any
/// path or cycle of a graph with fewer than 2^27 edges cannot overflow.
const MAX_UNITS: u128 = 1 << 100;

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Weight(u128);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    /// Sentinel for "no path"; additions saturate at it.
    pub const INFINITE: Weight = Weight(u128::MAX);

    pub const fn from_units(units: u128) -> Self {
        Weight(units)
    }

    pub const fn units(self) -> u128 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0 == u128::MAX
    }

    pub fn saturating_add(self, other: Weight) -> Weight {
        Weight(self.0.saturating_add(other.0))
    }

    /// Rescales from `from` fractional digits to `to >= from` digits.
    pub fn rescale(self, from: u32, to: u32) -> Weight {
        debug_assert!(to >= from);
        Weight(self.0 * 10u128.pow(to - from))
    }

    /// Renders the weight as a decimal with trailing fractional zeros removed.
    pub fn display(self, scale: u32) -> DisplayWeight {
        DisplayWeight { w: self, scale }
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

pub struct DisplayWeight {
    w: Weight,
    scale: u32,
}

impl fmt::Display for DisplayWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_infinite() {
            return f.write_str("inf");
        }
        let div = 10u128.pow(self.scale);
        let int = self.w.0 / div;
        let mut frac = self.w.0 % div;
        if frac == 0 {
            return write!(f, "{int}");
        }
        let mut digits = self.scale as usize;
        while frac.is_multiple_of(10) {
            frac /= 10;
            digits -= 1;
        }
        write!(f, "{int}.{frac:0digits$}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalError {
    #[error("empty weight")]
    Empty,
    #[error("negative weight `{0}`")]
    Negative(String),
    #[error("malformed decimal `{0}`")]
    Malformed(String),
    #[error("more than {MAX_SCALE} fractional digits in `{0}`")]
    TooPrecise(String),
    #[error("weight `{0}` is too large")]
    TooLarge(String),
}

/// A parsed decimal: `mantissa * 10^-digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub mantissa: u128,
    pub digits: u32,
}

impl Decimal {
    pub fn parse(text: &str) -> Result<Decimal, DecimalError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(DecimalError::Empty);
        }
        let body = if let Some(rest) = s.strip_prefix('-') {
            // "-0" and "-0.00" are zero, everything else is rejected
            if !rest.is_empty()
                && rest.chars().all(|c| c == '0' || c == '.')
                && rest.matches('.').count() <= 1
            {
                rest
            } else {
                return Err(DecimalError::Negative(s.to_string()));
            }
        } else {
            s.strip_prefix('+').unwrap_or(s)
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(DecimalError::Malformed(s.to_string()));
        }
        if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DecimalError::Malformed(s.to_string()));
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > MAX_SCALE as usize {
            return Err(DecimalError::TooPrecise(s.to_string()));
        }
        let mut mantissa: u128 = 0;
        for b in int.bytes().chain(frac.bytes()) {
            mantissa = mantissa
                .checked_mul(10)
                .and_then(|m| m.checked_add(u128::from(b - b'0')))
                .ok_or_else(|| DecimalError::TooLarge(s.to_string()))?;
        }
        let digits = frac.len() as u32;
        // headroom for rescaling to MAX_SCALE digits
        if mantissa >= MAX_UNITS / 10u128.pow(MAX_SCALE - digits) {
            return Err(DecimalError::TooLarge(s.to_string()));
        }
        Ok(Decimal { mantissa, digits })
    }

    pub fn to_weight(self, scale: u32) -> Weight {
        Weight(self.mantissa).rescale(self.digits, scale)
    }
}
