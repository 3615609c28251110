//! Scalar arithmetic used throughout the crate.
//!
//! Three arithmetic modes are supported, each realized as a concrete type
//! implementing [`Scalar`]:
//!
//! * [`ArithMode::Integer`]: `i64`, inputs must be integer literals.
//! * [`ArithMode::Rational`]: [`Rational`], exact fractions over `i128`.
//! * [`ArithMode::Float`]: [`Float`], binary `f64` with a total order.
//!
//! Only addition, subtraction, negation and comparison are needed by the
//! algorithms, so every mode is closed under the operations actually used.

use std::fmt::{Debug, Display};
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use ordered_float::OrderedFloat;

/// Exact rational scalar.
pub type Rational = Ratio<i128>;

/// Floating scalar with a total order (NaN is rejected at parse time).
pub type Float = OrderedFloat<f64>;

/// Relative comparison tolerance used by [`Scalar::approx_eq`] in float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithMode {
    Integer,
    Rational,
    Float,
}

impl ArithMode {
    pub fn name(self) -> &'static str {
        match self {
            ArithMode::Integer => "int",
            ArithMode::Rational => "rational",
            ArithMode::Float => "float",
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            ArithMode::Integer => 0,
            ArithMode::Rational => 1,
            ArithMode::Float => 2,
        }
    }
}

impl FromStr for ArithMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" | "integer" => Ok(ArithMode::Integer),
            "rational" | "rat" => Ok(ArithMode::Rational),
            "float" | "f64" => Ok(ArithMode::Float),
            other => Err(format!("unknown arithmetic mode `{other}`")),
        }
    }
}

/// Number type the distance computations are generic over.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Ord
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    const MODE: ArithMode;

    fn zero() -> Self;

    fn from_i64(v: i64) -> Self;

    /// Parses one decimal literal as it appears in an input file.
    fn parse_literal(s: &str) -> Result<Self, String>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// `self · k` by repeated doubling; only small non-negative `k` occur.
    fn times(&self, k: u64) -> Self {
        let mut acc = Self::zero();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() + base;
            }
        }
        acc
    }

    /// Equality up to the mode's tolerance (exact modes compare exactly).
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Little-endian serialization used by the preprocessing cache.
    fn write_le(&self, out: &mut Vec<u8>);

    fn read_le(bytes: &[u8]) -> Option<(Self, usize)>;
}

impl Scalar for i64 {
    const MODE: ArithMode = ArithMode::Integer;

    fn zero() -> Self {
        0
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        s.parse::<i64>()
            .map_err(|_| format!("`{s}` is not an integer literal"))
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn times(&self, k: u64) -> Self {
        self * k as i64
    }

    fn write_le(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Option<(Self, usize)> {
        let raw: [u8; 8] = bytes.get(..8)?.try_into().ok()?;
        Some((i64::from_le_bytes(raw), 8))
    }
}

impl Scalar for Rational {
    const MODE: ArithMode = ArithMode::Rational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        let bad = || format!("`{s}` is not a decimal or fraction literal");
        if let Some((num, den)) = s.split_once('/') {
            let num: i128 = num.parse().map_err(|_| bad())?;
            let den: i128 = den.parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(format!("`{s}` has a zero denominator"));
            }
            return Ok(Ratio::new(num, den));
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 30 {
            return Err(format!("`{s}` has too many fractional digits"));
        }
        let digits = format!("{whole}{frac}");
        let num: i128 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let den = 10i128.pow(frac.len() as u32);
        let value = Ratio::new(num, den);
        Ok(if negative { -value } else { value })
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn write_le(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.numer().to_le_bytes());
        out.extend_from_slice(&self.denom().to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Option<(Self, usize)> {
        let num: [u8; 16] = bytes.get(..16)?.try_into().ok()?;
        let den: [u8; 16] = bytes.get(16..32)?.try_into().ok()?;
        let den = i128::from_le_bytes(den);
        if den == 0 {
            return None;
        }
        Some((Ratio::new(i128::from_le_bytes(num), den), 32))
    }
}

impl Scalar for Float {
    const MODE: ArithMode = ArithMode::Float;

    fn zero() -> Self {
        OrderedFloat(0.0)
    }

    fn from_i64(v: i64) -> Self {
        OrderedFloat(v as f64)
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        let v: f64 = s
            .parse()
            .map_err(|_| format!("`{s}` is not a floating literal"))?;
        if !v.is_finite() {
            return Err(format!("`{s}` is not finite"));
        }
        Ok(OrderedFloat(v))
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = 1f64.max(self.0.abs()).max(other.0.abs());
        (self.0 - other.0).abs() <= FLOAT_TOLERANCE * scale
    }

    fn write_le(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.0.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Option<(Self, usize)> {
        let raw: [u8; 8] = bytes.get(..8)?.try_into().ok()?;
        Some((OrderedFloat(f64::from_le_bytes(raw)), 8))
    }
}

/// A scalar or positive infinity. `Finite` orders below `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> Ext<S> {
    pub fn zero() -> Self {
        Ext::Finite(S::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinity => None,
        }
    }

    pub fn plus(&self, rhs: &Ext<S>) -> Ext<S> {
        match (self, rhs) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a.clone() + b.clone()),
            _ => Ext::Infinity,
        }
    }

    pub fn plus_scalar(&self, rhs: &S) -> Ext<S> {
        match self {
            Ext::Finite(a) => Ext::Finite(a.clone() + rhs.clone()),
            Ext::Infinity => Ext::Infinity,
        }
    }
}

impl<S: Display> Display for Ext<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ext::Finite(v) => write!(f, "{v}"),
            Ext::Infinity => write!(f, "inf"),
        }
    }
}

/// Symbolic big-M value `infinities · Ω + finite`, ordered lexicographically.
///
/// Used inside boxes where padded cells must behave like infinity while
/// still being separable into an `A`-side and a `B`-side sum. The count of
/// infinities may be negative in intermediate differences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Penalized<S> {
    pub infinities: i64,
    pub finite: S,
}

impl<S: Scalar> Penalized<S> {
    pub fn zero() -> Self {
        Penalized {
            infinities: 0,
            finite: S::zero(),
        }
    }

    pub fn finite(v: S) -> Self {
        Penalized {
            infinities: 0,
            finite: v,
        }
    }

    pub fn omega(count: i64) -> Self {
        Penalized {
            infinities: count,
            finite: S::zero(),
        }
    }

    /// Collapses to an extended scalar: any positive infinity count is `Infinity`.
    pub fn to_ext(&self) -> Ext<S> {
        debug_assert!(
            self.infinities >= 0,
            "negative infinity count in a path cost"
        );
        if self.infinities > 0 {
            Ext::Infinity
        } else {
            Ext::Finite(self.finite.clone())
        }
    }
}

impl<S: Scalar> Add for Penalized<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Penalized {
            infinities: self.infinities + rhs.infinities,
            finite: self.finite + rhs.finite,
        }
    }
}

impl<S: Scalar> Sub for Penalized<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Penalized {
            infinities: self.infinities - rhs.infinities,
            finite: self.finite - rhs.finite,
        }
    }
}

impl<S: Scalar> Neg for Penalized<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Penalized {
            infinities: -self.infinities,
            finite: -self.finite,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        let five: Ext<i64> = Ext::Finite(5);
        assert_eq!(five.plus(&Ext::Infinity), Ext::Infinity);
        assert_eq!(Ext::<i64>::Infinity.plus_scalar(&3), Ext::Infinity);
        assert!(Ext::Infinity > Ext::Finite(i64::MAX));
        assert!(Ext::Finite(-3) < Ext::Finite(2));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(Rational::parse_literal("1.25").unwrap(), Ratio::new(5, 4));
        assert_eq!(Rational::parse_literal("-0.5").unwrap(), Ratio::new(-1, 2));
        assert_eq!(Rational::parse_literal("3/6").unwrap(), Ratio::new(1, 2));
        assert_eq!(
            Rational::parse_literal("7").unwrap(),
            Ratio::from_integer(7)
        );
        assert!(Rational::parse_literal("1/0").is_err());
        assert!(Rational::parse_literal("1.2.3").is_err());
        assert!(Rational::parse_literal("-").is_err());
    }

    #[test]
    fn integer_mode_rejects_decimals() {
        assert!(i64::parse_literal("1.5").is_err());
        assert_eq!(i64::parse_literal("-42").unwrap(), -42);
    }

    #[test]
    fn float_tolerance() {
        let a = OrderedFloat(1e6);
        let b = OrderedFloat(1e6 + 1e-4);
        assert!(a.approx_eq(&b));
        assert!(!OrderedFloat(1.0).approx_eq(&OrderedFloat(1.001)));
        assert!(Float::parse_literal("nan").is_err());
    }

    #[test]
    fn times_matches_repeated_addition() {
        let r = Ratio::new(3i128, 7);
        let mut acc = <Rational as Scalar>::zero();
        for k in 0..20u64 {
            assert_eq!(r.times(k), acc);
            acc += r;
        }
        assert_eq!(OrderedFloat(0.5).times(6), OrderedFloat(3.0));
    }

    #[test]
    fn penalized_orders_infinities_first() {
        let a = Penalized {
            infinities: 0,
            finite: 1_000_000i64,
        };
        let b = Penalized {
            infinities: 1,
            finite: -5i64,
        };
        assert!(a < b);
        assert_eq!(b.to_ext(), Ext::Infinity);
        assert_eq!((b.clone() - b).to_ext(), Ext::Finite(0));
    }

    #[test]
    fn le_round_trip() {
        let mut buf = Vec::new();
        Ratio::new(-7i128, 3).write_le(&mut buf);
        (-9i64).write_le(&mut buf);
        OrderedFloat(2.5f64).write_le(&mut buf);
        let (r, used) = Rational::read_le(&buf).unwrap();
        assert_eq!(r, Ratio::new(-7, 3));
        let (i, used2) = i64::read_le(&buf[used..]).unwrap();
        assert_eq!(i, -9);
        let (f, _) = Float::read_le(&buf[used + used2..]).unwrap();
        assert_eq!(f, OrderedFloat(2.5));
    }
}
