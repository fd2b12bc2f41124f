use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::IBig;

use super::NumericsError;

type Inner = FBig<HalfEven, 2>;

/// Default working precision in mantissa bits.
pub const DEFAULT_PRECISION_BITS: usize = 256;

/// Binary floating-point number with an explicit working precision.
///
/// Binary operations round to the larger of the two operand precisions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrecisionReal(Inner);

impl PrecisionReal {
    fn wrap(v: Inner) -> Self {
        PrecisionReal(v)
    }

    fn limited(v: Inner, bits: usize) -> Self {
        PrecisionReal(v.with_precision(bits).value())
    }

    pub fn zero(bits: usize) -> Self {
        Self::limited(Inner::ZERO, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::limited(Inner::ONE, bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Self::limited(Inner::from(v), bits)
    }

    pub fn from_ibig(v: IBig, bits: usize) -> Self {
        Self::limited(Inner::from(v), bits)
    }

    /// Exact conversion of a finite `f64` (every finite double is a dyadic rational).
    pub fn from_f64(v: f64, bits: usize) -> Self {
        assert!(v.is_finite(), "PrecisionReal::from_f64 on non-finite {v}");
        Self::limited(Inner::try_from(v).expect("finite f64"), bits)
    }

    /// `num / den` rounded to `bits`.
    pub fn ratio(num: i64, den: i64, bits: usize) -> Self {
        Self::from_i64(num, bits) / Self::from_i64(den, bits)
    }

    /// Parse a decimal literal such as `0.370635`, `-2`, or `1e-30`.
    pub fn parse(s: &str, bits: usize) -> Result<Self, NumericsError> {
        let t = s.trim();
        let dec = DBig::from_str(t).map_err(|_| NumericsError::Parse(t.to_string()))?;
        // Conversion from an exact decimal rounds once to the target precision.
        let bin = dec
            .with_base_and_precision::<2>(bits)
            .value()
            .with_rounding::<HalfEven>();
        Ok(Self::limited(bin, bits))
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    /// Round (or widen) to a new precision.
    pub fn with_precision(&self, bits: usize) -> Self {
        Self::limited(self.0.clone(), bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Inner::ZERO
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Inner::ZERO
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.cmp(&Inner::ZERO) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        Self::one(self.precision_bits()) / self
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.0.sqrt())
    }

    pub fn exp(&self) -> Self {
        Self::wrap(self.0.exp())
    }

    pub fn ln(&self) -> Self {
        Self::wrap(self.0.ln())
    }

    pub fn cos(&self) -> Self {
        Self::wrap(self.0.cos())
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            Self::wrap(self.0.powi(IBig::from(e)))
        } else {
            Self::wrap(self.0.powi(IBig::from(-e))).recip()
        }
    }

    /// Nearest integer, ties to even.
    pub fn round_to_ibig(&self) -> IBig {
        // `round` in dashu rounds half away from zero; resolve exact ties to even here.
        let fl = self.0.floor();
        let frac = &self.0 - &fl;
        let half = Inner::try_from(0.5).expect("0.5");
        let base = fl.to_int().value();
        match frac.cmp(&half) {
            Ordering::Less => base,
            Ordering::Greater => base + IBig::ONE,
            Ordering::Equal => {
                if (&base % IBig::from(2u8)) == IBig::ZERO {
                    base
                } else {
                    base + IBig::ONE
                }
            }
        }
    }

    pub fn floor_to_ibig(&self) -> IBig {
        self.0.floor().to_int().value()
    }

    pub fn ceil_to_ibig(&self) -> IBig {
        self.0.ceil().to_int().value()
    }

    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// `2^e` at the given precision.
    pub fn pow2(e: i64, bits: usize) -> Self {
        Self::from_i64(2, bits).powi(e)
    }

    /// Decimal rendering with `digits` significant digits, round-half-even,
    /// in scientific notation (`d.ddd…e±x`).
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{:.*}e0", digits - 1, 0.0);
        }
        let dec: FBig<HalfEven, 10> = self
            .0
            .clone()
            .with_base_and_precision::<10>(digits + 4)
            .value()
            .with_rounding::<HalfEven>()
            .with_precision(digits)
            .value();
        let neg = dec < FBig::<HalfEven, 10>::ZERO;
        let (signif, exp) = (dec.repr().significand().clone(), dec.repr().exponent());
        let mut s = signif.to_string().trim_start_matches('-').to_string();
        let mut exp10 = exp;
        // Pad so the mantissa always shows `digits` digits.
        while s.len() < digits {
            s.push('0');
            exp10 -= 1;
        }
        let point_exp = exp10 + s.len() as isize - 1;
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if s.len() > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push_str(&format!("e{point_exp}"));
        out
    }

    /// Plain decimal rendering with `digits` significant digits (no exponent
    /// for moderate magnitudes).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let sci = self.to_sci_string(digits);
        let (mant, exp) = sci.split_once('e').expect("sci format");
        let exp: i64 = exp.parse().expect("exponent");
        if !(-8..=15).contains(&exp) {
            return sci;
        }
        let neg = mant.starts_with('-');
        let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if exp < 0 {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(&digits_only);
        } else {
            let int_len = exp as usize + 1;
            if digits_only.len() <= int_len {
                out.push_str(&digits_only);
                for _ in digits_only.len()..int_len {
                    out.push('0');
                }
            } else {
                out.push_str(&digits_only[..int_len]);
                out.push('.');
                out.push_str(&digits_only[int_len..]);
            }
        }
        out
    }
}

impl fmt::Debug for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}b]", self.to_sci_string(20), self.precision_bits())
    }
}

impl fmt::Display for PrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        f.write_str(&self.to_decimal_string(digits))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&PrecisionReal> for &PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: &PrecisionReal) -> PrecisionReal {
                PrecisionReal::wrap(&self.0 $op &rhs.0)
            }
        }
        impl $trait<PrecisionReal> for PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: PrecisionReal) -> PrecisionReal {
                PrecisionReal::wrap(self.0 $op rhs.0)
            }
        }
        impl $trait<&PrecisionReal> for PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: &PrecisionReal) -> PrecisionReal {
                PrecisionReal::wrap(self.0 $op &rhs.0)
            }
        }
        impl $trait<PrecisionReal> for &PrecisionReal {
            type Output = PrecisionReal;
            fn $method(self, rhs: PrecisionReal) -> PrecisionReal {
                PrecisionReal::wrap(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for PrecisionReal {
    type Output = PrecisionReal;
    fn neg(self) -> PrecisionReal {
        PrecisionReal::wrap(-self.0)
    }
}

impl Neg for &PrecisionReal {
    type Output = PrecisionReal;
    fn neg(self) -> PrecisionReal {
        PrecisionReal::wrap(-self.0.clone())
    }
}

/// A real number or `+∞`; used where a formula legitimately diverges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtReal {
    Finite(PrecisionReal),
    PosInfinity,
}

impl ExtReal {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::PosInfinity)
    }

    pub fn finite(&self) -> Option<&PrecisionReal> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInfinity => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(v) => v.to_f64(),
            ExtReal::PosInfinity => f64::INFINITY,
        }
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        match self {
            ExtReal::Finite(v) => v.to_decimal_string(digits),
            ExtReal::PosInfinity => "inf".to_string(),
        }
    }
}

impl From<PrecisionReal> for ExtReal {
    fn from(v: PrecisionReal) -> Self {
        ExtReal::Finite(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => fmt::Display::fmt(v, f),
            ExtReal::PosInfinity => f.write_str("inf"),
        }
    }
}
