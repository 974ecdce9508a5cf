//! Exact complex-rational scalars and helpers for moving between exact
//! and floating-point values.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Builds a rational `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `a/b`, or a finite decimal such as `-0.25` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        position: 0,
        message: format!("invalid rational literal `{s}`"),
    };
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let magnitude = BigRational::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Largest denominator accepted when snapping a float onto a rational label.
pub const MAX_LABEL_DENOMINATOR: i64 = 1_000_000_000;
/// Absolute tolerance for snapping a float onto a rational label.
pub const LABEL_TOLERANCE: f64 = 1e-12;

/// Snaps a real number to the simplest rational within [`LABEL_TOLERANCE`]
/// using continued-fraction convergents, so that e.g. `0.1 + 0.2` and `0.3`
/// become the same exact label.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite label {x}")));
    }
    let negative = x < 0.0;
    let mut rest = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > MAX_LABEL_DENOMINATOR as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if ((p1 as f64) / (q1 as f64) - x.abs()).abs() <= LABEL_TOLERANCE {
            break;
        }
        let frac = rest - a;
        if frac <= f64::EPSILON {
            break;
        }
        rest = 1.0 / frac;
    }
    if q1 == 0 || ((p1 as f64) / (q1 as f64) - x.abs()).abs() > LABEL_TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "label {x} has no rational form with denominator <= {MAX_LABEL_DENOMINATOR}"
        )));
    }
    let r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    Ok(if negative { -r } else { r })
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact complex rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            None
        } else {
            Some(Self::new(&self.re / &n, -&self.im / &n))
        }
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Zero for CRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<BigRational> for CRational {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for CRational {
    fn from(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

impl<'a> Add<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn add(self, o: &CRational) -> CRational {
        CRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn sub(self, o: &CRational) -> CRational {
        CRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn mul(self, o: &CRational) -> CRational {
        CRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn div(self, o: &CRational) -> CRational {
        self * &o.inv().expect("division by zero complex rational")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CRational {
            type Output = CRational;
            fn $m(self, o: CRational) -> CRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CRational> for CRational {
            type Output = CRational;
            fn $m(self, o: &CRational) -> CRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CRational> for CRational {
    fn add_assign(&mut self, o: &CRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&CRational> for CRational {
    fn sub_assign(&mut self, o: &CRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&CRational> for CRational {
    fn mul_assign(&mut self, o: &CRational) {
        *self = &*self * o;
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// `a/b`, `c/d i`, or `a/b+c/d i`; unit denominators are omitted.
impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{} i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{} i",
                    format_rational(&self.re),
                    sign,
                    format_rational(&self.im.abs())
                )
            }
        }
    }
}

impl FromStr for CRational {
    type Err = Error;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s)?));
        };
        let body = body.trim_end();
        // Split at the sign that separates the real and imaginary parts,
        // skipping a leading sign and signs following '/'.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/');
        match split {
            None => Ok(Self::new(BigRational::zero(), parse_rational(body)?)),
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im_str = &body[k..];
                let im = parse_rational(im_str.strip_prefix('+').unwrap_or(im_str))?;
                Ok(Self::new(re, im))
            }
        }
    }
}

impl serde::Serialize for CRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(CRational::new(rat(0, 1), rat(1, 2)).to_string(), "1/2 i");
        assert_eq!(CRational::new(rat(-1, 2), rat(0, 1)).to_string(), "-1/2");
        assert_eq!(CRational::new(rat(3, 4), rat(-5, 7)).to_string(), "3/4-5/7 i");
        assert_eq!(CRational::zero().to_string(), "0");
    }

    #[test]
    fn parse_decimals_exactly() {
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn float_labels_snap() {
        assert_eq!(rational_from_f64(0.1 + 0.2).unwrap(), rat(3, 10));
        assert_eq!(rational_from_f64(-7.3).unwrap(), rat(-73, 10));
        assert_eq!(rational_from_f64(0.0).unwrap(), rat(0, 1));
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn i_powers() {
        assert_eq!(CRational::i() * CRational::i(), -CRational::one());
        assert_eq!(CRational::i_pow(-1), -CRational::i());
        assert_eq!(CRational::i().pow(4), CRational::one());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::new();
        s.add(1e16);
        for _ in 0..1000 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 1000.0);
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let z = CRational::new(rat(a, b), rat(c, d));
            let back: CRational = z.to_string().parse().unwrap();
            prop_assert_eq!(back, z);
        }
    }
}
