//! Coefficient fields for operator sums.
//!
//! Two fields are supported: exact rational-complex ([`Exact`]) and
//! double-precision complex ([`Complex64`]). The field is a type parameter of
//! [`crate::operator::OperatorSum`], so exact and float coefficients can never
//! mix inside one operator.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Scalar field interface shared by exact and float coefficients.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// True for exact rational-complex arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// num/den as a real scalar. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; `rhs` must be nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;

    fn is_zero(&self) -> bool;
    /// Complex modulus, approximated as f64.
    fn abs(&self) -> f64;
    /// (re, im) approximated as f64, for reports.
    fn approx(&self) -> (f64, f64);
    /// Render as the `(re,im)` pair used by the text dump.
    fn render(&self) -> String;
    /// JSON value for one part of a table entry (`p/q` string in the exact
    /// field, plain number in the float field).
    fn json_parts(&self) -> (serde_json::Value, serde_json::Value);
}

/// Exact rational-complex scalar: re + i·im with arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exact {
    pub re: BigRational,
    pub im: BigRational,
}

impl Exact {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Exact { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Exact {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exact::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Purely imaginary unit times a rational.
    pub fn imag_ratio(num: i64, den: i64) -> Self {
        Exact {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::real(BigRational::zero())
    }
    fn one() -> Self {
        Exact::real(BigRational::one())
    }
    fn from_int(n: i64) -> Self {
        Exact::real(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Exact::ratio(num, den)
    }

    fn add(&self, rhs: &Self) -> Self {
        Exact {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Exact {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Exact {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn div(&self, rhs: &Self) -> Self {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        Exact {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &norm,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &norm,
        }
    }
    fn neg(&self) -> Self {
        Exact {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn conj(&self) -> Self {
        Exact {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs(&self) -> f64 {
        let (re, im) = self.approx();
        re.hypot(im)
    }
    fn approx(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn render(&self) -> String {
        format!("({},{})", self.re, self.im)
    }
    fn json_parts(&self) -> (serde_json::Value, serde_json::Value) {
        (
            serde_json::Value::String(self.re.to_string()),
            serde_json::Value::String(self.im.to_string()),
        )
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn approx(&self) -> (f64, f64) {
        (self.re, self.im)
    }
    fn render(&self) -> String {
        format!("({},{})", self.re, self.im)
    }
    fn json_parts(&self) -> (serde_json::Value, serde_json::Value) {
        (serde_json::json!(self.re), serde_json::json!(self.im))
    }
}

/// Parse a real rational from `p/q`, an integer, or a plain decimal with a
/// short fractional part (e.g. `1.5` → 3/2).
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 12 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.trim_start().starts_with('-');
        let i = BigInt::from_str(if int.is_empty() || int == "-" {
            "0"
        } else {
            int
        })
        .map_err(|_| bad())?;
        let f = BigInt::from_str(if frac.is_empty() { "0" } else { frac }).map_err(|_| bad())?;
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let frac_part = BigRational::new(f, scale.clone());
        let int_part = BigRational::from_integer(i);
        return Ok(if neg {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    BigInt::from_str(s)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

impl FromStr for Exact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_rational(s).map(Exact::real)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = Exact::ratio(1, 2);
        let b = Exact::ratio(-3, 4);
        assert_eq!(a.add(&b), Exact::ratio(-1, 4));
        assert_eq!(a.mul(&b), Exact::ratio(-3, 8));
        assert_eq!(a.div(&b), Exact::ratio(-2, 3));
        let i = Exact::imag_ratio(1, 1);
        assert_eq!(i.mul(&i), Exact::from_int(-1));
        assert_eq!(i.conj(), Exact::imag_ratio(-1, 1));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(
            parse_rational("3/2").unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-5").unwrap(),
            BigRational::from_integer((-5).into())
        );
        assert_eq!(
            parse_rational("1.5").unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-0.25").unwrap(),
            BigRational::new((-1).into(), 4.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn abs_and_render() {
        let c = Exact::new(
            BigRational::new(3.into(), 1.into()),
            BigRational::new(4.into(), 1.into()),
        );
        assert!((c.abs() - 5.0).abs() < 1e-15);
        assert_eq!(c.render(), "(3,4)");
        let z = Complex64::new(-0.5, 0.0);
        assert_eq!(z.render(), "(-0.5,0)");
    }
}
