//! Exact coefficient arithmetic: Gaussian rationals and their polynomial
//! extension in a formal degeneration parameter `eps`.
//!
//! Every zero/nonzero decision in this crate reduces to arithmetic in these
//! two rings, so both are kept in canonical form at all times: rationals are
//! reduced with positive denominator and `eps`-polynomials carry no trailing
//! zero coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Common interface of the two coefficient rings.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Multiplication by a plain scalar, the action used by local maps.
    fn scale(&self, s: &Scalar) -> Self;
    /// Ring tag used in the JSON tensor format.
    fn ring_name() -> &'static str;
}

/// A Gaussian rational `re + im·i` with both parts arbitrary-precision
/// rationals in reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::new(re, BigRational::zero())
    }

    /// Builds `p/q + (r/s)i` from integer parts.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|² = re² + im²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Parses a rational from `"p"` or `"p/q"`.
    pub fn parse_rational(s: &str) -> Result<BigRational> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num)
            .map_err(|_| Error::Format(format!("bad rational numerator in {s:?}")))?;
        let den = BigInt::from_str(den)
            .map_err(|_| Error::Format(format!("bad rational denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Format(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(num, den))
    }

    pub fn from_strs(re: &str, im: &str) -> Result<Self> {
        Ok(Scalar::new(
            Scalar::parse_rational(re)?,
            Scalar::parse_rational(im)?,
        ))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn ring_name() -> &'static str {
        "Q_i"
    }
}

/// A polynomial `c_0 + c_1·eps + … + c_d·eps^d` over [`Scalar`].
///
/// Canonical form stores no trailing zero coefficients; the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsScalar {
    coeffs: Vec<Scalar>,
}

impl EpsScalar {
    pub fn zero() -> Self {
        EpsScalar { coeffs: Vec::new() }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        EpsScalar::from_coeffs(vec![s])
    }

    /// `c·eps^deg`.
    pub fn monomial(c: Scalar, deg: usize) -> Self {
        if c.is_zero() {
            return EpsScalar::zero();
        }
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        coeffs[deg] = c;
        EpsScalar { coeffs }
    }

    /// Coefficients in ascending degree; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        EpsScalar { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree of the polynomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, deg: usize) -> Scalar {
        self.coeffs.get(deg).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Discards all coefficients of degree above `max_deg`.
    pub fn truncated(&self, max_deg: usize) -> Self {
        EpsScalar::from_coeffs(
            self.coeffs
                .iter()
                .take(max_deg + 1)
                .cloned()
                .collect(),
        )
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|d| &self.coefficient(d) + &rhs.coefficient(d))
            .collect();
        EpsScalar::from_coeffs(coeffs)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return EpsScalar::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        EpsScalar::from_coeffs(coeffs)
    }
}

impl fmt::Debug for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})e")?,
                _ => write!(f, "({c})e^{d}")?,
            }
        }
        Ok(())
    }
}

impl Ring for EpsScalar {
    fn zero() -> Self {
        EpsScalar::zero()
    }
    fn one() -> Self {
        EpsScalar::from_scalar(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn ring_neg(&self) -> Self {
        EpsScalar::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
    fn scale(&self, s: &Scalar) -> Self {
        EpsScalar::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }
    fn ring_name() -> &'static str {
        "Q_i_eps"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn scalar_arithmetic_is_exact() {
        let a = Scalar::new(q(1, 3), q(1, 2));
        let b = Scalar::new(q(2, 3), q(-1, 2));
        assert_eq!(&a + &b, Scalar::one());
        // (1/3 + i/2)(2/3 - i/2) = 2/9 + 1/4 + i(1/3 - 1/6) = 17/36 + i/6
        assert_eq!(&a * &b, Scalar::new(q(17, 36), q(1, 6)));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_inverse_and_norm() {
        let a = Scalar::new(q(3, 1), q(4, 1));
        assert_eq!(a.norm_sqr(), q(25, 1));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn rational_parsing_rejects_zero_denominator() {
        assert!(Scalar::parse_rational("1/0").is_err());
        assert!(Scalar::parse_rational("x").is_err());
        assert_eq!(Scalar::parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(Scalar::parse_rational("7").unwrap(), q(7, 1));
    }

    #[test]
    fn display_round_trips_reduced_form() {
        assert_eq!(format!("{}", Scalar::parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format!("{}", Scalar::from_int(-3)), "-3");
        assert_eq!(format!("{}", Scalar::i()), "1i");
    }

    #[test]
    fn eps_canonical_form_trims_trailing_zeros() {
        let e = EpsScalar::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(e.degree(), Some(0));
        let z = EpsScalar::from_coeffs(vec![Scalar::zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn eps_convolution() {
        // (1 + e)(1 - e) = 1 - e^2
        let a = EpsScalar::from_coeffs(vec![Scalar::one(), Scalar::one()]);
        let b = EpsScalar::from_coeffs(vec![Scalar::one(), Scalar::from_int(-1)]);
        let p = a.ring_mul(&b);
        assert_eq!(p.coefficient(0), Scalar::one());
        assert!(p.coefficient(1).is_zero());
        assert_eq!(p.coefficient(2), Scalar::from_int(-1));
        assert_eq!(p.truncated(1), EpsScalar::one());
    }
}
