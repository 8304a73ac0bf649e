//! Exact scalars: rationals, Gaussian rationals and rational quaternions.
//!
//! Complex numbers are embedded in the quaternions as `a + b i`, so that a
//! quaternion `q = a + b i + c j + d k` splits as `z1 + z2 j` with
//! `z1 = a + b i` and `z2 = c + d i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

macro_rules! forward_owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(int(re), int(im))
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        let mut e = exp;
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

    /// Exact test for `re² + im² = 1`.
    pub fn is_unit_modulus(&self) -> bool {
        self.norm_sq().is_one()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::new(
            self.re.clone(),
            self.im.clone(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Representative of the quaternionic similarity class of `self`: the
    /// member of `{z, conj(z)}` with non-negative imaginary part.
    pub fn class_rep(&self) -> Self {
        if self.im.is_negative() {
            self.conj()
        } else {
            self.clone()
        }
    }

    /// Representative of the class of `self⁻¹`, i.e. `self / |self|²`
    /// for `im(self) >= 0`.
    pub fn class_rep_inverse(&self) -> Result<Self> {
        Ok(self.inv()?.class_rep())
    }

    /// Representative of the class of `-self⁻¹`.
    pub fn class_rep_neg_inverse(&self) -> Result<Self> {
        Ok((-self.inv()?).class_rep())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

forward_owned_binops!(GaussianRational);

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_complex(f, &self.re, &self.im, "i")
    }
}

fn write_complex(f: &mut fmt::Formatter<'_>, re: &Rational, im: &Rational, unit: &str) -> fmt::Result {
    if im.is_zero() {
        return write!(f, "{re}");
    }
    if !re.is_zero() {
        write!(f, "{re}")?;
        if im.is_positive() {
            write!(f, "+")?;
        }
    }
    if im.is_one() {
        write!(f, "{unit}")
    } else if (-im).is_one() {
        write!(f, "-{unit}")
    } else {
        write!(f, "{im}{unit}")
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with rational `a`, `b`
    /// written as `p/q`. A `·` or `*` may separate the coefficient from `i`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '·' && *c != '*')
            .collect();
        let bad = || Error::Parse(format!("invalid complex number {s:?}"));
        if cleaned.is_empty() {
            return Err(bad());
        }
        if let Some(body) = cleaned.strip_suffix('i') {
            // Split at the last sign that is not the leading one.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(idx, _)| idx)
                .last();
            let (re_part, im_part) = match split {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("", body),
            };
            let im = match im_part {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                other => parse_rational(other.strip_prefix('+').unwrap_or(other)).map_err(|_| bad())?,
            };
            let re = if re_part.is_empty() {
                Rational::zero()
            } else {
                parse_rational(re_part).map_err(|_| bad())?
            };
            Ok(GaussianRational::new(re, im))
        } else {
            Ok(GaussianRational::from_rational(
                parse_rational(&cleaned).map_err(|_| bad())?,
            ))
        }
    }
}

/// A rational quaternion `a + b i + c j + d k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(int(a), int(b), int(c), int(d))
    }

    pub fn from_rational(a: Rational) -> Self {
        Quaternion::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    /// `z1 + z2 j`.
    pub fn from_complex_pair(z1: &GaussianRational, z2: &GaussianRational) -> Self {
        Quaternion::new(z1.re.clone(), z1.im.clone(), z2.re.clone(), z2.im.clone())
    }

    /// Splits `self = z1 + z2 j` into complex parts.
    pub fn complex_parts(&self) -> (GaussianRational, GaussianRational) {
        (
            GaussianRational::new(self.a.clone(), self.b.clone()),
            GaussianRational::new(self.c.clone(), self.d.clone()),
        )
    }

    /// `Some(z)` when the j and k parts vanish.
    pub fn as_complex(&self) -> Option<GaussianRational> {
        (self.c.is_zero() && self.d.is_zero())
            .then(|| GaussianRational::new(self.a.clone(), self.b.clone()))
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    pub fn norm_sq(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Quaternion::new(&c.a / &n, &c.b / &n, &c.c / &n, &c.d / &n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quaternion::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            rational_to_f64(&self.a),
            rational_to_f64(&self.b),
            rational_to_f64(&self.c),
            rational_to_f64(&self.d),
        ]
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Quaternion::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Quaternion::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
            &self.d + &rhs.d,
        )
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
            &self.d - &rhs.d,
        )
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    /// Hamilton product.
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

forward_owned_binops!(Quaternion);

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(&self.a, ""), (&self.b, "i"), (&self.c, "j"), (&self.d, "k")];
        let mut wrote = false;
        for (coef, unit) in terms {
            if coef.is_zero() {
                continue;
            }
            if wrote && coef.is_positive() {
                write!(f, "+")?;
            }
            if unit.is_empty() {
                write!(f, "{coef}")?;
            } else if coef.is_one() {
                write!(f, "{unit}")?;
            } else if (-coef).is_one() {
                write!(f, "-{unit}")?;
            } else {
                write!(f, "{coef}{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let minus_one = -Quaternion::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&(&i * &j) * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -k);
    }

    #[test]
    fn j_times_complex_conjugates() {
        let z = Quaternion::new(rat(3, 5), rat(4, 5), int(0), int(0));
        let lhs = &Quaternion::j() * &z;
        let expected = Quaternion::new(int(0), int(0), rat(3, 5), rat(-4, 5));
        assert_eq!(lhs, expected);
        assert_eq!(lhs, &z.conj() * &Quaternion::j());
    }

    #[test]
    fn conj_norm_inverse() {
        let q = Quaternion::from_ints(1, 0, 1, 0);
        assert_eq!(q.conj(), Quaternion::from_ints(1, 0, -1, 0));
        assert_eq!(q.norm_sq(), int(2));
        assert_eq!(Quaternion::j().inv().unwrap(), -Quaternion::j());
        assert_eq!(Quaternion::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(&q * &q.inv().unwrap(), Quaternion::one());
    }

    #[test]
    fn class_representatives() {
        assert_eq!(c("2-3i").class_rep(), c("2+3i"));
        assert_eq!(c("5").class_rep(), c("5"));
        assert_eq!(c("i").class_rep(), c("i"));

        assert_eq!(c("2").class_rep_inverse().unwrap(), c("1/2"));
        assert_eq!(c("3/5+4/5i").class_rep_inverse().unwrap(), c("3/5+4/5i"));
        assert_eq!(c("1+i").class_rep_inverse().unwrap(), c("1/2+1/2i"));
        assert_eq!(GaussianRational::zero().class_rep_inverse(), Err(Error::DivisionByZero));

        assert_eq!(c("1").class_rep_neg_inverse().unwrap(), c("-1"));
        assert_eq!(c("i").class_rep_neg_inverse().unwrap(), c("i"));
        assert_eq!(c("2").class_rep_neg_inverse().unwrap(), c("-1/2"));
        assert_eq!(c("1+i").class_rep_neg_inverse().unwrap(), c("-1/2+1/2i"));
        assert_eq!(GaussianRational::zero().class_rep_neg_inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(c("3/5+4/5·i"), GaussianRational::new(rat(3, 5), rat(4, 5)));
        assert_eq!(c("-i"), GaussianRational::new(int(0), int(-1)));
        assert_eq!(c("1/2-1/2*i"), GaussianRational::new(rat(1, 2), rat(-1, 2)));
        assert_eq!(c("-7/3"), GaussianRational::from_rational(rat(-7, 3)));
        assert_eq!(c("-2i"), GaussianRational::new(int(0), int(-2)));
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1+xi".parse::<GaussianRational>().is_err());
        for s in ["3/5+4/5i", "-i", "i", "7", "-1/2+1/2i", "2i"] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(Quaternion::from_ints(1, -1, 0, 2).to_string(), "1-i+2k");
        assert_eq!(Quaternion::zero().to_string(), "0");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn quaternion_complex_split() {
        let q = Quaternion::from_ints(1, 2, 3, 4);
        let (z1, z2) = q.complex_parts();
        let rebuilt = &z1.to_quaternion() + &(&z2.to_quaternion() * &Quaternion::j());
        assert_eq!(rebuilt, q);
        assert_eq!(Quaternion::from_complex_pair(&z1, &z2), q);
    }
}
