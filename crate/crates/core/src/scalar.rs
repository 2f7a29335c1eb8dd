//! Exact numbers `a + b√5` with rational `a`, `b`.
//!
//! The field ℚ(√5) is large enough for every exact construction in the crate
//! (rational arrangements and the regular pentagon behind the Perles
//! configuration) while keeping sign tests exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse `{0}` as a number")]
pub struct ScalarParseError(pub String);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(x: i64) -> Self {
        Scalar { a: BigRational::from_integer(x.into()), b: BigRational::zero() }
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar { a: BigRational::new(p.into(), q.into()), b: BigRational::zero() }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero() }
    }

    pub fn sqrt5() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with 5b²
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(5.into());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }

    /// Nearest fraction to `x` with denominator at most `max_den`, by
    /// continued fractions.
    pub fn approximate(x: f64, max_den: u64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
        let mut r = x;
        for _ in 0..64 {
            let a = r.floor();
            let ai = BigInt::from(a as i64);
            let p2 = &ai * &p1 + &p0;
            let q2 = &ai * &q1 + &q0;
            if q2 > BigInt::from(max_den) {
                break;
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let frac = r - a;
            if frac.abs() < 1e-15 {
                break;
            }
            r = 1.0 / frac;
            if !r.is_finite() || r.abs() > 1e18 {
                break;
            }
        }
        if q1.is_zero() {
            return None;
        }
        Some(Scalar::rational(BigRational::new(p1, q1)))
    }

    fn conj(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a² − 5b²`, a rational number.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(5.into())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let nm = self.norm();
        let c = self.conj();
        Some(Scalar { a: c.a / &nm, b: c.b / nm })
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                let g: fn(&Scalar, &Scalar) -> Scalar = $body;
                g(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
    };
}

binop!(Add, add, |x, y| Scalar { a: &x.a + &y.a, b: &x.b + &y.b });
binop!(Sub, sub, |x, y| Scalar { a: &x.a - &y.a, b: &x.b - &y.b });
binop!(Mul, mul, |x, y| Scalar {
    a: &x.a * &y.a + &x.b * &y.b * BigRational::from_integer(5.into()),
    b: &x.a * &y.b + &x.b * &y.a,
});
binop!(Div, div, |x, y| x * &y.recip().expect("division by zero"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl From<i64> for Scalar {
    fn from(x: i64) -> Self {
        Scalar::int(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt5", self.b)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return None;
    }
    let r = if let Some((p, q)) = body.split_once('/') {
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        BigRational::new(p.parse().ok()?, q)
    } else if let Some((ip, fp)) = body.split_once('.') {
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let ip: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let fp: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        BigRational::new(ip * &den + fp, den)
    } else {
        BigRational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -r } else { r })
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarParseError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = t.strip_suffix("sqrt5") else {
            return parse_rational(&t).map(Scalar::rational).ok_or_else(err);
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (ra, rb) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = match rb {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            x => parse_rational(x).ok_or_else(err)?,
        };
        Ok(Scalar { a: parse_rational(ra).ok_or_else(err)?, b })
    }
}
