use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient ring of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingTag {
    Int,
    GaussInt,
    Rational,
    QuatInt,
}

/// Exact commutative coefficient ring.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const RING: RingTag;

    fn from_i64(v: i64) -> Self;

    /// Quotient when `self` is an exact multiple of `d`.
    fn div_exact(&self, d: &Self) -> Option<Self>;

    /// A unit `u` such that `u * self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;

    /// Sign and magnitude for rendering; the magnitude is empty for a unit one.
    fn render_parts(&self) -> (bool, String);

    fn parse_coeff(s: &str) -> Option<Self>;
}

/// Coefficient rings with a gcd on coefficients.
pub trait GcdCoeff: Coeff {
    fn gcd(&self, other: &Self) -> Self;
}

impl Coeff for BigInt {
    const RING: RingTag = RingTag::Int;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn render_parts(&self) -> (bool, String) {
        let mag = self.abs();
        let text = if mag.is_one() { String::new() } else { mag.to_string() };
        (self.is_negative(), text)
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl GcdCoeff for BigInt {
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
}

impl Coeff for BigRational {
    const RING: RingTag = RingTag::Rational;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    }

    fn render_parts(&self) -> (bool, String) {
        let mag = self.abs();
        let text = if mag.is_one() { String::new() } else { mag.to_string() };
        (self.is_negative(), text)
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.parse().ok()?;
                let n: BigInt = n.parse().ok()?;
                (!d.is_zero()).then(|| BigRational::new(n, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

/// Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Euclidean division with rounding to the nearest lattice point.
    fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let num = self.clone() * d.conj();
        GaussInt { re: round_div(&num.re, &n), im: round_div(&num.im, &n) }
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + n).div_floor(&(n * &two))
}

impl From<BigInt> for GaussInt {
    fn from(re: BigInt) -> Self {
        GaussInt { re, im: BigInt::zero() }
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.render_parts();
        let mag = if mag.is_empty() { "1".to_string() } else { mag };
        write!(f, "{}{}", if neg { "-" } else { "" }, mag)
    }
}

impl Coeff for GaussInt {
    const RING: RingTag = RingTag::GaussInt;

    fn from_i64(v: i64) -> Self {
        GaussInt::new(v, 0)
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self.clone() * d.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi })
    }

    fn normalizing_unit(&self) -> Self {
        let (x, y) = (&self.re, &self.im);
        if x.is_positive() && !y.is_negative() {
            GaussInt::one()
        } else if !x.is_positive() && y.is_positive() {
            -GaussInt::i()
        } else if x.is_negative() && !y.is_positive() {
            -GaussInt::one()
        } else {
            GaussInt::i()
        }
    }

    fn render_parts(&self) -> (bool, String) {
        if self.im.is_zero() {
            return self.re.render_parts();
        }
        if self.re.is_zero() {
            let (neg, mag) = self.im.render_parts();
            return (neg, format!("{mag}i"));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        let im = self.im.abs();
        let im = if im.is_one() { String::new() } else { im.to_string() };
        (false, format!("({}{}{}i)", self.re, sign, im))
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        if let Some(body) = s.strip_suffix('i') {
            // split "a+b" / "a-b" at the last sign that is not leading
            let split = body
                .char_indices()
                .rev()
                .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
                .map(|(k, _)| k);
            let (re, im) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => BigInt::one(),
                "-" => -BigInt::one(),
                t => t.trim_start_matches('+').parse().ok()?,
            };
            return Some(GaussInt { re: re.parse().ok()?, im });
        }
        Some(GaussInt::from(s.parse::<BigInt>().ok()?))
    }
}

impl GcdCoeff for GaussInt {
    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.clone() - a.div_round(&b) * b.clone();
            a = b;
            b = r;
        }
        let u = a.normalizing_unit();
        u * a
    }
}


/// Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    /// `(re + im*i) / den`.
    pub fn from_ints(re: i64, im: i64, den: i64) -> Self {
        GaussRational {
            re: BigRational::new(re.into(), den.into()),
            im: BigRational::new(im.into(), den.into()),
        }
    }

    pub fn from_gauss(g: &GaussInt) -> Self {
        GaussRational { re: BigRational::from_integer(g.re.clone()), im: BigRational::from_integer(g.im.clone()) }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, o: GaussRational) -> GaussRational {
        GaussRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, o: GaussRational) -> GaussRational {
        GaussRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, o: GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*i", self.re, sign, self.im.abs())
            }
        }
    }
}
