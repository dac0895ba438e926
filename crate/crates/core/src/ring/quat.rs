use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::poly::{LaurentPoly, Vars};

type P = LaurentPoly<BigInt>;

thread_local! {
    static T_VARS: Vars = Vars::new(&["t"]);
}

/// Variable set of quaternionic polynomials: the single central variable `t`.
pub fn t_vars() -> Vars {
    T_VARS.with(|v| v.clone())
}

/// Quaternion `a + b i + c j + d k` with coefficients in `Z[t, t^-1]`, `t` central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatLaurent {
    parts: [P; 4],
}

impl QuatLaurent {
    pub fn new(a: P, b: P, c: P, d: P) -> Self {
        QuatLaurent { parts: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        let v = t_vars();
        QuatLaurent::new(P::zero(&v), P::zero(&v), P::zero(&v), P::zero(&v))
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let v = t_vars();
        QuatLaurent::new(P::from_i64(&v, a), P::from_i64(&v, b), P::from_i64(&v, c), P::from_i64(&v, d))
    }

    /// Central scalar `p(t)`.
    pub fn scalar(p: P) -> Self {
        let v = t_vars();
        QuatLaurent::new(p, P::zero(&v), P::zero(&v), P::zero(&v))
    }

    /// `j t^e`.
    pub fn jt_pow(e: i64) -> Self {
        let v = t_vars();
        QuatLaurent::new(P::zero(&v), P::zero(&v), P::var_pow(&v, "t", e), P::zero(&v))
    }

    pub fn re(&self) -> &P {
        &self.parts[0]
    }

    pub fn i(&self) -> &P {
        &self.parts[1]
    }

    pub fn j(&self) -> &P {
        &self.parts[2]
    }

    pub fn k(&self) -> &P {
        &self.parts[3]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.parts;
        QuatLaurent::new(a.clone(), -b, -c, -d)
    }

    /// Reduced norm `a^2 + b^2 + c^2 + d^2`.
    pub fn norm(&self) -> P {
        let [a, b, c, d] = &self.parts;
        &(&(a * a) + &(b * b)) + &(&(c * c) + &(d * d))
    }

    pub fn scale(&self, p: &P) -> Self {
        let [a, b, c, d] = &self.parts;
        QuatLaurent::new(a * p, b * p, c * p, d * p)
    }
}

impl Add for &QuatLaurent {
    type Output = QuatLaurent;
    fn add(self, o: &QuatLaurent) -> QuatLaurent {
        let [a, b, c, d] = &self.parts;
        let [e, f, g, h] = &o.parts;
        QuatLaurent::new(a + e, b + f, c + g, d + h)
    }
}

impl Sub for &QuatLaurent {
    type Output = QuatLaurent;
    fn sub(self, o: &QuatLaurent) -> QuatLaurent {
        self + &(-o)
    }
}

impl Neg for &QuatLaurent {
    type Output = QuatLaurent;
    fn neg(self) -> QuatLaurent {
        let [a, b, c, d] = &self.parts;
        QuatLaurent::new(-a, -b, -c, -d)
    }
}

impl Mul for &QuatLaurent {
    type Output = QuatLaurent;
    fn mul(self, o: &QuatLaurent) -> QuatLaurent {
        let [a1, b1, c1, d1] = &self.parts;
        let [a2, b2, c2, d2] = &o.parts;
        let a = &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2));
        let b = &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2));
        let c = &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2));
        let d = &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2));
        QuatLaurent::new(a, b, c, d)
    }
}

impl fmt::Display for QuatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (p, unit) in self.parts.iter().zip(["", "i", "j", "k"]) {
            if p.is_zero() {
                continue;
            }
            if unit.is_empty() {
                parts.push(format!("({p})"));
            } else {
                parts.push(format!("({p})*{unit}"));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
