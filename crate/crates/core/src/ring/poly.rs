use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::coeff::Coeff;
use super::RingError;

/// A polynomial variable. Stored exponents count units of `1/denom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub denom: u8,
}

/// Ordered variable set shared between polynomials.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<Vec<Var>>);

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(Arc::new(names.iter().map(|n| Var { name: n.to_string(), denom: 1 }).collect()))
    }

    pub fn from_vars(vars: Vec<Var>) -> Self {
        Vars(Arc::new(vars))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }

    pub fn get(&self, k: usize) -> &Var {
        &self.0[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Var> {
        self.0.iter()
    }
}

/// Target of a substitution: `sign * var^(num/den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub sign: i8,
    pub var: String,
    pub num: i64,
    pub den: i64,
}

impl Monomial {
    pub fn new(sign: i8, var: &str, num: i64, den: i64) -> Self {
        Monomial { sign, var: var.to_string(), num, den }
    }
}

/// Monomial units `±x^i y^j ...` over the listed variables, together with the
/// scalar units of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub vars: Vec<String>,
}

impl UnitGroup {
    pub fn over(vars: &[&str]) -> Self {
        UnitGroup { vars: vars.iter().map(|s| s.to_string()).collect() }
    }

    pub fn all(vars: &Vars) -> Self {
        UnitGroup { vars: vars.iter().map(|v| v.name.clone()).collect() }
    }
}

/// Exact multivariate Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    vars: Vars,
    terms: BTreeMap<Vec<i64>, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: C) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn from_i64(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, C::from_i64(c))
    }

    pub fn monomial(vars: &Vars, exps: Vec<i64>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// `name^e` with `e` in stored units.
    pub fn var_pow(vars: &Vars, name: &str, e: i64) -> Self {
        let k = vars.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exps = vec![0; vars.len()];
        exps[k] = e;
        Self::monomial(vars, exps, C::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Self {
        let k = vars.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var_pow(vars, name, vars.get(k).denom as i64)
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(vars: &Vars, it: impl IntoIterator<Item = (Vec<i64>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Vec<i64>, &C)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Vec<i64>, &C)> {
        self.terms.iter().next()
    }

    fn check(&self, o: &Self) -> Result<(), RingError> {
        if self.vars != o.vars {
            return Err(RingError::VariableMismatch {
                left: self.var_names(),
                right: o.var_names(),
            });
        }
        Ok(())
    }

    pub fn var_names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, RingError> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.check(o)?;
        let mut acc: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.clone() * c2.clone();
                match acc.get_mut(&e) {
                    Some(old) => *old = old.clone() + c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { vars: self.vars.clone(), terms: acc })
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut terms = BTreeMap::new();
        for (e, x) in &self.terms {
            let y = x.clone() * c.clone();
            if !y.is_zero() {
                terms.insert(e.clone(), y);
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Multiplies by the monomial with stored exponents `shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `e -> map(e)` to every exponent vector (must be injective).
    pub fn map_exponents(&self, vars: &Vars, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        Self::from_terms(vars, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(&self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Componentwise minimum and maximum exponents over all terms.
    fn exponent_box(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.vars.len();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for e in self.terms.keys() {
            for k in 0..n {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        (lo, hi)
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.check(d).ok()?;
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        let (lde, ldc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let lowest: Vec<i64> = self
            .trailing()?
            .0
            .iter()
            .zip(d.trailing()?.0)
            .map(|(a, b)| a - b)
            .collect();
        // per-variable exponent window of any exact quotient
        let (lo_s, hi_s) = self.exponent_box();
        let (lo_d, hi_d) = d.exponent_box();
        let lo: Vec<i64> = lo_s.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_s.iter().zip(&hi_d).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((le, lc)) = rem.leading() {
            let qe: Vec<i64> = le.iter().zip(&lde).map(|(a, b)| a - b).collect();
            let outside = qe.iter().zip(lo.iter().zip(&hi)).any(|(e, (l, h))| e < l || e > h);
            if outside || qe.cmp(&lowest) == Ordering::Less {
                return None;
            }
            let qc = lc.div_exact(&ldc)?;
            let t = Self::monomial(&self.vars, qe, qc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Substitutes each bound variable by a signed monomial with rational exponent.
    /// Exponent denominators of the result must divide 4.
    pub fn substitute(&self, bindings: &[(&str, Monomial)]) -> Result<Self, RingError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        for (name, _) in bindings {
            if self.vars.index(name).is_none() {
                return Err(RingError::UnknownVariable(name.to_string()));
            }
        }
        // result variable list: unbound variables first, then fresh targets
        let mut out: Vec<(String, i64)> = Vec::new();
        for v in self.vars.iter() {
            if !bindings.iter().any(|(n, _)| *n == v.name) {
                out.push((v.name.clone(), v.denom as i64));
            }
        }
        for (_, m) in bindings {
            if m.den == 0 {
                return Err(RingError::BadDenominator(0));
            }
            if !out.iter().any(|(n, _)| *n == m.var) {
                out.push((m.var.clone(), 1));
            }
        }
        // each source variable maps to (target index, exponent factor num/den per stored unit)
        let mut maps: Vec<(usize, i64, i64, i8)> = Vec::new();
        for v in self.vars.iter() {
            let ds = v.denom as i64;
            match bindings.iter().find(|(n, _)| *n == v.name) {
                Some((_, m)) => {
                    let t = out.iter().position(|(n, _)| *n == m.var).unwrap_or(0);
                    maps.push((t, m.num, m.den * ds, m.sign));
                }
                None => {
                    let t = out.iter().position(|(n, _)| *n == v.name).unwrap_or(0);
                    maps.push((t, 1, ds, 1));
                }
            }
        }
        // common denominators per target
        for (t, num, den, _) in &maps {
            let g = num.gcd(den).max(1);
            let need = den / g;
            let cur = &mut out[*t].1;
            *cur = cur.lcm(&need);
        }
        for (_, d) in &out {
            if ![1, 2, 4].contains(d) {
                return Err(RingError::BadDenominator(*d));
            }
        }
        let vars = Vars::from_vars(
            out.iter().map(|(n, d)| Var { name: n.clone(), denom: *d as u8 }).collect(),
        );
        let mut res = Self::zero(&vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; vars.len()];
            let mut neg = false;
            for (k, &x) in e.iter().enumerate() {
                let (t, num, den, sign) = maps[k];
                let scaled = x * num * out[t].1;
                if scaled % den != 0 {
                    return Err(RingError::BadDenominator(den));
                }
                ne[t] += scaled / den;
                if sign < 0 {
                    let ds = self.vars.get(k).denom as i64;
                    if x % ds != 0 {
                        return Err(RingError::BadDenominator(ds));
                    }
                    if (x / ds) % 2 != 0 {
                        neg = !neg;
                    }
                }
            }
            res.add_term(ne, if neg { -c.clone() } else { c.clone() });
        }
        Ok(res)
    }

    /// Canonical associate: minimum exponent of each unit variable shifted to 0
    /// and the lexicographically smallest term made positive.
    pub fn unit_normalize(&self, units: &UnitGroup) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut shift = vec![0i64; self.vars.len()];
        for (k, v) in self.vars.iter().enumerate() {
            if units.vars.contains(&v.name) {
                shift[k] = -self.terms.keys().map(|e| e[k]).min().unwrap_or(0);
            }
        }
        let p = self.shift(&shift);
        let u = p.trailing().map(|(_, c)| c.normalizing_unit()).unwrap_or_else(C::one);
        p.scale(&u)
    }

    /// Replaces `A` by `A^-1` in every variable.
    pub fn invert_vars(&self) -> Self {
        self.map_exponents(&self.vars, |e| e.iter().map(|x| -x).collect())
    }

    /// Canonical text rendering.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.render_parts();
            let mono = self.render_monomial(e);
            let body = match (mag.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => mag,
                (false, false) => format!("{mag}*{mono}"),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    fn render_monomial(&self, e: &[i64]) -> String {
        let mut parts = Vec::new();
        for (v, &x) in self.vars.iter().zip(e) {
            if x == 0 {
                continue;
            }
            let d = v.denom as i64;
            let g = x.gcd(&d);
            let (p, q) = (x / g, d / g);
            parts.push(match (p, q) {
                (1, 1) => v.name.clone(),
                (p, 1) => format!("{}^{}", v.name, p),
                (p, q) => format!("{}^({}/{})", v.name, p, q),
            });
        }
        parts.join("*")
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coeff> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        self.checked_add(o).expect("polynomial variables differ")
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        self.checked_sub(o).expect("polynomial variables differ")
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        self.checked_mul(o).expect("polynomial variables differ")
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        self.scale(&-C::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, o: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -(&self)
    }
}
