use num_integer::Integer;

use super::coeff::{Coeff, RingTag};
use super::poly::{LaurentPoly, Var, Vars};
use super::RingError;

struct RawTerm<C> {
    coeff: C,
    // (variable, exponent numerator, exponent denominator)
    powers: Vec<(String, i64, i64)>,
}

fn err(text: &str, msg: impl Into<String>) -> RingError {
    RingError::Parse { input: text.to_string(), message: msg.into() }
}

/// Splits at top-level `+`/`-` signs, keeping each sign with its term.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let sign = ch == '+' || ch == '-';
        if sign && depth == 0 && prev != Some('^') && prev != Some('*') {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    }
    out
}

fn parse_exponent(text: &str, e: &str) -> Result<(i64, i64), RingError> {
    let e = e.trim();
    let e = e.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(e);
    match e.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| err(text, format!("bad exponent `{e}`")))?;
            let d: i64 = d.trim().parse().map_err(|_| err(text, format!("bad exponent `{e}`")))?;
            if d <= 0 {
                return Err(err(text, format!("bad exponent `{e}`")));
            }
            let g = n.gcd(&d);
            Ok((n / g, d / g))
        }
        None => Ok((e.parse().map_err(|_| err(text, format!("bad exponent `{e}`")))?, 1)),
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_term<C: Coeff>(text: &str, neg: bool, body: &str) -> Result<RawTerm<C>, RingError> {
    let mut coeff = C::one();
    let mut powers = Vec::new();
    // split on '*' outside parentheses
    let mut depth = 0;
    let mut factors = Vec::new();
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == '*' && depth == 0 {
            factors.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    factors.push(cur);
    for f in factors {
        let f = f.trim();
        if f.is_empty() {
            return Err(err(text, "empty factor"));
        }
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => (b.trim(), Some(e)),
            None => (f, None),
        };
        let gauss_unit = C::RING == RingTag::GaussInt && base == "i";
        if is_ident(base) && !gauss_unit {
            let (n, d) = match exp {
                Some(e) => parse_exponent(text, e)?,
                None => (1, 1),
            };
            powers.push((base.to_string(), n, d));
        } else {
            if exp.is_some() {
                return Err(err(text, format!("exponent on coefficient `{f}`")));
            }
            let c = C::parse_coeff(base).ok_or_else(|| err(text, format!("bad coefficient `{base}`")))?;
            coeff = coeff * c;
        }
    }
    if neg {
        coeff = -coeff;
    }
    Ok(RawTerm { coeff, powers })
}

impl<C: Coeff> LaurentPoly<C> {
    /// Parses the canonical text form, e.g. `-A^5 - A^-3 + A^-7`, `2*s^-1*t`,
    /// `t^(1/4)`. Without `vars`, variables are collected in sorted order.
    pub fn parse(text: &str, vars: Option<&Vars>) -> Result<Self, RingError> {
        let cleaned: String = text.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err(text, "empty polynomial"));
        }
        let mut raw = Vec::new();
        for (neg, body) in split_terms(&cleaned) {
            raw.push(parse_term::<C>(text, neg, &body)?);
        }
        let vars = match vars {
            Some(v) => v.clone(),
            None => {
                let mut names: Vec<(String, i64)> = Vec::new();
                for t in &raw {
                    for (n, _, d) in &t.powers {
                        match names.iter_mut().find(|(m, _)| m == n) {
                            Some((_, den)) => *den = den.lcm(d),
                            None => names.push((n.clone(), *d)),
                        }
                    }
                }
                names.sort();
                for (_, d) in &names {
                    if ![1, 2, 4].contains(d) {
                        return Err(RingError::BadDenominator(*d));
                    }
                }
                Vars::from_vars(names.into_iter().map(|(name, d)| Var { name, denom: d as u8 }).collect())
            }
        };
        let mut p = Self::zero(&vars);
        for t in raw {
            let mut e = vec![0i64; vars.len()];
            for (name, n, d) in &t.powers {
                let k = vars.index(name).ok_or_else(|| err(text, format!("unknown variable `{name}`")))?;
                let den = vars.get(k).denom as i64;
                if (n * den) % d != 0 {
                    return Err(err(text, format!("exponent of `{name}` not a multiple of 1/{den}")));
                }
                e[k] += n * den / d;
            }
            p = &p + &Self::monomial(&vars, e, t.coeff);
        }
        Ok(p)
    }
}
