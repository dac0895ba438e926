use super::coeff::{Coeff, GcdCoeff};
use super::poly::{LaurentPoly, UnitGroup, Vars};
use super::RingError;

/// Dense univariate polynomial, index = degree.
type Dense<C> = Vec<C>;

fn trim<C: Coeff>(mut p: Dense<C>) -> Dense<C> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content<C: GcdCoeff>(p: &Dense<C>) -> C {
    p.iter().fold(C::zero(), |g, c| g.gcd(c))
}

fn primitive<C: GcdCoeff>(p: &Dense<C>) -> Dense<C> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x.div_exact(&c).expect("content divides")).collect()
}

/// Pseudo-remainder of `a` by `b`.
fn prem<C: Coeff>(a: &Dense<C>, b: &Dense<C>) -> Dense<C> {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = x.clone() * lb.clone();
        }
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = r[idx].clone() - lr.clone() * bc.clone();
        }
        r = trim(r);
    }
    r
}

fn dense_gcd<C: GcdCoeff>(a: Dense<C>, b: Dense<C>) -> Dense<C> {
    let g = content(&a).gcd(&content(&b));
    let (mut a, mut b) = (primitive(&a), primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Vec::new();
    }
    a.iter().map(|c| c.clone() * g.clone()).collect()
}

fn to_dense<C: Coeff>(p: &LaurentPoly<C>) -> Dense<C> {
    let lo = p.trailing().map_or(0, |(e, _)| e[0]);
    let hi = p.leading().map_or(0, |(e, _)| e[0]);
    let mut d = vec![C::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        d[(e[0] - lo) as usize] = c.clone();
    }
    trim(d)
}

fn from_dense<C: Coeff>(vars: &Vars, d: &Dense<C>) -> LaurentPoly<C> {
    LaurentPoly::from_terms(vars, d.iter().enumerate().map(|(k, c)| (vec![k as i64], c.clone())))
}

/// Gcd of univariate Laurent polynomials, canonical up to units.
///
/// Contents and primitive parts are handled separately (Gauss's lemma); the
/// primitive gcd follows the primitive pseudo-remainder sequence.
pub fn laurent_gcd<C: GcdCoeff>(ps: &[LaurentPoly<C>]) -> Result<LaurentPoly<C>, RingError> {
    let first = ps.first().ok_or(RingError::Empty)?;
    let vars = first.vars().clone();
    if vars.len() != 1 {
        return Err(RingError::NotUnivariate(vars.len()));
    }
    let mut acc: Dense<C> = Vec::new();
    for p in ps {
        if p.vars() != &vars {
            return Err(RingError::VariableMismatch { left: first.var_names(), right: p.var_names() });
        }
        if p.is_zero() {
            continue;
        }
        let d = to_dense(p);
        acc = if acc.is_empty() { d } else { dense_gcd(acc, d) };
        if acc.len() == 1 && acc[0].is_one() {
            break;
        }
    }
    Ok(from_dense(&vars, &acc).unit_normalize(&UnitGroup::all(&vars)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::GaussInt;
    use num_bigint::BigInt;

    fn p(s: &str) -> LaurentPoly<BigInt> {
        LaurentPoly::parse(s, Some(&Vars::new(&["t"]))).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(laurent_gcd(&[p("t^2 - 1"), p("t - 1")]).unwrap(), p("t - 1").unit_normalize(&UnitGroup::over(&["t"])));
        assert_eq!(laurent_gcd(&[p("2*t + 2"), p("4*t^2 - 4")]).unwrap().render(), "2*t + 2");
        let q = p("3*t^-2 - t + 5*t^4");
        assert_eq!(laurent_gcd(&[q.clone(), q.clone()]).unwrap(), q.unit_normalize(&UnitGroup::over(&["t"])));
        assert!(laurent_gcd(&[p("0"), p("0")]).unwrap().is_zero());
    }

    #[test]
    fn gaussian_gcd() {
        let v = Vars::new(&["t"]);
        let a = LaurentPoly::<GaussInt>::parse("(1+i)*t + 2", Some(&v)).unwrap();
        let b = LaurentPoly::<GaussInt>::parse("t^2 - 1", Some(&v)).unwrap();
        let g = laurent_gcd(&[&a * &b, &a * &a]).unwrap();
        assert_eq!(g, a.unit_normalize(&UnitGroup::over(&["t"])));
    }
}
