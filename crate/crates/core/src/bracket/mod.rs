//! Bracket polynomial, normalized `f`, Jones polynomial and related checks.

pub(crate) mod state;
mod virt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Sign};
use crate::ring::{a_pow, a_vars, loop_value, Monomial, Poly, Var, Vars};

pub use state::{ArcSystem, EndPairing, OpenStrand, StateCounts};
pub use virt::{construct_virt, construct_virt_with, looks_unknotted, VirtError, VirtResult, VirtSearch};

/// Largest number of classical crossings accepted by the state sum.
pub const MAX_CROSSINGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("diagram has node crossings; resolve them first")]
    NodePresent,
    #[error("{crossings} crossings exceeds the state-sum limit of {max}")]
    TooLarge { crossings: usize, max: usize },
    #[error("expected a single-component diagram, found {0} components")]
    NotAKnot(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `d^k` for `k >= 0`.
pub(crate) fn loop_power(k: usize) -> Poly {
    loop_value().pow(k as u32)
}

/// Sums a state histogram into `sum_S A^e d^loops` for each end pairing.
pub(crate) fn collapse(counts: &StateCounts, pairing: EndPairing, loop_offset: i64) -> Poly {
    let v = a_vars();
    let max_loops = counts.keys().map(|k| k.1).max().unwrap_or(0);
    let powers: Vec<Poly> = (0..=max_loops).map(loop_power).collect();
    let mut acc = Poly::zero(&v);
    let mut keys: Vec<_> = counts.iter().filter(|(k, _)| k.2 == pairing).collect();
    keys.sort_by_key(|(k, _)| **k);
    for (&(e, loops, _), &n) in keys {
        let k = loops as i64 + loop_offset;
        let dp = if k >= 0 { powers[k as usize].clone() } else { Poly::one(&v) };
        let term = (&dp * &a_pow(e)).scale(&(n as i64).into());
        acc = &acc + &term;
    }
    acc
}

pub(crate) fn check_size(d: &Diagram, max: usize) -> Result<(), BracketError> {
    if d.num_nodes() > 0 {
        return Err(BracketError::NodePresent);
    }
    if d.num_crossings() > max {
        return Err(BracketError::TooLarge { crossings: d.num_crossings(), max });
    }
    Ok(())
}

/// Kauffman bracket with `<unknot> = 1`.
pub fn bracket(d: &Diagram) -> Result<Poly, BracketError> {
    bracket_with_limit(d, MAX_CROSSINGS)
}

pub fn bracket_with_limit(d: &Diagram, max: usize) -> Result<Poly, BracketError> {
    check_size(d, max)?;
    if d.num_components() == 0 {
        return Ok(Poly::one(&a_vars()));
    }
    let sys = ArcSystem::new(d.components(), &[], d.crossings());
    Ok(collapse(&sys.enumerate(), EndPairing::Closed, -1))
}

/// `(-A^3)^(-w) <K>`.
pub fn f_poly(d: &Diagram) -> Result<Poly, BracketError> {
    f_with_limit(d, MAX_CROSSINGS)
}

pub fn f_with_limit(d: &Diagram, max: usize) -> Result<Poly, BracketError> {
    let b = bracket_with_limit(d, max)?;
    Ok(normalize(&b, d.writhe()))
}

/// Multiplies a bracket by `(-A^3)^(-w)`.
pub fn normalize(b: &Poly, writhe: i64) -> Poly {
    let f = b * &a_pow(-3 * writhe);
    if writhe % 2 != 0 {
        -f
    } else {
        f
    }
}

/// Jones polynomial `f(t^(-1/4))`.
pub fn jones(d: &Diagram) -> Result<Poly, BracketError> {
    Ok(jones_from_f(&f_poly(d)?))
}

/// Variable set of Jones polynomials: `t` with quarter-integer exponents.
pub fn jones_vars() -> Vars {
    Vars::from_vars(vec![Var { name: "t".into(), denom: 4 }])
}

pub fn jones_from_f(f: &Poly) -> Poly {
    f.substitute(&[("A", Monomial::new(1, "t", -1, 4))])
        .expect("A is the only variable and quarter exponents are allowed")
}

#[derive(Debug, Clone, Serialize)]
pub struct SwitchingReport {
    pub crossing: usize,
    pub k_plus: Poly,
    pub k_minus: Poly,
    pub k_zero: Poly,
    pub holds: bool,
}

/// Checks `A<K+> - A^-1<K-> = (A^2 - A^-2)<K0>` at one crossing.
pub fn verify_switching(d: &Diagram, id: usize) -> Result<SwitchingReport, BracketError> {
    let sign = d.crossing(id)?.sign().ok_or(DiagramError::NodeCrossing(id))?;
    let switched = d.switch(id)?;
    let (plus, minus) = if sign == Sign::Pos { (d, &switched) } else { (&switched, d) };
    let k_plus = bracket(plus)?;
    let k_minus = bracket(minus)?;
    let k_zero = bracket(&d.smooth_oriented(id)?)?;
    let lhs = &(&a_pow(1) * &k_plus) - &(&a_pow(-1) * &k_minus);
    let rhs = &(&a_pow(2) - &a_pow(-2)) * &k_zero;
    Ok(SwitchingReport { crossing: id, holds: lhs == rhs, k_plus, k_minus, k_zero })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectedSumReport {
    pub sum: Diagram,
    pub bracket_sum: Poly,
    pub product: Poly,
    pub holds: bool,
}

/// Builds `d1 # d2` and compares its bracket with the product of brackets.
pub fn connected_sum_check(d1: &Diagram, d2: &Diagram) -> Result<ConnectedSumReport, BracketError> {
    for d in [d1, d2] {
        if d.num_components() != 1 {
            return Err(BracketError::NotAKnot(d.num_components()));
        }
    }
    let sum = d1.connected_sum(d2)?;
    let bracket_sum = bracket(&sum)?;
    let product = &bracket(d1)? * &bracket(d2)?;
    Ok(ConnectedSumReport { holds: bracket_sum == product, sum, bracket_sum, product })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    const TREFOIL: &str = "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)";

    #[test]
    fn trefoil_values() {
        let t = g(TREFOIL);
        assert_eq!(bracket(&t).unwrap().render(), "-A^5 - A^-3 + A^-7");
        assert_eq!(f_poly(&t).unwrap().render(), "A^-4 + A^-12 - A^-16");
        assert_eq!(jones(&t).unwrap().render(), "-t^4 + t^3 + t");
    }

    #[test]
    fn curls() {
        assert_eq!(bracket(&g("(o1+)(u1+)")).unwrap().render(), "-A^3");
        assert_eq!(bracket(&g("(u1+)(o1+)")).unwrap().render(), "-A^3");
        assert_eq!(bracket(&g("(o1-)(u1-)(o2-)(u2-)")).unwrap().render(), "A^-6");
        assert!(f_poly(&g("(o1-)(u1-)")).unwrap().is_one());
    }

    #[test]
    fn unlinks_and_limits() {
        assert!(bracket(&Diagram::unknot()).unwrap().is_one());
        assert_eq!(bracket(&Diagram::unlink(2)).unwrap(), loop_value());
        assert!(matches!(bracket(&g("(o1*)(u1*)")), Err(BracketError::NodePresent)));
        assert!(matches!(bracket_with_limit(&g(TREFOIL), 2), Err(BracketError::TooLarge { .. })));
    }

    #[test]
    fn switching_holds_on_trefoil() {
        for id in 0..3 {
            assert!(verify_switching(&g(TREFOIL), id).unwrap().holds);
        }
    }
}
