//! Chord-diagram and Gauss-diagram invariants: subdiagram counting and the
//! degree-three formula, rigid-vertex extension, the Jones top row, the
//! four-term relation and the su(2) weight system.

mod chord;
mod weight;

use std::collections::HashMap;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bracket::{bracket, f_poly, jones, ArcSystem, BracketError};
use crate::diagram::{Crossing, Diagram, DiagramError, Sign};
use crate::ring::{Int, Poly, Rational, RingError};

pub use chord::{gauss_diagram, Chord, ChordDiagram};
pub use weight::{check_four_term, four_term_instances, su2_weight, FourTermReport, FourTermTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VassilievError {
    #[error("expected a single-component diagram, found {0} components")]
    NotAKnot(usize),
    #[error("diagram has node crossings")]
    NodePresent,
    #[error("invalid chord diagram: {0}")]
    Chord(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{nodes} nodes exceeds the expansion limit of {max}")]
    TooManyNodes { nodes: usize, max: usize },
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A directed chord pattern with a rational weight. Unsigned patterns match
/// chords of either sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordConfig {
    pub diagram: ChordDiagram,
    pub signed: bool,
    #[serde(serialize_with = "ser_rational")]
    pub weight: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ChordConfig {
    pub fn new(diagram: ChordDiagram, signed: bool, weight: Rational) -> Result<Self, VassilievError> {
        if diagram.num_chords() == 0 {
            return Err(VassilievError::Config("a configuration needs at least one chord".into()));
        }
        Ok(ChordConfig { diagram, signed, weight })
    }
}

/// `o1 u2 o3 u1 o2 u3 @ 1/2`: tails are `o`, heads `u`; optional `+`/`-`
/// on every item makes the pattern signed; the weight defaults to 1.
impl FromStr for ChordConfig {
    type Err = VassilievError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, weight) = match s.split_once('@') {
            Some((b, w)) => {
                let w = w.trim();
                let r = match w.split_once('/') {
                    Some((n, d)) => {
                        let n: Int = n.trim().parse().map_err(|_| VassilievError::Config(format!("bad weight {w}")))?;
                        let d: Int = d.trim().parse().map_err(|_| VassilievError::Config(format!("bad weight {w}")))?;
                        if d.is_zero() {
                            return Err(VassilievError::Config("zero denominator".into()));
                        }
                        Rational::new(n, d)
                    }
                    None => Rational::from_integer(
                        w.parse().map_err(|_| VassilievError::Config(format!("bad weight {w}")))?,
                    ),
                };
                (b, r)
            }
            None => (s, Rational::one()),
        };
        let mut ends: HashMap<String, (Option<usize>, Option<usize>, Option<i8>)> = HashMap::new();
        let mut order = Vec::new();
        let mut signs_seen = 0;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        for (p, tok) in tokens.iter().enumerate() {
            let tok = tok.trim_matches(|c| c == '(' || c == ')');
            let mut chars = tok.chars();
            let tail = match chars.next() {
                Some('o') | Some('O') => true,
                Some('u') | Some('U') => false,
                _ => return Err(VassilievError::Config(format!("bad item {tok}"))),
            };
            let rest: String = chars.collect();
            let (label, sign) = match rest.chars().last() {
                Some('+') => (&rest[..rest.len() - 1], Some(1)),
                Some('-') => (&rest[..rest.len() - 1], Some(-1)),
                _ => (rest.as_str(), None),
            };
            if label.is_empty() {
                return Err(VassilievError::Config(format!("missing label in {tok}")));
            }
            signs_seen += sign.is_some() as usize;
            let e = ends.entry(label.to_string()).or_insert_with(|| {
                order.push(label.to_string());
                (None, None, None)
            });
            let slot = if tail { &mut e.0 } else { &mut e.1 };
            if slot.replace(p).is_some() {
                return Err(VassilievError::Config(format!("label {label} repeats an end")));
            }
            if let Some(sg) = sign {
                if e.2.replace(sg).is_some_and(|old| old != sg) {
                    return Err(VassilievError::Config(format!("label {label} has two signs")));
                }
            }
        }
        if signs_seen != 0 && signs_seen != tokens.len() {
            return Err(VassilievError::Config("either every item or no item carries a sign".into()));
        }
        let chords = order
            .iter()
            .map(|l| match ends[l] {
                (Some(tail), Some(head), sg) => Ok(Chord { tail, head, sign: sg.unwrap_or(1) }),
                _ => Err(VassilievError::Config(format!("label {l} needs one o and one u"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ChordConfig::new(ChordDiagram::new(chords)?, signs_seen > 0, weight)
    }
}

/// `<cfg | g>`: over every set of chords of `g` whose induced subdiagram is
/// the pattern (up to rotation, directions preserved), the product of their
/// signs. Unweighted.
pub fn count_subdiagrams(cfg: &ChordDiagram, signed: bool, g: &ChordDiagram) -> Int {
    let k = cfg.num_chords();
    let n = g.num_chords();
    if k == 0 {
        return Int::one();
    }
    if k > n {
        return Int::zero();
    }
    let key = cfg.canonical_key(signed);
    let sum: i64 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut acc = 0i64;
            for rest in (first + 1..n).combinations(k - 1) {
                let mut idx = Vec::with_capacity(k);
                idx.push(first);
                idx.extend(rest);
                let sub = g.induced(&idx);
                if sub.canonical_key(signed) == key {
                    acc += idx.iter().map(|&i| g.chords()[i].sign as i64).product::<i64>();
                }
            }
            acc
        })
        .sum();
    Int::from(sum)
}

/// `sum_cfg weight * <cfg | G(d)>`.
pub fn evaluate_formula(configs: &[ChordConfig], d: &Diagram) -> Result<Rational, VassilievError> {
    let g = gauss_diagram(d)?;
    Ok(configs.iter().fold(Rational::zero(), |acc, c| {
        acc + c.weight.clone() * Rational::from_integer(count_subdiagrams(&c.diagram, c.signed, &g))
    }))
}

/// Pattern `A` of the degree-three formula: the three-chord pattern of the
/// positive trefoil.
pub const V3_A: &str = "o1 u2 o3 u1 o2 u3";
/// Pattern `B`: two parallel chords pierced by a third.
pub const V3_B: &str = "o1 u2 o3 u1 u3 o2";

/// The degree-three formula `<A|K> + 1/2 <B|K>`.
pub fn v3_configs() -> Vec<ChordConfig> {
    let a: ChordConfig = V3_A.parse().expect("valid pattern");
    let mut b: ChordConfig = V3_B.parse().expect("valid pattern");
    b.weight = Rational::new(Int::one(), Int::from(2));
    vec![a, b]
}

/// Degree-three invariant: 0 on the unknot, 1 on the right-handed trefoil.
pub fn v3(d: &Diagram) -> Result<Rational, VassilievError> {
    evaluate_formula(&v3_configs(), d)
}

/// Invariant expanded over nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseInvariant {
    Bracket,
    F,
    Jones,
}

impl BaseInvariant {
    fn eval(self, d: &Diagram) -> Result<Poly, BracketError> {
        match self {
            BaseInvariant::Bracket => bracket(d),
            BaseInvariant::F => f_poly(d),
            BaseInvariant::Jones => jones(d),
        }
    }
}

/// Weights `(a, b, c)` of `V(K*) = a V(K+) + b V(K-) + c V(K0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexWeights {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl VertexWeights {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Self {
        VertexWeights { a, b, c }
    }

    /// `(1, -1, 0)`, in the variables of `base`.
    pub fn vassiliev(base: BaseInvariant) -> Self {
        let v = match base {
            BaseInvariant::Jones => crate::bracket::jones_vars(),
            _ => crate::ring::a_vars(),
        };
        VertexWeights { a: Poly::one(&v), b: Poly::from_i64(&v, -1), c: Poly::zero(&v) }
    }
}

/// Largest number of nodes [`rigid_vertex_extend`] expands.
pub const MAX_NODES: usize = 8;

/// Sum over all `3^nodes` replacements of each node by its positive and
/// negative resolutions and its oriented smoothing.
pub fn rigid_vertex_extend(d: &Diagram, w: &VertexWeights, base: BaseInvariant) -> Result<Poly, VassilievError> {
    if d.num_nodes() > MAX_NODES {
        return Err(VassilievError::TooManyNodes { nodes: d.num_nodes(), max: MAX_NODES });
    }
    let Some(id) = d.crossings().iter().position(|c| c.is_node()) else {
        return Ok(base.eval(d)?);
    };
    let plus = rigid_vertex_extend(&d.resolve_node(id, Sign::Pos)?, w, base)?;
    let minus = rigid_vertex_extend(&d.resolve_node(id, Sign::Neg)?, w, base)?;
    let mut acc = w.a.checked_mul(&plus)?.checked_add(&w.b.checked_mul(&minus)?)?;
    if !w.c.is_zero() {
        let zero = rigid_vertex_extend(&d.smooth_oriented(id)?, w, base)?;
        acc = acc.checked_add(&w.c.checked_mul(&zero)?)?;
    }
    Ok(acc)
}

/// Leading-order Jones evaluation of a chord diagram read as a singular
/// knot: `v(K*) = -v(K0) - 2 v(Kinf)`, `v(loop) = -2`, with flat smoothings.
pub fn top_row_eval(g: &ChordDiagram) -> Int {
    let n = g.num_chords();
    let comps = vec![g.as_passes()];
    let crossings = vec![Crossing::Classical(Sign::Pos); n];
    let sys = ArcSystem::new(&comps, &[], &crossings);
    let mut parent = Vec::new();
    let mut total = Int::zero();
    for mask in 0..1u64 << n {
        // bit set: unoriented smoothing
        let (loops, _) = sys.trace(mask, &mut parent);
        let inf = mask.count_ones();
        let term = Int::from(-1).pow(n as u32 - inf) * Int::from(-2).pow(inf + loops as u32);
        total += term;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn config_parsing() {
        let c: ChordConfig = "o1+ u2- o2- u1+ @ -3/4".parse().unwrap();
        assert!(c.signed);
        assert_eq!(c.weight, Rational::new((-3).into(), 4.into()));
        assert!("o1 u2 o2 u1+".parse::<ChordConfig>().is_err());
        assert!("o1 o1".parse::<ChordConfig>().is_err());
        assert!("".parse::<ChordConfig>().is_err());
    }

    #[test]
    fn trefoil_gauss_diagram() {
        let gd = gauss_diagram(&g("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)")).unwrap();
        assert_eq!(gd.num_chords(), 3);
        assert!(gd.chords().iter().all(|c| c.sign == 1));
        assert!(gd.interleaved(0, 1) && gd.interleaved(1, 2) && gd.interleaved(0, 2));
        assert_eq!(gauss_diagram(&Diagram::unknot()).unwrap().num_chords(), 0);
        assert!(matches!(gauss_diagram(&Diagram::unlink(2)), Err(VassilievError::NotAKnot(2))));
    }

    #[test]
    fn counting_edge_cases() {
        let gd = gauss_diagram(&g("(o1+)(o2+)(u1+)(u2+)")).unwrap();
        assert_eq!(count_subdiagrams(&ChordDiagram::empty(), false, &gd), Int::one());
        let a: ChordConfig = V3_A.parse().unwrap();
        assert!(count_subdiagrams(&a.diagram, false, &gd).is_zero());
    }

    #[test]
    fn top_row_values() {
        assert_eq!(top_row_eval(&ChordDiagram::empty()), Int::from(-2));
        assert_eq!(top_row_eval(&ChordDiagram::from_word("123123").unwrap()), Int::from(24));
        assert_eq!(top_row_eval(&ChordDiagram::from_word("121323").unwrap()), Int::from(12));
        assert!(top_row_eval(&ChordDiagram::from_word("11").unwrap()).is_zero());
    }
}
