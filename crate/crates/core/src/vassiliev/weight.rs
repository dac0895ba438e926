//! The su(2) weight system and the four-term relation.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::ChordDiagram;
use crate::ring::{GaussRational, Rational};

type Cx = GaussRational;

type M2 = [[Cx; 2]; 2];

fn m_mul(x: &M2, y: &M2) -> M2 {
    let e = |i: usize, j: usize| x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m_id() -> M2 {
    [[Cx::one(), Cx::zero()], [Cx::zero(), Cx::one()]]
}

/// `T^a = sigma_a / 2`.
fn generators() -> [M2; 3] {
    [
        [[Cx::zero(), Cx::from_ints(1, 0, 2)], [Cx::from_ints(1, 0, 2), Cx::zero()]],
        [[Cx::zero(), Cx::from_ints(0, -1, 2)], [Cx::from_ints(0, 1, 2), Cx::zero()]],
        [[Cx::from_ints(1, 0, 2), Cx::zero()], [Cx::zero(), Cx::from_ints(-1, 0, 2)]],
    ]
}

/// Framed weight: `sum_a tr(prod_points T^a(point))` in circle order.
fn framed(g: &ChordDiagram) -> Rational {
    let k = g.num_chords();
    let mut chord_at = vec![0; g.num_points()];
    for (i, c) in g.chords().iter().enumerate() {
        chord_at[c.tail] = i;
        chord_at[c.head] = i;
    }
    let t = generators();
    let mut total = Cx::zero();
    let mut labels = vec![0usize; k];
    for code in 0..3usize.pow(k as u32) {
        let mut r = code;
        for l in labels.iter_mut() {
            *l = r % 3;
            r /= 3;
        }
        let m = chord_at.iter().fold(m_id(), |acc, &c| m_mul(&acc, &t[labels[c]]));
        total = total + m[0][0].clone() + m[1][1].clone();
    }
    debug_assert!(total.im.is_zero());
    total.re
}

/// Dimension of the defining representation.
pub const SU2_DIM: i64 = 2;

/// `tr(sum_a T^a T^a)`.
pub fn su2_casimir_trace() -> Rational {
    Rational::new(3.into(), 2.into())
}

/// su(2) weight of a chord diagram in the defining representation. The
/// unframed version replaces every chord by itself minus `gamma / D` times
/// the diagram without it.
pub fn su2_weight(g: &ChordDiagram, framed_weight: bool) -> Rational {
    if framed_weight {
        return framed(g);
    }
    let k = g.num_chords();
    let corr = -su2_casimir_trace() / Rational::from_integer(SU2_DIM.into());
    let mut total = Rational::zero();
    for mask in 0u32..1 << k {
        let drop: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let coeff = num_traits::pow(corr.clone(), drop.len());
        total += coeff * framed(&g.without(&drop));
    }
    total
}

/// One four-term instance: the diagrams with the moving end just before and
/// just after each end of the fixed chord. The relation reads
/// `f(d[0]) - f(d[1]) + f(d[2]) - f(d[3]) = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct FourTermTerm {
    pub diagrams: [ChordDiagram; 4],
}

#[derive(Debug, Clone, Serialize)]
pub struct FourTermReport {
    pub chords: usize,
    pub instances: usize,
    pub failures: Vec<FourTermTerm>,
    pub holds: bool,
}

fn from_labels(labels: &[usize]) -> ChordDiagram {
    let word: String = labels.iter().map(|&l| char::from_u32('a' as u32 + l as u32).expect("small label")).collect();
    ChordDiagram::from_word(&word).expect("labels pair up")
}

/// All four-term instances on `n`-chord diagrams.
pub fn four_term_instances(n: usize) -> Vec<FourTermTerm> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for d in ChordDiagram::all_undirected(n) {
        let mut labels = vec![0usize; d.num_points()];
        for (i, c) in d.chords().iter().enumerate() {
            labels[c.tail] = i;
            labels[c.head] = i;
        }
        for a in 0..n {
            for x in 0..d.num_points() {
                if labels[x] == a {
                    continue;
                }
                let mut rest = labels.clone();
                let moving = rest.remove(x);
                let ends: Vec<usize> = (0..rest.len()).filter(|&p| rest[p] == a).collect();
                let place = |pos: usize| {
                    let mut v = rest.clone();
                    v.insert(pos, moving);
                    from_labels(&v)
                };
                out.push(FourTermTerm {
                    diagrams: [place(ends[0]), place(ends[0] + 1), place(ends[1]), place(ends[1] + 1)],
                });
            }
        }
    }
    out
}

/// Checks every four-term instance on `n`-chord diagrams. `eval` must not
/// depend on chord directions or signs.
pub fn check_four_term(eval: impl Fn(&ChordDiagram) -> Rational, n: usize) -> FourTermReport {
    let instances = four_term_instances(n);
    let total = instances.len();
    let mut cache: HashMap<Vec<usize>, Rational> = HashMap::new();
    let failures: Vec<FourTermTerm> = instances
        .into_iter()
        .filter(|t| {
            let v: Vec<Rational> = t
                .diagrams
                .iter()
                .map(|d| cache.entry(d.undirected_key()).or_insert_with(|| eval(d)).clone())
                .collect();
            !(&v[0] - &v[1] + &v[2] - &v[3]).is_zero()
        })
        .collect();
    FourTermReport { chords: n, instances: total, holds: failures.is_empty(), failures }
}
