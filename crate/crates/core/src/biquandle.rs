//! Linear biquandles: the Alexander biquandle and its polynomial `G_K(s,t)`,
//! the quaternionic biquandle with its Study determinant, and axiom checks.
//!
//! Edges between consecutive classical passes are the generators. At a
//! crossing with over-in `a`, under-in `b`, over-out `c` and under-out `d`,
//! a positive crossing imposes `(d, c) = S(a, b)` and a negative one
//! `(c, d) = S^-1(b, a)`, where `S(a, b) = (b_a, a^b)`. So the over strand
//! leaves as `a^b` and the under strand as `b_a`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, Strand};
use crate::ring::{
    bareiss_det, laurent_gcd, study_det, GaussPoly, Poly, QuatLaurent, RingError, RingMatrix, UnitGroup, Vars,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiquandleError {
    #[error("diagram has no classical crossings")]
    NoCrossings,
    #[error("diagram has node crossings")]
    NodePresent,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The variables `s, t`.
pub fn st_vars() -> Vars {
    thread_local! {
        static ST: Vars = Vars::new(&["s", "t"]);
    }
    ST.with(|v| v.clone())
}

fn st(e_s: i64, e_t: i64) -> Poly {
    Poly::monomial(&st_vars(), vec![e_s, e_t], 1.into())
}

/// A 2x2 linear biquandle matrix together with its inverse.
#[derive(Debug, Clone)]
pub struct LinearBiquandle<E> {
    pub s: [[E; 2]; 2],
    pub s_inv: [[E; 2]; 2],
}

impl LinearBiquandle<Poly> {
    /// `b_a = s b`, `a^b = t a + (1 - st) b`.
    pub fn alexander() -> Self {
        let v = st_vars();
        let z = Poly::zero(&v);
        let one = Poly::one(&v);
        LinearBiquandle {
            s: [[z.clone(), st(1, 0)], [st(0, 1), &one - &st(1, 1)]],
            s_inv: [[&one - &st(-1, -1), st(0, -1)], [st(-1, 0), z]],
        }
    }
}

impl LinearBiquandle<QuatLaurent> {
    /// `S = [[1+i, jt], [-jt^-1, 1+i]]`.
    pub fn quaternionic() -> Self {
        let one_i = QuatLaurent::from_ints(1, 1, 0, 0);
        let one_mi = QuatLaurent::from_ints(1, -1, 0, 0);
        LinearBiquandle {
            s: [[one_i.clone(), QuatLaurent::jt_pow(1)], [-&QuatLaurent::jt_pow(-1), one_i]],
            s_inv: [[one_mi.clone(), -&QuatLaurent::jt_pow(1)], [QuatLaurent::jt_pow(-1), one_mi]],
        }
    }
}

/// Over-in, under-in, over-out and under-out edge of every crossing.
fn crossing_edges(d: &Diagram) -> (usize, Vec<[usize; 4]>) {
    let mut edges = vec![[0usize; 4]; d.num_crossings()];
    let mut base = 0;
    for comp in d.components() {
        let m = comp.len();
        for (k, p) in comp.iter().enumerate() {
            let (i, o) = (base + (k + m - 1) % m, base + k);
            match p.strand {
                Strand::Over => {
                    edges[p.crossing][0] = i;
                    edges[p.crossing][2] = o;
                }
                Strand::Under => {
                    edges[p.crossing][1] = i;
                    edges[p.crossing][3] = o;
                }
            }
        }
        base += m;
    }
    (base, edges)
}

fn check_input(d: &Diagram) -> Result<(), BiquandleError> {
    if d.num_nodes() > 0 {
        return Err(BiquandleError::NodePresent);
    }
    if d.num_crossings() == 0 {
        return Err(BiquandleError::NoCrossings);
    }
    Ok(())
}

/// Relation matrix (rows: relations, columns: edges). Crossingless
/// components contribute no edges.
fn relation_matrix<E: Clone>(
    d: &Diagram,
    bq: &LinearBiquandle<E>,
    zero: E,
    one: E,
    add: impl Fn(&E, &E) -> E,
    neg: impl Fn(&E) -> E,
) -> RingMatrix<E> {
    let (n_edges, edges) = crossing_edges(d);
    let mut rows: Vec<Vec<E>> = Vec::with_capacity(2 * edges.len());
    for (id, &[a, b, c, dd]) in edges.iter().enumerate() {
        let positive = d.crossings()[id].sign().map(|s| s.value() > 0).unwrap_or(true);
        // out_k - sum_j M_kj in_j = 0
        let (m, ins, outs) = if positive { (&bq.s, [a, b], [dd, c]) } else { (&bq.s_inv, [b, a], [c, dd]) };
        for k in 0..2 {
            let mut row = vec![zero.clone(); n_edges];
            row[outs[k]] = add(&row[outs[k]], &one);
            for j in 0..2 {
                row[ins[j]] = add(&row[ins[j]], &neg(&m[k][j]));
            }
            rows.push(row);
        }
    }
    RingMatrix::from_rows(rows).expect("rows share the edge count")
}

/// Alexander biquandle relation matrix over `Z[s^±1, t^±1]`.
pub fn abq_matrix(d: &Diagram) -> Result<RingMatrix<Poly>, BiquandleError> {
    check_input(d)?;
    let v = st_vars();
    Ok(relation_matrix(d, &LinearBiquandle::alexander(), Poly::zero(&v), Poly::one(&v), |x, y| x + y, |x| -x))
}

fn has_free_loop(d: &Diagram) -> bool {
    d.components().iter().any(|c| c.is_empty())
}

/// `G_K(s,t)`: the unit-normalized determinant of the Alexander biquandle
/// presentation. A crossingless component gives a free generator, so
/// `G = 0`; in particular `G` of a crossingless diagram is zero.
pub fn generalized_alexander(d: &Diagram) -> Result<Poly, BiquandleError> {
    if d.num_nodes() == 0 && (d.num_crossings() == 0 || has_free_loop(d)) {
        return Ok(Poly::zero(&st_vars()));
    }
    let m = abq_matrix(d)?;
    let det = bareiss_det(&m)?;
    Ok(det.unit_normalize(&UnitGroup::over(&["s", "t"])))
}

/// Quaternionic relation matrix.
pub fn quaternionic_matrix(d: &Diagram) -> Result<RingMatrix<QuatLaurent>, BiquandleError> {
    check_input(d)?;
    Ok(relation_matrix(
        d,
        &LinearBiquandle::quaternionic(),
        QuatLaurent::zero(),
        QuatLaurent::one(),
        |x, y| x + y,
        |x| -x,
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct QuaternionicReport {
    /// Study determinant of the full presentation, unit-normalized.
    pub determinant: GaussPoly,
    /// Gcd of the Study determinants of all codimension-one minors.
    pub codim1_gcd: GaussPoly,
}

/// Study determinant of the presentation and the gcd of its codimension-one
/// minors (every choice of deleted row and column).
pub fn kishino_invariant(d: &Diagram) -> Result<QuaternionicReport, BiquandleError> {
    let m = quaternionic_matrix(d)?;
    let units = UnitGroup::over(&["t"]);
    let determinant = study_det(&m)?.unit_normalize(&units);
    let n = m.rows();
    if n == 1 {
        let one = GaussPoly::one(determinant.vars());
        return Ok(QuaternionicReport { determinant, codim1_gcd: one });
    }
    let minors: Vec<GaussPoly> = (0..n * n)
        .into_par_iter()
        .map(|k| study_det(&m.minor(k / n, k % n)))
        .collect::<Result<_, _>>()?;
    let codim1_gcd = laurent_gcd(&minors)?;
    Ok(QuaternionicReport { determinant, codim1_gcd })
}

/// Result of eliminating generators that some relation expresses with a unit
/// coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct ReducedPresentation {
    /// Indices (original edge numbers) of the surviving generators.
    pub generators: Vec<usize>,
    /// Nonzero remaining relations over the surviving generators.
    pub relations: Vec<Vec<Poly>>,
}

fn unit_term(p: &Poly) -> bool {
    p.num_terms() == 1 && p.terms().all(|(_, c)| c == &1.into() || c == &(-1).into())
}

/// Tietze-style reduction of a commutative presentation matrix.
pub fn reduce_presentation(m: &RingMatrix<Poly>) -> ReducedPresentation {
    let mut rows: Vec<Vec<Poly>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut alive: Vec<bool> = vec![true; m.cols()];
    loop {
        let pick = rows.iter().enumerate().find_map(|(r, row)| {
            (0..row.len()).rev().find(|&j| alive[j] && unit_term(&row[j])).map(|j| (r, j))
        });
        let Some((r, j)) = pick else { break };
        let pivot_row = rows.remove(r);
        let pivot = pivot_row[j].clone();
        let inv = Poly::one(pivot.vars()).div_exact(&pivot).expect("unit");
        for row in rows.iter_mut() {
            if row[j].is_zero() {
                continue;
            }
            let factor = &row[j] * &inv;
            for k in 0..row.len() {
                row[k] = &row[k] - &(&factor * &pivot_row[k]);
            }
        }
        alive[j] = false;
    }
    let generators: Vec<usize> = (0..alive.len()).filter(|&j| alive[j]).collect();
    let relations = rows
        .into_iter()
        .map(|row| generators.iter().map(|&j| row[j].clone()).collect::<Vec<_>>())
        .filter(|row: &Vec<Poly>| row.iter().any(|p| !p.is_zero()))
        .collect();
    ReducedPresentation { generators, relations }
}

/// A presentation whose relations are all multiples of one relation
/// `factor * (sum_k coefficients[k] x_k)`.
#[derive(Debug, Clone, Serialize)]
pub struct SingleRelation {
    pub factor: Poly,
    pub coefficients: Vec<Poly>,
}

/// Detects a rank-one reduced presentation and splits off the common factor,
/// choosing it so that some coefficient is a unit.
pub fn single_relation(red: &ReducedPresentation) -> Option<SingleRelation> {
    let first = red.relations.first()?;
    let rank_one = red.relations.iter().all(|r| {
        (0..r.len()).all(|i| (0..r.len()).all(|j| &r[i] * &first[j] == &r[j] * &first[i]))
    });
    if !rank_one {
        return None;
    }
    for pivot in first.iter().filter(|p| !p.is_zero()) {
        let coefficients: Option<Vec<Poly>> = first.iter().map(|e| e.div_exact(pivot)).collect();
        if let Some(coefficients) = coefficients {
            let factor = pivot.unit_normalize(&UnitGroup::over(&["s", "t"]));
            let scale = pivot.div_exact(&factor)?;
            let coefficients = coefficients.iter().map(|c| c * &scale).collect();
            return Some(SingleRelation { factor, coefficients });
        }
    }
    None
}

/// Whether `p` is `± s^i t^j`.
pub fn is_unit(p: &Poly) -> bool {
    unit_term(p)
}

/// Linear form `p x + q y` for a binary operation `x op y`.
#[derive(Debug, Clone)]
pub struct LinearOp {
    pub p: Poly,
    pub q: Poly,
}

/// The four operations `a^b`, `a_b`, `a^{b̄}`, `a_{b̄}` as linear forms.
#[derive(Debug, Clone)]
pub struct LinearOps {
    pub up: LinearOp,
    pub down: LinearOp,
    pub up_bar: LinearOp,
    pub down_bar: LinearOp,
}

impl LinearOps {
    pub fn alexander() -> Self {
        let v = st_vars();
        let z = Poly::zero(&v);
        let one = Poly::one(&v);
        LinearOps {
            up: LinearOp { p: st(0, 1), q: &one - &st(1, 1) },
            down: LinearOp { p: st(1, 0), q: z.clone() },
            up_bar: LinearOp { p: st(0, -1), q: &one - &st(-1, -1) },
            down_bar: LinearOp { p: st(-1, 0), q: z },
        }
    }

    /// `a^b = a_b = a^{b̄} = a_{b̄} = a`.
    pub fn trivial() -> Self {
        let v = st_vars();
        let id = LinearOp { p: Poly::one(&v), q: Poly::zero(&v) };
        LinearOps { up: id.clone(), down: id.clone(), up_bar: id.clone(), down_bar: id }
    }
}

type Form = [Poly; 3];

fn apply(op: &LinearOp, x: &Form, y: &Form) -> Form {
    std::array::from_fn(|k| &(&op.p * &x[k]) + &(&op.q * &y[k]))
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub axiom2: bool,
    pub axiom4: bool,
    /// Checked only for finite tables.
    pub axiom1: Option<bool>,
    pub axiom3: Option<bool>,
}

/// Checks the inverse axiom (2) and the Yang-Baxter axiom (4) identically on
/// generic elements `a, b, c`.
pub fn check_biquandle_axioms(ops: &LinearOps) -> AxiomReport {
    let v = ops.up.p.vars().clone();
    let e = |k: usize| -> Form { std::array::from_fn(|i| if i == k { Poly::one(&v) } else { Poly::zero(&v) }) };
    let (a, b, c) = (e(0), e(1), e(2));
    let (up, down, upb, downb) = (&ops.up, &ops.down, &ops.up_bar, &ops.down_bar);
    let axiom2 = apply(upb, &apply(up, &a, &b), &apply(down, &b, &a)) == a
        && apply(downb, &apply(down, &b, &a), &apply(up, &a, &b)) == b
        && apply(up, &apply(upb, &a, &b), &apply(downb, &b, &a)) == a
        && apply(down, &apply(downb, &b, &a), &apply(upb, &a, &b)) == b;
    let ybe = |up: &LinearOp, down: &LinearOp| {
        let a_b = apply(up, &a, &b);
        let b_a = apply(down, &b, &a);
        let c_b = apply(down, &c, &b);
        let b_c = apply(up, &b, &c);
        let first = apply(up, &a_b, &c) == apply(up, &apply(up, &a, &c_b), &b_c);
        let second = apply(down, &c_b, &a) == apply(down, &apply(down, &c, &a_b), &b_a);
        let third = apply(up, &b_a, &apply(down, &c, &a_b)) == apply(down, &b_c, &apply(up, &a, &c_b));
        first && second && third
    };
    AxiomReport { axiom2, axiom4: ybe(up, down) && ybe(upb, downb), axiom1: None, axiom3: None }
}

/// A biquandle on `{0..n}` given by operation tables `op[a][b]`.
#[derive(Debug, Clone)]
pub struct FiniteBiquandle {
    pub up: Vec<Vec<usize>>,
    pub down: Vec<Vec<usize>>,
    pub up_bar: Vec<Vec<usize>>,
    pub down_bar: Vec<Vec<usize>>,
}

impl FiniteBiquandle {
    /// Linear Alexander biquandle over `Z/n` at integer values of `s, t`
    /// (both units mod `n`).
    pub fn alexander_mod(n: usize, s: usize, t: usize) -> Option<Self> {
        let inv = |x: usize| (1..n).find(|&y| x * y % n == 1);
        let (si, ti) = (inv(s % n)?, inv(t % n)?);
        let table = |f: &dyn Fn(usize, usize) -> usize| (0..n).map(|a| (0..n).map(|b| f(a, b) % n).collect()).collect();
        let one_st = (n + 1 - s * t % n) % n;
        let one_st_inv = (n + 1 - si * ti % n) % n;
        Some(FiniteBiquandle {
            up: table(&|a, b| t * a + one_st * b),
            down: table(&|a, _| s * a),
            up_bar: table(&|a, b| ti * a + one_st_inv * b),
            down_bar: table(&|a, _| si * a),
        })
    }

    pub fn check(&self) -> AxiomReport {
        let n = self.up.len();
        let (up, down, upb, downb) = (&self.up, &self.down, &self.up_bar, &self.down_bar);
        let all = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|a| (0..n).all(|b| f(a, b)));
        let axiom1 = (0..n).all(|a| {
            (0..n).any(|x| x == down[a][x] && a == up[x][a]) && (0..n).any(|y| y == upb[a][y] && a == downb[y][a])
        });
        let axiom2 = all(&|a, b| {
            upb[up[a][b]][down[b][a]] == a
                && downb[down[b][a]][up[a][b]] == b
                && up[upb[a][b]][downb[b][a]] == a
                && down[downb[b][a]][upb[a][b]] == b
        });
        let axiom3 = all(&|a, b| {
            (0..n).any(|x| {
                down[x][b] == a && {
                    let y = up[b][x];
                    upb[y][a] == b && downb[a][y] == x
                }
            }) && (0..n).any(|t| {
                up[t][a] == b && {
                    let z = down[a][t];
                    downb[z][b] == a && upb[b][z] == t
                }
            })
        });
        let ybe = |up: &Vec<Vec<usize>>, down: &Vec<Vec<usize>>| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        up[up[a][b]][c] == up[up[a][down[c][b]]][up[b][c]]
                            && down[down[c][b]][a] == down[down[c][up[a][b]]][down[b][a]]
                            && up[down[b][a]][down[c][up[a][b]]] == down[up[b][c]][up[a][down[c][b]]]
                    })
                })
            })
        };
        AxiomReport { axiom2, axiom4: ybe(up, down) && ybe(upb, downb), axiom1: Some(axiom1), axiom3: Some(axiom3) }
    }
}

/// Checks `(S x 1)(1 x S)(S x 1) = (1 x S)(S x 1)(1 x S)` for the quaternionic
/// matrix acting on the left.
pub fn quaternionic_ybe() -> bool {
    let s = LinearBiquandle::quaternionic().s;
    let block = |shift: usize| {
        RingMatrix::from_fn(3, 3, |i, j| {
            let inside = |k: usize| k >= shift && k < shift + 2;
            if inside(i) && inside(j) {
                s[i - shift][j - shift].clone()
            } else if i == j {
                QuatLaurent::one()
            } else {
                QuatLaurent::zero()
            }
        })
    };
    let (s1, s2) = (block(0), block(1));
    let lhs = s1.mul_quat(&s2).and_then(|m| m.mul_quat(&s1));
    let rhs = s2.mul_quat(&s1).and_then(|m| m.mul_quat(&s2));
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}
