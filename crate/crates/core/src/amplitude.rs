//! Tensor amplitudes of diagrams in Morse position and the algebraic
//! relations a cup/cap/R-matrix model must satisfy.
//!
//! Morse words are read bottom to top: the first line is the lowest slice.
//! Each line lists the symbols of one slice from left to right:
//!
//! ```text
//! |   strand passes through       u   cup (creates two strands)
//! n   cap (joins two strands)     x   crossing R     X   crossing R^-1
//! ```
//!
//! Tensors use upper indices for outgoing (upper) strands and lower indices
//! for incoming ones: `R^{ab}_{cd}` maps the bottom pair `(c, d)` to the top
//! pair `(a, b)`, the cup is `M^{ab}` and the cap `M_{ab}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ring::{a_vars, GaussInt, GaussPoly, GaussRational, Rational, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmplitudeError {
    #[error("line {line}: unknown symbol `{symbol}`")]
    Symbol { line: usize, symbol: String },
    #[error("slice {slice} expects {expected} incoming strands, found {found}")]
    Strands { slice: usize, expected: usize, found: usize },
    #[error("word ends with {0} open strands")]
    Open(usize),
    #[error("model has no lambda")]
    NoLambda,
    #[error("lambda must be a unit monomial")]
    LambdaNotUnit,
    #[error("an odd power of lambda^(1/2) needs lambda = A^(2k)")]
    LambdaHalfPower,
    #[error("matrix of size {0} is not a tensor square")]
    NotTensorSquare(usize),
    #[error("zeroth-order term of P R is not the identity")]
    NotIdentityAtZero,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Cup/cap matrices and R-matrices on an `n`-dimensional space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorModel {
    pub dim: usize,
    /// Label of each basis index; lambda enters as `lambda^(label/2)`.
    pub spins: Vec<i64>,
    /// `M^{ab}`, row-major.
    pub cup: Vec<GaussPoly>,
    /// `M_{ab}`, row-major.
    pub cap: Vec<GaussPoly>,
    /// `R^{ab}_{cd}` at `((a n + b) n + c) n + d`.
    pub r: Vec<GaussPoly>,
    pub r_inv: Vec<GaussPoly>,
    /// Oriented cup/cap datum `lambda`, a unit monomial.
    pub lambda: Option<GaussPoly>,
}

fn gp(c: GaussInt, e: i64) -> GaussPoly {
    GaussPoly::monomial(&a_vars(), vec![e], c)
}

fn gzero() -> GaussPoly {
    GaussPoly::zero(&a_vars())
}

impl TensorModel {
    fn i4(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        ((a * self.dim + b) * self.dim + c) * self.dim + d
    }

    pub fn r_at(&self, a: usize, b: usize, c: usize, d: usize) -> &GaussPoly {
        &self.r[self.i4(a, b, c, d)]
    }

    pub fn r_inv_at(&self, a: usize, b: usize, c: usize, d: usize) -> &GaussPoly {
        &self.r_inv[self.i4(a, b, c, d)]
    }

    pub fn cup_at(&self, a: usize, b: usize) -> &GaussPoly {
        &self.cup[a * self.dim + b]
    }

    pub fn cap_at(&self, a: usize, b: usize) -> &GaussPoly {
        &self.cap[a * self.dim + b]
    }

    pub fn with_lambda(mut self, lambda: GaussPoly) -> Self {
        self.lambda = Some(lambda);
        self
    }

    /// Model whose R-matrices are the flip of tensor factors.
    pub fn permutation(dim: usize, cup: Vec<GaussPoly>, cap: Vec<GaussPoly>) -> Self {
        let mut r = vec![gzero(); dim.pow(4)];
        for a in 0..dim {
            for b in 0..dim {
                r[((a * dim + b) * dim + b) * dim + a] = GaussPoly::one(&a_vars());
            }
        }
        let spins = (1..=dim as i64).collect();
        TensorModel { dim, spins, cup, cap, r_inv: r.clone(), r, lambda: None }
    }
}

/// Two-dimensional bracket model: `M = [[0, iA], [-iA^-1, 0]]` for cup and
/// cap, `R^{ab}_{cd} = A M^{ab} M_{cd} + A^-1 d^a_c d^b_d` and `R^-1` with
/// `A` and `A^-1` exchanged.
pub fn bracket_model() -> TensorModel {
    let m = vec![gzero(), gp(GaussInt::new(0, 1), 1), gp(GaussInt::new(0, -1), -1), gzero()];
    let n = 2;
    let mut r = vec![gzero(); 16];
    let mut r_inv = vec![gzero(); 16];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mm = &m[a * n + b] * &m[c * n + d];
                    let dd = if a == c && b == d { 1 } else { 0 };
                    let k = ((a * n + b) * n + c) * n + d;
                    r[k] = &(&mm * &gp(GaussInt::one(), 1)) + &gp(GaussInt::new(dd, 0), -1);
                    r_inv[k] = &(&mm * &gp(GaussInt::one(), -1)) + &gp(GaussInt::new(dd, 0), 1);
                }
            }
        }
    }
    TensorModel { dim: n, spins: vec![1, 2], cup: m.clone(), cap: m, r, r_inv, lambda: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symbol {
    Id,
    Cup,
    Cap,
    Pos,
    Neg,
}

impl Symbol {
    fn arity(self) -> (usize, usize) {
        match self {
            Symbol::Id => (1, 1),
            Symbol::Cup => (0, 2),
            Symbol::Cap => (2, 0),
            Symbol::Pos | Symbol::Neg => (2, 2),
        }
    }

    fn glyph(self) -> char {
        match self {
            Symbol::Id => '|',
            Symbol::Cup => 'u',
            Symbol::Cap => 'n',
            Symbol::Pos => 'x',
            Symbol::Neg => 'X',
        }
    }
}

/// A closed diagram in Morse position, slices listed bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseWord {
    slices: Vec<Vec<Symbol>>,
}

impl MorseWord {
    pub fn new(slices: Vec<Vec<Symbol>>) -> Result<Self, AmplitudeError> {
        let mut strands = 0;
        for (k, s) in slices.iter().enumerate() {
            let (ins, outs) = s.iter().fold((0, 0), |(i, o), sym| (i + sym.arity().0, o + sym.arity().1));
            if ins != strands {
                return Err(AmplitudeError::Strands { slice: k, expected: strands, found: ins });
            }
            strands = outs;
        }
        if strands != 0 {
            return Err(AmplitudeError::Open(strands));
        }
        Ok(MorseWord { slices })
    }

    pub fn slices(&self) -> &[Vec<Symbol>] {
        &self.slices
    }

    /// Closure of a braid word on `strands` strands: generator `k > 0` is
    /// `x` between strands `k` and `k+1`, `-k` is `X`. Return strands run to
    /// the right.
    pub fn braid_closure(strands: usize, word: &[i64]) -> Result<Self, AmplitudeError> {
        let mut slices = Vec::new();
        for k in 0..strands {
            let mut s = vec![Symbol::Id; k];
            s.push(Symbol::Cup);
            s.extend(vec![Symbol::Id; k]);
            slices.push(s);
        }
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if k == 0 || k >= strands {
                return Err(AmplitudeError::Symbol { line: 0, symbol: g.to_string() });
            }
            let mut s = vec![Symbol::Id; k - 1];
            s.push(if g > 0 { Symbol::Pos } else { Symbol::Neg });
            s.extend(vec![Symbol::Id; 2 * strands - k - 1]);
            slices.push(s);
        }
        for k in (0..strands).rev() {
            let mut s = vec![Symbol::Id; k];
            s.push(Symbol::Cap);
            s.extend(vec![Symbol::Id; k]);
            slices.push(s);
        }
        MorseWord::new(slices)
    }

    /// Inserts `piece` (slices that compose to an identity up to the relation
    /// being tested) directly above slice `at`.
    pub fn splice(&self, at: usize, piece: &[Vec<Symbol>]) -> Result<Self, AmplitudeError> {
        let mut slices = self.slices.clone();
        for (k, s) in piece.iter().enumerate() {
            slices.insert(at + 1 + k, s.clone());
        }
        MorseWord::new(slices)
    }
}

impl FromStr for MorseWord {
    type Err = AmplitudeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut slices = Vec::new();
        for (ln, line) in s.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let slice = line
                .split_whitespace()
                .map(|tok| match tok {
                    "|" => Ok(Symbol::Id),
                    "u" => Ok(Symbol::Cup),
                    "n" => Ok(Symbol::Cap),
                    "x" => Ok(Symbol::Pos),
                    "X" => Ok(Symbol::Neg),
                    other => Err(AmplitudeError::Symbol { line: ln + 1, symbol: other.to_string() }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            slices.push(slice);
        }
        MorseWord::new(slices)
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slices {
            let line: Vec<String> = s.iter().map(|x| x.glyph().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Contracts the slice tensors bottom to top; a lone circle evaluates to the
/// loop value.
pub fn evaluate(word: &MorseWord, model: &TensorModel) -> GaussPoly {
    let n = model.dim;
    let mut state: HashMap<Vec<u8>, GaussPoly> = HashMap::new();
    state.insert(Vec::new(), GaussPoly::one(&a_vars()));
    for slice in &word.slices {
        let mut next: HashMap<Vec<u8>, GaussPoly> = HashMap::new();
        for (input, val) in &state {
            let mut partial: Vec<(Vec<u8>, GaussPoly)> = vec![(Vec::new(), val.clone())];
            let mut pos = 0;
            for sym in slice {
                let mut grown = Vec::new();
                for (out, coeff) in &partial {
                    let mut push = |extra: &[u8], c: &GaussPoly| {
                        if !c.is_zero() {
                            let mut o = out.clone();
                            o.extend_from_slice(extra);
                            grown.push((o, coeff * c));
                        }
                    };
                    match sym {
                        Symbol::Id => push(&[input[pos]], &GaussPoly::one(&a_vars())),
                        Symbol::Cup => {
                            for a in 0..n {
                                for b in 0..n {
                                    push(&[a as u8, b as u8], model.cup_at(a, b));
                                }
                            }
                        }
                        Symbol::Cap => push(&[], model.cap_at(input[pos] as usize, input[pos + 1] as usize)),
                        Symbol::Pos | Symbol::Neg => {
                            let (c, d) = (input[pos] as usize, input[pos + 1] as usize);
                            for a in 0..n {
                                for b in 0..n {
                                    let t = if *sym == Symbol::Pos { model.r_at(a, b, c, d) } else { model.r_inv_at(a, b, c, d) };
                                    push(&[a as u8, b as u8], t);
                                }
                            }
                        }
                    }
                }
                pos += sym.arity().0;
                partial = grown;
            }
            for (out, c) in partial {
                let e = next.entry(out).or_insert_with(gzero);
                *e = &*e + &c;
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    state.remove(&Vec::new()).unwrap_or_else(gzero)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    /// `M^{ai} M_{ib} = d^a_b`.
    pub move0: bool,
    /// `R^{ab}_{ij} Rbar^{ij}_{cd} = d^a_c d^b_d`.
    pub move2: bool,
    /// Yang-Baxter equation.
    pub move3: bool,
    /// Sliding a line across a maximum: `R^{ai}_{bc} M_{id} = M_{bi} Rbar^{ia}_{cd}`
    /// and the same with `R` and `Rbar` exchanged.
    pub move4: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.move0 && self.move2 && self.move3 && self.move4
    }
}

fn delta(a: usize, b: usize) -> GaussPoly {
    if a == b {
        GaussPoly::one(&a_vars())
    } else {
        gzero()
    }
}

fn sum(it: impl Iterator<Item = GaussPoly>) -> GaussPoly {
    it.fold(gzero(), |acc, x| &acc + &x)
}

/// Checks moves 0, II, III and IV entrywise.
pub fn check_relations(m: &TensorModel) -> RelationReport {
    let n = m.dim;
    let r = |a, b, c, d| m.r_at(a, b, c, d);
    let idx2 = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let idx4 = || idx2().flat_map(move |(a, b)| idx2().map(move |(c, d)| (a, b, c, d)));
    let move0 = idx2().all(|(a, b)| sum((0..n).map(|i| m.cup_at(a, i) * m.cap_at(i, b))) == delta(a, b));
    let move2 = idx4().all(|(a, b, c, d)| {
        sum(idx2().map(|(i, j)| r(a, b, i, j) * m.r_inv_at(i, j, c, d))) == &delta(a, c) * &delta(b, d)
    });
    let move3 = idx4().all(|(a, b, c, d)| {
        (0..n).flat_map(|e| (0..n).map(move |f| (e, f))).all(|(e, f)| {
            let lhs = sum(idx2().flat_map(|(i, j)| (0..n).map(move |k| (i, j, k))).map(|(i, j, k)| {
                &(r(a, b, i, j) * r(j, c, k, f)) * r(i, k, d, e)
            }));
            let rhs = sum(idx2().flat_map(|(i, j)| (0..n).map(move |k| (i, j, k))).map(|(i, j, k)| {
                &(r(b, c, i, j) * r(a, i, d, k)) * r(k, j, e, f)
            }));
            lhs == rhs
        })
    });
    let rb = |a, b, c, d| m.r_inv_at(a, b, c, d);
    let move4 = idx4().all(|(a, b, c, d)| {
        sum((0..n).map(|i| r(a, i, b, c) * m.cap_at(i, d))) == sum((0..n).map(|i| m.cap_at(b, i) * rb(i, a, c, d)))
            && sum((0..n).map(|i| rb(a, i, b, c) * m.cap_at(i, d)))
                == sum((0..n).map(|i| m.cap_at(b, i) * r(i, a, c, d)))
    });
    RelationReport { move0, move2, move3, move4 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RLambdaReport {
    pub spin_preserving: bool,
    pub r_lambda: bool,
}

/// `R^{ca}_{db} = 0` unless `b + d = a + c` (index labels).
pub fn spin_preserving(m: &TensorModel) -> bool {
    let n = m.dim;
    let s = &m.spins;
    (0..n.pow(4)).all(|k| {
        let (c, a, d, b) = (k / (n * n * n), k / (n * n) % n, k / n % n, k % n);
        s[b] + s[d] == s[a] + s[c] || m.r_at(c, a, d, b).is_zero()
    })
}

/// `lambda^(k/2)` for a unit monomial `lambda`; odd `k` needs coefficient 1
/// and even exponents.
fn lambda_half_pow(u: &GaussPoly, k: i64) -> Result<GaussPoly, AmplitudeError> {
    let (e, c) = u.terms().next().filter(|_| u.num_terms() == 1).ok_or(AmplitudeError::LambdaNotUnit)?;
    let units = [GaussInt::new(1, 0), GaussInt::new(-1, 0), GaussInt::new(0, 1), GaussInt::new(0, -1)];
    if !units.contains(c) {
        return Err(AmplitudeError::LambdaNotUnit);
    }
    if k % 2 != 0 && (*c != GaussInt::one() || e.iter().any(|x| x % 2 != 0)) {
        return Err(AmplitudeError::LambdaHalfPower);
    }
    let coeff = if k % 2 == 0 {
        let base = if k >= 0 { c.clone() } else { c.conj() };
        (0..(k / 2).abs()).fold(GaussInt::one(), |acc, _| acc * base.clone())
    } else {
        GaussInt::one()
    };
    let exps = e.iter().map(|x| x * k / 2).collect();
    Ok(GaussPoly::monomial(u.vars(), exps, coeff))
}

/// Spin preservation and the R-lambda equation
/// `sum_{s,t} lambda^((s-b)/2) lambda^((t-c)/2) R^{bt}_{as} Rbar^{cs}_{dt} = d^a_c d^b_d`.
pub fn check_r_lambda(m: &TensorModel) -> Result<RLambdaReport, AmplitudeError> {
    let lambda = m.lambda.as_ref().ok_or(AmplitudeError::NoLambda)?;
    let n = m.dim;
    let s = &m.spins;
    let mut pows = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let k = s[i] - s[j];
            if let std::collections::hash_map::Entry::Vacant(e) = pows.entry(k) {
                e.insert(lambda_half_pow(lambda, k)?);
            }
        }
    }
    let lp = |i: usize, j: usize| &pows[&(s[i] - s[j])];
    let mut ok = true;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = gzero();
                    for x in 0..n {
                        for t in 0..n {
                            let w = lp(x, b) * lp(t, c);
                            let term = &(&w * m.r_at(b, t, a, x)) * m.r_inv_at(c, x, d, t);
                            acc = &acc + &term;
                        }
                    }
                    if acc != &delta(a, c) * &delta(b, d) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(RLambdaReport { spin_preserving: spin_preserving(m), r_lambda: ok })
}

/// Dense square matrix over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMatrix {
    pub size: usize,
    #[serde(skip)]
    pub data: Vec<GaussRational>,
}

impl CMatrix {
    pub fn zero(size: usize) -> Self {
        CMatrix { size, data: vec![GaussRational::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.data[i * size + i] = GaussRational::one();
        }
        m
    }

    pub fn from_rationals(size: usize, entries: &[Rational]) -> Self {
        CMatrix {
            size,
            data: entries.iter().map(|r| GaussRational::new(r.clone(), Rational::zero())).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRational) {
        self.data[i * self.size + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        CMatrix { size: self.size, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CMatrix { size: self.size, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.size;
        let mut m = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = o.get(k, j);
                    if !y.is_zero() {
                        let cur = m.get(i, j).clone();
                        m.set(i, j, cur + x.clone() * y.clone());
                    }
                }
            }
        }
        m
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (p, q) = (self.size, o.size);
        let mut m = Self::zero(p * q);
        for i in 0..p {
            for j in 0..p {
                for k in 0..q {
                    for l in 0..q {
                        m.set(i * q + k, j * q + l, self.get(i, j).clone() * o.get(k, l).clone());
                    }
                }
            }
        }
        m
    }
}

fn factor_dim(m: &CMatrix) -> Result<usize, AmplitudeError> {
    let n = (m.size as f64).sqrt().round() as usize;
    if n * n != m.size || n == 0 {
        return Err(AmplitudeError::NotTensorSquare(m.size));
    }
    Ok(n)
}

/// `x^{12}`, `x^{13}`, `x^{23}` on the triple tensor power.
fn legs(x: &CMatrix, n: usize) -> (CMatrix, CMatrix, CMatrix) {
    let id = CMatrix::identity(n);
    let x12 = x.kron(&id);
    let x23 = id.kron(x);
    // conjugate x12 by the swap of the second and third factors
    let mut p23 = CMatrix::zero(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                p23.set((a * n + b) * n + c, (a * n + c) * n + b, GaussRational::one());
            }
        }
    }
    let x13 = p23.mul(&x12).mul(&p23);
    (x12, x13, x23)
}

/// `[r13, r23] + [r12, r23] + [r12, r13] = 0`.
pub fn check_classical_ybe(r: &CMatrix) -> Result<bool, AmplitudeError> {
    let n = factor_dim(r)?;
    let (r12, r13, r23) = legs(r, n);
    Ok(r13.commutator(&r23).add(&r12.commutator(&r23)).add(&r12.commutator(&r13)).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InfinitesimalReport {
    /// `[t12, t13 + t23] = 0`.
    pub first: bool,
    /// `[t12 + t13, t23] = 0`.
    pub second: bool,
    /// `[t12, t13] + [t13, t23] = 0`.
    pub mixed: bool,
}

/// The infinitesimal braid relations for `t`.
pub fn infinitesimal_relations(t: &CMatrix) -> Result<InfinitesimalReport, AmplitudeError> {
    let n = factor_dim(t)?;
    let (t12, t13, t23) = legs(t, n);
    Ok(InfinitesimalReport {
        first: t12.commutator(&t13.add(&t23)).is_zero(),
        second: t12.add(&t13).commutator(&t23).is_zero(),
        mixed: t12.commutator(&t13).add(&t13.commutator(&t23)).is_zero(),
    })
}

/// True when `t` satisfies both infinitesimal braid relations.
pub fn check_infinitesimal(t: &CMatrix) -> Result<bool, AmplitudeError> {
    let r = infinitesimal_relations(t)?;
    Ok(r.first && r.second)
}

/// First-order data of `P R` under `A = e^(h/4)`: returns `(P R at h = 0, r)`
/// with rows indexed by the outgoing pair and columns by the incoming pair.
pub fn series_r(m: &TensorModel) -> Result<(CMatrix, CMatrix), AmplitudeError> {
    let n = m.dim;
    let mut zeroth = CMatrix::zero(n * n);
    let mut first = CMatrix::zero(n * n);
    let a_index = a_vars().index("A").expect("A is defined");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let p = m.r_at(b, a, c, d);
                    let den = p.vars().get(a_index).denom as i64;
                    let mut z = GaussRational::zero();
                    let mut f = GaussRational::zero();
                    for (e, coeff) in p.terms() {
                        let g = GaussRational::from_gauss(coeff);
                        f = f + g.scale(&Rational::new(e[a_index].into(), (4 * den).into()));
                        z = z + g;
                    }
                    zeroth.set(a * n + b, c * n + d, z);
                    first.set(a * n + b, c * n + d, f);
                }
            }
        }
    }
    if zeroth != CMatrix::identity(n * n) {
        return Err(AmplitudeError::NotIdentityAtZero);
    }
    Ok((zeroth, first))
}
