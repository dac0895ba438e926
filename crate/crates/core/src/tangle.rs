//! Two-string tangles, their bracket vectors, and the Hopf-satellite
//! construction `H(T, U)` with the omega operations.
//!
//! A tangle has ends NW, NE, SW, SE. Strands are oriented open pass
//! sequences; closed components are pass cycles. Every bracket here is the
//! unoriented state sum, so orientations only matter for writhes.
//!
//! Elementary pieces: `[0]` joins NW-NE and SW-SE, `[inf]` joins NW-SW and
//! NE-SE, `[1]` is a positive crossing with over strand NW -> SE and under
//! strand SW -> NE, so that `br([1]) = (A, A^-1)`. `T + S` glues T.NE to
//! S.NW and T.SE to S.SW; `T * S` stacks T above S, gluing T.SW to S.NW and
//! T.SE to S.NE.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bracket::{collapse, f_poly, normalize, ArcSystem, BracketError, EndPairing, OpenStrand, MAX_CROSSINGS};
use crate::diagram::{Crossing, Diagram, DiagramError, Pass, Sign, Strand};
use crate::ring::{a_pow, a_vars, loop_value, Poly, RingError, RingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("{crossings} crossings exceeds the limit of {max}")]
    TooLarge { crossings: usize, max: usize },
    #[error("malformed tangle: {0}")]
    Malformed(String),
    #[error("cannot parse tangle token `{0}`")]
    Parse(String),
    #[error("tangle is not planar: a state joins NW to SE")]
    NotPlanar,
    #[error("matrix is not invertible over Z[A, A^-1]")]
    NotInvertible,
    #[error("no omega candidate up to {0} twists satisfies the conjugation identity")]
    NoOmega(usize),
    #[error("family budget exceeded: member {index} needs {crossings} tangle crossings (limit {max})")]
    Budget { index: usize, crossings: usize, max: usize },
    #[error("crossing {0} is out of range")]
    BadCrossing(usize),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Boundary ends, numbered as the state-sum engine expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum End {
    NW = 0,
    NE = 1,
    SW = 2,
    SE = 3,
}

impl End {
    pub const ALL: [End; 4] = [End::NW, End::NE, End::SW, End::SE];

    fn name(self) -> &'static str {
        match self {
            End::NW => "NW",
            End::NE => "NE",
            End::SW => "SW",
            End::SE => "SE",
        }
    }
}

impl FromStr for End {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        End::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| TangleError::Parse(s.to_string()))
    }
}

/// An oriented open strand from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangleStrand {
    pub start: End,
    pub passes: Vec<Pass>,
    pub end: End,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tangle2 {
    strands: Vec<TangleStrand>,
    loops: Vec<Vec<Pass>>,
    crossings: Vec<Crossing>,
}

/// `(alpha, beta)` with `<T> = alpha <[0]> + beta <[inf]>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketVector {
    pub alpha: Poly,
    pub beta: Poly,
}

impl BracketVector {
    pub fn new(alpha: Poly, beta: Poly) -> Self {
        BracketVector { alpha, beta }
    }

    /// `(<T^N>, <T^D>) = [[d, 1], [1, d]] br(T)`.
    pub fn closure_values(&self) -> (Poly, Poly) {
        let d = loop_value();
        (&(&self.alpha * &d) + &self.beta, &self.alpha + &(&self.beta * &d))
    }

    pub fn apply(m: &RingMatrix<Poly>, v: &BracketVector) -> BracketVector {
        let e = |i: usize| &(m.get(i, 0) * &v.alpha) + &(m.get(i, 1) * &v.beta);
        BracketVector { alpha: e(0), beta: e(1) }
    }
}

impl fmt::Display for BracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha.render(), self.beta.render())
    }
}

/// A strand piece between two glue labels.
struct Piece {
    a: usize,
    passes: Vec<Pass>,
    b: usize,
}

/// Output of gluing pieces along `joins`.
struct Assembled {
    strands: Vec<(End, Vec<Pass>, End)>,
    loops: Vec<Vec<Pass>>,
    crossings: Vec<Crossing>,
}

/// Glues pieces end to end. Labels listed in `outer` become boundary ends;
/// every other label must occur in exactly one join. Pieces are reversed as
/// needed, and crossings meeting exactly one reversed pass change sign.
fn assemble(
    pieces: Vec<Piece>,
    mut loops: Vec<Vec<Pass>>,
    mut crossings: Vec<Crossing>,
    joins: &[(usize, usize)],
    outer: &[(usize, End)],
) -> Assembled {
    let mut partner = std::collections::HashMap::new();
    for &(x, y) in joins {
        partner.insert(x, y);
        partner.insert(y, x);
    }
    let mut at = std::collections::HashMap::new();
    for (k, p) in pieces.iter().enumerate() {
        at.insert(p.a, (k, false));
        at.insert(p.b, (k, true));
    }
    let mut used = vec![false; pieces.len()];
    let mut reversed = vec![false; pieces.len()];
    // Follows pieces from `label` (the start of the next piece).
    let mut follow = |mut label: usize, passes: &mut Vec<Pass>, used: &mut Vec<bool>| -> usize {
        loop {
            let (k, is_b) = at[&label];
            if used[k] {
                return label;
            }
            used[k] = true;
            let p = &pieces[k];
            let far = if is_b {
                reversed[k] = true;
                passes.extend(p.passes.iter().rev());
                p.a
            } else {
                passes.extend(p.passes.iter());
                p.b
            };
            match partner.get(&far) {
                Some(&next) => label = next,
                None => return far,
            }
        }
    };
    let end_of = |label: usize| outer.iter().find(|o| o.0 == label).map(|o| o.1);
    let mut strands = Vec::new();
    for &(label, e) in outer {
        let (k, _) = at[&label];
        if used[k] {
            continue;
        }
        let mut passes = Vec::new();
        let last = follow(label, &mut passes, &mut used);
        strands.push((e, passes, end_of(last).expect("strand ends on the boundary")));
    }
    for k in 0..pieces.len() {
        if !used[k] {
            let mut passes = Vec::new();
            follow(pieces[k].a, &mut passes, &mut used);
            loops.push(passes);
        }
    }
    let mut count = vec![0u8; crossings.len()];
    for (k, p) in pieces.iter().enumerate() {
        if reversed[k] {
            for q in &p.passes {
                count[q.crossing] += 1;
            }
        }
    }
    for (c, n) in crossings.iter_mut().zip(count) {
        if n == 1 {
            if let Crossing::Classical(s) = *c {
                *c = Crossing::Classical(s.flip());
            }
        }
    }
    Assembled { strands, loops, crossings }
}

fn shift(passes: &[Pass], off: usize) -> Vec<Pass> {
    passes.iter().map(|p| Pass { crossing: p.crossing + off, strand: p.strand }).collect()
}

/// Pieces, loops and crossings of several tangles side by side; end `e` of
/// tangle `k` gets label `4k + e`.
fn pool(parts: &[&Tangle2]) -> (Vec<Piece>, Vec<Vec<Pass>>, Vec<Crossing>) {
    let (mut pieces, mut loops, mut crossings) = (Vec::new(), Vec::new(), Vec::new());
    for (k, t) in parts.iter().enumerate() {
        let off = crossings.len();
        for s in &t.strands {
            pieces.push(Piece { a: 4 * k + s.start as usize, passes: shift(&s.passes, off), b: 4 * k + s.end as usize });
        }
        loops.extend(t.loops.iter().map(|l| shift(l, off)));
        crossings.extend_from_slice(&t.crossings);
    }
    (pieces, loops, crossings)
}

impl Tangle2 {
    pub fn new(strands: Vec<TangleStrand>, loops: Vec<Vec<Pass>>, crossings: Vec<Crossing>) -> Result<Self, TangleError> {
        if strands.len() != 2 {
            return Err(TangleError::Malformed(format!("{} open strands (expected 2)", strands.len())));
        }
        let mut ends: Vec<End> = strands.iter().flat_map(|s| [s.start, s.end]).collect();
        ends.sort();
        if ends != End::ALL {
            return Err(TangleError::Malformed("strands must use each end exactly once".into()));
        }
        let mut seen = vec![[0u8; 2]; crossings.len()];
        for p in strands.iter().flat_map(|s| s.passes.iter()).chain(loops.iter().flatten()) {
            if p.crossing >= crossings.len() {
                return Err(TangleError::BadCrossing(p.crossing));
            }
            seen[p.crossing][p.strand as usize] += 1;
        }
        if let Some(k) = seen.iter().position(|s| *s != [1, 1]) {
            return Err(TangleError::Malformed(format!("crossing {} needs one over and one under pass", k + 1)));
        }
        if crossings.iter().any(|c| c.is_node()) {
            return Err(TangleError::Malformed("nodes are not allowed".into()));
        }
        Ok(Tangle2 { strands, loops, crossings })
    }

    fn from_assembled(a: Assembled) -> Self {
        let strands = a.strands.into_iter().map(|(start, passes, end)| TangleStrand { start, passes, end }).collect();
        Tangle2 { strands, loops: a.loops, crossings: a.crossings }
    }

    /// `[0]`: NW-NE and SW-SE.
    pub fn zero() -> Self {
        Tangle2 {
            strands: vec![
                TangleStrand { start: End::NW, passes: vec![], end: End::NE },
                TangleStrand { start: End::SW, passes: vec![], end: End::SE },
            ],
            loops: vec![],
            crossings: vec![],
        }
    }

    /// `[inf]`: NW-SW and NE-SE.
    pub fn infinity() -> Self {
        Tangle2 {
            strands: vec![
                TangleStrand { start: End::NW, passes: vec![], end: End::SW },
                TangleStrand { start: End::NE, passes: vec![], end: End::SE },
            ],
            loops: vec![],
            crossings: vec![],
        }
    }

    /// `[1]` for `positive`, otherwise `[-1]` (over strand SW -> NE).
    pub fn unit(positive: bool) -> Self {
        let (over, under) = if positive { ((End::NW, End::SE), (End::SW, End::NE)) } else { ((End::SW, End::NE), (End::NW, End::SE)) };
        Tangle2 {
            strands: vec![
                TangleStrand { start: over.0, passes: vec![Pass::over(0)], end: over.1 },
                TangleStrand { start: under.0, passes: vec![Pass::under(0)], end: under.1 },
            ],
            loops: vec![],
            crossings: vec![Crossing::Classical(if positive { Sign::Pos } else { Sign::Neg })],
        }
    }

    /// `[k]`: `|k|` horizontal twists.
    pub fn integer(k: i64) -> Self {
        (0..k.unsigned_abs()).fold(Tangle2::zero(), |t, _| t.sum(&Tangle2::unit(k > 0)))
    }

    pub fn strands(&self) -> &[TangleStrand] {
        &self.strands
    }

    pub fn loops(&self) -> &[Vec<Pass>] {
        &self.loops
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// `T + S`.
    pub fn sum(&self, s: &Tangle2) -> Tangle2 {
        let (pieces, loops, crossings) = pool(&[self, s]);
        let joins = [(End::NE as usize, 4 + End::NW as usize), (End::SE as usize, 4 + End::SW as usize)];
        let outer = [(0, End::NW), (4 + 1, End::NE), (2, End::SW), (4 + 3, End::SE)];
        Self::from_assembled(assemble(pieces, loops, crossings, &joins, &outer))
    }

    /// `T * S`: T above S.
    pub fn stack(&self, s: &Tangle2) -> Tangle2 {
        let (pieces, loops, crossings) = pool(&[self, s]);
        let joins = [(End::SW as usize, 4 + End::NW as usize), (End::SE as usize, 4 + End::NE as usize)];
        let outer = [(0, End::NW), (1, End::NE), (4 + 2, End::SW), (4 + 3, End::SE)];
        Self::from_assembled(assemble(pieces, loops, crossings, &joins, &outer))
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Tangle2 {
        let mut t = self.clone();
        for p in t.strands.iter_mut().flat_map(|s| s.passes.iter_mut()).chain(t.loops.iter_mut().flatten()) {
            p.strand = p.strand.other();
        }
        for c in &mut t.crossings {
            if let Crossing::Classical(s) = *c {
                *c = Crossing::Classical(s.flip());
            }
        }
        t
    }

    /// Switches one crossing.
    pub fn flip(&self, id: usize) -> Result<Tangle2, TangleError> {
        if id >= self.crossings.len() {
            return Err(TangleError::BadCrossing(id));
        }
        let mut t = self.clone();
        for p in t.strands.iter_mut().flat_map(|s| s.passes.iter_mut()).chain(t.loops.iter_mut().flatten()) {
            if p.crossing == id {
                p.strand = p.strand.other();
            }
        }
        if let Crossing::Classical(s) = t.crossings[id] {
            t.crossings[id] = Crossing::Classical(s.flip());
        }
        Ok(t)
    }

    fn close(&self, joins: [(End, End); 2]) -> Diagram {
        let (pieces, loops, crossings) = pool(&[self]);
        let joins: Vec<(usize, usize)> = joins.iter().map(|&(x, y)| (x as usize, y as usize)).collect();
        let a = assemble(pieces, loops, crossings, &joins, &[]);
        Diagram::new(a.loops, a.crossings).expect("closure of a valid tangle")
    }

    /// `T^N`: NW-NE and SW-SE joined.
    pub fn numerator(&self) -> Diagram {
        self.close([(End::NW, End::NE), (End::SW, End::SE)])
    }

    /// `T^D`: NW-SW and NE-SE joined.
    pub fn denominator(&self) -> Diagram {
        self.close([(End::NW, End::SW), (End::NE, End::SE)])
    }

    fn arc_system(&self) -> ArcSystem {
        let open: Vec<OpenStrand> = self
            .strands
            .iter()
            .map(|s| OpenStrand { start: s.start as usize, passes: s.passes.clone(), end: s.end as usize })
            .collect();
        ArcSystem::new(&self.loops, &open, &self.crossings)
    }

    /// Sum of the signs of all crossings (for the given strand orientations).
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().filter_map(|c| c.sign()).map(Sign::value).sum()
    }
}

impl fmt::Display for Tangle2 {
    /// `NW o1+ u2- SE; SW u1+ o2- NE; o3+ u3+` (a closed loop); `()` is a
    /// crossingless loop.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pass = |p: &Pass| {
            let s = self.crossings[p.crossing].sign().map_or('+', |s| if s == Sign::Pos { '+' } else { '-' });
            format!("{}{}{}", if p.strand == Strand::Over { 'o' } else { 'u' }, p.crossing + 1, s)
        };
        let mut parts: Vec<String> = self
            .strands
            .iter()
            .map(|s| {
                let mut items = vec![s.start.name().to_string()];
                items.extend(s.passes.iter().map(pass));
                items.push(s.end.name().to_string());
                items.join(" ")
            })
            .collect();
        parts.extend(self.loops.iter().map(|l| if l.is_empty() { "()".to_string() } else { l.iter().map(pass).collect::<Vec<_>>().join(" ") }));
        write!(f, "{}", parts.join("; "))
    }
}

impl FromStr for Tangle2 {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut labels: Vec<String> = Vec::new();
        let mut signs: Vec<Option<Sign>> = Vec::new();
        let mut pass = |tok: &str| -> Result<Pass, TangleError> {
            let bad = || TangleError::Parse(tok.to_string());
            let mut chars = tok.chars();
            let strand = match chars.next() {
                Some('o') => Strand::Over,
                Some('u') => Strand::Under,
                _ => return Err(bad()),
            };
            let rest: &str = chars.as_str();
            let (label, sign) = match rest.chars().last() {
                Some('+') => (&rest[..rest.len() - 1], Sign::Pos),
                Some('-') => (&rest[..rest.len() - 1], Sign::Neg),
                _ => return Err(bad()),
            };
            if label.is_empty() {
                return Err(bad());
            }
            let k = match labels.iter().position(|l| l == label) {
                Some(k) => k,
                None => {
                    labels.push(label.to_string());
                    signs.push(None);
                    labels.len() - 1
                }
            };
            match signs[k] {
                Some(old) if old != sign => return Err(TangleError::Malformed(format!("label {label} carries two signs"))),
                _ => signs[k] = Some(sign),
            }
            Ok(Pass { crossing: k, strand })
        };
        let mut strands = Vec::new();
        let mut loops = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let toks: Vec<&str> = part.split_whitespace().collect();
            if toks == ["()"] {
                loops.push(vec![]);
                continue;
            }
            match (toks[0].parse::<End>(), toks[toks.len() - 1].parse::<End>()) {
                (Ok(a), Ok(b)) if toks.len() >= 2 => {
                    let passes = toks[1..toks.len() - 1].iter().map(|t| pass(t)).collect::<Result<Vec<_>, _>>()?;
                    strands.push(TangleStrand { start: a, passes, end: b });
                }
                _ => loops.push(toks.iter().map(|t| pass(t)).collect::<Result<Vec<_>, _>>()?),
            }
        }
        let crossings = signs.into_iter().map(|s| Crossing::Classical(s.expect("every label has a sign"))).collect();
        Tangle2::new(strands, loops, crossings)
    }
}

/// `br(T)`, by expanding every crossing.
pub fn bracket_vector(t: &Tangle2) -> Result<BracketVector, TangleError> {
    if t.num_crossings() > MAX_CROSSINGS {
        return Err(TangleError::TooLarge { crossings: t.num_crossings(), max: MAX_CROSSINGS });
    }
    let counts = t.arc_system().enumerate();
    if counts.keys().any(|k| k.2 == EndPairing::Crossed) {
        return Err(TangleError::NotPlanar);
    }
    Ok(BracketVector { alpha: collapse(&counts, EndPairing::Zero, 0), beta: collapse(&counts, EndPairing::Infinity, 0) })
}

/// Closure diagrams `(T^N, T^D)`.
pub fn closures(t: &Tangle2) -> (Diagram, Diagram) {
    (t.numerator(), t.denominator())
}

/// `(<T^N>, <T^D>)` from the bracket vector.
pub fn closure_values(t: &Tangle2) -> Result<(Poly, Poly), TangleError> {
    Ok(bracket_vector(t)?.closure_values())
}

/// `br(T + S)` from `br(T)` and `br(S)`: `[0] + B = B + [0] = B`,
/// `[inf] + [inf] = d [inf]`.
pub fn sum_rule(t: &BracketVector, s: &BracketVector) -> BracketVector {
    let d = loop_value();
    BracketVector {
        alpha: &t.alpha * &s.alpha,
        beta: &(&(&t.alpha * &s.beta) + &(&t.beta * &s.alpha)) + &(&(&t.beta * &s.beta) * &d),
    }
}

// Clasp crossings of H(T, U): band 1 carries T, band 2 carries U; strand 0 of
// a band is its outer edge, strand 1 the inner edge. At the top clasp band 1
// is over, at the bottom band 2 is over.
fn clasp(top: bool, s1: usize, s2: usize) -> usize {
    (if top { 0 } else { 4 }) + 2 * s1 + s2
}

/// `H(T, U)`: the numerators of `T` and `U`, each running around one band of
/// a doubled Hopf link. Both tangles sit at the top of their band with north
/// facing outward; the bands clasp with positive crossings when each edge
/// runs counterclockwise from NW to NE.
pub fn hopf_satellite(t: &Tangle2, u: &Tangle2) -> Diagram {
    let (mut pieces, loops, mut crossings) = pool(&[t, u]);
    let off = crossings.len();
    crossings.extend(std::iter::repeat_n(Crossing::Classical(Sign::Pos), 8));
    let p = |x: usize, over: bool| if over { Pass::over(off + x) } else { Pass::under(off + x) };
    // label 8 + 2k / 9 + 2k are the two ends of pattern piece k
    for s1 in 0..2 {
        let passes = vec![p(clasp(false, s1, 0), false), p(clasp(false, s1, 1), false), p(clasp(true, s1, 1), true), p(clasp(true, s1, 0), true)];
        pieces.push(Piece { a: 8 + 2 * s1, passes, b: 9 + 2 * s1 });
    }
    for s2 in 0..2 {
        let passes = vec![p(clasp(true, 0, s2), false), p(clasp(true, 1, s2), false), p(clasp(false, 1, s2), true), p(clasp(false, 0, s2), true)];
        pieces.push(Piece { a: 12 + 2 * s2, passes, b: 13 + 2 * s2 });
    }
    let e = |k: usize, end: End| 4 * k + end as usize;
    let joins = [
        (8, e(0, End::NW)),
        (9, e(0, End::NE)),
        (10, e(0, End::SW)),
        (11, e(0, End::SE)),
        (12, e(1, End::NW)),
        (13, e(1, End::NE)),
        (14, e(1, End::SW)),
        (15, e(1, End::SE)),
    ];
    let a = assemble(pieces, loops, crossings, &joins, &[]);
    Diagram::new(a.loops, a.crossings).expect("satellite of valid tangles")
}

/// Transpose of `br` times `M` times `br`.
fn bilinear(x: &BracketVector, m: &RingMatrix<Poly>, y: &BracketVector) -> Poly {
    let my = BracketVector::apply(m, y);
    &(&x.alpha * &my.alpha) + &(&x.beta * &my.beta)
}

/// `M` with `<H(T, U)> = br(T)^t M br(U)`, from the four basis links.
pub fn clasp_matrix() -> Result<RingMatrix<Poly>, TangleError> {
    let basis = [Tangle2::zero(), Tangle2::infinity()];
    let mut rows = vec![vec![Poly::zero(&a_vars()); 2]; 2];
    for (i, b1) in basis.iter().enumerate() {
        for (j, b2) in basis.iter().enumerate() {
            rows[i][j] = crate::bracket::bracket(&hopf_satellite(b1, b2))?;
        }
    }
    Ok(RingMatrix::from_rows(rows)?)
}

/// `<H(T, U)>` from the bracket vectors and the clasp matrix.
pub fn satellite_bracket(t: &Tangle2, u: &Tangle2, m: &RingMatrix<Poly>) -> Result<Poly, TangleError> {
    Ok(bilinear(&bracket_vector(t)?, m, &bracket_vector(u)?))
}

/// An elementary boundary twist: `H(+-1)` is `T -> T + [+-1]`, `V(+-1)` is
/// `T -> T * [+-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Twist {
    H(i8),
    V(i8),
}

impl Twist {
    pub const ALL: [Twist; 4] = [Twist::H(1), Twist::H(-1), Twist::V(1), Twist::V(-1)];

    pub fn inverse(self) -> Twist {
        match self {
            Twist::H(s) => Twist::H(-s),
            Twist::V(s) => Twist::V(-s),
        }
    }

    pub fn apply(self, t: &Tangle2) -> Tangle2 {
        match self {
            Twist::H(s) => t.sum(&Tangle2::unit(s > 0)),
            Twist::V(s) => t.stack(&Tangle2::unit(s > 0)),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::H(s) => write!(f, "H{}", if *s > 0 { '+' } else { '-' }),
            Twist::V(s) => write!(f, "V{}", if *s > 0 { '+' } else { '-' }),
        }
    }
}

/// A rational-tangle decoration of the tangle boundary: the twists are
/// applied left to right. `omega_bar` applies the inverse twists in reverse
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Omega {
    pub twists: Vec<Twist>,
}

impl Omega {
    pub fn new(twists: Vec<Twist>) -> Self {
        Omega { twists }
    }

    pub fn inverse(&self) -> Omega {
        Omega { twists: self.twists.iter().rev().map(|t| t.inverse()).collect() }
    }

    /// `T^omega`.
    pub fn apply(&self, t: &Tangle2) -> Tangle2 {
        self.twists.iter().fold(t.clone(), |acc, tw| tw.apply(&acc))
    }

    /// `T^omega_bar`.
    pub fn apply_bar(&self, t: &Tangle2) -> Tangle2 {
        self.inverse().apply(t)
    }

    /// `Omega`, read off from `br(omega([0]))` and `br(omega([inf]))`.
    pub fn matrix(&self) -> Result<RingMatrix<Poly>, TangleError> {
        let c0 = bracket_vector(&self.apply(&Tangle2::zero()))?;
        let c1 = bracket_vector(&self.apply(&Tangle2::infinity()))?;
        Ok(RingMatrix::from_rows(vec![vec![c0.alpha, c1.alpha], vec![c0.beta, c1.beta]])?)
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.twists.iter().map(Twist::to_string).collect();
        write!(f, "{}", items.join(" "))
    }
}

/// Inverse of a 2x2 matrix whose determinant is a unit `+-A^k`.
pub fn inverse2(m: &RingMatrix<Poly>) -> Result<RingMatrix<Poly>, TangleError> {
    let det = &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0));
    if det.num_terms() != 1 {
        return Err(TangleError::NotInvertible);
    }
    let (e, c) = det.leading().expect("one term");
    let c = c.clone();
    if c != 1.into() && c != (-1).into() {
        return Err(TangleError::NotInvertible);
    }
    let inv = a_pow(-e[0]).scale(&c);
    let neg = |p: &Poly| -> Poly { &Poly::zero(&a_vars()) - p };
    Ok(RingMatrix::from_rows(vec![
        vec![m.get(1, 1) * &inv, &neg(m.get(0, 1)) * &inv],
        vec![&neg(m.get(1, 0)) * &inv, m.get(0, 0) * &inv],
    ])?)
}

fn mat_eq(a: &RingMatrix<Poly>, b: &RingMatrix<Poly>) -> bool {
    (0..2).all(|i| (0..2).all(|j| a.get(i, j) == b.get(i, j)))
}

fn is_plus_minus_identity(m: &RingMatrix<Poly>) -> bool {
    let one = Poly::one(&a_vars());
    let minus = Poly::from_i64(&a_vars(), -1);
    m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1) && (*m.get(0, 0) == one || *m.get(0, 0) == minus)
}

/// Whether `Omega^t M Omega^-1 = M`.
pub fn conjugation_identity(omega: &RingMatrix<Poly>, m: &RingMatrix<Poly>) -> Result<bool, TangleError> {
    let lhs = omega.transpose().mul(m)?.mul(&inverse2(omega)?)?;
    Ok(mat_eq(&lhs, m))
}

/// The first twist word (by length, then in the order H+, H-, V+, V-; no
/// twist next to its inverse) whose matrix satisfies the conjugation
/// identity and is not `+-1`.
pub fn find_omega(max_twists: usize) -> Result<Omega, TangleError> {
    let m = clasp_matrix()?;
    let mut words: Vec<Vec<Twist>> = vec![vec![]];
    for _ in 0..max_twists {
        let mut next = Vec::new();
        for w in &words {
            for t in Twist::ALL {
                if w.last().is_some_and(|l| l.inverse() == t) {
                    continue;
                }
                let mut v = w.clone();
                v.push(t);
                let om = Omega::new(v.clone());
                let mat = om.matrix()?;
                if !is_plus_minus_identity(&mat) && inverse2(&mat).is_ok() && conjugation_identity(&mat, &m)? {
                    return Ok(om);
                }
                next.push(v);
            }
        }
        words = next;
    }
    Err(TangleError::NoOmega(max_twists))
}

/// Twists allowed in the omega search.
pub const OMEGA_SEARCH_DEPTH: usize = 5;

/// The frozen omega: the first solution of the search up to five twists.
pub fn omega() -> Result<Omega, TangleError> {
    find_omega(OMEGA_SEARCH_DEPTH)
}

/// `Omega` of the frozen omega.
pub fn omega_matrix() -> Result<RingMatrix<Poly>, TangleError> {
    omega()?.matrix()
}

/// One member of a unit-Jones family.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub index: usize,
    pub t: Tangle2,
    pub u: Tangle2,
    pub diagram: Diagram,
    pub bracket: Poly,
    pub f: Poly,
}

/// Starting tangles: `H([1], [inf])` is a two-component unlink (the `[inf]`
/// band bounds a strip disjoint from the other band) and so is the version
/// with the crossing of `[1]` switched.
pub fn family_seed() -> (Tangle2, Tangle2) {
    (Tangle2::unit(true), Tangle2::infinity())
}

/// Largest tangle handled by the family generator.
pub const FAMILY_MAX_TANGLE: usize = MAX_CROSSINGS;

/// `H(T^{omega^i}, U^{omega_bar^i})` for `i = 1..=k`. Brackets come from the
/// directly computed bracket vectors of both tangles and the derived clasp
/// matrix, so members larger than the state-sum limit are still exact.
pub fn generate_family(seed: (Tangle2, Tangle2), om: &Omega, k: usize) -> Result<Vec<FamilyMember>, TangleError> {
    let m = clasp_matrix()?;
    let (mut t, mut u) = seed;
    let mut out = Vec::new();
    for index in 1..=k {
        t = om.apply(&t);
        u = om.apply_bar(&u);
        let worst = t.num_crossings().max(u.num_crossings());
        if worst > FAMILY_MAX_TANGLE {
            return Err(TangleError::Budget { index, crossings: worst, max: FAMILY_MAX_TANGLE });
        }
        let diagram = hopf_satellite(&t, &u);
        let bracket = satellite_bracket(&t, &u, &m)?;
        let f = normalize(&bracket, diagram.writhe());
        out.push(FamilyMember { index, t: t.clone(), u: u.clone(), diagram, bracket, f });
    }
    Ok(out)
}

/// The family from the standard seed and the frozen omega.
pub fn generate_unit_jones_family(k: usize) -> Result<Vec<FamilyMember>, TangleError> {
    generate_family(family_seed(), &omega()?, k)
}

/// The same family with the seed crossing switched.
pub fn generate_flipped_family(k: usize) -> Result<Vec<FamilyMember>, TangleError> {
    let (t, u) = family_seed();
    generate_family((t.flip(0)?, u), &omega()?, k)
}

/// Cuts crossing `id` out of a diagram, leaving `S` with `d = N(S + [1])`
/// and `switch(d, id) = N(S + [-1])`.
pub fn cut_crossing(d: &Diagram, id: usize) -> Result<Tangle2, TangleError> {
    let c = d.crossing(id)?;
    let sign = c.sign().ok_or(DiagramError::NodeCrossing(id))?;
    // ports of the removed crossing -> ends of S
    let (under_in, under_out) = match sign {
        Sign::Pos => (End::SE, End::NW),
        Sign::Neg => (End::NW, End::SE),
    };
    let (over_in, over_out) = (End::NE, End::SW);
    let mut pieces = Vec::new();
    let mut loops = Vec::new();
    // labels: 0 over-in, 1 over-out, 2 under-in, 3 under-out
    for comp in d.components() {
        let cuts: Vec<usize> = (0..comp.len()).filter(|&k| comp[k].crossing == id).collect();
        if cuts.is_empty() {
            loops.push(comp.clone());
            continue;
        }
        for (j, &k) in cuts.iter().enumerate() {
            let stop = cuts[(j + 1) % cuts.len()];
            let mut passes = Vec::new();
            let mut x = (k + 1) % comp.len();
            while x != stop {
                passes.push(comp[x]);
                x = (x + 1) % comp.len();
            }
            let out_label = if comp[k].strand == Strand::Over { 1 } else { 3 };
            let in_label = if comp[stop].strand == Strand::Over { 0 } else { 2 };
            pieces.push(Piece { a: out_label, passes, b: in_label });
        }
    }
    // Renumber crossings without `id`.
    let renum = |p: &Pass| Pass { crossing: if p.crossing > id { p.crossing - 1 } else { p.crossing }, strand: p.strand };
    for piece in &mut pieces {
        piece.passes = piece.passes.iter().map(renum).collect();
    }
    let loops: Vec<Vec<Pass>> = loops.iter().map(|l| l.iter().map(renum).collect()).collect();
    let mut crossings = d.crossings().to_vec();
    crossings.remove(id);
    let outer = [(0, over_in), (1, over_out), (2, under_in), (3, under_out)];
    let a = assemble(pieces, loops, crossings, &[], &outer);
    let t = Tangle2::from_assembled(a);
    Tangle2::new(t.strands, t.loops, t.crossings)
}

/// Result of the switching analysis of a tangle `S`.
#[derive(Debug, Clone)]
pub struct SwitchingReport {
    pub alpha: Poly,
    pub beta: Poly,
    /// `<N(S + [1])>`.
    pub bracket_pos: Poly,
    /// `<N(S + [-1])>`.
    pub bracket_neg: Poly,
    /// `<N(S + [-1])> = A^6 <N(S + [1])>`, the bracket form of equal Jones
    /// polynomials for the orientation making the `[1]` crossing negative.
    pub hypothesis: bool,
    /// `-A^3 <N(S + [1])>` when the hypothesis holds.
    pub kappa: Option<Poly>,
    pub alpha_zero: bool,
}

/// Checks that equal Jones polynomials of `N(S + [1])` and `N(S + [-1])`
/// force `<S> = kappa <[inf]>`.
pub fn switching_tangle_analysis(s: &Tangle2) -> Result<SwitchingReport, TangleError> {
    let br = bracket_vector(s)?;
    let pos = bracket_vector(&s.sum(&Tangle2::unit(true)))?.closure_values().0;
    let neg = bracket_vector(&s.sum(&Tangle2::unit(false)))?.closure_values().0;
    let hypothesis = neg == &pos * &a_pow(6);
    let kappa = hypothesis.then(|| &pos * &a_pow(3).scale(&(-1).into()));
    Ok(SwitchingReport { alpha_zero: br.alpha.is_zero(), alpha: br.alpha, beta: br.beta, bracket_pos: pos, bracket_neg: neg, hypothesis, kappa })
}

/// Random algebraic tangle built from `steps` sums and stacks with `[+-1]`,
/// `[0]` and `[inf]`, occasionally rotating by mirroring.
pub fn random_tangle(steps: usize, seed: u64) -> Tangle2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = if rng.gen_bool(0.5) { Tangle2::zero() } else { Tangle2::infinity() };
    for _ in 0..steps {
        let piece = match rng.gen_range(0..6) {
            0 | 1 => Tangle2::unit(true),
            2 | 3 => Tangle2::unit(false),
            4 => Tangle2::zero(),
            _ => Tangle2::infinity(),
        };
        t = match rng.gen_range(0..5) {
            0 | 1 => t.sum(&piece),
            2 | 3 => t.stack(&piece),
            _ => piece.sum(&t),
        };
    }
    t
}

/// Serialize-friendly view of a family member.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRecord {
    pub index: usize,
    pub gauss_code: String,
    pub f: String,
    #[serde(rename = "G")]
    pub g: Option<String>,
    pub crossings: usize,
}

impl FamilyMember {
    pub fn record(&self) -> FamilyRecord {
        let g = crate::biquandle::generalized_alexander(&self.diagram).ok().map(|p| p.render());
        FamilyRecord {
            index: self.index,
            gauss_code: self.diagram.to_gauss(),
            f: self.f.render(),
            g,
            crossings: self.diagram.num_crossings(),
        }
    }
}

/// `f` of a closed diagram, re-exported for callers that hold tangles.
pub fn closure_f(t: &Tangle2) -> Result<(Poly, Poly), TangleError> {
    Ok((f_poly(&t.numerator())?, f_poly(&t.denominator())?))
}
