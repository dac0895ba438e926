//! Temperley-Lieb monoid and algebra.
//!
//! An element of `M_n` is a planar pairing of a top row `1..n` and a bottom
//! row `1'..n'`. Points are listed in the cyclic boundary order
//! `1, 2, ..., n, n', ..., 1'`; a pairing is planar when no two of its pairs
//! interleave in that order. `U V` stacks `U` on top of `V`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{a_vars, loop_value, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TlError {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator index {k} out of range for {n} strands")]
    GeneratorIndex { k: usize, n: usize },
    #[error("not a pairing: {0}")]
    NotPairing(String),
    #[error("pairing has crossing arcs {0} and {1}")]
    Crossing(String, String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("unbalanced parentheses {0:?}")]
    Unbalanced(String),
}

/// A boundary point, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Top(i) => write!(f, "{i}"),
            Point::Bottom(i) => write!(f, "{i}'"),
        }
    }
}

impl FromStr for Point {
    type Err = TlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, bottom) = match s.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let i: usize = num.parse().map_err(|_| TlError::Parse(s.to_string()))?;
        if i == 0 {
            return Err(TlError::Parse(s.to_string()));
        }
        Ok(if bottom { Point::Bottom(i) } else { Point::Top(i) })
    }
}

/// A connection element of `M_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TLElement {
    n: usize,
    /// Internal index: top `i` is `i - 1`, bottom `i'` is `n + i - 1`.
    pair: Vec<usize>,
}

impl TLElement {
    fn index(&self, p: Point) -> usize {
        match p {
            Point::Top(i) => i - 1,
            Point::Bottom(i) => self.n + i - 1,
        }
    }

    fn point(&self, x: usize) -> Point {
        if x < self.n {
            Point::Top(x + 1)
        } else {
            Point::Bottom(x - self.n + 1)
        }
    }

    /// Position in the cyclic boundary order.
    fn position(&self, x: usize) -> usize {
        if x < self.n {
            x
        } else {
            3 * self.n - 1 - x
        }
    }

    fn from_raw(n: usize, pair: Vec<usize>) -> Result<Self, TlError> {
        let u = TLElement { n, pair };
        if u.pair.len() != 2 * n {
            return Err(TlError::NotPairing(format!("{} entries for {} strands", u.pair.len(), n)));
        }
        for (x, &y) in u.pair.iter().enumerate() {
            if y >= 2 * n || y == x || u.pair[y] != x {
                return Err(TlError::NotPairing(format!("point {} is not matched consistently", u.point(x))));
            }
        }
        u.check_planar()?;
        Ok(u)
    }

    fn check_planar(&self) -> Result<(), TlError> {
        let arcs: Vec<(usize, usize)> = (0..2 * self.n)
            .filter(|&x| x < self.pair[x])
            .map(|x| {
                let (a, b) = (self.position(x), self.position(self.pair[x]));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[i + 1..] {
                if (a < c && c < b) != (a < d && d < b) {
                    let show = |p: usize, q: usize| format!("{}-{}", self.point(self.at(p)), self.point(self.at(q)));
                    return Err(TlError::Crossing(show(a, b), show(c, d)));
                }
            }
        }
        Ok(())
    }

    /// Inverse of `position`.
    fn at(&self, pos: usize) -> usize {
        if pos < self.n {
            pos
        } else {
            3 * self.n - 1 - pos
        }
    }

    /// Builds an element from its pairs.
    pub fn from_pairs(n: usize, pairs: &[(Point, Point)]) -> Result<Self, TlError> {
        let mut pair = vec![usize::MAX; 2 * n];
        let idx = |p: Point| -> Result<usize, TlError> {
            match p {
                Point::Top(i) | Point::Bottom(i) if i == 0 || i > n => {
                    Err(TlError::NotPairing(format!("point {p} outside 1..{n}")))
                }
                Point::Top(i) => Ok(i - 1),
                Point::Bottom(i) => Ok(n + i - 1),
            }
        };
        for &(p, q) in pairs {
            let (x, y) = (idx(p)?, idx(q)?);
            if x == y || pair[x] != usize::MAX || pair[y] != usize::MAX {
                return Err(TlError::NotPairing(format!("point used twice in {p}-{q}")));
            }
            pair[x] = y;
            pair[y] = x;
        }
        if let Some(x) = pair.iter().position(|&y| y == usize::MAX) {
            let p = if x < n { Point::Top(x + 1) } else { Point::Bottom(x - n + 1) };
            return Err(TlError::NotPairing(format!("point {p} is unmatched")));
        }
        Self::from_raw(n, pair)
    }

    pub fn identity(n: usize) -> Self {
        let pair = (0..2 * n).map(|x| if x < n { x + n } else { x - n }).collect();
        TLElement { n, pair }
    }

    /// `U_k`: joins `k` to `k+1` and `k'` to `(k+1)'`.
    pub fn generator(n: usize, k: usize) -> Result<Self, TlError> {
        if k == 0 || k >= n {
            return Err(TlError::GeneratorIndex { k, n });
        }
        let mut u = Self::identity(n);
        for (x, y) in [(k - 1, k), (n + k - 1, n + k)] {
            u.pair[x] = y;
            u.pair[y] = x;
        }
        Ok(u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, p: Point) -> Point {
        self.point(self.pair[self.index(p)])
    }

    /// Pairs with the smaller point (top before bottom, then by index) first.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        let mut out: Vec<(Point, Point)> = (0..2 * self.n)
            .filter(|&x| x < self.pair[x])
            .map(|x| (self.point(x), self.point(self.pair[x])))
            .collect();
        out.sort();
        out
    }

    /// Number of arcs joining the top row to the bottom row.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&x| self.pair[x] >= self.n).count()
    }

    /// Stacks `self` on top of `other`; returns the connection element and
    /// the number of closed loops.
    pub fn mul(&self, other: &TLElement) -> Result<(TLElement, usize), TlError> {
        let n = self.n;
        if other.n != n {
            return Err(TlError::StrandMismatch { left: n, right: other.n });
        }
        let mut pair = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; n];
        // Walk from an outer point; `upper` says which factor we are in.
        let walk = |mut upper: bool, mut x: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                if upper {
                    let y = self.pair[x];
                    if y < n {
                        return y;
                    }
                    seen[y - n] = true;
                    upper = false;
                    x = y - n;
                } else {
                    let y = other.pair[x];
                    if y >= n {
                        return y;
                    }
                    seen[y] = true;
                    upper = true;
                    x = y + n;
                }
            }
        };
        for x in 0..2 * n {
            if pair[x] != usize::MAX {
                continue;
            }
            let y = if x < n { walk(true, x, &mut seen) } else { walk(false, x, &mut seen) };
            pair[x] = y;
            pair[y] = x;
        }
        let mut loops = 0;
        for j in 0..n {
            if seen[j] {
                continue;
            }
            loops += 1;
            let mut k = j;
            loop {
                seen[k] = true;
                let below = other.pair[k];
                seen[below] = true;
                k = self.pair[below + n] - n;
                if k == j {
                    break;
                }
            }
        }
        Ok((TLElement { n, pair }, loops))
    }

    /// Balanced parenthesis string: the bottom row is folded up to the
    /// right of the top row (order `1..n, n'..1'`) and each arc becomes
    /// `(` at its left end and `)` at its right end.
    pub fn to_parentheses(&self) -> String {
        (0..2 * self.n)
            .map(|pos| {
                let x = self.at(pos);
                if self.position(self.pair[x]) > pos {
                    '('
                } else {
                    ')'
                }
            })
            .collect()
    }

    pub fn from_parentheses(text: &str, n: usize) -> Result<Self, TlError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != 2 * n {
            return Err(TlError::Unbalanced(text.to_string()));
        }
        let shell = TLElement { n, pair: vec![0; 2 * n] };
        let mut pair = vec![usize::MAX; 2 * n];
        let mut stack = Vec::new();
        for (pos, c) in chars.iter().enumerate() {
            match c {
                '(' => stack.push(pos),
                ')' => {
                    let open = stack.pop().ok_or_else(|| TlError::Unbalanced(text.to_string()))?;
                    let (x, y) = (shell.at(open), shell.at(pos));
                    pair[x] = y;
                    pair[y] = x;
                }
                _ => return Err(TlError::Parse(text.to_string())),
            }
        }
        if !stack.is_empty() {
            return Err(TlError::Unbalanced(text.to_string()));
        }
        Ok(TLElement { n, pair })
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs().iter().map(|(p, q)| format!("{p}-{q}")).collect();
        write!(f, "{}", items.join(","))
    }
}

impl FromStr for TLElement {
    type Err = TlError;

    /// Reads `"1-2,1'-2'"`; the strand count is the largest label.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (p, q) = item.split_once('-').ok_or_else(|| TlError::Parse(item.to_string()))?;
            pairs.push((p.parse::<Point>()?, q.parse::<Point>()?));
        }
        let n = pairs
            .iter()
            .flat_map(|&(p, q)| [p, q])
            .map(|p| match p {
                Point::Top(i) | Point::Bottom(i) => i,
            })
            .max()
            .unwrap_or(0);
        Self::from_pairs(n, &pairs)
    }
}

/// One descending run `U_m U_{m-1} ... U_n` of a canonical word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub m: usize,
    pub n: usize,
}

/// Runs of the canonical word. If strand `n` is not straight the word ends
/// with `U_{n-1} ... U_j`, where `(j', (j+1)')` is the rightmost bottom arc
/// joining neighbours; removing that arc and bending top point `n` down to
/// become bottom point `(n-1)'` leaves the prefix, an element of `M_{n-1}`.
pub fn canonical_runs(u: &TLElement) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut cur = u.clone();
    while cur.n > 0 {
        let n = cur.n;
        let keep_last = cur.pair[n - 1] == 2 * n - 1;
        let j = if keep_last {
            None
        } else {
            Some((1..n).rev().find(|&j| cur.pair[n + j - 1] == n + j).expect("non-straight strand forces a bottom arc"))
        };
        // old index -> index in M_{n-1}
        let map = |x: usize| -> Option<usize> {
            let m = n - 1;
            if x < m {
                return Some(x);
            }
            if x == m {
                return if keep_last { None } else { Some(2 * m - 1) };
            }
            let i = x - n + 1;
            match j {
                None if i == n => None,
                None => Some(m + i - 1),
                Some(j) if i < j => Some(m + i - 1),
                Some(j) if i <= j + 1 => None,
                Some(_) => Some(m + i - 3),
            }
        };
        let mut pair = vec![usize::MAX; 2 * (n - 1)];
        for x in 0..2 * n {
            if let (Some(a), Some(b)) = (map(x), map(cur.pair[x])) {
                pair[a] = b;
            }
        }
        if let Some(j) = j {
            runs.push(Run { m: n - 1, n: j });
        }
        cur = TLElement { n: n - 1, pair };
    }
    runs.reverse();
    runs
}

/// The canonical word `U(s^1) ... U(s^k)` of a connection element.
pub fn canonical_factorization(u: &TLElement) -> Vec<usize> {
    canonical_runs(u).iter().flat_map(|r| (r.n..=r.m).rev()).collect()
}

/// Whether the runs satisfy `m_1 < ... < m_k`, `n_1 < ... < n_k`, `n_i <= m_i`.
pub fn is_canonical(runs: &[Run]) -> bool {
    runs.iter().all(|r| r.n >= 1 && r.n <= r.m)
        && runs.windows(2).all(|w| w[0].m < w[1].m && w[0].n < w[1].n)
}

/// Monoid product of generators, left to right.
pub fn word_product(word: &[usize], n: usize) -> Result<(TLElement, usize), TlError> {
    let mut acc = TLElement::identity(n);
    let mut loops = 0;
    for &k in word {
        let (next, l) = acc.mul(&TLElement::generator(n, k)?)?;
        acc = next;
        loops += l;
    }
    Ok((acc, loops))
}

/// Canonical word and loop count of an arbitrary generator word.
pub fn normal_form(word: &[usize], n: usize) -> Result<(Vec<usize>, usize), TlError> {
    let (u, loops) = word_product(word, n)?;
    Ok((canonical_factorization(&u), loops))
}

/// Algebra element of a generator word, loops resolved to `d = -A^2 - A^-2`.
pub fn word_to_element(word: &[usize], n: usize) -> Result<TLAlgebraElement, TlError> {
    let (u, loops) = word_product(word, n)?;
    Ok(TLAlgebraElement::term(u, loop_value().pow(loops as u32)))
}

pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn dyck_words(n: usize) -> Vec<String> {
    fn go(open: usize, close: usize, cur: &mut String, out: &mut Vec<String>) {
        if open == 0 && close == 0 {
            out.push(cur.clone());
            return;
        }
        if open > 0 {
            cur.push('(');
            go(open - 1, close + 1, cur, out);
            cur.pop();
        }
        if close > 0 {
            cur.push(')');
            go(open, close - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut String::new(), &mut out);
    out
}

/// All connection elements of `M_n`, sorted.
pub fn enumerate(n: usize) -> Vec<TLElement> {
    let mut all: Vec<TLElement> = dyck_words(n)
        .par_iter()
        .map(|w| TLElement::from_parentheses(w, n).expect("Dyck word"))
        .collect();
    all.sort();
    all
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub n: usize,
    /// `U_k^2 = d U_k`.
    pub square: bool,
    /// `U_k U_{k+-1} U_k = U_k`.
    pub contraction: bool,
    /// `U_i U_j = U_j U_i` for `|i - j| > 1`.
    pub commute: bool,
    pub checked: usize,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.square && self.contraction && self.commute
    }
}

/// Checks the three defining relations for every applicable index choice.
pub fn check_relations(n: usize) -> RelationReport {
    let p = |w: &[usize]| word_product(w, n).expect("indices in range");
    let mut checked = 0;
    let (mut square, mut contraction, mut commute) = (true, true, true);
    for k in 1..n {
        let u = TLElement::generator(n, k).expect("in range");
        checked += 1;
        square &= p(&[k, k]) == (u.clone(), 1);
        for j in [k.wrapping_sub(1), k + 1] {
            if (1..n).contains(&j) {
                checked += 1;
                contraction &= p(&[k, j, k]) == (u.clone(), 0);
            }
        }
        for j in 1..n {
            if j.abs_diff(k) > 1 {
                checked += 1;
                commute &= p(&[k, j]) == p(&[j, k]);
            }
        }
    }
    RelationReport { n, square, contraction, commute, checked }
}

/// A `Z[A, A^-1]`-linear combination of connection elements of `M_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLAlgebraElement {
    n: usize,
    terms: BTreeMap<TLElement, Poly>,
}

impl TLAlgebraElement {
    pub fn zero(n: usize) -> Self {
        TLAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn term(u: TLElement, c: Poly) -> Self {
        let mut out = Self::zero(u.n);
        out.add_term(u, c);
        out
    }

    pub fn from_element(u: TLElement) -> Self {
        Self::term(u, Poly::one(&a_vars()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLElement, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &TLElement) -> Poly {
        self.terms.get(u).cloned().unwrap_or_else(|| Poly::zero(&a_vars()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, u: TLElement, c: Poly) {
        let sum = match self.terms.remove(&u) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(u, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, TlError> {
        if o.n != self.n {
            return Err(TlError::StrandMismatch { left: self.n, right: o.n });
        }
        let mut out = self.clone();
        for (u, c) in &o.terms {
            out.add_term(u.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.n);
        for (u, x) in &self.terms {
            out.add_term(u.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self, TlError> {
        if o.n != self.n {
            return Err(TlError::StrandMismatch { left: self.n, right: o.n });
        }
        let d = loop_value();
        let mut out = Self::zero(self.n);
        for (u, x) in &self.terms {
            for (v, y) in &o.terms {
                let (w, loops) = u.mul(v)?;
                out.add_term(w, &(x * y) * &d.pow(loops as u32));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TLAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<String> = self.terms.iter().map(|(u, c)| format!("({})*[{}]", c.render(), u)).collect();
        write!(f, "{}", items.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_shape() {
        let u = TLElement::generator(2, 1).unwrap();
        assert_eq!(u.to_string(), "1-2,1'-2'");
        assert_eq!("1-2,1'-2'".parse::<TLElement>().unwrap(), u);
    }

    #[test]
    fn crossing_pairing_rejected() {
        assert!(matches!("1-2',2-1'".parse::<TLElement>(), Err(TlError::Crossing(..))));
    }

    #[test]
    fn loops_counted() {
        let u = TLElement::generator(4, 1).unwrap();
        let v = TLElement::generator(4, 3).unwrap();
        let (uv, _) = u.mul(&v).unwrap();
        assert_eq!(uv.mul(&uv).unwrap().1, 2);
    }
}
