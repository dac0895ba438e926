//! Directed, signed chord diagrams on an oriented circle.

use std::fmt;

use serde::Serialize;

use super::VassilievError;
use crate::diagram::{Diagram, Strand};

/// A chord from `tail` to `head` (point indices along the circle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Chord {
    pub tail: usize,
    pub head: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// `2k` points `0..2k` in circle order, paired by `k` chords.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChordDiagram {
    chords: Vec<Chord>,
}

impl ChordDiagram {
    pub fn new(chords: Vec<Chord>) -> Result<Self, VassilievError> {
        let n = 2 * chords.len();
        let mut seen = vec![false; n];
        for c in &chords {
            if c.sign != 1 && c.sign != -1 {
                return Err(VassilievError::Chord(format!("sign {} is not +-1", c.sign)));
            }
            for p in [c.tail, c.head] {
                if p >= n || seen[p] {
                    return Err(VassilievError::Chord(format!("point {p} is not part of a perfect pairing")));
                }
                seen[p] = true;
            }
        }
        Ok(ChordDiagram { chords })
    }

    pub fn empty() -> Self {
        ChordDiagram { chords: Vec::new() }
    }

    /// Builds a positive diagram from a word in which every label occurs
    /// twice, e.g. `"121323"`; each chord points from its first occurrence.
    pub fn from_word(word: &str) -> Result<Self, VassilievError> {
        let labels: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chords = Vec::new();
        let mut open: Vec<(char, usize)> = Vec::new();
        for (p, &l) in labels.iter().enumerate() {
            match open.iter().position(|&(x, _)| x == l) {
                Some(k) => {
                    let (_, tail) = open.remove(k);
                    chords.push(Chord { tail, head: p, sign: 1 });
                }
                None => {
                    if chords.iter().any(|c| labels[c.tail] == l) {
                        return Err(VassilievError::Chord(format!("label {l} occurs more than twice")));
                    }
                    open.push((l, p));
                }
            }
        }
        if let Some((l, _)) = open.first() {
            return Err(VassilievError::Chord(format!("label {l} occurs once")));
        }
        Self::new(chords)
    }

    pub fn num_chords(&self) -> usize {
        self.chords.len()
    }

    pub fn num_points(&self) -> usize {
        2 * self.chords.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// `partner[p]` and whether `p` is a tail, for every point.
    fn point_table(&self) -> Vec<(usize, bool, i8)> {
        let mut t = vec![(0, false, 1); self.num_points()];
        for c in &self.chords {
            t[c.tail] = (c.head, true, c.sign);
            t[c.head] = (c.tail, false, c.sign);
        }
        t
    }

    /// Rotation-invariant key: the least rotation of the per-point
    /// (offset to partner, is tail, sign) sequence. Signs are dropped when
    /// `signed` is false.
    pub fn canonical_key(&self, signed: bool) -> Vec<(usize, bool, i8)> {
        let n = self.num_points();
        let t = self.point_table();
        let seq: Vec<(usize, bool, i8)> =
            (0..n).map(|p| ((t[p].0 + n - p) % n, t[p].1, if signed { t[p].2 } else { 0 })).collect();
        (0..n.max(1))
            .map(|r| (0..n).map(|k| seq[(k + r) % n]).collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Same diagram up to rotation of the circle.
    pub fn is_isomorphic(&self, other: &ChordDiagram, signed: bool) -> bool {
        self.num_chords() == other.num_chords() && self.canonical_key(signed) == other.canonical_key(signed)
    }

    /// Subdiagram on the chords with the given indices, renumbered.
    pub fn induced(&self, idx: &[usize]) -> ChordDiagram {
        let mut pts: Vec<usize> = idx.iter().flat_map(|&i| [self.chords[i].tail, self.chords[i].head]).collect();
        pts.sort_unstable();
        let rank = |p: usize| pts.binary_search(&p).expect("endpoint of a chosen chord");
        let chords = idx
            .iter()
            .map(|&i| {
                let c = self.chords[i];
                Chord { tail: rank(c.tail), head: rank(c.head), sign: c.sign }
            })
            .collect();
        ChordDiagram { chords }
    }

    /// Removes the listed chords.
    pub fn without(&self, drop: &[usize]) -> ChordDiagram {
        let keep: Vec<usize> = (0..self.num_chords()).filter(|i| !drop.contains(i)).collect();
        self.induced(&keep)
    }

    /// Whether the two chords cross.
    pub fn interleaved(&self, i: usize, j: usize) -> bool {
        let (a, b) = minmax(self.chords[i].tail, self.chords[i].head);
        let inside = |p: usize| a < p && p < b;
        inside(self.chords[j].tail) != inside(self.chords[j].head)
    }

    /// Point word with labels `1..=k` in chord order.
    pub fn word(&self) -> String {
        let mut w = vec![String::new(); self.num_points()];
        for (k, c) in self.chords.iter().enumerate() {
            w[c.tail] = (k + 1).to_string();
            w[c.head] = (k + 1).to_string();
        }
        w.join(" ")
    }

    /// Flattened chord list as a closed diagram: tails are over passes,
    /// heads under passes, all crossings positive.
    pub(crate) fn as_passes(&self) -> Vec<crate::diagram::Pass> {
        let t = self.point_table();
        let mut idx = vec![0; self.num_points()];
        for (k, c) in self.chords.iter().enumerate() {
            idx[c.tail] = k;
            idx[c.head] = k;
        }
        (0..self.num_points())
            .map(|p| if t[p].1 { crate::diagram::Pass::over(idx[p]) } else { crate::diagram::Pass::under(idx[p]) })
            .collect()
    }

    /// All pairings of `2n` points (undirected, positive), one per
    /// rotation class.
    pub fn all_undirected(n: usize) -> Vec<ChordDiagram> {
        let mut out: Vec<ChordDiagram> = Vec::new();
        let mut keys = std::collections::HashSet::new();
        let mut partner = vec![usize::MAX; 2 * n];
        pairings(&mut partner, &mut |p| {
            let chords = (0..p.len()).filter(|&a| a < p[a]).map(|a| Chord { tail: a, head: p[a], sign: 1 }).collect();
            let d = ChordDiagram { chords };
            if keys.insert(d.undirected_key()) {
                out.push(d);
            }
        });
        out
    }

    /// Rotation-invariant key ignoring directions and signs.
    pub fn undirected_key(&self) -> Vec<usize> {
        let n = self.num_points();
        let t = self.point_table();
        let seq: Vec<usize> = (0..n).map(|p| (t[p].0 + n - p) % n).collect();
        (0..n.max(1)).map(|r| (0..n).map(|k| seq[(k + r) % n]).collect::<Vec<_>>()).min().unwrap_or_default()
    }
}

fn minmax(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pairings(partner: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let Some(a) = partner.iter().position(|&x| x == usize::MAX) else {
        f(partner);
        return;
    };
    for b in a + 1..partner.len() {
        if partner[b] == usize::MAX {
            partner[a] = b;
            partner[b] = a;
            pairings(partner, f);
            partner[a] = usize::MAX;
            partner[b] = usize::MAX;
        }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.point_table();
        let mut idx = vec![0; self.num_points()];
        for (k, c) in self.chords.iter().enumerate() {
            idx[c.tail] = k + 1;
            idx[c.head] = k + 1;
        }
        let items: Vec<String> = (0..self.num_points())
            .map(|p| format!("{}{}{}", if t[p].1 { 'o' } else { 'u' }, idx[p], if t[p].2 > 0 { '+' } else { '-' }))
            .collect();
        write!(f, "{}", items.join(" "))
    }
}

/// Signed chord diagram of a knot diagram: chords run from the over pass to
/// the under pass.
pub fn gauss_diagram(d: &Diagram) -> Result<ChordDiagram, VassilievError> {
    if d.num_components() != 1 {
        return Err(VassilievError::NotAKnot(d.num_components()));
    }
    if d.num_nodes() > 0 {
        return Err(VassilievError::NodePresent);
    }
    let n = d.num_crossings();
    let mut chords = vec![Chord { tail: 0, head: 0, sign: 1 }; n];
    for (k, p) in d.components()[0].iter().enumerate() {
        let c = &mut chords[p.crossing];
        match p.strand {
            Strand::Over => c.tail = k,
            Strand::Under => c.head = k,
        }
        c.sign = d.crossings()[p.crossing].sign().expect("no nodes").value() as i8;
    }
    ChordDiagram::new(chords)
}
