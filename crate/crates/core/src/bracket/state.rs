//! State enumeration over the doubled arc structure of a Gauss diagram.
//!
//! Arcs are the edges between consecutive passes. At a crossing with over
//! pass `P` and under pass `Q`, the oriented smoothing joins `in(P)` with
//! `out(Q)` and `in(Q)` with `out(P)`; the unoriented smoothing joins the two
//! incoming arcs and the two outgoing arcs. The A-smoothing of a positive
//! crossing is the oriented one, of a negative crossing the unoriented one.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::diagram::{Crossing, Pass, Sign, Strand};

/// Pairing of the four tangle ends in a crossingless state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndPairing {
    /// Closed diagram: no boundary.
    Closed,
    /// NW-NE and SW-SE.
    Zero,
    /// NW-SW and NE-SE.
    Infinity,
    /// NW-SE and NE-SW (only reachable in virtual tangles).
    Crossed,
}

/// Histogram of states keyed by (A-exponent, closed loops, end pairing).
pub type StateCounts = HashMap<(i64, usize, EndPairing), u64>;

#[derive(Debug, Clone)]
pub struct ArcSystem {
    n_arcs: usize,
    /// per crossing: [over-in, over-out, under-in, under-out] arcs and sign
    crossings: Vec<([usize; 4], Sign)>,
    /// crossingless closed components
    free_loops: usize,
    /// arcs carrying the ends NW, NE, SW, SE (tangles only)
    ends: Option<[usize; 4]>,
}

/// An open strand of a tangle: start end, passes, finish end (ends indexed
/// NW=0, NE=1, SW=2, SE=3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenStrand {
    pub start: usize,
    pub passes: Vec<Pass>,
    pub end: usize,
}

impl ArcSystem {
    /// Builds the arc system; nodes are rejected by the caller.
    pub fn new(closed: &[Vec<Pass>], open: &[OpenStrand], crossings: &[Crossing]) -> Self {
        let n = crossings.len();
        let mut ports = vec![[usize::MAX; 4]; n];
        let mut n_arcs = 0;
        let mut free_loops = 0;
        let mut put = |p: &Pass, arc_in: usize, arc_out: usize| {
            let base = if p.strand == Strand::Over { 0 } else { 2 };
            ports[p.crossing][base] = arc_in;
            ports[p.crossing][base + 1] = arc_out;
        };
        for comp in closed {
            let m = comp.len();
            if m == 0 {
                free_loops += 1;
                continue;
            }
            for (k, p) in comp.iter().enumerate() {
                put(p, n_arcs + (k + m - 1) % m, n_arcs + k);
            }
            n_arcs += m;
        }
        let mut ends = [usize::MAX; 4];
        for s in open {
            let m = s.passes.len();
            ends[s.start] = n_arcs;
            for (k, p) in s.passes.iter().enumerate() {
                put(p, n_arcs + k, n_arcs + k + 1);
            }
            ends[s.end] = n_arcs + m;
            n_arcs += m + 1;
        }
        let crossings = ports
            .into_iter()
            .zip(crossings)
            .map(|(p, c)| (p, c.sign().unwrap_or(Sign::Pos)))
            .collect();
        ArcSystem { n_arcs, crossings, free_loops, ends: (!open.is_empty()).then_some(ends) }
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Evaluates one state; bit `k` of `mask` set means crossing `k` takes its
    /// B-smoothing. Returns (closed loops, end pairing).
    pub fn trace(&self, mask: u64, parent: &mut Vec<usize>) -> (usize, EndPairing) {
        parent.clear();
        parent.extend(0..self.n_arcs);
        for (k, ([oi, oo, ui, uo], sign)) in self.crossings.iter().enumerate() {
            let b = mask >> k & 1 == 1;
            let oriented = (*sign == Sign::Pos) != b;
            if oriented {
                union(parent, *oi, *uo);
                union(parent, *ui, *oo);
            } else {
                union(parent, *oi, *ui);
                union(parent, *oo, *uo);
            }
        }
        let roots = (0..self.n_arcs).filter(|&x| find(parent, x) == x).count();
        match self.ends {
            None => (roots + self.free_loops, EndPairing::Closed),
            Some([nw, ne, sw, _]) => {
                let r = |x: usize, p: &mut Vec<usize>| find(p, x);
                let nw_r = r(nw, parent);
                let pairing = if nw_r == r(ne, parent) {
                    EndPairing::Zero
                } else if nw_r == r(sw, parent) {
                    EndPairing::Infinity
                } else {
                    EndPairing::Crossed
                };
                (roots - 2 + self.free_loops, pairing)
            }
        }
    }

    /// Enumerates all `2^n` states.
    pub fn enumerate(&self) -> StateCounts {
        let n = self.crossings.len();
        let total: u64 = 1 << n;
        let chunk_bits = n.saturating_sub(8);
        let chunks: u64 = 1 << (n - chunk_bits);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut local = StateCounts::new();
                let mut parent = Vec::with_capacity(self.n_arcs);
                let lo = c << chunk_bits;
                let hi = ((c + 1) << chunk_bits).min(total);
                for mask in lo..hi {
                    let bs = mask.count_ones() as i64;
                    let exp = n as i64 - 2 * bs;
                    let (loops, pairing) = self.trace(mask, &mut parent);
                    *local.entry((exp, loops, pairing)).or_default() += 1;
                }
                local
            })
            .reduce(StateCounts::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let nx = p[y];
        p[y] = r;
        y = nx;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra.max(rb)] = ra.min(rb);
    }
}
