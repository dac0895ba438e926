//! Planar diagram codes.
//!
//! Each classical crossing is `X[a,b,c,d]`, edges listed clockwise starting at
//! the incoming over edge `a` (so `c` is the outgoing over edge). The sign is
//! positive when the under strand runs from `d` to `b`. Virtual crossings
//! `V[a,b,c,d]` (strands `a-c` and `b-d`) appear only in flat codes.

use std::collections::HashMap;

use super::{Crossing, Diagram, DiagramError, Pass, Sign, Strand};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Classical,
    Virtual,
}

fn parse_tuples(text: &str) -> Result<Vec<(Kind, [i64; 4])>, DiagramError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
        if rest.is_empty() {
            break;
        }
        let (kind, body_start) = if let Some(r) = rest.strip_prefix('X') {
            (Kind::Classical, r)
        } else if let Some(r) = rest.strip_prefix('V') {
            (Kind::Virtual, r)
        } else {
            (Kind::Classical, rest)
        };
        let body_start = body_start.trim_start();
        let open = body_start.chars().next().ok_or_else(|| DiagramError::BadTuple(rest.to_string()))?;
        let close = match open {
            '[' => ']',
            '(' => ')',
            _ => return Err(DiagramError::BadTuple(rest.chars().take(12).collect())),
        };
        let end = body_start.find(close).ok_or_else(|| DiagramError::BadTuple(rest.to_string()))?;
        let inner = &body_start[1..end];
        let nums: Result<Vec<i64>, _> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>())
            .collect();
        let nums = nums.map_err(|_| DiagramError::BadTuple(inner.to_string()))?;
        if nums.len() != 4 {
            return Err(DiagramError::BadTuple(inner.to_string()));
        }
        out.push((kind, [nums[0], nums[1], nums[2], nums[3]]));
        rest = &body_start[end + 1..];
    }
    Ok(out)
}

/// Parses a PD code (classical crossings only; `V` entries are skipped).
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let tuples: Vec<[i64; 4]> =
        parse_tuples(text)?.into_iter().filter(|(k, _)| *k == Kind::Classical).map(|(_, t)| t).collect();
    if tuples.is_empty() {
        return Ok(Diagram::unknot());
    }
    let n = tuples.len();
    // slot = 4*x + position; record the two slots of every edge
    let mut slots: HashMap<i64, Vec<usize>> = HashMap::new();
    for (x, t) in tuples.iter().enumerate() {
        for (k, &e) in t.iter().enumerate() {
            slots.entry(e).or_default().push(4 * x + k);
        }
    }
    let mut edges: Vec<i64> = slots.keys().copied().collect();
    edges.sort();
    for e in &edges {
        let c = slots[e].len();
        if c != 2 {
            return Err(DiagramError::EdgeCount { edge: *e, count: c });
        }
    }
    let other_slot = |s: usize| -> usize {
        let e = tuples[s / 4][s % 4];
        let v = &slots[&e];
        if v[0] == s {
            v[1]
        } else {
            v[0]
        }
    };
    // is_in[slot]: the edge at this slot enters the crossing
    let mut is_in: Vec<Option<bool>> = vec![None; 4 * n];
    let mut queue = Vec::new();
    let set = |is_in: &mut Vec<Option<bool>>, queue: &mut Vec<usize>, s: usize, v: bool| -> Result<(), DiagramError> {
        match is_in[s] {
            Some(w) if w != v => Err(DiagramError::OpenCircuit(s / 4 + 1)),
            Some(_) => Ok(()),
            None => {
                is_in[s] = Some(v);
                queue.push(s);
                Ok(())
            }
        }
    };
    for x in 0..n {
        set(&mut is_in, &mut queue, 4 * x, true)?;
        set(&mut is_in, &mut queue, 4 * x + 2, false)?;
    }
    loop {
        while let Some(s) = queue.pop() {
            let v = is_in[s].expect("set");
            set(&mut is_in, &mut queue, other_slot(s), !v)?;
            if s % 2 == 1 {
                // under pair b/d: opposite roles
                let partner = if s % 4 == 1 { s + 2 } else { s - 2 };
                set(&mut is_in, &mut queue, partner, !v)?;
            }
        }
        // components passing only under: orient so labels increase where possible
        let Some(x) = (0..n).find(|&x| is_in[4 * x + 1].is_none()) else { break };
        let [_, b, _, d] = tuples[x];
        let b_in = b + 1 == d;
        set(&mut is_in, &mut queue, 4 * x + 1, b_in)?;
    }
    // trace components following edges from smallest label
    let mut used_edge: HashMap<i64, bool> = HashMap::new();
    let mut components = Vec::new();
    let out_slot = |s_in: usize| -> usize {
        // s_in is an incoming slot; continue on the same strand
        match s_in % 4 {
            0 => s_in + 2,
            1 => s_in + 2,
            3 => s_in - 2,
            _ => unreachable!("slot 2 is outgoing"),
        }
    };
    for &e in &edges {
        if used_edge.contains_key(&e) {
            continue;
        }
        let mut comp = Vec::new();
        let mut edge = e;
        loop {
            if used_edge.insert(edge, true).is_some() {
                break;
            }
            let v = &slots[&edge];
            let s_in = if is_in[v[0]] == Some(true) { v[0] } else { v[1] };
            let x = s_in / 4;
            comp.push(Pass { crossing: x, strand: if s_in % 4 == 0 { Strand::Over } else { Strand::Under } });
            let s_out = out_slot(s_in);
            edge = tuples[x][s_out % 4];
        }
        components.push(comp);
    }
    let crossings = (0..n)
        .map(|x| {
            // positive when the under strand enters at d
            Crossing::Classical(if is_in[4 * x + 3] == Some(true) { Sign::Pos } else { Sign::Neg })
        })
        .collect();
    Diagram::new(components, crossings)
}

pub(super) fn serialize(d: &Diagram) -> Result<String, DiagramError> {
    if d.components().iter().any(|c| c.is_empty()) {
        return Err(DiagramError::NotRepresentable);
    }
    if let Some(x) = d.crossings().iter().position(|c| c.is_node()) {
        return Err(DiagramError::NodeCrossing(x));
    }
    let n = d.num_crossings();
    // [over-in, over-out, under-in, under-out]
    let mut ends = vec![[0i64; 4]; n];
    let mut next = 1i64;
    for comp in d.components() {
        let m = comp.len() as i64;
        for (k, p) in comp.iter().enumerate() {
            let e_in = next + k as i64;
            let e_out = next + (k as i64 + 1) % m;
            let base = if p.strand == Strand::Over { 0 } else { 2 };
            ends[p.crossing][base] = e_in;
            ends[p.crossing][base + 1] = e_out;
        }
        next += m;
    }
    let tuples: Vec<String> = ends
        .iter()
        .zip(d.crossings())
        .map(|(e, c)| {
            let [oi, oo, ui, uo] = *e;
            let t = match c {
                Crossing::Classical(Sign::Pos) => [oi, uo, oo, ui],
                _ => [oi, ui, oo, uo],
            };
            format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3])
        })
        .collect();
    Ok(tuples.join(" "))
}

/// Flat planar code with explicit virtual crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatCode {
    classical: Vec<[i64; 4]>,
    virtuals: Vec<[i64; 4]>,
    /// component index of every edge, components ordered by smallest edge label
    component_of: HashMap<i64, usize>,
    components: usize,
}

impl FlatCode {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let tuples = parse_tuples(text)?;
        let mut counts: HashMap<i64, usize> = HashMap::new();
        for (_, t) in &tuples {
            for &e in t {
                *counts.entry(e).or_default() += 1;
            }
        }
        let mut edges: Vec<i64> = counts.keys().copied().collect();
        edges.sort();
        for e in &edges {
            if counts[e] != 2 {
                return Err(DiagramError::EdgeCount { edge: *e, count: counts[e] });
            }
        }
        // edges joined through any crossing along a strand (a-c, b-d)
        let idx: HashMap<i64, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (_, t) in &tuples {
            for (a, b) in [(t[0], t[2]), (t[1], t[3])] {
                let (ra, rb) = (find(&mut parent, idx[&a]), find(&mut parent, idx[&b]));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comp_ids: HashMap<usize, usize> = HashMap::new();
        let mut component_of = HashMap::new();
        for (k, &e) in edges.iter().enumerate() {
            let r = find(&mut parent, k);
            let next = comp_ids.len();
            let c = *comp_ids.entry(r).or_insert(next);
            component_of.insert(e, c);
        }
        let (mut classical, mut virtuals) = (Vec::new(), Vec::new());
        for (k, t) in tuples {
            match k {
                Kind::Classical => classical.push(t),
                Kind::Virtual => virtuals.push(t),
            }
        }
        Ok(FlatCode { classical, virtuals, components: comp_ids.len(), component_of })
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    pub fn num_virtual(&self) -> usize {
        self.virtuals.len()
    }

    pub fn num_classical(&self) -> usize {
        self.classical.len()
    }

    /// Parity of the virtual crossings shared by components `c1` and `c2`.
    pub fn parity(&self, c1: usize, c2: usize) -> Result<u8, DiagramError> {
        if c1 >= self.components {
            return Err(DiagramError::BadComponent(c1));
        }
        if c2 >= self.components {
            return Err(DiagramError::BadComponent(c2));
        }
        if c1 == c2 {
            return Err(DiagramError::SameComponent);
        }
        let count = self
            .virtuals
            .iter()
            .filter(|t| {
                let (p, q) = (self.component_of[&t[0]], self.component_of[&t[1]]);
                (p == c1 && q == c2) || (p == c2 && q == c1)
            })
            .count();
        Ok((count % 2) as u8)
    }
}

/// Parity of virtual crossings between two components of a flat code.
pub fn flat_parity(text: &str, c1: usize, c2: usize) -> Result<u8, DiagramError> {
    FlatCode::parse(text)?.parity(c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gauss;

    #[test]
    fn curl_is_negative() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(d.num_crossings(), 1);
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn trefoil_round_trip() {
        let t = parse_gauss("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)").unwrap();
        let pd = t.to_pd().unwrap();
        let back = parse_pd(&pd).unwrap();
        assert!(back.same_up_to_relabeling(&t), "{pd} -> {back}");
        assert_eq!(back.writhe(), 3);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_pd("X[1,2,3]"), Err(DiagramError::BadTuple(_))));
        assert!(matches!(parse_pd("X[1,2,3,4]"), Err(DiagramError::EdgeCount { .. })));
    }

    #[test]
    fn parity() {
        let h = "X[1,3,2,4] V[2,4,1,3]";
        assert_eq!(flat_parity(h, 0, 1).unwrap(), 1);
        assert!(flat_parity(h, 0, 0).is_err());
        assert!(flat_parity(h, 0, 2).is_err());
        let hopf = parse_gauss("(o1+)(u2+);(u1+)(o2+)").unwrap().to_pd().unwrap();
        assert_eq!(flat_parity(&hopf, 0, 1).unwrap(), 0);
        assert_eq!(flat_parity("X[1,4,2,5] V[2,5,3,6] V[3,6,1,4]", 0, 1).unwrap(), 0);
    }
}
