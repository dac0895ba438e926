//! Oriented link diagrams as Gauss diagrams.
//!
//! A diagram is a list of circular pass sequences, one per component, over a
//! set of crossings. Virtual crossings are not stored: any Gauss code is a
//! valid (possibly virtual) diagram.

mod gauss;
mod pd;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gauss::parse_gauss;
pub use pd::{flat_parity, parse_pd, FlatCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unexpected `{token}` at offset {offset}")]
    Token { token: String, offset: usize },
    #[error("label {label} has no undercrossing occurrence")]
    MissingUnder { label: String },
    #[error("label {label} has no overcrossing occurrence")]
    MissingOver { label: String },
    #[error("label {label} occurs {count} times (expected 2)")]
    LabelCount { label: String, count: usize },
    #[error("label {label} carries inconsistent signs")]
    InconsistentSign { label: String },
    #[error("empty component at position {0}")]
    EmptyComponent(usize),
    #[error("edge {edge} occurs {count} times (expected 2)")]
    EdgeCount { edge: i64, count: usize },
    #[error("edges do not close into oriented circuits at crossing {0}")]
    OpenCircuit(usize),
    #[error("malformed crossing tuple `{0}`")]
    BadTuple(String),
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("crossing {0} is a node")]
    NodeCrossing(usize),
    #[error("crossing {0} is not a node")]
    NotNode(usize),
    #[error("component {0} out of range")]
    BadComponent(usize),
    #[error("components must be distinct")]
    SameComponent,
    #[error("PD output needs every component to carry a crossing")]
    NotRepresentable,
    #[error("diagram must have exactly one component, found {0}")]
    NotAKnot(usize),
}

/// Crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// A classical crossing carries a sign; a node is a rigid 4-valent vertex.
/// For nodes, the pass marked `Over` is the over strand of the positive resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Crossing {
    Classical(Sign),
    Node,
}

impl Crossing {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Crossing::Classical(s) => Some(s),
            Crossing::Node => None,
        }
    }

    pub fn is_node(self) -> bool {
        matches!(self, Crossing::Node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn other(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub crossing: usize,
    pub strand: Strand,
}

impl Pass {
    pub fn over(crossing: usize) -> Pass {
        Pass { crossing, strand: Strand::Over }
    }

    pub fn under(crossing: usize) -> Pass {
        Pass { crossing, strand: Strand::Under }
    }
}

/// Position of a pass: (component, index).
pub type Position = (usize, usize);

/// Gauss-diagram model of an oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    components: Vec<Vec<Pass>>,
    crossings: Vec<Crossing>,
}

impl Diagram {
    /// Validated constructor. Crossing ids index `crossings`.
    pub fn new(components: Vec<Vec<Pass>>, crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        let mut seen = vec![[0usize; 2]; crossings.len()];
        for comp in &components {
            for p in comp {
                if p.crossing >= crossings.len() {
                    return Err(DiagramError::UnknownCrossing(p.crossing));
                }
                seen[p.crossing][p.strand as usize] += 1;
            }
        }
        for (k, s) in seen.iter().enumerate() {
            let label = (k + 1).to_string();
            match *s {
                [1, 1] => {}
                [_, 0] if s[0] > 0 => return Err(DiagramError::MissingUnder { label }),
                [0, _] if s[1] > 0 => return Err(DiagramError::MissingOver { label }),
                _ => return Err(DiagramError::LabelCount { label, count: s[0] + s[1] }),
            }
        }
        Ok(Diagram { components, crossings })
    }

    /// Crossingless unlink with `n` components.
    pub fn unlink(n: usize) -> Self {
        Diagram { components: vec![Vec::new(); n], crossings: Vec::new() }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.crossings.iter().filter(|c| c.is_node()).count()
    }

    pub fn crossing(&self, id: usize) -> Result<Crossing, DiagramError> {
        self.crossings.get(id).copied().ok_or(DiagramError::UnknownCrossing(id))
    }

    /// Positions of the over and under passes of a crossing.
    pub fn positions(&self, id: usize) -> (Position, Position) {
        let mut over = None;
        let mut under = None;
        for (c, comp) in self.components.iter().enumerate() {
            for (k, p) in comp.iter().enumerate() {
                if p.crossing == id {
                    match p.strand {
                        Strand::Over => over = Some((c, k)),
                        Strand::Under => under = Some((c, k)),
                    }
                }
            }
        }
        (over.expect("over pass"), under.expect("under pass"))
    }

    /// Over and under positions of every crossing.
    pub fn position_table(&self) -> Vec<(Position, Position)> {
        let mut t = vec![((0, 0), (0, 0)); self.crossings.len()];
        for (c, comp) in self.components.iter().enumerate() {
            for (k, p) in comp.iter().enumerate() {
                match p.strand {
                    Strand::Over => t[p.crossing].0 = (c, k),
                    Strand::Under => t[p.crossing].1 = (c, k),
                }
            }
        }
        t
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().filter_map(|c| c.sign()).map(Sign::value).sum()
    }

    pub fn is_classical_only(&self) -> bool {
        self.crossings.iter().all(|c| !c.is_node())
    }

    /// Relabels crossings in order of first appearance.
    pub fn canonical(&self) -> Diagram {
        let mut map = vec![usize::MAX; self.crossings.len()];
        let mut next = 0;
        for comp in &self.components {
            for p in comp {
                if map[p.crossing] == usize::MAX {
                    map[p.crossing] = next;
                    next += 1;
                }
            }
        }
        self.relabel(&map)
    }

    fn relabel(&self, map: &[usize]) -> Diagram {
        let mut crossings = vec![Crossing::Node; self.crossings.len()];
        for (old, &new) in map.iter().enumerate() {
            crossings[new] = self.crossings[old];
        }
        let components = self
            .components
            .iter()
            .map(|c| c.iter().map(|p| Pass { crossing: map[p.crossing], strand: p.strand }).collect())
            .collect();
        Diagram { components, crossings }
    }

    /// Equality up to crossing relabeling.
    pub fn same_up_to_relabeling(&self, other: &Diagram) -> bool {
        self.canonical() == other.canonical()
    }

    /// Builds a diagram from raw parts, dropping crossings whose passes were
    /// removed and compacting ids.
    pub(crate) fn compact(components: Vec<Vec<Pass>>, crossings: Vec<Crossing>) -> Diagram {
        let mut used = vec![false; crossings.len()];
        for comp in &components {
            for p in comp {
                used[p.crossing] = true;
            }
        }
        let mut map = vec![usize::MAX; crossings.len()];
        let mut kept = Vec::new();
        for (k, &u) in used.iter().enumerate() {
            if u {
                map[k] = kept.len();
                kept.push(crossings[k]);
            }
        }
        let components = components
            .into_iter()
            .map(|c| c.into_iter().map(|p| Pass { crossing: map[p.crossing], strand: p.strand }).collect())
            .collect();
        Diagram { components, crossings: kept }
    }


    pub fn switch(&self, id: usize) -> Result<Diagram, DiagramError> {
        let sign = match self.crossing(id)? {
            Crossing::Classical(s) => s,
            Crossing::Node => return Err(DiagramError::NodeCrossing(id)),
        };
        let mut d = self.clone();
        d.crossings[id] = Crossing::Classical(sign.flip());
        for comp in &mut d.components {
            for p in comp.iter_mut().filter(|p| p.crossing == id) {
                p.strand = p.strand.other();
            }
        }
        Ok(d)
    }

    /// Virtualization: the crossing flanked by two virtual crossings. At Gauss
    /// level the same strand stays over while the local sign flips.
    pub fn virtualize(&self, id: usize) -> Result<Diagram, DiagramError> {
        let sign = match self.crossing(id)? {
            Crossing::Classical(s) => s,
            Crossing::Node => return Err(DiagramError::NodeCrossing(id)),
        };
        let mut d = self.clone();
        d.crossings[id] = Crossing::Classical(sign.flip());
        Ok(d)
    }

    /// Removes a crossing's chord entirely (a crossing turned fully virtual).
    pub fn delete_chord(&self, id: usize) -> Result<Diagram, DiagramError> {
        self.crossing(id)?;
        let comps = self
            .components
            .iter()
            .map(|c| c.iter().copied().filter(|p| p.crossing != id).collect())
            .collect();
        Ok(Diagram::compact(comps, self.crossings.clone()))
    }

    /// Oriented smoothing of a crossing or node.
    pub fn smooth_oriented(&self, id: usize) -> Result<Diagram, DiagramError> {
        self.crossing(id)?;
        Ok(self.smooth_any(id))
    }

    pub(crate) fn smooth_any(&self, id: usize) -> Diagram {
        let ((c1, i), (c2, j)) = self.positions(id);
        let mut comps: Vec<Vec<Pass>> = Vec::new();
        if c1 == c2 {
            let s = &self.components[c1];
            let (a, b) = (i.min(j), i.max(j));
            let inner: Vec<Pass> = s[a + 1..b].to_vec();
            let outer: Vec<Pass> = s[b + 1..].iter().chain(&s[..a]).copied().collect();
            for (k, comp) in self.components.iter().enumerate() {
                if k == c1 {
                    comps.push(outer.clone());
                    comps.push(inner.clone());
                } else {
                    comps.push(comp.clone());
                }
            }
        } else {
            let s1 = &self.components[c1];
            let s2 = &self.components[c2];
            let merged: Vec<Pass> = s1[i + 1..]
                .iter()
                .chain(&s1[..i])
                .chain(&s2[j + 1..])
                .chain(&s2[..j])
                .copied()
                .collect();
            let (lo, hi) = (c1.min(c2), c1.max(c2));
            for (k, comp) in self.components.iter().enumerate() {
                if k == lo {
                    comps.push(merged.clone());
                } else if k != hi {
                    comps.push(comp.clone());
                }
            }
        }
        Diagram::compact(comps, self.crossings.clone())
    }

    /// Turns a classical crossing into a node whose positive resolution is the
    /// crossing itself or its switch.
    pub fn make_node(&self, id: usize) -> Result<Diagram, DiagramError> {
        let sign = match self.crossing(id)? {
            Crossing::Classical(s) => s,
            Crossing::Node => return Err(DiagramError::NodeCrossing(id)),
        };
        let mut d = self.clone();
        d.crossings[id] = Crossing::Node;
        if sign == Sign::Neg {
            for comp in &mut d.components {
                for p in comp.iter_mut().filter(|p| p.crossing == id) {
                    p.strand = p.strand.other();
                }
            }
        }
        Ok(d)
    }

    /// Replaces a node by its positive or negative resolution.
    pub fn resolve_node(&self, id: usize, sign: Sign) -> Result<Diagram, DiagramError> {
        if !self.crossing(id)?.is_node() {
            return Err(DiagramError::NotNode(id));
        }
        let mut d = self.clone();
        d.crossings[id] = Crossing::Classical(Sign::Pos);
        Ok(if sign == Sign::Neg { d.switch(id)? } else { d })
    }

    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| match c {
                Crossing::Classical(s) => Crossing::Classical(s.flip()),
                Crossing::Node => Crossing::Node,
            })
            .collect();
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| {
                        if self.crossings[p.crossing].is_node() {
                            *p
                        } else {
                            Pass { crossing: p.crossing, strand: p.strand.other() }
                        }
                    })
                    .collect()
            })
            .collect();
        Diagram { components, crossings }
    }

    /// Reverses the orientation of one component.
    pub fn reverse(&self, component: usize) -> Result<Diagram, DiagramError> {
        if component >= self.components.len() {
            return Err(DiagramError::BadComponent(component));
        }
        let mut count = vec![0u8; self.crossings.len()];
        for p in &self.components[component] {
            count[p.crossing] += 1;
        }
        let mut d = self.clone();
        d.components[component].reverse();
        for (k, &n) in count.iter().enumerate() {
            if n == 1 {
                match d.crossings[k] {
                    Crossing::Classical(s) => d.crossings[k] = Crossing::Classical(s.flip()),
                    Crossing::Node => {
                        for comp in &mut d.components {
                            for p in comp.iter_mut().filter(|p| p.crossing == k) {
                                p.strand = p.strand.other();
                            }
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let off = self.crossings.len();
        let mut components = self.components.clone();
        for comp in &other.components {
            components.push(comp.iter().map(|p| Pass { crossing: p.crossing + off, strand: p.strand }).collect());
        }
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        Diagram { components, crossings }
    }

    /// Connected sum of two knots, cutting each just before its first pass.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.components.len() != 1 {
            return Err(DiagramError::NotAKnot(self.components.len()));
        }
        if other.components.len() != 1 {
            return Err(DiagramError::NotAKnot(other.components.len()));
        }
        let u = self.disjoint_union(other);
        let joined: Vec<Pass> = u.components.concat();
        Ok(Diagram { components: vec![joined], crossings: u.crossings })
    }

    /// Genus of the closed oriented surface on which the diagram's 4-valent
    /// graph embeds with the cyclic orders determined by over/under and signs,
    /// summed over connected pieces. Classical (planar) diagrams give 0.
    pub fn supporting_genus(&self) -> usize {
        let n = self.crossings.len();
        if n == 0 {
            return 0;
        }
        // ports: 4*x + {0: over-in, 1: over-out, 2: under-in, 3: under-out}
        let port = |p: &Pass, out: bool| -> usize {
            4 * p.crossing + if p.strand == Strand::Over { 0 } else { 2 } + out as usize
        };
        let mut edge_to = vec![usize::MAX; 4 * n];
        for comp in &self.components {
            let m = comp.len();
            for k in 0..m {
                let a = port(&comp[k], true);
                let b = port(&comp[(k + 1) % m], false);
                edge_to[a] = b;
                edge_to[b] = a;
            }
        }
        // counterclockwise order of ports at each crossing
        let rot = |x: usize| -> [usize; 4] {
            match self.crossings[x] {
                Crossing::Classical(Sign::Neg) => [1, 2, 0, 3],
                _ => [1, 3, 0, 2],
            }
        };
        let next_ccw = |p: usize| -> usize {
            let x = p / 4;
            let r = rot(x);
            let k = r.iter().position(|&q| q == p % 4).expect("port");
            4 * x + r[(k + 1) % 4]
        };
        let mut visited = vec![false; 4 * n];
        let mut faces = 0usize;
        for start in 0..4 * n {
            if visited[start] {
                continue;
            }
            faces += 1;
            let mut p = start;
            while !visited[p] {
                visited[p] = true;
                p = next_ccw(edge_to[p]);
            }
        }
        // connected pieces of the crossing graph
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let nx = parent[y];
                parent[y] = r;
                y = nx;
            }
            r
        }
        for p in 0..4 * n {
            let (a, b) = (find(&mut parent, p / 4), find(&mut parent, edge_to[p] / 4));
            parent[a] = b;
        }
        let pieces = (0..n).filter(|&x| find(&mut parent, x) == x).count() as i64;
        // sum over pieces of (2 - 2g) = V - E + F
        let chi = n as i64 - 2 * n as i64 + faces as i64;
        ((2 * pieces - chi) / 2) as usize
    }

    pub fn is_planar(&self) -> bool {
        self.supporting_genus() == 0
    }

    pub fn to_gauss(&self) -> String {
        gauss::serialize(self)
    }

    pub fn to_pd(&self) -> Result<String, DiagramError> {
        pd::serialize(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gauss": self.to_gauss(),
            "components": self.components,
            "crossings": self.crossings,
            "writhe": self.writhe(),
        })
    }
}

/// Random Gauss diagram with `crossings` classical crossings spread over
/// `components` nonempty components (capped by the number of passes).
pub fn random_diagram(crossings: usize, components: usize, seed: u64) -> Diagram {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut passes: Vec<Pass> = (0..crossings).flat_map(|c| [Pass::over(c), Pass::under(c)]).collect();
    passes.shuffle(&mut rng);
    let signs = (0..crossings)
        .map(|_| Crossing::Classical(if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
        .collect();
    let k = components.max(1).min(passes.len().max(1));
    let mut cuts: Vec<usize> = (1..passes.len()).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    let mut comps = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([passes.len()]) {
        comps.push(passes[start..c].to_vec());
        start = c;
    }
    Diagram::new(comps, signs).expect("every crossing has one over and one under pass").canonical()
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_gauss())
    }
}

impl std::str::FromStr for Diagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        parse_gauss("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)").unwrap()
    }

    #[test]
    fn writhe_and_mirror() {
        let t = trefoil();
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.mirror().writhe(), -3);
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(Diagram::unknot().writhe(), 0);
    }

    #[test]
    fn switch_is_involution() {
        let t = trefoil();
        assert_eq!(t.switch(1).unwrap().switch(1).unwrap(), t);
        assert_eq!(t.switch(1).unwrap().num_crossings(), 3);
    }

    #[test]
    fn smoothing_trefoil_gives_two_components() {
        let h = trefoil().smooth_oriented(0).unwrap();
        assert_eq!(h.num_components(), 2);
        assert_eq!(h.num_crossings(), 2);
        assert!(h.is_planar());
    }

    #[test]
    fn genus() {
        assert_eq!(trefoil().supporting_genus(), 0);
        let vt = parse_gauss("(o1+)(o2+)(u1+)(u2+)").unwrap();
        assert_eq!(vt.supporting_genus(), 1);
        assert_eq!(parse_gauss("(o1+)(u1+)").unwrap().supporting_genus(), 0);
        assert_eq!(parse_gauss("(o1-)(u1-)").unwrap().supporting_genus(), 0);
        assert_eq!(parse_gauss("(u1+)(o1+)").unwrap().supporting_genus(), 0);
    }

    #[test]
    fn reverse_flips_mixed_crossings_only() {
        let hopf = parse_gauss("(o1+)(u2+);(u1+)(o2+)").unwrap();
        let r = hopf.reverse(0).unwrap();
        assert_eq!(r.writhe(), -2);
        assert_eq!(trefoil().reverse(0).unwrap().writhe(), 3);
        assert!(hopf.reverse(2).is_err());
    }
}
