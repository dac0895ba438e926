//! Reidemeister moves on Gauss diagrams, random walks and a greedy simplifier.
//!
//! Virtual moves act trivially on Gauss diagrams, so only R1, R2 and R3 are
//! represented. R3 applicability is decided by a table of the patterns that
//! three straight directed lines at distinct heights can produce.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Crossing, Diagram, Pass, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move {0:?} does not apply to this diagram")]
    Inapplicable(MoveSite),
}

/// A gap between two consecutive passes: inserting at `index` places new
/// passes before the current pass at `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum MoveSite {
    /// Remove a crossing whose two passes are consecutive.
    R1Remove { crossing: usize },
    /// Insert a kink: the new over pass comes first iff `over_first`.
    R1Insert { gap: Gap, over_first: bool, sign: Sign },
    /// Remove two crossings of opposite sign whose over passes are consecutive
    /// and whose under passes are consecutive.
    R2Remove { first: usize, second: usize },
    /// Push the strand at `under` under the strand at `over`. New crossings `x`
    /// and `y` get signs `sign` and `-sign`; the under strand meets them in the
    /// order `y, x` iff `reversed`.
    R2Insert { over: Gap, under: Gap, reversed: bool, sign: Sign },
    /// Triangle move over crossings (top-middle, top-bottom, middle-bottom).
    R3 { crossings: [usize; 3] },
}

impl MoveSite {
    pub fn delta(&self) -> i64 {
        match self {
            MoveSite::R1Remove { .. } => -1,
            MoveSite::R1Insert { .. } => 1,
            MoveSite::R2Remove { .. } => -2,
            MoveSite::R2Insert { .. } => 2,
            MoveSite::R3 { .. } => 0,
        }
    }

    pub fn is_decreasing(&self) -> bool {
        self.delta() < 0
    }
}

fn successor(d: &Diagram, c: usize, i: usize) -> usize {
    (i + 1) % d.components()[c].len()
}

/// True when pass positions `a` then `b` are consecutive along one component.
fn follows(d: &Diagram, a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 && successor(d, a.0, a.1) == b.1
}

fn adjacent(d: &Diagram, a: (usize, usize), b: (usize, usize)) -> bool {
    follows(d, a, b) || follows(d, b, a)
}

fn r1_remove_sites(d: &Diagram) -> Vec<MoveSite> {
    (0..d.num_crossings())
        .filter(|&c| !d.crossings()[c].is_node())
        .filter(|&c| {
            let (o, u) = d.positions(c);
            adjacent(d, o, u)
        })
        .map(|crossing| MoveSite::R1Remove { crossing })
        .collect()
}

fn r2_remove_sites(d: &Diagram) -> Vec<MoveSite> {
    let table = d.position_table();
    let mut out = Vec::new();
    for x in 0..d.num_crossings() {
        for y in x + 1..d.num_crossings() {
            let (Some(sx), Some(sy)) = (d.crossings()[x].sign(), d.crossings()[y].sign()) else {
                continue;
            };
            if sx == sy {
                continue;
            }
            let ((ox, ux), (oy, uy)) = (table[x], table[y]);
            if adjacent(d, ox, oy) && adjacent(d, ux, uy) {
                out.push(MoveSite::R2Remove { first: x, second: y });
            }
        }
    }
    out
}

/// Local pattern of an R3 triangle: pass order on each strand and the three
/// crossing signs. Roles: top strand T, middle M, bottom B; crossings TM, TB, MB.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct TrianglePattern {
    top_meets_middle_first: bool,
    middle_meets_top_first: bool,
    bottom_meets_top_first: bool,
    signs: [Sign; 3],
}

#[cfg(test)]
impl TrianglePattern {
    fn moved(self) -> Self {
        TrianglePattern {
            top_meets_middle_first: !self.top_meets_middle_first,
            middle_meets_top_first: !self.middle_meets_top_first,
            bottom_meets_top_first: !self.bottom_meets_top_first,
            signs: self.signs,
        }
    }
}

/// Patterns realized by three generic directed lines at distinct heights.
fn r3_table() -> &'static HashSet<TrianglePattern> {
    static TABLE: OnceLock<HashSet<TrianglePattern>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = HashSet::new();
        let base: [(i64, i64); 3] = [(1, 0), (0, 1), (1, -1)];
        for offset in [-1i64, 1] {
            // lines y = 0, x = 0, x + y = offset
            let point = |i: usize, j: usize| -> (i64, i64) {
                match (i.min(j), i.max(j)) {
                    (0, 1) => (0, 0),
                    (0, 2) => (offset, 0),
                    _ => (0, offset),
                }
            };
            for orient in 0..8u8 {
                let dir: Vec<(i64, i64)> = (0..3)
                    .map(|k| {
                        let (x, y) = base[k];
                        if orient >> k & 1 == 1 {
                            (-x, -y)
                        } else {
                            (x, y)
                        }
                    })
                    .collect();
                for [t, m, b] in PERMS {
                    let along = |line: usize, other: usize| {
                        let p = point(line, other);
                        p.0 * dir[line].0 + p.1 * dir[line].1
                    };
                    let sign = |o: usize, u: usize| {
                        let cr = dir[o].0 * dir[u].1 - dir[o].1 * dir[u].0;
                        if cr > 0 {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        }
                    };
                    out.insert(TrianglePattern {
                        top_meets_middle_first: along(t, m) < along(t, b),
                        middle_meets_top_first: along(m, t) < along(m, b),
                        bottom_meets_top_first: along(b, t) < along(b, m),
                        signs: [sign(t, m), sign(t, b), sign(m, b)],
                    });
                }
            }
        }
        out
    })
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Reads the pattern of a candidate triangle, or `None` if the three pass
/// pairs are not consecutive on components of length at least three.
fn triangle_pattern(d: &Diagram, [tm, tb, mb]: [usize; 3]) -> Option<TrianglePattern> {
    let cr = d.crossings();
    let signs = [cr[tm].sign()?, cr[tb].sign()?, cr[mb].sign()?];
    let table = d.position_table();
    let pair = |a: (usize, usize), b: (usize, usize)| -> Option<bool> {
        if d.components()[a.0].len() < 3 {
            return None;
        }
        if follows(d, a, b) {
            Some(true)
        } else if follows(d, b, a) {
            Some(false)
        } else {
            None
        }
    };
    Some(TrianglePattern {
        top_meets_middle_first: pair(table[tm].0, table[tb].0)?,
        middle_meets_top_first: pair(table[tm].1, table[mb].0)?,
        bottom_meets_top_first: pair(table[tb].1, table[mb].1)?,
        signs,
    })
}

fn r3_sites(d: &Diagram) -> Vec<MoveSite> {
    let n = d.num_crossings();
    let table = d.position_table();
    let mut out = Vec::new();
    for tm in 0..n {
        for tb in 0..n {
            if tb == tm || !adjacent(d, table[tm].0, table[tb].0) {
                continue;
            }
            for mb in 0..n {
                if mb == tm || mb == tb {
                    continue;
                }
                let crossings = [tm, tb, mb];
                if let Some(p) = triangle_pattern(d, crossings) {
                    if r3_table().contains(&p) {
                        out.push(MoveSite::R3 { crossings });
                    }
                }
            }
        }
    }
    out
}

fn gaps(d: &Diagram) -> Vec<Gap> {
    d.components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.len().max(1)).map(move |index| Gap { component: c, index }))
        .collect()
}

/// Sites that decrease the crossing number.
pub fn decreasing_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut v = r1_remove_sites(d);
    v.extend(r2_remove_sites(d));
    v
}

/// All deletion and R3 sites, plus R1 insertions at every gap (both orders,
/// both signs) and R2 insertions for every ordered pair of distinct gaps.
pub fn enumerate_moves(d: &Diagram) -> Vec<MoveSite> {
    let mut v = decreasing_moves(d);
    v.extend(r3_sites(d));
    let gs = gaps(d);
    for &gap in &gs {
        for over_first in [true, false] {
            for sign in [Sign::Pos, Sign::Neg] {
                v.push(MoveSite::R1Insert { gap, over_first, sign });
            }
        }
    }
    for &over in &gs {
        for &under in &gs {
            if over == under {
                continue;
            }
            for reversed in [false, true] {
                for sign in [Sign::Pos, Sign::Neg] {
                    v.push(MoveSite::R2Insert { over, under, reversed, sign });
                }
            }
        }
    }
    v
}

fn gap_valid(d: &Diagram, g: Gap) -> bool {
    g.component < d.num_components() && g.index < d.components()[g.component].len().max(1)
}

fn insert_passes(
    comps: &mut [Vec<Pass>],
    inserts: &mut [(Gap, Vec<Pass>)],
) {
    // insert from the rightmost gap so earlier indices stay valid
    inserts.sort_by_key(|g| std::cmp::Reverse((g.0.component, g.0.index)));
    for (g, passes) in inserts.iter() {
        let comp = &mut comps[g.component];
        let at = g.index.min(comp.len());
        comp.splice(at..at, passes.iter().copied());
    }
}

fn with_new_crossings(d: &Diagram, signs: &[Sign], inserts: Vec<(Gap, Vec<Pass>)>) -> Diagram {
    let mut comps: Vec<Vec<Pass>> = d.components().to_vec();
    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    crossings.extend(signs.iter().map(|&s| Crossing::Classical(s)));
    let mut inserts = inserts;
    insert_passes(&mut comps, &mut inserts);
    Diagram::new(comps, crossings).expect("inserted passes are complete")
}

/// Applies a move, checking that it is valid for `d`.
pub fn apply_move(d: &Diagram, m: &MoveSite) -> Result<Diagram, MoveError> {
    let bad = || MoveError::Inapplicable(m.clone());
    match *m {
        MoveSite::R1Remove { crossing } => {
            if crossing >= d.num_crossings() || !r1_remove_sites(d).contains(m) {
                return Err(bad());
            }
            Ok(d.delete_chord(crossing).map_err(|_| bad())?)
        }
        MoveSite::R2Remove { first, second } => {
            let n = d.num_crossings();
            if first >= n || second >= n || !r2_remove_sites(d).contains(m) {
                return Err(bad());
            }
            let e = d.delete_chord(first.max(second)).map_err(|_| bad())?;
            Ok(e.delete_chord(first.min(second)).map_err(|_| bad())?)
        }
        MoveSite::R1Insert { gap, over_first, sign } => {
            if !gap_valid(d, gap) {
                return Err(bad());
            }
            let x = d.num_crossings();
            let passes = if over_first { vec![Pass::over(x), Pass::under(x)] } else { vec![Pass::under(x), Pass::over(x)] };
            Ok(with_new_crossings(d, &[sign], vec![(gap, passes)]))
        }
        MoveSite::R2Insert { over, under, reversed, sign } => {
            if !gap_valid(d, over) || !gap_valid(d, under) || over == under {
                return Err(bad());
            }
            let (x, y) = (d.num_crossings(), d.num_crossings() + 1);
            let unders = if reversed { vec![Pass::under(y), Pass::under(x)] } else { vec![Pass::under(x), Pass::under(y)] };
            Ok(with_new_crossings(
                d,
                &[sign, sign.flip()],
                vec![(over, vec![Pass::over(x), Pass::over(y)]), (under, unders)],
            ))
        }
        MoveSite::R3 { crossings } => {
            let n = d.num_crossings();
            if crossings.iter().any(|&c| c >= n) {
                return Err(bad());
            }
            let p = triangle_pattern(d, crossings).ok_or_else(bad)?;
            if !r3_table().contains(&p) {
                return Err(bad());
            }
            let [tm, tb, mb] = crossings;
            let t = d.position_table();
            let mut comps: Vec<Vec<Pass>> = d.components().to_vec();
            for (a, b) in [(t[tm].0, t[tb].0), (t[tm].1, t[mb].0), (t[tb].1, t[mb].1)] {
                let tmp = comps[a.0][a.1];
                comps[a.0][a.1] = comps[b.0][b.1];
                comps[b.0][b.1] = tmp;
            }
            Ok(Diagram::new(comps, d.crossings().to_vec()).expect("passes are permuted in place"))
        }
    }
}

fn random_gap(d: &Diagram, rng: &mut ChaCha8Rng) -> Gap {
    let component = rng.gen_range(0..d.num_components());
    let len = d.components()[component].len().max(1);
    Gap { component, index: rng.gen_range(0..len) }
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Seeded random sequence of `steps` moves. Deletions are favored once the
/// diagram has grown by more than six crossings.
pub fn random_walk(d: &Diagram, steps: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = d.num_crossings();
    let mut cur = d.clone();
    if cur.num_components() == 0 {
        return cur;
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < steps && attempts < steps * 20 + 20 {
        attempts += 1;
        let grown = cur.num_crossings() > start + 6;
        let roll = rng.gen_range(0..100);
        let site = match (roll, grown) {
            (0..=19, false) | (0..=4, true) => {
                Some(MoveSite::R1Insert { gap: random_gap(&cur, &mut rng), over_first: rng.gen_bool(0.5), sign: random_sign(&mut rng) })
            }
            (20..=39, false) | (5..=9, true) => {
                let over = random_gap(&cur, &mut rng);
                let under = random_gap(&cur, &mut rng);
                (over != under).then(|| MoveSite::R2Insert { over, under, reversed: rng.gen_bool(0.5), sign: random_sign(&mut rng) })
            }
            (40..=69, false) | (10..=29, true) => pick(&r3_sites(&cur), &mut rng),
            _ => pick(&decreasing_moves(&cur), &mut rng),
        };
        if let Some(site) = site {
            cur = apply_move(&cur, &site).expect("sites are generated for the current diagram");
            done += 1;
        }
    }
    cur
}

fn pick(v: &[MoveSite], rng: &mut ChaCha8Rng) -> Option<MoveSite> {
    (!v.is_empty()).then(|| v[rng.gen_range(0..v.len())].clone())
}

/// Repeatedly applies R1/R2 deletions, and R3 moves that enable a deletion,
/// until none applies or `budget` moves have been made.
pub fn greedy_simplify(d: &Diagram, budget: usize) -> Diagram {
    let mut cur = d.clone();
    let mut used = 0;
    'outer: while used < budget {
        if let Some(m) = decreasing_moves(&cur).first() {
            cur = apply_move(&cur, m).expect("enumerated site");
            used += 1;
            continue;
        }
        let before = decreasing_moves(&cur).len();
        for m in r3_sites(&cur) {
            let next = apply_move(&cur, &m).expect("enumerated site");
            let dec = decreasing_moves(&next);
            if dec.len() > before && used + 2 <= budget {
                cur = apply_move(&next, &dec[0]).expect("enumerated site");
                used += 2;
                continue 'outer;
            }
        }
        break;
    }
    cur
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplifyReport {
    pub input_crossings: usize,
    pub output_crossings: usize,
    pub output: Diagram,
}

pub fn simplify_report(d: &Diagram, budget: usize) -> SimplifyReport {
    let output = greedy_simplify(d, budget);
    SimplifyReport { input_crossings: d.num_crossings(), output_crossings: output.num_crossings(), output }
}

/// Unknot diagram made of `k` nested curls with alternating signs.
pub fn coil(k: usize) -> Diagram {
    let mut comps = Vec::new();
    let mut crossings = Vec::new();
    for i in 0..k {
        comps.push(Pass::over(i));
        crossings.push(Crossing::Classical(if i % 2 == 0 { Sign::Pos } else { Sign::Neg }));
    }
    for i in (0..k).rev() {
        comps.push(Pass::under(i));
    }
    Diagram::new(vec![comps], crossings).expect("each crossing visited twice")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn r3_table_is_closed_under_the_move() {
        let t = r3_table();
        assert!(!t.is_empty());
        for p in t {
            assert!(t.contains(&p.moved()));
        }
    }

    #[test]
    fn trefoil_has_no_deletions() {
        let t = g("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)");
        assert!(decreasing_moves(&t).is_empty());
    }

    #[test]
    fn curl_and_loop() {
        let c = g("(o1+)(u1+)");
        assert_eq!(r1_remove_sites(&c).len(), 1);
        let u = apply_move(&c, &MoveSite::R1Remove { crossing: 0 }).unwrap();
        assert_eq!(u, Diagram::unknot());
        let sites = enumerate_moves(&Diagram::unknot());
        assert!(sites.iter().all(|m| matches!(m, MoveSite::R1Insert { .. })));
    }

    #[test]
    fn stale_site_rejected() {
        let t = g("(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)");
        assert!(apply_move(&t, &MoveSite::R1Remove { crossing: 0 }).is_err());
        assert!(apply_move(&t, &MoveSite::R2Remove { first: 0, second: 7 }).is_err());
    }
}
