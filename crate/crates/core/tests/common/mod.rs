#![allow(dead_code)]

use vknot::diagram::{parse_pd, Diagram};

pub const TREFOIL: &str = "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)";
pub const LEFT_TREFOIL: &str = "(o1-)(u2-)(o3-)(u1-)(o2-)(u3-)";
pub const VIRTUAL_TREFOIL: &str = "(o1+)(o2+)(u1+)(u2+)";
pub const KISHINO: &str = "O1- U2- O3+ O2- U3+ O4+ U1- U4+";
pub const ONE_RELATION_KNOT: &str = "Oa- Ob+ Uc- Ub+ Oc- Od+ Ua- Ud+";
pub const K942_PD: &str = "X[4,1,5,2] X[10,5,11,6] X[8,4,9,3] X[2,10,3,9] X[11,17,12,16] \
                           X[7,14,8,15] X[15,6,16,7] X[13,1,14,18] X[17,13,18,12]";
pub const FIGURE_EIGHT_PD: &str = "X[1,5,2,4] X[5,1,6,8] X[3,6,4,7] X[7,2,8,3]";

pub fn g(s: &str) -> Diagram {
    s.parse().unwrap()
}

pub fn figure_eight() -> Diagram {
    parse_pd(FIGURE_EIGHT_PD).unwrap()
}

pub fn nine_forty_two() -> Diagram {
    parse_pd(K942_PD).unwrap()
}

/// Standard diagram of the (2, n) torus knot or link (closure of the
/// two-strand braid with n positive crossings).
pub fn torus_2(n: usize) -> Diagram {
    if n % 2 == 1 {
        let items: Vec<String> =
            (0..2 * n).map(|k| format!("({}{}+)", if k % 2 == 0 { 'o' } else { 'u' }, k % n + 1)).collect();
        g(&items.concat())
    } else {
        let comp = |first: char, second: char| -> String {
            (0..n).map(|k| format!("({}{}+)", if k % 2 == 0 { first } else { second }, k + 1)).collect()
        };
        g(&format!("{};{}", comp('o', 'u'), comp('u', 'o')))
    }
}

/// Twenty planar classical knot diagrams.
pub fn classical_corpus() -> Vec<Diagram> {
    let t3 = g(TREFOIL);
    let f8 = figure_eight();
    let k = nine_forty_two();
    let mut v = vec![t3.clone(), t3.mirror(), f8.clone(), k.clone(), k.mirror()];
    for n in [5, 7, 9] {
        v.push(torus_2(n));
        v.push(torus_2(n).mirror());
    }
    v.push(t3.connected_sum(&t3).unwrap());
    v.push(t3.connected_sum(&t3.mirror()).unwrap());
    v.push(t3.connected_sum(&f8).unwrap());
    v.push(f8.connected_sum(&f8).unwrap());
    v.push(torus_2(5).connected_sum(&f8).unwrap());
    v.push(t3.reverse(0).unwrap().connected_sum(&torus_2(5).mirror()).unwrap());
    v.push(f8.connected_sum(&t3.mirror()).unwrap().connected_sum(&t3).unwrap());
    v.push(torus_2(3).connected_sum(&torus_2(7)).unwrap());
    v.push(parse_pd("X[1,2,2,1]").unwrap().connected_sum(&f8).unwrap());
    assert_eq!(v.len(), 20);
    v
}

/// Virtual and classical knots for move-invariance suites.
pub fn mixed_corpus() -> Vec<Diagram> {
    let mut v = vec![g(TREFOIL), g(LEFT_TREFOIL), g(VIRTUAL_TREFOIL), g(KISHINO), g(ONE_RELATION_KNOT), figure_eight()];
    v.push(g("(o1-)(o2-)(u1-)(u2-)"));
    v.push(g("(o1+)(u2-)(u1+)(o3+)(o2-)(u3+)"));
    v.push(g("(o1+)(o2-)(u1+)(u3-)(u2-)(o3-)"));
    v
}
