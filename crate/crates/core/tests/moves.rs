use proptest::prelude::*;
use vknot::bracket::f_poly;
use vknot::diagram::{random_diagram, Diagram};
use vknot::moves::{apply_move, coil, enumerate_moves, greedy_simplify, random_walk, MoveSite};

const TREFOIL: &str = "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)";

fn g(s: &str) -> Diagram {
    s.parse().unwrap()
}

#[test]
fn every_enumerated_move_preserves_f() {
    let mut r3 = 0;
    for seed in 0..40u64 {
        let d = random_walk(&random_diagram(4, 1 + (seed % 2) as usize, seed), 6, seed);
        if d.num_crossings() > 9 {
            continue;
        }
        let f = f_poly(&d).unwrap();
        for m in enumerate_moves(&d).into_iter().filter(|m| !matches!(m, MoveSite::R2Insert { .. }) || seed % 8 == 0) {
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(e.num_crossings() as i64 - d.num_crossings() as i64, m.delta());
            if e.num_crossings() <= 12 {
                assert_eq!(f_poly(&e).unwrap(), f, "{m:?} on {d}");
            }
            if matches!(m, MoveSite::R3 { .. }) {
                r3 += 1;
            }
        }
    }
    assert!(r3 > 0, "no R3 site exercised");
}

#[test]
fn walks_are_reproducible() {
    let t = g(TREFOIL);
    assert_eq!(random_walk(&t, 0, 1), t);
    assert_eq!(random_walk(&t, 25, 7), random_walk(&t, 25, 7));
}

#[test]
fn insertions_are_undone_by_deletions() {
    let t = g(TREFOIL);
    for m in enumerate_moves(&t) {
        let e = apply_move(&t, &m).unwrap();
        let undo = match m {
            MoveSite::R1Insert { .. } => MoveSite::R1Remove { crossing: 3 },
            MoveSite::R2Insert { .. } => MoveSite::R2Remove { first: 3, second: 4 },
            _ => continue,
        };
        assert_eq!(apply_move(&e, &undo).unwrap(), t);
    }
}

#[test]
fn simplifier_unknots_coils() {
    assert_eq!(greedy_simplify(&g("(o1+)(u1+)"), 10), Diagram::unknot());
    for k in 1..8 {
        assert_eq!(greedy_simplify(&coil(k), 100), Diagram::unknot());
    }
    let t = g(TREFOIL);
    assert_eq!(greedy_simplify(&t, 100), t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn walk_preserves_f(n in 1usize..6, comps in 1usize..3, seed in any::<u64>()) {
        let d = random_diagram(n, comps, seed);
        let w = random_walk(&d, 30, seed);
        prop_assume!(w.num_crossings() <= 14);
        prop_assert_eq!(f_poly(&w).unwrap(), f_poly(&d).unwrap());
    }

    #[test]
    fn simplify_never_grows_and_is_idempotent(n in 1usize..7, seed in any::<u64>()) {
        let d = random_walk(&random_diagram(n, 1, seed), 10, seed);
        let s = greedy_simplify(&d, 200);
        prop_assert!(s.num_crossings() <= d.num_crossings());
        prop_assert_eq!(greedy_simplify(&s, 200), s.clone());
    }
}
