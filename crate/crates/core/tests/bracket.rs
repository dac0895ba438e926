use proptest::prelude::*;
use vknot::bracket::{bracket, connected_sum_check, f_poly, jones, verify_switching};
use vknot::diagram::{parse_pd, Diagram};
use vknot::ring::{loop_value, Poly};

const TREFOIL: &str = "(o1+)(u2+)(o3+)(u1+)(o2+)(u3+)";
const K942_PD: &str = "X[4,1,5,2] X[10,5,11,6] X[8,4,9,3] X[2,10,3,9] X[11,17,12,16] \
                       X[7,14,8,15] X[15,6,16,7] X[13,1,14,18] X[17,13,18,12]";
const FIGURE_EIGHT_PD: &str = "X[1,5,2,4] X[5,1,6,8] X[3,6,4,7] X[7,2,8,3]";

fn g(s: &str) -> Diagram {
    s.parse().unwrap()
}

#[test]
fn nine_forty_two() {
    let k = parse_pd(K942_PD).unwrap();
    assert_eq!(k.num_crossings(), 9);
    let f = f_poly(&k).unwrap();
    assert_eq!(f.render(), "A^12 - A^8 + A^4 - 1 + A^-4 - A^-8 + A^-12");
    assert_eq!(f.invert_vars(), f);
}

#[test]
fn trefoil_sum_figure_eight() {
    let f8 = parse_pd(FIGURE_EIGHT_PD).unwrap();
    assert_eq!(f8.writhe(), 0);
    let r = connected_sum_check(&g(TREFOIL), &f8).unwrap();
    assert!(r.holds);
    let product = &bracket(&g(TREFOIL)).unwrap() * &bracket(&f8).unwrap();
    assert_eq!(r.bracket_sum, product);
    assert_eq!(r.bracket_sum.render(), "-A^13 + A^9 - 2*A^5 + 3*A - 3*A^-3 + 2*A^-7 - 2*A^-11 + A^-15");
    let u = connected_sum_check(&g(TREFOIL), &Diagram::unknot()).unwrap();
    assert_eq!(u.bracket_sum, bracket(&g(TREFOIL)).unwrap());
}

/// The seven-term polynomial usually quoted next to the trefoil # figure-eight
/// sum is the bracket of the writhe-one 9_42 diagram; it is not the bracket
/// of any diagram of the connected sum.
#[test]
fn quoted_seven_term_value_is_nine_forty_two() {
    let quoted = Poly::parse("-A^-9 + A^-5 - A^-1 + A^3 - A^7 + A^11 - A^15", None).unwrap();
    let k = parse_pd(K942_PD).unwrap();
    assert_eq!(k.writhe(), 1);
    assert_eq!(bracket(&k).unwrap(), quoted);
    let sum = g(TREFOIL).connected_sum(&parse_pd(FIGURE_EIGHT_PD).unwrap()).unwrap();
    assert_ne!(f_poly(&sum).unwrap(), f_poly(&k).unwrap());
}

#[test]
fn mirror_inverts_a() {
    let t = g(TREFOIL);
    assert_eq!(bracket(&t.mirror()).unwrap(), bracket(&t).unwrap().invert_vars());
    assert_eq!(t.mirror().writhe(), -3);
}

#[test]
fn disjoint_union_gains_loop_factor() {
    let t = g(TREFOIL);
    let u = t.disjoint_union(&t);
    let b = bracket(&t).unwrap();
    assert_eq!(bracket(&u).unwrap(), &(&b * &b) * &loop_value());
}

#[test]
fn unknot_jones_is_one() {
    assert!(jones(&Diagram::unknot()).unwrap().is_one());
    assert!(f_poly(&Diagram::unknot()).unwrap().is_one());
}

fn random_code() -> impl Strategy<Value = Diagram> {
    (1usize..7, any::<u64>()).prop_map(|(n, seed)| vknot::diagram::random_diagram(n, 1, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn switching_formula(d in random_code(), k in any::<prop::sample::Index>()) {
        let id = k.index(d.num_crossings());
        prop_assert!(verify_switching(&d, id).unwrap().holds);
    }

    #[test]
    fn switch_matches_virtualize(d in random_code(), k in any::<prop::sample::Index>()) {
        let id = k.index(d.num_crossings());
        prop_assert_eq!(jones(&d.switch(id).unwrap()).unwrap(), jones(&d.virtualize(id).unwrap()).unwrap());
    }

    #[test]
    fn gauss_round_trip(d in random_code()) {
        let back: Diagram = d.to_gauss().parse().unwrap();
        prop_assert!(back.same_up_to_relabeling(&d));
    }
}
