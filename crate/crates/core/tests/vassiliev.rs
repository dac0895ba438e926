mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vknot::bracket::jones;
use vknot::diagram::Diagram;
use vknot::moves::random_walk;
use vknot::ring::{Int, Poly, Rational};
use vknot::vassiliev::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `k!` times the coefficient of `x^k` in `p(e^x)` for a Laurent polynomial
/// in `t` with integer exponents.
fn moment(p: &Poly, k: u32) -> Rational {
    let den = p.vars().get(0).denom as i64;
    let mut acc = Rational::zero();
    for (e, c) in p.terms() {
        acc += Rational::from_integer(c.clone()) * num_traits::pow(q(e[0], den), k as usize);
    }
    acc
}

/// `V^(k)(1)` through falling factorials.
fn derivative_at_one(p: &Poly, k: u32) -> Rational {
    let den = p.vars().get(0).denom as i64;
    let mut acc = Rational::zero();
    for (e, c) in p.terms() {
        let ff = (0..k as i64).fold(q(1, 1), |f, j| f * (q(e[0], den) - q(j, 1)));
        acc += Rational::from_integer(c.clone()) * ff;
    }
    acc
}

/// Independent value of the degree-three invariant from the Jones polynomial.
fn v3_from_jones(d: &Diagram) -> Rational {
    let v = jones(d).unwrap();
    -derivative_at_one(&v, 3) / q(36, 1) - derivative_at_one(&v, 2) / q(12, 1)
}

#[test]
fn anchors() {
    assert!(v3(&Diagram::unknot()).unwrap().is_zero());
    assert_eq!(v3(&g(TREFOIL)).unwrap(), q(1, 1));
    assert_eq!(v3(&g(LEFT_TREFOIL)).unwrap(), q(-1, 1));
    assert!(v3(&figure_eight()).unwrap().is_zero());
}

#[test]
fn pattern_counts_on_trefoil() {
    let gd = gauss_diagram(&g(TREFOIL)).unwrap();
    let cfgs = v3_configs();
    assert_eq!(count_subdiagrams(&cfgs[0].diagram, false, &gd), Int::from(1));
    assert!(count_subdiagrams(&cfgs[1].diagram, false, &gd).is_zero());
    let four = ChordDiagram::from_word("12341234").unwrap();
    assert!(count_subdiagrams(&four, false, &gd).is_zero());
    let vt = gauss_diagram(&g(VIRTUAL_TREFOIL)).unwrap();
    assert_eq!(vt.num_chords(), 2);
    assert!(vt.interleaved(0, 1));
}

#[test]
fn matches_jones_derivatives_on_classical_knots() {
    for d in classical_corpus() {
        assert_eq!(v3(&d).unwrap(), v3_from_jones(&d), "{d}");
    }
}

#[test]
fn invariant_under_walks_of_classical_knots() {
    let corpus = classical_corpus();
    let mut checked = 0;
    for (i, d) in corpus.iter().enumerate() {
        if d.num_crossings() > 10 {
            continue;
        }
        let v0 = v3(d).unwrap();
        for seed in 0..14u64 {
            let w = random_walk(d, 12, seed * 101 + i as u64);
            assert_eq!(v3(&w).unwrap(), v0, "{d} -> {w}");
            checked += 1;
        }
    }
    assert!(checked >= 200, "{checked}");
}

#[test]
fn mirror_negates() {
    for d in classical_corpus() {
        assert_eq!(v3(&d.mirror()).unwrap(), -v3(&d).unwrap());
    }
}

#[test]
fn formula_is_not_a_virtual_invariant() {
    // the classical formula changes under moves on some virtual diagrams
    let vt = g(VIRTUAL_TREFOIL);
    let v0 = v3(&vt).unwrap();
    assert!((0..40).any(|seed| v3(&random_walk(&vt, 10, seed)).unwrap() != v0));
}

#[test]
fn user_formulas() {
    let cfgs: Vec<ChordConfig> = [V3_A, &format!("{V3_B} @ 1/2")].iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(evaluate_formula(&cfgs, &g(TREFOIL)).unwrap(), q(1, 1));
    let signed: ChordConfig = "o1- u2- o3- u1- o2- u3-".parse().unwrap();
    assert_eq!(evaluate_formula(std::slice::from_ref(&signed), &g(LEFT_TREFOIL)).unwrap(), q(-1, 1));
    assert!(evaluate_formula(&[signed], &g(TREFOIL)).unwrap().is_zero());
}

#[test]
fn top_row() {
    assert_eq!(top_row_eval(&ChordDiagram::empty()), Int::from(-2));
    assert_eq!(top_row_eval(&ChordDiagram::from_word("123123").unwrap()), Int::from(24));
    assert_eq!(top_row_eval(&ChordDiagram::from_word("121323").unwrap()), Int::from(12));
    for n in 2..=4 {
        assert!(check_four_term(|d| Rational::from_integer(top_row_eval(d)), n).holds);
    }
}

#[test]
fn su2() {
    let one = ChordDiagram::from_word("11").unwrap();
    assert_eq!(su2_weight(&ChordDiagram::empty(), true), q(2, 1));
    assert_eq!(su2_weight(&one, true), q(3, 2));
    assert!(su2_weight(&one, false).is_zero());
    for n in 2..=3 {
        assert!(check_four_term(|d| su2_weight(d, true), n).holds);
        assert!(check_four_term(|d| su2_weight(d, false), n).holds);
    }
}

#[test]
fn four_term_negative_control() {
    let report = check_four_term(
        |d| {
            let seed = d.undirected_key().iter().fold(7u64, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64));
            Rational::from_integer(ChaCha8Rng::seed_from_u64(seed).gen_range(-50i64..50).into())
        },
        3,
    );
    assert!(!report.holds);
    assert!(report.instances > 0);
}

#[test]
fn rigid_vertex_expansion() {
    let t = g(TREFOIL);
    let w = VertexWeights::vassiliev(BaseInvariant::Jones);
    assert_eq!(rigid_vertex_extend(&t, &w, BaseInvariant::Jones).unwrap(), jones(&t).unwrap());
    // a node whose resolutions are both curls
    let curl = g("(o1*)(u1*)");
    assert!(rigid_vertex_extend(&curl, &w, BaseInvariant::Jones).unwrap().is_zero());
    // one node of the trefoil: trefoil minus unknot
    let one = t.make_node(0).unwrap();
    let v = rigid_vertex_extend(&one, &w, BaseInvariant::Jones).unwrap();
    assert_eq!(v, &jones(&t).unwrap() - &Poly::one(v.vars()));
    // all three nodes: a type-three graph whose order-three Jones part is
    // that of the trefoil minus its mirror image and whose top row is 24
    let mut graph = t.clone();
    for id in 0..3 {
        graph = graph.make_node(id).unwrap();
    }
    let vg = rigid_vertex_extend(&graph, &w, BaseInvariant::Jones).unwrap();
    assert!(!vg.is_zero());
    for k in 0..3 {
        assert!(moment(&vg, k).is_zero(), "order {k}");
    }
    let diff = &jones(&t).unwrap() - &jones(&t.mirror()).unwrap();
    assert_eq!(moment(&vg, 3), moment(&diff, 3));
    // top row uses the loop value -2 in place of 1 and series coefficients
    assert_eq!(moment(&vg, 3) / q(6, 1) * q(-2, 1), q(24, 1));
    assert!(rigid_vertex_extend(&vknot::moves::coil(9).make_node(0).unwrap(), &w, BaseInvariant::Jones).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walks_preserve_v3_of_trefoil_sums(seed in any::<u64>(), steps in 1usize..16) {
        let d = g(TREFOIL).connected_sum(&figure_eight()).unwrap();
        prop_assert_eq!(v3(&random_walk(&d, steps, seed)).unwrap(), v3(&d).unwrap());
    }
}
