mod common;

use common::*;
use num_traits::Zero;
use vknot::amplitude::*;
use vknot::bracket::bracket;
use vknot::diagram::Diagram;
use vknot::ring::{a_vars, loop_value, GaussInt, GaussPoly, Poly, Rational};

fn to_gauss(p: &Poly) -> GaussPoly {
    p.map_coeffs(|c| GaussInt::new(c.clone(), 0))
}

fn d() -> GaussPoly {
    to_gauss(&loop_value())
}

fn w(s: &str) -> MorseWord {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Morse words and the diagrams they draw; `x` closes to a negative curl.
fn library() -> Vec<(&'static str, MorseWord, Diagram)> {
    vec![
        ("circle", w("u\nn"), Diagram::unknot()),
        ("two circles", w("u u\nn n"), Diagram::unlink(2)),
        ("nested circles", w("u\n| u |\n| n |\nn"), Diagram::unlink(2)),
        ("zigzag circle", w("u\n| u |\nn | |\nn"), Diagram::unknot()),
        ("negative curl", MorseWord::braid_closure(2, &[1]).unwrap(), g("(o1-)(u1-)")),
        ("positive curl", MorseWord::braid_closure(2, &[-1]).unwrap(), g("(o1+)(u1+)")),
        ("hopf", MorseWord::braid_closure(2, &[1, 1]).unwrap(), torus_2(2).mirror()),
        ("mirror hopf", MorseWord::braid_closure(2, &[-1, -1]).unwrap(), torus_2(2)),
        ("left trefoil", MorseWord::braid_closure(2, &[1, 1, 1]).unwrap(), g(LEFT_TREFOIL)),
        ("right trefoil", MorseWord::braid_closure(2, &[-1, -1, -1]).unwrap(), g(TREFOIL)),
        ("figure eight", MorseWord::braid_closure(3, &[1, -2, 1, -2]).unwrap(), figure_eight()),
    ]
}

#[test]
fn loop_value_and_model_basics() {
    let m = bracket_model();
    assert_eq!(evaluate(&w("u\nn"), &m), d());
    let sq: GaussPoly = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).fold(GaussPoly::zero(&a_vars()), |acc, (a, b)| {
        &acc + &(m.cap_at(a, b) * m.cap_at(a, b))
    });
    assert_eq!(sq, d());
}

#[test]
fn library_matches_bracket() {
    let m = bracket_model();
    for (name, word, diagram) in library() {
        assert!(diagram.is_planar(), "{name}");
        let expected = &d() * &to_gauss(&bracket(&diagram).unwrap());
        assert_eq!(evaluate(&word, &m), expected, "{name}");
    }
}

#[test]
fn relations_hold_for_bracket_model() {
    let r = check_relations(&bracket_model());
    assert!(r.all(), "{r:?}");
}

#[test]
fn permutation_and_corrupted_models() {
    let b = bracket_model();
    let p = TensorModel::permutation(2, b.cup.clone(), b.cap.clone());
    let r = check_relations(&p);
    assert!(r.move2 && r.move3);
    let mut bad = bracket_model();
    bad.r[5] = &bad.r[5] + &GaussPoly::one(&a_vars());
    assert!(!check_relations(&bad).move3);
}

#[test]
fn word_level_relations() {
    let m = bracket_model();
    let base = MorseWord::braid_closure(2, &[-1, -1, -1]).unwrap();
    let v = evaluate(&base, &m);
    // four strands run above slice 1
    use Symbol::{Cap, Cup, Id, Neg, Pos};
    let spliced = [
        vec![vec![Pos, Id, Id], vec![Neg, Id, Id]],
        vec![vec![Id, Neg, Id], vec![Id, Pos, Id]],
        vec![vec![Id, Id, Id, Id, Cup], vec![Id, Id, Id, Cap, Id]],
        vec![vec![Cup, Id, Id, Id, Id], vec![Id, Cap, Id, Id, Id]],
        vec![vec![Pos, Id, Id], vec![Id, Pos, Id], vec![Pos, Id, Id], vec![Neg, Id, Id], vec![Id, Neg, Id], vec![Neg, Id, Id]],
    ];
    for piece in spliced {
        assert_eq!(evaluate(&base.splice(1, &piece).unwrap(), &m), v);
    }
    // Yang-Baxter move inside a three-strand closure
    let lhs = MorseWord::braid_closure(3, &[1, 2, 1, -2]).unwrap();
    let rhs = MorseWord::braid_closure(3, &[2, 1, 2, -2]).unwrap();
    assert_eq!(evaluate(&lhs, &m), evaluate(&rhs, &m));
    // a half-turn of the plane carries one curl onto the other
    let a = w("u\n| u |\nx | |\n| n |\nn");
    let b = w("u\n| u |\n| | x\n| n |\nn");
    assert_eq!(evaluate(&a, &m), evaluate(&b, &m));
    assert_eq!(evaluate(&a, &m), evaluate(&MorseWord::braid_closure(2, &[1]).unwrap(), &m));
}

#[test]
fn bad_words() {
    assert!(matches!("u\n|".parse::<MorseWord>(), Err(AmplitudeError::Strands { .. })));
    assert!(matches!("u".parse::<MorseWord>(), Err(AmplitudeError::Open(2))));
    assert!(matches!("u\nq".parse::<MorseWord>(), Err(AmplitudeError::Symbol { line: 2, .. })));
}

#[test]
fn r_lambda() {
    let lam = GaussPoly::monomial(&a_vars(), vec![-4], GaussInt::new(1, 0));
    let rep = check_r_lambda(&bracket_model().with_lambda(lam)).unwrap();
    assert!(rep.spin_preserving && rep.r_lambda);
    let wrong = GaussPoly::monomial(&a_vars(), vec![4], GaussInt::new(1, 0));
    assert!(!check_r_lambda(&bracket_model().with_lambda(wrong)).unwrap().r_lambda);
    let b = bracket_model();
    let p = TensorModel::permutation(2, b.cup.clone(), b.cap.clone()).with_lambda(GaussPoly::one(&a_vars()));
    let rep = check_r_lambda(&p).unwrap();
    assert!(rep.spin_preserving && rep.r_lambda);
    let mut spin = bracket_model();
    spin.r[1] = GaussPoly::one(&a_vars()); // R^{11}_{12}
    assert!(!spin_preserving(&spin));
    assert!(matches!(check_r_lambda(&bracket_model()), Err(AmplitudeError::NoLambda)));
}

#[test]
fn infinitesimal_braiding_from_series() {
    let (_, r) = series_r(&bracket_model()).unwrap();
    // derivative of P R at A = 1, times 1/4, computed by hand
    let expected = CMatrix::from_rationals(
        4,
        &[
            q(-1, 4), q(0, 1), q(0, 1), q(0, 1),
            q(0, 1), q(1, 4), q(0, 1), q(0, 1),
            q(0, 1), q(-1, 1), q(1, 4), q(0, 1),
            q(0, 1), q(0, 1), q(0, 1), q(-1, 4),
        ],
    );
    assert_eq!(r, expected);
    assert!(check_classical_ybe(&r).unwrap());
    let t = r.add(&r.transpose());
    let rep = infinitesimal_relations(&t).unwrap();
    assert!(rep.first && rep.second);
    assert!(!rep.mixed);
    assert!(check_infinitesimal(&t).unwrap());
}

#[test]
fn zero_random_and_bad_shapes() {
    let z = CMatrix::zero(4);
    assert!(check_classical_ybe(&z).unwrap());
    assert!(check_infinitesimal(&z).unwrap());
    let entries: Vec<Rational> = [3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, -7, 9, 3].iter().map(|&x| q(x, 1)).collect();
    let rnd = CMatrix::from_rationals(4, &entries);
    assert!(!check_classical_ybe(&rnd).unwrap());
    assert!(!check_infinitesimal(&rnd).unwrap());
    assert!(matches!(check_classical_ybe(&CMatrix::zero(3)), Err(AmplitudeError::NotTensorSquare(3))));
    assert!(!rnd.data.iter().all(|x| x.is_zero()));
}
