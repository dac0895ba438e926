use proptest::prelude::*;
use std::collections::HashMap;
use vknot::ring::{a_vars, loop_value, Poly};
use vknot::temperley_lieb::*;

fn u(n: usize, k: usize) -> TLElement {
    TLElement::generator(n, k).unwrap()
}

#[test]
fn defining_products() {
    assert_eq!(u(2, 1).mul(&u(2, 1)).unwrap(), (u(2, 1), 1));
    assert_eq!(word_product(&[1, 2, 1], 3).unwrap(), (u(3, 1), 0));
    assert_eq!(TLElement::identity(3).mul(&u(3, 1)).unwrap(), (u(3, 1), 0));
    assert!(matches!(u(2, 1).mul(&u(3, 1)), Err(TlError::StrandMismatch { left: 2, right: 3 })));
}

#[test]
fn generators_and_words() {
    assert_eq!(u(2, 1).pairs(), vec![(Point::Top(1), Point::Top(2)), (Point::Bottom(1), Point::Bottom(2))]);
    assert_eq!(word_to_element(&[1, 3], 4).unwrap(), word_to_element(&[3, 1], 4).unwrap());
    assert_eq!(word_to_element(&[], 4).unwrap(), TLAlgebraElement::from_element(TLElement::identity(4)));
    assert!(matches!(TLElement::generator(3, 3), Err(TlError::GeneratorIndex { k: 3, n: 3 })));
    assert!(matches!(TLElement::generator(3, 0), Err(TlError::GeneratorIndex { .. })));
    let sq = word_to_element(&[2, 2, 2], 3).unwrap();
    assert_eq!(sq.coeff(&u(3, 2)), loop_value().pow(2));
}

#[test]
fn catalan_counts() {
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &c) in expected.iter().enumerate() {
        assert_eq!(catalan(n), c);
        let all = enumerate(n);
        assert_eq!(all.len() as u64, c, "n = {n}");
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }
}

#[test]
fn relations_up_to_eight() {
    for n in 2..=8 {
        let r = check_relations(n);
        assert!(r.all(), "{r:?}");
    }
    assert_eq!(check_relations(4).checked, 3 + 4 + 2);
}

#[test]
fn canonical_factorization_round_trips() {
    for n in 0..=8 {
        let mut seen = HashMap::new();
        for e in enumerate(n) {
            let runs = canonical_runs(&e);
            assert!(is_canonical(&runs), "{e}: {runs:?}");
            let w = canonical_factorization(&e);
            assert_eq!(word_product(&w, n).unwrap(), (e.clone(), 0), "{e}");
            assert!(seen.insert(w, e).is_none());
        }
    }
    assert!(canonical_factorization(&TLElement::identity(5)).is_empty());
    assert_eq!(canonical_factorization(&u(2, 1)), vec![1]);
    assert_eq!(canonical_factorization(&word_product(&[2, 1], 3).unwrap().0), vec![2, 1]);
}

/// Every canonical run structure on n strands is a distinct element, so the
/// structures are exactly the elements.
#[test]
fn canonical_structures_are_the_monoid() {
    fn structures(n: usize, last: Option<Run>, cur: &mut Vec<Run>, out: &mut Vec<Vec<Run>>) {
        out.push(cur.clone());
        let (m0, n0) = last.map_or((0, 0), |r| (r.m, r.n));
        for m in m0 + 1..n {
            for lo in n0 + 1..=m {
                let r = Run { m, n: lo };
                cur.push(r);
                structures(n, Some(r), cur, out);
                cur.pop();
            }
        }
    }
    for n in 1..=7 {
        let mut all = Vec::new();
        structures(n, None, &mut Vec::new(), &mut all);
        assert_eq!(all.len() as u64, catalan(n));
        let mut elems: Vec<TLElement> = all
            .iter()
            .map(|runs| {
                let w: Vec<usize> = runs.iter().flat_map(|r| (r.n..=r.m).rev()).collect();
                let (e, loops) = word_product(&w, n).unwrap();
                assert_eq!(loops, 0);
                assert_eq!(canonical_runs(&e), *runs);
                e
            })
            .collect();
        elems.sort();
        elems.dedup();
        assert_eq!(elems.len() as u64, catalan(n));
    }
}

/// Two words give equal elements exactly when their normal forms agree.
#[test]
fn normal_form_decides_equality() {
    for n in 2..=4 {
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier = words.clone();
        for _ in 0..6 {
            frontier = frontier
                .iter()
                .flat_map(|w| (1..n).map(move |k| [w.clone(), vec![k]].concat()))
                .collect();
            words.extend(frontier.iter().cloned());
        }
        let data: Vec<_> = words.iter().map(|w| (word_product(w, n).unwrap().0, normal_form(w, n).unwrap().0)).collect();
        let mut by_form: HashMap<&Vec<usize>, &TLElement> = HashMap::new();
        for (e, f) in &data {
            assert_eq!(*by_form.entry(f).or_insert(e), e);
        }
        assert_eq!(by_form.len() as u64, catalan(n));
    }
}

#[test]
fn parentheses() {
    assert_eq!(TLElement::identity(2).to_parentheses(), "(())");
    assert_eq!(u(2, 1).to_parentheses(), "()()");
    assert!(matches!(TLElement::from_parentheses("(()", 2), Err(TlError::Unbalanced(_))));
    assert!(matches!(TLElement::from_parentheses("())(", 2), Err(TlError::Unbalanced(_))));
    for n in 0..=6 {
        for e in enumerate(n) {
            let p = e.to_parentheses();
            assert_eq!(TLElement::from_parentheses(&p, n).unwrap(), e);
        }
    }
}

#[test]
fn text_form() {
    for e in enumerate(4) {
        assert_eq!(e.to_string().parse::<TLElement>().unwrap(), e);
    }
    assert!(matches!("1-1".parse::<TLElement>(), Err(TlError::NotPairing(_))));
    assert!(matches!("1-2".parse::<TLElement>(), Err(TlError::NotPairing(_))));
    assert!(matches!("1=2".parse::<TLElement>(), Err(TlError::Parse(_))));
}

#[test]
fn algebra_product_matches_monoid() {
    let d = loop_value();
    let all = enumerate(3);
    for x in &all {
        for y in &all {
            let (w, k) = x.mul(y).unwrap();
            let prod = TLAlgebraElement::from_element(x.clone()).mul(&TLAlgebraElement::from_element(y.clone())).unwrap();
            assert_eq!(prod, TLAlgebraElement::term(w, d.pow(k as u32)));
        }
    }
    let a = Poly::var(&a_vars(), "A");
    let x = TLAlgebraElement::from_element(TLElement::identity(2))
        .scale(&a)
        .add(&TLAlgebraElement::from_element(u(2, 1)).scale(&a.pow(3)))
        .unwrap();
    let sq = x.mul(&x).unwrap();
    assert_eq!(sq.coeff(&TLElement::identity(2)), a.pow(2));
    assert_eq!(sq.coeff(&u(2, 1)), &(&a.pow(4) * &Poly::from_i64(&a_vars(), 2)) + &(&a.pow(6) * &d));
}

fn element(n: usize) -> impl Strategy<Value = TLElement> {
    prop::collection::vec(1..n, 0..10).prop_map(move |w| word_product(&w, n).unwrap().0)
}

proptest! {
    #[test]
    fn associativity(x in element(5), y in element(5), z in element(5)) {
        let (xy, a) = x.mul(&y).unwrap();
        let (xy_z, b) = xy.mul(&z).unwrap();
        let (yz, c) = y.mul(&z).unwrap();
        let (x_yz, e) = x.mul(&yz).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(a + b, c + e);
    }
}
