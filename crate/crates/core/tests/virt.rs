mod common;

use common::*;
use vknot::biquandle::generalized_alexander;
use vknot::bracket::{construct_virt, jones, VirtError};
use vknot::diagram::Diagram;

#[test]
fn trefoil_gives_unit_jones() {
    let r = construct_virt(&g(TREFOIL)).unwrap();
    assert_eq!(r.subset.len(), 1);
    assert!(jones(&r.diagram).unwrap().is_one());
    assert!(!r.diagram.is_planar());
    assert!(!generalized_alexander(&r.diagram).unwrap().is_zero());
}

#[test]
fn figure_eight_gives_unit_jones_and_nonzero_g() {
    let r = construct_virt(&figure_eight()).unwrap();
    assert!(jones(&r.diagram).unwrap().is_one());
    assert!(!generalized_alexander(&r.diagram).unwrap().is_zero());
}

#[test]
fn unknotted_input_is_returned_unchanged() {
    let curl = g("(o1+)(u1+)");
    let r = construct_virt(&curl).unwrap();
    assert!(r.subset.is_empty());
    assert_eq!(r.diagram, curl);
    assert!(construct_virt(&Diagram::unknot()).unwrap().subset.is_empty());
}

#[test]
fn larger_knots() {
    for d in [nine_forty_two(), torus_2(5), g(TREFOIL).connected_sum(&figure_eight()).unwrap()] {
        let r = construct_virt(&d).unwrap();
        assert!(jones(&r.diagram).unwrap().is_one(), "{d}");
    }
}

#[test]
fn rejects_virtual_input() {
    assert!(matches!(construct_virt(&g(VIRTUAL_TREFOIL)), Err(VirtError::NotClassical)));
}
