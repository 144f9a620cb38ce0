//! Spot checks of the grouping search and its witnesses against the
//! brute-force block-system oracle at degrees beyond the exhaustive sweep.

mod common;

use covernum::membership::{imprimitive_witness, in_imprimitive};
use covernum::typesys::CycleType;

#[test]
fn degree_12_blocks_of_two() {
    // the classic pair: [2,10] preserves a system of six 2-blocks,
    // [5,7] preserves nothing
    assert!(common::oracle_in_imprimitive(&[10, 2], 2));
    assert!(in_imprimitive(&CycleType::parse("10,2").unwrap(), 2).unwrap());
    assert!(!common::oracle_in_imprimitive(&[7, 5], 2));
    assert!(!in_imprimitive(&CycleType::parse("7,5").unwrap(), 2).unwrap());
}

#[test]
fn degree_12_all_types_blocks_of_six() {
    let idx = covernum::typesys::enumerate_types(12).unwrap();
    for i in 0..idx.len() {
        let parts = idx.get(i);
        let t = CycleType::new(parts.to_vec()).unwrap();
        assert_eq!(
            in_imprimitive(&t, 6).unwrap(),
            common::oracle_in_imprimitive(parts, 6),
            "type {parts:?}"
        );
    }
}

#[test]
fn degree_10_all_types_all_blocks() {
    let idx = covernum::typesys::enumerate_types(10).unwrap();
    for b in [2u32, 5] {
        for i in 0..idx.len() {
            let parts = idx.get(i);
            let t = CycleType::new(parts.to_vec()).unwrap();
            assert_eq!(
                in_imprimitive(&t, b).unwrap(),
                common::oracle_in_imprimitive(parts, b),
                "type {parts:?} b={b}"
            );
        }
    }
}

#[test]
fn witnesses_verify_wherever_membership_holds() {
    let idx = covernum::typesys::enumerate_types(9).unwrap();
    for i in 0..idx.len() {
        let t = CycleType::new(idx.get(i).to_vec()).unwrap();
        let w = imprimitive_witness(&t, 3).unwrap();
        assert_eq!(w.is_some(), common::oracle_in_imprimitive(t.parts(), 3));
        if let Some(w) = w {
            assert!(w.verify(&t), "bad witness for {t}");
        }
    }
}
