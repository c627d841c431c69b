//! Values frozen from an independent exact linear solve.

use ntc_core::fixtures;
use ntc_core::rational::{q, q_frac};
use ntc_core::{Cycle, Lattice};
use num_bigint::BigInt;

fn ints(v: &[i64]) -> Cycle {
    Cycle::from_integers(v)
}

#[test]
fn degree5_chain_one() {
    // vertex order E0, E5, E4, E3, E2, E1
    let lat = Lattice::new(&fixtures::ex5_11_1());
    let minors: Vec<BigInt> = [10, 9, 8, 7, 6, 5]
        .iter()
        .map(|&m| BigInt::from(m))
        .collect();
    assert_eq!(lat.form().negated_leading_minors(), minors);
    assert_eq!(lat.canonical().kvals, vec![20, -1, 0, 0, 0, 0]);
    assert_eq!(lat.canonical_cycle(), ints(&[3, 10, 8, 6, 4, 2]));
    let e5 = lat.dual_cycle("E5").unwrap();
    assert_eq!(e5, &ints(&[1, 10, 8, 6, 4, 2]));
    assert_eq!(lat.self_intersection(e5).unwrap(), q(-10));
    assert_eq!(lat.canonical_pairing(e5).unwrap(), q(10));
    assert_eq!(lat.chi(e5).unwrap(), q(0));
    let e0 = lat.dual_cycle("E0").unwrap();
    assert_eq!(
        e0,
        &Cycle::new(vec![
            q_frac(1, 5),
            q(1),
            q_frac(4, 5),
            q_frac(3, 5),
            q_frac(2, 5),
            q_frac(1, 5)
        ])
    );
}

#[test]
fn degree5_chain_two() {
    // vertex order E4, E5, E0, E3, E2, E1
    let lat = Lattice::new(&fixtures::ex5_11_2());
    assert_eq!(lat.canonical().kvals, vec![0, -1, 20, -1, 0, 0]);
    assert_eq!(lat.canonical_cycle(), ints(&[2, 4, 3, 6, 4, 2]));
    let z = lat.dual_cycle("E3").unwrap() + lat.dual_cycle("E5").unwrap();
    assert_eq!(z, ints(&[2, 4, 1, 6, 4, 2]));
    assert_eq!(lat.cycle_from_arrows().unwrap(), z);
    assert_eq!(lat.self_intersection(&z).unwrap(), q(-10));
    assert_eq!(lat.canonical_pairing(&z).unwrap(), q(10));
    assert_eq!(lat.chi(&z).unwrap(), q(0));
}

#[test]
fn genus_one_pair() {
    let lat = Lattice::new(&fixtures::ex4_4_m());
    let minors: Vec<BigInt> = [2, 1].iter().map(|&m| BigInt::from(m)).collect();
    assert_eq!(lat.form().negated_leading_minors(), minors);
    assert_eq!(lat.canonical().kvals, vec![2, -1]);
    assert_eq!(lat.canonical_cycle(), ints(&[1, 0]));
    assert_eq!(lat.dual(0), &ints(&[1, 1]));
    assert_eq!(lat.dual(1), &ints(&[1, 2]));
    let z = lat.cycle_from_arrows().unwrap();
    assert_eq!(z, ints(&[1, 2]));
    assert_eq!(lat.canonical_pairing(&z).unwrap(), q(0));
    assert_eq!(lat.chi(&z).unwrap(), q(1));

    let lat = Lattice::new(&fixtures::ex4_4_m2());
    let z = lat.cycle_from_arrows().unwrap();
    assert_eq!(z, ints(&[2]));
    assert_eq!(lat.canonical_pairing(&z).unwrap(), q(2));
}

#[test]
fn cone_fixtures_match_model() {
    for d in 3..=5u32 {
        let g = fixtures::homog(d).unwrap();
        let lat = Lattice::new(&g);
        let m = ntc_core::homogeneous::model(d).unwrap();
        let z = lat.cycle_from_arrows().unwrap();
        assert_eq!(z, ints(&[1]));
        assert_eq!(lat.self_intersection(&z).unwrap(), q(m.csq));
        assert_eq!(lat.canonical_pairing(&z).unwrap(), q(m.kc));
        assert_eq!(lat.chi(&z).unwrap(), q(ntc_core::homogeneous::chi_uc(d, 1)));
    }
}
