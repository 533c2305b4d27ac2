use num_complex::Complex64;

use qinv_core::measures::{
    cayley_hyperdeterminant, classify3, d1, hyperdet3, meyer_wallach, table_representatives, MeasureRoute, OrbitLabel,
};
use qinv_core::poly::State;
use qinv_core::random::{random_local, random_state, rng, LocalGroup};
use qinv_core::transvection::sl2_action_state;

#[test]
fn hyperdeterminant_examples() {
    let ghz = State::superposition(3, &["000", "111"], false).unwrap();
    assert!((hyperdet3(&ghz).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    assert!(hyperdet3(&State::w(3)).unwrap().norm() < 1e-14);
    assert!(hyperdet3(&State::basis(3, 5)).unwrap().norm() < 1e-14);
    let s = random_state(&mut rng(1), 3);
    let symbolic = cayley_hyperdeterminant().evaluate(&s, None).unwrap();
    assert!((symbolic - hyperdet3(&s).unwrap()).norm() < 1e-10);
}

#[test]
fn hyperdeterminant_scales_under_slocc() {
    let mut r = rng(2);
    let s = random_state(&mut r, 3);
    let g = random_local(&mut r, 3, LocalGroup::Slocc);
    let before = hyperdet3(&s).unwrap();
    let after = hyperdet3(&sl2_action_state(&g, &s).unwrap()).unwrap();
    assert!((before - after).norm() <= 1e-9 * before.norm());
}

#[test]
fn d1_bounds_and_purity() {
    let mut r = rng(3);
    for k in 2..=4 {
        let s = random_state(&mut r, k).normalized();
        for i in 1..=k {
            let v = d1(i, &s).unwrap();
            assert!((0.0..=1.0 + 1e-12).contains(&v));
        }
        let product = State::basis(k, 3);
        assert!((1..=k).all(|i| d1(i, &product).unwrap().abs() < 1e-15));
    }
    assert!(d1(0, &State::ghz(3)).is_err());
    assert!(d1(4, &State::ghz(3)).is_err());
}

#[test]
fn meyer_wallach_reference_values() {
    for k in 2..=5 {
        let q = meyer_wallach(&State::ghz(k), MeasureRoute::Direct).unwrap().q;
        assert!((q - 1.0).abs() < 1e-12);
        let expected = 4.0 * (k as f64 - 1.0) / (k * k) as f64;
        let q = meyer_wallach(&State::w(k), MeasureRoute::Direct).unwrap().q;
        assert!((q - expected).abs() < 1e-12);
    }
}

#[test]
fn measure_routes_agree() {
    let mut r = rng(4);
    for k in 2..=4 {
        let s = random_state(&mut r, k).normalized();
        let a = meyer_wallach(&s, MeasureRoute::Direct).unwrap();
        let b = meyer_wallach(&s, MeasureRoute::Covariant).unwrap();
        for (x, y) in a.d1.iter().zip(&b.d1) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn classification_is_stable_and_ordered() {
    let mut r = rng(6);
    for (label, s) in table_representatives() {
        for _ in 0..10 {
            let g = random_local(&mut r, 3, LocalGroup::Slocc);
            let moved = sl2_action_state(&g, &s).unwrap().scaled(Complex64::new(0.0, 3.0));
            assert_eq!(classify3(&moved, 1e-9).unwrap().label, label);
        }
    }
    assert!(OrbitLabel::Separable < OrbitLabel::B2);
    assert!(OrbitLabel::B1 < OrbitLabel::W && OrbitLabel::W < OrbitLabel::Ghz);
    assert_eq!(OrbitLabel::B1.partial_cmp(&OrbitLabel::B3), None);
    assert!(classify3(&State::new(3, vec![Complex64::new(0.0, 0.0); 8]).unwrap(), 1e-9).is_err());
}

#[test]
fn generic_states_are_ghz() {
    let s = random_state(&mut rng(7), 3);
    assert_eq!(classify3(&s, 1e-9).unwrap().label, OrbitLabel::Ghz);
}
