use num_complex::Complex64;
use num_traits::Zero;

use qinv_core::catalog::{catalog_3, ground_form};
use qinv_core::poly::linalg::determinant;
use qinv_core::poly::{GaussianRational, Polynomial, State};
use qinv_core::random::{random_local, random_state, relative_error, rng, LocalGroup};
use qinv_core::registry::resolve;
use qinv_core::transvection::{sl2_action_state, Covariant};
use qinv_core::unitary::{
    f7_bracket, jacobian_independence, jacobian_rows, lsut_degree4_basis, lut_degree4_basis, pairing, syzygy_checks,
    ThreeQubit,
};

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-10 * (1.0 + b.norm())
}

#[test]
fn norm_is_one_on_normalized_states() {
    for k in 1..=4 {
        let s = random_state(&mut rng(k as u64), k).normalized();
        let f = ground_form(k).unwrap();
        assert!(close(pairing(&f, &f).evaluate(&s).unwrap(), Complex64::new(1.0, 0.0)));
    }
}

#[test]
fn pairing_weights_are_exponent_factorials() {
    let x = Covariant::from_poly(&Polynomial::aux(2, 0, 0).pow(3) * &Polynomial::aux(2, 1, 1)).unwrap();
    assert_eq!(pairing(&x, &x).poly(), &Polynomial::constant(2, 6.into()));
}

#[test]
fn distinct_hessians_are_orthogonal() {
    let hx = catalog_3("Hx").unwrap();
    let hy = catalog_3("Hy").unwrap();
    assert!(pairing(&hx, &hy).is_zero());
}

#[test]
fn degree_four_basis_sizes() {
    let sizes: Vec<usize> = (2..=4).map(|k| lsut_degree4_basis(k).unwrap().len()).collect();
    assert_eq!(sizes, vec![6, 8, 20]);
    let names: Vec<String> = lut_degree4_basis(3).unwrap().iter().map(|b| b.name().to_string()).collect();
    assert_eq!(names, ["A^2", "B_002", "B_020", "B_200"]);
}

#[test]
fn unbalanced_members_pick_up_global_phase() {
    let tq = ThreeQubit::shared();
    assert_eq!(tq.s2.bidegree(), (3, 1));
    let s = random_state(&mut rng(3), 3);
    let theta = 0.7;
    let phase = Complex64::from_polar(1.0, theta);
    let before = tq.s2.evaluate(&s).unwrap();
    let after = tq.s2.evaluate(&s.scaled(phase)).unwrap();
    assert!(close(after, before * Complex64::from_polar(1.0, 2.0 * theta)));
}

#[test]
fn generator_values_on_basis_states() {
    let tq = ThreeQubit::shared();
    let e0 = State::basis(3, 0);
    let one = Complex64::new(1.0, 0.0);
    assert!(close(tq.generator(1).unwrap().evaluate(&e0).unwrap(), one));
    assert!(close(tq.generator(2).unwrap().evaluate(&e0).unwrap(), one));
    assert!(close(tq.generator(6).unwrap().evaluate(&State::w(3)).unwrap(), Complex64::new(0.0, 0.0)));
    let zero = Complex64::new(0.0, 0.0);
    assert!(close(tq.generator(7).unwrap().evaluate(&e0).unwrap(), zero));
    assert!(close(f7_bracket().unwrap().evaluate(&e0).unwrap(), zero));
}

#[test]
fn syzygy_numeric_prescreen() {
    for s in syzygy_checks().unwrap() {
        if s.holds {
            assert!(s.numeric_residual < 1e-8, "{}: {:.2e}", s.name, s.numeric_residual);
        } else {
            assert!(s.numeric_residual > 1e-8, "{} should fail numerically too", s.name);
        }
    }
}

#[test]
fn imaginary_part_of_f222() {
    let tq = ThreeQubit::shared();
    let delta = tq.delta_invariant();
    for seed in 0..5 {
        let s = random_state(&mut rng(seed), 3);
        let f222 = tq.f222.evaluate(&s).unwrap();
        let s2 = tq.s2.evaluate(&s).unwrap();
        let rhs = 8.0 * (delta.evaluate(&s).unwrap() * s2.conj() * s2.conj()).im;
        assert!((f222.im - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }
}

#[test]
fn f7_bracket_is_not_unitary_invariant() {
    let bracket = f7_bracket().unwrap();
    let mut r = rng(5);
    let s = random_state(&mut r, 3);
    let g = random_local(&mut r, 3, LocalGroup::Unitary);
    let before = bracket.evaluate(&s).unwrap();
    let after = bracket.evaluate(&sl2_action_state(&g, &s).unwrap()).unwrap();
    assert!(relative_error(before, after, 1e-12) > 1e-3);
}

#[test]
fn jacobian_minor_vanishes_for_dependent_rows() {
    let report = jacobian_independence().unwrap();
    let cols = report.certificate_columns.expect("a nonzero minor exists");
    assert!(!report.certificate_minor.is_zero());
    let tq = ThreeQubit::shared();
    let a = tq.a.poly().clone();
    let delta = tq.delta.poly().clone();
    let functions = vec![
        a.clone(),
        a.pow(2),
        tq.generator(3).unwrap().into_poly(),
        delta.clone(),
        delta.conjugate().unwrap(),
        tq.s2.poly().clone(),
        tq.s2.poly().conjugate().unwrap(),
    ];
    let rows = jacobian_rows(&functions).unwrap();
    let minor: Vec<Vec<GaussianRational>> =
        rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
    assert!(determinant(minor).is_zero());
}

#[test]
fn registry_names_agree_with_catalog() {
    let s = random_state(&mut rng(9), 3);
    let tq = ThreeQubit::shared();
    let via_registry = resolve(3, "D_000").unwrap().evaluate(&s).unwrap();
    assert!(close(via_registry, tq.d000.evaluate(&s).unwrap()));
    let det = resolve(3, "Det").unwrap().evaluate(&s).unwrap();
    let delta = resolve(3, "Delta").unwrap().evaluate(&s).unwrap();
    assert!(close(delta, 2.0 * det));
}
