mod common;

use proptest::prelude::*;

use common::{field, homogeneous_field, homogeneous_superfunction, signed, superfunction};
use supercalc::fields::SupervectorField;
use supercalc::grassmann::Superfunction;

/// `u(f) = u^A ∂_A f + u^a ∂_a f`, written out with the partials directly.
fn apply_by_components(u: &SupervectorField, f: &Superfunction) -> Superfunction {
    let mut out = Superfunction::zero();
    for (i, ui) in u.base_components().iter().enumerate() {
        out += &(ui * &f.base_derivative(i));
    }
    for (a, ua) in u.fiber_components().iter().enumerate() {
        out += &(ua * &f.odd_derivative(a));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_matches_component_formula(u in field(2, 2), f in superfunction(2, 2)) {
        prop_assert_eq!(u.apply(&f).unwrap(), apply_by_components(&u, &f));
    }

    #[test]
    fn graded_leibniz(
        (u, pu) in homogeneous_field(2, 2),
        (f, pf) in homogeneous_superfunction(2, 2),
        g in superfunction(2, 2),
    ) {
        let lhs = u.apply(&(&f * &g)).unwrap();
        let rhs = &(&u.apply(&f).unwrap() * &g) + &signed(&f * &u.apply(&g).unwrap(), (pu * pf).is_odd());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_antisymmetry((u, pu) in homogeneous_field(2, 2), (v, pv) in homogeneous_field(2, 2)) {
        let uv = u.bracket(&v).unwrap();
        let vu = v.bracket(&u).unwrap();
        prop_assert_eq!(uv, signed(vu, !(pu * pv).is_odd()));
    }

    #[test]
    fn bracket_is_the_graded_commutator(
        (u, pu) in homogeneous_field(2, 2),
        (v, pv) in homogeneous_field(2, 2),
        f in superfunction(2, 2),
    ) {
        let lhs = u.bracket(&v).unwrap().apply(&f).unwrap();
        let uvf = apply_by_components(&u, &apply_by_components(&v, &f));
        let vuf = apply_by_components(&v, &apply_by_components(&u, &f));
        prop_assert_eq!(lhs, &uvf - &signed(vuf, (pu * pv).is_odd()));
    }

    #[test]
    fn jacobi(
        (u, pu) in homogeneous_field(1, 2),
        (v, pv) in homogeneous_field(1, 2),
        (w, pw) in homogeneous_field(1, 2),
    ) {
        let a = u.bracket(&v.bracket(&w).unwrap()).unwrap();
        let b = v.bracket(&w.bracket(&u).unwrap()).unwrap();
        let c = w.bracket(&u.bracket(&v).unwrap()).unwrap();
        let sum = &(&signed(a, (pu * pw).is_odd()) + &signed(b, (pv * pu).is_odd())) + &signed(c, (pw * pv).is_odd());
        prop_assert!(sum.is_zero());
    }
}

#[test]
fn small_brackets() {
    // [d/dc1, d/dc1] = 2 (d/dc1)^2 = 0
    let u = SupervectorField::fiber_basis(1, 2, 0);
    assert!(u.bracket(&u).unwrap().is_zero());
    // x = c1 d/dc2, y = c2 d/dc1: [x, y] = c1 d/dc1 - c2 d/dc2
    let x = SupervectorField::fiber_basis(1, 2, 1).left_mul(&Superfunction::generator(0));
    let y = SupervectorField::fiber_basis(1, 2, 0).left_mul(&Superfunction::generator(1));
    assert!(x.bracket(&x).unwrap().is_zero());
    let xy = x.bracket(&y).unwrap();
    assert_eq!(xy.fiber_component(0), &Superfunction::generator(0));
    assert_eq!(xy.fiber_component(1), &-Superfunction::generator(1));
}
