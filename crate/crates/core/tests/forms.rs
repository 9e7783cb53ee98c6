mod common;

use proptest::prelude::*;

use common::{bihomogeneous_form, field, form, homogeneous_field, signed, superfunction};
use supercalc::fields::SupervectorField;
use supercalc::forms::Superform;
use supercalc::grassmann::{Parity, Superfunction};

/// `df = dz^A ∂_A f + dc^a ∂_a f` assembled from the basis 1-forms.
fn d_of_function(f: &Superfunction, n: usize, m: usize) -> Superform {
    let mut out = Superform::zero();
    for i in 0..n {
        out += &Superform::dz(i).wedge(&Superform::function(f.base_derivative(i)));
    }
    for a in 0..m {
        out += &Superform::dc(a).wedge(&Superform::function(f.odd_derivative(a)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_on_functions(f in superfunction(2, 2)) {
        let df = Superform::function(f.clone()).exterior_differential();
        prop_assert_eq!(df, d_of_function(&f, 2, 2));
    }

    #[test]
    fn wedge_is_associative(a in form(1, 2), b in form(1, 2), c in form(1, 2)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_graded_commutativity((a, k, p) in bihomogeneous_form(2, 2), (b, l, q) in bihomogeneous_form(2, 2)) {
        let negative = ((k * l) % 2 == 1) != (p * q).is_odd();
        prop_assert_eq!(a.wedge(&b), signed(b.wedge(&a), negative));
    }

    #[test]
    fn dd_is_zero(phi in form(2, 2)) {
        prop_assert!(phi.exterior_differential().exterior_differential().is_zero());
    }

    #[test]
    fn d_is_a_degree_derivation((a, k, _) in bihomogeneous_form(2, 2), b in form(2, 2)) {
        let lhs = a.wedge(&b).exterior_differential();
        let rhs = &a.exterior_differential().wedge(&b) + &signed(a.wedge(&b.exterior_differential()), k % 2 == 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_of_df_is_the_action(u in field(2, 2), f in superfunction(2, 2)) {
        let lhs = d_of_function(&f, 2, 2).interior(&u).unwrap();
        prop_assert_eq!(lhs, Superform::function(u.apply(&f).unwrap()));
    }

    #[test]
    fn interior_extension_rule(
        (u, pu) in homogeneous_field(2, 2),
        (a, k, p) in bihomogeneous_form(2, 2),
        b in form(2, 2),
    ) {
        let lhs = a.wedge(&b).interior(&u).unwrap();
        let negative = (k % 2 == 1) != (p * pu).is_odd();
        let rhs = &a.interior(&u).unwrap().wedge(&b) + &signed(a.wedge(&b.interior(&u).unwrap()), negative);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula(u in field(2, 2), phi in form(2, 2)) {
        let d = Superform::exterior_differential;
        let rhs = &d(&phi).interior(&u).unwrap() + &d(&phi.interior(&u).unwrap());
        prop_assert_eq!(phi.lie_derivative(&u).unwrap(), rhs);
    }

    #[test]
    fn lie_derivative_commutes_with_d(u in field(1, 2), phi in form(1, 2)) {
        let lhs = phi.exterior_differential().lie_derivative(&u).unwrap();
        prop_assert_eq!(lhs, phi.lie_derivative(&u).unwrap().exterior_differential());
    }

    #[test]
    fn lie_on_functions(u in field(2, 2), f in superfunction(2, 2)) {
        let lhs = Superform::function(f.clone()).lie_derivative(&u).unwrap();
        prop_assert_eq!(lhs, Superform::function(u.apply(&f).unwrap()));
    }
}

#[test]
fn basis_pairings() {
    let (n, m) = (2, 2);
    for i in 0..n {
        for j in 0..n {
            let v = Superform::dz(i).interior(&SupervectorField::base_basis(n, m, j)).unwrap();
            assert_eq!(v, Superform::function(Superfunction::integer((i == j) as i64)));
        }
    }
    for a in 0..m {
        for b in 0..m {
            let v = Superform::dc(a).interior(&SupervectorField::fiber_basis(n, m, b)).unwrap();
            assert_eq!(v, Superform::function(Superfunction::integer((a == b) as i64)));
        }
    }
}

#[test]
fn dc_squares_survive_and_dz_squares_vanish() {
    let dc = Superform::dc(0);
    assert!(!dc.wedge(&dc).is_zero());
    assert_eq!(dc.wedge(&dc).grading().parity(), Some(Parity::Even));
    assert!(Superform::dz(0).wedge(&Superform::dz(0)).is_zero());
    // dz and dc anticommute: both have degree one, dc is odd and dz even.
    let (dz, dc) = (Superform::dz(0), Superform::dc(1));
    assert_eq!(dz.wedge(&dc), -dc.wedge(&dz));
}
