mod common;

use num_traits::One;
use proptest::prelude::*;

use common::{nonzero_scalar, scalar};
use supercalc::scalars::{Poly, ScalarFn, ScalarMatrix};

fn canonical(f: &ScalarFn) -> bool {
    f.numerator().gcd(f.denominator()).is_one() && f.denominator().leading_coefficient().is_some_and(One::is_one)
}

/// `a/b == c/d` checked by cross-multiplying the raw polynomials.
fn same_fraction(num: &Poly, den: &Poly, f: &ScalarFn) -> bool {
    num * f.denominator() == f.numerator() * den
}

fn matrix(n: usize, m: usize) -> impl Strategy<Value = ScalarMatrix> {
    prop::collection::vec(scalar(n), m * m).prop_map(move |e| {
        ScalarMatrix::from_rows((0..m).map(|i| e[i * m..(i + 1) * m].to_vec()).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sums_and_products_are_canonical(a in scalar(2), b in scalar(2)) {
        let (s, p) = (&a + &b, &a * &b);
        prop_assert!(canonical(&s) && canonical(&p));
        let raw_num = &(a.numerator() * b.denominator()) + &(b.numerator() * a.denominator());
        prop_assert!(same_fraction(&raw_num, &(a.denominator() * b.denominator()), &s));
        prop_assert!(same_fraction(&(a.numerator() * b.numerator()), &(a.denominator() * b.denominator()), &p));
    }

    #[test]
    fn field_axioms(a in scalar(2), b in scalar(2), c in scalar(2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(3), b in nonzero_scalar(3)) {
        let q = a.checked_div(&b).unwrap();
        prop_assert!(canonical(&q));
        prop_assert_eq!(&q * &b, a);
        prop_assert!((&b * &b.recip().unwrap()).is_one());
    }

    #[test]
    fn integer_powers(a in nonzero_scalar(2), e in 0i64..4) {
        let mut expected = ScalarFn::one();
        for _ in 0..e {
            expected = &expected * &a;
        }
        prop_assert_eq!(a.pow(e).unwrap(), expected.clone());
        prop_assert_eq!(a.pow(-e).unwrap(), expected.recip().unwrap());
    }

    #[test]
    fn partials_obey_product_and_quotient_rules(a in scalar(2), b in nonzero_scalar(2), i in 0usize..2) {
        let product = (&a * &b).partial(i);
        prop_assert_eq!(product, &(&a.partial(i) * &b) + &(&a * &b.partial(i)));
        let quotient = a.checked_div(&b).unwrap().partial(i);
        let expected = (&(&a.partial(i) * &b) - &(&a * &b.partial(i))).checked_div(&(&b * &b)).unwrap();
        prop_assert!(canonical(&quotient));
        prop_assert_eq!(quotient, expected);
        prop_assert_eq!(a.partial(0).partial(1), a.partial(1).partial(0));
    }

    #[test]
    fn determinant_is_multiplicative(x in matrix(2, 2), y in matrix(2, 2)) {
        let xy = x.checked_mul(&y).unwrap();
        prop_assert_eq!(xy.determinant().unwrap(), &x.determinant().unwrap() * &y.determinant().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(x in matrix(1, 3)) {
        prop_assume!(!x.determinant().unwrap().is_zero());
        let inv = x.inverse().unwrap();
        let id = ScalarMatrix::identity(3);
        prop_assert_eq!(x.checked_mul(&inv).unwrap(), id.clone());
        prop_assert_eq!(inv.checked_mul(&x).unwrap(), id);
    }
}

#[test]
fn nested_denominators_reduce() {
    // 1/(z1 - 1) - 1/(z1 + 1) = 2/(z1^2 - 1)
    let one = ScalarFn::one();
    let z = ScalarFn::coord(0);
    let a = (&z - &one).recip().unwrap();
    let b = (&z + &one).recip().unwrap();
    let d = &a - &b;
    let expected = ScalarFn::integer(2).checked_div(&(&(&z * &z) - &one)).unwrap();
    assert_eq!(d, expected);
    assert!(canonical(&d));
}
