//! Proptest strategies for random chart objects.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use supercalc::fields::SupervectorField;
use supercalc::forms::{FormBasis, Superform};
use supercalc::geometry::{LinearConnection, Transition};
use supercalc::grassmann::{GrassmannMonomial, Parity, Superfunction};
use supercalc::scalars::{Monomial, Poly, ScalarFn, ScalarMatrix};

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn coefficient() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

fn monomial(n: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..n.max(1), 0..=max_degree as usize).prop_map(move |vars| {
        let mut exps = vec![0u32; n];
        if n > 0 {
            for v in vars {
                exps[v] += 1;
            }
        }
        Monomial::from_exponents(exps)
    })
}

pub fn poly(n: usize, max_degree: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(n, max_degree), coefficient()), 1..=3)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(m, c)| (m, int(c)))))
}

/// Polynomial of degree ≤ 2, sometimes divided by `z_A + k`.
pub fn scalar(n: usize) -> impl Strategy<Value = ScalarFn> {
    let den = prop::option::weighted(0.25, (0..n.max(1), 1i64..=3));
    (poly(n, 2), den).prop_map(move |(p, den)| {
        let num = ScalarFn::from_poly(p);
        match den {
            Some((a, k)) if n > 0 => {
                let d = &ScalarFn::coord(a) + &ScalarFn::integer(k);
                num.checked_div(&d).unwrap()
            }
            _ => num,
        }
    })
}

/// Nonzero scalar, including ones with nontrivial denominators.
pub fn nonzero_scalar(n: usize) -> impl Strategy<Value = ScalarFn> {
    scalar(n).prop_filter("nonzero", |s| !s.is_zero())
}

fn grassmann_monomial(m: usize, parity: Option<Parity>) -> impl Strategy<Value = GrassmannMonomial> {
    let candidates: Vec<u64> = (0..1u64 << m)
        .filter(|bits| parity.is_none_or(|p| Parity::of(bits.count_ones() as usize) == p))
        .collect();
    prop::sample::select(candidates).prop_map(GrassmannMonomial::from_bits)
}

pub fn superfunction_of(n: usize, m: usize, parity: Option<Parity>) -> BoxedStrategy<Superfunction> {
    if m == 0 && parity == Some(Parity::Odd) {
        return Just(Superfunction::zero()).boxed();
    }
    prop::collection::vec((grassmann_monomial(m, parity), scalar(n)), 1..=3)
        .prop_map(Superfunction::from_terms)
        .boxed()
}

pub fn superfunction(n: usize, m: usize) -> BoxedStrategy<Superfunction> {
    superfunction_of(n, m, None)
}

pub fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

pub fn homogeneous_superfunction(n: usize, m: usize) -> impl Strategy<Value = (Superfunction, Parity)> {
    parity().prop_flat_map(move |p| superfunction_of(n, m, Some(p)).prop_map(move |f| (f, p)))
}

fn maybe(s: BoxedStrategy<Superfunction>) -> BoxedStrategy<Superfunction> {
    prop::option::weighted(0.7, s)
        .prop_map(Option::unwrap_or_default)
        .boxed()
}

/// Field of parity `p`: base components of parity `p`, fiber components of
/// the opposite parity.
pub fn field_of(n: usize, m: usize, parity: Option<Parity>) -> BoxedStrategy<SupervectorField> {
    let base = prop::collection::vec(maybe(superfunction_of(n, m, parity)), n);
    let fiber = prop::collection::vec(maybe(superfunction_of(n, m, parity.map(Parity::flip))), m);
    (base, fiber)
        .prop_map(|(b, f)| SupervectorField::new(b, f))
        .boxed()
}

pub fn field(n: usize, m: usize) -> BoxedStrategy<SupervectorField> {
    field_of(n, m, None)
}

pub fn homogeneous_field(n: usize, m: usize) -> impl Strategy<Value = (SupervectorField, Parity)> {
    parity().prop_flat_map(move |p| field_of(n, m, Some(p)).prop_map(move |u| (u, p)))
}

/// Basis `dz^T dc^U` of degree `k`, each `dc` at most twice.
fn basis(n: usize, m: usize, k: usize) -> BoxedStrategy<Option<FormBasis>> {
    let dz = prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n.min(k));
    dz.prop_flat_map(move |dz| {
        let rest = k - dz.len();
        prop::collection::vec(0..m.max(1), rest).prop_map(move |dc| {
            if (m == 0 && !dc.is_empty()) || (0..m).any(|a| dc.iter().filter(|&&b| b == a).count() > 2) {
                None
            } else {
                Some(FormBasis::new(&dz, &dc).unwrap())
            }
        })
    })
    .boxed()
}

/// Form of pure degree `k` whose terms all have total parity `parity`.
pub fn form_of(n: usize, m: usize, k: usize, parity: Option<Parity>) -> BoxedStrategy<Superform> {
    let term = basis(n, m, k).prop_flat_map(move |b| match b {
        None => Just(Superform::zero()).boxed(),
        Some(b) => {
            let p = parity.map(|p| p + Parity::of(b.dc_len()));
            superfunction_of(n, m, p)
                .prop_map(move |f| Superform::term(f, b.clone()))
                .boxed()
        }
    });
    prop::collection::vec(term, 1..=3)
        .prop_map(|ts| ts.iter().fold(Superform::zero(), |acc, t| &acc + t))
        .boxed()
}

/// Form of mixed degree up to `n + 2`.
pub fn form(n: usize, m: usize) -> BoxedStrategy<Superform> {
    prop::collection::vec((0..=n + 2).prop_flat_map(move |k| form_of(n, m, k, None)), 1..=2)
        .prop_map(|ts| ts.iter().fold(Superform::zero(), |acc, t| &acc + t))
        .boxed()
}

pub fn bihomogeneous_form(n: usize, m: usize) -> impl Strategy<Value = (Superform, usize, Parity)> {
    (0..=n + 2, parity()).prop_flat_map(move |(k, p)| form_of(n, m, k, Some(p)).prop_map(move |f| (f, k, p)))
}

pub fn one_form(n: usize, m: usize) -> impl Strategy<Value = Superform> {
    (
        prop::collection::vec(superfunction(n, m), n),
        prop::collection::vec(superfunction(n, m), m),
    )
        .prop_map(|(b, f)| Superform::one_form(&b, &f))
}

fn linear_scalar(n: usize) -> impl Strategy<Value = ScalarFn> {
    poly(n, 1).prop_map(ScalarFn::from_poly)
}

/// Invertible `m x m` matrix of entries of degree ≤ 1.
pub fn transition(n: usize, m: usize) -> impl Strategy<Value = Transition> {
    prop::collection::vec(prop::option::weighted(0.6, linear_scalar(n)), m * m).prop_filter_map(
        "singular",
        move |entries| {
            let rows = (0..m)
                .map(|i| (0..m).map(|j| entries[i * m + j].clone().unwrap_or_default()).collect())
                .collect();
            Transition::new(ScalarMatrix::from_rows(rows).ok()?).ok()
        },
    )
}

pub fn connection(n: usize, m: usize) -> impl Strategy<Value = LinearConnection> {
    prop::collection::vec(prop::option::weighted(0.5, linear_scalar(n)), n * m * m).prop_map(move |entries| {
        let mut gamma = LinearConnection::zero(n, m);
        for (i, e) in entries.into_iter().enumerate() {
            if let Some(e) = e {
                gamma.set(i / (m * m), (i / m) % m, i % m, e);
            }
        }
        gamma
    })
}

pub fn signed<T: std::ops::Neg<Output = T>>(x: T, negative: bool) -> T {
    if negative {
        -x
    } else {
        x
    }
}
