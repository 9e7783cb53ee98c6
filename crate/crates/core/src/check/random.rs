use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::SupervectorField;
use crate::forms::{FormBasis, Superform};
use crate::geometry::{LinearConnection, Transition};
use crate::grassmann::{GrassmannMonomial, Parity, Superfunction};
use crate::scalars::{Monomial, Poly, ScalarFn, ScalarMatrix};

/// Size limits for random objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Total degree of polynomial numerators.
    pub max_degree: u32,
    /// Integer coefficients are drawn from `-max_coeff..=max_coeff`.
    pub max_coeff: i64,
    /// Largest power of a single `dc`.
    pub max_dc: usize,
    pub max_form_degree: usize,
    /// Terms per polynomial and per superfunction.
    pub max_terms: usize,
}

impl Bounds {
    pub fn for_chart(n: usize) -> Self {
        Bounds {
            max_degree: 2,
            max_coeff: 3,
            max_dc: 2,
            max_form_degree: n + 2,
            max_terms: 3,
        }
    }
}

/// Seeded source of random superfunctions, fields, forms, transitions and
/// connections over an `(n, m)` chart.
pub struct Generator {
    rng: ChaCha8Rng,
    n: usize,
    m: usize,
    bounds: Bounds,
}

impl Generator {
    pub fn new(seed: u64, n: usize, m: usize, bounds: Bounds) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            m,
            bounds,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.gen_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    fn coefficient(&mut self) -> BigRational {
        let c = self.bounds.max_coeff;
        loop {
            let v = self.rng.gen_range(-c..=c);
            if v != 0 || c == 0 {
                return BigRational::from_integer(BigInt::from(v));
            }
        }
    }

    fn monomial(&mut self, max_degree: u32) -> Monomial {
        let mut exps = vec![0u32; self.n];
        if self.n > 0 {
            let degree = self.rng.gen_range(0..=max_degree);
            for _ in 0..degree {
                exps[self.rng.gen_range(0..self.n)] += 1;
            }
        }
        Monomial::from_exponents(exps)
    }

    /// Nonzero polynomial.
    pub fn poly(&mut self, max_degree: u32) -> Poly {
        loop {
            let terms = self.rng.gen_range(1..=self.bounds.max_terms.max(1));
            let p = Poly::from_terms((0..terms).map(|_| (self.monomial(max_degree), self.coefficient())).collect::<Vec<_>>());
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Nonzero scalar, occasionally with a denominator `z_A + k`.
    pub fn scalar(&mut self) -> ScalarFn {
        let num = ScalarFn::from_poly(self.poly(self.bounds.max_degree));
        if self.n > 0 && self.rng.gen_bool(0.15) {
            let k = self.rng.gen_range(1..=self.bounds.max_coeff.max(1));
            let den = &ScalarFn::coord(self.rng.gen_range(0..self.n)) + &ScalarFn::integer(k);
            num.checked_div(&den).expect("nonzero denominator")
        } else {
            num
        }
    }

    /// Nonzero scalar of degree at most one, used for matrix entries.
    pub fn linear_scalar(&mut self) -> ScalarFn {
        ScalarFn::from_poly(self.poly(1))
    }

    fn grassmann_monomial(&mut self, parity: Option<Parity>) -> Option<GrassmannMonomial> {
        let candidates: Vec<u64> = (0..1u64 << self.m)
            .filter(|bits| parity.is_none_or(|p| Parity::of(bits.count_ones() as usize) == p))
            .collect();
        candidates.choose(&mut self.rng).map(|&b| GrassmannMonomial::from_bits(b))
    }

    /// Random superfunction, homogeneous of the given parity if any; may be
    /// zero only when no monomial of that parity exists.
    pub fn superfunction(&mut self, parity: Option<Parity>) -> Superfunction {
        let terms = self.rng.gen_range(1..=self.bounds.max_terms.max(1));
        let mut f = Superfunction::zero();
        for _ in 0..terms {
            if let Some(mono) = self.grassmann_monomial(parity) {
                f += &Superfunction::monomial(self.scalar(), mono);
            }
        }
        f
    }

    pub fn homogeneous_superfunction(&mut self) -> (Superfunction, Parity) {
        let p = if self.m == 0 { Parity::Even } else { self.parity() };
        (self.superfunction(Some(p)), p)
    }

    /// Field of the given parity: base components of parity `p`, fiber
    /// components of the opposite parity.
    pub fn field(&mut self, parity: Option<Parity>) -> SupervectorField {
        let pick = |g: &mut Generator, p: Option<Parity>| {
            if g.rng.gen_bool(0.6) {
                g.superfunction(p)
            } else {
                Superfunction::zero()
            }
        };
        let base = (0..self.n).map(|_| pick(self, parity)).collect();
        let fiber = (0..self.m).map(|_| pick(self, parity.map(Parity::flip))).collect();
        SupervectorField::new(base, fiber)
    }

    pub fn homogeneous_field(&mut self) -> (SupervectorField, Parity) {
        let p = if self.m == 0 { Parity::Even } else { self.parity() };
        (self.field(Some(p)), p)
    }

    /// Field with zero fiber components.
    pub fn basic_field(&mut self) -> SupervectorField {
        let u = self.field(None);
        SupervectorField::new(u.base_components().to_vec(), vec![Superfunction::zero(); self.m])
    }

    fn basis(&mut self, degree: usize) -> Option<FormBasis> {
        let max_dz = degree.min(self.n);
        let dz_len = if self.m == 0 || self.bounds.max_dc == 0 {
            if degree > self.n {
                return None;
            }
            degree
        } else {
            let min_dz = degree.saturating_sub(self.m * self.bounds.max_dc);
            if min_dz > max_dz {
                return None;
            }
            self.rng.gen_range(min_dz..=max_dz)
        };
        let mut dz: Vec<usize> = (0..self.n).collect();
        dz.shuffle(&mut self.rng);
        dz.truncate(dz_len);
        dz.sort_unstable();
        let mut counts = vec![0usize; self.m];
        let mut dc = Vec::new();
        while dc.len() < degree - dz_len {
            let a = self.rng.gen_range(0..self.m);
            if counts[a] < self.bounds.max_dc {
                counts[a] += 1;
                dc.push(a);
            }
        }
        Some(FormBasis::new(&dz, &dc).expect("valid basis"))
    }

    /// Form of pure degree `degree` and total parity `parity` when given.
    pub fn form(&mut self, degree: Option<usize>, parity: Option<Parity>) -> Superform {
        let terms = self.rng.gen_range(1..=self.bounds.max_terms.max(1));
        let mut phi = Superform::zero();
        for _ in 0..terms {
            let k = degree.unwrap_or_else(|| self.rng.gen_range(0..=self.bounds.max_form_degree));
            let Some(b) = self.basis(k) else { continue };
            let coeff_parity = parity.map(|p| p + Parity::of(b.dc_len()));
            let f = self.superfunction(coeff_parity);
            phi += &Superform::term(f, b);
        }
        phi
    }

    /// Bihomogeneous form with its degree and parity.
    pub fn bihomogeneous_form(&mut self) -> (Superform, usize, Parity) {
        let k = self.rng.gen_range(0..=self.bounds.max_form_degree);
        let p = if self.m == 0 { Parity::Even } else { self.parity() };
        (self.form(Some(k), Some(p)), k, p)
    }

    pub fn one_form(&mut self) -> Superform {
        let base: Vec<_> = (0..self.n).map(|_| self.superfunction(None)).collect();
        let fiber: Vec<_> = (0..self.m).map(|_| self.superfunction(None)).collect();
        Superform::one_form(&base, &fiber)
    }

    /// Invertible `m x m` matrix with entries of degree at most one.
    pub fn transition(&mut self) -> Transition {
        loop {
            let mut rho = ScalarMatrix::zeros(self.m, self.m);
            for i in 0..self.m {
                for j in 0..self.m {
                    if i == j || self.rng.gen_bool(0.5) {
                        rho.set(i, j, self.linear_scalar());
                    }
                }
            }
            if let Ok(t) = Transition::new(rho) {
                return t;
            }
        }
    }

    pub fn connection(&mut self) -> LinearConnection {
        let mut gamma = LinearConnection::zero(self.n, self.m);
        for base in 0..self.n {
            for a in 0..self.m {
                for b in 0..self.m {
                    if self.rng.gen_bool(0.5) {
                        gamma.set(base, a, b, self.linear_scalar());
                    }
                }
            }
        }
        gamma
    }
}
