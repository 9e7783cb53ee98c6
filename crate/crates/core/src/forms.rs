//! Exterior superforms: the (Z, Z2)-bigraded ring generated over
//! superfunctions by the antisymmetric `dz^A` and the symmetric `dc^a`.
//!
//! Every term is kept in the normal order `f · dz^T · dc^U` with `T`
//! strictly increasing and `U` weakly increasing. Bidegrees of the
//! generators are
//!
//! | generator | form degree | parity |
//! |-----------|-------------|--------|
//! | `c^a`     | 0           | odd    |
//! | `dz^A`    | 1           | even   |
//! | `dc^a`    | 1           | odd    |
//!
//! and `x ∧ y = (−1)^{|x||y| + [x][y]} y ∧ x`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::fields::SupervectorField;
use crate::geometry::Transition;
use crate::grassmann::{GrassmannMonomial, Parity, Superfunction};
use crate::scalars::ScalarFn;

/// The `dz^T dc^U` part of a form term.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormBasis {
    dz: GrassmannMonomial,
    dc: Vec<u8>,
}

impl FormBasis {
    pub fn one() -> Self {
        FormBasis::default()
    }

    /// `dz` indices must be strictly increasing; `dc` indices are sorted
    /// here and may repeat.
    pub fn new(dz: &[usize], dc: &[usize]) -> Result<Self> {
        let dz = GrassmannMonomial::from_indices(dz)?;
        let mut dc_sorted = Vec::with_capacity(dc.len());
        for &a in dc {
            let a = u8::try_from(a)
                .ok()
                .filter(|&a| (a as usize) < crate::grassmann::MAX_GENERATORS)
                .ok_or(Error::index("odd generator", a, crate::grassmann::MAX_GENERATORS))?;
            dc_sorted.push(a);
        }
        dc_sorted.sort_unstable();
        Ok(FormBasis { dz, dc: dc_sorted })
    }

    pub fn dz(&self) -> GrassmannMonomial {
        self.dz
    }

    /// Sorted `dc` indices, with repetitions.
    pub fn dc(&self) -> impl Iterator<Item = usize> + '_ {
        self.dc.iter().map(|&a| a as usize)
    }

    pub fn dz_len(&self) -> usize {
        self.dz.len()
    }

    pub fn dc_len(&self) -> usize {
        self.dc.len()
    }

    pub fn degree(&self) -> usize {
        self.dz.len() + self.dc.len()
    }

    fn dc_parity(&self) -> Parity {
        Parity::of(self.dc.len())
    }

    fn with_dc(&self, a: usize) -> FormBasis {
        let mut dc = self.dc.clone();
        let pos = dc.partition_point(|&x| (x as usize) <= a);
        dc.insert(pos, a as u8);
        FormBasis { dz: self.dz, dc }
    }

    fn merge_dc(&self, other: &[u8]) -> Vec<u8> {
        let mut dc = self.dc.clone();
        dc.extend_from_slice(other);
        dc.sort_unstable();
        dc
    }

    /// Distinct `dc` indices with their multiplicities.
    fn dc_counts(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &a in &self.dc {
            match out.last_mut() {
                Some((b, k)) if *b == a as usize => *k += 1,
                _ => out.push((a as usize, 1)),
            }
        }
        out
    }

    fn without_dc(&self, a: usize) -> FormBasis {
        let mut dc = self.dc.clone();
        if let Some(pos) = dc.iter().position(|&x| x as usize == a) {
            dc.remove(pos);
        }
        FormBasis { dz: self.dz, dc }
    }

    fn dc_width(&self) -> usize {
        self.dc.last().map_or(0, |&a| a as usize + 1)
    }
}

impl Ord for FormBasis {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.dz.cmp(&other.dz))
            .then_with(|| self.dc.cmp(&other.dc))
    }
}

impl PartialOrd for FormBasis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FormBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dz{:?}dc{:?}",
            self.dz.indices().map(|i| i + 1).collect::<Vec<_>>(),
            self.dc.iter().map(|&a| a + 1).collect::<Vec<_>>()
        )
    }
}

/// `f` with its odd part negated when `flip` is set: `(−1)^{[f]}` applied
/// termwise.
fn parity_twist(f: &Superfunction, flip: bool) -> Superfunction {
    if !flip {
        return f.clone();
    }
    let (even, odd) = f.parity_split();
    &even - &odd
}

/// Degree and parity content of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormGrading {
    pub degrees: BTreeSet<usize>,
    pub parities: BTreeSet<Parity>,
}

impl FormGrading {
    pub fn degree(&self) -> Option<usize> {
        match self.degrees.len() {
            0 => Some(0),
            1 => self.degrees.iter().next().copied(),
            _ => None,
        }
    }

    pub fn parity(&self) -> Option<Parity> {
        match self.parities.len() {
            0 => Some(Parity::Even),
            1 => self.parities.iter().next().copied(),
            _ => None,
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.degree().is_some() && self.parity().is_some()
    }
}

/// An exterior superform in normal order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Superform {
    terms: BTreeMap<FormBasis, Superfunction>,
}

impl Superform {
    pub fn zero() -> Self {
        Superform::default()
    }

    pub fn function(f: Superfunction) -> Self {
        Superform::term(f, FormBasis::one())
    }

    pub fn dz(index: usize) -> Self {
        Superform::term(Superfunction::one(), FormBasis::new(&[index], &[]).expect("single index"))
    }

    pub fn dc(index: usize) -> Self {
        Superform::term(Superfunction::one(), FormBasis::new(&[], &[index]).expect("single index"))
    }

    pub fn term(coeff: Superfunction, basis: FormBasis) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(basis, coeff);
        }
        Superform { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FormBasis, Superfunction)>) -> Self {
        let mut out = Superform::zero();
        for (b, f) in terms {
            out.add_term(b, f);
        }
        out
    }

    /// `φ_A dz^A + φ_a dc^a` with coefficients on the left.
    pub fn one_form(base: &[Superfunction], fiber: &[Superfunction]) -> Self {
        let mut out = Superform::zero();
        for (index, f) in base.iter().enumerate() {
            out.add_term(FormBasis::new(&[index], &[]).expect("index"), f.clone());
        }
        for (index, f) in fiber.iter().enumerate() {
            out.add_term(FormBasis::new(&[], &[index]).expect("index"), f.clone());
        }
        out
    }

    fn add_term(&mut self, basis: FormBasis, coeff: Superfunction) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormBasis, &Superfunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, basis: &FormBasis) -> Superfunction {
        self.terms.get(basis).cloned().unwrap_or_default()
    }

    /// The superfunction, if this is a 0-form.
    pub fn as_function(&self) -> Option<Superfunction> {
        if self.terms.keys().all(|b| b.degree() == 0) {
            Some(self.coefficient(&FormBasis::one()))
        } else {
            None
        }
    }

    pub fn grading(&self) -> FormGrading {
        let mut degrees = BTreeSet::new();
        let mut parities = BTreeSet::new();
        for (basis, coeff) in &self.terms {
            degrees.insert(basis.degree());
            for (mono, _) in coeff.terms() {
                parities.insert(mono.parity() + basis.dc_parity());
            }
        }
        FormGrading { degrees, parities }
    }

    /// The degree-`k` part.
    pub fn degree_part(&self, k: usize) -> Superform {
        Superform {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, f)| (b.clone(), f.clone()))
                .collect(),
        }
    }

    /// The part of Grassmann parity `parity`.
    pub fn parity_part(&self, parity: Parity) -> Superform {
        let mut out = Superform::zero();
        for (basis, coeff) in &self.terms {
            out.add_term(basis.clone(), coeff.part(parity + basis.dc_parity()));
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(FormBasis::degree).max().unwrap_or(0)
    }

    /// One past the largest base index among coefficients and `dz` factors.
    pub fn coordinate_width(&self) -> usize {
        self.terms
            .iter()
            .map(|(b, f)| b.dz.width().max(f.coordinate_width()))
            .max()
            .unwrap_or(0)
    }

    /// One past the largest generator index among coefficients and `dc`
    /// factors.
    pub fn generator_width(&self) -> usize {
        self.terms
            .iter()
            .map(|(b, f)| b.dc_width().max(f.generator_width()))
            .max()
            .unwrap_or(0)
    }

    /// Components `(φ_A, φ_a)` of a 1-form over an `(n, m)` chart.
    pub fn one_form_components(
        &self,
        n: usize,
        m: usize,
    ) -> Result<(Vec<Superfunction>, Vec<Superfunction>)> {
        if self.terms.keys().any(|b| b.degree() != 1) {
            return Err(Error::NotDegreeOne);
        }
        if self.coordinate_width() > n || self.generator_width() > m {
            return Err(Error::ChartMismatch(format!(
                "form uses symbols outside the (n={n}, m={m}) chart"
            )));
        }
        let base = (0..n)
            .map(|i| self.coefficient(&FormBasis::new(&[i], &[]).expect("index")))
            .collect();
        let fiber = (0..m)
            .map(|a| self.coefficient(&FormBasis::new(&[], &[a]).expect("index")))
            .collect();
        Ok((base, fiber))
    }

    /// Left multiplication by a superfunction (the wedge with a 0-form).
    pub fn left_mul(&self, f: &Superfunction) -> Superform {
        let mut out = Superform::zero();
        for (basis, coeff) in &self.terms {
            out.add_term(basis.clone(), f * coeff);
        }
        out
    }

    /// Graded exterior product.
    pub fn wedge(&self, other: &Superform) -> Superform {
        let mut out = Superform::zero();
        for (ba, fa) in &self.terms {
            for (bb, gb) in &other.terms {
                let Some((dz_negative, dz)) = ba.dz.product(bb.dz) else {
                    continue;
                };
                // g moves past dc^U: (−1)^{[g]|U|}; dz^V moves past dc^U:
                // (−1)^{|V||U|}.
                let u_len = ba.dc.len();
                let g = parity_twist(gb, u_len % 2 == 1);
                let negative = dz_negative ^ (bb.dz.len() * u_len % 2 == 1);
                let coeff = fa * &g;
                let basis = FormBasis {
                    dz,
                    dc: ba.merge_dc(&bb.dc),
                };
                out.add_term(basis, if negative { -coeff } else { coeff });
            }
        }
        out
    }

    /// `dφ = dz^A ∧ ∂_A(φ) + dc^a ∧ ∂_a(φ)`, the derivatives acting on the
    /// coefficients as left derivatives.
    pub fn exterior_differential(&self) -> Superform {
        let mut out = Superform::zero();
        for (basis, coeff) in &self.terms {
            for index in 0..coeff.coordinate_width() {
                let h = coeff.base_derivative(index);
                if h.is_zero() {
                    continue;
                }
                let Some((negative, dz)) = GrassmannMonomial::generator(index).product(basis.dz) else {
                    continue;
                };
                let b = FormBasis {
                    dz,
                    dc: basis.dc.clone(),
                };
                out.add_term(b, if negative { -h } else { h });
            }
            for a in 0..coeff.generator_width() {
                let h = coeff.odd_derivative(a);
                if h.is_zero() {
                    continue;
                }
                // dc^a ∧ h dz^T = (−1)^{[h] + |T|} h dz^T dc^a
                let mut h = parity_twist(&h, true);
                if basis.dz.len() % 2 == 1 {
                    h = -h;
                }
                out.add_term(basis.with_dc(a), h);
            }
        }
        out
    }

    fn check_field(&self, u: &SupervectorField) -> Result<()> {
        if self.coordinate_width() > u.n() || self.generator_width() > u.m() {
            return Err(Error::ChartMismatch(format!(
                "form uses symbols outside the (n={}, m={}) chart of the field",
                u.n(),
                u.m()
            )));
        }
        Ok(())
    }

    /// Interior product `u⌋φ`. Lowers the form degree by one and sends
    /// 0-forms to zero.
    pub fn interior(&self, u: &SupervectorField) -> Result<Superform> {
        self.check_field(u)?;
        let mut out = Superform::zero();
        for parity in [Parity::Even, Parity::Odd] {
            let part = u.part(parity);
            if !part.is_zero() {
                out += &self.interior_homogeneous(&part, parity.is_odd());
            }
        }
        Ok(out)
    }

    /// For homogeneous `u` of parity `odd`:
    /// `u⌋(f dz^{t_1}…dz^{t_k} dc^U) = Σ_j (−1)^{[f][u] + j} f u^{t_j} dz^{T∖t_j} dc^U
    ///  + Σ_{a ∈ U} mult_a (−1)^{[f][u] + |T|} f u^a dz^T dc^{U∖a}`.
    fn interior_homogeneous(&self, u: &SupervectorField, odd: bool) -> Superform {
        let mut out = Superform::zero();
        for (basis, coeff) in &self.terms {
            let f = parity_twist(coeff, odd);
            for (j, t) in basis.dz.indices().enumerate() {
                let comp = u.base_component(t);
                if comp.is_zero() {
                    continue;
                }
                let mut c = &f * comp;
                if j % 2 == 1 {
                    c = -c;
                }
                let b = FormBasis {
                    dz: basis.dz.without(t),
                    dc: basis.dc.clone(),
                };
                out.add_term(b, c);
            }
            let dz_sign_negative = basis.dz.len() % 2 == 1;
            for (a, mult) in basis.dc_counts() {
                let comp = u.fiber_component(a);
                if comp.is_zero() {
                    continue;
                }
                let mut c = (&f * comp).scale(&ScalarFn::integer(mult as i64));
                if dz_sign_negative {
                    c = -c;
                }
                out.add_term(basis.without_dc(a), c);
            }
        }
        out
    }

    /// Lie derivative `L_u φ = u⌋dφ + d(u⌋φ)`.
    pub fn lie_derivative(&self, u: &SupervectorField) -> Result<Superform> {
        self.check_field(u)?;
        let first = self.exterior_differential().interior(u)?;
        let second = self.interior(u)?.exterior_differential();
        Ok(&first + &second)
    }

    /// Rewrites the form in the frame `c'^a = ρ^a_b c^b` by substituting
    /// `c^b = ρ^{-1}{}^b_a c'^a` and
    /// `dc^b = ∂_A(ρ^{-1}{}^b_a) c'^a dz^A + ρ^{-1}{}^b_a dc'^a`.
    pub fn transform(&self, rho: &Transition) -> Result<Superform> {
        if self.generator_width() > rho.size() {
            return Err(Error::ChartMismatch(format!(
                "{}x{} transition for a form using {} generators",
                rho.size(),
                rho.size(),
                self.generator_width()
            )));
        }
        let n = self.coordinate_width().max(rho.coordinate_width());
        let dc_images = rho.differential_images(n);
        let mut dc_cache: BTreeMap<Vec<u8>, Superform> = BTreeMap::new();
        let mut out = Superform::zero();
        for (basis, coeff) in &self.terms {
            let dc_image = dc_cache
                .entry(basis.dc.clone())
                .or_insert_with(|| {
                    basis
                        .dc
                        .iter()
                        .fold(Superform::function(Superfunction::one()), |acc, &b| {
                            acc.wedge(&dc_images[b as usize])
                        })
                })
                .clone();
            let dz_part = Superform::term(
                Superfunction::one(),
                FormBasis {
                    dz: basis.dz,
                    dc: Vec::new(),
                },
            );
            let image = dz_part.wedge(&dc_image).left_mul(&rho.apply_to_superfunction(coeff));
            out += &image;
        }
        Ok(out)
    }
}

impl fmt::Debug for Superform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl From<Superfunction> for Superform {
    fn from(f: Superfunction) -> Self {
        Superform::function(f)
    }
}

impl AddAssign<&Superform> for Superform {
    fn add_assign(&mut self, rhs: &Superform) {
        for (b, f) in &rhs.terms {
            self.add_term(b.clone(), f.clone());
        }
    }
}

impl Add for &Superform {
    type Output = Superform;

    fn add(self, rhs: &Superform) -> Superform {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Superform {
    type Output = Superform;

    fn sub(self, rhs: &Superform) -> Superform {
        let mut out = self.clone();
        for (b, f) in &rhs.terms {
            out.add_term(b.clone(), -f);
        }
        out
    }
}

impl Neg for &Superform {
    type Output = Superform;

    fn neg(self) -> Superform {
        Superform {
            terms: self.terms.iter().map(|(b, f)| (b.clone(), -f)).collect(),
        }
    }
}

impl Neg for Superform {
    type Output = Superform;

    fn neg(self) -> Superform {
        -&self
    }
}
