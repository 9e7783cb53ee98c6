//! The Z2-graded ring of superfunctions: polynomials in finitely many odd
//! generators `c^a` with rational-function coefficients in the base
//! coordinates `z^A`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::ScalarFn;

/// Largest supported number of odd generators.
pub const MAX_GENERATORS: usize = 64;

const RESERVED: &[&str] = &["D", "I", "Lie", "Bracket", "Transform", "Split", "rho", "conn", "part"];

/// Coordinate chart: `n` base coordinates and `m` odd generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    base_names: Vec<String>,
    fiber_names: Vec<String>,
}

impl Chart {
    /// Chart with the default names `z1..zn` and `c1..cm`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Chart::with_names(
            (1..=n).map(|i| format!("z{i}")).collect(),
            (1..=m).map(|i| format!("c{i}")).collect(),
        )
    }

    pub fn with_names(base_names: Vec<String>, fiber_names: Vec<String>) -> Result<Self> {
        if fiber_names.len() > MAX_GENERATORS {
            return Err(Error::ShapeMismatch(format!(
                "at most {MAX_GENERATORS} odd generators are supported"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in base_names.iter().chain(&fiber_names) {
            let valid_ident = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid_ident {
                return Err(Error::ShapeMismatch(format!("invalid coordinate name {name:?}")));
            }
            // `dX` spells the covector of `X`, so names may not start with `d`.
            if name.starts_with('d') || RESERVED.contains(&name.as_str()) {
                return Err(Error::ShapeMismatch(format!("reserved coordinate name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::ShapeMismatch(format!("duplicate coordinate name {name:?}")));
            }
        }
        Ok(Chart {
            base_names,
            fiber_names,
        })
    }

    /// Number of base coordinates.
    pub fn n(&self) -> usize {
        self.base_names.len()
    }

    /// Number of odd generators.
    pub fn m(&self) -> usize {
        self.fiber_names.len()
    }

    pub fn base_name(&self, index: usize) -> &str {
        &self.base_names[index]
    }

    pub fn fiber_name(&self, index: usize) -> &str {
        &self.fiber_names[index]
    }

    pub fn base_index(&self, name: &str) -> Option<usize> {
        self.base_names.iter().position(|n| n == name)
    }

    pub fn fiber_index(&self, name: &str) -> Option<usize> {
        self.fiber_names.iter().position(|n| n == name)
    }

    pub fn check_base(&self, index: usize) -> Result<()> {
        if index < self.n() {
            Ok(())
        } else {
            Err(Error::index("base coordinate", index, self.n()))
        }
    }

    pub fn check_fiber(&self, index: usize) -> Result<()> {
        if index < self.m() {
            Ok(())
        } else {
            Err(Error::index("odd generator", index, self.m()))
        }
    }

    /// Fails with `ChartMismatch` if `f` mentions coordinates or generators
    /// outside this chart.
    pub fn check_superfunction(&self, f: &Superfunction) -> Result<()> {
        if f.generator_width() > self.m() || f.coordinate_width() > self.n() {
            return Err(Error::ChartMismatch(format!(
                "superfunction uses symbols outside the (n={}, m={}) chart",
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }

    /// Left odd derivative with index checking.
    pub fn odd_derivative(&self, f: &Superfunction, a: usize) -> Result<Superfunction> {
        self.check_fiber(a)?;
        Ok(f.odd_derivative(a))
    }

    /// Base-coordinate derivative with index checking.
    pub fn base_derivative(&self, f: &Superfunction, index: usize) -> Result<Superfunction> {
        self.check_base(index)?;
        Ok(f.base_derivative(index))
    }

    /// Graded product, rejecting operands from a different chart.
    pub fn mul(&self, f: &Superfunction, g: &Superfunction) -> Result<Superfunction> {
        self.check_superfunction(f)?;
        self.check_superfunction(g)?;
        Ok(f * g)
    }
}

/// Grassmann (Z2) parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> usize {
        self as usize
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::of(self.bit() + rhs.bit())
    }
}

impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        Parity::of(self.bit() * rhs.bit())
    }
}

/// A product `c^{a1} ... c^{ak}` with `a1 < ... < ak`, stored as a bit set.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GrassmannMonomial(u64);

impl GrassmannMonomial {
    pub fn one() -> Self {
        GrassmannMonomial(0)
    }

    pub fn generator(index: usize) -> Self {
        assert!(index < MAX_GENERATORS, "generator index out of range");
        GrassmannMonomial(1 << index)
    }

    /// From a strictly increasing list of 0-based generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= MAX_GENERATORS {
                return Err(Error::index("odd generator", i, MAX_GENERATORS));
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(Error::ShapeMismatch(
                    "Grassmann monomial indices must be strictly increasing".into(),
                ));
            }
            bits |= 1 << i;
            prev = Some(i);
        }
        Ok(GrassmannMonomial(bits))
    }

    pub fn from_bits(bits: u64) -> Self {
        GrassmannMonomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.len())
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_GENERATORS && self.0 & (1 << index) != 0
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_GENERATORS).filter(move |i| bits & (1 << i) != 0)
    }

    /// One past the largest index present.
    pub fn width(self) -> usize {
        MAX_GENERATORS - self.0.leading_zeros() as usize
    }

    /// Number of elements of `self` strictly greater than `index`.
    fn count_above(self, index: usize) -> u32 {
        if index + 1 >= MAX_GENERATORS {
            0
        } else {
            (self.0 >> (index + 1)).count_ones()
        }
    }

    /// Number of elements of `self` strictly smaller than `index`.
    pub fn count_below(self, index: usize) -> u32 {
        (self.0 & ((1u64 << index) - 1)).count_ones()
    }

    /// `c^S c^T = sign * c^{S ∪ T}`, or `None` if the sets overlap.
    /// The boolean is `true` when the sign is negative.
    pub fn product(self, other: GrassmannMonomial) -> Option<(bool, GrassmannMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other.indices().map(|t| self.count_above(t)).sum();
        Some((inversions % 2 == 1, GrassmannMonomial(self.0 | other.0)))
    }

    pub fn without(self, index: usize) -> GrassmannMonomial {
        GrassmannMonomial(self.0 & !(1 << index))
    }
}

impl Ord for GrassmannMonomial {
    /// Shorter products first; equal lengths compare their index lists
    /// lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for GrassmannMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GrassmannMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{:?}", self.indices().map(|i| i + 1).collect::<Vec<_>>())
    }
}

/// A superfunction `f = Σ_S f_S c^S`, stored sparsely with no zero
/// coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Superfunction {
    terms: BTreeMap<GrassmannMonomial, ScalarFn>,
}

impl Superfunction {
    pub fn zero() -> Self {
        Superfunction::default()
    }

    pub fn one() -> Self {
        Superfunction::scalar(ScalarFn::one())
    }

    pub fn scalar(s: ScalarFn) -> Self {
        Superfunction::monomial(s, GrassmannMonomial::one())
    }

    pub fn integer(v: i64) -> Self {
        Superfunction::scalar(ScalarFn::integer(v))
    }

    /// The base coordinate `z^index` as a superfunction.
    pub fn coord(index: usize) -> Self {
        Superfunction::scalar(ScalarFn::coord(index))
    }

    /// The odd generator `c^index`.
    pub fn generator(index: usize) -> Self {
        Superfunction::monomial(ScalarFn::one(), GrassmannMonomial::generator(index))
    }

    pub fn monomial(coeff: ScalarFn, mono: GrassmannMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Superfunction { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GrassmannMonomial, ScalarFn)>) -> Self {
        let mut f = Superfunction::zero();
        for (mono, c) in terms {
            f.add_term(mono, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, mono: GrassmannMonomial, c: ScalarFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
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

    pub fn terms(&self) -> impl Iterator<Item = (GrassmannMonomial, &ScalarFn)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: GrassmannMonomial) -> ScalarFn {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    /// The generator-free part.
    pub fn body(&self) -> ScalarFn {
        self.coefficient(GrassmannMonomial::one())
    }

    /// The scalar value, if `self` has no generator terms.
    pub fn as_scalar(&self) -> Option<ScalarFn> {
        match self.terms.len() {
            0 => Some(ScalarFn::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_empty())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// One past the largest generator index used.
    pub fn generator_width(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    /// One past the largest base coordinate index used.
    pub fn coordinate_width(&self) -> usize {
        self.terms.values().map(ScalarFn::width).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &ScalarFn) -> Superfunction {
        if s.is_zero() {
            return Superfunction::zero();
        }
        Superfunction {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// Splits into even and odd parts.
    pub fn parity_split(&self) -> (Superfunction, Superfunction) {
        let mut even = Superfunction::zero();
        let mut odd = Superfunction::zero();
        for (m, c) in &self.terms {
            let part = if m.parity().is_odd() { &mut odd } else { &mut even };
            part.terms.insert(*m, c.clone());
        }
        (even, odd)
    }

    /// Part of the given parity.
    pub fn part(&self, parity: Parity) -> Superfunction {
        Superfunction {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == parity)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The parity if homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.terms.keys().map(|m| m.parity());
        match parities.next() {
            None => Some(Parity::Even),
            Some(p) => parities.all(|q| q == p).then_some(p),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    /// True if `self` is zero or homogeneous of the given parity.
    pub fn has_parity(&self, parity: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == parity)
    }

    /// Left derivative `∂_a`: moves `c^a` to the front, then removes it.
    pub fn odd_derivative(&self, a: usize) -> Superfunction {
        let mut out = Superfunction::zero();
        for (m, c) in &self.terms {
            if m.contains(a) {
                let coeff = if m.count_below(a) % 2 == 1 { -c } else { c.clone() };
                out.terms.insert(m.without(a), coeff);
            }
        }
        out
    }

    /// `∂_A` applied to every coefficient.
    pub fn base_derivative(&self, index: usize) -> Superfunction {
        let mut out = Superfunction::zero();
        for (m, c) in &self.terms {
            let d = c.partial(index);
            if !d.is_zero() {
                out.terms.insert(*m, d);
            }
        }
        out
    }

    /// Ring homomorphism fixing the coefficients and sending `c^b` to
    /// `images[b]`. Every image must be odd for the result to be
    /// well defined.
    pub fn substitute(&self, images: &[Superfunction]) -> Superfunction {
        let mut out = Superfunction::zero();
        let mut cache: BTreeMap<GrassmannMonomial, Superfunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            let image = cache.entry(*m).or_insert_with(|| {
                m.indices()
                    .fold(Superfunction::one(), |acc, b| &acc * &images[b])
            });
            out += &image.scale(c);
        }
        out
    }
}

impl fmt::Debug for Superfunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl AddAssign<&Superfunction> for Superfunction {
    fn add_assign(&mut self, rhs: &Superfunction) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add for &Superfunction {
    type Output = Superfunction;

    fn add(self, rhs: &Superfunction) -> Superfunction {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Superfunction {
    type Output = Superfunction;

    fn sub(self, rhs: &Superfunction) -> Superfunction {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Superfunction {
    type Output = Superfunction;

    fn neg(self) -> Superfunction {
        Superfunction {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Superfunction {
    type Output = Superfunction;

    /// Graded product.
    fn mul(self, rhs: &Superfunction) -> Superfunction {
        let mut out = Superfunction::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((negative, m)) = ma.product(*mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Superfunction {
            type Output = Superfunction;
            fn $method(self, rhs: Superfunction) -> Superfunction {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Superfunction {
    type Output = Superfunction;

    fn neg(self) -> Superfunction {
        -&self
    }
}

impl From<ScalarFn> for Superfunction {
    fn from(s: ScalarFn) -> Self {
        Superfunction::scalar(s)
    }
}
