//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so the leading term is always the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a power product `z1^e1 * z2^e2 * ...`.
///
/// Trailing zero exponents are trimmed so that the same power product has a
/// single representation regardless of how many variables are in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: impl Into<Vec<u32>>) -> Self {
        let mut m = Monomial(exps.into());
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variable slots in use (index of the last variable + 1).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = other.0.clone();
        for (e, d) in exps.iter_mut().zip(&self.0) {
            *e -= d;
        }
        Monomial::from_exponents(exps)
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect::<Vec<_>>(),
        )
    }

    fn with_exponent(&self, var: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= var {
            exps.resize(var + 1, 0);
        }
        exps[var] = exp;
        Monomial::from_exponents(exps)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= rhs.0.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut exps = long.0.clone();
        for (e, s) in exps.iter_mut().zip(&short.0) {
            *e += s;
        }
        Monomial(exps)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of `z1`,
    /// then `z2`, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let width = self.0.len().max(other.0.len());
            (0..width)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `z1, z2, ...` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn integer(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(index: usize) -> Self {
        Poly::term(BigRational::one(), Monomial::var(index))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading (largest) monomial downwards.
    pub fn terms_descending(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Number of variable slots referenced.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, c: &BigRational, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k * m, a * c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(
                    m.with_exponent(var, e - 1),
                    c * BigRational::from_integer(BigInt::from(e)),
                );
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.is_constant() {
            return Some(self.scale(&lc.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_of(rm);
            let qc = rc / lc;
            rem = &rem - &divisor.mul_term(&qc, &qm);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self == other {
            return self.monic();
        }
        if self.is_monomial() || other.is_monomial() {
            return monomial_gcd(self, other);
        }
        let main = self.width().max(other.width()) - 1;
        let a_has = self.degree_in(main) > 0;
        let b_has = other.degree_in(main) > 0;
        match (a_has, b_has) {
            (false, false) => unreachable!("main variable occurs in at least one operand"),
            (true, false) => content_in(self, main).gcd(other),
            (false, true) => self.gcd(&content_in(other, main)),
            (true, true) => {
                let ca = content_in(self, main);
                let cb = content_in(other, main);
                let pa = self.exact_div(&ca).expect("content divides");
                let pb = other.exact_div(&cb).expect("content divides");
                let g = &ca.gcd(&cb) * &primitive_prs_gcd(&pa, &pb, main);
                g.monic()
            }
        }
    }

    /// Coefficients with respect to `var`, indexed by its exponent.
    fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    fn from_coefficients_in(coeffs: &[Poly], var: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_exponent(var, e as u32), a.clone());
            }
        }
        out
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_negative())
    }
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut acc: Option<Monomial> = None;
    for m in a.terms.keys().chain(b.terms.keys()) {
        acc = Some(match acc {
            None => m.clone(),
            Some(g) => g.gcd(m),
        });
        if acc.as_ref().is_some_and(Monomial::is_one) {
            break;
        }
    }
    Poly::term(BigRational::one(), acc.unwrap_or_default())
}

/// Content with respect to `var`: gcd of the coefficients in the remaining
/// variables.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero();
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &[Poly], var: usize) -> Vec<Poly> {
    let whole = Poly::from_coefficients_in(p, var);
    let content = content_in(&whole, var);
    let pp = whole.exact_div(&content).expect("content divides").monic();
    pp.coefficients_in(var)
}

fn trim_upoly(p: &mut Vec<Poly>) {
    while p.len() > 1 && p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
}

/// Sparse pseudo-remainder of `a` by `b` as univariate polynomials with
/// polynomial coefficients.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim_upoly(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c * lb).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(&lr * bc);
        }
        debug_assert!(next[dr].is_zero());
        next.pop();
        if next.is_empty() {
            next.push(Poly::zero());
        }
        trim_upoly(&mut next);
        r = next;
    }
    r
}

/// Gcd of two polynomials that are primitive in `var`, via the primitive
/// polynomial remainder sequence.
fn primitive_prs_gcd(a: &Poly, b: &Poly, var: usize) -> Poly {
    let mut x = a.coefficients_in(var);
    let mut y = b.coefficients_in(var);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = pseudo_rem(&x, &y);
        if r.iter().all(Poly::is_zero) {
            return Poly::from_coefficients_in(&primitive_part_in(&y, var), var);
        }
        if r.len() == 1 {
            return Poly::one();
        }
        x = y;
        y = primitive_part_in(&r, var);
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
