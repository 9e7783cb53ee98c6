use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Exact rational function of the base coordinates.
///
/// Always stored reduced, with a denominator whose leading coefficient
/// (graded lex) is 1. Structural equality is therefore value equality.
///
/// The denominator is also kept as a list of pairwise coprime monic factors
/// with multiplicities, so sums and products only ever take gcds against
/// those small factors.
#[derive(Clone)]
pub struct ScalarFn {
    num: Poly,
    den: Poly,
    factors: Vec<(Poly, u32)>,
}

impl PartialEq for ScalarFn {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for ScalarFn {}

impl Hash for ScalarFn {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// Refines factors tagged with a pair of multiplicities into a pairwise
/// coprime base. Every input factor is a product of output factors.
fn coprime_base(mut work: Vec<(Poly, [u32; 2])>) -> Vec<(Poly, [u32; 2])> {
    let mut out: Vec<(Poly, [u32; 2])> = Vec::new();
    'next: while let Some((p, e)) = work.pop() {
        if p.is_constant() || e == [0, 0] {
            continue;
        }
        for i in 0..out.len() {
            if out[i].0 == p {
                out[i].1 = [out[i].1[0] + e[0], out[i].1[1] + e[1]];
                continue 'next;
            }
            let g = p.gcd(&out[i].0);
            if !g.is_constant() {
                let (q, f) = out.swap_remove(i);
                let p_rest = p.exact_div(&g).expect("gcd divides");
                let q_rest = q.exact_div(&g).expect("gcd divides");
                work.push((p_rest, e));
                work.push((q_rest, f));
                work.push((g, [e[0] + f[0], e[1] + f[1]]));
                continue 'next;
            }
        }
        out.push((p, e));
    }
    out
}

fn single(factors: &[(Poly, u32)]) -> Vec<(Poly, [u32; 2])> {
    factors.iter().map(|(p, e)| (p.clone(), [*e, 0])).collect()
}

fn expand(factors: &[(Poly, u32)]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, (p, e)| &acc * &p.pow(*e))
}

/// Divides out of `num` every common factor with the denominator given by
/// `factors`, refining the factors as needed.
fn cancel(mut num: Poly, mut factors: Vec<(Poly, u32)>) -> (Poly, Vec<(Poly, u32)>) {
    let mut i = 0;
    while i < factors.len() {
        if num.is_zero() {
            return (num, Vec::new());
        }
        let p = factors[i].0.clone();
        if let Some(q) = num.exact_div(&p) {
            num = q;
            factors[i].1 -= 1;
            if factors[i].1 == 0 {
                factors.swap_remove(i);
            }
            continue;
        }
        let g = num.gcd(&p);
        if g.is_constant() {
            i += 1;
            continue;
        }
        // g is a proper factor of p: split p and cancel g once.
        num = num.exact_div(&g).expect("gcd divides");
        let (_, e) = factors.swap_remove(i);
        let rest = p.exact_div(&g).expect("gcd divides");
        let mut work = single(&factors);
        work.push((g, [e - 1, 0]));
        work.push((rest, [e, 0]));
        factors = coprime_base(work).into_iter().map(|(p, e)| (p, e[0])).collect();
        i = 0;
    }
    (num, factors)
}

impl ScalarFn {
    pub fn zero() -> Self {
        ScalarFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        ScalarFn::from_poly(Poly::one())
    }

    pub fn integer(v: i64) -> Self {
        ScalarFn::from_poly(Poly::integer(v))
    }

    pub fn rational(numer: i64, denom: i64) -> Self {
        ScalarFn::constant(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn constant(c: BigRational) -> Self {
        ScalarFn::from_poly(Poly::constant(c))
    }

    /// The coordinate function `z^index` (0-based).
    pub fn coord(index: usize) -> Self {
        ScalarFn::from_poly(Poly::var(index))
    }

    pub fn from_poly(num: Poly) -> Self {
        ScalarFn {
            num,
            den: Poly::one(),
            factors: Vec::new(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = den.leading_coefficient().expect("nonzero").recip();
        Ok(Self::from_factors(num.scale(&lc), vec![(den.monic(), 1)]))
    }

    /// `num / Π p^e` for monic factors `p`, reduced.
    fn from_factors(num: Poly, factors: Vec<(Poly, u32)>) -> Self {
        let factors: Vec<(Poly, u32)> = factors.into_iter().filter(|(p, e)| *e > 0 && !p.is_constant()).collect();
        let (num, factors) = cancel(num, factors);
        Self::assemble(num, factors)
    }

    /// `num` must already be coprime to every factor.
    fn assemble(num: Poly, mut factors: Vec<(Poly, u32)>) -> Self {
        if num.is_zero() {
            return ScalarFn::zero();
        }
        factors.sort_by_key(|(p, _)| p.total_degree());
        let den = expand(&factors);
        ScalarFn { num, den, factors }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Number of coordinate slots referenced by numerator or denominator.
    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coefficient().expect("nonzero").recip();
        let num = self.den.scale(&lc);
        let factors = if self.num.is_constant() {
            Vec::new()
        } else {
            vec![(self.num.monic(), 1)]
        };
        Ok(Self::assemble(num, factors))
    }

    pub fn checked_div(&self, rhs: &ScalarFn) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs() as u32;
        if e == 0 {
            return Ok(ScalarFn::one());
        }
        let factors = base.factors.iter().map(|(p, k)| (p.clone(), k * e)).collect();
        Ok(Self::assemble(base.num.pow(e), factors))
    }

    /// Partial derivative with respect to the coordinate `z^index`.
    pub fn partial(&self, index: usize) -> Self {
        let dn = self.num.derivative(index);
        if self.den.is_one() {
            return ScalarFn::from_poly(dn);
        }
        // (N/D)' = (N' P − N Σ e p' P/p) / (D P) with P the product of the
        // distinct factors p of D.
        let radical = self.factors.iter().fold(Poly::one(), |acc, (p, _)| &acc * p);
        let mut log_term = Poly::zero();
        for (p, e) in &self.factors {
            let dp = p.derivative(index);
            if dp.is_zero() {
                continue;
            }
            let rest = radical.exact_div(p).expect("factor divides");
            let k = BigRational::from_integer(BigInt::from(*e));
            log_term = &log_term + &(&dp * &rest).scale(&k);
        }
        if log_term.is_zero() {
            return Self::from_factors(dn, self.factors.clone());
        }
        let num = &(&dn * &radical) - &(&self.num * &log_term);
        let factors = self.factors.iter().map(|(p, e)| (p.clone(), e + 1)).collect();
        Self::from_factors(num, factors)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ScalarFn::zero();
        }
        ScalarFn {
            num: self.num.scale(c),
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }
}

impl Default for ScalarFn {
    fn default() -> Self {
        ScalarFn::zero()
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl Add for &ScalarFn {
    type Output = ScalarFn;

    fn add(self, rhs: &ScalarFn) -> ScalarFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFn::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return ScalarFn::from_factors(&self.num + &rhs.num, self.factors.clone());
        }
        let mut tagged = single(&self.factors);
        tagged.extend(rhs.factors.iter().map(|(p, e)| (p.clone(), [0, *e])));
        let base = coprime_base(tagged);
        let (mut left, mut right) = (self.num.clone(), rhs.num.clone());
        // Only factors at equal multiplicity on both sides can cancel.
        let (mut shared, mut settled) = (Vec::new(), Vec::new());
        for (p, [a, b]) in base {
            if a < b {
                left = &left * &p.pow(b - a);
            } else if b < a {
                right = &right * &p.pow(a - b);
            }
            if a == b {
                shared.push((p, a));
            } else {
                settled.push((p, a.max(b)));
            }
        }
        let (num, mut factors) = cancel(&left + &right, shared);
        if num.is_zero() {
            return ScalarFn::zero();
        }
        factors.extend(settled);
        ScalarFn::assemble(num, factors)
    }
}

impl Sub for &ScalarFn {
    type Output = ScalarFn;

    fn sub(self, rhs: &ScalarFn) -> ScalarFn {
        self + &(-rhs)
    }
}

impl Neg for &ScalarFn {
    type Output = ScalarFn;

    fn neg(self) -> ScalarFn {
        ScalarFn {
            num: -&self.num,
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }
}

impl Mul for &ScalarFn {
    type Output = ScalarFn;

    fn mul(self, rhs: &ScalarFn) -> ScalarFn {
        if self.is_zero() || rhs.is_zero() {
            return ScalarFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarFn::from_poly(&self.num * &rhs.num);
        }
        let (a, fb) = cancel(self.num.clone(), rhs.factors.clone());
        let (b, fa) = cancel(rhs.num.clone(), self.factors.clone());
        let mut tagged = single(&fa);
        tagged.extend(single(&fb));
        let factors = coprime_base(tagged).into_iter().map(|(p, e)| (p, e[0])).collect();
        ScalarFn::assemble(&a * &b, factors)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for ScalarFn {
            type Output = ScalarFn;
            fn $method(self, rhs: ScalarFn) -> ScalarFn {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ScalarFn {
    type Output = ScalarFn;

    fn neg(self) -> ScalarFn {
        -&self
    }
}

impl From<i64> for ScalarFn {
    fn from(v: i64) -> Self {
        ScalarFn::integer(v)
    }
}
