//! Supervector fields `u = u^A ∂_A + u^a ∂_a` acting as graded derivations
//! of the superfunction ring.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::Transition;
use crate::grassmann::{Parity, Superfunction};

/// Component vectors `(u^A)` and `(u^a)` of a supervector field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SupervectorField {
    base: Vec<Superfunction>,
    fiber: Vec<Superfunction>,
}

/// Homogeneity class of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldParity {
    Even,
    Odd,
    Inhomogeneous,
}

impl FieldParity {
    pub fn parity(self) -> Option<Parity> {
        match self {
            FieldParity::Even => Some(Parity::Even),
            FieldParity::Odd => Some(Parity::Odd),
            FieldParity::Inhomogeneous => None,
        }
    }
}

impl SupervectorField {
    pub fn new(base: Vec<Superfunction>, fiber: Vec<Superfunction>) -> Self {
        SupervectorField { base, fiber }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        SupervectorField {
            base: vec![Superfunction::zero(); n],
            fiber: vec![Superfunction::zero(); m],
        }
    }

    /// The coordinate field `∂_A` for the base coordinate `z^index`.
    pub fn base_basis(n: usize, m: usize, index: usize) -> Self {
        let mut u = SupervectorField::zero(n, m);
        u.base[index] = Superfunction::one();
        u
    }

    /// The odd coordinate field `∂_a` for the generator `c^index`.
    pub fn fiber_basis(n: usize, m: usize, index: usize) -> Self {
        let mut u = SupervectorField::zero(n, m);
        u.fiber[index] = Superfunction::one();
        u
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn m(&self) -> usize {
        self.fiber.len()
    }

    pub fn base_components(&self) -> &[Superfunction] {
        &self.base
    }

    pub fn fiber_components(&self) -> &[Superfunction] {
        &self.fiber
    }

    pub fn base_component(&self, index: usize) -> &Superfunction {
        &self.base[index]
    }

    pub fn fiber_component(&self, index: usize) -> &Superfunction {
        &self.fiber[index]
    }

    pub fn is_zero(&self) -> bool {
        self.base.iter().chain(&self.fiber).all(Superfunction::is_zero)
    }

    fn same_shape(&self, other: &SupervectorField) -> Result<()> {
        if self.n() != other.n() || self.m() != other.m() {
            return Err(Error::ChartMismatch(format!(
                "fields over (n={}, m={}) and (n={}, m={})",
                self.n(),
                self.m(),
                other.n(),
                other.m()
            )));
        }
        Ok(())
    }

    fn check_function(&self, f: &Superfunction) -> Result<()> {
        if f.generator_width() > self.m() || f.coordinate_width() > self.n() {
            return Err(Error::ChartMismatch(format!(
                "superfunction uses symbols outside the (n={}, m={}) chart",
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&Superfunction) -> Superfunction) -> SupervectorField {
        SupervectorField {
            base: self.base.iter().map(&f).collect(),
            fiber: self.fiber.iter().map(&f).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &SupervectorField,
        f: impl Fn(&Superfunction, &Superfunction) -> Superfunction,
    ) -> Result<SupervectorField> {
        self.same_shape(other)?;
        Ok(SupervectorField {
            base: self.base.iter().zip(&other.base).map(|(a, b)| f(a, b)).collect(),
            fiber: self.fiber.iter().zip(&other.fiber).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &SupervectorField) -> Result<SupervectorField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &SupervectorField) -> Result<SupervectorField> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Left multiplication `f·u`, i.e. components `f·u^A`, `f·u^a`.
    pub fn left_mul(&self, f: &Superfunction) -> SupervectorField {
        self.map(|c| f * c)
    }

    /// The derivation applied to a superfunction:
    /// `u(f) = u^A ∂_A(f) + u^a ∂_a(f)`, components on the left.
    pub fn apply(&self, f: &Superfunction) -> Result<Superfunction> {
        self.check_function(f)?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Superfunction) -> Superfunction {
        let mut out = Superfunction::zero();
        for (index, comp) in self.base.iter().enumerate() {
            if !comp.is_zero() {
                out += &(comp * &f.base_derivative(index));
            }
        }
        for (index, comp) in self.fiber.iter().enumerate() {
            if !comp.is_zero() {
                out += &(comp * &f.odd_derivative(index));
            }
        }
        out
    }

    /// Homogeneity: even iff every `u^A` is even and every `u^a` odd, odd
    /// iff the reverse. The zero field is even.
    pub fn parity(&self) -> FieldParity {
        let fits = |p: Parity| {
            self.base.iter().all(|c| c.has_parity(p))
                && self.fiber.iter().all(|c| c.has_parity(p.flip()))
        };
        if fits(Parity::Even) {
            FieldParity::Even
        } else if fits(Parity::Odd) {
            FieldParity::Odd
        } else {
            FieldParity::Inhomogeneous
        }
    }

    pub fn part(&self, parity: Parity) -> SupervectorField {
        SupervectorField {
            base: self.base.iter().map(|c| c.part(parity)).collect(),
            fiber: self.fiber.iter().map(|c| c.part(parity.flip())).collect(),
        }
    }

    /// `u = u_even + u_odd`.
    pub fn parity_split(&self) -> (SupervectorField, SupervectorField) {
        (self.part(Parity::Even), self.part(Parity::Odd))
    }

    /// Graded commutator `[u, v] = u∘v + (−1)^{|u||v|+1} v∘u`, extended
    /// bilinearly over the parity parts of both arguments.
    pub fn bracket(&self, other: &SupervectorField) -> Result<SupervectorField> {
        self.same_shape(other)?;
        let mut out = SupervectorField::zero(self.n(), self.m());
        for pu in [Parity::Even, Parity::Odd] {
            let u = self.part(pu);
            if u.is_zero() {
                continue;
            }
            for pv in [Parity::Even, Parity::Odd] {
                let v = other.part(pv);
                if v.is_zero() {
                    continue;
                }
                let b = homogeneous_bracket(&u, &v, (pu * pv).is_odd());
                out = out.checked_add(&b)?;
            }
        }
        Ok(out)
    }

    /// Components of the same derivation in the frame `c'^a = ρ^a_b c^b`.
    ///
    /// `u'^A = u^A` and `u'^a = ρ^a_j u^j + u^A ∂_A(ρ^a_j) c^j`, with every
    /// superfunction then rewritten in the primed generators.
    pub fn transform(&self, rho: &Transition) -> Result<SupervectorField> {
        if rho.size() != self.m() {
            return Err(Error::ChartMismatch(format!(
                "{}x{} transition for a field with m={}",
                rho.size(),
                rho.size(),
                self.m()
            )));
        }
        let m = self.m();
        let matrix = rho.matrix();
        let derivs: Vec<_> = (0..self.n()).map(|index| matrix.partial(index)).collect();
        let mut fiber = Vec::with_capacity(m);
        for a in 0..m {
            let mut comp = Superfunction::zero();
            for j in 0..m {
                let r = matrix.get(a, j);
                if !r.is_zero() {
                    comp += &self.fiber[j].scale(r);
                }
                for (index, ua) in self.base.iter().enumerate() {
                    let dr = derivs[index].get(a, j);
                    if !ua.is_zero() && !dr.is_zero() {
                        comp += &(&ua.scale(dr) * &Superfunction::generator(j));
                    }
                }
            }
            fiber.push(comp);
        }
        let old = SupervectorField {
            base: self.base.clone(),
            fiber,
        };
        Ok(old.map(|c| rho.apply_to_superfunction(c)))
    }
}

fn homogeneous_bracket(u: &SupervectorField, v: &SupervectorField, both_odd: bool) -> SupervectorField {
    // [u,v](x) = u(v(x)) − (−1)^{|u||v|} v(u(x)), evaluated on the
    // coordinate functions where u(z^A) = u^A and u(c^a) = u^a.
    let combine = |uc: &Superfunction, vc: &Superfunction| {
        let first = u.apply_unchecked(vc);
        let second = v.apply_unchecked(uc);
        if both_odd {
            &first + &second
        } else {
            &first - &second
        }
    };
    SupervectorField {
        base: u.base.iter().zip(&v.base).map(|(a, b)| combine(a, b)).collect(),
        fiber: u.fiber.iter().zip(&v.fiber).map(|(a, b)| combine(a, b)).collect(),
    }
}

impl fmt::Debug for SupervectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupervectorField")
            .field("base", &self.base)
            .field("fiber", &self.fiber)
            .finish()
    }
}

impl Add for &SupervectorField {
    type Output = SupervectorField;

    /// Panics if the shapes differ; see [`SupervectorField::checked_add`].
    fn add(self, rhs: &SupervectorField) -> SupervectorField {
        self.checked_add(rhs).expect("fields over the same chart")
    }
}

impl Sub for &SupervectorField {
    type Output = SupervectorField;

    fn sub(self, rhs: &SupervectorField) -> SupervectorField {
        self.checked_sub(rhs).expect("fields over the same chart")
    }
}

impl Neg for &SupervectorField {
    type Output = SupervectorField;

    fn neg(self) -> SupervectorField {
        self.map(|c| -c)
    }
}

impl Neg for SupervectorField {
    type Output = SupervectorField;

    fn neg(self) -> SupervectorField {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ScalarFn, ScalarMatrix};

    fn c(i: usize) -> Superfunction {
        Superfunction::generator(i)
    }

    fn z(i: usize) -> Superfunction {
        Superfunction::coord(i)
    }

    #[test]
    fn action_on_superfunctions() {
        let dz1 = SupervectorField::base_basis(1, 2, 0);
        assert_eq!(dz1.apply(&(&z(0) * &c(0))).unwrap(), c(0));

        let u = SupervectorField::fiber_basis(1, 2, 1).left_mul(&c(0));
        assert_eq!(u.apply(&c(1)).unwrap(), c(0));

        let dc1 = SupervectorField::fiber_basis(1, 2, 0);
        let f = &(&c(0) * &c(1)) + &z(0);
        assert_eq!(dc1.apply(&f).unwrap(), c(1));
    }

    #[test]
    fn apply_rejects_foreign_symbols() {
        let dz1 = SupervectorField::base_basis(1, 1, 0);
        assert!(matches!(dz1.apply(&c(3)), Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn field_parities() {
        assert_eq!(SupervectorField::base_basis(1, 1, 0).parity(), FieldParity::Even);
        assert_eq!(SupervectorField::fiber_basis(1, 1, 0).parity(), FieldParity::Odd);
        let mixed = &SupervectorField::base_basis(1, 1, 0) + &SupervectorField::fiber_basis(1, 1, 0);
        assert_eq!(mixed.parity(), FieldParity::Inhomogeneous);
        let (even, odd) = mixed.parity_split();
        assert_eq!(even, SupervectorField::base_basis(1, 1, 0));
        assert_eq!(odd, SupervectorField::fiber_basis(1, 1, 0));
    }

    #[test]
    fn bracket_examples() {
        let dc1 = SupervectorField::fiber_basis(1, 2, 0);
        let dc2 = SupervectorField::fiber_basis(1, 2, 1);
        assert!(dc1.bracket(&dc2).unwrap().is_zero());
        assert!(dc1.bracket(&dc1).unwrap().is_zero());

        // [∂_z1, z1 ∂_c1] = ∂_c1
        let dz1 = SupervectorField::base_basis(1, 2, 0);
        let v = dc1.left_mul(&z(0));
        assert_eq!(dz1.bracket(&v).unwrap(), dc1);

        // [c2 ∂_c1, c1 ∂_c2] = −c1 ∂_c1 + c2 ∂_c2
        let u = dc1.left_mul(&c(1));
        let w = dc2.left_mul(&c(0));
        let expected = &(-&dc1.left_mul(&c(0))) + &dc2.left_mul(&c(1));
        assert_eq!(u.bracket(&w).unwrap(), expected);
    }

    #[test]
    fn bracket_shape_mismatch() {
        let a = SupervectorField::base_basis(1, 1, 0);
        let b = SupervectorField::base_basis(2, 1, 0);
        assert!(matches!(a.bracket(&b), Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn transform_scales_odd_derivative() {
        let rho = Transition::new(ScalarMatrix::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap())
            .unwrap();
        let dc1 = SupervectorField::fiber_basis(1, 1, 0);
        let t = dc1.transform(&rho).unwrap();
        assert!(t.base_component(0).is_zero());
        assert_eq!(t.fiber_component(0), &z(0));
    }

    #[test]
    fn transform_adds_connection_like_term() {
        // ρ = [z1]: ∂_z1 becomes ∂_z1 + (1/z1) c'1 ∂_c'1.
        let rho = Transition::new(ScalarMatrix::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap())
            .unwrap();
        let dz1 = SupervectorField::base_basis(1, 1, 0);
        let t = dz1.transform(&rho).unwrap();
        assert_eq!(t.base_component(0), &Superfunction::one());
        let inv = ScalarFn::coord(0).recip().unwrap();
        assert_eq!(t.fiber_component(0), &c(0).scale(&inv));
    }

    #[test]
    fn identity_transform_is_trivial() {
        let u = &SupervectorField::base_basis(2, 2, 1).left_mul(&c(0))
            + &SupervectorField::fiber_basis(2, 2, 0).left_mul(&z(1));
        let id = Transition::identity(2);
        assert_eq!(u.transform(&id).unwrap(), u);
    }
}
