use crate::error::{Error, Result};
use crate::fields::SupervectorField;
use crate::forms::Superform;
use crate::grassmann::Superfunction;
use crate::scalars::ScalarFn;

/// Coefficients `Γ_A{}^a{}_b(z)` of a linear connection on the bundle whose
/// fiber coordinates are dual to the odd generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConnection {
    n: usize,
    m: usize,
    gamma: Vec<ScalarFn>,
}

impl LinearConnection {
    pub fn zero(n: usize, m: usize) -> Self {
        LinearConnection {
            n,
            m,
            gamma: vec![ScalarFn::zero(); n * m * m],
        }
    }

    /// From a nested array indexed `[A][a][b]`.
    pub fn from_array(gamma: Vec<Vec<Vec<ScalarFn>>>) -> Result<Self> {
        let n = gamma.len();
        let m = gamma.first().map_or(0, Vec::len);
        let ok = gamma
            .iter()
            .all(|g| g.len() == m && g.iter().all(|row| row.len() == m));
        if !ok {
            return Err(Error::ShapeMismatch("connection array must be n x m x m".into()));
        }
        Ok(LinearConnection {
            n,
            m,
            gamma: gamma.into_iter().flatten().flatten().collect(),
        })
    }

    /// Rejects superfunction-valued entries: the coefficients must depend
    /// on the base coordinates only.
    pub fn from_superfunctions(n: usize, m: usize, entries: &[Superfunction]) -> Result<Self> {
        if entries.len() != n * m * m {
            return Err(Error::ShapeMismatch(format!(
                "expected {} connection entries, got {}",
                n * m * m,
                entries.len()
            )));
        }
        let gamma = entries
            .iter()
            .map(|e| {
                e.as_scalar().ok_or_else(|| {
                    Error::TypeMismatch("connection coefficients must not contain odd generators".into())
                })
            })
            .collect::<Result<_>>()?;
        Ok(LinearConnection { n, m, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `Γ_A{}^a{}_b`.
    pub fn get(&self, base: usize, a: usize, b: usize) -> &ScalarFn {
        &self.gamma[(base * self.m + a) * self.m + b]
    }

    pub fn set(&mut self, base: usize, a: usize, b: usize, value: ScalarFn) {
        let m = self.m;
        self.gamma[(base * m + a) * m + b] = value;
    }

    fn check_field(&self, u: &SupervectorField) -> Result<()> {
        if u.n() != self.n || u.m() != self.m {
            return Err(Error::ChartMismatch(format!(
                "connection over (n={}, m={}) applied to a field over (n={}, m={})",
                self.n,
                self.m,
                u.n(),
                u.m()
            )));
        }
        Ok(())
    }

    /// `Γ_A{}^a{}_b c^b` as a superfunction.
    fn gamma_c(&self, base: usize, a: usize) -> Superfunction {
        let mut out = Superfunction::zero();
        for b in 0..self.m {
            out += &Superfunction::generator(b).scale(self.get(base, a, b));
        }
        out
    }

    /// `u^A ∂_A ↦ u^A (∂_A + Γ_A{}^a{}_b c^b ∂_a)`.
    pub fn horizontal_lift(&self, x: &SupervectorField) -> Result<SupervectorField> {
        self.check_field(x)?;
        if x.fiber_components().iter().any(|c| !c.is_zero()) {
            return Err(Error::NotBasic);
        }
        Ok(self.lift_base_part(x))
    }

    fn lift_base_part(&self, x: &SupervectorField) -> SupervectorField {
        let fiber = (0..self.m)
            .map(|a| {
                let mut comp = Superfunction::zero();
                for (base, ua) in x.base_components().iter().enumerate() {
                    if !ua.is_zero() {
                        comp += &(ua * &self.gamma_c(base, a));
                    }
                }
                comp
            })
            .collect();
        SupervectorField::new(x.base_components().to_vec(), fiber)
    }

    /// `u = u^A(∂_A + Γ_A{}^a{}_b c^b ∂_a) + (u^a − u^A Γ_A{}^a{}_b c^b) ∂_a`,
    /// returned as `(horizontal, vertical)`.
    pub fn split_field(&self, u: &SupervectorField) -> Result<(SupervectorField, SupervectorField)> {
        self.check_field(u)?;
        let horizontal = self.lift_base_part(u);
        let fiber = u
            .fiber_components()
            .iter()
            .zip(horizontal.fiber_components())
            .map(|(ua, ha)| ua - ha)
            .collect();
        let vertical = SupervectorField::new(vec![Superfunction::zero(); self.n], fiber);
        Ok((horizontal, vertical))
    }

    /// The vertical coframe `θ^a = dc^a − Γ_A{}^a{}_b c^b dz^A`.
    pub fn vertical_coframe(&self, a: usize) -> Superform {
        let mut theta = Superform::dc(a);
        for base in 0..self.n {
            theta = &theta - &Superform::dz(base).left_mul(&self.gamma_c(base, a));
        }
        theta
    }

    /// `φ = (φ_A + Γ_A{}^a{}_b φ_a c^b) dz^A + φ_a θ^a`, returned as
    /// `(horizontal, vertical)`.
    pub fn split_form(&self, phi: &Superform) -> Result<(Superform, Superform)> {
        let (base, fiber) = phi.one_form_components(self.n, self.m)?;
        let mut horizontal = Superform::zero();
        for (index, phi_a) in base.iter().enumerate() {
            let mut coeff = phi_a.clone();
            for (a, phi_fa) in fiber.iter().enumerate() {
                if !phi_fa.is_zero() {
                    coeff += &(phi_fa * &self.gamma_c(index, a));
                }
            }
            horizontal += &Superform::dz(index).left_mul(&coeff);
        }
        let mut vertical = Superform::zero();
        for (a, phi_fa) in fiber.iter().enumerate() {
            if !phi_fa.is_zero() {
                vertical += &self.vertical_coframe(a).left_mul(phi_fa);
            }
        }
        Ok((horizontal, vertical))
    }
}

/// The base part `u^A ∂_A` of a field (the quotient map of the exact
/// sequence).
pub fn base_part(u: &SupervectorField) -> SupervectorField {
    SupervectorField::new(
        u.base_components().to_vec(),
        vec![Superfunction::zero(); u.m()],
    )
}
