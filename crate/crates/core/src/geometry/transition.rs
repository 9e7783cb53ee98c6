use crate::error::{Error, Result};
use crate::forms::Superform;
use crate::grassmann::Superfunction;
use crate::scalars::{ScalarFn, ScalarMatrix};

/// A frame change `c'^a = ρ^a_b(z) c^b` of the odd generators over a fixed
/// base chart, with its inverse cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    rho: ScalarMatrix,
    inverse: ScalarMatrix,
}

impl Transition {
    /// Fails with `SingularMatrix` if `det ρ` is the zero function.
    pub fn new(rho: ScalarMatrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "transition matrix must be square, got {}x{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let inverse = rho.inverse()?;
        Ok(Transition { rho, inverse })
    }

    pub fn identity(m: usize) -> Self {
        Transition {
            rho: ScalarMatrix::identity(m),
            inverse: ScalarMatrix::identity(m),
        }
    }

    pub fn size(&self) -> usize {
        self.rho.rows()
    }

    /// `ρ^a_b`, row `a`, column `b`.
    pub fn matrix(&self) -> &ScalarMatrix {
        &self.rho
    }

    /// `ρ^{-1}{}^b_a`, row `b`, column `a`.
    pub fn inverse_matrix(&self) -> &ScalarMatrix {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.rho.is_identity()
    }

    pub fn inverse(&self) -> Transition {
        Transition {
            rho: self.inverse.clone(),
            inverse: self.rho.clone(),
        }
    }

    /// One past the largest base coordinate any entry of `ρ` or `ρ^{-1}`
    /// depends on.
    pub fn coordinate_width(&self) -> usize {
        let mut w = 0;
        for i in 0..self.size() {
            for j in 0..self.size() {
                w = w.max(self.rho.get(i, j).width()).max(self.inverse.get(i, j).width());
            }
        }
        w
    }

    /// `c^b = ρ^{-1}{}^b_a c'^a` for each old generator `b`.
    pub fn generator_images(&self) -> Vec<Superfunction> {
        (0..self.size())
            .map(|b| {
                let mut image = Superfunction::zero();
                for a in 0..self.size() {
                    image += &Superfunction::generator(a).scale(self.inverse.get(b, a));
                }
                image
            })
            .collect()
    }

    /// `dc^b = ∂_A(ρ^{-1}{}^b_a) c'^a dz^A + ρ^{-1}{}^b_a dc'^a`, for base
    /// indices `A < n`.
    pub fn differential_images(&self, n: usize) -> Vec<Superform> {
        let derivs: Vec<_> = (0..n).map(|index| self.inverse.partial(index)).collect();
        (0..self.size())
            .map(|b| {
                let mut image = Superform::zero();
                for a in 0..self.size() {
                    let r = self.inverse.get(b, a);
                    if !r.is_zero() {
                        image += &Superform::dc(a).left_mul(&Superfunction::scalar(r.clone()));
                    }
                    for (index, d) in derivs.iter().enumerate() {
                        let dr = d.get(b, a);
                        if !dr.is_zero() {
                            image += &Superform::dz(index).left_mul(&Superfunction::generator(a).scale(dr));
                        }
                    }
                }
                image
            })
            .collect()
    }

    /// The superfunction rewritten in the primed generators.
    pub fn apply_to_superfunction(&self, f: &Superfunction) -> Superfunction {
        if f.is_scalar() || self.is_identity() {
            return f.clone();
        }
        f.substitute(&self.generator_images())
    }

    /// Checked version of [`Transition::apply_to_superfunction`].
    pub fn transform_superfunction(&self, f: &Superfunction) -> Result<Superfunction> {
        if f.generator_width() > self.size() {
            return Err(Error::ChartMismatch(format!(
                "{}x{} transition for a superfunction using {} generators",
                self.size(),
                self.size(),
                f.generator_width()
            )));
        }
        Ok(self.apply_to_superfunction(f))
    }

    /// The transition `ρ_{31} = ρ_{32} · ρ_{21}` for going first by `self`
    /// (`ρ_{21}`), then by `next` (`ρ_{32}`).
    pub fn then(&self, next: &Transition) -> Result<Transition> {
        if self.size() != next.size() {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {0}x{0} and {1}x{1} transitions",
                self.size(),
                next.size()
            )));
        }
        Ok(Transition {
            rho: next.rho.checked_mul(&self.rho)?,
            inverse: self.inverse.checked_mul(&next.inverse)?,
        })
    }

    /// Builds a transition from rows of scalar entries.
    pub fn from_rows(rows: Vec<Vec<ScalarFn>>) -> Result<Self> {
        Transition::new(ScalarMatrix::from_rows(rows)?)
    }
}

/// Composite of `rho_21` followed by `rho_32`.
pub fn compose_transitions(rho_21: &Transition, rho_32: &Transition) -> Result<Transition> {
    rho_21.then(rho_32)
}

/// `f` with `c^b = ρ^{-1}{}^b_a c'^a` substituted.
pub fn transform_superfunction(f: &Superfunction, rho: &Transition) -> Result<Superfunction> {
    rho.transform_superfunction(f)
}
