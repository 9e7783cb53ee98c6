//! Transition laws written on the coefficient tensors of fields and
//! 1-forms, as opposed to the generator substitution used by
//! `SupervectorField::transform` and `Superform::transform`.
//!
//! A superfunction `f = Σ_k (1/k!) f_{a1..ak} c^{a1}..c^{ak}` is stored here
//! by its antisymmetric tensors `f_{a1..ak}`, so `f_S` for an increasing
//! index list `S` is the coefficient of the monomial `c^S`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fields::SupervectorField;
use crate::forms::Superform;
use crate::grassmann::{GrassmannMonomial, Superfunction};
use crate::scalars::{ScalarFn, ScalarMatrix};

use super::Transition;

/// Dense `m^k` array of scalar functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexTensor {
    m: usize,
    k: usize,
    entries: Vec<ScalarFn>,
}

fn for_each_index(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0; k];
    if k > 0 && m == 0 {
        return;
    }
    loop {
        f(&idx);
        let mut slot = k;
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < m {
                break;
            }
            idx[slot] = 0;
        }
    }
}

fn inversions(xs: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    for_each_index(k, k, |p| {
        let mut seen = vec![false; k];
        if p.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
            out.push((p.to_vec(), inversions(p) % 2 == 1));
        }
    });
    out
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

impl IndexTensor {
    pub fn zeros(m: usize, k: usize) -> Self {
        IndexTensor {
            m,
            k,
            entries: vec![ScalarFn::zero(); m.pow(k as u32)],
        }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.k);
        idx.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn get(&self, idx: &[usize]) -> &ScalarFn {
        &self.entries[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: ScalarFn) {
        let o = self.offset(idx);
        self.entries[o] = value;
    }

    fn add_at(&mut self, idx: &[usize], value: &ScalarFn) {
        let o = self.offset(idx);
        self.entries[o] = &self.entries[o] + value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ScalarFn::is_zero)
    }

    /// The degree-`k` tensor of `f` over `m` generators.
    pub fn from_superfunction(f: &Superfunction, m: usize, k: usize) -> Self {
        let mut t = IndexTensor::zeros(m, k);
        for_each_index(m, k, |idx| {
            let mut sorted = idx.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return;
            }
            let mono = GrassmannMonomial::from_indices(&sorted).expect("strictly increasing");
            let c = f.coefficient(mono);
            if c.is_zero() {
                return;
            }
            let v = if inversions(idx) % 2 == 1 { -c } else { c };
            t.set(idx, v);
        });
        t
    }

    /// `Σ (1/k!) t_{a1..ak} c^{a1..ak}`, read off the increasing entries.
    pub fn to_superfunction(&self) -> Superfunction {
        let mut out = Superfunction::zero();
        for_each_index(self.m, self.k, |idx| {
            if idx.windows(2).all(|w| w[0] < w[1]) {
                let c = self.get(idx);
                if !c.is_zero() {
                    let mono = GrassmannMonomial::from_indices(idx).expect("strictly increasing");
                    out += &Superfunction::monomial(c.clone(), mono);
                }
            }
        });
        out
    }

    /// `Alt(t)_{a1..ak} = (1/k!) Σ_σ sgn σ t_{a_σ(1)..a_σ(k)}`.
    pub fn antisymmetrize(&self) -> Self {
        let perms = permutations(self.k);
        let norm = BigRational::new(BigInt::from(1), factorial(self.k));
        let mut out = IndexTensor::zeros(self.m, self.k);
        let mut permuted = vec![0; self.k];
        for_each_index(self.m, self.k, |idx| {
            let mut acc = ScalarFn::zero();
            for (p, negative) in &perms {
                for (slot, &from) in p.iter().enumerate() {
                    permuted[slot] = idx[from];
                }
                let v = self.get(&permuted);
                if !v.is_zero() {
                    acc = if *negative { &acc - v } else { &acc + v };
                }
            }
            out.set(idx, acc.scale(&norm));
        });
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetrize() == *self
    }

    /// `t'_{..j..} = Σ_b M[b][j] t_{..b..}` on one slot.
    pub fn contract_slot(&self, slot: usize, matrix: &ScalarMatrix) -> Self {
        let mut out = IndexTensor::zeros(self.m, self.k);
        let mut source = vec![0; self.k];
        for_each_index(self.m, self.k, |idx| {
            source.copy_from_slice(idx);
            let mut acc = ScalarFn::zero();
            for b in 0..self.m {
                source[slot] = b;
                let (t, r) = (self.get(&source), matrix.get(b, idx[slot]));
                if !t.is_zero() && !r.is_zero() {
                    acc = &acc + &(r * t);
                }
            }
            out.set(idx, acc);
        });
        out
    }

    /// Contracts every slot with `M`.
    pub fn contract_all(&self, matrix: &ScalarMatrix) -> Self {
        (0..self.k).fold(self.clone(), |t, slot| t.contract_slot(slot, matrix))
    }

    fn scale_integer(&self, k: usize) -> Self {
        let s = ScalarFn::integer(k as i64);
        IndexTensor {
            m: self.m,
            k: self.k,
            entries: self.entries.iter().map(|e| &s * e).collect(),
        }
    }

    fn plus(&self, other: &IndexTensor) -> Self {
        IndexTensor {
            m: self.m,
            k: self.k,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Rank `k+1` tensor with entries `column(b1..bk, b(k+1))`.
fn append_slot(t: &IndexTensor, column: impl Fn(&[usize], usize) -> ScalarFn) -> IndexTensor {
    let k = t.k + 1;
    let mut out = IndexTensor::zeros(t.m, k);
    for_each_index(t.m, k, |idx| {
        let v = column(&idx[..k - 1], idx[k - 1]);
        if !v.is_zero() {
            out.add_at(idx, &v);
        }
    });
    out
}

/// Degree tensors of every component of a field, indexed `[component][k]`
/// for `k = 0..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCoefficients {
    pub base: Vec<Vec<IndexTensor>>,
    pub fiber: Vec<Vec<IndexTensor>>,
}

fn degree_tensors(f: &Superfunction, m: usize) -> Vec<IndexTensor> {
    (0..=m).map(|k| IndexTensor::from_superfunction(f, m, k)).collect()
}

fn sum_tensors(ts: &[IndexTensor]) -> Superfunction {
    let mut out = Superfunction::zero();
    for t in ts {
        out += &t.to_superfunction();
    }
    out
}

impl FieldCoefficients {
    pub fn of(u: &SupervectorField) -> Self {
        let m = u.m();
        FieldCoefficients {
            base: u.base_components().iter().map(|f| degree_tensors(f, m)).collect(),
            fiber: u.fiber_components().iter().map(|f| degree_tensors(f, m)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn m(&self) -> usize {
        self.fiber.len()
    }

    pub fn to_field(&self) -> SupervectorField {
        SupervectorField::new(
            self.base.iter().map(|ts| sum_tensors(ts)).collect(),
            self.fiber.iter().map(|ts| sum_tensors(ts)).collect(),
        )
    }

    /// Keeps only the degree-`k` tensors.
    pub fn degree(&self, k: usize) -> FieldCoefficients {
        let keep = |ts: &Vec<IndexTensor>| {
            ts.iter()
                .map(|t| if t.k == k { t.clone() } else { IndexTensor::zeros(t.m, t.k) })
                .collect()
        };
        FieldCoefficients {
            base: self.base.iter().map(keep).collect(),
            fiber: self.fiber.iter().map(keep).collect(),
        }
    }
}

/// Degree tensors of a 1-form `φ_A dz^A + φ_a dc^a`: `base[A][k]` holds
/// `z_{a1..ak A}` and `fiber[j][k]` holds `v_{b1..bk j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormCoefficients {
    pub base: Vec<Vec<IndexTensor>>,
    pub fiber: Vec<Vec<IndexTensor>>,
}

impl OneFormCoefficients {
    pub fn of(phi: &Superform, n: usize, m: usize) -> Result<Self> {
        let (base, fiber) = phi.one_form_components(n, m)?;
        Ok(OneFormCoefficients {
            base: base.iter().map(|f| degree_tensors(f, m)).collect(),
            fiber: fiber.iter().map(|f| degree_tensors(f, m)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn m(&self) -> usize {
        self.fiber.len()
    }

    pub fn to_form(&self) -> Superform {
        let base: Vec<_> = self.base.iter().map(|ts| sum_tensors(ts)).collect();
        let fiber: Vec<_> = self.fiber.iter().map(|ts| sum_tensors(ts)).collect();
        Superform::one_form(&base, &fiber)
    }

    pub fn degree(&self, k: usize) -> OneFormCoefficients {
        let keep = |ts: &Vec<IndexTensor>| {
            ts.iter()
                .map(|t| if t.k == k { t.clone() } else { IndexTensor::zeros(t.m, t.k) })
                .collect()
        };
        OneFormCoefficients {
            base: self.base.iter().map(keep).collect(),
            fiber: self.fiber.iter().map(keep).collect(),
        }
    }
}

fn check_shape(what: &str, n_m: (usize, usize), tensors: &[&Vec<Vec<IndexTensor>>], rho: &Transition) -> Result<()> {
    let (_, m) = n_m;
    if rho.size() != m {
        return Err(Error::ShapeMismatch(format!(
            "{0}x{0} transition for {1} over {2} generators",
            rho.size(),
            what,
            m
        )));
    }
    for group in tensors {
        for ts in group.iter() {
            if ts.len() != m + 1 || ts.iter().enumerate().any(|(k, t)| t.k != k || t.m != m) {
                return Err(Error::ShapeMismatch(format!(
                    "{what} components must carry tensors of rank 0..={m} over {m} generators"
                )));
            }
        }
    }
    Ok(())
}

/// Field transition on coefficients:
///
/// `z'^A_{i1..ik} = R^{a1}_{i1}..R^{ak}_{ik} z^A_{a1..ak}`,
/// `v'^i_{j1..jk} = R^{b1}_{j1}..R^{bk}_{jk} Alt[ρ^i_j v^j_{b1..bk} + k z^A_{b1..b(k-1)} ∂_A ρ^i_{bk}]`,
///
/// with `R = ρ^{-1}`.
pub fn coefficient_transition_field(u: &FieldCoefficients, rho: &Transition) -> Result<FieldCoefficients> {
    let (n, m) = (u.n(), u.m());
    check_shape("field", (n, m), &[&u.base, &u.fiber], rho)?;
    let r = rho.inverse_matrix();
    let d_rho: Vec<_> = (0..n).map(|index| rho.matrix().partial(index)).collect();

    let base = u
        .base
        .iter()
        .map(|ts| ts.iter().map(|t| t.contract_all(r)).collect())
        .collect();
    let fiber = (0..m)
        .map(|i| {
            (0..=m)
                .map(|k| {
                    let mut x = IndexTensor::zeros(m, k);
                    for j in 0..m {
                        let rho_ij = rho.matrix().get(i, j);
                        if !rho_ij.is_zero() {
                            let t = &u.fiber[j][k];
                            x = x.plus(&IndexTensor {
                                m,
                                k,
                                entries: t.entries.iter().map(|e| rho_ij * e).collect(),
                            });
                        }
                    }
                    if k > 0 {
                        for (index, z) in u.base.iter().enumerate() {
                            let corr = append_slot(&z[k - 1], |head, bk| {
                                z[k - 1].get(head) * d_rho[index].get(i, bk)
                            });
                            x = x.plus(&corr.scale_integer(k));
                        }
                    }
                    x.antisymmetrize().contract_all(r)
                })
                .collect()
        })
        .collect();
    Ok(FieldCoefficients { base, fiber })
}

/// How the correction term of the 1-form coefficient law is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormCorrection {
    /// `k Alt[v_{b1..b(k-1) j} (∂_A(ρ^{-1}) ρ)^j_{bk}]`, the term that
    /// keeps pairings with fields invariant.
    Consistent,
    /// `k Alt[v_{b1..b(k-1) j} ∂_A ρ^j_{bk}]`, the term read with the
    /// same shape as the field law.
    Printed,
}

impl FormCorrection {
    pub fn describe(self) -> &'static str {
        match self {
            FormCorrection::Consistent => {
                "z' = R..R [z + k Alt(v_{b1..b(k-1) j} (d_A(rho^-1) rho)^j_bk)], v' = R..R R v"
            }
            FormCorrection::Printed => "z' = R..R [z + k Alt(v_{b1..b(k-1) j} d_A(rho^j_bk))], v' = R..R R v",
        }
    }
}

/// 1-form transition on coefficients, `R = ρ^{-1}`:
///
/// `v'_{j1..jk j} = R^{a1}_{j1}..R^{ak}_{jk} R^a_j v_{a1..ak a}`,
/// `z'_{i1..ik A} = R^{b1}_{i1}..R^{bk}_{ik} [z_{b1..bk A} + correction]`.
pub fn coefficient_transition_form(
    phi: &OneFormCoefficients,
    rho: &Transition,
    reading: FormCorrection,
) -> Result<OneFormCoefficients> {
    let (n, m) = (phi.n(), phi.m());
    check_shape("1-form", (n, m), &[&phi.base, &phi.fiber], rho)?;
    let r = rho.inverse_matrix();
    let kernel: Vec<ScalarMatrix> = (0..n)
        .map(|index| match reading {
            FormCorrection::Consistent => r.partial(index).checked_mul(rho.matrix()),
            FormCorrection::Printed => Ok(rho.matrix().partial(index)),
        })
        .collect::<Result<_>>()?;

    let fiber = (0..m)
        .map(|j| {
            (0..=m)
                .map(|k| {
                    let mut x = IndexTensor::zeros(m, k);
                    for a in 0..m {
                        let r_aj = r.get(a, j);
                        if !r_aj.is_zero() {
                            let t = &phi.fiber[a][k];
                            x = x.plus(&IndexTensor {
                                m,
                                k,
                                entries: t.entries.iter().map(|e| r_aj * e).collect(),
                            });
                        }
                    }
                    x.contract_all(r)
                })
                .collect()
        })
        .collect();
    let base = (0..n)
        .map(|index| {
            (0..=m)
                .map(|k| {
                    let mut x = phi.base[index][k].clone();
                    if k > 0 {
                        let corr = append_slot(&phi.base[index][k - 1], |head, bk| {
                            let mut acc = ScalarFn::zero();
                            for j in 0..m {
                                let (v, w) = (phi.fiber[j][k - 1].get(head), kernel[index].get(j, bk));
                                if !v.is_zero() && !w.is_zero() {
                                    acc = &acc + &(v * w);
                                }
                            }
                            acc
                        });
                        x = x.plus(&corr.scale_integer(k).antisymmetrize());
                    }
                    x.contract_all(r)
                })
                .collect()
        })
        .collect();
    Ok(OneFormCoefficients { base, fiber })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: usize) -> Superfunction {
        Superfunction::generator(i)
    }

    fn z(i: usize) -> Superfunction {
        Superfunction::coord(i)
    }

    #[test]
    fn tensors_round_trip_and_are_antisymmetric() {
        let f = &(&(&c(0) * &c(1)).scale(&ScalarFn::coord(0)) + &c(1)) + &Superfunction::integer(3);
        for k in 0..=2 {
            let t = IndexTensor::from_superfunction(&f, 2, k);
            assert!(t.is_antisymmetric());
        }
        let t2 = IndexTensor::from_superfunction(&f, 2, 2);
        assert_eq!(t2.get(&[1, 0]), &-ScalarFn::coord(0));
        assert_eq!(sum_tensors(&degree_tensors(&f, 2)), f);
    }

    #[test]
    fn antisymmetrize_pair() {
        let mut t = IndexTensor::zeros(2, 2);
        t.set(&[0, 1], ScalarFn::integer(2));
        let a = t.antisymmetrize();
        assert_eq!(a.get(&[0, 1]), &ScalarFn::one());
        assert_eq!(a.get(&[1, 0]), &ScalarFn::integer(-1));
        assert!(a.get(&[0, 0]).is_zero());
    }

    #[test]
    fn degree_zero_field_law() {
        let rho = Transition::from_rows(vec![
            vec![ScalarFn::coord(0), ScalarFn::one()],
            vec![ScalarFn::zero(), ScalarFn::integer(2)],
        ])
        .unwrap();
        let u = SupervectorField::new(vec![z(1)], vec![Superfunction::integer(1), z(0)]);
        let t = coefficient_transition_field(&FieldCoefficients::of(&u), &rho).unwrap();
        assert_eq!(t.base[0][0].get(&[]), &ScalarFn::coord(1));
        // v'^1 = z1·1 + 1·z1, v'^2 = 2 z1.
        assert_eq!(t.fiber[0][0].get(&[]), &ScalarFn::coord(0).scale(&BigRational::from_integer(2.into())));
        assert_eq!(t.fiber[1][0].get(&[]), &ScalarFn::coord(0).scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn identity_keeps_coefficients() {
        let u = SupervectorField::new(vec![&c(0) * &c(1)], vec![z(0), c(0)]);
        let coeffs = FieldCoefficients::of(&u);
        let t = coefficient_transition_field(&coeffs, &Transition::identity(2)).unwrap();
        assert_eq!(t, coeffs);
        let phi = Superform::one_form(&[c(1)], &[z(0), &c(0) * &c(1)]);
        let fc = OneFormCoefficients::of(&phi, 1, 2).unwrap();
        for reading in [FormCorrection::Consistent, FormCorrection::Printed] {
            assert_eq!(coefficient_transition_form(&fc, &Transition::identity(2), reading).unwrap(), fc);
        }
    }

    #[test]
    fn scaling_field_matches_substitution() {
        let rho = Transition::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap();
        let u = SupervectorField::base_basis(1, 1, 0);
        let direct = FieldCoefficients::of(&u.transform(&rho).unwrap());
        let via = coefficient_transition_field(&FieldCoefficients::of(&u), &rho).unwrap();
        assert_eq!(via, direct);
        // ∂_z1 → ∂_z1 + (1/z1) c'1 ∂_c'1
        assert_eq!(via.fiber[0][1].get(&[0]), &ScalarFn::coord(0).recip().unwrap());
    }

    #[test]
    fn dc_under_scaling() {
        let rho = Transition::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap();
        let phi = Superform::dc(0);
        let fc = OneFormCoefficients::of(&phi, 1, 1).unwrap();
        let direct = OneFormCoefficients::of(&phi.transform(&rho).unwrap(), 1, 1).unwrap();
        let consistent = coefficient_transition_form(&fc, &rho, FormCorrection::Consistent).unwrap();
        assert_eq!(consistent, direct);
        assert_eq!(consistent.fiber[0][0].get(&[]), &ScalarFn::coord(0).recip().unwrap());
        let inv_sq = ScalarFn::coord(0).pow(-2).unwrap();
        assert_eq!(consistent.base[0][1].get(&[0]), &-inv_sq);
        let printed = coefficient_transition_form(&fc, &rho, FormCorrection::Printed).unwrap();
        assert_eq!(printed.base[0][1].get(&[0]), &ScalarFn::coord(0).recip().unwrap());
    }

    #[test]
    fn constant_rho_has_no_correction() {
        let rho = Transition::from_rows(vec![
            vec![ScalarFn::one(), ScalarFn::integer(2)],
            vec![ScalarFn::zero(), ScalarFn::one()],
        ])
        .unwrap();
        let phi = Superform::one_form(&[c(0)], &[z(0), c(1)]);
        let fc = OneFormCoefficients::of(&phi, 1, 2).unwrap();
        let a = coefficient_transition_form(&fc, &rho, FormCorrection::Consistent).unwrap();
        let b = coefficient_transition_form(&fc, &rho, FormCorrection::Printed).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_form(), phi.transform(&rho).unwrap());
    }

    #[test]
    fn shape_is_checked() {
        let u = SupervectorField::base_basis(1, 1, 0);
        let err = coefficient_transition_field(&FieldCoefficients::of(&u), &Transition::identity(2));
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }
}
