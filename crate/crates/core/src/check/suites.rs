use std::ops::Neg;

use super::{CaseFn, Context, Generator, Suite};
use crate::error::Result;
use crate::forms::Superform;
use crate::geometry::{
    base_part, coefficient_transition_field, coefficient_transition_form, compose_transitions, FieldCoefficients,
    FormCorrection, OneFormCoefficients, Transition,
};
use crate::grassmann::{Parity, Superfunction};

type Outcome = Result<Option<String>>;

fn verdict(ok: bool, counterexample: impl FnOnce() -> String) -> Outcome {
    Ok(if ok { None } else { Some(counterexample()) })
}

fn signed<T>(x: T, negative: bool) -> T
where
    T: Neg<Output = T>,
{
    if negative {
        -x
    } else {
        x
    }
}

fn odd(p: Parity) -> bool {
    p.is_odd()
}

pub(super) fn identities(suite: Suite) -> Vec<(&'static str, CaseFn)> {
    match suite {
        Suite::Derivation => vec![
            ("leibniz", derivation_leibniz as CaseFn),
            ("linearity", derivation_linearity),
            ("components", derivation_components),
        ],
        Suite::Bracket => vec![
            ("antisymmetry", bracket_antisymmetry as CaseFn),
            ("jacobi", bracket_jacobi),
            ("first-order", bracket_first_order),
            ("leibniz", bracket_leibniz),
        ],
        Suite::Wedge => vec![
            ("associativity", wedge_associativity as CaseFn),
            ("graded-commutativity", wedge_commutativity),
            ("distributivity", wedge_distributivity),
        ],
        Suite::Differential => vec![
            ("dd=0", differential_nilpotent as CaseFn),
            ("leibniz", differential_leibniz),
            ("u⌋df=u(f)", differential_pairing),
        ],
        Suite::Interior => vec![
            ("extension", interior_extension as CaseFn),
            ("anticommutation", interior_anticommutation),
            ("function-linearity", interior_linearity),
            ("one-form-pairing", interior_one_form),
            ("functions", interior_functions),
        ],
        Suite::Lie => vec![
            ("cartan", lie_cartan as CaseFn),
            ("leibniz", lie_leibniz),
            ("L_u f=u(f)", lie_functions),
            ("L_u d=d L_u", lie_commutes_with_d),
            ("interior-commutator", lie_interior_commutator),
            ("bracket", lie_bracket),
        ],
        Suite::Transition => vec![
            ("ring-homomorphism", transition_ring as CaseFn),
            ("pairing", transition_pairing),
            ("interior-naturality", transition_interior),
            ("d-naturality", transition_d),
            ("field-action", transition_action),
            ("bracket", transition_bracket),
            ("one-form-law", transition_one_form_law),
        ],
        Suite::Cocycle => vec![
            ("functoriality", cocycle_functoriality as CaseFn),
            ("inverse", cocycle_inverse),
            ("identity", cocycle_identity),
            ("associativity", cocycle_associativity),
        ],
        Suite::Splitting => vec![
            ("field-recomposition", split_field as CaseFn),
            ("form-recomposition", split_form),
            ("coframe-annihilates-lift", split_coframe),
            ("section", split_section),
            ("duality", split_duality),
            ("lift-linearity", split_lift_linearity),
        ],
        Suite::Coefficients => vec![("field-law", coefficients_field as CaseFn), ("form-law", coefficients_form)],
    }
}

// derivation

fn derivation_leibniz(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (f, pf) = g.homogeneous_superfunction();
    let h = g.superfunction(None);
    let lhs = u.apply(&(&f * &h))?;
    let rhs = &(&u.apply(&f)? * &h) + &signed(&f * &u.apply(&h)?, odd(pu * pf));
    verdict(lhs == rhs, || {
        format!("u = {}, f = {}, g = {}", ctx.field(&u), ctx.sf(&f), ctx.sf(&h))
    })
}

fn derivation_linearity(g: &mut Generator, ctx: &Context) -> Outcome {
    let u = g.field(None);
    let (f, h, k) = (g.superfunction(None), g.superfunction(None), g.superfunction(None));
    let additive = u.apply(&(&f + &h))? == &u.apply(&f)? + &u.apply(&h)?;
    let module = u.left_mul(&k).apply(&f)? == &k * &u.apply(&f)?;
    verdict(additive && module, || {
        format!("u = {}, f = {}, g = {}, h = {}", ctx.field(&u), ctx.sf(&f), ctx.sf(&h), ctx.sf(&k))
    })
}

fn derivation_components(g: &mut Generator, ctx: &Context) -> Outcome {
    let u = g.field(None);
    for (i, ui) in u.base_components().iter().enumerate() {
        if u.apply(&Superfunction::coord(i))? != *ui {
            return Ok(Some(format!("u = {}, coordinate {}", ctx.field(&u), ctx.chart.base_name(i))));
        }
    }
    for (a, ua) in u.fiber_components().iter().enumerate() {
        if u.apply(&Superfunction::generator(a))? != *ua {
            return Ok(Some(format!("u = {}, generator {}", ctx.field(&u), ctx.chart.fiber_name(a))));
        }
    }
    Ok(None)
}

// bracket

fn bracket_antisymmetry(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let lhs = u.bracket(&v)?;
    let rhs = v.bracket(&u)?;
    let rhs = if odd(pu * pv) { rhs } else { -&rhs };
    verdict(lhs == rhs, || format!("u = {}, v = {}", ctx.field(&u), ctx.field(&v)))
}

fn bracket_jacobi(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let (w, pw) = g.homogeneous_field();
    let a = u.bracket(&v.bracket(&w)?)?;
    let b = v.bracket(&w.bracket(&u)?)?;
    let c = w.bracket(&u.bracket(&v)?)?;
    let sum = &(&signed(a, odd(pu * pw)) + &signed(b, odd(pv * pu))) + &signed(c, odd(pw * pv));
    verdict(sum.is_zero(), || {
        format!("u = {}, v = {}, w = {}", ctx.field(&u), ctx.field(&v), ctx.field(&w))
    })
}

fn bracket_first_order(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let f = g.superfunction(None);
    let lhs = u.bracket(&v)?.apply(&f)?;
    let rhs = &u.apply(&v.apply(&f)?)? - &signed(v.apply(&u.apply(&f)?)?, odd(pu * pv));
    verdict(lhs == rhs, || {
        format!("u = {}, v = {}, f = {}", ctx.field(&u), ctx.field(&v), ctx.sf(&f))
    })
}

fn bracket_leibniz(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let v = g.field(None);
    let (f, pf) = g.homogeneous_superfunction();
    let lhs = u.bracket(&v.left_mul(&f))?;
    let rhs = &v.left_mul(&u.apply(&f)?) + &signed(u.bracket(&v)?.left_mul(&f), odd(pu * pf));
    verdict(lhs == rhs, || {
        format!("u = {}, v = {}, f = {}", ctx.field(&u), ctx.field(&v), ctx.sf(&f))
    })
}

// wedge

fn wedge_associativity(g: &mut Generator, ctx: &Context) -> Outcome {
    let (a, b, c) = (g.form(None, None), g.form(None, None), g.form(None, None));
    verdict(a.wedge(&b).wedge(&c) == a.wedge(&b.wedge(&c)), || {
        format!("phi = {}, psi = {}, chi = {}", ctx.form(&a), ctx.form(&b), ctx.form(&c))
    })
}

fn wedge_commutativity(g: &mut Generator, ctx: &Context) -> Outcome {
    let (a, k, p) = g.bihomogeneous_form();
    let (b, l, q) = g.bihomogeneous_form();
    let negative = ((k * l) % 2 == 1) ^ odd(p * q);
    verdict(a.wedge(&b) == signed(b.wedge(&a), negative), || {
        format!("phi = {}, psi = {}", ctx.form(&a), ctx.form(&b))
    })
}

fn wedge_distributivity(g: &mut Generator, ctx: &Context) -> Outcome {
    let (a, b, c) = (g.form(None, None), g.form(None, None), g.form(None, None));
    let left = a.wedge(&(&b + &c)) == &a.wedge(&b) + &a.wedge(&c);
    let right = (&a + &b).wedge(&c) == &a.wedge(&c) + &b.wedge(&c);
    verdict(left && right, || {
        format!("phi = {}, psi = {}, chi = {}", ctx.form(&a), ctx.form(&b), ctx.form(&c))
    })
}

// differential

fn differential_nilpotent(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let phi = g.form(None, None);
    verdict(d(&d(&phi)).is_zero(), || format!("phi = {}", ctx.form(&phi)))
}

fn differential_leibniz(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let (a, k, _) = g.bihomogeneous_form();
    let b = g.form(None, None);
    let lhs = d(&a.wedge(&b));
    let rhs = &d(&a).wedge(&b) + &signed(a.wedge(&d(&b)), k % 2 == 1);
    verdict(lhs == rhs, || format!("phi = {}, psi = {}", ctx.form(&a), ctx.form(&b)))
}

fn differential_pairing(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let u = g.field(None);
    let f = g.superfunction(None);
    let lhs = d(&Superform::function(f.clone())).interior(&u)?;
    verdict(lhs == Superform::function(u.apply(&f)?), || {
        format!("u = {}, f = {}", ctx.field(&u), ctx.sf(&f))
    })
}

// interior

fn interior_extension(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (a, k, p) = g.bihomogeneous_form();
    let b = g.form(None, None);
    let lhs = a.wedge(&b).interior(&u)?;
    let negative = (k % 2 == 1) ^ odd(p * pu);
    let rhs = &a.interior(&u)?.wedge(&b) + &signed(a.wedge(&b.interior(&u)?), negative);
    verdict(lhs == rhs, || {
        format!("u = {}, phi = {}, psi = {}", ctx.field(&u), ctx.form(&a), ctx.form(&b))
    })
}

fn interior_anticommutation(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let phi = g.form(None, None);
    let uv = phi.interior(&v)?.interior(&u)?;
    let vu = phi.interior(&u)?.interior(&v)?;
    verdict((&uv + &signed(vu, odd(pu * pv))).is_zero(), || {
        format!("u = {}, v = {}, phi = {}", ctx.field(&u), ctx.field(&v), ctx.form(&phi))
    })
}

fn interior_linearity(g: &mut Generator, ctx: &Context) -> Outcome {
    let u = g.field(None);
    let f = g.superfunction(None);
    let phi = g.form(None, None);
    verdict(phi.interior(&u.left_mul(&f))? == phi.interior(&u)?.left_mul(&f), || {
        format!("u = {}, f = {}, phi = {}", ctx.field(&u), ctx.sf(&f), ctx.form(&phi))
    })
}

/// `u⌋φ = u^A φ_A + (−1)^{[φ_a]} u^a φ_a` on homogeneous 1-forms.
fn interior_one_form(g: &mut Generator, ctx: &Context) -> Outcome {
    let (n, m) = (g.n(), g.m());
    let u = g.field(None);
    let p = g.parity();
    let base: Vec<_> = (0..n).map(|_| g.superfunction(Some(p))).collect();
    let fiber: Vec<_> = (0..m).map(|_| g.superfunction(Some(p.flip()))).collect();
    let phi = Superform::one_form(&base, &fiber);
    let mut expected = Superfunction::zero();
    for (ua, pa) in u.base_components().iter().zip(&base) {
        expected += &(ua * pa);
    }
    for (ua, pa) in u.fiber_components().iter().zip(&fiber) {
        expected += &signed(ua * pa, odd(p.flip()));
    }
    verdict(phi.interior(&u)? == Superform::function(expected), || {
        format!("u = {}, phi = {}", ctx.field(&u), ctx.form(&phi))
    })
}

fn interior_functions(g: &mut Generator, ctx: &Context) -> Outcome {
    let u = g.field(None);
    let f = g.superfunction(None);
    verdict(Superform::function(f.clone()).interior(&u)?.is_zero(), || {
        format!("u = {}, f = {}", ctx.field(&u), ctx.sf(&f))
    })
}

// lie

fn lie_cartan(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let u = g.field(None);
    let phi = g.form(None, None);
    let rhs = &d(&phi).interior(&u)? + &d(&phi.interior(&u)?);
    verdict(phi.lie_derivative(&u)? == rhs, || {
        format!("u = {}, phi = {}", ctx.field(&u), ctx.form(&phi))
    })
}

fn lie_leibniz(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (a, _, p) = g.bihomogeneous_form();
    let b = g.form(None, None);
    let lhs = a.wedge(&b).lie_derivative(&u)?;
    let rhs = &a.lie_derivative(&u)?.wedge(&b) + &signed(a.wedge(&b.lie_derivative(&u)?), odd(pu * p));
    verdict(lhs == rhs, || {
        format!("u = {}, phi = {}, psi = {}", ctx.field(&u), ctx.form(&a), ctx.form(&b))
    })
}

fn lie_functions(g: &mut Generator, ctx: &Context) -> Outcome {
    let u = g.field(None);
    let f = g.superfunction(None);
    let lhs = Superform::function(f.clone()).lie_derivative(&u)?;
    verdict(lhs == Superform::function(u.apply(&f)?), || {
        format!("u = {}, f = {}", ctx.field(&u), ctx.sf(&f))
    })
}

fn lie_commutes_with_d(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let u = g.field(None);
    let phi = g.form(None, None);
    verdict(d(&phi).lie_derivative(&u)? == d(&phi.lie_derivative(&u)?), || {
        format!("u = {}, phi = {}", ctx.field(&u), ctx.form(&phi))
    })
}

fn lie_interior_commutator(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let phi = g.form(None, None);
    let lhs = &phi.interior(&v)?.lie_derivative(&u)? - &signed(phi.lie_derivative(&u)?.interior(&v)?, odd(pu * pv));
    verdict(lhs == phi.interior(&u.bracket(&v)?)?, || {
        format!("u = {}, v = {}, phi = {}", ctx.field(&u), ctx.field(&v), ctx.form(&phi))
    })
}

fn lie_bracket(g: &mut Generator, ctx: &Context) -> Outcome {
    let (u, pu) = g.homogeneous_field();
    let (v, pv) = g.homogeneous_field();
    let phi = g.form(None, None);
    let uv = phi.lie_derivative(&v)?.lie_derivative(&u)?;
    let vu = phi.lie_derivative(&u)?.lie_derivative(&v)?;
    let lhs = &uv - &signed(vu, odd(pu * pv));
    verdict(lhs == phi.lie_derivative(&u.bracket(&v)?)?, || {
        format!("u = {}, v = {}, phi = {}", ctx.field(&u), ctx.field(&v), ctx.form(&phi))
    })
}

// transition

fn transition_ring(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let (f, h) = (g.superfunction(None), g.superfunction(None));
    let t = |x: &Superfunction| rho.apply_to_superfunction(x);
    let ok = t(&(&f * &h)) == &t(&f) * &t(&h) && t(&(&f + &h)) == &t(&f) + &t(&h);
    verdict(ok, || {
        format!("rho = {}, f = {}, g = {}", ctx.rho(&rho), ctx.sf(&f), ctx.sf(&h))
    })
}

fn transition_pairing(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let u = g.field(None);
    let phi = g.one_form();
    let before = phi.interior(&u)?.transform(&rho)?;
    let after = phi.transform(&rho)?.interior(&u.transform(&rho)?)?;
    verdict(before == after, || {
        format!("rho = {}, u = {}, phi = {}", ctx.rho(&rho), ctx.field(&u), ctx.form(&phi))
    })
}

fn transition_interior(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let u = g.field(None);
    let phi = g.form(None, None);
    let before = phi.interior(&u)?.transform(&rho)?;
    let after = phi.transform(&rho)?.interior(&u.transform(&rho)?)?;
    verdict(before == after, || {
        format!("rho = {}, u = {}, phi = {}", ctx.rho(&rho), ctx.field(&u), ctx.form(&phi))
    })
}

fn transition_d(g: &mut Generator, ctx: &Context) -> Outcome {
    let d = ctx.ops.d;
    let rho = ctx.transition(g);
    let phi = g.form(None, None);
    verdict(d(&phi).transform(&rho)? == d(&phi.transform(&rho)?), || {
        format!("rho = {}, phi = {}", ctx.rho(&rho), ctx.form(&phi))
    })
}

fn transition_action(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let u = g.field(None);
    let f = g.superfunction(None);
    let before = rho.apply_to_superfunction(&u.apply(&f)?);
    let after = u.transform(&rho)?.apply(&rho.apply_to_superfunction(&f))?;
    verdict(before == after, || {
        format!("rho = {}, u = {}, f = {}", ctx.rho(&rho), ctx.field(&u), ctx.sf(&f))
    })
}

fn transition_bracket(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let (u, v) = (g.field(None), g.field(None));
    let before = u.bracket(&v)?.transform(&rho)?;
    let after = u.transform(&rho)?.bracket(&v.transform(&rho)?)?;
    verdict(before == after, || {
        format!("rho = {}, u = {}, v = {}", ctx.rho(&rho), ctx.field(&u), ctx.field(&v))
    })
}

/// `φ'_a = ρ^{-1}{}^b_a φ_b` and `φ'_A = φ_A − (ρ^{-1} ∂_A ρ)^b_j φ_b c^j`,
/// then rewritten in the new generators.
fn transition_one_form_law(g: &mut Generator, ctx: &Context) -> Outcome {
    let (n, m) = (g.n(), g.m());
    let rho = ctx.transition(g);
    let phi = g.one_form();
    let (base, fiber) = phi.one_form_components(n, m)?;
    let r = rho.inverse_matrix();
    let scalar = |s: &crate::scalars::ScalarFn| Superfunction::scalar(s.clone());
    let mut expected_fiber = Vec::with_capacity(m);
    for a in 0..m {
        let mut comp = Superfunction::zero();
        for (b, pb) in fiber.iter().enumerate() {
            comp += &(&scalar(r.get(b, a)) * pb);
        }
        expected_fiber.push(rho.apply_to_superfunction(&comp));
    }
    let mut expected_base = Vec::with_capacity(n);
    for (index, pa) in base.iter().enumerate() {
        let k = r.checked_mul(&rho.matrix().partial(index))?;
        let mut comp = pa.clone();
        for (b, pb) in fiber.iter().enumerate() {
            for j in 0..m {
                let kbj = k.get(b, j);
                if !kbj.is_zero() {
                    comp = &comp - &(&(pb * &Superfunction::generator(j)) * &scalar(kbj));
                }
            }
        }
        expected_base.push(rho.apply_to_superfunction(&comp));
    }
    let actual = phi.transform(&rho)?;
    verdict(actual == Superform::one_form(&expected_base, &expected_fiber), || {
        format!("rho = {}, phi = {}", ctx.rho(&rho), ctx.form(&phi))
    })
}

// cocycle

fn cocycle_functoriality(g: &mut Generator, ctx: &Context) -> Outcome {
    let (r21, r32) = (ctx.transition(g), ctx.transition(g));
    let r31 = compose_transitions(&r21, &r32)?;
    let f = g.superfunction(None);
    let u = g.field(None);
    let phi = g.form(None, None);
    let ok = r31.apply_to_superfunction(&f) == r32.apply_to_superfunction(&r21.apply_to_superfunction(&f))
        && u.transform(&r31)? == u.transform(&r21)?.transform(&r32)?
        && phi.transform(&r31)? == phi.transform(&r21)?.transform(&r32)?;
    verdict(ok, || {
        format!(
            "rho21 = {}, rho32 = {}, f = {}, u = {}, phi = {}",
            ctx.rho(&r21),
            ctx.rho(&r32),
            ctx.sf(&f),
            ctx.field(&u),
            ctx.form(&phi)
        )
    })
}

fn cocycle_inverse(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let back = rho.inverse();
    let f = g.superfunction(None);
    let u = g.field(None);
    let phi = g.form(None, None);
    let ok = back.apply_to_superfunction(&rho.apply_to_superfunction(&f)) == f
        && u.transform(&rho)?.transform(&back)? == u
        && phi.transform(&rho)?.transform(&back)? == phi
        && compose_transitions(&rho, &back)?.is_identity();
    verdict(ok, || {
        format!("rho = {}, f = {}, u = {}, phi = {}", ctx.rho(&rho), ctx.sf(&f), ctx.field(&u), ctx.form(&phi))
    })
}

fn cocycle_identity(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let id = Transition::identity(g.m());
    let u = g.field(None);
    let phi = g.form(None, None);
    let ok = compose_transitions(&rho, &id)? == rho
        && compose_transitions(&id, &rho)? == rho
        && u.transform(&id)? == u
        && phi.transform(&id)? == phi;
    verdict(ok, || {
        format!("rho = {}, u = {}, phi = {}", ctx.rho(&rho), ctx.field(&u), ctx.form(&phi))
    })
}

fn cocycle_associativity(g: &mut Generator, ctx: &Context) -> Outcome {
    let (a, b, c) = (ctx.transition(g), ctx.transition(g), ctx.transition(g));
    let left = compose_transitions(&compose_transitions(&a, &b)?, &c)?;
    let right = compose_transitions(&a, &compose_transitions(&b, &c)?)?;
    verdict(left == right, || {
        format!("rho1 = {}, rho2 = {}, rho3 = {}", ctx.rho(&a), ctx.rho(&b), ctx.rho(&c))
    })
}

// splitting

fn split_field(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let u = g.field(None);
    let (h, v) = gamma.split_field(&u)?;
    verdict(&h + &v == u, || format!("Gamma = {}, u = {}", ctx.gamma(&gamma), ctx.field(&u)))
}

fn split_form(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let phi = g.one_form();
    let (h, v) = gamma.split_form(&phi)?;
    let horizontal_is_base = h.terms().all(|(b, _)| b.dc_len() == 0);
    verdict(&h + &v == phi && horizontal_is_base, || {
        format!("Gamma = {}, phi = {}", ctx.gamma(&gamma), ctx.form(&phi))
    })
}

fn split_coframe(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let x = g.basic_field();
    let lift = gamma.horizontal_lift(&x)?;
    for a in 0..g.m() {
        if !gamma.vertical_coframe(a).interior(&lift)?.is_zero() {
            return Ok(Some(format!("Gamma = {}, X = {}, a = {}", ctx.gamma(&gamma), ctx.field(&x), a + 1)));
        }
    }
    Ok(None)
}

fn split_section(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let x = g.basic_field();
    let u = g.field(None);
    let (h, v) = gamma.split_field(&u)?;
    let ok = base_part(&gamma.horizontal_lift(&x)?) == x
        && base_part(&v).is_zero()
        && gamma.horizontal_lift(&base_part(&u))? == h;
    verdict(ok, || {
        format!("Gamma = {}, X = {}, u = {}", ctx.gamma(&gamma), ctx.field(&x), ctx.field(&u))
    })
}

fn split_duality(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let u = g.field(None);
    let phi = g.one_form();
    let (uh, uv) = gamma.split_field(&u)?;
    let (ph, pv) = gamma.split_form(&phi)?;
    let ok = pv.interior(&uh)?.is_zero() && ph.interior(&uv)?.is_zero();
    verdict(ok, || {
        format!("Gamma = {}, u = {}, phi = {}", ctx.gamma(&gamma), ctx.field(&u), ctx.form(&phi))
    })
}

fn split_lift_linearity(g: &mut Generator, ctx: &Context) -> Outcome {
    let gamma = ctx.connection(g);
    let (x, y) = (g.basic_field(), g.basic_field());
    let f = g.superfunction(None);
    let ok = gamma.horizontal_lift(&x.left_mul(&f))? == gamma.horizontal_lift(&x)?.left_mul(&f)
        && gamma.horizontal_lift(&(&x + &y))? == &gamma.horizontal_lift(&x)? + &gamma.horizontal_lift(&y)?;
    verdict(ok, || {
        format!("Gamma = {}, X = {}, Y = {}, f = {}", ctx.gamma(&gamma), ctx.field(&x), ctx.field(&y), ctx.sf(&f))
    })
}

// coefficients

fn coefficients_field(g: &mut Generator, ctx: &Context) -> Outcome {
    let rho = ctx.transition(g);
    let u = g.field(None);
    let all = FieldCoefficients::of(&u);
    for k in 0..=g.m() {
        let part = all.degree(k);
        let direct = FieldCoefficients::of(&part.to_field().transform(&rho)?);
        if coefficient_transition_field(&part, &rho)? != direct {
            return Ok(Some(format!("rho = {}, u = {}, k = {k}", ctx.rho(&rho), ctx.field(&u))));
        }
    }
    Ok(None)
}

fn coefficients_form(g: &mut Generator, ctx: &Context) -> Outcome {
    let (n, m) = (g.n(), g.m());
    let rho = ctx.transition(g);
    let phi = g.one_form();
    let all = OneFormCoefficients::of(&phi, n, m)?;
    for k in 0..=m {
        let part = all.degree(k);
        let direct = OneFormCoefficients::of(&part.to_form().transform(&rho)?, n, m)?;
        if coefficient_transition_form(&part, &rho, FormCorrection::Consistent)? != direct {
            return Ok(Some(format!("rho = {}, phi = {}, k = {k}", ctx.rho(&rho), ctx.form(&phi))));
        }
    }
    Ok(None)
}
