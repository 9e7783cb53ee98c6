//! Canonical text for values; the output parses back to the same value.

use num_rational::BigRational;
use num_traits::One;

use super::eval::{Object, Value};
use crate::fields::SupervectorField;
use crate::forms::{FormBasis, Superform};
use crate::grassmann::{Chart, GrassmannMonomial, Superfunction};
use crate::scalars::{Monomial, Poly, ScalarFn};

/// How a coefficient is written in front of another factor.
enum Factor {
    One,
    MinusOne,
    Plain(String),
}

impl Factor {
    fn times(&self, tail: &str) -> String {
        match self {
            Factor::One => tail.to_string(),
            Factor::MinusOne => format!("-{tail}"),
            Factor::Plain(x) => format!("{x}*{tail}"),
        }
    }
}

fn join_terms(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn monomial(m: &Monomial, chart: &Chart) -> String {
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = chart.base_name(i);
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    factors.join("*")
}

fn poly_term(c: &BigRational, m: &Monomial, chart: &Chart) -> String {
    if m.is_one() {
        return rational(c);
    }
    let mono = monomial(m, chart);
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{}*{mono}", rational(c))
    }
}

fn poly(p: &Poly, chart: &Chart) -> String {
    join_terms(p.terms_descending().map(|(m, c)| poly_term(c, m, chart)))
}

fn factor_count(p: &Poly) -> usize {
    p.leading_term()
        .map_or(0, |(m, _)| m.exponents().iter().filter(|&&e| e > 0).count())
}

/// Scalar function as a standalone summand.
pub fn print_scalar(s: &ScalarFn, chart: &Chart) -> String {
    let num = poly(s.numerator(), chart);
    if s.is_polynomial() {
        return num;
    }
    let den = s.denominator();
    let num = if s.numerator().num_terms() > 1 { format!("({num})") } else { num };
    let den_text = poly(den, chart);
    if den.num_terms() > 1 || factor_count(den) > 1 {
        format!("{num}/({den_text})")
    } else {
        format!("{num}/{den_text}")
    }
}

fn scalar_factor(s: &ScalarFn, chart: &Chart) -> Factor {
    if s.is_one() {
        return Factor::One;
    }
    if (-s).is_one() {
        return Factor::MinusOne;
    }
    let num = s.numerator();
    if s.is_polynomial() && num.num_terms() == 1 {
        let (m, c) = num.leading_term().expect("nonzero");
        return Factor::Plain(poly_term(c, m, chart));
    }
    Factor::Plain(format!("({})", print_scalar(s, chart)))
}

fn prime_marks(frame: u32) -> String {
    "'".repeat(frame as usize)
}

fn generators(mono: GrassmannMonomial, chart: &Chart, frame: u32) -> String {
    let p = prime_marks(frame);
    mono.indices()
        .map(|a| format!("{}{p}", chart.fiber_name(a)))
        .collect::<Vec<_>>()
        .join("*")
}

fn superfunction_term(s: &ScalarFn, mono: GrassmannMonomial, chart: &Chart, frame: u32) -> String {
    if mono.is_empty() {
        print_scalar(s, chart)
    } else {
        scalar_factor(s, chart).times(&generators(mono, chart, frame))
    }
}

fn superfunction_terms(f: &Superfunction, chart: &Chart, frame: u32) -> Vec<String> {
    f.terms().map(|(mono, s)| superfunction_term(s, mono, chart, frame)).collect()
}

pub fn print_superfunction(f: &Superfunction, chart: &Chart, frame: u32) -> String {
    join_terms(superfunction_terms(f, chart, frame))
}

fn superfunction_factor(f: &Superfunction, chart: &Chart, frame: u32) -> Factor {
    if f.num_terms() == 1 {
        let (mono, s) = f.terms().next().expect("one term");
        if mono.is_empty() {
            return scalar_factor(s, chart);
        }
        let g = generators(mono, chart, frame);
        return Factor::Plain(scalar_factor(s, chart).times(&g));
    }
    Factor::Plain(format!("({})", print_superfunction(f, chart, frame)))
}

fn basis(b: &FormBasis, chart: &Chart, frame: u32) -> String {
    let p = prime_marks(frame);
    b.dz()
        .indices()
        .map(|i| format!("d{}", chart.base_name(i)))
        .chain(b.dc().map(|a| format!("d{}{p}", chart.fiber_name(a))))
        .collect::<Vec<_>>()
        .join("*")
}

pub fn print_form(phi: &Superform, chart: &Chart, frame: u32) -> String {
    let mut terms = Vec::new();
    for (b, f) in phi.terms() {
        if b.degree() == 0 {
            terms.extend(superfunction_terms(f, chart, frame));
        } else {
            terms.push(superfunction_factor(f, chart, frame).times(&basis(b, chart, frame)));
        }
    }
    join_terms(terms)
}

pub fn print_field(u: &SupervectorField, chart: &Chart, frame: u32) -> String {
    let p = prime_marks(frame);
    let base = u
        .base_components()
        .iter()
        .enumerate()
        .map(|(i, f)| (f, format!("d/d{}{p}", chart.base_name(i))));
    let fiber = u
        .fiber_components()
        .iter()
        .enumerate()
        .map(|(a, f)| (f, format!("d/d{}{p}", chart.fiber_name(a))));
    join_terms(
        base.chain(fiber)
            .filter(|(f, _)| !f.is_zero())
            .map(|(f, d)| superfunction_factor(f, chart, frame).times(&d)),
    )
}

pub fn print_value(v: &Value, chart: &Chart) -> String {
    let frame = v.frame.unwrap_or(0);
    match &v.object {
        Object::Function(f) => print_superfunction(f, chart, frame),
        Object::Field(u) => print_field(u, chart, frame),
        Object::Form(phi) => print_form(phi, chart, frame),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{eval_str, Environment};
    use crate::geometry::Transition;

    fn env() -> Environment {
        Environment::new(Chart::new(2, 2).unwrap())
    }

    fn canon(s: &str) -> String {
        let env = env();
        print_value(&eval_str(s, &env).unwrap(), &env.chart)
    }

    #[test]
    fn polynomial_order() {
        assert_eq!(canon("1 + z2*z1*2 + z1^2"), "z1^2 + 2*z1*z2 + 1");
        assert_eq!(canon("1 - z1"), "-z1 + 1");
        assert_eq!(canon("3/2 + z1/2"), "1/2*z1 + 3/2");
    }

    #[test]
    fn superfunctions() {
        assert_eq!(canon("2*c1*c2 + 1"), "1 + 2*c1*c2");
        assert_eq!(canon("c2*c1"), "-c1*c2");
        assert_eq!(canon("z1*c1*2 - 3/2*c2"), "2*z1*c1 - 3/2*c2");
        assert_eq!(canon("c1/(z1 + 1)"), "(1/(z1 + 1))*c1");
        assert_eq!(canon("(z1 + z2)/(z1*z2)"), "(z1 + z2)/(z1*z2)");
        assert_eq!(canon("z1 - z1"), "0");
    }

    #[test]
    fn forms_and_fields() {
        assert_eq!(canon("dc2*c1*dz1"), "c1*dz1*dc2");
        assert_eq!(canon("dz1 - dz1"), "0");
        assert_eq!(canon("dc1*dc1*(1 + c1)"), "(1 + c1)*dc1*dc1");
        assert_eq!(canon("dz2*dz1 + 1"), "1 - dz1*dz2");
        assert_eq!(canon("c1*d/dc2 + (z1 + 1)*d/dz1"), "(z1 + 1)*d/dz1 + c1*d/dc2");
    }

    #[test]
    fn primed_frames() {
        let rho = Transition::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap();
        let env = Environment::new(Chart::new(1, 1).unwrap()).with_transition("R", rho);
        let show = |s: &str| print_value(&eval_str(s, &env).unwrap(), &env.chart);
        assert_eq!(show("Transform(c1; rho=R)"), "(1/z1)*c1'");
        assert_eq!(show("Transform(d/dz1; rho=R)"), "d/dz1' + (1/z1)*c1'*d/dc1'");
        assert_eq!(show("Transform(dc1; rho=R)"), "(1/z1)*dc1' + (-1/z1^2)*c1'*dz1");
    }
}
