use std::collections::BTreeMap;

use super::parser::{parse, Expr, NameRef, SplitPart, Symbol};
use crate::error::{Error, Result};
use crate::fields::SupervectorField;
use crate::forms::Superform;
use crate::geometry::{LinearConnection, Transition};
use crate::grassmann::{Chart, Superfunction};
use crate::scalars::ScalarFn;

/// Chart plus the named transitions and connections expressions may refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Environment {
    pub chart: Chart,
    pub transitions: BTreeMap<String, Transition>,
    pub connections: BTreeMap<String, LinearConnection>,
}

impl Environment {
    pub fn new(chart: Chart) -> Self {
        Environment {
            chart,
            transitions: BTreeMap::new(),
            connections: BTreeMap::new(),
        }
    }

    pub fn with_transition(mut self, name: &str, rho: Transition) -> Self {
        self.transitions.insert(name.into(), rho);
        self
    }

    pub fn with_connection(mut self, name: &str, gamma: LinearConnection) -> Self {
        self.connections.insert(name.into(), gamma);
        self
    }

    fn transition(&self, r: &NameRef) -> Result<&Transition> {
        self.transitions.get(&r.name).ok_or_else(|| unknown(r))
    }

    fn connection(&self, r: &NameRef) -> Result<&LinearConnection> {
        self.connections.get(&r.name).ok_or_else(|| unknown(r))
    }
}

fn unknown(r: &NameRef) -> Error {
    Error::UnknownSymbol {
        name: r.name.clone(),
        line: r.line,
        column: r.column,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Function(Superfunction),
    Field(SupervectorField),
    Form(Superform),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Function(_) => "function",
            Object::Field(_) => "field",
            Object::Form(_) => "form",
        }
    }
}

/// An evaluated expression. `frame` counts the primes of the odd frame the
/// value is written in; frame-independent values carry `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub object: Object,
    pub frame: Option<u32>,
}

impl Value {
    /// Collapses 0-forms and zero values to functions and drops the frame
    /// of values that do not depend on it.
    pub fn new(object: Object, frame: Option<u32>) -> Self {
        let object = match object {
            Object::Form(phi) => match phi.as_function() {
                Some(f) => Object::Function(f),
                None => Object::Form(phi),
            },
            Object::Field(u) if u.is_zero() => Object::Function(Superfunction::zero()),
            other => other,
        };
        let neutral = match &object {
            Object::Function(f) => f.generator_width() == 0,
            Object::Form(phi) => phi.terms().all(|(basis, f)| basis.dc_len() == 0 && f.generator_width() == 0),
            Object::Field(_) => false,
        };
        Value {
            object,
            frame: if neutral { None } else { frame },
        }
    }

    pub fn function(f: Superfunction) -> Self {
        Value::new(Object::Function(f), Some(0))
    }

    pub fn field(u: SupervectorField) -> Self {
        Value::new(Object::Field(u), Some(0))
    }

    pub fn form(phi: Superform) -> Self {
        Value::new(Object::Form(phi), Some(0))
    }

    pub fn as_function(&self) -> Option<&Superfunction> {
        match &self.object {
            Object::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_field(&self) -> Option<&SupervectorField> {
        match &self.object {
            Object::Field(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_form(&self) -> Option<&Superform> {
        match &self.object {
            Object::Form(phi) => Some(phi),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.object, Object::Function(f) if f.is_zero())
    }
}

fn join(a: Option<u32>, b: Option<u32>) -> Result<Option<u32>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::TypeMismatch(format!(
            "cannot combine values written in frames with {x} and {y} primes"
        ))),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

fn to_form(o: &Object) -> Option<Superform> {
    match o {
        Object::Function(f) => Some(Superform::function(f.clone())),
        Object::Form(phi) => Some(phi.clone()),
        Object::Field(_) => None,
    }
}

fn to_field(v: &Value, chart: &Chart, role: &str) -> Result<SupervectorField> {
    match &v.object {
        Object::Field(u) => Ok(u.clone()),
        Object::Function(f) if f.is_zero() => Ok(SupervectorField::zero(chart.n(), chart.m())),
        other => Err(Error::TypeMismatch(format!("{role} must be a field, got a {}", other.kind()))),
    }
}

fn scalar_of(v: &Value, role: &str) -> Result<ScalarFn> {
    match &v.object {
        Object::Function(f) => f
            .as_scalar()
            .ok_or_else(|| Error::TypeMismatch(format!("{role} must not contain odd generators"))),
        other => Err(Error::TypeMismatch(format!("{role} must be a scalar, got a {}", other.kind()))),
    }
}

fn add(a: &Value, b: &Value, chart: &Chart, negate: bool) -> Result<Value> {
    let frame = join(a.frame, b.frame)?;
    let object = match (&a.object, &b.object) {
        (Object::Function(f), Object::Function(g)) => Object::Function(if negate { f - g } else { f + g }),
        (Object::Field(_), _) | (_, Object::Field(_)) => {
            let u = to_field(a, chart, "each summand")?;
            let v = to_field(b, chart, "each summand")?;
            Object::Field(if negate { u.checked_sub(&v)? } else { u.checked_add(&v)? })
        }
        (x, y) => {
            let (p, q) = (to_form(x).expect("not a field"), to_form(y).expect("not a field"));
            Object::Form(if negate { &p - &q } else { &p + &q })
        }
    };
    Ok(Value::new(object, frame))
}

fn mul(a: &Value, b: &Value) -> Result<Value> {
    let frame = join(a.frame, b.frame)?;
    let object = match (&a.object, &b.object) {
        (Object::Function(f), Object::Function(g)) => Object::Function(f * g),
        (Object::Function(f), Object::Field(u)) => Object::Field(u.left_mul(f)),
        (Object::Field(_), _) | (_, Object::Field(_)) => {
            return Err(Error::TypeMismatch(format!(
                "cannot multiply a {} by a {}",
                a.object.kind(),
                b.object.kind()
            )))
        }
        (x, y) => Object::Form(to_form(x).expect("not a field").wedge(&to_form(y).expect("not a field"))),
    };
    Ok(Value::new(object, frame))
}

fn scale(v: &Value, s: &ScalarFn) -> Value {
    let f = Superfunction::scalar(s.clone());
    let object = match &v.object {
        Object::Function(g) => Object::Function(g.scale(s)),
        Object::Field(u) => Object::Field(u.left_mul(&f)),
        Object::Form(phi) => Object::Form(phi.left_mul(&f)),
    };
    Value::new(object, v.frame)
}

/// Evaluates `e` to a canonical value.
pub fn evaluate(e: &Expr, env: &Environment) -> Result<Value> {
    let chart = &env.chart;
    let (n, m) = (chart.n(), chart.m());
    Ok(match e {
        Expr::Number(v) => Value::function(Superfunction::scalar(ScalarFn::constant(v.clone().into()))),
        Expr::Symbol { symbol, primes, .. } => {
            let frame = Some(*primes);
            let object = match *symbol {
                Symbol::Coord(i) => Object::Function(Superfunction::coord(i)),
                Symbol::Generator(a) => Object::Function(Superfunction::generator(a)),
                Symbol::Dz(i) => Object::Form(Superform::dz(i)),
                Symbol::Dc(a) => Object::Form(Superform::dc(a)),
                Symbol::BaseDerivation(i) => Object::Field(SupervectorField::base_basis(n, m, i)),
                Symbol::FiberDerivation(a) => Object::Field(SupervectorField::fiber_basis(n, m, a)),
            };
            Value::new(object, frame)
        }
        Expr::Neg(a) => scale(&evaluate(a, env)?, &ScalarFn::integer(-1)),
        Expr::Add(a, b) => add(&evaluate(a, env)?, &evaluate(b, env)?, chart, false)?,
        Expr::Sub(a, b) => add(&evaluate(a, env)?, &evaluate(b, env)?, chart, true)?,
        Expr::Mul(a, b) => mul(&evaluate(a, env)?, &evaluate(b, env)?)?,
        Expr::Div(a, b) => {
            let num = evaluate(a, env)?;
            let den = scalar_of(&evaluate(b, env)?, "a denominator")?;
            scale(&num, &den.recip()?)
        }
        Expr::Pow(a, k) => {
            let base = scalar_of(&evaluate(a, env)?, "the base of a power")?;
            Value::function(Superfunction::scalar(base.pow(*k)?))
        }
        Expr::D(a) => {
            let v = evaluate(a, env)?;
            let phi = to_form(&v.object)
                .ok_or_else(|| Error::TypeMismatch("D expects a function or a form, got a field".into()))?;
            Value::new(Object::Form(phi.exterior_differential()), v.frame)
        }
        Expr::Interior(u, a) => {
            let (uv, av) = (evaluate(u, env)?, evaluate(a, env)?);
            let frame = join(uv.frame, av.frame)?;
            let field = to_field(&uv, chart, "the first argument of I")?;
            let phi = to_form(&av.object)
                .ok_or_else(|| Error::TypeMismatch("the second argument of I must be a form".into()))?;
            Value::new(Object::Form(phi.interior(&field)?), frame)
        }
        Expr::Lie(u, a) => {
            let (uv, av) = (evaluate(u, env)?, evaluate(a, env)?);
            let frame = join(uv.frame, av.frame)?;
            let field = to_field(&uv, chart, "the first argument of Lie")?;
            let object = match &av.object {
                Object::Function(f) => Object::Function(field.apply(f)?),
                Object::Form(phi) => Object::Form(phi.lie_derivative(&field)?),
                Object::Field(_) => {
                    return Err(Error::TypeMismatch(
                        "the second argument of Lie must be a function or a form".into(),
                    ))
                }
            };
            Value::new(object, frame)
        }
        Expr::Bracket(u, v) => {
            let (uv, vv) = (evaluate(u, env)?, evaluate(v, env)?);
            let frame = join(uv.frame, vv.frame)?;
            let a = to_field(&uv, chart, "the first argument of Bracket")?;
            let b = to_field(&vv, chart, "the second argument of Bracket")?;
            Value::new(Object::Field(a.bracket(&b)?), frame)
        }
        Expr::Transform(a, r) => {
            let rho = env.transition(r)?;
            let v = evaluate(a, env)?;
            if rho.size() != m {
                return Err(Error::ChartMismatch(format!(
                    "transition {} is {}x{} but the chart has {m} generators",
                    r.name,
                    rho.size(),
                    rho.size()
                )));
            }
            let object = match &v.object {
                Object::Function(f) => Object::Function(rho.transform_superfunction(f)?),
                Object::Field(u) => Object::Field(u.transform(rho)?),
                Object::Form(phi) => Object::Form(phi.transform(rho)?),
            };
            Value::new(object, Some(v.frame.unwrap_or(0) + 1))
        }
        Expr::Split(a, g, part) => {
            let gamma = env.connection(g)?;
            let v = evaluate(a, env)?;
            let object = match &v.object {
                Object::Field(u) => {
                    let (h, vert) = gamma.split_field(u)?;
                    Object::Field(if *part == SplitPart::Horizontal { h } else { vert })
                }
                other => {
                    let phi = to_form(other).expect("not a field");
                    let (h, vert) = gamma.split_form(&phi)?;
                    Object::Form(if *part == SplitPart::Horizontal { h } else { vert })
                }
            };
            Value::new(object, v.frame)
        }
    })
}

/// Parses and evaluates one expression.
pub fn eval_str(source: &str, env: &Environment) -> Result<Value> {
    evaluate(&parse(source, &env.chart)?, env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Environment {
        Environment::new(Chart::new(2, 2).unwrap())
    }

    fn eval(s: &str) -> Value {
        eval_str(s, &env()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(eval("D(D(z1*c1*c2))").is_zero());
        assert_eq!(eval("I(d/dc1; dc1)"), Value::function(Superfunction::one()));
        assert!(eval("Bracket(d/dc1; d/dc1)").is_zero());
    }

    #[test]
    fn zero_coerces_to_a_field() {
        assert_eq!(eval("d/dz1 + 0"), eval("d/dz1"));
        assert!(eval("Bracket(0; d/dz1)").is_zero());
    }

    #[test]
    fn type_errors() {
        let env = env();
        assert!(matches!(eval_str("Lie(dz1; c1)", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("d/dz1 * c1", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("c1^2", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("z1 / c1", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("c1 + c1'", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("D(d/dz1)", &env), Err(Error::TypeMismatch(_))));
        assert!(matches!(eval_str("1/(z1 - z1)", &env), Err(Error::DivisionByZero)));
    }

    #[test]
    fn forms_collapse_to_functions() {
        assert_eq!(eval("I(d/dz1; dz1)"), Value::function(Superfunction::one()));
        assert_eq!(eval("Lie(z1*d/dz1; z1^2)"), eval("2*z1^2"));
    }

    #[test]
    fn transform_primes_the_frame() {
        let rho = Transition::from_rows(vec![vec![ScalarFn::coord(0)]]).unwrap();
        let env = Environment::new(Chart::new(1, 1).unwrap()).with_transition("R", rho);
        let v = eval_str("Transform(c1; rho=R)", &env).unwrap();
        assert_eq!(v, eval_str("(1/z1)*c1'", &env).unwrap());
        assert_eq!(v.frame, Some(1));
        assert_eq!(eval_str("Transform(z1; rho=R)", &env).unwrap().frame, None);
        assert!(matches!(
            eval_str("Transform(c1; rho=S)", &env),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn split_defaults_to_horizontal() {
        let gamma = LinearConnection::from_array(vec![vec![vec![ScalarFn::one()]]]).unwrap();
        let env = Environment::new(Chart::new(1, 1).unwrap()).with_connection("G", gamma);
        let h = eval_str("Split(dc1; conn=G)", &env).unwrap();
        assert_eq!(h, eval_str("c1*dz1", &env).unwrap());
        let v = eval_str("Split(dc1; conn=G; part=vertical)", &env).unwrap();
        assert_eq!(v, eval_str("dc1 - c1*dz1", &env).unwrap());
    }
}
