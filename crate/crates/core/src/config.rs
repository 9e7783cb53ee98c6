//! Chart configuration files.
//!
//! ```text
//! # comments run to the end of the line
//! n = 2
//! m = 2
//! base = x, y          # optional, default z1..zn
//! fiber = a, b         # optional, default c1..cm
//!
//! transition R         # m rows of m comma-separated scalars
//!   x, 1
//!   0, y
//! end
//!
//! connection G         # entries Γ_A^a_b, 1-based, unlisted entries are 0
//!   1 1 2 = x
//! end
//! ```

use std::path::Path;

use crate::dsl::{eval_str, Environment};
use crate::error::{Error, Result};
use crate::geometry::{LinearConnection, Transition};
use crate::grassmann::Chart;
use crate::scalars::{ScalarFn, ScalarMatrix};

fn config_error(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

pub fn load_config(path: &Path) -> Result<Environment> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(0, format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

#[derive(Default)]
struct Header {
    n: Option<(usize, usize)>,
    m: Option<(usize, usize)>,
    base: Option<(Vec<String>, usize)>,
    fiber: Option<(Vec<String>, usize)>,
}

impl Header {
    fn chart(&self) -> Result<Chart> {
        let names = |count: Option<(usize, usize)>, names: &Option<(Vec<String>, usize)>, key, prefix| {
            match (count, names) {
                (Some((c, _)), Some((ns, line))) if ns.len() != c => Err(config_error(
                    *line,
                    format!("{key} = {c} but {} names are given", ns.len()),
                )),
                (_, Some((ns, _))) => Ok(ns.clone()),
                (Some((c, _)), None) => Ok((1..=c).map(|i| format!("{prefix}{i}")).collect()),
                (None, None) => Err(config_error(0, format!("missing '{key} = ...'"))),
            }
        };
        let base = names(self.n, &self.base, "n", "z")?;
        let fiber = names(self.m, &self.fiber, "m", "c")?;
        let line = self.base.as_ref().or(self.fiber.as_ref()).map_or(0, |(_, l)| *l);
        Chart::with_names(base, fiber).map_err(|e| config_error(line, e.to_string()))
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn scalar_entry(text: &str, env: &Environment, line: usize) -> Result<ScalarFn> {
    let v = eval_str(text, env).map_err(|e| config_error(line, format!("{e} in {text:?}")))?;
    v.as_function()
        .and_then(|f| f.as_scalar())
        .ok_or_else(|| config_error(line, format!("{text:?} is not a scalar function of the base coordinates")))
}

fn one_based(token: &str, bound: usize, what: &str, line: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(i) if (1..=bound).contains(&i) => Ok(i - 1),
        _ => Err(config_error(line, format!("{what} index {token:?} is not in 1..={bound}"))),
    }
}

pub fn parse_config(text: &str) -> Result<Environment> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut header = Header::default();
    let mut i = 0;
    while i < lines.len() {
        let (line, l) = lines[i];
        let Some((key, value)) = l.split_once('=') else { break };
        let (key, value) = (key.trim(), value.trim());
        let list = || value.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>();
        let count = || value.parse::<usize>().map_err(|_| config_error(line, format!("{key} must be a count")));
        let slot_taken = match key {
            "n" => header.n.replace((count()?, line)).is_some(),
            "m" => header.m.replace((count()?, line)).is_some(),
            "base" => header.base.replace((list(), line)).is_some(),
            "fiber" => header.fiber.replace((list(), line)).is_some(),
            _ => return Err(config_error(line, format!("unknown key {key:?}"))),
        };
        if slot_taken {
            return Err(config_error(line, format!("{key} is set twice")));
        }
        i += 1;
    }
    let mut env = Environment::new(header.chart()?);
    let (n, m) = (env.chart.n(), env.chart.m());

    while i < lines.len() {
        let (line, l) = lines[i];
        let mut words = l.split_whitespace();
        let (kind, name) = (words.next().unwrap_or(""), words.next());
        let name = match (kind, name, words.next()) {
            ("transition" | "connection", Some(name), None) => name.to_string(),
            _ => return Err(config_error(line, format!("expected 'transition NAME' or 'connection NAME', found {l:?}"))),
        };
        if env.transitions.contains_key(&name) || env.connections.contains_key(&name) {
            return Err(config_error(line, format!("{name} is defined twice")));
        }
        let start = line;
        i += 1;
        let mut body = Vec::new();
        loop {
            let Some(&(line, l)) = lines.get(i) else {
                return Err(config_error(start, format!("{kind} {name} has no 'end'")));
            };
            i += 1;
            if l == "end" {
                break;
            }
            body.push((line, l));
        }
        if kind == "transition" {
            if body.len() != m {
                return Err(config_error(start, format!("transition {name} needs {m} rows, found {}", body.len())));
            }
            let mut rows = Vec::with_capacity(m);
            for (line, l) in body {
                let row = l
                    .split(',')
                    .map(|e| scalar_entry(e.trim(), &env, line))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != m {
                    return Err(config_error(line, format!("transition {name} needs {m} entries per row")));
                }
                rows.push(row);
            }
            let matrix = ScalarMatrix::from_rows(rows).map_err(|e| config_error(start, e.to_string()))?;
            // A non-invertible transition is reported as a math error.
            let rho = Transition::new(matrix)?;
            env.transitions.insert(name, rho);
        } else {
            let mut gamma = LinearConnection::zero(n, m);
            for (line, l) in body {
                let Some((idx, expr)) = l.split_once('=') else {
                    return Err(config_error(line, "expected 'A a b = expression'"));
                };
                let idx: Vec<&str> = idx.split_whitespace().collect();
                if idx.len() != 3 {
                    return Err(config_error(line, "expected three indices 'A a b'"));
                }
                let base = one_based(idx[0], n, "base", line)?;
                let a = one_based(idx[1], m, "fiber", line)?;
                let b = one_based(idx[2], m, "fiber", line)?;
                gamma.set(base, a, b, scalar_entry(expr.trim(), &env, line)?);
            }
            env.connections.insert(name, gamma);
        }
    }
    Ok(env)
}
