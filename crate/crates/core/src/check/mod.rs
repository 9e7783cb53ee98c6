//! Randomized exact verification of the calculus identities.

mod random;
mod suites;

use rayon::prelude::*;

pub use random::{Bounds, Generator};

use crate::dsl::{print_field, print_form, print_scalar, print_superfunction, Environment};
use crate::error::Result;
use crate::fields::SupervectorField;
use crate::forms::Superform;
use crate::geometry::{LinearConnection, Transition};
use crate::grassmann::{Chart, Superfunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Derivation,
    Bracket,
    Wedge,
    Differential,
    Interior,
    Lie,
    Transition,
    Cocycle,
    Splitting,
    Coefficients,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Derivation,
        Suite::Bracket,
        Suite::Wedge,
        Suite::Differential,
        Suite::Interior,
        Suite::Lie,
        Suite::Transition,
        Suite::Cocycle,
        Suite::Splitting,
        Suite::Coefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Derivation => "derivation",
            Suite::Bracket => "bracket",
            Suite::Wedge => "wedge",
            Suite::Differential => "differential",
            Suite::Interior => "interior",
            Suite::Lie => "lie",
            Suite::Transition => "transition",
            Suite::Cocycle => "cocycle",
            Suite::Splitting => "splitting",
            Suite::Coefficients => "coefficients",
        }
    }

    /// A suite name, or `all`.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().find(|s| s.name() == name).map(|&s| vec![s])
    }
}

/// Operations the suites exercise that a test may swap out.
#[derive(Clone, Copy)]
pub struct Ops {
    pub d: fn(&Superform) -> Superform,
}

impl Default for Ops {
    fn default() -> Self {
        Ops {
            d: Superform::exterior_differential,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    pub cases: usize,
    pub bounds: Bounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub suite: &'static str,
    pub identity: &'static str,
    pub counterexample: Option<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn line(&self) -> String {
        match &self.counterexample {
            None => format!("{}/{}: PASS", self.suite, self.identity),
            Some(ce) => format!("{}/{}: FAIL {ce}", self.suite, self.identity),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub outcomes: Vec<IdentityOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(IdentityOutcome::passed)
    }

    pub fn render(&self) -> String {
        self.outcomes.iter().map(|o| o.line() + "\n").collect()
    }
}

/// What a case sees: the chart, swappable operations and any transitions or
/// connections declared in the configuration.
pub struct Context<'a> {
    pub chart: &'a Chart,
    pub ops: Ops,
    pub transitions: Vec<&'a Transition>,
    pub connections: Vec<&'a LinearConnection>,
}

impl Context<'_> {
    fn transition(&self, g: &mut Generator) -> Transition {
        if self.transitions.is_empty() {
            g.transition()
        } else {
            self.transitions[g.below(self.transitions.len())].clone()
        }
    }

    fn connection(&self, g: &mut Generator) -> LinearConnection {
        if self.connections.is_empty() {
            g.connection()
        } else {
            self.connections[g.below(self.connections.len())].clone()
        }
    }

    fn sf(&self, f: &Superfunction) -> String {
        print_superfunction(f, self.chart, 0)
    }

    fn field(&self, u: &SupervectorField) -> String {
        print_field(u, self.chart, 0)
    }

    fn form(&self, phi: &Superform) -> String {
        print_form(phi, self.chart, 0)
    }

    fn rho(&self, t: &Transition) -> String {
        let m = t.matrix();
        let rows: Vec<String> = (0..m.rows())
            .map(|i| {
                let row: Vec<String> = m.row(i).iter().map(|e| print_scalar(e, self.chart)).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    fn gamma(&self, g: &LinearConnection) -> String {
        let mut entries = Vec::new();
        for base in 0..g.n() {
            for a in 0..g.m() {
                for b in 0..g.m() {
                    let e = g.get(base, a, b);
                    if !e.is_zero() {
                        entries.push(format!("{} {} {} = {}", base + 1, a + 1, b + 1, print_scalar(e, self.chart)));
                    }
                }
            }
        }
        format!("{{{}}}", entries.join("; "))
    }
}

/// `Ok(None)` when the identity holds on the drawn case, otherwise a
/// counterexample.
pub(crate) type CaseFn = fn(&mut Generator, &Context) -> Result<Option<String>>;

fn case_seed(seed: u64, suite: usize, identity: usize, case: usize) -> u64 {
    seed ^ ((suite as u64) << 48) ^ ((identity as u64) << 36) ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs `suites` over the chart and declarations of `env`.
pub fn run_suites(env: &Environment, suites: &[Suite], options: &CheckOptions, ops: Ops) -> Report {
    let ctx = Context {
        chart: &env.chart,
        ops,
        transitions: env.transitions.values().collect(),
        connections: env.connections.values().collect(),
    };
    let (n, m) = (env.chart.n(), env.chart.m());
    let mut outcomes = Vec::new();
    for &suite in suites {
        for (index, (identity, case)) in suites::identities(suite).iter().enumerate() {
            let results: Vec<Option<String>> = (0..options.cases)
                .into_par_iter()
                .map(|i| {
                    let seed = case_seed(options.seed, suite as usize, index, i);
                    let mut g = Generator::new(seed, n, m, options.bounds);
                    match case(&mut g, &ctx) {
                        Ok(r) => r,
                        Err(e) => Some(format!("error {e}")),
                    }
                })
                .collect();
            outcomes.push(IdentityOutcome {
                suite: suite.name(),
                identity,
                counterexample: results.into_iter().flatten().next(),
            });
        }
    }
    Report { outcomes }
}
