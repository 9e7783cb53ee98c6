//! Acceptance gate: runs each criterion, prints one line per criterion and
//! exits nonzero if any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use supercalc::check::{run_suites, Bounds, CheckOptions, Generator, Ops, Report, Suite};
use supercalc::cli;
use supercalc::dsl::{eval_str, print_value, Environment, Object, Value};
use supercalc::geometry::{coefficient_transition_form, FormCorrection, OneFormCoefficients};
use supercalc::grassmann::Chart;

const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn env(n: usize, m: usize) -> Environment {
    Environment::new(Chart::new(n, m).unwrap())
}

fn suites(env: &Environment, suites: &[Suite], cases: usize) -> Report {
    let options = CheckOptions {
        seed: SEED,
        cases,
        bounds: Bounds::for_chart(env.chart.n()),
    };
    run_suites(env, suites, &options, Ops::default())
}

fn from_report(report: &Report) -> Outcome {
    let failed: Vec<String> = report.outcomes.iter().filter(|o| !o.passed()).map(|o| o.line()).collect();
    Outcome {
        passed: failed.is_empty() && !report.outcomes.is_empty(),
        detail: if failed.is_empty() {
            format!("{} identities exact", report.outcomes.len())
        } else {
            failed.join("; ")
        },
    }
}

fn derivation() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for k in 1..=3 {
        reports.push((k, suites(&env(k, k), &[Suite::Derivation], 100)));
    }
    let elapsed = start.elapsed();
    let mut passed = elapsed < Duration::from_secs(10);
    let mut detail = Vec::new();
    for (k, r) in &reports {
        let o = from_report(r);
        passed &= o.passed;
        detail.push(format!("({k},{k}) {}", o.detail));
    }
    Outcome {
        passed,
        detail: format!("{} in {:.2}s", detail.join(", "), elapsed.as_secs_f64()),
    }
}

fn coefficients() -> Outcome {
    let main = from_report(&suites(&env(2, 2), &[Suite::Coefficients], 50));
    // The form law read as typeset, reported for reference only.
    let (mut differs, mut total) = (0, 0);
    for case in 0..50u64 {
        let mut g = Generator::new(SEED ^ case.wrapping_mul(0x9E37_79B9), 2, 2, Bounds::for_chart(2));
        let rho = g.transition();
        let phi = OneFormCoefficients::of(&g.one_form(), 2, 2).unwrap();
        for k in 0..=2 {
            let part = phi.degree(k);
            let direct = OneFormCoefficients::of(&part.to_form().transform(&rho).unwrap(), 2, 2).unwrap();
            let printed = coefficient_transition_form(&part, &rho, FormCorrection::Printed).unwrap();
            total += 1;
            differs += (printed != direct) as usize;
        }
    }
    Outcome {
        passed: main.passed,
        detail: format!(
            "{}; printed reading [{}] differs from transform_form on {differs}/{total} inputs",
            main.detail,
            FormCorrection::Printed.describe()
        ),
    }
}

fn round_trip() -> Outcome {
    let env = env(2, 2);
    let mut failures = Vec::new();
    for case in 0..200u64 {
        let mut g = Generator::new(SEED + case, 2, 2, Bounds::for_chart(2));
        let object = match case % 3 {
            0 => Object::Function(g.superfunction(None)),
            1 => Object::Field(g.field(None)),
            _ => Object::Form(g.form(None, None)),
        };
        let v = Value::new(object, Some((case % 2) as u32));
        let text = print_value(&v, &env.chart);
        match eval_str(&text, &env) {
            Ok(back) if back == v => {}
            _ => failures.push(text),
        }
    }
    let run = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let args = ["supercalc", "check", "--seed", "42", "--cases", "10"];
        let code = cli::run(args, &mut out, &mut err);
        (code, out)
    };
    let (first, second) = (run(), run());
    let deterministic = first == second && first.0 == 0;
    Outcome {
        passed: failures.is_empty() && deterministic,
        detail: format!(
            "{}/200 values round-trip, check output {}",
            200 - failures.len(),
            if deterministic { "byte-identical" } else { "differs between runs" }
        ) + &failures.first().map(|t| format!("; first failure {t}")).unwrap_or_default(),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("derivation leibniz on (1,1),(2,2),(3,3)", derivation),
        ("bracket antisymmetry, jacobi, first order", || {
            from_report(&suites(&env(2, 2), &[Suite::Bracket], 100))
        }),
        ("differential dd=0, leibniz, u⌋df=u(f)", || {
            from_report(&suites(&env(2, 2), &[Suite::Differential], 100))
        }),
        ("interior extension, cartan, L_u f, L_u d", || {
            from_report(&suites(&env(2, 2), &[Suite::Interior, Suite::Lie], 100))
        }),
        ("transition laws and cocycle", || {
            from_report(&suites(&env(2, 2), &[Suite::Transition, Suite::Cocycle], 50))
        }),
        ("coefficient formulas vs transforms, k = 0..m", coefficients),
        ("splittings", || from_report(&suites(&env(2, 2), &[Suite::Splitting], 50))),
        ("DSL round trip and check determinism", round_trip),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.passed;
        println!("criterion {} {name}: {} ({})", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
