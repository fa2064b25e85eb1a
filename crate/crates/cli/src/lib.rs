//! Argument parsing and dispatch for the `hamvol` binary.
//!
//! [`run`] never prints; it returns a [`Report`] carrying both the JSON
//! payload and a plain-text rendering so the binary (and tests) decide what
//! to show.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hamvol::certificate::{Certificate, Verdict};
use hamvol::chekanov::{invariants, isotopy_equivalent, ChekanovInvariants};
use hamvol::cn_tori::{greedy_reduce, witness, WitnessStep};
use hamvol::cpn::{self, ChartPoint};
use hamvol::density::dn_density;
use hamvol::parallel::{run_capped, thread_cap_from_env};
use hamvol::rational::{parse_rational, RatVec, Rational};
use hamvol::toric::{self, DelzantPolytope, VolumeModel};
use hamvol::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESES_UNMET: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hamvol", version, about = "Certify non-minimal volumes of Lagrangian torus fibres")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chekanov invariants of a product torus (moment coordinates).
    Invariants { a: RatVec },
    /// Whether two product tori are Hamiltonian isotopic.
    Equiv { a: RatVec, b: RatVec },
    /// One volume-reducing step inside the isotopy class.
    Witness { a: RatVec },
    /// Repeated witness steps until fewer than three distinct entries remain.
    Reduce { a: RatVec },
    /// Torus orbits of CP^n.
    #[command(subcommand)]
    Cpn(CpnCommand),
    /// Torus fibres of a toric manifold given by its moment polytope.
    #[command(subcommand)]
    Toric(ToricCommand),
}

#[derive(Debug, Subcommand)]
enum CpnCommand {
    /// Certify the orbit over a point of the open simplex.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        point: RatVec,
        /// Chart of the given coordinates (0 = moment map values).
        #[arg(long, default_value_t = 0)]
        chart: usize,
    },
    /// Fraction of seeded uniform samples that certify.
    Density {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct PolytopeArg {
    /// JSON file: {"dim": n, "facets": [{"mu": [..], "lambda": "p/q"}, ..]}
    #[arg(long)]
    polytope: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ToricCommand {
    /// Size of the largest inscribed corner simplex.
    S0 {
        #[command(flatten)]
        polytope: PolytopeArg,
    },
    /// Witness, support check, c-threshold and volume drop at a point.
    Witness {
        #[command(flatten)]
        polytope: PolytopeArg,
        #[arg(long)]
        point: RatVec,
        #[arg(long, default_value = "1", value_parser = parse_positive_rational)]
        delta0: Rational,
    },
}

fn parse_positive_rational(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r > Rational::from_integer(0.into()) {
        Ok(r)
    } else {
        Err(format!("{r} is not positive"))
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub exit_code: i32,
    #[serde(skip)]
    pub text: String,
    #[serde(skip)]
    pub json: bool,
}

impl Report {
    fn new(command: &str, inputs: Value, result: Value, exit_code: i32, text: String) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            result,
            exit_code,
            text,
            json: false,
        }
    }

    fn error(command: &str, inputs: Value, err: &Error) -> Self {
        let exit_code = match err {
            Error::NotApplicable(_) => EXIT_HYPOTHESES_UNMET,
            _ => EXIT_ERROR,
        };
        Report::new(
            command,
            inputs,
            json!({ "error": err.to_string() }),
            exit_code,
            format!("error: {err}\n"),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// What the binary prints on standard output.
    pub fn render(&self) -> String {
        if self.json {
            let mut s = self.to_json();
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let exit_code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let message = e.render().to_string();
            return Report::new("usage", Value::Null, json!({ "error": message }), exit_code, message);
        }
    };
    let mut report = dispatch(cli.command);
    report.json = cli.json;
    report
}

fn dispatch(command: Command) -> Report {
    match command {
        Command::Invariants { a } => {
            let inputs = json!({ "a": to_value(&a) });
            match invariants(&a) {
                Ok(inv) => Report::new("invariants", inputs, to_value(&inv), EXIT_OK, invariants_text(&a, &inv)),
                Err(e) => Report::error("invariants", inputs, &e),
            }
        }
        Command::Equiv { a, b } => {
            let inputs = json!({ "a": to_value(&a), "b": to_value(&b) });
            let outcome = isotopy_equivalent(&a, &b)
                .and_then(|eq| Ok((eq, invariants(&a)?, invariants(&b)?)));
            match outcome {
                Ok((eq, ia, ib)) => {
                    let text = format!(
                        "equivalent: {eq}\n(min, m, Γ-generator): ({}, {}, {}) vs ({}, {}, {})\n",
                        ia.min_val, ia.multiplicity, ia.gamma_gen, ib.min_val, ib.multiplicity, ib.gamma_gen
                    );
                    let result = json!({ "equivalent": eq, "a": to_value(&ia), "b": to_value(&ib) });
                    Report::new("equiv", inputs, result, EXIT_OK, text)
                }
                Err(e) => Report::error("equiv", inputs, &e),
            }
        }
        Command::Witness { a } => {
            let inputs = json!({ "a": to_value(&a) });
            match witness(&a) {
                Ok(step) => Report::new("witness", inputs, to_value(&step), EXIT_OK, step_text(&step)),
                Err(e) => Report::error("witness", inputs, &e),
            }
        }
        Command::Reduce { a } => {
            let inputs = json!({ "a": to_value(&a) });
            match greedy_reduce(&a) {
                Ok(steps) => {
                    let last = steps.last().map_or(&a, |s| &s.after).clone();
                    let mut text = String::new();
                    for (k, s) in steps.iter().enumerate() {
                        let _ = writeln!(text, "step {}: {} -> {} (i = {}, j = {})", k + 1, s.before, s.after, s.index_i, s.index_j);
                    }
                    let _ = writeln!(text, "final: {last} (product {}, N = {})", last.product(), last.n_distinct());
                    let result = json!({
                        "steps": to_value(&steps),
                        "final": to_value(&last),
                        "product_final": last.product().to_string(),
                    });
                    Report::new("reduce", inputs, result, EXIT_OK, text)
                }
                Err(e) => Report::error("reduce", inputs, &e),
            }
        }
        Command::Cpn(CpnCommand::Certify { n, point, chart }) => {
            let inputs = json!({ "n": n, "point": to_value(&point), "chart": chart });
            let outcome = point
                .require_len(n)
                .and_then(|_| ChartPoint::new(chart, point.clone()))
                .and_then(|p| cpn::certify(&p));
            certificate_report("cpn certify", inputs, outcome)
        }
        Command::Cpn(CpnCommand::Density { n, samples, seed }) => {
            let inputs = json!({ "n": n, "samples": samples, "seed": seed });
            if n == 0 || samples == 0 {
                let err = Error::Parse("--n and --samples must be at least 1".into());
                return Report::error("cpn density", inputs, &err);
            }
            let report = run_capped(thread_cap_from_env(), || dn_density(n, samples, seed));
            let text = format!(
                "n = {}, samples = {}, seed = {}\ncertified = {}\nfraction = {}\n",
                report.n, report.samples, report.seed, report.certified, report.fraction
            );
            Report::new("cpn density", inputs, to_value(&report), EXIT_OK, text)
        }
        Command::Toric(ToricCommand::S0 { polytope }) => {
            let inputs = json!({ "polytope": polytope.polytope.display().to_string() });
            match load_polytope(&polytope.polytope) {
                Ok(p) => {
                    let s0 = toric::s0(&p);
                    Report::new("toric s0", inputs, json!({ "s0": s0.to_string() }), EXIT_OK, format!("s0 = {s0}\n"))
                }
                Err(e) => Report::error("toric s0", inputs, &e),
            }
        }
        Command::Toric(ToricCommand::Witness { polytope, point, delta0 }) => {
            let inputs = json!({
                "polytope": polytope.polytope.display().to_string(),
                "point": to_value(&point),
                "delta0": delta0.to_string(),
            });
            let outcome = load_polytope(&polytope.polytope).and_then(|p| {
                let model = VolumeModel::constant(delta0.clone())?;
                toric::certify(&p, &model, &point)
            });
            certificate_report("toric witness", inputs, outcome)
        }
    }
}

fn load_polytope(path: &PathBuf) -> Result<DelzantPolytope, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    DelzantPolytope::from_json(&text)
}

fn certificate_report(command: &str, inputs: Value, outcome: Result<Certificate, Error>) -> Report {
    match outcome {
        Ok(cert) => {
            let exit_code = match cert.verdict {
                Verdict::NotVolumeMinimizing => EXIT_OK,
                Verdict::Unknown => EXIT_HYPOTHESES_UNMET,
            };
            Report::new(command, inputs, to_value(&cert), exit_code, certificate_text(&cert))
        }
        Err(e) => Report::error(command, inputs, &e),
    }
}

fn invariants_text(a: &RatVec, inv: &ChekanovInvariants) -> String {
    format!(
        "a = {a}\nmin = {}\nm(a) = {}\nΓ-generator = {}\nN(a) = {}\n|a| = {}\n‖a‖ = {}\n|‖a‖| = {}\n",
        inv.min_val, inv.multiplicity, inv.gamma_gen, inv.n_distinct, inv.total, inv.norm, inv.conorm
    )
}

fn step_text(step: &WitnessStep) -> String {
    format!(
        "i = {}, j = {}\nbefore = {}\nafter = {}\nproduct: {} -> {}\n",
        step.index_i,
        step.index_j,
        step.before,
        step.after,
        step.product_before(),
        step.product_after()
    )
}

fn certificate_text(cert: &Certificate) -> String {
    let mut text = format!("verdict: {:?}\n", cert.verdict);
    if let Some(chart) = cert.chart {
        let _ = writeln!(text, "chart: {chart}");
    }
    if let Some(s) = &cert.source {
        let _ = writeln!(text, "source: {s}");
    }
    if let Some(t) = &cert.target {
        let _ = writeln!(text, "target: {t}");
    }
    if let Some(d) = &cert.sqvol_drop {
        let _ = writeln!(text, "squared-volume drop: {d}");
    }
    if let Some(s0) = &cert.s0 {
        let _ = writeln!(text, "s0: {s0}");
    }
    if let Some(c) = &cert.c_threshold {
        let _ = writeln!(text, "c-threshold: {c}");
    }
    if let Some(r) = &cert.reason {
        let _ = writeln!(text, "reason: {r}");
    }
    text
}
