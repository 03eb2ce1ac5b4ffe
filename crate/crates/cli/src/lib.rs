//! The `schrod` command-line tool.
//!
//! Subcommands:
//!
//! * `normalize EXPR` — parse an expression and print its normal form;
//! * `theta EXPR --u q|f --x X` — apply the twisting automorphism `Θ_x`;
//! * `act EXPR --family F --lambda L --c C [--x X] --on "i,j"` — act on a
//!   basis vector of a module;
//! * `verify --suite S …` — run a verification suite, exit 0/1;
//! * `classify …` — decide isomorphism of two twisted modules;
//! * `diagram …` — export a weight diagram as JSON.
//!
//! Exit codes: `0` success / verification pass, `1` verification failure,
//! `2` usage error (bad flags, syntax errors, invalid module parameters).
//!
//! The whole tool is a thin shell over `schrod-core`; [`run`] executes one
//! invocation in-process and returns its output streams and exit code, so
//! tests can snapshot behavior without spawning binaries.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use schrod_core::{
    check_axioms, classify_isomorphism, parse_element, print_element, sample_points,
    simplicity_probe, twist_module, verify_theta_additivity, verify_theta_homomorphism,
    weight_diagram, BasisIndex, Generator, LocalizationMode, Module, ModuleSpec, ModuleVector,
    Scalar, TwistGenerator, TwistSpec, Window,
};

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Execute one invocation (args include the program name) in-process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: e.to_string(),
                    code: 2,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok((payload, code)) => Outcome {
            stdout: payload,
            stderr: String::new(),
            code,
        },
        Err(CmdErr { message, code }) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        },
    }
}

struct CmdErr {
    message: String,
    code: i32,
}

impl CmdErr {
    fn usage(message: impl Into<String>) -> Self {
        CmdErr {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<schrod_core::Error> for CmdErr {
    fn from(e: schrod_core::Error) -> Self {
        CmdErr {
            message: e.to_string(),
            code: 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "schrod",
    version,
    about = "Exact computations in the enveloping algebra of the Schrödinger Lie algebra and its weight-module families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its normal form.
    Normalize {
        /// Expression, e.g. "p*q - 2*z" or "e*q^-1" (localized modes).
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Ambient algebra: none (no inverses), at_q, or at_f.
        #[arg(long, value_enum, default_value_t = ModeArg::None)]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Apply the twisting automorphism Θ_x to an expression.
    Theta {
        /// Expression in the localization at the twisting generator.
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Twisting direction: the generator made invertible.
        #[arg(long, value_enum)]
        u: UArg,
        /// Twist parameter (exact rational).
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Act by an algebra element on a basis vector of a module.
    Act {
        /// Expression for the acting element.
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        module: ModuleOpts,
        /// Basis vector indices as "i,j".
        #[arg(long, allow_hyphen_values = true)]
        on: String,
        /// Ambient algebra of the expression (at_q needs the B_q family).
        #[arg(long, value_enum, default_value_t = ModeArg::None)]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a verification suite; exit 0 on pass, 1 on failure.
    Verify {
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        module: ModuleOpts,
        /// Second twist parameter (shift-iso suite and twist composition).
        #[arg(long, allow_hyphen_values = true)]
        x2: Option<String>,
        /// Twisting direction for the theta suite.
        #[arg(long, value_enum, default_value_t = UArg::Q)]
        u: UArg,
        /// Number of sample parameters for the theta suite (at least 5).
        #[arg(long, default_value_t = 6)]
        samples: usize,
        #[command(flatten)]
        window: WindowOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Decide whether two twisted modules are isomorphic.
    Classify {
        /// λ of the first module.
        #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
        lambda: String,
        /// Central charge of the first module.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        /// Twist parameter of the first module.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: String,
        /// λ of the second module (defaults to the first λ).
        #[arg(long, allow_hyphen_values = true)]
        lambda2: Option<String>,
        /// Central charge of the second module (defaults to the first c).
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<String>,
        /// Twist parameter of the second module.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x2: String,
        #[command(flatten)]
        window: WindowOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Export the weight diagram of a module as JSON.
    Diagram {
        #[command(flatten)]
        module: ModuleOpts,
        /// Include the commutator-axiom summary in the document.
        #[arg(long)]
        axioms: bool,
        #[command(flatten)]
        window: WindowOpts,
        /// Write the JSON to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    #[value(name = "none")]
    None,
    #[value(name = "at_q")]
    AtQ,
    #[value(name = "at_f")]
    AtF,
}

impl ModeArg {
    fn mode(self) -> LocalizationMode {
        match self {
            ModeArg::None => LocalizationMode::None,
            ModeArg::AtQ => LocalizationMode::AtQ,
            ModeArg::AtF => LocalizationMode::AtF,
        }
    }

    fn name(self) -> &'static str {
        self.mode().name()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UArg {
    Q,
    F,
}

impl UArg {
    fn twist(self) -> TwistGenerator {
        match self {
            UArg::Q => TwistGenerator::Q,
            UArg::F => TwistGenerator::F,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "N", alias = "n")]
    N,
    #[value(name = "B_q", alias = "b_q")]
    Bq,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Axioms,
    Theta,
    TwistCoherence,
    ShiftIso,
    Simplicity,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WindowOpts {
    /// Lower bound of the index window.
    #[arg(long = "i-min", default_value_t = -8, allow_hyphen_values = true)]
    i_min: i64,
    /// Upper bound of the index window.
    #[arg(long = "i-max", default_value_t = 8, allow_hyphen_values = true)]
    i_max: i64,
}

impl WindowOpts {
    fn window(&self) -> Result<Window, CmdErr> {
        if self.i_min > self.i_max {
            return Err(CmdErr::usage(format!(
                "--i-min {} exceeds --i-max {}",
                self.i_min, self.i_max
            )));
        }
        Ok(Window::new(self.i_min, self.i_max))
    }
}

#[derive(Args)]
struct ModuleOpts {
    /// Module family.
    #[arg(long, value_enum, default_value_t = FamilyArg::Bq)]
    family: FamilyArg,
    /// Highest-weight parameter λ (exact rational).
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    lambda: String,
    /// Central charge c (exact rational, non-zero).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
    /// Twist parameter x (B_q family only).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    x: String,
}

impl ModuleOpts {
    fn build(&self) -> Result<ModuleSpec, CmdErr> {
        let lambda = rational("lambda", &self.lambda)?;
        let c = rational("c", &self.c)?;
        let x = rational("x", &self.x)?;
        match self.family {
            FamilyArg::M | FamilyArg::N if !x.is_zero() => Err(CmdErr::usage(
                "--x applies to the B_q family only".to_string(),
            )),
            FamilyArg::M => Ok(ModuleSpec::verma_quotient_m(lambda, c)?),
            FamilyArg::N => Ok(ModuleSpec::top_row_n(lambda, c)?),
            FamilyArg::Bq => Ok(ModuleSpec::twisted_bq(lambda, c, x)?),
        }
    }
}

fn rational(flag: &str, text: &str) -> Result<Scalar, CmdErr> {
    text.trim().parse().map_err(|_| {
        CmdErr::usage(format!(
            "--{flag}: \"{text}\" is not an exact rational (use integers or \"p/q\"; floats are rejected)"
        ))
    })
}

fn parse_on(on: &str) -> Result<BasisIndex, CmdErr> {
    let err = || {
        CmdErr::usage(format!(
            "--on: \"{on}\" should be two integers \"i,j\""
        ))
    };
    let (i, j) = on.split_once(',').ok_or_else(err)?;
    let i: i64 = i.trim().parse().map_err(|_| err())?;
    let j: i64 = j.trim().parse().map_err(|_| err())?;
    Ok(BasisIndex::new(i, j))
}

/// Deliver a payload according to `--out`: either into the file (stdout
/// stays empty) or as stdout.
fn deliver(payload: String, out: &Option<PathBuf>, code: i32) -> Result<(String, i32), CmdErr> {
    match out {
        Some(path) => {
            std::fs::write(path, payload)
                .map_err(|e| CmdErr::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok((String::new(), code))
        }
        None => Ok((payload, code)),
    }
}

fn execute(command: Command) -> Result<(String, i32), CmdErr> {
    match command {
        Command::Normalize { expr, mode, output } => {
            let element = parse_element(&expr, mode.mode())?;
            let printed = print_element(&element);
            let payload = match output.format {
                Format::Text => format!("{printed}\n"),
                Format::Json => pretty(serde_json::json!({
                    "expr": expr,
                    "mode": mode.name(),
                    "result": element,
                })),
            };
            deliver(payload, &output.out, 0)
        }
        Command::Theta { expr, u, x, output } => {
            let u = u.twist();
            let x = rational("x", &x)?;
            let element = parse_element(&expr, u.mode())?;
            let image = TwistSpec::new(u, x.clone()).theta(&element)?;
            let printed = print_element(&image);
            let payload = match output.format {
                Format::Text => format!("{printed}\n"),
                Format::Json => pretty(serde_json::json!({
                    "expr": expr,
                    "u": u,
                    "x": x,
                    "result": image,
                })),
            };
            deliver(payload, &output.out, 0)
        }
        Command::Act {
            expr,
            module,
            on,
            mode,
            output,
        } => {
            let spec = module.build()?;
            let idx = parse_on(&on)?;
            if !spec.in_domain(idx) {
                return Err(CmdErr::usage(format!(
                    "v({},{}) is not a basis vector of {}",
                    idx.i,
                    idx.j,
                    spec.family_name()
                )));
            }
            let element = parse_element(&expr, mode.mode())?;
            let module = Module::new(spec.clone());
            let result = module.act_element(&element, &ModuleVector::basis(idx))?;
            let payload = match output.format {
                Format::Text => format!("{result}\n"),
                Format::Json => pretty(serde_json::json!({
                    "family": spec.family_name(),
                    "lambda": spec.lambda(),
                    "c": spec.central_charge(),
                    "x": spec.report_x(),
                    "expr": expr,
                    "on": { "i": idx.i, "j": idx.j },
                    "result": result,
                })),
            };
            deliver(payload, &output.out, 0)
        }
        Command::Verify {
            suite,
            module,
            x2,
            u,
            samples,
            window,
            output,
        } => {
            let window = window.window()?;
            let x2 = match x2 {
                Some(text) => Some(rational("x2", &text)?),
                None => None,
            };
            let (payload, pass) =
                run_verify(suite, &module, x2, u.twist(), samples, window, output.format)?;
            deliver(payload, &output.out, if pass { 0 } else { 1 })
        }
        Command::Classify {
            lambda,
            c,
            x,
            lambda2,
            c2,
            x2,
            window,
            output,
        } => {
            let window = window.window()?;
            let lambda = rational("lambda", &lambda)?;
            let c = rational("c", &c)?;
            let x = rational("x", &x)?;
            let lambda2 = match lambda2 {
                Some(t) => rational("lambda2", &t)?,
                None => lambda.clone(),
            };
            let c2 = match c2 {
                Some(t) => rational("c2", &t)?,
                None => c.clone(),
            };
            let x2 = rational("x2", &x2)?;
            let a = ModuleSpec::twisted_bq(lambda, c, x)?;
            let b = ModuleSpec::twisted_bq(lambda2, c2, x2)?;
            let report = classify_isomorphism(&a, &b, window)?;
            let payload = match output.format {
                Format::Text => {
                    let mut text = String::new();
                    for (label, m) in [("left", &report.left), ("right", &report.right)] {
                        text.push_str(&format!(
                            "{label}: {}(lambda={}, c={}, x={})\n",
                            m.family, m.lambda, m.c, m.x
                        ));
                    }
                    text.push_str(&format!("isomorphic: {}\n", report.isomorphic));
                    text.push_str(&format!("reason: {:?}\n", report.reason));
                    if let Some(n) = report.shift {
                        text.push_str(&format!("shift: {n}\n"));
                    }
                    if let Some(v) = report.witness_verified {
                        text.push_str(&format!("witness_verified: {v}\n"));
                    }
                    text
                }
                Format::Json => pretty(serde_json::to_value(&report).expect("serializable")),
            };
            deliver(payload, &output.out, 0)
        }
        Command::Diagram {
            module,
            axioms,
            window,
            out,
        } => {
            let window = window.window()?;
            let spec = module.build()?;
            let diagram = weight_diagram(&spec, window, axioms)?;
            let payload = format!("{}\n", schrod_core::to_json(&diagram));
            deliver(payload, &out, 0)
        }
    }
}

fn pretty(value: serde_json::Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(&value).expect("JSON printing cannot fail")
    )
}

/// One suite's outcome: name, pass flag, a stable one-line text summary,
/// and the full report as JSON.
struct SuiteOutcome {
    name: &'static str,
    pass: bool,
    line: String,
    report: serde_json::Value,
}

fn run_verify(
    suite: SuiteArg,
    module: &ModuleOpts,
    x2: Option<Scalar>,
    u: TwistGenerator,
    samples: usize,
    window: Window,
    format: Format,
) -> Result<(String, bool), CmdErr> {
    let mut outcomes: Vec<SuiteOutcome> = Vec::new();
    let wants = |s: SuiteArg| suite == s || suite == SuiteArg::All;

    if wants(SuiteArg::Axioms) {
        outcomes.push(suite_axioms(module, window)?);
    }
    if wants(SuiteArg::Theta) {
        outcomes.push(suite_theta(u, samples)?);
    }
    if wants(SuiteArg::TwistCoherence) && (suite == SuiteArg::TwistCoherence || module.family == FamilyArg::Bq)
    {
        outcomes.push(suite_twist_coherence(module, x2.clone(), window)?);
    }
    if wants(SuiteArg::ShiftIso) && (suite == SuiteArg::ShiftIso || module.family == FamilyArg::Bq)
    {
        outcomes.push(suite_shift_iso(module, x2, window)?);
    }
    if wants(SuiteArg::Simplicity) {
        outcomes.push(suite_simplicity(module, window)?);
    }

    let pass = outcomes.iter().all(|o| o.pass);
    let payload = match format {
        Format::Text => {
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&o.line);
                text.push('\n');
            }
            text.push_str(&format!(
                "verify: {}\n",
                if pass { "PASS" } else { "FAIL" }
            ));
            text
        }
        Format::Json => {
            let suites: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "suite": o.name,
                        "pass": o.pass,
                        "report": o.report,
                    })
                })
                .collect();
            pretty(serde_json::json!({ "suites": suites, "pass": pass }))
        }
    };
    Ok((payload, pass))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn suite_axioms(module: &ModuleOpts, window: Window) -> Result<SuiteOutcome, CmdErr> {
    let spec = module.build()?;
    let report = check_axioms(&Module::new(spec), window)?;
    let pass = report.pass();
    Ok(SuiteOutcome {
        name: "axioms",
        pass,
        line: format!(
            "axioms: {} (pairs={}, vectors={}, violations={})",
            verdict(pass),
            report.pairs_checked,
            report.vectors_checked,
            report.violations.len()
        ),
        report: serde_json::to_value(&report).expect("serializable"),
    })
}

fn suite_theta(u: TwistGenerator, samples: usize) -> Result<SuiteOutcome, CmdErr> {
    if samples < 5 {
        return Err(CmdErr::usage(
            "--samples must be at least 5: certifying a degree-4 polynomial identity needs 5 distinct points",
        ));
    }
    let hom = verify_theta_homomorphism(u, samples);
    let points = sample_points(samples);
    let mut pairs: Vec<(Scalar, Scalar)> = points
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    pairs.push((points[0].clone(), points[0].clone()));
    let additivity = verify_theta_additivity(u, &pairs);
    let pass = hom.pass() && additivity.pass();
    Ok(SuiteOutcome {
        name: "theta",
        pass,
        line: format!(
            "theta: {} (u={}, hom_pairs={}, additivity_checks={}, violations={})",
            verdict(pass),
            u,
            hom.pairs_checked,
            additivity.checks,
            hom.violations.len() + additivity.violations.len()
        ),
        report: serde_json::json!({
            "homomorphism": serde_json::to_value(&hom).expect("serializable"),
            "additivity": serde_json::to_value(&additivity).expect("serializable"),
        }),
    })
}

/// The coherence of the two twist constructions: acting through the `Θ_x`
/// images on `B_0` must equal the directly-defined `B_x` tables, and when a
/// second parameter is given, twisting twice must equal twisting once by
/// the sum.
fn suite_twist_coherence(
    module: &ModuleOpts,
    x2: Option<Scalar>,
    window: Window,
) -> Result<SuiteOutcome, CmdErr> {
    let spec = module.build()?;
    let ModuleSpec::TwistedBq { lambda, c, x } = &spec else {
        return Err(CmdErr::usage(
            "the twist-coherence suite applies to the B_q family",
        ));
    };
    let base = ModuleSpec::twisted_bq(lambda.clone(), c.clone(), Scalar::zero())?;
    let direct = Module::new(spec.clone());
    let through_images = Module::new(twist_module(base.clone(), TwistGenerator::Q, x.clone()));
    let indices = spec.enumerate(window);
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for &idx in &indices {
        for g in Generator::ALL {
            checked += 1;
            if through_images.act_basis(g, idx)? != direct.act_basis(g, idx)? {
                mismatches += 1;
            }
        }
    }
    let mut composition_checked = 0usize;
    if let Some(y) = &x2 {
        let nested = Module::new(twist_module(
            twist_module(base.clone(), TwistGenerator::Q, x.clone()),
            TwistGenerator::Q,
            y.clone(),
        ));
        let flat = Module::new(twist_module(
            base,
            TwistGenerator::Q,
            x.clone() + y.clone(),
        ));
        for &idx in &indices {
            for g in Generator::ALL {
                composition_checked += 1;
                if nested.act_basis(g, idx)? != flat.act_basis(g, idx)? {
                    mismatches += 1;
                }
            }
        }
    }
    let pass = mismatches == 0;
    Ok(SuiteOutcome {
        name: "twist-coherence",
        pass,
        line: format!(
            "twist-coherence: {} (checks={}, composition_checks={}, mismatches={})",
            verdict(pass),
            checked,
            composition_checked,
            mismatches
        ),
        report: serde_json::json!({
            "checks": checked,
            "composition_checks": composition_checked,
            "mismatches": mismatches,
        }),
    })
}

fn suite_shift_iso(
    module: &ModuleOpts,
    x2: Option<Scalar>,
    window: Window,
) -> Result<SuiteOutcome, CmdErr> {
    let spec = module.build()?;
    let ModuleSpec::TwistedBq { lambda, c, x } = &spec else {
        return Err(CmdErr::usage(
            "the shift-iso suite applies to the B_q family",
        ));
    };
    let x2 = x2.unwrap_or_else(|| x.clone() + Scalar::one());
    let other = ModuleSpec::twisted_bq(lambda.clone(), c.clone(), x2)?;
    let report = classify_isomorphism(&spec, &other, window)?;
    let pass = report.isomorphic && report.witness_verified == Some(true);
    let line = match report.shift {
        Some(n) => format!(
            "shift-iso: {} (n={}, verified={})",
            verdict(pass),
            n,
            report.witness_verified == Some(true)
        ),
        None => format!(
            "shift-iso: {} (reason={:?})",
            verdict(pass),
            report.reason
        ),
    };
    Ok(SuiteOutcome {
        name: "shift-iso",
        pass,
        line,
        report: serde_json::to_value(&report).expect("serializable"),
    })
}

fn suite_simplicity(module: &ModuleOpts, window: Window) -> Result<SuiteOutcome, CmdErr> {
    let spec = module.build()?;
    let report = simplicity_probe(&Module::new(spec), window)?;
    let pass = report.pass();
    Ok(SuiteOutcome {
        name: "simplicity",
        pass,
        line: format!(
            "simplicity: {} (starts={}, interior_strata={}, failures={})",
            verdict(pass),
            report.starts_checked,
            report.strata_checked,
            report.failures.len()
        ),
        report: serde_json::to_value(&report).expect("serializable"),
    })
}
