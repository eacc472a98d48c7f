//! donoghue: classify impedance specs and tabulate the invariants of their
//! perturbed classes.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a deviation beyond
//! tolerance, 2 on usage or input errors.

mod fmt;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use donoghue::classify::{a_from_kappa, classify, DonoghueClass, Family};
use donoghue::entropy::{
    a_from_entropy_mkappa, a_from_entropy_mkappa_inv, class_m_entropy_limit,
    dissipation_class_m_q, dissipation_from_entropy, dissipation_mkappa_inv_q,
    dissipation_mkappa_q, entropy_class_m_q, entropy_from_kappa, entropy_mkappa_inv_q,
    entropy_mkappa_q, unperturbed_limits, Entropy,
};
use donoghue::herglotz::ImpedanceFunction;
use donoghue::perturbation::{
    class_m_limit, kappa_mkappa, kappa_mkappa_inv, mkappa_inv_limit, mkappa_limit,
    perturb_class_m, u_of_q, VonNeumannPair,
};
use donoghue::transfer::{entropy_oracle, kappa_oracle};
use donoghue::Error;

use fmt::{complex12, sig12, trim6};

const VERIFY_TOLERANCE: f64 = 1e-10;
const INJECTED_FAULT: f64 = 1e-8;
const Q_SNAP: f64 = 1e-12;

const VERIFY_Q: [f64; 12] = [
    -20.0, -5.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0,
];
const VERIFY_A_MKAPPA: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
const VERIFY_A_MKAPPA_INV: [f64; 3] = [1.5, 2.0, 5.0];

#[derive(Parser)]
#[command(
    name = "donoghue",
    version,
    about = "Invariants of perturbed conservative L-systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a JSON impedance spec into its Donoghue family
    Classify(ClassifyArgs),
    /// von Neumann parameters (kappa, U) of the perturbed class
    Perturb(PointArgs),
    /// c-entropy S(Q) of the perturbed class
    Entropy(PointArgs),
    /// Dissipation coefficient D(Q) of the perturbed class
    Dissipation(PointArgs),
    /// Tabulate kappa, S and D over a grid of shifts Q
    Curve(CurveArgs),
    /// Reproduce the reference table of entropy and dissipation values
    Table2,
    /// Cross-check the closed forms against the transfer-function oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Impedance spec {"shift": Q, "masses": [[location, mass], ...]};
    /// read from stdin when omitted
    spec: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "m")]
    M,
    #[value(name = "mkappa")]
    MKappa,
    #[value(name = "mkappainv")]
    MKappaInv,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::M => Family::M,
            FamilyArg::MKappa => Family::MKappa,
            FamilyArg::MKappaInv => Family::MKappaInv,
        }
    }
}

#[derive(Args)]
struct ClassSpec {
    /// Donoghue family of the unperturbed class
    #[arg(long, value_enum, ignore_case = true)]
    family: FamilyArg,
    /// Unperturbed von Neumann parameter kappa in (0, 1)
    #[arg(long, conflicts_with = "entropy", allow_negative_numbers = true)]
    kappa: Option<f64>,
    /// Unperturbed c-entropy S(0); alternative to --kappa
    #[arg(long, allow_negative_numbers = true)]
    entropy: Option<f64>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    class: ClassSpec,
    /// Real shift Q of the impedance
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    class: ClassSpec,
    /// Lower end of the Q grid
    #[arg(long, allow_negative_numbers = true)]
    q_min: f64,
    /// Upper end of the Q grid
    #[arg(long, allow_negative_numbers = true)]
    q_max: f64,
    /// Number of grid points (at least 2)
    #[arg(long)]
    steps: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write to this path instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict the check to these families (comma-separated)
    #[arg(long, value_enum, ignore_case = true, value_delimiter = ',')]
    families: Option<Vec<FamilyArg>>,
    /// Inject a synthetic error into the closed-form route (self-test)
    #[arg(long)]
    perturb_formula: bool,
}

/// Command failure carrying the exit code; 2 for usage/input problems.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout, swallowing io errors (a closed pipe must not panic).
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Classify(args) => cmd_classify(args),
        Command::Perturb(args) => cmd_perturb(args),
        Command::Entropy(args) => cmd_entropy(args),
        Command::Dissipation(args) => cmd_dissipation(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Table2 => cmd_table2(),
        Command::Verify(args) => cmd_verify(args),
    }
}

#[derive(Deserialize)]
struct ImpedanceSpec {
    shift: f64,
    masses: Vec<(f64, f64)>,
}

/// `M`, `M^Q`, `M_{kappa}` or `M^Q_{kappa}` depending on shift and family.
fn class_label(class: &DonoghueClass) -> String {
    let mut label = String::from("M");
    if class.is_perturbed() {
        label.push('^');
        label.push_str(&trim6(class.shift));
    }
    if class.family != Family::M {
        label.push_str("_{");
        label.push_str(&trim6(class.kappa));
        label.push('}');
    }
    label
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, Failure> {
    let text = match args.spec {
        Some(text) => text,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let spec: ImpedanceSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("invalid impedance spec: {e}")))?;
    let v = ImpedanceFunction::from_pairs(spec.shift, &spec.masses)?;
    let class = classify(&v).map_err(|e| match e {
        Error::DegenerateMeasure => {
            Failure::usage("degenerate measure: the spec lists no point masses")
        }
        other => other.into(),
    })?;
    emit(&format!(
        "family={} a={} kappa={} Q={} (class {})\n",
        class.family,
        trim6(class.a),
        trim6(class.kappa),
        trim6(class.shift),
        class_label(&class)
    ));
    Ok(ExitCode::SUCCESS)
}

/// Class parameters resolved from `--family` plus `--kappa` or `--entropy`.
#[derive(Copy, Clone)]
enum ResolvedClass {
    M,
    MKappa { a: f64, s0: Entropy },
    MKappaInv { a: f64, s0: Entropy },
}

fn resolve_class(spec: &ClassSpec) -> Result<ResolvedClass, Failure> {
    if spec.family == FamilyArg::M {
        if spec.kappa.is_some_and(|k| k != 0.0) {
            return Err(Failure::usage("family m admits only kappa = 0"));
        }
        if spec.entropy.is_some() {
            return Err(Failure::usage(
                "family m has infinite unperturbed entropy; omit --entropy",
            ));
        }
        return Ok(ResolvedClass::M);
    }
    let (a, s0) = match (spec.kappa, spec.entropy) {
        (Some(kappa), None) => {
            if !kappa.is_finite() || kappa <= 0.0 || kappa >= 1.0 {
                return Err(Failure::usage(format!(
                    "kappa must lie strictly between 0 and 1 (got {kappa})"
                )));
            }
            (
                a_from_kappa(spec.family.family(), kappa)?,
                entropy_from_kappa(kappa)?,
            )
        }
        (None, Some(s)) => {
            if !s.is_finite() || s <= 0.0 {
                return Err(Failure::usage(format!(
                    "entropy must be a finite positive value (got {s})"
                )));
            }
            let s0 = Entropy::Finite(s);
            let a = match spec.family {
                FamilyArg::MKappa => a_from_entropy_mkappa(s0)?,
                FamilyArg::MKappaInv => a_from_entropy_mkappa_inv(s0)?,
                FamilyArg::M => unreachable!(),
            };
            (a, s0)
        }
        (None, None) => {
            return Err(Failure::usage(
                "this family needs --kappa or --entropy to fix the class",
            ));
        }
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    Ok(match spec.family {
        FamilyArg::MKappa => ResolvedClass::MKappa { a, s0 },
        FamilyArg::MKappaInv => ResolvedClass::MKappaInv { a, s0 },
        FamilyArg::M => unreachable!(),
    })
}

fn von_neumann_pair(class: ResolvedClass, q: f64) -> Result<VonNeumannPair, Failure> {
    Ok(match class {
        ResolvedClass::M => {
            if q == 0.0 {
                class_m_limit()
            } else {
                perturb_class_m(q)?
            }
        }
        ResolvedClass::MKappa { a, .. } => {
            if q == 0.0 {
                mkappa_limit(a)?
            } else {
                let kappa = kappa_mkappa(a, q)?;
                VonNeumannPair {
                    kappa,
                    u: u_of_q(a, q, kappa)?,
                }
            }
        }
        ResolvedClass::MKappaInv { a, .. } => {
            if q == 0.0 {
                mkappa_inv_limit(a)?
            } else {
                let kappa = kappa_mkappa_inv(a, q)?;
                VonNeumannPair {
                    kappa,
                    u: u_of_q(a, q, kappa)?,
                }
            }
        }
    })
}

fn entropy_at(class: ResolvedClass, q: f64) -> Result<Entropy, Failure> {
    Ok(match class {
        ResolvedClass::M => {
            if q == 0.0 {
                class_m_entropy_limit()
            } else {
                entropy_class_m_q(q)?
            }
        }
        ResolvedClass::MKappa { a, s0 } => {
            if q == 0.0 {
                unperturbed_limits(a)?.0
            } else {
                entropy_mkappa_q(s0, q)?
            }
        }
        ResolvedClass::MKappaInv { a, s0 } => {
            if q == 0.0 {
                unperturbed_limits(a)?.0
            } else {
                entropy_mkappa_inv_q(s0, q)?
            }
        }
    })
}

fn dissipation_at(class: ResolvedClass, q: f64) -> Result<f64, Failure> {
    Ok(match class {
        ResolvedClass::M => dissipation_class_m_q(q).value,
        ResolvedClass::MKappa { a, s0 } => {
            if q == 0.0 {
                unperturbed_limits(a)?.1.value
            } else {
                dissipation_mkappa_q(s0, q)?.value
            }
        }
        ResolvedClass::MKappaInv { a, s0 } => {
            if q == 0.0 {
                unperturbed_limits(a)?.1.value
            } else {
                dissipation_mkappa_inv_q(s0, q)?.value
            }
        }
    })
}

fn cmd_perturb(args: PointArgs) -> Result<ExitCode, Failure> {
    let class = resolve_class(&args.class)?;
    let pair = von_neumann_pair(class, args.q)?;
    emit(&format!(
        "kappa={} U={}\n",
        sig12(pair.kappa),
        complex12(pair.u.re, pair.u.im)
    ));
    Ok(ExitCode::SUCCESS)
}

fn cmd_entropy(args: PointArgs) -> Result<ExitCode, Failure> {
    let class = resolve_class(&args.class)?;
    let s = entropy_at(class, args.q)?;
    emit(&format!("entropy={}\n", sig12(s.to_f64())));
    Ok(ExitCode::SUCCESS)
}

fn cmd_dissipation(args: PointArgs) -> Result<ExitCode, Failure> {
    let class = resolve_class(&args.class)?;
    let d = dissipation_at(class, args.q)?;
    emit(&format!("dissipation={}\n", sig12(d)));
    Ok(ExitCode::SUCCESS)
}

struct CurveRow {
    q: f64,
    kappa: f64,
    entropy: Entropy,
    dissipation: f64,
}

fn curve_row(class: ResolvedClass, q: f64) -> Result<CurveRow, Failure> {
    let kappa = match class {
        ResolvedClass::M if q == 0.0 => 0.0,
        ResolvedClass::M => perturb_class_m(q)?.kappa,
        ResolvedClass::MKappa { a, .. } if q == 0.0 => mkappa_limit(a)?.kappa,
        ResolvedClass::MKappa { a, .. } => kappa_mkappa(a, q)?,
        ResolvedClass::MKappaInv { a, .. } if q == 0.0 => mkappa_inv_limit(a)?.kappa,
        ResolvedClass::MKappaInv { a, .. } => kappa_mkappa_inv(a, q)?,
    };
    let entropy = entropy_at(class, q)?;
    let dissipation = dissipation_at(class, q)?;
    debug_assert!(
        (dissipation - dissipation_from_entropy(entropy).value).abs() < 1e-12,
        "curve row out of self-consistency at q={q}"
    );
    Ok(CurveRow {
        q,
        kappa,
        entropy,
        dissipation,
    })
}

fn render_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("Q,kappa,entropy,dissipation\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            sig12(row.q),
            sig12(row.kappa),
            sig12(row.entropy.to_f64()),
            sig12(row.dissipation)
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    q: f64,
    kappa: f64,
    entropy: serde_json::Value,
    dissipation: f64,
}

fn render_json(rows: &[CurveRow]) -> Result<String, Failure> {
    let values: Vec<JsonRow> = rows
        .iter()
        .map(|row| JsonRow {
            q: row.q,
            kappa: row.kappa,
            entropy: match row.entropy {
                Entropy::Finite(s) => serde_json::Value::from(s),
                Entropy::Infinite => serde_json::Value::from("inf"),
            },
            dissipation: row.dissipation,
        })
        .collect();
    let text = serde_json::to_string_pretty(&values)
        .map_err(|e| Failure::usage(format!("cannot serialize rows: {e}")))?;
    Ok(text + "\n")
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode, Failure> {
    if args.steps < 2 {
        return Err(Failure::usage("steps must be at least 2"));
    }
    if !args.q_min.is_finite() || !args.q_max.is_finite() || args.q_min >= args.q_max {
        return Err(Failure::usage("q-min must be strictly below q-max"));
    }
    let class = resolve_class(&args.class)?;
    let span = args.q_max - args.q_min;
    let mut rows = Vec::with_capacity(args.steps);
    for i in 0..args.steps {
        let mut q = args.q_min + span * i as f64 / (args.steps - 1) as f64;
        if q.abs() < Q_SNAP {
            q = 0.0;
        }
        rows.push(curve_row(class, q)?);
    }
    let text = match args.format {
        FormatArg::Csv => render_csv(&rows),
        FormatArg::Json => render_json(&rows)?,
    };
    match args.output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => emit(&text),
    }
    Ok(ExitCode::SUCCESS)
}

fn table_entry(s: Entropy, d: f64) -> (String, String) {
    let s_text = match s {
        Entropy::Finite(s) => format!("{s:.4}"),
        Entropy::Infinite => "inf".to_string(),
    };
    (s_text, format!("{d:.4}"))
}

fn cmd_table2() -> Result<ExitCode, Failure> {
    let unperturbed_m = table_entry(
        class_m_entropy_limit(),
        dissipation_from_entropy(class_m_entropy_limit()).value,
    );
    let shifted_m = table_entry(
        entropy_class_m_q(1.0)?,
        dissipation_class_m_q(1.0).value,
    );
    let a = a_from_kappa(Family::MKappa, 1.0 / 3.0)?;
    let (s_vertex, d_vertex) = unperturbed_limits(a)?;
    let unperturbed_third = table_entry(s_vertex, d_vertex.value);
    let s0 = entropy_from_kappa(1.0 / 3.0)?;
    let shifted_third = table_entry(
        entropy_mkappa_q(s0, 1.0)?,
        dissipation_mkappa_q(s0, 1.0)?.value,
    );

    let mut out = format!("{:<10} {:<8} {}\n", "class", "S", "D");
    for (label, (s, d)) in [
        ("M", unperturbed_m),
        ("M^1", shifted_m),
        ("M_{1/3}", unperturbed_third),
        ("M^1_{1/3}", shifted_third),
    ] {
        out.push_str(&format!("{label:<10} {s:<8} {d}\n"));
    }
    emit(&out);
    Ok(ExitCode::SUCCESS)
}

struct Offender {
    family: Family,
    a: f64,
    q: f64,
    deviation: f64,
}

/// Closed-form (κ, S, D) for a verify grid point; the optional fault shifts
/// κ off the true value so the harness can prove it would catch a regression.
fn closed_point(family: Family, a: f64, q: f64, fault: f64) -> Result<(f64, f64, f64), Failure> {
    Ok(match family {
        Family::M => (
            perturb_class_m(q)?.kappa + fault,
            entropy_class_m_q(q)?.to_f64(),
            dissipation_class_m_q(q).value,
        ),
        Family::MKappa => {
            let s0 = Entropy::Finite(2.0 * a.atanh());
            (
                kappa_mkappa(a, q)? + fault,
                entropy_mkappa_q(s0, q)?.to_f64(),
                dissipation_mkappa_q(s0, q)?.value,
            )
        }
        Family::MKappaInv => {
            let s0 = Entropy::Finite(2.0 * (1.0 / a).atanh());
            (
                kappa_mkappa_inv(a, q)? + fault,
                entropy_mkappa_inv_q(s0, q)?.to_f64(),
                dissipation_mkappa_inv_q(s0, q)?.value,
            )
        }
    })
}

fn verify_family(
    family: Family,
    a_values: &[f64],
    fault: f64,
    offenders: &mut Vec<Offender>,
) -> Result<f64, Failure> {
    let mut max_deviation = 0.0f64;
    for &a in a_values {
        for q in VERIFY_Q {
            let (kappa, s, d) = closed_point(family, a, q, fault)?;
            let kappa_ref = kappa_oracle(a, q)?;
            let s_ref = entropy_oracle(a, q)?.to_f64();
            let d_ref = 1.0 - kappa_ref * kappa_ref;
            let deviation = (kappa - kappa_ref)
                .abs()
                .max((s - s_ref).abs())
                .max((d - d_ref).abs());
            if deviation > VERIFY_TOLERANCE {
                offenders.push(Offender {
                    family,
                    a,
                    q,
                    deviation,
                });
            }
            max_deviation = max_deviation.max(deviation);
        }
    }
    Ok(max_deviation)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Failure> {
    let selected: Vec<Family> = match &args.families {
        Some(list) => list.iter().map(|f| f.family()).collect(),
        None => vec![Family::M, Family::MKappa, Family::MKappaInv],
    };
    let fault = if args.perturb_formula {
        INJECTED_FAULT
    } else {
        0.0
    };
    let mut offenders = Vec::new();
    let mut report = String::new();
    for family in selected {
        let a_values: &[f64] = match family {
            Family::M => &[1.0],
            Family::MKappa => &VERIFY_A_MKAPPA,
            Family::MKappaInv => &VERIFY_A_MKAPPA_INV,
        };
        let max_deviation = verify_family(family, a_values, fault, &mut offenders)?;
        report.push_str(&format!(
            "family={} points={} max_deviation={:.3e}\n",
            family,
            a_values.len() * VERIFY_Q.len(),
            max_deviation
        ));
    }
    let code = if offenders.is_empty() {
        report.push_str(&format!("verify: PASS (tolerance {VERIFY_TOLERANCE:.0e})\n"));
        ExitCode::SUCCESS
    } else {
        for o in &offenders {
            report.push_str(&format!(
                "  offender family={} a={} q={} deviation={:.3e}\n",
                o.family, o.a, o.q, o.deviation
            ));
        }
        report.push_str(&format!("verify: FAIL (tolerance {VERIFY_TOLERANCE:.0e})\n"));
        ExitCode::from(1)
    };
    emit(&report);
    Ok(code)
}
