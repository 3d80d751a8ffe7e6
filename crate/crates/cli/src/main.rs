use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mbar_core::bigness::{certify_with, sweep_with, BignessCertificate};
use mbar_core::intersection::{gamma_dot, rigid_component};
use mbar_core::picard::CoarseDivisor;
use mbar_core::pullback::{pullback_multi, symmetric_pullback, FarkasAveraging};
use mbar_core::rational::{format_q, qi};
use mbar_core::registry::{averaging_strategies, named_classes, DEFAULT_AVERAGING};
use mbar_core::reid_tai::{
    classify, classify_elliptic_tail, reduce_then_lift, table1_catalog, CyclicAction, RootOfUnity,
};
use mbar_core::{DivisorClass, SymDivisorClass};
use serde_json::json;

/// Appends a line to the output buffer; writing to a `String` cannot fail.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a string")
    };
}

#[derive(Parser)]
#[command(
    name = "mbar",
    version,
    about = "Exact divisor-class computations on moduli of pointed curves"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named class, or list the registered names.
    Class {
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        #[arg(long, default_value_t = 3)]
        g: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Use the S_n-symmetric basis.
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        list: bool,
    },
    /// Pull a class back along a forgetful map to n markings.
    Pullback {
        #[command(flatten)]
        source: ClassSource,
        #[arg(long)]
        n: u32,
        /// Target markings kept as markings 1, 2, ... (full basis only);
        /// defaults to 1..m.
        #[arg(long, value_delimiter = ',')]
        kept: Option<Vec<u32>>,
    },
    /// Intersection number with the elliptic-tail test curve in genus 3.
    IntersectGamma {
        #[command(flatten)]
        source: ClassSource,
    },
    /// Coefficient of the elliptic-tail divisor in the rigid part of mK.
    RigidComponent {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: i64,
    },
    /// Certify bigness of the canonical class of M_{3,n}.
    BignessCertify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = DEFAULT_AVERAGING)]
        averaging: String,
    },
    /// Certify a range of n.
    BignessSweep {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Exit 1 if any certificate fails.
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value = DEFAULT_AVERAGING)]
        averaging: String,
    },
    /// Ages, reduction and classification of a diagonal cyclic action.
    ReidTaiClassify {
        #[arg(long)]
        order: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        /// Vanishing orders b_1, ..., b_d for the lifting test.
        #[arg(long, value_delimiter = ',')]
        vanishing: Option<Vec<u32>>,
        /// Pluricanonical weight for the lifting test.
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Classify an elliptic-tail eigenvalue pattern, given as fractions of a turn.
    EllipticTailClassify {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        eigenvalues: Vec<String>,
    },
    /// Catalogue of automorphism cases of low-genus curves.
    Table1,
}

#[derive(Args)]
struct ClassSource {
    /// A named class; see `class --list`.
    #[arg(long, conflicts_with = "input")]
    name: Option<String>,
    /// JSON class file, or `-` for standard input.
    #[arg(long, required_unless_present = "name")]
    input: Option<String>,
    #[arg(long, default_value_t = 3)]
    g: u32,
    /// Markings of a named class.
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    symmetric: bool,
    /// Multiply the class by this integer.
    #[arg(long, default_value_t = 1)]
    times: i64,
}

enum Class {
    Full(DivisorClass),
    Sym(SymDivisorClass),
}

impl Class {
    fn json(&self) -> String {
        match self {
            Class::Full(c) => c.to_json(),
            Class::Sym(c) => c.to_json(),
        }
    }

    fn text(&self) -> String {
        match self {
            Class::Full(c) => c.to_string(),
            Class::Sym(c) => c.to_string(),
        }
    }
}

/// Failures that are not mathematical verdicts.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Run = Result<bool, UsageError>;

fn load(source: &ClassSource) -> Result<Class, UsageError> {
    let class = match (&source.name, &source.input) {
        (Some(name), _) => {
            let named = named_classes().get(name)?;
            if source.symmetric {
                Class::Sym(named.symmetric(source.g, source.m)?)
            } else {
                Class::Full(named.full(source.g, source.m)?)
            }
        }
        (None, Some(path)) => {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                buf
            } else {
                fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?
            };
            if source.symmetric {
                Class::Sym(SymDivisorClass::from_json(&text)?)
            } else {
                Class::Full(DivisorClass::from_json(&text)?)
            }
        }
        (None, None) => return Err(UsageError("either --name or --input is required".into())),
    };
    let factor = qi(source.times);
    Ok(match class {
        Class::Full(c) => Class::Full(c.scaled(&factor)),
        Class::Sym(c) => Class::Sym(c.scaled(&factor)),
    })
}

fn averaging(name: &str) -> Result<&'static dyn FarkasAveraging, UsageError> {
    Ok(averaging_strategies().get(name)?)
}

fn print_certificate(out: &mut String, cert: &BignessCertificate) {
    emit!(out, "n: {}", cert.n);
    emit!(out, "verdict: {}", cert.verdict);
    emit!(out, "s: {}", format_q(&cert.s));
    emit!(out, "t: {}", format_q(&cert.t));
    let eps = cert
        .epsilon_max
        .as_ref()
        .map_or("none".to_string(), format_q);
    emit!(out, "epsilon_max: {eps}");
    if let Some(b) = &cert.binding {
        emit!(out, "binding: {b}");
    }
    if let Some(v) = &cert.violated {
        emit!(out, "violated: {} = {}", v.constraint, format_q(&v.value));
    }
    emit!(out, "averaging: {}", cert.averaging);
    for (label, table) in [
        ("coefficient", &cert.coefficients),
        ("big part", &cert.big_part),
        ("multiplier", &cert.multipliers),
    ] {
        for (key, value) in &table.0 {
            emit!(out, "{label} {key}: {}", format_q(value));
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Run {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Class { list: true, .. } => {
            for named in named_classes().iter() {
                emit!(out, "{:<14} {}", named.name(), named.description());
            }
            Ok(true)
        }
        Command::Class {
            name,
            g,
            n,
            symmetric,
            ..
        } => {
            let source = ClassSource {
                name,
                input: None,
                g,
                m: n,
                symmetric,
                times: 1,
            };
            let class = load(&source)?;
            emit!(out, "{}", if json { class.json() } else { class.text() });
            Ok(true)
        }
        Command::Pullback { source, n, kept } => {
            let pulled = match load(&source)? {
                Class::Full(c) => {
                    let kept = kept.unwrap_or_else(|| (1..=c.index().markings()).collect());
                    Class::Full(pullback_multi(&c, &kept, n)?)
                }
                Class::Sym(c) => {
                    if kept.is_some() {
                        return Err(UsageError(
                            "--kept applies to full-basis classes only".into(),
                        ));
                    }
                    Class::Sym(symmetric_pullback(&c, n)?)
                }
            };
            emit!(out, "{}", if json { pulled.json() } else { pulled.text() });
            Ok(true)
        }
        Command::IntersectGamma { source } => {
            let value = match load(&source)? {
                Class::Full(c) => gamma_dot(&c)?,
                Class::Sym(c) => gamma_dot(&c)?,
            };
            if json {
                emit!(out, "{}", json!({ "gamma_dot": format_q(&value) }));
            } else {
                emit!(out, "{}", format_q(&value));
            }
            Ok(true)
        }
        Command::RigidComponent { n, m } => {
            let class = named_classes()
                .get("canonical")?
                .symmetric(3, n)?
                .scaled(&qi(m));
            let value = rigid_component(&class, CoarseDivisor::elliptic_tail())?
                .ok_or_else(|| UsageError("no elliptic-tail component".into()))?;
            if json {
                emit!(
                    out,
                    "{}",
                    json!({ "n": n, "m": m, "delta_1_0": format_q(&value) })
                );
            } else {
                emit!(out, "{}", format_q(&value));
            }
            Ok(true)
        }
        Command::BignessCertify {
            n,
            averaging: route,
        } => {
            let cert = certify_with(n, averaging(&route)?)?;
            if json {
                emit!(out, "{}", cert.to_json());
            } else {
                print_certificate(out, &cert);
            }
            Ok(cert.passed())
        }
        Command::BignessSweep {
            from,
            to,
            strict,
            averaging: route,
        } => {
            if from > to {
                return Err(UsageError(format!("empty range {from}..{to}")));
            }
            let certs = sweep_with(from, to, averaging(&route)?)?;
            if json {
                emit!(out, "{}", serde_json::to_string_pretty(&certs)?);
            } else {
                for c in &certs {
                    let eps = c.epsilon_max.as_ref().map_or("-".to_string(), format_q);
                    let why = c
                        .violated
                        .as_ref()
                        .map(|v| format!("  {} = {}", v.constraint, format_q(&v.value)))
                        .unwrap_or_default();
                    emit!(out, "{:>5}  {:<4}  epsilon_max {eps}{why}", c.n, c.verdict);
                }
            }
            Ok(!strict || certs.iter().all(BignessCertificate::passed))
        }
        Command::ReidTaiClassify {
            order,
            exponents,
            vanishing,
            m,
        } => {
            let action = CyclicAction::new(order, exponents)?;
            let classification = classify(&action);
            let lift = vanishing
                .map(|b| reduce_then_lift(&action, m, b))
                .transpose()?;
            if json {
                let mut record = serde_json::to_value(&classification)?;
                if let Some(lift) = &lift {
                    record["lifting"] = serde_json::to_value(lift)?;
                }
                emit!(out, "{}", serde_json::to_string_pretty(&record)?);
            } else {
                emit!(out, "{}", classification.summary);
                if let Some(lift) = &lift {
                    let verdict = if lift.report.lifts {
                        "lifts"
                    } else {
                        "does not lift"
                    };
                    emit!(out, "m = {m}: {verdict} ({})", lift.convention);
                }
            }
            Ok(lift.is_none_or(|l| l.report.lifts))
        }
        Command::EllipticTailClassify { eigenvalues } => {
            let pattern = eigenvalues
                .iter()
                .map(|s| s.trim().parse::<RootOfUnity>())
                .collect::<Result<Vec<_>, _>>()?;
            let tail = classify_elliptic_tail(&pattern)?;
            if json {
                emit!(out, "{}", serde_json::to_string_pretty(&tail)?);
            } else {
                let action = CyclicAction::from_eigenvalues(&pattern)?;
                emit!(out, "{}", classify(&action).summary);
            }
            Ok(true)
        }
        Command::Table1 => {
            let rows = table1_catalog();
            if json {
                emit!(out, "{}", serde_json::to_string_pretty(&rows)?);
            } else {
                for r in &rows {
                    let eig: Vec<String> = r.eigenvalues.iter().map(|z| z.to_string()).collect();
                    emit!(
                        out,
                        "{:>2}  g={} fixed={} pairs={}  curve: {}  automorphism: {}  age {}  eigenvalues ({})",
                        r.case,
                        r.genus,
                        r.fixed_points,
                        r.swapped_pairs,
                        r.curve,
                        r.automorphism,
                        format_q(&r.age),
                        eig.join(", ")
                    );
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(cli, &mut out);
    // a closed pipe is the reader's choice, not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match status {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
