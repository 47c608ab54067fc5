mod output;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symvol_core::algebra::{parse_rational, EvenPolynomial, Rational};
use symvol_core::intersections::IntersectionKey;
use symvol_core::methods::Registry;
use symvol_core::ribbon::{enumerate_with_limit, DEFAULT_HALF_EDGE_LIMIT, HALF_EDGE_LIMIT_ENV};
use symvol_core::verify::verify;
use symvol_core::volumes::VolumeKey;
use symvol_core::Error;

use output::*;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "symvol", version, about = "Exact volumes of moduli spaces of curves, cross-checked three ways")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also print truncated decimal approximations, marked with `~`.
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Vol_{g,n} as a polynomial in L_i^2, optionally evaluated.
    Volume {
        #[arg(short)]
        g: u32,
        #[arg(short)]
        n: usize,
        /// Comma-separated perimeters, e.g. `3,4,5,6` or `1/2,3`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eval: Option<Vec<String>>,
        #[arg(long, default_value = "recursion")]
        method: String,
    },
    /// A psi-class intersection number <tau_d1 ... tau_dn>_g.
    Intersect {
        #[arg(short)]
        g: u32,
        #[arg(short, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// The Airy-curve correlator W_{g,n}.
    Correlator {
        #[arg(short)]
        g: u32,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PathChoice::Laplace)]
        path: PathChoice,
    },
    /// Ribbon graphs of type (g, n) up to equivalence, with automorphism orders.
    Graphs {
        #[arg(short)]
        g: u32,
        #[arg(short)]
        n: usize,
        /// Only trivalent graphs.
        #[arg(long)]
        trivalent: bool,
        /// Largest half-edge count to enumerate.
        #[arg(long, env = HALF_EDGE_LIMIT_ENV, default_value_t = DEFAULT_HALF_EDGE_LIMIT)]
        max_half_edges: usize,
    },
    /// Cross-check every path for all stable (g, n) with 2g - 2 + n <= c.
    Verify {
        #[arg(short, long = "max-complexity")]
        c: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Laplace,
    Eo,
    Both,
}

/// Result of a subcommand: the document, its text form, and the exit status.
struct Outcome {
    document: OutputDocument,
    text: Vec<String>,
    code: u8,
}

fn usage(msg: impl std::fmt::Display) -> (u8, String) {
    (EXIT_USAGE, msg.to_string())
}

fn marked(x: &Exact) -> Option<String> {
    x.approx.as_ref().map(|a| format!("~ {a}"))
}

fn volume_factor(i: usize, d: u32) -> Option<String> {
    (d > 0).then(|| format!("L{}^{}", i + 1, 2 * d))
}

fn correlator_factor(i: usize, d: u32) -> Option<String> {
    Some(format!("z{}^-{}", i + 1, 2 * d + 2))
}

fn cmd_volume(g: u32, n: usize, eval: Option<Vec<String>>, method: &str, approx: bool) -> Result<Outcome, (u8, String)> {
    let registry = Registry::standard();
    let path = registry.volume(method).map_err(usage)?;
    let point: Option<Vec<Rational>> =
        eval.as_ref().map(|v| v.iter().map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()).transpose().map_err(usage)?;
    if let Some(p) = &point {
        if p.len() != n {
            return Err(usage(Error::PointLength { got: p.len(), expected: n }));
        }
    }
    let metadata = Metadata::new(Some(g), Some(n));
    if !VolumeKey::new(g, n).is_stable() {
        let zero = Series::new(&EvenPolynomial::zero(n), approx);
        eprintln!("warning: ({g}, {n}) is unstable; its volume is the zero polynomial");
        let payload = VolumePayload { method: method.to_string(), polynomial: Some(zero), evaluation: None };
        return Ok(Outcome {
            document: OutputDocument { kind: Kind::Volume, metadata, payload: Payload::Volume(payload) },
            text: vec!["0".into()],
            code: EXIT_USAGE,
        });
    }
    let polynomial = match path.polynomial(g, n) {
        Ok(p) => Some(Series::new(&p, approx)),
        Err(Error::PointwiseOnly(_)) if point.is_some() => None,
        Err(Error::PointwiseOnly(name)) => return Err(usage(format!("method `{name}` needs --eval"))),
        Err(e) => return Err(usage(e)),
    };
    let evaluation = match &point {
        Some(p) => {
            let value = path.evaluate(g, n, p).map_err(usage)?;
            Some(Evaluation { point: p.iter().map(ToString::to_string).collect(), value: Exact::new(&value, approx) })
        }
        None => None,
    };
    let mut text = Vec::new();
    if let Some(s) = &polynomial {
        text.push(s.text.clone());
        if approx {
            text.push(format!("~ {}", approx_text(s, volume_factor)));
        }
    }
    if let Some(e) = &evaluation {
        text.push(e.value.value.clone());
        text.extend(marked(&e.value));
    }
    let payload = VolumePayload { method: method.to_string(), polynomial, evaluation };
    Ok(Outcome { document: OutputDocument { kind: Kind::Volume, metadata, payload: Payload::Volume(payload) }, text, code: 0 })
}

fn cmd_intersect(g: u32, d: Vec<u32>, approx: bool) -> Result<Outcome, (u8, String)> {
    let key = IntersectionKey::new(g, &d);
    let value = symvol_core::intersections::intersection(g, &d);
    let matches = key.dimension_matches();
    let exact = Exact::new(&value, approx);
    let mut text = vec![if matches { exact.value.clone() } else { format!("{} (dimension mismatch)", exact.value) }];
    text.extend(marked(&exact));
    let payload = IntersectionPayload { degrees: d.clone(), value: exact, dimension_match: matches };
    Ok(Outcome {
        document: OutputDocument {
            kind: Kind::Intersections,
            metadata: Metadata::new(Some(g), Some(d.len())),
            payload: Payload::Intersections(payload),
        },
        text,
        code: 0,
    })
}

fn cmd_correlator(g: u32, n: usize, path: PathChoice, approx: bool) -> Result<Outcome, (u8, String)> {
    let registry = Registry::standard();
    let names: &[&str] = match path {
        PathChoice::Laplace => &["laplace"],
        PathChoice::Eo => &["eo"],
        PathChoice::Both => &["laplace", "eo"],
    };
    let mut computed = Vec::new();
    for name in names {
        let w = registry.correlator(name).map_err(usage)?.correlator(g, n).map_err(usage)?;
        computed.push((name.to_string(), w));
    }
    let matched = (computed.len() > 1).then(|| computed.windows(2).all(|w| w[0].1 == w[1].1));
    let mut text = Vec::new();
    let mut paths = BTreeMap::new();
    for (name, w) in &computed {
        let s = Series::new(w, approx);
        if matched.is_none() || text.is_empty() || matched == Some(false) {
            let prefix = if matched == Some(false) { format!("{name}: ") } else { String::new() };
            text.push(format!("{prefix}{}", s.text));
            if approx {
                text.push(format!("~ {}", approx_text(&s, correlator_factor)));
            }
        }
        paths.insert(name.clone(), s);
    }
    let code = match matched {
        Some(true) => {
            text.push("MATCH".into());
            0
        }
        Some(false) => {
            text.push("MISMATCH".into());
            EXIT_MISMATCH
        }
        None => 0,
    };
    let payload = CorrelatorPayload { paths, matched };
    Ok(Outcome {
        document: OutputDocument { kind: Kind::Correlator, metadata: Metadata::new(Some(g), Some(n)), payload: Payload::Correlator(payload) },
        text,
        code,
    })
}

fn cmd_graphs(g: u32, n: usize, trivalent: bool, limit: usize) -> Result<Outcome, (u8, String)> {
    let classes = enumerate_with_limit(g, n, trivalent, limit).map_err(|e| match e {
        Error::ResourceLimit { needed, limit } => usage(format!(
            "type ({g}, {n}) needs up to {needed} half-edges, above the limit of {limit}; raise it with --max-half-edges or {HALF_EDGE_LIMIT_ENV}"
        )),
        other => usage(other),
    })?;
    let payload = GraphsPayload::new(&classes, trivalent);
    let mut text = vec![format!("{} classes, {} labeled graphs", payload.classes, payload.records.len())];
    for r in &payload.records {
        text.push(serde_json::to_string(r).expect("records serialize"));
    }
    Ok(Outcome {
        document: OutputDocument { kind: Kind::Graphs, metadata: Metadata::new(Some(g), Some(n)), payload: Payload::Graphs(payload) },
        text,
        code: 0,
    })
}

fn cmd_verify(c: u32, seed: u64) -> Result<Outcome, (u8, String)> {
    let report = verify(&Registry::standard(), c, seed).map_err(usage)?;
    let mut text = vec![format!("{:<6} {:<8} {:<14} {}", "status", "(g,n)", "check", "detail")];
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        text.push(format!("{:<6} {:<8} {:<14} {}", status, format!("({},{})", check.g, check.n), check.check, check.detail));
    }
    let failures = report.failures().count();
    text.push(if failures == 0 { format!("all {} checks passed", report.checks.len()) } else { format!("{failures} checks failed") });
    let code = if failures == 0 { 0 } else { EXIT_MISMATCH };
    Ok(Outcome {
        document: OutputDocument { kind: Kind::VerifyReport, metadata: Metadata::new(None, None), payload: Payload::VerifyReport(report) },
        text,
        code,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Global { json, approx } = cli.global;
    let result = match cli.command {
        Command::Volume { g, n, eval, method } => cmd_volume(g, n, eval, &method, approx),
        Command::Intersect { g, d } => cmd_intersect(g, d, approx),
        Command::Correlator { g, n, path } => cmd_correlator(g, n, path, approx),
        Command::Graphs { g, n, trivalent, max_half_edges } => cmd_graphs(g, n, trivalent, max_half_edges),
        Command::Verify { c, seed } => cmd_verify(c, seed),
    };
    match result {
        Ok(outcome) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.document).expect("documents serialize"));
            } else {
                for line in &outcome.text {
                    println!("{line}");
                }
            }
            ExitCode::from(outcome.code)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
