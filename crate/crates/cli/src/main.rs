use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qmodular::cert::{self, CertError, DEFAULT_CAP, DEFAULT_SEED};
use qmodular::grp::{self, Generator, Verdict};
use qmodular::qrat::{self, Fraction};
use qmodular::{CycRing, SweepReport};

mod render;

const THREADS_VAR: &str = "QMODULAR_THREADS";
/// Large enough that every `S(ζ_5)` value appears in the first half.
const DEFAULT_BUDGET: i64 = 200;

#[derive(Parser, Debug)]
#[command(name = "qmodular", version, about = "q-deformed rationals and the q-deformed modular group at roots of unity")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit the timestamp from the output metadata.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Write the document to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The q-rational [r/s]_q with its continued fraction, ♭-pair and Jones polynomial.
    Qrat {
        /// A fraction `r/s` or an integer.
        #[arg(allow_hyphen_values = true)]
        frac: String,
        /// Print only the normalized Jones polynomial.
        #[arg(long)]
        jones: bool,
        /// Also evaluate at ζ_N; may be repeated.
        #[arg(long = "eval-at", value_name = "N")]
        eval_at: Vec<u64>,
    },
    /// Closure of G_q(ζ_n) with its element table.
    Group {
        #[arg(long)]
        zeta: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Finiteness certificate for G_q(ζ_n).
    Certify {
        #[arg(long)]
        zeta: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Re-checks a certificate written by `certify`.
    Verify { path: PathBuf },
    /// Sweeps one family of laws.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    property: Property,
    #[arg(long, default_value_t = 100)]
    max_den: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Denominator budget for `value-sets`.
    #[arg(long)]
    budget: Option<i64>,
    /// Number of sampled words; the default depends on the property.
    #[arg(long)]
    words: Option<usize>,
    /// Restrict `value-sets` to one conductor.
    #[arg(long)]
    zeta: Option<u64>,
    /// Word-length bound for attainment in `trace-zeta6`.
    #[arg(long, default_value_t = 12)]
    depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    STables,
    DivLaws,
    ValueSets,
    AuxLaws,
    TraceZeta6,
}

/// Bad user input; mapped to exit code 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// A finished document and whether every check in it passed.
struct Outcome {
    doc: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    let Outcome { doc, ok } = match &cli.command {
        Command::Qrat { frac, jones, eval_at } => cmd_qrat(frac, *jones, eval_at)?,
        Command::Group { zeta, cap } => cmd_group(*zeta, *cap)?,
        Command::Certify { zeta, cap } => cmd_certify(*zeta, *cap)?,
        Command::Verify { path } => cmd_verify(path)?,
        Command::Scan(args) => cmd_scan(args)?,
    };
    let doc = json!({ "meta": meta(cli), "result": doc });
    let text = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
        Format::Text => render::text(&doc),
    };
    match &cli.global.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ok)
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| input_err(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    if threads == 0 {
        return Err(input_err(format!("{THREADS_VAR} must be positive")));
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Command name, effective parameters and defaults.
fn meta(cli: &Cli) -> Value {
    let (command, params) = match &cli.command {
        Command::Qrat { frac, jones, eval_at } => {
            ("qrat", json!({ "frac": frac, "jones": jones, "eval_at": eval_at }))
        }
        Command::Group { zeta, cap } => ("group", json!({ "zeta": zeta, "cap": cap })),
        Command::Certify { zeta, cap } => ("certify", json!({ "zeta": zeta, "cap": cap })),
        Command::Verify { path } => ("verify", json!({ "path": path.display().to_string() })),
        Command::Scan(a) => (
            "scan",
            json!({
                "property": format!("{:?}", a.property),
                "max_den": a.max_den,
                "seed": a.seed,
                "budget": a.budget,
                "words": a.words,
                "zeta": a.zeta,
                "depth": a.depth,
            }),
        ),
    };
    let mut meta = json!({
        "tool": "qmodular",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "defaults": {
            "cap": DEFAULT_CAP,
            "max_den": 100,
            "budget": DEFAULT_BUDGET,
            "seed": DEFAULT_SEED,
            "format": "json",
        },
    });
    if !cli.global.no_timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        meta["timestamp"] = json!(secs);
    }
    meta
}

fn ring(n: u64) -> Result<CycRing> {
    CycRing::try_new(n).map_err(|e| input_err(format!("--zeta: {e}")))
}

fn cmd_qrat(frac: &str, jones_only: bool, eval_at: &[u64]) -> Result<Outcome> {
    let f: Fraction = frac
        .parse()
        .map_err(|e: qrat::QratError| input_err(format!("{frac:?}: {e}")))?;
    let rings = eval_at.iter().map(|&n| ring(n)).collect::<Result<Vec<_>>>()?;
    if jones_only {
        let j = qrat::jones(&f).map_err(|e| input_err(format!("--jones: {e}")))?;
        let mut doc = json!({ "frac": f, "jones": j });
        for ring in &rings {
            let v = qrat::jones_in(ring, &f).expect("r/s > 1 checked above");
            doc[format!("jones_at_zeta{}", ring.n())] = json!(v.to_string());
        }
        return Ok(Outcome { doc, ok: true });
    }
    let mut doc = serde_json::to_value(qrat::summary(&f))?;
    let mut evals = serde_json::Map::new();
    for ring in &rings {
        let (num, den) = qrat::specialized(&f, ring);
        let mut e = json!({ "num": num.to_string(), "den": den.to_string() });
        if let Ok(j) = qrat::jones_in(ring, &f) {
            e["jones"] = json!(j.to_string());
        }
        evals.insert(format!("zeta{}", ring.n()), e);
    }
    if !evals.is_empty() {
        doc["eval"] = Value::Object(evals);
    }
    Ok(Outcome { doc, ok: true })
}

fn cmd_group(n: u64, cap: usize) -> Result<Outcome> {
    let ring = ring(n)?;
    let outcome = grp::closure(&Generator::rs(&ring), cap);
    let doc = match outcome.verdict {
        Verdict::Finished => {
            let report = grp::analyze(&outcome)?;
            let mut doc = serde_json::to_value(grp::group_table(&outcome, &report))?;
            doc["verdict"] = json!("Finished");
            doc["det_classes"] = serde_json::to_value(&report.det_classes)?;
            doc
        }
        Verdict::CapExceeded => json!({
            "n": n,
            "verdict": "CapExceeded",
            "cap": cap,
            "explored": outcome.len(),
            "depth": outcome.depth,
        }),
    };
    Ok(Outcome { doc, ok: true })
}

fn cmd_certify(n: u64, cap: usize) -> Result<Outcome> {
    let certificate = match cert::finiteness_certificate(n, cap) {
        Ok(c) => c,
        Err(e @ (CertError::ZeroConductor | CertError::CapTooSmall { .. })) => {
            return Err(input_err(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let ok = certificate.all_passed();
    Ok(Outcome {
        doc: serde_json::to_value(&certificate)?,
        ok,
    })
}

fn cmd_verify(path: &PathBuf) -> Result<Outcome> {
    let raw = fs::read_to_string(path)
        .map_err(|e| input_err(format!("reading {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    // accept both a bare certificate and a full `certify` document
    let certificate = if value.get("result").is_some() { &value["result"] } else { &value };
    let checks = cert::verify(certificate).map_err(|e| input_err(e.to_string()))?;
    let ok = checks.iter().all(|c| c.passed());
    Ok(Outcome {
        doc: json!({ "n": certificate["n"], "valid": ok, "checks": checks }),
        ok,
    })
}

fn cmd_scan(a: &ScanArgs) -> Result<Outcome> {
    if a.max_den < 1 {
        bail!(input_err("--max-den must be at least 1"));
    }
    let words = |default: usize| a.words.unwrap_or(default);
    let report: SweepReport = match a.property {
        Property::STables => cert::vanishing_tables(a.max_den),
        Property::DivLaws => cert::divisibility_laws(&cert::sample_words(a.seed, words(500))),
        Property::AuxLaws => {
            let count = words(300);
            cert::auxiliary_laws(
                &cert::sample_words(a.seed, count),
                &cert::sample_m_shapes(a.seed, count),
            )
        }
        Property::ValueSets => {
            let budget = a.budget.unwrap_or(DEFAULT_BUDGET);
            if budget < 2 {
                return Err(input_err("--budget must be at least 2"));
            }
            let conductors = match a.zeta {
                Some(0) => return Err(input_err("--zeta must be positive")),
                Some(n) => vec![n],
                None => (2..=7).collect(),
            };
            let mut all = SweepReport::new("value-sets", json!({ "budget": budget, "zeta": conductors }));
            for n in conductors {
                all.merge(cert::value_set_saturation(n, budget));
            }
            all
        }
        Property::TraceZeta6 => cert::trace_set_zeta6(words(2000), a.seed, a.depth),
    };
    let ok = report.all_passed();
    Ok(Outcome {
        doc: serde_json::to_value(&report)?,
        ok,
    })
}
