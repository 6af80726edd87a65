use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcms::algebra::{AlgebraElement, Signature};
use qcms::cache::{IdealCache, IdealStore};
use qcms::iso::{poincare_series, render_series, total_dimension_formula};
use qcms::jacobian::JacobianContext;
use qcms::presentation::{classical_triple, floer_triple, quantum_triple, PresentationTriple};
use qcms::quantum_n::{gw_via_formula, gw_via_ring, gw_via_ring_cup, theorem11_report, GWQuery, NRing};
use qcms::suites::{run_suite, Suite};
use qcms::Error;

const DEFAULT_MAX_GENUS: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "qcms", version, about = "Quantum cohomology of the moduli space of odd-degree rank-2 bundles")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Directory for cached ideal computations (also QCMS_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Largest genus accepted; the exterior algebra has dimension 2^(2g).
    #[arg(long, default_value_t = DEFAULT_MAX_GENUS, global = true)]
    max_genus: u32,

    /// More logging on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the relation triples for r = 0..g.
    Present {
        #[arg(long, value_enum)]
        ring: Ring,
        #[arg(long)]
        genus: u32,
        /// Use the corrected generators β̂, γ̂ (quantum ring, genus 1 or 2).
        #[arg(long)]
        hatted: bool,
    },
    /// Evaluate a Gromov–Witten invariant on the line class.
    Gw {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        #[arg(long, default_value_t = 0)]
        beta: u32,
        /// Comma-separated ψ indices in 1..=2g.
        #[arg(long, default_value = "")]
        psi: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Required except for the g1 and g2 suites.
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Poincaré series of the quantum cohomology.
    Poincare {
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ring {
    Classical,
    Floer,
    Quantum,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegreeBalance { .. }
            | Error::PsiIndex(_)
            | Error::Genus(..)
            | Error::OutOfRange(_)
            | Error::Parse(_)
            | Error::ParametersTooShort { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn check_genus(genus: u32, max: u32, allow_zero: bool) -> Result<(), Failure> {
    if genus == 0 && !allow_zero {
        return Err(Failure::Usage("genus must be at least 1".into()));
    }
    if genus > max {
        return Err(Failure::Usage(format!("genus {genus} exceeds --max-genus {max}")));
    }
    Ok(())
}

fn triple_json(t: &PresentationTriple, gens: &[AlgebraElement; 3]) -> Value {
    json!({
        "r": t.index,
        "text": format!("({}, {}, {})", gens[0], gens[1], gens[2]),
        "P1": gens[0].to_json(),
        "P2": gens[1].to_json(),
        "P3": gens[2].to_json(),
    })
}

fn cmd_present(ring: Ring, genus: u32, hatted: bool, max: u32) -> Result<Output, Failure> {
    check_genus(genus, max, ring != Ring::Quantum)?;
    let target = match (hatted, ring, genus) {
        (false, ..) => None,
        (true, Ring::Quantum, 1) => Some(Signature::beta_hatted_ring()),
        (true, Ring::Quantum, 2) => Some(Signature::hatted_ring()),
        (true, ..) => return Err(Failure::Usage("--hatted applies to the quantum ring at genus 1 or 2".into())),
    };
    let name = match ring {
        Ring::Classical => "classical",
        Ring::Floer => "floer",
        Ring::Quantum => "quantum",
    };
    let mut text = String::new();
    let mut triples = Vec::new();
    for r in 0..=genus {
        let t = match ring {
            Ring::Classical => classical_triple(r),
            Ring::Floer => floer_triple(r),
            Ring::Quantum => quantum_triple(r, genus)?,
        };
        let gens = match &target {
            Some(sig) => t.relabel(sig)?,
            None => t.gens.clone(),
        };
        text.push_str(&format!("r={r}: ({}, {}, {})\n", gens[0], gens[1], gens[2]));
        triples.push(triple_json(&t, &gens));
    }
    let json = json!({"ring": name, "genus": genus, "hatted": hatted, "triples": triples});
    Ok(Output { text, json, ok: true })
}

fn parse_psi(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Failure::Usage(format!("bad ψ index {p:?}"))))
        .collect()
}

fn cmd_gw(genus: u32, a: u32, b: u32, psi: &str, max: u32) -> Result<Output, Failure> {
    check_genus(genus, max, false)?;
    let query = GWQuery::new(genus, a, b, parse_psi(psi)?)?;
    let ctx = JacobianContext::new(genus)?;
    let ring = NRing::new(genus)?;
    let value = gw_via_formula(&ctx, &query)?;
    let mut text = format!("query: {query}\nvalue: {}\nmethod: formula\n", value.to_coef_string());
    let mut ok = true;
    let crosscheck = match gw_via_ring(&ring, &query) {
        Ok(by_ring) => {
            let pass = by_ring == value;
            ok &= pass;
            text.push_str(&format!(
                "crosscheck: {} (ring {})\n",
                if pass { "pass" } else { "fail" },
                by_ring.to_coef_string()
            ));
            json!({"status": if pass { "pass" } else { "fail" }, "ring": by_ring.to_coef_string()})
        }
        Err(_) => {
            let cup = gw_via_ring_cup(&ring, &query)?;
            let note = "at genus 2 β = h² is only a cup-product identity; the formula value is authoritative";
            text.push_str(&format!(
                "crosscheck: flagged (cup-product ring path {}, difference {})\nnote: {note}\n",
                cup.to_coef_string(),
                (&cup - &value).to_coef_string()
            ));
            json!({
                "status": "flagged",
                "ring_cup": cup.to_coef_string(),
                "difference": (&cup - &value).to_coef_string(),
                "note": note,
            })
        }
    };
    if query.has_repeated_psi() {
        text.push_str("note: repeated ψ index, the product vanishes\n");
    }
    let mut record = json!({
        "query": query.to_json(),
        "value": value.to_coef_string(),
        "method": "formula",
        "crosscheck": crosscheck,
    });
    if genus >= 3 {
        let t = theorem11_report(&ctx, &query)?;
        text.push_str(&format!(
            "donaldson: sign {:+}, {} = {}\n",
            t.sign,
            t.translation,
            t.donaldson.to_coef_string()
        ));
        record["donaldson"] = t.to_json();
    }
    Ok(Output { text, json: record, ok })
}

fn cmd_verify(suite: &str, genus: Option<u32>, max: u32, store: &IdealStore) -> Result<Output, Failure> {
    let suite: Suite = suite.parse()?;
    let genus = match (suite, genus) {
        (Suite::G1, _) => 1,
        (Suite::G2, _) => 2,
        (_, Some(g)) => g,
        (_, None) => return Err(Failure::Usage(format!("suite {suite} needs --genus"))),
    };
    check_genus(genus, max, false)?;
    if !suite.applies(genus) {
        return Err(Failure::Usage(format!("suite {suite} does not apply at genus {genus}")));
    }
    let report = run_suite(suite, genus, store)?;
    Ok(Output { text: format!("{report}\n"), json: report.to_json(), ok: report.all_pass() })
}

fn cmd_poincare(genus: u32, max: u32) -> Result<Output, Failure> {
    check_genus(genus, max, false)?;
    let coeffs = poincare_series(genus)?;
    let total: u64 = coeffs.iter().sum();
    let ok = total == total_dimension_formula(genus);
    let series = render_series(&coeffs);
    let text = format!("{series}\ntotal dimension: {total}\n");
    let json = json!({"genus": genus, "coefficients": coeffs, "series": series, "total": total});
    Ok(Output { text, json, ok })
}

fn open_store(flag: Option<&PathBuf>) -> IdealStore {
    let cache = IdealCache::from_flag_or_env(flag.map(PathBuf::as_path)).and_then(|dir| match IdealCache::open(&dir) {
        Ok(c) => Some(c),
        Err(e) => {
            log::warn!("caching disabled: {e}");
            None
        }
    });
    IdealStore::new(cache)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if cli.max_genus > DEFAULT_MAX_GENUS {
        log::warn!("--max-genus {} above {DEFAULT_MAX_GENUS}: memory grows like 4^g", cli.max_genus);
    }

    let result = match &cli.command {
        Command::Present { ring, genus, hatted } => cmd_present(*ring, *genus, *hatted, cli.max_genus),
        Command::Gw { genus, alpha, beta, psi } => cmd_gw(*genus, *alpha, *beta, psi, cli.max_genus),
        Command::Verify { suite, genus } => {
            let store = open_store(cli.cache_dir.as_ref());
            cmd_verify(suite, *genus, cli.max_genus, &store)
        }
        Command::Poincare { genus } => cmd_poincare(*genus, cli.max_genus),
    };
    match result {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")),
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
            let _ = stdout.flush();
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `qcms --help` for usage");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
