//! `parityhom` command-line front end.
//!
//! Exit codes: 0 pass, 1 property violation, 2 input error, 3 guard refusal.

use clap::{Args, Parser, Subcommand};
use parityhom::construct::{build_g01, build_gu, build_star_simplified, build_tilde_gu, LabeledGraph};
use parityhom::cycles::extract_chordless_odd_cycle;
use parityhom::families::{hd_closure_probe, indistinguishable_up_to, FamilyPredicate};
use parityhom::graph::{enumerate_graphs, parse_edge_list, parse_graph6, write_edge_list, write_graph6, Graph};
use parityhom::homcount::{hom_count, hom_vector_cycles};
use parityhom::oddo::{find_oddomorphism, find_weak_oddism, find_weak_oddo, OddoCertificate};
use parityhom::verify::{run_suite, SuiteParams, DEFAULT_SEED, SUITES};
use parityhom::Error;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "parityhom",
    version,
    about = "Parity lifts, homomorphism counts and oddomorphism certificates"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a parity lift of a base graph.
    #[command(subcommand)]
    Construct(Construct),
    /// Count homomorphisms F -> G.
    Hom { f: PathBuf, g: PathBuf },
    /// Closed-walk counts of lengths 3..=len as a JSON array of strings.
    Homvec {
        g: PathBuf,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Find or check oddomorphism certificates.
    #[command(subcommand)]
    Oddo(Oddo),
    /// Work with cycles in certificate sources.
    #[command(subcommand)]
    Cycles(Cycles),
    /// Family-level indistinguishability checks.
    #[command(subcommand)]
    Families(Families),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// List graphs up to isomorphism in graph6, one per line.
    Enumerate {
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long)]
        connected: bool,
        /// Keep only members of this family.
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The lift G_U.
    Gu(LiftArgs),
    /// The looped lift.
    Tilde(LiftArgs),
    /// Both classes G_0 and G_1 of a connected base graph.
    G01 {
        #[arg(long)]
        g: PathBuf,
        /// Writes PREFIX0/PREFIX1 graph and label files.
        #[arg(long)]
        out_prefix: Option<PathBuf>,
    },
    /// The bipartite lift of the star K_{1,d} with subsets of parity i.
    StarSimple {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        out_prefix: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    g: PathBuf,
    /// Comma-separated vertices of U.
    #[arg(long, value_delimiter = ',')]
    u: Vec<usize>,
    /// Writes PREFIX.g6 (or .edges when looped) and PREFIX.json.
    #[arg(long)]
    out_prefix: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Oddo {
    /// Search for a certificate; prints JSON or `none`.
    Find {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, conflicts_with = "oddism")]
        weak: bool,
        #[arg(long)]
        oddism: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    Verify { cert: PathBuf },
}

#[derive(Subcommand)]
enum Cycles {
    /// Chordless odd-winding cycle from a certificate onto C_k.
    Extract { cert: PathBuf },
}

#[derive(Subcommand)]
enum Families {
    /// Check that G is told apart by its padded lifts while the family is not.
    Probe {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Clique size for the padding (default: chromatic number).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Compare two graphs over a family up to a bound.
    Indist {
        h: PathBuf,
        h_prime: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Enumerate disconnected graphs too.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    #[arg(long, default_value_t = 5)]
    gmax: usize,
    #[arg(long, default_value_t = 5)]
    fmax: usize,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_refusal() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// Edge-list files start with a digit or a comment; anything else is graph6.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let first = text.trim_start().chars().next();
    let g = if first.is_some_and(|c| c.is_ascii_digit() || c == '#') {
        parse_edge_list(&text)
    } else {
        parse_graph6(&text)
    };
    g.map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Report JSON with the seed added at the top level.
fn with_seed(seed: u64, report: &impl serde::Serialize) -> String {
    let mut out = serde_json::Map::new();
    out.insert("seed".into(), json!(seed));
    if let Value::Object(m) = serde_json::to_value(report).expect("serializable") {
        out.extend(m);
    }
    pretty(&Value::Object(out))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// graph6 when possible, the edge-list format otherwise.
fn graph_text(g: &Graph) -> (String, &'static str) {
    match write_graph6(g) {
        Ok(s) => (s + "\n", "g6"),
        Err(_) => (write_edge_list(g), "edges"),
    }
}

fn emit_lift(lift: &LabeledGraph, prefix: Option<&Path>) -> Result<(), Failure> {
    let (text, ext) = graph_text(&lift.graph);
    if let Some(p) = prefix {
        write(&p.with_extension(ext), &text)?;
        write(&p.with_extension("json"), &pretty(&lift.to_data()))?;
    }
    print!("{text}");
    Ok(())
}

fn suffixed(p: &Path, s: &str) -> PathBuf {
    let mut name = p.as_os_str().to_owned();
    name.push(s);
    PathBuf::from(name)
}

fn construct(c: Construct) -> CmdResult {
    match c {
        Construct::Gu(a) => emit_lift(&build_gu(&read_graph(&a.g)?, &a.u)?, a.out_prefix.as_deref())?,
        Construct::Tilde(a) => emit_lift(&build_tilde_gu(&read_graph(&a.g)?, &a.u)?, a.out_prefix.as_deref())?,
        Construct::G01 { g, out_prefix } => {
            let (g0, g1) = build_g01(&read_graph(&g)?)?;
            for (i, lift) in [g0, g1].iter().enumerate() {
                let p = out_prefix.as_deref().map(|p| suffixed(p, &i.to_string()));
                emit_lift(lift, p.as_deref())?;
            }
        }
        Construct::StarSimple { d, i, out_prefix } => {
            let (g, labels) = build_star_simplified(d, i)?;
            let (text, ext) = graph_text(&g);
            if let Some(p) = out_prefix {
                write(&p.with_extension(ext), &text)?;
                write(
                    &p.with_extension("json"),
                    &pretty(&json!({ "graph": g.to_data(), "labels": labels })),
                )?;
            }
            print!("{text}");
        }
    }
    Ok(0)
}

fn oddo(o: Oddo) -> CmdResult {
    match o {
        Oddo::Find {
            f,
            g,
            weak,
            oddism,
            out,
        } => {
            let (f, g) = (read_graph(&f)?, read_graph(&g)?);
            let cert = if oddism {
                find_weak_oddism(&f, &g)?
            } else if weak {
                find_weak_oddo(&f, &g)?
            } else {
                find_oddomorphism(&f, &g)?
            };
            match cert {
                Some(c) => emit(out.as_deref(), &(c.to_json() + "\n"))?,
                None => println!("none"),
            }
            Ok(0)
        }
        Oddo::Verify { cert } => {
            let c = OddoCertificate::from_json(&read(&cert)?)?;
            match c.verify() {
                Ok(()) => {
                    println!("pass");
                    Ok(0)
                }
                Err(v) => {
                    println!("fail: {v}");
                    Ok(1)
                }
            }
        }
    }
}

fn families(fam: Families, seed: u64) -> CmdResult {
    match fam {
        Families::Probe { g, family, nmax, r } => {
            let pred = FamilyPredicate::parse(&family)?;
            let report = hd_closure_probe(&read_graph(&g)?, &pred, nmax, r)?;
            print!("{}", with_seed(seed, &report));
            Ok(if report.passed { 0 } else { 1 })
        }
        Families::Indist {
            h,
            h_prime,
            family,
            nmax,
            full,
        } => {
            let pred = FamilyPredicate::parse(&family)?;
            let report = indistinguishable_up_to(&read_graph(&h)?, &read_graph(&h_prime)?, &pred, nmax, !full)?;
            print!("{}", with_seed(seed, &report));
            Ok(0)
        }
    }
}

fn verify(a: VerifyArgs, seed: u64) -> CmdResult {
    let params = SuiteParams {
        seed,
        gmax: a.gmax,
        fmax: a.fmax,
        nmax: a.nmax,
        count: a.count,
        degree: a.degree,
    };
    let report = run_suite(&a.suite, &params)?;
    emit(a.out.as_deref(), &with_seed(seed, &report))?;
    if let Some(i) = report.first_failure() {
        eprintln!(
            "{}: {} of {} failed; first: {} ({})",
            a.suite, report.failures, report.total, i.id, i.detail
        );
        return Ok(1);
    }
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(input_error("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input_error(e.to_string()))?;
    }
    match cli.cmd {
        Cmd::Construct(c) => construct(c),
        Cmd::Hom { f, g } => {
            println!("{}", hom_count(&read_graph(&f)?, &read_graph(&g)?)?);
            Ok(0)
        }
        Cmd::Homvec { g, len } => {
            let v: Vec<String> = hom_vector_cycles(&read_graph(&g)?, len)?
                .iter()
                .map(|c| c.to_string())
                .collect();
            println!("{}", serde_json::to_string(&v).expect("strings"));
            Ok(0)
        }
        Cmd::Oddo(o) => oddo(o),
        Cmd::Cycles(Cycles::Extract { cert }) => {
            let c = OddoCertificate::from_json(&read(&cert)?)?;
            print!("{}", pretty(&extract_chordless_odd_cycle(&c)?));
            Ok(0)
        }
        Cmd::Families(f) => families(f, cli.seed),
        Cmd::Verify(a) => verify(a, cli.seed),
        Cmd::Enumerate {
            nmax,
            connected,
            family,
        } => {
            let pred = family.as_deref().map(FamilyPredicate::parse).transpose()?;
            for g in enumerate_graphs(nmax, connected)? {
                if pred.as_ref().map_or(Ok(true), |p| p.contains(&g))? {
                    println!("{}", write_graph6(&g)?);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
