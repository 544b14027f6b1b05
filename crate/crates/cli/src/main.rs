//! `ybe`: verify, enumerate, classify and analyse finite Yang-Baxter
//! solutions and skew left braces.
//!
//! Exit status: 0 on success, 1 on a mathematical violation (or "not
//! isomorphic"), 2 on usage and parse errors.

mod census;
mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ybe_core::brace::SkewBrace;
use ybe_core::retraction::multipermutation_level;
use ybe_core::union::{enumerate_2reductive, solution_to_union, unions_isomorphic, AbelianUnion};
use ybe_core::FiniteSolution;

use census::CensusRecord;
use input::{read_document, Checked, Format};

const CAP_VAR: &str = "YBE_ENUM_CAP";
const DEFAULT_CAP: usize = 6;
const SEARCH_LIMIT: usize = 6;

#[derive(Parser)]
#[command(name = "ybe", version, about = "Finite set-theoretic Yang-Baxter solutions and skew braces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a solution, brace or union and report its properties.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List all 2-reductive solutions of size n up to isomorphism.
    Enumerate {
        n: usize,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write JSON-lines here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two solutions or unions are isomorphic.
    Classify { first: PathBuf, second: PathBuf },
    /// Analyse a skew left brace.
    Brace {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        report: Detail,
        /// Also write the associated solution as JSON.
        #[arg(long)]
        solution_out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Detail {
    Full,
    Summary,
}

/// A usage or input problem; maps to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn solution_report(s: &FiniteSolution) -> Value {
    json!({
        "kind": "solution",
        "valid": true,
        "n": s.n(),
        "involutive": s.is_involutive(),
        "square_free": s.is_square_free(),
        "lri": s.has_lri(),
        "permutational": s.is_permutational(),
        "projection": s.is_projection(),
        "left_distributive": s.is_left_distributive(),
        "right_distributive": s.is_right_distributive(),
        "reductivity": s.reductivity(),
        "two_reductive": s.is_2reductive(),
        "condition_star": s.satisfies_condition_star(),
        "multipermutation_level": multipermutation_level(s),
    })
}

fn cmd_verify(file: &Path, format: Format) -> Result<u8> {
    let doc = read_document(file, format).map_err(|e| Usage(format!("{e:#}")))?;
    let (report, code) = match doc.check() {
        Checked::Solution(s) => (solution_report(&s), 0),
        Checked::Union(u) => {
            let mut r = solution_report(&u.to_solution());
            r["kind"] = json!("union");
            r["orbit_type"] = json!(u.orbit_type());
            r["union_predicates"] = json!(u.predicates());
            r["injectivity_necessary_checks"] = json!(u.injectivity_necessary_checks());
            (r, 0)
        }
        Checked::Brace(b) => (brace_report(&b, Detail::Summary)?, 0),
        Checked::BadSolution(v) => {
            (json!({"kind": "solution", "valid": false, "message": v.to_string(), "violation": v}), 1)
        }
        Checked::BadBrace(v) => {
            (json!({"kind": "brace", "valid": false, "message": v.to_string(), "violation": v}), 1)
        }
        Checked::BadUnion(msg) => (json!({"kind": "union", "valid": false, "message": msg}), 1),
    };
    print(&report);
    Ok(code)
}

fn enumeration_cap() -> Result<usize> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v.parse().or_else(|_| usage(format!("{CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn cmd_enumerate(n: usize, jobs: Option<usize>, out: Option<&Path>) -> Result<u8> {
    let cap = enumeration_cap()?;
    if n == 0 || n > cap {
        return usage(format!("n must be in 1..={cap} (set {CAP_VAR} to raise the cap), got {n}"));
    }
    if jobs == Some(0) {
        return usage("--jobs must be positive");
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let entries = pool.build()?.install(|| enumerate_2reductive(n))?;
    let record = CensusRecord::new(n, entries)?;
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            record.write_lines(&mut w)?;
            w.flush()?;
            println!("{}", record.summary_json());
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            record.write_lines(&mut w)?;
            w.flush()?;
        }
    }
    Ok(0)
}

enum ClassifyInput {
    Union(AbelianUnion),
    Solution(FiniteSolution),
}

fn load_for_classify(path: &Path) -> Result<ClassifyInput> {
    let doc = read_document(path, Format::Json).map_err(|e| Usage(format!("{e:#}")))?;
    match doc.check() {
        Checked::Solution(s) => Ok(ClassifyInput::Solution(s)),
        Checked::Union(u) => Ok(ClassifyInput::Union(u)),
        Checked::Brace(_) => usage(format!("{}: expected a solution or union, found a brace", path.display())),
        Checked::BadSolution(v) => usage(format!("{}: not a solution: {v}", path.display())),
        Checked::BadBrace(v) => usage(format!("{}: not a brace: {v}", path.display())),
        Checked::BadUnion(m) => usage(format!("{}: not a union: {m}", path.display())),
    }
}

/// A union plus, for solution inputs, the map from carrier to union positions.
fn as_union(input: &ClassifyInput) -> Result<(AbelianUnion, Option<Vec<usize>>)> {
    match input {
        ClassifyInput::Union(u) => Ok((u.clone(), None)),
        ClassifyInput::Solution(s) => {
            let d = solution_to_union(s)?;
            Ok((d.union, Some(d.carrier)))
        }
    }
}

fn cmd_classify(first: &Path, second: &Path) -> Result<u8> {
    let a = load_for_classify(first)?;
    let b = load_for_classify(second)?;
    let solution = |x: &ClassifyInput| match x {
        ClassifyInput::Union(u) => u.to_solution(),
        ClassifyInput::Solution(s) => s.clone(),
    };
    let (sa, sb) = (solution(&a), solution(&b));
    if sa.n() != sb.n() {
        print(&json!({"isomorphic": false, "reason": format!("sizes {} and {} differ", sa.n(), sb.n())}));
        return Ok(1);
    }
    if !sa.is_2reductive() || !sb.is_2reductive() {
        if sa.n() > SEARCH_LIMIT {
            return usage(format!(
                "inputs are not both 2-reductive and n = {} exceeds the search limit {SEARCH_LIMIT}",
                sa.n()
            ));
        }
        let map = sa.find_isomorphism(&sb);
        print(&json!({"isomorphic": map.is_some(), "method": "search", "carrier_map": map}));
        return Ok(if map.is_some() { 0 } else { 1 });
    }
    let (ua, ca) = as_union(&a)?;
    let (ub, cb) = as_union(&b)?;
    let Some(w) = unions_isomorphic(&ua, &ub) else {
        print(&json!({"isomorphic": false, "method": "union", "orbit_types": [ua.orbit_type(), ub.orbit_type()]}));
        return Ok(1);
    };
    // element map between the two union carriers
    let (oa, ob) = (ua.offsets(), ub.offsets());
    let mut phi = vec![0; ua.size()];
    for (i, g) in ua.groups().iter().enumerate() {
        for x in 0..g.order() {
            phi[oa[i] + x] = ob[w.pi[i]] + w.psi[i][x];
        }
    }
    let n = sa.n();
    let to_a = ca.unwrap_or_else(|| (0..n).collect());
    let to_b = cb.unwrap_or_else(|| (0..n).collect());
    let mut from_b = vec![0; n];
    for (x, &p) in to_b.iter().enumerate() {
        from_b[p] = x;
    }
    let carrier_map: Vec<usize> = (0..n).map(|x| from_b[phi[to_a[x]]]).collect();
    ensure!(sa.is_isomorphism(&sb, &carrier_map), "witness does not transport the solutions");
    print(&json!({
        "isomorphic": true,
        "method": "union",
        "witness": w,
        "carrier_map": carrier_map,
    }));
    Ok(0)
}

fn brace_report(b: &SkewBrace, detail: Detail) -> Result<Value> {
    let series = b.socle_series()?;
    let nilpotency = match &series.nilpotency {
        ybe_core::brace::Nilpotency::Class(k) => json!({"nilpotent": true, "class": k}),
        ybe_core::brace::Nilpotency::NotNilpotent { steps, stabilized } => {
            json!({"nilpotent": false, "steps": steps, "stabilized_order": stabilized.order()})
        }
    };
    let mut r = json!({
        "kind": "brace",
        "valid": true,
        "n": b.order(),
        "biskew": b.is_biskew()?,
        "socle": b.socle()?.elements,
        "nilpotency": nilpotency,
    });
    if detail == Detail::Full {
        let s = b.associated_solution();
        r["socle_series_orders"] = json!(series.terms.iter().map(|t| t.order()).collect::<Vec<_>>());
        r["kernel_ideals"] = json!(b.kernel_ideals());
        r["reductivity_profile"] = json!(b.reductivity_profile()?);
        r["dot_abelian"] = json!(b.dot().is_abelian());
        r["associated_solution"] = solution_report(&s);
    }
    Ok(r)
}

fn cmd_brace(file: &Path, detail: Detail, solution_out: Option<&Path>) -> Result<u8> {
    let doc = read_document(file, Format::Json).map_err(|e| Usage(format!("{e:#}")))?;
    let b = match doc.check() {
        Checked::Brace(b) => b,
        Checked::BadBrace(v) => {
            print(&json!({"kind": "brace", "valid": false, "message": v.to_string(), "violation": v}));
            return Ok(1);
        }
        _ => return usage(format!("{}: expected a brace with keys dot/circle", file.display())),
    };
    let report = match brace_report(&b, detail) {
        Ok(r) => r,
        Err(e) => {
            print(&json!({"kind": "brace", "valid": true, "error": format!("{e:#}")}));
            return Ok(1);
        }
    };
    if let Some(path) = solution_out {
        std::fs::write(path, b.associated_solution().to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    print(&report);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Verify { file, format } => cmd_verify(&file, format),
        Command::Enumerate { n, jobs, out } => cmd_enumerate(n, jobs, out.as_deref()),
        Command::Classify { first, second } => cmd_classify(&first, &second),
        Command::Brace { file, report, solution_out } => cmd_brace(&file, report, solution_out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<ybe_core::Error>() {
                Some(ybe_core::Error::Mismatch(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
