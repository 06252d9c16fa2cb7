//! `rotamap`: analyze rotation-group presentations, build Petrie–Coxeter
//! maps and quotients, and generate torus and catalog inputs.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use rotamap::constructions::{
    catalog, catalog_entry, expected_torus, petrie_quotient, CatalogEntry, Expected, TorusFamily,
    TorusKind,
};
use rotamap::report::{
    analyze, petrie_coxeter, report_rotation4, verify_catalog, verify_entry, AnalysisError,
    AnalysisReport,
};
use rotamap::rotary::RotationGroup4;
use rotamap::{parse_presentation, Presentation, DEFAULT_MAX_COSETS};

#[derive(Parser, Debug)]
#[command(
    name = "rotamap",
    version,
    about = "Chiral and regular polytopes from rotation-group presentations"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Coset-enumeration cap.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS, value_name = "N")]
    max_cosets: usize,
    /// Output file (construct) or directory (generate).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Exit with status 1 when the analyzed group is not polytopal.
    #[arg(long, global = true)]
    require_polytopal: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a presentation file with a `sigma` or `rho` line.
    Analyze { file: PathBuf },
    /// Run a construction on a presentation file.
    #[command(subcommand)]
    Construct(Construct),
    /// Write presentation files and an expected-value manifest.
    #[command(subcommand)]
    Generate(Generate),
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// The map induced by a self-dual rank-4 group.
    PetrieCoxeter { file: PathBuf },
    /// Identify Petrie polygons after `k` steps: add `(σ1σ3)^k`.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "K")]
        petrie: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Generate {
    /// Torus map `{p,q}_(b,c)`; family is `4,4`, `3,6` or `6,3`.
    Torus { family: String, b: u32, c: u32 },
    /// Built-in examples (all of them without a name).
    Catalog {
        name: Option<String>,
        /// Recompute and compare against the stored expectations instead of writing files.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Error)]
enum Failure {
    /// A verdict about the mathematics: exit status 1.
    #[error("{0}")]
    Verdict(String),
    /// Bad input, I/O, or the engine giving up: exit status 2.
    #[error("{0}")]
    Operational(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Operational(_) => 2,
        }
    }
}

fn from_analysis(e: AnalysisError, cap: usize) -> Failure {
    if let Some(engine) = e.engine_error() {
        let mut msg = engine.to_string();
        if matches!(engine, rotamap::EngineError::CapExceeded { .. }) {
            msg.push_str(&format!("\nhint: raise --max-cosets (currently {cap})"));
        }
        return Failure::Operational(msg);
    }
    if e.is_operational() {
        Failure::Operational(e.to_string())
    } else {
        Failure::Verdict(e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Operational(format!("{}: {e}", path.display()))
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_presentation(&text).map_err(|e| Failure::Operational(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| io_error(path, e))
}

/// Writes to stdout; a closed pipe (`| head`) is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn print_report(report: &AnalysisReport, opts: &Opts) -> Result<(), Failure> {
    if opts.json {
        emit(&(to_json(report) + "\n"));
    } else {
        emit(&report.to_text());
    }
    if opts.require_polytopal && !report.polytopal {
        return Err(Failure::Verdict("not polytopal".into()));
    }
    Ok(())
}

/// `ex1.pres` → `ex1.<suffix>.pres` in the same directory.
fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    input.with_file_name(format!("{stem}.{suffix}.pres"))
}

fn cmd_analyze(file: &Path, opts: &Opts) -> Result<(), Failure> {
    let p = read_presentation(file)?;
    let report = analyze(&p, opts.max_cosets).map_err(|e| from_analysis(e, opts.max_cosets))?;
    print_report(&report, opts)
}

fn cmd_construct(c: &Construct, opts: &Opts) -> Result<(), Failure> {
    let cap = opts.max_cosets;
    match c {
        Construct::PetrieCoxeter { file } => {
            let p = read_presentation(file)?;
            let pc = petrie_coxeter(&p, cap).map_err(|e| from_analysis(e, cap))?;
            let out = opts.out.clone().unwrap_or_else(|| sibling(file, "map"));
            write(&out, &pc.presentation.to_text())?;
            eprintln!("duality: {}", pc.duality);
            if let Some(k) = pc.kappa_index {
                eprintln!("index of <k1, k2> in the extended group: {k}");
            }
            eprintln!("wrote {}", out.display());
            print_report(&pc.report, opts)
        }
        Construct::Quotient { file, petrie } => {
            if *petrie == 0 {
                return Err(Failure::Operational("--petrie must be positive".into()));
            }
            let p = read_presentation(file)?;
            let m = RotationGroup4::from_presentation(&p, cap)
                .map_err(|e| from_analysis(e.into(), cap))?;
            let q = petrie_quotient(&m, *petrie, cap).map_err(|e| from_analysis(e.into(), cap))?;
            let out = opts
                .out
                .clone()
                .unwrap_or_else(|| sibling(file, &format!("petrie{petrie}")));
            write(&out, &q.rep().presentation().to_text())?;
            eprintln!("wrote {}", out.display());
            print_report(&report_rotation4(&q), opts)
        }
    }
}

/// Merges entries into `manifest.json` in `dir`.
fn update_manifest(dir: &Path, entries: BTreeMap<String, Expected>) -> Result<PathBuf, Failure> {
    let path = dir.join("manifest.json");
    let mut manifest: BTreeMap<String, Expected> = match fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text)
            .map_err(|e| Failure::Operational(format!("{}: {e}", path.display())))?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
        Err(e) => return Err(io_error(&path, e)),
    };
    manifest.extend(entries);
    write(&path, &(to_json(&manifest) + "\n"))?;
    Ok(path)
}

fn write_entries(
    dir: &Path,
    entries: Vec<(String, Presentation, Expected)>,
) -> Result<(), Failure> {
    let mut manifest = BTreeMap::new();
    for (name, p, expected) in entries {
        let path = dir.join(format!("{name}.pres"));
        write(&path, &p.to_text())?;
        emit(&format!("wrote {}\n", path.display()));
        manifest.insert(name, expected);
    }
    let path = update_manifest(dir, manifest)?;
    emit(&format!("wrote {}\n", path.display()));
    Ok(())
}

fn cmd_generate(g: &Generate, opts: &Opts) -> Result<(), Failure> {
    let cap = opts.max_cosets;
    let dir = opts.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match g {
        Generate::Torus { family, b, c } => {
            let kind: TorusKind = family.parse().map_err(Failure::Operational)?;
            let t =
                TorusFamily::new(kind, *b, *c).map_err(|e| Failure::Operational(e.to_string()))?;
            write_entries(
                &dir,
                vec![(t.file_stem(), t.presentation(), expected_torus(&t))],
            )
        }
        Generate::Catalog { name, verify } => {
            let entries: Vec<CatalogEntry> = match name {
                Some(n) => vec![catalog_entry(n).ok_or_else(|| {
                    let known: Vec<&str> = catalog().iter().map(|e| e.name).collect();
                    Failure::Operational(format!(
                        "unknown catalog entry {n:?}; known: {}",
                        known.join(", ")
                    ))
                })?],
                None => catalog(),
            };
            if *verify {
                return verify_entries(&entries, name.is_none(), opts);
            }
            let mut out = Vec::new();
            for e in entries {
                let p = e
                    .presentation(cap)
                    .map_err(|err| from_analysis(err.into(), cap))?;
                out.push((e.name.to_string(), p, e.expected));
            }
            write_entries(&dir, out)
        }
    }
}

fn verify_entries(entries: &[CatalogEntry], all: bool, opts: &Opts) -> Result<(), Failure> {
    let cap = opts.max_cosets;
    let results = if all {
        verify_catalog(cap)
    } else {
        entries
            .iter()
            .map(|e| (e.name, verify_entry(e, cap)))
            .collect()
    };
    let mut worst: Option<Failure> = None;
    let mut rows = Vec::new();
    for (name, r) in results {
        match r {
            Ok(v) => {
                if !opts.json {
                    if v.passed() {
                        emit(&format!("{name:<24} PASS\n"));
                    } else {
                        emit(&format!("{name:<24} FAIL\n"));
                        for m in &v.mismatches {
                            emit(&format!("  {m}\n"));
                        }
                    }
                }
                if !v.passed() && worst.is_none() {
                    worst = Some(Failure::Verdict(format!("{name}: mismatch")));
                }
                rows.push(serde_json::json!({
                    "name": name,
                    "passed": v.passed(),
                    "mismatches": v.mismatches,
                }));
            }
            Err(e) => {
                let f = from_analysis(e, cap);
                if !opts.json {
                    emit(&format!("{name:<24} ERROR {f}\n"));
                }
                rows.push(serde_json::json!({
                    "name": name,
                    "passed": false,
                    "error": f.to_string(),
                }));
                if worst.as_ref().is_none_or(|w| w.code() < f.code()) {
                    worst = Some(f);
                }
            }
        }
    }
    if opts.json {
        emit(&(to_json(&rows) + "\n"));
    }
    worst.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { file } => cmd_analyze(file, &cli.opts),
        Command::Construct(c) => cmd_construct(c, &cli.opts),
        Command::Generate(g) => cmd_generate(g, &cli.opts),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rotamap: {f}");
            ExitCode::from(f.code())
        }
    }
}
