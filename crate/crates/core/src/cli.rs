//! Command-line front end. Every subcommand renders to a string so the
//! binary stays a thin wrapper and tests can drive [`run`] directly.
//!
//! Exit codes: 0 ok, 1 domain failure, 2 I/O, 3 dashing stuck, 4 dashing
//! inconsistent.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codes::{kmax, parse_code, GeneratorMatrix};
use crate::counting::{
    baobab_bounds, tree_count_determinant, tree_count_from_spectrum, tree_count_hypercube,
    DETERMINANT_LIMIT,
};
use crate::dashing::{complete_dashing, DashingAssignment, DashingFailure};
use crate::graph::QuotientGraph;
use crate::spectrum::{
    adjacency_spectrum, meta_equivalence_scan, multiplicity_table, spectral_mode,
    spectrum_closed_form, spectrum_numeric, SpectrumTable, DEFAULT_TOLERANCE,
};
use crate::thermo::{entropy_bounds, latent_heat, HeatReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_STUCK: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

/// Random column permutations tried by `spectrum --oracle`.
const PERMUTATION_TRIALS: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "adinkra",
    version,
    about = "Spectra, tree counts and dashings of hypercubes quotiented by doubly even codes"
)]
pub struct RunConfig {
    /// Output format (default: csv for `histogram`, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Tolerance for snapping numeric eigenvalues to even integers
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_float)]
    pub tol: f64,
    /// Boltzmann constant scale for entropies
    #[arg(long = "kb", global = true, default_value_t = 1.0)]
    pub k_b: f64,
    /// Temperature for the latent-heat bound
    #[arg(
        short = 'T',
        long = "temperature",
        global = true,
        default_value_t = 1.0,
        allow_negative_numbers = true
    )]
    pub temperature: f64,
    /// Seed for randomized oracle checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a code is doubly even, independent and within k_max
    Validate { code: PathBuf },
    /// Laplacian spectrum of the quotient graph
    Spectrum {
        code: PathBuf,
        /// Cross-check against the eigensolver, the (m, p) table and column permutations
        #[arg(long)]
        oracle: bool,
    },
    /// Spectrum, mode, tree count, bounds, entropy and heat in one document
    Report { code: PathBuf },
    /// Per-file spectrum CSV and spectral mode
    Histogram {
        #[arg(required = true)]
        codes: Vec<PathBuf>,
        /// Write `<stem>.csv` per input here instead of printing
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Group codes by spectrum and by column-permutation class
    Cospectral {
        #[arg(required = true, num_args = 2..)]
        codes: Vec<PathBuf>,
    },
    /// Complete a partial edge dashing
    Dash { code: PathBuf, dashing: PathBuf },
    /// Exact spanning-tree count
    Trees {
        code: PathBuf,
        /// Cross-check with the Kirchhoff determinant (and closed form when k = 0)
        #[arg(long)]
        oracle: bool,
    },
    /// Baobab multiplicity bounds
    Bounds { code: PathBuf },
    /// Edge-list export of the quotient graph
    Graph { code: PathBuf },
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }

    fn with_stdout(mut self, stdout: String) -> Self {
        self.stdout = stdout;
        self
    }
}

type Step<T> = Result<T, Outcome>;

fn domain<E: std::fmt::Display>(tag: &'static str) -> impl Fn(E) -> Outcome {
    move |e| Outcome::fail(EXIT_DOMAIN, format!("{tag}: {e}"))
}

fn load_code(path: &Path) -> Step<GeneratorMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_IO, format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| Outcome::fail(EXIT_DOMAIN, format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Step<GeneratorMatrix> {
    let code = load_code(path)?;
    let report = code.validate_doubly_even();
    if !report.is_ok() {
        return Err(Outcome::fail(
            EXIT_DOMAIN,
            format!("{}: not an independent doubly even code", path.display()),
        ));
    }
    Ok(code)
}

pub fn run(config: &RunConfig) -> Outcome {
    let result = match &config.command {
        Command::Validate { code } => cmd_validate(config, code),
        Command::Spectrum { code, oracle } => cmd_spectrum(config, code, *oracle),
        Command::Report { code } => cmd_report(config, code),
        Command::Histogram { codes, out_dir } => cmd_histogram(config, codes, out_dir.as_deref()),
        Command::Cospectral { codes } => cmd_cospectral(config, codes),
        Command::Dash { code, dashing } => cmd_dash(config, code, dashing),
        Command::Trees { code, oracle } => cmd_trees(config, code, *oracle),
        Command::Bounds { code } => cmd_bounds(config, code),
        Command::Graph { code } => cmd_graph(code),
    };
    result.unwrap_or_else(|failure| failure)
}

fn render(config: &RunConfig, value: &Value) -> Step<String> {
    match config.format.unwrap_or(Format::Json) {
        Format::Json => Ok(to_json(value)),
        Format::Text => Ok(to_text(value)),
        Format::Csv => Err(Outcome::fail(
            EXIT_DOMAIN,
            "csv output is only available for spectrum and histogram",
        )),
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn to_text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (key, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{key}: {shown}");
        }
    } else {
        let _ = writeln!(out, "{value}");
    }
    out
}

fn spectrum_json(s: &SpectrumTable) -> Value {
    json!(s.rows())
}

pub fn cmd_validate(config: &RunConfig, path: &Path) -> Step<Outcome> {
    let code = load_code(path)?;
    let report = code.validate_doubly_even();
    let limit = kmax(code.len()).map_err(domain("codes"))?;
    let within = code.k() <= limit;
    let valid = report.is_ok() && within && report.methods_agree();
    let value = json!({
        "n": code.n(),
        "k": code.k(),
        "length": code.len(),
        "kmax": limit,
        "doubly_even": report.violations.is_empty() && report.generator_criterion,
        "independent": report.dependencies.is_empty(),
        "within_kmax": within,
        "methods_agree": report.methods_agree(),
        "violations": report.violations.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "dependencies": report.dependencies,
        "valid": valid,
    });
    let out = render(config, &value)?;
    Ok(Outcome {
        code: if valid { EXIT_OK } else { EXIT_DOMAIN },
        stdout: out,
        stderr: String::new(),
    })
}

pub fn cmd_spectrum(config: &RunConfig, path: &Path, oracle: bool) -> Step<Outcome> {
    let code = load_valid(path)?;
    let closed = spectrum_closed_form(&code).map_err(domain("spectrum"))?;
    let mut value = json!({
        "n": code.n(),
        "k": code.k(),
        "eigenvalues": spectrum_json(&closed),
    });
    let mut agree = true;
    if oracle {
        let graph = QuotientGraph::build(&code).map_err(domain("graph"))?;
        let numeric = spectrum_numeric(&graph, config.tol).map_err(domain("spectrum"))?;
        let table = multiplicity_table(&code).map_err(domain("spectrum"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut perm: Vec<usize> = (0..code.len()).collect();
        let mut permutation_invariant = true;
        for _ in 0..PERMUTATION_TRIALS {
            perm.shuffle(&mut rng);
            let permuted =
                spectrum_closed_form(&code.permute_columns(&perm)).map_err(domain("spectrum"))?;
            permutation_invariant &= permuted == closed;
        }
        let numeric_agrees = numeric == closed;
        let table_agrees = table.anti_diagonal() == closed;
        let invariants = closed
            .check_invariants(1 << code.n(), code.len() as u32)
            .is_ok();
        agree = numeric_agrees && table_agrees && permutation_invariant && invariants;
        let obj = value.as_object_mut().expect("object");
        obj.insert("numeric".into(), spectrum_json(&numeric));
        obj.insert("multiplicity_table_agrees".into(), json!(table_agrees));
        obj.insert("permutation_invariant".into(), json!(permutation_invariant));
        obj.insert("agree".into(), json!(agree));
    }
    let stdout = match config.format.unwrap_or(Format::Json) {
        Format::Csv => closed.to_csv(),
        _ => render(config, &value)?,
    };
    if !agree {
        return Ok(Outcome::fail(EXIT_DOMAIN, "spectrum: oracle disagreement").with_stdout(stdout));
    }
    Ok(Outcome::ok(stdout))
}

pub fn cmd_report(config: &RunConfig, path: &Path) -> Step<Outcome> {
    let code = load_valid(path)?;
    let limit = kmax(code.len()).map_err(domain("codes"))?;
    let spectrum = spectrum_closed_form(&code).map_err(domain("spectrum"))?;
    spectrum
        .check_invariants(1 << code.n(), code.len() as u32)
        .map_err(domain("spectrum"))?;
    let mode = spectral_mode(&spectrum);
    let adjacency: Vec<Value> = adjacency_spectrum(&spectrum, code.len())
        .into_iter()
        .rev()
        .map(|(lambda, multiplicity)| json!({"lambda": lambda, "multiplicity": multiplicity}))
        .collect();
    let bounds = baobab_bounds(&code, &spectrum).map_err(domain("counting"))?;
    let entropy = entropy_bounds(&bounds, config.k_b).map_err(domain("thermo"))?;
    let heat = HeatReport {
        temperature: config.temperature,
        q: latent_heat(entropy.s_approx, config.temperature).map_err(domain("thermo"))?,
    };
    let mut entropy_json = serde_json::to_value(&entropy).expect("entropy serializes");
    entropy_json.as_object_mut().expect("object").insert(
        "delta_q_min_at_T".into(),
        serde_json::to_value(&heat).expect("heat serializes"),
    );
    let value = json!({
        "n": code.n(),
        "k": code.k(),
        "length": code.len(),
        "kmax": limit,
        "eigenvalues": spectrum_json(&spectrum),
        "mode": mode,
        "adjacency": adjacency,
        "trees": bounds.trees.to_string(),
        "bounds": bounds.to_json(),
        "entropy": entropy_json,
    });
    Ok(Outcome::ok(render(config, &value)?))
}

pub fn cmd_histogram(
    config: &RunConfig,
    paths: &[PathBuf],
    out_dir: Option<&Path>,
) -> Step<Outcome> {
    let format = config.format.unwrap_or(Format::Csv);
    let mut stdout = String::new();
    let mut stderr = String::new();
    let mut entries = Vec::new();
    let mut worst = EXIT_OK;
    if format == Format::Csv && out_dir.is_some() {
        stdout.push_str("file,n,k,mode,csv\n");
    }
    for path in paths {
        let result = load_valid(path).and_then(|code| {
            let s = spectrum_closed_form(&code).map_err(domain("spectrum"))?;
            Ok((code, s))
        });
        let (code, spectrum) = match result {
            Ok(pair) => pair,
            Err(failure) => {
                stderr.push_str(&failure.stderr);
                worst = worst.max(failure.code);
                continue;
            }
        };
        let mode = spectral_mode(&spectrum).unwrap_or(0);
        let csv_path = match out_dir {
            Some(dir) => {
                let stem = path
                    .file_stem()
                    .map_or("code".into(), |s| s.to_string_lossy().into_owned());
                let target = dir.join(format!("{stem}.csv"));
                if let Err(e) = fs::write(&target, spectrum.to_csv()) {
                    stderr.push_str(&format!("{}: {e}\n", target.display()));
                    worst = worst.max(EXIT_IO);
                    continue;
                }
                Some(target)
            }
            None => None,
        };
        match format {
            Format::Csv => match &csv_path {
                Some(target) => {
                    let _ = writeln!(
                        stdout,
                        "{},{},{},{mode},{}",
                        path.display(),
                        code.n(),
                        code.k(),
                        target.display()
                    );
                }
                None => {
                    let _ = writeln!(
                        stdout,
                        "# file={} n={} k={} mode={mode}",
                        path.display(),
                        code.n(),
                        code.k()
                    );
                    stdout.push_str(&spectrum.to_csv());
                }
            },
            Format::Text => {
                let _ = writeln!(
                    stdout,
                    "{}: n={} k={} mode={mode}",
                    path.display(),
                    code.n(),
                    code.k()
                );
            }
            Format::Json => entries.push(json!({
                "file": path.display().to_string(),
                "n": code.n(),
                "k": code.k(),
                "mode": mode,
                "eigenvalues": spectrum_json(&spectrum),
                "csv": csv_path.map(|p| p.display().to_string()),
            })),
        }
    }
    if format == Format::Json {
        stdout = to_json(&json!({ "files": entries }));
    }
    Ok(Outcome {
        code: worst,
        stdout,
        stderr,
    })
}

pub fn cmd_cospectral(config: &RunConfig, paths: &[PathBuf]) -> Step<Outcome> {
    let codes = paths
        .iter()
        .map(|p| load_valid(p))
        .collect::<Step<Vec<_>>>()?;
    let report = meta_equivalence_scan(&codes).map_err(domain("spectrum"))?;
    let groups: Vec<Value> = report
        .groups
        .iter()
        .map(|g| {
            json!({
                "eigenvalues": spectrum_json(&g.spectrum),
                "members": g.members,
                "permutation_classes": g.permutation_classes,
                "meta_equivalent": g.is_meta_equivalent(),
            })
        })
        .collect();
    let value = json!({
        "length": codes.first().map(|c| c.len()),
        "files": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "spectral_groups": report.groups.len(),
        "meta_equivalence_witnesses": report.witnesses().count(),
        "groups": groups,
    });
    Ok(Outcome::ok(render(config, &value)?))
}

pub fn cmd_dash(config: &RunConfig, code_path: &Path, dash_path: &Path) -> Step<Outcome> {
    let code = load_valid(code_path)?;
    let graph = QuotientGraph::build(&code).map_err(domain("graph"))?;
    let text = fs::read_to_string(dash_path)
        .map_err(|e| Outcome::fail(EXIT_IO, format!("{}: {e}", dash_path.display())))?;
    let partial = DashingAssignment::parse(&text).map_err(domain("dashing"))?;
    match complete_dashing(&graph, &partial) {
        Ok(done) => {
            let stdout = match config.format {
                Some(Format::Json) => to_json(&json!({
                    "status": "complete",
                    "edges": done.iter().map(|(e, b)| json!([e.u, e.v, e.color, u8::from(b)])).collect::<Vec<_>>(),
                })),
                Some(Format::Csv) => {
                    return Err(Outcome::fail(EXIT_DOMAIN, "dash: csv output not supported"))
                }
                _ => done.to_string(),
            };
            Ok(Outcome::ok(stdout))
        }
        Err(DashingFailure::NotAnEdge(e)) => Err(Outcome::fail(
            EXIT_DOMAIN,
            format!("dashing: ({e}) is not an edge of the graph"),
        )),
        Err(DashingFailure::Stuck { unknown, partial }) => {
            let value = json!({
                "status": "stuck",
                "known": partial.len(),
                "unknown": unknown.iter().map(|e| json!([e.u, e.v, e.color])).collect::<Vec<_>>(),
            });
            Ok(Outcome::fail(
                EXIT_STUCK,
                format!("dashing: stuck with {} unknown edges", unknown.len()),
            )
            .with_stdout(to_json(&value)))
        }
        Err(DashingFailure::Inconsistent { quadrilateral, .. }) => {
            let value = json!({
                "status": "inconsistent",
                "quadrilateral": {
                    "colors": [quadrilateral.colors.0, quadrilateral.colors.1],
                    "vertices": quadrilateral.vertices,
                },
            });
            Ok(
                Outcome::fail(EXIT_INCONSISTENT, "dashing: even quadrilateral")
                    .with_stdout(to_json(&value)),
            )
        }
    }
}

pub fn cmd_trees(config: &RunConfig, path: &Path, oracle: bool) -> Step<Outcome> {
    let code = load_valid(path)?;
    let spectrum = spectrum_closed_form(&code).map_err(domain("spectrum"))?;
    let trees = tree_count_from_spectrum(&spectrum).map_err(domain("counting"))?;
    let mut value = json!({
        "n": code.n(),
        "k": code.k(),
        "trees": trees.to_string(),
    });
    let mut agree = true;
    if oracle {
        let obj = value.as_object_mut().expect("object");
        if code.k() == 0 && code.n() >= 1 {
            let closed = tree_count_hypercube(code.n()).map_err(domain("counting"))?;
            agree &= closed == trees;
            obj.insert("hypercube_formula".into(), json!(closed.to_string()));
        }
        if (1usize << code.n()) <= DETERMINANT_LIMIT {
            let graph = QuotientGraph::build(&code).map_err(domain("graph"))?;
            let det = tree_count_determinant(&graph).map_err(domain("counting"))?;
            agree &= det == trees;
            obj.insert("determinant".into(), json!(det.to_string()));
        }
        obj.insert("agree".into(), json!(agree));
    }
    let stdout = render(config, &value)?;
    if !agree {
        return Ok(Outcome::fail(EXIT_DOMAIN, "counting: oracle disagreement").with_stdout(stdout));
    }
    Ok(Outcome::ok(stdout))
}

pub fn cmd_bounds(config: &RunConfig, path: &Path) -> Step<Outcome> {
    let code = load_valid(path)?;
    let spectrum = spectrum_closed_form(&code).map_err(domain("spectrum"))?;
    let bounds = baobab_bounds(&code, &spectrum).map_err(domain("counting"))?;
    Ok(Outcome::ok(render(config, &bounds.to_json())?))
}

pub fn cmd_graph(path: &Path) -> Step<Outcome> {
    let code = load_valid(path)?;
    let graph = QuotientGraph::build(&code).map_err(domain("graph"))?;
    Ok(Outcome::ok(graph.to_edge_list()))
}
