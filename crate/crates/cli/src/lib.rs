//! Batch front end: parses one request, runs one computation, renders one
//! document.
//!
//! Documents are JSON by default, with object keys in sorted order and big
//! integers and rationals as strings. Failures produce a JSON document of the
//! form `{"error": {"kind": ..., "message": ...}}` and a nonzero status:
//!
//! | status | meaning |
//! |---|---|
//! | 0 | success |
//! | 1 | a `verify` suite ran and at least one check failed |
//! | 2 | usage or invalid input |
//! | 3 | a resource cap was exceeded |
//! | 4 | power iteration did not converge |
//! | 5 | the output file could not be written |

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dualgarside::dual_braid::{band_generator, braid_to_permutation, partition_to_braid};
use dualgarside::free_cumulants::{
    count_joining_tuples, cumulants_from_moments, format_rational, moments_from_cumulants, product_cumulants,
    series_compose_check, series_solve_r, ExactSeq, FormalSeries, SeqRole,
};
use dualgarside::garside_count::{
    count_braids, count_by_last, determinant_exact, determinant_formula, incidence_matrix, spectral_radius,
};
use dualgarside::nc_lattice::{kreweras, mobius_oracle, mobius_to_zero, rotate, KREWERAS_SQUARE_SHIFT};
use dualgarside::{Error, LatticeFamily, Limits, NcPartition};

mod verify;

pub use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_NONCONVERGENCE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "dualgarside", version, about = "Noncrossing partitions, dual braid counts and free cumulants")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the document to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Cap overrides as `key=value,...`, applied after DUALGARSIDE_CAPS.
    #[arg(long, global = true, value_name = "K")]
    cap: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the partitions of one family.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "free")]
        family: LatticeFamily,
    },
    /// The normality incidence matrix over NC(n).
    Matrix {
        #[arg(long)]
        n: usize,
    },
    /// Number of normal sequences of length d.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Normal sequences of length d, by last partition.
    CountByLast {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Exact determinant of the incidence matrix.
    Det {
        #[arg(long)]
        n: usize,
    },
    /// Closed-form determinant magnitude.
    DetFormula {
        #[arg(long)]
        n: usize,
    },
    /// Perron root of the incidence matrix by power iteration.
    Spectral {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Kreweras complement of a partition given as JSON blocks.
    Kreweras {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        partition: String,
    },
    /// Möbius values μ(π, 0_n), for one partition or all of NC(n).
    Mobius {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        partition: Option<String>,
    },
    /// Moments from cumulants.
    Moments {
        #[arg(long, default_value = "free")]
        family: LatticeFamily,
        /// Cumulants R_1, R_2, ... as comma-separated integers or p/q.
        #[arg(long)]
        seq: String,
    },
    /// Cumulants from moments.
    Cumulants {
        #[arg(long, default_value = "free")]
        family: LatticeFamily,
        /// Moments M_1, M_2, ... as comma-separated integers or p/q.
        #[arg(long)]
        seq: String,
    },
    /// Cumulants of a product of independent variables.
    ProductCumulants {
        #[arg(long, default_value = "free")]
        family: LatticeFamily,
        /// Truncation order; defaults to the shortest factor.
        #[arg(long)]
        order: Option<usize>,
        /// Number of factors when a single --seq is given.
        #[arg(long)]
        k: Option<usize>,
        /// Cumulant sequence of one factor; repeat for each factor.
        #[arg(long, required = true)]
        seq: Vec<String>,
    },
    /// Number of k-tuples in a family whose join is 1_n.
    JoinCount {
        #[arg(long, default_value = "free")]
        family: LatticeFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Solve R(z M(z)) = M(z) for R given the moments M_1, M_2, ...
    SolveR {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Braid word of a partition (or of one band generator) and its projection.
    BraidWord {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "band")]
        partition: Option<String>,
        /// Band generator `i,j`.
        #[arg(long)]
        band: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub body: String,
    /// Destination requested with `--out`; `None` means standard output.
    pub out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

enum Doc {
    Json(Value),
    Csv(String),
}

/// Parses `args` (program name first) and runs the request. `env_caps` is the
/// value of the caps environment variable, if set.
pub fn run<I, T>(args: I, env_caps: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    status: EXIT_OK,
                    body: e.render().to_string(),
                    out: None,
                };
            }
            return failure(Failure::Usage(e.render().to_string().trim().to_string()));
        }
    };
    let out = cli.out.clone();
    match execute(&cli, env_caps) {
        Ok((doc, status)) => {
            let body = match doc {
                Doc::Json(v) => format!("{}\n", serde_json::to_string(&v).expect("documents serialize")),
                Doc::Csv(s) => s,
            };
            Output { status, body, out }
        }
        Err(f) => failure(f),
    }
}

fn failure(f: Failure) -> Output {
    let (status, error) = match f {
        Failure::Usage(message) => (EXIT_USAGE, json!({"kind": "usage", "message": message})),
        Failure::Lib(e) => {
            let message = e.to_string();
            match e {
                Error::InvalidInput(_) => (EXIT_USAGE, json!({"kind": "invalid_input", "message": message})),
                Error::ResourceLimit { operation, requested, cap } => (
                    EXIT_RESOURCE,
                    json!({"kind": "resource_limit", "message": message, "operation": operation, "requested": requested, "cap": cap}),
                ),
                Error::NonConvergence {
                    iterations,
                    last_estimate,
                    last_change,
                } => (
                    EXIT_NONCONVERGENCE,
                    json!({"kind": "non_convergence", "message": message, "iterations": iterations, "last_estimate": last_estimate, "last_change": last_change}),
                ),
            }
        }
    };
    Output {
        status,
        body: format!("{}\n", serde_json::to_string(&json!({ "error": error })).expect("documents serialize")),
        out: None,
    }
}

/// Error document for a failed write to `--out`.
pub fn io_failure(path: &std::path::Path, err: &std::io::Error) -> Output {
    let error = json!({"kind": "io", "message": format!("cannot write {}: {err}", path.display())});
    Output {
        status: EXIT_IO,
        body: format!("{}\n", serde_json::to_string(&json!({ "error": error })).expect("documents serialize")),
        out: None,
    }
}

fn limits(cli: &Cli, env_caps: Option<&str>) -> Outcome<Limits> {
    let mut l = Limits::default();
    if let Some(spec) = env_caps {
        l = l.with_overrides(spec)?;
    }
    if let Some(spec) = &cli.cap {
        l = l.with_overrides(spec)?;
    }
    Ok(l)
}

fn blocks_json(p: &NcPartition) -> Value {
    json!(p.blocks())
}

fn parse_partition(n: Option<usize>, text: &str) -> Outcome<NcPartition> {
    let blocks: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--partition is not a JSON list of blocks: {e}")))?;
    let n = match n {
        Some(n) => n,
        None => blocks.iter().flatten().copied().max().unwrap_or(0),
    };
    Ok(NcPartition::new(n, blocks)?)
}

fn seq_json(s: &ExactSeq) -> Value {
    json!(s.terms().iter().map(format_rational).collect::<Vec<_>>())
}

fn seq_csv(s: &ExactSeq) -> Outcome<String> {
    csv_rows(&["index", "value"], s.terms().iter().enumerate().map(|(i, x)| vec![(i + 1).to_string(), format_rational(x)]))
}

fn csv_rows(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Outcome<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn execute(cli: &Cli, env_caps: Option<&str>) -> Outcome<(Doc, i32)> {
    let l = limits(cli, env_caps)?;
    let csv = cli.format == Format::Csv;
    let name = command_name(&cli.command);
    let no_csv = || Failure::Usage(format!("CSV output is not available for `{name}`"));

    let doc = match &cli.command {
        Command::Enumerate { n, family } => {
            let parts = family.partitions(*n, l)?;
            if csv {
                Doc::Csv(csv_rows(
                    &["index", "blocks"],
                    parts.iter().enumerate().map(|(i, p)| vec![i.to_string(), json!(p.blocks()).to_string()]),
                )?)
            } else {
                let list: Vec<Value> = parts.iter().map(|p| json!(p.blocks())).collect();
                Doc::Json(json!({"command": name, "n": n, "family": family.name(), "count": parts.len(), "partitions": list}))
            }
        }
        Command::Matrix { n } => {
            let m = incidence_matrix(*n, l)?;
            if csv {
                let mut buf = Vec::new();
                m.write_csv(&mut buf)?;
                Doc::Csv(String::from_utf8(buf).expect("csv output is utf-8"))
            } else {
                let order: Vec<Value> = m.order().iter().map(blocks_json).collect();
                let rows: Vec<&[u8]> = (0..m.size()).map(|i| m.row(i)).collect();
                Doc::Json(json!({"command": name, "n": n, "size": m.size(), "ones": m.count_ones(), "order": order, "entries": rows}))
            }
        }
        Command::Count { n, d } => {
            let c = count_braids(*n, *d, l)?;
            json_only(csv, no_csv, json!({"command": name, "n": n, "d": d, "count": c.to_string()}))?
        }
        Command::CountByLast { n, d } => {
            let v = count_by_last(*n, *d, l)?;
            if csv {
                Doc::Csv(csv_rows(
                    &["partition", "count"],
                    v.values.iter().map(|(p, c)| vec![blocks_json(p).to_string(), c.to_string()]),
                )?)
            } else {
                let values: Vec<Value> =
                    v.values.iter().map(|(p, c)| json!({"partition": blocks_json(p), "count": c.to_string()})).collect();
                Doc::Json(json!({"command": name, "n": n, "d": d, "total": v.total().to_string(), "values": values}))
            }
        }
        Command::Det { n } => {
            let det = determinant_exact(*n, l)?;
            json_only(
                csv,
                no_csv,
                json!({"command": name, "n": n, "determinant": det.to_string(), "magnitude": det.magnitude().to_string()}),
            )?
        }
        Command::DetFormula { n } => {
            let v = determinant_formula(*n)?;
            json_only(csv, no_csv, json!({"command": name, "n": n, "value": v.to_string()}))?
        }
        Command::Spectral { n, tol } => {
            let e = spectral_radius(*n, *tol, l)?;
            json_only(csv, no_csv, json!({"command": name, "n": n, "tol": tol, "estimate": e}))?
        }
        Command::Kreweras { n, partition } => {
            let p = parse_partition(*n, partition)?;
            let k = kreweras(&p);
            json_only(
                csv,
                no_csv,
                json!({
                    "command": name,
                    "n": p.n(),
                    "partition": blocks_json(&p),
                    "complement": blocks_json(&k),
                    "complement_squared": blocks_json(&kreweras(&k)),
                    "square_is_rotation_by": KREWERAS_SQUARE_SHIFT,
                    "square_matches_rotation": kreweras(&k) == rotate(&p, KREWERAS_SQUARE_SHIFT),
                }),
            )?
        }
        Command::Mobius { n, partition } => {
            let parts = match (partition, n) {
                (Some(text), _) => vec![parse_partition(*n, text)?],
                (None, Some(n)) => dualgarside::nc_lattice::enumerate_nc(*n, l)?,
                (None, None) => return Err(Failure::Usage("mobius needs --partition or --n".into())),
            };
            let values: Vec<Value> = parts
                .iter()
                .map(|p| {
                    let mut v = json!({"partition": blocks_json(p), "mobius": mobius_to_zero(p).to_string()});
                    if let Ok(o) = mobius_oracle(p, l) {
                        v["oracle"] = json!(o.to_string());
                    }
                    v
                })
                .collect();
            json_only(csv, no_csv, json!({"command": name, "n": parts[0].n(), "values": values}))?
        }
        Command::Moments { family, seq } => {
            let r = ExactSeq::parse(seq, SeqRole::Cumulants)?;
            let m = moments_from_cumulants(&r, *family, l)?;
            if csv {
                Doc::Csv(seq_csv(&m)?)
            } else {
                Doc::Json(json!({"command": name, "family": family.name(), "cumulants": seq_json(&r), "moments": seq_json(&m)}))
            }
        }
        Command::Cumulants { family, seq } => {
            let m = ExactSeq::parse(seq, SeqRole::Moments)?;
            let r = cumulants_from_moments(&m, *family, l)?;
            if csv {
                Doc::Csv(seq_csv(&r)?)
            } else {
                Doc::Json(json!({"command": name, "family": family.name(), "moments": seq_json(&m), "cumulants": seq_json(&r)}))
            }
        }
        Command::ProductCumulants { family, order, k, seq } => {
            let mut factors = seq.iter().map(|s| ExactSeq::parse(s, SeqRole::Cumulants)).collect::<Result<Vec<_>, _>>()?;
            if let Some(k) = k {
                match factors.len() {
                    1 => factors = vec![factors[0].clone(); *k],
                    len if len == *k => {}
                    len => return Err(Failure::Usage(format!("--k {k} given with {len} sequences"))),
                }
            }
            let order = order.unwrap_or_else(|| factors.iter().map(ExactSeq::len).min().unwrap_or(0));
            let r = product_cumulants(&factors, *family, order, l)?;
            if csv {
                Doc::Csv(seq_csv(&r)?)
            } else {
                let fs: Vec<Value> = factors.iter().map(seq_json).collect();
                Doc::Json(json!({"command": name, "family": family.name(), "order": order, "factors": fs, "cumulants": seq_json(&r)}))
            }
        }
        Command::JoinCount { family, n, k } => {
            let c = count_joining_tuples(*family, *n, *k, l)?;
            json_only(csv, no_csv, json!({"command": name, "family": family.name(), "n": n, "k": k, "count": c.to_string()}))?
        }
        Command::SolveR { seq, order } => {
            let mut m = ExactSeq::parse(seq, SeqRole::Moments)?;
            if let Some(order) = order {
                m = m.truncate(*order)?;
            }
            let ms = FormalSeries::from_seq(&m);
            let r = series_solve_r(&ms);
            let r_seq = r.to_seq(SeqRole::Cumulants).expect("order is at least 1");
            if csv {
                Doc::Csv(seq_csv(&r_seq)?)
            } else {
                Doc::Json(json!({
                    "command": name,
                    "order": ms.order(),
                    "m_series": ms,
                    "r_series": r,
                    "composition_holds": series_compose_check(&ms, &r)?,
                }))
            }
        }
        Command::BraidWord { n, partition, band } => {
            let (label, word) = match (partition, band) {
                (Some(text), None) => {
                    let p = parse_partition(*n, text)?;
                    (json!({"partition": blocks_json(&p)}), partition_to_braid(&p))
                }
                (None, Some(text)) => {
                    let ij: Vec<usize> = text
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| Failure::Usage(format!("--band `{text}` is not `i,j`")))?;
                    if ij.len() != 2 {
                        return Err(Failure::Usage(format!("--band `{text}` is not `i,j`")));
                    }
                    let n = n.unwrap_or(ij[1]);
                    (json!({"band": ij}), band_generator(ij[0], ij[1], n)?)
                }
                _ => return Err(Failure::Usage("braid-word needs exactly one of --partition or --band".into())),
            };
            let perm = braid_to_permutation(&word);
            let mut doc = json!({
                "command": name,
                "n": word.strands(),
                "letters": word,
                "word": word.to_string(),
                "permutation": perm,
                "cycles": perm.to_string(),
            });
            doc.as_object_mut().unwrap().extend(label.as_object().unwrap().clone());
            json_only(csv, no_csv, doc)?
        }
        Command::Verify { suite, seed } => {
            let report = verify::run(*suite, *seed, l)?;
            let status = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            return Ok((json_only(csv, no_csv, report.to_json())?, status));
        }
    };
    Ok((doc, EXIT_OK))
}

fn json_only(csv: bool, no_csv: impl FnOnce() -> Failure, v: Value) -> Outcome<Doc> {
    if csv {
        Err(no_csv())
    } else {
        Ok(Doc::Json(v))
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Matrix { .. } => "matrix",
        Command::Count { .. } => "count",
        Command::CountByLast { .. } => "count-by-last",
        Command::Det { .. } => "det",
        Command::DetFormula { .. } => "det-formula",
        Command::Spectral { .. } => "spectral",
        Command::Kreweras { .. } => "kreweras",
        Command::Mobius { .. } => "mobius",
        Command::Moments { .. } => "moments",
        Command::Cumulants { .. } => "cumulants",
        Command::ProductCumulants { .. } => "product-cumulants",
        Command::JoinCount { .. } => "join-count",
        Command::SolveR { .. } => "solve-r",
        Command::BraidWord { .. } => "braid-word",
        Command::Verify { .. } => "verify",
    }
}
