//! Command dispatch for the `cardmetric` binary.
//!
//! [`run`] parses a command line, executes it and returns the process exit
//! status: 0 on success, 1 on a domain error, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use cardmetric::cayley::build_color_digraph;
use cardmetric::fixtures::default_fixtures;
use cardmetric::geometry::{
    diameter_growth, identity_between, qi_violation_scan, run_verification_suite,
    seeded_bijections, Fixture, SuiteConfig,
};
use cardmetric::group::DEFAULT_AUTOMORPHISM_BOUND;
use cardmetric::groupspec::{parse_group_spec, SpecError};
use cardmetric::isometry::{
    color_permuting_auts, color_preserving_auts_bruteforce, isometry_group_bruteforce,
};
use cardmetric::metrics::{
    cardinal_distance, cardinal_norm, metric_table, word_ball, word_distance, word_norm,
};
use cardmetric::notation::{parse_element, ParseError};
use cardmetric::{Element, GeneratedGroup, GroupMap, MetricKind, MetricTable, TruncationRequest};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "cardmetric",
    version,
    about = "Cardinal and word metrics on generated groups"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON group-spec document.
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Metric::Cardinal)]
    metric: Metric,
    /// Largest word radius explored before giving up.
    #[arg(long, global = true, value_name = "N", default_value_t = 512)]
    radius_cap: u32,
    /// Largest vertex count for brute-force searches.
    #[arg(
        long,
        global = true,
        value_name = "N",
        env = "CARDMETRIC_BOUND",
        default_value_t = 8
    )]
    bound: usize,
    /// Word-ball radius used as the vertex set of an infinite group.
    #[arg(long, global = true, value_name = "R")]
    ball: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Word,
    Cardinal,
}

impl From<Metric> for MetricKind {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Word => MetricKind::Word,
            Metric::Cardinal => MetricKind::Cardinal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsometryClass {
    /// Color-preserving digraph automorphisms.
    Caut,
    /// Color-permuting digraph automorphisms.
    Paut,
    /// All isometries of the chosen metric.
    Bruteforce,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Norm of one element.
    Norm {
        #[arg(long)]
        element: String,
    },
    /// Distance between two elements.
    Dist {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Full distance table as JSON.
    Table,
    /// Largest distance in the table.
    Diameter,
    /// Cayley color digraph.
    Graph {
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Restrict to the word ball of this radius around the identity.
        #[arg(long, value_name = "R")]
        truncate: Option<u32>,
    },
    /// Enumerate a class of distance-preserving maps.
    Isometries {
        #[arg(long, value_enum, default_value_t = IsometryClass::Paut)]
        class: IsometryClass,
    },
    /// Scan a map from the word metric to the cardinal metric for
    /// quasi-isometry violations.
    Compare {
        #[arg(long = "K", default_value = "1")]
        k: Rational64,
        #[arg(long, default_value = "0")]
        c: Rational64,
        /// `identity` or `seeded:N` for a random bijection from seed N.
        #[arg(long, default_value = "identity")]
        map: String,
    },
    /// Run the verification suite and print one line per check.
    Verify {
        /// Print the report as JSON instead of lines.
        #[arg(long)]
        json: bool,
    },
    /// Diameter of word balls of increasing radius.
    Growth {
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<u32>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("invalid element {text:?}: {source}")]
    Element { text: String, source: ParseError },
    #[error(transparent)]
    Library(#[from] cardmetric::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Runs one command line (including the program name) against the given
/// streams and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                2
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: impl Display) -> Result<()> {
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn load_group(path: &Path) -> Result<GeneratedGroup> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_group_spec(&text)?)
}

fn require_group(common: &Common) -> Result<GeneratedGroup> {
    match &common.spec {
        Some(path) => load_group(path),
        None => Err(CliError::Usage("this command needs --spec FILE".into())),
    }
}

fn element(group: &GeneratedGroup, text: &str) -> Result<Element> {
    parse_element(text, group.backend()).map_err(|source| CliError::Element {
        text: text.to_string(),
        source,
    })
}

/// All elements of a finite group, or the word ball given by `--ball`.
fn universe(group: &GeneratedGroup, common: &Common) -> Result<Vec<Element>> {
    match (group.is_finite(), common.ball) {
        (true, None) => Ok(group.elements()?.to_vec()),
        (_, Some(r)) => Ok(word_ball(group, &group.identity(), r)?),
        (false, None) => Err(CliError::Usage(
            "an infinite group needs --ball R to choose a finite vertex set".into(),
        )),
    }
}

fn table(group: &GeneratedGroup, common: &Common, kind: MetricKind) -> Result<MetricTable> {
    let vertices = universe(group, common)?;
    Ok(metric_table(group, &vertices, kind, common.radius_cap)?)
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn map_json(table_vertices: &[Element], f: &GroupMap) -> Value {
    Value::Array(
        f.images()
            .iter()
            .map(|&i| Value::String(table_vertices[i].to_string()))
            .collect(),
    )
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let common = &cli.common;
    let kind = MetricKind::from(common.metric);
    match &cli.command {
        Command::Norm { element: text } => {
            let group = require_group(common)?;
            let g = element(&group, text)?;
            let n = match kind {
                MetricKind::Cardinal => cardinal_norm(&group, &g)?,
                MetricKind::Word => word_norm(&group, &g, common.radius_cap)?,
            };
            emit(out, n)
        }
        Command::Dist { from, to } => {
            let group = require_group(common)?;
            let (g, h) = (element(&group, from)?, element(&group, to)?);
            let d = match kind {
                MetricKind::Cardinal => cardinal_distance(&group, &g, &h)?,
                MetricKind::Word => word_distance(&group, &g, &h, common.radius_cap)?,
            };
            emit(out, d)
        }
        Command::Table => {
            let group = require_group(common)?;
            emit(out, pretty(&table(&group, common, kind)?))
        }
        Command::Diameter => {
            let group = require_group(common)?;
            emit(out, table(&group, common, kind)?.diameter())
        }
        Command::Graph { format, truncate } => {
            let group = require_group(common)?;
            let request = truncate.map(|radius| TruncationRequest {
                center: group.identity(),
                radius,
                radius_cap: common.radius_cap,
            });
            let d = build_color_digraph(&group, request)?;
            match format {
                GraphFormat::Dot => write!(out, "{}", d.to_dot()).map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
                GraphFormat::Json => emit(out, d.to_json()),
            }
        }
        Command::Isometries { class } => {
            let group = require_group(common)?;
            isometries(&group, common, kind, *class, out)
        }
        Command::Compare { k, c, map } => {
            let group = require_group(common)?;
            let word = table(&group, common, MetricKind::Word)?;
            let cardinal = table(&group, common, MetricKind::Cardinal)?;
            let f = match map.as_str() {
                "identity" => identity_between(&word, &cardinal)?,
                other => {
                    let seed = other
                        .strip_prefix("seeded:")
                        .and_then(|s| s.parse::<u64>().ok())
                        .ok_or_else(|| {
                            CliError::Usage(format!(
                                "--map expects identity or seeded:N, got {other:?}"
                            ))
                        })?;
                    seeded_bijections(word.len(), 1, seed).remove(0)
                }
            };
            let report = qi_violation_scan(&f, *k, *c, &word, &cardinal)?;
            emit(out, pretty(&report))
        }
        Command::Verify { json } => {
            let fixtures = match &common.spec {
                Some(path) => {
                    let group = load_group(path)?;
                    let name = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "spec".into());
                    match (group.is_finite(), common.ball) {
                        (true, None) => vec![Fixture::finite(name, group)],
                        (_, Some(r)) => vec![Fixture::ball(name, group, r)],
                        (false, None) => {
                            return Err(CliError::Usage(
                                "verifying an infinite group needs --ball R".into(),
                            ))
                        }
                    }
                }
                None => default_fixtures(),
            };
            let config = SuiteConfig {
                radius_cap: common.radius_cap,
                brute_force_bound: common.bound,
                ..SuiteConfig::default()
            };
            let report = run_verification_suite(&fixtures, &config);
            if *json {
                emit(out, pretty(&report))?;
            } else {
                for r in &report.results {
                    emit(out, r)?;
                }
            }
            match report.failures().count() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
        Command::Growth { radii } => {
            let group = require_group(common)?;
            for (r, diam) in diameter_growth(&group, kind, radii, common.radius_cap)? {
                emit(out, format!("{r}\t{diam}"))?;
            }
            Ok(())
        }
    }
}

/// A map with its color permutation, when the class has one.
type FoundMap = (GroupMap, Option<Vec<usize>>);

fn isometries(
    group: &GeneratedGroup,
    common: &Common,
    kind: MetricKind,
    class: IsometryClass,
    out: &mut dyn Write,
) -> Result<()> {
    let (label, vertices, mut maps): (&str, Vec<Element>, Vec<FoundMap>) = match class {
        IsometryClass::Caut | IsometryClass::Paut => {
            let d = build_color_digraph(group, None)?;
            if d.vertices().len() > common.bound {
                return Err(cardmetric::Error::BoundExceeded {
                    size: d.vertices().len(),
                    bound: common.bound,
                }
                .into());
            }
            let maps = if class == IsometryClass::Caut {
                color_preserving_auts_bruteforce(&d, common.bound)?
                    .into_iter()
                    .map(|m| (m, None))
                    .collect()
            } else {
                color_permuting_auts(group, &d, DEFAULT_AUTOMORPHISM_BOUND)?
                    .into_iter()
                    .map(|(m, sigma)| (m, Some(sigma.images().to_vec())))
                    .collect()
            };
            let label = if class == IsometryClass::Caut {
                "caut"
            } else {
                "paut"
            };
            (label, d.vertices().to_vec(), maps)
        }
        IsometryClass::Bruteforce => {
            let t = table(group, common, kind)?;
            let maps = isometry_group_bruteforce(&t, common.bound)?
                .into_iter()
                .map(|m| (m, None))
                .collect();
            ("bruteforce", t.vertices().to_vec(), maps)
        }
    };
    maps.sort_by(|a, b| a.0.images().cmp(b.0.images()));
    let entries: Vec<Value> = maps
        .iter()
        .map(|(m, sigma)| match sigma {
            Some(s) => json!({"images": map_json(&vertices, m), "color_permutation": s}),
            None => json!({"images": map_json(&vertices, m)}),
        })
        .collect();
    let doc = json!({
        "class": label,
        "vertices": vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "count": entries.len(),
        "maps": entries,
    });
    emit(out, pretty(&doc))
}
