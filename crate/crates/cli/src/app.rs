//! Argument handling and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use desirability::{AxiomReport, Grid, PairMatrix};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::evaluate::{
    evaluate, Aggregate, BoundsAnswer, Evaluation, InternalError, MatrixOutput, PreferenceAnswer, QueryAnswer,
    RankEntry, Valuation,
};
use crate::output::{number, to_json, Table};
use crate::spec::{load_spec, nonempty, profile_by_name, ProblemSpec, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Preference,
    Similarity,
}

#[derive(Debug, Parser)]
#[command(
    name = "desirability",
    version,
    about = "Rank possible worlds by graded constraint satisfaction"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Override the document's connective profile (min, product, lukasiewicz).
    #[arg(long, global = true)]
    profile: Option<String>,
    /// Grid used by `check` for the connective axioms, as 1/N.
    #[arg(long, global = true, default_value = "1/16")]
    grid: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Worlds by decreasing aggregate desirability.
    Rank { spec: PathBuf },
    /// Connective and relation axiom reports; exits 1 if any check fails.
    Check { spec: PathBuf },
    /// Pairwise preference or similarity matrix.
    Matrix {
        spec: PathBuf,
        #[arg(long, value_enum)]
        kind: MatrixKind,
    },
    /// Necessary and possible desirability of a proposition, or with
    /// `--given`, its necessary and possible preference over another.
    Bounds {
        spec: PathBuf,
        #[arg(long)]
        of: String,
        #[arg(long)]
        given: Option<String>,
    },
    /// Everything: aggregate, preference, ranking, similarity, queries,
    /// axiom reports and notes.
    Report { spec: PathBuf },
}

enum Failure {
    Spec(SpecError),
    Internal(InternalError),
    CheckFailed,
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Spec(e)
    }
}

impl From<InternalError> for Failure {
    fn from(e: InternalError) -> Self {
        Failure::Internal(e)
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::CheckFailed) => EXIT_CHECK_FAILED,
        Err(Failure::Spec(e @ SpecError::Parse(_))) => {
            let _ = writeln!(err, "{e}");
            EXIT_PARSE
        }
        Err(Failure::Spec(e @ SpecError::Validation { .. })) => {
            let _ = writeln!(err, "{e}");
            EXIT_VALIDATION
        }
        Err(Failure::Internal(e)) => {
            let _ = writeln!(err, "{e}");
            EXIT_INTERNAL
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<ProblemSpec, SpecError> {
    let mut spec = load_spec(path)?;
    if let Some(name) = &cli.profile {
        spec.profile = profile_by_name(name, "--profile")?;
    }
    Ok(spec)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let grid: Grid = cli
        .grid
        .parse()
        .map_err(|msg: String| SpecError::Parse(format!("--grid: {msg}")))?;
    let path = match &cli.command {
        Command::Rank { spec }
        | Command::Check { spec }
        | Command::Matrix { spec, .. }
        | Command::Bounds { spec, .. }
        | Command::Report { spec } => spec,
    };
    let spec = load(cli, path)?;
    let ev = evaluate(&spec)?;
    let text = match &cli.command {
        Command::Rank { .. } => {
            let ranking = ev.ranking();
            match cli.format {
                Format::Json => to_json(&ranking),
                Format::Table => ranking_table(&ranking).render(),
            }
        }
        Command::Matrix { kind, .. } => {
            let matrix = match kind {
                MatrixKind::Preference => ev.preference_matrix(),
                MatrixKind::Similarity => ev.similarity_matrix()?,
            };
            match cli.format {
                Format::Json => to_json(&MatrixJson(&matrix)),
                Format::Table => matrix_tables(&matrix),
            }
        }
        Command::Bounds { of, given, .. } => {
            let of = nonempty(spec.proposition(of, "--of")?, "--of")?;
            let given = given
                .as_deref()
                .map(|g| spec.proposition(g, "--given").and_then(|p| nonempty(p, "--given")))
                .transpose()?;
            let answer = ev.bounds(&of, given.as_ref())?;
            match cli.format {
                Format::Json => to_json(&answer),
                Format::Table => bounds_table(&answer).render(),
            }
        }
        Command::Check { .. } => {
            let reports = ev.reports(grid)?;
            let pass = reports.iter().all(AxiomReport::all_pass);
            let text = match cli.format {
                Format::Json => to_json(&CheckJson {
                    pass,
                    reports: &reports,
                    notes: ev.notes(),
                }),
                Format::Table => check_text(&reports, &ev.notes(), pass),
            };
            out.write_all(text.as_bytes()).map_err(io_failure)?;
            return if pass { Ok(()) } else { Err(Failure::CheckFailed) };
        }
        Command::Report { .. } => report(&ev, grid, cli.format)?,
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Internal(InternalError(format!("writing output: {e}")))
}

struct MatrixJson<'a>(&'a MatrixOutput);

impl Serialize for MatrixJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            MatrixOutput::Exact(m) => m.rows().serialize(s),
            MatrixOutput::Bounds(parts) => {
                let mut map = s.serialize_map(Some(parts.len()))?;
                for (name, m) in parts {
                    map.serialize_entry(name, &m.rows())?;
                }
                map.end()
            }
        }
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    pass: bool,
    reports: &'a [AxiomReport],
    notes: Vec<&'static str>,
}

pub fn ranking_table(ranking: &[RankEntry]) -> Table {
    let interval = ranking.iter().any(|e| e.upper.is_some());
    let mut t = if interval {
        Table::new(&["rank", "world", "valuation", "value", "upper"]).numeric(&[0, 1, 3, 4])
    } else {
        Table::new(&["rank", "world", "valuation", "value"]).numeric(&[0, 1, 3])
    };
    for (i, e) in ranking.iter().enumerate() {
        let mut cells = vec![
            (i + 1).to_string(),
            e.world.to_string(),
            e.valuation.to_string(),
            number(e.value),
        ];
        if interval {
            cells.push(e.upper.map(number).unwrap_or_default());
        }
        t.row(cells);
    }
    t
}

fn square_table(m: &PairMatrix, title: Option<&str>) -> Table {
    let n = m.size();
    let labels: Vec<String> = (0..n).map(|w| format!("w{w}")).collect();
    let mut headers = vec![""];
    headers.extend(labels.iter().map(String::as_str));
    let mut t = Table::new(&headers).numeric(&(1..=n).collect::<Vec<_>>());
    if let Some(title) = title {
        t = t.titled(title);
    }
    for (i, row) in m.rows().iter().enumerate() {
        let mut cells = vec![labels[i].clone()];
        cells.extend(row.iter().map(|&v| number(v)));
        t.row(cells);
    }
    t
}

pub fn matrix_tables(matrix: &MatrixOutput) -> String {
    match matrix {
        MatrixOutput::Exact(m) => square_table(m, None).render(),
        MatrixOutput::Bounds(parts) => parts
            .iter()
            .map(|(name, m)| square_table(m, Some(name)).render())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub fn bounds_table(answer: &BoundsAnswer) -> Table {
    let mut t = Table::new(&["quantity", "value"]).numeric(&[1]);
    t.row(vec!["necessary".into(), number(answer.necessary)]);
    t.row(vec!["possible".into(), number(answer.possible)]);
    if let Some(r) = &answer.resemblance {
        t.row(vec!["resemblance_lower".into(), number(r.lower)]);
        t.row(vec!["resemblance_upper".into(), number(r.upper)]);
    }
    let title = match &answer.given {
        Some(g) => format!("preference of {} over {}", answer.of, g),
        None => format!("desirability of {}", answer.of),
    };
    t.titled(title)
}

fn prefer_table(answer: &PreferenceAnswer) -> Table {
    let mut t = Table::new(&["quantity", "value"]).numeric(&[1]);
    t.row(vec!["necessary".into(), number(answer.necessary)]);
    t.row(vec!["possible".into(), number(answer.possible)]);
    t.row(vec!["possible_sup_sup".into(), number(answer.possible_sup_sup)]);
    t.titled(format!("preference of {} over {}", answer.p, answer.q))
}

fn check_text(reports: &[AxiomReport], notes: &[&str], pass: bool) -> String {
    let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
    for note in notes {
        s.push_str(&format!("note: {note}\n"));
    }
    let failed: usize = reports.iter().map(|r| r.failing().count()).sum();
    s.push_str(&if pass {
        "all checks pass\n".to_string()
    } else {
        format!("{failed} checks failed\n")
    });
    s
}

#[derive(Serialize)]
struct WorldJson {
    world: usize,
    valuation: Valuation,
}

#[derive(Serialize)]
struct UniverseJson<'a> {
    atoms: &'a [String],
    worlds: Vec<WorldJson>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AggregateJson<'a> {
    Exact {
        formula: &'a str,
        values: &'a [f64],
    },
    Interval {
        formula: &'a str,
        lower: &'a [f64],
        upper: &'a [f64],
    },
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum QueryJson<'a> {
    Rank { result: &'a [RankEntry] },
    Similarity { result: MatrixJson<'a> },
    Prefer { result: &'a PreferenceAnswer },
    Bounds { result: &'a BoundsAnswer },
}

#[derive(Serialize)]
struct ReportJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<&'a str>,
    universe: UniverseJson<'a>,
    profile: String,
    aggregate: AggregateJson<'a>,
    preference: MatrixJson<'a>,
    ranking: &'a [RankEntry],
    similarity: MatrixJson<'a>,
    queries: Vec<QueryJson<'a>>,
    reports: &'a [AxiomReport],
    pass: bool,
    notes: Vec<&'static str>,
}

fn report(ev: &Evaluation<'_>, grid: Grid, format: Format) -> Result<String, Failure> {
    let spec = ev.spec;
    let ranking = ev.ranking();
    let preference = ev.preference_matrix();
    let similarity = ev.similarity_matrix()?;
    let answers = ev.queries()?;
    let reports = ev.reports(grid)?;
    let pass = reports.iter().all(AxiomReport::all_pass);
    let formula = spec.aggregate_text.as_str();

    if format == Format::Table {
        let mut sections = Vec::new();
        if let Some(d) = &spec.description {
            sections.push(format!("{d}\n"));
        }
        sections.push(format!("profile {}\naggregate {}\n", spec.profile, formula));
        sections.push(ranking_table(&ranking).titled("ranking").render());
        sections.push(format!("preference\n{}", matrix_tables(&preference)));
        sections.push(format!("similarity\n{}", matrix_tables(&similarity)));
        for answer in &answers {
            sections.push(match answer {
                QueryAnswer::Prefer(a) => prefer_table(a).render(),
                QueryAnswer::Bounds(b) => bounds_table(b).render(),
                // rank and similarity are already shown above
                QueryAnswer::Rank(_) | QueryAnswer::Similarity(_) => continue,
            });
        }
        sections.push(check_text(&reports, &ev.notes(), pass));
        return Ok(sections.join("\n"));
    }

    let aggregate = match &ev.aggregate {
        Aggregate::Exact(d) => AggregateJson::Exact {
            formula,
            values: d.values(),
        },
        Aggregate::Interval(i) => AggregateJson::Interval {
            formula,
            lower: i.lower().values(),
            upper: i.upper().values(),
        },
    };
    let queries = answers
        .iter()
        .map(|a| match a {
            QueryAnswer::Rank(r) => QueryJson::Rank { result: r },
            QueryAnswer::Similarity(m) => QueryJson::Similarity { result: MatrixJson(m) },
            QueryAnswer::Prefer(p) => QueryJson::Prefer { result: p },
            QueryAnswer::Bounds(b) => QueryJson::Bounds { result: b },
        })
        .collect();
    let worlds = (0..spec.universe.len())
        .map(|w| WorldJson {
            world: w,
            valuation: ev.valuation(w),
        })
        .collect();
    Ok(to_json(&ReportJson {
        description: spec.description.as_deref(),
        universe: UniverseJson {
            atoms: spec.universe.atoms(),
            worlds,
        },
        profile: spec.profile.to_string(),
        aggregate,
        preference: MatrixJson(&preference),
        ranking: &ranking,
        similarity: MatrixJson(&similarity),
        queries,
        reports: &reports,
        pass,
        notes: ev.notes(),
    }))
}
