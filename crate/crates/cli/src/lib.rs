//! Command-line front end: single symbols, verification suites, tables,
//! generating-function dumps and the reconciliation report.

pub mod reconcile;
pub mod table;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polarcg::basis::{CGKey, PassageKey, PhiReading};
use polarcg::coupling::{
    cg_hypergeometric, gaunt_cg, oracle_value, passage_element, symmetry_orbit, threej, CGValue, Formula,
    PhaseConvention, Route,
};
use polarcg::exact::{parity_sign, ratio, HalfInt};
use polarcg::recoupling::{
    ninej, recoupling_value_with_budget, sector_polynomial, sixj, RecouplingLabels, Side, DEFAULT_BUDGET,
};
use polarcg::series::{cg_gf_closed_form, cg_gf_integral, threej_gf_form};
use polarcg::Error;

use table::{emit_table, OutputFormat, TableKind};

#[derive(Parser, Debug)]
#[command(name = "polarcg", version, about = "Exact angular-momentum coupling coefficients")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also print a decimal approximation with this many digits.
    #[arg(long, global = true)]
    pub decimal: Option<u32>,
    /// Sign convention for printed values.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Calibrated)]
    pub phase_convention: Convention,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Printed,
    Calibrated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CgPipeline {
    Oracle,
    Hypergeometric,
    Gaunt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Abs,
    Signed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    MappedJ2,
    LiteralJ2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GfWhich {
    #[value(name = "3j")]
    ThreeJ,
    Cg,
    Recoupling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pipelines,
    Orthogonality,
    Symmetry,
    Gf,
    Recoupling,
    Reconcile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    Cg,
    Threej,
    Sixj,
}

#[derive(Args, Debug)]
pub struct CgArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub j1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j3: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m2: String,
    #[arg(long, value_enum, default_value_t = CgPipeline::Oracle)]
    pub pipeline: CgPipeline,
}

#[derive(Args, Debug)]
pub struct PassageArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub j1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub j3: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Abs)]
    pub route: RouteArg,
    /// Reading of the absolute-value map's phase exponent.
    #[arg(long, value_enum, default_value_t = ReadingArg::MappedJ2)]
    pub reading: ReadingArg,
}

#[derive(Args, Debug)]
pub struct GfArgs {
    #[arg(long, value_enum)]
    pub which: GfWhich,
    /// Number of generator factors for `3j`, total degree for `cg`.
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub j3: Option<String>,
    #[arg(long)]
    pub am1: Option<String>,
    #[arg(long)]
    pub am2: Option<String>,
    /// Recoupling labels `j1,j2,j3,j4,j12,j34,j14,j23,j`.
    #[arg(long)]
    pub labels: Option<String>,
    /// Largest expansion order accepted.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clebsch–Gordan coefficient <j1 m1 j2 m2 | j3 m1+m2>.
    Cg(CgArgs),
    /// Wigner 3j symbol.
    Threej {
        /// `j1,j2,j3`
        #[arg(long)]
        row: String,
        /// `m1,m2,m3`
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Wigner 6j symbol from two rows.
    Sixj {
        #[arg(long, num_args = 1, required = true)]
        row: Vec<String>,
    },
    /// Wigner 9j symbol from three rows.
    Ninej {
        #[arg(long, num_args = 1, required = true)]
        row: Vec<String>,
    },
    /// Passage matrix element between the 2D-pair and 4D polar bases.
    Passage(PassageArgs),
    /// Recoupling coefficient from the paired generating functions.
    Recouple {
        /// `j1,j2,j3,j4,j12,j34,j14,j23,j`
        #[arg(long)]
        labels: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
    },
    /// Dump a generating-function expansion as JSON.
    GfExpand(GfArgs),
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_2j: Option<i64>,
    },
    /// Emit a table of exact values.
    Table {
        #[arg(long, value_enum, default_value_t = TableArg::Cg)]
        what: TableArg,
        #[arg(long)]
        max_2j: i64,
    },
}

/// Output and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Exit status for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::IndeterminateTerm { .. } => 2,
        Error::Budget { .. } => 3,
        Error::Consistency(_) => 1,
    }
}

fn half(s: &str, what: &str) -> polarcg::Result<HalfInt> {
    s.parse().map_err(|e: Error| match e {
        Error::Parse(msg) => Error::Parse(format!("{what}: {msg}")),
        other => other,
    })
}

fn halves<const N: usize>(s: &str, what: &str) -> polarcg::Result<[HalfInt; N]> {
    let parts: Vec<HalfInt> = s.split(',').map(|p| half(p, what)).collect::<polarcg::Result<_>>()?;
    parts
        .try_into()
        .map_err(|_| Error::Parse(format!("{what}: expected {N} comma-separated values, got `{s}`")))
}

fn convention(c: Convention) -> PhaseConvention {
    match c {
        Convention::Printed => PhaseConvention::Printed,
        Convention::Calibrated => PhaseConvention::Calibrated,
    }
}

fn render_value(cli: &Cli, v: &CGValue) -> String {
    let shown = v.with_convention(convention(cli.phase_convention));
    let decimal = cli.decimal.map(|d| {
        if shown.imaginary && !shown.real.is_zero() {
            format!("i*{}", shown.real.to_decimal(d))
        } else {
            shown.real.to_decimal(d)
        }
    });
    match cli.format {
        Format::Json => {
            let mut doc = json!({
                "value": shown.to_string(),
                "value_squared": v.squared().to_string(),
                "phase_exponent": v.phase_exponent_raw.to_string(),
            });
            if let Some(d) = decimal {
                doc["decimal"] = json!(d);
            }
            format!("{doc}\n")
        }
        Format::Csv => {
            let mut s = format!(
                "value,value_squared{}\n{},{}",
                if decimal.is_some() { ",decimal" } else { "" },
                shown,
                v.squared()
            );
            if let Some(d) = decimal {
                s.push_str(&format!(",{d}"));
            }
            s.push('\n');
            s
        }
        Format::Text => match decimal {
            Some(d) => format!("{shown}\n{d}\n"),
            None => format!("{shown}\n"),
        },
    }
}

/// The hypergeometric pipeline addressed by a coupling key: the sign-flip
/// orbit supplies an image reachable from nonnegative projections.
fn cg_by_hypergeometric(key: &CGKey) -> polarcg::Result<CGValue> {
    for (image, e) in symmetry_orbit(key)? {
        let (j1, j2, m1, m2) = (image.j1(), image.j2(), image.m1(), image.m2());
        let twice = |x: HalfInt| x.twice();
        let p1 = twice(j2 - j1 + m1 + m2);
        let p2 = twice(m1 + m2 - j2 + j1);
        if p1 < 0 || p2 < 0 {
            continue;
        }
        let a = HalfInt::halve_twice_sum(twice(j1 + j2 + m2 - m1), "passage j1")?;
        let b = HalfInt::halve_twice_sum(twice(j1 + j2 - m2 + m1), "passage j2")?;
        let pk = PassageKey::new(
            a,
            HalfInt::from_twice(p1 / 2),
            b,
            HalfInt::from_twice(p2 / 2),
            image.j3(),
        )?;
        let v = cg_hypergeometric(&pk)?.value();
        return CGValue::from_value(&v.scale(&ratio(parity_sign(e.whole("orbit phase")?), 1)));
    }
    Err(Error::Domain(format!(
        "{key} has no image reachable from nonnegative projections"
    )))
}

fn run_cg(cli: &Cli, a: &CgArgs) -> polarcg::Result<String> {
    let key = CGKey::new(
        half(&a.j1, "j1")?,
        half(&a.j2, "j2")?,
        half(&a.j3, "j3")?,
        half(&a.m1, "m1")?,
        half(&a.m2, "m2")?,
    )?;
    let v = match a.pipeline {
        CgPipeline::Oracle => CGValue::from_value(&oracle_value(&key))?,
        CgPipeline::Hypergeometric => cg_by_hypergeometric(&key)?,
        CgPipeline::Gaunt => gaunt_cg(key.j1(), key.j2(), key.j3(), key.m1(), key.m2())?,
    };
    Ok(render_value(cli, &v))
}

fn run_gf(a: &GfArgs) -> polarcg::Result<String> {
    let need = |o: &Option<String>, what: &str| -> polarcg::Result<HalfInt> {
        half(
            o.as_deref()
                .ok_or_else(|| Error::Parse(format!("--{what} is required")))?,
            what,
        )
    };
    let degree = || a.degree.ok_or_else(|| Error::Parse("--degree is required".into()));
    let doc = match a.which {
        GfWhich::ThreeJ => {
            let order = degree()?;
            if order > a.budget {
                return Err(Error::Budget {
                    required: order,
                    budget: a.budget,
                });
            }
            threej_gf_form(3 * order).exp()?.to_json()
        }
        GfWhich::Cg => {
            let (j3, a1, a2) = (need(&a.j3, "j3")?, need(&a.am1, "am1")?, need(&a.am2, "am2")?);
            let n = degree()?;
            json!({
                "integral": cg_gf_integral(j3, a1, a2, n)?.to_json(),
                "closed_form": cg_gf_closed_form(j3, a1, a2, n, Formula::Corrected)?.to_json(),
            })
        }
        GfWhich::Recoupling => {
            let labels: RecouplingLabels = a
                .labels
                .as_deref()
                .ok_or_else(|| Error::Parse("--labels is required".into()))?
                .parse()?;
            labels.validate()?;
            if labels.order() > a.budget {
                return Err(Error::Budget {
                    required: labels.order(),
                    budget: a.budget,
                });
            }
            json!({
                "labels": labels.as_array().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "first": sector_polynomial(&labels, Side::First)?.to_json(),
                "second": sector_polynomial(&labels, Side::Second)?.to_json(),
            })
        }
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))
}

fn run_verify(cli: &Cli, suite: Suite, max_2j: Option<i64>) -> Outcome {
    if suite == Suite::Reconcile {
        let rows = reconcile::reconcile();
        let stdout = match cli.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).expect("json")),
            _ => reconcile::render_text(&rows),
        };
        return Outcome { stdout, code: 0 };
    }
    let results = match suite {
        Suite::Pipelines => verify::pipelines(max_2j.unwrap_or(8)),
        Suite::Orthogonality => verify::orthogonality(max_2j.unwrap_or(8)),
        Suite::Symmetry => vec![verify::verify_symmetry(max_2j.unwrap_or(8))],
        Suite::Gf => verify::gf(max_2j.unwrap_or(4)),
        Suite::Recoupling => verify::recoupling(max_2j.unwrap_or(3)),
        Suite::Reconcile => unreachable!(),
    };
    let ok = results.iter().all(|r| r.passed());
    let stdout = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&results).expect("json")),
        _ => results.iter().map(|r| format!("{r}\n")).collect(),
    };
    Outcome {
        stdout,
        code: if ok { 0 } else { 1 },
    }
}

fn run_inner(cli: &Cli) -> polarcg::Result<Outcome> {
    let text = |s: String| Ok(Outcome { stdout: s, code: 0 });
    match &cli.command {
        Command::Cg(a) => text(run_cg(cli, a)?),
        Command::Threej { row, m } => {
            let j: [HalfInt; 3] = halves(row, "j row")?;
            let m: [HalfInt; 3] = halves(m, "m row")?;
            text(render_value(cli, &threej(j[0], j[1], j[2], m[0], m[1], m[2])?))
        }
        Command::Sixj { row } => {
            if row.len() != 2 {
                return Err(Error::Parse(format!("sixj takes two --row values, got {}", row.len())));
            }
            let a: [HalfInt; 3] = halves(&row[0], "first row")?;
            let b: [HalfInt; 3] = halves(&row[1], "second row")?;
            text(render_value(cli, &sixj(a[0], a[1], a[2], b[0], b[1], b[2])?))
        }
        Command::Ninej { row } => {
            if row.len() != 3 {
                return Err(Error::Parse(format!(
                    "ninej takes three --row values, got {}",
                    row.len()
                )));
            }
            let rows = [
                halves(&row[0], "first row")?,
                halves(&row[1], "second row")?,
                halves(&row[2], "third row")?,
            ];
            text(render_value(cli, &ninej(rows)?))
        }
        Command::Passage(a) => {
            let key = PassageKey::new(
                half(&a.j1, "j1")?,
                half(&a.m1, "m1")?,
                half(&a.j2, "j2")?,
                half(&a.m2, "m2")?,
                half(&a.j3, "j3")?,
            )?;
            let route = match a.route {
                RouteArg::Abs => Route::Abs,
                RouteArg::Signed => Route::Signed,
            };
            let reading = match a.reading {
                ReadingArg::MappedJ2 => PhiReading::MappedJ2,
                ReadingArg::LiteralJ2 => PhiReading::LiteralJ2,
            };
            text(render_value(cli, &passage_element(&key, route, reading)?))
        }
        Command::Recouple { labels, budget } => {
            let labels: RecouplingLabels = labels.parse()?;
            text(render_value(cli, &recoupling_value_with_budget(&labels, *budget)?))
        }
        Command::GfExpand(a) => text(run_gf(a)?),
        Command::Verify { suite, max_2j } => Ok(run_verify(cli, *suite, *max_2j)),
        Command::Table { what, max_2j } => {
            let kind = match what {
                TableArg::Cg => TableKind::Cg,
                TableArg::Threej => TableKind::ThreeJ,
                TableArg::Sixj => TableKind::SixJ,
            };
            let format = match cli.format {
                Format::Text | Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            text(emit_table(kind, *max_2j, format, cli.decimal)?)
        }
    }
}

/// Runs one parsed invocation. Errors become a one-line diagnostic on
/// stdout-free output with the matching exit status.
pub fn run(cli: &Cli) -> (Outcome, Option<String>) {
    match run_inner(cli) {
        Ok(o) => (o, None),
        Err(e) => (
            Outcome {
                stdout: String::new(),
                code: exit_code(&e),
            },
            Some(format!("error: {e}")),
        ),
    }
}
