//! Command-line front end: matrix file I/O and subcommands over the
//! library, with machine-readable reports.
//!
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
//! 3 internal invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewpos::cells::{self, CellLabel};
use skewpos::error::Error;
use skewpos::exact::{parse_rat, Rat};
use skewpos::group::{marsh_rietsch, ChartPoint};
use skewpos::lgv;
use skewpos::pfaffian;
use skewpos::positivity::{self, SkewMatrix, Verdict};
use skewpos::rng::SplitMix64;
use skewpos::weyl::w0_coset_word;

#[derive(Parser)]
#[command(name = "skewpos", about = "Total positivity for skew-symmetric matrices", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the built-in size guards.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Decide total positivity from the signed corner minors.
    CheckPositive {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide total nonnegativity from the perturbed minor curves.
    CheckNonnegative {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Identify the boundary cell of a nonnegative point from its matroid.
    IdentifyCell {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Sample the dense cell at given or seeded-random parameters.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<String>>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample a named boundary cell.
    SampleCell {
        #[arg(long)]
        n: usize,
        /// Cell label "v;w" in window notation.
        #[arg(long)]
        cell: String,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<String>>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sub-Pfaffians and the sign-pattern check.
    Pfaffians {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Recover the parametrization parameters from the minor table.
    RecoverParams {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Export the path diagram of the dense cell (or a named cell) as DOT.
    LgvExport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cell: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Internal(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::CheckPositive { matrix } => {
            let a = read_matrix(matrix)?;
            let (positive, table) = positivity::is_totally_positive(&a)?;
            let minors: Vec<Value> = table
                .values
                .iter()
                .map(|((j, k), v)| json!({"j": j, "k": k, "value": v.to_string()}))
                .collect();
            let report = json!({
                "check": "positive",
                "minors": minors,
                "verdict": if positive { "positive" } else { "not-positive" },
            });
            emit(cli, &report, |out| {
                out.push(format!(
                    "verdict: {}",
                    if positive { "positive" } else { "not-positive" }
                ));
                for ((j, k), v) in &table.values {
                    out.push(format!("M[{j},{k}] = {v}"));
                }
            });
            Ok(flag(positive))
        }
        Command::CheckNonnegative { matrix } => {
            let a = read_matrix(matrix)?;
            let report = positivity::is_totally_nonnegative(&a)?;
            let leading: Vec<Value> = report
                .leading
                .iter()
                .map(|((j, k), term)| match term {
                    Some((deg, coeff)) => json!({
                        "j": j, "k": k,
                        "degree": deg,
                        "coefficient": coeff.to_string(),
                    }),
                    None => json!({"j": j, "k": k, "vanishes": true}),
                })
                .collect();
            let verdict_ok = report.verdict != Verdict::NotNonnegative;
            let payload = json!({
                "check": "nonnegative",
                "leading": leading,
                "verdict": report.verdict.to_string(),
                "witness": report.witness.map(|(j, k)| json!({"j": j, "k": k})),
            });
            emit(cli, &payload, |out| {
                out.push(format!("verdict: {}", report.verdict));
                for ((j, k), term) in &report.leading {
                    match term {
                        Some((deg, coeff)) => {
                            out.push(format!("M[{j},{k}]: degree {deg}, coefficient {coeff}"))
                        }
                        None => out.push(format!("M[{j},{k}]: vanishes identically")),
                    }
                }
                if let Some((j, k)) = report.witness {
                    out.push(format!("witness: ({j},{k})"));
                }
            });
            Ok(flag(verdict_ok))
        }
        Command::IdentifyCell { matrix } => {
            let a = read_matrix(matrix)?;
            let point = ChartPoint::from_skew(&a);
            let label = cells::identify_cell(&point, cli.allow_large)?;
            let payload = json!({
                "cell": label.to_string(),
                "dimension": label.dimension(),
            });
            emit(cli, &payload, |out| {
                out.push(label.to_string());
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { n, t, random, seed } => {
            let count = w0_coset_word(*n).len();
            let params = parameters(count, t.as_deref(), *random, *seed)?;
            let a = marsh_rietsch(*n, &params)?.chart()?;
            print!("{}", matrix_json(&a));
            Ok(ExitCode::SUCCESS)
        }
        Command::SampleCell {
            n,
            cell,
            t,
            random,
            seed,
        } => {
            let label = CellLabel::parse(*n, cell)?;
            let params = parameters(label.dimension(), t.as_deref(), *random, *seed)?;
            let point = cells::sample_cell(&label, &params)?;
            let a = point.chart()?;
            print!("{}", matrix_json(&a));
            Ok(ExitCode::SUCCESS)
        }
        Command::Pfaffians { matrix } => {
            let a = read_matrix(matrix)?;
            let vector = pfaffian::PfaffianVector::of(&a)?;
            let pattern = pfaffian::check_sign_pattern(&a)?;
            let entries: Vec<Value> = vector
                .entries
                .iter()
                .map(|(subset, pf)| {
                    json!({
                        "pfaffian": pf.to_string(),
                        "sign": pfaffian::subset_sign(subset, a.rank()).expect("even subset"),
                        "subset": subset,
                    })
                })
                .collect();
            let payload = json!({
                "entries": entries,
                "pattern_nonnegative": pattern.nonnegative,
                "pattern_strict": pattern.strict,
                "witness": pattern.witness,
            });
            emit(cli, &payload, |out| {
                for (subset, pf) in &vector.entries {
                    out.push(format!("Pf{subset:?} = {pf}"));
                }
                out.push(format!(
                    "sign pattern: strict = {}, nonnegative = {}",
                    pattern.strict, pattern.nonnegative
                ));
                if let Some(w) = &pattern.witness {
                    out.push(format!("witness: {w:?}"));
                }
            });
            Ok(flag(pattern.strict))
        }
        Command::RecoverParams { matrix } => {
            let a = read_matrix(matrix)?;
            match positivity::recover_params(&a) {
                Ok(params) => {
                    let payload = json!({
                        "params": params.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    });
                    emit(cli, &payload, |out| {
                        let joined: Vec<String> = params.iter().map(|t| t.to_string()).collect();
                        out.push(format!("t = {}", joined.join(",")));
                    });
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::OutsideRecoverableLocus) => {
                    eprintln!("error: {}", Error::OutsideRecoverableLocus);
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e),
            }
        }
        Command::LgvExport { n, cell } => {
            let diagram = match cell {
                Some(label) => {
                    let label = CellLabel::parse(*n, label)?;
                    lgv::build_boundary(label.v(), label.w())?
                }
                None => lgv::build_top(*n),
            };
            print!("{}", lgv::export_dot(&diagram));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn flag(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_matrix(path: &PathBuf) -> Result<SkewMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix_json(&text)
}

fn parse_matrix_json(text: &str) -> Result<SkewMatrix, Error> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad matrix file: {e}")))?;
    let n = value["n"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing integer field 'n'".into()))? as usize;
    let entries = value["entries"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing array field 'entries'".into()))?;
    if entries.len() != n {
        return Err(Error::Parse(format!("expected {n} rows")));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("rows must be arrays".into()))?;
        if row.len() != n {
            return Err(Error::Parse(format!("expected {n} columns per row")));
        }
        rows.push(
            row.iter()
                .map(|cell| {
                    cell.as_str()
                        .ok_or_else(|| Error::Parse("entries must be rational strings".into()))
                        .and_then(parse_rat)
                })
                .collect::<Result<_, _>>()?,
        );
    }
    SkewMatrix::from_rows(rows)
}

fn matrix_json(a: &SkewMatrix) -> String {
    let n = a.rank();
    let entries: Vec<Vec<String>> = (1..=n)
        .map(|i| (1..=n).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    let payload = json!({"entries": entries, "n": n});
    format!(
        "{}\n",
        serde_json::to_string_pretty(&payload).expect("serializable")
    )
}

fn parameters(
    count: usize,
    t: Option<&[String]>,
    random: bool,
    seed: u64,
) -> Result<Vec<Rat>, Error> {
    match (t, random) {
        (Some(values), false) => {
            if values.len() != count {
                return Err(Error::ParamCount {
                    expected: count,
                    got: values.len(),
                });
            }
            values.iter().map(|s| parse_rat(s)).collect()
        }
        (None, true) => {
            let mut rng = SplitMix64::new(seed);
            Ok((0..count).map(|_| rng.rat_positive()).collect())
        }
        _ => Err(Error::Parse(
            "pass exactly one of --t or --random (with --seed)".into(),
        )),
    }
}

fn emit(cli: &Cli, structured: &Value, text: impl FnOnce(&mut Vec<String>)) {
    match cli.format {
        Format::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(structured).expect("serializable")
            );
        }
        Format::Text => {
            let mut lines = Vec::new();
            text(&mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}
