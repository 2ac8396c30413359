use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use magiclab_core::arrays::{kotzig_array, qmr_seeded, Construction, MagicArray};
use magiclab_core::labeling::{format_ratio, magic_constant_multipartite, verify_s_magic};
use magiclab_core::oracle::{oracle_theta_general, oracle_theta_multipartite};
use magiclab_core::spec::DEFAULT_VERTEX_LIMIT;
use magiclab_core::tables::all_tables;
use magiclab_core::{Budget, Error, GraphSpec, IndexOptions, Instance, Labeling, OracleOptions};

mod exit {
    pub const IO: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const NO_CONSTRUCTION: u8 = 4;
    pub const NOT_EXISTS: u8 = 5;
    pub const BUDGET: u8 = 6;
    pub const INCONSISTENT: u8 = 7;
}

#[derive(Parser)]
#[command(name = "magiclab", version, about = "Distance magic index and S-magic labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fall back to exhaustive search when no formula applies.
    #[arg(long, global = true)]
    oracle: bool,

    /// Largest excess over the vertex count the exhaustive search tries.
    #[arg(long, global = true, value_name = "E")]
    max_excess: Option<u64>,

    /// Wall-clock budget for searches.
    #[arg(
        long,
        global = true,
        env = "MAGICLAB_BUDGET_SECONDS",
        default_value_t = 60,
        value_name = "S"
    )]
    budget_seconds: u64,

    /// Worker threads for exhaustive search.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Seed for search order; never affects correctness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cross-check formula results by exhaustive search (small graphs).
    #[arg(long, global = true)]
    certify: bool,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Index of a graph, with case tag and provenance.
    Index { spec: String },
    /// A certified S-magic labeling.
    Label {
        spec: String,
        /// Verify the labeling in FILE instead of constructing one.
        #[arg(long, value_name = "FILE")]
        verify_only: Option<PathBuf>,
    },
    /// Check a labeling file against a graph.
    Verify { spec: String, labels: PathBuf },
    /// Quasimagic rectangle QMR(a, b : ab/2+1).
    Qmr { a: usize, b: usize },
    /// Kotzig array KA(a, b).
    Kotzig { a: usize, b: usize },
    /// Index by exhaustive search only.
    Oracle { spec: String },
    /// Decision tables for the regular families.
    Tables,
}

struct Failure {
    code: u8,
    message: String,
    stdout: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io { .. } => exit::IO,
            Error::Unsupported(_) => exit::UNSUPPORTED,
            Error::BudgetExceeded { .. } => exit::BUDGET,
            Error::Inconsistent(_) => exit::INCONSISTENT,
            _ => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout: None,
        }
    }
}

type Outcome = Result<String, Failure>;

impl Cli {
    fn options(&self) -> IndexOptions {
        IndexOptions {
            oracle: self.oracle,
            certify: self.certify,
            max_excess: self.max_excess,
            oracle_opts: OracleOptions {
                jobs: self.jobs,
                budget: self.budget(),
                seed: self.seed,
                prune: true,
            },
            vertex_limit: DEFAULT_VERTEX_LIMIT,
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(Duration::from_secs(self.budget_seconds))
    }

    fn instance(&self, text: &str) -> Result<Instance, Failure> {
        Ok(Instance::new(GraphSpec::parse(text)?, DEFAULT_VERTEX_LIMIT)?)
    }
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn index(cli: &Cli, text: &str) -> Outcome {
    let inst = cli.instance(text)?;
    let theta = inst.index(&cli.options())?;
    let mut v = theta.to_json(true);
    v["graph"] = json!(inst.spec.to_string());
    v["order"] = json!(inst.graph.order());
    Ok(line(&v))
}

fn labeling_json(inst: &Instance, l: &Labeling) -> Result<Value, Failure> {
    let report = verify_s_magic(&inst.graph, l)?;
    let mut v = l.to_json();
    v["eta"] = json!(l.eta());
    v["constant"] = json!(report.constant);
    v["is_magic"] = json!(report.is_magic);
    if let Some(meta) = inst.graph.partite() {
        let k = magic_constant_multipartite(&meta.spec, l.alpha()?)?;
        v["magic_constant"] = json!(format_ratio(&k));
    }
    Ok(v)
}

fn label(cli: &Cli, text: &str, verify_only: Option<&PathBuf>) -> Outcome {
    let inst = cli.instance(text)?;
    if let Some(path) = verify_only {
        return verify(&inst, path);
    }
    let out = inst.label(&cli.options())?;
    let mut v = out.theta.to_json(false);
    v["graph"] = json!(inst.spec.to_string());
    let Some(w) = out.witness else {
        return Err(Failure {
            code: exit::NO_CONSTRUCTION,
            message: format!("no construction available for {}", inst.spec),
            stdout: Some(v),
        });
    };
    let lj = labeling_json(&inst, &w)?;
    for (k, x) in lj.as_object().expect("object") {
        v[k.as_str()] = x.clone();
    }
    Ok(line(&v))
}

fn verify(inst: &Instance, path: &Path) -> Outcome {
    let l = Labeling::read_file(path, inst.graph.order())?;
    let report = verify_s_magic(&inst.graph, &l)?;
    let mut v = report.to_json();
    v["eta"] = json!(l.eta());
    Ok(line(&v))
}

fn oracle(cli: &Cli, text: &str) -> Outcome {
    let inst = cli.instance(text)?;
    let opts = cli.options();
    let theta = match inst.graph.partite() {
        Some(meta) => oracle_theta_multipartite(
            &meta.spec,
            cli.max_excess.unwrap_or(16),
            &opts.oracle_opts,
        )?,
        None => oracle_theta_general(&inst.graph, cli.max_excess.unwrap_or(8), &opts.oracle_opts)?,
    };
    let mut v = theta.to_json(true);
    v["graph"] = json!(inst.spec.to_string());
    Ok(line(&v))
}

fn array_out(cli: &Cli, c: Construction) -> Outcome {
    let arr: MagicArray = match c {
        Construction::Built(a) => a,
        Construction::NotExists(why) => {
            return Err(Failure {
                code: exit::NOT_EXISTS,
                message: why,
                stdout: None,
            })
        }
    };
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => arr.to_csv(),
        Format::Json => line(&json!({
            "rows": arr.rows,
            "cols": arr.cols,
            "entries": arr.entries,
            "hole": arr.hole,
            "row_sum": arr.row_sum,
            "col_sum": arr.col_sum,
        })),
    })
}

fn tables(cli: &Cli) -> Outcome {
    Ok(match cli.format {
        Some(Format::Json) => line(&Value::Array(all_tables().iter().map(|t| t.to_json()).collect())),
        Some(Format::Csv) => {
            let mut out = String::from("table,row,column,cell\n");
            for t in all_tables() {
                for (r, row) in t.rows.iter().zip(&t.cells) {
                    for (c, cell) in t.columns.iter().zip(row) {
                        out.push_str(&format!("{},{r},{c},{cell}\n", t.id));
                    }
                }
            }
            out
        }
        None => all_tables()
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Index { spec } => index(cli, spec),
        Command::Label { spec, verify_only } => label(cli, spec, verify_only.as_ref()),
        Command::Verify { spec, labels } => verify(&cli.instance(spec)?, labels),
        Command::Qmr { a, b } => array_out(cli, qmr_seeded(*a, *b, cli.seed, cli.budget())?),
        Command::Kotzig { a, b } => array_out(cli, kotzig_array(*a, *b)?),
        Command::Oracle { spec } => oracle(cli, spec),
        Command::Tables => tables(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(v) = f.stdout {
                print!("{}", line(&v));
            }
            eprintln!("magiclab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
