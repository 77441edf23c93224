use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iads::centrality::CentralityScores;
use iads::coverage::BatteryInventory;
use iads::graph::{all_pairs_shortest_paths, WeightedLocationNetwork};
use iads::harness::{
    aggregate_optimal, diameter_grid, emit_plot_data, experiment_rows, fit_rows,
    published_ensemble, read_rows_csv, run_experiment, table5_fixture, write_rows_csv,
    write_traces_json, ExperimentCase, RegressionTarget, PLOT_LEVELS_KM,
};
use iads::netgen::{
    generate, small_worldness, GenerationConfig, NetworkMeta, DEFAULT_ASSET_EXPONENT,
    DEFAULT_OMEGA_SAMPLES,
};
use iads::strategies::{exhaustive_optimal, run, run_all, PlacementContext, StrategyId};
use iads::{Error, Result};

#[derive(Parser)]
#[command(
    name = "iads",
    version,
    about = "Battery placement on weighted small-world networks"
)]
struct Cli {
    /// Random seed for generation and the small-worldness references.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network and print it as JSON.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Random reference graphs used for small-worldness.
        #[arg(long, default_value_t = DEFAULT_OMEGA_SAMPLES)]
        omega_samples: usize,
    },
    /// Centrality scores of every node as CSV.
    Scores {
        #[command(flatten)]
        input: NetworkArgs,
    },
    /// Run one strategy, or all seven.
    Place {
        #[command(flatten)]
        input: NetworkArgs,
        #[command(flatten)]
        batteries: InventoryArgs,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        strategy: Option<u8>,
        #[arg(long)]
        all: bool,
    },
    /// Exact minimum-unprotected placement by enumeration (small inputs only).
    Oracle {
        #[command(flatten)]
        input: NetworkArgs,
        #[command(flatten)]
        batteries: InventoryArgs,
    },
    /// Batch run; writes the result table as CSV.
    Experiment {
        #[arg(long, value_enum, default_value_t = Ensemble::Published)]
        ensemble: Ensemble,
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        batteries: InventoryArgs,
        #[arg(long, default_value_t = DEFAULT_OMEGA_SAMPLES)]
        omega_samples: usize,
        /// JSON file receiving every case with full placement traces.
        #[arg(long)]
        traces: Option<PathBuf>,
        /// Keep only the best strategy (ties merged) per case.
        #[arg(long)]
        aggregate: bool,
    },
    /// Least-squares fit of omega or the worst-case percentage on diameter
    /// and sum of ranges.
    Regress {
        #[command(flatten)]
        rows: RowsArgs,
        #[arg(long, default_value = "omega")]
        target: RegressionTarget,
    },
    /// Predicted values of a fit over a diameter grid at the four inventory
    /// reach levels.
    Plotdata {
        #[command(flatten)]
        rows: RowsArgs,
        #[arg(long, default_value = "omega")]
        target: RegressionTarget,
        #[arg(long, default_value_t = 100.0)]
        grid_min: f64,
        #[arg(long, default_value_t = 1500.0)]
        grid_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ensemble {
    /// The twenty published configurations.
    Published,
    /// One network from the generation flags with the given ranges.
    Single,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Table5,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 50)]
    nodes: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 20.0)]
    unit_km: f64,
    #[arg(long, default_value_t = 9)]
    mult_max: u32,
    #[arg(long, default_value_t = DEFAULT_ASSET_EXPONENT)]
    asset_exponent: f64,
}

impl GenArgs {
    fn config(&self, seed: u64) -> GenerationConfig {
        GenerationConfig {
            nodes: self.nodes,
            k: self.k,
            beta: self.beta,
            unit_km: self.unit_km,
            mult_max: self.mult_max,
            asset_exponent: self.asset_exponent,
            seed,
        }
    }
}

#[derive(Args)]
struct NetworkArgs {
    /// Network JSON file; generated from the flags below when omitted.
    #[arg(long)]
    network: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
}

impl NetworkArgs {
    fn load(&self, seed: u64) -> Result<WeightedLocationNetwork> {
        match &self.network {
            Some(path) => {
                Ok(WeightedLocationNetwork::from_json(&std::fs::read_to_string(path)?)?.0)
            }
            None => generate(&self.gen.config(seed)),
        }
    }
}

#[derive(Args)]
struct InventoryArgs {
    /// Interceptor ranges in km, largest first.
    #[arg(long, default_value = "80,70")]
    ranges: String,
    #[arg(long, default_value_t = 0.98)]
    intercept_prob: f64,
}

impl InventoryArgs {
    fn inventory(&self) -> Result<BatteryInventory> {
        BatteryInventory::parse(&self.ranges, self.intercept_prob)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RowsArgs {
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    /// Result CSV written by `experiment`.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl RowsArgs {
    fn rows(&self) -> Result<Vec<iads::harness::ExperimentRow>> {
        match (&self.fixture, &self.input) {
            (Some(Fixture::Table5), _) => Ok(table5_fixture()),
            (None, Some(path)) => read_rows_csv(File::open(path)?),
            (None, None) => Err(Error::Config("give --fixture or --input".into())),
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let mut out = output(cli.out.as_deref())?;
    match cli.command {
        Command::Generate { gen, omega_samples } => {
            let config = gen.config(cli.seed);
            let net = generate(&config)?;
            let omega = small_worldness(&net, omega_samples, cli.seed)?.omega;
            let meta = NetworkMeta::from_config(&config, Some(omega));
            writeln!(out, "{}", net.to_json(Some(meta))?)?;
        }
        Command::Scores { input } => {
            let net = input.load(cli.seed)?;
            let dm = all_pairs_shortest_paths(&net)?;
            CentralityScores::compute(&net, &dm)?.write_csv(&mut out)?;
        }
        Command::Place {
            input,
            batteries,
            strategy,
            all,
        } => {
            let net = input.load(cli.seed)?;
            let inventory = batteries.inventory()?;
            let dm = all_pairs_shortest_paths(&net)?;
            let ctx = PlacementContext::new(&net, &dm, &inventory)?;
            if all {
                write_json(&mut out, &run_all(&ctx)?)?;
            } else {
                let id = StrategyId::new(strategy.unwrap_or_default())?;
                write_json(&mut out, &run(&ctx, id)?)?;
            }
        }
        Command::Oracle { input, batteries } => {
            let net = input.load(cli.seed)?;
            let inventory = batteries.inventory()?;
            let dm = all_pairs_shortest_paths(&net)?;
            write_json(&mut out, &exhaustive_optimal(&net, &dm, &inventory)?)?;
        }
        Command::Experiment {
            ensemble,
            gen,
            batteries,
            omega_samples,
            traces,
            aggregate,
        } => {
            let mut cases = match ensemble {
                Ensemble::Published => published_ensemble(cli.seed, batteries.intercept_prob)?,
                Ensemble::Single => vec![ExperimentCase {
                    label: "single".into(),
                    generation: gen.config(cli.seed),
                    inventory: batteries.inventory()?,
                    omega_samples,
                }],
            };
            cases
                .iter_mut()
                .for_each(|c| c.omega_samples = omega_samples);
            let outcomes = run_experiment(&cases)?;
            let mut rows = experiment_rows(&outcomes);
            if aggregate {
                rows = aggregate_optimal(&rows);
            }
            write_rows_csv(&rows, &mut out)?;
            if let Some(path) = traces {
                write_traces_json(&outcomes, BufWriter::new(File::create(path)?))?;
            }
        }
        Command::Regress { rows, target } => {
            write_json(&mut out, &fit_rows(&rows.rows()?, target)?)?;
        }
        Command::Plotdata {
            rows,
            target,
            grid_min,
            grid_max,
            points,
        } => {
            let fit = fit_rows(&rows.rows()?, target)?;
            let grid = diameter_grid(grid_min, grid_max, points);
            emit_plot_data(&fit, &grid, &PLOT_LEVELS_KM, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
