//! `stallings`: fold, query and sample subgroups of free groups, and run the
//! statistical experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stallings_core::experiments::{exact_ratio_table, run, Experiment, ExperimentSpec, SamplingMode};
use stallings_core::partial_injections::{CountCache, Family};
use stallings_core::properties::{
    avoids_generator_conjugates, hnc_report, intersection, is_malnormal,
    normal_closure_trivial_sufficient, purity_status, ClosureVerdict, PurityVerdict,
    DEFAULT_D_MAX,
};
use stallings_core::samplers::{
    sample_graph_subgroup, GenericityParams, WordTupleSampler, DEFAULT_MAX_ATTEMPTS,
};
use stallings_core::{Alphabet, StallingsGraph, Word};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "stallings", version, about = "Stallings graphs of random subgroups of free groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fold generators into a Stallings graph (JSON on stdout).
    Fold {
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Comma-separated words, e.g. "ab,ba".
        #[arg(long)]
        generators: String,
        /// Freely reduce the input words instead of rejecting them.
        #[arg(long)]
        reduce: bool,
    },
    /// Decide membership of a word in the subgroup of a graph.
    Member {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        reduce: bool,
    },
    /// Evaluate a property of a graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, default_value_t = DEFAULT_D_MAX)]
        dmax: usize,
    },
    /// Intersect two subgroups.
    Intersect {
        #[arg(long)]
        graph1: PathBuf,
        #[arg(long)]
        graph2: PathBuf,
        /// Print the Hanna Neumann report instead of the graph.
        #[arg(long)]
        shnc: bool,
    },
    /// Draw a random subgroup.
    SampleSubgroup {
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Vertex count (graph mode) or maximal word length (word mode).
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Graph)]
        mode: Mode,
        /// Number of words in word mode.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Maximal word length in word mode; defaults to `--n`.
        #[arg(long)]
        maxlen: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a counting sequence for 0..=n.
    Count {
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a registered experiment and write a CSV (or JSON) report.
    Experiment {
        #[arg(long)]
        name: String,
        /// One size or a comma-separated list.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Graph)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_D_MAX)]
        dmax: usize,
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        #[arg(long, default_value_t = 0.125)]
        lambda: f64,
        #[arg(long, default_value_t = 0.25)]
        beta: f64,
    },
    /// Exact ratios K/I, L/I, J/I and their scaled forms for 1..=n, as CSV.
    RatioTable {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Malnormal,
    Pure,
    Rank,
    TrivialClosure,
    AvoidGenerators,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Graph,
    Word,
}

fn parse_word(text: &str, alphabet: Alphabet, reduce: bool) -> CliResult<Word> {
    Ok(if reduce {
        Word::parse_reducing(text, alphabet)?
    } else {
        Word::parse(text, alphabet)?
    })
}

fn read_graph(path: &PathBuf) -> CliResult<StallingsGraph> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(StallingsGraph::from_json(&text)?)
}

fn one_based(vertices: &[usize]) -> Vec<usize> {
    vertices.iter().map(|v| v + 1).collect()
}

fn check(g: &StallingsGraph, property: Property, dmax: usize) -> CliResult<serde_json::Value> {
    Ok(match property {
        Property::Malnormal => {
            let m = is_malnormal(g);
            let witness = m.witness.map(|w| {
                json!({
                    "vertices": [w.vertices.0 + 1, w.vertices.1 + 1],
                    "word": w.word.to_string(),
                })
            });
            json!({ "malnormal": m.malnormal, "witness": witness })
        }
        Property::Pure => match purity_status(g, dmax)? {
            PurityVerdict::NonPure {
                witness,
                orbit,
                period,
            } => json!({
                "verdict": "NonPure",
                "witness": witness.to_string(),
                "orbit": one_based(&orbit),
                "period": period,
            }),
            PurityVerdict::PureUpTo { d_max } => json!({ "verdict": "PureUpTo", "d_max": d_max }),
        },
        Property::Rank => json!({ "rank": g.rank(), "reduced_rank": g.reduced_rank() }),
        Property::TrivialClosure => {
            let report = normal_closure_trivial_sufficient(g);
            let verdict = match report.verdict {
                ClosureVerdict::ProvablyTrivial => "ProvablyTrivial",
                ClosureVerdict::Unknown => "Unknown",
            };
            json!({ "verdict": verdict, "per_letter_gcd": report.per_letter_gcd })
        }
        Property::AvoidGenerators => {
            json!({ "avoids_generator_conjugates": avoids_generator_conjugates(g) })
        }
    })
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Fold {
            r,
            generators,
            reduce,
        } => {
            let alphabet = Alphabet::new(r)?;
            let gens = generators
                .split(',')
                .map(|w| parse_word(w.trim(), alphabet, reduce))
                .collect::<CliResult<Vec<_>>>()?;
            println!("{}", StallingsGraph::fold(&gens, alphabet)?.to_json());
        }
        Command::Member {
            graph,
            word,
            reduce,
        } => {
            let g = read_graph(&graph)?;
            let w = parse_word(&word, g.alphabet(), reduce)?;
            println!("{}", g.contains(&w));
        }
        Command::Check {
            graph,
            property,
            dmax,
        } => {
            let g = read_graph(&graph)?;
            println!("{}", check(&g, property, dmax)?);
        }
        Command::Intersect {
            graph1,
            graph2,
            shnc,
        } => {
            let (g1, g2) = (read_graph(&graph1)?, read_graph(&graph2)?);
            if shnc {
                // through Value for sorted keys
                println!("{}", serde_json::to_value(hnc_report(&g1, &g2)?)?);
            } else {
                println!("{}", intersection(&g1, &g2)?.to_json());
            }
        }
        Command::SampleSubgroup {
            r,
            n,
            mode,
            k,
            maxlen,
            seed,
        } => {
            let alphabet = Alphabet::new(r)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = match mode {
                Mode::Graph => {
                    let cache = CountCache::new(n);
                    sample_graph_subgroup(alphabet, n, &cache, &mut rng, DEFAULT_MAX_ATTEMPTS)?
                }
                Mode::Word => {
                    WordTupleSampler::new(alphabet, k, maxlen.unwrap_or(n))?
                        .sample(&mut rng)
                        .fold()
                }
            };
            println!("{}", g.to_json());
        }
        Command::Count { sequence, n } => {
            let family: Family = sequence.parse()?;
            let cache = CountCache::new(n);
            for m in 0..=n {
                println!("{family} {m} {}", cache.get(family, m));
            }
        }
        Command::Experiment {
            name,
            n,
            trials,
            seed,
            out,
            json,
            r,
            k,
            mode,
            dmax,
            alpha,
            lambda,
            beta,
        } => {
            let mut spec = ExperimentSpec::new(name.parse::<Experiment>()?, n, trials, seed);
            spec.r = r;
            spec.k = k;
            spec.k_prime = k;
            spec.d_max = dmax;
            spec.params = GenericityParams::new(alpha, lambda, beta)?;
            spec.mode = match mode {
                Mode::Graph => SamplingMode::Graph,
                Mode::Word => SamplingMode::Word,
            };
            let report = run(&spec)?;
            let text = if json { report.to_json() + "\n" } else { report.to_csv()? };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::RatioTable { n } => {
            println!("n,k_over_i,l_over_i,j_over_i,k_scaled,l_scaled,j_scaled");
            for row in exact_ratio_table(n) {
                println!(
                    "{},{},{},{},{},{},{}",
                    row.n, row.k_over_i, row.l_over_i, row.j_over_i, row.k_scaled, row.l_scaled, row.j_scaled
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn vertices_print_one_based() {
        assert_eq!(one_based(&[0, 2]), vec![1, 3]);
    }
}
