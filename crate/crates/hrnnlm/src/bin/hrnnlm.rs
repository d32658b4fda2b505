//! Thin command-line front end over the library.
//!
//! Exit codes: 0 ok, 1 check/equiv failed, 2 usage error, 3 precondition or
//! other model error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hrnnlm::compress::{build_dewdney, build_indyk, DEFAULT_MAX_TRIES};
use hrnnlm::error::Error;
use hrnnlm::extract::{extract_dpfsa, DEFAULT_MAX_STATES};
use hrnnlm::hrnn::Projection;
use hrnnlm::minsky::build_minsky;
use hrnnlm::textfmt::{parse_model, print_fsa, print_hrnn, print_tnet, ModelFile};
use hrnnlm::verify::{brute_equiv, mass_report, Scorer};
use hrnnlm::wfsa::{gen_a_n, gen_random_dpfsa, Wfsa, DEFAULT_PROB_TOL};

#[derive(Parser)]
#[command(name = "hrnnlm", version, about = "Finite-state LMs as Heaviside Elman RNNs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProjArg {
    Softmax,
    Sparsemax,
}

impl From<ProjArg> for Projection {
    fn from(p: ProjArg) -> Projection {
        match p {
            ProjArg::Softmax => Projection::SoftmaxExt,
            ProjArg::Sparsemax => Projection::Sparsemax,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Minsky,
    Dewdney,
    Indyk,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "a_n")]
    AN,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a deterministic probabilistic automaton into an RNN LM.
    Compile {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "softmax")]
        projection: ProjArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover a weakly equivalent automaton from an RNN LM.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Encode an automaton's transition function compactly; prints a size
    /// report.
    Compress {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_TRIES)]
        tries: usize,
        #[arg(long, value_enum, default_value = "softmax")]
        projection: ProjArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Make a deterministic unweighted automaton log-alphabet separable.
    Separate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Probability of one string under an automaton or network file.
    Score {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        string: String,
    },
    /// Brute-force weak-equivalence check between two model files.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Cumulative probability mass per string length.
    Mass {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
    },
    /// Generate a bundled automaton family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n_states: usize,
        #[arg(long, default_value_t = 2)]
        n_symbols: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report structural predicates of an automaton.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PROB_TOL)]
        tol: f64,
    },
}

fn load_model(path: &Path) -> hrnnlm::Result<ModelFile> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text)
}

fn load_fsa(path: &Path) -> hrnnlm::Result<Wfsa> {
    match load_model(path)? {
        ModelFile::Fsa(a) => Ok(a),
        _ => Err(Error::InvalidArgument(format!(
            "{} is not an automaton file",
            path.display()
        ))),
    }
}

fn scorer_of(model: ModelFile) -> Box<dyn Scorer> {
    match model {
        ModelFile::Fsa(a) => Box::new(a),
        ModelFile::Hrnn(lm) => Box::new(lm),
        ModelFile::Tnet(net) => net,
    }
}

/// Weighted inputs are rejected where only the transition topology is
/// defined.
fn require_unweighted(a: &Wfsa) -> hrnnlm::Result<()> {
    let unit = |w: f64| w == 0.0 || w == 1.0;
    if a.transitions().iter().all(|t| t.weight == 1.0)
        && (0..a.n_states()).all(|q| unit(a.initial_weight(q)) && unit(a.final_weight(q)))
    {
        Ok(())
    } else {
        Err(Error::Precondition(
            "this operation applies to unweighted automata; weights found".into(),
        ))
    }
}

fn run(cli: Cli) -> hrnnlm::Result<bool> {
    match cli.command {
        Command::Compile { input, projection, out } => {
            let a = load_fsa(&input)?;
            let lm = build_minsky(&a, projection.into())?;
            std::fs::write(&out, print_hrnn(&lm))?;
            println!("hidden_units {}", lm.d);
            Ok(true)
        }
        Command::Extract { input, out, max_states } => {
            let ModelFile::Hrnn(lm) = load_model(&input)? else {
                return Err(Error::InvalidArgument("extract needs an RNN LM file".into()));
            };
            let a = extract_dpfsa(&lm, max_states)?;
            std::fs::write(&out, print_fsa(&a))?;
            println!("states {}", a.n_states());
            Ok(true)
        }
        Command::Compress { input, method, seed, tries, projection, out } => {
            let a = load_fsa(&input)?;
            match method {
                Method::Minsky => {
                    let lm = build_minsky(&a, projection.into())?;
                    std::fs::write(&out, print_hrnn(&lm))?;
                    print!(
                        "method minsky\ndata_cells {}\nprocessing_cells 0\nsublayers 1\ntotal_units {}\n",
                        lm.d, lm.d
                    );
                }
                Method::Dewdney => {
                    let net = build_dewdney(&a)?;
                    std::fs::write(&out, print_tnet(&net))?;
                    print!("{}", net.size_report().render());
                }
                Method::Indyk => {
                    let net = build_indyk(&a, seed, tries)?;
                    std::fs::write(&out, print_tnet(&net))?;
                    print!("{}", net.size_report().render());
                }
            }
            Ok(true)
        }
        Command::Separate { input, out } => {
            let a = load_fsa(&input)?;
            require_unweighted(&a)?;
            let sep = hrnnlm::separate::separate(&a)?;
            std::fs::write(&out, print_fsa(&sep))?;
            println!("states {}", sep.n_states());
            Ok(true)
        }
        Command::Score { input, string } => {
            let model = load_model(&input)?;
            let scorer = scorer_of(model);
            let names: Vec<&str> = string.split_whitespace().collect();
            let symbols = names
                .iter()
                .map(|n| {
                    scorer
                        .alphabet()
                        .get(n)
                        .ok_or_else(|| Error::UnknownSymbol((*n).to_string()))
                })
                .collect::<hrnnlm::Result<Vec<_>>>()?;
            let p = scorer.score(&symbols)?;
            // 17 significant digits.
            println!("{p:.16e}");
            Ok(true)
        }
        Command::Equiv { a, b, max_len, tol } => {
            let sa = scorer_of(load_model(&a)?);
            let sb = scorer_of(load_model(&b)?);
            let report = brute_equiv(sa.as_ref(), sb.as_ref(), max_len, tol)?;
            print!("{}", report.render(sa.alphabet()));
            Ok(report.pass)
        }
        Command::Mass { input, max_len } => {
            let scorer = scorer_of(load_model(&input)?);
            let report = mass_report(scorer.as_ref(), max_len)?;
            print!("{}", report.render());
            Ok(report.within_budget(1e-9))
        }
        Command::Gen { family, seed, n_states, n_symbols, out } => {
            let a = match family {
                Family::AN => gen_a_n(n_symbols)?,
                Family::Random => gen_random_dpfsa(seed, n_states, n_symbols),
            };
            std::fs::write(&out, print_fsa(&a))?;
            Ok(true)
        }
        Command::Check { input, tol } => {
            let a = load_fsa(&input)?;
            let deterministic = a.is_deterministic();
            let probabilistic = a.is_probabilistic(tol);
            let log_separable = a.is_log_separable();
            println!("deterministic {deterministic}");
            println!("probabilistic {probabilistic}");
            println!("log_separable {log_separable}");
            // The check gate is the language-model validity condition.
            Ok(probabilistic)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
