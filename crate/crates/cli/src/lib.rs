//! The `ds2` command line: thin wrappers over `ds2-core`.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ds2_core::corpus::{
    export_training_file, load_multiwoz, sample_dialogues, Corpus, EligibleFilter, FewShotMode, FewShotSplit, Ratio,
};
use ds2_core::metrics::evaluate_run;
use ds2_core::ontology::{load_ontology, StateGenerator};
use ds2_core::{DialogueState, Domain, DomainOrder, Ontology, StateParser, Summarizer, TemplateConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable consulted when `--corpus` is absent.
pub const DATA_DIR_VAR: &str = "DS2_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "ds2", version, about = "Convert dialogue states to template summaries and back")]
struct Cli {
    /// Schema file (TOML); defaults to the built-in five-domain schema.
    #[arg(long, global = true)]
    ontology: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read a state JSON object on stdin, print its summary.
    Synth {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Read a summary on stdin, print the state as JSON.
    Parse {
        #[command(flatten)]
        template: TemplateArgs,
    },
    /// Print a few-shot split manifest.
    Sample {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the training JSONL for a split.
    Export {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        split: SplitArgs,
        /// Use a manifest written by `sample` instead of sampling.
        #[arg(long)]
        split_file: Option<PathBuf>,
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a predictions JSONL file and write the report.
    Eval {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        predictions: PathBuf,
        #[command(flatten)]
        template: TemplateArgs,
        /// Report path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-turn JSONL of turns with errors or parse diagnostics.
        #[arg(long)]
        turns: Option<PathBuf>,
    },
    /// Round-trip generated states and count failures.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        template: TemplateArgs,
    },
}

#[derive(Debug, Args)]
struct TemplateArgs {
    #[arg(long)]
    no_paraphrase: bool,
    #[arg(long)]
    no_dontcare_concat: bool,
    #[arg(long)]
    unnatural: bool,
    #[arg(long, value_enum, default_value_t = Order::Canonical)]
    order: Order,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Canonical,
    Shuffled,
}

impl TemplateArgs {
    fn config(&self) -> TemplateConfig {
        let base = if self.unnatural {
            TemplateConfig::unnatural()
        } else {
            TemplateConfig::natural(!self.no_paraphrase, !self.no_dontcare_concat)
        };
        base.with_order(match self.order {
            Order::Canonical => DomainOrder::Canonical,
            Order::Shuffled => DomainOrder::Shuffled,
        })
    }
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// MultiWoZ directory or zip; falls back to $DS2_DATA_DIR.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value = "2.1")]
    version: String,
}

#[derive(Debug, Args)]
struct SplitArgs {
    /// cd, ct or md.
    #[arg(long, default_value = "md")]
    mode: FewShotMode,
    #[arg(long)]
    domain: Option<Domain>,
    /// One of 0.01, 0.05, 0.1, 1.0 (or 1%, 5%, 10%, 100%).
    #[arg(long, default_value = "1.0")]
    ratio: Ratio,
    #[arg(long, default_value_t = 11)]
    seed: u64,
    /// Sample only from dialogues whose sole domain is the target.
    #[arg(long)]
    single_domain_only: bool,
}

/// Error carrying the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn data(message: impl ToString) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.to_string(),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let ont = match &cli.ontology {
        Some(path) => load_ontology(path).map_err(Failure::data)?,
        None => Ontology::multiwoz(),
    };
    let io = |e: std::io::Error| Failure::data(e);
    match cli.command {
        Command::Synth { template, seed } => {
            let state: DialogueState = serde_json::from_str(&read_all(stdin)?).map_err(Failure::data)?;
            let summarizer = Summarizer::new(&ont);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let summary = summarizer
                .state_to_summary(&state, &template.config(), &mut rng)
                .map_err(Failure::data)?;
            writeln!(stdout, "{}", summary.as_str()).map_err(io)?;
        }
        Command::Parse { template } => {
            let text = read_all(stdin)?;
            let outcome = StateParser::new(&ont).summary_to_state(text.trim(), &template.config());
            for d in &outcome.diagnostics {
                writeln!(stderr, "warning: {}", serde_json::to_string(d).map_err(Failure::data)?).map_err(io)?;
            }
            writeln!(stdout, "{}", serde_json::to_string(&outcome.state).map_err(Failure::data)?).map_err(io)?;
        }
        Command::Sample { corpus, split, out } => {
            let corpus = load_corpus(&corpus)?;
            let manifest = sample(&corpus, &split)?;
            let json = serde_json::to_string_pretty(&manifest).map_err(Failure::data)?;
            match out {
                Some(path) => std::fs::write(&path, json + "\n").map_err(io)?,
                None => writeln!(stdout, "{json}").map_err(io)?,
            }
        }
        Command::Export {
            corpus,
            split,
            split_file,
            template,
            out,
        } => {
            let corpus = load_corpus(&corpus)?;
            let manifest = match split_file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(io)?;
                    serde_json::from_str(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?
                }
                None => sample(&corpus, &split)?,
            };
            let report = export_training_file(&manifest, &corpus, &ont, &template.config(), &out).map_err(Failure::data)?;
            for skipped in &report.skipped {
                writeln!(stderr, "warning: skipped {skipped}").map_err(io)?;
            }
            writeln!(
                stdout,
                "wrote {} records ({} pretrain, {} finetune) to {}",
                report.records,
                report.pretrain_records,
                report.finetune_records,
                out.display()
            )
            .map_err(io)?;
        }
        Command::Eval {
            corpus,
            predictions,
            template,
            out,
            turns,
        } => {
            let corpus = load_corpus(&corpus)?;
            let eval = evaluate_run(&predictions, &corpus, &ont, &template.config()).map_err(Failure::data)?;
            for note in &eval.prediction_diagnostics {
                writeln!(stderr, "warning: {note}").map_err(io)?;
            }
            if let Some(path) = turns {
                eval.write_turn_diagnostics(path).map_err(Failure::data)?;
            }
            match out {
                Some(path) => {
                    eval.write_report(&path).map_err(Failure::data)?;
                    writeln!(
                        stdout,
                        "JGA {:.4} over {} turns; report written to {}",
                        eval.report.all_domain_jga,
                        eval.report.n_turns,
                        path.display()
                    )
                    .map_err(io)?;
                }
                None => writeln!(stdout, "{}", serde_json::to_string_pretty(&eval.report).map_err(Failure::data)?)
                    .map_err(io)?,
            }
        }
        Command::Fuzz { trials, seed, template } => {
            let cfg = template.config();
            let summarizer = Summarizer::new(&ont);
            let generator = StateGenerator::new(&ont);
            let mut failures = 0u64;
            for trial in 0..trials {
                let trial_seed = seed.wrapping_add(trial);
                let state = generator.generate(trial_seed).map_err(Failure::data)?;
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
                let ok = match summarizer.render(&state, &cfg, &mut rng) {
                    Ok(summary) => {
                        let parsed = summarizer.parser().summary_to_state(summary.as_str(), &cfg).state;
                        if parsed != state {
                            writeln!(stderr, "seed {trial_seed}: {summary}").map_err(io)?;
                        }
                        parsed == state
                    }
                    Err(e) => {
                        writeln!(stderr, "seed {trial_seed}: {e}").map_err(io)?;
                        false
                    }
                };
                failures += u64::from(!ok);
            }
            writeln!(stdout, "{}/{trials} round-trips ok", trials - failures).map_err(io)?;
            if failures > 0 {
                return Ok(EXIT_INVARIANT);
            }
        }
    }
    Ok(EXIT_OK)
}

fn read_all(stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    stdin.read_to_string(&mut text).map_err(Failure::data)?;
    Ok(text)
}

fn load_corpus(args: &CorpusArgs) -> Result<Corpus, Failure> {
    let path = match &args.corpus {
        Some(p) => p.clone(),
        None => std::env::var_os(DATA_DIR_VAR)
            .map(PathBuf::from)
            .ok_or_else(|| Failure::usage(format!("no corpus: pass --corpus or set {DATA_DIR_VAR}")))?,
    };
    load_multiwoz(&path, &args.version).map_err(|e| match e {
        ds2_core::corpus::LoadError::UnknownVersion(_) => Failure::usage(e),
        other => Failure::data(other),
    })
}

fn sample(corpus: &Corpus, args: &SplitArgs) -> Result<FewShotSplit, Failure> {
    let filter = if args.single_domain_only {
        EligibleFilter::SingleDomainOnly
    } else {
        EligibleFilter::Containing
    };
    sample_dialogues(&corpus.train, args.mode, args.domain, args.ratio, args.seed, filter).map_err(|e| match e {
        ds2_core::corpus::SampleError::MissingTarget(_) | ds2_core::corpus::SampleError::UnexpectedTarget => {
            Failure::usage(e)
        }
        other => Failure::data(other),
    })
}
