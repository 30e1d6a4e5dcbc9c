//! Command-line front end: compile, process, expand, evaluate, stats.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ltkit::dictionary::MonodixDictionary;
use ltkit::dix::parse_dix;
use ltkit::eval::{clean_corpus, dict_stats, evaluate, parse_gold, CleaningConfig};
use ltkit::expand::for_each_pair;
use ltkit::fst::{compile, load, minimize, save, Direction, LetterTransducer};
use ltkit::stream::{analyze_reader, generate_reader, StreamError};

const EXIT_DATA: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "ltkit", version, about = "Compile and run monodix letter transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Lr,
    Rl,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a dix dictionary into a binary transducer (lr: analyzer, rl: generator)
    Comp { direction: Dir, dix: PathBuf, bin: PathBuf },
    /// Analyse standard input, or generate from it with -g
    Proc {
        #[arg(short = 'g', long = "generate")]
        generate: bool,
        bin: PathBuf,
    },
    /// Print every surface:lexical pair of a dictionary
    Expand { dix: PathBuf },
    /// Score an analyzer against a gold standard
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        fst: PathBuf,
        #[arg(long)]
        stopwords: Option<PathBuf>,
    },
    /// Count section entries per main category
    Stats { dix: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

fn data(message: impl ToString) -> Failure {
    Failure { code: EXIT_DATA, message: message.to_string() }
}

fn io_error(path: &Path, err: io::Error) -> Failure {
    Failure { code: EXIT_IO, message: format!("{}: {err}", path.display()) }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn read_dictionary(path: &Path) -> Result<MonodixDictionary, Failure> {
    let dict = parse_dix(&read_text(path)?).map_err(|e| data(format!("{}: {e}", path.display())))?;
    let report = dict.validate();
    if !report.is_empty() {
        return Err(data(format!("{}: invalid dictionary\n{report}", path.display()).trim_end()));
    }
    Ok(dict)
}

fn read_transducer(path: &Path) -> Result<LetterTransducer, Failure> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    load(&bytes).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Comp { direction, dix, bin } => {
            let dict = read_dictionary(&dix)?;
            let dir = match direction {
                Dir::Lr => Direction::LeftToRight,
                Dir::Rl => Direction::RightToLeft,
            };
            let t = minimize(&compile(&dict, dir).map_err(data)?);
            fs::write(&bin, save(&t)).map_err(|e| io_error(&bin, e))?;
            println!(
                "{}@{} states:{} transitions:{}",
                dict.sections.len(),
                dict.entry_count(),
                t.state_count(),
                t.transition_count()
            );
        }
        Command::Proc { generate, bin } => {
            let t = read_transducer(&bin)?;
            let stdin = io::stdin().lock();
            let stdout = BufWriter::new(io::stdout().lock());
            if generate {
                if t.direction() != Direction::RightToLeft {
                    return Err(data(format!("{}: not a generator (compiled lr)", bin.display())));
                }
                generate_reader(&t, stdin, stdout).map_err(|e| match e {
                    StreamError::Io(m) => Failure { code: EXIT_IO, message: m },
                    other => data(other),
                })?;
            } else {
                if t.direction() != Direction::LeftToRight {
                    return Err(data(format!("{}: not an analyzer (compiled rl); use -g", bin.display())));
                }
                analyze_reader(&t, stdin, stdout).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
            }
        }
        Command::Expand { dix } => {
            let dict = read_dictionary(&dix)?;
            let mut out = BufWriter::new(io::stdout().lock());
            let mut failed = None;
            for_each_pair(&dict, |pair| match writeln!(out, "{pair}") {
                Ok(()) => ControlFlow::Continue(()),
                Err(e) => {
                    failed = Some(e);
                    ControlFlow::Break(())
                }
            })
            .map_err(data)?;
            if let Some(e) = failed.or_else(|| out.flush().err()) {
                return Err(Failure { code: EXIT_IO, message: e.to_string() });
            }
        }
        Command::Eval { corpus, gold, fst, stopwords } => {
            let t = read_transducer(&fst)?;
            let text = read_text(&corpus)?;
            let gold = parse_gold(&read_text(&gold)?).map_err(data)?;
            let config = match stopwords {
                Some(path) => CleaningConfig::with_stopwords(CleaningConfig::parse_stopwords(&read_text(&path)?)),
                None => CleaningConfig::default(),
            };
            let tokens = clean_corpus(&text, |c| t.is_word_char(c), &config);
            let report = evaluate(&tokens, &gold, &t).map_err(data)?;
            print!("{report}");
        }
        Command::Stats { dix } => {
            let dict = read_dictionary(&dix)?;
            print!("{}", dict_stats(&dict).map_err(data)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ltkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
