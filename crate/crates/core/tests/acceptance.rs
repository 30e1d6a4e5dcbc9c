//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::io::{self, BufReader};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use ltkit::dictionary::{MonodixDictionary, Restriction};
use ltkit::dix::{parse_dix, write_dix};
use ltkit::eval::{clean_corpus, dict_stats, evaluate, parse_gold, CleaningConfig, EvalReport};
use ltkit::expand::expand;
use ltkit::fixtures::{asm_mini, ASM_MINI_DIX};
use ltkit::fst::{compile, load, minimize, save, Direction, LetterTransducer, LoadError};
use ltkit::stream::{analyze_reader, analyze_stream, generate_stream};
use ltkit::synth::{eval_fixture, random_dictionary, synthetic_lexicon, RandomDictParams, WordStream, LEXICON_COUNTS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const DICTIONARIES: u64 = 200;
const NON_MEMBERS: usize = 1000;
const BOTH: [Direction; 2] = [Direction::LeftToRight, Direction::RightToLeft];
const EVAL_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/eval");

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn generated() -> impl Iterator<Item = (u64, MonodixDictionary)> {
    (0..DICTIONARIES).map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (seed, random_dictionary(&mut rng, RandomDictParams::default()))
    })
}

fn sample_io() -> Outcome {
    let start = Instant::now();
    let dict = parse_dix(ASM_MINI_DIX).map_err(|e| e.to_string())?;
    let analyzer = minimize(&compile(&dict, Direction::LeftToRight).map_err(|e| e.to_string())?);
    let generator = minimize(&compile(&dict, Direction::RightToLeft).map_err(|e| e.to_string())?);
    let analysis = analyze_stream("চকুযুৰি", &analyzer);
    ensure!(analysis == "^চকুযুৰি/চকু<n><pl>$", "analysis was {analysis:?}");
    let surface = generate_stream("^চকু<n><pl>$", &generator).map_err(|e| e.to_string())?;
    ensure!(surface == "চকুযুৰি", "generation was {surface:?}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("byte-exact in {elapsed:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut lookups = 0;
    for (seed, d) in generated() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9));
        for dir in BOTH {
            let expected = oracle_map(&d, dir);
            let probes: Vec<String> = random_probes(&mut rng, dir, 4 * NON_MEMBERS)
                .into_iter()
                .filter(|p| !expected.contains_key(p))
                .take(NON_MEMBERS)
                .collect();
            ensure!(probes.len() == NON_MEMBERS, "seed {seed}: could not draw {NON_MEMBERS} non-members");
            let t = minimize(&compile(&d, dir).map_err(|e| e.to_string())?);
            lookups += check_against_oracle(&t, &expected, &probes).map_err(|e| format!("seed {seed} {dir:?}: {e}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{DICTIONARIES} dictionaries, {lookups} lookups agree, {elapsed:.1?}"))
}

fn duality() -> Outcome {
    let mut checked = 0;
    for (seed, d) in generated() {
        let analyzer = minimize(&compile(&d, Direction::LeftToRight).unwrap());
        let generator = minimize(&compile(&d, Direction::RightToLeft).unwrap());
        for pair in expand(&d).map_err(|e| e.to_string())? {
            if pair.restriction != Restriction::Bidirectional {
                continue;
            }
            let (s, l) = (pair.surface_text(), pair.lexical_text());
            ensure!(lookup_set(&analyzer, &s).contains(&l), "seed {seed}: {l} not in analyze({s})");
            ensure!(lookup_set(&generator, &l).contains(&s), "seed {seed}: {s} not in generate({l})");
            checked += 1;
        }
    }
    Ok(format!("{checked} bidirectional pairs"))
}

fn minimization() -> Outcome {
    let (mut before, mut after) = (0, 0);
    for (seed, d) in generated() {
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        for dir in BOTH {
            let t = compile(&d, dir).unwrap();
            let m = minimize(&t);
            let mut inputs: BTreeSet<String> = oracle_map(&d, dir).into_keys().collect();
            inputs.extend(random_probes(&mut rng, dir, 200));
            for input in &inputs {
                ensure!(lookup_set(&t, input) == lookup_set(&m, input), "seed {seed} {dir:?}: {input:?} differs");
            }
            ensure!(m.state_count() <= t.state_count(), "seed {seed}: state count grew");
            ensure!(minimize(&m) == m, "seed {seed} {dir:?}: minimize is not idempotent");
            before += t.state_count();
            after += m.state_count();
        }
    }
    Ok(format!("extensional, idempotent, {before} -> {after} states in total"))
}

fn read_fixture(name: &str) -> Result<String, String> {
    std::fs::read_to_string(format!("{EVAL_DIR}/{name}")).map_err(|e| format!("{name}: {e}"))
}

fn eval_report() -> Outcome {
    let fixture = eval_fixture();
    ensure!(read_fixture("corpus.txt")? == fixture.corpus, "shipped corpus.txt is stale");
    ensure!(read_fixture("gold.tsv")? == fixture.gold, "shipped gold.tsv is stale");
    ensure!(read_fixture("stopwords.txt")? == fixture.stopwords, "shipped stopwords.txt is stale");

    let analyzer = minimize(&compile(&asm_mini(), Direction::LeftToRight).unwrap());
    let config = CleaningConfig::with_stopwords(CleaningConfig::parse_stopwords(&fixture.stopwords));
    let tokens = clean_corpus(&fixture.corpus, |c| analyzer.is_word_char(c), &config);
    let gold = parse_gold(&fixture.gold).map_err(|e| e.to_string())?;
    let report = evaluate(&tokens, &gold, &analyzer).map_err(|e| e.to_string())?;
    let want = EvalReport { total: 1120, correct: 815, wrong: 305 };
    ensure!(report == want, "library report {report:?}");
    ensure!(report.accuracy().as_deref() == Some("72.8%"), "accuracy {:?}", report.accuracy());

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = dir.path().join("asm.bin");
    std::fs::write(&bin, save(&analyzer)).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_ltkit"))
        .arg("eval")
        .arg("--corpus")
        .arg(format!("{EVAL_DIR}/corpus.txt"))
        .arg("--gold")
        .arg(format!("{EVAL_DIR}/gold.tsv"))
        .arg("--fst")
        .arg(&bin)
        .arg("--stopwords")
        .arg(format!("{EVAL_DIR}/stopwords.txt"))
        .output()
        .map_err(|e| e.to_string())?;
    let printed = String::from_utf8_lossy(&out.stdout);
    ensure!(
        printed == "Total words\t1120\nCorrectly recognize\t815\nWrongly recognize\t305\nAccuracy\t72.8%\n",
        "cli printed {printed:?}"
    );
    Ok("1120 / 815 / 305, accuracy 72.8% via library and cli".into())
}

fn lexicon_stats() -> Outcome {
    let dict = synthetic_lexicon();
    let stats = dict_stats(&dict).map_err(|e| e.to_string())?;
    for (tag, count) in LEXICON_COUNTS {
        ensure!(stats.get(tag) == count, "{tag}: {} instead of {count}", stats.get(tag));
    }
    ensure!(stats.total() == 24_565, "total {}", stats.total());

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("lexicon.dix");
    std::fs::write(&path, write_dix(&dict)).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_ltkit")).arg("stats").arg(&path).output().map_err(|e| e.to_string())?;
    let printed = String::from_utf8_lossy(&out.stdout);
    ensure!(printed == "n 22368\nprn 121\nv 1844\nadv 232\n", "cli printed {printed:?}");
    Ok("n 22368, prn 121, v 1844, adv 232, total 24565".into())
}

fn resident_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmRSS:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn throughput() -> Outcome {
    let dict = synthetic_lexicon();
    let analyzer: LetterTransducer = minimize(&compile(&dict, Direction::LeftToRight).unwrap());
    let mut vocabulary: Vec<String> = expand(&dict).unwrap().iter().map(|p| p.surface_text()).collect();
    vocabulary.sort();
    vocabulary.dedup();
    vocabulary.extend(["মোৰ", "আৰু", "কম্পিউটাৰ"].map(String::from));

    let run = |tokens: usize| {
        let stream = BufReader::new(WordStream::new(vocabulary.clone(), tokens, 7));
        let start = Instant::now();
        let stats = analyze_reader(&analyzer, stream, io::sink()).unwrap();
        (stats, start.elapsed())
    };

    let (short, elapsed) = run(100_000);
    ensure!(short.words == 100_000, "analysed {} words", short.words);
    let rate = short.words as f64 / elapsed.as_secs_f64();
    ensure!(rate.total_cmp(&10_000.0).is_ge(), "{rate:.0} words/s");

    let rss_before = resident_kib();
    let (long, _) = run(1_000_000);
    let rss_after = resident_kib();
    ensure!(long.words == 1_000_000, "analysed {} words", long.words);
    ensure!(
        long.max_line_bytes == short.max_line_bytes,
        "line buffer grew from {} to {} bytes",
        short.max_line_bytes,
        long.max_line_bytes
    );
    let growth = match (rss_before, rss_after) {
        (Some(b), Some(a)) => {
            let g = a.saturating_sub(b);
            ensure!(g < 4096, "resident memory grew by {g} KiB on the 10x stream");
            format!(", resident growth {g} KiB")
        }
        _ => String::new(),
    };
    Ok(format!("{rate:.0} words/s on 100k tokens; 1M tokens with max line {} bytes{growth}", long.max_line_bytes))
}

fn format_round_trips() -> Outcome {
    let mut dictionaries: Vec<MonodixDictionary> = vec![asm_mini(), synthetic_lexicon()];
    dictionaries.extend(generated().map(|(_, d)| d));
    let mut transducers = 0;
    for d in &dictionaries {
        let back = parse_dix(&write_dix(d)).map_err(|e| e.to_string())?;
        ensure!(&back == d, "parse_dix(write_dix(d)) differs");
        for dir in BOTH {
            let t = compile(d, dir).unwrap();
            for t in [minimize(&t), t] {
                ensure!(load(&save(&t)).as_ref() == Ok(&t), "save/load differs");
                transducers += 1;
            }
        }
    }

    let bytes = save(&minimize(&compile(&asm_mini(), Direction::LeftToRight).unwrap()));
    let mut bad_magic = bytes.clone();
    bad_magic[0] = b'X';
    let mut bad_version = bytes.clone();
    bad_version[4] = 9;
    let truncated = bytes[..bytes.len() - 5].to_vec();
    let mut dangling = bytes.clone();
    // the last transition's target field is the final four bytes
    let n = dangling.len();
    dangling[n - 4..].copy_from_slice(&u32::MAX.to_le_bytes());
    for (what, data, want) in [
        ("magic", bad_magic, LoadError::BadMagic),
        ("version", bad_version, LoadError::UnsupportedVersion(9)),
        ("truncation", truncated, LoadError::TruncatedFile),
        ("state id", dangling, LoadError::DanglingStateId(u32::MAX)),
    ] {
        let got = load(&data).err();
        ensure!(got.as_ref() == Some(&want), "corrupt {what}: got {got:?}");
    }
    Ok(format!("{} dictionaries, {transducers} transducers, 4 corruption kinds", dictionaries.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("sample analysis and generation", sample_io),
        ("oracle equivalence", oracle_equivalence),
        ("round-trip duality", duality),
        ("minimization", minimization),
        ("evaluation report", eval_report),
        ("dictionary statistics", lexicon_stats),
        ("throughput and constant memory", throughput),
        ("format round trips", format_round_trips),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
