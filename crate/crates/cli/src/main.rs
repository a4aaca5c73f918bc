use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linkset::babi::{export_csv, missing_vocabulary, parse_babi_file, run_task, score, Score, Story, TaskConfig};
use linkset::nlg::{realize_answer, realize_verb_group, realize_verb_group_fr, sentence_case};
use linkset::semantics::{Force, Number, Polarity, Tense, Voice};
use linkset::{fixtures, Lexicon, Matcher, OperatorSet, RealizationRequest, SenseId, Tracker};

#[derive(Parser)]
#[command(name = "linkset", version, about = "Meaning-based story QA over a semantic lexicon")]
struct Cli {
    /// Lexicon file, or a directory of .lex files, used instead of the bundled one.
    #[arg(long, global = true, env = "LINKSET_LEXICON")]
    lexicon: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Answer every question in a bAbI task and write a CSV of results.
    Run(RunArgs),
    /// Summarize a results CSV written by `run`.
    Score { csv: PathBuf },
    /// Read sentences from stdin; statements are stored, questions answered.
    Repl(EngineArgs),
    /// Realize a verb group from a predicate and operators.
    Generate(GenerateArgs),
    /// List words in a task file that the lexicon does not cover.
    LexiconCheck(DataArgs),
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    task: u8,
    /// A bAbI file, or a directory holding qa<N>_*_{train,test}.txt files.
    #[arg(long, conflicts_with = "fixtures", required_unless_present = "fixtures")]
    data: Option<PathBuf>,
    /// Use the fixture stories bundled with the library.
    #[arg(long)]
    fixtures: bool,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Answer who/what questions with the most recent match only.
    #[arg(long)]
    babi_last: bool,
    /// Read "took X there" as carrying, not acquiring.
    #[arg(long)]
    strict_take: bool,
    /// "Did X receive" needs a giver in the same event.
    #[arg(long)]
    strict_receive: bool,
    /// Include the current position in past-tense where lists.
    #[arg(long, action = clap::ArgAction::Set, default_value_t = true)]
    include_current_position: bool,
    #[arg(long, value_enum, default_value_t = StyleArg::Short)]
    polar_style: StyleArg,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// CSV path; defaults to task<N>.csv. With two splits the split name is appended.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit nonzero when strict accuracy is below this fraction.
    #[arg(long, default_value_t = 0.0)]
    min_accuracy: f64,
}

#[derive(Args)]
struct GenerateArgs {
    /// Predicate sense, e.g. `speak` or `p:eat.chew`; a French infinitive with `--lang fr`.
    #[arg(long)]
    pred: String,
    /// Comma-separated: past, present, future, perfect, progressive, passive,
    /// negative, question, plural, 1, 2, 3.
    #[arg(long, default_value = "present")]
    ops: String,
    #[arg(long, value_enum, default_value_t = Lang::En)]
    lang: Lang,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Keyword,
    Natural,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Bare,
    Short,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lang {
    En,
    Fr,
}

impl From<ModeArg> for linkset::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Keyword => linkset::Mode::Keyword,
            ModeArg::Natural => linkset::Mode::Natural,
        }
    }
}

impl From<StyleArg> for linkset::PolarStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Bare => linkset::PolarStyle::Bare,
            StyleArg::Short => linkset::PolarStyle::Short,
            StyleArg::Full => linkset::PolarStyle::Full,
        }
    }
}

impl EngineArgs {
    fn config(&self, task: u8, default_mode: ModeArg) -> TaskConfig {
        let mut c = TaskConfig::for_task(task);
        c.mode = self.mode.unwrap_or(default_mode).into();
        c.style = self.polar_style.into();
        c.context.babi_last |= self.babi_last;
        c.context.strict_receive = self.strict_receive;
        c.context.include_current_position = self.include_current_position;
        c.matching.strict_take = self.strict_take;
        c
    }
}

fn load_lexicon(path: Option<&Path>) -> Result<Lexicon> {
    let Some(path) = path else {
        return Ok(fixtures::lexicon()?);
    };
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in std::fs::read_dir(path).with_context(|| format!("reading {}", path.display()))? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "lex") {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    let docs = files
        .iter()
        .map(|f| std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display())))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&str> = docs.iter().map(String::as_str).collect();
    Ok(Lexicon::load_all(&refs)?)
}

/// (split name, stories) for each input the data arguments select.
fn load_stories(args: &DataArgs) -> Result<Vec<(String, Vec<Story>)>> {
    if args.fixtures {
        let doc = fixtures::babi_task(args.task).with_context(|| format!("no bundled fixture for task {}", args.task))?;
        return Ok(vec![("fixtures".into(), parse_babi_file(doc)?)]);
    }
    let path = args.data.as_deref().expect("clap requires --data without --fixtures");
    let mut files = Vec::new();
    if path.is_dir() {
        let prefix = format!("qa{}_", args.task);
        for split in ["train", "test"] {
            for entry in std::fs::read_dir(path)? {
                let p = entry?.path();
                let name = p.file_name().and_then(|n| n.to_str()).unwrap_or_default();
                if name.starts_with(&prefix) && name.ends_with(&format!("_{split}.txt")) {
                    files.push((split.to_string(), p));
                }
            }
        }
        if files.is_empty() {
            bail!("no qa{}_*_train.txt or _test.txt in {}", args.task, path.display());
        }
    } else {
        files.push(("file".into(), path.to_path_buf()));
    }
    files
        .into_iter()
        .map(|(split, p)| {
            let doc = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            let stories = parse_babi_file(&doc).with_context(|| p.display().to_string())?;
            Ok((split, stories))
        })
        .collect()
}

fn out_path(args: &RunArgs, split: &str, several: bool) -> PathBuf {
    let base = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("task{}.csv", args.data.task)));
    if !several {
        return base;
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("results");
    base.with_file_name(format!("{stem}_{split}.csv"))
}

fn cmd_run(lex: &Lexicon, args: &RunArgs) -> Result<bool> {
    let inputs = load_stories(&args.data)?;
    let config = args.engine.config(args.data.task, ModeArg::Keyword);
    let several = inputs.len() > 1;
    let mut ok = true;
    for (split, stories) in &inputs {
        let results = run_task(lex, stories, &config)?;
        let s = score(&results);
        println!("task {} ({split}): {s}", args.data.task);
        let path = out_path(args, split, several);
        export_csv(&results, &path).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        ok &= s.strict().unwrap_or(0.0) >= args.min_accuracy;
    }
    Ok(ok)
}

fn cmd_score(csv: &Path) -> Result<()> {
    let mut reader = csv::Reader::from_path(csv).with_context(|| format!("reading {}", csv.display()))?;
    let headers = reader.headers()?.clone();
    let status = headers.iter().position(|h| h == "status").context("no status column")?;
    let mut s = Score::default();
    for row in reader.records() {
        let row = row?;
        s.total += 1;
        match row.get(status) {
            Some("passed") => s.passed += 1,
            Some("gigo") => s.gigo += 1,
            Some("failed") => s.failed += 1,
            other => bail!("unknown status {other:?} on row {}", s.total),
        }
    }
    println!("{s}");
    Ok(())
}

fn finish_sentence(s: String) -> String {
    let s = sentence_case(&s);
    if s.ends_with(['.', '?', '!']) {
        s
    } else {
        format!("{s}.")
    }
}

fn cmd_repl(lex: &Lexicon, args: &EngineArgs) -> Result<()> {
    let config = args.config(0, ModeArg::Natural);
    let matcher = Matcher::with_options(lex, config.matching);
    let mut tracker = Tracker::with_options(lex, config.context);
    let stdin = io::stdin();
    let mut out = io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line?;
        let text = line.trim();
        match text {
            "" => continue,
            ":quit" | ":q" => break,
            ":trace" => {
                writeln!(out, "{}", tracker.trace())?;
                continue;
            }
            _ => {}
        }
        let props = match matcher.parse_utterance(text) {
            Ok(p) => p,
            Err(e) => {
                writeln!(out, "error: {e}")?;
                continue;
            }
        };
        let prop = &props[0];
        if prop.operators.force == Force::Question {
            let reply = tracker.answer_question(prop).map_err(anyhow::Error::from).and_then(|a| {
                let req = RealizationRequest { content: &a, mode: config.mode, style: config.style };
                Ok(realize_answer(lex, &req)?)
            });
            match reply {
                Ok(r) if config.mode == linkset::Mode::Natural => writeln!(out, "{}", finish_sentence(r))?,
                Ok(r) => writeln!(out, "{r}")?,
                Err(e) => writeln!(out, "error: {e}")?,
            }
        } else if let Err(e) = tracker.ingest(prop) {
            writeln!(out, "error: {e}")?;
        }
        out.flush()?;
    }
    Ok(())
}

fn parse_ops(list: &str) -> Result<OperatorSet> {
    let mut ops = OperatorSet::default();
    for op in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match op {
            "past" => ops.tense = Tense::Past,
            "present" => ops.tense = Tense::Present,
            "future" => ops.tense = Tense::Future,
            "perfect" => ops.perfect = true,
            "progressive" => ops.progressive = true,
            "passive" => ops.voice = Voice::Passive,
            "active" => ops.voice = Voice::Active,
            "negative" => ops.polarity = Polarity::Negative,
            "positive" => ops.polarity = Polarity::Positive,
            "question" => ops.force = Force::Question,
            "statement" => ops.force = Force::Statement,
            "plural" => ops.number = Number::Plural,
            "singular" => ops.number = Number::Singular,
            "1" | "2" | "3" => ops.person = op.parse()?,
            other => bail!("unknown operator `{other}`"),
        }
    }
    Ok(ops)
}

fn cmd_generate(lex: &Lexicon, args: &GenerateArgs) -> Result<()> {
    let ops = parse_ops(&args.ops)?;
    let text = match args.lang {
        Lang::Fr => realize_verb_group_fr(&ops, &args.pred)?,
        Lang::En => {
            let pred = if args.pred.starts_with("p:") { args.pred.clone() } else { format!("p:{}", args.pred) };
            realize_verb_group(lex, &ops, &SenseId::from(pred))?.to_string()
        }
    };
    println!("{text}");
    Ok(())
}

fn cmd_lexicon_check(lex: &Lexicon, args: &DataArgs) -> Result<bool> {
    let mut clean = true;
    for (split, stories) in load_stories(args)? {
        let missing = missing_vocabulary(lex, &stories);
        if missing.is_empty() {
            println!("task {} ({split}): all words covered", args.task);
        } else {
            clean = false;
            println!("task {} ({split}): {} missing", args.task, missing.len());
            for w in missing {
                println!("{w}");
            }
        }
    }
    Ok(clean)
}

fn run(cli: &Cli) -> Result<bool> {
    let lex = load_lexicon(cli.lexicon.as_deref())?;
    match &cli.command {
        Command::Run(a) => cmd_run(&lex, a),
        Command::Score { csv } => cmd_score(csv).map(|_| true),
        Command::Repl(a) => cmd_repl(&lex, a).map(|_| true),
        Command::Generate(a) => cmd_generate(&lex, a).map(|_| true),
        Command::LexiconCheck(a) => cmd_lexicon_check(&lex, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
