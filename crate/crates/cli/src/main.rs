use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::parser::ValueSource;
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use taxsim::evaluation::{self, MeasureSpec, OovPolicy, ReportFormat};
use taxsim::ic::{self, IcModel, IcTable};
use taxsim::ingest::{self, FrequencyTable};
use taxsim::similarity::{self, MeasureId};
use taxsim::{Error, LemmaIndex, NodeId, Taxonomy};

/// Taxonomy-based semantic similarity over WordNet noun hierarchies.
#[derive(Debug, Parser)]
#[command(name = "taxsim", version)]
struct Cli {
    /// Directory holding WordNet's data.noun and index.noun.
    #[arg(long, global = true, env = "WORDNET_DIR", value_name = "DIR")]
    wordnet: Option<PathBuf>,

    /// TSV taxonomy (`child<TAB>parent`, `lemma<TAB>#<TAB>synset`) instead of WordNet.
    #[arg(long, global = true, value_name = "FILE")]
    taxonomy_tsv: Option<PathBuf>,

    /// Information-content model for IC-based measures.
    #[arg(long, visible_alias = "model", global = true, value_enum, default_value_t = IcArg::Hybrid)]
    ic: IcArg,

    /// `lemma<TAB>count` lines; required by the corpus model.
    #[arg(long, global = true, value_name = "FILE")]
    frequencies: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synset count, maximum depth, maximum subsumer count and root lemma.
    Info,
    /// IC of every sense of a word, or of one synset id.
    Ic { word: String },
    /// Word-level score: the best over all sense pairs.
    Sim {
        word1: String,
        word2: String,
        #[arg(long, value_parser = parse_measure)]
        measure: MeasureId,
        /// Also print the chosen senses and their lowest common hypernym.
        #[arg(long)]
        explain: bool,
    },
    /// Scores a benchmark dataset and correlates every measure with it.
    Bench {
        /// `rg30` or a `word1<TAB>word2<TAB>rating` file.
        #[arg(long, default_value = "rg30")]
        dataset: String,
        /// `all` or a comma-separated list of measure names.
        #[arg(long, default_value = "all", value_parser = parse_measures)]
        measures: Measures,
        /// Drop pairs with unknown words instead of failing.
        #[arg(long)]
        skip_oov: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IcArg {
    Corpus,
    Seco,
    Sanchez,
    Hybrid,
}

impl From<IcArg> for IcModel {
    fn from(a: IcArg) -> Self {
        match a {
            IcArg::Corpus => IcModel::Corpus,
            IcArg::Seco => IcModel::Seco,
            IcArg::Sanchez => IcModel::Sanchez,
            IcArg::Hybrid => IcModel::Hybrid,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Csv,
    Pretty,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tsv => ReportFormat::Tsv,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Pretty => ReportFormat::Pretty,
        }
    }
}

#[derive(Debug, Clone)]
enum Measures {
    All,
    List(Vec<MeasureId>),
}

fn parse_measure(s: &str) -> Result<MeasureId, String> {
    s.parse::<MeasureId>().map_err(|_| {
        let names: Vec<&str> = MeasureId::ALL.iter().map(|m| m.name()).collect();
        format!(
            "unknown measure `{s}`; expected one of {}",
            names.join(", ")
        )
    })
}

fn parse_measures(s: &str) -> Result<Measures, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Measures::All);
    }
    s.split(',')
        .map(|m| parse_measure(m.trim()))
        .collect::<Result<_, _>>()
        .map(Measures::List)
}

/// A failure with its process exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OutOfVocabulary(_) | Error::UnknownSynset(_) => 2,
            Error::InvalidCombination(_) | Error::UnusableModel(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("writing output: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

enum Source {
    Wordnet(PathBuf),
    Tsv(PathBuf),
}

fn source(cli: &Cli, wordnet_from_flag: bool) -> Result<Source, Failure> {
    match (&cli.taxonomy_tsv, &cli.wordnet) {
        (Some(_), Some(_)) if wordnet_from_flag => {
            Err(usage("--wordnet and --taxonomy-tsv are mutually exclusive"))
        }
        // an explicit TSV wins over a WORDNET_DIR fallback
        (Some(tsv), _) => Ok(Source::Tsv(tsv.clone())),
        (None, Some(dir)) => Ok(Source::Wordnet(dir.clone())),
        (None, None) => Err(usage(
            "no taxonomy: pass --wordnet DIR, set WORDNET_DIR, or pass --taxonomy-tsv FILE",
        )),
    }
}

fn load(source: &Source) -> Result<(Taxonomy, LemmaIndex), Failure> {
    let start = Instant::now();
    let loaded = match source {
        Source::Wordnet(dir) => ingest::load_wordnet(dir)?,
        Source::Tsv(path) => ingest::load_tsv_taxonomy_file(path)?,
    };
    log::info!(
        "loaded {} synsets in {:.2?}",
        loaded.0.len(),
        start.elapsed()
    );
    Ok(loaded)
}

struct Ctx {
    taxonomy: Taxonomy,
    index: LemmaIndex,
    model: IcModel,
    frequencies: Option<FrequencyTable>,
    format: ReportFormat,
}

impl Ctx {
    fn ic(&self, model: IcModel) -> Result<IcTable, Failure> {
        Ok(ic::compute(
            &self.taxonomy,
            model,
            self.frequencies.as_ref(),
        )?)
    }

    fn describe(&self, n: NodeId) -> String {
        let t = &self.taxonomy;
        format!(
            "{}\t{}\tdepth={}\tsubsumers={}",
            t.id(n),
            t.synset(n).lemmas.first().map(String::as_str).unwrap_or(""),
            t.depth(n),
            t.subsumer_count(n)
        )
    }
}

fn run() -> Result<(), Failure> {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return Err(Failure {
                code,
                message: String::new(),
            });
        }
    };
    let wordnet_from_flag = matches.value_source("wordnet") == Some(ValueSource::CommandLine);
    let cli = Cli::from_arg_matches(&matches).map_err(|e| usage(e.to_string()))?;

    let model = IcModel::from(cli.ic);
    match (model, &cli.frequencies) {
        (IcModel::Corpus, None) => return Err(usage("--ic corpus needs --frequencies FILE")),
        (m, Some(_)) if m != IcModel::Corpus => {
            return Err(usage(format!(
                "--frequencies only applies to --ic corpus, not `{m}`"
            )))
        }
        _ => {}
    }
    let source = source(&cli, wordnet_from_flag)?;
    let frequencies = cli
        .frequencies
        .as_deref()
        .map(ingest::load_frequencies_file)
        .transpose()?;
    let (taxonomy, index) = load(&source)?;
    let ctx = Ctx {
        taxonomy,
        index,
        model,
        frequencies,
        format: cli.format.into(),
    };

    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Info => info(&ctx, &mut out),
        Command::Ic { word } => ic_listing(&ctx, word, &mut out),
        Command::Sim {
            word1,
            word2,
            measure,
            explain,
        } => sim(&ctx, word1, word2, *measure, *explain, &mut out),
        Command::Bench {
            dataset,
            measures,
            skip_oov,
        } => bench(&ctx, dataset, measures, *skip_oov, &mut out),
    }
}

fn info(ctx: &Ctx, out: &mut impl Write) -> Result<(), Failure> {
    let t = &ctx.taxonomy;
    writeln!(out, "synsets\t{}", t.len())?;
    writeln!(out, "max_depth\t{}", t.max_depth())?;
    writeln!(out, "max_subsumers\t{}", t.max_subsumer_count())?;
    writeln!(out, "root\t{}", t.synset(t.root()).lemmas.join(","))?;
    Ok(())
}

fn ic_listing(ctx: &Ctx, token: &str, out: &mut impl Write) -> Result<(), Failure> {
    let t = &ctx.taxonomy;
    let nodes: Vec<NodeId> = match ctx.index.senses(token) {
        Some(senses) if !senses.is_empty() => senses
            .iter()
            .map(|s| t.resolve(s.as_str()))
            .collect::<Result<_, _>>()?,
        _ => vec![t
            .resolve(token)
            .map_err(|_| Error::OutOfVocabulary(token.to_owned()))?],
    };
    let table = ctx.ic(ctx.model)?;
    for n in nodes {
        let lemma = t.synset(n).lemmas.first().map(String::as_str).unwrap_or("");
        writeln!(
            out,
            "{}\t{}\t{}",
            t.id(n),
            lemma,
            evaluation::format_value(table.get(n))
        )?;
    }
    Ok(())
}

fn sim(
    ctx: &Ctx,
    w1: &str,
    w2: &str,
    measure: MeasureId,
    explain: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let t = &ctx.taxonomy;
    let table = if measure.needs_ic() {
        Some(ctx.ic(ctx.model)?)
    } else {
        None
    };
    let best = similarity::best_sense_pair(t, &ctx.index, measure, table.as_ref(), w1, w2)?;
    writeln!(out, "{}", evaluation::format_value(best.score.value))?;
    if explain {
        writeln!(out, "sense1\t{}", ctx.describe(best.sense1))?;
        writeln!(out, "sense2\t{}", ctx.describe(best.sense2))?;
        writeln!(
            out,
            "lcs\t{}",
            ctx.describe(t.lcs(best.sense1, best.sense2))
        )?;
    }
    Ok(())
}

fn load_dataset(name: &str) -> Result<evaluation::BenchmarkDataset, Failure> {
    if name.eq_ignore_ascii_case("rg30") {
        return Ok(evaluation::embedded_rg30());
    }
    let path = Path::new(name);
    let file = File::open(path).map_err(|source| Error::File {
        path: path.to_owned(),
        source,
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| name.to_owned());
    Ok(evaluation::load_dataset(&label, BufReader::new(file))?)
}

fn bench(
    ctx: &Ctx,
    dataset: &str,
    measures: &Measures,
    skip_oov: bool,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let t = &ctx.taxonomy;
    let dataset = load_dataset(dataset)?;
    let chosen = ctx.ic(ctx.model)?;
    let (ids, fill_normalized) = match measures {
        Measures::All => (MeasureId::ALL.to_vec(), true),
        Measures::List(list) => (list.clone(), false),
    };
    // `all` must not fail on jcn_norm just because the chosen model is unbounded
    let seco = if fill_normalized && !chosen.normalized() {
        Some(ic::ic_seco(t)?)
    } else {
        None
    };
    let specs: Vec<MeasureSpec> = ids
        .into_iter()
        .map(|measure| {
            let ic = match &seco {
                Some(seco) if measure.needs_normalized_ic() => seco,
                _ => &chosen,
            };
            MeasureSpec {
                measure,
                ic: Some(ic),
            }
        })
        .collect();
    let policy = if skip_oov {
        OovPolicy::Skip
    } else {
        OovPolicy::Strict
    };
    let report = evaluation::run_benchmark(t, &ctx.index, &dataset, &specs, policy)?;
    if !report.skipped.is_empty() {
        log::warn!("skipped {} pairs with unknown words", report.skipped.len());
    }
    out.write_all(evaluation::emit_report(&report, ctx.format)?.as_bytes())?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("taxsim: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
