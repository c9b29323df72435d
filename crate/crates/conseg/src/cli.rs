//! Command-line surface. Every command reads its inputs, runs one or more
//! library stages and writes artifacts either to `--output`, into
//! `--out-dir`, or to stdout.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use conseg_core::{
    context_from_pairs, extract_pairs, extract_taxonomy, segment_corpus, AnnotatedCorpus, ConceptLattice,
    FormalContext, Fraction, Stage, StageError, Taxonomy,
};

use crate::config::PipelineConfig;
use crate::corpus::{parse_corpus, parse_pairs, write_pairs};
use crate::cxt::{parse_cxt, write_cxt};
use crate::dot::{lattice_dot, taxonomy_dot};
use crate::error::{CliError, FormatError};
use crate::json::{
    parse_context_json, parse_taxonomy_json, to_json, ContextDoc, LatticeDoc, SegmentationDoc, TaxonomyDoc,
};

/// Default directory for `pipeline` artifacts.
pub const DEFAULT_OUT_DIR: &str = "conseg-out";

#[derive(Debug, Parser)]
#[command(name = "conseg", version, about = "Concept lattices, taxonomies and concept-oriented segmentation")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,

    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by all subcommands. Flags override the config file.
#[derive(Debug, Default, Args)]
pub struct Options {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_name = "N")]
    pub min_pair_freq: Option<usize>,

    /// Look-ahead, in tokens, when pairing a verb with its noun.
    #[arg(long, global = true, value_name = "N")]
    pub window: Option<usize>,

    /// Share of candidate terms kept as features, e.g. `1/2` or `0.5`.
    #[arg(long, global = true, value_name = "FRACTION")]
    pub term_fraction: Option<Fraction>,

    #[arg(long, global = true, value_name = "N")]
    pub k: Option<usize>,

    #[arg(long, global = true, value_name = "N")]
    pub max_iter: Option<usize>,

    /// Share of a term's corpus total a cluster must hold for the term to explain it.
    #[arg(long, global = true, value_name = "FRACTION")]
    pub min_share: Option<Fraction>,

    /// Use seeded random k-means initialisation instead of farthest-first.
    #[arg(long, global = true, value_name = "SEED")]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Cxt,
    Dot,
    Tsv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Cxt => "cxt",
            Format::Dot => "dot",
            Format::Tsv => "tsv",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract verb/noun pairs from an annotated corpus (TSV).
    ExtractPairs {
        corpus: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the formal context of frequent terms (CXT or JSON).
    BuildContext {
        #[arg(required_unless_present = "from_pairs", conflicts_with = "from_pairs")]
        corpus: Option<PathBuf>,
        /// Start from a pair TSV instead of a corpus.
        #[arg(long, value_name = "PAIRS")]
        from_pairs: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the concept lattice of a CXT or JSON context (JSON or DOT).
    Lattice {
        context: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract the taxonomy of a CXT or JSON context (JSON or DOT).
    Taxonomy {
        context: PathBuf,
        /// TSV of `old<TAB>new` labels applied to the result.
        #[arg(long, value_name = "TSV")]
        rename: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Segment a corpus with the terms of a taxonomy (JSON report).
    Segment {
        corpus: PathBuf,
        taxonomy: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every stage and write all artifacts into the output directory.
    Pipeline { corpus: PathBuf },
}

/// A failed run: the stage that failed and why.
#[derive(Debug)]
pub struct Failure {
    pub stage: String,
    pub error: CliError,
}

impl Failure {
    fn new(stage: impl Into<String>) -> impl FnOnce(CliError) -> Failure {
        let stage = stage.into();
        move |error| Failure { stage, error }
    }
}

impl From<StageError> for Failure {
    fn from(e: StageError) -> Self {
        Failure { stage: e.stage.as_str().to_string(), error: CliError::Core(e.source) }
    }
}

/// Single line: `stage=<stage> <message>`.
impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = self.error.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "stage={} {}", self.stage, message)
    }
}

impl std::error::Error for Failure {}

pub fn resolve_config(options: &Options) -> Result<PipelineConfig, CliError> {
    let mut cfg = match &options.config {
        Some(path) => {
            let text = read(path)?;
            text.parse::<PipelineConfig>().map_err(CliError::format(path))?
        }
        None => PipelineConfig::default(),
    };
    let o = options;
    cfg.min_pair_freq = o.min_pair_freq.unwrap_or(cfg.min_pair_freq);
    cfg.window = o.window.unwrap_or(cfg.window);
    cfg.term_fraction = o.term_fraction.unwrap_or(cfg.term_fraction);
    cfg.k = o.k.unwrap_or(cfg.k);
    cfg.max_iter = o.max_iter.unwrap_or(cfg.max_iter);
    cfg.min_share = o.min_share.unwrap_or(cfg.min_share);
    cfg.seed = o.seed.or(cfg.seed);
    cfg.out_dir = o.out_dir.clone().or(cfg.out_dir);
    cfg.validate().map_err(CliError::Config)?;
    Ok(cfg)
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve_config(&cli.options).map_err(Failure::new("config"))?;
    let format = cli.options.format;
    match cli.command {
        Command::ExtractPairs { corpus, output } => {
            let stage = Stage::ExtractPairs.as_str();
            let fmt = pick_format(format, &[Format::Tsv]).map_err(Failure::new(stage))?;
            let corpus = load_corpus(&corpus).map_err(Failure::new(stage))?;
            let pairs = extract_pairs(&corpus, cfg.window).map_err(|e| Failure::new(stage)(e.into()))?;
            emit(&cfg, output, "pairs", fmt, &write_pairs(&pairs)).map_err(Failure::new(stage))?;
            eprintln!("{} pairs", pairs.len());
        }
        Command::BuildContext { corpus, from_pairs, output } => {
            let stage = Stage::BuildContext.as_str();
            let fmt = pick_format(format, &[Format::Cxt, Format::Json]).map_err(Failure::new(stage))?;
            let pairs = match (corpus, from_pairs) {
                (_, Some(path)) => parse_pairs(&read(&path).map_err(Failure::new(stage))?)
                    .map_err(|e| Failure::new(stage)(CliError::format(&path)(e)))?,
                (Some(path), None) => {
                    let corpus = load_corpus(&path).map_err(Failure::new(Stage::ExtractPairs.as_str()))?;
                    extract_pairs(&corpus, cfg.window)
                        .map_err(|e| StageError { stage: Stage::ExtractPairs, source: e })?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let (_, context) = context_from_pairs(&pairs, cfg.min_pair_freq)?;
            emit(&cfg, output, "context", fmt, &render_context(&context, fmt)).map_err(Failure::new(stage))?;
            eprintln!("{} objects, {} attributes", context.object_count(), context.attribute_count());
        }
        Command::Lattice { context, output } => {
            let stage = Stage::Lattice.as_str();
            let fmt = pick_format(format, &[Format::Json, Format::Dot]).map_err(Failure::new(stage))?;
            let context = load_context(&context).map_err(Failure::new(stage))?;
            let lattice = ConceptLattice::build(&context);
            emit(&cfg, output, "lattice", fmt, &render_lattice(&lattice, fmt)).map_err(Failure::new(stage))?;
            eprintln!("{} concepts", lattice.len());
        }
        Command::Taxonomy { context, rename, output } => {
            let stage = Stage::Taxonomy.as_str();
            let fmt = pick_format(format, &[Format::Json, Format::Dot]).map_err(Failure::new(stage))?;
            let context = load_context(&context).map_err(Failure::new(stage))?;
            let mut taxonomy = extract_taxonomy(&ConceptLattice::build(&context));
            if let Some(path) = rename {
                let map = parse_rename(&read(&path).map_err(Failure::new(stage))?)
                    .map_err(|e| Failure::new(stage)(CliError::format(&path)(e)))?;
                taxonomy = taxonomy.renamed(&map).map_err(|e| Failure::new(stage)(e.into()))?;
            }
            emit(&cfg, output, "taxonomy", fmt, &render_taxonomy(&taxonomy, fmt)).map_err(Failure::new(stage))?;
            eprintln!("{} edges", taxonomy.edge_count());
        }
        Command::Segment { corpus, taxonomy, output } => {
            let stage = Stage::Segment.as_str();
            let fmt = pick_format(format, &[Format::Json]).map_err(Failure::new(stage))?;
            let corpus = load_corpus(&corpus).map_err(Failure::new(stage))?;
            let taxonomy = load_taxonomy(&taxonomy).map_err(Failure::new(stage))?;
            let doc = segment(&corpus, &taxonomy, &cfg).map_err(Failure::new(stage))?;
            emit(&cfg, output, "segmentation", fmt, &to_json(&doc)).map_err(Failure::new(stage))?;
            eprintln!("{} clusters", doc.clusters.len());
        }
        Command::Pipeline { corpus } => {
            if format.is_some() {
                return Err(Failure::new("config")(CliError::Config(
                    "--format does not apply to pipeline; all formats are written".into(),
                )));
            }
            pipeline(&corpus, &cfg)?;
        }
    }
    Ok(())
}

fn pipeline(corpus: &Path, cfg: &PipelineConfig) -> Result<(), Failure> {
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let put = |stage: Stage, name: &str, content: &str| {
        write_file(&dir.join(name), content).map_err(Failure::new(stage.as_str()))
    };

    let corpus = load_corpus(corpus).map_err(Failure::new(Stage::ExtractPairs.as_str()))?;
    let pairs = extract_pairs(&corpus, cfg.window).map_err(|e| StageError { stage: Stage::ExtractPairs, source: e })?;
    put(Stage::ExtractPairs, "pairs.tsv", &write_pairs(&pairs))?;

    let (_, context) = context_from_pairs(&pairs, cfg.min_pair_freq)?;
    put(Stage::BuildContext, "context.cxt", &write_cxt(&context))?;
    put(Stage::BuildContext, "context.json", &to_json(&ContextDoc::from_context(&context)))?;

    let lattice = ConceptLattice::build(&context);
    put(Stage::Lattice, "lattice.json", &to_json(&LatticeDoc::from_lattice(&lattice)))?;
    put(Stage::Lattice, "lattice.dot", &lattice_dot(&lattice))?;

    let taxonomy = extract_taxonomy(&lattice);
    put(Stage::Taxonomy, "taxonomy.json", &to_json(&TaxonomyDoc::from_taxonomy(&taxonomy)))?;
    put(Stage::Taxonomy, "taxonomy.dot", &taxonomy_dot(&taxonomy))?;

    let doc = segment(&corpus, &taxonomy, cfg).map_err(Failure::new(Stage::Segment.as_str()))?;
    put(Stage::Segment, "segmentation.json", &to_json(&doc))?;

    eprintln!(
        "{} pairs, {} concepts, {} taxonomy edges, {} clusters -> {}",
        pairs.len(),
        lattice.len(),
        taxonomy.edge_count(),
        doc.clusters.len(),
        dir.display()
    );
    Ok(())
}

fn segment(corpus: &AnnotatedCorpus, taxonomy: &Taxonomy, cfg: &PipelineConfig) -> Result<SegmentationDoc, CliError> {
    let terms = taxonomy.concept_terms();
    let report = segment_corpus(corpus, &terms, taxonomy, cfg.segment_params())?;
    Ok(SegmentationDoc::from_report(&report))
}

fn pick_format(requested: Option<Format>, allowed: &[Format]) -> Result<Format, CliError> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => {
            let names: Vec<&str> = allowed.iter().map(|a| a.extension()).collect();
            Err(CliError::Config(format!("format `{}` not supported here; use {}", f.extension(), names.join(" or "))))
        }
    }
}

fn render_context(ctx: &FormalContext, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(&ContextDoc::from_context(ctx)),
        _ => write_cxt(ctx),
    }
}

fn render_lattice(lattice: &ConceptLattice, fmt: Format) -> String {
    match fmt {
        Format::Dot => lattice_dot(lattice),
        _ => to_json(&LatticeDoc::from_lattice(lattice)),
    }
}

fn render_taxonomy(t: &Taxonomy, fmt: Format) -> String {
    match fmt {
        Format::Dot => taxonomy_dot(t),
        _ => to_json(&TaxonomyDoc::from_taxonomy(t)),
    }
}

/// `-o` wins, then `--out-dir/<stem>.<ext>`, then stdout.
fn emit(cfg: &PipelineConfig, output: Option<PathBuf>, stem: &str, fmt: Format, content: &str) -> Result<(), CliError> {
    let target = output.or_else(|| cfg.out_dir.as_ref().map(|d| d.join(format!("{stem}.{}", fmt.extension()))));
    match target {
        Some(path) => write_file(&path, content),
        None => io::stdout().lock().write_all(content.as_bytes()).map_err(CliError::io("<stdout>")),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    fs::write(path, content).map_err(CliError::io(path))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

fn load_corpus(path: &Path) -> Result<AnnotatedCorpus, CliError> {
    parse_corpus(&read(path)?).map_err(CliError::format(path))
}

/// JSON when the extension says so or the content starts with `{`, CXT otherwise.
fn load_context(path: &Path) -> Result<FormalContext, CliError> {
    let text = read(path)?;
    let is_json = path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let parsed = if is_json { parse_context_json(&text) } else { parse_cxt(&text) };
    parsed.map_err(CliError::format(path))
}

fn load_taxonomy(path: &Path) -> Result<Taxonomy, CliError> {
    parse_taxonomy_json(&read(path)?).map_err(CliError::format(path))
}

fn parse_rename(input: &str) -> Result<BTreeMap<String, String>, FormatError> {
    let mut map = BTreeMap::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((old, new)) = line.split_once('\t') else {
            return Err(FormatError::at(i + 1, "expected `old<TAB>new`"));
        };
        if map.insert(old.trim().to_string(), new.trim().to_string()).is_some() {
            return Err(FormatError::at(i + 1, format!("`{}` renamed twice", old.trim())));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "k = 3\nwindow = 7\n").unwrap();
        let options = Options { config: Some(path), k: Some(2), ..Options::default() };
        let cfg = resolve_config(&options).unwrap();
        assert_eq!((cfg.k, cfg.window), (2, 7));
    }

    #[test]
    fn invalid_flag_values_are_config_errors() {
        let options = Options { k: Some(0), ..Options::default() };
        assert!(matches!(resolve_config(&options), Err(CliError::Config(_))));
    }

    #[test]
    fn failure_renders_on_one_line() {
        let f = Failure { stage: "lattice".into(), error: CliError::Config("a\nb".into()) };
        assert_eq!(f.to_string(), "stage=lattice a b");
    }

    #[test]
    fn rename_map() {
        let map = parse_rename("# old\tnew\nbookable\tbook\n").unwrap();
        assert_eq!(map["bookable"], "book");
        assert!(parse_rename("a b\n").is_err());
        assert!(parse_rename("a\tb\na\tc\n").is_err());
    }

    #[test]
    fn format_restrictions() {
        assert_eq!(pick_format(None, &[Format::Cxt, Format::Json]).unwrap(), Format::Cxt);
        assert!(pick_format(Some(Format::Dot), &[Format::Tsv]).is_err());
    }
}
