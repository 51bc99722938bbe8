use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "s2s",
    version,
    about = "String-to-string alignment, distance, similarity and search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise alignment of two inputs.
    Align(AlignArgs),
    /// Edit and set distances.
    Distance(DistanceArgs),
    /// Similarity scores in [0, 1] (cosine and greedy matching in [-1, 1]).
    Similarity(SimilarityArgs),
    /// Exact pattern search; prints every match offset.
    Search(SearchArgs),
    /// Build and query a nearest-neighbour index over a line corpus.
    #[command(subcommand)]
    Semsearch(SemCommand),
    /// Export a DP score matrix as CSV or TSV.
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// One symbol per Unicode scalar value.
    Char,
    /// Tokens separated by runs of whitespace.
    Whitespace,
    /// Tokens separated by --delimiter.
    Delimiter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Full,
    Linear,
}

#[derive(Debug, Args)]
pub struct TokenArgs {
    /// Tokenization mode [default: char; whitespace for greedy-match and semsearch]
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Token delimiter for --mode delimiter.
    #[arg(long)]
    pub delimiter: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "plain")]
    pub output: Output,
}

/// Two operands, each given inline or with --file-a / --file-b.
/// Inline values fill the operands not read from files, in order.
#[derive(Debug, Args)]
pub struct PairArgs {
    /// Inline operands. Put `--` before one that starts with a hyphen.
    #[arg(value_name = "INPUT", num_args = 0..=2)]
    pub inline: Vec<String>,
    /// Read the first operand from a UTF-8 file.
    #[arg(long)]
    pub file_a: Option<PathBuf>,
    /// Read the second operand from a UTF-8 file.
    #[arg(long)]
    pub file_b: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AlignScoring {
    /// Score for a pair of equal symbols.
    #[arg(long = "match", default_value_t = 1.0, allow_negative_numbers = true)]
    pub match_score: f64,
    /// Score for a pair of different symbols.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub mismatch: f64,
    /// Score per gap symbol.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub gap: f64,
    /// NCBI-style substitution matrix file; replaces --match/--mismatch.
    #[arg(long, value_name = "FILE")]
    pub substitution: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long, default_value_t = 1.0)]
    pub insert: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delete: f64,
    #[arg(long, default_value_t = 1.0)]
    pub substitute: f64,
    /// Cost of swapping two adjacent symbols (damerau only).
    #[arg(long, default_value_t = 1.0)]
    pub transpose: f64,
    /// Cost of keeping an equal symbol.
    #[arg(long, default_value_t = 0.0)]
    pub match_cost: f64,
}

#[derive(Debug, Args)]
pub struct ViewArgs {
    /// Symbol drawn for a gap.
    #[arg(long, default_value = "-")]
    pub gap_symbol: String,
    /// Columns per rendered block.
    #[arg(long, default_value_t = 60)]
    pub wrap: usize,
    /// Minimum column width [default: widest cell]
    #[arg(long)]
    pub column_width: Option<usize>,
    /// Add a row of | (match), . (mismatch) and blanks (gap).
    #[arg(long)]
    pub markers: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlignMethod {
    Global,
    Local,
    Hirschberg,
    Lcsubstring,
    Lcsubsequence,
    Dtw,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    #[arg(value_enum)]
    pub method: AlignMethod,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub tokens: TokenArgs,
    #[command(flatten)]
    pub scoring: AlignScoring,
    #[command(flatten)]
    pub view: ViewArgs,
    /// dtw only: full table or linear-space divide and conquer.
    #[arg(long, value_enum, default_value = "full")]
    pub space: Space,
    /// dtw only: read each operand as numbers and use |x - y| as the cost.
    #[arg(long)]
    pub numeric: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceMethod {
    Levenshtein,
    Hamming,
    Damerau,
    Jaccard,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(value_enum)]
    pub method: DistanceMethod,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub tokens: TokenArgs,
    #[command(flatten)]
    pub costs: CostArgs,
    /// levenshtein and damerau: full table or two/three rolling rows.
    #[arg(long, value_enum, default_value = "linear")]
    pub space: Space,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimilarityMethod {
    Jaccard,
    Jaro,
    JaroWinkler,
    Lcs,
    Cosine,
    GreedyMatch,
}

#[derive(Debug, Args)]
pub struct SimilarityArgs {
    #[arg(value_enum)]
    pub method: SimilarityMethod,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub tokens: TokenArgs,
    /// jaro-winkler: prefix scaling factor.
    #[arg(long, default_value_t = 0.1)]
    pub prefix_scale: f64,
    /// jaro-winkler: longest prefix that earns a bonus.
    #[arg(long, default_value_t = 4)]
    pub max_prefix: usize,
    /// greedy-match: word-vector file (GloVe or fastText text format).
    #[arg(long, value_name = "FILE")]
    pub vectors: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMethod {
    Naive,
    RabinKarp,
    BoyerMoore,
    Kmp,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub method: SearchMethod,
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "pattern_file",
        required_unless_present = "pattern_file"
    )]
    pub pattern: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub pattern_file: Option<PathBuf>,
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "text_file",
        required_unless_present = "text_file"
    )]
    pub text: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub text_file: Option<PathBuf>,
    #[command(flatten)]
    pub tokens: TokenArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pool {
    Mean,
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Cosine,
    L2,
}

#[derive(Debug, Subcommand)]
pub enum SemCommand {
    /// Embed every corpus line and write an index file.
    Build(BuildArgs),
    /// Rank corpus lines against a query text.
    Query(QueryArgs),
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Word-vector file (GloVe or fastText text format).
    #[arg(long, value_name = "FILE")]
    pub vectors: PathBuf,
    /// How token vectors collapse into one text vector.
    #[arg(long, value_enum, default_value = "mean")]
    pub pool: Pool,
    #[command(flatten)]
    pub tokens: TokenArgs,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Corpus file, one text per line.
    #[arg(long, value_name = "FILE")]
    pub corpus: PathBuf,
    #[command(flatten)]
    pub embed: EmbedArgs,
    /// Index file to write.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "cosine")]
    pub metric: MetricArg,
    /// IVF cells; 0 builds an exact flat index.
    #[arg(long, default_value_t = 0)]
    pub nlist: usize,
    /// k-means seed.
    #[arg(long, env = "S2S_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Index file written by `semsearch build`.
    #[arg(long, value_name = "FILE")]
    pub index: PathBuf,
    /// Query text.
    pub query: String,
    #[command(flatten)]
    pub embed: EmbedArgs,
    /// Number of neighbours.
    #[arg(short, long, default_value_t = 10)]
    pub k: usize,
    /// IVF cells to scan [default: 1; ignored by a flat index]
    #[arg(long)]
    pub nprobe: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixMethod {
    Global,
    Local,
    Levenshtein,
    Damerau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(value_enum)]
    pub method: MatrixMethod,
    #[command(flatten)]
    pub pair: PairArgs,
    #[command(flatten)]
    pub tokens: TokenArgs,
    #[command(flatten)]
    pub scoring: AlignScoring,
    #[command(flatten)]
    pub costs: CostArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Add a header row and a label column with the input symbols.
    #[arg(long)]
    pub labels: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
