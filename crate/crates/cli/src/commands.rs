use std::fs::File;
use std::hash::Hash;
use std::io::{BufReader, BufWriter};
use std::num::NonZeroUsize;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use s2s_core::alignment::{
    dtw_symbols, dtw_values, global_align, hirschberg_align, local_align,
    longest_common_subsequence, longest_common_substring, AlignmentResult,
};
use s2s_core::distance::{damerau_levenshtein, hamming, jaccard_distance, levenshtein};
use s2s_core::embedding::{load_word_vectors, pool, EmbeddingStore, PoolMode};
use s2s_core::index::{FlatIndex, IvfIndex, Metric, VectorIndex};
use s2s_core::render::{export_matrix, render_alignment, ColumnWidth, MatrixFormat, RenderOptions};
use s2s_core::search::{search, SearchAlgorithm};
use s2s_core::similarity::{
    cosine_similarity, greedy_match_score, jaccard_similarity, jaro, jaro_winkler, lcs_similarity,
};
use s2s_core::{
    tokenize, uniform_scoring, CostModel, Fingerprint, GapPenalty, Scorer, Sequence, SpaceMode,
    SubstitutionMatrix, Symbol, TokenizeMode,
};

use crate::args::*;
use crate::{Outcome, UsageError};

pub fn run(command: Command) -> Result<(Outcome, Output)> {
    match command {
        Command::Align(a) => {
            let out = a.output.output;
            Ok((align(a)?, out))
        }
        Command::Distance(a) => {
            let out = a.output.output;
            Ok((distance(a)?, out))
        }
        Command::Similarity(a) => {
            let out = a.output.output;
            Ok((similarity(a)?, out))
        }
        Command::Search(a) => {
            let out = a.output.output;
            Ok((lexical_search(a)?, out))
        }
        Command::Semsearch(SemCommand::Build(a)) => {
            let out = a.output.output;
            Ok((build(a)?, out))
        }
        Command::Semsearch(SemCommand::Query(a)) => {
            let out = a.output.output;
            Ok((query(a)?, out))
        }
        Command::Matrix(a) => {
            let out = a.output.output;
            Ok((matrix(a)?, out))
        }
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

// ---------------------------------------------------------------------
// Inputs

struct Operand {
    text: String,
    source: Value,
}

fn read_text(path: &Path) -> Result<String> {
    let mut text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.ends_with('\n') {
        text.pop();
        if text.ends_with('\r') {
            text.pop();
        }
    }
    Ok(text)
}

fn operand(inline: Option<String>, file: Option<&Path>) -> Result<Operand> {
    match (inline, file) {
        (Some(text), None) => Ok(Operand {
            source: Value::String(text.clone()),
            text,
        }),
        (None, Some(path)) => Ok(Operand {
            text: read_text(path)?,
            source: json!({ "file": path.display().to_string() }),
        }),
        _ => unreachable!("operand sources are resolved by the caller"),
    }
}

fn pair(p: &PairArgs) -> Result<(Operand, Operand)> {
    let needed = usize::from(p.file_a.is_none()) + usize::from(p.file_b.is_none());
    if p.inline.len() != needed {
        return Err(usage(format!(
            "expected {needed} inline operand(s) besides the --file-a/--file-b inputs, got {}",
            p.inline.len()
        )));
    }
    let mut inline = p.inline.iter().cloned();
    let a_inline = if p.file_a.is_none() {
        inline.next()
    } else {
        None
    };
    let b_inline = if p.file_b.is_none() {
        inline.next()
    } else {
        None
    };
    Ok((
        operand(a_inline, p.file_a.as_deref())?,
        operand(b_inline, p.file_b.as_deref())?,
    ))
}

fn token_mode(t: &TokenArgs, default: Mode) -> Result<(Mode, TokenizeMode)> {
    let mode = t.mode.unwrap_or(default);
    let tm = match (mode, &t.delimiter) {
        (Mode::Char, None) => TokenizeMode::Char,
        (Mode::Whitespace, None) => TokenizeMode::Whitespace,
        (Mode::Delimiter, Some(d)) if !d.is_empty() => TokenizeMode::Delimiter(d.clone()),
        (Mode::Delimiter, _) => return Err(usage("--mode delimiter needs a nonempty --delimiter")),
        (_, Some(_)) => return Err(usage("--delimiter only applies with --mode delimiter")),
    };
    Ok((mode, tm))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Char => "char",
        Mode::Whitespace => "whitespace",
        Mode::Delimiter => "delimiter",
    }
}

fn separator(tm: &TokenizeMode) -> &str {
    match tm {
        TokenizeMode::Char => "",
        TokenizeMode::Whitespace => " ",
        TokenizeMode::Delimiter(d) => d,
    }
}

struct Pair {
    tm: TokenizeMode,
    a: Sequence,
    b: Sequence,
    inputs: Value,
}

fn tokenized_pair(p: &PairArgs, t: &TokenArgs, default: Mode) -> Result<Pair> {
    let (mode, tm) = token_mode(t, default)?;
    let (x, y) = pair(p)?;
    Ok(Pair {
        a: tokenize(&x.text, &tm)?,
        b: tokenize(&y.text, &tm)?,
        inputs: json!({ "a": x.source, "b": y.source, "mode": mode_name(mode) }),
        tm,
    })
}

fn numbers(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| anyhow!("not a finite number: {s:?}"))
        })
        .collect()
}

fn space(s: Space) -> SpaceMode {
    match s {
        Space::Full => SpaceMode::Full,
        Space::Linear => SpaceMode::Linear,
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library results serialize")
}

// ---------------------------------------------------------------------
// align

fn scorer(s: &AlignScoring) -> Result<(Box<dyn Scorer<Symbol>>, GapPenalty)> {
    let gap = GapPenalty::new(s.gap)?;
    match &s.substitution {
        Some(path) => {
            let file =
                File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
            let m = SubstitutionMatrix::parse(BufReader::new(file))
                .with_context(|| format!("in {}", path.display()))?;
            Ok((Box::new(m), gap))
        }
        None => {
            let (u, gap) = uniform_scoring(s.match_score, s.mismatch, s.gap)?;
            Ok((Box::new(u), gap))
        }
    }
}

fn render_options(v: &ViewArgs, tm: &TokenizeMode) -> Result<RenderOptions> {
    let wrap = NonZeroUsize::new(v.wrap).ok_or_else(|| usage("--wrap must be positive"))?;
    let width = match v.column_width {
        None => ColumnWidth::Auto,
        Some(w) => ColumnWidth::Fixed(
            NonZeroUsize::new(w).ok_or_else(|| usage("--column-width must be positive"))?,
        ),
    };
    let mut opts = RenderOptions::default()
        .with_gap_symbol(v.gap_symbol.clone())
        .map_err(|e| usage(e.to_string()))?
        .with_line_wrap(wrap)
        .with_column_width(width)
        .with_marker_row(v.markers);
    if !matches!(tm, TokenizeMode::Char) {
        opts = opts.with_separator(" ");
    }
    Ok(opts)
}

fn alignment_text(r: &AlignmentResult<Symbol>, opts: &RenderOptions) -> String {
    let rendered = render_alignment(r, opts);
    if rendered.is_empty() {
        format!("score: {}\n", r.score)
    } else {
        format!("{rendered}\nscore: {}\n", r.score)
    }
}

fn align(args: AlignArgs) -> Result<Outcome> {
    let method = format!("align.{}", method_name(args.method));
    if args.method == AlignMethod::Dtw && args.numeric {
        let (x, y) = pair(&args.pair)?;
        let (a, b) = (numbers(&x.text)?, numbers(&y.text)?);
        let r = dtw_values(&a, &b, space(args.space))?;
        return Ok(Outcome {
            method,
            inputs: json!({ "a": x.source, "b": y.source, "mode": "numeric" }),
            result: to_json(&r),
            plain: warp_text(&r),
        });
    }

    let p = tokenized_pair(&args.pair, &args.tokens, Mode::Char)?;
    let sep = separator(&p.tm);
    let (result, plain) = match args.method {
        AlignMethod::Global | AlignMethod::Local | AlignMethod::Hirschberg => {
            let (sc, gap) = scorer(&args.scoring)?;
            let opts = render_options(&args.view, &p.tm)?;
            let r = match args.method {
                AlignMethod::Global => global_align(&p.a, &p.b, &*sc, gap, false),
                AlignMethod::Local => local_align(&p.a, &p.b, &*sc, gap, false),
                _ => hirschberg_align(&p.a, &p.b, &*sc, gap),
            };
            (to_json(&r), alignment_text(&r, &opts))
        }
        AlignMethod::Lcsubstring => {
            let r = longest_common_substring(&p.a, &p.b);
            let mut text = format!("{}\n", r.length);
            for w in &r.witnesses {
                text.push_str(&Sequence::new(w.clone()).join(sep));
                text.push('\n');
            }
            (to_json(&r), text)
        }
        AlignMethod::Lcsubsequence => {
            let r = longest_common_subsequence(&p.a, &p.b);
            let text = format!(
                "{}\n{}\n",
                r.length,
                Sequence::new(r.witness.clone()).join(sep)
            );
            (to_json(&r), text)
        }
        AlignMethod::Dtw => {
            let r = dtw_symbols(&p.a, &p.b, space(args.space))?;
            (to_json(&r), warp_text(&r))
        }
    };
    Ok(Outcome {
        method,
        inputs: p.inputs,
        result,
        plain,
    })
}

fn warp_text(r: &s2s_core::alignment::WarpResult) -> String {
    let path: Vec<String> = r.path.iter().map(|(i, j)| format!("{i},{j}")).collect();
    format!("cost: {}\npath: {}\n", r.total_cost, path.join(" "))
}

fn method_name<V: clap::ValueEnum>(v: V) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

// ---------------------------------------------------------------------
// distance and similarity

fn cost_model(c: &CostArgs) -> Result<CostModel> {
    Ok(CostModel::new(
        c.insert,
        c.delete,
        c.substitute,
        c.transpose,
        c.match_cost,
    )?)
}

fn scalar(method: String, inputs: Value, v: f64) -> Outcome {
    Outcome {
        method,
        inputs,
        result: json!(v),
        plain: format!("{v}\n"),
    }
}

fn distance(args: DistanceArgs) -> Result<Outcome> {
    let method = format!("distance.{}", method_name(args.method));
    let p = tokenized_pair(&args.pair, &args.tokens, Mode::Char)?;
    let costs = cost_model(&args.costs)?;
    let mode = space(args.space);
    let v = match args.method {
        DistanceMethod::Levenshtein => levenshtein(&p.a, &p.b, &costs, mode).value,
        DistanceMethod::Damerau => damerau_levenshtein(&p.a, &p.b, &costs, mode).value,
        DistanceMethod::Hamming => hamming(&p.a, &p.b)?.value,
        DistanceMethod::Jaccard => jaccard_distance(&p.a, &p.b).value,
    };
    Ok(scalar(method, p.inputs, v))
}

fn load_store(path: &Path, dim: Option<usize>) -> Result<EmbeddingStore> {
    let file = File::open(path).with_context(|| format!("cannot read {}", path.display()))?;
    let (store, _) = load_word_vectors(BufReader::new(file), dim)
        .with_context(|| format!("in {}", path.display()))?;
    Ok(store)
}

/// Vectors of the in-vocabulary tokens; unknown tokens are skipped.
fn token_vectors<'s>(store: &'s EmbeddingStore, seq: &Sequence) -> Vec<&'s [f32]> {
    seq.iter().filter_map(|s| store.lookup(&s.text())).collect()
}

fn similarity(args: SimilarityArgs) -> Result<Outcome> {
    let method = format!("similarity.{}", method_name(args.method));
    if args.method == SimilarityMethod::Cosine {
        let (x, y) = pair(&args.pair)?;
        let v = cosine_similarity(&numbers(&x.text)?, &numbers(&y.text)?)?;
        return Ok(scalar(
            method,
            json!({ "a": x.source, "b": y.source, "mode": "numeric" }),
            v,
        ));
    }
    let default = if args.method == SimilarityMethod::GreedyMatch {
        Mode::Whitespace
    } else {
        Mode::Char
    };
    let p = tokenized_pair(&args.pair, &args.tokens, default)?;
    let v = match args.method {
        SimilarityMethod::Jaccard => jaccard_similarity(&p.a, &p.b),
        SimilarityMethod::Jaro => jaro(&p.a, &p.b),
        SimilarityMethod::JaroWinkler => {
            jaro_winkler(&p.a, &p.b, args.prefix_scale, args.max_prefix)?
        }
        SimilarityMethod::Lcs => lcs_similarity(&p.a, &p.b),
        SimilarityMethod::GreedyMatch => {
            let path = args
                .vectors
                .as_deref()
                .ok_or_else(|| usage("greedy-match needs --vectors"))?;
            let store = load_store(path, None)?;
            let widen = |vs: Vec<&[f32]>| -> Vec<Vec<f64>> {
                vs.into_iter()
                    .map(|v| v.iter().map(|&x| f64::from(x)).collect())
                    .collect()
            };
            let (ra, rb) = (
                widen(token_vectors(&store, &p.a)),
                widen(token_vectors(&store, &p.b)),
            );
            for (name, rows) in [("first", &ra), ("second", &rb)] {
                if rows.is_empty() {
                    bail!("the {name} input has no in-vocabulary tokens");
                }
            }
            let r = greedy_match_score(&ra, &rb)?;
            return Ok(Outcome {
                method,
                inputs: p.inputs,
                result: to_json(&r),
                plain: format!(
                    "precision: {}\nrecall: {}\nf1: {}\n",
                    r.precision, r.recall, r.f1
                ),
            });
        }
        SimilarityMethod::Cosine => unreachable!("handled above"),
    };
    Ok(scalar(method, p.inputs, v))
}

// ---------------------------------------------------------------------
// search

fn algorithm(m: SearchMethod) -> SearchAlgorithm {
    match m {
        SearchMethod::Naive => SearchAlgorithm::Naive,
        SearchMethod::RabinKarp => SearchAlgorithm::RabinKarp,
        SearchMethod::BoyerMoore => SearchAlgorithm::BoyerMoore,
        SearchMethod::Kmp => SearchAlgorithm::Kmp,
    }
}

fn find<T: Eq + Hash + Fingerprint>(
    pattern: &[T],
    text: &[T],
    algo: SearchAlgorithm,
) -> Result<Vec<usize>> {
    Ok(search(pattern, text, algo)?)
}

fn lexical_search(args: SearchArgs) -> Result<Outcome> {
    let (mode, tm) = token_mode(&args.tokens, Mode::Char)?;
    let pattern = operand(args.pattern, args.pattern_file.as_deref())?;
    let text = operand(args.text, args.text_file.as_deref())?;
    let algo = algorithm(args.method);
    let hits = match &tm {
        TokenizeMode::Char => {
            let p: Vec<char> = pattern.text.chars().collect();
            let t: Vec<char> = text.text.chars().collect();
            find(&p, &t, algo)?
        }
        _ => find(
            &tokenize(&pattern.text, &tm)?,
            &tokenize(&text.text, &tm)?,
            algo,
        )?,
    };
    let plain: String = hits.iter().map(|h| format!("{h}\n")).collect();
    Ok(Outcome {
        method: format!("search.{}", algo.name()),
        inputs: json!({ "pattern": pattern.source, "text": text.source, "mode": mode_name(mode) }),
        result: to_json(&hits),
        plain,
    })
}

// ---------------------------------------------------------------------
// semsearch

fn pool_mode(p: Pool) -> PoolMode {
    match p {
        Pool::Mean => PoolMode::Mean,
        Pool::Last => PoolMode::Last,
    }
}

fn embed(
    store: &EmbeddingStore,
    text: &str,
    tm: &TokenizeMode,
    mode: PoolMode,
) -> Result<Option<Vec<f32>>> {
    let seq = tokenize(text, tm)?;
    let vectors = token_vectors(store, &seq);
    if vectors.is_empty() {
        return Ok(None);
    }
    Ok(Some(pool(&vectors, mode)?))
}

fn build(args: BuildArgs) -> Result<Outcome> {
    let (mode, tm) = token_mode(&args.embed.tokens, Mode::Whitespace)?;
    let store = load_store(&args.embed.vectors, None)?;
    let corpus = std::fs::read_to_string(&args.corpus)
        .with_context(|| format!("cannot read {}", args.corpus.display()))?;
    let pm = pool_mode(args.embed.pool);
    let mut records = Vec::new();
    for (i, line) in corpus.lines().enumerate() {
        let v = embed(&store, line, &tm, pm)?.ok_or_else(|| {
            anyhow!(
                "{} line {}: no in-vocabulary tokens",
                args.corpus.display(),
                i + 1
            )
        })?;
        records.push(((i + 1).to_string(), v));
    }
    if records.is_empty() {
        bail!("{} has no lines", args.corpus.display());
    }
    let metric = match args.metric {
        MetricArg::Cosine => Metric::Cosine,
        MetricArg::L2 => Metric::L2,
    };
    let index = if args.nlist == 0 {
        VectorIndex::Flat(FlatIndex::build(records, metric)?)
    } else {
        VectorIndex::Ivf(IvfIndex::build(records, metric, args.nlist, args.seed)?)
    };
    let file =
        File::create(&args.out).with_context(|| format!("cannot write {}", args.out.display()))?;
    index.save(BufWriter::new(file))?;

    let summary = json!({ "n": index.len(), "E": index.dim(), "nlist": index.nlist() });
    Ok(Outcome {
        method: "semsearch.build".into(),
        inputs: json!({
            "corpus": args.corpus.display().to_string(),
            "vectors": args.embed.vectors.display().to_string(),
            "pool": method_name(args.embed.pool),
            "metric": metric.name(),
            "nlist": args.nlist,
            "seed": args.seed,
            "mode": mode_name(mode),
        }),
        plain: format!(
            "n={} E={} nlist={}\n",
            index.len(),
            index.dim(),
            index.nlist()
        ),
        result: summary,
    })
}

fn query(args: QueryArgs) -> Result<Outcome> {
    let (mode, tm) = token_mode(&args.embed.tokens, Mode::Whitespace)?;
    let file =
        File::open(&args.index).with_context(|| format!("cannot read {}", args.index.display()))?;
    let index = VectorIndex::load(BufReader::new(file))
        .with_context(|| format!("in {}", args.index.display()))?;
    let store = load_store(&args.embed.vectors, Some(index.dim()))?;
    let q = embed(&store, &args.query, &tm, pool_mode(args.embed.pool))?
        .ok_or_else(|| anyhow!("the query has no in-vocabulary tokens"))?;
    let hits = index.query(&q, args.k, args.nprobe)?;

    let mut rows = Vec::with_capacity(hits.len());
    let mut plain = String::new();
    for h in &hits {
        let line: u64 =
            h.id.parse()
                .with_context(|| format!("index record {:?} is not a line number", h.id))?;
        rows.push(json!({ "line": line, "score": h.score }));
        plain.push_str(&format!("{line}\t{}\n", h.score));
    }
    Ok(Outcome {
        method: "semsearch.query".into(),
        inputs: json!({
            "index": args.index.display().to_string(),
            "query": args.query,
            "k": args.k,
            "nprobe": args.nprobe,
            "pool": method_name(args.embed.pool),
            "mode": mode_name(mode),
        }),
        result: Value::Array(rows),
        plain,
    })
}

// ---------------------------------------------------------------------
// matrix

fn matrix(args: MatrixArgs) -> Result<Outcome> {
    let p = tokenized_pair(&args.pair, &args.tokens, Mode::Char)?;
    let m = match args.method {
        MatrixMethod::Global | MatrixMethod::Local => {
            let (sc, gap) = scorer(&args.scoring)?;
            let r = if args.method == MatrixMethod::Global {
                global_align(&p.a, &p.b, &*sc, gap, true)
            } else {
                local_align(&p.a, &p.b, &*sc, gap, true)
            };
            r.matrix
        }
        MatrixMethod::Levenshtein => {
            levenshtein(&p.a, &p.b, &cost_model(&args.costs)?, SpaceMode::Full).matrix
        }
        MatrixMethod::Damerau => {
            damerau_levenshtein(&p.a, &p.b, &cost_model(&args.costs)?, SpaceMode::Full).matrix
        }
    }
    .expect("full-table runs keep their matrix");
    let format = match args.format {
        Format::Csv => MatrixFormat::Csv,
        Format::Tsv => MatrixFormat::Tsv,
    };
    let labels = args.labels.then_some((&p.a[..], &p.b[..]));
    let text = export_matrix(&m, format, labels)?;
    Ok(Outcome {
        method: format!("matrix.{}", method_name(args.method)),
        inputs: p.inputs,
        result: to_json(&m),
        plain: text,
    })
}
