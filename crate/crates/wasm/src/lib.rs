//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string:
//! the result object, or `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use s2s_core::alignment::{global_align, hirschberg_align, local_align, AlignmentResult};
use s2s_core::distance::{damerau_levenshtein, hamming, jaccard_distance, levenshtein};
use s2s_core::render::{render_alignment, RenderOptions};
use s2s_core::search::SearchAlgorithm;
use s2s_core::similarity::{
    jaccard_similarity, jaro, jaro_winkler, lcs_similarity, WINKLER_MAX_PREFIX, WINKLER_SCALING,
};
use s2s_core::{tokenize, uniform_scoring, CostModel, Sequence, SpaceMode, Symbol, TokenizeMode};

type Outcome = Result<Value, String>;

fn finish(r: Outcome) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn mode(name: &str, delimiter: &str) -> Result<TokenizeMode, String> {
    match name {
        "char" => Ok(TokenizeMode::Char),
        "whitespace" => Ok(TokenizeMode::Whitespace),
        "delimiter" if !delimiter.is_empty() => Ok(TokenizeMode::Delimiter(delimiter.to_string())),
        "delimiter" => Err("delimiter mode needs a delimiter".into()),
        other => Err(format!("unknown mode {other:?}")),
    }
}

fn split(a: &str, b: &str, m: &TokenizeMode) -> Result<(Sequence, Sequence), String> {
    let t = |s: &str| tokenize(s, m).map_err(|e| e.to_string());
    Ok((t(a)?, t(b)?))
}

fn labels(s: &Sequence) -> Vec<String> {
    s.iter().map(Symbol::to_string).collect()
}

fn align_inner(
    a: &str,
    b: &str,
    mode_name: &str,
    delimiter: &str,
    method: &str,
    scores: [f64; 3],
) -> Outcome {
    let m = mode(mode_name, delimiter)?;
    let (s, t) = split(a, b, &m)?;
    let (scorer, gap) =
        uniform_scoring(scores[0], scores[1], scores[2]).map_err(|e| e.to_string())?;
    let r: AlignmentResult<Symbol> = match method {
        "global" => global_align(&s, &t, &scorer, gap, true),
        "local" => local_align(&s, &t, &scorer, gap, true),
        "hirschberg" => {
            let mut r = hirschberg_align(&s, &t, &scorer, gap);
            r.matrix = global_align(&s, &t, &scorer, gap, true).matrix;
            r
        }
        other => return Err(format!("unknown alignment method {other:?}")),
    };
    let mut opts = RenderOptions::default().with_marker_row(true);
    if !matches!(m, TokenizeMode::Char) {
        opts = opts.with_separator(" ");
    }
    let matrix = r.matrix.as_ref().expect("full table kept");
    let rows: Vec<&[f64]> = (0..matrix.rows()).map(|i| matrix.row(i)).collect();
    Ok(json!({
        "score": r.score,
        "rendered": render_alignment(&r, &opts),
        "aligned_a": r.aligned_a,
        "aligned_b": r.aligned_b,
        "matrix": rows,
        "labels_a": labels(&s),
        "labels_b": labels(&t),
    }))
}

/// Aligns two inputs and returns the rendering, the score and the full DP
/// matrix with its row and column labels.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn align(
    a: &str,
    b: &str,
    mode: &str,
    delimiter: &str,
    method: &str,
    match_score: f64,
    mismatch: f64,
    gap: f64,
) -> String {
    finish(align_inner(
        a,
        b,
        mode,
        delimiter,
        method,
        [match_score, mismatch, gap],
    ))
}

fn compare_inner(a: &str, b: &str, mode_name: &str, delimiter: &str) -> Outcome {
    let m = mode(mode_name, delimiter)?;
    let (s, t) = split(a, b, &m)?;
    let unit = CostModel::default();
    let hamming = hamming(&s, &t)
        .map(|d| json!(d.value))
        .unwrap_or(Value::Null);
    let rows = vec![
        json!({ "kind": "distance", "name": "levenshtein", "value": levenshtein(&s, &t, &unit, SpaceMode::Linear).value }),
        json!({ "kind": "distance", "name": "damerau (osa)", "value": damerau_levenshtein(&s, &t, &unit, SpaceMode::Linear).value }),
        json!({ "kind": "distance", "name": "hamming", "value": hamming }),
        json!({ "kind": "distance", "name": "jaccard", "value": jaccard_distance(&s, &t).value }),
        json!({ "kind": "similarity", "name": "jaccard", "value": jaccard_similarity(&s, &t) }),
        json!({ "kind": "similarity", "name": "jaro", "value": jaro(&s, &t) }),
        json!({
            "kind": "similarity",
            "name": "jaro-winkler",
            "value": jaro_winkler(&s, &t, WINKLER_SCALING, WINKLER_MAX_PREFIX).map_err(|e| e.to_string())?,
        }),
        json!({ "kind": "similarity", "name": "lcs ratio", "value": lcs_similarity(&s, &t) }),
    ];
    Ok(json!({ "rows": rows, "len_a": s.len(), "len_b": t.len() }))
}

/// Every unit-cost distance and every similarity that needs no vectors.
/// Hamming is `null` for inputs of different lengths.
#[wasm_bindgen]
pub fn compare(a: &str, b: &str, mode: &str, delimiter: &str) -> String {
    finish(compare_inner(a, b, mode, delimiter))
}

/// Character ranges `[start, end)` of every token of `text`.
fn token_spans(text: &str, m: &TokenizeMode) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    match m {
        TokenizeMode::Char => spans.extend((0..chars.len()).map(|i| (i, i + 1))),
        TokenizeMode::Whitespace => {
            let mut start = None;
            for (i, c) in chars.iter().enumerate() {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(i),
                    (true, Some(s)) => {
                        spans.push((s, i));
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = start {
                spans.push((s, chars.len()));
            }
        }
        TokenizeMode::Delimiter(d) => {
            let mut pos = 0;
            for piece in text.split(d.as_str()) {
                let len = piece.chars().count();
                if len > 0 {
                    spans.push((pos, pos + len));
                }
                pos += len + d.chars().count();
            }
        }
    }
    spans
}

fn find_inner(
    pattern: &str,
    text: &str,
    mode_name: &str,
    delimiter: &str,
    algorithm: &str,
) -> Outcome {
    let m = mode(mode_name, delimiter)?;
    let algo: SearchAlgorithm = algorithm
        .parse()
        .map_err(|e: s2s_core::Error| e.to_string())?;
    let (p, t) = split(pattern, text, &m)?;
    let offsets = s2s_core::search::search(&p, &t, algo).map_err(|e| e.to_string())?;
    let spans = token_spans(text, &m);
    let ranges: Vec<(usize, usize)> = offsets
        .iter()
        .map(|&o| (spans[o].0, spans[o + p.len() - 1].1))
        .collect();
    Ok(json!({ "algorithm": algo.name(), "offsets": offsets, "ranges": ranges }))
}

/// Match offsets in symbols, plus the character range each match covers in
/// `text`, for highlighting. Overlapping matches produce overlapping ranges.
#[wasm_bindgen]
pub fn find(pattern: &str, text: &str, mode: &str, delimiter: &str, algorithm: &str) -> String {
    finish(find_inner(pattern, text, mode, delimiter, algorithm))
}
