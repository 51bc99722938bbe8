use std::num::NonZeroUsize;

use proptest::prelude::*;
use s2s_core::alignment::global_align;
use s2s_core::render::{export_matrix, render_alignment, ColumnWidth, MatrixFormat, RenderOptions};
use s2s_core::{uniform_scoring, ScoreMatrix, Sequence, Symbol};

fn token() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["A", "C", "GG", "TTT", "x", "é", "日本"]).prop_map(String::from)
}

proptest! {
    #[test]
    fn stripping_the_rendering_recovers_both_token_rows(
        a in prop::collection::vec(token(), 0..25),
        b in prop::collection::vec(token(), 0..25),
        wrap in 1usize..12,
        markers: bool,
        fixed in prop::option::of(1usize..5),
    ) {
        let (s, t) = (Sequence::from_tokens(&a), Sequence::from_tokens(&b));
        let (sc, gap) = uniform_scoring(1.0, -1.0, -1.0).unwrap();
        let r = global_align(&s, &t, &sc, gap, false);
        let mut opts = RenderOptions::default()
            .with_gap_symbol("~").unwrap()
            .with_line_wrap(NonZeroUsize::new(wrap).unwrap())
            .with_marker_row(markers)
            .with_separator(" ");
        if let Some(w) = fixed {
            opts = opts.with_column_width(ColumnWidth::Fixed(NonZeroUsize::new(w).unwrap()));
        }
        let text = render_alignment(&r, &opts);
        if r.is_empty() {
            prop_assert_eq!(text, "");
            return Ok(());
        }
        let per_block = if markers { 3 } else { 2 };
        let (mut top, mut bottom) = (Vec::new(), Vec::new());
        for block in text.split("\n\n") {
            let rows: Vec<&str> = block.split('\n').collect();
            prop_assert_eq!(rows.len(), per_block);
            let width = rows[0].chars().count();
            prop_assert!(rows.iter().all(|r| r.chars().count() == width));
            top.extend(rows[0].split_whitespace().filter(|c| *c != "~").map(String::from));
            bottom.extend(rows[per_block - 1].split_whitespace().filter(|c| *c != "~").map(String::from));
        }
        prop_assert_eq!(top, a);
        prop_assert_eq!(bottom, b);
    }

    #[test]
    fn char_rendering_has_one_column_per_char(
        a in "[ab]{0,30}",
        b in "[ab]{0,30}",
    ) {
        let (s, t) = (Sequence::from_chars(&a), Sequence::from_chars(&b));
        let (sc, gap) = uniform_scoring(1.0, -1.0, -1.0).unwrap();
        let r = global_align(&s, &t, &sc, gap, false);
        let text = render_alignment(&r, &RenderOptions::default().with_marker_row(true));
        let rows: Vec<&str> = text.split('\n').collect();
        if r.is_empty() {
            prop_assert_eq!(text.as_str(), "");
        } else {
            prop_assert_eq!(rows[0].replace('-', ""), a);
            prop_assert_eq!(rows[2].replace('-', ""), b);
            for (k, m) in rows[1].chars().enumerate() {
                let want = match (&r.aligned_a[k], &r.aligned_b[k]) {
                    (Some(x), Some(y)) if x == y => '|',
                    (Some(_), Some(_)) => '.',
                    _ => ' ',
                };
                prop_assert_eq!(m, want);
            }
        }
    }

    #[test]
    fn csv_export_parses_back_exactly(
        rows in 1usize..6,
        cols in 1usize..6,
        seed in prop::collection::vec(-1e6f64..1e6, 36),
        tsv: bool,
    ) {
        let cells: Vec<f64> = seed[..rows * cols].iter().map(|x| x / 7.0).collect();
        let m = ScoreMatrix::new(rows, cols, cells.clone());
        let labels_a: Vec<Symbol> = (0..rows - 1).map(|i| Symbol::from(["a,b", "q\"", "x"][i % 3])).collect();
        let labels_b: Vec<Symbol> = (0..cols - 1).map(|i| Symbol::from(["t\tab", "y", "z z"][i % 3])).collect();
        let (format, delim) = if tsv { (MatrixFormat::Tsv, b'\t') } else { (MatrixFormat::Csv, b',') };
        let text = export_matrix(&m, format, Some((&labels_a[..], &labels_b[..]))).unwrap();
        prop_assert!(text.ends_with('\n'));

        let mut reader = csv::ReaderBuilder::new().has_headers(false).delimiter(delim).from_reader(text.as_bytes());
        let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().unwrap();
        prop_assert_eq!(records.len(), rows + 1);
        let header: Vec<&str> = records[0].iter().collect();
        prop_assert_eq!(header[0], "");
        prop_assert_eq!(header[1], "");
        let want: Vec<String> = labels_b.iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(&header[2..], &want.iter().map(String::as_str).collect::<Vec<_>>()[..]);
        for (i, rec) in records[1..].iter().enumerate() {
            prop_assert_eq!(rec.len(), cols + 1);
            let label = if i == 0 { String::new() } else { labels_a[i - 1].to_string() };
            prop_assert_eq!(&rec[0], label.as_str());
            for j in 0..cols {
                prop_assert_eq!(rec[j + 1].parse::<f64>().unwrap().to_bits(), cells[i * cols + j].to_bits());
            }
        }
    }
}

#[test]
fn unlabeled_export_parses_back() {
    let m = ScoreMatrix::from_rows(&[vec![0.1, -2.5e-300], vec![f64::MAX, 1.0 / 3.0]]);
    let text = export_matrix::<Symbol>(&m, MatrixFormat::Csv, None).unwrap();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let values: Vec<f64> = reader
        .records()
        .flat_map(|r| {
            r.unwrap()
                .iter()
                .map(|x| x.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(values, m.cells());
}
