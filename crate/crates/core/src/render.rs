//! Plain-text alignment rendering and delimited score-matrix export.

use std::fmt::{self, Display};
use std::num::NonZeroUsize;

use crate::alignment::AlignmentResult;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;

/// Width given to every column of a rendered alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColumnWidth {
    /// The widest cell in the alignment, gap symbols included.
    #[default]
    Auto,
    /// At least this many characters. Wider cells are never truncated.
    Fixed(NonZeroUsize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    gap_symbol: String,
    column_width: ColumnWidth,
    line_wrap: NonZeroUsize,
    marker_row: bool,
    separator: Option<String>,
}

pub const DEFAULT_LINE_WRAP: usize = 60;

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            gap_symbol: "-".into(),
            column_width: ColumnWidth::Auto,
            line_wrap: NonZeroUsize::new(DEFAULT_LINE_WRAP).unwrap(),
            marker_row: false,
            separator: None,
        }
    }
}

impl RenderOptions {
    /// The gap symbol must be nonempty and free of whitespace, so it can
    /// never be confused with padding.
    pub fn with_gap_symbol(mut self, gap: impl Into<String>) -> Result<Self> {
        let gap = gap.into();
        if gap.is_empty() || gap.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!(
                "gap symbol must be nonempty and contain no whitespace, got {gap:?}"
            )));
        }
        self.gap_symbol = gap;
        Ok(self)
    }

    pub fn with_column_width(mut self, width: ColumnWidth) -> Self {
        self.column_width = width;
        self
    }

    /// Columns per rendered block.
    pub fn with_line_wrap(mut self, columns: NonZeroUsize) -> Self {
        self.line_wrap = columns;
        self
    }

    pub fn with_marker_row(mut self, on: bool) -> Self {
        self.marker_row = on;
        self
    }

    /// Text placed between columns. Left unset, columns are joined directly
    /// when every cell is one character wide and by a single space otherwise.
    pub fn with_separator(mut self, sep: impl Into<String>) -> Self {
        self.separator = Some(sep.into());
        self
    }

    pub fn gap_symbol(&self) -> &str {
        &self.gap_symbol
    }

    pub fn line_wrap(&self) -> usize {
        self.line_wrap.get()
    }

    pub fn marker_row(&self) -> bool {
        self.marker_row
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn pad(out: &mut String, cell: &str, w: usize) {
    out.push_str(cell);
    for _ in width(cell)..w {
        out.push(' ');
    }
}

/// Renders the aligned rows as blocks of `line_wrap` columns separated by a
/// blank line. Each block has two rows, or three with the marker row between
/// them: `|` for a match, `.` for a mismatch and a space opposite a gap.
pub fn render_alignment<T: Display + PartialEq>(
    result: &AlignmentResult<T>,
    opts: &RenderOptions,
) -> String {
    let cell = |c: &Option<T>| match c {
        Some(s) => s.to_string(),
        None => opts.gap_symbol.clone(),
    };
    let top: Vec<String> = result.aligned_a.iter().map(cell).collect();
    let bottom: Vec<String> = result.aligned_b.iter().map(cell).collect();
    let widest = top
        .iter()
        .chain(&bottom)
        .map(|s| width(s))
        .max()
        .unwrap_or(0);
    let w = match opts.column_width {
        ColumnWidth::Auto => widest,
        ColumnWidth::Fixed(n) => widest.max(n.get()),
    };
    let sep = match &opts.separator {
        Some(s) => s.as_str(),
        None if w <= 1 => "",
        None => " ",
    };
    let markers: Vec<&str> = result
        .columns()
        .map(|pair| match pair {
            (Some(a), Some(b)) if a == b => "|",
            (Some(_), Some(_)) => ".",
            _ => " ",
        })
        .collect();

    let row = |cells: &[&str]| {
        let mut line = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                line.push_str(sep);
            }
            pad(&mut line, c, w);
        }
        line
    };

    let wrap = opts.line_wrap.get();
    let mut blocks = Vec::new();
    for start in (0..top.len()).step_by(wrap) {
        let end = (start + wrap).min(top.len());
        let top: Vec<&str> = top[start..end].iter().map(String::as_str).collect();
        let bottom: Vec<&str> = bottom[start..end].iter().map(String::as_str).collect();
        let mut lines = vec![row(&top)];
        if opts.marker_row {
            lines.push(row(&markers[start..end]));
        }
        lines.push(row(&bottom));
        blocks.push(lines.join("\n"));
    }
    blocks.join("\n\n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Tsv,
}

impl MatrixFormat {
    fn delimiter(self) -> char {
        match self {
            MatrixFormat::Csv => ',',
            MatrixFormat::Tsv => '\t',
        }
    }
}

impl std::str::FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(MatrixFormat::Csv),
            "tsv" => Ok(MatrixFormat::Tsv),
            _ => Err(Error::invalid(format!("unknown matrix format {s:?}"))),
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixFormat::Csv => "csv",
            MatrixFormat::Tsv => "tsv",
        })
    }
}

fn push_field(line: &mut String, field: &str, delim: char) {
    if field.contains([delim, '"', '\n', '\r']) {
        line.push('"');
        line.push_str(&field.replace('"', "\"\""));
        line.push('"');
    } else {
        line.push_str(field);
    }
}

/// Writes the matrix one row per line, every line ending in `\n`, numbers in
/// shortest round-trip form.
///
/// With labels `(s, t)` a header row and a label column are added. A matrix
/// with a boundary row and column (`(|s|+1) x (|t|+1)`) gets an empty label
/// for the boundary; a matrix of exactly `|s| x |t|` is labeled cell by cell.
pub fn export_matrix<T: Display>(
    matrix: &ScoreMatrix,
    format: MatrixFormat,
    labels: Option<(&[T], &[T])>,
) -> Result<String> {
    let delim = format.delimiter();
    let mut out = String::new();
    let mut emit = |fields: &mut dyn Iterator<Item = String>| {
        let mut line = String::new();
        for (k, f) in fields.enumerate() {
            if k > 0 {
                line.push(delim);
            }
            push_field(&mut line, &f, delim);
        }
        line.push('\n');
        out.push_str(&line);
    };

    let Some((s, t)) = labels else {
        for i in 0..matrix.rows() {
            emit(&mut matrix.row(i).iter().map(|x| x.to_string()));
        }
        return Ok(out);
    };

    let boundary = if matrix.rows() == s.len() + 1 && matrix.cols() == t.len() + 1 {
        1
    } else if matrix.rows() == s.len() && matrix.cols() == t.len() {
        0
    } else {
        return Err(Error::invalid(format!(
            "labels of lengths {} and {} do not fit a {}x{} matrix",
            s.len(),
            t.len(),
            matrix.rows(),
            matrix.cols()
        )));
    };
    let blank = std::iter::repeat_n(String::new(), boundary);
    emit(
        &mut std::iter::once(String::new())
            .chain(blank.clone())
            .chain(t.iter().map(|x| x.to_string())),
    );
    let row_labels = blank.chain(s.iter().map(|x| x.to_string()));
    for (i, label) in row_labels.enumerate() {
        emit(&mut std::iter::once(label).chain(matrix.row(i).iter().map(|x| x.to_string())));
    }
    Ok(out)
}
