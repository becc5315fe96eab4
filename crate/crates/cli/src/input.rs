//! Reading and writing matroids: matrix files, graph files and name specs.
//!
//! Matrix format: a line `r n`, then `r` lines of `n` characters `0`/`1`,
//! then an optional line of `n` whitespace-separated labels. Graph format:
//! a line `graph`, then one `u v` edge per line; vertex names are arbitrary
//! tokens and edges are labelled `1..m` in input order. Blank lines are
//! ignored in both.

use std::collections::HashMap;
use std::path::Path;

use cdmatroid::{zoo, BinaryMatroid, Gf2Matrix, MatroidError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn malformed(line: usize, message: impl Into<String>) -> InputError {
    InputError::Malformed { line, message: message.into() }
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatroid, InputError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| malformed(1, "empty input"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [r, n] = dims.as_slice() else {
        return Err(malformed(ln, "expected header `r n`"));
    };
    let parse = |s: &str| s.parse::<usize>().map_err(|_| malformed(ln, format!("bad dimension {s:?}")));
    let (r, n) = (parse(r)?, parse(n)?);
    if n > cdmatroid::gf2::MAX_ELEMENTS {
        return Err(InputError::Dimension(format!(
            "{n} columns exceeds the limit of {}",
            cdmatroid::gf2::MAX_ELEMENTS
        )));
    }
    let mut rows = Vec::with_capacity(r);
    for i in 0..r {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| InputError::Dimension(format!("expected {r} rows, found {i}")))?;
        if row.chars().count() != n {
            return Err(InputError::Dimension(format!(
                "line {ln}: row has {} entries, expected {n}",
                row.chars().count()
            )));
        }
        let mut word = 0u64;
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => word |= 1 << j,
                _ => return Err(malformed(ln, format!("unexpected character {ch:?}"))),
            }
        }
        rows.push(word);
    }
    let labels = match lines.next() {
        None => (1..=n).map(|i| i.to_string()).collect(),
        Some((ln, line)) => {
            let labels: Vec<String> = line.split_whitespace().map(String::from).collect();
            if labels.len() != n {
                return Err(InputError::Dimension(format!(
                    "line {ln}: {} labels for {n} columns",
                    labels.len()
                )));
            }
            labels
        }
    };
    if let Some((ln, _)) = lines.next() {
        return Err(malformed(ln, "trailing content after label line"));
    }
    Ok(BinaryMatroid::new(Gf2Matrix::from_rows(rows, n), labels)?)
}

pub fn parse_graph(text: &str) -> Result<BinaryMatroid, InputError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "graph")) => {}
        Some((ln, _)) => return Err(malformed(ln, "expected `graph`")),
        None => return Err(malformed(1, "empty input")),
    }
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let ends: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = ends.as_slice() else {
            return Err(malformed(ln, "expected an edge `u v`"));
        };
        let mut id = |s: &str| {
            let next = names.len();
            *names.entry(s.to_string()).or_insert(next)
        };
        edges.push((id(u), id(v)));
    }
    if edges.len() > cdmatroid::gf2::MAX_ELEMENTS {
        return Err(InputError::Dimension(format!("{} edges exceeds the element limit", edges.len())));
    }
    Ok(zoo::graphic(&edges)?)
}

/// Picks the format from the first non-blank line.
pub fn parse_text(text: &str) -> Result<BinaryMatroid, InputError> {
    match content_lines(text).next() {
        Some((_, "graph")) => parse_graph(text),
        _ => parse_matrix(text),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

/// A path to an existing file, `graph:@path` / `matrix:@path`, or a zoo
/// name spec such as `s8` or `K:4`.
pub fn parse_input(arg: &str) -> Result<BinaryMatroid, InputError> {
    if let Some(path) = arg.strip_prefix("graph:@") {
        return parse_graph(&read(Path::new(path))?);
    }
    if let Some(path) = arg.strip_prefix("matrix:@") {
        return parse_matrix(&read(Path::new(path))?);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return parse_text(&read(path)?);
    }
    Ok(zoo::make(arg)?)
}

/// Serializes in the matrix format, labels included.
pub fn to_matrix_text(m: &BinaryMatroid) -> String {
    let rep = m.rep();
    let mut out = format!("{} {}\n", rep.nrows(), rep.ncols());
    for i in 0..rep.nrows() {
        out.extend((0..rep.ncols()).map(|j| if rep.get(i, j) { '1' } else { '0' }));
        out.push('\n');
    }
    out.push_str(&m.labels().join(" "));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_errors_carry_line_numbers() {
        let err = parse_matrix("\n\n2 x\n").unwrap_err();
        assert!(matches!(err, InputError::Malformed { line: 3, .. }), "{err}");
        let err = parse_matrix("1 3\n10a\n").unwrap_err();
        assert!(matches!(err, InputError::Malformed { line: 2, .. }), "{err}");
    }

    #[test]
    fn dimension_mismatches() {
        assert!(matches!(parse_matrix("2 3\n101\n"), Err(InputError::Dimension(_))));
        assert!(matches!(parse_matrix("1 3\n1011\n"), Err(InputError::Dimension(_))));
        assert!(matches!(parse_matrix("1 3\n101\na b\n"), Err(InputError::Dimension(_))));
    }

    #[test]
    fn graph_tokens_are_names() {
        let m = parse_graph("graph\nx y\ny z\nz x\n").unwrap();
        assert_eq!((m.len(), m.rank()), (3, 2));
        assert!(matches!(parse_graph("graph\nx y z\n"), Err(InputError::Malformed { line: 2, .. })));
    }
}
