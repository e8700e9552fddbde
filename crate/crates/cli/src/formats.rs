//! Text formats for posets, codes, lists and vectors. Element labels are
//! 1-based everywhere in this module.

use poset_radius_core::{FieldVector, LinearCode, Poset};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("input is empty")]
    Empty,
    #[error(transparent)]
    Poset(#[from] poset_radius_core::poset::PosetError),
    #[error(transparent)]
    Code(#[from] poset_radius_core::codes::CodeError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>, FormatError> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| syntax(line, format!("expected an integer, found {t:?}"))))
        .collect()
}

/// Reads either `n` followed by `a b` relation lines, or `matrix n`
/// followed by `n` rows of `0`/`1`.
pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::Empty)?;
    let words: Vec<&str> = header.split_whitespace().collect();
    match words.as_slice() {
        ["matrix", n] => {
            let n: usize = n.parse().map_err(|_| syntax(hl, "expected `matrix n`"))?;
            let mut rows = Vec::with_capacity(n);
            for (line, l) in lines {
                let row = l
                    .split_whitespace()
                    .map(|t| match t {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        _ => Err(syntax(line, format!("matrix entries are 0 or 1, found {t:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if row.len() != n {
                    return Err(syntax(line, format!("expected {n} entries, found {}", row.len())));
                }
                rows.push(row);
            }
            if rows.len() != n {
                return Err(syntax(hl, format!("expected {n} rows, found {}", rows.len())));
            }
            Ok(Poset::from_adjacency(&rows)?)
        }
        [n] => {
            let n: usize = n.parse().map_err(|_| syntax(hl, "expected the number of elements"))?;
            let mut pairs = Vec::new();
            for (line, l) in lines {
                match numbers(line, l)?.as_slice() {
                    &[a, b] => pairs.push((a as usize, b as usize)),
                    _ => return Err(syntax(line, "expected a relation `a b`")),
                }
            }
            Ok(Poset::from_covers(n, &pairs)?)
        }
        _ => Err(syntax(hl, "expected `n` or `matrix n`")),
    }
}

/// The adjacency-matrix form of `p`.
pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("matrix {}\n", p.size());
    for row in p.adjacency_matrix() {
        let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Reads `q n k` followed by `k` generator rows of `n` integers in `[0, q)`.
pub fn parse_code(text: &str) -> Result<LinearCode, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::Empty)?;
    let &[q, n, k] = numbers(hl, header)?.as_slice() else {
        return Err(syntax(hl, "expected `q n k`"));
    };
    let mut rows = Vec::new();
    for (line, l) in lines {
        let row = numbers(line, l)?;
        if let Some(&bad) = row.iter().find(|&&x| x >= q) {
            return Err(syntax(line, format!("entry {bad} is not below q = {q}")));
        }
        rows.push(row);
    }
    if rows.len() as u64 != k {
        return Err(syntax(hl, format!("expected {k} generator rows, found {}", rows.len())));
    }
    Ok(LinearCode::new(q as u32, n as usize, rows)?)
}

/// Reads whitespace-separated positive integers.
pub fn parse_list(text: &str) -> Result<Vec<u64>, FormatError> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        for x in numbers(line, l)? {
            if x == 0 {
                return Err(syntax(line, "list entries must be positive"));
            }
            out.push(x);
        }
    }
    if out.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(out)
}

/// A digit string such as `0102`, or comma-separated coordinates.
pub fn parse_vector(q: u32, literal: &str) -> Result<FieldVector, FormatError> {
    let literal = literal.trim();
    let coords: Vec<u64> = if literal.contains(',') {
        literal
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| syntax(1, format!("bad coordinate {t:?}"))))
            .collect::<Result<_, _>>()?
    } else {
        literal
            .chars()
            .map(|c| c.to_digit(10).map(u64::from).ok_or_else(|| syntax(1, format!("bad digit {c:?}"))))
            .collect::<Result<_, _>>()?
    };
    if coords.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some(&bad) = coords.iter().find(|&&x| x >= q as u64) {
        return Err(syntax(1, format!("coordinate {bad} is not below q = {q}")));
    }
    Ok(FieldVector::new(q, coords)?)
}
