//! The `.trn` text format.
//!
//! ```text
//! TRN 1
//! <n>
//! <n lines of n chars over {0,1,-}>
//! ```
//!
//! Character `j` of matrix line `i` is `1` iff `i -> j`; `-` appears exactly on
//! the diagonal. Lines end in `\n`, no trailing whitespace. The writer emits
//! the only canonical encoding, so `read(write(t)) == t` and
//! `write(read(b)) == b` for every canonical `b`.

use thiserror::Error;

use crate::tournament::Tournament;

const MAGIC: &str = "TRN 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrnError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("matrix is not {n}x{n}: {detail}")]
    NonSquareMatrix { n: usize, detail: String },
    #[error("orientation violation at ({i},{j}): adj[i][j] = adj[j][i]")]
    OrientationViolation { i: usize, j: usize },
    #[error("bad diagonal entry at row {0}")]
    BadDiagonal(usize),
    #[error("invalid character {ch:?} at row {row}, column {col}")]
    BadCharacter { row: usize, col: usize, ch: char },
}

pub fn write_trn(t: &Tournament) -> Vec<u8> {
    let n = t.n();
    let mut out = String::with_capacity(16 + n * (n + 1));
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            out.push(if i == j {
                '-'
            } else if t.has_edge(i, j) {
                '1'
            } else {
                '0'
            });
        }
        out.push('\n');
    }
    out.into_bytes()
}

pub fn read_trn(bytes: &[u8]) -> Result<Tournament, TrnError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| TrnError::MalformedHeader("not valid UTF-8".into()))?;
    let mut lines = text.split('\n');
    match lines.next() {
        Some(MAGIC) => {}
        other => {
            return Err(TrnError::MalformedHeader(format!(
                "expected {MAGIC:?}, found {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let n_line = lines
        .next()
        .ok_or_else(|| TrnError::MalformedHeader("missing size line".into()))?;
    if n_line.is_empty() || !n_line.bytes().all(|b| b.is_ascii_digit()) || n_line.starts_with('0')
    {
        return Err(TrnError::MalformedHeader(format!("bad size {n_line:?}")));
    }
    let n: usize = n_line
        .parse()
        .map_err(|_| TrnError::MalformedHeader(format!("bad size {n_line:?}")))?;

    let rows: Vec<&str> = lines.collect();
    // A well-formed file ends in '\n', leaving one empty trailing piece.
    if rows.len() != n + 1 || !rows[n].is_empty() {
        return Err(TrnError::NonSquareMatrix {
            n,
            detail: format!(
                "expected {n} newline-terminated rows, found {} pieces",
                rows.len()
            ),
        });
    }
    let mut bits = vec![vec![false; n]; n];
    for (i, row) in rows[..n].iter().enumerate() {
        if row.len() != n || row.chars().count() != n {
            return Err(TrnError::NonSquareMatrix {
                n,
                detail: format!("row {i} has {} characters", row.chars().count()),
            });
        }
        for (j, ch) in row.chars().enumerate() {
            match (ch, i == j) {
                ('-', true) => {}
                (_, true) if ch == '0' || ch == '1' => return Err(TrnError::BadDiagonal(i)),
                ('-', false) => return Err(TrnError::BadDiagonal(i)),
                ('1', false) => bits[i][j] = true,
                ('0', false) => {}
                _ => return Err(TrnError::BadCharacter { row: i, col: j, ch }),
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if bits[i][j] == bits[j][i] {
                return Err(TrnError::OrientationViolation { i, j });
            }
        }
    }
    Ok(Tournament::from_fn(n, |i, j| bits[i][j]).expect("n > 0 checked by header"))
}
