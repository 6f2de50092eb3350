//! Pair-indexed `n(n-1) × n(n-1)` matrices: the 2-bistochastic conditions,
//! matrices induced by permutations, Birkhoff decomposition of the
//! marginal, and the support-peeling analysis of convex combinations.

mod birkhoff;
mod marginals;
mod matching;
mod peel;

pub use birkhoff::{birkhoff_decompose, permutation_matrix, term_bound, BirkhoffDecomposition};
pub use marginals::{
    check_s1, check_s2, is_2bistochastic, is_bistochastic, BistochasticCertificate, Violation,
};
pub use matching::{lexicographic_perfect_matching, perfect_matching};
pub use peel::{
    embedded_permutations, find_embedded_permutation, peel_decompose, perm_pair_matrix,
    tilde_replacement, PeelOutcome,
};

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{contract, parse_error, Result};
use crate::exact::{parse_rational, RatMatrix, Rational};

/// Position of the ordered pair `(i, i')`, `i ≠ i'`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, ip: usize) -> usize {
    debug_assert!(i != ip && (1..=n).contains(&i) && (1..=n).contains(&ip));
    (i - 1) * (n - 1) + if ip > i { ip - 2 } else { ip - 1 }
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, index: usize) -> (usize, usize) {
    let i = index / (n - 1) + 1;
    let r = index % (n - 1) + 1;
    (i, if r >= i { r + 1 } else { r })
}

/// All ordered pairs of distinct points, lexicographic.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n * (n - 1)).map(|idx| pair_at(n, idx)).collect()
}

/// Matrix with rows and columns indexed by ordered distinct pairs of
/// `{1..n}` (lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMatrix {
    n: usize,
    entries: RatMatrix,
}

impl PairMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(contract("pair matrices need n >= 2"));
        }
        Ok(PairMatrix {
            n,
            entries: RatMatrix::zeros(n * (n - 1), n * (n - 1)),
        })
    }

    pub fn from_matrix(n: usize, entries: RatMatrix) -> Result<Self> {
        if n < 2 || entries.rows() != n * (n - 1) || entries.cols() != n * (n - 1) {
            return Err(contract(format!(
                "a pair matrix for n = {n} is {0} x {0}",
                n * n.saturating_sub(1)
            )));
        }
        Ok(PairMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.entries
    }

    /// `M((i,i'),(j,j'))`.
    pub fn get(&self, i: usize, ip: usize, j: usize, jp: usize) -> &Rational {
        self.entries
            .get(pair_index(self.n, i, ip), pair_index(self.n, j, jp))
    }

    pub fn set(&mut self, i: usize, ip: usize, j: usize, jp: usize, value: Rational) {
        let (r, c) = (pair_index(self.n, i, ip), pair_index(self.n, j, jp));
        self.entries.set(r, c, value);
    }

    pub fn has_negative(&self) -> bool {
        self.entries.entries().iter().any(Signed::is_negative)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries
            .entries()
            .iter()
            .filter(|v| !v.is_zero())
            .count()
    }

    /// The same matrix with the two coordinates of every pair exchanged:
    /// `M'((i',i),(j',j)) = M((i,i'),(j,j'))`.
    pub fn swap_coordinates(&self) -> PairMatrix {
        let mut out = PairMatrix::zeros(self.n).expect("n >= 2");
        for (i, ip) in pairs(self.n) {
            for (j, jp) in pairs(self.n) {
                let v = self.get(i, ip, j, jp);
                if !v.is_zero() {
                    out.set(ip, i, jp, j, v.clone());
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &PairMatrix, factor: &Rational) {
        assert_eq!(self.n, other.n);
        self.entries.add_scaled(&other.entries, factor);
    }

    /// Parses `pairmatrix n=<n>` followed by `i i' j j' value` lines for the
    /// nonzero entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "missing `pairmatrix n=<n>` header"))?;
        let n = header_n(header, "pairmatrix", hl)?;
        let mut m = PairMatrix::zeros(n).map_err(|e| parse_error(hl, 1, e.to_string()))?;
        for (ln, line) in lines {
            let tokens = tokens_with_columns(line);
            if tokens.len() != 5 {
                return Err(parse_error(ln, 1, "expected `i i' j j' value`"));
            }
            let mut idx = [0usize; 4];
            for (slot, &(col, tok)) in idx.iter_mut().zip(&tokens[..4]) {
                *slot = tok
                    .parse()
                    .ok()
                    .filter(|v| (1..=n).contains(v))
                    .ok_or_else(|| parse_error(ln, col, format!("invalid point {tok:?}")))?;
            }
            if idx[0] == idx[1] || idx[2] == idx[3] {
                return Err(parse_error(ln, 1, "pair with repeated point"));
            }
            let (col, tok) = tokens[4];
            m.set(
                idx[0],
                idx[1],
                idx[2],
                idx[3],
                parse_rational(tok, ln, col)?,
            );
        }
        Ok(m)
    }

    /// Parses the grid layout used for the bundled tables:
    ///
    /// ```text
    /// pairtable n=4
    /// cols 12 13 14 21 ...
    /// 12 0 1/4 0 ...
    /// ```
    ///
    /// Pair labels are either two digits (`12`) or comma separated (`1,2`).
    /// Rows and columns may come in any order, but every pair must appear
    /// exactly once on each axis.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "missing `pairtable n=<n>` header"))?;
        let n = header_n(header, "pairtable", hl)?;
        let mut m = PairMatrix::zeros(n).map_err(|e| parse_error(hl, 1, e.to_string()))?;
        let (cl, cols_line) = lines
            .next()
            .ok_or_else(|| parse_error(hl + 1, 1, "missing `cols` line"))?;
        let col_tokens = tokens_with_columns(cols_line);
        if col_tokens.first().map(|t| t.1) != Some("cols") {
            return Err(parse_error(cl, 1, "expected `cols` line"));
        }
        let columns: Vec<(usize, usize)> = col_tokens[1..]
            .iter()
            .map(|&(c, tok)| parse_pair_label(n, tok, cl, c))
            .collect::<Result<_>>()?;
        check_all_pairs(n, &columns, cl, "column")?;
        let mut row_labels = Vec::new();
        for (ln, line) in lines {
            let tokens = tokens_with_columns(line);
            let (c0, label) = tokens[0];
            let (i, ip) = parse_pair_label(n, label, ln, c0)?;
            if tokens.len() != columns.len() + 1 {
                return Err(parse_error(
                    ln,
                    1,
                    format!("row {label} has {} entries", tokens.len() - 1),
                ));
            }
            for (&(j, jp), &(col, tok)) in columns.iter().zip(&tokens[1..]) {
                m.set(i, ip, j, jp, parse_rational(tok, ln, col)?);
            }
            row_labels.push(((i, ip), ln));
        }
        let rows: Vec<(usize, usize)> = row_labels.iter().map(|r| r.0).collect();
        let last = row_labels.last().map_or(cl, |r| r.1);
        check_all_pairs(n, &rows, last, "row")?;
        Ok(m)
    }

    /// Renders the grid layout with rows and columns in the given order.
    pub fn to_table(&self, order: &[(usize, usize)]) -> String {
        let label = |(a, b): (usize, usize)| {
            if self.n < 10 {
                format!("{a}{b}")
            } else {
                format!("{a},{b}")
            }
        };
        let mut out = format!("pairtable n={}\ncols", self.n);
        for &p in order {
            out.push(' ');
            out.push_str(&label(p));
        }
        out.push('\n');
        for &(i, ip) in order {
            out.push_str(&label((i, ip)));
            for &(j, jp) in order {
                out.push(' ');
                out.push_str(&self.get(i, ip, j, jp).to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PairMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pairmatrix n={}", self.n)?;
        for (i, ip) in pairs(self.n) {
            for (j, jp) in pairs(self.n) {
                let v = self.get(i, ip, j, jp);
                if !v.is_zero() {
                    writeln!(f, "{i} {ip} {j} {jp} {v}")?;
                }
            }
        }
        Ok(())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in line.split_whitespace() {
        let pos = line[offset..].find(tok).map_or(offset, |p| p + offset);
        offset = pos + tok.len();
        out.push((pos + 1, tok));
    }
    out
}

fn header_n(header: &str, keyword: &str, line: usize) -> Result<usize> {
    let mut parts = header.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(parse_error(line, 1, format!("expected `{keyword} n=<n>`")));
    }
    parts
        .next()
        .and_then(|t| t.strip_prefix("n="))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_error(line, keyword.len() + 2, "expected n=<n>"))
}

fn parse_pair_label(n: usize, tok: &str, line: usize, col: usize) -> Result<(usize, usize)> {
    let parsed = if let Some((a, b)) = tok.split_once(',') {
        a.parse().ok().zip(b.parse().ok())
    } else if tok.len() == 2 && n < 10 {
        let d: Vec<usize> = tok
            .chars()
            .filter_map(|c| c.to_digit(10))
            .map(|d| d as usize)
            .collect();
        (d.len() == 2).then(|| (d[0], d[1]))
    } else {
        None
    };
    match parsed {
        Some((a, b)) if a != b && (1..=n).contains(&a) && (1..=n).contains(&b) => Ok((a, b)),
        _ => Err(parse_error(
            line,
            col,
            format!("invalid pair label {tok:?}"),
        )),
    }
}

fn check_all_pairs(n: usize, labels: &[(usize, usize)], line: usize, axis: &str) -> Result<()> {
    let mut seen = vec![false; n * (n - 1)];
    for &(a, b) in labels {
        let idx = pair_index(n, a, b);
        if seen[idx] {
            return Err(parse_error(
                line,
                1,
                format!("{axis} label {a}{b} repeated"),
            ));
        }
        seen[idx] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        let (a, b) = pair_at(n, missing);
        return Err(parse_error(line, 1, format!("{axis} label {a}{b} missing")));
    }
    Ok(())
}
