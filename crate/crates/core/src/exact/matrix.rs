use std::fmt;

use num_traits::Zero;

use super::{dot, parse_rational, Rational};
use crate::error::{contract, parse_error, Result};

/// Dense row-major matrix of exact rationals. Dimensions are fixed at
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, super::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(contract("ragged rows"));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(contract("column length differs from row count"));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, column) in columns.iter().enumerate() {
            for (i, v) in column.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&v| super::int(v)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self · x`.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(contract(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let support: Vec<usize> = (0..x.len()).filter(|&j| !x[j].is_zero()).collect();
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = Rational::zero();
                for &j in &support {
                    if !row[j].is_zero() {
                        acc += &row[j] * &x[j];
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(contract("inner dimensions differ"));
        }
        let t = other.transpose();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.set(i, j, dot(self.row(i), t.row(j)));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Entry-wise `self + factor · other`.
    pub fn add_scaled(&mut self, other: &RatMatrix, factor: &Rational) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * factor;
            }
        }
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        self.row(i).iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> Rational {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    /// Parses the text form: a `rows cols` header line followed by the
    /// entries in row-major order, whitespace separated. Lines starting with
    /// `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            let mut offset = 0;
            for tok in line.split_whitespace() {
                let col = line[offset..].find(tok).map_or(0, |p| p + offset);
                offset = col + tok.len();
                tokens.push((ln + 1, col + 1, tok));
            }
        }
        let mut it = tokens.into_iter();
        let mut header = |name: &str| -> Result<usize> {
            let (l, c, tok) = it
                .next()
                .ok_or_else(|| parse_error(1, 1, format!("missing {name} in header")))?;
            tok.parse()
                .map_err(|_| parse_error(l, c, format!("invalid {name} {tok:?}")))
        };
        let rows = header("row count")?;
        let cols = header("column count")?;
        let mut data = Vec::with_capacity(rows * cols);
        let mut last = (1, 1);
        for (l, c, tok) in it {
            if data.len() == rows * cols {
                return Err(parse_error(l, c, "more entries than rows*cols"));
            }
            data.push(parse_rational(tok, l, c)?);
            last = (l, c);
        }
        if data.len() != rows * cols {
            return Err(parse_error(
                last.0,
                last.1,
                format!("expected {} entries, found {}", rows * cols, data.len()),
            ));
        }
        Ok(RatMatrix { rows, cols, data })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn text_form() {
        let m = RatMatrix::parse("2 2\n1/2 0\n# comment\n-3 7/9\n").unwrap();
        assert_eq!(m.get(1, 1), &frac(7, 9));
        assert_eq!(RatMatrix::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_position() {
        match RatMatrix::parse("2 2\n1 2\n3 x\n") {
            Err(crate::Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(RatMatrix::parse("2 2\n1 2 3\n").is_err());
    }

    #[test]
    fn products() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let x = vec![frac(1, 2), frac(-1, 1)];
        assert_eq!(a.mul_vec(&x).unwrap(), vec![frac(-3, 2), frac(-5, 2)]);
        let id = RatMatrix::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(a.mul_vec(&[frac(1, 1)]).is_err());
    }
}
