use num_traits::Zero;

use super::{RatMatrix, Rational};
use crate::error::{contract, Result};

/// Column-space factorization of a fixed matrix, reusable across many
/// right-hand sides.
///
/// Forward elimination (first nonzero pivot in column order) selects pivot
/// columns `P` and the original rows `R` that carried them. The columns in
/// `P` span the column space and `A[R, P]` is invertible, so a right-hand
/// side `b` lies in the column space iff `x_P = A[R, P]^-1 · b[R]` satisfies
/// `A·x = b` on every row. That final check is exact, which makes both
/// answers of [`LinearSystem::solve`] proofs.
#[derive(Clone, Debug)]
pub struct LinearSystem<'a> {
    matrix: &'a RatMatrix,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    inverse: RatMatrix,
}

impl<'a> LinearSystem<'a> {
    pub fn new(matrix: &'a RatMatrix) -> Self {
        let (pivot_rows, pivot_cols) = echelon_pivots(matrix);
        let r = pivot_cols.len();
        let mut square = RatMatrix::zeros(r, r);
        for (a, &i) in pivot_rows.iter().enumerate() {
            for (b, &j) in pivot_cols.iter().enumerate() {
                square.set(a, b, matrix.get(i, j).clone());
            }
        }
        let inverse = invert(square).expect("pivot submatrix is nonsingular");
        LinearSystem {
            matrix,
            pivot_rows,
            pivot_cols,
            inverse,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn matrix(&self) -> &RatMatrix {
        self.matrix
    }

    /// Some exact solution of `A·x = b`, supported on the pivot columns, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.matrix.rows() {
            return Err(contract(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.matrix.rows()
            )));
        }
        let restricted: Vec<Rational> = self.pivot_rows.iter().map(|&i| b[i].clone()).collect();
        let y = self.inverse.mul_vec(&restricted)?;
        let mut x = vec![Rational::zero(); self.matrix.cols()];
        for (&j, v) in self.pivot_cols.iter().zip(y) {
            x[j] = v;
        }
        if self.matrix.mul_vec(&x)? == b {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }

    /// A nonzero vector in the kernel, if the columns are dependent.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let free = (0..self.matrix.cols()).find(|j| !self.pivot_cols.contains(j))?;
        Some(self.kernel_vector_at(free))
    }

    /// A basis of the kernel, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.matrix.cols())
            .filter(|j| !self.pivot_cols.contains(j))
            .map(|free| self.kernel_vector_at(free))
            .collect()
    }

    fn kernel_vector_at(&self, free: usize) -> Vec<Rational> {
        let column: Vec<Rational> = self
            .pivot_rows
            .iter()
            .map(|&i| self.matrix.get(i, free).clone())
            .collect();
        let y = self.inverse.mul_vec(&column).expect("square inverse");
        let mut x = vec![Rational::zero(); self.matrix.cols()];
        x[free] = super::one();
        for (&j, v) in self.pivot_cols.iter().zip(y) {
            x[j] = -v;
        }
        x
    }
}

/// Forward elimination on a working copy. Returns the original indices of
/// the pivot rows and the pivot columns, in pivot order.
fn echelon_pivots(matrix: &RatMatrix) -> (Vec<usize>, Vec<usize>) {
    let (m, n) = (matrix.rows(), matrix.cols());
    let mut work: Vec<Vec<Rational>> = (0..m).map(|i| matrix.row(i).to_vec()).collect();
    let mut origin: Vec<usize> = (0..m).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut top = 0;
    for col in 0..n {
        if top == m {
            break;
        }
        let Some(found) = (top..m).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(top, found);
        origin.swap(top, found);
        let (upper, lower) = work.split_at_mut(top + 1);
        let pivot = &upper[top];
        let support: Vec<usize> = (col + 1..n).filter(|&j| !pivot[j].is_zero()).collect();
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot[col];
            for &j in &support {
                let delta = &factor * &pivot[j];
                row[j] -= delta;
            }
            row[col] = Rational::zero();
        }
        pivot_rows.push(origin[top]);
        pivot_cols.push(col);
        top += 1;
    }
    (pivot_rows, pivot_cols)
}

/// Gauss-Jordan inverse; `None` if singular.
fn invert(mut a: RatMatrix) -> Option<RatMatrix> {
    let n = a.rows();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
        if p != col {
            for j in 0..n {
                let (x, y) = (a.get(p, j).clone(), a.get(col, j).clone());
                a.set(p, j, y);
                a.set(col, j, x);
                let (x, y) = (inv.get(p, j).clone(), inv.get(col, j).clone());
                inv.set(p, j, y);
                inv.set(col, j, x);
            }
        }
        let scale = super::one() / a.get(col, col);
        for j in 0..n {
            if !a.get(col, j).is_zero() {
                a.set(col, j, a.get(col, j) * &scale);
            }
            if !inv.get(col, j).is_zero() {
                inv.set(col, j, inv.get(col, j) * &scale);
            }
        }
        let pivot_a: Vec<(usize, Rational)> = (0..n)
            .filter(|&j| !a.get(col, j).is_zero())
            .map(|j| (j, a.get(col, j).clone()))
            .collect();
        let pivot_inv: Vec<(usize, Rational)> = (0..n)
            .filter(|&j| !inv.get(col, j).is_zero())
            .map(|j| (j, inv.get(col, j).clone()))
            .collect();
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for (j, v) in &pivot_a {
                a.set(r, *j, a.get(r, *j) - &factor * v);
            }
            for (j, v) in &pivot_inv {
                inv.set(r, *j, inv.get(r, *j) - &factor * v);
            }
        }
    }
    Some(inv)
}

/// Some exact solution of `A·x = b`, or `None` if the system is
/// inconsistent.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(contract(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    LinearSystem::new(a).solve(b)
}

pub fn rank(a: &RatMatrix) -> usize {
    echelon_pivots(a).1.len()
}

pub fn kernel_vector(a: &RatMatrix) -> Option<Vec<Rational>> {
    LinearSystem::new(a).kernel_vector()
}
