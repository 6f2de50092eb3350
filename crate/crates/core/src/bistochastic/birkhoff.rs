use num_traits::{Signed, Zero};

use super::{is_bistochastic, lexicographic_perfect_matching};
use crate::error::{contract, Result};
use crate::exact::{kernel_vector, one, RatMatrix, Rational};
use crate::group::Permutation;

/// `P(i, π(i)) = 1`.
pub fn permutation_matrix(pi: &Permutation) -> RatMatrix {
    let n = pi.n();
    let mut p = RatMatrix::zeros(n, n);
    for i in 1..=n {
        p.set(i - 1, pi.image(i) - 1, one());
    }
    p
}

/// Convex combination of permutation matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffDecomposition {
    pub terms: Vec<(Rational, Permutation)>,
}

impl BirkhoffDecomposition {
    pub fn reconstruct(&self, n: usize) -> RatMatrix {
        let mut out = RatMatrix::zeros(n, n);
        for (w, pi) in &self.terms {
            out.add_scaled(&permutation_matrix(pi), w);
        }
        out
    }

    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|(w, _)| w).sum()
    }
}

/// Bound on the number of terms, `(n-1)^2 + 1`.
pub fn term_bound(n: usize) -> usize {
    let m = n.saturating_sub(1);
    m * m + 1
}

/// Writes a bistochastic matrix as a convex combination of permutation
/// matrices.
///
/// Repeatedly takes the lexicographically smallest perfect matching inside
/// the support of the residual, removes it with weight equal to its
/// smallest entry, and stops at zero. If that leaves more than
/// `(n-1)^2 + 1` terms, affine dependencies among the permutation matrices
/// are used to drop terms until the bound holds.
pub fn birkhoff_decompose(a: &RatMatrix) -> Result<BirkhoffDecomposition> {
    if !is_bistochastic(a) {
        return Err(contract("matrix is not bistochastic"));
    }
    let n = a.rows();
    let mut residual = a.clone();
    let mut terms = Vec::new();
    while !residual.is_zero() {
        let allowed: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| !residual.get(i, j).is_zero()).collect())
            .collect();
        let cols = lexicographic_perfect_matching(&allowed)
            .expect("a positive multiple of a bistochastic matrix has a perfect matching");
        let weight = cols
            .iter()
            .enumerate()
            .map(|(i, &j)| residual.get(i, j).clone())
            .min()
            .expect("n >= 1");
        let pi = Permutation::new(cols.iter().map(|c| c + 1).collect())?;
        residual.add_scaled(&permutation_matrix(&pi), &-weight.clone());
        terms.push((weight, pi));
    }
    let mut decomposition = BirkhoffDecomposition { terms };
    shrink(&mut decomposition, n);
    Ok(decomposition)
}

/// Carathéodory reduction down to [`term_bound`] terms.
fn shrink(decomposition: &mut BirkhoffDecomposition, n: usize) {
    while decomposition.terms.len() > term_bound(n) {
        // Columns: vec(P_t) stacked over a row of ones. A kernel vector z
        // gives Σ z_t P_t = 0 and Σ z_t = 0.
        let t = decomposition.terms.len();
        let mut columns = Vec::with_capacity(t);
        for (_, pi) in &decomposition.terms {
            let mut col = vec![Rational::zero(); n * n + 1];
            for i in 1..=n {
                col[(i - 1) * n + pi.image(i) - 1] = one();
            }
            col[n * n] = one();
            columns.push(col);
        }
        let system = RatMatrix::from_columns(n * n + 1, &columns).expect("uniform columns");
        let z = kernel_vector(&system).expect("more points than the affine dimension allows");
        let step = decomposition
            .terms
            .iter()
            .zip(&z)
            .filter(|(_, zt)| zt.is_positive())
            .map(|((w, _), zt)| w / zt)
            .min()
            .expect("a nonzero vector summing to zero has a positive entry");
        let mut kept = Vec::with_capacity(t);
        for ((w, pi), zt) in decomposition.terms.drain(..).zip(&z) {
            let w = w - &step * zt;
            if w.is_positive() {
                kept.push((w, pi));
            }
        }
        decomposition.terms = kept;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn identity_is_one_term() {
        let d = birkhoff_decompose(&RatMatrix::identity(4)).unwrap();
        assert_eq!(d.terms, vec![(one(), Permutation::identity(4))]);
    }

    #[test]
    fn uniform_three_by_three() {
        let third = frac(1, 3);
        let a = RatMatrix::from_rows(vec![vec![third.clone(); 3]; 3]).unwrap();
        let d = birkhoff_decompose(&a).unwrap();
        assert_eq!(d.reconstruct(3), a);
        assert_eq!(d.total_weight(), one());
        assert!(d.terms.len() <= 5);
    }

    #[test]
    fn rejects_non_bistochastic() {
        let a = RatMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert!(birkhoff_decompose(&a).is_err());
    }

    #[test]
    fn shrink_respects_bound() {
        // Uniform 4x4 built from all 24 permutations, each with weight 1/24.
        let perms = crate::group::enumerate_sn(4).unwrap();
        let mut d = BirkhoffDecomposition {
            terms: perms.into_iter().map(|p| (frac(1, 24), p)).collect(),
        };
        let before = d.reconstruct(4);
        shrink(&mut d, 4);
        assert!(d.terms.len() <= term_bound(4));
        assert_eq!(d.reconstruct(4), before);
        assert!(d.terms.iter().all(|(w, _)| w.is_positive()));
    }
}
