use num_traits::{One, Signed, Zero};

use super::{check_s1, is_2bistochastic, pairs, PairMatrix};
use crate::error::{contract, Error, Result};
use crate::exact::{one, RatMatrix, Rational};
use crate::group::Permutation;
use crate::guard_n;

/// `M_π((i,i'),(j,j')) = 1{π(i) = j and π(i') = j'}`.
pub fn perm_pair_matrix(pi: &Permutation) -> Result<PairMatrix> {
    let mut m = PairMatrix::zeros(pi.n())?;
    for (i, ip) in pairs(pi.n()) {
        m.set(i, ip, pi.image(i), pi.image(ip), one());
    }
    Ok(m)
}

/// Every `π` with `supp(M_π) ⊆ supp(M)`, in lexicographic order.
pub fn embedded_permutations(m: &PairMatrix) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    search_embedded(m, &mut |pi| {
        out.push(pi);
        true
    })?;
    Ok(out)
}

/// The lexicographically first `π` with `supp(M_π) ⊆ supp(M)`.
pub fn find_embedded_permutation(m: &PairMatrix) -> Result<Option<Permutation>> {
    let mut found = None;
    search_embedded(m, &mut |pi| {
        found = Some(pi);
        false
    })?;
    Ok(found)
}

/// Backtracking over partial assignments `π(1), π(2), ...` in lexicographic
/// order. A branch is cut as soon as some pair of assigned points lands on
/// a zero of `M`. `visit` returns whether to continue.
fn search_embedded(m: &PairMatrix, visit: &mut dyn FnMut(Permutation) -> bool) -> Result<()> {
    let n = m.n();
    guard_n(n)?;
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn go(
        m: &PairMatrix,
        images: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(Permutation) -> bool,
    ) -> bool {
        let n = m.n();
        let t = images.len() + 1;
        if t > n {
            return visit(Permutation::new(images.clone()).expect("bijection"));
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            let compatible = images.iter().enumerate().all(|(s, &w)| {
                let s = s + 1;
                !m.get(s, t, w, v).is_zero() && !m.get(t, s, v, w).is_zero()
            });
            if !compatible {
                continue;
            }
            used[v] = true;
            images.push(v);
            let more = go(m, images, used, visit);
            images.pop();
            used[v] = false;
            if !more {
                return false;
            }
        }
        true
    }
    go(m, &mut images, &mut used, visit);
    Ok(())
}

/// Largest `w` with `M - w·M_π >= 0`.
fn removable_weight(m: &PairMatrix, pi: &Permutation) -> Rational {
    pairs(m.n())
        .into_iter()
        .map(|(i, ip)| m.get(i, ip, pi.image(i), pi.image(ip)).clone())
        .min()
        .expect("n >= 2")
}

/// Result of peeling permutation matrices off a 2-bistochastic matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelOutcome {
    /// `M = Σ w·M_π` exactly.
    Complete(Vec<(Rational, Permutation)>),
    /// After `step` removals the nonzero residual contains no `supp(M_π)`.
    /// At step 0 this proves `M` is not a convex combination of `M_π`.
    Stuck {
        step: usize,
        terms: Vec<(Rational, Permutation)>,
        residual: PairMatrix,
    },
}

/// Greedily removes the embedded `M_π` with the largest removable weight
/// (lexicographically first on ties) until the residual vanishes or no
/// `M_π` fits inside its support.
pub fn peel_decompose(m: &PairMatrix) -> Result<PeelOutcome> {
    if !is_2bistochastic(m) {
        return Err(contract("matrix is not 2-bistochastic"));
    }
    let mut residual = m.clone();
    let mut terms = Vec::new();
    while !residual.is_zero() {
        let mut best: Option<(Rational, Permutation)> = None;
        for pi in embedded_permutations(&residual)? {
            let w = removable_weight(&residual, &pi);
            if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
                best = Some((w, pi));
            }
        }
        let Some((w, pi)) = best else {
            return Ok(PeelOutcome::Stuck {
                step: terms.len(),
                terms,
                residual,
            });
        };
        residual.add_scaled(&perm_pair_matrix(&pi)?, &-w.clone());
        terms.push((w, pi));
    }
    Ok(PeelOutcome::Complete(terms))
}

/// Replaces the marginal `R` of `M` by the permutation matrix `P`: block
/// `(i, j)` becomes `P(i,j) · M_{i,j}` where `M_{i,j}` is the block of `M`
/// divided by `r_{i,j}`.
pub fn tilde_replacement(m: &PairMatrix, p: &RatMatrix) -> Result<PairMatrix> {
    let n = m.n();
    let s1 = check_s1(m)?;
    if let Some(v) = s1.violation {
        return Err(contract(format!(
            "matrix fails the first-coordinate condition ({v})"
        )));
    }
    if p.rows() != n || p.cols() != n {
        return Err(contract(format!("replacement must be {n} x {n}")));
    }
    let is_perm = p.entries().iter().all(|v| v.is_zero() || v.is_one())
        && (0..n).all(|i| p.row_sum(i).is_one() && p.col_sum(i).is_one());
    if !is_perm {
        return Err(contract("replacement is not a permutation matrix"));
    }
    let mut out = PairMatrix::zeros(n)?;
    for i in 1..=n {
        for j in 1..=n {
            if p.get(i - 1, j - 1).is_zero() {
                continue;
            }
            let r = s1.marginal.get(i - 1, j - 1);
            if !r.is_positive() {
                return Err(Error::IllPosed(format!(
                    "P({i},{j}) = 1 but r({i},{j}) = 0, so the block M_{{{i},{j}}} is undetermined"
                )));
            }
            for ip in (1..=n).filter(|&x| x != i) {
                for jp in (1..=n).filter(|&x| x != j) {
                    let v = m.get(i, ip, j, jp);
                    if !v.is_zero() {
                        out.set(i, ip, j, jp, v / r);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bistochastic::{check_s2, permutation_matrix};
    use crate::exact::frac;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn induced_matrix_shape() {
        let id = perm_pair_matrix(&Permutation::identity(3)).unwrap();
        for (i, ip) in pairs(3) {
            for (j, jp) in pairs(3) {
                assert_eq!(id.get(i, ip, j, jp).is_one(), (i, ip) == (j, jp));
            }
        }
        let pi = perm(&[2, 4, 1, 3]);
        let m = perm_pair_matrix(&pi).unwrap();
        assert_eq!(m.nonzero_count(), 12);
        assert!(crate::bistochastic::is_bistochastic(m.matrix()));
        for (i, ip) in pairs(4) {
            assert!(m.get(i, ip, pi.image(i), pi.image(ip)).is_one());
        }
    }

    #[test]
    fn embedded_search() {
        let pi = perm(&[3, 1, 2, 4]);
        let m = perm_pair_matrix(&pi).unwrap();
        assert_eq!(find_embedded_permutation(&m).unwrap(), Some(pi.clone()));
        let sigma = perm(&[1, 2, 4, 3]);
        let mut mix = m.clone();
        mix.add_scaled(&perm_pair_matrix(&sigma).unwrap(), &one());
        let mix = mix.matrix().scale(&frac(1, 2));
        let mix = PairMatrix::from_matrix(4, mix).unwrap();
        assert_eq!(
            find_embedded_permutation(&mix).unwrap(),
            Some(sigma.clone())
        );
        assert_eq!(embedded_permutations(&mix).unwrap(), vec![sigma, pi]);
    }

    #[test]
    fn peel_two_terms() {
        let pi = perm(&[2, 3, 1]);
        let sigma = perm(&[1, 3, 2]);
        let mut m = perm_pair_matrix(&pi).unwrap();
        m.add_scaled(&perm_pair_matrix(&sigma).unwrap(), &one());
        let m = PairMatrix::from_matrix(3, m.matrix().scale(&frac(1, 2))).unwrap();
        match peel_decompose(&m).unwrap() {
            PeelOutcome::Complete(terms) => {
                assert_eq!(terms, vec![(frac(1, 2), sigma), (frac(1, 2), pi)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let single = perm_pair_matrix(&perm(&[2, 1, 3])).unwrap();
        assert_eq!(
            peel_decompose(&single).unwrap(),
            PeelOutcome::Complete(vec![(one(), perm(&[2, 1, 3]))])
        );
    }

    #[test]
    fn tilde_of_induced_matrix_is_unchanged() {
        let pi = perm(&[4, 1, 3, 2]);
        let m = perm_pair_matrix(&pi).unwrap();
        let t = tilde_replacement(&m, &permutation_matrix(&pi)).unwrap();
        assert_eq!(t, m);
        assert!(check_s2(&t).unwrap().passed());
    }

    #[test]
    fn tilde_rejects_zero_marginal() {
        let m = perm_pair_matrix(&Permutation::identity(3)).unwrap();
        let p = permutation_matrix(&perm(&[2, 1, 3]));
        assert!(matches!(tilde_replacement(&m, &p), Err(Error::IllPosed(_))));
        let not_perm = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(matches!(
            tilde_replacement(&m, &not_perm),
            Err(Error::Contract(_))
        ));
    }
}
