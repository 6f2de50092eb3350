//! The span `V_k` of k-coset indicators, membership, support analysis and
//! the two coset-decomposition questions for nonnegative and Boolean
//! functions on `S_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cover::exact_cover;
use crate::error::{contract, parse_error, Error, Result};
use crate::exact::{feasible_nonnegative, int, parse_rational, LinearSystem, RatMatrix, Rational};
use crate::group::{
    enumerate_sn, enumerate_tuples, factorial, falling_factorial, GroupFunction, Permutation,
    TupleInjection,
};
use crate::guard_n;

/// Largest dense basis matrix (rows × columns) the membership solve accepts.
/// `V_2` on `S_6` is 720 × 900.
pub const MAX_BASIS_ENTRIES: usize = 3_000_000;

/// All k-cosets of `S_n` in `(α, β)` lexicographic order.
pub fn all_cosets(n: usize, k: usize) -> Result<Vec<TupleInjection>> {
    let tuples = enumerate_tuples(n, k)?;
    let mut out = Vec::with_capacity(tuples.len() * tuples.len());
    for alpha in &tuples {
        for beta in &tuples {
            out.push(TupleInjection::new(n, alpha.clone(), beta.clone())?);
        }
    }
    Ok(out)
}

/// Dense matrix whose columns are the k-coset indicators on `S_n`.
#[derive(Clone, Debug)]
pub struct VkBasis {
    n: usize,
    k: usize,
    cosets: Vec<TupleInjection>,
    matrix: RatMatrix,
}

impl VkBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        guard_n(n)?;
        if k == 0 || k > n {
            return Err(contract(format!("coset order {k} must lie in 1..={n}")));
        }
        let columns = falling_factorial(n, k).pow(2);
        let entries = factorial(n) * columns;
        if entries > MAX_BASIS_ENTRIES {
            return Err(Error::SizeGuard {
                what: "V_k basis entries",
                value: entries,
                limit: MAX_BASIS_ENTRIES,
            });
        }
        let cosets = all_cosets(n, k)?;
        let mut matrix = RatMatrix::zeros(factorial(n), cosets.len());
        for (c, t) in cosets.iter().enumerate() {
            for r in t.member_ranks() {
                matrix.set(r, c, Rational::one());
            }
        }
        Ok(VkBasis {
            n,
            k,
            cosets,
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cosets(&self) -> &[TupleInjection] {
        &self.cosets
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    /// Factorizes the basis once for repeated membership queries.
    pub fn membership(&self) -> VkMembership<'_> {
        VkMembership {
            basis: self,
            system: LinearSystem::new(&self.matrix),
        }
    }
}

/// A factorized [`VkBasis`].
pub struct VkMembership<'a> {
    basis: &'a VkBasis,
    system: LinearSystem<'a>,
}

impl VkMembership<'_> {
    /// `dim V_k`.
    pub fn dimension(&self) -> usize {
        self.system.rank()
    }

    /// Coefficients `c` with `Σ c_T 1_T = f`, or `None` if `f ∉ V_k`.
    pub fn coefficients(&self, f: &GroupFunction) -> Result<Option<Vec<Rational>>> {
        if f.n() != self.basis.n {
            return Err(contract(format!(
                "function on S_{} tested against V_{} on S_{}",
                f.n(),
                self.basis.k,
                self.basis.n
            )));
        }
        self.system.solve(f.values())
    }

    /// Same as [`coefficients`](Self::coefficients), packaged as a cover over
    /// the nonzero coefficients.
    pub fn certificate(&self, f: &GroupFunction) -> Result<Option<CosetCover>> {
        Ok(self.coefficients(f)?.map(|c| {
            let mut cover = CosetCover::default();
            for (t, v) in self.basis.cosets.iter().zip(c) {
                if !v.is_zero() {
                    cover.push(t.clone(), v);
                }
            }
            cover
        }))
    }
}

/// Membership of `f` in `V_k`: some coefficient vector over
/// [`VkBasis::cosets`], or `None`.
pub fn in_vk(f: &GroupFunction, k: usize) -> Result<Option<Vec<Rational>>> {
    VkBasis::new(f.n(), k)?.membership().coefficients(f)
}

/// A weighted list of cosets standing for `Σ coefficient · 1_T`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CosetCover {
    pub cosets: Vec<TupleInjection>,
    pub coefficients: Vec<Rational>,
}

impl CosetCover {
    pub fn push(&mut self, coset: TupleInjection, coefficient: Rational) {
        self.cosets.push(coset);
        self.coefficients.push(coefficient);
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// The function `Σ coefficient · 1_T` on `S_n`.
    pub fn evaluate(&self, n: usize) -> Result<GroupFunction> {
        let mut f = GroupFunction::zeros(n)?;
        for (t, c) in self.cosets.iter().zip(&self.coefficients) {
            if t.n() != n {
                return Err(contract(format!("coset {t} is not on S_{n}")));
            }
            for r in t.member_ranks() {
                let v = f.at_rank(r) + c;
                f.set_rank(r, v);
            }
        }
        Ok(f)
    }

    /// True iff all coefficients are 1 and the cosets are pairwise disjoint.
    pub fn is_disjoint_boolean(&self) -> bool {
        if !self.coefficients.iter().all(One::is_one) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        self.cosets
            .iter()
            .flat_map(|t| t.member_ranks())
            .all(|r| seen.insert(r))
    }

    /// Parses lines `alpha -> beta : coeff` for cosets on `S_n`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut cover = CosetCover::default();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (map, coeff) = trimmed
                .split_once(':')
                .ok_or_else(|| parse_error(line_no, 1, "expected `alpha -> beta : coeff`"))?;
            let (alpha, beta) = map
                .split_once("->")
                .ok_or_else(|| parse_error(line_no, 1, "missing `->`"))?;
            let tuple = |s: &str| -> Result<Vec<usize>> {
                s.trim()
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| parse_error(line_no, 1, format!("invalid point {t:?}")))
                    })
                    .collect()
            };
            let t = TupleInjection::new(n, tuple(alpha)?, tuple(beta)?)
                .map_err(|e| parse_error(line_no, 1, e.to_string()))?;
            let col = line.find(':').unwrap_or(0) + 2;
            cover.push(t, parse_rational(coeff.trim(), line_no, col)?);
        }
        Ok(cover)
    }
}

impl fmt::Display for CosetCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in self.cosets.iter().zip(&self.coefficients) {
            writeln!(f, "{t} : {c}")?;
        }
        Ok(())
    }
}

fn require_boolean(f: &GroupFunction) -> Result<()> {
    if f.is_boolean() {
        Ok(())
    } else {
        Err(contract("function is not Boolean"))
    }
}

fn coset_inside(t: &TupleInjection, f: &GroupFunction) -> bool {
    t.member_ranks()
        .into_iter()
        .all(|r| !f.at_rank(r).is_zero())
}

/// The lexicographically first k-coset contained in `supp(f)`, searching all
/// of `A_k × A_k`.
pub fn contains_k_coset(f: &GroupFunction, k: usize) -> Result<Option<TupleInjection>> {
    require_boolean(f)?;
    Ok(all_cosets(f.n(), k)?
        .into_iter()
        .find(|t| coset_inside(t, f)))
}

/// Nonnegative coefficients `b_T` with `Σ b_T 1_T = f`, or `None` when none
/// exist.
///
/// A coset that meets a zero of `f` must get coefficient 0 in any
/// nonnegative solution, and rows outside `supp(f)` are then identically
/// satisfied; the exact feasibility engine runs on what remains.
pub fn nonneg_coset_decomposition(f: &GroupFunction, k: usize) -> Result<Option<CosetCover>> {
    if f.values().iter().any(Signed::is_negative) {
        return Err(contract("function takes a negative value"));
    }
    if in_vk(f, k)?.is_none() {
        return Err(Error::Domain(format!("function is not in V_{k}")));
    }
    let support = f.support();
    let candidates: Vec<TupleInjection> = all_cosets(f.n(), k)?
        .into_iter()
        .filter(|t| coset_inside(t, f))
        .collect();
    let mut row_of = vec![usize::MAX; factorial(f.n())];
    for (i, &r) in support.iter().enumerate() {
        row_of[r] = i;
    }
    let mut a = RatMatrix::zeros(support.len(), candidates.len());
    for (c, t) in candidates.iter().enumerate() {
        for r in t.member_ranks() {
            a.set(row_of[r], c, Rational::one());
        }
    }
    let b: Vec<Rational> = support.iter().map(|&r| f.at_rank(r).clone()).collect();
    Ok(feasible_nonnegative(&a, &b)?.map(|x| {
        let mut cover = CosetCover::default();
        for (t, v) in candidates.into_iter().zip(x) {
            if !v.is_zero() {
                cover.push(t, v);
            }
        }
        cover
    }))
}

/// Pairwise disjoint k-cosets whose union is `supp(f)`, or `None` after an
/// exhaustive search.
pub fn disjoint_coset_cover(f: &GroupFunction, k: usize) -> Result<Option<CosetCover>> {
    require_boolean(f)?;
    let support = f.support();
    if support.is_empty() {
        return Ok(Some(CosetCover::default()));
    }
    if !support.len().is_multiple_of(factorial(f.n() - k)) {
        return Ok(None);
    }
    let mut item_of = vec![usize::MAX; factorial(f.n())];
    for (i, &r) in support.iter().enumerate() {
        item_of[r] = i;
    }
    let candidates: Vec<TupleInjection> = all_cosets(f.n(), k)?
        .into_iter()
        .filter(|t| coset_inside(t, f))
        .collect();
    let options: Vec<Vec<usize>> = candidates
        .iter()
        .map(|t| t.member_ranks().into_iter().map(|r| item_of[r]).collect())
        .collect();
    Ok(exact_cover(support.len(), &options).map(|chosen| {
        let mut picked: Vec<TupleInjection> =
            chosen.into_iter().map(|i| candidates[i].clone()).collect();
        picked.sort();
        let mut cover = CosetCover::default();
        for t in picked {
            cover.push(t, Rational::one());
        }
        cover
    }))
}

fn check_even_order(n: usize, k: usize) -> Result<()> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(contract(format!("k = {k} must be a positive even number")));
    }
    if n < 2 * (k + 1) {
        return Err(contract(format!(
            "n = {n} must be at least 2(k+1) = {}",
            2 * (k + 1)
        )));
    }
    guard_n(n)
}

/// `1{π([k+1]) = [k+1] or π([k+1]) ∩ [k+1] = ∅}` for even `k`.
pub fn paper_function_27(n: usize, k: usize) -> Result<GroupFunction> {
    check_even_order(n, k)?;
    let block: Vec<usize> = (1..=k + 1).collect();
    GroupFunction::from_fn(n, |pi| {
        let image = pi.apply(&block);
        let inside = image.iter().filter(|&&v| v <= k + 1).count();
        if inside == k + 1 || inside == 0 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `Σ_{S ⊊ [k+1]} (-1)^|S| · 1{π(S) ⊆ [k+1]}` at a single permutation.
fn alternating_sum(pi: &Permutation, k: usize) -> i64 {
    let m = k + 1;
    let mut total = 0i64;
    for mask in 0u32..(1 << m) - 1 {
        let inside = (0..m)
            .filter(|&i| mask & (1 << i) != 0)
            .all(|i| pi.image(i + 1) <= m);
        if inside {
            total += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    total
}

/// Checks the alternating-sum expression against [`paper_function_27`] at
/// every permutation of `S_n`.
pub fn alternating_identity_check(n: usize, k: usize) -> Result<bool> {
    let f = paper_function_27(n, k)?;
    Ok(enumerate_sn(n)?
        .iter()
        .zip(f.values())
        .all(|(pi, v)| int(alternating_sum(pi, k)) == *v))
}

/// Integer combination of k-cosets equal to [`paper_function_27`], read off
/// the alternating-sum expression: each `1{π(S) ⊆ [k+1]}` is the sum of the
/// `|S|`-cosets `T_{S↦β}` over injections `β` into `[k+1]` (the constant for
/// `S = ∅`), and each of those is refined into k-cosets.
pub fn expansion_certificate(n: usize, k: usize) -> Result<CosetCover> {
    check_even_order(n, k)?;
    let m = k + 1;
    let mut terms: BTreeMap<TupleInjection, i64> = BTreeMap::new();
    for mask in 0u32..(1 << m) - 1 {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let s: Vec<usize> = (1..=m).filter(|&i| mask & (1 << (i - 1)) != 0).collect();
        let coarse: Vec<TupleInjection> = if s.is_empty() {
            (1..=n)
                .map(|j| TupleInjection::new(n, vec![1], vec![j]))
                .collect::<Result<_>>()?
        } else {
            enumerate_tuples(m, s.len())?
                .into_iter()
                .map(|beta| TupleInjection::new(n, s.clone(), beta))
                .collect::<Result<_>>()?
        };
        for t in coarse {
            for fine in t.refine(k) {
                *terms.entry(fine).or_insert(0) += sign;
            }
        }
    }
    let mut cover = CosetCover::default();
    for (t, c) in terms {
        if c != 0 {
            cover.push(t, int(c));
        }
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank;
    use crate::group::coset_indicator;

    fn coset(n: usize, alpha: &[usize], beta: &[usize]) -> TupleInjection {
        TupleInjection::new(n, alpha.to_vec(), beta.to_vec()).unwrap()
    }

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn basis_shape() {
        let b = VkBasis::new(4, 1).unwrap();
        assert_eq!(b.matrix().rows(), 24);
        assert_eq!(b.matrix().cols(), 16);
        for (c, t) in b.cosets().iter().enumerate() {
            assert_eq!(b.matrix().column(c), coset_indicator(t).unwrap().values());
        }
        // dim V_1 = (n-1)^2 + 1.
        assert_eq!(b.membership().dimension(), 10);
        assert!(matches!(VkBasis::new(6, 3), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn constant_is_in_v1() {
        let f = GroupFunction::constant(4, Rational::one()).unwrap();
        let basis = VkBasis::new(4, 1).unwrap();
        let cover = basis.membership().certificate(&f).unwrap().unwrap();
        assert_eq!(cover.evaluate(4).unwrap(), f);
    }

    #[test]
    fn three_coset_is_not_in_v2_small() {
        // n = 5 keeps the unit test fast; the n = 6 case is in the
        // integration suite.
        let t = coset(5, &[1, 2, 3], &[1, 2, 3]);
        let f = coset_indicator(&t).unwrap();
        let basis = VkBasis::new(5, 2).unwrap();
        assert_eq!(basis.membership().coefficients(&f).unwrap(), None);
        let mut columns: Vec<Vec<Rational>> = (0..basis.matrix().cols())
            .map(|c| basis.matrix().column(c))
            .collect();
        let before = rank(basis.matrix());
        columns.push(f.values().to_vec());
        let augmented = RatMatrix::from_columns(120, &columns).unwrap();
        assert_eq!(rank(&augmented), before + 1);
    }

    #[test]
    fn coset_containment() {
        let t = coset(5, &[1, 2], &[3, 4]);
        let f = coset_indicator(&t).unwrap();
        assert_eq!(contains_k_coset(&f, 2).unwrap(), Some(t));
        let all = GroupFunction::constant(4, Rational::one()).unwrap();
        assert_eq!(
            contains_k_coset(&all, 2).unwrap(),
            Some(coset(4, &[1, 2], &[1, 2]))
        );
        let mut half = f.clone();
        half.set_rank(f.support()[0], crate::exact::frac(1, 2));
        assert!(contains_k_coset(&half, 2).is_err());
    }

    #[test]
    fn nonneg_single_coset() {
        let t = coset(4, &[1], &[2]);
        let mut f = GroupFunction::zeros(4).unwrap();
        f.add_scaled(&coset_indicator(&t).unwrap(), &int(3));
        let cover = nonneg_coset_decomposition(&f, 1).unwrap().unwrap();
        assert_eq!(cover.cosets, vec![t]);
        assert_eq!(cover.coefficients, vec![int(3)]);
    }

    #[test]
    fn nonneg_rejects_bad_inputs() {
        let mut f = GroupFunction::zeros(4).unwrap();
        f.set_rank(0, int(-1));
        assert!(matches!(
            nonneg_coset_decomposition(&f, 1),
            Err(Error::Contract(_))
        ));
        let g = coset_indicator(&coset(4, &[1, 2], &[1, 2])).unwrap();
        assert!(matches!(
            nonneg_coset_decomposition(&g, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn disjoint_cover_basics() {
        let zero = GroupFunction::zeros(4).unwrap();
        assert_eq!(
            disjoint_coset_cover(&zero, 1).unwrap(),
            Some(CosetCover::default())
        );
        let mut f = coset_indicator(&coset(4, &[1], &[1])).unwrap();
        f.add_scaled(
            &coset_indicator(&coset(4, &[1], &[2])).unwrap(),
            &Rational::one(),
        );
        let cover = disjoint_coset_cover(&f, 1).unwrap().unwrap();
        assert_eq!(cover.evaluate(4).unwrap(), f);
        assert!(cover.is_disjoint_boolean());
        assert_eq!(cover.len(), 2);
    }

    #[test]
    fn block_function_values() {
        let f = paper_function_27(6, 2).unwrap();
        assert!(f.is_boolean());
        assert!(f.at(&Permutation::identity(6)).is_one());
        assert!(f.at(&perm(&[4, 5, 6, 1, 2, 3])).is_one());
        assert!(f.at(&perm(&[1, 2, 4, 3, 5, 6])).is_zero());
        // 3!·3! + 3·2·1·3! = 72.
        assert_eq!(f.support().len(), 72);
        assert!(paper_function_27(5, 2).is_err());
        assert!(paper_function_27(8, 3).is_err());
    }

    #[test]
    fn expansion_reproduces_function() {
        let cover = expansion_certificate(6, 2).unwrap();
        assert!(cover.cosets.iter().all(|t| t.k() == 2));
        assert_eq!(cover.evaluate(6).unwrap(), paper_function_27(6, 2).unwrap());
    }

    #[test]
    fn cover_text_form() {
        let mut cover = CosetCover::default();
        cover.push(coset(5, &[1, 2], &[3, 4]), int(-2));
        cover.push(coset(5, &[5], &[1]), crate::exact::frac(1, 3));
        let text = cover.to_string();
        assert_eq!(text, "1,2 -> 3,4 : -2\n5 -> 1 : 1/3\n");
        assert_eq!(CosetCover::parse(5, &text).unwrap(), cover);
        assert!(CosetCover::parse(5, "1,2 -> 3,3 : 1\n").is_err());
    }
}
