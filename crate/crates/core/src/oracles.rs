//! Seeded property suites that compare the main routines against
//! independent brute-force checks.
//!
//! The checks here deliberately avoid the crate's own solvers: feasibility
//! is decided by enumerating basic solutions in `Ratio<i128>`, and the
//! 2-bistochastic conditions by building the factorization explicitly from
//! block totals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bistochastic::{check_s1, check_s2, is_2bistochastic, perm_pair_matrix, PairMatrix};
use crate::coset_span::{disjoint_coset_cover, CosetCover};
use crate::exact::{feasible_nonnegative, frac, int, RatMatrix, Rational};
use crate::group::{coset_indicator, GroupFunction, Permutation, TupleInjection};

type Small = Ratio<i128>;

/// Outcome of one seeded suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// Cases where the reference answer was "yes" (feasible,
    /// 2-bistochastic, recovered), to show the suite is not one-sided.
    pub positives: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Row-reduces `[A | b]` (rows of `cols + 1` entries). Returns the unique
/// solution when `A` has full column rank and the system is consistent.
fn solve_full_column_rank(mut rows: Vec<Vec<Small>>, cols: usize) -> Option<Vec<Small>> {
    let m = rows.len();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..m).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(r, p);
        let pivot = rows[r][c];
        for v in rows[r].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| rows[c][cols]).collect())
}

fn small_rank(mut rows: Vec<Vec<Small>>) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = row[c] / pivot_row[c];
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    go(n, size, 0, &mut cur, &mut out);
    out
}

/// Decides `∃ x >= 0: A·x = b` by enumerating basic solutions: a feasible
/// system has a nonnegative solution supported on `rank(A)` independent
/// columns.
pub fn brute_force_feasible(a: &[Vec<i64>], b: &[i64]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let to_small = |v: i64| Small::from_integer(v as i128);
    let r = small_rank(
        a.iter()
            .map(|row| row.iter().map(|&v| to_small(v)).collect())
            .collect(),
    );
    if r == 0 {
        return b.iter().all(|&v| v == 0);
    }
    for cols in subsets(n, r) {
        let rows: Vec<Vec<Small>> = (0..m)
            .map(|i| {
                cols.iter()
                    .map(|&j| to_small(a[i][j]))
                    .chain(std::iter::once(to_small(b[i])))
                    .collect()
            })
            .collect();
        if let Some(x) = solve_full_column_rank(rows, r) {
            if x.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// `feasible_nonnegative` against [`brute_force_feasible`] on random
/// systems of at most 8 × 12 with entries in `-3..=3`.
pub fn feasibility_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut positives = 0;
    for case in 0..cases {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=12);
        let a: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        // Half the cases get a right-hand side built from a random
        // nonnegative vector so that feasible systems are well represented.
        let b: Vec<i64> = if rng.gen_bool(0.5) {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            a.iter()
                .map(|row| row.iter().zip(&x).map(|(p, q)| p * q).sum())
                .collect()
        } else {
            (0..m).map(|_| rng.gen_range(-3..=3)).collect()
        };
        let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
        let matrix = RatMatrix::from_i64(&rows);
        let rhs: Vec<Rational> = b.iter().map(|&v| int(v)).collect();
        let expected = brute_force_feasible(&a, &b);
        positives += usize::from(expected);
        match feasible_nonnegative(&matrix, &rhs) {
            Ok(Some(x)) => {
                let exact = matrix.mul_vec(&x).map(|ax| ax == rhs).unwrap_or(false);
                if !exact || x.iter().any(Signed::is_negative) {
                    failures.push(format!(
                        "case {case}: returned x does not satisfy A·x = b, x >= 0"
                    ));
                } else if !expected {
                    failures.push(format!("case {case}: engine feasible, oracle infeasible"));
                }
            }
            Ok(None) if expected => {
                failures.push(format!("case {case}: engine infeasible, oracle feasible"))
            }
            Ok(None) => {}
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    SuiteResult {
        name: "feasibility-vs-basic-solution-enumeration",
        cases,
        positives,
        failures,
    }
}

fn block_is_bistochastic(block: &[Vec<Rational>]) -> bool {
    let k = block.len();
    block
        .iter()
        .all(|row| row.iter().sum::<Rational>().is_one())
        && (0..k).all(|j| block.iter().map(|row| &row[j]).sum::<Rational>().is_one())
        && block.iter().flatten().all(|v| !v.is_negative())
}

/// The first-coordinate factorization checked directly: for every `(i, j)`,
/// `r_{i,j}` is the block total over `n - 1`, `M_{i,j}` is the block over
/// `r_{i,j}` (any bistochastic matrix when `r_{i,j} = 0`), and the product
/// must give back `M` with `R` and all `M_{i,j}` bistochastic.
pub fn factorization_holds(m: &PairMatrix) -> bool {
    let n = m.n();
    let k = n - 1;
    let mut r = vec![vec![Rational::zero(); n]; n];
    for i in 1..=n {
        for j in 1..=n {
            let others_i: Vec<usize> = (1..=n).filter(|&x| x != i).collect();
            let others_j: Vec<usize> = (1..=n).filter(|&x| x != j).collect();
            let block: Vec<Vec<Rational>> = others_i
                .iter()
                .map(|&ip| {
                    others_j
                        .iter()
                        .map(|&jp| m.get(i, ip, j, jp).clone())
                        .collect()
                })
                .collect();
            let total: Rational = block.iter().flatten().sum();
            let rij = total / int(k as i64);
            let factor: Vec<Vec<Rational>> = if rij.is_zero() {
                vec![vec![frac(1, k as i64); k]; k]
            } else {
                block
                    .iter()
                    .map(|row| row.iter().map(|v| v / &rij).collect())
                    .collect()
            };
            if !block_is_bistochastic(&factor) {
                return false;
            }
            for (a, row) in block.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    if &rij * &factor[a][b] != *v {
                        return false;
                    }
                }
            }
            r[i - 1][j - 1] = rij;
        }
    }
    block_is_bistochastic(&r)
}

/// Exchanges the pair coordinates entry by entry.
fn swapped(m: &PairMatrix) -> PairMatrix {
    let n = m.n();
    let mut out = PairMatrix::zeros(n).expect("n >= 2");
    for i in 1..=n {
        for ip in (1..=n).filter(|&x| x != i) {
            for j in 1..=n {
                for jp in (1..=n).filter(|&x| x != j) {
                    out.set(ip, i, jp, j, m.get(i, ip, j, jp).clone());
                }
            }
        }
    }
    out
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("shuffled identity")
}

/// Random convex combination of `terms` matrices produced by `make`, with
/// weights `w / total` for `w` drawn from `1..=4`.
fn random_mix<T>(
    rng: &mut ChaCha8Rng,
    terms: usize,
    mut make: impl FnMut(&mut ChaCha8Rng) -> T,
    mut add: impl FnMut(&T, &Rational),
) {
    let picks: Vec<(i64, T)> = (0..terms)
        .map(|_| (rng.gen_range(1..=4), make(rng)))
        .collect();
    let total: i64 = picks.iter().map(|p| p.0).sum();
    for (w, t) in &picks {
        add(t, &frac(*w, total));
    }
}

/// Random convex combination of induced matrices `M_π`.
pub fn random_induced_mix(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> PairMatrix {
    let mut m = PairMatrix::zeros(n).expect("n >= 2");
    random_mix(
        rng,
        terms,
        |r| perm_pair_matrix(&random_permutation(r, n)).expect("n >= 2"),
        |p, w| m.add_scaled(p, w),
    );
    m
}

fn random_bistochastic(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> RatMatrix {
    let mut a = RatMatrix::zeros(n, n);
    random_mix(
        rng,
        terms,
        |r| random_permutation(r, n),
        |p, w| {
            for i in 1..=n {
                let v = a.get(i - 1, p.image(i) - 1) + w;
                a.set(i - 1, p.image(i) - 1, v);
            }
        },
    );
    a
}

/// A matrix satisfying the first-coordinate factorization by
/// construction, with independent random blocks.
fn random_s1_matrix(rng: &mut ChaCha8Rng, n: usize) -> PairMatrix {
    let r = random_bistochastic(rng, n, 3);
    let mut m = PairMatrix::zeros(n).expect("n >= 2");
    for i in 1..=n {
        for j in 1..=n {
            let block = random_bistochastic(rng, n - 1, 2);
            let others_i: Vec<usize> = (1..=n).filter(|&x| x != i).collect();
            let others_j: Vec<usize> = (1..=n).filter(|&x| x != j).collect();
            for (a, &ip) in others_i.iter().enumerate() {
                for (b, &jp) in others_j.iter().enumerate() {
                    m.set(i, ip, j, jp, r.get(i - 1, j - 1) * block.get(a, b));
                }
            }
        }
    }
    m
}

/// Marginal checks against [`factorization_holds`] on random 12 × 12
/// nonnegative matrices: induced mixes, first-coordinate constructions,
/// perturbations of both, and unstructured matrices.
pub fn marginal_suite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut positives = 0;
    let n = 4;
    for case in 0..cases {
        let mut m = match case % 4 {
            0 => {
                let terms = rng.gen_range(1..=4);
                random_induced_mix(&mut rng, n, terms)
            }
            1 => random_s1_matrix(&mut rng, n),
            2 => {
                let mut base = if rng.gen_bool(0.5) {
                    random_induced_mix(&mut rng, n, 3)
                } else {
                    random_s1_matrix(&mut rng, n)
                };
                let (r, c) = (rng.gen_range(0..12), rng.gen_range(0..12));
                let mut entries = base.matrix().clone();
                entries.set(r, c, entries.get(r, c) + frac(1, 8));
                base = PairMatrix::from_matrix(n, entries).expect("same shape");
                base
            }
            _ => {
                let mut entries = RatMatrix::zeros(12, 12);
                for r in 0..12 {
                    for c in 0..12 {
                        entries.set(r, c, frac(rng.gen_range(0..=2), 4));
                    }
                }
                PairMatrix::from_matrix(n, entries).expect("12 x 12")
            }
        };
        if case % 8 == 7 {
            m = m.swap_coordinates();
        }
        let want_s1 = factorization_holds(&m);
        let want_s2 = factorization_holds(&swapped(&m));
        positives += usize::from(want_s1 && want_s2);
        let got_s1 = check_s1(&m).map(|c| c.passed());
        let got_s2 = check_s2(&m).map(|c| c.passed());
        match (got_s1, got_s2) {
            (Ok(s1), Ok(s2)) => {
                if s1 != want_s1 {
                    failures.push(format!(
                        "case {case}: S1 check {s1}, factorization {want_s1}"
                    ));
                }
                if s2 != want_s2 {
                    failures.push(format!(
                        "case {case}: S2 check {s2}, factorization {want_s2}"
                    ));
                }
            }
            (a, b) => failures.push(format!("case {case}: unexpected errors {a:?} {b:?}")),
        }
    }
    SuiteResult {
        name: "marginal-conditions-vs-explicit-factorization",
        cases,
        positives,
        failures,
    }
}

/// Random convex combinations of `M_π` are 2-bistochastic for n = 3, 4, 5.
pub fn convex_combination_suite(seed: u64, per_n: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut positives = 0;
    for n in 3..=5 {
        for case in 0..per_n {
            let terms = rng.gen_range(1..=6);
            let m = random_induced_mix(&mut rng, n, terms);
            positives += 1;
            if !is_2bistochastic(&m) {
                failures.push(format!(
                    "n = {n}, case {case}: mix of {terms} is not 2-bistochastic"
                ));
            }
        }
    }
    SuiteResult {
        name: "convex-combinations-are-2-bistochastic",
        cases: 3 * per_n,
        positives,
        failures,
    }
}

/// Random disjoint unions of 1-cosets on `S_n`, `n <= 5`, built by adding
/// random cosets that miss the ones already chosen.
pub fn random_disjoint_1_cosets(rng: &mut ChaCha8Rng, n: usize) -> CosetCover {
    let mut cover = CosetCover::default();
    let mut used = std::collections::HashSet::new();
    let attempts = rng.gen_range(1..=2 * n);
    for _ in 0..attempts {
        let t = TupleInjection::new(n, vec![rng.gen_range(1..=n)], vec![rng.gen_range(1..=n)])
            .expect("valid 1-coset");
        let members = t.member_ranks();
        if members.iter().all(|r| !used.contains(r)) {
            used.extend(members);
            cover.push(t, Rational::one());
        }
    }
    cover
}

/// Disjoint unions of 1-cosets are recovered by the exact-cover search.
pub fn v1_control_suite(seed: u64, per_n: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let mut failures = Vec::new();
    let mut positives = 0;
    for n in 2..=5 {
        for case in 0..per_n {
            let planted = random_disjoint_1_cosets(&mut rng, n);
            positives += 1;
            let mut f = GroupFunction::zeros(n).expect("small n");
            for t in &planted.cosets {
                f.add_scaled(&coset_indicator(t).expect("small n"), &Rational::one());
            }
            match disjoint_coset_cover(&f, 1) {
                Ok(Some(cover)) => {
                    let ok = cover.is_disjoint_boolean()
                        && cover.evaluate(n).map(|g| g == f).unwrap_or(false);
                    if !ok {
                        failures.push(format!("n = {n}, case {case}: returned cover is invalid"));
                    }
                }
                Ok(None) => failures.push(format!(
                    "n = {n}, case {case}: no cover found for planted {}",
                    planted.to_string().trim().replace('\n', "; ")
                )),
                Err(e) => failures.push(format!("n = {n}, case {case}: {e}")),
            }
        }
    }
    SuiteResult {
        name: "disjoint-1-coset-unions-recovered",
        cases: 4 * per_n,
        positives,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small_cases() {
        assert!(!brute_force_feasible(&[vec![1]], &[-1]));
        assert!(brute_force_feasible(&[vec![1, 1]], &[1]));
        assert!(brute_force_feasible(&[vec![0, 0]], &[0]));
        assert!(!brute_force_feasible(&[vec![1, -1], vec![1, -1]], &[1, 2]));
    }

    #[test]
    fn factorization_oracle_on_fixture() {
        let m = crate::fixtures::counterexample_matrix();
        assert!(factorization_holds(&m));
        assert!(factorization_holds(&swapped(&m)));
    }

    #[test]
    fn suites_are_deterministic() {
        let a = feasibility_suite(3, 20);
        let b = feasibility_suite(3, 20);
        assert_eq!(a.failures, b.failures);
        assert!(a.passed());
    }
}
