use cosetforge::bistochastic::{
    birkhoff_decompose, is_2bistochastic, peel_decompose, perm_pair_matrix, term_bound, PairMatrix,
    PeelOutcome,
};
use cosetforge::coset_span::{
    in_vk, nonneg_coset_decomposition, paper_function_27, CosetCover, VkBasis,
};
use cosetforge::exact::{frac, int, rank, solve_linear, RatMatrix, Rational};
use cosetforge::group::{coset_indicator, factorial, GroupFunction, Permutation, TupleInjection};
use cosetforge::slice::{
    canonical_form, equal3, lift_to_sn, monomial_cover, search_violations,
    search_violations_parallel, slice_degree, slice_points, unambiguous_cc, SliceFunction,
    UnambiguousCover,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|p| Permutation::new(p).unwrap())
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_rat(rows: &[Vec<i64>]) -> RatMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RatMatrix::from_i64(&refs)
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Largest order of a nonvanishing minor.
fn minor_rank(a: &[Vec<i64>]) -> usize {
    let (r, c) = (a.len(), a[0].len());
    for size in (1..=r.min(c)).rev() {
        for rows in choose(r, size) {
            for cols in choose(c, size) {
                let sub: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect())
                    .collect();
                if det(&sub) != 0 {
                    return size;
                }
            }
        }
    }
    0
}

fn random_boolean_slice(n: usize, k: usize) -> impl Strategy<Value = SliceFunction> {
    let len = slice_points(n, k).len();
    prop::collection::vec(any::<bool>(), len).prop_map(move |bits| {
        SliceFunction::from_values(n, k, bits.into_iter().map(|b| int(b as i64)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn rank_unrank_roundtrip(pi in (1usize..=7).prop_flat_map(permutation)) {
        let n = pi.n();
        let r = pi.rank();
        prop_assert!(r < factorial(n));
        prop_assert_eq!(Permutation::unrank(n, r).unwrap(), pi.clone());
        prop_assert_eq!(pi.inverse().inverse(), pi);
    }

    #[test]
    fn rank_matches_minors(a in small_matrix(5)) {
        prop_assert_eq!(rank(&to_rat(&a)), minor_rank(&a));
    }

    #[test]
    fn solve_answers_are_proofs(a in small_matrix(5), seed in prop::collection::vec(-3i64..=3, 5)) {
        let m = to_rat(&a);
        let b: Vec<Rational> = (0..m.rows()).map(|i| int(seed[i])).collect();
        match solve_linear(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            None => {
                let mut augmented = a.clone();
                for (row, v) in augmented.iter_mut().zip(&seed) {
                    row.push(*v);
                }
                prop_assert_eq!(minor_rank(&augmented), minor_rank(&a) + 1);
            }
        }
    }

    #[test]
    fn induced_mixes_peel_for_n3(terms in prop::collection::vec((1i64..=4, permutation(3)), 1..=6)) {
        let total: i64 = terms.iter().map(|t| t.0).sum();
        let mut m = PairMatrix::zeros(3).unwrap();
        for (w, p) in &terms {
            m.add_scaled(&perm_pair_matrix(p).unwrap(), &frac(*w, total));
        }
        prop_assert!(is_2bistochastic(&m));
        match peel_decompose(&m).unwrap() {
            PeelOutcome::Complete(parts) => {
                let mut rebuilt = PairMatrix::zeros(3).unwrap();
                for (w, p) in &parts {
                    rebuilt.add_scaled(&perm_pair_matrix(p).unwrap(), w);
                }
                prop_assert_eq!(rebuilt, m);
            }
            stuck => prop_assert!(false, "peel stuck: {:?}", stuck),
        }
    }

    #[test]
    fn degree_is_relabel_and_flip_invariant(
        f in random_boolean_slice(5, 2),
        sigma in permutation(5),
    ) {
        let d = slice_degree(&f).unwrap();
        prop_assert_eq!(slice_degree(&f.relabel(sigma.images()).unwrap()).unwrap(), d);
        prop_assert_eq!(slice_degree(&f.flip_coordinates().unwrap()).unwrap(), d);
        prop_assert_eq!(slice_degree(&f.negation()).unwrap(), d);
    }

    #[test]
    fn ucc_bounds_degree_and_cover_verifies(f in random_boolean_slice(5, 2)) {
        let (s, cover) = unambiguous_cc(&f).unwrap();
        prop_assert!(s >= slice_degree(&f).unwrap());
        prop_assert!(cover.verify(&f));
        prop_assert_eq!(UnambiguousCover::parse(&cover.to_string()).unwrap(), cover);
    }

    #[test]
    fn lifts_of_low_degree_lie_in_vk(coeffs in prop::collection::vec(-2i64..=2, 6)) {
        // Σ c_i x_i + c_0 on J(5,2) has degree <= 1.
        let f = SliceFunction::from_fn(5, 2, |s| {
            int(coeffs[0] + s.iter().map(|&i| coeffs[i]).sum::<i64>())
        }).unwrap();
        let lifted = lift_to_sn(&f).unwrap();
        prop_assert!(in_vk(&lifted, 1).unwrap().is_some());
    }

    #[test]
    fn canonical_form_is_orbit_invariant(f in random_boolean_slice(5, 2), sigma in permutation(5)) {
        let g = f.relabel(sigma.images()).unwrap();
        prop_assert_eq!(canonical_form(&f).unwrap(), canonical_form(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn birkhoff_reconstructs_convex_combinations(
        terms in (1usize..=6).prop_flat_map(|n| prop::collection::vec((1i64..=5, permutation(n)), 1..=8))
    ) {
        let n = terms[0].1.n();
        let total: i64 = terms.iter().map(|t| t.0).sum();
        let mut a = RatMatrix::zeros(n, n);
        for (w, p) in &terms {
            for i in 1..=n {
                let v = a.get(i - 1, p.image(i) - 1) + frac(*w, total);
                a.set(i - 1, p.image(i) - 1, v);
            }
        }
        let d = birkhoff_decompose(&a).unwrap();
        prop_assert_eq!(d.reconstruct(n), a.clone());
        prop_assert!(d.total_weight().is_one());
        prop_assert!(d.terms.len() <= term_bound(n));
        for (w, p) in &d.terms {
            prop_assert!(*w > Rational::zero());
            prop_assert!((1..=n).all(|i| !a.get(i - 1, p.image(i) - 1).is_zero()));
        }
    }
}

#[test]
fn ucc_at_least_degree_exhaustive_j42() {
    let len = slice_points(4, 2).len();
    for bits in 0u32..1 << len {
        let f = SliceFunction::from_values(
            4,
            2,
            (0..len).map(|i| int(((bits >> i) & 1) as i64)).collect(),
        )
        .unwrap();
        let (s, cover) = unambiguous_cc(&f).unwrap();
        assert!(s >= slice_degree(&f).unwrap(), "{f}");
        assert!(cover.verify(&f));
    }
}

#[test]
fn nonneg_decomposition_examples() {
    let f = paper_function_27(6, 2).unwrap();
    assert_eq!(nonneg_coset_decomposition(&f, 2).unwrap(), None);

    let a = TupleInjection::new(6, vec![1, 2], vec![1, 2]).unwrap();
    let b = TupleInjection::new(6, vec![1, 2], vec![3, 4]).unwrap();
    let mut g = coset_indicator(&a).unwrap();
    g.add_scaled(&coset_indicator(&b).unwrap(), &Rational::one());
    let cover = nonneg_coset_decomposition(&g, 2)
        .unwrap()
        .expect("two disjoint cosets");
    assert_eq!(cover.evaluate(6).unwrap(), g);
    assert!(cover.coefficients.iter().all(|c| *c >= Rational::zero()));
}

#[test]
fn three_coset_is_not_in_v2() {
    let t = TupleInjection::new(6, vec![1, 2, 3], vec![1, 2, 3]).unwrap();
    let f = coset_indicator(&t).unwrap();
    let basis = VkBasis::new(6, 2).unwrap();
    assert_eq!(basis.membership().coefficients(&f).unwrap(), None);
    // Independent confirmation: appending f raises the rank.
    let a = basis.matrix();
    let mut columns: Vec<Vec<Rational>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let base = rank(a);
    columns.push(f.values().to_vec());
    assert_eq!(
        rank(&RatMatrix::from_columns(a.rows(), &columns).unwrap()),
        base + 1
    );
}

#[test]
fn search_finds_equal3_and_is_thread_independent() {
    let found = search_violations(6, 3, 2).unwrap();
    let target = canonical_form(&equal3(6, 3).unwrap()).unwrap();
    assert!(found.contains(&target));
    assert_eq!(search_violations_parallel(6, 3, 2, 4).unwrap(), found);
    for f in &found {
        assert!(slice_degree(f).unwrap() <= 2);
        assert_eq!(monomial_cover(f, 2).unwrap(), None);
        assert_eq!(canonical_form(f).unwrap(), *f);
    }
}

#[test]
fn search_small_case_verifies() {
    let found = search_violations(4, 2, 1).unwrap();
    assert_eq!(found, search_violations_parallel(4, 2, 1, 3).unwrap());
    for f in &found {
        assert!(slice_degree(f).unwrap() <= 1);
        assert_eq!(monomial_cover(f, 1).unwrap(), None);
    }
}

#[test]
fn coset_cover_text_roundtrip() {
    let f = paper_function_27(6, 2).unwrap();
    let cover = VkBasis::new(6, 2)
        .unwrap()
        .membership()
        .certificate(&f)
        .unwrap()
        .unwrap();
    let parsed = CosetCover::parse(6, &cover.to_string()).unwrap();
    assert_eq!(parsed, cover);
    assert_eq!(parsed.evaluate(6).unwrap(), f);
}

#[test]
fn group_function_text_roundtrip() {
    let f = GroupFunction::from_fn(4, |p| frac(p.rank() as i64, 3)).unwrap();
    assert_eq!(GroupFunction::parse(&f.to_string()).unwrap(), f);
}
