//! Functions on the slice `J(n,k)`: exact degree, lifting to `S_n`, and
//! unambiguous covers by monomials in the literals `x_i` and `1 - x_i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cover::exact_cover;
use crate::error::{contract, parse_error, Error, Result};
use crate::exact::{parse_rational, LinearSystem, RatMatrix, Rational};
use crate::group::{enumerate_sn, GroupFunction};
use crate::guard_n;

/// Largest slice size accepted by [`slice_degree`].
pub const MAX_SLICE_POINTS: usize = 100_000;
/// Largest slice size for which [`search_violations`] enumerates all
/// `2^C(n,k)` Boolean functions.
pub const MAX_SEARCH_POINTS: usize = 20;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

fn members(n: usize, mask: u32) -> Vec<usize> {
    (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect()
}

/// The k-subsets of `{1..n}` as bitmasks (bit `i-1` for point `i`), in
/// lexicographic order of their sorted elements.
pub fn slice_points(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut current = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<u32>) {
        if current.len() == k {
            out.push(mask_of(current));
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - current.len() {
                break;
            }
            current.push(v);
            go(n, k, v + 1, current, out);
            current.pop();
        }
    }
    go(n, k, 1, &mut current, &mut out);
    out
}

/// Lexicographic index of a sorted k-subset.
pub fn subset_rank(n: usize, set: &[usize]) -> usize {
    let k = set.len();
    let mut rank = 0;
    let mut prev = 0;
    for (t, &a) in set.iter().enumerate() {
        for v in prev + 1..a {
            rank += binomial(n - v, k - t - 1);
        }
        prev = a;
    }
    rank
}

/// Exact function on the k-subsets of `{1..n}`, stored in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceFunction {
    n: usize,
    k: usize,
    values: Vec<Rational>,
}

fn check_slice(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > 32 {
        return Err(contract(format!("slice size n = {n} must lie in 1..=32")));
    }
    if k == 0 || k > n {
        return Err(contract(format!("slice level k = {k} must lie in 1..={n}")));
    }
    Ok(())
}

impl SliceFunction {
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Result<Self> {
        check_slice(n, k)?;
        let values = slice_points(n, k)
            .into_iter()
            .map(|m| f(&members(n, m)))
            .collect();
        Ok(SliceFunction { n, k, values })
    }

    pub fn from_values(n: usize, k: usize, values: Vec<Rational>) -> Result<Self> {
        check_slice(n, k)?;
        if values.len() != binomial(n, k) {
            return Err(contract(format!(
                "{} values for J({n},{k}) with {} points",
                values.len(),
                binomial(n, k)
            )));
        }
        Ok(SliceFunction { n, k, values })
    }

    pub fn constant(n: usize, k: usize, value: Rational) -> Result<Self> {
        Self::from_fn(n, k, |_| value.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at a k-subset given in any order.
    pub fn at(&self, set: &[usize]) -> &Rational {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        &self.values[subset_rank(self.n, &sorted)]
    }

    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `1 - f`.
    pub fn negation(&self) -> SliceFunction {
        SliceFunction {
            n: self.n,
            k: self.k,
            values: self.values.iter().map(|v| Rational::one() - v).collect(),
        }
    }

    /// `g(x) = f(1 - x)` on `J(n, n-k)`.
    pub fn flip_coordinates(&self) -> Result<SliceFunction> {
        let full: u32 = if self.n == 32 {
            u32::MAX
        } else {
            (1 << self.n) - 1
        };
        SliceFunction::from_fn(self.n, self.n - self.k, |set| {
            let rest = members(self.n, full & !mask_of(set));
            self.at(&rest).clone()
        })
    }

    /// `g(x) = f(x∘σ)`: relabels coordinates by `σ` (1-based images).
    pub fn relabel(&self, sigma: &[usize]) -> Result<SliceFunction> {
        SliceFunction::from_fn(self.n, self.k, |set| {
            let image: Vec<usize> = set.iter().map(|&i| sigma[i - 1]).collect();
            self.at(&image).clone()
        })
    }

    /// Parses `slice n=<n> k=<k>` followed by one `a,b,c value` line per
    /// point. Points left out are zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "missing `slice n=<n> k=<k>` header"))?;
        let mut parts = header.split_whitespace();
        let bad_header = || parse_error(hl, 1, "expected `slice n=<n> k=<k>`");
        if parts.next() != Some("slice") {
            return Err(bad_header());
        }
        let mut field = |name: &str| -> Result<usize> {
            parts
                .next()
                .and_then(|t| t.strip_prefix(name))
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad_header)
        };
        let n = field("n=")?;
        let k = field("k=")?;
        let mut f = SliceFunction::constant(n, k, Rational::zero())
            .map_err(|e| parse_error(hl, 1, e.to_string()))?;
        for (ln, line) in lines {
            let mut toks = line.split_whitespace();
            let set_tok = toks.next().unwrap_or_default();
            let value_tok = toks
                .next()
                .ok_or_else(|| parse_error(ln, set_tok.len() + 1, "missing value"))?;
            let set: Vec<usize> = set_tok
                .split(',')
                .map(|t| t.parse().ok().filter(|v| (1..=n).contains(v)))
                .collect::<Option<_>>()
                .ok_or_else(|| parse_error(ln, 1, format!("invalid subset {set_tok:?}")))?;
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != k || sorted != set {
                return Err(parse_error(
                    ln,
                    1,
                    format!("{set_tok:?} is not an ascending {k}-subset"),
                ));
            }
            let col = line.find(value_tok).unwrap_or(0) + 1;
            f.values[subset_rank(n, &sorted)] = parse_rational(value_tok, ln, col)?;
        }
        Ok(f)
    }
}

impl fmt::Display for SliceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slice n={} k={}", self.n, self.k)?;
        for (m, v) in slice_points(self.n, self.k).into_iter().zip(&self.values) {
            let set: Vec<String> = members(self.n, m).iter().map(ToString::to_string).collect();
            writeln!(f, "{} {v}", set.join(","))?;
        }
        Ok(())
    }
}

/// Evaluation matrix of the monomials `Π_{i∈S} x_i`, `|S| <= d`, on the
/// points of `J(n,k)`. Columns are ordered by degree, then lexicographically.
fn monomial_matrix(n: usize, k: usize, d: usize) -> RatMatrix {
    let points = slice_points(n, k);
    let mut sets: Vec<u32> = Vec::new();
    for e in 0..=d.min(k) {
        sets.extend(slice_points_or_empty(n, e));
    }
    let mut a = RatMatrix::zeros(points.len(), sets.len());
    for (r, &p) in points.iter().enumerate() {
        for (c, &s) in sets.iter().enumerate() {
            if p & s == s {
                a.set(r, c, Rational::one());
            }
        }
    }
    a
}

fn slice_points_or_empty(n: usize, e: usize) -> Vec<u32> {
    if e == 0 {
        vec![0]
    } else {
        slice_points(n, e)
    }
}

/// Minimal `d` such that `f` agrees on `J(n,k)` with a multilinear
/// polynomial of degree `d`.
pub fn slice_degree(f: &SliceFunction) -> Result<usize> {
    let points = f.values.len();
    if points > MAX_SLICE_POINTS {
        return Err(Error::SizeGuard {
            what: "slice points",
            value: points,
            limit: MAX_SLICE_POINTS,
        });
    }
    if f.is_zero() {
        return Ok(0);
    }
    for d in 0..=f.k {
        let a = monomial_matrix(f.n, f.k, d);
        if LinearSystem::new(&a).solve(&f.values)?.is_some() {
            return Ok(d);
        }
    }
    unreachable!("the degree-k monomials include every point indicator")
}

/// Product of literals: `x_i` for `i` in `positives`, `1 - x_i` for `i` in
/// `negatives`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    positives: Vec<usize>,
    negatives: Vec<usize>,
}

impl Monomial {
    pub fn new(mut positives: Vec<usize>, mut negatives: Vec<usize>) -> Result<Self> {
        positives.sort_unstable();
        negatives.sort_unstable();
        positives.dedup();
        negatives.dedup();
        if positives.iter().any(|i| negatives.contains(i)) {
            return Err(contract("a variable appears with both signs"));
        }
        if positives
            .iter()
            .chain(&negatives)
            .any(|&i| i == 0 || i > 32)
        {
            return Err(contract("variable index out of range"));
        }
        Ok(Monomial {
            positives,
            negatives,
        })
    }

    pub fn positives(&self) -> &[usize] {
        &self.positives
    }

    pub fn negatives(&self) -> &[usize] {
        &self.negatives
    }

    pub fn degree(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    /// Value at the slice point with support `set`.
    pub fn evaluate(&self, set: &[usize]) -> bool {
        self.satisfied_by(mask_of(set))
    }

    fn satisfied_by(&self, point: u32) -> bool {
        let pos = mask_of(&self.positives);
        let neg = mask_of(&self.negatives);
        point & pos == pos && point & neg == 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<(usize, String)> = self
            .positives
            .iter()
            .map(|i| (*i, format!("x{i}")))
            .chain(self.negatives.iter().map(|i| (*i, format!("(1-x{i})"))))
            .collect();
        factors.sort();
        if factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = factors.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Monomials whose satisfying sets partition `supp(f)` within the slice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnambiguousCover {
    pub monomials: Vec<Monomial>,
}

impl UnambiguousCover {
    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(Monomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Checks that the monomials are pairwise disjoint on the slice, each is
    /// inside `supp(f)`, and together they cover `supp(f)`.
    pub fn verify(&self, f: &SliceFunction) -> bool {
        let points = slice_points(f.n, f.k);
        points.iter().zip(&f.values).all(|(&p, v)| {
            let hits = self.monomials.iter().filter(|m| m.satisfied_by(p)).count();
            if v.is_zero() {
                hits == 0
            } else {
                hits == 1
            }
        })
    }
}

impl UnambiguousCover {
    /// Parses the display form: monomials joined by `+` (or one per line),
    /// factors `x<i>` and `(1-x<i>)` joined by `*`, `1` for the empty
    /// product and `0` for the empty cover.
    pub fn parse(text: &str) -> Result<Self> {
        let mut monomials = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed == "0" {
                continue;
            }
            for term in trimmed.split('+') {
                let term = term.trim();
                let col = line.find(term).unwrap_or(0) + 1;
                let bad = || parse_error(line_no, col, format!("invalid monomial {term:?}"));
                let (mut pos, mut neg) = (Vec::new(), Vec::new());
                if term != "1" {
                    for factor in term.split('*') {
                        let factor = factor.trim();
                        if let Some(i) = factor
                            .strip_prefix("(1-x")
                            .and_then(|t| t.strip_suffix(')'))
                        {
                            neg.push(i.parse().map_err(|_| bad())?);
                        } else if let Some(i) = factor.strip_prefix('x') {
                            pos.push(i.parse().map_err(|_| bad())?);
                        } else {
                            return Err(bad());
                        }
                    }
                }
                monomials.push(
                    Monomial::new(pos, neg)
                        .map_err(|e| parse_error(line_no, col, e.to_string()))?,
                );
            }
        }
        Ok(UnambiguousCover { monomials })
    }
}

impl fmt::Display for UnambiguousCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.monomials.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn require_boolean(f: &SliceFunction) -> Result<()> {
    if f.is_boolean() {
        Ok(())
    } else {
        Err(contract("slice function is not Boolean"))
    }
}

/// All monomials of degree `<= s` that are satisfiable on `J(n,k)`, by
/// degree and then lexicographically by variables and signs.
fn candidate_monomials(n: usize, k: usize, s: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=s.min(n) {
        for vars in slice_points_or_empty(n, d) {
            let vars = members(n, vars);
            for signs in 0u32..(1 << d) {
                let (mut pos, mut neg) = (Vec::new(), Vec::new());
                for (t, &v) in vars.iter().enumerate() {
                    if signs & (1 << (d - 1 - t)) == 0 {
                        pos.push(v);
                    } else {
                        neg.push(v);
                    }
                }
                if pos.len() <= k && neg.len() <= n - k {
                    out.push(Monomial {
                        positives: pos,
                        negatives: neg,
                    });
                }
            }
        }
    }
    out
}

/// Exhaustive search for an unambiguous cover of `supp(f)` by monomials of
/// degree at most `s`.
pub fn monomial_cover(f: &SliceFunction, s: usize) -> Result<Option<UnambiguousCover>> {
    require_boolean(f)?;
    let points = slice_points(f.n, f.k);
    let mut item_of = std::collections::HashMap::new();
    let mut universe = 0;
    for (&p, v) in points.iter().zip(&f.values) {
        if !v.is_zero() {
            item_of.insert(p, universe);
            universe += 1;
        }
    }
    let mut seen_sets = std::collections::HashSet::new();
    let mut candidates = Vec::new();
    let mut options = Vec::new();
    for m in candidate_monomials(f.n, f.k, s) {
        let hits: Vec<u32> = points
            .iter()
            .copied()
            .filter(|&p| m.satisfied_by(p))
            .collect();
        if hits.is_empty() || !hits.iter().all(|p| item_of.contains_key(p)) {
            continue;
        }
        let option: Vec<usize> = hits.iter().map(|p| item_of[p]).collect();
        if seen_sets.insert(option.clone()) {
            candidates.push(m);
            options.push(option);
        }
    }
    Ok(exact_cover(universe, &options).map(|mut chosen| {
        chosen.sort_unstable();
        UnambiguousCover {
            monomials: chosen.into_iter().map(|i| candidates[i].clone()).collect(),
        }
    }))
}

/// Smallest `s` for which [`monomial_cover`] succeeds, with that cover.
/// The zero function has complexity 0 and the empty cover.
pub fn unambiguous_cc(f: &SliceFunction) -> Result<(usize, UnambiguousCover)> {
    require_boolean(f)?;
    for s in 0..=f.n {
        if let Some(cover) = monomial_cover(f, s)? {
            return Ok((s, cover));
        }
    }
    unreachable!("point monomials of degree n cover any support")
}

/// `1{x_1 <= x_2 <= x_3 <= x_4 or x_1 >= x_2 >= x_3 >= x_4}` on `J(n,k)`.
pub fn sortedness4(n: usize, k: usize) -> Result<SliceFunction> {
    if n < 4 || k == 0 || k >= n {
        return Err(contract(format!(
            "sortedness needs n >= 4 and 1 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    SliceFunction::from_fn(n, k, |set| {
        let x: Vec<bool> = (1..=4).map(|i| set.contains(&i)).collect();
        let ascending = x.windows(2).all(|w| w[0] <= w[1]);
        let descending = x.windows(2).all(|w| w[0] >= w[1]);
        bool_value(ascending || descending)
    })
}

/// `1{x_1 = x_2 = x_3}` on `J(n,k)`.
pub fn equal3(n: usize, k: usize) -> Result<SliceFunction> {
    if k < 3 || n < k + 3 {
        return Err(contract(format!(
            "equal3 needs k >= 3 and n - k >= 3, got n={n}, k={k}"
        )));
    }
    SliceFunction::from_fn(n, k, |set| {
        let inside = (1..=3).filter(|i| set.contains(i)).count();
        bool_value(inside == 0 || inside == 3)
    })
}

fn bool_value(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// `F(π) = f(π({1..k}))`.
pub fn lift_to_sn(f: &SliceFunction) -> Result<GroupFunction> {
    guard_n(f.n)?;
    let first: Vec<usize> = (1..=f.k).collect();
    let perms = enumerate_sn(f.n)?;
    let values = perms
        .iter()
        .map(|pi| f.at(&pi.apply(&first)).clone())
        .collect();
    GroupFunction::from_values(f.n, values)
}

/// Value vector of a Boolean function packed with the first point as the
/// most significant bit, so integer order is lexicographic order.
fn pack(values: impl Iterator<Item = bool>, len: usize) -> u32 {
    values.enumerate().fold(
        0,
        |acc, (i, b)| if b { acc | 1 << (len - 1 - i) } else { acc },
    )
}

/// For every coordinate permutation, the induced map on point indices.
fn point_actions(n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    let points = slice_points(n, k);
    let index: std::collections::HashMap<u32, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    Ok(enumerate_sn(n)?
        .iter()
        .map(|sigma| {
            points
                .iter()
                .map(|&p| {
                    let image = mask_of(
                        &members(n, p)
                            .iter()
                            .map(|&i| sigma.image(i))
                            .collect::<Vec<_>>(),
                    );
                    index[&image]
                })
                .collect()
        })
        .collect())
}

fn canonical_packed(packed: u32, len: usize, actions: &[Vec<usize>]) -> u32 {
    actions
        .iter()
        .map(|act| {
            // g(point) = f(σ(point)).
            pack(
                (0..len).map(|i| packed & (1 << (len - 1 - act[i])) != 0),
                len,
            )
        })
        .min()
        .expect("identity acts")
}

/// Lexicographically smallest value vector in the orbit of a Boolean `f`
/// under coordinate permutations.
pub fn canonical_form(f: &SliceFunction) -> Result<SliceFunction> {
    require_boolean(f)?;
    let len = f.values.len();
    if len > 32 {
        return Err(Error::SizeGuard {
            what: "slice points",
            value: len,
            limit: 32,
        });
    }
    let actions = point_actions(f.n, f.k)?;
    let packed = pack(f.values.iter().map(|v| v.is_one()), len);
    Ok(unpack(
        f.n,
        f.k,
        canonical_packed(packed, len, &actions),
        len,
    ))
}

fn unpack(n: usize, k: usize, packed: u32, len: usize) -> SliceFunction {
    SliceFunction {
        n,
        k,
        values: (0..len)
            .map(|i| bool_value(packed & (1 << (len - 1 - i)) != 0))
            .collect(),
    }
}

/// Every Boolean `f` on `J(n,k)` with degree at most `d` that has no
/// unambiguous cover by monomials of degree at most `d`, one canonical
/// representative per coordinate-permutation orbit, in increasing order.
pub fn search_violations(n: usize, k: usize, d: usize) -> Result<Vec<SliceFunction>> {
    search_violations_parallel(n, k, d, 1)
}

/// [`search_violations`] with the value vectors split into `threads`
/// contiguous ranges. The output does not depend on `threads`.
pub fn search_violations_parallel(
    n: usize,
    k: usize,
    d: usize,
    threads: usize,
) -> Result<Vec<SliceFunction>> {
    check_slice(n, k)?;
    guard_n(n)?;
    let len = binomial(n, k);
    if len > MAX_SEARCH_POINTS {
        return Err(Error::SizeGuard {
            what: "slice points for exhaustive search",
            value: len,
            limit: MAX_SEARCH_POINTS,
        });
    }
    // f has degree <= d iff it is orthogonal to the left kernel of the
    // monomial matrix; scale those vectors to integers.
    let transposed = monomial_matrix(n, k, d).transpose();
    let checks: Vec<Vec<i64>> = LinearSystem::new(&transposed)
        .kernel_basis()
        .into_iter()
        .map(|y| {
            let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            y.iter()
                .map(|v| {
                    (v * Rational::from_integer(lcm.clone()))
                        .to_integer()
                        .to_i64()
                        .expect("small")
                })
                .collect()
        })
        .collect();
    let actions = point_actions(n, k)?;
    let scan = |range: std::ops::Range<u64>| -> Result<Vec<SliceFunction>> {
        let mut found = Vec::new();
        for packed in range {
            let packed = packed as u32;
            let in_span = checks.iter().all(|y| {
                (0..len)
                    .filter(|&i| packed & (1 << (len - 1 - i)) != 0)
                    .map(|i| y[i])
                    .sum::<i64>()
                    == 0
            });
            if !in_span || canonical_packed(packed, len, &actions) != packed {
                continue;
            }
            let f = unpack(n, k, packed, len);
            if monomial_cover(&f, d)?.is_none() {
                found.push(f);
            }
        }
        Ok(found)
    };
    let total = 1u64 << len;
    let threads = threads.clamp(1, 64) as u64;
    let chunk = total.div_ceil(threads);
    let ranges: Vec<std::ops::Range<u64>> = (0..threads)
        .map(|t| (t * chunk).min(total)..((t + 1) * chunk).min(total))
        .collect();
    let parts: Vec<Result<Vec<SliceFunction>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let scan = &scan;
                scope.spawn(move || scan(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut found = Vec::new();
    for part in parts {
        found.extend(part?);
    }
    Ok(found)
}
