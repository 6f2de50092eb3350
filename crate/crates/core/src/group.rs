//! Permutations of `{1..n}`, ordered tuples of distinct points, k-cosets and
//! exact-valued functions on `S_n`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{contract, parse_error, Result};
use crate::exact::{parse_rational, Rational};
use crate::guard_n;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Number of ordered k-tuples of distinct points of `{1..n}`.
pub fn falling_factorial(n: usize, k: usize) -> usize {
    (n - k + 1..=n).product()
}

/// Rearranges `items` into the next permutation in lexicographic order.
/// Returns `false` (leaving `items` sorted ascending) after the last one.
pub fn next_permutation(items: &mut [usize]) -> bool {
    let len = items.len();
    if len < 2 {
        return false;
    }
    let mut i = len - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = len - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// A bijection of `{1..n}` in one-line notation: `images[i-1] = π(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(contract(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)` for a 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Setwise image `{π(i) : i ∈ points}`, sorted ascending.
    pub fn apply(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points.iter().map(|&i| self.image(i)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Position in the lexicographic order of one-line notations.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank += smaller * factorial(n - 1 - i);
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: usize) -> Result<Self> {
        if rank >= factorial(n) {
            return Err(contract(format!("rank {rank} out of range for n = {n}")));
        }
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let block = factorial(n - 1 - i);
            images.push(pool.remove(rank / block));
            rank %= block;
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All of `S_n` in lexicographic order; index equals [`Permutation::rank`].
pub fn enumerate_sn(n: usize) -> Result<Vec<Permutation>> {
    guard_n(n)?;
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(factorial(n));
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// All ordered k-tuples of distinct points of `{1..n}`, lexicographic.
pub fn enumerate_tuples(n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > n {
        return Err(contract(format!("tuple length {k} must lie in 1..={n}")));
    }
    let mut out = Vec::with_capacity(falling_factorial(n, k));
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; n + 1];
    fn extend(
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                extend(n, k, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    extend(n, k, &mut current, &mut used, &mut out);
    Ok(out)
}

/// The k-coset `T_{α↦β} = {π : π(α_i) = β_i for all i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleInjection {
    n: usize,
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl TupleInjection {
    pub fn new(n: usize, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(contract("alpha and beta differ in length"));
        }
        if alpha.is_empty() || alpha.len() > n {
            return Err(contract(format!("tuple length must lie in 1..={n}")));
        }
        for tuple in [&alpha, &beta] {
            let mut seen = vec![false; n + 1];
            for &v in tuple {
                if v == 0 || v > n || seen[v] {
                    return Err(contract(format!(
                        "{tuple:?} is not a tuple of distinct points of 1..{n}"
                    )));
                }
                seen[v] = true;
            }
        }
        Ok(TupleInjection { n, alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn contains(&self, pi: &Permutation) -> bool {
        self.alpha
            .iter()
            .zip(&self.beta)
            .all(|(&a, &b)| pi.image(a) == b)
    }

    /// Ranks of the `(n-k)!` members, ascending.
    pub fn member_ranks(&self) -> Vec<usize> {
        let n = self.n;
        let mut fixed = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];
        for (&a, &b) in self.alpha.iter().zip(&self.beta) {
            fixed[a] = b;
            used[b] = true;
        }
        let free_slots: Vec<usize> = (1..=n).filter(|&i| fixed[i] == 0).collect();
        let mut free_values: Vec<usize> = (1..=n).filter(|&v| !used[v]).collect();
        let mut images = fixed[1..].to_vec();
        let mut out = Vec::with_capacity(factorial(free_slots.len()));
        loop {
            for (&slot, &v) in free_slots.iter().zip(&free_values) {
                images[slot - 1] = v;
            }
            out.push(
                Permutation {
                    images: images.clone(),
                }
                .rank(),
            );
            if !next_permutation(&mut free_values) {
                break;
            }
        }
        out.sort_unstable();
        out
    }

    /// Extends `α` by the smallest unused points and `β` in every compatible
    /// way, giving the disjoint `target`-cosets whose union is this coset.
    pub fn refine(&self, target: usize) -> Vec<TupleInjection> {
        assert!(target >= self.k() && target <= self.n);
        let mut alpha = self.alpha.clone();
        for p in 1..=self.n {
            if alpha.len() == target {
                break;
            }
            if !alpha.contains(&p) {
                alpha.push(p);
            }
        }
        let extra = target - self.k();
        let free: Vec<usize> = (1..=self.n).filter(|v| !self.beta.contains(v)).collect();
        let mut out = Vec::new();
        let mut current = self.beta.clone();
        fn extend(
            free: &[usize],
            extra: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if extra == 0 {
                out.push(current.clone());
                return;
            }
            for (idx, &v) in free.iter().enumerate() {
                if !used[idx] {
                    used[idx] = true;
                    current.push(v);
                    extend(free, extra - 1, current, used, out);
                    current.pop();
                    used[idx] = false;
                }
            }
        }
        let mut betas = Vec::new();
        extend(
            &free,
            extra,
            &mut current,
            &mut vec![false; free.len()],
            &mut betas,
        );
        for beta in betas {
            out.push(TupleInjection {
                n: self.n,
                alpha: alpha.clone(),
                beta,
            });
        }
        out
    }
}

impl fmt::Display for TupleInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |t: &[usize]| {
            t.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{} -> {}", join(&self.alpha), join(&self.beta))
    }
}

/// Exact function on `S_n`, stored densely by lexicographic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFunction {
    n: usize,
    values: Vec<Rational>,
}

impl GroupFunction {
    pub fn zeros(n: usize) -> Result<Self> {
        guard_n(n)?;
        Ok(GroupFunction {
            n,
            values: vec![Rational::zero(); factorial(n)],
        })
    }

    pub fn constant(n: usize, value: Rational) -> Result<Self> {
        guard_n(n)?;
        Ok(GroupFunction {
            n,
            values: vec![value; factorial(n)],
        })
    }

    /// Tabulates `f` over `S_n` in rank order.
    pub fn from_fn(n: usize, mut f: impl FnMut(&Permutation) -> Rational) -> Result<Self> {
        let values = enumerate_sn(n)?.iter().map(&mut f).collect();
        Ok(GroupFunction { n, values })
    }

    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Self> {
        guard_n(n)?;
        if values.len() != factorial(n) {
            return Err(contract(format!(
                "{} values for a function on S_{n}",
                values.len()
            )));
        }
        Ok(GroupFunction { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, pi: &Permutation) -> &Rational {
        &self.values[pi.rank()]
    }

    pub fn at_rank(&self, rank: usize) -> &Rational {
        &self.values[rank]
    }

    pub fn set_rank(&mut self, rank: usize, value: Rational) {
        self.values[rank] = value;
    }

    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Ranks where the value is nonzero, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&r| !self.values[r].is_zero())
            .collect()
    }

    pub fn add_scaled(&mut self, other: &GroupFunction, factor: &Rational) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            if !b.is_zero() {
                *a += b * factor;
            }
        }
    }

    /// `1 - f`.
    pub fn complement(&self) -> GroupFunction {
        GroupFunction {
            n: self.n,
            values: self.values.iter().map(|v| Rational::one() - v).collect(),
        }
    }

    /// Parses the `n=<n>` file format: one line per nonzero value,
    /// `<comma-separated images> <rational>`; absent permutations are zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "missing n=<n> header"))?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse_error(hl + 1, 1, format!("expected n=<n>, found {header:?}")))?;
        let mut f = GroupFunction::zeros(n).map_err(|e| parse_error(hl + 1, 1, e.to_string()))?;
        for (ln, line) in lines {
            let mut parts = line.split_whitespace();
            let perm_tok = parts.next().unwrap_or_default();
            let value_tok = parts
                .next()
                .ok_or_else(|| parse_error(ln + 1, perm_tok.len() + 1, "missing value"))?;
            let images: Vec<usize> = perm_tok
                .split(',')
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_error(ln + 1, 1, format!("invalid permutation {perm_tok:?}")))?;
            if images.len() != n {
                return Err(parse_error(
                    ln + 1,
                    1,
                    format!("permutation of length {}", images.len()),
                ));
            }
            let pi = Permutation::new(images).map_err(|e| parse_error(ln + 1, 1, e.to_string()))?;
            let col = line.find(value_tok).unwrap_or(0) + 1;
            f.values[pi.rank()] = parse_rational(value_tok, ln + 1, col)?;
        }
        Ok(f)
    }
}

impl fmt::Display for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (rank, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                let pi = Permutation::unrank(self.n, rank).expect("rank in range");
                writeln!(f, "{pi} {v}")?;
            }
        }
        Ok(())
    }
}

/// Characteristic function of the coset `T_{α↦β}`.
pub fn coset_indicator(t: &TupleInjection) -> Result<GroupFunction> {
    let mut f = GroupFunction::zeros(t.n())?;
    for rank in t.member_ranks() {
        f.values[rank] = Rational::one();
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate_sn(1).unwrap(), vec![perm(&[1])]);
        let s3 = enumerate_sn(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], perm(&[1, 2, 3]));
        assert_eq!(s3[5], perm(&[3, 2, 1]));
        assert_eq!(enumerate_sn(6).unwrap().len(), 720);
        for (r, p) in s3.iter().enumerate() {
            assert_eq!(p.rank(), r);
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_sn(0), Err(crate::Error::Contract(_))));
        assert!(matches!(
            enumerate_sn(9),
            Err(crate::Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn tuples() {
        assert_eq!(enumerate_tuples(4, 2).unwrap().len(), 12);
        assert_eq!(enumerate_tuples(3, 3).unwrap().len(), 6);
        assert_eq!(
            enumerate_tuples(5, 1).unwrap(),
            vec![vec![1], vec![2], vec![3], vec![4], vec![5]]
        );
        assert!(enumerate_tuples(2, 3).is_err());
    }

    #[test]
    fn coset_sizes() {
        let fixes_one = TupleInjection::new(3, vec![1], vec![1]).unwrap();
        let f = coset_indicator(&fixes_one).unwrap();
        assert_eq!(f.support().len(), 2);
        assert!(f.is_boolean());
        let t = TupleInjection::new(6, vec![2, 5], vec![1, 3]).unwrap();
        assert_eq!(coset_indicator(&t).unwrap().support().len(), 24);
        let full = TupleInjection::new(4, vec![1, 2, 3, 4], vec![2, 1, 4, 3]).unwrap();
        let g = coset_indicator(&full).unwrap();
        assert_eq!(g.support(), vec![perm(&[2, 1, 4, 3]).rank()]);
    }

    #[test]
    fn invalid_injections() {
        assert!(TupleInjection::new(4, vec![1, 1], vec![2, 3]).is_err());
        assert!(TupleInjection::new(4, vec![1], vec![5]).is_err());
        assert!(TupleInjection::new(4, vec![1, 2], vec![3]).is_err());
    }

    #[test]
    fn setwise_image() {
        assert_eq!(Permutation::identity(6).apply(&[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(perm(&[2, 3, 1, 4, 5, 6]).apply(&[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(perm(&[4, 5, 6, 1, 2, 3]).apply(&[1, 2, 3]), vec![4, 5, 6]);
    }

    #[test]
    fn refine_partitions_the_coset() {
        let t = TupleInjection::new(5, vec![3], vec![1]).unwrap();
        let parts = t.refine(2);
        assert_eq!(parts.len(), 4);
        let mut union: Vec<usize> = parts.iter().flat_map(|p| p.member_ranks()).collect();
        union.sort_unstable();
        assert_eq!(union, t.member_ranks());
    }

    #[test]
    fn file_format() {
        let mut f = GroupFunction::zeros(3).unwrap();
        f.set_rank(0, frac(1, 2));
        f.set_rank(5, int(-2));
        let text = f.to_string();
        assert_eq!(text, "n=3\n1,2,3 1/2\n3,2,1 -2\n");
        assert_eq!(GroupFunction::parse(&text).unwrap(), f);
        assert!(matches!(
            GroupFunction::parse("n=3\n1,2,2 1\n"),
            Err(crate::Error::Parse { line: 2, .. })
        ));
    }
}
