//! Exact cover by backtracking (Knuth's Algorithm X with the minimum
//! remaining values rule). Shared by the disjoint coset cover and the
//! unambiguous monomial cover searches.

/// Finds options that partition `0..universe`, returning their indices in
/// the order chosen, or `None` after exhausting the search. Options must be
/// nonempty lists of items in `0..universe`.
///
/// The item branched on is the uncovered one with the fewest live options
/// (lowest index on ties), and its options are tried in index order, so the
/// answer is deterministic.
pub fn exact_cover(universe: usize, options: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut by_item: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (idx, option) in options.iter().enumerate() {
        assert!(!option.is_empty(), "empty option {idx}");
        for &item in option {
            by_item[item].push(idx);
        }
    }
    let mut state = Search {
        options,
        by_item,
        covered: vec![false; universe],
        blocked: vec![0; options.len()],
        remaining: universe,
        chosen: Vec::new(),
    };
    state.run().then_some(state.chosen)
}

struct Search<'a> {
    options: &'a [Vec<usize>],
    by_item: Vec<Vec<usize>>,
    covered: Vec<bool>,
    /// Number of covered items each option touches; live iff zero.
    blocked: Vec<usize>,
    remaining: usize,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for item in 0..self.covered.len() {
            if self.covered[item] {
                continue;
            }
            let live = self.by_item[item]
                .iter()
                .filter(|&&o| self.blocked[o] == 0)
                .count();
            if best.is_none_or(|(_, count)| live < count) {
                best = Some((item, live));
                if live == 0 {
                    return false;
                }
            }
        }
        let (item, _) = best.expect("an uncovered item exists");
        let candidates: Vec<usize> = self.by_item[item]
            .iter()
            .copied()
            .filter(|&o| self.blocked[o] == 0)
            .collect();
        for option in candidates {
            self.select(option);
            if self.run() {
                return true;
            }
            self.deselect(option);
        }
        false
    }

    fn select(&mut self, option: usize) {
        for &item in &self.options[option] {
            self.covered[item] = true;
            for &o in &self.by_item[item] {
                self.blocked[o] += 1;
            }
        }
        self.remaining -= self.options[option].len();
        self.chosen.push(option);
    }

    fn deselect(&mut self, option: usize) {
        self.chosen.pop();
        self.remaining += self.options[option].len();
        for &item in &self.options[option] {
            self.covered[item] = false;
            for &o in &self.by_item[item] {
                self.blocked[o] -= 1;
            }
        }
    }
}
