//! Bipartite perfect matchings on `n × n` support patterns.

/// Some perfect matching of rows to columns using only allowed cells
/// (`allowed[row][col]`), found with augmenting paths. Returns the column
/// matched to each row.
pub fn perfect_matching(allowed: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = allowed.len();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<bool> = vec![true; n];
    match_subset(allowed, &rows, &cols).map(|pairs| {
        let mut out = vec![0; n];
        for (r, c) in pairs {
            out[r] = c;
        }
        out
    })
}

/// The lexicographically smallest perfect matching (compared as the
/// sequence of columns matched to rows `0, 1, ...`).
pub fn lexicographic_perfect_matching(allowed: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = allowed.len();
    let mut free_cols = vec![true; n];
    let mut out = Vec::with_capacity(n);
    for row in 0..n {
        let rest: Vec<usize> = (row + 1..n).collect();
        let mut placed = false;
        for col in 0..n {
            if !free_cols[col] || !allowed[row][col] {
                continue;
            }
            free_cols[col] = false;
            if match_subset(allowed, &rest, &free_cols).is_some() {
                out.push(col);
                placed = true;
                break;
            }
            free_cols[col] = true;
        }
        if !placed {
            return None;
        }
    }
    Some(out)
}

/// Matches every row in `rows` to a distinct column with `cols[c]` set.
fn match_subset(
    allowed: &[Vec<bool>],
    rows: &[usize],
    cols: &[bool],
) -> Option<Vec<(usize, usize)>> {
    let n = cols.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for &r in rows {
        let mut visited = vec![false; n];
        if !augment(allowed, cols, r, &mut visited, &mut owner) {
            return None;
        }
    }
    Some(
        owner
            .iter()
            .enumerate()
            .filter_map(|(c, o)| o.map(|r| (r, c)))
            .collect(),
    )
}

fn augment(
    allowed: &[Vec<bool>],
    cols: &[bool],
    row: usize,
    visited: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for c in 0..cols.len() {
        if !cols[c] || !allowed[row][c] || visited[c] {
            continue;
        }
        visited[c] = true;
        let free = match owner[c] {
            None => true,
            Some(other) => augment(allowed, cols, other, visited, owner),
        };
        if free {
            owner[c] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(rows: &[&str]) -> Vec<Vec<bool>> {
        rows.iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect()
    }

    #[test]
    fn finds_matchings() {
        let a = pattern(&["110", "011", "101"]);
        let m = perfect_matching(&a).unwrap();
        let mut cols = m.clone();
        cols.sort_unstable();
        assert_eq!(cols, vec![0, 1, 2]);
        assert!(m.iter().enumerate().all(|(r, &c)| a[r][c]));
        assert_eq!(lexicographic_perfect_matching(&a), Some(vec![0, 1, 2]));
    }

    #[test]
    fn lexicographic_needs_lookahead() {
        // Row 0 cannot take column 0, or row 1 is left without a column.
        let a = pattern(&["110", "100", "011"]);
        assert_eq!(lexicographic_perfect_matching(&a), Some(vec![1, 0, 2]));
    }

    #[test]
    fn no_matching() {
        let a = pattern(&["100", "100", "011"]);
        assert_eq!(perfect_matching(&a), None);
        assert_eq!(lexicographic_perfect_matching(&a), None);
    }
}
