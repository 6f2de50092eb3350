use std::fmt;

use num_traits::{One, Signed};
use serde::Serialize;

use super::PairMatrix;
use crate::error::{contract, Result};
use crate::exact::{RatMatrix, Rational};

/// True iff `a` is square, nonnegative, and every row and column sums to 1.
pub fn is_bistochastic(a: &RatMatrix) -> bool {
    a.is_square()
        && a.entries().iter().all(|v| !v.is_negative())
        && (0..a.rows()).all(|i| a.row_sum(i).is_one())
        && (0..a.cols()).all(|j| a.col_sum(j).is_one())
}

/// A concrete sum that breaks one of the marginal conditions. Points are
/// 1-based; `block` is `(i, j)` for the first-coordinate condition and
/// `(i', j')` for the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: &'static str,
    pub what: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} is {}, expected {}",
            self.condition, self.what, self.actual, self.expected
        )
    }
}

/// Outcome of a marginal check: the candidate marginal matrix `R`, whether
/// every block had consistent row and column sums, and the first violated
/// sum if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BistochasticCertificate {
    pub marginal: RatMatrix,
    pub blocks_ok: bool,
    pub violation: Option<Violation>,
}

impl BistochasticCertificate {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// First-coordinate factorization condition.
///
/// For each block `(i, j)` the sums `Σ_{j'} M((i,i'),(j,j'))` must agree for
/// all `i'`, the sums `Σ_{i'} M((i,i'),(j,j'))` must agree for all `j'`,
/// the two common values must coincide (this is `r_{i,j}`), and `R` must be
/// bistochastic. When `r_{i,j} > 0` the block divided by `r_{i,j}` is the
/// required bistochastic `M_{i,j}`; when `r_{i,j} = 0` nonnegativity forces
/// the block to vanish, so these conditions are equivalent to the
/// factorized form.
pub fn check_s1(m: &PairMatrix) -> Result<BistochasticCertificate> {
    marginal_check(m, "S1", ["i", "i'", "j", "j'"])
}

/// Second-coordinate condition: [`check_s1`] with the pair coordinates
/// exchanged.
pub fn check_s2(m: &PairMatrix) -> Result<BistochasticCertificate> {
    marginal_check(&m.swap_coordinates(), "S2", ["i'", "i", "j'", "j"])
}

pub fn is_2bistochastic(m: &PairMatrix) -> bool {
    !m.has_negative()
        && check_s1(m).is_ok_and(|c| c.passed())
        && check_s2(m).is_ok_and(|c| c.passed())
}

fn note(slot: &mut Option<Violation>, v: Violation) {
    if slot.is_none() {
        *slot = Some(v);
    }
}

fn marginal_check(
    m: &PairMatrix,
    condition: &'static str,
    names: [&str; 4],
) -> Result<BistochasticCertificate> {
    if m.has_negative() {
        return Err(contract("pair matrix has a negative entry"));
    }
    let n = m.n();
    let [bi, bip, bj, bjp] = names;
    let mut marginal = RatMatrix::zeros(n, n);
    let mut violation: Option<Violation> = None;
    for i in 1..=n {
        for j in 1..=n {
            let others_i: Vec<usize> = (1..=n).filter(|&x| x != i).collect();
            let others_j: Vec<usize> = (1..=n).filter(|&x| x != j).collect();
            let row_sums: Vec<Rational> = others_i
                .iter()
                .map(|&ip| others_j.iter().map(|&jp| m.get(i, ip, j, jp)).sum())
                .collect();
            let col_sums: Vec<Rational> = others_j
                .iter()
                .map(|&jp| others_i.iter().map(|&ip| m.get(i, ip, j, jp)).sum())
                .collect();
            let r = row_sums[0].clone();
            for (ip, s) in others_i.iter().zip(&row_sums) {
                if *s != r {
                    note(
                        &mut violation,
                        Violation {
                            condition,
                            what: format!("block {bi}={i},{bj}={j}: sum over {bjp} at {bip}={ip}"),
                            expected: r.to_string(),
                            actual: s.to_string(),
                        },
                    );
                }
            }
            for (jp, s) in others_j.iter().zip(&col_sums) {
                if *s != r {
                    note(
                        &mut violation,
                        Violation {
                            condition,
                            what: format!("block {bi}={i},{bj}={j}: sum over {bip} at {bjp}={jp}"),
                            expected: r.to_string(),
                            actual: s.to_string(),
                        },
                    );
                }
            }
            marginal.set(i - 1, j - 1, r);
        }
    }
    let blocks_ok = violation.is_none();
    for i in 0..n {
        let s = marginal.row_sum(i);
        if !s.is_one() {
            note(
                &mut violation,
                Violation {
                    condition,
                    what: format!("marginal row {bi}={}", i + 1),
                    expected: "1".into(),
                    actual: s.to_string(),
                },
            );
        }
    }
    for j in 0..n {
        let s = marginal.col_sum(j);
        if !s.is_one() {
            note(
                &mut violation,
                Violation {
                    condition,
                    what: format!("marginal column {bj}={}", j + 1),
                    expected: "1".into(),
                    actual: s.to_string(),
                },
            );
        }
    }
    Ok(BistochasticCertificate {
        marginal,
        blocks_ok,
        violation,
    })
}
