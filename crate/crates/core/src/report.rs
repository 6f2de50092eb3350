//! Verification reports printed by the command-line front end.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A counterexample was confirmed: the check passes because the claimed
    /// statement fails.
    RefutedAsExpected,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::RefutedAsExpected => "refuted-as-expected",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    /// Seconds.
    pub wall_time: f64,
}

impl Report {
    pub fn new(
        claim: impl Into<String>,
        verdict: Verdict,
        witness: Option<String>,
        elapsed: Duration,
    ) -> Self {
        Report {
            claim: claim.into(),
            verdict,
            witness,
            wall_time: elapsed.as_secs_f64(),
        }
    }

    /// Runs `check`, timing it. The closure returns the verdict and an
    /// optional witness.
    pub fn timed(
        claim: impl Into<String>,
        check: impl FnOnce() -> (Verdict, Option<String>),
    ) -> Self {
        let start = Instant::now();
        let (verdict, witness) = check();
        Report::new(claim, verdict, witness, start.elapsed())
    }

    pub fn pass_if(
        claim: impl Into<String>,
        ok: bool,
        witness: Option<String>,
        elapsed: Duration,
    ) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Report::new(claim, verdict, witness, elapsed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim: {}", self.claim)?;
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "wall_time: {:.3}s", self.wall_time)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness:")?;
            for line in w.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

/// Exit status for a set of reports: 0 when every verdict is as expected,
/// 1 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.verdict.is_ok()) {
        0
    } else {
        1
    }
}
