//! Command-line front end: replays the counterexample verifications as
//! named checks and exposes the library operations on files.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};

use crate::bistochastic::{
    birkhoff_decompose, check_s1, check_s2, find_embedded_permutation, is_bistochastic, pair_at,
    peel_decompose, term_bound, tilde_replacement, BirkhoffDecomposition, PairMatrix, PeelOutcome,
};
use crate::coset_span::{
    alternating_identity_check, contains_k_coset, disjoint_coset_cover, expansion_certificate,
    nonneg_coset_decomposition, paper_function_27, CosetCover, VkBasis,
};
use crate::error::{Error, Result};
use crate::exact::{frac, RatMatrix};
use crate::fixtures;
use crate::group::GroupFunction;
use crate::oracles;
use crate::report::{exit_code, Report, Verdict};
use crate::slice::{
    lift_to_sn, monomial_cover, search_violations_parallel, slice_degree, unambiguous_cc,
    SliceFunction, UnambiguousCover,
};

/// Largest `n` for which `in_vk` is answered by solving the full linear
/// system; above it the explicit expansion is used.
const SOLVE_LIMIT_N: usize = 6;

/// Largest `n` for which a whole group function is echoed as a witness.
const WITNESS_LIMIT_N: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "cosetforge",
    version,
    about = "Exact checks for coset spans, 2-bistochastic matrices and slice functions"
)]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for the sampled property suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for exhaustive searches (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Boolean function in V_k whose support contains no k-coset.
    #[command(name = "replicate-thm27")]
    ReplicateThm27 {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The 2-bistochastic 12 x 12 matrix that is not a convex combination
    /// of induced permutation matrices.
    #[command(name = "replicate-thm29")]
    ReplicateThm29 {
        /// Use this pair-matrix file instead of the bundled fixture.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Runs checks on a pair matrix, group function or slice function file.
    Verify(VerifyArgs),
    /// Birkhoff decomposition of a bistochastic matrix file.
    Decompose { file: PathBuf },
    /// Boolean slice functions of degree <= d without an unambiguous
    /// degree-d monomial cover.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
    },
    /// Lifts a slice function to S_n via F(π) = f(π({1..k})).
    Lift {
        file: PathBuf,
        /// Output file (default: standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded property suites against independent brute-force checks.
    Oracles {
        /// Random systems in the feasibility suite.
        #[arg(long, default_value_t = 1000)]
        systems: usize,
        /// Random 12 x 12 matrices in the marginal suite.
        #[arg(long, default_value_t = 200)]
        matrices: usize,
        /// Samples per n in the convex-combination and V_1 suites.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pairmatrix,
    Groupfunction,
    Slicefunction,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    pub file: PathBuf,

    #[arg(long, value_enum)]
    pub kind: Kind,

    /// Pair matrix: both marginal conditions (the default check).
    #[arg(long = "2bistochastic")]
    pub two_bistochastic: bool,

    /// Pair matrix: search for an embedded induced permutation matrix.
    #[arg(long)]
    pub embedded: bool,

    /// Group function: membership in V_K with an exact certificate.
    #[arg(long, value_name = "K")]
    pub in_vk: Option<usize>,

    /// Group function: some K-coset lies inside the support.
    #[arg(long, value_name = "K")]
    pub coset: Option<usize>,

    /// Group function: the support is a disjoint union of K-cosets.
    #[arg(long, value_name = "K")]
    pub disjoint_cover: Option<usize>,

    /// Group function: a nonnegative combination of K-cosets.
    #[arg(long, value_name = "K")]
    pub nonneg_cover: Option<usize>,

    /// Certificate to check against the function: a coset cover for group
    /// functions, an unambiguous monomial cover for slice functions.
    #[arg(long, value_name = "FILE")]
    pub certificate: Option<PathBuf>,

    /// Slice function: report the degree (with --d, require degree <= d).
    #[arg(long)]
    pub degree: bool,

    #[arg(long)]
    pub d: Option<usize>,

    /// Slice function: unambiguous monomial cover of degree <= S.
    #[arg(long)]
    pub s: Option<usize>,

    /// Slice function: smallest unambiguous cover degree.
    #[arg(long)]
    pub ucc: bool,
}

/// Parses `args`, runs the command, writes the reports to `out`, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(reports) => {
            if let Err(e) = print_reports(&reports, cli.json, out) {
                eprintln!("error: {e}");
                return 2;
            }
            exit_code(&reports)
        }
        Err(e) => {
            if cli.json {
                let body = serde_json::json!({ "error": e.to_string() });
                let _ = writeln!(out, "{body}");
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            2
        }
    }
}

fn print_reports(reports: &[Report], json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if json {
        let text = serde_json::to_string_pretty(reports).map_err(std::io::Error::other)?;
        writeln!(out, "{text}")
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{r}")?;
        }
        Ok(())
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Vec<Report>> {
    match &cli.command {
        Command::ReplicateThm27 { n, k } => cmd_replicate_thm27(*n, *k),
        Command::ReplicateThm29 { fixture } => cmd_replicate_thm29(fixture.as_deref()),
        Command::Verify(args) => cmd_verify(args),
        Command::Decompose { file } => cmd_decompose(file),
        Command::Search { n, k, d } => cmd_search(*n, *k, *d, threads(cli.threads)),
        Command::Lift { file, output } => cmd_lift(file, output.as_deref(), out),
        Command::Oracles {
            systems,
            matrices,
            samples,
        } => Ok(cmd_oracles(cli.seed, *systems, *matrices, *samples)),
    }
}

fn threads(requested: Option<usize>) -> usize {
    requested
        .or_else(|| std::thread::available_parallelism().ok().map(usize::from))
        .unwrap_or(1)
        .max(1)
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Turns a check that may hit a domain error into a failing report;
/// everything else propagates (exit 2).
fn domain_as_fail(claim: &str, result: Result<Report>) -> Result<Report> {
    match result {
        Err(Error::Domain(msg)) => Ok(Report::new(
            claim,
            Verdict::Fail,
            Some(msg),
            Default::default(),
        )),
        other => other,
    }
}

fn refuted_if(claim: &str, refuted: bool, witness: Option<String>, start: Instant) -> Report {
    let verdict = if refuted {
        Verdict::RefutedAsExpected
    } else {
        Verdict::Fail
    };
    Report::new(claim, verdict, witness, start.elapsed())
}

/// The function is Boolean, lies in V_k, yet its support holds no k-coset
/// and is no disjoint union of k-cosets.
pub fn cmd_replicate_thm27(n: usize, k: usize) -> Result<Vec<Report>> {
    let mut reports = Vec::new();

    let start = Instant::now();
    let f = paper_function_27(n, k)?;
    let identity = alternating_identity_check(n, k)?;
    let support = f.support().len();
    let mut witness = format!("support size {support} of {}", f.values().len());
    if n <= WITNESS_LIMIT_N {
        witness = format!("{witness}\n{f}");
    }
    reports.push(Report::pass_if(
        "function-boolean-with-alternating-identity",
        f.is_boolean() && identity,
        Some(witness),
        start.elapsed(),
    ));

    let start = Instant::now();
    let certificate = if n <= SOLVE_LIMIT_N {
        VkBasis::new(n, k)?.membership().certificate(&f)?
    } else {
        Some(expansion_certificate(n, k)?)
    };
    let reconstructs = match &certificate {
        Some(c) => c.evaluate(n)? == f && c.cosets.iter().all(|t| t.k() == k),
        None => false,
    };
    reports.push(Report::pass_if(
        "function-in-vk",
        reconstructs,
        certificate.map(|c| c.to_string()),
        start.elapsed(),
    ));

    let start = Instant::now();
    let coset = contains_k_coset(&f, k)?;
    reports.push(refuted_if(
        "support-contains-k-coset",
        coset.is_none(),
        coset.map(|t| format!("coset inside the support: {t}")),
        start,
    ));

    let start = Instant::now();
    let cover = disjoint_coset_cover(&f, k)?;
    reports.push(refuted_if(
        "support-is-disjoint-union-of-k-cosets",
        cover.is_none(),
        cover.map(|c| c.to_string()),
        start,
    ));
    Ok(reports)
}

fn displayed_decomposition() -> BirkhoffDecomposition {
    BirkhoffDecomposition {
        terms: fixtures::displayed_marginal_terms()
            .into_iter()
            .map(|p| (frac(1, 4), p))
            .collect(),
    }
}

fn format_decomposition(d: &BirkhoffDecomposition) -> String {
    d.terms
        .iter()
        .map(|(w, p)| format!("{w} : {p}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// The pair-indexed matrix satisfies both marginal conditions but contains
/// no induced permutation matrix; its first marginal and the replacement
/// construction are compared with the displayed ones.
pub fn cmd_replicate_thm29(fixture: Option<&Path>) -> Result<Vec<Report>> {
    let (m, integrity) = match fixture {
        Some(path) => (PairMatrix::parse(&read(path)?)?, Vec::new()),
        None => (
            fixtures::counterexample_matrix(),
            fixtures::integrity_failures(),
        ),
    };
    let mut reports = Vec::new();

    let start = Instant::now();
    let mut failures: Vec<String> = integrity
        .iter()
        .map(|name| format!("fixture {name} does not match its recorded digest"))
        .collect();
    failures.extend(bistochastic_failure(&m)?);
    reports.push(Report::pass_if(
        "matrix-is-2-bistochastic",
        failures.is_empty(),
        Some(if failures.is_empty() {
            format!("{} nonzero entries", m.nonzero_count())
        } else {
            failures.join("\n")
        }),
        start.elapsed(),
    ));
    if !failures.is_empty() {
        return Ok(reports);
    }

    let start = Instant::now();
    let embedded = find_embedded_permutation(&m)?;
    let peel = peel_decompose(&m)?;
    let stuck_at_start = matches!(peel, PeelOutcome::Stuck { step: 0, .. });
    reports.push(refuted_if(
        "matrix-is-convex-combination-of-induced-permutations",
        embedded.is_none() && stuck_at_start,
        Some(match embedded {
            Some(pi) => format!("supp(M_pi) inside supp(M) for pi = {pi}"),
            None => {
                "no permutation pi of S_4 has supp(M_pi) inside supp(M); peeling stops at step 0"
                    .into()
            }
        }),
        start,
    ));

    let start = Instant::now();
    let s1 = check_s1(&m)?;
    let displayed = fixtures::displayed_marginal();
    reports.push(Report::pass_if(
        "first-marginal-equals-displayed",
        s1.marginal == displayed,
        Some(s1.marginal.to_string()),
        start.elapsed(),
    ));

    let start = Instant::now();
    let r = &s1.marginal;
    let (ok, witness) = if is_bistochastic(r) {
        let d = birkhoff_decompose(r)?;
        let n = r.rows();
        let supported = d
            .terms
            .iter()
            .all(|(_, p)| (1..=n).all(|i| !r.get(i - 1, p.image(i) - 1).is_zero()));
        let quarter = displayed_decomposition();
        let ok = d.reconstruct(n) == *r
            && d.total_weight().is_one()
            && supported
            && d.terms.len() <= term_bound(n)
            && quarter.reconstruct(n) == *r;
        (ok, format_decomposition(&d))
    } else {
        (false, "marginal is not bistochastic".into())
    };
    reports.push(Report::pass_if(
        "marginal-birkhoff-decomposition",
        ok,
        Some(witness),
        start.elapsed(),
    ));

    let start = Instant::now();
    let p = fixtures::reversal();
    let report = match tilde_replacement(&m, &p) {
        Ok(tilde) => {
            let (_, grouped) = fixtures::displayed_replacement_tables();
            let first = check_s1(&tilde)?;
            let second = check_s2(&tilde)?;
            let matches = tilde == grouped && first.passed() && first.marginal == p;
            match (matches, second.violation) {
                (true, Some(v)) => Report::new(
                    "replaced-matrix-satisfies-second-condition",
                    Verdict::RefutedAsExpected,
                    Some(format!("{v}\n{}", tilde)),
                    start.elapsed(),
                ),
                (_, v) => Report::new(
                    "replaced-matrix-satisfies-second-condition",
                    Verdict::Fail,
                    Some(format!(
                        "equals displayed: {matches}; second condition: {}",
                        v.map_or("holds".into(), |v| v.to_string())
                    )),
                    start.elapsed(),
                ),
            }
        }
        Err(e) => Report::new(
            "replaced-matrix-satisfies-second-condition",
            Verdict::Fail,
            Some(e.to_string()),
            start.elapsed(),
        ),
    };
    reports.push(report);
    Ok(reports)
}

/// Reasons `m` is not 2-bistochastic, starting with plain row and column
/// sums (each must be 1) so that the offending index is reported directly.
fn bistochastic_failure(m: &PairMatrix) -> Result<Vec<String>> {
    let n = m.n();
    let a = m.matrix();
    let mut out = Vec::new();
    for idx in 0..a.rows() {
        if let Some(neg) = a.row(idx).iter().find(|v| *v < &Zero::zero()) {
            let (i, ip) = pair_at(n, idx);
            out.push(format!("row ({i},{ip}) has negative entry {neg}"));
            return Ok(out);
        }
    }
    for idx in 0..a.rows() {
        let s = a.row_sum(idx);
        if !s.is_one() {
            let (i, ip) = pair_at(n, idx);
            out.push(format!(
                "row {} = ({i},{ip}) sums to {s}, expected 1",
                idx + 1
            ));
        }
    }
    for idx in 0..a.cols() {
        let s = a.col_sum(idx);
        if !s.is_one() {
            let (j, jp) = pair_at(n, idx);
            out.push(format!(
                "column {} = ({j},{jp}) sums to {s}, expected 1",
                idx + 1
            ));
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    for cert in [check_s1(m)?, check_s2(m)?] {
        if let Some(v) = cert.violation {
            out.push(v.to_string());
        }
    }
    Ok(out)
}

fn load_pair_matrix(text: &str) -> Result<PairMatrix> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or_default();
    if header.starts_with("pairtable") {
        PairMatrix::parse_table(text)
    } else {
        PairMatrix::parse(text)
    }
}

/// Runs the selected checks on a file.
pub fn cmd_verify(args: &VerifyArgs) -> Result<Vec<Report>> {
    let text = read(&args.file)?;
    match args.kind {
        Kind::Pairmatrix => verify_pair_matrix(&load_pair_matrix(&text)?, args),
        Kind::Groupfunction => verify_group_function(&GroupFunction::parse(&text)?, args),
        Kind::Slicefunction => verify_slice_function(&SliceFunction::parse(&text)?, args),
    }
}

fn parsed_report(what: &str) -> Report {
    Report::new(
        format!("{what}-parses"),
        Verdict::Pass,
        None,
        Default::default(),
    )
}

fn verify_pair_matrix(m: &PairMatrix, args: &VerifyArgs) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    if args.two_bistochastic || !args.embedded {
        let start = Instant::now();
        let failures = bistochastic_failure(m)?;
        reports.push(Report::pass_if(
            "2-bistochastic",
            failures.is_empty(),
            (!failures.is_empty()).then(|| failures.join("\n")),
            start.elapsed(),
        ));
    }
    if args.embedded {
        let start = Instant::now();
        let found = find_embedded_permutation(m)?;
        reports.push(Report::pass_if(
            "contains-induced-permutation",
            found.is_some(),
            found.map(|p| p.to_string()),
            start.elapsed(),
        ));
    }
    Ok(reports)
}

fn verify_group_function(f: &GroupFunction, args: &VerifyArgs) -> Result<Vec<Report>> {
    let n = f.n();
    let mut reports = Vec::new();
    if let Some(k) = args.in_vk {
        let claim = format!("in-v{k}");
        let start = Instant::now();
        let cert = VkBasis::new(n, k)?.membership().certificate(f)?;
        reports.push(Report::pass_if(
            claim,
            cert.is_some(),
            cert.map(|c| c.to_string()),
            start.elapsed(),
        ));
    }
    if let Some(k) = args.coset {
        let start = Instant::now();
        let found = contains_k_coset(f, k)?;
        reports.push(Report::pass_if(
            format!("support-contains-{k}-coset"),
            found.is_some(),
            found.map(|t| format!("{t} : 1")),
            start.elapsed(),
        ));
    }
    if let Some(k) = args.disjoint_cover {
        let start = Instant::now();
        let cover = disjoint_coset_cover(f, k)?;
        reports.push(Report::pass_if(
            format!("disjoint-{k}-coset-cover"),
            cover.is_some(),
            cover.map(|c| c.to_string()),
            start.elapsed(),
        ));
    }
    if let Some(k) = args.nonneg_cover {
        let claim = format!("nonnegative-{k}-coset-combination");
        let start = Instant::now();
        let result = nonneg_coset_decomposition(f, k).map(|cover| {
            Report::pass_if(
                claim.as_str(),
                cover.is_some(),
                cover.map(|c| c.to_string()),
                start.elapsed(),
            )
        });
        reports.push(domain_as_fail(&claim, result)?);
    }
    if let Some(path) = &args.certificate {
        let start = Instant::now();
        let cover = CosetCover::parse(n, &read(path)?)?;
        let value = cover.evaluate(n)?;
        let sizes: Vec<usize> = cover.cosets.iter().map(|t| t.k()).collect();
        let witness = match sizes.iter().max() {
            Some(k) => format!("{} cosets, largest order {k}", cover.len()),
            None => "empty combination".into(),
        };
        reports.push(Report::pass_if(
            "certificate-reconstructs-function",
            value == *f,
            Some(witness),
            start.elapsed(),
        ));
    }
    if reports.is_empty() {
        reports.push(parsed_report("group-function"));
    }
    Ok(reports)
}

fn verify_slice_function(f: &SliceFunction, args: &VerifyArgs) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    if args.degree || args.d.is_some() {
        let start = Instant::now();
        let degree = slice_degree(f)?;
        let ok = args.d.is_none_or(|d| degree <= d);
        reports.push(Report::pass_if(
            "slice-degree",
            ok,
            Some(format!("degree {degree}")),
            start.elapsed(),
        ));
    }
    if let Some(s) = args.s {
        let start = Instant::now();
        let cover = monomial_cover(f, s)?;
        reports.push(Report::pass_if(
            format!("unambiguous-cover-of-degree-{s}"),
            cover.is_some(),
            cover.map(|c| c.to_string()),
            start.elapsed(),
        ));
    }
    if args.ucc {
        let start = Instant::now();
        let (s, cover) = unambiguous_cc(f)?;
        reports.push(Report::pass_if(
            "unambiguous-certificate-complexity",
            cover.verify(f),
            Some(format!("{s}\n{cover}")),
            start.elapsed(),
        ));
    }
    if let Some(path) = &args.certificate {
        let start = Instant::now();
        let cover = UnambiguousCover::parse(&read(path)?)?;
        reports.push(Report::pass_if(
            "certificate-is-unambiguous-cover",
            f.is_boolean() && cover.verify(f),
            Some(format!("degree {}", cover.degree())),
            start.elapsed(),
        ));
    }
    if reports.is_empty() {
        reports.push(parsed_report("slice-function"));
    }
    Ok(reports)
}

/// Birkhoff decomposition of the square matrix in `file`.
pub fn cmd_decompose(file: &Path) -> Result<Vec<Report>> {
    let a = RatMatrix::parse(&read(file)?)?;
    let start = Instant::now();
    if !is_bistochastic(&a) {
        return Ok(vec![Report::new(
            "birkhoff-decomposition",
            Verdict::Fail,
            Some("matrix is not bistochastic".into()),
            start.elapsed(),
        )]);
    }
    let d = birkhoff_decompose(&a)?;
    let n = a.rows();
    let ok = d.reconstruct(n) == a && d.total_weight().is_one() && d.terms.len() <= term_bound(n);
    Ok(vec![Report::pass_if(
        "birkhoff-decomposition",
        ok,
        Some(format_decomposition(&d)),
        start.elapsed(),
    )])
}

/// Exhaustive search, then an independent re-check of every hit.
pub fn cmd_search(n: usize, k: usize, d: usize, threads: usize) -> Result<Vec<Report>> {
    let start = Instant::now();
    let found = search_violations_parallel(n, k, d, threads)?;
    let mut reports = vec![Report::pass_if(
        format!("search-n{n}-k{k}-d{d}"),
        true,
        Some(format!("{} orbit representatives", found.len())),
        start.elapsed(),
    )];
    for (i, f) in found.iter().enumerate() {
        let start = Instant::now();
        let ok = slice_degree(f)? <= d && monomial_cover(f, d)?.is_none();
        reports.push(Report::pass_if(
            format!("violation-{}-reverified", i + 1),
            ok,
            Some(f.to_string()),
            start.elapsed(),
        ));
    }
    Ok(reports)
}

/// Writes the lifted function to `output`, or prints it when no output
/// file is given.
pub fn cmd_lift(file: &Path, output: Option<&Path>, out: &mut dyn Write) -> Result<Vec<Report>> {
    let start = Instant::now();
    let f = SliceFunction::parse(&read(file)?)?;
    let lifted = lift_to_sn(&f)?;
    match output {
        Some(path) => {
            std::fs::write(path, lifted.to_string())?;
            Ok(vec![Report::pass_if(
                "lift",
                true,
                Some(path.display().to_string()),
                start.elapsed(),
            )])
        }
        None => {
            write!(out, "{lifted}")?;
            Ok(Vec::new())
        }
    }
}

type Suite = fn(u64, usize) -> oracles::SuiteResult;

/// The four seeded oracle suites.
pub fn cmd_oracles(seed: u64, systems: usize, matrices: usize, samples: usize) -> Vec<Report> {
    let suites: [(Suite, usize); 4] = [
        (oracles::feasibility_suite, systems),
        (oracles::marginal_suite, matrices),
        (oracles::convex_combination_suite, samples),
        (oracles::v1_control_suite, samples),
    ];
    suites
        .iter()
        .map(|(suite, cases)| {
            let start = Instant::now();
            let result = suite(seed, *cases);
            let witness = if result.passed() {
                format!(
                    "{} cases ({} positive), seed {seed}",
                    result.cases, result.positives
                )
            } else {
                result
                    .failures
                    .iter()
                    .take(5)
                    .cloned()
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Report::pass_if(result.name, result.passed(), Some(witness), start.elapsed())
        })
        .collect()
}
