//! Runs witness recipes through their construction pipelines and compares
//! the measured state counts with the tabulated bounds.

use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{OperationId, Pipeline, Recipe, Status};
use crate::constructions::{
    concat_nfa, dfa_to_nfa, product_dfa, reverse_nfa, rooted_star_nfa, star_nfa, star_of_nfa, union_nfa,
    BooleanOp,
};
use crate::determinize::{determinize_capped, SubsetDfa, DEFAULT_SUBSET_CAP};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::nfa::EpsNfa;

/// Maximum number of subset labels included in mismatch diagnostics.
pub const DIAGNOSTIC_LABELS: usize = 20;

/// Default bound on `m * n` for the intersection-star scan.
pub const DEFAULT_BIT_CAP: usize = 26;

/// Outcome of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Match,
    BelowBound,
    AboveBound,
    OpenMeasured,
    SkippedCap,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::BelowBound => "below-bound",
            Verdict::AboveBound => "ABOVE-BOUND",
            Verdict::OpenMeasured => "open-measured",
            Verdict::SkippedCap => "skipped: cap",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// One `(operation, m, n)` measurement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationCell {
    pub op: OperationId,
    pub status: Status,
    /// `None` for unary operations.
    pub m: Option<usize>,
    pub n: usize,
    /// `None` when no bound is known.
    pub expected: Option<u128>,
    /// `None` when the cell was skipped.
    pub measured: Option<usize>,
    pub verdict: Verdict,
    pub millis: u64,
    pub witnesses: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
}

impl VerificationCell {
    /// Whether this cell should fail the run: a proved or conjectured
    /// upper bound exceeded, or a theorem's tight bound not reached.
    /// Conjecture shortfalls are findings, not failures.
    pub fn is_failure(&self) -> bool {
        match self.verdict {
            Verdict::AboveBound => true,
            Verdict::BelowBound => self.status == Status::Theorem,
            _ => false,
        }
    }

    /// A conjectured bound not reached.
    pub fn is_finding(&self) -> bool {
        self.verdict == Verdict::BelowBound && self.status == Status::Conjecture
    }
}

/// Knobs for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Maximum number of subsets any single determinization may create.
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SUBSET_CAP,
            jobs: None,
        }
    }
}

/// The minimal result DFA of a pipeline, with the last subset construction
/// it went through (if any) kept for diagnostics.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub operands: (Option<Dfa>, Dfa),
    pub minimal: Dfa,
    pub last_subsets: Option<SubsetDfa>,
}

fn det_min(nfa: &EpsNfa, cap: usize) -> Result<(Dfa, SubsetDfa)> {
    let subsets = determinize_capped(nfa, cap)?;
    Ok((minimize(subsets.dfa()), subsets))
}

fn product_min(k: &Dfa, l: &Dfa, op: BooleanOp, cap: usize) -> Result<Dfa> {
    if k.size().saturating_mul(l.size()) > cap {
        // only the reachable part is built, so this is a projection, not a refusal
        let p = product_dfa(k, l, op)?;
        if p.size() > cap {
            return Err(Error::CapExceeded { cap });
        }
        return Ok(minimize(&p));
    }
    Ok(minimize(&product_dfa(k, l, op)?))
}

/// Executes a recipe's pipeline.
pub fn run_recipe(recipe: &Recipe, cap: usize) -> Result<PipelineRun> {
    let left = recipe.left.as_ref().map(|k| k.build()).transpose()?;
    let right = recipe.right.build()?;
    let need_left = || {
        left.as_ref()
            .ok_or_else(|| Error::InvalidArgument("binary pipeline without left operand".into()))
    };
    let star_min = |d: &Dfa| det_min(&star_nfa(d), cap).map(|(m, _)| m);

    let (minimal, last_subsets) = match recipe.pipeline {
        Pipeline::Star => wrap(det_min(&star_nfa(&right), cap)?),
        Pipeline::Reversal => wrap(det_min(&reverse_nfa(&right), cap)?),
        Pipeline::Product => {
            let nfa = concat_nfa(&dfa_to_nfa(need_left()?), &dfa_to_nfa(&right))?;
            wrap(det_min(&nfa, cap)?)
        }
        Pipeline::Boolean(op) => (product_min(need_left()?, &right, op, cap)?, None),
        Pipeline::StarRight(op) => {
            let ls = star_min(&right)?;
            (product_min(need_left()?, &ls, op, cap)?, None)
        }
        Pipeline::StarRightMinusLeft => {
            let ls = star_min(&right)?;
            (product_min(&ls, need_left()?, BooleanOp::Difference, cap)?, None)
        }
        Pipeline::StarBoth(op) => {
            let ks = star_min(need_left()?)?;
            let ls = star_min(&right)?;
            (product_min(&ks, &ls, op, cap)?, None)
        }
        Pipeline::RootedStarBoth(op) => {
            let (ks, _) = det_min(&rooted_star_nfa(need_left()?), cap)?;
            let ls = star_min(&right)?;
            (product_min(&ks, &ls, op, cap)?, None)
        }
        Pipeline::ConcatStarRight => {
            let nfa = concat_nfa(&dfa_to_nfa(need_left()?), &star_nfa(&right))?;
            wrap(det_min(&nfa, cap)?)
        }
        Pipeline::ConcatStarLeft => {
            let nfa = concat_nfa(&star_nfa(need_left()?), &dfa_to_nfa(&right))?;
            wrap(det_min(&nfa, cap)?)
        }
        Pipeline::ConcatStarBoth => {
            let nfa = concat_nfa(&star_nfa(need_left()?), &star_nfa(&right))?;
            wrap(det_min(&nfa, cap)?)
        }
        Pipeline::StarOfConcat => {
            let nfa = concat_nfa(&dfa_to_nfa(need_left()?), &dfa_to_nfa(&right))?;
            wrap(det_min(&star_of_nfa(&nfa), cap)?)
        }
        Pipeline::StarOfBoolean(BooleanOp::Union) => {
            let nfa = union_nfa(&dfa_to_nfa(need_left()?), &dfa_to_nfa(&right))?;
            wrap(det_min(&star_of_nfa(&nfa), cap)?)
        }
        Pipeline::StarOfBoolean(op) => {
            let inner = product_min(need_left()?, &right, op, cap)?;
            wrap(det_min(&star_nfa(&inner), cap)?)
        }
    };
    Ok(PipelineRun {
        operands: (left, right),
        minimal,
        last_subsets,
    })
}

fn wrap((minimal, subsets): (Dfa, SubsetDfa)) -> (Dfa, Option<SubsetDfa>) {
    (minimal, Some(subsets))
}

/// Measures one cell with the tabulated recipe.
pub fn verify_cell(op: OperationId, m: usize, n: usize, cap: usize) -> Result<VerificationCell> {
    verify_recipe(op, m, n, &op.recipe(m, n), cap)
}

/// Measures one cell with an explicit recipe, for checking alternative
/// witness pairs against the same bound.
pub fn verify_recipe(
    op: OperationId,
    m: usize,
    n: usize,
    recipe: &Recipe,
    cap: usize,
) -> Result<VerificationCell> {
    check_size(op, m, n)?;
    let expected = match op.evaluate(m, n) {
        Ok(v) => Some(v),
        Err(Error::NoKnownBound(_)) => None,
        Err(e) => return Err(e),
    };
    let start = Instant::now();
    let outcome = run_recipe(recipe, cap);
    let millis = start.elapsed().as_millis() as u64;
    let mut cell = VerificationCell {
        op,
        status: op.status(),
        m: (op.arity() == 2).then_some(m),
        n,
        expected,
        measured: None,
        verdict: Verdict::SkippedCap,
        millis,
        witnesses: recipe.witness_names(),
        note: None,
        diagnostics: None,
    };
    let run = match outcome {
        Ok(run) => run,
        Err(Error::CapExceeded { cap }) => {
            cell.note = Some(format!("subset cap {cap} exceeded"));
            return Ok(cell);
        }
        Err(e) => return Err(e),
    };
    let measured = run.minimal.size();
    cell.measured = Some(measured);
    cell.verdict = match expected {
        None => Verdict::OpenMeasured,
        Some(e) if measured as u128 == e => Verdict::Match,
        Some(e) if (measured as u128) < e => Verdict::BelowBound,
        Some(_) => Verdict::AboveBound,
    };
    if matches!(cell.verdict, Verdict::BelowBound | Verdict::AboveBound) {
        cell.diagnostics = Some(diagnostics(&run));
    }
    Ok(cell)
}

fn check_size(op: OperationId, m: usize, n: usize) -> Result<()> {
    if n < 3 || (op.arity() == 2 && m < 3) {
        return Err(Error::InvalidArgument(format!(
            "cells need m, n >= 3, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Operands in the DFA text format plus the first subset labels of the
/// final determinization.
fn diagnostics(run: &PipelineRun) -> String {
    let mut out = String::new();
    if let Some(k) = &run.operands.0 {
        out.push_str("# K\n");
        out.push_str(&k.to_text());
    }
    out.push_str("# L\n");
    out.push_str(&run.operands.1.to_text());
    if let Some(subsets) = &run.last_subsets {
        out.push_str(&format!(
            "# first {} of {} subset labels (* = final)\n",
            DIAGNOSTIC_LABELS.min(subsets.len()),
            subsets.len()
        ));
        out.push_str(&subsets.describe_labels(DIAGNOSTIC_LABELS));
    }
    out
}

/// All cells for `ops` over the given ranges, computed concurrently and
/// returned in `(op, m, n)` order. Unary operations get one cell per `n`.
pub fn verify_table(
    ops: &[OperationId],
    ms: RangeInclusive<usize>,
    ns: RangeInclusive<usize>,
    config: VerifyConfig,
) -> Result<Vec<VerificationCell>> {
    for r in [&ms, &ns] {
        if *r.start() < 3 || *r.end() > 12 || r.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "range {}..{} must lie within 3..12",
                r.start(),
                r.end()
            )));
        }
    }
    let mut jobs: Vec<(OperationId, usize, usize)> = Vec::new();
    for &op in ops {
        if op.arity() == 1 {
            jobs.extend(ns.clone().map(|n| (op, n, n)));
        } else {
            for m in ms.clone() {
                jobs.extend(ns.clone().map(|n| (op, m, n)));
            }
        }
    }
    let work = || {
        jobs.par_iter()
            .map(|&(op, m, n)| verify_cell(op, m, n, config.cap))
            .collect::<Result<Vec<_>>>()
    };
    match config.jobs {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Tallies of a verification run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub matched: usize,
    pub below: usize,
    pub above: usize,
    pub open: usize,
    pub skipped: usize,
    pub findings: usize,
    pub failures: usize,
}

impl Summary {
    pub fn of(cells: &[VerificationCell]) -> Self {
        let mut s = Summary::default();
        for c in cells {
            match c.verdict {
                Verdict::Match => s.matched += 1,
                Verdict::BelowBound => s.below += 1,
                Verdict::AboveBound => s.above += 1,
                Verdict::OpenMeasured => s.open += 1,
                Verdict::SkippedCap => s.skipped += 1,
            }
            s.findings += c.is_finding() as usize;
            s.failures += c.is_failure() as usize;
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "match={} below-bound={} ABOVE-BOUND={} open-measured={} skipped={} findings={} failures={}",
            self.matched, self.below, self.above, self.open, self.skipped, self.findings, self.failures
        )
    }
}

/// Options for [`conjecture_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub cap: usize,
    /// Pairs with `m * n` above this are skipped without running.
    pub bit_cap: usize,
    /// Also measure `(K\L)*` with the six-letter pair.
    pub with_difference: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SUBSET_CAP,
            bit_cap: DEFAULT_BIT_CAP,
            with_difference: false,
        }
    }
}

/// Measures `(K∩L)*` with the five-letter witnesses at every pair.
pub fn conjecture_scan(pairs: &[(usize, usize)], config: ScanConfig) -> Result<Vec<VerificationCell>> {
    let mut cells = Vec::new();
    let mut ops = vec![OperationId::StarOfIntersection];
    if config.with_difference {
        ops.push(OperationId::StarOfDifference);
    }
    for &op in &ops {
        for &(m, n) in pairs {
            check_size(op, m, n)?;
            if m * n > config.bit_cap {
                let recipe = op.recipe(m, n);
                cells.push(VerificationCell {
                    op,
                    status: op.status(),
                    m: Some(m),
                    n,
                    expected: op.evaluate(m, n).ok(),
                    measured: None,
                    verdict: Verdict::SkippedCap,
                    millis: 0,
                    witnesses: recipe.witness_names(),
                    note: Some(format!("m*n = {} exceeds the bit cap {}", m * n, config.bit_cap)),
                    diagnostics: None,
                });
                continue;
            }
            cells.push(verify_cell(op, m, n, config.cap)?);
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{Family, WitnessSpec};

    #[test]
    fn products_with_stars() {
        let c = verify_cell(OperationId::ConcatStarRight, 4, 5, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!((c.measured, c.expected, c.verdict), (Some(88), Some(88), Verdict::Match));
        let c = verify_cell(OperationId::ConcatStarBoth, 4, 5, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!((c.measured, c.verdict), (Some(226), Verdict::Match));
        assert!(c.diagnostics.is_none());
    }

    #[test]
    fn open_entry_is_measured() {
        let c = verify_cell(OperationId::StarOfSymDiff, 3, 3, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(c.verdict, Verdict::OpenMeasured);
        assert!(c.measured.is_some());
        assert!(c.expected.is_none());
        assert!(!c.is_failure());
    }

    #[test]
    fn cap_marks_cell_skipped() {
        let c = verify_cell(OperationId::StarOfIntersection, 3, 3, 100).unwrap();
        assert_eq!(c.verdict, Verdict::SkippedCap);
        assert_eq!(c.measured, None);
        assert!(c.note.unwrap().contains("100"));
    }

    #[test]
    fn shortfall_carries_diagnostics() {
        // star of the full ternary U_n is below the binary-restriction bound
        let recipe = Recipe {
            left: None,
            right: WitnessSpec::new(Family::T3, 4),
            pipeline: Pipeline::Star,
        };
        let c = verify_recipe(OperationId::Star, 4, 4, &recipe, DEFAULT_SUBSET_CAP).unwrap();
        if c.verdict == Verdict::BelowBound {
            let d = c.diagnostics.unwrap();
            assert!(d.contains("# L\ndfa 4\n"));
            assert!(d.contains("subset labels"));
        } else {
            assert_eq!(c.verdict, Verdict::Match);
        }
    }

    #[test]
    fn table_order_and_ranges() {
        let cells = verify_table(
            &[OperationId::Star, OperationId::BoolUnion],
            3..=4,
            3..=4,
            VerifyConfig { cap: DEFAULT_SUBSET_CAP, jobs: Some(2) },
        )
        .unwrap();
        let keys: Vec<_> = cells.iter().map(|c| (c.op, c.m, c.n)).collect();
        assert_eq!(
            keys,
            [
                (OperationId::Star, None, 3),
                (OperationId::Star, None, 4),
                (OperationId::BoolUnion, Some(3), 3),
                (OperationId::BoolUnion, Some(3), 4),
                (OperationId::BoolUnion, Some(4), 3),
                (OperationId::BoolUnion, Some(4), 4),
            ]
        );
        assert!(cells.iter().all(|c| c.verdict == Verdict::Match));
        assert!(verify_table(&[OperationId::Star], 2..=4, 3..=4, VerifyConfig::default()).is_err());
        assert!(verify_table(&[OperationId::Star], 3..=4, 3..=13, VerifyConfig::default()).is_err());
    }

    #[test]
    fn scan_skips_above_bit_cap() {
        let cells = conjecture_scan(
            &[(3, 3), (6, 6)],
            ScanConfig { bit_cap: 26, ..ScanConfig::default() },
        )
        .unwrap();
        assert_eq!(cells[0].measured, Some(384));
        assert_eq!(cells[1].verdict, Verdict::SkippedCap);
    }

    #[test]
    fn summary_counts() {
        let mut cell = verify_cell(OperationId::BoolUnion, 3, 3, DEFAULT_SUBSET_CAP).unwrap();
        let mut cells = vec![cell.clone()];
        cell.verdict = Verdict::BelowBound;
        cell.status = Status::Conjecture;
        cells.push(cell.clone());
        cell.verdict = Verdict::AboveBound;
        cells.push(cell);
        let s = Summary::of(&cells);
        assert_eq!((s.matched, s.below, s.above, s.findings, s.failures), (1, 1, 1, 1, 1));
    }
}
