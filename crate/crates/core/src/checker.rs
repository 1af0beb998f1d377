//! Finite-precision checks of the integrality and positivity conjectures,
//! plus the Fano, reflexivity, Delaygue and rank-one side checks, assembled
//! into a serializable report.
//!
//! Precision `P` picks the least `d` with `#K_0(d) >= P` under the all-ones
//! weight, and for each `(i,j)` the least `d'` with `#(K_0 + K_ij)(d') >= P`
//! under `2 * 1 - 1_ij`. Explicit `d`/`d'` overrides bypass the search.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::delaygue::{self, Agreement, Rank1Data};
use crate::error::{Error, Result};
use crate::lattice::{self, KernelLattice, VectorConfig};
use crate::mirrormap::{BundleRequest, ConeSeries, MirrorMapBundle};
use crate::monoid::{self, FreeMonoid, Monoid};
use crate::par::{self, Execution};
use crate::polytope;
use crate::series::CoefficientVerdict;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    NaiveIntegrality,
    LogPositivity,
    TrueIntegrality,
    Fano,
    Reflexive,
    DelaygueEquivalence,
    Rank1Conditions,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::NaiveIntegrality,
        CheckKind::LogPositivity,
        CheckKind::TrueIntegrality,
        CheckKind::Fano,
        CheckKind::Reflexive,
        CheckKind::DelaygueEquivalence,
        CheckKind::Rank1Conditions,
    ];

    /// The three finite-precision conjecture checks.
    pub const CONJECTURES: [CheckKind; 3] =
        [CheckKind::NaiveIntegrality, CheckKind::LogPositivity, CheckKind::TrueIntegrality];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::NaiveIntegrality => "naive-integrality",
            CheckKind::LogPositivity => "log-positivity",
            CheckKind::TrueIntegrality => "true-integrality",
            CheckKind::Fano => "fano",
            CheckKind::Reflexive => "reflexive",
            CheckKind::DelaygueEquivalence => "delaygue-equivalence",
            CheckKind::Rank1Conditions => "rank1-conditions",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check '{}'", s.trim()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRequest {
    pub label: Option<String>,
    pub config: VectorConfig,
    pub precision: usize,
    pub checks: BTreeSet<CheckKind>,
    /// Explicit bound on `K_0` (all-ones weight); replaces the search by `P`.
    pub d: Option<Rational64>,
    /// Explicit bound on every `K_0 + K_ij`; replaces the search by `P`.
    pub dprime: Option<Rational64>,
    pub sampling_denominator: Option<i64>,
    /// Also compute `exp((phi + tau) / phi_0)` directly and compare.
    pub cross_check: bool,
    pub exec: Execution,
}

impl CheckRequest {
    pub fn new(config: VectorConfig, precision: usize) -> Self {
        CheckRequest {
            label: None,
            config,
            precision,
            checks: CheckKind::ALL.into_iter().collect(),
            d: None,
            dprime: None,
            sampling_denominator: None,
            cross_check: false,
            exec: Execution::Parallel,
        }
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = CheckKind>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn detail(msg: impl Into<String>) -> Verdict {
        Verdict::Fail { witness: Witness { detail: Some(msg.into()), ..Witness::default() } }
    }

    fn from_coefficients(v: CoefficientVerdict, index: &str) -> Verdict {
        match v.witness {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail {
                witness: Witness {
                    index: Some(index.to_string()),
                    exponent: Some(w.exponent),
                    coefficient: Some(w.coefficient),
                    detail: None,
                },
            },
        }
    }

    /// Fails with the first failing entry; skips only if every entry did.
    fn combine(items: &[IndexVerdict]) -> Verdict {
        if let Some(f) = items.iter().find(|v| v.verdict.is_fail()) {
            return f.verdict.clone();
        }
        if !items.is_empty() && items.iter().all(|v| matches!(v.verdict, Verdict::Skipped { .. })) {
            return Verdict::Skipped { reason: "skipped for every index".into() };
        }
        Verdict::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexVerdict {
    pub index: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_index: Vec<IndexVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Precision,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeBound {
    pub index: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dprime: Option<String>,
    /// `#(K_0 + K_ij)(d')`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// `#K_ij(d')`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kij_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub mode: BoundMode,
    pub d: String,
    /// `#K_0(d)`
    pub count: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cones: Vec<ConeBound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub format_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub groups: Vec<Vec<Vec<i64>>>,
    pub precision: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano: Option<bool>,
    /// `r` when `K_0 = N^r` was detected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    pub timing_ms: u64,
}

impl CheckReport {
    fn empty(request: &CheckRequest) -> Self {
        CheckReport {
            format_version: FORMAT_VERSION,
            label: request.label.clone(),
            groups: request.config.groups().to_vec(),
            precision: request.precision,
            status: Status::Pass,
            error: None,
            kernel_rank: None,
            fano: None,
            free_rank: None,
            bounds: None,
            checks: Vec::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
            timing_ms: 0,
        }
    }

    /// A report for input that never became a valid request.
    pub fn input_error(label: Option<String>, precision: usize, error: impl Into<String>) -> Self {
        CheckReport {
            format_version: FORMAT_VERSION,
            label,
            groups: Vec::new(),
            precision,
            status: Status::Error,
            error: Some(error.into()),
            kernel_rank: None,
            fano: None,
            free_rank: None,
            bounds: None,
            checks: Vec::new(),
            warnings: Vec::new(),
            notes: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, kind: CheckKind) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == kind)
    }
}

/// Runs every requested check; failures and errors are captured in the
/// report rather than returned.
pub fn run_check(request: &CheckRequest) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::empty(request);
    if let Err(e) = run_into(request, &mut report) {
        report.status = Status::Error;
        report.error = Some(e.to_string());
    } else if report.checks.iter().any(|c| c.verdict.is_fail()) {
        report.status = Status::Fail;
    }
    report.timing_ms = start.elapsed().as_millis() as u64;
    report
}

fn fmt_bound(b: Rational64) -> String {
    if b.is_integer() {
        b.to_integer().to_string()
    } else {
        b.to_string()
    }
}

fn run_into(request: &CheckRequest, report: &mut CheckReport) -> Result<()> {
    if request.precision == 0 {
        return Err(Error::Domain("precision must be at least 1".into()));
    }
    let normal = lattice::normalize_to_span(&request.config)?;
    if normal.changed {
        report.notes.push(match normal.index {
            Some(n) => format!("vectors span a sublattice of index {n}; working in its coordinates"),
            None => format!("vectors span a rank {} sublattice; working in its coordinates", normal.basis.len()),
        });
    }
    let config = &normal.config;
    let assumption = lattice::validate_assumption(config)?;
    if let Some(reason) = assumption.failure_reason() {
        return Err(Error::Assumption(reason));
    }
    let kernel = lattice::kernel_basis(config)?;
    report.kernel_rank = Some(kernel.rank());
    let fano = polytope::is_fano(config)?;
    report.fano = Some(fano);
    if !fano {
        report.warnings.push(
            "data are not Fano: the conjectures do not apply and K_0 + K_ij may be unbounded".into(),
        );
    }
    let free = if kernel.rank() > 0 {
        monoid::free_monoid_iso(&kernel, monoid::hilbert_bound(&kernel)?)?
    } else {
        None
    };
    report.free_rank = free.as_ref().map(FreeMonoid::rank);

    let wants = |k: CheckKind| request.checks.contains(&k);
    let mut results: Vec<CheckResult> = Vec::new();

    if wants(CheckKind::NaiveIntegrality) || wants(CheckKind::LogPositivity) || wants(CheckKind::TrueIntegrality) {
        let (mode, d) = match request.d {
            Some(d) => (BoundMode::Explicit, d),
            None => (BoundMode::Precision, Monoid::k0(&kernel).weight_bound_for_count(request.precision)?.bound),
        };
        let bundle = MirrorMapBundle::build(
            config,
            &BundleRequest { d, dprime: vec![None; config.len()], exec: request.exec },
        )?;
        report.bounds = Some(Bounds { mode, d: fmt_bound(d), count: bundle.k0_count, cones: Vec::new() });
        let indices = config.indices();
        if wants(CheckKind::NaiveIntegrality) {
            let per: Vec<IndexVerdict> = indices
                .iter()
                .zip(&bundle.naive)
                .map(|(ij, s)| IndexVerdict {
                    index: ij.to_string(),
                    verdict: Verdict::from_coefficients(s.is_integral(), &ij.to_string()),
                })
                .collect();
            results.push(CheckResult { check: CheckKind::NaiveIntegrality, verdict: Verdict::combine(&per), per_index: per });
        }
        if wants(CheckKind::LogPositivity) {
            let per: Vec<IndexVerdict> = indices
                .iter()
                .zip(&bundle.log_naive)
                .map(|(ij, s)| IndexVerdict {
                    index: ij.to_string(),
                    verdict: Verdict::from_coefficients(s.is_nonnegative(), &ij.to_string()),
                })
                .collect();
            results.push(CheckResult { check: CheckKind::LogPositivity, verdict: Verdict::combine(&per), per_index: per });
        }
        if wants(CheckKind::TrueIntegrality) {
            let (result, cones, notes) = true_integrality(request, config, &kernel)?;
            if let Some(b) = report.bounds.as_mut() {
                b.cones = cones;
            }
            report.notes.extend(notes);
            results.push(result);
        }
    }

    if wants(CheckKind::Fano) {
        let verdict = if fano {
            Verdict::Pass
        } else {
            let delta = polytope::newton_polytope(config)?;
            let extra: Vec<String> = polytope::interior_lattice_points(&delta)
                .into_iter()
                .filter(|p| !lattice::is_zero_vec(p))
                .map(|p| format!("{p:?}"))
                .collect();
            Verdict::detail(format!("nonzero interior lattice points: {}", extra.join(", ")))
        };
        results.push(CheckResult { check: CheckKind::Fano, verdict, per_index: Vec::new() });
    }

    if wants(CheckKind::Reflexive) {
        let r = polytope::reflexivity(&polytope::newton_polytope(config)?);
        let verdict = if r.reflexive { Verdict::Pass } else { Verdict::detail(r.reason.unwrap_or_default()) };
        results.push(CheckResult { check: CheckKind::Reflexive, verdict, per_index: Vec::new() });
    }

    let data = match (&free, wants(CheckKind::DelaygueEquivalence) || wants(CheckKind::Rank1Conditions)) {
        (Some(iso), true) => Some(delaygue::translate(config, iso)?),
        _ => None,
    };

    if wants(CheckKind::DelaygueEquivalence) {
        let verdict = match &data {
            None => Verdict::Skipped { reason: "K_0 is not free".into() },
            Some(data) => {
                let q = request.sampling_denominator.unwrap_or_else(|| {
                    delaygue::default_sampling_denominator(data.r, delaygue::DEFAULT_SAMPLING_BUDGET)
                });
                let eq = delaygue::equivalence_test(config, data, q, request.exec)?;
                if data.r >= 2 {
                    report.warnings.push(format!(
                        "Delaygue criterion sampled on denominator {q}; a pass is not a certificate"
                    ));
                }
                match eq.agreement {
                    Agreement::Agree => Verdict::Pass,
                    Agreement::Falsified => Verdict::detail(format!(
                        "Fano is {} but the criterion {}",
                        eq.fano,
                        eq.criterion.describe()
                    )),
                    Agreement::SamplingInconclusive => {
                        report.warnings.push(
                            "not Fano, yet no criterion violation at the sampled resolution".into(),
                        );
                        Verdict::Skipped { reason: format!("inconclusive: criterion {}", eq.criterion.describe()) }
                    }
                }
            }
        };
        results.push(CheckResult { check: CheckKind::DelaygueEquivalence, verdict, per_index: Vec::new() });
    }

    if wants(CheckKind::Rank1Conditions) {
        let result = match &data {
            Some(data) if data.r == 1 => {
                let per: Vec<IndexVerdict> = config
                    .indices()
                    .into_iter()
                    .map(|ij| -> Result<IndexVerdict> {
                        let v = delaygue::check_rank1_conditions(&Rank1Data::from_delaygue(data, ij)?, request.precision);
                        let verdict = if v.passed() {
                            Verdict::Pass
                        } else {
                            Verdict::Fail {
                                witness: Witness {
                                    index: Some(ij.to_string()),
                                    detail: Some(format!("{v:?}")),
                                    ..Witness::default()
                                },
                            }
                        };
                        Ok(IndexVerdict { index: ij.to_string(), verdict })
                    })
                    .collect::<Result<_>>()?;
                CheckResult { check: CheckKind::Rank1Conditions, verdict: Verdict::combine(&per), per_index: per }
            }
            _ => CheckResult {
                check: CheckKind::Rank1Conditions,
                verdict: Verdict::Skipped { reason: "needs K_0 free of rank one".into() },
                per_index: Vec::new(),
            },
        };
        results.push(result);
    }

    report.checks = results;
    Ok(())
}

/// `exp(tau_ij / phi_0)` integrality per index, with the bounds used and any
/// informational notes about the true map.
fn true_integrality(
    request: &CheckRequest,
    config: &VectorConfig,
    kernel: &KernelLattice,
) -> Result<(CheckResult, Vec<ConeBound>, Vec<String>)> {
    let indices = config.indices();
    let outcomes = par::map(request.exec, &indices, |&ij| -> Result<(IndexVerdict, ConeBound, Option<String>)> {
        let label = ij.to_string();
        if lattice::is_zero_vec(config.vector(ij)?) {
            let reason = "v_ij = 0".to_string();
            return Ok((
                IndexVerdict { index: label.clone(), verdict: Verdict::Skipped { reason: reason.clone() } },
                ConeBound { index: label, dprime: None, count: None, kij_count: None, skipped: Some(reason) },
                None,
            ));
        }
        let cone = Monoid::cone(kernel, config, ij)?;
        let chosen = match request.dprime {
            Some(dp) => cone.enumerate(dp).map(|s| (dp, s.len())),
            None => cone.weight_bound_for_count(request.precision).map(|b| (b.bound, b.count)),
        };
        let built = chosen.and_then(|(dp, count)| {
            let cs = ConeSeries::build(config, kernel, ij, dp)?;
            let e = cs.exp_tau_over_phi0()?;
            Ok((dp, count, cs, e))
        });
        let (dprime, count, cs, exp_tau) = match built {
            Ok(v) => v,
            Err(err @ (Error::Unbounded | Error::SeriesPrecondition(_))) => {
                let reason = format!("K_0 + K_ij cannot be truncated: {err}");
                return Ok((
                    IndexVerdict { index: label.clone(), verdict: Verdict::Skipped { reason: reason.clone() } },
                    ConeBound { index: label, dprime: None, count: None, kij_count: None, skipped: Some(reason) },
                    None,
                ));
            }
            Err(err) => return Err(err),
        };
        let verdict = Verdict::from_coefficients(exp_tau.is_integral(), &label);
        let mut note = None;
        if cs.kij_count > 0 || request.cross_check {
            let naive = cs.naive()?;
            let truth = naive.mul(&exp_tau)?;
            if request.cross_check {
                let direct = cs.true_map_direct()?;
                if direct != truth {
                    return Err(Error::Internal(format!("true map factorization fails at {label}")));
                }
                if verdict.is_pass() && naive.is_integral().passed {
                    if let Some(w) = direct.is_integral().witness {
                        return Err(Error::Internal(format!(
                            "integral factors but non-integral true map at {label}: {w:?}"
                        )));
                    }
                }
            }
            if let Some(w) = truth.is_nonnegative().witness {
                note = Some(format!(
                    "true map at {label} has a negative coefficient {} at {:?}",
                    w.coefficient, w.exponent
                ));
            }
        }
        Ok((
            IndexVerdict { index: label.clone(), verdict },
            ConeBound {
                index: label,
                dprime: Some(fmt_bound(dprime)),
                count: Some(count),
                kij_count: Some(cs.kij_count),
                skipped: None,
            },
            note,
        ))
    });
    let mut per = Vec::new();
    let mut cones = Vec::new();
    let mut notes = Vec::new();
    for o in outcomes {
        let (v, c, n) = o?;
        per.push(v);
        cones.push(c);
        notes.extend(n);
    }
    Ok((CheckResult { check: CheckKind::TrueIntegrality, verdict: Verdict::combine(&per), per_index: per }, cones, notes))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

impl fmt::Display for BatchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked: {} passed, {} failed, {} errors", self.total, self.passed, self.failed, self.errors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub format_version: u32,
    pub reports: Vec<CheckReport>,
    pub summary: BatchSummary,
}

impl BatchReport {
    pub fn from_reports(reports: Vec<CheckReport>) -> Self {
        let mut summary = BatchSummary { total: reports.len(), ..BatchSummary::default() };
        for r in &reports {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Error => summary.errors += 1,
            }
        }
        BatchReport { format_version: FORMAT_VERSION, reports, summary }
    }
}

/// Runs requests concurrently on at most `workers` threads, keeping input
/// order.
pub fn run_batch(requests: &[CheckRequest], workers: Option<usize>, exec: Execution) -> BatchReport {
    let reports = par::with_workers(workers, || par::map(exec, requests, run_check));
    BatchReport::from_reports(reports)
}

/// Whether a witness recomputes to the same coefficient from scratch.
pub fn recompute_witness(request: &CheckRequest, check: CheckKind, report: &CheckReport) -> Result<bool> {
    let Some(CheckResult { verdict: Verdict::Fail { witness }, .. }) = report.check(check) else {
        return Ok(true);
    };
    let (Some(index), Some(exponent), Some(coefficient)) = (&witness.index, &witness.exponent, &witness.coefficient)
    else {
        return Ok(true);
    };
    let config = lattice::normalize_to_span(&request.config)?.config;
    let ij = config
        .indices()
        .into_iter()
        .find(|ij| &ij.to_string() == index)
        .ok_or_else(|| Error::Internal(format!("unknown index {index}")))?;
    let bounds = report.bounds.as_ref().ok_or_else(|| Error::Internal("no bounds recorded".into()))?;
    let parse = |s: &str| -> Result<Rational64> {
        s.parse::<Rational64>().map_err(|_| Error::Internal(format!("bad bound {s}")))
    };
    let d = parse(&bounds.d)?;
    let series = match check {
        CheckKind::NaiveIntegrality => crate::mirrormap::naive_map(&config, ij, d)?,
        CheckKind::LogPositivity => crate::series::GradedSeries::divide_by_unit(
            &crate::mirrormap::phi_ij(&config, ij, d)?,
            &crate::mirrormap::phi0(&config, d)?,
        )?,
        CheckKind::TrueIntegrality => {
            let cone = bounds
                .cones
                .iter()
                .find(|c| &c.index == index)
                .and_then(|c| c.dprime.as_deref())
                .ok_or_else(|| Error::Internal("no d' recorded".into()))?;
            crate::mirrormap::exp_tau_over_phi0(&config, ij, parse(cone)?)?
        }
        _ => return Ok(true),
    };
    Ok(crate::exactmath::format_rational(&series.coefficient(exponent)) == *coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirrormap::quintic_config;

    fn cfg(vs: &[&[i64]]) -> VectorConfig {
        VectorConfig::single_group(vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn quintic_all_checks_pass() {
        let report = run_check(&CheckRequest::new(quintic_config(), 6));
        assert_eq!(report.status, Status::Pass, "{report:#?}");
        assert_eq!(report.bounds.as_ref().unwrap().d, "25");
        assert_eq!(report.bounds.as_ref().unwrap().count, 6);
        assert_eq!(report.free_rank, Some(1));
        assert_eq!(report.checks.len(), 7);
        assert!(report.checks.iter().all(|c| c.verdict.is_pass()));
    }

    #[test]
    fn two_d_example_reports_negative_true_coefficient() {
        let c = cfg(&[&[0, 1], &[1, 1], &[0, -1], &[-1, 1]]);
        let req = CheckRequest::new(c, 20).with_checks(CheckKind::CONJECTURES);
        let report = run_check(&req);
        assert_eq!(report.status, Status::Pass, "{report:#?}");
        assert!(report.notes.iter().any(|n| n.contains("(1,1)") && n.contains("-1 at [-2, 1, 0, 1]")), "{:?}", report.notes);
        let cones = &report.bounds.as_ref().unwrap().cones;
        assert!(cones[0].kij_count.unwrap() > 0);
        assert!(cones[1..].iter().all(|c| c.kij_count == Some(0)));
    }

    #[test]
    fn non_fano_control() {
        let req = CheckRequest::new(cfg(&[&[1], &[-2]]), 10);
        let report = run_check(&req);
        assert_eq!(report.fano, Some(false));
        assert!(report.check(CheckKind::Fano).unwrap().verdict.is_fail());
        assert!(!report.warnings.is_empty());
        assert_eq!(report.status, Status::Fail);
        assert!(report.check(CheckKind::DelaygueEquivalence).unwrap().verdict.is_pass());
    }

    #[test]
    fn assumption_failure_is_structured() {
        let report = run_check(&CheckRequest::new(cfg(&[&[1], &[2]]), 5));
        assert_eq!(report.status, Status::Error);
        assert!(report.error.unwrap().contains("interior"));
    }

    #[test]
    fn explicit_bounds_and_cross_check() {
        let c = cfg(&[&[0, 1], &[1, 1], &[0, -1], &[-1, 1]]);
        let mut req = CheckRequest::new(c, 1).with_checks(CheckKind::CONJECTURES);
        req.d = Some(Rational64::from_integer(4));
        req.dprime = Some(Rational64::from_integer(9));
        req.cross_check = true;
        let report = run_check(&req);
        assert_eq!(report.status, Status::Pass, "{report:#?}");
        let b = report.bounds.unwrap();
        assert_eq!(b.mode, BoundMode::Explicit);
        assert_eq!(b.d, "4");
        assert!(b.cones.iter().all(|c| c.dprime.as_deref() == Some("9")));
    }

    #[test]
    fn batch_isolates_failures_and_keeps_order() {
        let reqs = vec![
            CheckRequest::new(quintic_config(), 3).with_label("a"),
            CheckRequest::new(cfg(&[&[1], &[2]]), 3).with_label("b"),
            CheckRequest::new(cfg(&[&[1], &[-1]]), 3).with_label("c"),
        ];
        let batch = run_batch(&reqs, Some(2), Execution::Parallel);
        let labels: Vec<_> = batch.reports.iter().map(|r| r.label.clone().unwrap()).collect();
        assert_eq!(labels, ["a", "b", "c"]);
        assert_eq!(batch.summary, BatchSummary { total: 3, passed: 2, failed: 0, errors: 1 });
        assert_eq!(run_batch(&[], None, Execution::Parallel).reports.len(), 0);
    }

    #[test]
    fn check_names_roundtrip() {
        for c in CheckKind::ALL {
            assert_eq!(c.name().parse::<CheckKind>().unwrap(), c);
        }
        assert!("bogus".parse::<CheckKind>().is_err());
    }
}
