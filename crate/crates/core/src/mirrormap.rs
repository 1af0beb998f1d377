//! The hypergeometric-type series attached to a vector configuration:
//! `phi_0`, `phi_ij`, `tau_ij`, the naive map `exp(phi_ij / phi_0)` and the
//! true map `exp((phi_ij + tau_ij) / phi_0)`.
//!
//! Naive-side series are graded by the all-ones weight on `K_0`. Everything
//! touching `tau_ij` lives on `K_0 + K_ij` and is graded by `2 * 1 - 1_ij`,
//! including the copies of `phi_0` and `phi_ij` it is combined with, so every
//! coefficient up to the bound is fully determined.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{self, Rational};
use crate::lattice::{self, FlatIndex, KernelLattice, VectorConfig};
use crate::monoid::{Monoid, MonoidElementSet, WeightFunctional};
use crate::par::{self, Execution};
use crate::series::{ConeTag, GradedSeries, UnivariateSeries};

/// `prod_i comb(k_i.)` over the groups of `config`.
fn comb_product(config: &VectorConfig, k: &[i64]) -> BigInt {
    (0..config.num_groups()).fold(BigInt::one(), |acc, i| {
        acc * exactmath::comb_nonneg(k[config.group_range(i)].iter().map(|&v| v as u64))
    })
}

/// The `tau` coefficient at `k in K_ij`: the group holding `slot` uses the
/// extended multinomial.
fn comb_product_extended(config: &VectorConfig, slot: usize, k: &[i64]) -> Rational {
    let mut acc = Rational::one();
    for i in 0..config.num_groups() {
        let range = config.group_range(i);
        if range.contains(&slot) {
            acc *= exactmath::comb_extended_unchecked(&k[range.clone()], slot - range.start);
        } else {
            acc *= Rational::from_integer(exactmath::comb_nonneg(k[range].iter().map(|&v| v as u64)));
        }
    }
    acc
}

/// `H(sum_j k_ij) - H(k_ij)` for the group holding `slot`.
fn harmonic_factor(config: &VectorConfig, slot: usize, k: &[i64]) -> Rational {
    let group = config.indices()[slot].group;
    let total: i64 = k[config.group_range(group)].iter().sum();
    exactmath::harmonic_diff(total as u64, k[slot] as u64)
}

fn phi0_on(config: &VectorConfig, set: &MonoidElementSet, tag: ConeTag) -> GradedSeries {
    GradedSeries::from_terms(
        set.elements.iter().map(|k| (k.clone(), Rational::from_integer(comb_product(config, k)))),
        set.weight.clone(),
        set.bound,
        tag,
    )
}

fn phi_on(config: &VectorConfig, set: &MonoidElementSet, slot: usize, tag: ConeTag) -> GradedSeries {
    GradedSeries::from_terms(
        set.elements.iter().map(|k| {
            let c = Rational::from_integer(comb_product(config, k)) * harmonic_factor(config, slot, k);
            (k.clone(), c)
        }),
        set.weight.clone(),
        set.bound,
        tag,
    )
}

fn tau_on(config: &VectorConfig, set: &MonoidElementSet, slot: usize) -> GradedSeries {
    GradedSeries::from_terms(
        set.elements.iter().map(|k| (k.clone(), comb_product_extended(config, slot, k))),
        set.weight.clone(),
        set.bound,
        ConeTag::Cone(slot),
    )
}

fn require_assumption(config: &VectorConfig) -> Result<KernelLattice> {
    let report = lattice::validate_assumption(config)?;
    if let Some(reason) = report.failure_reason() {
        return Err(Error::Assumption(reason));
    }
    lattice::kernel_basis(config)
}

/// The series living on `K_0 + K_ij` under the weight `2 * 1 - 1_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeSeries {
    pub slot: usize,
    pub dprime: Rational64,
    pub phi0: GradedSeries,
    pub phi: GradedSeries,
    pub tau: GradedSeries,
    /// Number of elements of `K_ij` up to `dprime`.
    pub kij_count: usize,
    /// Number of elements of `K_0` up to `dprime` in this grading.
    pub k0_count: usize,
}

impl ConeSeries {
    pub fn build(config: &VectorConfig, kernel: &KernelLattice, ij: FlatIndex, dprime: Rational64) -> Result<Self> {
        config.require_nonzero(ij)?;
        let slot = config.flat(ij);
        let weight = WeightFunctional::cone(config.len(), slot);
        let k0 = Monoid::k0(kernel).with_weight(weight).enumerate(dprime)?;
        let kij = Monoid::kij(kernel, config, ij)?.enumerate(dprime)?;
        Ok(ConeSeries {
            slot,
            dprime,
            phi0: phi0_on(config, &k0, ConeTag::Cone(slot)),
            phi: phi_on(config, &k0, slot, ConeTag::Cone(slot)),
            tau: tau_on(config, &kij, slot),
            kij_count: kij.len(),
            k0_count: k0.len(),
        })
    }

    /// `exp(tau / phi_0)`
    pub fn exp_tau_over_phi0(&self) -> Result<GradedSeries> {
        GradedSeries::divide_by_unit(&self.tau, &self.phi0)?.exp()
    }

    /// `exp(phi / phi_0)` in this grading.
    pub fn naive(&self) -> Result<GradedSeries> {
        GradedSeries::divide_by_unit(&self.phi, &self.phi0)?.exp()
    }

    /// `psi^n * exp(tau / phi_0)`
    pub fn true_map(&self) -> Result<GradedSeries> {
        self.naive()?.mul(&self.exp_tau_over_phi0()?)
    }

    /// `exp((phi + tau) / phi_0)`, computed without factorizing.
    pub fn true_map_direct(&self) -> Result<GradedSeries> {
        GradedSeries::divide_by_unit(&self.phi.add(&self.tau)?, &self.phi0)?.exp()
    }
}

/// `phi_0` on `K_0` up to total weight `d`.
pub fn phi0(config: &VectorConfig, d: Rational64) -> Result<GradedSeries> {
    let kernel = require_assumption(config)?;
    let set = Monoid::k0(&kernel).enumerate(d)?;
    Ok(phi0_on(config, &set, ConeTag::K0))
}

pub fn phi_ij(config: &VectorConfig, ij: FlatIndex, d: Rational64) -> Result<GradedSeries> {
    config.check_index(ij)?;
    let kernel = require_assumption(config)?;
    let set = Monoid::k0(&kernel).enumerate(d)?;
    Ok(phi_on(config, &set, config.flat(ij), ConeTag::K0))
}

/// `tau_ij` on `K_ij` up to weight `dprime` under `2 * 1 - 1_ij`.
pub fn tau_ij(config: &VectorConfig, ij: FlatIndex, dprime: Rational64) -> Result<GradedSeries> {
    config.check_index(ij)?;
    config.require_nonzero(ij)?;
    let kernel = require_assumption(config)?;
    let set = Monoid::kij(&kernel, config, ij)?.enumerate(dprime)?;
    Ok(tau_on(config, &set, config.flat(ij)))
}

/// `psi^n_ij = exp(phi_ij / phi_0)` up to total weight `d`.
pub fn naive_map(config: &VectorConfig, ij: FlatIndex, d: Rational64) -> Result<GradedSeries> {
    let p0 = phi0(config, d)?;
    let p = phi_ij(config, ij, d)?;
    GradedSeries::divide_by_unit(&p, &p0)?.exp()
}

pub fn exp_tau_over_phi0(config: &VectorConfig, ij: FlatIndex, dprime: Rational64) -> Result<GradedSeries> {
    config.check_index(ij)?;
    let kernel = require_assumption(config)?;
    ConeSeries::build(config, &kernel, ij, dprime)?.exp_tau_over_phi0()
}

/// `psi^t_ij` up to weight `dprime` under `2 * 1 - 1_ij`, via the
/// factorization `psi^n * exp(tau / phi_0)`.
pub fn true_map(config: &VectorConfig, ij: FlatIndex, dprime: Rational64) -> Result<GradedSeries> {
    config.check_index(ij)?;
    let kernel = require_assumption(config)?;
    ConeSeries::build(config, &kernel, ij, dprime)?.true_map()
}

pub fn true_map_direct(config: &VectorConfig, ij: FlatIndex, dprime: Rational64) -> Result<GradedSeries> {
    config.check_index(ij)?;
    let kernel = require_assumption(config)?;
    ConeSeries::build(config, &kernel, ij, dprime)?.true_map_direct()
}

/// Collapses `z^k -> t^(g.k)`, summing coefficients of equal degree.
pub fn diagonal_substitution(series: &GradedSeries, grading: &[i64]) -> Result<UnivariateSeries> {
    let mut coeffs: Vec<Rational> = Vec::new();
    for (k, c) in series.ordered_terms() {
        if grading.len() != k.len() {
            return Err(Error::DimensionMismatch { expected: k.len(), got: grading.len() });
        }
        let degree = lattice::dot(grading, k);
        if degree < 0 {
            return Err(Error::NegativeDegree { exponent: k.clone(), degree });
        }
        let degree = degree as usize;
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, Rational::zero());
        }
        coeffs[degree] += c;
    }
    if coeffs.is_empty() {
        coeffs.push(Rational::zero());
    }
    Ok(UnivariateSeries::new(coeffs))
}

pub fn quintic_config() -> VectorConfig {
    VectorConfig::single_group(vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
        vec![0, 0, 0, 1],
        vec![-1, -1, -1, -1],
    ])
    .expect("quintic configuration is well formed")
}

/// The quintic series in the single variable `z = z^(1,1,1,1,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticSeries {
    pub phi0: UnivariateSeries,
    pub log_psi: UnivariateSeries,
    pub psi: UnivariateSeries,
    /// `q^5 psi(q^5)^5`
    pub q: UnivariateSeries,
}

/// Quintic series through `z^(terms - 1)`.
pub fn quintic_q(terms: usize) -> Result<QuinticSeries> {
    let terms = terms.max(1);
    let config = quintic_config();
    let d = Rational64::from_integer(5 * (terms as i64 - 1));
    let ij = FlatIndex::new(0, 0);
    let p0 = phi0(&config, d)?;
    let log_psi = GradedSeries::divide_by_unit(&phi_ij(&config, ij, d)?, &p0)?;
    let psi = log_psi.exp()?;
    let collapse = |s: &GradedSeries| -> Result<UnivariateSeries> {
        let mut u = diagonal_substitution(s, &[1, 0, 0, 0, 0])?;
        u.coeffs.resize(terms, Rational::zero());
        Ok(u)
    };
    let psi_u = collapse(&psi)?;
    let q = psi_u.pow(5).substitute_power(5, 5, 5 * terms + 1);
    Ok(QuinticSeries { phi0: collapse(&p0)?, log_psi: collapse(&log_psi)?, psi: psi_u, q })
}

/// Per-slot results on the `K_0 + K_ij` side.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeBundle {
    pub ij: FlatIndex,
    pub dprime: Rational64,
    pub tau: GradedSeries,
    pub exp_tau_over_phi0: GradedSeries,
    pub kij_count: usize,
    pub k0_count: usize,
}

/// All series of a configuration at fixed bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorMapBundle {
    pub config: VectorConfig,
    pub d: Rational64,
    pub k0_count: usize,
    pub phi0: GradedSeries,
    pub phi: Vec<GradedSeries>,
    /// `phi_ij / phi_0 = log psi^n_ij`
    pub log_naive: Vec<GradedSeries>,
    pub naive: Vec<GradedSeries>,
    /// `None` where `v_ij = 0` or no `dprime` was requested.
    pub cone: Vec<Option<ConeBundle>>,
}

/// Which series a bundle should compute.
#[derive(Debug, Clone, Default)]
pub struct BundleRequest {
    pub d: Rational64,
    /// Per flat slot; `None` skips the cone side for that slot.
    pub dprime: Vec<Option<Rational64>>,
    pub exec: Execution,
}

impl MirrorMapBundle {
    pub fn build(config: &VectorConfig, request: &BundleRequest) -> Result<Self> {
        let kernel = require_assumption(config)?;
        let set = Monoid::k0(&kernel).enumerate(request.d)?;
        let phi0 = phi0_on(config, &set, ConeTag::K0);
        let slots: Vec<usize> = (0..config.len()).collect();
        let naive_side = par::map(request.exec, &slots, |&slot| -> Result<[GradedSeries; 3]> {
            let phi = phi_on(config, &set, slot, ConeTag::K0);
            let log = GradedSeries::divide_by_unit(&phi, &phi0)?;
            let naive = log.exp()?;
            Ok([phi, log, naive])
        });
        let indices = config.indices();
        let cone = par::map(request.exec, &slots, |&slot| -> Result<Option<ConeBundle>> {
            let ij = indices[slot];
            let Some(dprime) = request.dprime.get(slot).copied().flatten() else {
                return Ok(None);
            };
            if lattice::is_zero_vec(config.vector(ij)?) {
                return Ok(None);
            }
            let cs = ConeSeries::build(config, &kernel, ij, dprime)?;
            Ok(Some(ConeBundle {
                ij,
                dprime,
                exp_tau_over_phi0: cs.exp_tau_over_phi0()?,
                kij_count: cs.kij_count,
                k0_count: cs.k0_count,
                tau: cs.tau,
            }))
        });
        let (mut phi, mut log_naive, mut naive) = (Vec::new(), Vec::new(), Vec::new());
        for item in naive_side {
            let [p, l, n] = item?;
            phi.push(p);
            log_naive.push(l);
            naive.push(n);
        }
        Ok(MirrorMapBundle {
            config: config.clone(),
            d: request.d,
            k0_count: set.len(),
            phi0,
            phi,
            log_naive,
            naive,
            cone: cone.into_iter().collect::<Result<_>>()?,
        })
    }
}
