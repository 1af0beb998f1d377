//! Translation to Delaygue's hypergeometric setup when `K_0` is free, his
//! `Delta_{e,f}` criterion, and the rank-one positivity sequences.
//!
//! With `F : N^r -> K_0` given by rows `f_ij` and `e_i = sum_j f_ij`, the
//! series `F_{e,f} = sum_n prod_i (e_i.n)! / prod_ij (f_ij.n)! w^n` maps to
//! `phi_0` under `iota(w^n) = z^(F n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{self, Rational};
use crate::lattice::{self, FlatIndex, VectorConfig};
use crate::mirrormap;
use crate::monoid::{FreeMonoid, WeightFunctional};
use crate::par::{self, Execution};
use crate::polytope;
use crate::series::{ConeTag, GradedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelaygueData {
    pub r: usize,
    /// Row `f_ij` of `F` for every flat slot.
    pub f: Vec<Vec<i64>>,
    /// `e_i = sum_j f_ij`, one per group.
    pub e: Vec<Vec<i64>>,
    pub group_sizes: Vec<usize>,
}

impl DelaygueData {
    /// Builds the data from rows `f_ij` grouped by `group_sizes`.
    pub fn from_rows(f: Vec<Vec<i64>>, group_sizes: Vec<usize>) -> Result<Self> {
        let r = f.first().map_or(0, Vec::len);
        if f.iter().any(|row| row.len() != r) {
            return Err(Error::MalformedConfig("rows of F have different lengths".into()));
        }
        if f.iter().flatten().any(|&v| v < 0) {
            return Err(Error::Domain("rows of F must be nonnegative".into()));
        }
        if group_sizes.iter().sum::<usize>() != f.len() {
            return Err(Error::DimensionMismatch { expected: f.len(), got: group_sizes.iter().sum() });
        }
        let mut e = Vec::with_capacity(group_sizes.len());
        let mut start = 0;
        for &q in &group_sizes {
            let mut sum = vec![0; r];
            for row in &f[start..start + q] {
                for (s, v) in sum.iter_mut().zip(row) {
                    *s += v;
                }
            }
            e.push(sum);
            start += q;
        }
        Ok(DelaygueData { r, f, e, group_sizes })
    }

    fn group_of(&self, slot: usize) -> usize {
        let mut start = 0;
        for (i, &q) in self.group_sizes.iter().enumerate() {
            if slot < start + q {
                return i;
            }
            start += q;
        }
        panic!("slot {slot} out of range")
    }

    /// `n -> sum_ij f_ij.n`, the all-ones weight pulled back along `F`.
    pub fn weight(&self) -> WeightFunctional {
        WeightFunctional::ones(self.f.len()).pull_back(&self.f)
    }

    /// `F n`
    pub fn apply(&self, n: &[i64]) -> Vec<i64> {
        self.f.iter().map(|row| lattice::dot(row, n)).collect()
    }

    /// All `n in N^r` with `weight(n) <= bound`.
    fn orthant_points(&self, bound: Rational64) -> Result<Vec<Vec<i64>>> {
        let w = self.weight();
        if w.numerators().iter().any(|&c| c <= 0) {
            return Err(Error::Domain("every column of F must be nonzero".into()));
        }
        let limit = w.scaled_bound(bound);
        let mut out = Vec::new();
        let mut n = Vec::with_capacity(self.r);
        fn walk(w: &[i64], left: i64, n: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if n.len() == w.len() {
                out.push(n.clone());
                return;
            }
            let c = w[n.len()];
            for v in 0..=left / c {
                n.push(v);
                walk(w, left - v * c, n, out);
                n.pop();
            }
        }
        if limit >= 0 {
            walk(w.numerators(), limit, &mut n, &mut out);
        }
        Ok(out)
    }

    /// `a_n = prod_i (e_i.n)! / prod_ij (f_ij.n)!`, as a product of
    /// multinomials.
    fn a(&self, n: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        let mut start = 0;
        for &q in &self.group_sizes {
            acc *= exactmath::comb_nonneg(self.f[start..start + q].iter().map(|row| lattice::dot(row, n) as u64));
            start += q;
        }
        acc
    }
}

/// Reads off `f_ij` and `e_i` from a free monoid isomorphism and checks
/// `iota(F_{e,f}) = phi_0` and `iota(G_{e_i} - G_{f_ij}) = phi_ij` up to the
/// bound of the isomorphism.
pub fn translate(config: &VectorConfig, iso: &FreeMonoid) -> Result<DelaygueData> {
    let data = DelaygueData::from_rows(iso.matrix.clone(), config.group_sizes())?;
    let d = iso.bound;
    let direct = mirrormap::phi0(config, d)?;
    let via = iota(&data, &f_ef(&data, d)?, d);
    if direct != via {
        return Err(Error::Internal("F is not a monoid isomorphism: phi_0 differs".into()));
    }
    for (slot, ij) in config.indices().into_iter().enumerate() {
        let e_i = &data.e[ij.group];
        let g = g_lef(&data, e_i, d)?.sub(&g_lef(&data, &data.f[slot], d)?)?;
        if mirrormap::phi_ij(config, ij, d)? != iota(&data, &g, d) {
            return Err(Error::Internal(format!("F is not a monoid isomorphism: phi at {ij} differs")));
        }
    }
    Ok(data)
}

/// `iota(w^n) = z^(F n)`, landing in the all-ones grading on `Z^I`.
pub fn iota(data: &DelaygueData, s: &GradedSeries, bound: Rational64) -> GradedSeries {
    s.map_monomials(|n| data.apply(n), WeightFunctional::ones(data.f.len()), bound, ConeTag::K0)
}

pub fn f_ef(data: &DelaygueData, bound: Rational64) -> Result<GradedSeries> {
    let pts = data.orthant_points(bound)?;
    Ok(GradedSeries::from_terms(
        pts.into_iter().map(|n| {
            let c = Rational::from_integer(data.a(&n));
            (n, c)
        }),
        data.weight(),
        bound,
        ConeTag::Orthant,
    ))
}

/// `G_{L,e,f} = sum_n a_n H(L.n) w^n`
pub fn g_lef(data: &DelaygueData, l: &[i64], bound: Rational64) -> Result<GradedSeries> {
    if l.len() != data.r {
        return Err(Error::DimensionMismatch { expected: data.r, got: l.len() });
    }
    if l.iter().any(|&v| v < 0) {
        return Err(Error::Domain("L must lie in N^r".into()));
    }
    let pts = data.orthant_points(bound)?;
    Ok(GradedSeries::from_terms(
        pts.into_iter().map(|n| {
            let c = Rational::from_integer(data.a(&n)) * exactmath::harmonic_u(lattice::dot(l, &n) as u64);
            (n, c)
        }),
        data.weight(),
        bound,
        ConeTag::Orthant,
    ))
}

/// `q_{L,e,f} = exp(G_{L,e,f} / F_{e,f})`
pub fn q_lef(data: &DelaygueData, l: &[i64], bound: Rational64) -> Result<GradedSeries> {
    GradedSeries::divide_by_unit(&g_lef(data, l, bound)?, &f_ef(data, bound)?)?.exp()
}

/// `iota(q_{e_i} / q_{f_ij})`, which should reproduce `psi^n_ij`.
pub fn naive_map_via_delaygue(data: &DelaygueData, slot: usize, bound: Rational64) -> Result<GradedSeries> {
    let i = data.group_of(slot);
    let num = q_lef(data, &data.e[i], bound)?;
    let den = q_lef(data, &data.f[slot], bound)?;
    Ok(iota(data, &GradedSeries::divide_by_unit(&num, &den)?, bound))
}

fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

/// `Delta_{e,f}(x)`, evaluated both as `sum_i floor(sum_j {f_ij.x})` and as
/// `sum_i floor(e_i.x) - sum_ij floor(f_ij.x)`.
pub fn delta_ef(data: &DelaygueData, x: &[Rational64]) -> Result<i64> {
    if x.len() != data.r {
        return Err(Error::DimensionMismatch { expected: data.r, got: x.len() });
    }
    if x.iter().any(|v| v.is_negative() || *v >= Rational64::one()) {
        return Err(Error::Domain("x must lie in [0,1)^r".into()));
    }
    let dot = |row: &[i64]| -> Rational64 { row.iter().zip(x).map(|(&a, b)| b * a).sum() };
    let mut fractional = 0;
    let mut difference = 0;
    let mut slot = 0;
    for (i, &q) in data.group_sizes.iter().enumerate() {
        let mut frac_sum = Rational64::zero();
        for row in &data.f[slot..slot + q] {
            let v = dot(row);
            frac_sum += v.fract();
            difference -= v.floor().to_integer();
        }
        fractional += frac_sum.floor().to_integer();
        difference += dot(&data.e[i]).floor().to_integer();
        slot += q;
    }
    if fractional != difference {
        return Err(Error::Internal(format!(
            "Delta forms disagree at {x:?}: {fractional} vs {difference}"
        )));
    }
    Ok(fractional)
}

/// `Delta` at `x = a / q` in integer arithmetic, with whether some
/// `e_i.x >= 1`.
fn delta_on_grid(data: &DelaygueData, a: &[i64], q: i64) -> (i64, bool) {
    let mut delta = 0;
    let mut slot = 0;
    let mut active = false;
    for (i, &size) in data.group_sizes.iter().enumerate() {
        let frac: i64 = data.f[slot..slot + size].iter().map(|row| lattice::dot(row, a).rem_euclid(q)).sum();
        delta += floor_div(frac, q);
        active |= lattice::dot(&data.e[i], a) >= q;
        slot += size;
    }
    (delta, active)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CriterionVerdict {
    /// No violation found. `certificate` is set when the check was
    /// exhaustive (rank one).
    Holds { certificate: bool, denominator: i64 },
    /// `Delta(x) < 1` although some `e_i.x >= 1`; exact.
    Violated { x: Vec<String>, delta: i64 },
}

impl CriterionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CriterionVerdict::Holds { .. })
    }

    pub fn describe(&self) -> String {
        match self {
            CriterionVerdict::Holds { certificate: true, .. } => "holds (certificate)".into(),
            CriterionVerdict::Holds { denominator, .. } => format!("holds on sample (denominator {denominator})"),
            CriterionVerdict::Violated { x, delta } => format!("violated at x = ({}) with Delta = {delta}", x.join(", ")),
        }
    }
}

/// Grid points `q^r` cost; choose the finest of a fixed ladder within budget.
pub fn default_sampling_denominator(r: usize, budget: u64) -> i64 {
    const LADDER: [i64; 8] = [27720, 5040, 2520, 840, 360, 120, 60, 12];
    for q in LADDER {
        if (q as u64).checked_pow(r as u32).is_some_and(|c| c <= budget) {
            return q;
        }
    }
    *LADDER.last().unwrap()
}

pub const DEFAULT_SAMPLING_BUDGET: u64 = 20_000_000;

/// Evaluates the criterion on every `x = a / q` in `[0,1)^r`; for `r = 1`
/// also at every breakpoint `c/f_ij`, `c/e_i` and the midpoints between
/// consecutive breakpoints, which is exhaustive since `Delta` is a step
/// function with those jumps.
pub fn criterion_check(data: &DelaygueData, q: i64, exec: Execution) -> Result<CriterionVerdict> {
    if q < 1 {
        return Err(Error::Domain("sampling denominator must be at least 1".into()));
    }
    let r = data.r as u32;
    let total = (q as u64).checked_pow(r).ok_or(Error::Overflow("sampling grid"))?;
    let hit = par::find_first(exec, total, |idx| {
        let mut a = vec![0i64; data.r];
        let mut rest = idx;
        for slot in a.iter_mut().rev() {
            *slot = (rest % q as u64) as i64;
            rest /= q as u64;
        }
        let (delta, active) = delta_on_grid(data, &a, q);
        (active && delta < 1).then_some((a, delta))
    });
    if let Some((_, (a, delta))) = hit {
        let x = a.iter().map(|&v| exactmath::format_rational(&Rational::new(v.into(), q.into()))).collect();
        return Ok(CriterionVerdict::Violated { x, delta });
    }
    if data.r != 1 {
        return Ok(CriterionVerdict::Holds { certificate: false, denominator: q });
    }
    let mut points: Vec<Rational64> = Vec::new();
    for m in data.f.iter().chain(&data.e).map(|row| row[0]).filter(|&m| m > 0) {
        points.extend((0..m).map(|c| Rational64::new(c, m)));
    }
    points.push(Rational64::zero());
    points.sort();
    points.dedup();
    let mut mids: Vec<Rational64> = points.windows(2).map(|w| (w[0] + w[1]) / 2).collect();
    if let Some(&last) = points.last() {
        mids.push((last + 1) / 2);
    }
    points.extend(mids);
    points.sort();
    for x in points {
        let delta = delta_ef(data, &[x])?;
        let active = data.e.iter().any(|e| x * e[0] >= Rational64::one());
        if active && delta < 1 {
            return Ok(CriterionVerdict::Violated { x: vec![x.to_string()], delta });
        }
    }
    Ok(CriterionVerdict::Holds { certificate: true, denominator: q })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Agree,
    /// Fano and the criterion disagree in a way sampling cannot explain.
    Falsified,
    /// Not Fano, yet no violation at the sampled resolution (`r >= 2`).
    SamplingInconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub fano: bool,
    pub criterion: CriterionVerdict,
    pub agreement: Agreement,
}

/// Compares the Fano property with Delaygue's criterion.
pub fn equivalence_test(config: &VectorConfig, data: &DelaygueData, q: i64, exec: Execution) -> Result<EquivalenceVerdict> {
    let fano = polytope::is_fano(config)?;
    let criterion = criterion_check(data, q, exec)?;
    let agreement = match (fano, criterion.holds()) {
        (a, b) if a == b => Agreement::Agree,
        (false, true) if data.r >= 2 => Agreement::SamplingInconclusive,
        _ => Agreement::Falsified,
    };
    Ok(EquivalenceVerdict { fano, criterion, agreement })
}

/// Rank-one data: `f_ij` and `e_i = sum_j f_ij` are positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1Data {
    pub f: Vec<Vec<i64>>,
    pub target: FlatIndex,
}

impl Rank1Data {
    pub fn new(f: Vec<Vec<i64>>, target: FlatIndex) -> Result<Self> {
        if f.iter().flatten().any(|&v| v <= 0) {
            return Err(Error::Domain("rank-one f_ij must be positive".into()));
        }
        if f.get(target.group).and_then(|g| g.get(target.member)).is_none() {
            return Err(Error::IndexOutOfRange(target));
        }
        Ok(Rank1Data { f, target })
    }

    pub fn from_delaygue(data: &DelaygueData, target: FlatIndex) -> Result<Self> {
        if data.r != 1 {
            return Err(Error::Domain(format!("rank-one data needs r = 1, got {}", data.r)));
        }
        let mut groups = Vec::new();
        let mut start = 0;
        for &q in &data.group_sizes {
            groups.push(data.f[start..start + q].iter().map(|row| row[0]).collect());
            start += q;
        }
        Self::new(groups, target)
    }

    pub fn e(&self) -> Vec<i64> {
        self.f.iter().map(|g| g.iter().sum()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Sequences {
    /// `a_0 ..= a_nmax`
    pub a: Vec<BigInt>,
    /// `c_0 ..= c_nmax`, with `c_0 = 0`.
    pub c: Vec<Rational>,
}

pub fn rank1_sequences(data: &Rank1Data, n_max: usize) -> Rank1Sequences {
    let e = data.e();
    let (ti, tj) = (data.target.group, data.target.member);
    let mut a = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max as u64 {
        a.push(
            data.f
                .iter()
                .fold(BigInt::one(), |acc, g| acc * exactmath::comb_nonneg(g.iter().map(|&v| v as u64 * n))),
        );
        c.push(exactmath::harmonic_diff(n * e[ti] as u64, n * data.f[ti][tj] as u64));
    }
    Rank1Sequences { a, c }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1Verdict {
    pub a0_is_one: bool,
    pub a1_positive: bool,
    /// First `n` with `a_n^2 > a_(n-1) a_(n+1)`.
    pub log_convex_failure: Option<usize>,
    /// First `n` with `c_n < 0` or `c_n > c_(n+1)`.
    pub c_monotone_failure: Option<usize>,
}

impl Rank1Verdict {
    pub fn passed(&self) -> bool {
        self.a0_is_one && self.a1_positive && self.log_convex_failure.is_none() && self.c_monotone_failure.is_none()
    }
}

pub fn check_rank1_conditions(data: &Rank1Data, n_max: usize) -> Rank1Verdict {
    let s = rank1_sequences(data, n_max.max(1));
    let a = &s.a;
    let log_convex_failure = (1..n_max).find(|&n| &a[n] * &a[n] > &a[n - 1] * &a[n + 1]);
    let c_monotone_failure = (1..=n_max).find(|&n| s.c[n].is_negative() || (n < n_max && s.c[n] > s.c[n + 1]));
    Rank1Verdict {
        a0_is_one: a[0].is_one(),
        a1_positive: a[1].is_positive(),
        log_convex_failure,
        c_monotone_failure,
    }
}

/// A configuration whose kernel is spanned by the positive vector `f`
/// (flattened over groups): `V` is formed by the last `n - 1` rows of a
/// unimodular `U` with `U f = (1, 0, ..., 0)`.
pub fn rank1_config(f: &[Vec<i64>]) -> Result<VectorConfig> {
    let flat: Vec<i64> = f.iter().flatten().copied().collect();
    if flat.len() < 2 {
        return Err(Error::Domain("need at least two entries".into()));
    }
    let g = flat.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g != 1 {
        return Err(Error::Domain(format!("entries of f must be coprime, gcd is {g}")));
    }
    let column: Vec<Vec<i64>> = flat.iter().map(|&v| vec![v]).collect();
    let ech = lattice::hermite(&column)?;
    let rows = &ech.transform[1..];
    let mut groups = Vec::new();
    let mut slot = 0;
    for g in f {
        let mut vs = Vec::new();
        for _ in g {
            let v = rows
                .iter()
                .map(|row| row[slot].to_i64().ok_or(Error::Overflow("rank-one configuration")))
                .collect::<Result<Vec<i64>>>()?;
            vs.push(v);
            slot += 1;
        }
        groups.push(vs);
    }
    VectorConfig::new(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_basis;
    use crate::monoid::{free_monoid_iso, hilbert_bound};

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn quintic_data() -> DelaygueData {
        DelaygueData::from_rows(vec![vec![1]; 5], vec![5]).unwrap()
    }

    fn iso_for(config: &VectorConfig) -> FreeMonoid {
        let k = kernel_basis(config).unwrap();
        let b = hilbert_bound(&k).unwrap();
        free_monoid_iso(&k, b.max(Rational64::from_integer(10))).unwrap().unwrap()
    }

    #[test]
    fn quintic_translation() {
        let c = mirrormap::quintic_config();
        let data = translate(&c, &iso_for(&c)).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.f, vec![vec![1]; 5]);
        assert_eq!(data.e, vec![vec![5]]);
        let f = f_ef(&data, Rational64::from_integer(10)).unwrap();
        assert_eq!(f.coefficient(&[1]), Rational::from_integer(120.into()));
        assert!(g_lef(&data, &[0], Rational64::from_integer(10)).unwrap().is_empty());
        let psi = naive_map_via_delaygue(&data, 0, Rational64::from_integer(15)).unwrap();
        assert_eq!(psi.coefficient(&[1; 5]), Rational::from_integer(154.into()));
        assert_eq!(psi.coefficient(&[2; 5]), Rational::from_integer(155423.into()));
    }

    #[test]
    fn two_generator_translation() {
        let c = VectorConfig::single_group(vec![vec![1], vec![1], vec![-1]]).unwrap();
        let data = translate(&c, &iso_for(&c)).unwrap();
        assert_eq!(data.f, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(data.e, vec![vec![2, 2]]);
        let d = Rational64::from_integer(6);
        for ij in c.indices() {
            let direct = mirrormap::naive_map(&c, ij, d).unwrap();
            assert_eq!(naive_map_via_delaygue(&data, c.flat(ij), d).unwrap(), direct);
        }
        // iota on a basis monomial
        let w = GradedSeries::from_terms(vec![(vec![1, 0], Rational::one())], data.weight(), d, ConeTag::Orthant);
        assert_eq!(iota(&data, &w, d).coefficient(&[1, 0, 1]), Rational::one());
    }

    #[test]
    fn delta_examples() {
        let q = quintic_data();
        assert_eq!(delta_ef(&q, &[rat(1, 5)]).unwrap(), 1);
        assert_eq!(delta_ef(&q, &[rat(0, 1)]).unwrap(), 0);
        let bad = DelaygueData::from_rows(vec![vec![2], vec![1]], vec![2]).unwrap();
        assert_eq!(delta_ef(&bad, &[rat(1, 2)]).unwrap(), 0);
        assert!(delta_ef(&bad, &[rat(1, 1)]).is_err());
    }

    #[test]
    fn criterion_examples() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let v = criterion_check(&quintic_data(), 30, exec).unwrap();
            assert_eq!(v, CriterionVerdict::Holds { certificate: true, denominator: 30 });
            let bad = DelaygueData::from_rows(vec![vec![2], vec![1]], vec![2]).unwrap();
            assert_eq!(
                criterion_check(&bad, 2, exec).unwrap(),
                CriterionVerdict::Violated { x: vec!["1/2".into()], delta: 0 }
            );
            // The certificate catches what a coarse grid misses.
            assert!(!criterion_check(&bad, 1, exec).unwrap().holds());
            let trivial = DelaygueData::from_rows(vec![vec![1]], vec![1]).unwrap();
            assert!(criterion_check(&trivial, 7, exec).unwrap().holds());
        }
    }

    #[test]
    fn equivalence_examples() {
        let cases = [
            (mirrormap::quintic_config(), true),
            (VectorConfig::single_group(vec![vec![1], vec![-2]]).unwrap(), false),
            (VectorConfig::single_group(vec![vec![1], vec![1], vec![-1]]).unwrap(), true),
        ];
        for (c, fano) in cases {
            let data = translate(&c, &iso_for(&c)).unwrap();
            let v = equivalence_test(&c, &data, 60, Execution::Parallel).unwrap();
            assert_eq!(v.fano, fano);
            assert_eq!(v.agreement, Agreement::Agree);
        }
    }

    #[test]
    fn rank1_examples() {
        let quintic = Rank1Data::new(vec![vec![1; 5]], FlatIndex::new(0, 2)).unwrap();
        let s = rank1_sequences(&quintic, 2);
        assert_eq!(s.a, vec![BigInt::from(1), BigInt::from(120), BigInt::from(113400)]);
        assert_eq!(s.c[1], Rational::new(77.into(), 60.into()));
        assert!(check_rank1_conditions(&quintic, 50).passed());
        let f21 = Rank1Data::new(vec![vec![2, 1]], FlatIndex::new(0, 0)).unwrap();
        assert!(check_rank1_conditions(&f21, 50).passed());
        let degenerate = Rank1Data::new(vec![vec![3], vec![3]], FlatIndex::new(1, 0)).unwrap();
        let s = rank1_sequences(&degenerate, 10);
        assert!(s.c.iter().all(Zero::is_zero));
        assert!(check_rank1_conditions(&degenerate, 10).passed());
    }

    #[test]
    fn rank1_config_has_requested_kernel() {
        let f = vec![vec![2, 1], vec![3]];
        let c = rank1_config(&f).unwrap();
        let k = kernel_basis(&c).unwrap();
        assert_eq!(k.basis(), &[vec![2, 1, 3]]);
        assert!(lattice::spans_full_lattice(&c).unwrap());
        assert!(rank1_config(&[vec![2, 4]]).is_err());
    }
}
