//! Bounded enumeration of the monoids `K_0`, `K_ij` and `K_0 + K_ij`, weight
//! functionals, and detection of free monoids `K_0 = N^r`.
//!
//! Enumeration walks the kernel-lattice coordinates `x` of `k = x B`. At each
//! depth the admissible range of the next coordinate is bounded exactly by
//! linear programming over the remaining coordinates; the last coordinate is
//! an interval intersection.

use std::collections::HashSet;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::lattice::{self, FlatIndex, KernelLattice, VectorConfig};
use crate::simplex::{self, LpOutcome};

/// A rational linear functional on `Z^I`, stored as integer numerators over
/// a common positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightFunctional {
    numer: Vec<i64>,
    denom: i64,
}

impl WeightFunctional {
    pub fn from_integers(weights: Vec<i64>) -> Self {
        WeightFunctional { numer: weights, denom: 1 }
    }

    pub fn from_rationals(weights: &[Rational64]) -> Self {
        let denom = weights.iter().fold(1i64, |l, w| l.lcm(w.denom()));
        let numer = weights.iter().map(|w| w.numer() * (denom / w.denom())).collect();
        WeightFunctional { numer, denom }
    }

    /// The all-ones functional `k -> sum k`.
    pub fn ones(len: usize) -> Self {
        Self::from_integers(vec![1; len])
    }

    /// `2 * 1 - 1_ij`, the truncation weight on `K_0 + K_ij`.
    pub fn cone(len: usize, slot: usize) -> Self {
        let mut w = vec![2; len];
        w[slot] = 1;
        Self::from_integers(w)
    }

    /// `w_ij = 1/2`, all other entries 1: strictly positive on
    /// `K_0 u K_ij` for Fano data.
    pub fn half_at(len: usize, slot: usize) -> Self {
        let mut w = vec![2; len];
        w[slot] = 1;
        WeightFunctional { numer: w, denom: 2 }
    }

    pub fn len(&self) -> usize {
        self.numer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numer
    }

    /// `denom * w(k)`, an integer.
    pub fn scaled(&self, k: &[i64]) -> i64 {
        lattice::dot(&self.numer, k)
    }

    pub fn eval(&self, k: &[i64]) -> Rational64 {
        Rational64::new(self.scaled(k), self.denom)
    }

    /// Largest scaled weight not exceeding `bound`.
    pub fn scaled_bound(&self, bound: Rational64) -> i64 {
        (bound * self.denom).floor().to_integer()
    }

    /// Pull back along an integer matrix with rows `f_l` (one per entry of
    /// this functional): `n -> w(F n)`.
    pub fn pull_back(&self, rows: &[Vec<i64>]) -> WeightFunctional {
        let r = rows.first().map_or(0, Vec::len);
        let numer = (0..r).map(|c| rows.iter().zip(&self.numer).map(|(row, w)| row[c] * w).sum()).collect();
        WeightFunctional { numer, denom: self.denom }
    }
}

/// Which sign pattern the enumerated elements satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonoidKind {
    /// `k >= 0`
    K0,
    /// `k_slot < 0`, all other entries `>= 0`, group row sum `>= 0`.
    Negative { slot: usize, group: Range<usize> },
    /// `K_0 u K_ij`: entries off `slot` are `>= 0`, group row sum `>= 0`.
    Cone { slot: usize, group: Range<usize> },
}

impl MonoidKind {
    pub fn contains(&self, k: &[i64]) -> bool {
        match self {
            MonoidKind::K0 => k.iter().all(|&v| v >= 0),
            MonoidKind::Negative { slot, group } => {
                k[*slot] < 0 && off_slot_nonneg(k, *slot) && k[group.clone()].iter().sum::<i64>() >= 0
            }
            MonoidKind::Cone { slot, group } => {
                off_slot_nonneg(k, *slot) && k[group.clone()].iter().sum::<i64>() >= 0
            }
        }
    }
}

fn off_slot_nonneg(k: &[i64], slot: usize) -> bool {
    k.iter().enumerate().all(|(l, &v)| l == slot || v >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidElementSet {
    /// Sorted by (weight, lexicographic).
    pub elements: Vec<Vec<i64>>,
    pub bound: Rational64,
    pub weight: WeightFunctional,
    pub kind: MonoidKind,
}

impl MonoidElementSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        self.elements.iter().any(|e| e == k)
    }

    pub fn count_up_to(&self, bound: Rational64) -> usize {
        let s = self.weight.scaled_bound(bound);
        self.elements.iter().filter(|k| self.weight.scaled(k) <= s).count()
    }
}

/// The result of choosing a truncation bound from a precision request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChoice {
    pub bound: Rational64,
    pub count: usize,
}

/// A monoid inside a kernel lattice, ready to be enumerated.
#[derive(Debug, Clone)]
pub struct Monoid<'a> {
    kernel: &'a KernelLattice,
    kind: MonoidKind,
    weight: WeightFunctional,
}

impl<'a> Monoid<'a> {
    pub fn k0(kernel: &'a KernelLattice) -> Self {
        Monoid { kernel, kind: MonoidKind::K0, weight: WeightFunctional::ones(kernel.ambient()) }
    }

    /// `K_ij` under the weight `2 * 1 - 1_ij`.
    pub fn kij(kernel: &'a KernelLattice, config: &VectorConfig, ij: FlatIndex) -> Result<Self> {
        config.require_nonzero(ij)?;
        let slot = config.flat(ij);
        Ok(Monoid {
            kernel,
            kind: MonoidKind::Negative { slot, group: config.group_range(ij.group) },
            weight: WeightFunctional::cone(kernel.ambient(), slot),
        })
    }

    /// `K_0 + K_ij` under the weight `2 * 1 - 1_ij`.
    pub fn cone(kernel: &'a KernelLattice, config: &VectorConfig, ij: FlatIndex) -> Result<Self> {
        config.require_nonzero(ij)?;
        let slot = config.flat(ij);
        Ok(Monoid {
            kernel,
            kind: MonoidKind::Cone { slot, group: config.group_range(ij.group) },
            weight: WeightFunctional::cone(kernel.ambient(), slot),
        })
    }

    pub fn with_weight(mut self, weight: WeightFunctional) -> Self {
        self.weight = weight;
        self
    }

    pub fn weight(&self) -> &WeightFunctional {
        &self.weight
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.kind
    }

    /// Rows `g` and right-hand sides `h` of `g . x <= h` describing the
    /// sign pattern in kernel coordinates. `homogeneous` replaces the strict
    /// `k_slot <= -1` with `k_slot <= 0`.
    fn sign_constraints(&self, homogeneous: bool) -> (Vec<Vec<i64>>, Vec<i64>) {
        let b = self.kernel.basis();
        let col = |l: usize| -> Vec<i64> { b.iter().map(|row| row[l]).collect() };
        let neg = |v: Vec<i64>| -> Vec<i64> { v.into_iter().map(|x| -x).collect() };
        let n = self.kernel.ambient();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let (slot, group) = match &self.kind {
            MonoidKind::K0 => (None, None),
            MonoidKind::Negative { slot, group } => (Some(*slot), Some(group.clone())),
            MonoidKind::Cone { slot, group } => (Some(*slot), Some(group.clone())),
        };
        for l in 0..n {
            if Some(l) == slot {
                continue;
            }
            rows.push(neg(col(l)));
            rhs.push(0);
        }
        if let (Some(slot), MonoidKind::Negative { .. }) = (slot, &self.kind) {
            rows.push(col(slot));
            rhs.push(if homogeneous { 0 } else { -1 });
        }
        if let Some(group) = group {
            let sum: Vec<i64> = (0..self.kernel.rank())
                .map(|s| group.clone().map(|l| b[s][l]).sum())
                .collect();
            rows.push(neg(sum));
            rhs.push(0);
        }
        (rows, rhs)
    }

    fn weight_row(&self) -> Vec<i64> {
        self.kernel.basis().iter().map(|row| self.weight.scaled(row)).collect()
    }

    pub fn enumerate(&self, bound: Rational64) -> Result<MonoidElementSet> {
        let r = self.kernel.rank();
        let mut elements = Vec::new();
        if bound >= Rational64::zero() {
            if r == 0 {
                let zero = vec![0; self.kernel.ambient()];
                if self.kind.contains(&zero) {
                    elements.push(zero);
                }
            } else {
                let (mut rows, mut rhs) = self.sign_constraints(false);
                rows.push(self.weight_row());
                rhs.push(self.weight.scaled_bound(bound));
                let system = System::new(rows, rhs);
                let mut x = Vec::with_capacity(r);
                system.walk(&mut x, r, &mut |x| {
                    let k = self.kernel.combine(x);
                    debug_assert!(self.kind.contains(&k));
                    elements.push(k);
                })?;
            }
        }
        let w = &self.weight;
        elements.sort_by(|a, b| w.scaled(a).cmp(&w.scaled(b)).then_with(|| a.cmp(b)));
        Ok(MonoidElementSet { elements, bound, weight: self.weight.clone(), kind: self.kind.clone() })
    }

    /// Whether the real cone of the monoid contains a nonzero point.
    fn has_growth(&self) -> Result<bool> {
        let r = self.kernel.rank();
        if r == 0 {
            return Ok(false);
        }
        let (mut rows, mut rhs) = self.sign_constraints(true);
        let wrow = self.weight_row();
        rows.push(wrow.clone());
        rhs.push(1);
        let a = to_rational_rows(&rows);
        let b: Vec<Rational> = rhs.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let c: Vec<Rational> = wrow.iter().map(|&v| Rational::from_integer(v.into())).collect();
        match simplex::maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
            LpOutcome::Unbounded => Err(Error::Unbounded),
            LpOutcome::Infeasible => Ok(false),
        }
    }

    /// Least bound `d` with at least `precision` elements of weight `<= d`.
    pub fn weight_bound_for_count(&self, precision: usize) -> Result<BoundChoice> {
        if precision <= 1 {
            let set = self.enumerate(Rational64::zero())?;
            if set.len() >= precision {
                return Ok(BoundChoice { bound: Rational64::zero(), count: set.len() });
            }
        }
        if !self.has_growth()? {
            return Err(Error::NoGrowth);
        }
        let mut d = Rational64::one();
        loop {
            let set = self.enumerate(d)?;
            if set.len() >= precision {
                let bound = self.weight.eval(&set.elements[precision - 1]).max(Rational64::zero());
                let count = set.count_up_to(bound);
                return Ok(BoundChoice { bound, count });
            }
            d *= 2;
            if d > Rational64::from_integer(1 << 40) {
                return Err(Error::Overflow("weight bound search"));
            }
        }
    }
}

fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect()
}

/// `G x <= h` over kernel coordinates.
struct System {
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
    rational_rows: Vec<Vec<Rational>>,
}

impl System {
    fn new(rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Self {
        let rational_rows = to_rational_rows(&rows);
        System { rows, rhs, rational_rows }
    }

    /// Residual right-hand side after fixing the prefix `x`.
    fn residual(&self, x: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &h)| h - lattice::dot(&row[..x.len()], x))
            .collect()
    }

    fn range_of_next(&self, x: &[i64], r: usize) -> Result<Option<(i64, i64)>> {
        let t = x.len();
        let res = self.residual(x);
        if t + 1 == r {
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for (row, &h) in self.rows.iter().zip(&res) {
                let a = row[t];
                if a > 0 {
                    hi = hi.min(Integer::div_floor(&h, &a));
                } else if a < 0 {
                    lo = lo.max(Integer::div_ceil(&h, &a));
                } else if h < 0 {
                    return Ok(None);
                }
            }
            if lo == i64::MIN || hi == i64::MAX {
                return Err(Error::Unbounded);
            }
            return Ok((lo <= hi).then_some((lo, hi)));
        }
        let a: Vec<Vec<Rational>> = self.rational_rows.iter().map(|row| row[t..].to_vec()).collect();
        let b: Vec<Rational> = res.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let mut c = vec![Rational::zero(); r - t];
        c[0] = Rational::one();
        let hi = match simplex::maximize(&c, &a, &b) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
        };
        c[0] = -Rational::one();
        let lo = match simplex::maximize(&c, &a, &b) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
            LpOutcome::Optimal { value, .. } => (-value).ceil().to_integer(),
        };
        let lo = big_to_i64(&lo)?;
        let hi = big_to_i64(&hi)?;
        Ok((lo <= hi).then_some((lo, hi)))
    }

    fn walk(&self, x: &mut Vec<i64>, r: usize, emit: &mut dyn FnMut(&[i64])) -> Result<()> {
        let Some((lo, hi)) = self.range_of_next(x, r)? else {
            return Ok(());
        };
        for v in lo..=hi {
            x.push(v);
            if x.len() == r {
                emit(x);
            } else {
                self.walk(x, r, emit)?;
            }
            x.pop();
        }
        Ok(())
    }
}

fn big_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow("enumeration range"))
}

/// All `k in K_0` with `sum k <= d`.
pub fn enumerate_k0(kernel: &KernelLattice, d: i64) -> Result<MonoidElementSet> {
    Monoid::k0(kernel).enumerate(Rational64::from_integer(d))
}

/// All `k in K_ij` with `k . (2 * 1 - 1_ij) <= dprime`.
pub fn enumerate_kij(
    kernel: &KernelLattice,
    config: &VectorConfig,
    ij: FlatIndex,
    dprime: i64,
) -> Result<MonoidElementSet> {
    Monoid::kij(kernel, config, ij)?.enumerate(Rational64::from_integer(dprime))
}

/// All `k in K_0 + K_ij` with `k . (2 * 1 - 1_ij) <= dprime`.
pub fn enumerate_cone(
    kernel: &KernelLattice,
    config: &VectorConfig,
    ij: FlatIndex,
    dprime: i64,
) -> Result<MonoidElementSet> {
    Monoid::cone(kernel, config, ij)?.enumerate(Rational64::from_integer(dprime))
}

/// Nonzero elements of the set that are not a sum of two nonzero elements
/// of the set.
pub fn irreducible_elements(set: &MonoidElementSet) -> Vec<Vec<i64>> {
    let members: HashSet<&Vec<i64>> = set.elements.iter().collect();
    let nonzero: Vec<&Vec<i64>> = set.elements.iter().filter(|k| !lattice::is_zero_vec(k)).collect();
    nonzero
        .iter()
        .filter(|&&k| {
            !nonzero.iter().any(|&e| {
                e != k && {
                    let rest: Vec<i64> = k.iter().zip(e).map(|(a, b)| a - b).collect();
                    !lattice::is_zero_vec(&rest) && members.contains(&rest)
                }
            })
        })
        .map(|&k| k.clone())
        .collect()
}

/// A monoid isomorphism `F : N^r -> K_0`, certified up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeMonoid {
    /// `|I| x r`; row `(i,j)` is `f_ij`.
    pub matrix: Vec<Vec<i64>>,
    /// Columns of `matrix`, the irreducible elements of `K_0`.
    pub generators: Vec<Vec<i64>>,
    pub bound: Rational64,
}

impl FreeMonoid {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `F n`
    pub fn apply(&self, n: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| lattice::dot(row, n)).collect()
    }
}

/// Solves `n G = k` for integer `n`, `G` given by rows.
pub(crate) fn integer_coordinates(generators: &[Vec<i64>], k: &[i64]) -> Result<Option<Vec<i64>>> {
    let ech = lattice::hermite(generators)?;
    let rank = ech.pivots.len();
    let mut rest: Vec<i128> = k.iter().map(|&v| v as i128).collect();
    let mut m = vec![0i128; generators.len()];
    for (t, &p) in ech.pivots.iter().enumerate() {
        let piv = ech.rows[t][p];
        if rest[p] % piv != 0 {
            return Ok(None);
        }
        let c = rest[p] / piv;
        for (r, &h) in rest.iter_mut().zip(&ech.rows[t]) {
            *r -= c * h;
        }
        m[t] = c;
    }
    if rest.iter().any(|&v| v != 0) || rank < generators.len() && m[rank..].iter().any(|&v| v != 0) {
        return Ok(None);
    }
    let n: Vec<i64> = (0..generators.len())
        .map(|s| {
            let v: i128 = (0..generators.len()).map(|t| m[t] * ech.transform[t][s]).sum();
            i64::try_from(v).map_err(|_| Error::Overflow("free monoid coordinates"))
        })
        .collect::<Result<_>>()?;
    Ok(Some(n))
}

/// Detects `K_0 = N^r` from the elements of weight `<= d`: succeeds when
/// exactly `r` irreducibles exist and every enumerated element is a
/// nonnegative integer combination of them.
pub fn free_monoid_iso(kernel: &KernelLattice, d: Rational64) -> Result<Option<FreeMonoid>> {
    let r = kernel.rank();
    let set = Monoid::k0(kernel).enumerate(d)?;
    let mut irr = irreducible_elements(&set);
    if irr.len() != r || r == 0 {
        return Ok(None);
    }
    // Columns ordered so that F reads like the identity where possible.
    irr.sort_by(|a, b| b.cmp(a));
    if lattice::rank(&irr)? < r {
        return Ok(None);
    }
    for k in &set.elements {
        match integer_coordinates(&irr, k)? {
            Some(n) if n.iter().all(|&v| v >= 0) => {}
            _ => return Ok(None),
        }
    }
    let matrix = (0..kernel.ambient()).map(|l| irr.iter().map(|g| g[l]).collect()).collect();
    Ok(Some(FreeMonoid { matrix, generators: irr, bound: d }))
}

/// A bound on the weight of every irreducible element of `K_0`: the sum of
/// the `r` largest weights of the primitive extreme rays of its cone. Any
/// irreducible lies in a half-open parallelepiped of some simplicial
/// subcone, so enumerating to this bound finds all of them.
pub fn hilbert_bound(kernel: &KernelLattice) -> Result<Rational64> {
    let r = kernel.rank();
    if r == 0 {
        return Ok(Rational64::zero());
    }
    let rays = crate::polytope::cone_extreme_rays(
        &(0..kernel.ambient())
            .map(|l| kernel.basis().iter().map(|row| row[l]).collect())
            .collect::<Vec<Vec<i64>>>(),
    )?;
    let w = WeightFunctional::ones(kernel.ambient());
    let mut weights: Vec<i64> = rays.iter().map(|x| w.scaled(&kernel.combine(x))).collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Rational64::from_integer(weights.iter().take(r).sum::<i64>().max(1)))
}
