//! Vector configurations, the kernel lattice of the vector map, and the
//! standing assumptions on a configuration.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::polytope;
use crate::simplex;

/// Position `(i, j)` in the two-level index set, zero-based. Displays
/// one-based as `(i,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FlatIndex {
    pub group: usize,
    pub member: usize,
}

impl FlatIndex {
    pub fn new(group: usize, member: usize) -> Self {
        FlatIndex { group, member }
    }
}

impl fmt::Display for FlatIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.group + 1, self.member + 1)
    }
}

/// The input family `(v_ij)`: `p` groups, group `i` holding `q_i` vectors in
/// `Z^d`. Flattened in row-major order (group, then member) everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorConfig {
    groups: Vec<Vec<Vec<i64>>>,
    dim: usize,
}

impl VectorConfig {
    pub fn new(groups: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::MalformedConfig("at least one group is required".into()));
        }
        let dim = match groups.iter().flatten().next() {
            Some(v) => v.len(),
            None => return Err(Error::MalformedConfig("group 1 is empty".into())),
        };
        if dim == 0 {
            return Err(Error::MalformedConfig("vectors must have positive length".into()));
        }
        for (i, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(Error::MalformedConfig(format!("group {} is empty", i + 1)));
            }
            for (j, v) in group.iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::MalformedConfig(format!(
                        "vector {} has length {}, expected {dim}",
                        FlatIndex::new(i, j),
                        v.len()
                    )));
                }
            }
        }
        Ok(VectorConfig { groups, dim })
    }

    /// A configuration with a single group (`p = 1`).
    pub fn single_group(vectors: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(vec![vectors])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<Vec<i64>>] {
        &self.groups
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.groups.iter().map(Vec::len).collect()
    }

    /// `|I|`
    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.groups.iter().flatten()
    }

    pub fn indices(&self) -> Vec<FlatIndex> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(i, g)| (0..g.len()).map(move |j| FlatIndex::new(i, j)))
            .collect()
    }

    pub fn check_index(&self, ij: FlatIndex) -> Result<()> {
        match self.groups.get(ij.group) {
            Some(g) if ij.member < g.len() => Ok(()),
            _ => Err(Error::IndexOutOfRange(ij)),
        }
    }

    pub fn vector(&self, ij: FlatIndex) -> Result<&[i64]> {
        self.check_index(ij)?;
        Ok(&self.groups[ij.group][ij.member])
    }

    pub fn flat(&self, ij: FlatIndex) -> usize {
        self.groups[..ij.group].iter().map(Vec::len).sum::<usize>() + ij.member
    }

    /// Flat positions belonging to group `i`.
    pub fn group_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.groups[..i].iter().map(Vec::len).sum();
        start..start + self.groups[i].len()
    }

    /// Rejects a zero `v_ij`, which the one-negative-slot constructions need.
    pub fn require_nonzero(&self, ij: FlatIndex) -> Result<()> {
        if self.vector(ij)?.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector(ij));
        }
        Ok(())
    }

    /// `V k` for `k` indexed by the flat order.
    pub fn apply(&self, k: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (v, &c) in self.vectors().zip(k) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }
}

/// An integer basis of `K = ker V`, saturated, stored in row Hermite form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelLattice {
    basis: Vec<Vec<i64>>,
    ambient: usize,
}

impl KernelLattice {
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `|I|`
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `sum_s x_s b_s`
    pub fn combine(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.basis.iter().zip(x) {
            if c != 0 {
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// Coordinates of `k` in the basis, if `k` lies in the lattice.
    pub fn coordinates(&self, k: &[i64]) -> Option<Vec<i64>> {
        let mut rest: Vec<i128> = k.iter().map(|&v| v as i128).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for row in &self.basis {
            let p = row.iter().position(|&v| v != 0)?;
            let piv = row[p] as i128;
            if rest[p] % piv != 0 {
                return None;
            }
            let c = rest[p] / piv;
            for (r, &b) in rest.iter_mut().zip(row) {
                *r -= c * b as i128;
            }
            coords.push(i64::try_from(c).ok()?);
        }
        if rest.iter().all(|&v| v == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Result of integer row reduction `T M = E` with `T` unimodular.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<i128>>,
    pub transform: Vec<Vec<i128>>,
    pub pivots: Vec<usize>,
}

fn sub_scaled(target: &mut [i128], src: &[i128], q: i128) -> Result<()> {
    for (t, &s) in target.iter_mut().zip(src) {
        let prod = s.checked_mul(q).ok_or(Error::Overflow("row reduction"))?;
        *t = t.checked_sub(prod).ok_or(Error::Overflow("row reduction"))?;
    }
    Ok(())
}

/// Integer row echelon form by repeated Euclidean reduction, tracking the
/// unimodular transform. Pivots are made positive and entries above each
/// pivot reduced into `[0, pivot)`, giving the row Hermite normal form.
pub(crate) fn hermite(matrix: &[Vec<i64>]) -> Result<Echelon> {
    let n = matrix.len();
    let m = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<i128>> =
        matrix.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut transform: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..m {
        if prow == n {
            break;
        }
        loop {
            let best = (prow..n)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(prow, best);
            transform.swap(prow, best);
            let mut done = true;
            for r in prow + 1..n {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[prow][col]);
                    let (src, dst) = (rows[prow].clone(), &mut rows[r]);
                    sub_scaled(dst, &src, q)?;
                    let tsrc = transform[prow].clone();
                    sub_scaled(&mut transform[r], &tsrc, q)?;
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[prow][col] == 0 {
            continue;
        }
        if rows[prow][col] < 0 {
            rows[prow].iter_mut().for_each(|v| *v = -*v);
            transform[prow].iter_mut().for_each(|v| *v = -*v);
        }
        let piv = rows[prow][col];
        for r in 0..prow {
            let q = rows[r][col].div_euclid(piv);
            if q != 0 {
                let src = rows[prow].clone();
                sub_scaled(&mut rows[r], &src, q)?;
                let tsrc = transform[prow].clone();
                sub_scaled(&mut transform[r], &tsrc, q)?;
            }
        }
        pivots.push(col);
        prow += 1;
    }
    Ok(Echelon { rows, transform, pivots })
}

fn narrow(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("kernel basis")))
        .collect()
}

/// Rank of an integer matrix (rows as given).
pub(crate) fn rank(matrix: &[Vec<i64>]) -> Result<usize> {
    Ok(hermite(matrix)?.pivots.len())
}

/// A saturated integer basis of `ker V`, in row Hermite form.
pub fn kernel_basis(config: &VectorConfig) -> Result<KernelLattice> {
    // Rows of V^T are the v_ij; rows of the transform that kill V^T span
    // the kernel, and saturation follows from unimodularity.
    let vt: Vec<Vec<i64>> = config.vectors().cloned().collect();
    let ech = hermite(&vt)?;
    let r = ech.pivots.len();
    let raw: Vec<Vec<i64>> =
        ech.transform[r..].iter().map(|row| narrow(row)).collect::<Result<_>>()?;
    let basis = if raw.is_empty() {
        raw
    } else {
        let h = hermite(&raw)?;
        h.rows[..h.pivots.len()].iter().map(|row| narrow(row)).collect::<Result<_>>()?
    };
    Ok(KernelLattice { basis, ambient: config.len() })
}

/// Whether the `v_ij` generate all of `Z^d`.
pub fn spans_full_lattice(config: &VectorConfig) -> Result<bool> {
    let vt: Vec<Vec<i64>> = config.vectors().cloned().collect();
    let ech = hermite(&vt)?;
    if ech.pivots.len() < config.dim() {
        return Ok(false);
    }
    Ok(ech.pivots.iter().enumerate().all(|(r, &c)| ech.rows[r][c] == 1))
}

/// A configuration rewritten in coordinates of the lattice its vectors span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanNormalization {
    pub config: VectorConfig,
    /// Rows form a basis of the spanned lattice, in the original coordinates.
    pub basis: Vec<Vec<i64>>,
    /// Index in `Z^d`, when the vectors span `R^d`.
    pub index: Option<u64>,
    pub changed: bool,
}

/// Replaces `Z^d` by the lattice spanned by the `v_ij`. The kernel, and with
/// it every series, is unchanged; only the ambient coordinates move.
pub fn normalize_to_span(config: &VectorConfig) -> Result<SpanNormalization> {
    let vt: Vec<Vec<i64>> = config.vectors().cloned().collect();
    let ech = hermite(&vt)?;
    let r = ech.pivots.len();
    let basis: Vec<Vec<i64>> = ech.rows[..r].iter().map(|row| narrow(row)).collect::<Result<_>>()?;
    let full = r == config.dim();
    let index = if full {
        let prod = ech.pivots.iter().enumerate().map(|(t, &c)| ech.rows[t][c]).product::<i128>();
        Some(u64::try_from(prod).map_err(|_| Error::Overflow("lattice index"))?)
    } else {
        None
    };
    if index == Some(1) {
        return Ok(SpanNormalization { config: config.clone(), basis, index, changed: false });
    }
    let coords = |v: &[i64]| -> Vec<i64> {
        let mut rest = v.to_vec();
        let mut c = vec![0; r];
        for (t, &p) in ech.pivots.iter().enumerate() {
            let q = rest[p] / basis[t][p];
            for (x, b) in rest.iter_mut().zip(&basis[t]) {
                *x -= q * b;
            }
            c[t] = q;
        }
        debug_assert!(is_zero_vec(&rest));
        c
    };
    let groups = config.groups().iter().map(|g| g.iter().map(|v| coords(v)).collect()).collect();
    Ok(SpanNormalization { config: VectorConfig::new(groups)?, basis, index, changed: true })
}

/// Whether some `k in K` has every entry strictly positive, decided by exact
/// linear feasibility of `{x : B^T x >= 1}`.
pub fn has_positive_kernel_vector(kernel: &KernelLattice) -> bool {
    let r = kernel.rank();
    if r == 0 {
        return false;
    }
    let a: Vec<Vec<Rational>> = (0..kernel.ambient())
        .map(|l| {
            kernel
                .basis()
                .iter()
                .map(|row| Rational::from_integer((-row[l]).into()))
                .collect()
        })
        .collect();
    let b = vec![-Rational::one(); kernel.ambient()];
    simplex::feasible_point(&a, &b, r).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub spans_lattice: bool,
    pub full_rank: bool,
    pub origin_interior: bool,
    pub positive_kernel_vector: bool,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.spans_lattice && self.origin_interior && self.positive_kernel_vector
    }

    pub fn failure_reason(&self) -> Option<String> {
        if !self.spans_lattice {
            Some("the vectors do not span Z^d".into())
        } else if !self.origin_interior {
            Some("the origin is not in the interior of the Minkowski sum".into())
        } else if !self.positive_kernel_vector {
            Some("the kernel has no strictly positive vector".into())
        } else {
            None
        }
    }
}

/// Checks that the vectors span `Z^d` and that the origin is interior to the
/// Minkowski sum, cross-checking the latter against the existence of a
/// strictly positive kernel vector.
pub fn validate_assumption(config: &VectorConfig) -> Result<AssumptionReport> {
    let spans_lattice = spans_full_lattice(config)?;
    let vt: Vec<Vec<i64>> = config.vectors().cloned().collect();
    let full_rank = rank(&vt)? == config.dim();
    let kernel = kernel_basis(config)?;
    let positive_kernel_vector = has_positive_kernel_vector(&kernel);
    let delta = polytope::newton_polytope(config)?;
    let origin_interior = delta.contains_origin_in_interior();
    // The two conditions coincide once the vectors span R^d.
    if full_rank && origin_interior != positive_kernel_vector {
        return Err(Error::Internal(format!(
            "origin-interior ({origin_interior}) disagrees with positive kernel vector \
             ({positive_kernel_vector})"
        )));
    }
    Ok(AssumptionReport { spans_lattice, full_rank, origin_interior, positive_kernel_vector })
}

/// Sign test helper shared with enumeration: `a.x` for integer vectors.
pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn quintic() -> VectorConfig {
        VectorConfig::single_group(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![-1, -1, -1, -1],
        ])
        .unwrap()
    }

    fn cfg1(vs: &[i64]) -> VectorConfig {
        VectorConfig::single_group(vs.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    #[test]
    fn malformed_configs_rejected() {
        assert!(VectorConfig::new(vec![]).is_err());
        assert!(VectorConfig::new(vec![vec![]]).is_err());
        let e = VectorConfig::new(vec![vec![vec![1, 0], vec![1]]]).unwrap_err();
        assert!(e.to_string().contains("(1,2)"), "{e}");
    }

    #[test]
    fn flat_order_is_row_major() {
        let c = VectorConfig::new(vec![vec![vec![1], vec![2]], vec![vec![3]]]).unwrap();
        assert_eq!(c.flat(FlatIndex::new(1, 0)), 2);
        assert_eq!(c.group_range(1), 2..3);
        assert_eq!(c.indices().len(), 3);
    }

    #[test]
    fn quintic_kernel() {
        let k = kernel_basis(&quintic()).unwrap();
        assert_eq!(k.basis(), &[vec![1, 1, 1, 1, 1]]);
    }

    #[test]
    fn two_dim_example_kernel() {
        let c = VectorConfig::single_group(vec![vec![0, 1], vec![1, 1], vec![0, -1], vec![-1, 1]])
            .unwrap();
        let k = kernel_basis(&c).unwrap();
        assert_eq!(k.rank(), 2);
        // same lattice as rows (1,0,1,0), (0,1,2,1)
        for v in [[1, 0, 1, 0], [0, 1, 2, 1]] {
            assert!(k.coordinates(&v).is_some());
        }
        for row in k.basis() {
            let a = row[0];
            let b = row[1];
            assert_eq!(row.as_slice(), &[a, b, a + 2 * b, b]);
        }
    }

    #[test]
    fn basis_config_has_trivial_kernel() {
        let c = VectorConfig::single_group(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(kernel_basis(&c).unwrap().rank(), 0);
    }

    #[test]
    fn spanning() {
        assert!(spans_full_lattice(&quintic()).unwrap());
        assert!(!spans_full_lattice(&cfg1(&[2])).unwrap());
        assert!(spans_full_lattice(&cfg1(&[1, 1, -1])).unwrap());
        assert!(spans_full_lattice(&cfg1(&[2, 3])).unwrap());
        let c = VectorConfig::single_group(vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(!spans_full_lattice(&c).unwrap());
    }

    #[test]
    fn assumption_checks() {
        assert!(validate_assumption(&quintic()).unwrap().passed());
        let r = validate_assumption(&cfg1(&[1, 2])).unwrap();
        assert!(!r.passed());
        assert!(!r.origin_interior && !r.positive_kernel_vector);
        let r = validate_assumption(&cfg1(&[1, -1])).unwrap();
        assert!(r.spans_lattice && r.origin_interior && r.passed());
    }

    #[test]
    fn saturation_against_brute_force() {
        let configs = vec![
            VectorConfig::single_group(vec![vec![2, 0], vec![0, 2], vec![-2, -2], vec![1, 1]])
                .unwrap(),
            VectorConfig::single_group(vec![vec![1, 0], vec![0, 1], vec![-2, 1], vec![1, -2]])
                .unwrap(),
            cfg1(&[2, 3, -4]),
        ];
        for c in configs {
            let k = kernel_basis(&c).unwrap();
            let n = c.len();
            for b in k.basis() {
                assert!(is_zero_vec(&c.apply(b)));
            }
            let mut v = vec![-5i64; n];
            loop {
                if is_zero_vec(&c.apply(&v)) {
                    let coords = k.coordinates(&v).expect("kernel vector outside span");
                    assert_eq!(k.combine(&coords), v);
                }
                let mut pos = 0;
                while pos < n && v[pos] == 5 {
                    v[pos] = -5;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
                v[pos] += 1;
            }
        }
    }

    #[test]
    fn exact_sequence_rank() {
        let c = quintic();
        let k = kernel_basis(&c).unwrap();
        assert!(spans_full_lattice(&c).unwrap());
        assert_eq!(k.rank(), c.len() - c.dim());
    }

    #[test]
    fn positive_vector_found() {
        let k = kernel_basis(&cfg1(&[1, 1, -1])).unwrap();
        assert!(has_positive_kernel_vector(&k));
        let k = kernel_basis(&cfg1(&[1, 2])).unwrap();
        assert!(!has_positive_kernel_vector(&k));
        assert_eq!(dot(&[1, 2], &[3, 4]), 11);
    }

    #[test]
    fn normalization_to_spanned_lattice() {
        let square =
            VectorConfig::single_group(vec![vec![-1, -1], vec![1, -1], vec![1, 1], vec![-1, 1]]).unwrap();
        assert!(!spans_full_lattice(&square).unwrap());
        let n = normalize_to_span(&square).unwrap();
        assert!(n.changed);
        assert_eq!(n.index, Some(2));
        assert!(spans_full_lattice(&n.config).unwrap());
        assert_eq!(kernel_basis(&n.config).unwrap(), kernel_basis(&square).unwrap());
        assert!(validate_assumption(&n.config).unwrap().passed());
        for (v, c) in square.vectors().zip(n.config.vectors()) {
            let back: Vec<i64> = (0..2).map(|l| c.iter().zip(&n.basis).map(|(x, b)| x * b[l]).sum()).collect();
            assert_eq!(&back, v);
        }
        let q = quintic();
        let same = normalize_to_span(&q).unwrap();
        assert!(!same.changed);
        assert_eq!(same.config, q);
        // A line inside Z^2 becomes a configuration in Z^1.
        let line = VectorConfig::single_group(vec![vec![2, 2], vec![-2, -2]]).unwrap();
        let n = normalize_to_span(&line).unwrap();
        assert_eq!(n.index, None);
        assert_eq!(n.config.vectors().cloned().collect::<Vec<_>>(), vec![vec![1], vec![-1]]);
    }
}
