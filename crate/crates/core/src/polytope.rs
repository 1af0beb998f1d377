//! Exact lattice polytopes: convex hulls, Minkowski sums, interior lattice
//! points, and the Fano and reflexivity predicates.
//!
//! Hulls are computed by the double description method on the homogenized
//! cone `{(b, a) : b - a.p >= 0 for every point p}`, whose extreme rays are
//! the facet inequalities `a.x <= b`. All arithmetic is on integers; rays are
//! kept primitive.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, FlatIndex, VectorConfig};

/// The inequality `normal . x <= offset` (or an equation, when stored as one).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn slack(&self, x: &[i64]) -> i64 {
        self.offset - lattice::dot(&self.normal, x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Vec<i64>>,
    /// Facets relative to the affine span. Normals are primitive.
    facets: Vec<Facet>,
    /// Equations `normal . x = offset` cutting out the affine span; empty
    /// when full-dimensional.
    equations: Vec<Facet>,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.slack(x) == 0) && self.facets.iter().all(|f| f.slack(x) >= 0)
    }

    /// Membership in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| e.slack(x) == 0) && self.facets.iter().all(|f| f.slack(x) > 0)
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset > 0)
    }

    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for (c, &x) in v.iter().enumerate() {
                lo[c] = lo[c].min(x);
                hi[c] = hi[c].max(x);
            }
        }
        (lo, hi)
    }

    /// Lattice points of the bounding box satisfying `keep`, in lex order.
    fn scan_box(&self, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut x = lo.clone();
        let d = x.len();
        loop {
            if keep(&x) {
                out.push(x.clone());
            }
            let mut c = d;
            loop {
                if c == 0 {
                    return out;
                }
                c -= 1;
                if x[c] < hi[c] {
                    x[c] += 1;
                    break;
                }
                x[c] = lo[c];
            }
        }
    }

    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        self.scan_box(|x| self.contains(x))
    }
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Ray {
    coords: Vec<i128>,
    zeros: Vec<bool>,
}

/// Double description for `{y : H y >= 0}` with `H` of full column rank.
/// Returns primitive extreme rays.
fn extreme_rays(h: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let m = h.len();
    let dim = h[0].len();
    // Greedy choice of dim linearly independent rows.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut trial: Vec<Vec<i64>> = chosen
            .iter()
            .map(|&c| h[c].iter().map(|&x| x as i64).collect())
            .collect();
        trial.push(h[i].iter().map(|&x| x as i64).collect());
        if lattice::rank(&trial)? == trial.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        return Err(Error::Internal("double description needs a pointed cone".into()));
    }
    // Initial rays: columns of the inverse of the chosen rows (via adjugate
    // direction), computed as kernel vectors of all-but-one chosen row.
    let mut rays: Vec<Ray> = Vec::new();
    for skip in 0..dim {
        let sub: Vec<Vec<i64>> = chosen
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != skip)
            .map(|(_, &c)| h[c].iter().map(|&x| x as i64).collect())
            .collect();
        let ech = lattice::hermite(&transpose(&sub, dim))?;
        let mut y: Vec<i128> = ech.transform[ech.pivots.len()].clone();
        primitive(&mut y);
        if dot128(&h[chosen[skip]], &y) < 0 {
            y.iter_mut().for_each(|x| *x = -*x);
        }
        rays.push(Ray { coords: y, zeros: vec![false; m] });
    }
    let mut processed: Vec<usize> = Vec::new();
    let add_row = |rays: &mut Vec<Ray>, i: usize| {
        for r in rays.iter_mut() {
            r.zeros[i] = dot128(&h[i], &r.coords) == 0;
        }
    };
    for &c in &chosen {
        add_row(&mut rays, c);
        processed.push(c);
    }
    for i in 0..m {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot128(&h[i], &r.coords)).collect();
        if vals.iter().all(|&v| v >= 0) {
            add_row(&mut rays, i);
            processed.push(i);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&t| vals[t] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&t| vals[t] < 0).collect();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = processed
                    .iter()
                    .copied()
                    .filter(|&row| rays[p].zeros[row] && rays[n].zeros[row])
                    .collect();
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| {
                    t == p || t == n || !common.iter().all(|&row| rays[t].zeros[row])
                });
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<i128> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(&cn, &cp)| vals[p] * cn - vals[n] * cp)
                    .collect();
                primitive(&mut coords);
                let mut zeros = vec![false; m];
                for &row in &common {
                    zeros[row] = true;
                }
                fresh.push(Ray { coords, zeros });
            }
        }
        let mut keep: Vec<Ray> = Vec::new();
        for (t, r) in rays.into_iter().enumerate() {
            if vals[t] >= 0 {
                keep.push(r);
            }
        }
        keep.extend(fresh);
        rays = keep;
        add_row(&mut rays, i);
        processed.push(i);
    }
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

/// Primitive extreme rays of the pointed cone `{x : H x >= 0}`.
pub(crate) fn cone_extreme_rays(h: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let h: Vec<Vec<i128>> = h.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    extreme_rays(&h)?.iter().map(|r| narrow_vec(r)).collect()
}

fn transpose(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|c| m.iter().map(|row| row[c]).collect()).collect()
}

fn narrow_vec(v: &[i128]) -> Result<Vec<i64>> {
    v.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("hull"))).collect()
}

/// Facets and vertices of a full-dimensional point set in `Z^k`.
fn full_dim_hull(points: &[Vec<i64>], k: usize) -> Result<(Vec<Vec<i64>>, Vec<Facet>)> {
    let h: Vec<Vec<i128>> = points
        .iter()
        .map(|p| std::iter::once(1i128).chain(p.iter().map(|&x| -(x as i128))).collect())
        .collect();
    let rays = extreme_rays(&h)?;
    let mut facets = Vec::with_capacity(rays.len());
    for ray in rays {
        let mut normal: Vec<i128> = ray[1..].to_vec();
        let g = normal.iter().fold(0i128, |g, &x| g.gcd(&x));
        if g == 0 {
            // (1, 0) is the trivial inequality 0 <= b; not a facet.
            continue;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let offset = ray[0] / g;
        facets.push(Facet { normal: narrow_vec(&normal)?, offset: offset as i64 });
    }
    facets.sort();
    facets.dedup();
    let mut vertices = Vec::new();
    for p in points {
        let tight: Vec<Vec<i64>> =
            facets.iter().filter(|f| f.slack(p) == 0).map(|f| f.normal.clone()).collect();
        if tight.len() >= k && lattice::rank(&tight)? == k {
            vertices.push(p.clone());
        }
    }
    Ok((vertices, facets))
}

pub fn convex_hull(points: &[Vec<i64>]) -> Result<LatticePolytope> {
    let Some(first) = points.first() else {
        return Err(Error::MalformedConfig("convex hull of no points".into()));
    };
    let d = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: p.len() });
    }
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let ech = lattice::hermite(&diffs)?;
    let k = ech.pivots.len();

    // Equations of the affine span: integer kernel of the difference matrix.
    let mut equations = Vec::new();
    if k < d {
        let span_t = if diffs.is_empty() { vec![vec![0; d]] } else { diffs.clone() };
        let ech_t = lattice::hermite(&transpose(&span_t, d))?;
        for row in &ech_t.transform[ech_t.pivots.len()..] {
            let normal = narrow_vec(row)?;
            let offset = lattice::dot(&normal, &pts[0]);
            equations.push(Facet { normal, offset });
        }
        equations.sort();
    }

    if k == 0 {
        return Ok(LatticePolytope {
            ambient_dim: d,
            dim: 0,
            vertices: vec![pts[0].clone()],
            facets: Vec::new(),
            equations,
        });
    }
    let pivots = ech.pivots.clone();
    let projected: Vec<Vec<i64>> =
        pts.iter().map(|p| pivots.iter().map(|&c| p[c]).collect()).collect();
    let (pverts, pfacets) = full_dim_hull(&projected, k)?;
    let vertices: Vec<Vec<i64>> = pts
        .iter()
        .zip(&projected)
        .filter(|(_, q)| pverts.contains(q))
        .map(|(p, _)| p.clone())
        .collect();
    let mut facets: Vec<Facet> = pfacets
        .into_iter()
        .map(|f| {
            let mut normal = vec![0; d];
            for (&c, &a) in pivots.iter().zip(&f.normal) {
                normal[c] = a;
            }
            Facet { normal, offset: f.offset }
        })
        .collect();
    facets.sort();
    Ok(LatticePolytope { ambient_dim: d, dim: k, vertices, facets, equations })
}

pub fn minkowski_sum(polys: &[LatticePolytope]) -> Result<LatticePolytope> {
    let Some(first) = polys.first() else {
        return Err(Error::MalformedConfig("Minkowski sum of no polytopes".into()));
    };
    let d = first.ambient_dim;
    let mut acc = first.vertices.clone();
    for p in &polys[1..] {
        if p.ambient_dim != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.ambient_dim });
        }
        let mut sums = Vec::with_capacity(acc.len() * p.vertices.len());
        for a in &acc {
            for b in &p.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>());
            }
        }
        acc = convex_hull(&sums)?.vertices;
    }
    convex_hull(&acc)
}

/// Lattice points in the (relative) interior, in lexicographic order.
pub fn interior_lattice_points(poly: &LatticePolytope) -> Vec<Vec<i64>> {
    poly.scan_box(|x| poly.contains_in_relative_interior(x))
}

/// `Delta = sum_i conv({v_ij} u {0})`.
pub fn newton_polytope(config: &VectorConfig) -> Result<LatticePolytope> {
    let d = config.dim();
    let parts: Vec<LatticePolytope> = config
        .groups()
        .iter()
        .map(|g| {
            let mut pts = g.clone();
            pts.push(vec![0; d]);
            convex_hull(&pts)
        })
        .collect::<Result<_>>()?;
    minkowski_sum(&parts)
}

/// Whether the origin is the unique interior lattice point of the Minkowski
/// sum. Fails when the standing assumption does not hold.
pub fn is_fano(config: &VectorConfig) -> Result<bool> {
    let report = lattice::validate_assumption(config)?;
    if let Some(reason) = report.failure_reason() {
        return Err(Error::Assumption(reason));
    }
    let delta = newton_polytope(config)?;
    let interior = interior_lattice_points(&delta);
    Ok(interior.len() == 1 && lattice::is_zero_vec(&interior[0]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reflexivity {
    pub reflexive: bool,
    pub reason: Option<String>,
}

pub fn reflexivity(poly: &LatticePolytope) -> Reflexivity {
    if !poly.contains_origin_in_interior() {
        return Reflexivity {
            reflexive: false,
            reason: Some("origin is not an interior point".into()),
        };
    }
    match poly.facets.iter().find(|f| f.offset != 1) {
        Some(f) => Reflexivity {
            reflexive: false,
            reason: Some(format!("facet {:?} . x <= {} has offset != 1", f.normal, f.offset)),
        },
        None => Reflexivity { reflexive: true, reason: None },
    }
}

pub fn is_reflexive(poly: &LatticePolytope) -> bool {
    reflexivity(poly).reflexive
}

/// True iff the origin is not interior to
/// `conv({v_lm : (l,m) != (i,j)} u {-v_ij})`; when it holds, `K_ij` is empty.
pub fn lemma12_hypothesis(config: &VectorConfig, ij: FlatIndex) -> Result<bool> {
    config.require_nonzero(ij)?;
    let target = config.flat(ij);
    let pts: Vec<Vec<i64>> = config
        .vectors()
        .enumerate()
        .map(|(t, v)| if t == target { v.iter().map(|x| -x).collect() } else { v.clone() })
        .collect();
    Ok(!convex_hull(&pts)?.contains_origin_in_interior())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    fn segment(a: i64, b: i64) -> LatticePolytope {
        convex_hull(&[vec![a], vec![b]]).unwrap()
    }

    fn quintic() -> VectorConfig {
        VectorConfig::single_group(pts(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, -1],
        ]))
        .unwrap()
    }

    fn two_dim_example() -> VectorConfig {
        VectorConfig::single_group(pts(&[&[0, 1], &[1, 1], &[0, -1], &[-1, 1]])).unwrap()
    }

    #[test]
    fn hull_of_segment() {
        let p = convex_hull(&pts(&[&[0], &[1], &[-1]])).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[-1], &[1]])[..]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.facets().len(), 2);
    }

    #[test]
    fn hull_of_point() {
        let p = convex_hull(&pts(&[&[0, 0]])).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.equations().len(), 2);
    }

    #[test]
    fn quintic_simplex() {
        let mut v: Vec<Vec<i64>> = quintic().vectors().cloned().collect();
        v.push(vec![0; 4]);
        let p = convex_hull(&v).unwrap();
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.facets().len(), 5);
        assert_eq!(interior_lattice_points(&p), vec![vec![0; 4]]);
        assert!(is_reflexive(&p));
    }

    #[test]
    fn lower_dimensional_hull_keeps_span() {
        let p = convex_hull(&pts(&[&[0, 0, 0], &[2, 2, 0], &[1, 1, 0], &[0, 0, 2]])).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.equations().len(), 1);
        assert_eq!(p.vertices().len(), 3);
        assert!(interior_lattice_points(&p).is_empty());
        let q = convex_hull(&pts(&[&[-2, -2], &[2, 2]])).unwrap();
        assert_eq!(interior_lattice_points(&q), pts(&[&[-1, -1], &[0, 0], &[1, 1]]));
    }

    #[test]
    fn minkowski_examples() {
        let s = minkowski_sum(&[segment(0, 1), segment(0, 1)]).unwrap();
        assert_eq!(s.vertices(), &pts(&[&[0], &[2]])[..]);
        let s = minkowski_sum(&[segment(-1, 1), segment(-1, 1)]).unwrap();
        assert_eq!(s.vertices(), &pts(&[&[-2], &[2]])[..]);
        let sq = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let pt = convex_hull(&pts(&[&[3, -1]])).unwrap();
        let t = minkowski_sum(&[sq, pt]).unwrap();
        assert_eq!(t.vertices(), &pts(&[&[3, -1], &[3, 0], &[4, -1], &[4, 0]])[..]);
        assert!(matches!(
            minkowski_sum(&[segment(0, 1), convex_hull(&pts(&[&[0, 0]])).unwrap()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn interior_points_of_segments() {
        assert_eq!(interior_lattice_points(&segment(-1, 1)), vec![vec![0]]);
        assert!(interior_lattice_points(&segment(0, 1)).is_empty());
    }

    #[test]
    fn fano_examples() {
        assert!(is_fano(&quintic()).unwrap());
        let c = VectorConfig::single_group(pts(&[&[1], &[1], &[-1]])).unwrap();
        assert!(is_fano(&c).unwrap());
        let c = VectorConfig::single_group(pts(&[&[1], &[-2]])).unwrap();
        assert!(!is_fano(&c).unwrap());
        let c = VectorConfig::single_group(pts(&[&[1], &[2]])).unwrap();
        assert!(matches!(is_fano(&c), Err(Error::Assumption(_))));
    }

    #[test]
    fn reflexive_examples() {
        assert!(is_reflexive(&segment(-1, 1)));
        assert!(!is_reflexive(&segment(-2, 2)));
        let r = reflexivity(&segment(0, 2));
        assert!(!r.reflexive && r.reason.unwrap().contains("interior"));
    }

    #[test]
    fn lemma12_examples() {
        let q = quintic();
        for j in 0..5 {
            assert!(lemma12_hypothesis(&q, FlatIndex::new(0, j)).unwrap());
        }
        let c = two_dim_example();
        assert!(!lemma12_hypothesis(&c, FlatIndex::new(0, 0)).unwrap());
        for j in 1..4 {
            assert!(lemma12_hypothesis(&c, FlatIndex::new(0, j)).unwrap());
        }
        let z = VectorConfig::single_group(pts(&[&[0], &[1]])).unwrap();
        assert!(matches!(lemma12_hypothesis(&z, FlatIndex::new(0, 0)), Err(Error::ZeroVector(_))));
    }

    #[test]
    fn facets_are_primitive_and_tight() {
        let p = convex_hull(&pts(&[&[-2, -1], &[1, -1], &[1, 2], &[0, 0]])).unwrap();
        for f in p.facets() {
            let g = f.normal.iter().fold(0i64, |g, &x| g.gcd(&x));
            assert_eq!(g, 1);
            let tight = p.vertices().iter().filter(|v| f.slack(v) == 0).count();
            assert!(tight >= 2);
        }
        assert!(is_reflexive(&p));
    }
}
