//! The sixteen reflexive polygons up to `GL_2(Z)` equivalence, as vertex
//! lists, ordered by vertex count and then by number of boundary points.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{self, VectorConfig};
use crate::polytope;

const POLYGONS: [&[[i64; 2]]; 16] = [
    &[[-1, -1], [1, 0], [0, 1]],
    &[[-1, -1], [1, 0], [-1, 1]],
    &[[-2, -1], [1, -1], [0, 1]],
    &[[-2, -1], [2, -1], [0, 1]],
    &[[-2, -1], [1, -1], [1, 2]],
    &[[-1, -1], [1, 0], [0, 1], [-1, 0]],
    &[[-1, 0], [0, -1], [1, 0], [0, 1]],
    &[[-1, -1], [1, -1], [0, 1], [-1, 0]],
    &[[-1, -1], [1, -1], [1, 1], [-1, 0]],
    &[[-2, -1], [1, -1], [1, 0], [0, 1]],
    &[[-1, -1], [1, -1], [1, 1], [-1, 1]],
    &[[-2, -1], [0, -1], [1, 0], [1, 2]],
    &[[-1, -1], [0, -1], [1, 0], [0, 1], [-1, 0]],
    &[[-1, -1], [1, -1], [1, 0], [0, 1], [-1, 0]],
    &[[-1, -1], [1, -1], [1, 1], [0, 1], [-1, 0]],
    &[[-1, -1], [0, -1], [1, 0], [1, 1], [0, 1], [-1, 0]],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexivePolygon {
    /// One-based.
    pub id: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl ReflexivePolygon {
    /// The vertices as a single group.
    pub fn config(&self) -> VectorConfig {
        VectorConfig::single_group(self.vertices.clone()).expect("embedded polygons are well formed")
    }

    pub fn label(&self) -> String {
        format!("reflexive-2d-{:02}", self.id)
    }
}

pub fn reflexive_polygons() -> Vec<ReflexivePolygon> {
    POLYGONS
        .iter()
        .enumerate()
        .map(|(i, vs)| ReflexivePolygon { id: i + 1, vertices: vs.iter().map(|v| v.to_vec()).collect() })
        .collect()
}

pub fn polygon(id: usize) -> Option<ReflexivePolygon> {
    reflexive_polygons().into_iter().find(|p| p.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntryCheck {
    pub id: usize,
    pub reflexive: bool,
    pub fano: bool,
}

/// Recomputes reflexivity of the hull and the Fano property of each entry,
/// the latter in the lattice spanned by the vertices.
pub fn verify() -> Result<Vec<DatasetEntryCheck>> {
    reflexive_polygons()
        .into_iter()
        .map(|p| {
            let hull = polytope::convex_hull(&p.vertices)?;
            let vertices_match = {
                let mut a = hull.vertices().to_vec();
                let mut b = p.vertices.clone();
                a.sort();
                b.sort();
                a == b
            };
            Ok(DatasetEntryCheck {
                id: p.id,
                reflexive: vertices_match && polytope::is_reflexive(&hull),
                fano: polytope::is_fano(&lattice::normalize_to_span(&p.config())?.config)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::convex_hull;

    #[test]
    fn sixteen_reflexive_fano_entries() {
        let checks = verify().unwrap();
        assert_eq!(checks.len(), 16);
        assert!(checks.iter().all(|c| c.reflexive && c.fano));
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }

    #[test]
    fn pairwise_inequivalent() {
        // Vertex count, boundary points, edge lattice lengths and the turning
        // determinants of primitive edge directions are unimodular
        // invariants; together they separate all sixteen.
        let mut keys: Vec<(usize, usize, Vec<i64>, Vec<i64>)> = reflexive_polygons()
            .iter()
            .map(|p| {
                let hull = convex_hull(&p.vertices).unwrap();
                let boundary = hull.lattice_points().len() - 1;
                let vs = &p.vertices;
                let n = vs.len();
                let dirs: Vec<(i64, [i64; 2])> = (0..n)
                    .map(|i| {
                        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
                        let g = gcd(b[0] - a[0], b[1] - a[1]);
                        (g, [(b[0] - a[0]) / g, (b[1] - a[1]) / g])
                    })
                    .collect();
                let mut lengths: Vec<i64> = dirs.iter().map(|d| d.0).collect();
                let mut turns: Vec<i64> = (0..n)
                    .map(|i| {
                        let (u, w) = (dirs[i].1, dirs[(i + 1) % n].1);
                        (u[0] * w[1] - u[1] * w[0]).abs()
                    })
                    .collect();
                lengths.sort();
                turns.sort();
                (n, boundary, lengths, turns)
            })
            .collect();
        let total: usize = keys.iter().map(|k| k.1).sum();
        // The set is closed under duality and dual boundary counts add to 12.
        assert_eq!(total, 8 * 12);
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 16);
        assert_eq!(polygon(7).unwrap().vertices.len(), 4);
        assert!(polygon(17).is_none());
    }
}
