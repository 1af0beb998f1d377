//! Dense two-phase simplex over exact rationals, for the small linear
//! programs used in enumeration bounds and feasibility tests.
//!
//! Solves `max c.x` subject to `A x <= b` with `x` free. Bland's rule is used
//! throughout, so the method terminates on degenerate problems.

use num_traits::{One, Signed, Zero};

use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (v, pv) in self.obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< allowed`.
    fn run(&mut self, allowed: usize) -> Step {
        let rhs = self.ncols;
        loop {
            let Some(col) = (0..allowed).find(|&j| self.obj[j].is_positive()) else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return Step::Unbounded,
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let rhs = self.ncols;
        let mut obj = vec![Rational::zero(); rhs + 1];
        obj[..costs.len()].clone_from_slice(costs);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &obj[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            let cb = cb.clone();
            for (v, rv) in obj.iter_mut().zip(row) {
                if !rv.is_zero() {
                    *v -= &cb * rv;
                }
            }
        }
        self.obj = obj;
    }
}

/// Maximizes `c.x` over `{x : A x <= b}`.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Columns: u (n), v (n), slack (m), artificial (one per negative rhs), rhs.
    let negative: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let nart = negative.len();
    let ncols = 2 * n + m + nart;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_of_row = vec![None; m];
    for (k, &i) in negative.iter().enumerate() {
        art_of_row[i] = Some(2 * n + m + k);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); ncols + 1];
        let sign = if b[i].is_negative() { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            if !a[i][j].is_zero() {
                row[j] = &a[i][j] * &sign;
                row[n + j] = -&row[j];
            }
        }
        row[2 * n + i] = sign.clone();
        row[ncols] = &b[i] * &sign;
        match art_of_row[i] {
            Some(col) => {
                row[col] = Rational::one();
                basis.push(col);
            }
            None => basis.push(2 * n + i),
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, obj: Vec::new(), basis, ncols };

    if nart > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(2 * n + m) {
            *c = -Rational::one();
        }
        tab.set_objective(&phase1);
        tab.run(ncols);
        if !tab.obj[ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let first_art = 2 * n + m;
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= first_art {
                match (0..first_art).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(col) => {
                        tab.pivot(r, col);
                        r += 1;
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for row in tab.rows.iter_mut() {
            for v in row.iter_mut().take(ncols).skip(first_art) {
                *v = Rational::zero();
            }
        }
    }

    let mut costs = vec![Rational::zero(); ncols];
    for j in 0..n {
        costs[j] = c[j].clone();
        costs[n + j] = -&c[j];
    }
    tab.set_objective(&costs);
    match tab.run(2 * n + m) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let mut vals = vec![Rational::zero(); ncols];
            for (i, &bv) in tab.basis.iter().enumerate() {
                vals[bv] = tab.rows[i][ncols].clone();
            }
            let point: Vec<Rational> = (0..n).map(|j| &vals[j] - &vals[n + j]).collect();
            LpOutcome::Optimal { value: -&tab.obj[ncols], point }
        }
    }
}

/// Returns a point of `{x : A x <= b}` if one exists.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    match maximize(&vec![Rational::zero(); n], a, b) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rational>> {
        m.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn box_maximum() {
        // max x + y on the unit box shifted to [-1, 2] x [0, 3]
        let a = rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let b = vec![r(2), r(1), r(3), r(0)];
        let out = maximize(&[r(1), r(1)], &a, &b);
        assert_eq!(out.value(), Some(&r(5)));
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x >= 2, y >= 3, x + y <= 10; min x => max -x
        let a = rows(&[&[-1, 0], &[0, -1], &[1, 1]]);
        let b = vec![r(-2), r(-3), r(10)];
        let out = maximize(&[r(-1), r(0)], &a, &b);
        assert_eq!(out.value(), Some(&r(-2)));
        match out {
            LpOutcome::Optimal { point, .. } => {
                assert!(point[0] == r(2) && point[1] >= r(3) && &point[0] + &point[1] <= r(10))
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = rows(&[&[1], &[-1]]);
        assert_eq!(maximize(&[r(1)], &a, &[r(0), r(-1)]), LpOutcome::Infeasible);
        let a = rows(&[&[-1]]);
        assert_eq!(maximize(&[r(1)], &a, &[r(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn rational_optimum() {
        // max y s.t. 2y <= x, x <= 1
        let a = rows(&[&[-1, 2], &[1, 0]]);
        let out = maximize(&[r(0), r(1)], &a, &[r(0), r(1)]);
        assert_eq!(out.value(), Some(&Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn degenerate_redundant_equalities() {
        // x + y = 1 written twice as inequality pairs, plus x >= 0, y >= 0
        let a = rows(&[&[1, 1], &[-1, -1], &[1, 1], &[-1, -1], &[-1, 0], &[0, -1]]);
        let b = vec![r(1), r(-1), r(1), r(-1), r(0), r(0)];
        assert_eq!(maximize(&[r(3), r(1)], &a, &b).value(), Some(&r(3)));
    }
}
