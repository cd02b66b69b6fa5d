use crate::formulations::LinearSystem;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Set when optimal.
    pub value: Option<Rational>,
    /// One value per system variable, when optimal.
    pub point: Option<Vec<Rational>>,
}

impl LpResult {
    fn without_optimum(status: LpStatus) -> Self {
        LpResult {
            status,
            value: None,
            point: None,
        }
    }
}

/// Dense-tableau primal simplex over exact rationals with Bland's rule.
///
/// Rows `-v <= 0` become sign bounds on `v`; every other variable is split
/// into a positive and a negative part. Phase one runs once in
/// [`LpSolver::new`]; each [`LpSolver::maximize`] call continues from the
/// basis left by the previous one.
#[derive(Debug, Clone)]
pub struct LpSolver {
    system: LinearSystem,
    /// system variable -> (positive column, negative column if free)
    columns: Vec<(usize, Option<usize>)>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    feasible: bool,
    pivots: usize,
}

impl LpSolver {
    pub fn new(sys: &LinearSystem) -> Self {
        let nv = sys.num_vars();
        let mut nonneg = vec![false; nv];
        let mut kept_ineq = Vec::new();
        for row in &sys.inequalities {
            match row.coeffs.as_slice() {
                [(v, c)] if c.is_negative() && row.rhs.is_zero() => nonneg[*v] = true,
                _ => kept_ineq.push(row),
            }
        }
        let mut columns = Vec::with_capacity(nv);
        let mut ncols = 0;
        for &nn in &nonneg {
            let pos = ncols;
            ncols += 1;
            let neg = if nn {
                None
            } else {
                ncols += 1;
                Some(pos + 1)
            };
            columns.push((pos, neg));
        }
        let slack0 = ncols;
        ncols += kept_ineq.len();
        let m = kept_ineq.len() + sys.equalities.len();
        let art0 = ncols;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut num_art = 0;
        let all_rows = kept_ineq
            .iter()
            .enumerate()
            .map(|(i, r)| (Some(i), *r))
            .chain(sys.equalities.iter().map(|r| (None, r)));
        for (slack, row) in all_rows {
            let mut t = vec![Rational::zero(); ncols];
            for (v, c) in &row.coeffs {
                let (p, n) = columns[*v];
                t[p] = c.clone();
                if let Some(n) = n {
                    t[n] = -c;
                }
            }
            if let Some(i) = slack {
                t[slack0 + i] = Rational::one();
            }
            let mut b = row.rhs.clone();
            if b.is_negative() {
                for x in t.iter_mut() {
                    *x = -&*x;
                }
                b = -b;
            }
            match slack {
                Some(i) if !t[slack0 + i].is_negative() => basis.push(slack0 + i),
                _ => {
                    basis.push(art0 + num_art);
                    num_art += 1;
                }
            }
            rows.push(t);
            rhs.push(b);
        }
        // artificial columns
        for (i, t) in rows.iter_mut().enumerate() {
            t.resize(art0 + num_art, Rational::zero());
            if basis[i] >= art0 {
                t[basis[i]] = Rational::one();
            }
        }
        let mut solver = LpSolver {
            system: sys.clone(),
            columns,
            rows,
            rhs,
            basis,
            ncols: art0 + num_art,
            feasible: false,
            pivots: 0,
        };
        solver.phase_one(art0);
        solver
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    /// Total pivots performed so far.
    pub fn pivots(&self) -> usize {
        self.pivots
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn phase_one(&mut self, art0: usize) {
        let ncols = self.ncols();
        let cost: Vec<Rational> = (0..ncols)
            .map(|j| if j >= art0 { Rational::from_int(-1) } else { Rational::zero() })
            .collect();
        let (mut d, mut value) = self.reduced_costs(&cost);
        let bounded = self.run(&mut d, &mut value);
        debug_assert!(bounded, "phase one is bounded");
        if value.is_negative() {
            self.feasible = false;
            return;
        }
        // move artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= art0 {
                match (0..art0).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j, None);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for r in &mut self.rows {
            r.truncate(art0);
        }
        self.ncols = art0;
        self.feasible = true;
    }

    /// `d_j = c_j - c_B · T_j` and the current objective value.
    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut d = cost.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, t) in self.rows[i].iter().enumerate() {
                if !t.is_zero() {
                    d[j] -= &(cb * t);
                }
            }
            value += &(cb * &self.rhs[i]);
        }
        (d, value)
    }

    /// Pivot until optimal; `false` if unbounded.
    fn run(&mut self, d: &mut [Rational], value: &mut Rational) -> bool {
        loop {
            let Some(col) = d.iter().position(|x| x.is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(row, col, Some((d, value)));
        }
    }

    fn pivot(&mut self, r: usize, c: usize, objective: Option<(&mut [Rational], &mut Rational)>) {
        self.pivots += 1;
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let nz: Vec<(usize, Rational)> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        let br = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for (j, x) in &nz {
                row[*j] -= &(&f * x);
            }
            self.rhs[i] -= &(&f * &br);
        }
        if let Some((d, value)) = objective {
            let f = d[c].clone();
            if !f.is_zero() {
                for (j, x) in &nz {
                    d[*j] -= &(&f * x);
                }
                *value += &(&f * &br);
            }
        }
        self.basis[r] = c;
    }

    /// Maximize `Σ w_e x_e` over the original variables (aux weights are 0).
    pub fn maximize(&mut self, weights: &[Rational]) -> LpResult {
        assert!(weights.len() <= self.system.num_vars(), "objective longer than the variable list");
        if !self.feasible {
            return LpResult::without_optimum(LpStatus::Infeasible);
        }
        let ncols = self.ncols();
        let mut cost = vec![Rational::zero(); ncols];
        for (v, w) in weights.iter().enumerate() {
            let (p, n) = self.columns[v];
            cost[p] = w.clone();
            if let Some(n) = n {
                cost[n] = -w;
            }
        }
        let (mut d, mut value) = self.reduced_costs(&cost);
        if !self.run(&mut d, &mut value) {
            return LpResult::without_optimum(LpStatus::Unbounded);
        }
        let point = self.point();
        if let Some(v) = self.system.first_violation(&point) {
            panic!("simplex produced an infeasible point: {v:?}");
        }
        let check: Rational = weights.iter().zip(&point).map(|(w, x)| w * x).sum();
        assert_eq!(check, value, "objective value disagrees with the point");
        LpResult {
            status: LpStatus::Optimal,
            value: Some(value),
            point: Some(point),
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut col_value = vec![Rational::zero(); self.ncols()];
        for (i, &b) in self.basis.iter().enumerate() {
            col_value[b] = self.rhs[i].clone();
        }
        self.columns
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_value[p] - &col_value[n],
                None => col_value[p].clone(),
            })
            .collect()
    }
}

/// Exact maximum of `Σ w_e x_e` over `sys`.
pub fn simplex_max(sys: &LinearSystem, weights: &[Rational]) -> LpResult {
    LpSolver::new(sys).maximize(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::formulations::{edmonds_system, Row};
    use crate::graph::EnumerationCaps;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    fn k3() -> LinearSystem {
        edmonds_system(&fixtures::complete(3), true, true, EnumerationCaps::default()).unwrap()
    }

    #[test]
    fn k3_examples() {
        assert_eq!(simplex_max(&k3(), &ints(&[1, 1, 1])).value, Some(Rational::from_int(2)));
        assert_eq!(simplex_max(&k3(), &ints(&[0, 0, 0])).value, Some(Rational::zero()));
        assert_eq!(simplex_max(&k3(), &ints(&[1, 1, -1])).value, Some(Rational::from_int(2)));
        let r = simplex_max(&k3(), &[Rational::new(1, 2), Rational::new(1, 3), Rational::new(1, 6)]);
        assert_eq!(r.value, Some(Rational::new(5, 6)));
    }

    #[test]
    fn unbounded_and_infeasible() {
        let mut s = LinearSystem::new(1);
        s.add_inequality(Row::new([(0, Rational::from_int(-1))], Rational::zero()));
        assert_eq!(simplex_max(&s, &ints(&[1])).status, LpStatus::Unbounded);
        assert_eq!(simplex_max(&s, &ints(&[-1])).value, Some(Rational::zero()));
        s.add_equality(Row::new([(0, Rational::one())], Rational::from_int(-1)));
        assert_eq!(simplex_max(&s, &ints(&[1])).status, LpStatus::Infeasible);
    }

    #[test]
    fn free_variables_and_equalities() {
        // x0 free, x0 + x1 = 3, x1 <= 1, maximise -x0
        let mut s = LinearSystem::new(2);
        s.add_equality(Row::new([(0, Rational::one()), (1, Rational::one())], Rational::from_int(3)));
        s.add_inequality(Row::new([(1, Rational::one())], Rational::one()));
        let r = simplex_max(&s, &ints(&[-1, 0]));
        assert_eq!(r.value, Some(Rational::from_int(-2)));
        // redundant duplicated equality
        s.add_equality(Row::new([(0, Rational::from_int(2)), (1, Rational::from_int(2))], Rational::from_int(6)));
        assert_eq!(simplex_max(&s, &ints(&[-1, 0])).value, Some(Rational::from_int(-2)));
    }

    #[test]
    fn negative_right_hand_side() {
        // x >= 2 written as -x <= -2, maximise -x
        let mut s = LinearSystem::new(1);
        s.add_inequality(Row::new([(0, Rational::from_int(-1))], Rational::from_int(-2)));
        assert_eq!(simplex_max(&s, &ints(&[-1])).value, Some(Rational::from_int(-2)));
    }

    #[test]
    fn warm_start_matches_cold_start() {
        let sys = k3();
        let mut warm = LpSolver::new(&sys);
        for w in [[3, 2, 1], [-1, 5, 5], [0, 0, 1], [2, -3, 2]] {
            let w = ints(&w);
            assert_eq!(warm.maximize(&w).value, simplex_max(&sys, &w).value);
        }
    }

    #[test]
    fn row_order_does_not_matter() {
        let sys = k3();
        let mut rev = sys.clone();
        rev.inequalities.reverse();
        for w in [[3, 2, 1], [1, 1, 1], [-1, 2, 2]] {
            let w = ints(&w);
            assert_eq!(simplex_max(&sys, &w).value, simplex_max(&rev, &w).value);
        }
    }
}
