//! Primal simplex for packing programs `max 1ᵀw  s.t.  Mw <= 1, w >= 0`
//! where `M` is a 0/1 matrix given by its columns.
//!
//! The slack basis is feasible, so no phase one is needed. Pivoting uses a
//! dense tableau over exact rationals (or `f64` for basis search); only the nonzero pattern of the
//! pivot row and column is touched per pivot.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variables throughout.
    Bland,
    /// Most negative reduced cost; switches to Bland's rule after a run of
    /// degenerate pivots and stays there until the objective moves.
    DantzigBlandFallback { degenerate_limit: usize },
}

impl Default for PivotRule {
    fn default() -> Self {
        PivotRule::DantzigBlandFallback { degenerate_limit: 32 }
    }
}

pub(crate) struct PackingSolution {
    pub value: Rational,
    /// Optimal weight on each column.
    pub primal: Vec<Rational>,
    /// Optimal dual (covering) weight on each row.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Reduced costs `c_B B^{-1} a_j - c_j`; optimal when all are `>= 0`.
    obj: Vec<Rational>,
    obj_value: Rational,
    basis: Vec<usize>,
}

impl Tableau {
    fn entering(&self, rule: PivotRule, bland: bool) -> Option<usize> {
        if bland || rule == PivotRule::Bland {
            return self.obj.iter().position(|c| c.is_negative());
        }
        let mut best: Option<usize> = None;
        for (j, c) in self.obj.iter().enumerate() {
            if c.is_negative() && best.is_none_or(|b| *c < self.obj[b]) {
                best = Some(j);
            }
        }
        best
    }

    /// Minimum-ratio row; ties go to the smallest basic variable index.
    fn leaving(&self, col: usize) -> Option<(usize, Rational)> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let a = &row[col];
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
        best
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        let nz: Vec<usize> = self.rows[r].iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, _)| j).collect();
        {
            let prow = &mut self.rows[r];
            for &j in &nz {
                prow[j] *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] -= &f * &prow[j];
            }
            self.obj_value -= &f * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }
}

/// Solves `max Σ w  s.t.  Σ_{j : i ∈ col_j} w_j <= 1 for every row i, w >= 0`.
pub(crate) fn solve_packing(num_rows: usize, columns: &[Vec<usize>], rule: PivotRule) -> PackingSolution {
    let n = columns.len();
    let width = n + num_rows;
    let mut rows = vec![vec![Rational::zero(); width]; num_rows];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            rows[i][j] = Rational::one();
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[n + i] = Rational::one();
    }
    let mut obj = vec![Rational::zero(); width];
    for c in obj.iter_mut().take(n) {
        *c = -Rational::one();
    }
    let mut t = Tableau {
        rows,
        rhs: vec![Rational::one(); num_rows],
        obj,
        obj_value: Rational::zero(),
        basis: (n..width).collect(),
    };

    let mut pivots = 0;
    let mut degenerate_run = 0;
    let mut bland = false;
    while let Some(c) = t.entering(rule, bland) {
        let (r, ratio) = t.leaving(c).expect("packing program is bounded");
        if ratio.is_zero() {
            degenerate_run += 1;
            if let PivotRule::DantzigBlandFallback { degenerate_limit } = rule {
                if degenerate_run >= degenerate_limit {
                    bland = true;
                }
            }
        } else {
            degenerate_run = 0;
            bland = false;
        }
        t.pivot(r, c);
        pivots += 1;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[i].clone();
        }
    }
    let dual = t.obj[n..].to_vec();
    PackingSolution { value: t.obj_value, primal, dual, pivots }
}

const EPS: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-7;

pub(crate) struct FloatSolution {
    /// Final basis: column indices, slacks numbered from `columns.len()`.
    pub basis: Vec<usize>,
    pub pivots: usize,
    pub value: f64,
    /// Whether pricing found no improving column before the pivot limit.
    pub optimal: bool,
}

/// `1 + ε_j` with `ε_j` in `[1e-7, 2e-7)`, a fixed hash of `j`.
fn perturbed_one(j: usize) -> f64 {
    let h = (j as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 11;
    1.0 + 1e-7 * (1.0 + h as f64 / (1u64 << 53) as f64)
}

/// Dense tableau pivot on `(r, c)`. With `clamp`, right-hand sides are kept
/// nonnegative against rounding.
struct FloatTableau {
    width: usize,
    t: Vec<f64>,
    rhs: Vec<f64>,
    obj: Vec<f64>,
    basis: Vec<usize>,
}

impl FloatTableau {
    fn pivot(&mut self, r: usize, c: usize, clamp: bool) {
        let width = self.width;
        let inv = 1.0 / self.t[r * width + c];
        let prow: Vec<f64> = self.t[r * width..(r + 1) * width].iter().map(|v| v * inv).collect();
        let prhs = self.rhs[r] * inv;
        let nz: Vec<usize> = (0..width).filter(|&j| prow[j].abs() > 1e-14).collect();
        for i in 0..self.rhs.len() {
            let row = &mut self.t[i * width..(i + 1) * width];
            if i == r {
                row.copy_from_slice(&prow);
                self.rhs[i] = prhs;
                continue;
            }
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for &j in &nz {
                row[j] -= f * prow[j];
            }
            row[c] = 0.0;
            self.rhs[i] -= f * prhs;
            if clamp {
                self.rhs[i] = self.rhs[i].max(0.0);
            }
        }
        let f = self.obj[c];
        for &j in &nz {
            self.obj[j] -= f * prow[j];
        }
        self.obj[c] = 0.0;
        self.basis[r] = c;
    }
}

/// Runs the same pivoting on an `f64` tableau. The right-hand side is
/// perturbed slightly against primal degeneracy; once optimal, the true
/// right-hand side is restored and a few dual simplex pivots repair it. The
/// basis is only a candidate; callers must verify it exactly.
pub(crate) fn float_simplex(
    num_rows: usize,
    columns: &[Vec<usize>],
    rule: PivotRule,
    max_pivots: usize,
) -> FloatSolution {
    let n = columns.len();
    let width = n + num_rows;
    let mut t = vec![0f64; num_rows * width];
    for (j, col) in columns.iter().enumerate() {
        for &i in col {
            t[i * width + j] = 1.0;
        }
    }
    for i in 0..num_rows {
        t[i * width + n + i] = 1.0;
    }
    let rhs = (0..num_rows).map(perturbed_one).collect();
    let mut obj = vec![0f64; width];
    obj[..n].iter_mut().for_each(|c| *c = -1.0);
    let mut tab = FloatTableau { width, t, rhs, obj, basis: (n..width).collect() };

    let mut degenerate_run = 0;
    let mut bland = rule == PivotRule::Bland;
    let mut pivots = 0;
    let mut optimal = false;
    while pivots < max_pivots {
        let entering = if bland {
            tab.obj.iter().position(|&c| c < -EPS)
        } else {
            let (j, &c) =
                tab.obj.iter().enumerate().min_by(|a, b| a.1.partial_cmp(b.1).unwrap()).expect("nonempty tableau");
            (c < -EPS).then_some(j)
        };
        let Some(c) = entering else {
            optimal = true;
            break;
        };
        // Harris ratio test: bound the step with a small feasibility slack,
        // then take the largest pivot element within that bound.
        let mut theta_max = f64::INFINITY;
        for i in 0..num_rows {
            let a = tab.t[i * width + c];
            if a > PIVOT_TOL {
                theta_max = theta_max.min((tab.rhs[i] + EPS) / a);
            }
        }
        let mut best: Option<(usize, f64)> = None;
        for i in 0..num_rows {
            let a = tab.t[i * width + c];
            if a <= PIVOT_TOL || tab.rhs[i] / a > theta_max {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, _)) => {
                    let b = tab.t[bi * width + c];
                    if bland {
                        tab.basis[i] < tab.basis[bi]
                    } else {
                        a > b || (a == b && tab.basis[i] < tab.basis[bi])
                    }
                }
            };
            if better {
                best = Some((i, (tab.rhs[i] / a).max(0.0)));
            }
        }
        let (r, ratio) = best.expect("packing program is bounded");
        if ratio <= EPS {
            degenerate_run += 1;
            if let PivotRule::DantzigBlandFallback { degenerate_limit } = rule {
                if degenerate_run >= degenerate_limit {
                    bland = true;
                }
            }
        } else {
            degenerate_run = 0;
            bland = rule == PivotRule::Bland;
        }

        tab.pivot(r, c, true);
        pivots += 1;
    }
    if optimal {
        // The slack block holds B⁻¹, so B⁻¹1 is its row sums.
        for i in 0..num_rows {
            tab.rhs[i] = tab.t[i * width + n..(i + 1) * width].iter().sum();
        }
        while pivots < max_pivots {
            let leaving = (0..num_rows)
                .filter(|&i| tab.rhs[i] < -EPS)
                .min_by(|&a, &b| tab.rhs[a].total_cmp(&tab.rhs[b]).then(tab.basis[a].cmp(&tab.basis[b])));
            let Some(r) = leaving else { break };
            let row = &tab.t[r * width..(r + 1) * width];
            let entering = (0..width)
                .filter(|&j| row[j] < -PIVOT_TOL)
                .min_by(|&a, &b| (tab.obj[a].max(0.0) / -row[a]).total_cmp(&(tab.obj[b].max(0.0) / -row[b])));
            let Some(c) = entering else {
                optimal = false;
                break;
            };
            tab.pivot(r, c, false);
            pivots += 1;
        }
        optimal &= tab.rhs.iter().all(|&v| v >= -EPS);
    }
    let value = tab.basis.iter().zip(&tab.rhs).filter(|(&b, _)| b < n).map(|(_, v)| v).sum();
    FloatSolution { basis: tab.basis, pivots, value, optimal }
}

/// Revised simplex state for `min cᵀz s.t. -Az + s = -1`, with a dense
/// basis inverse. Variables below `n` are outputs, the rest input slacks.
struct RevisedCover<'a> {
    m: usize,
    n: usize,
    cols: &'a [Vec<usize>],
    binv: Vec<f64>,
    /// Squared norms of the rows of `binv`, for dual steepest edge.
    norms: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    xb: Vec<f64>,
    d: Vec<f64>,
}

impl RevisedCover<'_> {
    fn binv_row(&self, i: usize) -> &[f64] {
        &self.binv[i * self.m..(i + 1) * self.m]
    }

    /// `B⁻¹a_j`.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        if j >= self.n {
            return (0..m).map(|i| self.binv[i * m + j - self.n]).collect();
        }
        (0..m).map(|i| -self.cols[j].iter().map(|&k| self.binv[i * m + k]).sum::<f64>()).collect()
    }

    /// `ρᵀa_j` for every variable, with `ρ` a row of `B⁻¹`.
    fn price_row(&self, rho: &[f64]) -> Vec<f64> {
        let mut alpha: Vec<f64> = self.cols.iter().map(|c| -c.iter().map(|&k| rho[k]).sum::<f64>()).collect();
        alpha.extend_from_slice(rho);
        alpha
    }

    /// Basis change: `q` enters in row `r`. `u = B⁻¹a_q`, `alpha` the pivot
    /// row over all variables.
    fn pivot(&mut self, r: usize, q: usize, u: &[f64], alpha: &[f64]) {
        let m = self.m;
        let theta_d = self.d[q] / u[r];
        for (j, dj) in self.d.iter_mut().enumerate() {
            if !self.is_basic[j] {
                *dj -= theta_d * alpha[j];
            }
        }
        let leaving = self.basis[r];
        self.d[leaving] = -theta_d;
        self.d[q] = 0.0;

        let theta_p = self.xb[r] / u[r];
        for (i, x) in self.xb.iter_mut().enumerate() {
            *x -= theta_p * u[i];
        }
        self.xb[r] = theta_p;

        let prow: Vec<f64> = self.binv_row(r).iter().map(|v| v / u[r]).collect();
        for (i, (row, &f)) in self.binv.chunks_mut(m).zip(u).enumerate() {
            if i != r && f != 0.0 {
                row.iter_mut().zip(&prow).for_each(|(v, p)| *v -= f * p);
            } else if i == r {
                row.copy_from_slice(&prow);
            } else {
                continue;
            }
            self.norms[i] = row.iter().map(|v| v * v).sum();
        }
        self.is_basic[leaving] = false;
        self.is_basic[q] = true;
        self.basis[r] = q;
    }

    /// Reduced costs for objective `c` under the current basis.
    fn reprice(&mut self, c: &[f64]) {
        let m = self.m;
        let mut y = vec![0f64; m];
        for i in 0..m {
            let cb = c[self.basis[i]];
            if cb != 0.0 {
                y.iter_mut().zip(self.binv_row(i)).for_each(|(yk, b)| *yk += cb * b);
            }
        }
        let alpha = self.price_row(&y);
        for j in 0..self.n + m {
            self.d[j] = if self.is_basic[j] { 0.0 } else { c[j] - alpha[j] };
        }
    }
}

/// Dual simplex on the covering program `min 1ᵀz s.t. Az >= 1, z >= 0`, one
/// row per input. `columns[y]` lists the inputs of output `y`. The slack
/// basis is dual feasible from the start, so no phase one is needed. Costs
/// are perturbed slightly against dual degeneracy; a primal cleanup with the
/// true costs follows. Basis entries below `columns.len()` are outputs, the
/// rest input slacks.
pub(crate) fn float_dual_cover(num_rows: usize, columns: &[Vec<usize>], max_pivots: usize) -> FloatSolution {
    let (m, n) = (num_rows, columns.len());
    let mut true_cost = vec![0f64; n + m];
    true_cost[..n].iter_mut().for_each(|c| *c = 1.0);
    let perturbed: Vec<f64> = (0..n + m)
        .map(|j| {
            if j >= n {
                return 0.0;
            }
            perturbed_one(j)
        })
        .collect();
    let mut binv = vec![0f64; m * m];
    (0..m).for_each(|i| binv[i * m + i] = 1.0);
    let mut is_basic = vec![false; n + m];
    is_basic[n..].iter_mut().for_each(|b| *b = true);
    let mut s = RevisedCover {
        m,
        n,
        cols: columns,
        binv,
        norms: vec![1.0; m],
        basis: (n..n + m).collect(),
        is_basic,
        xb: vec![-1.0; m],
        d: perturbed,
    };

    let mut pivots = 0;
    let mut dual_done = false;
    while pivots < max_pivots {
        let leaving = (0..m)
            .filter(|&i| s.xb[i] < -EPS)
            .map(|i| (i, s.xb[i] * s.xb[i] / s.norms[i]))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i);
        let Some(r) = leaving else {
            dual_done = true;
            break;
        };
        let alpha = s.price_row(s.binv_row(r));
        // Harris ratio test on the reduced costs.
        let eligible = |j: usize| !s.is_basic[j] && alpha[j] < -PIVOT_TOL;
        let theta_max = (0..n + m)
            .filter(|&j| eligible(j))
            .map(|j| (s.d[j].max(0.0) + EPS * 1e-3) / -alpha[j])
            .fold(f64::INFINITY, f64::min);
        let q = (0..n + m)
            .filter(|&j| eligible(j) && s.d[j].max(0.0) / -alpha[j] <= theta_max)
            .max_by(|&a, &b| (-alpha[a]).total_cmp(&-alpha[b]).then(b.cmp(&a)))
            .expect("every input has an output");
        let u = s.ftran(q);
        s.pivot(r, q, &u, &alpha);
        pivots += 1;
    }

    // Primal cleanup: the basis is cover-feasible; restore the true costs.
    let mut optimal = false;
    if dual_done {
        s.reprice(&true_cost);
        while pivots < max_pivots {
            let entering =
                (0..n + m).filter(|&j| !s.is_basic[j] && s.d[j] < -EPS).min_by(|&a, &b| s.d[a].total_cmp(&s.d[b]));
            let Some(q) = entering else {
                optimal = true;
                break;
            };
            let u = s.ftran(q);
            let r = (0..m)
                .filter(|&i| u[i] > PIVOT_TOL)
                .min_by(|&a, &b| {
                    (s.xb[a].max(0.0) / u[a]).total_cmp(&(s.xb[b].max(0.0) / u[b])).then(s.basis[a].cmp(&s.basis[b]))
                })
                .expect("covering program is bounded below");
            let alpha = s.price_row(s.binv_row(r));
            s.pivot(r, q, &u, &alpha);
            pivots += 1;
        }
    }
    let value = s.basis.iter().zip(&s.xb).filter(|(&b, _)| b < n).map(|(_, v)| v).sum();
    FloatSolution { basis: s.basis, pivots, value, optimal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn float_basis_of_triangle() {
        let cols = vec![vec![0, 2], vec![0, 1], vec![1, 2]];
        let sol = float_simplex(3, &cols, PivotRule::default(), 100);
        assert!(sol.optimal && (sol.value - 1.5).abs() < 1e-12);
        let mut b = sol.basis;
        b.sort();
        assert_eq!(b, vec![0, 1, 2]);
    }

    #[test]
    fn triangle_edges_give_three_halves() {
        // rows = edges of a triangle, columns = vertices
        let cols = vec![vec![0, 2], vec![0, 1], vec![1, 2]];
        for rule in [PivotRule::Bland, PivotRule::default()] {
            let s = solve_packing(3, &cols, rule);
            assert_eq!(s.value, ratio(3, 2));
            assert_eq!(s.primal.iter().fold(Rational::zero(), |a, v| a + v), ratio(3, 2));
            assert_eq!(s.dual.iter().fold(Rational::zero(), |a, v| a + v), ratio(3, 2));
        }
    }

    #[test]
    fn disjoint_columns() {
        let cols = vec![vec![0], vec![1], vec![2, 3]];
        let s = solve_packing(4, &cols, PivotRule::Bland);
        assert_eq!(s.value, int(3));
    }
}
