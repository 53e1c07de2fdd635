//! Two-phase revised simplex over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::num::Num;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"num/den"` with the sign on the numerator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    (!d.is_zero()).then(|| Rational::new(n, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    /// Sparse coefficients `(variable, value)`.
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: RowSense,
    pub rhs: Rational,
}

/// `sense c.x` subject to the rows and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub rows: Vec<LpRow>,
}

impl LpModel {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        LpModel {
            sense,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, sense: RowSense, rhs: Rational) {
        assert!(coeffs.iter().all(|&(j, _)| j < self.var_count()));
        self.rows.push(LpRow { coeffs, sense, rhs });
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Exact feasibility of `x`, with no tolerance.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.var_count()
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs: Rational = r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                match r.sense {
                    RowSense::Le => lhs <= r.rhs,
                    RowSense::Ge => lhs >= r.rhs,
                    RowSense::Eq => lhs == r.rhs,
                }
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// One multiplier per row, feasible for the dual program.
    pub duals: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

/// Revised simplex state on `A x = b`, `x >= 0`, `b >= 0`, with an
/// explicit basis inverse. Columns are sparse.
struct Revised {
    cols: Vec<Vec<(usize, Num)>>,
    b_inv: Vec<Vec<Num>>,
    basis: Vec<usize>,
    /// Values of the basic variables.
    xb: Vec<Num>,
    pivots: usize,
}

impl Revised {
    fn m(&self) -> usize {
        self.basis.len()
    }

    /// `c_B^T B^{-1}`.
    fn prices(&self, cost: &[Num]) -> Vec<Num> {
        let m = self.m();
        let mut y = vec![Num::zero(); m];
        for (i, &bj) in self.basis.iter().enumerate() {
            let c = &cost[bj];
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.b_inv[i].iter().enumerate() {
                if !v.is_zero() {
                    y[k] += c * v;
                }
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[Num], y: &[Num], j: usize) -> Num {
        let mut d = cost[j].clone();
        for (i, a) in &self.cols[j] {
            if !y[*i].is_zero() {
                d -= a * &y[*i];
            }
        }
        d
    }

    /// `B^{-1} a_j`.
    fn direction(&self, j: usize) -> Vec<Num> {
        let m = self.m();
        (0..m)
            .map(|i| {
                let row = &self.b_inv[i];
                let mut s = Num::zero();
                for (k, a) in &self.cols[j] {
                    if !row[*k].is_zero() {
                        s += a * &row[*k];
                    }
                }
                s
            })
            .collect()
    }

    fn pivot(&mut self, r: usize, j: usize, w: &[Num]) {
        let inv = w[r].recip();
        let nz: Vec<usize> = (0..self.m())
            .filter(|&k| !self.b_inv[r][k].is_zero())
            .collect();
        for &k in &nz {
            self.b_inv[r][k] *= &inv;
        }
        self.xb[r] *= &inv;
        let prow = std::mem::take(&mut self.b_inv[r]);
        let px = self.xb[r].clone();
        for (i, wi) in w.iter().enumerate() {
            if i == r || wi.is_zero() {
                continue;
            }
            for &k in &nz {
                let d = wi * &prow[k];
                self.b_inv[i][k] -= d;
            }
            let d = wi * &px;
            self.xb[i] -= d;
        }
        self.b_inv[r] = prow;
        self.basis[r] = j;
        self.pivots += 1;
    }

    /// Maximizes `cost . x`. Columns with `allowed[j] == false` never
    /// enter. Dantzig's rule picks the entering column; after a run of
    /// degenerate pivots it falls back to Bland's rule (lowest improving
    /// column, lowest basic index on ratio ties) until the objective moves
    /// again, which rules out cycling.
    fn optimize(&mut self, cost: &[Num], allowed: &[bool]) -> Result<(), LpError> {
        const DEGENERATE_RUN: usize = 50;
        let mut degenerate = 0;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let y = self.prices(cost);
            let mut in_basis = vec![false; self.cols.len()];
            for &bj in &self.basis {
                in_basis[bj] = true;
            }
            let mut entering: Option<(usize, Num)> = None;
            for j in 0..self.cols.len() {
                if !allowed[j] || in_basis[j] {
                    continue;
                }
                let d = self.reduced_cost(cost, &y, j);
                if d.is_positive() && entering.as_ref().is_none_or(|(_, best)| d > *best) {
                    entering = Some((j, d));
                    if bland {
                        break;
                    }
                }
            }
            let Some((j, _)) = entering else {
                return Ok(());
            };
            let w = self.direction(j);
            let mut best: Option<(usize, Num)> = None;
            for (i, wi) in w.iter().enumerate() {
                if wi.is_positive() {
                    let ratio = &self.xb[i] / wi;
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
                None => return Err(LpError::Unbounded),
                Some((r, step)) => {
                    if step.is_zero() {
                        degenerate += 1;
                    } else {
                        degenerate = 0;
                    }
                    self.pivot(r, j, &w);
                }
            }
        }
    }
}

pub fn simplex_solve(model: &LpModel) -> Result<LpSolution, LpError> {
    let n = model.var_count();
    let m = model.row_count();
    // normalize to nonnegative right-hand sides
    let mut flipped = vec![false; m];
    let mut senses = Vec::with_capacity(m);
    for (i, r) in model.rows.iter().enumerate() {
        flipped[i] = r.rhs.is_negative();
        senses.push(match (r.sense, flipped[i]) {
            (RowSense::Le, true) => RowSense::Ge,
            (RowSense::Ge, true) => RowSense::Le,
            (s, _) => s,
        });
    }
    let mut cols: Vec<Vec<(usize, Num)>> = vec![Vec::new(); n];
    let mut rhs = Vec::with_capacity(m);
    for (i, r) in model.rows.iter().enumerate() {
        for (j, a) in &r.coeffs {
            if !a.is_zero() {
                let a = Num::from_big(a);
                cols[*j].push((i, if flipped[i] { -&a } else { a }));
            }
        }
        let b = Num::from_big(&r.rhs);
        rhs.push(if flipped[i] { -&b } else { b });
    }
    // one slack/surplus per inequality, then one artificial per Ge/Eq row
    let mut slack_col = vec![None; m];
    for i in 0..m {
        if senses[i] != RowSense::Eq {
            slack_col[i] = Some(cols.len());
            let sign = if senses[i] == RowSense::Le { 1 } else { -1 };
            cols.push(vec![(i, Num::int(sign))]);
        }
    }
    let art_start = cols.len();
    let mut unit_col = vec![0; m];
    for i in 0..m {
        if senses[i] == RowSense::Le {
            unit_col[i] = slack_col[i].unwrap();
        } else {
            unit_col[i] = cols.len();
            cols.push(vec![(i, Num::int(1))]);
        }
    }
    let total = cols.len();
    let b_inv = (0..m)
        .map(|i| {
            let mut row = vec![Num::zero(); m];
            row[i] = Num::int(1);
            row
        })
        .collect();
    let mut lp = Revised {
        cols,
        b_inv,
        basis: unit_col.clone(),
        xb: rhs,
        pivots: 0,
    };

    // phase 1: maximize minus the sum of artificials
    if art_start < total {
        let mut cost = vec![Num::zero(); total];
        for c in &mut cost[art_start..] {
            *c = Num::int(-1);
        }
        lp.optimize(&cost, &vec![true; total])?;
        let infeasible = (0..m).any(|i| lp.basis[i] >= art_start && !lp.xb[i].is_zero());
        if infeasible {
            return Err(LpError::Infeasible);
        }
        // drive zero-valued artificials out of the basis where possible;
        // the rows where this fails are redundant
        for r in 0..m {
            if lp.basis[r] < art_start {
                continue;
            }
            let in_basis: Vec<usize> = lp.basis.clone();
            let found = (0..art_start)
                .filter(|j| !in_basis.contains(j))
                .find_map(|j| {
                    let w = lp.direction(j);
                    (!w[r].is_zero()).then_some((j, w))
                });
            if let Some((j, w)) = found {
                lp.pivot(r, j, &w);
            }
        }
    }

    // phase 2
    let mut cost = vec![Num::zero(); total];
    for (j, c) in model.objective.iter().enumerate() {
        let c = Num::from_big(c);
        cost[j] = match model.sense {
            Sense::Max => c,
            Sense::Min => -&c,
        };
    }
    let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
    lp.optimize(&cost, &allowed)?;

    let mut x = vec![Rational::zero(); n];
    let mut value = Num::zero();
    for i in 0..m {
        let bj = lp.basis[i];
        if bj < n {
            x[bj] = lp.xb[i].to_big();
        }
        value += &(&cost[bj] * &lp.xb[i]);
    }
    let mut value = value.to_big();
    let y = lp.prices(&cost);
    let mut duals: Vec<Rational> = y
        .iter()
        .zip(&flipped)
        .map(|(v, &f)| if f { -v.to_big() } else { v.to_big() })
        .collect();
    if model.sense == Sense::Min {
        value = -value;
        for v in &mut duals {
            *v = -v.clone();
        }
    }
    Ok(LpSolution {
        value,
        x,
        duals,
        pivots: lp.pivots,
    })
}

/// Checks that `y` is feasible for the dual of `model` and reaches
/// `value` (which makes both sides optimal). Dual signs follow the row
/// senses: for a maximization, `<=` rows get `y >= 0` and `>=` rows get
/// `y <= 0`; a minimization mirrors this.
pub fn is_dual_certificate(model: &LpModel, y: &[Rational], value: &Rational) -> bool {
    if y.len() != model.row_count() {
        return false;
    }
    let max = model.sense == Sense::Max;
    let signs_ok = model.rows.iter().zip(y).all(|(r, v)| match (r.sense, max) {
        (RowSense::Eq, _) => true,
        (RowSense::Le, true) | (RowSense::Ge, false) => !v.is_negative(),
        (RowSense::Ge, true) | (RowSense::Le, false) => !v.is_positive(),
    });
    let mut col = vec![Rational::zero(); model.var_count()];
    for (r, v) in model.rows.iter().zip(y) {
        for (j, a) in &r.coeffs {
            col[*j] += a * v;
        }
    }
    let cols_ok =
        col.iter()
            .zip(&model.objective)
            .all(|(yc, c)| if max { yc >= c } else { yc <= c });
    let obj: Rational = model.rows.iter().zip(y).map(|(r, v)| &r.rhs * v).sum();
    signs_ok && cols_ok && obj == *value
}
