//! Exact rational linear programming with verifiable certificates.
//!
//! A self-contained dense two-phase simplex over [`Rat`] with Bland's
//! rule, so every run terminates and identical inputs yield identical
//! certificates. Variables are free; nonnegativity, when wanted, is an
//! explicit constraint. Every outcome carries evidence that can be
//! re-checked by plain arithmetic:
//!
//! * `Optimal` — a point satisfying every constraint exactly,
//! * `Unbounded` — a feasible point plus an improving recession ray,
//! * `Infeasible` — a Farkas combination of the constraints whose sum
//!   is the contradiction `0 <= negative`.
//!
//! [`solve_strict`] layers Stiemke-style strict feasibility on top: it
//! maximizes an auxiliary margin `eps` under `x_j >= eps` for the
//! designated variables, and when the optimum is not positive it emits
//! multipliers deriving the valid inequality `eps <= 0`, which rules
//! out every strictly positive solution at once.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    /// Does `x` satisfy this constraint exactly?
    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rat>,
    pub sense: Sense,
}

impl LinearProgram {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.objective.len() != self.num_vars {
            return Err(CoreError::MalformedLp(format!(
                "objective has {} coefficients for {} variables",
                self.objective.len(),
                self.num_vars
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(CoreError::MalformedLp(format!(
                    "constraint {i} has {} coefficients for {} variables",
                    c.coeffs.len(),
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    pub fn is_feasible_point(&self, x: &[Rat]) -> bool {
        x.len() == self.num_vars && self.constraints.iter().all(|c| c.holds_at(x))
    }

    fn objective_at(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Multipliers over the constraints of an infeasible program.
///
/// The sign discipline keeps every row usable as stated: `>= 0` on
/// `<=` rows, `<= 0` on `>=` rows, free on equalities. A valid
/// certificate combines the rows into `0 <= rhs` with `rhs < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rat>,
}

impl FarkasCertificate {
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        verify_combination(&self.multipliers, &lp.constraints, lp.num_vars)
            .map(|(combined, rhs)| combined.iter().all(Rat::is_zero) && rhs.is_negative())
            .unwrap_or(false)
    }
}

/// Checks multiplier signs against the relations and returns the
/// combined coefficient vector and right-hand side.
fn verify_combination(
    multipliers: &[Rat],
    constraints: &[Constraint],
    num_vars: usize,
) -> Option<(Vec<Rat>, Rat)> {
    if multipliers.len() != constraints.len() {
        return None;
    }
    for (lam, c) in multipliers.iter().zip(constraints) {
        let ok = match c.relation {
            Relation::Le => !lam.is_negative(),
            Relation::Ge => !lam.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return None;
        }
    }
    let mut combined = vec![Rat::zero(); num_vars];
    let mut rhs = Rat::zero();
    for (lam, c) in multipliers.iter().zip(constraints) {
        if lam.is_zero() {
            continue;
        }
        for (acc, a) in combined.iter_mut().zip(&c.coeffs) {
            *acc += &(lam * a);
        }
        rhs += &(lam * &c.rhs);
    }
    Some((combined, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LpOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Unbounded { x: Vec<Rat>, ray: Vec<Rat> },
    Infeasible { farkas: FarkasCertificate },
}

impl LpOutcome {
    /// Re-verifies the outcome against the program by substitution.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        match self {
            LpOutcome::Optimal { x, value } => {
                lp.is_feasible_point(x) && lp.objective_at(x) == *value
            }
            LpOutcome::Unbounded { x, ray } => {
                if !lp.is_feasible_point(x) || ray.len() != lp.num_vars {
                    return false;
                }
                // Recession direction: the constraint relations must be
                // preserved under arbitrarily long steps.
                for c in &lp.constraints {
                    let d: Rat = c.coeffs.iter().zip(ray).map(|(a, v)| a * v).sum();
                    let ok = match c.relation {
                        Relation::Le => !d.is_positive(),
                        Relation::Eq => d.is_zero(),
                        Relation::Ge => !d.is_negative(),
                    };
                    if !ok {
                        return false;
                    }
                }
                let gain: Rat = lp.objective.iter().zip(ray).map(|(c, v)| c * v).sum();
                match lp.sense {
                    Sense::Maximize => gain.is_positive(),
                    Sense::Minimize => gain.is_negative(),
                }
            }
            LpOutcome::Infeasible { farkas } => farkas.verify(lp),
        }
    }
}

/// A constraint system together with a set of variables required to be
/// strictly positive in any acceptable solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictFeasibilityProblem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    pub strict_vars: Vec<usize>,
}

/// Multipliers over the strictified system
/// `{base rows, x_j - eps >= 0 (j strict), eps <= 1}` that derive either
/// `eps <= w` with `w <= 0`, or an outright contradiction. Both cases
/// prove that no solution has every strict variable positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictCertificate {
    pub multipliers: Vec<Rat>,
}

impl StrictCertificate {
    pub fn verify(&self, problem: &StrictFeasibilityProblem) -> bool {
        let aux = match strictified_lp(problem) {
            Ok(lp) => lp,
            Err(_) => return false,
        };
        let Some((combined, rhs)) =
            verify_combination(&self.multipliers, &aux.constraints, aux.num_vars)
        else {
            return false;
        };
        // Coefficients on the original variables must cancel exactly.
        if combined[..problem.num_vars].iter().any(|v| !v.is_zero()) {
            return false;
        }
        let eps_coeff = &combined[problem.num_vars];
        if eps_coeff.is_positive() {
            !rhs.is_positive()
        } else if eps_coeff.is_zero() {
            rhs.is_negative()
        } else {
            false
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum StrictOutcome {
    Feasible { x: Vec<Rat>, epsilon: Rat },
    Infeasible { certificate: StrictCertificate },
}

impl StrictOutcome {
    pub fn verify(&self, problem: &StrictFeasibilityProblem) -> bool {
        match self {
            StrictOutcome::Feasible { x, epsilon } => {
                if !epsilon.is_positive() || x.len() != problem.num_vars {
                    return false;
                }
                problem.constraints.iter().all(|c| c.holds_at(x))
                    && problem.strict_vars.iter().all(|&j| &x[j] >= epsilon)
            }
            StrictOutcome::Infeasible { certificate } => certificate.verify(problem),
        }
    }
}

/// The auxiliary program: variables `(x, eps)`, maximizing `eps` under
/// the base rows, `x_j - eps >= 0` for strict variables, `eps <= 1`.
fn strictified_lp(problem: &StrictFeasibilityProblem) -> Result<LinearProgram, CoreError> {
    let n = problem.num_vars;
    for &j in &problem.strict_vars {
        if j >= n {
            return Err(CoreError::MalformedLp(format!(
                "strict variable {j} out of range for {n} variables"
            )));
        }
    }
    let mut constraints = Vec::with_capacity(problem.constraints.len() + problem.strict_vars.len() + 1);
    for c in &problem.constraints {
        if c.coeffs.len() != n {
            return Err(CoreError::MalformedLp(format!(
                "constraint has {} coefficients for {} variables",
                c.coeffs.len(),
                n
            )));
        }
        let mut coeffs = c.coeffs.clone();
        coeffs.push(Rat::zero());
        constraints.push(Constraint::new(coeffs, c.relation, c.rhs.clone()));
    }
    for &j in &problem.strict_vars {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[j] = Rat::one();
        coeffs[n] = -Rat::one();
        constraints.push(Constraint::new(coeffs, Relation::Ge, Rat::zero()));
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = Rat::one();
    constraints.push(Constraint::new(cap, Relation::Le, Rat::one()));

    let mut objective = vec![Rat::zero(); n + 1];
    objective[n] = Rat::one();
    Ok(LinearProgram {
        num_vars: n + 1,
        constraints,
        objective,
        sense: Sense::Maximize,
    })
}

/// Solves a strict feasibility problem.
///
/// Feasible outcomes report the margin-maximizing point; infeasible
/// outcomes carry a [`StrictCertificate`].
pub fn solve_strict(problem: &StrictFeasibilityProblem) -> Result<StrictOutcome, CoreError> {
    let aux = strictified_lp(problem)?;
    let mut solver = Solver::new(&aux)?;
    let outcome = match solver.run()? {
        RawOutcome::Infeasible { multipliers } => StrictOutcome::Infeasible {
            certificate: StrictCertificate { multipliers },
        },
        RawOutcome::Optimal { x, value } => {
            if value.is_positive() {
                let epsilon = value;
                let x = x[..problem.num_vars].to_vec();
                StrictOutcome::Feasible { x, epsilon }
            } else {
                let multipliers = solver.optimal_duals();
                StrictOutcome::Infeasible {
                    certificate: StrictCertificate { multipliers },
                }
            }
        }
        RawOutcome::Unbounded { .. } => {
            unreachable!("auxiliary margin objective is capped at 1")
        }
    };
    debug_assert!(outcome.verify(problem), "strict outcome failed to re-verify");
    Ok(outcome)
}

/// Solves a general linear program, producing a verifiable outcome.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, CoreError> {
    let mut solver = Solver::new(lp)?;
    let outcome = match solver.run()? {
        RawOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value },
        RawOutcome::Unbounded { x, ray } => LpOutcome::Unbounded { x, ray },
        RawOutcome::Infeasible { multipliers } => LpOutcome::Infeasible {
            farkas: FarkasCertificate { multipliers },
        },
    };
    debug_assert!(outcome.verify(lp), "LP outcome failed to re-verify");
    Ok(outcome)
}

enum RawOutcome {
    Optimal { x: Vec<Rat>, value: Rat },
    Unbounded { x: Vec<Rat>, ray: Vec<Rat> },
    Infeasible { multipliers: Vec<Rat> },
}

/// Dense two-phase tableau simplex in standard form.
///
/// Free variables are split as `x = x+ - x-`; each inequality gains a
/// slack or surplus column; rows are sign-normalized so the right-hand
/// side is nonnegative. Phase one minimizes the artificial sum from the
/// identity basis. Bland's rule everywhere.
struct Solver {
    sense: Sense,
    num_orig_vars: usize,
    num_orig_rows: usize,
    ncols: usize,
    // Immutable standard-form data, used for dual extraction.
    std_a: Vec<Vec<Rat>>,
    std_c: Vec<Rat>,
    negated: Vec<bool>,
    // Mutable tableau state.
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    row_map: Vec<usize>,
    reduced: Vec<Rat>,
}

impl Solver {
    fn new(lp: &LinearProgram) -> Result<Self, CoreError> {
        lp.validate()?;
        let n = lp.num_vars;
        let m = lp.constraints.len();
        let mut slack_count = 0;
        for c in &lp.constraints {
            if c.relation != Relation::Eq {
                slack_count += 1;
            }
        }
        let ncols = 2 * n + slack_count;

        let mut std_a = vec![vec![Rat::zero(); ncols]; m];
        let mut rhs = Vec::with_capacity(m);
        let mut negated = vec![false; m];
        let mut slack_at = 2 * n;
        for (i, c) in lp.constraints.iter().enumerate() {
            for (j, a) in c.coeffs.iter().enumerate() {
                std_a[i][2 * j] = a.clone();
                std_a[i][2 * j + 1] = -a;
            }
            match c.relation {
                Relation::Le => {
                    std_a[i][slack_at] = Rat::one();
                    slack_at += 1;
                }
                Relation::Ge => {
                    std_a[i][slack_at] = -Rat::one();
                    slack_at += 1;
                }
                Relation::Eq => {}
            }
            let mut b = c.rhs.clone();
            if b.is_negative() {
                negated[i] = true;
                b = -b;
                for v in &mut std_a[i] {
                    *v = -&*v;
                }
            }
            rhs.push(b);
        }

        // Internal objective is always "minimize".
        let mut std_c = vec![Rat::zero(); ncols];
        for (j, c) in lp.objective.iter().enumerate() {
            let c = match lp.sense {
                Sense::Maximize => -c,
                Sense::Minimize => c.clone(),
            };
            std_c[2 * j + 1] = -&c;
            std_c[2 * j] = c;
        }

        Ok(Solver {
            sense: lp.sense,
            num_orig_vars: n,
            num_orig_rows: m,
            ncols,
            std_a,
            std_c,
            negated,
            rows: Vec::new(),
            rhs,
            basis: Vec::new(),
            row_map: (0..m).collect(),
            reduced: Vec::new(),
        })
    }

    fn run(&mut self) -> Result<RawOutcome, CoreError> {
        if let Some(multipliers) = self.phase_one() {
            return Ok(RawOutcome::Infeasible { multipliers });
        }
        Ok(self.phase_two())
    }

    /// Returns Farkas multipliers over the original constraints when
    /// the system is infeasible, `None` when a basic feasible solution
    /// was found.
    fn phase_one(&mut self) -> Option<Vec<Rat>> {
        let m = self.rhs.len();
        let total = self.ncols + m;
        self.rows = (0..m)
            .map(|i| {
                let mut row = Vec::with_capacity(total);
                row.extend(self.std_a[i].iter().cloned());
                for k in 0..m {
                    row.push(if k == i { Rat::one() } else { Rat::zero() });
                }
                row
            })
            .collect();
        self.basis = (self.ncols..total).collect();

        // Reduced costs for min(sum of artificials) from the identity
        // basis: 0 on artificials, minus the column sum elsewhere.
        self.reduced = vec![Rat::zero(); total];
        for j in 0..self.ncols {
            let mut z = Rat::zero();
            for row in &self.rows {
                z += &row[j];
            }
            self.reduced[j] = -z;
        }
        let mut objective: Rat = self.rhs.iter().sum();

        self.simplex_loop(&mut objective, self.ncols);

        if objective.is_positive() {
            // y_i = 1 - reduced[artificial i]; multipliers on the
            // original rows undo the sign normalization.
            let y: Vec<Rat> = (0..m)
                .map(|i| Rat::one() - &self.reduced[self.ncols + i])
                .collect();
            let mut lambda = vec![Rat::zero(); self.num_orig_rows];
            for (i, yi) in y.into_iter().enumerate() {
                let orig = self.row_map[i];
                lambda[orig] = if self.negated[orig] { yi } else { -yi };
            }
            return Some(lambda);
        }

        self.drive_out_artificials();
        None
    }

    /// Pivots zero-level artificial variables out of the basis; rows
    /// that cannot be pivoted are redundant and get dropped.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.basis.len() {
            if self.basis[i] < self.ncols {
                i += 1;
                continue;
            }
            debug_assert!(self.rhs[i].is_zero());
            match (0..self.ncols).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    self.row_map.remove(i);
                }
            }
        }
        for row in &mut self.rows {
            row.truncate(self.ncols);
        }
        self.reduced.truncate(self.ncols);
    }

    fn phase_two(&mut self) -> RawOutcome {
        // Rebuild reduced costs for the real objective.
        let mut objective = Rat::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            objective += &(&self.std_c[bi] * &self.rhs[i]);
        }
        for j in 0..self.ncols {
            let mut z = Rat::zero();
            for (i, &bi) in self.basis.iter().enumerate() {
                if !self.std_c[bi].is_zero() {
                    z += &(&self.std_c[bi] * &self.rows[i][j]);
                }
            }
            self.reduced[j] = &self.std_c[j] - &z;
        }

        match self.simplex_loop(&mut objective, self.ncols) {
            LoopExit::Optimal => {
                let x = self.current_point();
                let value = match self.sense {
                    Sense::Maximize => -objective,
                    Sense::Minimize => objective,
                };
                RawOutcome::Optimal { x, value }
            }
            LoopExit::Unbounded { entering } => {
                let x = self.current_point();
                let mut d_std = vec![Rat::zero(); self.ncols];
                d_std[entering] = Rat::one();
                for (i, &bi) in self.basis.iter().enumerate() {
                    d_std[bi] = -&self.rows[i][entering];
                }
                let ray = (0..self.num_orig_vars)
                    .map(|j| &d_std[2 * j] - &d_std[2 * j + 1])
                    .collect();
                RawOutcome::Unbounded { x, ray }
            }
        }
    }

    fn current_point(&self) -> Vec<Rat> {
        let mut x_std = vec![Rat::zero(); self.ncols];
        for (i, &bi) in self.basis.iter().enumerate() {
            x_std[bi] = self.rhs[i].clone();
        }
        (0..self.num_orig_vars)
            .map(|j| &x_std[2 * j] - &x_std[2 * j + 1])
            .collect()
    }

    /// Optimal dual multipliers for the original constraints, mapped
    /// from `y^T B = c_B` on the final basis. Rows dropped as redundant
    /// carry multiplier zero. Sign convention matches
    /// [`FarkasCertificate`]: the caller receives `lambda = -eta`.
    fn optimal_duals(&self) -> Vec<Rat> {
        let m = self.basis.len();
        let mut bt = vec![vec![Rat::zero(); m]; m];
        for (col, &bi) in self.basis.iter().enumerate() {
            for row in 0..m {
                // (B^T)[col][row] = B[row][col]
                bt[col][row] = self.std_a[self.row_map[row]][bi].clone();
            }
        }
        let c_b: Vec<Rat> = self.basis.iter().map(|&bi| self.std_c[bi].clone()).collect();
        let y = solve_linear(bt, c_b).expect("basis matrix is invertible");
        let mut lambda = vec![Rat::zero(); self.num_orig_rows];
        for (i, yi) in y.into_iter().enumerate() {
            let orig = self.row_map[i];
            lambda[orig] = if self.negated[orig] { yi } else { -yi };
        }
        lambda
    }

    /// Bland's rule: entering = lowest-index column with negative
    /// reduced cost; leaving = lowest-index basic variable among the
    /// minimum-ratio rows. `col_limit` keeps phase-one artificials out
    /// of the entering pool once phase two begins.
    fn simplex_loop(&mut self, objective: &mut Rat, col_limit: usize) -> LoopExit {
        loop {
            let entering = match (0..col_limit).find(|&j| self.reduced[j].is_negative()) {
                Some(j) => j,
                None => return LoopExit::Optimal,
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][entering];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                match &leaving {
                    None => leaving = Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                        {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((pivot_row, _)) = leaving else {
                return LoopExit::Unbounded { entering };
            };
            *objective += &(&self.reduced[entering] * &(&self.rhs[pivot_row] / &self.rows[pivot_row][entering]));
            self.pivot(pivot_row, entering);
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let piv = self.rows[pr][pc].clone();
        debug_assert!(!piv.is_zero());
        if piv != Rat::one() {
            let inv = piv.recip().expect("pivot entry nonzero");
            for v in &mut self.rows[pr] {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[pr] = &self.rhs[pr] * &inv;
        }
        let pivot_row = self.rows[pr].clone();
        let pivot_rhs = self.rhs[pr].clone();
        for i in 0..self.rows.len() {
            if i == pr {
                continue;
            }
            let factor = self.rows[i][pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
            self.rhs[i] -= &(&factor * &pivot_rhs);
        }
        let factor = self.reduced[pc].clone();
        if !factor.is_zero() {
            for (v, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        self.basis[pr] = pc;
    }
}

enum LoopExit {
    Optimal,
    Unbounded { entering: usize },
}

/// Exact Gaussian elimination for a square system `ax = b`.
/// Returns `None` when the matrix is singular.
fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip().ok()?;
        for v in &mut a[col] {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let (head, tail) = if r < col {
                let (h, t) = a.split_at_mut(col);
                (&mut h[r], &t[0])
            } else {
                let (h, t) = a.split_at_mut(r);
                (&mut t[0], &h[col])
            };
            for (v, p) in head.iter_mut().zip(tail.iter()) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
            let delta = &factor * &b[col];
            b[r] -= &delta;
        }
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    fn lp(
        num_vars: usize,
        objective: Vec<Rat>,
        sense: Sense,
        constraints: Vec<(Vec<Rat>, Relation, Rat)>,
    ) -> LinearProgram {
        LinearProgram {
            num_vars,
            constraints: constraints
                .into_iter()
                .map(|(c, r, b)| Constraint::new(c, r, b))
                .collect(),
            objective,
            sense,
        }
    }

    #[test]
    fn single_variable_maximum() {
        let p = lp(
            1,
            vec![rat(1, 1)],
            Sense::Maximize,
            vec![(vec![rat(1, 1)], Relation::Le, rat(1, 1))],
        );
        match solve(&p).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(1, 1));
                assert_eq!(x, vec![rat(1, 1)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn two_variable_maximum() {
        let p = lp(
            2,
            vec![rat(1, 1), rat(1, 1)],
            Sense::Maximize,
            vec![
                (vec![rat(1, 1), rat(1, 1)], Relation::Le, rat(2, 1)),
                (vec![rat(1, 1), rat(0, 1)], Relation::Le, rat(1, 1)),
                (vec![rat(1, 1), rat(0, 1)], Relation::Ge, rat(0, 1)),
                (vec![rat(0, 1), rat(1, 1)], Relation::Ge, rat(0, 1)),
            ],
        );
        match solve(&p).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(2, 1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_returns_improving_ray() {
        let p = lp(
            1,
            vec![rat(1, 1)],
            Sense::Maximize,
            vec![(vec![rat(1, 1)], Relation::Ge, rat(0, 1))],
        );
        match solve(&p).unwrap() {
            LpOutcome::Unbounded { x, ray } => {
                assert_eq!(ray, vec![rat(1, 1)]);
                assert!(p.is_feasible_point(&x));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_yields_farkas() {
        let p = lp(
            1,
            vec![Rat::zero()],
            Sense::Maximize,
            vec![
                (vec![rat(1, 1)], Relation::Le, rat(-1, 1)),
                (vec![rat(1, 1)], Relation::Ge, rat(0, 1)),
            ],
        );
        match solve(&p).unwrap() {
            LpOutcome::Infeasible { farkas } => assert!(farkas.verify(&p)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn equality_constraints_work() {
        // max x + 2y s.t. x + y = 1, x >= 0, y >= 0 -> 2 at (0,1)
        let p = lp(
            2,
            vec![rat(1, 1), rat(2, 1)],
            Sense::Maximize,
            vec![
                (vec![rat(1, 1), rat(1, 1)], Relation::Eq, rat(1, 1)),
                (vec![rat(1, 1), rat(0, 1)], Relation::Ge, rat(0, 1)),
                (vec![rat(0, 1), rat(1, 1)], Relation::Ge, rat(0, 1)),
            ],
        );
        match solve(&p).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(2, 1));
                assert_eq!(x, vec![rat(0, 1), rat(1, 1)]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn strict_probability_with_room() {
        // q1, q2 > 0, q1 + q2 = 1, 2 q1 <= 1 -> feasible at (1/2, 1/2), eps 1/2
        let problem = StrictFeasibilityProblem {
            num_vars: 2,
            constraints: vec![
                Constraint::new(vec![rat(1, 1), rat(1, 1)], Relation::Eq, rat(1, 1)),
                Constraint::new(vec![rat(2, 1), rat(0, 1)], Relation::Le, rat(1, 1)),
            ],
            strict_vars: vec![0, 1],
        };
        match solve_strict(&problem).unwrap() {
            StrictOutcome::Feasible { x, epsilon } => {
                assert_eq!(epsilon, rat(1, 2));
                assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn strict_mass_contradiction() {
        let problem = StrictFeasibilityProblem {
            num_vars: 2,
            constraints: vec![
                Constraint::new(vec![rat(1, 1), rat(1, 1)], Relation::Eq, rat(1, 1)),
                Constraint::new(vec![rat(1, 1), rat(1, 1)], Relation::Le, rat(1, 2)),
            ],
            strict_vars: vec![0, 1],
        };
        match solve_strict(&problem).unwrap() {
            StrictOutcome::Infeasible { certificate } => assert!(certificate.verify(&problem)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn strict_boundary_pinned_to_zero() {
        // q > 0 with q = 0: the margin optimum is exactly zero.
        let problem = StrictFeasibilityProblem {
            num_vars: 1,
            constraints: vec![Constraint::new(vec![rat(1, 1)], Relation::Eq, rat(0, 1))],
            strict_vars: vec![0],
        };
        match solve_strict(&problem).unwrap() {
            StrictOutcome::Infeasible { certificate } => assert!(certificate.verify(&problem)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn identical_inputs_identical_certificates() {
        let problem = StrictFeasibilityProblem {
            num_vars: 3,
            constraints: vec![
                Constraint::new(vec![rat(1, 1), rat(1, 1), rat(1, 1)], Relation::Eq, rat(1, 1)),
                Constraint::new(vec![rat(2, 1), rat(1, 3), rat(0, 1)], Relation::Le, rat(1, 1)),
            ],
            strict_vars: vec![0, 1, 2],
        };
        let a = solve_strict(&problem).unwrap();
        let b = solve_strict(&problem).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn malformed_input_rejected() {
        let p = lp(
            2,
            vec![rat(1, 1)],
            Sense::Maximize,
            vec![(vec![rat(1, 1), rat(0, 1)], Relation::Le, rat(1, 1))],
        );
        assert!(solve(&p).is_err());
    }

    // ------------------------------------------------------------------
    // Brute-force oracle: enumerate candidate vertices by solving every
    // square subsystem exactly, keep the feasible ones, and compare the
    // best objective with the simplex answer. Independent of the solver
    // path (its own elimination, no tableau).
    // ------------------------------------------------------------------

    fn gauss_solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
        let n = b.len();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].recip().ok()?;
            let scaled: Vec<Rat> = a[col].iter().map(|v| v * &inv).collect();
            let scaled_b = &b[col] * &inv;
            a[col] = scaled;
            b[col] = scaled_b;
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let (src, srcb) = (a[col].clone(), b[col].clone());
                    for (v, p) in a[r].iter_mut().zip(&src) {
                        *v -= &(&f * p);
                    }
                    b[r] -= &(&f * &srcb);
                }
            }
        }
        Some(b)
    }

    fn vertex_oracle(p: &LinearProgram) -> Option<Rat> {
        let n = p.num_vars;
        let m = p.constraints.len();
        let mut best: Option<Rat> = None;
        let mut index = vec![0usize; n];
        // Enumerate all size-n subsets of constraints.
        fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..m {
                cur.push(i);
                subsets(m, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        subsets(m, n, 0, &mut Vec::new(), &mut all);
        for subset in all {
            index.copy_from_slice(&subset);
            let a: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| p.constraints[i].coeffs.clone())
                .collect();
            let b: Vec<Rat> = subset.iter().map(|&i| p.constraints[i].rhs.clone()).collect();
            let Some(x) = gauss_solve(a, b) else { continue };
            if !p.is_feasible_point(&x) {
                continue;
            }
            let val: Rat = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
            best = Some(match best {
                None => val,
                Some(old) => match p.sense {
                    Sense::Maximize => old.max(val),
                    Sense::Minimize => old.min(val),
                },
            });
        }
        best
    }

    struct SplitMix(u64);
    impl SplitMix {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    #[test]
    fn simplex_matches_vertex_enumeration() {
        let mut rng = SplitMix(42);
        for _ in 0..200 {
            let n = 2 + rng.below(2) as usize; // 2 or 3 variables
            let extra = 1 + rng.below(4) as usize;
            let mut constraints = Vec::new();
            // Box constraints keep the region bounded and pointed, so
            // vertex enumeration is a complete oracle.
            for j in 0..n {
                let mut lo = vec![Rat::zero(); n];
                lo[j] = rat(1, 1);
                constraints.push((lo.clone(), Relation::Ge, rat(0, 1)));
                constraints.push((lo, Relation::Le, rat(3, 1)));
            }
            for _ in 0..extra {
                let coeffs: Vec<Rat> = (0..n)
                    .map(|_| rat(rng.below(7) as i64 - 3, 1 + rng.below(4) as i64))
                    .collect();
                let rel = match rng.below(3) {
                    0 => Relation::Le,
                    1 => Relation::Ge,
                    _ => Relation::Eq,
                };
                let rhs = rat(rng.below(9) as i64 - 4, 1 + rng.below(4) as i64);
                constraints.push((coeffs, rel, rhs));
            }
            let objective: Vec<Rat> = (0..n)
                .map(|_| rat(rng.below(7) as i64 - 3, 1 + rng.below(3) as i64))
                .collect();
            let p = lp(n, objective, Sense::Maximize, constraints);

            let got = solve(&p).unwrap();
            assert!(got.verify(&p), "outcome failed verification: {got:?}");
            let expect = vertex_oracle(&p);
            match (&got, expect) {
                (LpOutcome::Optimal { value, .. }, Some(best)) => {
                    assert_eq!(*value, best, "optimum mismatch on {p:?}")
                }
                (LpOutcome::Infeasible { .. }, None) => {}
                (got, expect) => panic!("solver {got:?} vs oracle {expect:?} on {p:?}"),
            }
        }
    }
}
