//! Exact linear programming: a dense two-phase simplex with Bland's rule.
//!
//! The solver is generic over [`Scalar`] but relies on exact comparisons;
//! it is meant to be run with [`Rational`](crate::Rational).

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("the system has no solution")]
    InfeasibleSystem,
    #[error("index {index} is out of range for {unknowns} unknowns")]
    IndexOutOfRange { index: usize, unknowns: usize },
}

/// Equalities `Σ_h a_ih λ_h = b_i`, together with the implicit constraints
/// `λ ≥ 0` and `Σ_h λ_h = 1`.
///
/// Column `h` is the point `Q_h`; `rhs` is the prevision vector `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<T> {
    coefficients: Vec<Vec<T>>,
    rhs: Vec<T>,
    labels: Vec<String>,
}

impl<T: Scalar> LinearSystem<T> {
    /// # Panics
    /// Panics if row lengths or the label count disagree.
    pub fn new(coefficients: Vec<Vec<T>>, rhs: Vec<T>, labels: Vec<String>) -> Self {
        assert_eq!(coefficients.len(), rhs.len(), "one right-hand side per row");
        assert!(
            coefficients.iter().all(|r| r.len() == labels.len()),
            "one label per unknown"
        );
        LinearSystem {
            coefficients,
            rhs,
            labels,
        }
    }

    pub fn coefficients(&self) -> &[Vec<T>] {
        &self.coefficients
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.labels.len());
        self.labels = labels;
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn unknowns(&self) -> usize {
        self.labels.len()
    }

    /// Exact check of every equality, non-negativity and normalization.
    pub fn is_solution(&self, lambda: &[T]) -> bool {
        lambda.len() == self.unknowns()
            && lambda.iter().all(|l| *l >= T::zero())
            && sum(lambda.iter().cloned()) == T::one()
            && self
                .coefficients
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| sum(row.iter().zip(lambda).map(|(a, l)| a.clone() * l.clone())) == *b)
    }

    /// `(A·y)_h = Σ_i y_i (a_ih − b_i)` for every unknown `h`.
    ///
    /// With `y` as stakes this is the gain on constituent `h`.
    pub fn gale_values(&self, y: &[T]) -> Vec<T> {
        (0..self.unknowns())
            .map(|h| {
                sum(self
                    .coefficients
                    .iter()
                    .zip(&self.rhs)
                    .zip(y)
                    .map(|((row, b), yi)| yi.clone() * (row[h].clone() - b.clone())))
            })
            .collect()
    }

    /// The standard form `[A; 1ᵀ] λ = [b; 1]`.
    fn standard_form(&self) -> (Vec<Vec<T>>, Vec<T>) {
        let mut a = self.coefficients.clone();
        a.push(vec![T::one(); self.unknowns()]);
        let mut b = self.rhs.clone();
        b.push(T::one());
        (a, b)
    }
}

fn sum<T: Scalar>(it: impl Iterator<Item = T>) -> T {
    it.fold(T::zero(), |acc, x| acc + x)
}

/// Outcome of [`solve_feasibility`]; both shapes are verified before return.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityCertificate<T> {
    /// A solution `Λ` of the system.
    Feasible { solution: Vec<T> },
    /// A vector `y` with `Σ_i y_i (a_ih − b_i) ≥ 1 > 0` for every unknown `h`.
    Infeasible { dual: Vec<T> },
}

impl<T> FeasibilityCertificate<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityCertificate::Feasible { .. })
    }
}

/// Result of [`maximize_component_sum`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T> {
    pub optimum: T,
    pub argmax: Vec<T>,
}

/// Outcome of a general standard-form program.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal {
        x: Vec<T>,
        value: T,
    },
    /// `w` with `wᵀA ≥ 0` column-wise and `wᵀb < 0` (Farkas).
    Infeasible {
        farkas: Vec<T>,
    },
    Unbounded,
}

/// Maximizes `cᵀx` subject to `Ax = b`, `x ≥ 0`.
pub fn maximize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    Tableau::solve(a, b, Some(c))
}

/// Minimizes `cᵀx` subject to `Ax = b`, `x ≥ 0`.
pub fn minimize<T: Scalar>(a: &[Vec<T>], b: &[T], c: &[T]) -> LpOutcome<T> {
    let neg: Vec<T> = c.iter().map(|v| -v.clone()).collect();
    match Tableau::solve(a, b, Some(&neg)) {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    }
}

/// Decides solvability of a system, returning either a solution or a
/// strictly separating dual vector.
///
/// The dual comes from the phase-one Farkas vector `(y, t)` of
/// `[A; 1ᵀ]λ = [b; 1]`: column-wise `yᵀa_h + t ≥ 0` and `yᵀb + t < 0`, so
/// `yᵀ(a_h − b) > 0` for every `h`. It is rescaled so the minimum is ≥ 1.
///
/// # Panics
/// Panics if a certificate fails its own exact verification (a solver bug).
pub fn solve_feasibility<T: Scalar>(system: &LinearSystem<T>) -> FeasibilityCertificate<T> {
    let (a, b) = system.standard_form();
    match Tableau::solve(&a, &b, None) {
        LpOutcome::Optimal { x, .. } => {
            assert!(system.is_solution(&x), "simplex returned a non-solution");
            FeasibilityCertificate::Feasible { solution: x }
        }
        LpOutcome::Infeasible { farkas } => {
            let wb = sum(farkas.iter().zip(&b).map(|(w, b)| w.clone() * b.clone()));
            let scale = -wb;
            assert!(scale > T::zero(), "Farkas vector must separate");
            let dual: Vec<T> = farkas[..system.rows()]
                .iter()
                .map(|w| w.clone() / scale.clone())
                .collect();
            let gains = system.gale_values(&dual);
            assert!(
                gains.iter().all(|g| *g >= T::one()),
                "dual certificate is not strictly separating"
            );
            FeasibilityCertificate::Infeasible { dual }
        }
        LpOutcome::Unbounded => unreachable!("feasibility programs have no objective"),
    }
}

/// Maximizes `Σ_{h∈index_set} λ_h` over the solutions of `system`.
pub fn maximize_component_sum<T: Scalar>(
    system: &LinearSystem<T>,
    index_set: &[usize],
) -> Result<OptimizationResult<T>, LpError> {
    let n = system.unknowns();
    let mut c = vec![T::zero(); n];
    for &h in index_set {
        if h >= n {
            return Err(LpError::IndexOutOfRange { index: h, unknowns: n });
        }
        c[h] = T::one();
    }
    let (a, b) = system.standard_form();
    match Tableau::solve(&a, &b, Some(&c)) {
        LpOutcome::Optimal { x, value } => Ok(OptimizationResult {
            optimum: value,
            argmax: x,
        }),
        LpOutcome::Infeasible { .. } => Err(LpError::InfeasibleSystem),
        LpOutcome::Unbounded => unreachable!("normalization bounds every unknown"),
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    /// Reduced profits `c_j − c_Bᵀ B⁻¹ A_j`.
    profit: Vec<T>,
    value: T,
}

impl<T: Scalar> Tableau<T> {
    fn solve(a: &[Vec<T>], b: &[T], objective: Option<&[T]>) -> LpOutcome<T> {
        let m = b.len();
        let n = a.first().map_or(0, Vec::len);
        // Phase one: artificial column n+r for row r, signs flipped so b ≥ 0.
        let signs: Vec<bool> = b.iter().map(|v| *v < T::zero()).collect();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for r in 0..m {
            let flip = |v: &T| if signs[r] { -v.clone() } else { v.clone() };
            let mut row: Vec<T> = a[r].iter().map(flip).collect();
            row.extend((0..m).map(|k| if k == r { T::one() } else { T::zero() }));
            rows.push(row);
            rhs.push(flip(&b[r]));
        }
        let mut profit: Vec<T> = (0..n).map(|j| sum(rows.iter().map(|row| row[j].clone()))).collect();
        profit.extend((0..m).map(|_| T::zero()));
        let mut t = Tableau {
            value: -sum(rhs.iter().cloned()),
            rows,
            rhs,
            basis: (n..n + m).collect(),
            profit,
        };
        t.run();
        if t.value < T::zero() {
            // π_r = −1 − d_{n+r}; undo the row flips.
            let farkas = (0..m)
                .map(|r| {
                    let pi = -T::one() - t.profit[n + r].clone();
                    if signs[r] {
                        -pi
                    } else {
                        pi
                    }
                })
                .collect();
            return LpOutcome::Infeasible { farkas };
        }
        t.drop_artificials(n);
        let Some(c) = objective else {
            return LpOutcome::Optimal {
                x: t.solution(n),
                value: T::zero(),
            };
        };
        t.value = sum(t.basis.iter().zip(&t.rhs).map(|(&j, v)| c[j].clone() * v.clone()));
        t.profit = (0..n)
            .map(|j| {
                c[j].clone()
                    - sum(t
                        .basis
                        .iter()
                        .zip(&t.rows)
                        .map(|(&bj, row)| c[bj].clone() * row[j].clone()))
            })
            .collect();
        if !t.run() {
            return LpOutcome::Unbounded;
        }
        LpOutcome::Optimal {
            x: t.solution(n),
            value: t.value,
        }
    }

    /// Bland's rule iterations; returns `false` on unboundedness.
    fn run(&mut self) -> bool {
        loop {
            let Some(j) = self.profit.iter().position(|d| *d > T::zero()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[j] > T::zero() {
                    let ratio = self.rhs[r].clone() / row[j].clone();
                    let better = match &leave {
                        None => true,
                        Some((best, q)) => ratio < *q || (ratio == *q && self.basis[r] < self.basis[*best]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][j].is_zero() {
                continue;
            }
            let f = self.rows[k][j].clone();
            for (v, pv) in self.rows[k].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            self.rhs[k] = self.rhs[k].clone() - f * pivot_rhs.clone();
        }
        if !self.profit[j].is_zero() {
            let f = self.profit[j].clone();
            for (v, pv) in self.profit.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            self.value = self.value.clone() + f * pivot_rhs;
        }
        self.basis[r] = j;
    }

    /// Pivots zero-level artificials out of the basis, deletes redundant
    /// rows, and truncates the artificial columns.
    fn drop_artificials(&mut self, n: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= n {
                match (0..n).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in &mut self.rows {
            row.truncate(n);
        }
        self.profit.truncate(n);
    }

    fn solution(&self, n: usize) -> Vec<T> {
        let mut x = vec![T::zero(); n];
        for (r, &j) in self.basis.iter().enumerate() {
            x[j] = self.rhs[r].clone();
        }
        x
    }
}
