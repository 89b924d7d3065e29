//! Explicit solutions and characterizations for conjunctions of
//! conditional events under logical independence.
//!
//! * Λ vectors solving (Σ*) at the Lukasiewicz and minimum boundaries;
//! * the inequality characterization of the family
//!   `{C_1, C_2, C_3, C_12, C_13, C_23, C_123}` and its extension interval;
//! * the same-consequent special case `{A|H, A|K}`;
//! * sufficient conditions for the all-Lukasiewicz family of seven.

use std::collections::BTreeMap;

use crate::geometry::Signature;
use crate::scalar::{clamp_zero, max_of, min_of, Scalar};

/// Λ indexed by truth signature (one component per constituent of `K`).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaVector<T> {
    components: BTreeMap<Signature, T>,
}

impl<T: Scalar> LambdaVector<T> {
    fn zeros(n: usize) -> Self {
        LambdaVector {
            components: Signature::all(n).into_iter().map(|s| (s, T::zero())).collect(),
        }
    }

    fn set(&mut self, signature: Vec<bool>, value: T) {
        *self
            .components
            .get_mut(&Signature(signature))
            .expect("signature of the right length") = value;
    }

    /// Number of events `n` (the vector has `2^n` components).
    pub fn events(&self) -> usize {
        self.components.keys().next().map_or(0, Signature::len)
    }

    pub fn get(&self, signature: &Signature) -> Option<&T> {
        self.components.get(signature)
    }

    /// Components in canonical constituent order (the column order of
    /// [`sigma_star_system`](crate::geometry::sigma_star_system)).
    pub fn canonical(&self) -> Vec<(Signature, T)> {
        self.components.iter().map(|(s, v)| (s.clone(), v.clone())).collect()
    }

    /// Values in canonical order.
    pub fn values(&self) -> Vec<T> {
        self.components.values().cloned().collect()
    }

    /// Components ordered by [`Signature::display_cmp`], the order in which
    /// Λ vectors are customarily printed (last event most significant).
    pub fn display_order(&self) -> Vec<(Signature, T)> {
        let mut v = self.canonical();
        v.sort_by(|a, b| a.0.display_cmp(&b.0));
        v
    }

    /// Values in display order.
    pub fn display_values(&self) -> Vec<T> {
        self.display_order().into_iter().map(|(_, v)| v).collect()
    }
}

/// Which branch of the Lukasiewicz construction applies.
///
/// With `t_h = T_L(x_1,…,x_h)` and `h` the last index with `t_h > 0`:
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlCase {
    /// `h = N−1`, `t_h = 1`.
    A,
    /// `h = N−1`, `0 < t_h < 1`.
    B,
    /// `h = N`: `T_L(x) > 0`.
    C,
    /// `h = 0`: `x_1 = 0`.
    D,
    /// `h < N−1`, `0 < t_h < 1`.
    E,
    /// `h < N−1`, `t_h = 1`.
    F,
}

fn prefix_lukasiewicz<T: Scalar>(xs: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len());
    let mut run = T::one();
    for x in xs {
        run = clamp_zero(run + x.clone() - T::one());
        out.push(run.clone());
    }
    out
}

/// The case of the Lukasiewicz construction for `xs`, with the prefix
/// length `h` it was selected on.
pub fn tl_case<T: Scalar>(xs: &[T]) -> (TlCase, usize) {
    let n = xs.len();
    let t = prefix_lukasiewicz(xs);
    let h = t.iter().take_while(|v| **v > T::zero()).count();
    let case = if h == n {
        TlCase::C
    } else if h == 0 {
        TlCase::D
    } else if t[h - 1] == T::one() {
        if h == n - 1 {
            TlCase::A
        } else {
            TlCase::F
        }
    } else if h == n - 1 {
        TlCase::B
    } else {
        TlCase::E
    };
    (case, h)
}

/// `Π_{j ∈ range} x_j` or `1 − x_j` according to `signature`, for every
/// signature over the variables in `range`.
fn product_table<T: Scalar>(xs: &[T]) -> Vec<(Vec<bool>, T)> {
    let mut table = vec![(Vec::new(), T::one())];
    for x in xs {
        table = table
            .into_iter()
            .flat_map(|(sig, p)| {
                let mut t = sig.clone();
                t.push(true);
                let mut f = sig;
                f.push(false);
                [(t, p.clone() * x.clone()), (f, p * (T::one() - x.clone()))]
            })
            .collect();
    }
    table
}

fn concat(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().chain(b).copied().collect()
}

/// A solution of (Σ*) for `(xs, T_L(xs))`.
///
/// # Panics
/// Panics if `xs` is empty or some `x ∉ [0,1]`.
pub fn lambda_solution_tl<T: Scalar>(xs: &[T]) -> LambdaVector<T> {
    let n = xs.len();
    assert!(n >= 1, "at least one event");
    assert!(
        xs.iter().all(|x| *x >= T::zero() && *x <= T::one()),
        "arguments lie in [0,1]"
    );
    let mut lambda = LambdaVector::zeros(n);
    let (case, h) = tl_case(xs);
    match case {
        TlCase::C => {
            let all = prefix_lukasiewicz(xs)[n - 1].clone();
            lambda.set(vec![true; n], all);
            for r in 0..n {
                let mut sig = vec![true; n];
                sig[r] = false;
                lambda.set(sig, T::one() - xs[r].clone());
            }
        }
        TlCase::D => {
            for (tail, p) in product_table(&xs[1..]) {
                lambda.set(concat(&[false], &tail), p);
            }
        }
        TlCase::A | TlCase::F => {
            let head = concat(&vec![true; h], &[false]);
            for (tail, p) in product_table(&xs[h + 1..]) {
                lambda.set(concat(&head, &tail), p);
            }
        }
        TlCase::B | TlCase::E => {
            let t_h = prefix_lukasiewicz(&xs[..h])[h - 1].clone();
            let s = T::one() - t_h.clone();
            let ratio = xs[h].clone() / s;
            for (tail, p) in product_table(&xs[h + 1..]) {
                lambda.set(
                    concat(&concat(&vec![true; h], &[false]), &tail),
                    t_h.clone() * p.clone(),
                );
                for r in 0..h {
                    let mut head = vec![true; h];
                    head[r] = false;
                    let stake = T::one() - xs[r].clone();
                    lambda.set(
                        concat(&concat(&head, &[true]), &tail),
                        stake.clone() * ratio.clone() * p.clone(),
                    );
                    lambda.set(
                        concat(&concat(&head, &[false]), &tail),
                        stake * (T::one() - ratio.clone()) * p.clone(),
                    );
                }
            }
        }
    }
    lambda
}

/// A solution of (Σ*) for `(xs, T_M(xs))`, together with the ascending
/// permutation used (`perm[k]` is the original index of the `k`-th
/// smallest value). Signatures refer to the original variable order.
///
/// # Panics
/// Panics if `xs` is empty.
pub fn lambda_solution_tm<T: Scalar>(xs: &[T]) -> (LambdaVector<T>, Vec<usize>) {
    let n = xs.len();
    assert!(n >= 1, "at least one event");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("comparable values"));
    let mut lambda = LambdaVector::zeros(n);
    let mut sig = vec![true; n];
    let mut previous = T::zero();
    for &i in &perm {
        lambda.set(sig.clone(), xs[i].clone() - previous);
        previous = xs[i].clone();
        sig[i] = false;
    }
    lambda.set(sig, T::one() - previous);
    (lambda, perm)
}

/// Previsions on `{C_1, C_2, C_3, C_12, C_13, C_23, C_123}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Family7Assessment<T> {
    pub x1: T,
    pub x2: T,
    pub x3: T,
    pub x12: T,
    pub x13: T,
    pub x23: T,
    pub x123: T,
}

impl<T: Scalar> Family7Assessment<T> {
    /// From `[x1, x2, x3, x12, x13, x23, x123]`.
    pub fn from_array(v: [T; 7]) -> Self {
        let [x1, x2, x3, x12, x13, x23, x123] = v;
        Family7Assessment {
            x1,
            x2,
            x3,
            x12,
            x13,
            x23,
            x123,
        }
    }

    pub fn to_array(&self) -> [T; 7] {
        [
            self.x1.clone(),
            self.x2.clone(),
            self.x3.clone(),
            self.x12.clone(),
            self.x13.clone(),
            self.x23.clone(),
            self.x123.clone(),
        ]
    }

    /// All compounds assigned by one rule `f` applied to the singletons.
    pub fn from_rule(x1: T, x2: T, x3: T, f: impl Fn(&[T]) -> T) -> Self {
        Family7Assessment {
            x12: f(&[x1.clone(), x2.clone()]),
            x13: f(&[x1.clone(), x3.clone()]),
            x23: f(&[x2.clone(), x3.clone()]),
            x123: f(&[x1.clone(), x2.clone(), x3.clone()]),
            x1,
            x2,
            x3,
        }
    }
}

/// The inequality that a family-of-seven assessment violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family7Failure {
    /// `x_123` is below the lower bound.
    Lower,
    /// `x_123` is above the upper bound.
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Family7Verdict<T> {
    pub coherent: bool,
    /// `max{0, x12+x13−x1, x12+x23−x2, x13+x23−x3}`.
    pub lower: T,
    /// `min{x12, x13, x23, 1−x1−x2−x3+x12+x13+x23}`.
    pub upper: T,
    pub failure: Option<Family7Failure>,
}

fn family7_bounds<T: Scalar>(x1: &T, x2: &T, x3: &T, x12: &T, x13: &T, x23: &T) -> (T, T) {
    let lower = max_of(&[
        T::zero(),
        x12.clone() + x13.clone() - x1.clone(),
        x12.clone() + x23.clone() - x2.clone(),
        x13.clone() + x23.clone() - x3.clone(),
    ]);
    let upper = min_of(&[
        x12.clone(),
        x13.clone(),
        x23.clone(),
        T::one() - x1.clone() - x2.clone() - x3.clone() + x12.clone() + x13.clone() + x23.clone(),
    ]);
    (lower, upper)
}

/// Coherence of a family-of-seven assessment (logically independent
/// events, or a common antecedent) via `lower ≤ x_123 ≤ upper`.
pub fn check_family7<T: Scalar>(a: &Family7Assessment<T>) -> Family7Verdict<T> {
    let (lower, upper) = family7_bounds(&a.x1, &a.x2, &a.x3, &a.x12, &a.x13, &a.x23);
    let failure = if a.x123 < lower {
        Some(Family7Failure::Lower)
    } else if a.x123 > upper {
        Some(Family7Failure::Upper)
    } else {
        None
    };
    Family7Verdict {
        coherent: failure.is_none(),
        lower,
        upper,
        failure,
    }
}

/// Coherent values of `x_123` given the other six, or `None` when there
/// are none (the six values are themselves incoherent).
pub fn extension_interval_family7<T: Scalar>(x1: &T, x2: &T, x3: &T, x12: &T, x13: &T, x23: &T) -> Option<(T, T)> {
    let (lower, upper) = family7_bounds(x1, x2, x3, x12, x13, x23);
    (lower <= upper).then_some((lower, upper))
}

/// Coherent previsions `z` of `(A|H) ∧ (A|K)` given `P(A|H) = x`,
/// `P(A|K) = y`: `[xy, min{x,y}]`, collapsing to `[xy, xy]` when `HK = ∅`.
pub fn special_case_same_consequent<T: Scalar>(x: &T, y: &T, disjoint_antecedents: bool) -> (T, T) {
    let product = x.clone() * y.clone();
    if disjoint_antecedents {
        (product.clone(), product)
    } else {
        let min = if x < y { x.clone() } else { y.clone() };
        (product, min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LukasiewiczVerdict {
    Coherent,
    Incoherent,
    /// Neither sufficient condition applies.
    Undetermined,
}

/// Sufficient conditions for the all-Lukasiewicz family of seven
/// `(x, T_L pairs, T_L(x_1,x_2,x_3))`.
pub fn lukasiewicz_sufficient<T: Scalar>(x1: &T, x2: &T, x3: &T) -> LukasiewiczVerdict {
    let one = T::one();
    let sum = x1.clone() + x2.clone() + x3.clone() - one.clone() - one.clone();
    if sum >= T::zero() {
        LukasiewiczVerdict::Coherent
    } else if x1.clone() + x2.clone() > one && x1.clone() + x3.clone() > one && x2.clone() + x3.clone() > one {
        LukasiewiczVerdict::Incoherent
    } else {
        LukasiewiczVerdict::Undetermined
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sigma_star_system;
    use crate::scalar::{ratio, Rational};

    fn r(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(p, q)| ratio(p, q)).collect()
    }

    #[test]
    fn lukasiewicz_three_equal() {
        let xs = r(&[(2, 5), (2, 5), (2, 5)]);
        let l = lambda_solution_tl(&xs);
        assert_eq!(
            l.display_values(),
            r(&[(0, 1), (4, 25), (4, 25), (2, 25), (0, 1), (6, 25), (6, 25), (3, 25)])
        );
        assert_eq!(tl_case(&xs), (TlCase::E, 1));
    }

    #[test]
    fn lukasiewicz_three_distinct() {
        let xs = r(&[(1, 2), (3, 5), (7, 10)]);
        let l = lambda_solution_tl(&xs);
        assert_eq!(
            l.display_values(),
            r(&[(0, 1), (14, 45), (7, 18), (0, 1), (1, 10), (4, 45), (1, 9), (0, 1)])
        );
        assert_eq!(tl_case(&xs).0, TlCase::B);
    }

    #[test]
    fn lukasiewicz_two() {
        let xs = r(&[(2, 5), (2, 5)]);
        assert_eq!(
            lambda_solution_tl(&xs).display_values(),
            r(&[(0, 1), (2, 5), (2, 5), (1, 5)])
        );
    }

    #[test]
    fn lukasiewicz_case_f_with_five() {
        let (x4, x5) = (ratio(1, 3), ratio(3, 4));
        let xs = vec![ratio(1, 1), ratio(1, 1), ratio(0, 1), x4.clone(), x5.clone()];
        assert_eq!(tl_case(&xs), (TlCase::F, 2));
        let l = lambda_solution_tl(&xs);
        let get = |s: [bool; 5]| l.get(&Signature(s.to_vec())).unwrap().clone();
        assert_eq!(get([true, true, false, true, true]), &x4 * &x5);
        let one = ratio(1, 1);
        assert_eq!(get([true, true, false, false, false]), (&one - &x4) * (&one - &x5));
        assert_eq!(get([true, true, true, true, true]), ratio(0, 1));
        let sys = sigma_star_system(&xs, &ratio(0, 1));
        assert!(sys.is_solution(&l.values()));
    }

    #[test]
    fn every_case_solves_sigma_star() {
        let cases: Vec<(Vec<Rational>, TlCase)> = vec![
            (r(&[(1, 1), (0, 1)]), TlCase::A),
            (r(&[(1, 2), (1, 4)]), TlCase::B),
            (r(&[(9, 10), (4, 5), (9, 10)]), TlCase::C),
            (r(&[(0, 1), (1, 3), (1, 2)]), TlCase::D),
            (r(&[(1, 2), (1, 2), (1, 3)]), TlCase::E),
            (r(&[(1, 1), (0, 1), (1, 2)]), TlCase::F),
        ];
        for (xs, expected) in cases {
            assert_eq!(tl_case(&xs).0, expected, "{xs:?}");
            let tl = prefix_lukasiewicz(&xs).last().unwrap().clone();
            let sys = sigma_star_system(&xs, &tl);
            assert!(sys.is_solution(&lambda_solution_tl(&xs).values()), "{xs:?}");
        }
    }

    #[test]
    fn minimum_solution() {
        let xs = r(&[(1, 5), (1, 2), (9, 10)]);
        let (l, perm) = lambda_solution_tm(&xs);
        assert_eq!(perm, [0, 1, 2]);
        let get = |s: [bool; 3]| l.get(&Signature(s.to_vec())).unwrap().clone();
        assert_eq!(get([true, true, true]), ratio(1, 5));
        assert_eq!(get([false, true, true]), ratio(3, 10));
        assert_eq!(get([false, false, true]), ratio(2, 5));
        assert_eq!(get([false, false, false]), ratio(1, 10));
        assert!(sigma_star_system(&xs, &ratio(1, 5)).is_solution(&l.values()));

        let unsorted = r(&[(9, 10), (1, 5), (1, 2)]);
        let (l, perm) = lambda_solution_tm(&unsorted);
        assert_eq!(perm, [1, 2, 0]);
        assert!(sigma_star_system(&unsorted, &ratio(1, 5)).is_solution(&l.values()));

        let (l, _) = lambda_solution_tm(&[0.0f64; 3]);
        assert_eq!(l.get(&Signature(vec![false; 3])), Some(&1.0));
    }

    #[test]
    fn family7_counterexample() {
        let a = Family7Assessment::from_array(
            r(&[(1, 2), (3, 5), (7, 10), (1, 10), (1, 5), (3, 10), (0, 1)])
                .try_into()
                .unwrap(),
        );
        let v = check_family7(&a);
        assert!(!v.coherent);
        assert_eq!(v.lower, ratio(0, 1));
        assert_eq!(v.upper, ratio(-1, 5));
        assert_eq!(v.failure, Some(Family7Failure::Upper));
        assert_eq!(
            extension_interval_family7(&a.x1, &a.x2, &a.x3, &a.x12, &a.x13, &a.x23),
            None
        );
    }

    #[test]
    fn family7_min_and_product_rules() {
        for x1 in 0..=4 {
            for x2 in 0..=4 {
                for x3 in 0..=4 {
                    let xs = [ratio(x1, 4), ratio(x2, 4), ratio(x3, 4)];
                    let [a, b, c] = xs.clone();
                    let m = Family7Assessment::from_rule(a, b, c, min_of);
                    assert!(check_family7(&m).coherent);
                    let [a, b, c] = xs;
                    let p = Family7Assessment::from_rule(a, b, c, |v: &[Rational]| {
                        v.iter().fold(ratio(1, 1), |acc, x| acc * x)
                    });
                    assert!(check_family7(&p).coherent);
                }
            }
        }
    }

    #[test]
    fn family7_extension_examples() {
        let one = ratio(1, 1);
        assert_eq!(
            extension_interval_family7(&one, &one, &one, &one, &one, &one),
            Some((one.clone(), one))
        );
        let v = r(&[(9, 10), (4, 5), (9, 10), (7, 10), (4, 5), (7, 10)]);
        assert_eq!(
            extension_interval_family7(&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]),
            Some((ratio(3, 5), ratio(3, 5)))
        );
    }

    #[test]
    fn same_consequent_intervals() {
        assert_eq!(
            special_case_same_consequent(&ratio(7, 20), &ratio(9, 20), false),
            (ratio(63, 400), ratio(7, 20))
        );
        assert_eq!(
            special_case_same_consequent(&ratio(1, 2), &ratio(1, 2), false),
            (ratio(1, 4), ratio(1, 2))
        );
        assert_eq!(
            special_case_same_consequent(&ratio(1, 2), &ratio(1, 2), true),
            (ratio(1, 4), ratio(1, 4))
        );
    }

    #[test]
    fn lukasiewicz_conditions() {
        let t = |a, b, c| lukasiewicz_sufficient(&ratio(a, 10), &ratio(b, 10), &ratio(c, 10));
        assert_eq!(t(9, 8, 9), LukasiewiczVerdict::Coherent);
        assert_eq!(t(5, 6, 7), LukasiewiczVerdict::Incoherent);
        assert_eq!(t(3, 3, 3), LukasiewiczVerdict::Undetermined);
        let lk = |v: &[Rational]| {
            let n = v.len() as i64;
            clamp_zero(v.iter().fold(ratio(1 - n, 1), |a, x| a + x))
        };
        let a = Family7Assessment::from_rule(ratio(3, 10), ratio(3, 10), ratio(3, 10), lk);
        assert!(check_family7(&a).coherent);
    }
}
