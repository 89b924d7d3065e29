//! The Frank family of t-norms and t-conorms.
//!
//! `T_λ(x_1,…,x_n) = log_λ(1 + Π(λ^{x_i} − 1) / (λ − 1)^{n−1})` for
//! `λ ∈ (0,1) ∪ (1,∞)`, with the limits `T_0 = min`, `T_1 = product`,
//! `T_∞ = max(Σx − (n−1), 0)`. The named kinds are evaluated exactly in the
//! caller's scalar type; generic parameters are evaluated in floating point
//! through `expm1`/`log1p` so that no step cancels catastrophically.

use std::fmt;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use thiserror::Error;

use crate::geometry::CompoundPrevisionMap;
use crate::scalar::{clamp_zero, is_unit_interval, max_of, min_of, rational_from_f64, Rational, Scalar};

/// `|λ − 1|` below which the product expansion is used.
pub const NEAR_PRODUCT: f64 = 1e-8;
/// `|ln λ|` above which the Min/Lukasiewicz limits are used.
pub const LOG_LIMIT: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrankError {
    #[error("argument {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("at least one argument is required")]
    Empty,
    #[error("λ = {0} is not a valid Frank parameter")]
    InvalidParameter(f64),
    #[error("target {target} is outside [T_L, T_M] = [{lower}, {upper}]")]
    TargetOutOfBounds { target: f64, lower: f64, upper: f64 },
}

/// A point of `[0, +∞]`; the three limits are canonical variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrankParameter {
    /// `λ = 0`: the minimum.
    Min,
    /// `λ = 1`: the product.
    Product,
    /// `λ = +∞`: the Lukasiewicz t-norm.
    Lukasiewicz,
    /// Any other `λ > 0`.
    Generic(f64),
}

impl FrankParameter {
    /// Canonicalizes a raw `λ ∈ [0, +∞]`.
    pub fn new(lambda: f64) -> Result<Self, FrankError> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(FrankError::InvalidParameter(lambda));
        }
        Ok(if lambda == 0.0 {
            FrankParameter::Min
        } else if lambda == 1.0 {
            FrankParameter::Product
        } else if lambda.is_infinite() {
            FrankParameter::Lukasiewicz
        } else {
            FrankParameter::Generic(lambda)
        })
    }

    /// The numeric `λ` (`+∞` for Lukasiewicz).
    pub fn lambda(&self) -> f64 {
        match *self {
            FrankParameter::Min => 0.0,
            FrankParameter::Product => 1.0,
            FrankParameter::Lukasiewicz => f64::INFINITY,
            FrankParameter::Generic(l) => l,
        }
    }
}

impl fmt::Display for FrankParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrankParameter::Min => write!(f, "min"),
            FrankParameter::Product => write!(f, "product"),
            FrankParameter::Lukasiewicz => write!(f, "lukasiewicz"),
            FrankParameter::Generic(l) => write!(f, "{l}"),
        }
    }
}

impl std::str::FromStr for FrankParameter {
    type Err = FrankError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" | "minimum" => Ok(FrankParameter::Min),
            "product" | "prod" => Ok(FrankParameter::Product),
            "lukasiewicz" | "luk" | "inf" | "infinity" => Ok(FrankParameter::Lukasiewicz),
            other => {
                let l: f64 = other.parse().map_err(|_| FrankError::InvalidParameter(f64::NAN))?;
                FrankParameter::new(l)
            }
        }
    }
}

fn check<T: Scalar>(xs: &[T]) -> Result<(), FrankError> {
    if xs.is_empty() {
        return Err(FrankError::Empty);
    }
    match xs.iter().find(|x| !is_unit_interval(*x)) {
        Some(x) => Err(FrankError::OutOfRange(x.to_string())),
        None => Ok(()),
    }
}

fn product<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::one(), |acc, x| acc * x.clone())
}

fn lukasiewicz<T: Scalar>(xs: &[T]) -> T {
    let n = T::from_usize(xs.len()).expect("length is representable");
    let s = xs.iter().fold(T::zero(), |acc, x| acc + x.clone());
    clamp_zero(s - n + T::one())
}

/// `T_λ(xs)`. Named kinds are exact in `T`; `Generic` goes through `f64`.
pub fn tnorm<T: Scalar>(param: FrankParameter, xs: &[T]) -> Result<T, FrankError> {
    check(xs)?;
    Ok(match param {
        FrankParameter::Min => min_of(xs),
        FrankParameter::Product => product(xs),
        FrankParameter::Lukasiewicz => lukasiewicz(xs),
        FrankParameter::Generic(l) => {
            if !(l > 0.0 && l.is_finite() && l != 1.0) {
                return Err(FrankError::InvalidParameter(l));
            }
            let fx: Vec<f64> = xs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            T::from_f64(generic_tnorm(l, &fx)).expect("finite value")
        }
    })
}

/// `S_λ(xs) = 1 − T_λ(1 − x_1, …, 1 − x_n)`.
pub fn tconorm<T: Scalar>(param: FrankParameter, xs: &[T]) -> Result<T, FrankError> {
    check(xs)?;
    let dual: Vec<T> = xs.iter().map(|x| T::one() - x.clone()).collect();
    Ok(T::one() - tnorm(param, &dual)?)
}

/// Floating evaluation of `T_λ` for `λ > 0`, `λ ≠ 1`, generic over the
/// float type. Inputs are assumed to lie in `[0,1]`.
pub fn generic_tnorm<F: Float + FromPrimitive>(lambda: F, xs: &[F]) -> F {
    let c = |v: f64| F::from_f64(v).expect("constant is representable");
    if xs.iter().any(|x| x.is_zero()) {
        return F::zero();
    }
    let l = lambda.ln();
    if l.abs() > c(LOG_LIMIT) {
        return if l < F::zero() {
            xs.iter().fold(F::one(), |m, &x| m.min(x))
        } else {
            let n = F::from_usize(xs.len()).expect("length is representable");
            (xs.iter().fold(F::zero(), |s, &x| s + x) - n + F::one()).max(F::zero())
        };
    }
    if (lambda - F::one()).abs() < c(NEAR_PRODUCT) {
        return near_product(l, xs);
    }
    if l > F::zero() {
        // r = (λ−1) Π ρ_i with ρ_i = (λ^{x_i}−1)/(λ−1) ∈ (0,1].
        let e = l.exp_m1();
        let p = xs.iter().fold(F::one(), |p, &x| p * ((x * l).exp_m1() / e));
        (e * p).ln_1p() / l
    } else {
        // 1 + r = 1 − (1−λ) p; with σ_i = 1 − ρ_i, 1 − p = 1 − Π(1 − σ_i).
        let b = -l.exp_m1();
        let mut p = F::one();
        let mut log_one_minus = F::zero();
        for &x in xs {
            p = p * (-(x * l).exp_m1() / b);
            let sigma = (x * l).exp() * (-((F::one() - x) * l).exp_m1()) / b;
            log_one_minus = log_one_minus + (-sigma).ln_1p();
        }
        let bp = b * p;
        let log_sum = if bp < c(0.5) {
            (-bp).ln_1p()
        } else {
            (-log_one_minus.exp_m1() + lambda * p).ln()
        };
        log_sum / l
    }
}

/// Second-order expansion of `T_λ` in `L = ln λ` around the product:
/// `P + L(Pα − P²/2) + L²(P(α²/2 + β) − P²α + P³/3)` with `P = Πx`,
/// `α = (Σx − (n−1))/2`, `β = (Σx² − (n−1))/24`.
fn near_product<F: Float + FromPrimitive>(l: F, xs: &[F]) -> F {
    let c = |v: f64| F::from_f64(v).expect("constant is representable");
    let n1 = F::from_usize(xs.len() - 1).expect("length is representable");
    let p = xs.iter().fold(F::one(), |a, &x| a * x);
    let s1 = xs.iter().fold(F::zero(), |a, &x| a + x);
    let s2 = xs.iter().fold(F::zero(), |a, &x| a + x * x);
    let alpha = (s1 - n1) / c(2.0);
    let beta = (s2 - n1) / c(24.0);
    let first = p * alpha - p * p / c(2.0);
    let second = p * (alpha * alpha / c(2.0) + beta) - p * p * alpha + p * p * p / c(3.0);
    p + l * first + l * l * second
}

/// Fréchet–Hoeffding bounds for the conjunction: `(T_L(xs), T_M(xs))`.
pub fn frechet_bounds_conjunction<T: Scalar>(xs: &[T]) -> Result<(T, T), FrankError> {
    check(xs)?;
    Ok((lukasiewicz(xs), min_of(xs)))
}

/// Fréchet–Hoeffding bounds for the disjunction: `(S_M(xs), S_L(xs))`.
pub fn frechet_bounds_disjunction<T: Scalar>(xs: &[T]) -> Result<(T, T), FrankError> {
    check(xs)?;
    let s = xs.iter().fold(T::zero(), |acc, x| acc + x.clone());
    let upper = if s > T::one() { T::one() } else { s };
    Ok((max_of(xs), upper))
}

/// Prevision sum rule for the disjunction of two: `w = x + y − z`.
pub fn sum_rule_disjunction<T: Scalar>(x: &T, y: &T, z: &T) -> T {
    x.clone() + y.clone() - z.clone()
}

/// Whether the parameter returned by [`solve_lambda`] is the only one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// `T_λ(xs)` does not depend on `λ`; the canonical Product is reported.
    NonUnique,
}

/// Solution of [`solve_lambda`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaFit {
    pub parameter: FrankParameter,
    pub uniqueness: Uniqueness,
}

/// Finds `λ` with `T_λ(xs) = target`.
///
/// Bisects on `t = ln λ ∈ [−40, 40]` (where `T_{e^t}` is decreasing); the
/// bounds themselves map to Min and Lukasiewicz. Targets between the value
/// at a bisection limit and the corresponding bound cannot be matched
/// closer than that gap.
pub fn solve_lambda<T: Scalar>(xs: &[T], target: &T) -> Result<LambdaFit, FrankError> {
    let (lo, hi) = frechet_bounds_conjunction(xs)?;
    if *target < lo || *target > hi {
        return Err(FrankError::TargetOutOfBounds {
            target: target.to_f64().unwrap_or(f64::NAN),
            lower: lo.to_f64().unwrap_or(f64::NAN),
            upper: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let fit = |parameter| LambdaFit {
        parameter,
        uniqueness: Uniqueness::Unique,
    };
    if lo == hi {
        return Ok(LambdaFit {
            parameter: FrankParameter::Product,
            uniqueness: Uniqueness::NonUnique,
        });
    }
    if *target == hi {
        return Ok(fit(FrankParameter::Min));
    }
    if *target == lo {
        return Ok(fit(FrankParameter::Lukasiewicz));
    }
    if *target == product(xs) {
        return Ok(fit(FrankParameter::Product));
    }
    let fx: Vec<f64> = xs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let goal = target.to_f64().unwrap_or(f64::NAN);
    let f = |t: f64| generic_tnorm(t.exp(), &fx);
    let (mut a, mut b) = (-LOG_LIMIT, LOG_LIMIT);
    let mut mid = 0.0;
    // Bisect to floating resolution: a value-based stop would leave large
    // errors in `t` where `T` is flat in `t`.
    for _ in 0..200 {
        mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = f(mid);
        if v == goal {
            break;
        }
        if v > goal {
            a = mid;
        } else {
            b = mid;
        }
    }
    let lambda = mid.exp();
    Ok(fit(if lambda == 1.0 {
        FrankParameter::Product
    } else {
        FrankParameter::Generic(lambda)
    }))
}

/// Prevision map assigning `T_λ(x_S)` to every sub-conjunction.
///
/// Generic parameters are rationalized exactly from their `f64` value.
pub fn prevision_map(param: FrankParameter, xs: &[Rational]) -> Result<CompoundPrevisionMap, FrankError> {
    check(xs)?;
    let mut err = None;
    let map = CompoundPrevisionMap::from_fn(xs.len(), |s| {
        let sub: Vec<Rational> = s.iter().map(|&i| xs[i].clone()).collect();
        let v = match param {
            FrankParameter::Generic(_) => tnorm(
                param,
                &sub.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>(),
            )
            .map(|v| rational_from_f64(v).expect("finite value")),
            _ => tnorm(param, &sub),
        };
        v.unwrap_or_else(|e| {
            err = Some(e);
            Rational::from_integer(0.into())
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(map),
    }
}
