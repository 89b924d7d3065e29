//! The coherence decision procedure, Dutch-book extraction, coherent
//! extension intervals and value tables.
//!
//! Coherence of `(F, M)` is decided recursively: solve (Σ); if it has no
//! solution the Gale dual is a Dutch book; otherwise compute, for every
//! member, the largest mass `M_i` a solution can put on its conditioning
//! event. Members with `M_i = 0` form `I_0` and must be coherent on their
//! own, which is checked at the next level.

use std::iter;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::constituents::enumerate_constituents;
use crate::constituents::{Constituent, ConstituentSet};
use crate::geometry::{build_points, quantity_constituents, Assessment, ConditionalQuantity, GeometryError};
use crate::lp::{
    maximize, maximize_component_sum, minimize, solve_feasibility, FeasibilityCertificate, LinearSystem, LpOutcome,
};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the base assessment is not coherent")]
    IncoherentBase,
    #[error("the target lives in a different world space")]
    SpaceMismatch,
    #[error("no coherent value was found for the target by probing")]
    NoCoherentProbe,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One level of the coherence recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceLevel {
    /// Indices (into the original family) of the members checked here.
    pub members: Vec<usize>,
    /// Labels of the unknowns, one per constituent in the union of the
    /// members' conditioning events.
    pub constituents: Vec<String>,
    /// A solution of (Σ) at this level, if one exists.
    pub solution: Option<Vec<Rational>>,
    /// `M_i` for each member, aligned with `members` (empty if unsolvable).
    pub masses: Vec<Rational>,
    /// Original indices with `M_i = 0`.
    pub zero_set: Vec<usize>,
}

/// Stakes on a sub-family making the gain positive on every constituent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DutchBook {
    /// Indices (into the original family) of the staked members.
    pub members: Vec<usize>,
    /// One stake per member.
    pub stakes: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVerdict {
    pub coherent: bool,
    pub trace: Vec<TraceLevel>,
    pub dutch_book: Option<DutchBook>,
}

enum Level {
    Solved(TraceLevel),
    Unsolvable(TraceLevel, DutchBook),
}

fn solve_level(assessment: &Assessment, members: &[usize]) -> Level {
    let sub = assessment.restrict(members);
    let points = build_points(&sub);
    let columns = points.union_indices();
    let system = points.sigma();
    let constituents = system.labels().to_vec();
    match solve_feasibility(&system) {
        FeasibilityCertificate::Infeasible { dual } => Level::Unsolvable(
            TraceLevel {
                members: members.to_vec(),
                constituents,
                solution: None,
                masses: Vec::new(),
                zero_set: Vec::new(),
            },
            DutchBook {
                members: members.to_vec(),
                stakes: dual,
            },
        ),
        FeasibilityCertificate::Feasible { solution } => {
            let all = points.constituents().all();
            let masses: Vec<Rational> = (0..members.len())
                .map(|k| {
                    let inside: Vec<usize> = columns
                        .iter()
                        .enumerate()
                        .filter(|(_, &h)| !all[h].class(k).is_void())
                        .map(|(j, _)| j)
                        .collect();
                    maximize_component_sum(&system, &inside)
                        .expect("system was just solved")
                        .optimum
                })
                .collect();
            let zero_set = members
                .iter()
                .zip(&masses)
                .filter(|(_, m)| m.is_zero())
                .map(|(&i, _)| i)
                .collect();
            Level::Solved(TraceLevel {
                members: members.to_vec(),
                constituents,
                solution: Some(solution),
                masses,
                zero_set,
            })
        }
    }
}

/// Decides coherence of an assessment.
///
/// Every value is first screened against its quantity's range; a value
/// outside it is reported with a single-member Dutch book.
pub fn check_coherence(assessment: &Assessment) -> CoherenceVerdict {
    let incoherent = |trace, book| CoherenceVerdict {
        coherent: false,
        trace,
        dutch_book: Some(book),
    };
    for (i, (q, mu)) in assessment.family().iter().zip(assessment.values()).enumerate() {
        let (lo, hi) = q.range();
        if *mu < lo || *mu > hi {
            match solve_level(assessment, &[i]) {
                Level::Unsolvable(level, book) => return incoherent(vec![level], book),
                Level::Solved(_) => unreachable!("a value outside the range has no solution"),
            }
        }
    }
    let mut members: Vec<usize> = (0..assessment.len()).collect();
    let mut trace = Vec::new();
    for _ in 0..=assessment.len() {
        match solve_level(assessment, &members) {
            Level::Unsolvable(level, book) => {
                trace.push(level);
                return incoherent(trace, book);
            }
            Level::Solved(level) => {
                let next = level.zero_set.clone();
                trace.push(level);
                if next.is_empty() {
                    return CoherenceVerdict {
                        coherent: true,
                        trace,
                        dutch_book: None,
                    };
                }
                assert!(next.len() < members.len(), "I_0 must shrink the family");
                members = next;
            }
        }
    }
    unreachable!("recursion depth exceeded the family size")
}

/// The Dutch book of an incoherent assessment, `None` when coherent.
pub fn find_dutch_book(assessment: &Assessment) -> Option<DutchBook> {
    check_coherence(assessment).dutch_book
}

/// Gain `Σ s_i H_i (X_i − μ_i)` of a stake vector on every constituent in
/// the union of the staked members' conditioning events, as
/// `(constituent label, gain)` pairs.
pub fn dutch_book_gains(assessment: &Assessment, book: &DutchBook) -> Vec<(String, Rational)> {
    let sub = assessment.restrict(&book.members);
    let points = build_points(&sub);
    let mu = points.prevision_point();
    points
        .union_indices()
        .into_iter()
        .map(|h| {
            let gain = points.points()[h]
                .iter()
                .zip(mu)
                .zip(&book.stakes)
                .fold(Rational::zero(), |acc, ((q, m), s)| acc + s * (q - m));
            (points.constituents().all()[h].label(), gain)
        })
        .collect()
}

/// The set `[lower, upper]` of coherent previsions for a new quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionInterval {
    pub lower: Rational,
    pub upper: Rational,
    /// Both endpoints are proven; `false` when only bracketed.
    pub exact: bool,
}

impl ExtensionInterval {
    pub fn contains(&self, value: &Rational) -> bool {
        self.lower <= *value && *value <= self.upper
    }
}

/// Exact coherent extension interval of `target` given a coherent base.
///
/// Solutions with positive mass on the target's conditioning event `H_t`
/// give, after Charnes–Cooper scaling, the interval `R` of
/// `Σ_{H_t} y_h v_h` over `y ≥ 0`, `Σ_{H_t} y_h = 1` and the homogeneous
/// base equalities. Solutions with no mass there must be checked
/// recursively on the base members whose conditioning events they also
/// avoid; the answer is the union of both parts.
pub fn extension_interval(base: &Assessment, target: &ConditionalQuantity) -> Result<ExtensionInterval, EngineError> {
    check_target(base, target)?;
    if !check_coherence(base).coherent {
        return Err(EngineError::IncoherentBase);
    }
    let members: Vec<usize> = (0..base.len()).collect();
    let (lower, upper) = extension_range(base, &members, target);
    Ok(ExtensionInterval {
        lower,
        upper,
        exact: true,
    })
}

fn check_target(base: &Assessment, target: &ConditionalQuantity) -> Result<(), EngineError> {
    if !target.conditioning().same_space(base.family()[0].conditioning()) {
        return Err(EngineError::SpaceMismatch);
    }
    Ok(())
}

fn extension_range(base: &Assessment, members: &[usize], target: &ConditionalQuantity) -> (Rational, Rational) {
    if members.is_empty() {
        return target.range();
    }
    let k = members.len();
    let family: Vec<&ConditionalQuantity> = members
        .iter()
        .map(|&i| &base.family()[i])
        .chain(iter::once(target))
        .collect();
    let mu: Vec<&Rational> = members.iter().map(|&i| &base.values()[i]).collect();
    let set = quantity_constituents(&family);
    let columns = set.in_union();
    let in_target = |c: &Constituent| !c.class(k).is_void();

    let mut a: Vec<Vec<Rational>> = (0..k)
        .map(|r| {
            columns
                .iter()
                .map(|c| c.class(r).value().map_or_else(Rational::zero, |v| v - mu[r]))
                .collect()
        })
        .collect();
    a.push(columns.iter().map(|c| indicator(in_target(c))).collect());
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());
    let objective: Vec<Rational> = columns
        .iter()
        .map(|c| c.class(k).value().unwrap_or_else(Rational::zero))
        .collect();
    let positive = match (minimize(&a, &b, &objective), maximize(&a, &b, &objective)) {
        (LpOutcome::Optimal { value: lo, .. }, LpOutcome::Optimal { value: hi, .. }) => Some((lo, hi)),
        (LpOutcome::Infeasible { .. }, _) | (_, LpOutcome::Infeasible { .. }) => None,
        _ => unreachable!("the objective is bounded by the normalization"),
    };

    let outside: Vec<&Constituent> = columns.iter().copied().filter(|c| !in_target(c)).collect();
    let zero_mass = if outside.is_empty() {
        None
    } else {
        let system = LinearSystem::new(
            (0..k)
                .map(|r| {
                    outside
                        .iter()
                        .map(|c| c.class(r).value().unwrap_or_else(|| mu[r].clone()))
                        .collect()
                })
                .collect(),
            mu.iter().map(|&m| m.clone()).collect(),
            outside.iter().map(|c| c.label()).collect(),
        );
        solve_feasibility(&system).is_feasible().then(|| {
            let rest: Vec<usize> = (0..k)
                .filter(|&r| {
                    let inside: Vec<usize> = outside
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.class(r).is_void())
                        .map(|(j, _)| j)
                        .collect();
                    maximize_component_sum(&system, &inside)
                        .expect("system is feasible")
                        .optimum
                        .is_zero()
                })
                .map(|r| members[r])
                .collect();
            assert!(rest.len() < k, "every column lies in some base antecedent");
            extension_range(base, &rest, target)
        })
    };
    match (positive, zero_mass) {
        (Some(p), None) => p,
        (None, Some(z)) => z,
        (Some((lo1, hi1)), Some((lo2, hi2))) => {
            debug_assert!(lo1 <= hi2 && lo2 <= hi1, "coherent extensions form an interval");
            (if lo1 < lo2 { lo1 } else { lo2 }, if hi1 > hi2 { hi1 } else { hi2 })
        }
        (None, None) => unreachable!("a coherent base admits some extension"),
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Extension interval by bisection on the coherence predicate.
///
/// A coherent seed is found by probing rationals in the target's range;
/// each side is then bisected until the bracket is narrower than `width`
/// and the simplest rational in the bracket is probed. Endpoints that are
/// only bracketed are reported on the coherent side with `exact = false`.
pub fn extension_interval_by_bisection(
    base: &Assessment,
    target: &ConditionalQuantity,
    width: &Rational,
) -> Result<ExtensionInterval, EngineError> {
    check_target(base, target)?;
    if !check_coherence(base).coherent {
        return Err(EngineError::IncoherentBase);
    }
    let coherent = |mu: &Rational| -> Result<bool, EngineError> {
        Ok(check_coherence(&base.extended(target.clone(), mu.clone())?).coherent)
    };
    let (lo, hi) = target.range();
    let mut seed = None;
    for probe in probes(&lo, &hi) {
        if coherent(&probe)? {
            seed = Some(probe);
            break;
        }
    }
    let seed = seed.ok_or(EngineError::NoCoherentProbe)?;
    let (lower, lower_exact) = bracket(&lo, &seed, width, &coherent)?;
    let (upper, upper_exact) = bracket(&hi, &seed, width, &coherent)?;
    Ok(ExtensionInterval {
        lower,
        upper,
        exact: lower_exact && upper_exact,
    })
}

/// Candidates in `[lo, hi]`: the ends, then dyadic grids, then small
/// denominators.
fn probes(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let span = hi - lo;
    let mut out = vec![lo.clone(), hi.clone()];
    for q in (1..=8).map(|e| 1i64 << e).chain(3..=24) {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                out.push(lo + &span * Rational::new(p.into(), q.into()));
            }
        }
    }
    out
}

/// Moves from the coherent `inner` towards `outer` and returns the
/// coherent end of the final bracket.
fn bracket(
    outer: &Rational,
    inner: &Rational,
    width: &Rational,
    coherent: &impl Fn(&Rational) -> Result<bool, EngineError>,
) -> Result<(Rational, bool), EngineError> {
    if coherent(outer)? {
        return Ok((outer.clone(), true));
    }
    let (mut bad, mut good) = (outer.clone(), inner.clone());
    let two = Rational::from_integer(2.into());
    while (&good - &bad).abs() > *width {
        let mid = (&good + &bad) / &two;
        if coherent(&mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let (a, b) = if bad < good { (&bad, &good) } else { (&good, &bad) };
    let simple = simplest_between(a, b);
    if simple != bad && coherent(&simple)? {
        good = simple;
    }
    Ok((good, false))
}

/// The rational with the smallest denominator in `[a, b]` (`a ≤ b`).
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    if a.is_integer() {
        return a.clone();
    }
    let fl = a.floor();
    let next = &fl + Rational::one();
    if next <= *b {
        return next;
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// One row of a case table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub constituent: Constituent,
    /// The quantity's value, or its prevision on the constituent where the
    /// conditioning event is false (`None` if no prevision was set).
    pub value: Option<Rational>,
}

/// The case table of a quantity over the constituents of its generators
/// (or of the quantity itself when it has none), including `C_0`.
pub fn value_table(quantity: &ConditionalQuantity) -> Vec<TableRow> {
    let set: ConstituentSet = if quantity.generators().is_empty() {
        quantity_constituents(&[quantity])
    } else {
        enumerate_constituents(quantity.generators())
    };
    set.all()
        .iter()
        .map(|c| {
            let w = c.worlds()[0];
            TableRow {
                constituent: c.clone(),
                value: quantity.value(w).cloned().or_else(|| quantity.prevision().cloned()),
            }
        })
        .collect()
}
