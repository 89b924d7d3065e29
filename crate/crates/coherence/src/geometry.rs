//! Conditional random quantities, compound conditionals, assessments, and
//! the linear systems whose solvability characterizes coherence.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::constituents::{Class, Constituent, ConstituentSet};
use crate::events::{ConditionalEvent, Event};
use crate::lp::LinearSystem;
use crate::scalar::{is_unit_interval, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("missing prevision for subset {0:?}")]
    MissingPrevision(Vec<usize>),
    #[error("prevision {value} for subset {subset:?} is outside [0,1]")]
    OutOfRange { subset: Vec<usize>, value: Rational },
    #[error("assessment needs one value per quantity ({quantities} quantities, {values} values)")]
    LengthMismatch { quantities: usize, values: usize },
    #[error("assessment family is empty")]
    EmptyFamily,
    #[error("family members live in different world spaces")]
    SpaceMismatch,
    #[error("compound needs at least one conditional event")]
    EmptyCompound,
    #[error("the family is not of the form {{E_1|H_1, …, E_n|H_n, C_1…n}} over logically independent events")]
    NotApplicable,
}

/// What a quantity was built from; used for shape checks and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityKind {
    Indicator,
    Conjunction,
    Disjunction,
    General,
}

/// A finite conditional random quantity `X|K`.
///
/// `values[w]` is defined exactly on the worlds of `conditioning`. The
/// optional `prevision` is the value the quantity takes where `K` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalQuantity {
    label: String,
    kind: QuantityKind,
    conditioning: Event,
    values: Vec<Option<Rational>>,
    prevision: Option<Rational>,
    generators: Vec<ConditionalEvent>,
}

impl ConditionalQuantity {
    /// The indicator of `E|H`: 1 on EH, 0 on ĒH.
    pub fn indicator(label: impl Into<String>, event: &ConditionalEvent) -> Self {
        let space = event.space();
        let values = (0..space.len())
            .map(|w| {
                event
                    .status(w)
                    .map(|t| if t { Rational::one() } else { Rational::zero() })
            })
            .collect();
        ConditionalQuantity {
            label: label.into(),
            kind: QuantityKind::Indicator,
            conditioning: event.antecedent().clone(),
            values,
            prevision: None,
            generators: vec![event.clone()],
        }
    }

    /// An arbitrary quantity given by `value(world)` on `conditioning`.
    pub fn from_fn(label: impl Into<String>, conditioning: Event, value: impl Fn(usize) -> Rational) -> Self {
        let values = (0..conditioning.space().len())
            .map(|w| conditioning.contains(w).then(|| value(w)))
            .collect();
        ConditionalQuantity {
            label: label.into(),
            kind: QuantityKind::General,
            conditioning,
            values,
            prevision: None,
            generators: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> QuantityKind {
        self.kind
    }

    pub fn conditioning(&self) -> &Event {
        &self.conditioning
    }

    /// Value on `world`, `None` outside the conditioning event.
    pub fn value(&self, world: usize) -> Option<&Rational> {
        self.values[world].as_ref()
    }

    pub fn prevision(&self) -> Option<&Rational> {
        self.prevision.as_ref()
    }

    /// Conditional events the quantity is built from (empty for general ones).
    pub fn generators(&self) -> &[ConditionalEvent] {
        &self.generators
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_prevision(mut self, prevision: Rational) -> Self {
        self.prevision = Some(prevision);
        self
    }

    /// Smallest and largest value on the conditioning event.
    pub fn range(&self) -> (Rational, Rational) {
        let mut it = self.values.iter().flatten();
        let first = it.next().expect("conditioning event is non-empty").clone();
        it.fold((first.clone(), first), |(lo, hi), v| {
            (
                if *v < lo { v.clone() } else { lo },
                if *v > hi { v.clone() } else { hi },
            )
        })
    }

    /// Class of the quantity in `world` (value or void).
    pub fn class(&self, world: usize) -> Class {
        self.values[world].as_ref().map_or(Class::Void, Class::of_value)
    }
}

/// The previsions `x_S` of the sub-conjunctions, keyed by 0-based subsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompoundPrevisionMap {
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl CompoundPrevisionMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fills every non-empty subset of `{0,…,n-1}` with `f(subset)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let entries = nonempty_subsets(n)
            .into_iter()
            .map(|s| {
                let v = f(&s);
                (s, v)
            })
            .collect();
        CompoundPrevisionMap { entries }
    }

    pub fn insert(&mut self, subset: &[usize], value: Rational) {
        self.entries.insert(normalize(subset), value);
    }

    pub fn get(&self, subset: &[usize]) -> Option<&Rational> {
        self.entries.get(&normalize(subset))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.entries.iter()
    }

    /// Maps disjunction previsions `d_S` to the previsions `1 − d_S` of the
    /// conjunctions of the negated events (De Morgan).
    pub fn negation_map_from_disjunction(&self) -> Self {
        CompoundPrevisionMap {
            entries: self
                .entries
                .iter()
                .map(|(s, d)| (s.clone(), Rational::one() - d))
                .collect(),
        }
    }
}

fn normalize(subset: &[usize]) -> Vec<usize> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Non-empty subsets of `{0,…,n-1}`, by size then lexicographically.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u64..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

fn check_family(family: &[ConditionalEvent]) -> Result<(), GeometryError> {
    let first = family.first().ok_or(GeometryError::EmptyCompound)?;
    if family.iter().any(|e| !e.antecedent().same_space(first.antecedent())) {
        return Err(GeometryError::SpaceMismatch);
    }
    Ok(())
}

/// The conjunction `C_{1⋯n}` of a family of conditional events.
///
/// On `∨H_i` it is 1 where every `E_iH_i` holds, 0 where some `Ē_iH_i`
/// holds, and `x_S` where exactly the antecedents in `S` are false and the
/// remaining events are true. Every strict non-empty subset must have a
/// prevision; the full-set prevision, if present, becomes the quantity's
/// prevision.
pub fn make_conjunction(
    family: &[ConditionalEvent],
    previsions: &CompoundPrevisionMap,
) -> Result<ConditionalQuantity, GeometryError> {
    check_family(family)?;
    let n = family.len();
    for (subset, value) in previsions.iter() {
        if !is_unit_interval(value) {
            return Err(GeometryError::OutOfRange {
                subset: subset.clone(),
                value: value.clone(),
            });
        }
    }
    let mut required = BTreeMap::new();
    for s in nonempty_subsets(n).into_iter().filter(|s| s.len() < n) {
        let v = previsions
            .get(&s)
            .ok_or_else(|| GeometryError::MissingPrevision(s.clone()))?;
        required.insert(s, v.clone());
    }
    let space = family[0].space().clone();
    let conditioning = family
        .iter()
        .skip(1)
        .fold(family[0].antecedent().clone(), |acc, e| acc.or(e.antecedent()));
    let values = (0..space.len())
        .map(|w| {
            if !conditioning.contains(w) {
                return None;
            }
            let mut voided = Vec::new();
            for (i, e) in family.iter().enumerate() {
                match e.status(w) {
                    Some(false) => return Some(Rational::zero()),
                    None => voided.push(i),
                    Some(true) => {}
                }
            }
            Some(if voided.is_empty() {
                Rational::one()
            } else {
                required[&voided].clone()
            })
        })
        .collect();
    let all: Vec<usize> = (0..n).collect();
    Ok(ConditionalQuantity {
        label: compound_label("C", n),
        kind: if n == 1 {
            QuantityKind::Indicator
        } else {
            QuantityKind::Conjunction
        },
        conditioning,
        values,
        prevision: previsions.get(&all).cloned(),
        generators: family.to_vec(),
    })
}

/// The disjunction `D_{1⋯n} = 1 − C_{1̄⋯n̄}`.
///
/// `negation_previsions` holds the previsions of the conjunctions of the
/// negated events; use
/// [`CompoundPrevisionMap::negation_map_from_disjunction`] to obtain it from
/// direct disjunction previsions.
pub fn make_disjunction(
    family: &[ConditionalEvent],
    negation_previsions: &CompoundPrevisionMap,
) -> Result<ConditionalQuantity, GeometryError> {
    let negated: Vec<ConditionalEvent> = family.iter().map(ConditionalEvent::negation).collect();
    let c = make_conjunction(&negated, negation_previsions)?;
    let n = family.len();
    Ok(ConditionalQuantity {
        label: compound_label("D", n),
        kind: if n == 1 {
            QuantityKind::Indicator
        } else {
            QuantityKind::Disjunction
        },
        values: c
            .values
            .iter()
            .map(|v| v.as_ref().map(|v| Rational::one() - v))
            .collect(),
        prevision: c.prevision.as_ref().map(|p| Rational::one() - p),
        conditioning: c.conditioning,
        generators: family.to_vec(),
    })
}

fn compound_label(prefix: &str, n: usize) -> String {
    let idx: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    format!("{prefix}_{}", idx.join(if n > 9 { "," } else { "" }))
}

/// A family of conditional quantities with assessed previsions.
#[derive(Debug, Clone, PartialEq)]
pub struct Assessment {
    family: Vec<ConditionalQuantity>,
    values: Vec<Rational>,
}

impl Assessment {
    pub fn new(family: Vec<ConditionalQuantity>, values: Vec<Rational>) -> Result<Self, GeometryError> {
        if family.is_empty() {
            return Err(GeometryError::EmptyFamily);
        }
        if family.len() != values.len() {
            return Err(GeometryError::LengthMismatch {
                quantities: family.len(),
                values: values.len(),
            });
        }
        let first = family[0].conditioning();
        if family.iter().any(|q| !q.conditioning().same_space(first)) {
            return Err(GeometryError::SpaceMismatch);
        }
        Ok(Assessment { family, values })
    }

    pub fn family(&self) -> &[ConditionalQuantity] {
        &self.family
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// The sub-assessment on the given member indices (in the given order).
    ///
    /// # Panics
    /// Panics if `members` is empty or out of range.
    pub fn restrict(&self, members: &[usize]) -> Assessment {
        Assessment::new(
            members.iter().map(|&i| self.family[i].clone()).collect(),
            members.iter().map(|&i| self.values[i].clone()).collect(),
        )
        .expect("restriction of a well-formed assessment")
    }

    /// This assessment extended by one more quantity.
    pub fn extended(&self, quantity: ConditionalQuantity, value: Rational) -> Result<Self, GeometryError> {
        let mut family = self.family.clone();
        let mut values = self.values.clone();
        family.push(quantity);
        values.push(value);
        Assessment::new(family, values)
    }

    /// Constituents generated by the family.
    pub fn constituents(&self) -> ConstituentSet {
        quantity_constituents(&self.family.iter().collect::<Vec<_>>())
    }
}

/// Constituents generated by a family of quantities.
pub fn quantity_constituents(family: &[&ConditionalQuantity]) -> ConstituentSet {
    let worlds = family.first().map_or(0, |q| q.conditioning().space().len());
    ConstituentSet::from_classifier(worlds, family.len(), |w, i| family[i].class(w))
}

/// The points `Q_h` attached to the constituents of an assessment.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    constituents: ConstituentSet,
    points: Vec<Vec<Rational>>,
    prevision_point: Vec<Rational>,
}

impl PointSet {
    pub fn constituents(&self) -> &ConstituentSet {
        &self.constituents
    }

    /// `Q_h` for every constituent, aligned with `constituents().all()`.
    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    /// `M`, which is also the point of `C_0`.
    pub fn prevision_point(&self) -> &[Rational] {
        &self.prevision_point
    }

    /// Indices (into `constituents().all()`) of the constituents in `∨H_i`.
    pub fn union_indices(&self) -> Vec<usize> {
        (0..self.constituents.len())
            .filter(|&h| Some(h) != self.constituents.zero())
            .collect()
    }

    /// The system (Σ) over the constituents of `∨H_i`.
    pub fn sigma(&self) -> LinearSystem<Rational> {
        self.system_over(&self.union_indices())
    }

    /// The system restricted to the given constituent columns.
    pub fn system_over(&self, columns: &[usize]) -> LinearSystem<Rational> {
        let rows = self.prevision_point.len();
        let coefficients = (0..rows)
            .map(|i| columns.iter().map(|&h| self.points[h][i].clone()).collect())
            .collect();
        let labels = columns.iter().map(|&h| self.constituents.all()[h].label()).collect();
        LinearSystem::new(coefficients, self.prevision_point.clone(), labels)
    }
}

/// Computes `Q_h` for every constituent: the member's value where it is
/// defined, its assessed prevision where it is void.
pub fn build_points(assessment: &Assessment) -> PointSet {
    let constituents = assessment.constituents();
    let points = constituents
        .all()
        .iter()
        .map(|c| {
            c.classes()
                .iter()
                .zip(assessment.values())
                .map(|(class, mu)| class.value().unwrap_or_else(|| mu.clone()))
                .collect()
        })
        .collect();
    PointSet {
        constituents,
        points,
        prevision_point: assessment.values().to_vec(),
    }
}

/// The system (Σ) of an assessment: `Σ_h λ_h Q_h = M`, `Σ λ_h = 1`, `λ ≥ 0`
/// over the constituents in the disjunction of the conditioning events.
pub fn build_sigma(assessment: &Assessment) -> LinearSystem<Rational> {
    build_points(assessment).sigma()
}

/// A truth pattern over `n` conditional events: `true` at `i` means `E_iH_i`.
///
/// Ordered lexicographically with `true < false`, matching constituent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<bool>);

impl Signature {
    /// All `2^n` signatures in canonical order.
    pub fn all(n: usize) -> Vec<Signature> {
        let mut v: Vec<Signature> = (0..1u64 << n)
            .map(|m| Signature((0..n).map(|i| m >> i & 1 == 1).collect()))
            .collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_true(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    /// Ordering key with the last event most significant, then the others
    /// in order; this is the order used for printed `Λ` vectors.
    pub fn display_key(&self) -> (bool, Vec<bool>) {
        let (last, rest) = self.0.split_last().map_or((true, &[][..]), |(l, r)| (*l, r));
        (!last, rest.iter().map(|b| !b).collect())
    }

    /// Compares by [`Signature::display_key`].
    pub fn display_cmp(&self, other: &Signature) -> Ordering {
        self.display_key().cmp(&other.display_key())
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        // `true` sorts first.
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                if t {
                    format!("{}", i + 1)
                } else {
                    format!("¬{}", i + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// The system (Σ*_n) for `(x_1,…,x_n, x_{1⋯n})` in canonical signature order:
/// `x_j = Σ_{S∋j} λ_S`, `x_{1⋯n} = λ_{1⋯n}`, `Σ λ_S = 1`.
pub fn sigma_star_system<T: Scalar>(xs: &[T], x_all: &T) -> LinearSystem<T> {
    let sigs = Signature::all(xs.len());
    let mut coefficients: Vec<Vec<T>> = (0..xs.len())
        .map(|j| sigs.iter().map(|s| if s.0[j] { T::one() } else { T::zero() }).collect())
        .collect();
    coefficients.push(
        sigs.iter()
            .map(|s| if s.all_true() { T::one() } else { T::zero() })
            .collect(),
    );
    let mut rhs = xs.to_vec();
    rhs.push(x_all.clone());
    LinearSystem::new(coefficients, rhs, sigs.iter().map(|s| s.to_string()).collect())
}

/// The system (Σ*_n) of an assessment on `{E_1|H_1,…,E_n|H_n, C_{1⋯n}}`.
///
/// Unknowns are the constituents inside every antecedent, which under
/// logical independence are the `2^n` truth patterns of the events.
pub fn build_sigma_star(assessment: &Assessment) -> Result<LinearSystem<Rational>, GeometryError> {
    let family = assessment.family();
    let (conj, events) = family.split_last().ok_or(GeometryError::NotApplicable)?;
    let n = events.len();
    let shape_ok = n >= 1
        && events
            .iter()
            .all(|q| q.kind() == QuantityKind::Indicator && q.generators().len() == 1)
        && conj.generators().len() == n
        && (n == 1 || conj.kind() == QuantityKind::Conjunction)
        && events
            .iter()
            .zip(conj.generators())
            .all(|(q, g)| q.generators()[0] == *g);
    if !shape_ok {
        return Err(GeometryError::NotApplicable);
    }
    let points = build_points(assessment);
    let kernel: Vec<usize> = points
        .constituents()
        .all()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.classes()[..n].iter().all(|k| !k.is_void()))
        .map(|(h, _)| h)
        .collect();
    if kernel.len() != 1 << n {
        return Err(GeometryError::NotApplicable);
    }
    let mut system = points.system_over(&kernel);
    let labels = kernel
        .iter()
        .map(|&h| signature_of(&points.constituents().all()[h], n).to_string())
        .collect();
    system.set_labels(labels);
    Ok(system)
}

fn signature_of(c: &Constituent, n: usize) -> Signature {
    Signature(c.classes()[..n].iter().map(|k| *k == Class::True).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::events::{build_world_space, event};
    use crate::scalar::ratio;

    fn pair(constraints: &[&str]) -> Vec<ConditionalEvent> {
        let s = build_world_space(&["A", "B", "H", "K"], constraints).unwrap();
        vec![
            ConditionalEvent::parse(&s, "A", "H").unwrap(),
            ConditionalEvent::parse(&s, "B", "K").unwrap(),
        ]
    }

    fn map2(x: Rational, y: Rational, z: Rational) -> CompoundPrevisionMap {
        let mut m = CompoundPrevisionMap::new();
        m.insert(&[0], x);
        m.insert(&[1], y);
        m.insert(&[0, 1], z);
        m
    }

    fn world(fam: &[ConditionalEvent], formula: &str) -> Vec<usize> {
        event(fam[0].space(), formula).unwrap().worlds().collect()
    }

    #[test]
    fn conjunction_of_two_matches_case_table() {
        let fam = pair(&[]);
        let c = make_conjunction(&fam, &map2(ratio(7, 20), ratio(9, 20), ratio(1, 5))).unwrap();
        for w in world(&fam, "!A&H") {
            assert_eq!(c.value(w), Some(&ratio(0, 1)));
        }
        for w in world(&fam, "!H&B&K") {
            assert_eq!(c.value(w), Some(&ratio(7, 20)));
        }
        for w in world(&fam, "A&H&!K") {
            assert_eq!(c.value(w), Some(&ratio(9, 20)));
        }
        for w in world(&fam, "A&H&B&K") {
            assert_eq!(c.value(w), Some(&ratio(1, 1)));
        }
        for w in world(&fam, "!H&!K") {
            assert_eq!(c.value(w), None);
        }
        assert_eq!(c.prevision(), Some(&ratio(1, 5)));
    }

    #[test]
    fn conjunction_requires_strict_subsets() {
        let fam = pair(&[]);
        let mut m = CompoundPrevisionMap::new();
        m.insert(&[0], ratio(1, 2));
        assert_eq!(
            make_conjunction(&fam, &m),
            Err(GeometryError::MissingPrevision(vec![1]))
        );
        m.insert(&[1], ratio(3, 2));
        assert!(matches!(
            make_conjunction(&fam, &m),
            Err(GeometryError::OutOfRange { .. })
        ));
    }

    #[test]
    fn conjunction_with_itself_is_the_event() {
        let s = build_world_space(&["A", "H"], &[] as &[&str]).unwrap();
        let e = ConditionalEvent::parse(&s, "A", "H").unwrap();
        let c = make_conjunction(&[e.clone(), e.clone()], &map2(ratio(1, 3), ratio(1, 3), ratio(1, 3))).unwrap();
        let ind = ConditionalQuantity::indicator("e", &e);
        for w in 0..s.len() {
            assert_eq!(c.value(w), ind.value(w));
        }
    }

    #[test]
    fn disjunction_of_two_matches_case_table() {
        let fam = pair(&[]);
        let (x, y, w) = (ratio(7, 20), ratio(9, 20), ratio(3, 5));
        let neg = map2(x.clone(), y.clone(), w).negation_map_from_disjunction();
        let d = make_disjunction(&fam, &neg).unwrap();
        for v in world(&fam, "(A&H)|(B&K)") {
            assert_eq!(d.value(v), Some(&ratio(1, 1)));
        }
        for v in world(&fam, "!A&H&!B&K") {
            assert_eq!(d.value(v), Some(&ratio(0, 1)));
        }
        for v in world(&fam, "!H&!B&K") {
            assert_eq!(d.value(v), Some(&x));
        }
        for v in world(&fam, "!A&H&!K") {
            assert_eq!(d.value(v), Some(&y));
        }
        assert_eq!(d.prevision(), Some(&ratio(3, 5)));
    }

    #[test]
    fn unary_disjunction_is_the_event() {
        let fam = pair(&[]);
        let mut m = CompoundPrevisionMap::new();
        m.insert(&[0], ratio(1, 4));
        let d = make_disjunction(&fam[..1], &m).unwrap();
        let ind = ConditionalQuantity::indicator("a", &fam[0]);
        for w in 0..16 {
            assert_eq!(d.value(w), ind.value(w));
        }
    }

    #[test]
    fn certain_components_make_disjunction_one_off_the_double_failure() {
        let fam = pair(&[]);
        let neg = map2(ratio(1, 1), ratio(1, 1), ratio(1, 1)).negation_map_from_disjunction();
        let d = make_disjunction(&fam, &neg).unwrap();
        let fail = world(&fam, "!A&H&!B&K");
        for w in world(&fam, "H|K") {
            let expect = if fail.contains(&w) { 0 } else { 1 };
            assert_eq!(d.value(w), Some(&ratio(expect, 1)));
        }
    }

    #[test]
    fn example_points_for_same_consequent() {
        let s = build_world_space(&["A", "H", "K"], &[] as &[&str]).unwrap();
        let fam = [
            ConditionalEvent::parse(&s, "A", "H").unwrap(),
            ConditionalEvent::parse(&s, "A", "K").unwrap(),
        ];
        let (x, y) = (ratio(3, 10), ratio(4, 5));
        let a = Assessment::new(
            fam.iter().map(|e| ConditionalQuantity::indicator("", e)).collect(),
            vec![x.clone(), y.clone()],
        )
        .unwrap();
        let p = build_points(&a);
        let got: Vec<(String, Vec<Rational>)> = p
            .constituents()
            .all()
            .iter()
            .map(Constituent::label)
            .zip(p.points().iter().cloned())
            .collect();
        let one = ratio(1, 1);
        let zero = ratio(0, 1);
        let expected = vec![
            ("TT".to_string(), vec![one.clone(), one.clone()]),
            ("TV".into(), vec![one.clone(), y.clone()]),
            ("FF".into(), vec![zero.clone(), zero.clone()]),
            ("FV".into(), vec![zero.clone(), y.clone()]),
            ("VT".into(), vec![x.clone(), one.clone()]),
            ("VF".into(), vec![x.clone(), zero.clone()]),
            ("VV".into(), vec![x.clone(), y.clone()]),
        ];
        assert_eq!(got, expected);
        assert_eq!(p.sigma().unknowns(), 6);
    }

    #[test]
    fn sigma_star_matches_generic_builder() {
        let s = build_world_space(&["E1", "H1", "E2", "H2", "E3", "H3"], &[] as &[&str]).unwrap();
        let fam: Vec<ConditionalEvent> = (1..=3)
            .map(|i| ConditionalEvent::parse(&s, &format!("E{i}"), &format!("H{i}")).unwrap())
            .collect();
        let xs = [ratio(1, 2), ratio(3, 5), ratio(7, 10)];
        let map = CompoundPrevisionMap::from_fn(3, |sub| sub.iter().map(|&i| xs[i].clone()).min().unwrap());
        let c = make_conjunction(&fam, &map).unwrap();
        let mut family: Vec<ConditionalQuantity> = fam.iter().map(|e| ConditionalQuantity::indicator("", e)).collect();
        family.push(c);
        let mut values = xs.to_vec();
        values.push(ratio(1, 2));
        let a = Assessment::new(family, values).unwrap();
        let built = build_sigma_star(&a).unwrap();
        let generic = sigma_star_system(&xs, &ratio(1, 2));
        assert_eq!(built, generic);
        assert_eq!(built.labels()[0], "123");
        assert_eq!(built.labels()[7], "¬1¬2¬3");
    }

    #[test]
    fn sigma_star_rejects_other_shapes() {
        let fam = pair(&[]);
        let a = Assessment::new(
            fam.iter().map(|e| ConditionalQuantity::indicator("", e)).collect(),
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        assert_eq!(build_sigma_star(&a), Err(GeometryError::NotApplicable));
    }

    #[test]
    fn unary_sigma_star() {
        let sys = sigma_star_system(&[ratio(1, 3)], &ratio(1, 3));
        assert_eq!(sys.labels(), ["1", "¬1"]);
        assert!(sys.is_solution(&[ratio(1, 3), ratio(2, 3)]));
    }

    #[test]
    fn signature_orders() {
        let sigs = Signature::all(3);
        let shown: Vec<String> = sigs.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown[..3], ["123", "12¬3", "1¬23"]);
        let mut by_display = sigs.clone();
        by_display.sort_by(Signature::display_cmp);
        let shown: Vec<String> = by_display.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            shown,
            ["123", "1¬23", "¬123", "¬1¬23", "12¬3", "1¬2¬3", "¬12¬3", "¬1¬2¬3"]
        );
    }

    #[test]
    fn assessment_validation() {
        let fam = pair(&[]);
        let q = ConditionalQuantity::indicator("a", &fam[0]);
        assert_eq!(
            Assessment::new(vec![q.clone()], vec![]),
            Err(GeometryError::LengthMismatch {
                quantities: 1,
                values: 0
            })
        );
        assert_eq!(Assessment::new(vec![], vec![]), Err(GeometryError::EmptyFamily));
        assert_eq!(q.range(), (ratio(0, 1), ratio(1, 1)));
    }
}
