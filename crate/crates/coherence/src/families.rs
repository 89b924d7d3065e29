//! Builders for the standard families: logically independent conditional
//! events, their conjunction family, the family of seven, and `{A|H, A|K}`.

use std::sync::Arc;

use crate::closed_form::Family7Assessment;
use crate::events::{build_world_space, ConditionalEvent, EventError, WorldSpace};
use crate::geometry::{make_conjunction, Assessment, CompoundPrevisionMap, ConditionalQuantity, GeometryError};
use crate::scalar::Rational;

/// `E_1|H_1, …, E_n|H_n` over atoms `E1, H1, …, En, Hn` with the given
/// extra constraints (none means logically independent).
pub fn independent_events<C: AsRef<str>>(n: usize, constraints: &[C]) -> Result<Vec<ConditionalEvent>, EventError> {
    let atoms: Vec<String> = (1..=n).flat_map(|i| [format!("E{i}"), format!("H{i}")]).collect();
    let space = build_world_space(&atoms, constraints)?;
    (1..=n)
        .map(|i| ConditionalEvent::parse(&space, &format!("E{i}"), &format!("H{i}")))
        .collect()
}

/// `A|H, A|K` over atoms `A, H, K`; with `disjoint` the constraint
/// `!(H&K)` is added.
pub fn same_consequent_events(disjoint: bool) -> Result<Vec<ConditionalEvent>, EventError> {
    let constraints: &[&str] = if disjoint { &["!(H&K)"] } else { &[] };
    let space: Arc<WorldSpace> = build_world_space(&["A", "H", "K"], constraints)?;
    Ok(vec![
        ConditionalEvent::parse(&space, "A", "H")?,
        ConditionalEvent::parse(&space, "A", "K")?,
    ])
}

fn indicators(events: &[ConditionalEvent]) -> Vec<ConditionalQuantity> {
    events
        .iter()
        .enumerate()
        .map(|(i, e)| ConditionalQuantity::indicator(format!("C_{}", i + 1), e))
        .collect()
}

/// The assessment `(x_1,…,x_n, x_{1⋯n})` on `{E_1|H_1,…,E_n|H_n, C_{1⋯n}}`.
///
/// `sub_previsions` must supply every strict sub-conjunction of size ≥ 2
/// (singletons are taken from `xs`).
pub fn conjunction_assessment(
    events: &[ConditionalEvent],
    xs: &[Rational],
    sub_previsions: impl Fn(&[usize]) -> Rational,
    x_all: Rational,
) -> Result<Assessment, GeometryError> {
    let map = CompoundPrevisionMap::from_fn(events.len(), |s| {
        if s.len() == 1 {
            xs[s[0]].clone()
        } else {
            sub_previsions(s)
        }
    });
    let c = make_conjunction(events, &map)?;
    let mut family = indicators(events);
    family.push(c);
    let mut values = xs.to_vec();
    values.push(x_all);
    Assessment::new(family, values)
}

/// The family `{C_1, C_2, C_3, C_12, C_13, C_23, C_123}` on three events,
/// with each compound built from the lower-order values of `a`.
pub fn family7_assessment(
    events: &[ConditionalEvent],
    a: &Family7Assessment<Rational>,
) -> Result<Assessment, GeometryError> {
    assert_eq!(events.len(), 3, "the family of seven needs three events");
    let singles = [a.x1.clone(), a.x2.clone(), a.x3.clone()];
    let pairs = [
        ([0usize, 1usize], a.x12.clone(), "C_12"),
        ([0, 2], a.x13.clone(), "C_13"),
        ([1, 2], a.x23.clone(), "C_23"),
    ];
    let mut family = indicators(events);
    let mut values = singles.to_vec();
    let mut triple = CompoundPrevisionMap::new();
    for (i, x) in singles.iter().enumerate() {
        triple.insert(&[i], x.clone());
    }
    for (idx, x, label) in &pairs {
        let mut m = CompoundPrevisionMap::new();
        m.insert(&[0], singles[idx[0]].clone());
        m.insert(&[1], singles[idx[1]].clone());
        let members = [events[idx[0]].clone(), events[idx[1]].clone()];
        family.push(make_conjunction(&members, &m)?.with_label(*label));
        values.push(x.clone());
        triple.insert(idx, x.clone());
    }
    family.push(make_conjunction(events, &triple)?);
    values.push(a.x123.clone());
    Assessment::new(family, values)
}
