//! Constituents: the partition of the world space induced by a family.
//!
//! Each world gets a class vector (one entry per family member: the member's
//! value there, or void outside its conditioning event). Worlds sharing a
//! class vector form one constituent. Constituents are sorted
//! lexicographically with `True < False < Value(_) < Void`, so the all-void
//! constituent `C_0`, when present, is always last.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::events::ConditionalEvent;
use crate::scalar::Rational;

/// Status of one family member on a constituent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    True,
    False,
    /// A value other than 0 or 1 (compound quantities).
    Value(Rational),
    Void,
}

impl Class {
    /// Classifies a value: 1 and 0 become `True`/`False`.
    pub fn of_value(v: &Rational) -> Class {
        if v.is_one() {
            Class::True
        } else if v.is_zero() {
            Class::False
        } else {
            Class::Value(v.clone())
        }
    }

    pub fn is_void(&self) -> bool {
        matches!(self, Class::Void)
    }

    /// Numeric value, `None` when void.
    pub fn value(&self) -> Option<Rational> {
        match self {
            Class::True => Some(Rational::one()),
            Class::False => Some(Rational::zero()),
            Class::Value(v) => Some(v.clone()),
            Class::Void => None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::True => write!(f, "T"),
            Class::False => write!(f, "F"),
            Class::Value(v) => write!(f, "{v}"),
            Class::Void => write!(f, "V"),
        }
    }
}

/// A non-empty set of worlds sharing one class vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    worlds: Vec<usize>,
    classes: Vec<Class>,
}

impl Constituent {
    pub fn worlds(&self) -> &[usize] {
        &self.worlds
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class(&self, member: usize) -> &Class {
        &self.classes[member]
    }

    /// True when every member is void (the constituent `C_0`).
    pub fn is_all_void(&self) -> bool {
        self.classes.iter().all(Class::is_void)
    }

    /// True when no member is void (inside every conditioning event).
    pub fn is_in_all(&self) -> bool {
        !self.classes.iter().any(Class::is_void)
    }

    /// Compact label such as `TFV`; non-Boolean values are bracketed.
    pub fn label(&self) -> String {
        self.classes
            .iter()
            .map(|c| match c {
                Class::Value(v) => format!("[{v}]"),
                other => other.to_string(),
            })
            .collect()
    }
}

/// Constituents of a family in canonical order, with `C_0` flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstituentSet {
    items: Vec<Constituent>,
    zero: Option<usize>,
}

impl ConstituentSet {
    /// Groups `worlds` by the class vector produced by `classify(world, member)`.
    pub fn from_classifier(worlds: usize, members: usize, classify: impl Fn(usize, usize) -> Class) -> ConstituentSet {
        let mut groups: BTreeMap<Vec<Class>, Vec<usize>> = BTreeMap::new();
        for w in 0..worlds {
            let key: Vec<Class> = (0..members).map(|i| classify(w, i)).collect();
            groups.entry(key).or_default().push(w);
        }
        let items: Vec<Constituent> = groups
            .into_iter()
            .map(|(classes, worlds)| Constituent { worlds, classes })
            .collect();
        let zero = items.iter().position(Constituent::is_all_void);
        ConstituentSet { items, zero }
    }

    pub fn all(&self) -> &[Constituent] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Index of `C_0` (the all-void constituent), if it is possible.
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    /// Constituents inside the disjunction of the conditioning events
    /// (everything except `C_0`), in canonical order.
    pub fn in_union(&self) -> Vec<&Constituent> {
        self.items.iter().filter(|c| !c.is_all_void()).collect()
    }

    /// Constituents inside every conditioning event (the set `K`).
    pub fn in_all(&self) -> Vec<&Constituent> {
        self.items.iter().filter(|c| c.is_in_all()).collect()
    }
}

fn classify_event(e: &ConditionalEvent, world: usize) -> Class {
    match e.status(world) {
        Some(true) => Class::True,
        Some(false) => Class::False,
        None => Class::Void,
    }
}

/// Constituents generated by a family of conditional events.
///
/// # Panics
/// Panics if the events do not share a world space.
pub fn enumerate_constituents(family: &[ConditionalEvent]) -> ConstituentSet {
    let Some(first) = family.first() else {
        return ConstituentSet {
            items: Vec::new(),
            zero: None,
        };
    };
    let space = first.space();
    assert!(
        family.iter().all(|e| e.antecedent().same_space(first.antecedent())),
        "family members must share a world space"
    );
    ConstituentSet::from_classifier(space.len(), family.len(), |w, i| classify_event(&family[i], w))
}

/// Constituents lying inside every antecedent (no void member).
pub fn constituents_in_all_antecedents(family: &[ConditionalEvent]) -> Vec<Constituent> {
    enumerate_constituents(family).in_all().into_iter().cloned().collect()
}
