//! Finite world spaces, Boolean formulas over atoms, and events.
//!
//! A world is a truth assignment to the declared atoms; the space keeps only
//! the assignments that satisfy every constraint. Events are sets of worlds.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Largest number of atoms accepted (worlds are enumerated eagerly).
pub const MAX_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("no truth assignment satisfies the constraints")]
    EmptySpace,
    #[error("unknown atom `{name}` at offset {offset}")]
    UnknownAtom { name: String, offset: usize },
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("too many atoms ({0}); at most {MAX_ATOMS} are supported")]
    TooManyAtoms(usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("conditioning event is empty")]
    EmptyAntecedent,
    #[error("events belong to different world spaces")]
    SpaceMismatch,
}

/// Parsed Boolean formula over atom indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Extensional equality (`A=B`); lowest precedence.
    Equiv(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Parses `text` against the given atom names.
    ///
    /// Grammar: identifiers, `true`/`false`, unary `!`, binary `&` and `|`
    /// (`&` binds tighter), parentheses, and a single top-level `=`.
    pub fn parse(text: &str, atoms: &[String]) -> Result<Formula, EventError> {
        let mut parser = Parser {
            src: text,
            pos: 0,
            atoms,
        };
        let f = parser.equiv()?;
        parser.skip_ws();
        if parser.pos < text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(f)
    }

    /// Truth value in the world encoded by `bits` (bit `i` = atom `i`).
    pub fn eval(&self, bits: u64) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Atom(i) => bits >> i & 1 == 1,
            Formula::Not(f) => !f.eval(bits),
            Formula::And(a, b) => a.eval(bits) && b.eval(bits),
            Formula::Or(a, b) => a.eval(bits) || b.eval(bits),
            Formula::Equiv(a, b) => a.eval(bits) == b.eval(bits),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    atoms: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> EventError {
        EventError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn equiv(&mut self) -> Result<Formula, EventError> {
        let lhs = self.or()?;
        if self.eat('=') {
            let rhs = self.or()?;
            return Ok(Formula::Equiv(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, EventError> {
        let mut lhs = self.and()?;
        while self.eat('|') {
            let rhs = self.and()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, EventError> {
        let mut lhs = self.unary()?;
        while self.eat('&') {
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, EventError> {
        if self.eat('!') {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.eat('(') {
            let inner = self.equiv()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected an atom, `!` or `(`"));
        }
        self.pos += len;
        let name = &self.src[start..self.pos];
        match name {
            "true" => Ok(Formula::Const(true)),
            "false" => Ok(Formula::Const(false)),
            _ => self
                .atoms
                .iter()
                .position(|a| a == name)
                .map(Formula::Atom)
                .ok_or_else(|| EventError::UnknownAtom {
                    name: name.to_string(),
                    offset: start,
                }),
        }
    }
}

/// The set of truth assignments that survive all declared constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldSpace {
    atoms: Vec<String>,
    worlds: Vec<u64>,
}

impl WorldSpace {
    /// Enumerates all assignments of `atoms` satisfying every constraint.
    pub fn build<S: AsRef<str>, C: AsRef<str>>(atoms: &[S], constraints: &[C]) -> Result<Arc<WorldSpace>, EventError> {
        let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_string()).collect();
        if atoms.len() > MAX_ATOMS {
            return Err(EventError::TooManyAtoms(atoms.len()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(EventError::DuplicateAtom(a.clone()));
            }
        }
        let formulas = constraints
            .iter()
            .map(|c| Formula::parse(c.as_ref(), &atoms))
            .collect::<Result<Vec<_>, _>>()?;
        let worlds: Vec<u64> = (0..1u64 << atoms.len())
            .filter(|&w| formulas.iter().all(|f| f.eval(w)))
            .collect();
        if worlds.is_empty() {
            return Err(EventError::EmptySpace);
        }
        Ok(Arc::new(WorldSpace { atoms, worlds }))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Worlds as bit masks (bit `i` = truth of atom `i`).
    pub fn worlds(&self) -> &[u64] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    /// Truth assignment of world `w` as one flag per atom.
    pub fn assignment(&self, w: usize) -> Vec<bool> {
        (0..self.atoms.len()).map(|i| self.worlds[w] >> i & 1 == 1).collect()
    }
}

/// Enumerates the worlds over `atoms` that satisfy every constraint formula.
pub fn build_world_space<S: AsRef<str>, C: AsRef<str>>(
    atoms: &[S],
    constraints: &[C],
) -> Result<Arc<WorldSpace>, EventError> {
    WorldSpace::build(atoms, constraints)
}

/// Parses `formula` and returns the event it denotes in `space`.
pub fn event(space: &Arc<WorldSpace>, formula: &str) -> Result<Event, EventError> {
    let f = Formula::parse(formula, &space.atoms)?;
    let mut members = FixedBitSet::with_capacity(space.len());
    for (i, &w) in space.worlds.iter().enumerate() {
        members.set(i, f.eval(w));
    }
    Ok(Event {
        space: Arc::clone(space),
        members,
    })
}

/// A set of worlds of a fixed space.
#[derive(Clone)]
pub struct Event {
    space: Arc<WorldSpace>,
    members: FixedBitSet,
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.members == other.members
    }
}

impl Eq for Event {}

impl Event {
    pub fn empty(space: &Arc<WorldSpace>) -> Event {
        Event {
            space: Arc::clone(space),
            members: FixedBitSet::with_capacity(space.len()),
        }
    }

    pub fn sure(space: &Arc<WorldSpace>) -> Event {
        Event::empty(space).not()
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        &self.space
    }

    pub fn same_space(&self, other: &Event) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space
    }

    pub fn contains(&self, world: usize) -> bool {
        self.members.contains(world)
    }

    pub fn worlds(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn not(&self) -> Event {
        let mut members = self.members.clone();
        members.toggle_range(..);
        Event {
            space: Arc::clone(&self.space),
            members,
        }
    }

    /// # Panics
    /// Panics if the events live in different spaces.
    pub fn and(&self, other: &Event) -> Event {
        assert!(self.same_space(other), "events from different spaces");
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Event {
            space: Arc::clone(&self.space),
            members,
        }
    }

    /// # Panics
    /// Panics if the events live in different spaces.
    pub fn or(&self, other: &Event) -> Event {
        assert!(self.same_space(other), "events from different spaces");
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Event {
            space: Arc::clone(&self.space),
            members,
        }
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The conditional event `E|H` (true on EH, false on ĒH, void on H̄).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalEvent {
    consequent: Event,
    antecedent: Event,
}

impl ConditionalEvent {
    pub fn new(consequent: Event, antecedent: Event) -> Result<Self, EventError> {
        if !consequent.same_space(&antecedent) {
            return Err(EventError::SpaceMismatch);
        }
        if antecedent.is_empty() {
            return Err(EventError::EmptyAntecedent);
        }
        Ok(ConditionalEvent { consequent, antecedent })
    }

    /// Parses consequent and antecedent formulas in `space`.
    pub fn parse(space: &Arc<WorldSpace>, consequent: &str, antecedent: &str) -> Result<Self, EventError> {
        Self::new(event(space, consequent)?, event(space, antecedent)?)
    }

    pub fn consequent(&self) -> &Event {
        &self.consequent
    }

    pub fn antecedent(&self) -> &Event {
        &self.antecedent
    }

    pub fn space(&self) -> &Arc<WorldSpace> {
        self.antecedent.space()
    }

    /// `Ē|H`.
    pub fn negation(&self) -> ConditionalEvent {
        ConditionalEvent {
            consequent: self.consequent.not(),
            antecedent: self.antecedent.clone(),
        }
    }

    /// True/false/void status in a world.
    pub fn status(&self, world: usize) -> Option<bool> {
        self.antecedent.contains(world).then(|| self.consequent.contains(world))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ahk() -> Arc<WorldSpace> {
        WorldSpace::build(&["A", "H", "K"], &[] as &[&str]).unwrap()
    }

    #[test]
    fn unconstrained_space_has_all_assignments() {
        assert_eq!(ahk().len(), 8);
    }

    #[test]
    fn constraint_removes_assignments() {
        let s = WorldSpace::build(&["A", "H", "K"], &["!(H&K)"]).unwrap();
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn contradiction_is_empty_space() {
        assert_eq!(WorldSpace::build(&["A"], &["A&!A"]), Err(EventError::EmptySpace));
    }

    #[test]
    fn unknown_atom_reports_offset() {
        assert_eq!(
            WorldSpace::build(&["A"], &["A | Bx"]),
            Err(EventError::UnknownAtom {
                name: "Bx".into(),
                offset: 4
            })
        );
    }

    #[test]
    fn alias_constraint_identifies_atoms() {
        let s = WorldSpace::build(&["A", "B"], &["A=B"]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(event(&s, "A").unwrap(), event(&s, "B").unwrap());
    }

    #[test]
    fn syntax_errors_are_reported() {
        let atoms = vec!["A".to_string()];
        assert!(matches!(Formula::parse("(A", &atoms), Err(EventError::Syntax { .. })));
        assert!(matches!(Formula::parse("A &", &atoms), Err(EventError::Syntax { .. })));
        assert!(matches!(
            Formula::parse("A A", &atoms),
            Err(EventError::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        let atoms: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let f = Formula::parse("A | B & C", &atoms).unwrap();
        // A=0, B=1, C=0 → false only if & binds tighter.
        assert!(!f.eval(0b010));
        assert!(f.eval(0b001));
    }

    #[test]
    fn boolean_operations() {
        let s = ahk();
        let a = event(&s, "A").unwrap();
        let h = event(&s, "H").unwrap();
        assert_eq!(a.and(&h).len(), 2);
        assert_eq!(a.or(&h).len(), 6);
        assert_eq!(a.not().len(), 4);
        assert_eq!(a.and(&a.not()), Event::empty(&s));
        assert_eq!(a.or(&a.not()), Event::sure(&s));
        assert!(a.and(&h).is_subset(&a));
    }

    #[test]
    fn conditional_event_needs_nonempty_antecedent() {
        let s = ahk();
        assert_eq!(
            ConditionalEvent::parse(&s, "A", "H&!H"),
            Err(EventError::EmptyAntecedent)
        );
        let c = ConditionalEvent::parse(&s, "A", "H").unwrap();
        let w = s.worlds().iter().position(|&w| w == 0b011).unwrap();
        assert_eq!(c.status(w), Some(true));
        assert_eq!(c.negation().status(w), Some(false));
    }
}
