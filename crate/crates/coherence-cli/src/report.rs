//! Reports: serde types for `--json` output and their plain-text rendering.
//!
//! Rationals serialize as exact `"p/q"` strings so that re-reading a report
//! recovers every value without loss.

use std::fmt::{self, Write as _};

use coherence::scalar::to_decimal_string;
use coherence::{parse_rational, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational that serializes as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(Exact).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn exact(values: &[Rational]) -> Vec<Exact> {
    values.iter().cloned().map(Exact).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub members: Vec<String>,
    pub constituents: Vec<String>,
    pub solution: Option<Vec<Exact>>,
    pub masses: Vec<Exact>,
    pub zero_set: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gain {
    pub constituent: String,
    pub gain: Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Book {
    pub members: Vec<String>,
    pub stakes: Vec<Exact>,
    pub gains: Vec<Gain>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: String,
    pub family: Vec<String>,
    pub values: Vec<Exact>,
    pub trace: Vec<Level>,
    pub dutch_book: Option<Book>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendReport {
    pub quantity: String,
    pub base: Vec<String>,
    pub lower: Exact,
    pub upper: Exact,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: Exact,
    pub upper: Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub values: Vec<Exact>,
    pub conjunction: Interval,
    pub disjunction: Interval,
}

/// A t-norm or t-conorm value: exact for the named parameters, a decimal
/// approximation otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub operation: String,
    pub lambda: String,
    pub values: Vec<Exact>,
    pub result: Option<Exact>,
    pub decimal: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub values: Vec<Exact>,
    pub target: Exact,
    pub lambda: String,
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub signature: String,
    pub value: Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub bound: String,
    pub values: Vec<Exact>,
    pub conjunction: Exact,
    /// Lukasiewicz case letter (a)–(f).
    pub case: Option<String>,
    /// Variables sorted ascending, 1-based, for the minimum bound.
    pub order: Option<Vec<usize>>,
    /// Components with the last event most significant.
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub constituent: String,
    pub value: Option<Exact>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub quantity: String,
    pub generators: Vec<String>,
    pub rows: Vec<Row>,
}

/// Plain-text rendering with decimals to `precision` digits.
pub trait Render {
    fn render(&self, precision: usize) -> String;
}

fn dec(x: &Exact, precision: usize) -> String {
    let d = to_decimal_string(&x.0, precision);
    if x.0.is_integer() {
        x.to_string()
    } else {
        format!("{} ≈ {d}", x.0)
    }
}

fn list(xs: &[Exact]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl Render for CheckReport {
    fn render(&self, p: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        for (name, v) in self.family.iter().zip(&self.values) {
            let _ = writeln!(out, "  {name} = {}", dec(v, p));
        }
        for (k, level) in self.trace.iter().enumerate() {
            let _ = writeln!(out, "level {}: {{{}}}", k + 1, level.members.join(", "));
            match &level.solution {
                Some(sol) => {
                    for (c, v) in level.constituents.iter().zip(sol) {
                        let _ = writeln!(out, "  λ[{c}] = {}", dec(v, p));
                    }
                    for (m, mass) in level.members.iter().zip(&level.masses) {
                        let _ = writeln!(out, "  M[{m}] = {}", dec(mass, p));
                    }
                    let _ = writeln!(out, "  zero set: {{{}}}", level.zero_set.join(", "));
                }
                None => {
                    let _ = writeln!(out, "  no solution");
                }
            }
        }
        if let Some(book) = &self.dutch_book {
            let _ = writeln!(out, "dutch book:");
            for (m, s) in book.members.iter().zip(&book.stakes) {
                let _ = writeln!(out, "  stake on {m} = {}", dec(s, p));
            }
            for g in &book.gains {
                let _ = writeln!(out, "  gain on {} = {}", g.constituent, dec(&g.gain, p));
            }
        }
        out
    }
}

impl Render for ExtendReport {
    fn render(&self, p: usize) -> String {
        format!(
            "{} given {{{}}}: [{}, {}]{}\n",
            self.quantity,
            self.base.join(", "),
            dec(&self.lower, p),
            dec(&self.upper, p),
            if self.exact { "" } else { " (bracketed)" }
        )
    }
}

impl Render for BoundsReport {
    fn render(&self, p: usize) -> String {
        format!(
            "values: {}\nconjunction: [{}, {}]\ndisjunction: [{}, {}]\n",
            list(&self.values),
            dec(&self.conjunction.lower, p),
            dec(&self.conjunction.upper, p),
            dec(&self.disjunction.lower, p),
            dec(&self.disjunction.upper, p)
        )
    }
}

impl Render for NormReport {
    fn render(&self, p: usize) -> String {
        let value = match &self.result {
            Some(r) => dec(r, p),
            None => self.decimal.clone(),
        };
        format!(
            "{}[λ={}]({}) = {value}\n",
            self.operation,
            self.lambda,
            list(&self.values)
        )
    }
}

impl Render for SolveReport {
    fn render(&self, _: usize) -> String {
        format!(
            "λ = {}{}\n",
            self.lambda,
            if self.unique { "" } else { " (any λ gives this value)" }
        )
    }
}

impl Render for LambdaReport {
    fn render(&self, p: usize) -> String {
        let mut out = format!("{} bound: x = {}\n", self.bound, dec(&self.conjunction, p));
        if let Some(case) = &self.case {
            let _ = writeln!(out, "case ({case})");
        }
        if let Some(order) = &self.order {
            let o: Vec<String> = order.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "ascending order: {}", o.join(" ≤ "));
        }
        for c in &self.components {
            let _ = writeln!(out, "  λ[{}] = {}", c.signature, dec(&c.value, p));
        }
        out
    }
}

impl Render for TableReport {
    fn render(&self, p: usize) -> String {
        let mut out = format!("{} over ({})\n", self.quantity, self.generators.join(", "));
        for row in &self.rows {
            let v = row
                .value
                .as_ref()
                .map_or_else(|| "unassessed".to_string(), |v| dec(v, p));
            let _ = writeln!(out, "  {}  {v}", row.constituent);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coherence::ratio;

    #[test]
    fn rationals_survive_a_json_round_trip() {
        let report = ExtendReport {
            quantity: "C".into(),
            base: vec!["A|H".into(), "A|K".into()],
            lower: Exact(ratio(63, 400)),
            upper: Exact(ratio(-7, 3)),
            exact: true,
        };
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"63/400\""));
        let back: ExtendReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn decimal_input_is_read_exactly() {
        let e: Exact = serde_json::from_str("\"0.35\"").unwrap();
        assert_eq!(e.0, ratio(7, 20));
        assert!(serde_json::from_str::<Exact>("\"1/0\"").is_err());
    }
}
