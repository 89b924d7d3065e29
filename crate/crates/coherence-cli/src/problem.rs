//! Problem files: JSON documents declaring atoms, conditional events,
//! compounds, an assessment and command-specific query parameters.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use coherence::geometry::{make_conjunction, make_disjunction, nonempty_subsets, CompoundPrevisionMap};
use coherence::{parse_rational, Assessment, ConditionalEvent, ConditionalQuantity, Rational, WorldSpace};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub atoms: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<String>,
    #[serde(default)]
    pub conditionals: Vec<ConditionalSpec>,
    #[serde(default)]
    pub compounds: Vec<CompoundSpec>,
    #[serde(default)]
    pub assessment: BTreeMap<String, RationalText>,
    #[serde(default)]
    pub query: Query,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionalSpec {
    pub name: String,
    pub consequent: String,
    pub antecedent: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompoundKind {
    Conjunction,
    Disjunction,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompoundSpec {
    pub name: String,
    pub kind: CompoundKind,
    pub members: Vec<String>,
    /// Previsions of sub-compounds keyed by comma-joined member names.
    #[serde(default)]
    pub previsions: BTreeMap<String, RationalText>,
}

/// Command-specific parameters; command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    /// Name of the quantity for `extend` and `table`.
    pub quantity: Option<String>,
    pub values: Option<Vec<RationalText>>,
    pub lambda: Option<String>,
    pub target: Option<RationalText>,
}

/// A rational given as a `"p/q"` / decimal string or a JSON number.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Number(serde_json::Number),
}

impl RationalText {
    pub fn parse(&self) -> Result<Rational> {
        let text = match self {
            RationalText::Text(s) => s.clone(),
            RationalText::Number(n) => n.to_string(),
        };
        parse_rational(&text).with_context(|| format!("invalid rational `{text}`"))
    }
}

/// A validated problem: every name resolved, every rational exact.
#[derive(Debug)]
pub struct Problem {
    /// Declared quantities, conditionals first, each in file order.
    pub quantities: Vec<(String, ConditionalQuantity)>,
    pub assessment: BTreeMap<String, Rational>,
    pub query: Query,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Problem> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let file: ProblemFile =
            serde_json::from_str(&text).with_context(|| format!("invalid problem file {}", path.display()))?;
        Problem::from_file(file)
    }

    pub fn from_file(file: ProblemFile) -> Result<Problem> {
        let space = WorldSpace::build(&file.atoms, &file.constraints).context("invalid atoms or constraints")?;

        let mut assessment = BTreeMap::new();
        for (name, v) in &file.assessment {
            let value = v.parse().with_context(|| format!("assessment of `{name}`"))?;
            assessment.insert(name.clone(), value);
        }

        let mut events: BTreeMap<String, ConditionalEvent> = BTreeMap::new();
        let mut quantities = Vec::new();
        for c in &file.conditionals {
            ensure_fresh(&c.name, &events, &quantities)?;
            let e = ConditionalEvent::parse(&space, &c.consequent, &c.antecedent)
                .with_context(|| format!("conditional `{}`", c.name))?;
            quantities.push((c.name.clone(), ConditionalQuantity::indicator(c.name.clone(), &e)));
            events.insert(c.name.clone(), e);
        }

        for c in &file.compounds {
            ensure_fresh(&c.name, &events, &quantities)?;
            let quantity = build_compound(c, &file.compounds, &events, &assessment)
                .with_context(|| format!("compound `{}`", c.name))?;
            quantities.push((c.name.clone(), quantity));
        }

        for name in assessment.keys() {
            if !quantities.iter().any(|(n, _)| n == name) {
                bail!("assessment names undeclared quantity `{name}`");
            }
        }
        if let Some(q) = &file.query.quantity {
            if !quantities.iter().any(|(n, _)| n == q) {
                bail!("query names undeclared quantity `{q}`");
            }
        }
        Ok(Problem {
            quantities,
            assessment,
            query: file.query,
        })
    }

    pub fn quantity(&self, name: &str) -> Result<&ConditionalQuantity> {
        self.quantities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, q)| q)
            .ok_or_else(|| anyhow!("unknown quantity `{name}`"))
    }

    /// The assessed quantities in declaration order, skipping `exclude`.
    pub fn assessment(&self, exclude: Option<&str>) -> Result<(Vec<String>, Assessment)> {
        let mut names = Vec::new();
        let mut family = Vec::new();
        let mut values = Vec::new();
        for (name, q) in &self.quantities {
            if Some(name.as_str()) == exclude {
                continue;
            }
            if let Some(v) = self.assessment.get(name) {
                names.push(name.clone());
                family.push(q.clone());
                values.push(v.clone());
            }
        }
        let assessment = Assessment::new(family, values).context("invalid assessment")?;
        Ok((names, assessment))
    }
}

fn ensure_fresh(
    name: &str,
    events: &BTreeMap<String, ConditionalEvent>,
    quantities: &[(String, ConditionalQuantity)],
) -> Result<()> {
    if name.is_empty() || name.contains(',') {
        bail!("invalid quantity name `{name}`");
    }
    if events.contains_key(name) || quantities.iter().any(|(n, _)| n == name) {
        bail!("duplicate quantity name `{name}`");
    }
    Ok(())
}

/// Resolves the prevision of the sub-compound over `names`: the compound's
/// own prevision map first, then the assessment of a single member or of
/// another compound of the same kind over the same members.
fn sub_prevision(
    spec: &CompoundSpec,
    names: &[&str],
    compounds: &[CompoundSpec],
    assessment: &BTreeMap<String, Rational>,
) -> Result<Option<Rational>> {
    if let Some(v) = spec.previsions.get(&names.join(",")) {
        return v.parse().map(Some);
    }
    if names.len() == spec.members.len() {
        return Ok(assessment.get(&spec.name).cloned());
    }
    if let [single] = names {
        return Ok(assessment.get(*single).cloned());
    }
    let mut wanted: Vec<&str> = names.to_vec();
    wanted.sort_unstable();
    Ok(compounds
        .iter()
        .filter(|c| c.kind == spec.kind)
        .find(|c| {
            let mut m: Vec<&str> = c.members.iter().map(String::as_str).collect();
            m.sort_unstable();
            m == wanted
        })
        .and_then(|c| assessment.get(&c.name).cloned()))
}

fn build_compound(
    spec: &CompoundSpec,
    compounds: &[CompoundSpec],
    events: &BTreeMap<String, ConditionalEvent>,
    assessment: &BTreeMap<String, Rational>,
) -> Result<ConditionalQuantity> {
    if spec.members.is_empty() {
        bail!("no members");
    }
    let family = spec
        .members
        .iter()
        .map(|m| {
            events
                .get(m)
                .cloned()
                .ok_or_else(|| anyhow!("member `{m}` is not a declared conditional"))
        })
        .collect::<Result<Vec<_>>>()?;
    for key in spec.previsions.keys() {
        if key.split(',').any(|m| !spec.members.iter().any(|x| x == m)) {
            bail!("prevision key `{key}` names a non-member");
        }
    }
    let n = family.len();
    let mut map = CompoundPrevisionMap::new();
    for subset in nonempty_subsets(n) {
        let names: Vec<&str> = subset.iter().map(|&i| spec.members[i].as_str()).collect();
        match sub_prevision(spec, &names, compounds, assessment)? {
            Some(v) => map.insert(&subset, v),
            None if subset.len() < n => bail!("missing prevision for `{}`", names.join(",")),
            None => {}
        }
    }
    let quantity = match spec.kind {
        CompoundKind::Conjunction => make_conjunction(&family, &map)?,
        CompoundKind::Disjunction => make_disjunction(&family, &map.negation_map_from_disjunction())?,
    };
    Ok(quantity.with_label(spec.name.clone()))
}
