//! The JSON interchange format for algebras. Indices are 1-based, rationals are strings.

use std::collections::BTreeSet;

use incidence::builtins::Builtin;
use incidence::charcalc::TorusAction;
use incidence::scalar::{parse_rat, rat_to_string};
use incidence::{Law, LawBasis, OperadType, QuadraticPresentation, Rat, Symmetry};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub symmetry: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub law: Vec<LawEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_presentation: Option<CustomPresentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<Vec<Vec<i64>>>,
}

/// `μ(e_j, e_k) ∋ c · e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// `F(ν)_a = Σ B[a][p][q] ν_p ν_q` over the free coordinates of the law basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomPresentation {
    pub target_dim: usize,
    pub entries: Vec<QuadEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadEntry {
    pub a: usize,
    pub p: usize,
    pub q: usize,
    pub c: String,
}

/// A validated input.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: Option<String>,
    pub kind: OperadType,
    pub law: Law<Rat>,
    pub presentation: QuadraticPresentation,
    pub torus: Option<TorusAction>,
    pub input: AlgebraInput,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn parse_symmetry(s: &str) -> Result<Symmetry, CliError> {
    match s {
        "none" => Ok(Symmetry::None),
        "symmetric" => Ok(Symmetry::Symmetric),
        "skew" => Ok(Symmetry::Skew),
        _ => Err(schema(format!("symmetry must be none, symmetric or skew, got {s:?}"))),
    }
}

fn rational(s: &str, at: &str) -> Result<Rat, CliError> {
    parse_rat(s).ok_or_else(|| schema(format!("{at}: {s:?} is not a rational p/q")))
}

fn index(x: usize, bound: usize, at: &str) -> Result<usize, CliError> {
    if x == 0 || x > bound {
        return Err(schema(format!("{at}: index {x} outside 1..={bound}")));
    }
    Ok(x - 1)
}

pub fn from_json(text: &str) -> Result<AlgebraInput, CliError> {
    serde_json::from_str(text).map_err(|e| schema(format!("invalid algebra JSON: {e}")))
}

impl AlgebraInput {
    pub fn validate(&self) -> Result<Algebra, CliError> {
        let m = self.dim;
        if m == 0 {
            return Err(schema("dim must be positive"));
        }
        let symmetry = parse_symmetry(&self.symmetry)?;
        let kind: OperadType = self.kind.parse().map_err(schema)?;
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.law.len());
        for (n, e) in self.law.iter().enumerate() {
            let at = format!("law[{n}]");
            let t = (index(e.i, m, &at)?, index(e.j, m, &at)?, index(e.k, m, &at)?);
            if !seen.insert(t) {
                return Err(schema(format!("{at}: duplicate entry ({}, {}, {})", e.i, e.j, e.k)));
            }
            entries.push((t.0, t.1, t.2, rational(&e.c, &at)?));
        }
        let law = Law::from_tensor(m, symmetry, entries)
            .map_err(|e| schema(format!("law entries disagree with symmetry {symmetry}: {e}")))?;
        let presentation = match (kind, &self.custom_presentation) {
            (OperadType::Custom, Some(cp)) => {
                let basis = LawBasis::new(m, symmetry);
                let n = basis.dim();
                let mut quad = Vec::with_capacity(cp.entries.len());
                for (idx, e) in cp.entries.iter().enumerate() {
                    let at = format!("custom_presentation.entries[{idx}]");
                    quad.push((
                        index(e.a, cp.target_dim, &at)?,
                        index(e.p, n, &at)?,
                        index(e.q, n, &at)?,
                        rational(&e.c, &at)?,
                    ));
                }
                QuadraticPresentation::custom(quad, n, cp.target_dim)
                    .and_then(|p| p.for_laws(basis))
                    .map_err(|e| schema(format!("custom_presentation: {e}")))?
            }
            (OperadType::Custom, None) => return Err(schema("type custom needs custom_presentation")),
            (_, Some(_)) => return Err(schema("custom_presentation is only allowed with type custom")),
            (kind, None) => {
                let expected = kind.law_symmetry().expect("builtin types fix a symmetry");
                if expected != symmetry {
                    return Err(schema(format!("type {kind} needs symmetry {expected}, got {symmetry}")));
                }
                QuadraticPresentation::builtin(kind, m).map_err(|e| schema(e.to_string()))?
            }
        };
        let torus = match &self.torus {
            None => None,
            Some(ws) => {
                if ws.len() != m {
                    return Err(schema(format!("torus lists {} weights for dimension {m}", ws.len())));
                }
                Some(TorusAction::new(ws.clone()).map_err(|e| schema(format!("torus: {e}")))?)
            }
        };
        Ok(Algebra {
            name: self.name.clone(),
            kind,
            law,
            presentation,
            torus,
            input: self.clone(),
        })
    }

    /// Every nonzero tensor entry, sorted by `(i, j, k)`.
    pub fn from_law(name: Option<String>, kind: OperadType, law: &Law<Rat>, torus: Option<&TorusAction>) -> Self {
        let mut entries: Vec<_> = law.entries().collect();
        entries.sort_by_key(|(t, _)| *t);
        AlgebraInput {
            name,
            dim: law.dim(),
            symmetry: law.symmetry().to_string(),
            kind: kind.to_string(),
            law: entries
                .into_iter()
                .map(|([i, j, k], c)| LawEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    c: rat_to_string(c),
                })
                .collect(),
            custom_presentation: None,
            torus: torus.map(|t| t.weights.clone()),
        }
    }

    pub fn from_builtin(b: &Builtin) -> Self {
        AlgebraInput::from_law(Some(b.name.clone()), b.kind, &b.law, b.torus.as_ref())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
