//! The JSON problem document and its translation into library values.

use std::collections::BTreeMap;

use imcalc::algebroid::{LieAlgebroid, Section};
use imcalc::cartan::DifferentialForm;
use imcalc::imforms::IMForm;
use imcalc::linforms::{is_linear, BundleForms, TotalChart};
use imcalc::multivec::LinearMultivector;
use imcalc::symkernel::parse_rational;
use imcalc::{parse_poly, Chart, Rational};
use serde::Deserialize;

use crate::args::Mode;
use crate::error::{json_offset, CliError};

/// Basis key (`"dx1^dx2"`, `"e1^e2"`, `"1"`) to coefficient expression.
pub type Keyed = BTreeMap<String, String>;

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub base: Vec<String>,
    pub rank: usize,
    #[serde(default)]
    pub frame: Option<Vec<String>>,
    pub anchor: Vec<Vec<String>>,
    #[serde(default)]
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub candidate: Option<CandidateDocument>,
    #[serde(default)]
    pub options: OptionsDocument,
}

#[derive(Deserialize, Debug)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CandidateDocument {
    ImForm { k: usize, mu: Vec<Keyed>, nu: Vec<Keyed> },
    Multivector { k: usize, fiber: Vec<Keyed>, mixed: Vec<Keyed> },
    Weil { k: usize, form: Keyed },
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct OptionsDocument {
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub oracle: Option<bool>,
    #[serde(default)]
    pub samples: Option<Vec<Vec<Number>>>,
}

/// A rational given either as a JSON integer or as a string like `"-3/4"`.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

pub enum Candidate {
    ImForm(IMForm),
    Multivector(LinearMultivector),
    Weil(DifferentialForm),
}

impl Candidate {
    pub fn mode(&self) -> Mode {
        match self {
            Candidate::ImForm(_) => Mode::ImForm,
            Candidate::Multivector(_) => Mode::Multivector,
            Candidate::Weil(_) => Mode::Weil,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Candidate::ImForm(im) => im.k(),
            Candidate::Multivector(p) => p.k(),
            Candidate::Weil(l) => l.degree(),
        }
    }
}

pub struct Problem {
    pub algebroid: LieAlgebroid,
    pub candidate: Option<Candidate>,
    pub options: OptionsDocument,
}

pub fn parse_document(text: &str) -> Result<ProblemDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        offset: json_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn parse_samples(points: &[Vec<Number>], dim: usize, field: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    points
        .iter()
        .enumerate()
        .map(|(s, point)| {
            if point.len() != dim {
                return Err(CliError::validation(
                    format!("{field}[{s}]"),
                    format!("expected {dim} coordinates, found {}", point.len()),
                ));
            }
            point
                .iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Number::Int(n) => Ok(Rational::from_integer((*n).into())),
                    Number::Text(t) => parse_rational(t).map_err(|e| CliError::at(format!("{field}[{s}][{i}]"), e)),
                })
                .collect()
        })
        .collect()
}

impl ProblemDocument {
    pub fn build(self) -> Result<Problem, CliError> {
        let chart = Chart::base("M", &self.base).map_err(|e| CliError::at("base", e))?;
        let r = self.rank;
        let frame = match self.frame {
            Some(f) if f.len() != r => {
                return Err(CliError::validation("frame", format!("{} names for rank {r}", f.len())));
            }
            Some(f) => f,
            None => (1..=r).map(|i| format!("e{i}")).collect(),
        };
        if self.anchor.len() != r {
            return Err(CliError::validation("anchor", format!("{} rows for rank {r}", self.anchor.len())));
        }
        let mut anchor = Vec::with_capacity(r);
        for (a, row) in self.anchor.iter().enumerate() {
            if row.len() != chart.dim() {
                return Err(CliError::validation(
                    format!("anchor[{a}]"),
                    format!("{} entries for {} base coordinates", row.len(), chart.dim()),
                ));
            }
            let row = row
                .iter()
                .enumerate()
                .map(|(j, s)| parse_poly(s, &chart).map_err(|e| CliError::at(format!("anchor[{a}][{j}]"), e)))
                .collect::<Result<Vec<_>, _>>()?;
            anchor.push(row);
        }
        let mut entries = Vec::with_capacity(self.structure.len());
        for (s, (a, b, c, expr)) in self.structure.iter().enumerate() {
            if [*a, *b, *c].iter().any(|&i| i == 0 || i > r) {
                return Err(CliError::validation(
                    format!("structure[{s}]"),
                    format!("indices ({a}, {b}, {c}) outside 1..={r}"),
                ));
            }
            let v = parse_poly(expr, &chart).map_err(|e| CliError::at(format!("structure[{s}][3]"), e))?;
            entries.push((a - 1, b - 1, c - 1, v));
        }
        let name = self.name.unwrap_or_else(|| "input".to_string());
        let algebroid = match LieAlgebroid::new(&name, &chart, frame.clone(), anchor.clone(), entries.clone()) {
            Ok(a) => a,
            Err(imcalc::Error::AxiomFailure(_)) => LieAlgebroid::new_unchecked(name, &chart, frame, anchor, entries)
                .map_err(|e| CliError::at("structure", e))?,
            Err(e) => return Err(CliError::at("structure", e)),
        };
        let candidate = self.candidate.map(|c| c.build(&algebroid)).transpose()?;
        Ok(Problem {
            algebroid,
            candidate,
            options: self.options,
        })
    }
}

fn expect_len<T>(items: &[T], len: usize, field: &str) -> Result<(), CliError> {
    if items.len() != len {
        return Err(CliError::validation(field, format!("expected {len} entries, found {}", items.len())));
    }
    Ok(())
}

fn forms(a: &LieAlgebroid, items: &[Keyed], degree: usize, field: &str) -> Result<Vec<DifferentialForm>, CliError> {
    expect_len(items, a.rank(), field)?;
    items
        .iter()
        .enumerate()
        .map(|(i, m)| {
            DifferentialForm::from_keyed(a.base_chart(), degree, m).map_err(|e| CliError::at(format!("{field}[{i}]"), e))
        })
        .collect()
}

fn tables(
    a: &LieAlgebroid,
    items: &[Keyed],
    len: usize,
    degree: usize,
    field: &str,
) -> Result<Vec<imcalc::alt::AltTable>, CliError> {
    expect_len(items, len, field)?;
    items
        .iter()
        .enumerate()
        .map(|(i, m)| {
            Section::from_keyed(a, degree, m)
                .map(|s| s.table().clone())
                .map_err(|e| CliError::at(format!("{field}[{i}]"), e))
        })
        .collect()
}

impl CandidateDocument {
    fn build(self, a: &LieAlgebroid) -> Result<Candidate, CliError> {
        match self {
            CandidateDocument::ImForm { k, mu, nu } => {
                if k == 0 {
                    return Err(CliError::validation("candidate.k", "IM forms need k ≥ 1"));
                }
                let mu = forms(a, &mu, k - 1, "candidate.mu")?;
                let nu = forms(a, &nu, k, "candidate.nu")?;
                let bundle = BundleForms::new(k, mu, nu).map_err(|e| CliError::at("candidate", e))?;
                Ok(Candidate::ImForm(IMForm::new(a, bundle).map_err(|e| CliError::at("candidate", e))?))
            }
            CandidateDocument::Multivector { k, fiber, mixed } => {
                if k == 0 {
                    return Err(CliError::validation("candidate.k", "linear multivectors need k ≥ 1"));
                }
                let fiber = tables(a, &fiber, a.rank(), k, "candidate.fiber")?;
                let mixed = tables(a, &mixed, a.base_dim(), k - 1, "candidate.mixed")?;
                let p = LinearMultivector::new(&TotalChart::of(a), k, fiber, mixed)
                    .map_err(|e| CliError::at("candidate", e))?;
                Ok(Candidate::Multivector(p))
            }
            CandidateDocument::Weil { k, form } => {
                let total = TotalChart::of(a);
                let l = DifferentialForm::from_keyed(total.chart(), k, &form)
                    .map_err(|e| CliError::at("candidate.form", e))?;
                if k == 0 || !is_linear(&l, &total, k) {
                    return Err(CliError::validation("candidate.form", "not a linear form on the total space"));
                }
                Ok(Candidate::Weil(l))
            }
        }
    }
}
