use std::fmt;

use crate::alt::AltTable;
use crate::symkernel::{Chart, Polynomial};

/// Condition names used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    AxiomAnchor,
    AxiomJacobi,
    Morphism,
    Im1,
    Im2,
    Im3,
    NuExtra1,
    NuExtra2,
    R1,
    R2,
    R3,
    Dh0,
    Dh1,
    Dh2,
    PsiDifferential,
    Isotropy,
    Rank,
    Closure,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::AxiomAnchor => "AXIOM_ANCHOR",
            Tag::AxiomJacobi => "AXIOM_JACOBI",
            Tag::Morphism => "MORPHISM",
            Tag::Im1 => "IM1",
            Tag::Im2 => "IM2",
            Tag::Im3 => "IM3",
            Tag::NuExtra1 => "NUEXTRA1",
            Tag::NuExtra2 => "NUEXTRA2",
            Tag::R1 => "R1",
            Tag::R2 => "R2",
            Tag::R3 => "R3",
            Tag::Dh0 => "DH0",
            Tag::Dh1 => "DH1",
            Tag::Dh2 => "DH2",
            Tag::PsiDifferential => "PSI_D",
            Tag::Isotropy => "ISOTROPY",
            Tag::Rank => "RANK",
            Tag::Closure => "CLOSURE",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One failed instance of a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub tag: Tag,
    /// Zero-based frame (or coordinate, or sample) indices.
    pub witness: Vec<usize>,
    pub note: Option<String>,
    /// Nonzero residual components, labelled by basis element.
    pub residuals: Vec<(String, Polynomial)>,
}

impl Violation {
    pub fn new(tag: Tag, witness: Vec<usize>) -> Self {
        Self {
            tag,
            witness,
            note: None,
            residuals: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_residual(mut self, label: impl Into<String>, p: Polynomial) -> Self {
        debug_assert!(!p.is_zero());
        self.residuals.push((label.into(), p));
        self
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.witness.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{} ({})", self.tag, w.join(","))?;
        for (label, p) in &self.residuals {
            write!(f, " [{label}: {p}]")?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(violations: Vec<Violation>) -> Self {
        Self { violations }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
    }

    pub fn with_tag(&self, tag: Tag) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.tag == tag)
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.with_tag(tag).next().is_some()
    }

    pub fn into_violations(self) -> Vec<Violation> {
        self.violations
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        writeln!(f, "fail")?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Labels every nonzero coefficient of a table as `name1^name2…`.
pub(crate) fn labelled(table: &AltTable, names: &[String]) -> Vec<(String, Polynomial)> {
    table
        .coeffs()
        .iter()
        .map(|(idx, p)| {
            let label = if idx.is_empty() {
                "1".to_string()
            } else {
                idx.iter()
                    .map(|&i| names[i].as_str())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            (label, p.clone())
        })
        .collect()
}

/// Names `dx1`, `dx2`, … of a chart's coordinate differentials.
pub(crate) fn differential_names(chart: &Chart) -> Vec<String> {
    chart.names().map(|n| format!("d{n}")).collect()
}
