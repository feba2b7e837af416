//! Lie algebroids in a local frame, their sections, prolongations and the
//! morphism-to-ℝ check.

mod axioms;
mod morphism;
mod prolong;
mod section;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use axioms::check_axioms;
pub use morphism::{check_morphism_to_line, morphism_residual, FiberFunctional};
pub use prolong::{
    cotangent_prolongation, cotangent_prolongation_unchecked, tangent_prolongation,
    tangent_prolongation_unchecked, ProlongationKind,
};
pub use section::{anchor_apply, bracket_sections, Section};

pub use crate::report::{CheckReport, Tag, Violation};

use crate::cartan::gerstenhaber::FrameStructure;
use crate::cartan::VectorField;
use crate::error::{Error, Result};
use crate::symkernel::{Chart, Polynomial};

struct Data {
    name: String,
    chart: Chart,
    frame: Vec<String>,
    anchor: Vec<Vec<Polynomial>>,
    /// Canonical structure functions, keyed by `a < b`, each a dense
    /// vector over `c`.
    structure: BTreeMap<(usize, usize), Vec<Polynomial>>,
    checked: bool,
    prolongation: Option<ProlongationKind>,
}

/// A Lie algebroid (or, when built unchecked, a pre-algebroid) given by
/// anchor components `ρ_a^j` and structure functions `C_ab^c` in a frame.
#[derive(Clone)]
pub struct LieAlgebroid(Arc<Data>);

/// Sparse input entry `C_ab^c = value` with zero-based indices.
pub type StructureEntry = (usize, usize, usize, Polynomial);

impl LieAlgebroid {
    /// Builds the algebroid and fails with [`Error::AxiomFailure`] unless
    /// [`check_axioms`] passes.
    pub fn new(
        name: impl Into<String>,
        chart: &Chart,
        frame: Vec<String>,
        anchor: Vec<Vec<Polynomial>>,
        structure: impl IntoIterator<Item = StructureEntry>,
    ) -> Result<Self> {
        let a = Self::new_unchecked(name, chart, frame, anchor, structure)?;
        if !check_axioms(&a).passed() {
            return Err(Error::AxiomFailure(a.name().to_string()));
        }
        Ok(a.mark_checked())
    }

    /// Validates shapes only; axioms are not verified.
    pub fn new_unchecked(
        name: impl Into<String>,
        chart: &Chart,
        frame: Vec<String>,
        anchor: Vec<Vec<Polynomial>>,
        structure: impl IntoIterator<Item = StructureEntry>,
    ) -> Result<Self> {
        let r = frame.len();
        let n = chart.dim();
        if anchor.len() != r {
            return Err(Error::Arity {
                expected: r,
                found: anchor.len(),
            });
        }
        for row in &anchor {
            if row.len() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.chart() != chart) {
                return Err(Error::ChartMismatch {
                    left: chart.name().to_string(),
                    right: p.chart().name().to_string(),
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for f in &frame {
            if !seen.insert(f.as_str()) {
                return Err(Error::Precondition(format!("duplicate frame name `{f}`")));
            }
        }
        let mut table: BTreeMap<(usize, usize), Vec<Polynomial>> = BTreeMap::new();
        for (a, b, c, v) in structure {
            if a >= r || b >= r || c >= r {
                return Err(Error::Precondition(format!(
                    "structure index ({}, {}, {}) out of range 1..={r}",
                    a + 1,
                    b + 1,
                    c + 1
                )));
            }
            if v.chart() != chart {
                return Err(Error::ChartMismatch {
                    left: chart.name().to_string(),
                    right: v.chart().name().to_string(),
                });
            }
            if a == b {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::Precondition(format!(
                    "structure function C_{{{0},{0}}}^{1} must vanish",
                    a + 1,
                    c + 1
                )));
            }
            let (key, v) = if a < b { ((a, b), v) } else { ((b, a), -v) };
            let row = table
                .entry(key)
                .or_insert_with(|| vec![Polynomial::zero(chart); r]);
            row[c] += &v;
        }
        table.retain(|_, row| row.iter().any(|p| !p.is_zero()));
        Ok(Self(Arc::new(Data {
            name: name.into(),
            chart: chart.clone(),
            frame,
            anchor,
            structure: table,
            checked: false,
            prolongation: None,
        })))
    }

    pub(crate) fn mark_checked(self) -> Self {
        self.rebuild(|d| d.checked = true)
    }

    pub(crate) fn with_prolongation(self, kind: ProlongationKind) -> Self {
        self.rebuild(|d| d.prolongation = Some(kind))
    }

    fn rebuild(self, f: impl FnOnce(&mut Data)) -> Self {
        let mut data = match Arc::try_unwrap(self.0) {
            Ok(d) => d,
            Err(shared) => Data {
                name: shared.name.clone(),
                chart: shared.chart.clone(),
                frame: shared.frame.clone(),
                anchor: shared.anchor.clone(),
                structure: shared.structure.clone(),
                checked: shared.checked,
                prolongation: shared.prolongation.clone(),
            },
        };
        f(&mut data);
        Self(Arc::new(data))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn base_chart(&self) -> &Chart {
        &self.0.chart
    }

    pub fn rank(&self) -> usize {
        self.0.frame.len()
    }

    pub fn base_dim(&self) -> usize {
        self.0.chart.dim()
    }

    pub fn frame_names(&self) -> &[String] {
        &self.0.frame
    }

    pub fn frame_index(&self, name: &str) -> Option<usize> {
        self.0.frame.iter().position(|f| f == name)
    }

    /// Whether the axioms were verified (or inherited from a verified input).
    pub fn is_checked(&self) -> bool {
        self.0.checked
    }

    /// How this algebroid was built from another, if it is a prolongation.
    pub fn prolongation(&self) -> Option<&ProlongationKind> {
        self.0.prolongation.as_ref()
    }

    /// `ρ_a^j`.
    pub fn anchor(&self, a: usize, j: usize) -> &Polynomial {
        &self.0.anchor[a][j]
    }

    pub fn anchor_matrix(&self) -> &[Vec<Polynomial>] {
        &self.0.anchor
    }

    /// `ρ(e_a)` as a vector field.
    pub fn anchor_field(&self, a: usize) -> VectorField {
        VectorField::new(&self.0.chart, self.0.anchor[a].clone())
    }

    /// `C_ab^c` for any `a`, `b`.
    pub fn structure(&self, a: usize, b: usize, c: usize) -> Polynomial {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => Polynomial::zero(&self.0.chart),
            Less => self.0.structure.get(&(a, b)).map_or_else(
                || Polynomial::zero(&self.0.chart),
                |row| row[c].clone(),
            ),
            Greater => -self.structure(b, a, c),
        }
    }

    /// Canonical nonzero structure entries `(a, b, c, C_ab^c)` with `a < b`.
    pub fn structure_entries(&self) -> Vec<StructureEntry> {
        let mut out = Vec::new();
        for (&(a, b), row) in &self.0.structure {
            for (c, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    out.push((a, b, c, p.clone()));
                }
            }
        }
        out
    }

    /// `ρ(e_a)(f)`.
    pub fn anchor_derivative(&self, a: usize, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.0.chart);
        for (j, r) in self.0.anchor[a].iter().enumerate() {
            if !r.is_zero() {
                acc += &(r * &f.diff(j));
            }
        }
        acc
    }

    pub(crate) fn same(&self, other: &Self) -> bool {
        self == other
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::AlgebroidMismatch)
        }
    }
}

impl PartialEq for LieAlgebroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.chart == other.0.chart
                && self.0.frame == other.0.frame
                && self.0.anchor == other.0.anchor
                && self.0.structure == other.0.structure)
    }
}

impl Eq for LieAlgebroid {}

impl FrameStructure for LieAlgebroid {
    fn chart(&self) -> &Chart {
        self.base_chart()
    }

    fn rank(&self) -> usize {
        LieAlgebroid::rank(self)
    }

    fn frame_bracket(&self, a: usize, b: usize) -> Vec<(usize, Polynomial)> {
        use std::cmp::Ordering::*;
        let (key, negate) = match a.cmp(&b) {
            Equal => return Vec::new(),
            Less => ((a, b), false),
            Greater => ((b, a), true),
        };
        match self.0.structure.get(&key) {
            None => Vec::new(),
            Some(row) => row
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(c, p)| (c, if negate { -p.clone() } else { p.clone() }))
                .collect(),
        }
    }

    fn anchor_derivative(&self, a: usize, f: &Polynomial) -> Polynomial {
        LieAlgebroid::anchor_derivative(self, a, f)
    }
}

impl fmt::Debug for LieAlgebroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "LieAlgebroid `{}` over {:?}, frame {:?}{}",
            self.name(),
            self.0.chart.names().collect::<Vec<_>>(),
            self.0.frame,
            if self.is_checked() { "" } else { " (unchecked)" }
        )?;
        for (a, row) in self.0.anchor.iter().enumerate() {
            let v = VectorField::new(&self.0.chart, row.clone()).to_multivector();
            writeln!(f, "  rho({}) = {}", self.0.frame[a], v)?;
        }
        for (a, b, c, p) in self.structure_entries() {
            writeln!(
                f,
                "  C[{},{}]^{} = {}",
                self.0.frame[a], self.0.frame[b], self.0.frame[c], p
            )?;
        }
        Ok(())
    }
}
