use std::fmt;

use crate::alt::AltTable;
use crate::symkernel::{Chart, Polynomial, Rational};

use super::gerstenhaber::{self, CoordinateFrame};
use super::{DifferentialForm, VectorField};

/// A multivector field `Σ_I P^I ∂_I` on a chart.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector(pub(crate) AltTable);

impl Multivector {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self(AltTable::zero(chart, chart.dim(), degree))
    }

    pub fn function(f: Polynomial) -> Self {
        Self(AltTable::scalar(f.chart().dim(), f))
    }

    pub fn partial(chart: &Chart, i: usize) -> Self {
        Self::term(chart, &[i], Polynomial::one(chart))
    }

    /// `f ∂_{i1} ∧ … ∧ ∂_{ik}` in any index order.
    pub fn term(chart: &Chart, indices: &[usize], f: Polynomial) -> Self {
        Self(AltTable::monomial(chart, chart.dim(), indices, f))
    }

    pub fn from_table(table: AltTable) -> Self {
        assert_eq!(table.dim(), table.chart().dim(), "multivector alphabet must be the chart");
        Self(table)
    }

    pub fn table(&self) -> &AltTable {
        &self.0
    }

    pub fn chart(&self) -> &Chart {
        self.0.chart()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.0.coeffs().iter()
    }

    pub fn coeff(&self, sorted: &[usize]) -> Polynomial {
        self.0.get(sorted)
    }

    pub fn component(&self, indices: &[usize]) -> Polynomial {
        self.0.component(indices)
    }

    pub fn add_term(&mut self, indices: &[usize], f: Polynomial) {
        self.0.add_term(indices, f);
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.neg())
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        Self(self.0.scale(f))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self(self.0.scale_rational(r))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        Self(self.0.wedge(&other.0))
    }

    /// Schouten–Nijenhuis bracket.
    pub fn schouten(&self, other: &Self) -> Self {
        let frame = CoordinateFrame::new(self.chart());
        Self(gerstenhaber::bracket(&frame, &self.0, &other.0))
    }

    pub fn lie_derivative(&self, x: &VectorField) -> Self {
        x.to_multivector().schouten(self)
    }

    /// `i_α P`, contracting the first slot: `(i_α P)^{J} = Σ_i α_i P^{iJ}`.
    pub fn contract_covector(&self, alpha: &DifferentialForm) -> Self {
        assert_eq!(alpha.degree(), 1, "contraction by a 1-form");
        assert!(self.degree() >= 1, "contraction of a function");
        let mut out = Self::zero(self.chart(), self.degree() - 1);
        for (idx, f) in self.terms() {
            for (s, &i) in idx.iter().enumerate() {
                let a = alpha.coeff(&[i]);
                if a.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let c = &a * f;
                out.add_term(&rest, if s % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    /// `P(α_1, …, α_k)`, contracting `α_1` first.
    pub fn evaluate(&self, covectors: &[DifferentialForm]) -> Polynomial {
        assert_eq!(covectors.len(), self.degree(), "one covector per slot");
        let mut acc = self.clone();
        for a in covectors {
            acc = acc.contract_covector(a);
        }
        acc.0.get(&[])
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "({c})")?;
            } else {
                let basis: Vec<String> = idx
                    .iter()
                    .map(|&i| format!("d/d{}", self.chart().coord(i).name))
                    .collect();
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector{}[{}]({})", self.degree(), self.chart().name(), self)
    }
}
