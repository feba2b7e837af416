use std::fmt;

use crate::alt::AltTable;
use crate::symkernel::{Chart, Polynomial};

use super::Multivector;

/// A vector field `Σ X^j ∂_j`, stored densely.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<Polynomial>) -> Self {
        assert_eq!(components.len(), chart.dim(), "one component per coordinate");
        assert!(components.iter().all(|c| c.chart() == chart), "component chart");
        Self {
            chart: chart.clone(),
            components,
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::new(chart, vec![Polynomial::zero(chart); chart.dim()])
    }

    /// The coordinate field `∂_i`.
    pub fn partial(chart: &Chart, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.components[i] = Polynomial::one(chart);
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.chart);
        for (j, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &f.diff(j));
            }
        }
        acc
    }

    /// Jacobi–Lie bracket.
    pub fn bracket(&self, other: &Self) -> Self {
        let comps = (0..self.chart.dim())
            .map(|j| self.apply(&other.components[j]) - other.apply(&self.components[j]))
            .collect();
        Self::new(&self.chart, comps)
    }

    pub fn add(&self, other: &Self) -> Self {
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(&self.chart, comps)
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        Self::new(&self.chart, self.components.iter().map(|c| c * f).collect())
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut t = AltTable::zero(&self.chart, self.chart.dim(), 1);
        for (j, c) in self.components.iter().enumerate() {
            t.add_term(&[j], c.clone());
        }
        Multivector::from_table(t)
    }

    /// Panics unless `m` has degree 1.
    pub fn from_multivector(m: &Multivector) -> Self {
        assert_eq!(m.degree(), 1, "not a vector field");
        let chart = m.chart().clone();
        let comps = (0..chart.dim()).map(|j| m.coeff(&[j])).collect();
        Self::new(&chart, comps)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_multivector())
    }
}
