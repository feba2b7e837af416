use std::collections::BTreeMap;

use super::{CheckReport, LieAlgebroid, Section, Tag, Violation};
use crate::alt::increasing_tuples;
use crate::error::{Error, Result};
use crate::par;
use crate::symkernel::Polynomial;

/// A fiberwise-linear function on an algebroid, given by its values on the
/// frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberFunctional {
    algebroid: LieAlgebroid,
    values: Vec<Polynomial>,
}

impl FiberFunctional {
    /// From values keyed by frame name; every frame section needs a value.
    pub fn new(
        a: &LieAlgebroid,
        values: impl IntoIterator<Item = (String, Polynomial)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<String, Polynomial> = BTreeMap::new();
        for (k, v) in values {
            if a.frame_index(&k).is_none() {
                return Err(Error::Precondition(format!("unknown frame section `{k}`")));
            }
            map.insert(k, v);
        }
        let values = a
            .frame_names()
            .iter()
            .map(|n| {
                map.remove(n)
                    .ok_or_else(|| Error::IncompleteFunctional(n.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(a, values)
    }

    /// From values in frame order.
    pub fn from_values(a: &LieAlgebroid, values: Vec<Polynomial>) -> Result<Self> {
        if values.len() != a.rank() {
            return Err(Error::Arity {
                expected: a.rank(),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.chart() != a.base_chart()) {
            return Err(Error::ChartMismatch {
                left: a.base_chart().name().to_string(),
                right: v.chart().name().to_string(),
            });
        }
        Ok(Self {
            algebroid: a.clone(),
            values,
        })
    }

    pub fn zero(a: &LieAlgebroid) -> Self {
        Self {
            algebroid: a.clone(),
            values: vec![Polynomial::zero(a.base_chart()); a.rank()],
        }
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.algebroid
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value(&self, a: usize) -> &Polynomial {
        &self.values[a]
    }

    pub fn value_by_name(&self, name: &str) -> Option<&Polynomial> {
        self.algebroid.frame_index(name).map(|i| &self.values[i])
    }

    /// `F(u) = Σ u^a F(e_a)`.
    pub fn apply(&self, u: &Section) -> Polynomial {
        let mut acc = Polynomial::zero(self.algebroid.base_chart());
        for (a, c) in u.components().iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &self.values[a]);
            }
        }
        acc
    }
}

/// `F([u, v]) − ρ(u)F(v) + ρ(v)F(u)` for arbitrary degree-1 sections.
pub fn morphism_residual(
    a: &LieAlgebroid,
    f: &FiberFunctional,
    u: &Section,
    v: &Section,
) -> Result<Polynomial> {
    a.ensure_same(f.algebroid())?;
    let br = super::bracket_sections(a, u, v)?;
    let ru = super::anchor_apply(a, u)?;
    let rv = super::anchor_apply(a, v)?;
    Ok(f.apply(&br) - ru.apply(&f.apply(v)) + rv.apply(&f.apply(u)))
}

/// Checks that `F` is a Lie algebroid morphism to `ℝ` on every pair of frame
/// sections.
pub fn check_morphism_to_line(a: &LieAlgebroid, f: &FiberFunctional) -> Result<CheckReport> {
    a.ensure_same(f.algebroid())?;
    let pairs = increasing_tuples(a.rank(), 2);
    let violations = par::flat_map(&pairs, |uv| {
        let (u, v) = (uv[0], uv[1]);
        let mut res = a.anchor_derivative(v, f.value(u)) - a.anchor_derivative(u, f.value(v));
        for c in 0..a.rank() {
            let s = a.structure(u, v, c);
            if !s.is_zero() && !f.value(c).is_zero() {
                res += &(&s * f.value(c));
            }
        }
        if res.is_zero() {
            Vec::new()
        } else {
            vec![Violation::new(Tag::Morphism, vec![u, v]).with_residual("value", res)]
        }
    });
    Ok(CheckReport::new(violations))
}
