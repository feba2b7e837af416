use std::fmt;

use super::LieAlgebroid;
use crate::alt::AltTable;
use crate::cartan::gerstenhaber;
use crate::cartan::VectorField;
use crate::error::{Error, Result};
use crate::symkernel::{Polynomial, Rational};

/// An element of `Γ(∧^p A)`: polynomial coefficients on wedge products of
/// frame sections. Degree 1 gives ordinary sections, degree 0 functions.
#[derive(Clone, PartialEq, Eq)]
pub struct Section {
    algebroid: LieAlgebroid,
    table: AltTable,
}

impl Section {
    pub fn zero(a: &LieAlgebroid, degree: usize) -> Self {
        Self {
            algebroid: a.clone(),
            table: AltTable::zero(a.base_chart(), a.rank(), degree),
        }
    }

    pub fn function(a: &LieAlgebroid, f: Polynomial) -> Self {
        Self::from_table(a, AltTable::scalar(a.rank(), f))
    }

    /// `u = Σ u^a e_a`.
    pub fn new(a: &LieAlgebroid, components: Vec<Polynomial>) -> Self {
        assert_eq!(components.len(), a.rank(), "one component per frame section");
        let mut s = Self::zero(a, 1);
        for (i, c) in components.into_iter().enumerate() {
            s.table.add_term(&[i], c);
        }
        s
    }

    pub fn frame(a: &LieAlgebroid, index: usize) -> Self {
        Self::term(a, &[index], Polynomial::one(a.base_chart()))
    }

    /// `f e_{i1} ∧ … ∧ e_{ip}` in any index order.
    pub fn term(a: &LieAlgebroid, indices: &[usize], f: Polynomial) -> Self {
        Self::from_table(a, AltTable::monomial(a.base_chart(), a.rank(), indices, f))
    }

    /// Builds a section from `(basis, coefficient)` pairs such as
    /// `("e1^e2", "x3")`; the basis `"1"` marks a function.
    pub fn from_keyed<K: AsRef<str>, V: AsRef<str>>(
        a: &LieAlgebroid,
        degree: usize,
        entries: impl IntoIterator<Item = (K, V)>,
    ) -> Result<Self> {
        let mut out = Self::zero(a, degree);
        for (key, value) in entries {
            let key = key.as_ref().trim();
            let mut idx = Vec::new();
            if key != "1" && !key.is_empty() {
                for part in key.split('^').map(str::trim) {
                    let i = a
                        .frame_index(part)
                        .ok_or_else(|| Error::Precondition(format!("unknown frame section `{part}` in `{key}`")))?;
                    if idx.contains(&i) {
                        return Err(Error::Degree(format!("repeated factor in `{key}`")));
                    }
                    idx.push(i);
                }
            }
            if idx.len() != degree {
                return Err(Error::Degree(format!(
                    "basis `{key}` has degree {}, expected {degree}",
                    idx.len()
                )));
            }
            let f = crate::symkernel::parse_poly(value.as_ref(), a.base_chart())?;
            out.table.add_term(&idx, f);
        }
        Ok(out)
    }

    pub fn from_table(a: &LieAlgebroid, table: AltTable) -> Self {
        assert!(table.chart() == a.base_chart() && table.dim() == a.rank(), "section table shape");
        Self {
            algebroid: a.clone(),
            table,
        }
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.algebroid
    }

    pub fn table(&self) -> &AltTable {
        &self.table
    }

    pub fn degree(&self) -> usize {
        self.table.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_zero()
    }

    /// Coefficient on an increasing tuple of frame indices.
    pub fn coeff(&self, sorted: &[usize]) -> Polynomial {
        self.table.get(sorted)
    }

    /// Dense components of a degree-1 section.
    pub fn components(&self) -> Vec<Polynomial> {
        assert_eq!(self.degree(), 1, "components of a non-vector section");
        (0..self.algebroid.rank()).map(|a| self.table.get(&[a])).collect()
    }

    /// The function a degree-0 section represents.
    pub fn as_function(&self) -> Polynomial {
        assert_eq!(self.degree(), 0, "not a function");
        self.table.get(&[])
    }

    fn wrap(&self, table: AltTable) -> Self {
        Self {
            algebroid: self.algebroid.clone(),
            table,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.wrap(self.table.add(&other.table))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.wrap(self.table.sub(&other.table))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.table.neg())
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        self.wrap(self.table.scale(f))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.wrap(self.table.scale_rational(r))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.wrap(self.table.wedge(&other.table))
    }

    /// Gerstenhaber bracket on `Γ(∧•A)`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.wrap(gerstenhaber::bracket(&self.algebroid, &self.table, &other.table))
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.algebroid.frame_names();
        let mut first = true;
        for (idx, c) in self.table.coeffs() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if idx.is_empty() {
                write!(f, "({c})")?;
            } else {
                let basis: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Section{}[{}]({})", self.degree(), self.algebroid.name(), self)
    }
}

/// `[u, v]^c = u^a v^b C_ab^c + ρ(u)(v^c) − ρ(v)(u^c)`.
pub fn bracket_sections(a: &LieAlgebroid, u: &Section, v: &Section) -> Result<Section> {
    a.ensure_same(u.algebroid())?;
    a.ensure_same(v.algebroid())?;
    if u.degree() != 1 || v.degree() != 1 {
        return Err(Error::Degree(format!(
            "bracket of sections needs degree 1, got {} and {}",
            u.degree(),
            v.degree()
        )));
    }
    Ok(u.bracket(v))
}

/// `ρ(u) = u^a ρ_a^j ∂_j`.
pub fn anchor_apply(a: &LieAlgebroid, u: &Section) -> Result<VectorField> {
    a.ensure_same(u.algebroid())?;
    if u.degree() != 1 {
        return Err(Error::Degree(format!("anchor of a degree-{} section", u.degree())));
    }
    let chart = a.base_chart();
    let mut comps = vec![Polynomial::zero(chart); a.base_dim()];
    for (i, ui) in u.components().iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, c) in comps.iter_mut().enumerate() {
            *c += &(ui * a.anchor(i, j));
        }
    }
    Ok(VectorField::new(chart, comps))
}
