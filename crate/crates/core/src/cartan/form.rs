use std::fmt;

use crate::alt::AltTable;
use crate::error::Result;
use crate::symkernel::{Chart, Polynomial, Rational};

use super::VectorField;

/// A differential k-form `Σ_I f_I dx^I` on a chart, stored over strictly
/// increasing coordinate-index tuples.
///
/// Arithmetic methods panic when the operands live on different charts;
/// the free functions in [`crate::cartan`] report that as an error instead.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm(pub(crate) AltTable);

impl DifferentialForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self(AltTable::zero(chart, chart.dim(), degree))
    }

    /// A 0-form.
    pub fn function(f: Polynomial) -> Self {
        Self(AltTable::scalar(f.chart().dim(), f))
    }

    /// The coordinate 1-form `dx^i`.
    pub fn dx(chart: &Chart, i: usize) -> Self {
        Self::term(chart, &[i], Polynomial::one(chart))
    }

    /// `f dx^{i1} ∧ … ∧ dx^{ik}` in any index order.
    pub fn term(chart: &Chart, indices: &[usize], f: Polynomial) -> Self {
        Self(AltTable::monomial(chart, chart.dim(), indices, f))
    }

    /// Builds a form from `(basis, coefficient)` pairs such as
    /// `("dx1^dx2", "x3")`; the basis `"1"` marks a 0-form.
    pub fn from_keyed<K: AsRef<str>, V: AsRef<str>>(
        chart: &Chart,
        degree: usize,
        entries: impl IntoIterator<Item = (K, V)>,
    ) -> Result<Self> {
        let mut out = Self::zero(chart, degree);
        for (key, value) in entries {
            let idx = parse_basis(key.as_ref(), chart, "d")?;
            if idx.len() != degree {
                return Err(crate::Error::Degree(format!(
                    "basis `{}` has degree {}, expected {degree}",
                    key.as_ref(),
                    idx.len()
                )));
            }
            out.add_term(&idx, crate::symkernel::parse_poly(value.as_ref(), chart)?);
        }
        Ok(out)
    }

    pub fn from_table(table: AltTable) -> Self {
        assert_eq!(table.dim(), table.chart().dim(), "form alphabet must be the chart");
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

    /// Coefficient on a strictly increasing tuple.
    pub fn coeff(&self, sorted: &[usize]) -> Polynomial {
        self.0.get(sorted)
    }

    /// Coefficient on any index tuple, with the permutation sign.
    pub fn component(&self, indices: &[usize]) -> Polynomial {
        self.0.component(indices)
    }

    /// The function a 0-form represents.
    pub fn as_function(&self) -> Polynomial {
        assert_eq!(self.degree(), 0, "not a 0-form");
        self.0.get(&[])
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

    pub fn d(&self) -> Self {
        let chart = self.chart().clone();
        let mut out = Self::zero(&chart, self.degree() + 1);
        for (idx, f) in self.terms() {
            for j in 0..chart.dim() {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.diff(j);
                if df.is_zero() {
                    continue;
                }
                let mut full = Vec::with_capacity(idx.len() + 1);
                full.push(j);
                full.extend_from_slice(idx);
                out.add_term(&full, df);
            }
        }
        out
    }

    /// Interior product `i_X`.
    pub fn contract(&self, x: &VectorField) -> Self {
        assert!(self.chart() == x.chart(), "contraction across charts");
        if self.degree() == 0 {
            return Self::zero(self.chart(), 0);
        }
        let mut out = Self::zero(self.chart(), self.degree() - 1);
        for (idx, f) in self.terms() {
            for (s, &i) in idx.iter().enumerate() {
                let xi = &x.components()[i];
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let c = xi * f;
                out.add_term(&rest, if s % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    /// Lie derivative by Cartan's formula `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &VectorField) -> Self {
        let a = self.d().contract(x);
        if self.degree() == 0 {
            return a;
        }
        a.add(&self.contract(x).d())
    }

    /// `α(X_1, …, X_k) = i_{X_k} … i_{X_1} α`.
    pub fn evaluate(&self, vectors: &[VectorField]) -> Polynomial {
        assert_eq!(vectors.len(), self.degree(), "one vector per slot");
        let mut acc = self.clone();
        for v in vectors {
            acc = acc.contract(v);
        }
        acc.as_function()
    }

    /// `α_p(v_1, …, v_k)` at a point, with vectors given by components.
    pub fn evaluate_at(&self, point: &[Rational], vectors: &[Vec<Rational>]) -> Rational {
        use num_traits::Zero;
        assert_eq!(vectors.len(), self.degree(), "one vector per slot");
        let mut acc = Rational::zero();
        for (idx, f) in self.terms() {
            let minor: crate::linalg::Matrix = vectors
                .iter()
                .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
                .collect();
            let det = crate::linalg::determinant(&minor);
            if !det.is_zero() {
                acc += f.eval_at(point) * det;
            }
        }
        acc
    }

    /// Moves the form to a chart containing all of its coordinates.
    pub fn embed(&self, target: &Chart) -> Result<Self> {
        if self.chart() == target {
            return Ok(self.clone());
        }
        let map = self.chart().embedding_into(target)?;
        Ok(Self(self.0.reindex(target, target.dim(), &map, |p| {
            p.embed_with(&map, target)
        })))
    }

    /// Moves the form to a sub-chart; fails if it involves a dropped
    /// coordinate.
    pub fn restrict(&self, target: &Chart) -> Result<Self> {
        if self.chart() == target {
            return Ok(self.clone());
        }
        let mut out = Self::zero(target, self.degree());
        for (idx, f) in self.terms() {
            let new_idx = idx
                .iter()
                .map(|&i| target.index_of(&self.chart().coord(i).name))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| {
                    crate::Error::NotRestrictable(self.chart().coord(idx[0]).name.clone())
                })?;
            out.add_term(&new_idx, f.restrict(target)?);
        }
        Ok(out)
    }

    /// Pullback along the polynomial map whose `i`-th component (on
    /// `source`) gives the `i`-th coordinate of this form's chart.
    pub fn pullback(&self, images: &[Polynomial], source: &Chart) -> Self {
        assert_eq!(images.len(), self.chart().dim(), "one image per coordinate");
        let differentials: Vec<Self> = images
            .iter()
            .map(|f| Self::function(f.clone()).d())
            .collect();
        let mut out = Self::zero(source, self.degree());
        for (idx, f) in self.terms() {
            let mut acc = Self::function(f.compose(images, source));
            for &i in idx {
                acc = acc.wedge(&differentials[i]);
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for DifferentialForm {
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
                    .map(|&i| format!("d{}", self.chart().coord(i).name))
                    .collect();
                write!(f, "({c})*{}", basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form{}[{}]({})", self.degree(), self.chart().name(), self)
    }
}

/// Coordinate indices of a `^`-separated basis such as `dx1^dx2`
/// (`prefix = "d"`); `"1"` is the empty product.
pub(crate) fn parse_basis(key: &str, chart: &Chart, prefix: &str) -> Result<Vec<usize>> {
    let key = key.trim();
    if key == "1" || key.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in key.split('^') {
        let part = part.trim();
        let name = part
            .strip_prefix(prefix)
            .ok_or_else(|| crate::Error::Syntax {
                offset: 0,
                message: format!("expected `{prefix}<coordinate>` in `{key}`"),
            })?;
        let i = chart.index_of(name)?;
        if out.contains(&i) {
            return Err(crate::Error::Degree(format!("repeated factor in `{key}`")));
        }
        out.push(i);
    }
    Ok(out)
}
