//! Differential forms and multivector fields on a chart.

mod form;
pub mod gerstenhaber;
pub mod identities;
mod multivector;
mod vector;

pub use form::DifferentialForm;
pub use multivector::Multivector;
pub use vector::VectorField;

use crate::error::{Error, Result};
use crate::symkernel::Chart;

fn same_chart(a: &Chart, b: &Chart) -> Result<()> {
    a.ensure_same(b)
}

/// Objects that can be wedged and Lie-differentiated along vector fields.
pub trait Graded: Sized {
    fn chart(&self) -> &Chart;
    fn wedge_same(&self, other: &Self) -> Self;
    fn lie_derivative_same(&self, x: &VectorField) -> Self;
}

impl Graded for DifferentialForm {
    fn chart(&self) -> &Chart {
        DifferentialForm::chart(self)
    }
    fn wedge_same(&self, other: &Self) -> Self {
        self.wedge(other)
    }
    fn lie_derivative_same(&self, x: &VectorField) -> Self {
        self.lie_derivative(x)
    }
}

impl Graded for Multivector {
    fn chart(&self) -> &Chart {
        Multivector::chart(self)
    }
    fn wedge_same(&self, other: &Self) -> Self {
        self.wedge(other)
    }
    fn lie_derivative_same(&self, x: &VectorField) -> Self {
        self.lie_derivative(x)
    }
}

pub fn wedge<T: Graded>(a: &T, b: &T) -> Result<T> {
    same_chart(a.chart(), b.chart())?;
    Ok(a.wedge_same(b))
}

pub fn exterior_derivative(a: &DifferentialForm) -> DifferentialForm {
    a.d()
}

pub fn contract(x: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm> {
    same_chart(x.chart(), a.chart())?;
    Ok(a.contract(x))
}

/// `I^U_{m,r} = i_{U_m} ∘ … ∘ i_{U_r}` with 1-based indices; the identity
/// when `r > m`.
pub fn iterated_contract(
    u: &[VectorField],
    m: usize,
    r: usize,
    a: &DifferentialForm,
) -> Result<DifferentialForm> {
    if m > u.len() {
        return Err(Error::Arity {
            expected: m,
            found: u.len(),
        });
    }
    let mut acc = a.clone();
    for v in u.iter().take(m).skip(r.saturating_sub(1)) {
        same_chart(v.chart(), a.chart())?;
        if acc.degree() == 0 {
            return Ok(DifferentialForm::zero(a.chart(), 0));
        }
        acc = acc.contract(v);
    }
    Ok(acc)
}

pub fn lie_derivative<T: Graded>(x: &VectorField, a: &T) -> Result<T> {
    same_chart(x.chart(), a.chart())?;
    Ok(a.lie_derivative_same(x))
}

pub fn schouten(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    same_chart(p.chart(), q.chart())?;
    Ok(p.schouten(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_poly, Polynomial};

    fn chart(names: &[&str]) -> Chart {
        Chart::base("c", names).unwrap()
    }

    fn p(c: &Chart, s: &str) -> Polynomial {
        parse_poly(s, c).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let c = chart(&["x1", "x2"]);
        let w = DifferentialForm::dx(&c, 0).wedge(&DifferentialForm::dx(&c, 1));
        assert_eq!(w.coeff(&[0, 1]), Polynomial::one(&c));
        assert!(DifferentialForm::dx(&c, 0)
            .wedge(&DifferentialForm::dx(&c, 0))
            .is_zero());
        let a = DifferentialForm::term(&c, &[0], p(&c, "x2"));
        assert_eq!(
            a.wedge(&DifferentialForm::dx(&c, 1)),
            DifferentialForm::term(&c, &[0, 1], p(&c, "x2"))
        );
        let other = chart(&["y"]);
        assert!(wedge(&DifferentialForm::dx(&c, 0), &DifferentialForm::dx(&other, 0)).is_err());
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = chart(&["x1", "x2"]);
        let a = DifferentialForm::term(&c, &[1], p(&c, "x1"));
        assert_eq!(a.d(), DifferentialForm::term(&c, &[0, 1], Polynomial::one(&c)));
        let b = DifferentialForm::term(&c, &[0], p(&c, "x1^2*x2"));
        assert!(b.d().d().is_zero());

        let t = chart(&["x1", "x2", "p1", "p2"]);
        let theta = DifferentialForm::term(&t, &[0], p(&t, "p1"))
            .add(&DifferentialForm::term(&t, &[1], p(&t, "p2")));
        let omega = DifferentialForm::dx(&t, 0)
            .wedge(&DifferentialForm::dx(&t, 2))
            .add(&DifferentialForm::dx(&t, 1).wedge(&DifferentialForm::dx(&t, 3)));
        assert_eq!(theta.d().neg(), omega);
    }

    #[test]
    fn contraction_examples() {
        let c = chart(&["x1", "x2"]);
        let w = DifferentialForm::dx(&c, 0).wedge(&DifferentialForm::dx(&c, 1));
        let d1 = VectorField::partial(&c, 0);
        let d2 = VectorField::partial(&c, 1);
        assert_eq!(w.contract(&d1), DifferentialForm::dx(&c, 1));
        assert_eq!(w.contract(&d2), DifferentialForm::dx(&c, 0).neg());
        let u = vec![d1, d2];
        let full = iterated_contract(&u, 2, 1, &w).unwrap();
        assert_eq!(full, DifferentialForm::function(Polynomial::one(&c)));
        assert_eq!(iterated_contract(&u, 2, 3, &w).unwrap(), w);
        assert_eq!(iterated_contract(&u, 0, 1, &w).unwrap(), w);
    }

    #[test]
    fn lie_derivative_examples() {
        let c = chart(&["x1", "x2"]);
        let a = DifferentialForm::term(&c, &[1], p(&c, "x1"));
        let d1 = VectorField::partial(&c, 0);
        assert_eq!(a.lie_derivative(&d1), DifferentialForm::dx(&c, 1));
        let x = VectorField::new(&c, vec![p(&c, "x1"), Polynomial::zero(&c)]);
        assert_eq!(
            DifferentialForm::dx(&c, 0).lie_derivative(&x),
            DifferentialForm::dx(&c, 0)
        );
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket() {
        let c = chart(&["x1", "x2"]);
        let a = Multivector::partial(&c, 0);
        let b = Multivector::term(&c, &[1], p(&c, "x1"));
        assert_eq!(a.schouten(&b), Multivector::partial(&c, 1));
        let f = Multivector::function(p(&c, "x1^2*x2"));
        assert_eq!(
            b.schouten(&f),
            Multivector::function(p(&c, "x1^3"))
        );
        assert_eq!(f.schouten(&b), Multivector::function(p(&c, "-x1^3")));
    }

    /// Brute-force cyclic sum `Σ_cyc π^{il} ∂_l π^{jk}` over the triple (1,2,3).
    fn jacobiator(pi: &Multivector) -> Polynomial {
        let c = pi.chart();
        let comp = |i: usize, j: usize| pi.component(&[i, j]);
        let mut acc = Polynomial::zero(c);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            for l in 0..3 {
                acc += &(&comp(i, l) * &comp(j, k).diff(l));
            }
        }
        acc
    }

    fn lie_poisson(c: &Chart, a12: &str) -> Multivector {
        Multivector::term(c, &[0, 1], p(c, a12))
            .add(&Multivector::term(c, &[1, 2], p(c, "x1")))
            .add(&Multivector::term(c, &[2, 0], p(c, "x2")))
    }

    #[test]
    fn poisson_bivector_brackets() {
        let c = chart(&["x1", "x2", "x3"]);
        let pi = lie_poisson(&c, "x3");
        assert!(jacobiator(&pi).is_zero());
        assert!(pi.schouten(&pi).is_zero());

        // the squared coefficient still gives a Poisson bivector (its
        // associated vector field (x1, x2, x3^2) is curl-free)
        let squared = lie_poisson(&c, "x3^2");
        assert!(jacobiator(&squared).is_zero());
        assert!(squared.schouten(&squared).is_zero());

        let bad = lie_poisson(&c, "x1*x3");
        let jac = jacobiator(&bad);
        assert_eq!(jac, p(&c, "x2*x3"));
        let sq = bad.schouten(&bad);
        assert_eq!(sq.degree(), 3);
        assert_eq!(sq.coeff(&[0, 1, 2]), jac.scale_int(2));
    }
}
