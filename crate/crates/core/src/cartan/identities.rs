//! Both sides of the three iterated-contraction identities, for use as a
//! reusable test battery. Each function returns `(lhs, rhs)`.

use super::{iterated_contract, DifferentialForm, VectorField};
use crate::symkernel::Polynomial;

type Term = Option<DifferentialForm>;

/// `None` stands for a form of negative degree, which is zero.
fn ic(u: &[VectorField], m: usize, r: usize, a: &Term) -> Term {
    let a = a.as_ref()?;
    if m + 1 > r + a.degree() {
        return None;
    }
    Some(iterated_contract(u, m, r, a).expect("vector fields share the form's chart"))
}

fn contract(a: &Term, x: &VectorField) -> Term {
    a.as_ref().filter(|a| a.degree() > 0).map(|a| a.contract(x))
}

fn sign(negative: bool, f: Term) -> Term {
    if negative {
        f.map(|f| f.neg())
    } else {
        f
    }
}

fn total(alpha: &DifferentialForm, degree: isize, terms: impl IntoIterator<Item = Term>) -> DifferentialForm {
    let zero = DifferentialForm::zero(alpha.chart(), degree.max(0) as usize);
    if degree < 0 {
        return zero;
    }
    terms.into_iter().flatten().fold(zero, |acc, t| acc.add(&t))
}

/// `I_{m,1} dα` against
/// `Σ_l (−1)^{l+1} I_{m,l+1} L_{U_l} I_{l−1,1} α + (−1)^m d I_{m,1} α`.
pub fn cartan(u: &[VectorField], alpha: &DifferentialForm) -> (DifferentialForm, DifferentialForm) {
    let m = u.len();
    let a = Some(alpha.clone());
    let degree = alpha.degree() as isize + 1 - m as isize;
    let lhs = total(alpha, degree, [ic(u, m, 1, &Some(alpha.d()))]);
    let rhs = total(
        alpha,
        degree,
        (1..=m)
            .map(|l| {
                let inner = ic(u, l - 1, 1, &a).map(|f| f.lie_derivative(&u[l - 1]));
                sign(l % 2 == 0, ic(u, m, l + 1, &inner))
            })
            .chain([sign(m % 2 == 1, ic(u, m, 1, &a).map(|f| f.d()))]),
    );
    (lhs, rhs)
}

/// `L_X I_{m,1} α` against `Σ_l I_{m,l+1} i_{[X,U_l]} I_{l−1,1} α + I_{m,1} L_X α`.
pub fn lie_commutator(
    x: &VectorField,
    u: &[VectorField],
    alpha: &DifferentialForm,
) -> (DifferentialForm, DifferentialForm) {
    let m = u.len();
    let a = Some(alpha.clone());
    let degree = alpha.degree() as isize - m as isize;
    let lhs = total(alpha, degree, [ic(u, m, 1, &a).map(|f| f.lie_derivative(x))]);
    let rhs = total(
        alpha,
        degree,
        (1..=m)
            .map(|l| ic(u, m, l + 1, &contract(&ic(u, l - 1, 1, &a), &x.bracket(&u[l - 1]))))
            .chain([ic(u, m, 1, &Some(alpha.lie_derivative(x)))]),
    );
    (lhs, rhs)
}

/// `I_{m,1}(df ∧ α)` against
/// `Σ_l (−1)^{l+1} df(U_l) I_{m,l+1} I_{l−1,1} α + (−1)^m df ∧ I_{m,1} α`.
pub fn differential_wedge(
    u: &[VectorField],
    f: &Polynomial,
    alpha: &DifferentialForm,
) -> (DifferentialForm, DifferentialForm) {
    let m = u.len();
    let a = Some(alpha.clone());
    let df = DifferentialForm::function(f.clone()).d();
    let degree = alpha.degree() as isize + 1 - m as isize;
    let lhs = total(alpha, degree, [ic(u, m, 1, &Some(df.wedge(alpha)))]);
    let rhs = total(
        alpha,
        degree,
        (1..=m)
            .map(|l| {
                let inner = ic(u, m, l + 1, &ic(u, l - 1, 1, &a)).map(|g| g.scale(&u[l - 1].apply(f)));
                sign(l % 2 == 0, inner)
            })
            .chain([sign(m % 2 == 1, ic(u, m, 1, &a).map(|g| df.wedge(&g)))]),
    );
    (lhs, rhs)
}
