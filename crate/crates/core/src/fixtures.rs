//! Named example structures used throughout the tests, the acceptance
//! suite and the CLI corpus.

use crate::algebroid::{LieAlgebroid, Section, StructureEntry};
use crate::cartan::{DifferentialForm, Multivector};
use crate::imforms::{im_from_form, IMForm};
use crate::linforms::BundleForms;
use crate::multivec::{linear_from_derivation, Derivation, LinearMultivector};
use crate::error::Result;
use crate::symkernel::{parse_poly, Chart, Polynomial};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn chart(n: usize) -> Chart {
    if n == 0 {
        return Chart::point();
    }
    Chart::base(format!("R{n}"), &names("x", n)).expect("valid names")
}

fn p(c: &Chart, s: &str) -> Polynomial {
    parse_poly(s, c).expect("fixture expression")
}

/// so(3) structure constants `C_12^3 = C_23^1 = C_31^2 = 1` on `chart`.
fn so3_entries(c: &Chart) -> Vec<StructureEntry> {
    let one = Polynomial::one(c);
    vec![(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)]
}

/// F1: so(3) over a point.
pub fn so3() -> LieAlgebroid {
    let c = Chart::point();
    LieAlgebroid::new("so(3)", &c, names("e", 3), vec![vec![]; 3], so3_entries(&c))
        .expect("so(3) satisfies the axioms")
}

/// The tangent algebroid of `ℝⁿ` in the coordinate frame.
pub fn tangent(n: usize) -> LieAlgebroid {
    let c = chart(n);
    let anchor = (0..n)
        .map(|a| {
            (0..n)
                .map(|j| Polynomial::from_int(&c, i64::from(a == j)))
                .collect()
        })
        .collect();
    LieAlgebroid::new(format!("TR{n}"), &c, names("e", n), anchor, [])
        .expect("tangent algebroid satisfies the axioms")
}

/// F2: the tangent algebroid of ℝ².
pub fn tangent_r2() -> LieAlgebroid {
    tangent(2)
}

/// The bivector `a12 ∂1∧∂2 + x1 ∂2∧∂3 + x2 ∂3∧∂1` on ℝ³; `a12 = "x3"`
/// gives the linear Poisson structure dual to so(3).
pub fn lie_poisson_bivector(a12: &str) -> Multivector {
    let c = chart(3);
    Multivector::term(&c, &[0, 1], p(&c, a12))
        .add(&Multivector::term(&c, &[1, 2], p(&c, "x1")))
        .add(&Multivector::term(&c, &[2, 0], p(&c, "x2")))
}

/// The Koszul bracket of a bivector on `T*M` in the frame `e^i = dx^i`:
/// `ρ(e^i) = π^{ij} ∂_j`, `[e^i, e^j] = d(π^{ij})`. The result is a Lie
/// algebroid exactly when `π` is Poisson, so it is built unchecked.
pub fn koszul_unchecked(name: &str, pi: &Multivector) -> Result<LieAlgebroid> {
    let c = pi.chart().clone();
    let n = c.dim();
    let anchor = (0..n)
        .map(|i| (0..n).map(|j| pi.component(&[i, j])).collect())
        .collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let pij = pi.component(&[i, j]);
            for k in 0..n {
                entries.push((i, j, k, pij.diff(k)));
            }
        }
    }
    LieAlgebroid::new_unchecked(name, &c, names("e", n), anchor, entries)
}

/// F3: the Koszul algebroid of the so(3)* Lie–Poisson bivector.
pub fn koszul_so3_dual() -> LieAlgebroid {
    let pi = lie_poisson_bivector("x3");
    let a = koszul_unchecked("T*so(3)*", &pi).expect("well-formed");
    LieAlgebroid::new(
        a.name(),
        a.base_chart(),
        a.frame_names().to_vec(),
        a.anchor_matrix().to_vec(),
        a.structure_entries(),
    )
    .expect("Lie-Poisson structure is Poisson")
}

/// The trivial algebroid `T*ℝⁿ` with zero anchor and bracket.
pub fn trivial_cotangent(n: usize) -> LieAlgebroid {
    let c = chart(n);
    let anchor = vec![vec![Polynomial::zero(&c); n]; n];
    LieAlgebroid::new(format!("T*R{n}(trivial)"), &c, names("e", n), anchor, [])
        .expect("abelian algebroid satisfies the axioms")
}

/// F4: the trivial algebroid `T*ℝ²`.
pub fn trivial_cotangent_r2() -> LieAlgebroid {
    trivial_cotangent(2)
}

/// F5: a bracket over a point with `C_12^1 = C_23^2 = 1` and all else zero;
/// Jacobi fails on `(1,2,3)` in the direction of `e_1`.
pub fn broken_jacobi() -> LieAlgebroid {
    let c = Chart::point();
    let one = Polynomial::one(&c);
    LieAlgebroid::new_unchecked(
        "broken",
        &c,
        names("e", 3),
        vec![vec![]; 3],
        [(0, 1, 0, one.clone()), (1, 2, 1, one)],
    )
    .expect("well-formed")
}

/// F8: so(3) structure constants with the anchor of the bivector whose
/// `∂1∧∂2` coefficient is `x3²` instead of `x3`. Anchor and bracket no longer
/// match, so the axioms fail and `μ = id` is not IM.
pub fn perturbed_so3_dual() -> LieAlgebroid {
    let pi = lie_poisson_bivector("x3^2");
    let c = pi.chart().clone();
    let anchor = (0..3)
        .map(|i| (0..3).map(|j| pi.component(&[i, j])).collect())
        .collect();
    LieAlgebroid::new_unchecked("T*so(3)*(perturbed)", &c, names("e", 3), anchor, so3_entries(&c))
        .expect("well-formed")
}

/// Every axiom-passing algebroid fixture.
pub fn passing_algebroids() -> Vec<LieAlgebroid> {
    vec![so3(), tangent_r2(), koszul_so3_dual(), trivial_cotangent_r2()]
}

fn coordinate_coframe(a: &LieAlgebroid) -> Vec<DifferentialForm> {
    (0..a.rank()).map(|i| DifferentialForm::dx(a.base_chart(), i)).collect()
}

fn mu_identity(a: &LieAlgebroid) -> IMForm {
    let zero = vec![DifferentialForm::zero(a.base_chart(), 2); a.rank()];
    let forms = BundleForms::new(2, coordinate_coframe(a), zero).expect("consistent shapes");
    IMForm::new(a, forms).expect("consistent shapes")
}

/// The IM 2-form `μ(e^i) = dx^i` on F4 with a nonzero `ν`.
pub fn im_trivial_cotangent() -> IMForm {
    let a = trivial_cotangent_r2();
    let c = a.base_chart().clone();
    let nu = vec![
        DifferentialForm::term(&c, &[0, 1], p(&c, "x2")),
        DifferentialForm::term(&c, &[0, 1], p(&c, "x1^2 - 3")),
    ];
    let forms = BundleForms::new(2, coordinate_coframe(&a), nu).expect("consistent shapes");
    IMForm::new(&a, forms).expect("consistent shapes")
}

/// F6: `μ(e^i) = dx^i`, `ν = 0` on the Koszul algebroid F3.
pub fn im_koszul_so3_dual() -> IMForm {
    mu_identity(&koszul_so3_dual())
}

/// F7: the exact IM 2-form of `η = x1 dx1∧dx2` on the tangent algebroid of ℝ².
pub fn im_exact_tangent() -> IMForm {
    let a = tangent_r2();
    let c = a.base_chart().clone();
    im_from_form(&a, &DifferentialForm::term(&c, &[0, 1], p(&c, "x1"))).expect("2-form on the base")
}

/// F8 with `μ(e^i) = dx^i`, `ν = 0`; IM2 fails.
pub fn im_perturbed_so3_dual() -> IMForm {
    mu_identity(&perturbed_so3_dual())
}

/// The passing IM fixtures F4, F6, F7.
pub fn passing_im_forms() -> Vec<IMForm> {
    vec![im_trivial_cotangent(), im_koszul_so3_dual(), im_exact_tangent()]
}

/// On so(3) with `k = 2`: `δe_a = [e_a, e1∧e2]`.
pub fn so3_coboundary_multivector() -> LinearMultivector {
    let a = so3();
    let r = Section::term(&a, &[0, 1], Polynomial::one(a.base_chart()));
    let frame = (0..3).map(|x| Section::frame(&a, x).bracket(&r)).collect();
    linear_from_derivation(&Derivation::from_sections(&a, 2, vec![], frame).expect("consistent shapes"))
}

/// On so(3) with `k = 2`: `δe1 = e1∧e2`, `δe2 = δe3 = 0`; R3 fails.
pub fn so3_non_cocycle_multivector() -> LinearMultivector {
    let a = so3();
    let mut frame = vec![Section::zero(&a, 2); 3];
    frame[0] = Section::term(&a, &[0, 1], Polynomial::one(a.base_chart()));
    linear_from_derivation(&Derivation::from_sections(&a, 2, vec![], frame).expect("consistent shapes"))
}
