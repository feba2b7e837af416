//! Weil-algebra elements of degree `(1, k)`, the horizontal differential on
//! them, and the isomorphism `ψ` from linear k-forms.

use crate::algebroid::{check_morphism_to_line, LieAlgebroid, Section};
use crate::cartan::DifferentialForm;
use crate::error::{Error, Result};
use crate::imforms::{check_im_form, IMForm};
use crate::linforms::{decompose, lambda_bar_on_frame, linear_form, BundleForms, TotalChart};
use crate::par;
use crate::report::{differential_names, labelled, CheckReport, Tag, Violation};
use crate::symkernel::q;

/// `((Λ_W)_0, (Λ_W)_1)` on the frame: `comp0[a]` is a k-form and
/// `comp1[a]` a (k−1)-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1k {
    algebroid: LieAlgebroid,
    k: usize,
    comp0: Vec<DifferentialForm>,
    comp1: Vec<DifferentialForm>,
}

impl W1k {
    pub fn new(
        algebroid: &LieAlgebroid,
        k: usize,
        comp0: Vec<DifferentialForm>,
        comp1: Vec<DifferentialForm>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Degree("W^{1,k} needs k ≥ 1".into()));
        }
        let r = algebroid.rank();
        for (comp, degree) in [(&comp0, k), (&comp1, k - 1)] {
            if comp.len() != r {
                return Err(Error::Arity {
                    expected: r,
                    found: comp.len(),
                });
            }
            for f in comp {
                f.chart().ensure_same(algebroid.base_chart())?;
                if f.degree() != degree {
                    return Err(Error::Degree(format!("expected degree {degree}, got {}", f.degree())));
                }
            }
        }
        Ok(Self {
            algebroid: algebroid.clone(),
            k,
            comp0,
            comp1,
        })
    }

    pub fn zero(algebroid: &LieAlgebroid, k: usize) -> Result<Self> {
        let c = algebroid.base_chart();
        let r = algebroid.rank();
        Self::new(
            algebroid,
            k,
            vec![DifferentialForm::zero(c, k); r],
            vec![DifferentialForm::zero(c, k.saturating_sub(1)); r],
        )
    }

    /// `(ν_W)_0 = ν`, `(ν_W)_1 = 0`.
    pub fn from_bundle_map(algebroid: &LieAlgebroid, nu: Vec<DifferentialForm>) -> Result<Self> {
        let k = nu.first().map_or(0, DifferentialForm::degree);
        let zero = vec![DifferentialForm::zero(algebroid.base_chart(), k.saturating_sub(1)); nu.len()];
        Self::new(algebroid, k, nu, zero)
    }

    pub fn algebroid(&self) -> &LieAlgebroid {
        &self.algebroid
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn comp0(&self, a: usize) -> &DifferentialForm {
        &self.comp0[a]
    }

    pub fn comp1(&self, a: usize) -> &DifferentialForm {
        &self.comp1[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comp0.iter().chain(&self.comp1).all(DifferentialForm::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.algebroid.ensure_same(&other.algebroid)?;
        if self.k != other.k {
            return Err(Error::Degree(format!("adding W^{{1,{}}} and W^{{1,{}}}", self.k, other.k)));
        }
        let zip = |x: &[DifferentialForm], y: &[DifferentialForm]| x.iter().zip(y).map(|(f, g)| f.add(g)).collect();
        Self::new(&self.algebroid, self.k, zip(&self.comp0, &other.comp0), zip(&self.comp1, &other.comp1))
    }

    pub fn neg(&self) -> Self {
        Self {
            algebroid: self.algebroid.clone(),
            k: self.k,
            comp0: self.comp0.iter().map(DifferentialForm::neg).collect(),
            comp1: self.comp1.iter().map(DifferentialForm::neg).collect(),
        }
    }

    /// `(Λ_W)_0(u)` for `u = Σ f_a e_a`, via `(Λ_W)_0(f e_a) = f (Λ_W)_0(e_a) − df ∧ (Λ_W)_1(e_a)`.
    pub fn comp0_at(&self, u: &Section) -> Result<DifferentialForm> {
        self.algebroid.ensure_same(u.algebroid())?;
        if u.degree() != 1 {
            return Err(Error::Degree(format!("section of degree {}", u.degree())));
        }
        let mut out = DifferentialForm::zero(self.algebroid.base_chart(), self.k);
        for (x, f) in u.components().iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let df = DifferentialForm::function(f.clone()).d();
            out = out.add(&self.comp0[x].scale(f)).sub(&df.wedge(&self.comp1[x]));
        }
        Ok(out)
    }

    /// `(Λ_W)_1(u)`, which is tensorial.
    pub fn comp1_at(&self, u: &Section) -> Result<DifferentialForm> {
        self.algebroid.ensure_same(u.algebroid())?;
        if u.degree() != 1 {
            return Err(Error::Degree(format!("section of degree {}", u.degree())));
        }
        let mut out = DifferentialForm::zero(self.algebroid.base_chart(), self.k - 1);
        for (x, f) in u.components().iter().enumerate() {
            if !f.is_zero() {
                out = out.add(&self.comp1[x].scale(f));
            }
        }
        Ok(out)
    }
}

/// The components of `d^h Λ_W` on the frame: `comp0[(a, b)]` for `a < b`,
/// `comp1[a][b]` for all ordered pairs and the polarized symmetric
/// `comp2[(a, b)]` for `a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W2kComponents {
    pub comp0: Vec<((usize, usize), DifferentialForm)>,
    pub comp1: Vec<Vec<DifferentialForm>>,
    pub comp2: Vec<((usize, usize), DifferentialForm)>,
}

impl W2kComponents {
    pub fn is_zero(&self) -> bool {
        self.comp0.iter().chain(&self.comp2).all(|(_, f)| f.is_zero())
            && self.comp1.iter().flatten().all(DifferentialForm::is_zero)
    }

    /// DH0/DH1/DH2 violations for the nonzero components, witnesses by
    /// frame pair.
    pub fn report(&self) -> CheckReport {
        let mut out = Vec::new();
        for ((a, b), f) in &self.comp0 {
            out.extend(violation(Tag::Dh0, vec![*a, *b], f));
        }
        for (a, row) in self.comp1.iter().enumerate() {
            for (b, f) in row.iter().enumerate() {
                out.extend(violation(Tag::Dh1, vec![a, b], f));
            }
        }
        for ((a, b), f) in &self.comp2 {
            out.extend(violation(Tag::Dh2, vec![*a, *b], f));
        }
        CheckReport::new(out)
    }
}

fn violation(tag: Tag, witness: Vec<usize>, residual: &DifferentialForm) -> Option<Violation> {
    if residual.is_zero() {
        return None;
    }
    let names = differential_names(residual.chart());
    let mut v = Violation::new(tag, witness);
    for (label, p) in labelled(residual.table(), &names) {
        v = v.with_residual(label, p);
    }
    Some(v)
}

/// `ψ(dΛ_μ + Λ_ν) = −d^v μ_W + ν_W`, i.e. `(dμ + ν, −μ)` on the frame.
pub fn psi(l: &DifferentialForm, a: &LieAlgebroid) -> Result<W1k> {
    let k = l.degree();
    if k == 0 {
        return Err(Error::NotLinear);
    }
    let forms = decompose(l, &TotalChart::of(a), k)?;
    psi_of_symbols(&forms, a)
}

pub fn psi_of_symbols(forms: &BundleForms, a: &LieAlgebroid) -> Result<W1k> {
    let comp0 = forms.mu.iter().zip(&forms.nu).map(|(m, n)| m.d().add(n)).collect();
    let comp1 = forms.mu.iter().map(DifferentialForm::neg).collect();
    W1k::new(a, forms.k(), comp0, comp1)
}

/// The linear form with `ψ(L) = w`: `μ = −w_1`, `ν = w_0 − dμ`.
pub fn psi_inverse(w: &W1k) -> Result<DifferentialForm> {
    let mu: Vec<DifferentialForm> = w.comp1.iter().map(DifferentialForm::neg).collect();
    let nu = w.comp0.iter().zip(&mu).map(|(c, m)| c.sub(&m.d())).collect();
    linear_form(&BundleForms::new(w.k, mu, nu)?, &TotalChart::of(&w.algebroid))
}

/// `(d^v μ_W)_0 = −dμ`, `(d^v μ_W)_1 = μ`, an element of `W^{1,k+1}`.
pub fn dv_mu(mu: &[DifferentialForm], a: &LieAlgebroid) -> Result<W1k> {
    let Some(first) = mu.first() else {
        return Err(Error::Arity {
            expected: a.rank(),
            found: 0,
        });
    };
    let k = first.degree();
    W1k::new(
        a,
        k + 1,
        mu.iter().map(|m| m.d().neg()).collect(),
        mu.to_vec(),
    )
}

/// The three component formulas of `d^h` on frame sections.
pub fn dh_w1k(w: &W1k) -> Result<W2kComponents> {
    let a = &w.algebroid;
    let r = a.rank();
    let anchors: Vec<_> = (0..r).map(|x| a.anchor_field(x)).collect();
    let bracket = |x: usize, y: usize| Section::frame(a, x).bracket(&Section::frame(a, y));

    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|x| (x + 1..r).map(move |y| (x, y))).collect();
    let comp0 = par::map(&pairs, |&(x, y)| -> Result<_> {
        let f = w
            .comp0_at(&bracket(x, y))?
            .neg()
            .add(&w.comp0[y].lie_derivative(&anchors[x]))
            .sub(&w.comp0[x].lie_derivative(&anchors[y]));
        Ok(((x, y), f))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let rows: Vec<usize> = (0..r).collect();
    let comp1 = par::map(&rows, |&x| -> Result<Vec<DifferentialForm>> {
        (0..r)
            .map(|y| {
                Ok(w.comp1[y]
                    .lie_derivative(&anchors[x])
                    .sub(&w.comp1_at(&bracket(x, y))?)
                    .add(&w.comp0[x].contract(&anchors[y])))
            })
            .collect()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let half = q(-1, 2);
    let comp2 = (0..r)
        .flat_map(|x| (x..r).map(move |y| (x, y)))
        .map(|(x, y)| {
            let s = w.comp1[y].contract(&anchors[x]).add(&w.comp1[x].contract(&anchors[y]));
            ((x, y), s.scale_rational(&half))
        })
        .collect();
    Ok(W2kComponents { comp0, comp1, comp2 })
}

/// Outcome of [`check_psi_properties`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCheck {
    /// PSI_D violations of `ψ(dL) = −d^v ν_W`, witnessed by frame section.
    pub differential: CheckReport,
    pub im_form: bool,
    pub dh_closed: bool,
}

impl PsiCheck {
    pub fn passed(&self) -> bool {
        self.differential.passed() && self.im_form == self.dh_closed
    }
}

/// `ψ(dL) = −d^v(ν_W)` componentwise, and whether `L` is IM and whether
/// `d^h ψ(L) = 0`. Disagreement of the last two is an
/// [`Error::OracleDisagreement`].
pub fn check_psi_properties(l: &DifferentialForm, a: &LieAlgebroid) -> Result<PsiCheck> {
    let total = TotalChart::of(a);
    let k = l.degree();
    let forms = decompose(l, &total, k)?;
    let lhs = psi(&l.d(), a)?;
    let rhs = dv_mu(&forms.nu, a)?.neg();
    let mut differential = CheckReport::default();
    for x in 0..a.rank() {
        let r0 = lhs.comp0[x].sub(&rhs.comp0[x]);
        let r1 = lhs.comp1[x].sub(&rhs.comp1[x]);
        if !(r0.is_zero() && r1.is_zero()) {
            let mut v = Violation::new(Tag::PsiDifferential, vec![x]);
            let names = differential_names(a.base_chart());
            for (label, p) in labelled(r0.table(), &names) {
                v = v.with_residual(format!("0:{label}"), p);
            }
            for (label, p) in labelled(r1.table(), &names) {
                v = v.with_residual(format!("1:{label}"), p);
            }
            differential.push(v);
        }
    }
    let im_form = im_conditions_hold(&IMForm::new(a, forms)?);
    let dh_closed = dh_w1k(&psi(l, a)?)?.is_zero();
    if im_form != dh_closed {
        return Err(Error::OracleDisagreement(format!(
            "{} (k = {k}): IM conditions {}, d^h ψ = 0 {}",
            a.name(),
            im_form,
            dh_closed
        )));
    }
    Ok(PsiCheck {
        differential,
        im_form,
        dh_closed,
    })
}

fn im_conditions_hold(im: &IMForm) -> bool {
    let report = check_im_form(im);
    ![Tag::Im1, Tag::Im2, Tag::Im3].iter().any(|&t| report.has(t))
}

/// The verdicts of the IM checker, the morphism test for `Λ̄` and
/// `d^h ψ(L) = 0`; any mismatch is an [`Error::OracleDisagreement`].
pub fn triple_agreement(l: &DifferentialForm, a: &LieAlgebroid) -> Result<(bool, bool, bool)> {
    let k = l.degree();
    let forms = decompose(l, &TotalChart::of(a), k)?;
    let im = im_conditions_hold(&IMForm::new(a, forms)?);
    let bar = lambda_bar_on_frame(l, a, k)?;
    let morphism = check_morphism_to_line(bar.algebroid(), &bar)?.passed();
    let dh = dh_w1k(&psi(l, a)?)?.is_zero();
    if !(im == morphism && morphism == dh) {
        return Err(Error::OracleDisagreement(format!(
            "{} (k = {k}): IM {im}, morphism {morphism}, d^h ψ = 0 {dh}",
            a.name()
        )));
    }
    Ok((im, morphism, dh))
}
