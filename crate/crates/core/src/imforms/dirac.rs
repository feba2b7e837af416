use crate::algebroid::LieAlgebroid;
use crate::cartan::{DifferentialForm, Multivector, VectorField};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::random;
use crate::report::{CheckReport, Tag, Violation};
use crate::symkernel::{q, Chart, Polynomial, Rational};

use super::IMForm;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coefficients {
    /// The span is the image of an algebroid frame, so brackets of
    /// generators should be `C_ab^c g_c`.
    Algebroid(LieAlgebroid),
    /// The 1-form parts are `dx^1, …, dx^n`, so a span element is determined
    /// by its 1-form part.
    Coframe,
    None,
}

/// Generators `(X_a, α_a)` of a candidate subbundle of `TM ⊕ T*M`, together
/// with `ν_L(X_a, α_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracCandidate {
    chart: Chart,
    generators: Vec<(VectorField, DifferentialForm)>,
    nu: Vec<DifferentialForm>,
    coefficients: Coefficients,
}

impl DiracCandidate {
    pub fn new(
        chart: &Chart,
        generators: Vec<(VectorField, DifferentialForm)>,
        nu: Vec<DifferentialForm>,
    ) -> Result<Self> {
        if nu.len() != generators.len() {
            return Err(Error::Arity {
                expected: generators.len(),
                found: nu.len(),
            });
        }
        for (x, alpha) in &generators {
            x.chart().ensure_same(chart)?;
            alpha.chart().ensure_same(chart)?;
            if alpha.degree() != 1 {
                return Err(Error::Degree("generator 1-form expected".into()));
            }
        }
        if let Some(f) = nu.iter().find(|f| f.degree() != 2) {
            return Err(Error::Degree(format!("ν_L values are 2-forms, got degree {}", f.degree())));
        }
        Ok(Self {
            chart: chart.clone(),
            generators,
            nu,
            coefficients: Coefficients::None,
        })
    }

    /// The graph `{(π^♯α, α)}` with `ν_L(X, α) = −i_X φ` (`φ = 0` when absent).
    pub fn graph(pi: &Multivector, phi: Option<&DifferentialForm>) -> Result<Self> {
        if pi.degree() != 2 {
            return Err(Error::Degree("bivector expected".into()));
        }
        let c = pi.chart().clone();
        let n = c.dim();
        let mut generators = Vec::with_capacity(n);
        let mut nu = Vec::with_capacity(n);
        for i in 0..n {
            let x = VectorField::new(&c, (0..n).map(|j| pi.component(&[i, j])).collect());
            nu.push(match phi {
                Some(f) => {
                    f.chart().ensure_same(&c)?;
                    f.contract(&x).neg()
                }
                None => DifferentialForm::zero(&c, 2),
            });
            generators.push((x, DifferentialForm::dx(&c, i)));
        }
        let mut out = Self::new(&c, generators, nu)?;
        out.coefficients = Coefficients::Coframe;
        Ok(out)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[(VectorField, DifferentialForm)] {
        &self.generators
    }

    pub fn nu(&self) -> &[DifferentialForm] {
        &self.nu
    }

    fn combine(&self, coeffs: &[Polynomial]) -> (VectorField, DifferentialForm, DifferentialForm) {
        let mut x = VectorField::zero(&self.chart);
        let mut alpha = DifferentialForm::zero(&self.chart, 1);
        let mut nu = DifferentialForm::zero(&self.chart, 2);
        for (f, ((gx, ga), gn)) in coeffs.iter().zip(self.generators.iter().zip(&self.nu)) {
            if f.is_zero() {
                continue;
            }
            x = x.add(&gx.scale(f));
            alpha = alpha.add(&ga.scale(f));
            nu = nu.add(&gn.scale(f));
        }
        (x, alpha, nu)
    }

    fn row_at(&self, x: &VectorField, alpha: &DifferentialForm, pt: &[Rational]) -> Vec<Rational> {
        let n = self.chart.dim();
        x.components()
            .iter()
            .map(|p| p.eval_at(pt))
            .chain((0..n).map(|i| alpha.coeff(&[i]).eval_at(pt)))
            .collect()
    }
}

/// `(ρ(e_a), μ(e_a))` with `ν_L = ν`, for an IM 2-form.
pub fn dirac_from_im(im: &IMForm) -> Result<DiracCandidate> {
    if im.k() != 2 {
        return Err(Error::Degree(format!("Dirac picture needs k = 2, got {}", im.k())));
    }
    let a = im.algebroid();
    let generators = (0..a.rank()).map(|x| (a.anchor_field(x), im.mu(x).clone())).collect();
    let nu = (0..a.rank()).map(|x| im.nu(x).clone()).collect();
    let mut out = DiracCandidate::new(a.base_chart(), generators, nu)?;
    out.coefficients = Coefficients::Algebroid(a.clone());
    Ok(out)
}

/// `([X,Y], L_Xβ − i_Y dα − i_Y ν_x)` where `ν_x = ν_L(X, α)`.
pub fn nubrk(
    x: &VectorField,
    alpha: &DifferentialForm,
    y: &VectorField,
    beta: &DifferentialForm,
    nu_x: &DifferentialForm,
) -> (VectorField, DifferentialForm) {
    let form = beta
        .lie_derivative(x)
        .sub(&alpha.d().contract(y))
        .sub(&nu_x.contract(y));
    (x.bracket(y), form)
}

/// The bracket of the span elements `Σ u^a g_a` and `Σ v^a g_a`.
pub fn bracket_nubrk(
    d: &DiracCandidate,
    u: &[Polynomial],
    v: &[Polynomial],
) -> Result<(VectorField, DifferentialForm)> {
    for w in [u, v] {
        if w.len() != d.rank() {
            return Err(Error::Arity {
                expected: d.rank(),
                found: w.len(),
            });
        }
    }
    let (x, alpha, nu_x) = d.combine(u);
    let (y, beta, _) = d.combine(v);
    Ok(nubrk(&x, &alpha, &y, &beta, &nu_x))
}

/// The integer grid `{−1, 0, 1}^n` followed by ten seeded random points.
pub fn default_samples(n: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-1..=1).map(move |v| {
                    let mut p = p.clone();
                    p.push(q(v, 1));
                    p
                })
            })
            .collect();
    }
    let mut rng = random::rng(seed);
    out.extend((0..10).map(|_| random::point(&mut rng, n)));
    out
}

/// Isotropy `⟨g_a, g_b⟩ = α_b(X_a) + α_a(X_b) = 0` symbolically on all
/// pairs `a ≤ b`, and rank `n` of the generators at each sample point.
/// Together these say the span is lagrangian at those points.
pub fn check_lagrangian(d: &DiracCandidate, samples: &[Vec<Rational>]) -> CheckReport {
    let r = d.rank();
    let n = d.chart.dim();
    let mut report = CheckReport::default();
    for a in 0..r {
        for b in a..r {
            let (xa, aa) = &d.generators[a];
            let (xb, ab) = &d.generators[b];
            let pairing = ab.contract(xa).add(&aa.contract(xb)).as_function();
            if !pairing.is_zero() {
                report.push(Violation::new(Tag::Isotropy, vec![a, b]).with_residual("pairing", pairing));
            }
        }
    }
    let ranks = par::map(samples, |pt| {
        let m: linalg::Matrix = d.generators.iter().map(|(x, alpha)| d.row_at(x, alpha, pt)).collect();
        linalg::rank(&m)
    });
    for (s, (rank, pt)) in ranks.into_iter().zip(samples).enumerate() {
        if rank != n {
            let coords: Vec<String> = pt.iter().map(ToString::to_string).collect();
            report.push(
                Violation::new(Tag::Rank, vec![s])
                    .with_note(format!("rank {rank} ≠ {n} at ({})", coords.join(", "))),
            );
        }
    }
    report
}

fn residual_labels(chart: &Chart, x: &VectorField, alpha: &DifferentialForm) -> Vec<(String, Polynomial)> {
    let mut out = Vec::new();
    for (j, p) in x.components().iter().enumerate() {
        if !p.is_zero() {
            out.push((format!("∂{}", chart.coord(j).name), p.clone()));
        }
    }
    for j in 0..chart.dim() {
        let p = alpha.coeff(&[j]);
        if !p.is_zero() {
            out.push((format!("d{}", chart.coord(j).name), p));
        }
    }
    out
}

/// Whether the bracket of every generator pair `a < b` lies in the span.
/// The candidate's own coefficients (structure functions, or the 1-form
/// part for graphs) give a symbolic certificate; otherwise membership is
/// decided at each sample point by an exact linear solve.
pub fn check_closure(d: &DiracCandidate, samples: &[Vec<Rational>]) -> CheckReport {
    let r = d.rank();
    let n = d.chart.dim();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).collect();
    let violations = par::flat_map(&pairs, |&(a, b)| {
        let (ga, gb) = (&d.generators[a], &d.generators[b]);
        let (bx, balpha) = nubrk(&ga.0, &ga.1, &gb.0, &gb.1, &d.nu[a]);
        let coeffs: Option<Vec<Polynomial>> = match &d.coefficients {
            Coefficients::Algebroid(alg) => Some((0..r).map(|c| alg.structure(a, b, c)).collect()),
            Coefficients::Coframe => Some((0..n).map(|i| balpha.coeff(&[i])).collect()),
            Coefficients::None => None,
        };
        let mut residual = None;
        if let Some(c) = coeffs {
            let (ex, ealpha, _) = d.combine(&c);
            let rx = bx.add(&ex.scale(&Polynomial::from_int(&d.chart, -1)));
            let ralpha = balpha.sub(&ealpha);
            if rx.is_zero() && ralpha.is_zero() {
                return Vec::new();
            }
            residual = Some(residual_labels(&d.chart, &rx, &ralpha));
        }
        let with_residual = |mut v: Violation| {
            for (label, p) in residual.iter().flatten() {
                v = v.with_residual(label.clone(), p.clone());
            }
            v
        };
        if matches!(d.coefficients, Coefficients::Coframe) {
            return vec![with_residual(Violation::new(Tag::Closure, vec![a, b]))];
        }
        let rows: Vec<_> = samples
            .iter()
            .map(|pt| d.generators.iter().map(|(x, al)| d.row_at(x, al, pt)).collect::<Vec<_>>())
            .collect();
        let mut out = Vec::new();
        for (s, (pt, rows)) in samples.iter().zip(rows).enumerate() {
            let target = d.row_at(&bx, &balpha, pt);
            let system: linalg::Matrix =
                (0..2 * n).map(|i| rows.iter().map(|row| row[i].clone()).collect()).collect();
            if linalg::solve(&system, &target).is_none() {
                out.push(with_residual(
                    Violation::new(Tag::Closure, vec![a, b, s])
                        .with_note("bracket leaves the span at the sample point"),
                ));
            }
        }
        out
    });
    CheckReport::new(violations)
}
