//! Linear differential forms on the total space of a vector bundle.

use num_traits::{One, Zero};

use crate::algebroid::{
    tangent_prolongation, tangent_prolongation_unchecked, FiberFunctional, LieAlgebroid,
};
use crate::cartan::{DifferentialForm, VectorField};
use crate::error::{Error, Result};
use crate::par;
use crate::symkernel::{Chart, Coordinate, Polynomial, Rational, Role};

/// The chart `(x^1…x^n, u^1…u^r)` of the total space of a bundle with a
/// chosen frame; `u^d` is the fiber coordinate dual to the `d`-th frame
/// section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalChart {
    chart: Chart,
    base: Chart,
    frame: Vec<String>,
}

impl TotalChart {
    pub fn new(base: &Chart, frame: &[String]) -> Result<Self> {
        let mut coords = base.coords().to_vec();
        for d in 1..=frame.len() {
            coords.push(Coordinate::new(format!("u{d}"), Role::Fiber));
        }
        Ok(Self {
            chart: Chart::new(format!("tot({})", base.name()), coords)?,
            base: base.clone(),
            frame: frame.to_vec(),
        })
    }

    pub fn of(a: &LieAlgebroid) -> Self {
        Self::new(a.base_chart(), a.frame_names()).expect("fiber names are fresh")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn frame(&self) -> &[String] {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Chart index of `u^d`.
    pub fn fiber_index(&self, d: usize) -> usize {
        self.base.dim() + d
    }

    pub fn fiber(&self, d: usize) -> Polynomial {
        Polynomial::var(&self.chart, self.fiber_index(d))
    }

    /// Pulls a base form back along the projection.
    pub fn lift(&self, f: &DifferentialForm) -> DifferentialForm {
        f.embed(&self.chart).expect("base coordinates are part of the total chart")
    }

    fn fiber_degree(&self, exps: &[u32]) -> u32 {
        exps[self.base.dim()..].iter().sum()
    }
}

/// The symbols `μ: A → ∧^{k−1}T*M` and `ν: A → ∧^kT*M` of a linear k-form,
/// one form per frame section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleForms {
    k: usize,
    pub mu: Vec<DifferentialForm>,
    pub nu: Vec<DifferentialForm>,
}

impl BundleForms {
    pub fn new(k: usize, mu: Vec<DifferentialForm>, nu: Vec<DifferentialForm>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Degree("IM data needs k ≥ 1".into()));
        }
        if mu.len() != nu.len() {
            return Err(Error::Arity {
                expected: mu.len(),
                found: nu.len(),
            });
        }
        let chart = mu.first().map(|f| f.chart().clone());
        for f in mu.iter().chain(&nu) {
            if Some(f.chart()) != chart.as_ref() {
                return Err(Error::ChartMismatch {
                    left: chart.as_ref().map_or("?", |c| c.name()).to_string(),
                    right: f.chart().name().to_string(),
                });
            }
        }
        if let Some(f) = mu.iter().find(|f| f.degree() != k - 1) {
            return Err(Error::Degree(format!("μ has degree {}, expected {}", f.degree(), k - 1)));
        }
        if let Some(f) = nu.iter().find(|f| f.degree() != k) {
            return Err(Error::Degree(format!("ν has degree {}, expected {k}", f.degree())));
        }
        Ok(Self { k, mu, nu })
    }

    pub fn zero(base: &Chart, rank: usize, k: usize) -> Self {
        Self::new(
            k,
            vec![DifferentialForm::zero(base, k - 1); rank],
            vec![DifferentialForm::zero(base, k); rank],
        )
        .expect("consistent shapes")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().chain(&self.nu).all(DifferentialForm::is_zero)
    }
}

/// `Λ_μ = Σ_d u^d μ(e_d)` on the total space.
pub fn lambda_mu(mu: &[DifferentialForm], total: &TotalChart) -> Result<DifferentialForm> {
    if mu.len() != total.rank() {
        return Err(Error::Arity {
            expected: total.rank(),
            found: mu.len(),
        });
    }
    let degree = mu.first().map_or(0, DifferentialForm::degree);
    let mut out = DifferentialForm::zero(total.chart(), degree);
    for (d, m) in mu.iter().enumerate() {
        if m.degree() != degree {
            return Err(Error::Degree("μ forms of mixed degree".into()));
        }
        if m.chart() != total.base() {
            return Err(Error::ChartMismatch {
                left: total.base().name().to_string(),
                right: m.chart().name().to_string(),
            });
        }
        out = out.add(&total.lift(m).scale(&total.fiber(d)));
    }
    Ok(out)
}

/// `dΛ_μ + Λ_ν`.
pub fn linear_form(forms: &BundleForms, total: &TotalChart) -> Result<DifferentialForm> {
    Ok(lambda_mu(&forms.mu, total)?.d().add(&lambda_mu(&forms.nu, total)?))
}

/// Whether `l` is a k-form whose terms are either `u`-linear without `du`,
/// or `u`-independent with exactly one `du`.
pub fn is_linear(l: &DifferentialForm, total: &TotalChart, k: usize) -> bool {
    if l.chart() != total.chart() || l.degree() != k {
        return false;
    }
    let n = total.base_dim();
    l.terms().all(|(idx, f)| {
        let fiber_slots = idx.iter().filter(|&&i| i >= n).count();
        let want = match fiber_slots {
            0 => 1,
            1 => 0,
            _ => return false,
        };
        f.terms().keys().all(|e| total.fiber_degree(e) == want)
    })
}

/// The unique `(μ, ν)` with `l = dΛ_μ + Λ_ν`.
pub fn decompose(l: &DifferentialForm, total: &TotalChart, k: usize) -> Result<BundleForms> {
    if k == 0 {
        return Err(Error::Degree("decomposition needs k ≥ 1".into()));
    }
    if !is_linear(l, total, k) {
        return Err(Error::NotLinear);
    }
    let n = total.base_dim();
    let base = total.base();
    let r = total.rank();
    let mut mu = vec![DifferentialForm::zero(base, k - 1); r];
    let mut coeff = vec![DifferentialForm::zero(base, k); r];
    for (idx, f) in l.terms() {
        if let Some(s) = idx.iter().position(|&i| i >= n) {
            let d = idx[s] - n;
            let rest: Vec<usize> = idx.iter().copied().filter(|&i| i < n).collect();
            let g = f.restrict(base)?;
            mu[d].add_term(&rest, if s % 2 == 0 { g } else { -g });
        } else {
            for (d, c) in coeff.iter_mut().enumerate() {
                let g = f.diff(total.fiber_index(d));
                if !g.is_zero() {
                    c.add_term(idx, g.restrict(base)?);
                }
            }
        }
    }
    let nu = coeff
        .iter()
        .zip(&mu)
        .map(|(c, m)| c.sub(&m.d()))
        .collect();
    BundleForms::new(k, mu, nu)
}

/// The chart `(x, ẋ_1, …, ẋ_k)` of `⊕^k TM`, with `ẋ_l^j` named `{x^j}_dot{l}`.
pub fn tangent_chart(base: &Chart, k: usize) -> Chart {
    let mut coords = base.coords().to_vec();
    for l in 1..=k {
        for c in base.coords() {
            coords.push(Coordinate::new(format!("{}_dot{l}", c.name), Role::TangentCopy(l)));
        }
    }
    Chart::new(format!("T{k}({})", base.name()), coords).expect("dotted names are fresh")
}

/// The tautological vector field `ẋ_l = ẋ_l^j ∂_{x^j}` on `⊕^k TM`.
pub fn tautological_field(chart: &Chart, base_dim: usize, l: usize) -> VectorField {
    let mut comps = vec![Polynomial::zero(chart); chart.dim()];
    for (j, c) in comps.iter_mut().enumerate().take(base_dim) {
        *c = Polynomial::var(chart, l * base_dim + j);
    }
    VectorField::new(chart, comps)
}

/// `τ(β) = ẋ^j i_{∂_j} β` on `TM`.
pub fn tau(beta: &DifferentialForm) -> Result<DifferentialForm> {
    if beta.degree() == 0 {
        return Err(Error::Degree("τ needs a form of degree ≥ 1".into()));
    }
    let base = beta.chart();
    let t = tangent_chart(base, 1);
    let xdot = tautological_field(&t, base.dim(), 1);
    Ok(beta.embed(&t)?.contract(&xdot))
}

/// `α_T = dτ(α) + τ(dα)`.
pub fn tangent_lift(alpha: &DifferentialForm) -> DifferentialForm {
    let t = tangent_chart(alpha.chart(), 1);
    let second = tau(&alpha.d()).expect("positive degree");
    if alpha.degree() == 0 {
        return second;
    }
    tau(alpha).expect("positive degree").d().add(&second).embed(&t).expect("same chart")
}

fn prolong(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    if a.is_checked() {
        tangent_prolongation(a, k)
    } else {
        tangent_prolongation_unchecked(a, k)
    }
}

fn check_total(l: &DifferentialForm, a: &LieAlgebroid) -> Result<TotalChart> {
    let total = TotalChart::of(a);
    if l.chart() != total.chart() {
        return Err(Error::ChartMismatch {
            left: total.chart().name().to_string(),
            right: l.chart().name().to_string(),
        });
    }
    Ok(total)
}

/// `Λ̄` on the frame of `tangent_prolongation(A, k)` from the symbols:
/// `Λ̄(ê_{a,n}) = (−1)^{n−1} I_{k,n+1} I_{n−1,1} μ(e_a)` and
/// `Λ̄((Te_a)^k) = I_{k,1}(dμ(e_a) + ν(e_a))`, contracting the tautological
/// fields `ẋ_l`.
pub fn lambda_bar_on_frame(l: &DifferentialForm, a: &LieAlgebroid, k: usize) -> Result<FiberFunctional> {
    let total = check_total(l, a)?;
    let forms = decompose(l, &total, k)?;
    lambda_bar_from_symbols(&forms, a)
}

/// Same as [`lambda_bar_on_frame`], starting from `(μ, ν)`.
pub fn lambda_bar_from_symbols(forms: &BundleForms, a: &LieAlgebroid) -> Result<FiberFunctional> {
    let k = forms.k();
    let t = prolong(a, k)?;
    let kind = t.prolongation().expect("prolongation").clone();
    let chart = t.base_chart().clone();
    let n = a.base_dim();
    let xdot: Vec<VectorField> = (1..=k).map(|l| tautological_field(&chart, n, l)).collect();
    let contract_all = |f: &DifferentialForm, skip: Option<usize>| -> Polynomial {
        let mut acc = f.embed(&chart).expect("base chart embeds");
        for (l, x) in xdot.iter().enumerate() {
            if Some(l + 1) != skip {
                acc = acc.contract(x);
            }
        }
        acc.as_function()
    };
    let mut values = vec![Polynomial::zero(&chart); t.rank()];
    let jobs: Vec<(usize, usize)> = (0..a.rank())
        .flat_map(|ea| (0..=k).map(move |m| (ea, m)))
        .collect();
    let computed = par::map(&jobs, |&(ea, m)| {
        if m == 0 {
            let w = forms.mu[ea].d().add(&forms.nu[ea]);
            (kind.linear_index(ea), contract_all(&w, None))
        } else {
            let v = contract_all(&forms.mu[ea], Some(m));
            (kind.core_index(ea, m), if m % 2 == 0 { -v } else { v })
        }
    });
    for (i, v) in computed {
        values[i] = v;
    }
    FiberFunctional::from_values(&t, values)
}

/// `Λ̄` on the same frame by contracting `l` against the coordinate tangent
/// vectors of each frame element: `u = 0`, `U_l = ẋ_l (+ ∂_{u^a} for l = n)`
/// for `ê_{a,n}`, and `u = e_a`, `U_l = ẋ_l` for `(Te_a)^k`.
pub fn lambda_bar_direct(l: &DifferentialForm, a: &LieAlgebroid, k: usize) -> Result<FiberFunctional> {
    let total = check_total(l, a)?;
    if l.degree() != k {
        return Err(Error::Degree(format!("expected a {k}-form, got degree {}", l.degree())));
    }
    let t = prolong(a, k)?;
    let kind = t.prolongation().expect("prolongation").clone();
    let (n, r) = (a.base_dim(), a.rank());

    let mut coords = total.chart().coords().to_vec();
    coords.extend(t.base_chart().coords()[n..].iter().cloned());
    let big = Chart::new("tot+dot", coords)?;
    let lb = l.embed(&big)?;
    let xdot = |lv: usize| {
        let mut comps = vec![Polynomial::zero(&big); big.dim()];
        for (j, c) in comps.iter_mut().enumerate().take(n) {
            *c = Polynomial::var(&big, n + r + (lv - 1) * n + j);
        }
        comps
    };
    let evaluate = |vectors: Vec<Vec<Polynomial>>, u: Option<usize>| -> Result<Polynomial> {
        let mut acc = lb.clone();
        for v in vectors {
            acc = acc.contract(&VectorField::new(&big, v));
        }
        let mut f = acc.as_function();
        for d in 0..r {
            let val = if u == Some(d) { Rational::one() } else { Rational::zero() };
            f = f.substitute(n + d, &val);
        }
        f.restrict(t.base_chart())
    };
    let mut values = vec![Polynomial::zero(t.base_chart()); t.rank()];
    for ea in 0..r {
        for m in 1..=k {
            let vectors = (1..=k)
                .map(|lv| {
                    let mut v = xdot(lv);
                    if lv == m {
                        v[n + ea] = Polynomial::one(&big);
                    }
                    v
                })
                .collect();
            values[kind.core_index(ea, m)] = evaluate(vectors, None)?;
        }
        values[kind.linear_index(ea)] = evaluate((1..=k).map(xdot).collect(), Some(ea))?;
    }
    FiberFunctional::from_values(&t, values)
}

/// `ᾱ(x; v_1, …, v_k) = α_x(v_1, …, v_k)` as a polynomial on `⊕^k TM`.
pub fn alpha_bar(alpha: &DifferentialForm) -> Polynomial {
    let base = alpha.chart();
    let k = alpha.degree();
    let chart = tangent_chart(base, k);
    let mut acc = alpha.embed(&chart).expect("base chart embeds");
    for l in 1..=k {
        acc = acc.contract(&tautological_field(&chart, base.dim(), l));
    }
    acc.as_function()
}

/// Both sides of `ᾱ_T = dᾱ ∘ J` at one point. The point is given by
/// `x`, `ẋ` and, for each slot `l`, the tangent vector `(δx_l, δẋ_l)` of
/// `TM`. The left side evaluates `α_T` on those vectors at `(x, ẋ)`; the
/// right side differentiates `ᾱ` at `(x; δx_1, …, δx_k)` in the direction
/// `(ẋ; δẋ_1, …, δẋ_k)`.
pub fn alpha_t_sides_at(
    alpha: &DifferentialForm,
    x: &[Rational],
    xdot: &[Rational],
    dx: &[Vec<Rational>],
    dxdot: &[Vec<Rational>],
) -> (Rational, Rational) {
    let k = alpha.degree();
    assert!(dx.len() == k && dxdot.len() == k, "one vector per slot");
    let lhs = if k == 0 {
        tangent_lift(alpha).evaluate_at(&[x, xdot].concat(), &[])
    } else {
        let vectors: Vec<Vec<Rational>> = (0..k).map(|l| [&dx[l][..], &dxdot[l][..]].concat()).collect();
        tangent_lift(alpha).evaluate_at(&[x, xdot].concat(), &vectors)
    };

    let n = alpha.chart().dim();
    let bar = alpha_bar(alpha);
    let mut at = x.to_vec();
    for v in dx {
        at.extend_from_slice(v);
    }
    let mut rhs = Rational::zero();
    for j in 0..n {
        rhs += bar.diff(j).eval_at(&at) * &xdot[j];
    }
    for (l, v) in dxdot.iter().enumerate() {
        for j in 0..n {
            rhs += bar.diff((l + 1) * n + j).eval_at(&at) * &v[j];
        }
    }
    (lhs, rhs)
}

/// Symbolic form of [`alpha_t_sides_at`], as polynomials in
/// `(x, ẋ, δx_1, …, δx_k, δẋ_1, …, δẋ_k)`.
pub fn alpha_t_sides_symbolic(alpha: &DifferentialForm) -> (Polynomial, Polynomial) {
    let base = alpha.chart();
    let (n, k) = (base.dim(), alpha.degree());
    let mut coords = base.coords().to_vec();
    let mut push = |prefix: &str| {
        for c in base.coords() {
            coords.push(Coordinate::new(format!("{prefix}{}", c.name), Role::TangentCopy(1)));
        }
    };
    push("dot_");
    for l in 1..=k {
        push(&format!("d{l}_"));
    }
    for l in 1..=k {
        push(&format!("dd{l}_"));
    }
    let big = Chart::new("J", coords).expect("fresh names");
    let var = |block: usize, j: usize| Polynomial::var(&big, block * n + j);

    let lift = tangent_lift(alpha);
    let images: Vec<Polynomial> = (0..2 * n).map(|i| var(i / n, i % n)).collect();
    let mut lhs_form = DifferentialForm::zero(&big, k);
    for (idx, f) in lift.terms() {
        lhs_form.add_term(idx, f.compose(&images, &big));
    }
    let mut acc = lhs_form;
    for l in 1..=k {
        let mut comps = vec![Polynomial::zero(&big); big.dim()];
        for j in 0..n {
            comps[j] = var(1 + l, j);
            comps[n + j] = var(1 + k + l, j);
        }
        acc = acc.contract(&VectorField::new(&big, comps));
    }
    let lhs = acc.as_function();

    let bar = alpha_bar(alpha);
    let at: Vec<Polynomial> = (0..n)
        .map(|j| var(0, j))
        .chain((1..=k).flat_map(|l| (0..n).map(move |j| (l, j))).map(|(l, j)| var(1 + l, j)))
        .collect();
    let mut rhs = Polynomial::zero(&big);
    for j in 0..n {
        rhs += &(&bar.diff(j).compose(&at, &big) * &var(1, j));
    }
    for l in 1..=k {
        for j in 0..n {
            rhs += &(&bar.diff(l * n + j).compose(&at, &big) * &var(1 + k + l, j));
        }
    }
    (lhs, rhs)
}
