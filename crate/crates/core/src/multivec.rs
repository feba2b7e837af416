//! Linear multivector fields on the total space of an algebroid, the
//! derivations of `Γ(∧•A)` they correspond to, and the dual morphism oracle.

use num_traits::{One, Zero};

use crate::algebroid::{
    check_morphism_to_line, cotangent_prolongation, cotangent_prolongation_unchecked,
    FiberFunctional, LieAlgebroid, Section,
};
use crate::alt::AltTable;
use crate::cartan::Multivector;
use crate::error::{Error, Result};
use crate::linforms::TotalChart;
use crate::par;
use crate::report::{labelled, CheckReport, Tag, Violation};
use crate::symkernel::{Chart, Polynomial, Rational};

/// A k-vector field on the total space of the shape
/// `π_d^{B} u^d ∂u_B + π^{B j} ∂u_B ∧ ∂x_j`, stored by its coefficients on
/// sorted index tuples `B` (these are the antisymmetric tables, the `1/k!`
/// and `1/(k−1)!` factors absorbing the orderings).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMultivector {
    total: TotalChart,
    k: usize,
    fiber: Vec<AltTable>,
    mixed: Vec<AltTable>,
}

fn check_tables(tables: &[AltTable], count: usize, base: &Chart, rank: usize, degree: usize) -> Result<()> {
    if tables.len() != count {
        return Err(Error::Arity {
            expected: count,
            found: tables.len(),
        });
    }
    for t in tables {
        t.chart().ensure_same(base)?;
        if t.dim() != rank || t.degree() != degree {
            return Err(Error::Degree(format!(
                "expected a degree-{degree} table over {rank} letters, got degree {} over {}",
                t.degree(),
                t.dim()
            )));
        }
    }
    Ok(())
}

impl LinearMultivector {
    /// `fiber[d]` holds `π_d^B` (degree k), `mixed[j]` holds `π^{B j}`
    /// (degree k − 1).
    pub fn new(total: &TotalChart, k: usize, fiber: Vec<AltTable>, mixed: Vec<AltTable>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Degree("linear multivectors need k ≥ 1".into()));
        }
        let (base, r) = (total.base(), total.rank());
        check_tables(&fiber, r, base, r, k)?;
        check_tables(&mixed, total.base_dim(), base, r, k - 1)?;
        Ok(Self {
            total: total.clone(),
            k,
            fiber,
            mixed,
        })
    }

    pub fn zero(total: &TotalChart, k: usize) -> Result<Self> {
        let (base, r) = (total.base(), total.rank());
        let fiber = vec![AltTable::zero(base, r, k); r];
        let mixed = vec![AltTable::zero(base, r, k.saturating_sub(1)); total.base_dim()];
        Self::new(total, k, fiber, mixed)
    }

    pub fn total(&self) -> &TotalChart {
        &self.total
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fiber(&self, d: usize) -> &AltTable {
        &self.fiber[d]
    }

    pub fn mixed(&self, j: usize) -> &AltTable {
        &self.mixed[j]
    }

    pub fn is_zero(&self) -> bool {
        self.fiber.iter().chain(&self.mixed).all(AltTable::is_zero)
    }

    pub fn to_multivector(&self) -> Multivector {
        let t = &self.total;
        let c = t.chart();
        let n = t.base_dim();
        let lift = |p: &Polynomial| p.embed(c).expect("base chart embeds");
        let mut out = Multivector::zero(c, self.k);
        for (d, table) in self.fiber.iter().enumerate() {
            for (b, f) in table.coeffs() {
                let idx: Vec<usize> = b.iter().map(|&i| n + i).collect();
                out.add_term(&idx, &lift(f) * &t.fiber(d));
            }
        }
        for (j, table) in self.mixed.iter().enumerate() {
            for (b, f) in table.coeffs() {
                let mut idx: Vec<usize> = b.iter().map(|&i| n + i).collect();
                idx.push(j);
                out.add_term(&idx, lift(f));
            }
        }
        out
    }

    pub fn from_multivector(p: &Multivector, total: &TotalChart, k: usize) -> Result<Self> {
        if !is_linear_multivector(p, total, k) {
            return Err(Error::NotLinearMultivector);
        }
        let n = total.base_dim();
        let (base, r) = (total.base(), total.rank());
        let mut fiber = vec![AltTable::zero(base, r, k); r];
        let mut mixed = vec![AltTable::zero(base, r, k - 1); n];
        for (idx, f) in p.terms() {
            let b: Vec<usize> = idx.iter().filter(|&&i| i >= n).map(|&i| i - n).collect();
            match idx.iter().find(|&&i| i < n) {
                None => {
                    for (d, table) in fiber.iter_mut().enumerate() {
                        let g = f.diff(total.fiber_index(d));
                        if !g.is_zero() {
                            table.add_term(&b, g.restrict(base)?);
                        }
                    }
                }
                Some(&j) => {
                    // sorted order puts ∂x_j in front of the k − 1 fiber slots
                    let g = f.restrict(base)?;
                    mixed[j].add_term(&b, if (k - 1) % 2 == 1 { -g } else { g });
                }
            }
        }
        Self::new(total, k, fiber, mixed)
    }
}

/// Whether `p` is a k-vector on the total chart with only the two monomial
/// classes `u^d ∂u_B` and `∂u_B ∧ ∂x_j` (coefficients otherwise basic).
pub fn is_linear_multivector(p: &Multivector, total: &TotalChart, k: usize) -> bool {
    if k == 0 || p.chart() != total.chart() || p.degree() != k {
        return false;
    }
    let n = total.base_dim();
    p.terms().all(|(idx, f)| {
        let want = match idx.iter().filter(|&&i| i < n).count() {
            0 => 1,
            1 => 0,
            _ => return false,
        };
        f.terms()
            .keys()
            .all(|e| e[n..].iter().sum::<u32>() == want)
    })
}

/// A degree-(k−1) derivation of `Γ(∧•A)`, stored by `δx^j ∈ Γ(∧^{k−1}A)`
/// and `δe_a ∈ Γ(∧^kA)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    total: TotalChart,
    k: usize,
    coord: Vec<AltTable>,
    frame: Vec<AltTable>,
}

impl Derivation {
    pub fn new(total: &TotalChart, k: usize, coord: Vec<AltTable>, frame: Vec<AltTable>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Degree("derivations here have degree k − 1 ≥ 0".into()));
        }
        let (base, r) = (total.base(), total.rank());
        check_tables(&coord, total.base_dim(), base, r, k - 1)?;
        check_tables(&frame, r, base, r, k)?;
        Ok(Self {
            total: total.clone(),
            k,
            coord,
            frame,
        })
    }

    pub fn zero(a: &LieAlgebroid, k: usize) -> Result<Self> {
        let (base, r) = (a.base_chart(), a.rank());
        Self::new(
            &TotalChart::of(a),
            k,
            vec![AltTable::zero(base, r, k.saturating_sub(1)); a.base_dim()],
            vec![AltTable::zero(base, r, k); r],
        )
    }

    pub fn from_sections(a: &LieAlgebroid, k: usize, coord: Vec<Section>, frame: Vec<Section>) -> Result<Self> {
        for s in coord.iter().chain(&frame) {
            a.ensure_same(s.algebroid())?;
        }
        Self::new(
            &TotalChart::of(a),
            k,
            coord.iter().map(|s| s.table().clone()).collect(),
            frame.iter().map(|s| s.table().clone()).collect(),
        )
    }

    /// `δ = [R, ·]` for `R ∈ Γ(∧^kA)`.
    pub fn coboundary(a: &LieAlgebroid, r: &Section) -> Result<Self> {
        a.ensure_same(r.algebroid())?;
        let coord = (0..a.base_dim())
            .map(|j| r.bracket(&Section::function(a, Polynomial::var(a.base_chart(), j))))
            .collect();
        let frame = (0..a.rank()).map(|x| r.bracket(&Section::frame(a, x))).collect();
        Self::from_sections(a, r.degree(), coord, frame)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn total(&self) -> &TotalChart {
        &self.total
    }

    pub fn delta_coord(&self, j: usize) -> &AltTable {
        &self.coord[j]
    }

    pub fn delta_frame(&self, a: usize) -> &AltTable {
        &self.frame[a]
    }

    fn ensure_on(&self, a: &LieAlgebroid) -> Result<()> {
        if self.total != TotalChart::of(a) {
            return Err(Error::AlgebroidMismatch);
        }
        Ok(())
    }

    fn coord_section(&self, a: &LieAlgebroid, j: usize) -> Section {
        Section::from_table(a, self.coord[j].clone())
    }

    fn frame_section(&self, a: &LieAlgebroid, x: usize) -> Section {
        Section::from_table(a, self.frame[x].clone())
    }

    /// `δf = ∂_j f δx^j`.
    pub fn apply_function(&self, a: &LieAlgebroid, f: &Polynomial) -> Result<Section> {
        self.ensure_on(a)?;
        let mut out = Section::zero(a, self.k - 1);
        for j in 0..a.base_dim() {
            let g = f.diff(j);
            if !g.is_zero() {
                out = out.add(&self.coord_section(a, j).scale(&g));
            }
        }
        Ok(out)
    }

    /// Extends `δ` to any section through `δ(u∧v) = δu∧v + (−1)^{p(k−1)} u∧δv`.
    pub fn apply(&self, a: &LieAlgebroid, u: &Section) -> Result<Section> {
        self.ensure_on(a)?;
        a.ensure_same(u.algebroid())?;
        let p = u.degree();
        let mut out = Section::zero(a, p + self.k - 1);
        let odd = (self.k - 1) % 2 == 1;
        for (idx, f) in u.table().coeffs() {
            let basis = Section::term(a, idx, Polynomial::one(a.base_chart()));
            out = out.add(&self.apply_function(a, f)?.wedge(&basis));
            for (s, &b) in idx.iter().enumerate() {
                let left = Section::term(a, &idx[..s], Polynomial::one(a.base_chart()));
                let right = Section::term(a, &idx[s + 1..], Polynomial::one(a.base_chart()));
                let t = left.wedge(&self.frame_section(a, b)).wedge(&right).scale(f);
                out = if odd && s % 2 == 1 { out.sub(&t) } else { out.add(&t) };
            }
        }
        Ok(out)
    }
}

/// `δx^i` is the mixed table of `P` and `δe_a = −π_a`.
pub fn derivation_from_linear(p: &LinearMultivector) -> Derivation {
    Derivation {
        total: p.total.clone(),
        k: p.k,
        coord: p.mixed.clone(),
        frame: p.fiber.iter().map(AltTable::neg).collect(),
    }
}

pub fn linear_from_derivation(d: &Derivation) -> LinearMultivector {
    LinearMultivector {
        total: d.total.clone(),
        k: d.k,
        fiber: d.frame.iter().map(AltTable::neg).collect(),
        mixed: d.coord.clone(),
    }
}

/// The Gerstenhaber bracket on `Γ(∧•A)`.
pub fn algebroid_schouten(a: &LieAlgebroid, u: &Section, v: &Section) -> Result<Section> {
    a.ensure_same(u.algebroid())?;
    a.ensure_same(v.algebroid())?;
    Ok(u.bracket(v))
}

fn violation(a: &LieAlgebroid, tag: Tag, witness: Vec<usize>, residual: &Section) -> Option<Violation> {
    if residual.is_zero() {
        return None;
    }
    let mut v = Violation::new(tag, witness);
    for (label, p) in labelled(residual.table(), a.frame_names()) {
        v = v.with_residual(label, p);
    }
    Some(v)
}

/// The reduced derivation conditions on generators: R1 on coordinate pairs
/// `i ≤ j`, R2 on every `(x^i, e_b)` and R3 on frame pairs `a < b`.
pub fn check_gerstenhaber_derivation(a: &LieAlgebroid, d: &Derivation) -> Result<CheckReport> {
    d.ensure_on(a)?;
    let (n, r, k) = (a.base_dim(), a.rank(), d.k);
    let chart = a.base_chart();
    let sign = |s: Section| if (k - 1) % 2 == 1 { s.neg() } else { s };
    let x = |i: usize| Section::function(a, Polynomial::var(chart, i));
    let dx: Vec<Section> = (0..n).map(|j| d.coord_section(a, j)).collect();
    let de: Vec<Section> = (0..r).map(|b| d.frame_section(a, b)).collect();
    let e = |b: usize| Section::frame(a, b);

    let coord_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mixed_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..r).map(move |b| (i, b))).collect();
    let frame_pairs: Vec<(usize, usize)> = (0..r).flat_map(|x| (x + 1..r).map(move |y| (x, y))).collect();

    let r1 = par::flat_map(&coord_pairs, |&(i, j)| {
        let res = dx[i].bracket(&x(j)).add(&sign(x(i).bracket(&dx[j])));
        violation(a, Tag::R1, vec![i, j], &res).into_iter().collect()
    });
    let r2 = par::flat_map(&mixed_pairs, |&(i, b)| {
        let mut lhs = Section::zero(a, k - 1);
        for j in 0..n {
            let g = a.anchor(b, i).diff(j);
            if !g.is_zero() {
                lhs = lhs.sub(&dx[j].scale(&g));
            }
        }
        let res = lhs.sub(&dx[i].bracket(&e(b))).sub(&sign(x(i).bracket(&de[b])));
        violation(a, Tag::R2, vec![i, b], &res).into_iter().collect()
    });
    let r3 = par::flat_map(&frame_pairs, |&(p, q)| {
        let mut lhs = Section::zero(a, k);
        for c in 0..r {
            let cc = a.structure(p, q, c);
            if cc.is_zero() {
                continue;
            }
            lhs = lhs.add(&de[c].scale(&cc));
            for (j, dxj) in dx.iter().enumerate() {
                let g = cc.diff(j);
                if !g.is_zero() {
                    lhs = lhs.add(&dxj.wedge(&e(c)).scale(&g));
                }
            }
        }
        let res = lhs.sub(&de[p].bracket(&e(q))).sub(&e(p).bracket(&de[q]));
        violation(a, Tag::R3, vec![p, q], &res).into_iter().collect()
    });
    let mut report = CheckReport::new(r1);
    report.extend(CheckReport::new(r2));
    report.extend(CheckReport::new(r3));
    Ok(report)
}

fn prolong(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    if a.is_checked() {
        cotangent_prolongation(a, k)
    } else {
        cotangent_prolongation_unchecked(a, k)
    }
}

fn check_on(p: &LinearMultivector, a: &LieAlgebroid, k: usize) -> Result<()> {
    if p.k != k {
        return Err(Error::Degree(format!("expected a {k}-vector, got degree {}", p.k)));
    }
    if p.total != TotalChart::of(a) {
        return Err(Error::AlgebroidMismatch);
    }
    Ok(())
}

fn det(m: &[Vec<Polynomial>], chart: &Chart) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(chart),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Polynomial::zero(chart);
            for (c, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = entry * &det(&minor, chart);
                if c % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
    }
}

/// `π̄(dx̂^{j,m}) = (−1)^{k−m}⟨δx^j, ξ^1∧…ξ̂^m…∧ξ^k⟩` and
/// `π̄((e_a^L)^k) = −⟨δe_a, ξ^1∧…∧ξ^k⟩`, with the determinant pairing.
pub fn multivector_bar_on_frame(p: &LinearMultivector, a: &LieAlgebroid, k: usize) -> Result<FiberFunctional> {
    check_on(p, a, k)?;
    let t = prolong(a, k)?;
    let kind = t.prolongation().expect("prolongation").clone();
    let chart = t.base_chart();
    let d = derivation_from_linear(p);
    let pair = |w: &AltTable, slots: &[usize]| {
        let mut acc = Polynomial::zero(chart);
        for (b, f) in w.coeffs() {
            let m: Vec<Vec<Polynomial>> = slots
                .iter()
                .map(|&s| b.iter().map(|&bt| Polynomial::var(chart, kind.copy_coordinate(bt, s))).collect())
                .collect();
            acc += &(&f.embed(chart).expect("base chart embeds") * &det(&m, chart));
        }
        acc
    };
    let mut values = vec![Polynomial::zero(chart); t.rank()];
    for j in 0..a.base_dim() {
        for m in 1..=k {
            let slots: Vec<usize> = (1..=k).filter(|&s| s != m).collect();
            let v = pair(&d.coord[j], &slots);
            values[kind.core_index(j, m)] = if (k - m) % 2 == 1 { -v } else { v };
        }
    }
    let all: Vec<usize> = (1..=k).collect();
    for x in 0..a.rank() {
        values[kind.linear_index(x)] = -pair(&d.frame[x], &all);
    }
    FiberFunctional::from_values(&t, values)
}

/// `π̄` by evaluating the multivector itself on the covectors
/// `dx̂^{j,m}` (at `u = 0`) and `(e_a^L)^k` (at `u = e_a`).
pub fn multivector_bar_direct(p: &LinearMultivector, a: &LieAlgebroid, k: usize) -> Result<FiberFunctional> {
    check_on(p, a, k)?;
    let t = prolong(a, k)?;
    let kind = t.prolongation().expect("prolongation").clone();
    let chart = t.base_chart();
    let (n, r) = (a.base_dim(), a.rank());
    let total = &p.total;
    let big = p.to_multivector();

    // covector s (1-based) paired with the total-chart direction i
    let evaluate = |core: Option<(usize, usize)>, u: Option<usize>| -> Result<Polynomial> {
        let entry = |s: usize, i: usize| {
            if i >= n {
                Polynomial::var(chart, kind.copy_coordinate(i - n, s))
            } else if core == Some((i, s)) {
                Polynomial::one(chart)
            } else {
                Polynomial::zero(chart)
            }
        };
        let mut acc = Polynomial::zero(chart);
        for (idx, f) in big.terms() {
            let mut g = f.clone();
            for dd in 0..r {
                let val = if u == Some(dd) { Rational::one() } else { Rational::zero() };
                g = g.substitute(total.fiber_index(dd), &val);
            }
            if g.is_zero() {
                continue;
            }
            let m: Vec<Vec<Polynomial>> = (1..=k).map(|s| idx.iter().map(|&i| entry(s, i)).collect()).collect();
            acc += &(&g.restrict(total.base())?.embed(chart)? * &det(&m, chart));
        }
        Ok(acc)
    };
    let mut values = vec![Polynomial::zero(chart); t.rank()];
    for j in 0..n {
        for m in 1..=k {
            values[kind.core_index(j, m)] = evaluate(Some((j, m)), None)?;
        }
    }
    for x in 0..r {
        values[kind.linear_index(x)] = evaluate(None, Some(x))?;
    }
    FiberFunctional::from_values(&t, values)
}

/// The verdicts of the derivation checker and of the morphism test for
/// `π̄` on the cotangent prolongation; a mismatch is an
/// [`Error::OracleDisagreement`].
pub fn oracle_equivalence_dual(p: &LinearMultivector, a: &LieAlgebroid, k: usize) -> Result<(bool, bool)> {
    check_on(p, a, k)?;
    let der_ok = check_gerstenhaber_derivation(a, &derivation_from_linear(p))?.passed();
    let bar = multivector_bar_on_frame(p, a, k)?;
    let morphism_ok = check_morphism_to_line(bar.algebroid(), &bar)?.passed();
    if der_ok != morphism_ok {
        return Err(Error::OracleDisagreement(format!(
            "{} (k = {k}): derivation conditions {}, morphism {}",
            a.name(),
            if der_ok { "pass" } else { "fail" },
            if morphism_ok { "pass" } else { "fail" },
        )));
    }
    Ok((der_ok, morphism_ok))
}
