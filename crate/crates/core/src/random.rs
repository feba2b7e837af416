//! Seeded generators of random polynomials, tensors and axiom-passing
//! algebroids, used by property tests, the acceptance suite and benches.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{LieAlgebroid, Section, StructureEntry};
use crate::cartan::{DifferentialForm, Multivector, VectorField};
use crate::fixtures;
use crate::imforms::{im_from_form, IMForm};
use crate::linforms::{BundleForms, TotalChart};
use crate::multivec::{linear_from_derivation, Derivation, LinearMultivector};
use crate::linalg;
use crate::symkernel::{q, Chart, Polynomial, Rational};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational `n/d` with `|n| ≤ 3`, `1 ≤ d ≤ 3`.
pub fn small_rational(rng: &mut Rng) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-3..=3);
        if n != 0 {
            return q(n, rng.gen_range(1..=3));
        }
    }
}

/// A rational of moderate height, for sample points.
pub fn sample_rational(rng: &mut Rng) -> Rational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

pub fn point(rng: &mut Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| sample_rational(rng)).collect()
}

/// Up to `max_terms` terms of total degree at most `max_deg` in the chart
/// coordinates listed in `vars`.
pub fn poly_in(
    rng: &mut Rng,
    chart: &Chart,
    vars: &[usize],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let mut acc = Polynomial::zero(chart);
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; chart.dim()];
        if !vars.is_empty() {
            let d = rng.gen_range(0..=max_deg);
            for _ in 0..d {
                exps[*vars.choose(rng).expect("nonempty")] += 1;
            }
        }
        acc += &Polynomial::monomial(chart, exps, small_rational(rng));
    }
    acc
}

pub fn poly(rng: &mut Rng, chart: &Chart, max_deg: u32, max_terms: usize) -> Polynomial {
    let vars: Vec<usize> = (0..chart.dim()).collect();
    poly_in(rng, chart, &vars, max_deg, max_terms)
}

/// A random form; each coefficient is nonzero with probability 1/2.
pub fn form(rng: &mut Rng, chart: &Chart, degree: usize, max_deg: u32) -> DifferentialForm {
    let mut out = DifferentialForm::zero(chart, degree);
    for idx in crate::alt::increasing_tuples(chart.dim(), degree) {
        if rng.gen_bool(0.5) {
            out.add_term(&idx, poly(rng, chart, max_deg, 2));
        }
    }
    out
}

pub fn vector_field(rng: &mut Rng, chart: &Chart, max_deg: u32) -> VectorField {
    let comps = (0..chart.dim()).map(|_| poly(rng, chart, max_deg, 2)).collect();
    VectorField::new(chart, comps)
}

pub fn multivector(rng: &mut Rng, chart: &Chart, degree: usize, max_deg: u32) -> Multivector {
    let mut out = Multivector::zero(chart, degree);
    for idx in crate::alt::increasing_tuples(chart.dim(), degree) {
        if rng.gen_bool(0.5) {
            out.add_term(&idx, poly(rng, chart, max_deg, 2));
        }
    }
    out
}

/// A random element of `Γ(∧^p A)`.
pub fn section(rng: &mut Rng, a: &LieAlgebroid, degree: usize, max_deg: u32) -> Section {
    let mut t = crate::alt::AltTable::zero(a.base_chart(), a.rank(), degree);
    for idx in crate::alt::increasing_tuples(a.rank(), degree) {
        if rng.gen_bool(0.6) {
            t.add_term(&idx, poly(rng, a.base_chart(), max_deg, 2));
        }
    }
    Section::from_table(a, t)
}

/// A random list of forms, one per frame section.
pub fn forms(rng: &mut Rng, chart: &Chart, count: usize, degree: usize, max_deg: u32) -> Vec<DifferentialForm> {
    (0..count).map(|_| form(rng, chart, degree, max_deg)).collect()
}

/// Re-expresses an algebroid in the constant frame `e'_a = Σ_b P_ab e_b`.
pub fn change_frame(a: &LieAlgebroid, p: &linalg::Matrix) -> Option<LieAlgebroid> {
    let r = a.rank();
    let qm = linalg::inverse(p)?;
    let chart = a.base_chart();
    let cst = |x: &Rational| Polynomial::constant(chart, x.clone());
    let anchor = (0..r)
        .map(|i| {
            (0..a.base_dim())
                .map(|j| {
                    let mut acc = Polynomial::zero(chart);
                    for b in 0..r {
                        if !p[i][b].is_zero() {
                            acc += &a.anchor(b, j).scale(&p[i][b]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut entries: Vec<StructureEntry> = Vec::new();
    for x in 0..r {
        for y in x + 1..r {
            for (c, d, f, cc) in a.structure_entries() {
                // [e'_x, e'_y] gets P_xc P_yd C_cd^f − P_xd P_yc C_cd^f on e_f
                let w = &p[x][c] * &p[y][d] - &p[x][d] * &p[y][c];
                if w.is_zero() {
                    continue;
                }
                for (g, row) in qm[f].iter().enumerate() {
                    if !row.is_zero() {
                        entries.push((x, y, g, &cc * &cst(&(&w * row))));
                    }
                }
            }
        }
    }
    LieAlgebroid::new(
        format!("{}'", a.name()),
        chart,
        a.frame_names().to_vec(),
        anchor,
        entries,
    )
    .ok()
}

/// A unipotent lower-triangular integer matrix with a random row order.
fn random_frame_change(rng: &mut Rng, r: usize) -> linalg::Matrix {
    let mut m: linalg::Matrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => Rational::one(),
                    std::cmp::Ordering::Less => q(rng.gen_range(-1..=1), 1),
                    std::cmp::Ordering::Greater => Rational::zero(),
                })
                .collect()
        })
        .collect();
    m.shuffle(rng);
    m
}

/// Matrices of a faithful representation and the matching structure
/// constants `[M_a, M_b] = C_ab^c M_c`.
fn lie_algebra(which: usize) -> (Vec<Vec<Vec<i64>>>, Vec<(usize, usize, usize, i64)>) {
    match which {
        0 => (
            vec![
                vec![vec![0, 0, 0], vec![0, 0, -1], vec![0, 1, 0]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![-1, 0, 0]],
                vec![vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 0]],
            ],
            vec![(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)],
        ),
        1 => (
            vec![
                vec![vec![1, 0], vec![0, -1]],
                vec![vec![0, 1], vec![0, 0]],
                vec![vec![0, 0], vec![1, 0]],
            ],
            vec![(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
        ),
        2 => (
            vec![
                vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]],
                vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]],
            ],
            vec![(0, 1, 2, 1)],
        ),
        _ => (
            vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 1], vec![0, 0]]],
            vec![(0, 1, 1, 1)],
        ),
    }
}

/// The action algebroid of so(3), sl(2), the Heisenberg algebra or the
/// affine algebra of the line on its defining representation, with anchor
/// `ρ(e_a) = −(M_a x)^j ∂_j`, in a random constant frame.
pub fn action_algebroid(rng: &mut Rng) -> LieAlgebroid {
    let which = rng.gen_range(0..4);
    let (mats, consts) = lie_algebra(which);
    let n = mats[0].len();
    let chart = Chart::base(
        format!("R{n}"),
        &(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>(),
    )
    .expect("valid");
    let anchor = mats
        .iter()
        .map(|m| {
            (0..n)
                .map(|j| {
                    let mut acc = Polynomial::zero(&chart);
                    for (i, &v) in m[j].iter().enumerate() {
                        if v != 0 {
                            acc -= &Polynomial::var(&chart, i).scale_int(v);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let entries = consts
        .iter()
        .map(|&(a, b, c, v)| (a, b, c, Polynomial::from_int(&chart, v)));
    let names = ["so(3)", "sl(2)", "heis", "aff"];
    let frame = (1..=mats.len()).map(|i| format!("e{i}")).collect();
    let a = LieAlgebroid::new(
        format!("{}|R{n}", names[which]),
        &chart,
        frame,
        anchor,
        entries,
    )
    .expect("action algebroids satisfy the axioms");
    let p = random_frame_change(rng, a.rank());
    change_frame(&a, &p).expect("unipotent frame change")
}

/// The Koszul algebroid of `f ∂1∧∂2` on ℝ² for a random quadratic `f`.
pub fn koszul_planar(rng: &mut Rng) -> LieAlgebroid {
    let chart = Chart::base("R2", &["x1", "x2"]).expect("valid");
    let f = poly(rng, &chart, 2, 3);
    let pi = Multivector::term(&chart, &[0, 1], f);
    let a = fixtures::koszul_unchecked("koszul(R2)", &pi).expect("well-formed");
    LieAlgebroid::new(
        a.name(),
        &chart,
        a.frame_names().to_vec(),
        a.anchor_matrix().to_vec(),
        a.structure_entries(),
    )
    .expect("every planar bivector is Poisson")
}

/// `Tℝⁿ` in a frame `e_a = ∂_a + Σ_{j>a} N_aj ∂_j` with polynomial `N`.
pub fn triangular_tangent(rng: &mut Rng, n: usize) -> LieAlgebroid {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let chart = Chart::base(format!("R{n}"), &names).expect("valid");
    let mut m: Vec<Vec<Polynomial>> = (0..n)
        .map(|a| (0..n).map(|j| Polynomial::from_int(&chart, i64::from(a == j))).collect())
        .collect();
    for a in 0..n {
        for j in a + 1..n {
            if rng.gen_bool(0.6) {
                m[a][j] = poly(rng, &chart, 1, 2);
            }
        }
    }
    // (I + N)^{-1} = Σ (−N)^k
    let nil: Vec<Vec<Polynomial>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|j| if a == j { Polynomial::zero(&chart) } else { -m[a][j].clone() })
                .collect()
        })
        .collect();
    let mul = |x: &Vec<Vec<Polynomial>>, y: &Vec<Vec<Polynomial>>| -> Vec<Vec<Polynomial>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Polynomial::zero(&chart);
                        for l in 0..n {
                            acc += &(&x[i][l] * &y[l][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let mut inv: Vec<Vec<Polynomial>> = (0..n)
        .map(|a| (0..n).map(|j| Polynomial::from_int(&chart, i64::from(a == j))).collect())
        .collect();
    let mut power = inv.clone();
    for _ in 1..n {
        power = mul(&power, &nil);
        for i in 0..n {
            for j in 0..n {
                inv[i][j] += &power[i][j];
            }
        }
    }
    let fields: Vec<VectorField> = m.iter().map(|row| VectorField::new(&chart, row.clone())).collect();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let br = fields[a].bracket(&fields[b]);
            for c in 0..n {
                let mut acc = Polynomial::zero(&chart);
                for j in 0..n {
                    acc += &(&br.components()[j] * &inv[j][c]);
                }
                entries.push((a, b, c, acc));
            }
        }
    }
    let frame = (1..=n).map(|i| format!("e{i}")).collect();
    LieAlgebroid::new(format!("TR{n}(triangular)"), &chart, frame, m, entries)
        .expect("a frame of the tangent bundle")
}

/// An axiom-passing algebroid from one of the random families.
pub fn algebroid(rng: &mut Rng) -> LieAlgebroid {
    match rng.gen_range(0..3) {
        0 => action_algebroid(rng),
        1 => koszul_planar(rng),
        _ => {
            let n = rng.gen_range(2..=3);
            triangular_tangent(rng, n)
        }
    }
}

/// Random symbols `(μ, ν)` of a linear k-form on an algebroid's bundle.
pub fn bundle_forms(rng: &mut Rng, a: &LieAlgebroid, k: usize) -> BundleForms {
    let c = a.base_chart();
    BundleForms::new(k, forms(rng, c, a.rank(), k - 1, 2), forms(rng, c, a.rank(), k, 2))
        .expect("consistent shapes")
}

/// A random IM candidate: arbitrary symbols, an exact IM form, or an exact
/// IM form with `ν` perturbed, in equal proportion.
pub fn im_candidate(rng: &mut Rng, a: &LieAlgebroid, k: usize) -> IMForm {
    let c = a.base_chart();
    match rng.gen_range(0..3) {
        0 => IMForm::new(a, bundle_forms(rng, a, k)).expect("consistent shapes"),
        choice => {
            let exact = im_from_form(a, &form(rng, c, k, 2)).expect("positive degree");
            if choice == 1 {
                return exact;
            }
            let mut forms = exact.forms().clone();
            let x = rng.gen_range(0..a.rank());
            forms.nu[x] = forms.nu[x].add(&form(rng, c, k, 1));
            IMForm::new(a, forms).expect("consistent shapes")
        }
    }
}

/// A random linear k-vector on an algebroid's bundle: arbitrary tables, the
/// coboundary `[R, ·]` of a random `R ∈ Γ(∧^kA)`, or such a coboundary with
/// one generator perturbed, in equal proportion.
pub fn linear_multivector(rng: &mut Rng, a: &LieAlgebroid, k: usize) -> LinearMultivector {
    let (n, r) = (a.base_dim(), a.rank());
    let table = |rng: &mut Rng, degree: usize| section(rng, a, degree, 1).table().clone();
    match rng.gen_range(0..3) {
        0 => {
            let fiber = (0..r).map(|_| table(rng, k)).collect();
            let mixed = (0..n).map(|_| table(rng, k - 1)).collect();
            LinearMultivector::new(&TotalChart::of(a), k, fiber, mixed).expect("consistent shapes")
        }
        choice => {
            let d = Derivation::coboundary(a, &section(rng, a, k, 1)).expect("same algebroid");
            let mut p = linear_from_derivation(&d);
            if choice == 2 {
                let mut coord: Vec<_> = (0..n).map(|j| d.delta_coord(j).clone()).collect();
                let mut frame: Vec<_> = (0..r).map(|x| d.delta_frame(x).clone()).collect();
                let x = rng.gen_range(0..n + r);
                if x < n {
                    coord[x] = coord[x].add(&table(rng, k - 1));
                } else {
                    frame[x - n] = frame[x - n].add(&table(rng, k));
                }
                let d = Derivation::new(d.total(), k, coord, frame).expect("consistent shapes");
                p = linear_from_derivation(&d);
            }
            p
        }
    }
}
