use imcalc::algebroid::{LieAlgebroid, Section};
use imcalc::alt::AltTable;
use imcalc::cartan::Multivector;
use imcalc::linforms::TotalChart;
use imcalc::multivec::{
    algebroid_schouten, check_gerstenhaber_derivation, derivation_from_linear,
    is_linear_multivector, linear_from_derivation, multivector_bar_direct,
    multivector_bar_on_frame, oracle_equivalence_dual, Derivation, LinearMultivector,
};
use imcalc::{fixtures, parse_poly, random, Chart, Polynomial, Tag};

fn p(c: &Chart, s: &str) -> Polynomial {
    parse_poly(s, c).unwrap()
}

fn mv(total: &TotalChart, terms: &[(&[&str], &str)]) -> Multivector {
    let c = total.chart();
    let degree = terms[0].0.len();
    let mut out = Multivector::zero(c, degree);
    for (names, coeff) in terms {
        let idx: Vec<usize> = names.iter().map(|n| c.index_of(n).unwrap()).collect();
        out.add_term(&idx, p(c, coeff));
    }
    out
}

fn wedge_sign(p: usize, q: usize) -> bool {
    (p * q) % 2 == 1
}

fn odd(n: usize) -> bool {
    n % 2 == 1
}

#[test]
fn linear_shape_examples() {
    let a = fixtures::koszul_so3_dual();
    let total = TotalChart::of(&a);
    assert!(is_linear_multivector(&mv(&total, &[(&["u2", "u3"], "u1")]), &total, 2));
    assert!(is_linear_multivector(&mv(&total, &[(&["u1", "x1"], "x2 + 3")]), &total, 2));
    assert!(!is_linear_multivector(&mv(&total, &[(&["u1", "u2"], "u1^2")]), &total, 2));
    assert!(!is_linear_multivector(&mv(&total, &[(&["u1", "x1"], "u2")]), &total, 2));
    assert!(!is_linear_multivector(&mv(&total, &[(&["x1", "x2"], "1")]), &total, 2));
    assert!(!is_linear_multivector(&mv(&total, &[(&["u1", "u2"], "1")]), &total, 2));
    assert!(!is_linear_multivector(&mv(&total, &[(&["u2", "u3"], "u1")]), &total, 3));

    // ∂u1∧∂x1 = −∂x1∧∂u1, stored with the mixed sign convention
    let q = LinearMultivector::from_multivector(&mv(&total, &[(&["u1", "x1"], "1")]), &total, 2).unwrap();
    assert_eq!(q.mixed(0).get(&[0]), Polynomial::one(a.base_chart()));
    assert!(q.fiber(0).is_zero());
}

#[test]
fn derivation_correspondence_examples() {
    let a = fixtures::so3();
    let total = TotalChart::of(&a);
    let c = a.base_chart().clone();
    let zero = LinearMultivector::zero(&total, 2).unwrap();
    assert_eq!(derivation_from_linear(&zero), Derivation::zero(&a, 2).unwrap());

    let p1 = LinearMultivector::from_multivector(&mv(&total, &[(&["u2", "u3"], "u1")]), &total, 2).unwrap();
    let d = derivation_from_linear(&p1);
    assert_eq!(*d.delta_frame(0), AltTable::monomial(&c, 3, &[1, 2], p(&c, "-1")));
    assert!(d.delta_frame(1).is_zero() && d.delta_frame(2).is_zero());

    // an antisymmetric table entry π_1^{23} = 2 scales δe1 accordingly
    let p2 = LinearMultivector::from_multivector(&mv(&total, &[(&["u2", "u3"], "2*u1")]), &total, 2).unwrap();
    let d2 = derivation_from_linear(&p2);
    assert_eq!(*d2.delta_frame(0), AltTable::monomial(&c, 3, &[1, 2], p(&c, "-2")));
}

#[test]
fn correspondence_roundtrips() {
    let mut rng = random::rng(71);
    let algebroids = [fixtures::so3(), fixtures::tangent_r2(), fixtures::koszul_so3_dual()];
    for i in 0..50 {
        let a = &algebroids[i % 3];
        let k = 1 + i % 3;
        let pm = random::linear_multivector(&mut rng, a, k);
        let d = derivation_from_linear(&pm);
        assert_eq!(linear_from_derivation(&d), pm);
        assert_eq!(derivation_from_linear(&linear_from_derivation(&d)), d);
        let big = pm.to_multivector();
        assert!(is_linear_multivector(&big, pm.total(), k));
        assert_eq!(LinearMultivector::from_multivector(&big, pm.total(), k).unwrap(), pm);
    }
}

#[test]
fn schouten_examples() {
    let a = fixtures::so3();
    let e = |i| Section::frame(&a, i);
    let e23 = e(1).wedge(&e(2));
    assert!(algebroid_schouten(&a, &e(0), &e23).unwrap().is_zero());
    let brute = e(0).bracket(&e(1)).wedge(&e(2)).add(&e(1).wedge(&e(0).bracket(&e(2))));
    assert_eq!(algebroid_schouten(&a, &e(0), &e23).unwrap(), brute);

    let k = fixtures::koszul_so3_dual();
    let c = k.base_chart().clone();
    let f = p(&c, "x1*x2 + x3^2");
    let u = Section::new(&k, vec![p(&c, "x2"), p(&c, "1"), p(&c, "x1")]);
    let expected = imcalc::algebroid::anchor_apply(&k, &u).unwrap().apply(&f);
    let got = algebroid_schouten(&k, &u, &Section::function(&k, f)).unwrap();
    assert_eq!(got.as_function(), expected);
    assert!(algebroid_schouten(&k, &u, &Section::frame(&a, 0)).is_err());
}

fn random_algebroids(rng: &mut random::Rng) -> Vec<LieAlgebroid> {
    let mut out = vec![fixtures::so3(), fixtures::tangent_r2(), fixtures::koszul_so3_dual()];
    out.extend((0..3).map(|_| random::algebroid(rng)));
    out
}

#[test]
fn schouten_graded_antisymmetry_and_jacobi() {
    let mut rng = random::rng(72);
    for a in random_algebroids(&mut rng) {
        for _ in 0..4 {
            let (pd, qd, rd) = (rng_deg(&mut rng), rng_deg(&mut rng), rng_deg(&mut rng));
            let u = random::section(&mut rng, &a, pd, 1);
            let v = random::section(&mut rng, &a, qd, 1);
            let w = random::section(&mut rng, &a, rd, 1);
            let uv = u.bracket(&v);
            let vu = v.bracket(&u);
            let flip = odd((pd + 1) * (qd + 1));
            assert_eq!(uv, if flip { vu } else { vu.neg() }, "antisymmetry ({pd},{qd})");
            if [pd, qd, rd].iter().filter(|&&d| d == 0).count() <= 1 {
                let lhs = u.bracket(&v.bracket(&w));
                let t2 = v.bracket(&u.bracket(&w));
                let rhs = uv.bracket(&w).add(&if flip { t2.neg() } else { t2 });
                assert_eq!(lhs, rhs, "Jacobi ({pd},{qd},{rd}) on {}", a.name());
            }
        }
    }
}

fn rng_deg(rng: &mut random::Rng) -> usize {
    use rand::Rng;
    rng.gen_range(0..=2)
}

#[test]
fn derivation_checker_examples() {
    let a = fixtures::so3();
    assert!(check_gerstenhaber_derivation(&a, &Derivation::zero(&a, 2).unwrap()).unwrap().passed());
    let cob = derivation_from_linear(&fixtures::so3_coboundary_multivector());
    assert!(check_gerstenhaber_derivation(&a, &cob).unwrap().passed());

    let bad = derivation_from_linear(&fixtures::so3_non_cocycle_multivector());
    let report = check_gerstenhaber_derivation(&a, &bad).unwrap();
    assert!(!report.passed());
    assert!(report.with_tag(Tag::R3).any(|v| v.witness == vec![0, 1]));

    let f3 = fixtures::koszul_so3_dual();
    assert!(check_gerstenhaber_derivation(&f3, &cob).is_err());
}

/// `δ[u,v] = [δu,v] + (−1)^{(p−1)(k−1)}[u,δv]` and the wedge rule on
/// random sections.
fn full_derivation_property(a: &LieAlgebroid, d: &Derivation, rng: &mut random::Rng) -> bool {
    let k = d.k();
    for _ in 0..3 {
        let (pd, qd) = (rng_deg(rng), rng_deg(rng));
        if pd + qd == 0 {
            continue;
        }
        let u = random::section(rng, a, pd, 1);
        let v = random::section(rng, a, qd, 1);
        let du = d.apply(a, &u).unwrap();
        let dv = d.apply(a, &v).unwrap();
        let t = u.bracket(&dv);
        let bracket_rhs = du.bracket(&v).add(&if odd((pd + 1) * (k + 1)) { t.neg() } else { t });
        if d.apply(a, &u.bracket(&v)).unwrap() != bracket_rhs {
            return false;
        }
        let t = u.wedge(&dv);
        let wedge_rhs = du.wedge(&v).add(&if wedge_sign(pd, k + 1) { t.neg() } else { t });
        assert_eq!(d.apply(a, &u.wedge(&v)).unwrap(), wedge_rhs, "wedge rule holds by construction");
    }
    true
}

#[test]
fn passing_derivations_satisfy_the_full_property() {
    let mut rng = random::rng(73);
    let mut passing = 0;
    for a in random_algebroids(&mut rng) {
        for k in 1..=3 {
            for _ in 0..3 {
                let pm = random::linear_multivector(&mut rng, &a, k);
                let d = derivation_from_linear(&pm);
                if check_gerstenhaber_derivation(&a, &d).unwrap().passed() {
                    passing += 1;
                    assert!(full_derivation_property(&a, &d, &mut rng), "{} k={k}", a.name());
                }
            }
        }
    }
    assert!(passing >= 10, "only {passing} passing derivations sampled");
}

/// For k = 1: `δ[u,v] = [δu,v] + [u,δv]` and
/// `δ(ρ(u)f) = ρ(δu)f + ρ(u)(δf)` with `δf = X(f)`, `X = δx^j ∂_j`.
fn is_algebroid_derivation(a: &LieAlgebroid, d: &Derivation, rng: &mut random::Rng) -> bool {
    let c = a.base_chart();
    let x_of = |f: &Polynomial| {
        let mut acc = Polynomial::zero(c);
        for j in 0..a.base_dim() {
            acc += &(&d.delta_coord(j).get(&[]) * &f.diff(j));
        }
        acc
    };
    let du = |u: &Section| {
        let mut out = Section::zero(a, 1);
        for (i, ui) in u.components().iter().enumerate() {
            out = out.add(&Section::from_table(a, d.delta_frame(i).clone()).scale(ui));
            out = out.add(&Section::frame(a, i).scale(&x_of(ui)));
        }
        out
    };
    let anchor = |u: &Section, f: &Polynomial| imcalc::algebroid::anchor_apply(a, u).unwrap().apply(f);
    let (n, r) = (a.base_dim(), a.rank());
    let mut sections: Vec<Section> = (0..r).map(|i| Section::frame(a, i)).collect();
    for i in 0..r {
        for j in 0..n {
            sections.push(Section::frame(a, i).scale(&Polynomial::var(c, j)));
        }
    }
    let mut functions: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(c, j)).collect();
    for j in 0..n {
        for l in j..n {
            functions.push(&Polynomial::var(c, j) * &Polynomial::var(c, l));
        }
    }
    for _ in 0..3 {
        sections.push(random::section(rng, a, 1, 2));
        functions.push(random::poly(rng, c, 2, 3));
    }
    let bracket_ok = sections.iter().all(|u| {
        sections
            .iter()
            .all(|v| du(&u.bracket(v)) == du(u).bracket(v).add(&u.bracket(&du(v))))
    });
    let anchor_ok = sections.iter().all(|u| {
        functions
            .iter()
            .all(|f| x_of(&anchor(u, f)) == &anchor(&du(u), f) + &anchor(u, &x_of(f)))
    });
    bracket_ok && anchor_ok
}

#[test]
fn k1_checker_matches_algebroid_derivations() {
    let mut rng = random::rng(74);
    let (mut pass, mut fail) = (0, 0);
    for a in random_algebroids(&mut rng) {
        for _ in 0..6 {
            let pm = random::linear_multivector(&mut rng, &a, 1);
            let d = derivation_from_linear(&pm);
            let checked = check_gerstenhaber_derivation(&a, &d).unwrap().passed();
            let direct = is_algebroid_derivation(&a, &d, &mut rng);
            assert_eq!(checked, direct, "{}", a.name());
            if checked {
                pass += 1;
            } else {
                fail += 1;
            }
        }
    }
    assert!(pass > 0 && fail > 0);
}

#[test]
fn multivector_bar_examples() {
    let a = fixtures::so3();
    let total = TotalChart::of(&a);
    let zero = LinearMultivector::zero(&total, 2).unwrap();
    assert!(multivector_bar_on_frame(&zero, &a, 2).unwrap().values().iter().all(Polynomial::is_zero));

    // δe1 = −e2∧e3
    let pm = LinearMultivector::from_multivector(&mv(&total, &[(&["u2", "u3"], "u1")]), &total, 2).unwrap();
    let bar = multivector_bar_on_frame(&pm, &a, 2).unwrap();
    let c = bar.algebroid().base_chart().clone();
    assert_eq!(bar.values().len(), 3, "point base has no core sections");
    assert_eq!(bar.values()[0], p(&c, "xi1_2*xi2_3 - xi1_3*xi2_2"));
    assert!(bar.values()[1].is_zero() && bar.values()[2].is_zero());
    assert_eq!(multivector_bar_direct(&pm, &a, 2).unwrap(), bar);
}

#[test]
fn multivector_bar_routes_agree() {
    let mut rng = random::rng(75);
    for a in random_algebroids(&mut rng) {
        for k in 1..=3 {
            for _ in 0..2 {
                let pm = random::linear_multivector(&mut rng, &a, k);
                assert_eq!(
                    multivector_bar_on_frame(&pm, &a, k).unwrap(),
                    multivector_bar_direct(&pm, &a, k).unwrap(),
                    "{} k={k}",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn dual_oracle_on_fixtures() {
    let a = fixtures::so3();
    let total = TotalChart::of(&a);
    assert_eq!(oracle_equivalence_dual(&fixtures::so3_coboundary_multivector(), &a, 2).unwrap(), (true, true));
    assert_eq!(oracle_equivalence_dual(&fixtures::so3_non_cocycle_multivector(), &a, 2).unwrap(), (false, false));
    for k in 1..=3 {
        assert_eq!(oracle_equivalence_dual(&LinearMultivector::zero(&total, k).unwrap(), &a, k).unwrap(), (true, true));
    }
    assert!(oracle_equivalence_dual(&fixtures::so3_coboundary_multivector(), &a, 3).is_err());
}

#[test]
fn dual_oracle_on_random_multivectors() {
    let mut rng = random::rng(76);
    let algebroids = [fixtures::so3(), fixtures::tangent_r2(), fixtures::koszul_so3_dual()];
    let (mut pass, mut fail) = (0, 0);
    for i in 0..50 {
        let a = &algebroids[i % 3];
        let k = 1 + (i / 3) % 3;
        let pm = random::linear_multivector(&mut rng, a, k);
        let (der, morph) = oracle_equivalence_dual(&pm, a, k).unwrap();
        assert_eq!(der, morph);
        if der {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    assert!(pass > 5 && fail > 5, "pass {pass}, fail {fail}");
}
