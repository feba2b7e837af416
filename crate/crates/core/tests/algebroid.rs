use imcalc::algebroid::{
    anchor_apply, bracket_sections, check_axioms, check_morphism_to_line,
    cotangent_prolongation, morphism_residual, tangent_prolongation, FiberFunctional,
    LieAlgebroid, Section,
};
use imcalc::cartan::VectorField;
use imcalc::{fixtures, parse_poly, random, Chart, Error, Polynomial, Tag};

fn p(c: &Chart, s: &str) -> Polynomial {
    parse_poly(s, c).unwrap()
}

#[test]
fn axiom_examples() {
    for a in fixtures::passing_algebroids() {
        assert!(check_axioms(&a).passed(), "{a:?}");
    }
    let report = check_axioms(&fixtures::broken_jacobi());
    assert!(!report.passed());
    let v = &report.violations()[0];
    assert_eq!(report.violations().len(), 1);
    assert_eq!(v.tag, Tag::AxiomJacobi);
    assert_eq!(v.one_based(), vec![1, 2, 3, 1]);
    assert_eq!(v.residuals[0].1, Polynomial::one(&Chart::point()));
    assert!(matches!(
        LieAlgebroid::new("b", &Chart::point(), vec!["e1".into(), "e2".into(), "e3".into()],
            vec![vec![]; 3], fixtures::broken_jacobi().structure_entries()),
        Err(Error::AxiomFailure(_))
    ));
}

#[test]
fn jacobi_residual_matches_nested_brackets() {
    // Σ_cyc [e_a, [e_b, e_c]] computed with sections
    let a = fixtures::broken_jacobi();
    let e = |i| Section::frame(&a, i);
    let sum = e(0)
        .bracket(&e(1).bracket(&e(2)))
        .add(&e(1).bracket(&e(2).bracket(&e(0))))
        .add(&e(2).bracket(&e(0).bracket(&e(1))));
    assert_eq!(sum, e(0));
}

#[test]
fn bracket_examples() {
    let so3 = fixtures::so3();
    let e = |i| Section::frame(&so3, i);
    assert_eq!(bracket_sections(&so3, &e(0), &e(1)).unwrap(), e(2));

    let t = fixtures::tangent_r2();
    let c = t.base_chart().clone();
    let x1e2 = Section::term(&t, &[1], p(&c, "x1"));
    let e1 = Section::frame(&t, 0);
    assert_eq!(bracket_sections(&t, &e1, &x1e2).unwrap(), Section::frame(&t, 1));
    assert!(matches!(
        bracket_sections(&t, &e1, &e(0)),
        Err(Error::AlgebroidMismatch)
    ));

    let mut rng = random::rng(7);
    for _ in 0..20 {
        let a = random::algebroid(&mut rng);
        let u = random::section(&mut rng, &a, 1, 2);
        assert!(bracket_sections(&a, &u, &u).unwrap().is_zero());
    }
}

#[test]
fn anchor_examples() {
    let f3 = fixtures::koszul_so3_dual();
    let c = f3.base_chart().clone();
    // oracle: ρ(e^1) = π^{1j} ∂_j read off the bivector
    let pi = fixtures::lie_poisson_bivector("x3");
    let expected = VectorField::new(&c, (0..3).map(|j| pi.component(&[0, j])).collect());
    let got = anchor_apply(&f3, &Section::frame(&f3, 0)).unwrap();
    assert_eq!(got, expected);
    assert_eq!(
        got,
        VectorField::new(&c, vec![Polynomial::zero(&c), p(&c, "x3"), p(&c, "-x2")])
    );
    assert!(anchor_apply(&f3, &Section::zero(&f3, 1)).unwrap().is_zero());
    let t = fixtures::tangent_r2();
    assert_eq!(
        anchor_apply(&t, &Section::frame(&t, 0)).unwrap(),
        VectorField::partial(t.base_chart(), 0)
    );
}

fn line_algebroid(anchor: &str) -> LieAlgebroid {
    let c = Chart::base("R1", &["x"]).unwrap();
    LieAlgebroid::new("line", &c, vec!["e1".into()], vec![vec![p(&c, anchor)]], []).unwrap()
}

#[test]
fn tangent_prolongation_examples() {
    let a = line_algebroid("x");
    let t = tangent_prolongation(&a, 1).unwrap();
    let c = t.base_chart().clone();
    assert_eq!(c.names().collect::<Vec<_>>(), vec!["x", "x_dot1"]);
    assert_eq!(t.frame_names(), &["hat(e1,1)".to_string(), "T(e1)".to_string()]);
    assert_eq!(
        t.anchor_field(1),
        VectorField::new(&c, vec![p(&c, "x"), p(&c, "x_dot1")])
    );
    assert_eq!(
        t.anchor_field(0),
        VectorField::new(&c, vec![Polynomial::zero(&c), p(&c, "x")])
    );
    assert!(check_axioms(&t).passed());

    let so3 = fixtures::so3();
    let t2 = tangent_prolongation(&so3, 2).unwrap();
    assert_eq!(t2.rank(), 9);
    assert_eq!(t2.base_dim(), 0);
    let kind = t2.prolongation().unwrap().clone();
    for a in 0..3 {
        for b in 0..3 {
            for d in 0..3 {
                let cab = so3.structure(a, b, d).constant_value().unwrap();
                let lin = t2.structure(kind.linear_index(a), kind.linear_index(b), kind.linear_index(d));
                assert_eq!(lin.constant_value().unwrap(), cab);
                for m in 1..=2 {
                    let core = t2.structure(kind.linear_index(a), kind.core_index(b, m), kind.core_index(d, m));
                    assert_eq!(core.constant_value().unwrap(), cab);
                }
            }
        }
    }
    assert!(check_axioms(&t2).passed());

    let tl = tangent_prolongation(&fixtures::tangent(1), 1).unwrap();
    assert!(tl.structure_entries().is_empty());
    assert!(check_axioms(&tl).passed());

    assert!(matches!(tangent_prolongation(&so3, 0), Err(Error::Precondition(_))));
    assert!(matches!(
        tangent_prolongation(&fixtures::broken_jacobi(), 1),
        Err(Error::AxiomFailure(_))
    ));
}

#[test]
fn cotangent_prolongation_examples() {
    let so3 = fixtures::so3();
    let t = cotangent_prolongation(&so3, 1).unwrap();
    let c = t.base_chart().clone();
    assert_eq!(c.names().collect::<Vec<_>>(), vec!["xi1_1", "xi1_2", "xi1_3"]);
    // ρ(e_1^L) = C_1b^c ξ_c ∂/∂ξ_b
    assert_eq!(
        t.anchor_field(0),
        VectorField::new(&c, vec![Polynomial::zero(&c), p(&c, "xi1_3"), p(&c, "-xi1_2")])
    );
    assert!(check_axioms(&t).passed());

    let ab = fixtures::trivial_cotangent_r2();
    for k in 1..=3 {
        let t = cotangent_prolongation(&ab, k).unwrap();
        assert!(t.structure_entries().is_empty());
        assert!(t.anchor_matrix().iter().flatten().all(Polynomial::is_zero));
    }

    let line = cotangent_prolongation(&fixtures::tangent(1), 1).unwrap();
    let c = line.base_chart().clone();
    assert_eq!(line.frame_names(), &["hat(dx1,1)".to_string(), "L(e1)".to_string()]);
    assert_eq!(line.anchor_field(0), VectorField::partial(&c, 1));
    assert_eq!(line.anchor_field(1), VectorField::partial(&c, 0));
    assert!(line.structure_entries().is_empty());
}

#[test]
fn prolongations_of_fixtures_pass_axioms() {
    for a in fixtures::passing_algebroids() {
        for k in 1..=3 {
            let t = tangent_prolongation(&a, k).unwrap();
            assert!(check_axioms(&t).passed(), "T{k} of {}", a.name());
            let s = cotangent_prolongation(&a, k).unwrap();
            assert!(check_axioms(&s).passed(), "T*{k} of {}", a.name());
        }
    }
}

#[test]
fn prolongations_of_random_algebroids_pass_axioms() {
    let mut rng = random::rng(11);
    for i in 0..50 {
        let a = random::algebroid(&mut rng);
        let k = 1 + i % 2;
        let t = tangent_prolongation(&a, k).unwrap();
        assert!(check_axioms(&t).passed(), "{a:?}");
        let s = cotangent_prolongation(&a, k).unwrap();
        let r = check_axioms(&s);
        assert!(r.passed(), "{a:?}\n{r}");
    }
}

#[test]
fn section_bracket_satisfies_jacobi() {
    let mut rng = random::rng(12);
    for _ in 0..20 {
        let a = random::algebroid(&mut rng);
        let u = random::section(&mut rng, &a, 1, 1);
        let v = random::section(&mut rng, &a, 1, 1);
        let w = random::section(&mut rng, &a, 1, 1);
        let j = u
            .bracket(&v.bracket(&w))
            .add(&v.bracket(&w.bracket(&u)))
            .add(&w.bracket(&u.bracket(&v)));
        assert!(j.is_zero());
    }
}

#[test]
fn morphism_examples() {
    for a in fixtures::passing_algebroids() {
        let t = tangent_prolongation(&a, 1).unwrap();
        assert!(check_morphism_to_line(&t, &FiberFunctional::zero(&t)).unwrap().passed());
    }
    let a = fixtures::tangent_r2();
    let err = FiberFunctional::new(&a, [("e1".to_string(), Polynomial::zero(a.base_chart()))]);
    assert_eq!(err.unwrap_err(), Error::IncompleteFunctional("e2".into()));
}

/// The morphism residual is C^∞-bilinear, so the frame-pair verdict
/// determines it on all sections.
#[test]
fn frame_pair_sufficiency() {
    let mut rng = random::rng(13);
    let mut failing = 0;
    while failing < 20 {
        let a = random::algebroid(&mut rng);
        let c = a.base_chart().clone();
        let values = (0..a.rank()).map(|_| random::poly(&mut rng, &c, 2, 2)).collect();
        let f = FiberFunctional::from_values(&a, values).unwrap();
        let report = check_morphism_to_line(&a, &f).unwrap();
        if report.passed() {
            continue;
        }
        failing += 1;
        let u = random::section(&mut rng, &a, 1, 1);
        let v = random::section(&mut rng, &a, 1, 1);
        let direct = morphism_residual(&a, &f, &u, &v).unwrap();
        let mut via_frame = Polynomial::zero(&c);
        let (uc, vc) = (u.components(), v.components());
        for x in 0..a.rank() {
            for y in 0..a.rank() {
                let r = morphism_residual(&a, &f, &Section::frame(&a, x), &Section::frame(&a, y)).unwrap();
                via_frame += &(&(&uc[x] * &vc[y]) * &r);
            }
        }
        assert_eq!(direct, via_frame);
        for viol in report.violations() {
            let (x, y) = (viol.witness[0], viol.witness[1]);
            let g = random::poly(&mut rng, &c, 1, 2);
            let h = random::poly(&mut rng, &c, 1, 2);
            let scaled = morphism_residual(
                &a,
                &f,
                &Section::term(&a, &[x], g.clone()),
                &Section::term(&a, &[y], h.clone()),
            )
            .unwrap();
            assert_eq!(scaled, &(&g * &h) * &viol.residuals[0].1);
        }
    }
}
