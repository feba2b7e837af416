//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//! Every check is exact; the time budgets are wall-clock limits.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use imcalc::algebroid::{check_axioms, cotangent_prolongation, tangent_prolongation, LieAlgebroid};
use imcalc::alt::increasing_tuples;
use imcalc::cartan::{identities, DifferentialForm, VectorField};
use imcalc::imforms::{check_im_form, oracle_equivalence, IMForm};
use imcalc::linforms::{
    alpha_t_sides_at, decompose, lambda_mu, linear_form, tangent_lift, BundleForms, TotalChart,
};
use imcalc::multivec::{oracle_equivalence_dual, LinearMultivector};
use imcalc::weil::{dv_mu, psi, triple_agreement};
use imcalc::{fixtures, random, Chart, Coordinate, Error, Polynomial, Role, Tag};
use rand::Rng;

type Verdict = (bool, String);

struct Criterion {
    number: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> Verdict,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "Cartan identity suite", budget: Duration::from_secs(10), run: cartan_identities },
    Criterion { number: 2, title: "algebroid axioms", budget: Duration::from_secs(1), run: algebroid_axioms },
    Criterion { number: 3, title: "prolongation closure", budget: Duration::from_secs(5), run: prolongation_closure },
    Criterion { number: 4, title: "IM / morphism oracle", budget: Duration::from_secs(60), run: im_oracle },
    Criterion { number: 5, title: "Poisson equivalence chain", budget: Duration::from_secs(5), run: poisson_chain },
    Criterion { number: 6, title: "decomposition roundtrip", budget: Duration::from_secs(5), run: decomposition },
    Criterion { number: 7, title: "tangent-lift laws", budget: Duration::from_secs(10), run: tangent_lift_laws },
    Criterion { number: 8, title: "derivation / morphism oracle", budget: Duration::from_secs(60), run: dual_oracle },
    Criterion { number: 9, title: "Weil triple agreement", budget: Duration::from_secs(30), run: weil_agreement },
    Criterion { number: 10, title: "CLI determinism", budget: Duration::from_secs(5), run: cli_determinism },
];

fn main() {
    println!(
        "acceptance ({} build)",
        if imcalc::par::is_parallel() { "parallel" } else { "sequential" }
    );
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let (ok, detail) = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let pass = ok && elapsed <= c.budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {}: {} [{:.2}s of {}s]",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn chart(n: usize) -> Chart {
    Chart::base(format!("R{n}"), &(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>()).unwrap()
}

/// Nonzero, of degree at most 2.
fn dense_poly(rng: &mut random::Rng, c: &Chart) -> Polynomial {
    loop {
        let p = random::poly(rng, c, 2, 3);
        if !p.is_zero() {
            return p;
        }
    }
}

fn cartan_identities() -> Verdict {
    let mut rng = random::rng(1001);
    let (mut held, mut nonzero, mut total) = ([0; 3], [0; 3], 0);
    for _ in 0..100 {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(m..=3);
        let c = chart(rng.gen_range((k + 1).min(4)..=4));
        let mut alpha = DifferentialForm::zero(&c, k);
        for idx in increasing_tuples(c.dim(), k) {
            alpha.add_term(&idx, dense_poly(&mut rng, &c));
        }
        let field = |rng: &mut random::Rng| VectorField::new(&c, (0..c.dim()).map(|_| dense_poly(rng, &c)).collect());
        let u: Vec<_> = (0..m).map(|_| field(&mut rng)).collect();
        let x = field(&mut rng);
        let f = dense_poly(&mut rng, &c);
        let sides = [
            identities::cartan(&u, &alpha),
            identities::lie_commutator(&x, &u, &alpha),
            identities::differential_wedge(&u, &f, &alpha),
        ];
        for (i, (lhs, rhs)) in sides.iter().enumerate() {
            held[i] += usize::from(lhs.sub(rhs).is_zero());
            nonzero[i] += usize::from(!lhs.is_zero());
        }
        total += 1;
    }
    (
        held.iter().all(|&h| h == total),
        format!(
            "cartan {}/{total}, LX {}/{total}, alpha {}/{total} exact (nonzero sides {}, {}, {})",
            held[0], held[1], held[2], nonzero[0], nonzero[1], nonzero[2]
        ),
    )
}

fn algebroid_axioms() -> Verdict {
    let passing = fixtures::passing_algebroids();
    let ok = passing.iter().filter(|a| check_axioms(a).passed()).count();
    let report = check_axioms(&fixtures::broken_jacobi());
    let witness_ok = match report.violations() {
        [v] => {
            v.tag == Tag::AxiomJacobi
                && v.one_based() == [1, 2, 3, 1]
                && v.residuals.len() == 1
                && v.residuals[0].1 == Polynomial::one(&Chart::point())
        }
        _ => false,
    };
    (
        ok == passing.len() && witness_ok,
        format!("F1-F4 {ok}/{} pass, F5 Jacobi witness (1,2,3,e=1) residual 1: {witness_ok}", passing.len()),
    )
}

fn prolongation_closure() -> Verdict {
    let (mut ok, mut total) = (0, 0);
    for a in fixtures::passing_algebroids() {
        for k in 1..=3 {
            for t in [tangent_prolongation(&a, k), cotangent_prolongation(&a, k)] {
                total += 1;
                ok += usize::from(t.map(|t| check_axioms(&t).passed()).unwrap_or(false));
            }
        }
    }
    (ok == total, format!("{ok}/{total} prolongations pass check_axioms"))
}

fn oracle_pair(result: imcalc::Result<(bool, bool)>) -> Option<(bool, bool)> {
    match result {
        Ok(p) => Some(p),
        Err(Error::OracleDisagreement(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn im_oracle() -> Verdict {
    let mut fixed_ok = fixtures::passing_im_forms()
        .iter()
        .all(|im| oracle_pair(oracle_equivalence(im)) == Some((true, true)));
    fixed_ok &= oracle_pair(oracle_equivalence(&fixtures::im_perturbed_so3_dual())) == Some((false, false));

    let mut rng = random::rng(1004);
    let algs = fixtures::passing_algebroids();
    let (mut disagree, mut pass) = (0, 0);
    for i in 0..50 {
        let im = random::im_candidate(&mut rng, &algs[i % 4], 1 + (i / 4) % 3);
        match oracle_pair(oracle_equivalence(&im)) {
            Some((x, y)) if x == y => pass += usize::from(x),
            _ => disagree += 1,
        }
    }
    (
        fixed_ok && disagree == 0,
        format!("F4/F6/F7 true and F8 false: {fixed_ok}; random 50 ({pass} IM), disagreements {disagree}"),
    )
}

fn poisson_chain() -> Verdict {
    let f6 = fixtures::im_koszul_so3_dual();
    let pi = fixtures::lie_poisson_bivector("x3");
    let mut ok = check_im_form(&f6).passed() && pi.schouten(&pi).is_zero();
    let mut parts = vec![format!("F6 IM and [pi,pi]=0: {ok}")];
    for (a12, expected) in [("x3", true), ("x3^2", true), ("x1*x3", false)] {
        let pi = fixtures::lie_poisson_bivector(a12);
        let a = fixtures::koszul_unchecked("koszul", &pi).unwrap();
        let c = a.base_chart().clone();
        let mu = (0..3).map(|i| DifferentialForm::dx(&c, i)).collect();
        let im = IMForm::new(&a, BundleForms::new(2, mu, vec![DifferentialForm::zero(&c, 2); 3]).unwrap()).unwrap();
        let im_ok = check_axioms(&a).passed() && check_im_form(&im).passed();
        let poisson = pi.schouten(&pi).is_zero();
        ok &= im_ok == poisson && poisson == expected;
        parts.push(format!("pi12={a12}: IM {im_ok}, Poisson {poisson}"));
    }
    (ok, parts.join("; "))
}

fn cotangent_chart(base: &Chart) -> Chart {
    let mut coords = base.coords().to_vec();
    for i in 1..=base.dim() {
        coords.push(Coordinate::new(format!("p{i}"), Role::Fiber));
    }
    Chart::new("T*M", coords).unwrap()
}

fn decomposition() -> Verdict {
    let mut rng = random::rng(1006);
    let mut roundtrips = 0;
    for i in 0..100 {
        let base = chart(1 + i % 3);
        let r = 1 + (i / 3) % 2;
        let k = 1 + (i / 6) % 3;
        let total = TotalChart::new(&base, &(1..=r).map(|i| format!("e{i}")).collect::<Vec<_>>()).unwrap();
        let mu = random::forms(&mut rng, &base, r, k - 1, 2);
        let nu = random::forms(&mut rng, &base, r, k, 2);
        let l = lambda_mu(&mu, &total).unwrap().d().add(&lambda_mu(&nu, &total).unwrap());
        let forms = BundleForms::new(k, mu, nu).unwrap();
        roundtrips += usize::from(decompose(&l, &total, k).ok() == Some(forms));
    }

    let mut taut = 0;
    for i in 0..20 {
        let n = 1 + i % 3;
        let base = chart(n);
        let r = 1 + i % 2;
        let total = TotalChart::new(&base, &(1..=r).map(|i| format!("e{i}")).collect::<Vec<_>>()).unwrap();
        let mu = random::forms(&mut rng, &base, r, 1, 2);
        let cot = cotangent_chart(&base);
        let mut theta = DifferentialForm::zero(&cot, 1);
        for j in 0..n {
            theta.add_term(&[j], Polynomial::var(&cot, n + j));
        }
        let tc = total.chart();
        let mut images: Vec<Polynomial> = (0..n).map(|j| Polynomial::var(tc, j)).collect();
        for j in 0..n {
            let mut p = Polynomial::zero(tc);
            for (d, m) in mu.iter().enumerate() {
                p += &(&m.coeff(&[j]).embed(tc).unwrap() * &total.fiber(d));
            }
            images.push(p);
        }
        taut += usize::from(lambda_mu(&mu, &total).unwrap() == theta.pullback(&images, tc));
    }
    (
        roundtrips == 100 && taut == 20,
        format!("decompose(dL_mu + L_nu) = (mu, nu) {roundtrips}/100; L_mu = mu*theta_can {taut}/20"),
    )
}

fn tangent_lift_laws() -> Verdict {
    let mut rng = random::rng(1007);
    let (mut commute, mut sampled, mut points) = (0, 0, 0);
    for i in 0..100 {
        let n = 1 + i % 3;
        let k = (i / 3) % 3;
        let alpha = random::form(&mut rng, &chart(n), k, 2);
        commute += usize::from(tangent_lift(&alpha.d()) == tangent_lift(&alpha).d());
        let mut all = true;
        for _ in 0..20 {
            let x = random::point(&mut rng, n);
            let xd = random::point(&mut rng, n);
            let dx: Vec<_> = (0..k).map(|_| random::point(&mut rng, n)).collect();
            let dxd: Vec<_> = (0..k).map(|_| random::point(&mut rng, n)).collect();
            let (a, b) = alpha_t_sides_at(&alpha, &x, &xd, &dx, &dxd);
            all &= a == b;
            points += 1;
        }
        sampled += usize::from(all);
    }
    (
        commute == 100 && sampled == 100,
        format!("(d alpha)_T = d(alpha_T) {commute}/100; alpha_T sampling {sampled}/100 cases ({points} points)"),
    )
}

fn dual_oracle() -> Verdict {
    let so3 = fixtures::so3();
    let zero = LinearMultivector::zero(&TotalChart::of(&so3), 2).unwrap();
    let fixed_ok = oracle_pair(oracle_equivalence_dual(&fixtures::so3_coboundary_multivector(), &so3, 2))
        == Some((true, true))
        && oracle_pair(oracle_equivalence_dual(&fixtures::so3_non_cocycle_multivector(), &so3, 2))
            == Some((false, false))
        && oracle_pair(oracle_equivalence_dual(&zero, &so3, 2)) == Some((true, true));

    let mut rng = random::rng(1008);
    let algs = [fixtures::so3(), fixtures::tangent_r2(), fixtures::koszul_so3_dual()];
    let (mut disagree, mut pass) = (0, 0);
    for i in 0..50 {
        let a = &algs[i % 3];
        let k = 1 + (i / 3) % 3;
        let p = random::linear_multivector(&mut rng, a, k);
        match oracle_pair(oracle_equivalence_dual(&p, a, k)) {
            Some((x, y)) if x == y => pass += usize::from(x),
            _ => disagree += 1,
        }
    }
    (
        fixed_ok && disagree == 0,
        format!("coboundary true, non-cocycle false, zero true: {fixed_ok}; random 50 ({pass} pass), disagreements {disagree}"),
    )
}

fn triple(l: &DifferentialForm, a: &LieAlgebroid) -> Option<(bool, bool, bool)> {
    match triple_agreement(l, a) {
        Ok(t) => Some(t),
        Err(Error::OracleDisagreement(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn weil_agreement() -> Verdict {
    let linear = |im: &IMForm| linear_form(im.forms(), &TotalChart::of(im.algebroid())).unwrap();
    let mut fixed_ok = fixtures::passing_im_forms()
        .iter()
        .all(|im| triple(&linear(im), im.algebroid()) == Some((true, true, true)));
    let f8 = fixtures::im_perturbed_so3_dual();
    fixed_ok &= triple(&linear(&f8), f8.algebroid()) == Some((false, false, false));

    let mut rng = random::rng(1009);
    let algs = fixtures::passing_algebroids();
    let (mut disagree, mut differential) = (0, 0);
    for i in 0..50 {
        let a = &algs[i % 4];
        let k = 1 + (i / 4) % 3;
        let l = linear(&random::im_candidate(&mut rng, a, k));
        match triple(&l, a) {
            Some((x, y, z)) if x == y && y == z => {}
            _ => disagree += 1,
        }
        let l = linear_form(&random::bundle_forms(&mut rng, a, k), &TotalChart::of(a)).unwrap();
        let w = psi(&l, a).unwrap();
        let nu: Vec<_> = (0..a.rank()).map(|x| w.comp0(x).add(&w.comp1(x).d())).collect();
        differential += usize::from(psi(&l.d(), a).unwrap() == dv_mu(&nu, a).unwrap().neg());
    }
    (
        fixed_ok && disagree == 0 && differential == 50,
        format!(
            "fixtures: {fixed_ok}; random 50 disagreements {disagree}; psi(dL) = -d^v psi(L) {differential}/50"
        ),
    )
}

const CORPUS: [(&str, i32); 9] = [
    ("so3_dual_poisson.json", 0),
    ("so3_dual_perturbed.json", 1),
    ("malformed_expression.json", 2),
    ("malformed_json.json", 2),
    ("so3_coboundary.json", 0),
    ("so3_non_cocycle.json", 1),
    ("so3_dual_weil.json", 0),
    ("broken_jacobi.json", 1),
    ("tangent_r2.json", 0),
];

fn cli_determinism() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures");
    let on_disk = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
        .count();
    let (mut identical, mut codes, mut threes) = (0, 0, 0);
    for (name, expected) in CORPUS {
        let path = dir.join(name);
        let args = ["imcalc", "verify", "--input", path.to_str().unwrap()];
        let first = imcalc_cli::run(args);
        let second = imcalc_cli::run(args);
        identical += usize::from(first == second);
        codes += usize::from(first.code == expected);
        threes += usize::from(first.code == 3 || second.code == 3);
    }
    let n = CORPUS.len();
    (
        on_disk == n && identical == n && codes == n && threes == 0,
        format!("{n} documents: byte-identical {identical}/{n}, documented exit codes {codes}/{n}, exit 3 seen {threes}"),
    )
}
