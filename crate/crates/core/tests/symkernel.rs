mod common;

use std::collections::HashMap;

use imcalc::linalg;
use imcalc::{parse_poly, q, Error, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;

use common::{chart, poly, rational};

#[test]
fn parse_examples() {
    let c = chart(2);
    let p = parse_poly("x1^2*x2 - 1/2", &c).unwrap();
    let expected = Polynomial::from_terms(&c, [(vec![2, 1], q(1, 1)), (vec![0, 0], q(-1, 2))]);
    assert_eq!(p, expected);
    assert_eq!(p.num_terms(), 2);
    assert!(parse_poly("0", &c).unwrap().terms().is_empty());
    assert!(matches!(parse_poly("x3", &c), Err(Error::UnknownCoordinate(n)) if n == "x3"));
    assert!(matches!(parse_poly("x1^^2", &c), Err(Error::Syntax { offset: 3, .. })));
}

#[test]
fn diff_and_eval_examples() {
    let c = chart(3);
    let p = |s: &str| parse_poly(s, &c).unwrap();
    assert_eq!(p("x1^2*x2").diff_by_name("x1").unwrap(), p("2*x1*x2"));
    assert!(p("x1").diff_by_name("x2").unwrap().is_zero());
    assert_eq!(p("x1*x2*x3 + x3^2").diff_by_name("x3").unwrap(), p("x1*x2 + 2*x3"));
    assert!(p("x1").diff_by_name("y").is_err());

    let point: HashMap<String, Rational> =
        [("x1", q(2, 1)), ("x2", q(3, 1)), ("x3", q(0, 1))].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    assert_eq!(p("x1^2*x2").eval(&point).unwrap(), q(12, 1));
    assert_eq!(Polynomial::zero(&c).eval(&point).unwrap(), q(0, 1));
    let half: HashMap<String, Rational> =
        [("x1", q(1, 2)), ("x2", q(0, 1)), ("x3", q(0, 1))].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    assert!(p("x1 - 1/2").eval(&half).unwrap().is_zero());
    let partial: HashMap<String, Rational> = [("x1".to_string(), q(1, 1))].into_iter().collect();
    assert!(matches!(p("x2").eval(&partial), Err(Error::MissingAssignment(_))));
}

#[test]
fn rationals_are_reduced() {
    let r = q(6, -4);
    assert_eq!(r, q(-3, 2));
    assert_eq!(r.denom().to_string(), "2");
    assert_eq!(r.numer().to_string(), "-3");
}

/// `g'(0)` for `g(t) = p(x + t e_i)`, from exact values at `t = −m…m` by
/// solving the Vandermonde system of the interpolating polynomial.
fn difference_quotient(p: &Polynomial, point: &[Rational], i: usize) -> Rational {
    let m = p.degree_in(i).max(1) as i64;
    let ts: Vec<i64> = (-m..=m).collect();
    let values: Vec<Rational> = ts
        .iter()
        .map(|&t| {
            let mut x = point.to_vec();
            x[i] += q(t, 1);
            p.eval_at(&x)
        })
        .collect();
    let vandermonde: linalg::Matrix = ts
        .iter()
        .map(|&t| (0..ts.len() as u32).map(|e| q(t.pow(e), 1)).collect())
        .collect();
    linalg::solve(&vandermonde, &values).expect("distinct nodes")[1].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in poly(chart(3), 3, 4), b in poly(chart(3), 3, 4), c in poly(chart(3), 3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&chart(3)), a.clone());
    }

    #[test]
    fn partials_commute(p in poly(chart(3), 4, 5), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(p.diff(i).diff(j), p.diff(j).diff(i));
    }

    #[test]
    fn derivative_matches_difference_quotient(
        p in poly(chart(3), 4, 5),
        point in prop::collection::vec(rational(), 3),
        i in 0usize..3,
    ) {
        prop_assert_eq!(p.diff(i).eval_at(&point), difference_quotient(&p, &point, i));
    }

    #[test]
    fn parse_print_parse_is_a_fixed_point(p in poly(chart(3), 3, 5)) {
        let printed = p.to_string();
        let reparsed = parse_poly(&printed, &chart(3)).unwrap();
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(
        a in poly(chart(3), 3, 4),
        b in poly(chart(3), 3, 4),
        point in prop::collection::vec(rational(), 3),
    ) {
        prop_assert_eq!((&a * &b).eval_at(&point), a.eval_at(&point) * b.eval_at(&point));
        prop_assert_eq!((&a + &b).eval_at(&point), a.eval_at(&point) + b.eval_at(&point));
    }
}
