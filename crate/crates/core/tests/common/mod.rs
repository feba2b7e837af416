#![allow(dead_code)]

use imcalc::alt::increasing_tuples;
use imcalc::cartan::{DifferentialForm, Multivector, VectorField};
use imcalc::{q, Chart, Polynomial, Rational};
use proptest::prelude::*;

pub fn chart(n: usize) -> Chart {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Chart::base(format!("R{n}"), &names).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Up to `max_terms` monomials of total degree ≤ `max_deg`.
pub fn poly(c: Chart, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = c.dim();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), rational()), 0..=max_terms).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(mut e, r)| {
                while e.iter().sum::<u32>() > max_deg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (e, r)
            });
            Polynomial::from_terms(&c, terms)
        },
    )
}

pub fn form(c: Chart, degree: usize, max_deg: u32) -> impl Strategy<Value = DifferentialForm> {
    let tuples = increasing_tuples(c.dim(), degree);
    let count = tuples.len();
    let c2 = c.clone();
    prop::collection::vec(poly(c, max_deg, 2), count).prop_map(move |coeffs| {
        let mut f = DifferentialForm::zero(&c2, degree);
        for (idx, p) in tuples.iter().zip(coeffs) {
            f.add_term(idx, p);
        }
        f
    })
}

pub fn vector_field(c: Chart, max_deg: u32) -> impl Strategy<Value = VectorField> {
    let c2 = c.clone();
    prop::collection::vec(poly(c.clone(), max_deg, 2), c.dim()).prop_map(move |v| VectorField::new(&c2, v))
}

pub fn multivector(c: Chart, degree: usize, max_deg: u32) -> impl Strategy<Value = Multivector> {
    let tuples = increasing_tuples(c.dim(), degree);
    let count = tuples.len();
    let c2 = c.clone();
    prop::collection::vec(poly(c, max_deg, 2), count).prop_map(move |coeffs| {
        let mut m = Multivector::zero(&c2, degree);
        for (idx, p) in tuples.iter().zip(coeffs) {
            m.add_term(idx, p);
        }
        m
    })
}
