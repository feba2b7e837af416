use super::{CheckReport, LieAlgebroid, Tag, Violation};
use crate::alt::increasing_tuples;
use crate::par;
use crate::symkernel::Polynomial;

/// Verifies anchor–bracket compatibility on frame pairs and the Jacobi
/// identity on frame triples, as polynomial identities.
///
/// Anchor witnesses are `(a, b, j)`; Jacobi witnesses are `(a, b, c, e)`
/// with residual `Σ_cyc [e_a, [e_b, e_c]]^e`.
pub fn check_axioms(alg: &LieAlgebroid) -> CheckReport {
    let r = alg.rank();
    let n = alg.base_dim();
    let chart = alg.base_chart();

    let pairs = increasing_tuples(r, 2);
    let mut violations = par::flat_map(&pairs, |ab| {
        let (a, b) = (ab[0], ab[1]);
        let mut out = Vec::new();
        for j in 0..n {
            let mut res = alg.anchor_derivative(a, alg.anchor(b, j))
                - alg.anchor_derivative(b, alg.anchor(a, j));
            for c in 0..r {
                let cc = alg.structure(a, b, c);
                if !cc.is_zero() {
                    res -= &(&cc * alg.anchor(c, j));
                }
            }
            if !res.is_zero() {
                out.push(
                    Violation::new(Tag::AxiomAnchor, vec![a, b, j])
                        .with_residual(format!("d{}", chart.coord(j).name), res),
                );
            }
        }
        out
    });

    let triples = increasing_tuples(r, 3);
    violations.extend(par::flat_map(&triples, |abc| {
        let cyc = [
            (abc[0], abc[1], abc[2]),
            (abc[1], abc[2], abc[0]),
            (abc[2], abc[0], abc[1]),
        ];
        let mut out = Vec::new();
        for e in 0..r {
            let mut res = Polynomial::zero(chart);
            for &(a, b, c) in &cyc {
                // [e_a, C_bc^d e_d] = C_bc^d C_ad^e + ρ_a(C_bc^e)
                for d in 0..r {
                    let bc = alg.structure(b, c, d);
                    if !bc.is_zero() {
                        res += &(&bc * &alg.structure(a, d, e));
                    }
                }
                res += &alg.anchor_derivative(a, &alg.structure(b, c, e));
            }
            if !res.is_zero() {
                out.push(
                    Violation::new(Tag::AxiomJacobi, vec![abc[0], abc[1], abc[2], e])
                        .with_residual(alg.frame_names()[e].clone(), res),
                );
            }
        }
        out
    }));
    CheckReport::new(violations)
}
