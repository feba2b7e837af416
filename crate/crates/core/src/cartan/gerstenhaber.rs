//! The graded bracket on wedge powers of a frame, determined by the frame
//! brackets and the anchor action on functions. With the coordinate frame
//! of a chart this is the Schouten–Nijenhuis bracket; with a Lie algebroid
//! frame it is the Gerstenhaber bracket on `Γ(∧•A)`.

use crate::alt::AltTable;
use crate::symkernel::{Chart, Polynomial};

/// Structure data of a local frame `e_1, …, e_r` over a chart.
pub trait FrameStructure {
    fn chart(&self) -> &Chart;
    fn rank(&self) -> usize;
    /// Nonzero coefficients of `[e_a, e_b]`, as `(c, C_ab^c)`.
    fn frame_bracket(&self, a: usize, b: usize) -> Vec<(usize, Polynomial)>;
    /// `ρ(e_a)(f)`.
    fn anchor_derivative(&self, a: usize, f: &Polynomial) -> Polynomial;
}

/// The coordinate frame `∂_1, …, ∂_n` of a chart.
pub struct CoordinateFrame {
    chart: Chart,
}

impl CoordinateFrame {
    pub fn new(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
        }
    }
}

impl FrameStructure for CoordinateFrame {
    fn chart(&self) -> &Chart {
        &self.chart
    }

    fn rank(&self) -> usize {
        self.chart.dim()
    }

    fn frame_bracket(&self, _: usize, _: usize) -> Vec<(usize, Polynomial)> {
        Vec::new()
    }

    fn anchor_derivative(&self, a: usize, f: &Polynomial) -> Polynomial {
        f.diff(a)
    }
}

fn without(idx: &[usize], s: usize) -> impl Iterator<Item = usize> + '_ {
    idx.iter()
        .enumerate()
        .filter(move |&(i, _)| i != s)
        .map(|(_, &v)| v)
}

fn signed(p: Polynomial, negative: bool) -> Polynomial {
    if negative {
        -p
    } else {
        p
    }
}

/// `[P, Q]` of degree `p + q − 1`. For two functions the bracket vanishes
/// and a zero table of degree 0 is returned.
pub fn bracket<F: FrameStructure + ?Sized>(frame: &F, p: &AltTable, q: &AltTable) -> AltTable {
    let chart = frame.chart();
    let rank = frame.rank();
    let (dp, dq) = (p.degree(), q.degree());
    match (dp, dq) {
        (0, 0) => AltTable::zero(chart, rank, 0),
        (_, 0) => bracket_function(frame, p, &q.get(&[])),
        (0, _) => {
            let t = bracket_function(frame, q, &p.get(&[]));
            if dq % 2 == 1 {
                t.neg()
            } else {
                t
            }
        }
        _ => {
            let one = Polynomial::one(chart);
            let mut out = AltTable::zero(chart, rank, dp + dq - 1);
            for (ii, f) in p.coeffs() {
                for (jj, g) in q.coeffs() {
                    for (s, &i) in ii.iter().enumerate() {
                        for (t, &j) in jj.iter().enumerate() {
                            // f sits on the first factor of each wedge
                            let fs = if s == 0 { f } else { &one };
                            let gt = if t == 0 { g } else { &one };
                            let outer = match (s == 0, t == 0) {
                                (true, true) => one.clone(),
                                (true, false) => g.clone(),
                                (false, true) => f.clone(),
                                (false, false) => f * g,
                            };
                            let negative = (s + t) % 2 == 1;
                            let mut push = |c: usize, h: Polynomial| {
                                if h.is_zero() {
                                    return;
                                }
                                let mut idx = Vec::with_capacity(dp + dq - 1);
                                idx.push(c);
                                idx.extend(without(ii, s));
                                idx.extend(without(jj, t));
                                out.add_term(&idx, signed(&outer * &h, negative));
                            };
                            let fg = fs * gt;
                            for (c, cc) in frame.frame_bracket(i, j) {
                                push(c, &fg * &cc);
                            }
                            if t == 0 {
                                push(j, fs * &frame.anchor_derivative(i, g));
                            }
                            if s == 0 {
                                push(i, -(gt * &frame.anchor_derivative(j, f)));
                            }
                        }
                    }
                }
            }
            out
        }
    }
}

/// `[U, g] = Σ_s (−1)^{p−s} U_s(g) U_1 ∧ … Û_s … ∧ U_p` (1-based `s`).
fn bracket_function<F: FrameStructure + ?Sized>(frame: &F, u: &AltTable, g: &Polynomial) -> AltTable {
    let dp = u.degree();
    let mut out = AltTable::zero(frame.chart(), frame.rank(), dp - 1);
    for (ii, f) in u.coeffs() {
        for (s, &i) in ii.iter().enumerate() {
            let dg = frame.anchor_derivative(i, g);
            if dg.is_zero() {
                continue;
            }
            let idx: Vec<usize> = without(ii, s).collect();
            out.add_term(&idx, signed(f * &dg, (dp - 1 - s) % 2 == 1));
        }
    }
    out
}
