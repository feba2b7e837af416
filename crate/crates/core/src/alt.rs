//! Antisymmetric coefficient tables: the storage shared by differential
//! forms, multivector fields and wedge sections of an algebroid.

use std::collections::BTreeMap;

use crate::symkernel::{Chart, Polynomial, Rational};

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// All strictly increasing tuples of length `k` drawn from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Coefficient table indexed by strictly increasing tuples over an alphabet
/// `0..dim`, with polynomial coefficients on `chart`. Zero coefficients are
/// not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltTable {
    chart: Chart,
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Polynomial>,
}

impl AltTable {
    pub fn zero(chart: &Chart, dim: usize, degree: usize) -> Self {
        Self {
            chart: chart.clone(),
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, f: Polynomial) -> Self {
        let mut t = Self::zero(f.chart(), dim, 0);
        t.add_term(&[], f);
        t
    }

    /// `sign * f * e_{i1} ∧ … ∧ e_{ik}` for an arbitrary index order.
    pub fn monomial(chart: &Chart, dim: usize, indices: &[usize], f: Polynomial) -> Self {
        let mut t = Self::zero(chart, dim, indices.len());
        t.add_term(indices, f);
        t
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of a strictly increasing tuple.
    pub fn get(&self, sorted: &[usize]) -> Polynomial {
        self.coeffs
            .get(sorted)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.chart))
    }

    /// Coefficient for an arbitrary index order (antisymmetric extension).
    pub fn component(&self, indices: &[usize]) -> Polynomial {
        match sort_with_sign(indices) {
            None => Polynomial::zero(&self.chart),
            Some((k, s)) => {
                let c = self.get(&k);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Adds `f * e_{indices}` in any index order.
    pub fn add_term(&mut self, indices: &[usize], f: Polynomial) {
        assert_eq!(indices.len(), self.degree, "term degree");
        assert!(indices.iter().all(|&i| i < self.dim), "index out of range");
        if f.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_with_sign(indices) else {
            return;
        };
        let f = if sign < 0 { -f } else { f };
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &f;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(self.chart == other.chart, "tables on different charts");
        assert_eq!(self.dim, other.dim, "tables over different alphabets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        assert_eq!(self.degree, other.degree, "adding tables of different degree");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        self.map(|c| c * f)
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    /// Applies `f` to every coefficient, keeping the chart.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(&self.chart, self.dim, self.degree);
        for (k, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(k.clone(), v);
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(&self.chart, self.dim, self.degree + other.degree);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                out.add_term(&idx, ca * cb);
            }
        }
        out
    }

    /// Re-indexes the alphabet (`index_map[i]` is the new position of
    /// letter `i`) and moves coefficients to `chart` with `poly_map`.
    pub fn reindex(
        &self,
        chart: &Chart,
        dim: usize,
        index_map: &[usize],
        poly_map: impl Fn(&Polynomial) -> Polynomial,
    ) -> Self {
        let mut out = Self::zero(chart, dim, self.degree);
        for (k, c) in &self.coeffs {
            let idx: Vec<usize> = k.iter().map(|&i| index_map[i]).collect();
            out.add_term(&idx, poly_map(c));
        }
        out
    }

    /// Same alphabet, coefficients moved to another chart.
    pub fn with_chart(&self, chart: &Chart, poly_map: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let id: Vec<usize> = (0..self.dim).collect();
        self.reindex(chart, self.dim, &id, poly_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(2, 3).len(), 0);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
    }
}
