use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Chart, Rational};
use crate::error::{Error, Result};

/// Dense exponent vector, one entry per chart coordinate.
pub type Monomial = Vec<u32>;

/// Multivariate polynomial with exact rational coefficients on a [`Chart`].
///
/// Zero coefficients are never stored, so structural equality of the term
/// maps is equality of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Chart, value: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !value.is_zero() {
            p.terms.insert(vec![0; chart.dim()], value);
        }
        p
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn from_int(chart: &Chart, value: i64) -> Self {
        Self::constant(chart, Rational::from_integer(value.into()))
    }

    /// The coordinate function with index `idx`.
    pub fn var(chart: &Chart, idx: usize) -> Self {
        assert!(idx < chart.dim(), "coordinate index out of range");
        let mut mono = vec![0; chart.dim()];
        mono[idx] = 1;
        let mut p = Self::zero(chart);
        p.terms.insert(mono, Rational::one());
        p
    }

    pub fn coordinate(chart: &Chart, name: &str) -> Result<Self> {
        Ok(Self::var(chart, chart.index_of(name)?))
    }

    pub fn monomial(chart: &Chart, exponents: Monomial, coeff: Rational) -> Self {
        assert_eq!(exponents.len(), chart.dim(), "exponent vector length");
        let mut p = Self::zero(chart);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn from_terms(
        chart: &Chart,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            assert_eq!(m.len(), chart.dim(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m[idx]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m[idx] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        Self {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.chart);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to coordinate `idx`.
    pub fn diff(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[idx] = e - 1;
            out.terms
                .insert(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Self> {
        Ok(self.diff(self.chart.index_of(name)?))
    }

    /// Exact evaluation at a point given by coordinate name.
    pub fn eval(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        let values = self
            .chart
            .names()
            .map(|n| {
                point
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::MissingAssignment(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_at(&values))
    }

    /// Exact evaluation with values listed in chart order.
    pub fn eval_at(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.chart.dim(), "point dimension");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Replaces coordinate `idx` by a constant; the chart is unchanged.
    pub fn substitute(&self, idx: usize, value: &Rational) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m[idx];
            let mut m2 = m.clone();
            m2[idx] = 0;
            let factor = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(m2, factor);
        }
        out
    }

    /// Substitutes polynomials (all on `target`) for every coordinate.
    pub fn compose(&self, images: &[Polynomial], target: &Chart) -> Self {
        assert_eq!(images.len(), self.chart.dim(), "one image per coordinate");
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() < e as usize {
                    let next = match powers.last() {
                        Some(p) => p * &images[i],
                        None => images[i].clone(),
                    };
                    powers.push(next);
                }
                t = &t * &powers[e as usize - 1];
            }
            out += &t;
        }
        out
    }

    /// Re-expresses the polynomial on a chart containing all of its
    /// coordinates (matched by name).
    pub fn embed(&self, target: &Chart) -> Result<Self> {
        if &self.chart == target {
            return Ok(self.clone());
        }
        let map = self.chart.embedding_into(target)?;
        Ok(self.embed_with(&map, target))
    }

    pub(crate) fn embed_with(&self, map: &[usize], target: &Chart) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.dim()];
            for (i, &e) in m.iter().enumerate() {
                m2[map[i]] += e;
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Drops coordinates absent from `target`; fails if the polynomial
    /// depends on one of them.
    pub fn restrict(&self, target: &Chart) -> Result<Self> {
        if &self.chart == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.chart.dim());
        for c in self.chart.coords() {
            map.push(target.index_of(&c.name).ok());
        }
        for (i, slot) in map.iter().enumerate() {
            if slot.is_none() && self.depends_on(i) {
                return Err(Error::NotRestrictable(self.chart.coord(i).name.clone()));
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; target.dim()];
            for (i, &e) in m.iter().enumerate() {
                if let Some(j) = map[i] {
                    m2[j] += e;
                }
            }
            out.add_term(m2, c.clone());
        }
        Ok(out)
    }

    /// Terms sorted for display: descending total degree, then descending
    /// lexicographic exponent order.
    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    fn check_chart(&self, other: &Self) {
        assert!(
            self.chart == other.chart,
            "polynomial arithmetic across charts `{}` and `{}`",
            self.chart.name(),
            other.chart.name()
        );
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (idx, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.chart.coord(idx).name.clone()),
                    _ => factors.push(format!("{}^{}", self.chart.coord(idx).name, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.chart.name(), self)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_chart(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_chart(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_chart(rhs);
        let mut out = Polynomial::zero(&self.chart);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse_poly, q};

    fn chart() -> Chart {
        Chart::base("c", &["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let c = chart();
        let p = parse_poly("x1^2*x2", &c).unwrap();
        assert_eq!(p.diff(0), parse_poly("2*x1*x2", &c).unwrap());
        assert!(parse_poly("x1", &c).unwrap().diff(1).is_zero());
        let p = parse_poly("x1*x2*x3 + x3^2", &c).unwrap();
        assert_eq!(
            p.diff_by_name("x3").unwrap(),
            parse_poly("x1*x2 + 2*x3", &c).unwrap()
        );
        assert_eq!(
            p.diff_by_name("y").unwrap_err(),
            Error::UnknownCoordinate("y".into())
        );
    }

    #[test]
    fn evaluation_examples() {
        let c = Chart::base("c", &["x1", "x2"]).unwrap();
        let pt: HashMap<_, _> = [("x1".to_string(), q(2, 1)), ("x2".to_string(), q(3, 1))]
            .into_iter()
            .collect();
        assert_eq!(parse_poly("x1^2*x2", &c).unwrap().eval(&pt).unwrap(), q(12, 1));
        assert_eq!(Polynomial::zero(&c).eval(&pt).unwrap(), q(0, 1));
        let half: HashMap<_, _> = [("x1".to_string(), q(1, 2)), ("x2".to_string(), q(0, 1))]
            .into_iter()
            .collect();
        assert!(parse_poly("x1 - 1/2", &c)
            .unwrap()
            .eval(&half)
            .unwrap()
            .is_zero());
        let partial: HashMap<_, _> = [("x1".to_string(), q(1, 1))].into_iter().collect();
        assert_eq!(
            parse_poly("x1", &c).unwrap().eval(&partial).unwrap_err(),
            Error::MissingAssignment("x2".into())
        );
    }

    #[test]
    fn embed_restrict_compose() {
        let small = Chart::base("s", &["x2"]).unwrap();
        let big = chart();
        let p = parse_poly("x2^2 + 1", &small).unwrap();
        let e = p.embed(&big).unwrap();
        assert_eq!(e, parse_poly("x2^2 + 1", &big).unwrap());
        assert_eq!(e.restrict(&small).unwrap(), p);
        assert!(parse_poly("x1", &big).unwrap().restrict(&small).is_err());
        let images = vec![parse_poly("x1 + x3", &big).unwrap()];
        assert_eq!(
            p.compose(&images, &big),
            parse_poly("x1^2 + 2*x1*x3 + x3^2 + 1", &big).unwrap()
        );
        assert_eq!(
            parse_poly("x1*x2 + x2", &big).unwrap().substitute(1, &q(2, 1)),
            parse_poly("2*x1 + 2", &big).unwrap()
        );
    }

    #[test]
    fn display_is_canonical() {
        let c = Chart::base("c", &["x1", "x2"]).unwrap();
        let p = parse_poly("-1/2 + x1^2*x2 - x2*3", &c).unwrap();
        assert_eq!(p.to_string(), "x1^2*x2 - 3*x2 - 1/2");
        assert_eq!(parse_poly("-x1", &c).unwrap().to_string(), "-x1");
    }
}
