use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Bookkeeping role of a coordinate in a double-vector-bundle chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Base,
    Fiber,
    /// Coordinate of the n-th copy of `TM` (1-based).
    TangentCopy(usize),
    /// Coordinate of the n-th copy of `A*` (1-based).
    DualCopy(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub role: Role,
}

impl Coordinate {
    pub fn new(name: impl Into<String>, role: Role) -> Self {
        Self { name: name.into(), role }
    }

    pub fn base(name: impl Into<String>) -> Self {
        Self::new(name, Role::Base)
    }
}

#[derive(Debug)]
struct ChartData {
    name: String,
    coords: Vec<Coordinate>,
    index: HashMap<String, usize>,
}

/// An ordered, named list of coordinates. Cheap to clone.
///
/// Two charts compare equal when their coordinate lists agree; the chart
/// name is only a label.
#[derive(Clone)]
pub struct Chart(Arc<ChartData>);

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new(name: impl Into<String>, coords: Vec<Coordinate>) -> Result<Self> {
        let mut index = HashMap::with_capacity(coords.len());
        let mut seen_non_base = false;
        for (i, c) in coords.iter().enumerate() {
            if !valid_name(&c.name) {
                return Err(Error::InvalidChart(format!(
                    "`{}` is not a valid coordinate name",
                    c.name
                )));
            }
            if index.insert(c.name.clone(), i).is_some() {
                return Err(Error::DuplicateCoordinate(c.name.clone()));
            }
            match c.role {
                Role::Base if seen_non_base => {
                    return Err(Error::InvalidChart(format!(
                        "base coordinate `{}` listed after a non-base coordinate",
                        c.name
                    )))
                }
                Role::Base => {}
                _ => seen_non_base = true,
            }
        }
        Ok(Self(Arc::new(ChartData {
            name: name.into(),
            coords,
            index,
        })))
    }

    /// A chart made only of base coordinates.
    pub fn base<S: AsRef<str>>(name: impl Into<String>, names: &[S]) -> Result<Self> {
        Self::new(
            name,
            names.iter().map(|n| Coordinate::base(n.as_ref())).collect(),
        )
    }

    /// The zero-dimensional chart of a point.
    pub fn point() -> Self {
        Self::new("pt", Vec::new()).expect("empty chart is valid")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.0.coords
    }

    pub fn coord(&self, i: usize) -> &Coordinate {
        &self.0.coords[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.coords.iter().map(|c| c.name.as_str())
    }

    /// Indices of the coordinates carrying `role`.
    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        self.0
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.role == role)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of leading base coordinates.
    pub fn base_dim(&self) -> usize {
        self.0
            .coords
            .iter()
            .take_while(|c| c.role == Role::Base)
            .count()
    }

    /// Position of every coordinate of `self` inside `target`, matched by name.
    pub fn embedding_into(&self, target: &Chart) -> Result<Vec<usize>> {
        self.names().map(|n| target.index_of(n)).collect()
    }

    pub(crate) fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch {
                left: self.name().to_string(),
                right: other.name().to_string(),
            })
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.coords == other.0.coords
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}: ", self.0.name)?;
        f.debug_list().entries(self.names()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_misordered_roles() {
        assert_eq!(
            Chart::base("c", &["x", "x"]).unwrap_err(),
            Error::DuplicateCoordinate("x".into())
        );
        let err = Chart::new(
            "c",
            vec![Coordinate::new("u1", Role::Fiber), Coordinate::base("x")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidChart(_)));
        assert!(Chart::base("c", &["1x"]).is_err());
    }

    #[test]
    fn equality_ignores_label() {
        let a = Chart::base("a", &["x1", "x2"]).unwrap();
        let b = Chart::base("b", &["x1", "x2"]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.base_dim(), 2);
        assert_eq!(a.embedding_into(&b).unwrap(), vec![0, 1]);
    }
}
