//! The tangent prolongation `⊕^k_A TA → ⊕^k TM` and the cotangent
//! prolongation `⊕^k_A T*A → ⊕^k A*`, materialized in their distinguished
//! frames.
//!
//! Tangent frame order: core sections `ê_{a,n}` by `(n, a)`, then linear
//! sections `(Te_a)^k` by `a`. Cotangent: `dx̂^{i,n}` by `(n, i)`, then
//! `(e_a^L)^k` by `a`.

use super::{LieAlgebroid, StructureEntry};
use crate::error::{Error, Result};
use crate::symkernel::{Chart, Coordinate, Polynomial, Role};

#[derive(Clone)]
pub enum ProlongationKind {
    Tangent { base: LieAlgebroid, k: usize },
    Cotangent { base: LieAlgebroid, k: usize },
}

impl ProlongationKind {
    pub fn base(&self) -> &LieAlgebroid {
        match self {
            Self::Tangent { base, .. } | Self::Cotangent { base, .. } => base,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Self::Tangent { k, .. } | Self::Cotangent { k, .. } => *k,
        }
    }

    fn core_block(&self) -> usize {
        match self {
            Self::Tangent { base, .. } => base.rank(),
            Self::Cotangent { base, .. } => base.base_dim(),
        }
    }

    /// Frame index of the core section `ê_{a,n}` (tangent) or `dx̂^{a,n}`
    /// (cotangent); `n` is 1-based.
    pub fn core_index(&self, a: usize, n: usize) -> usize {
        debug_assert!(n >= 1 && n <= self.k());
        (n - 1) * self.core_block() + a
    }

    /// Frame index of `(Te_a)^k` or `(e_a^L)^k`.
    pub fn linear_index(&self, a: usize) -> usize {
        self.k() * self.core_block() + a
    }

    /// Chart index of the copy coordinate `ẋ_n^j` (tangent) or `ξ^n_d`
    /// (cotangent); `n` is 1-based.
    pub fn copy_coordinate(&self, j: usize, n: usize) -> usize {
        match self {
            Self::Tangent { base, .. } => n * base.base_dim() + j,
            Self::Cotangent { base, .. } => base.base_dim() + (n - 1) * base.rank() + j,
        }
    }
}

fn require(a: &LieAlgebroid, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("prolongation order k must be at least 1".into()));
    }
    if !a.is_checked() {
        return Err(Error::AxiomFailure(a.name().to_string()));
    }
    Ok(())
}

pub fn tangent_prolongation(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    require(a, k)?;
    Ok(tangent_prolongation_unchecked(a, k)?.mark_checked())
}

pub fn cotangent_prolongation(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    require(a, k)?;
    Ok(cotangent_prolongation_unchecked(a, k)?.mark_checked())
}

/// Builds the tangent prolongation without requiring verified axioms on the
/// input; the result is unchecked.
pub fn tangent_prolongation_unchecked(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    if k == 0 {
        return Err(Error::Precondition("prolongation order k must be at least 1".into()));
    }
    let kind = ProlongationKind::Tangent { base: a.clone(), k };
    let base = a.base_chart();
    let (nb, r) = (a.base_dim(), a.rank());

    let mut coords: Vec<Coordinate> = base.coords().to_vec();
    for n in 1..=k {
        for c in base.coords() {
            coords.push(Coordinate::new(
                format!("{}_dot{n}", c.name),
                Role::TangentCopy(n),
            ));
        }
    }
    let chart = Chart::new(format!("T{k}({})", base.name()), coords)?;
    let map: Vec<usize> = (0..nb).collect();
    let lift = |p: &Polynomial| p.embed_with(&map, &chart);
    let dot = |j: usize, n: usize| Polynomial::var(&chart, kind.copy_coordinate(j, n));
    let dim = chart.dim();

    // Σ_i ẋ_n^i ∂_i f, lifted
    let tangent_of = |f: &Polynomial, n: usize| {
        let mut acc = Polynomial::zero(&chart);
        for i in 0..nb {
            let d = f.diff(i);
            if !d.is_zero() {
                acc += &(&dot(i, n) * &lift(&d));
            }
        }
        acc
    };

    let mut frame = Vec::with_capacity((k + 1) * r);
    let mut anchor = Vec::with_capacity((k + 1) * r);
    for n in 1..=k {
        for ea in 0..r {
            frame.push(format!("hat({},{n})", a.frame_names()[ea]));
            let mut row = vec![Polynomial::zero(&chart); dim];
            for j in 0..nb {
                row[kind.copy_coordinate(j, n)] = lift(a.anchor(ea, j));
            }
            anchor.push(row);
        }
    }
    for ea in 0..r {
        frame.push(format!("T({})", a.frame_names()[ea]));
        let mut row = vec![Polynomial::zero(&chart); dim];
        for j in 0..nb {
            row[j] = lift(a.anchor(ea, j));
            for n in 1..=k {
                row[kind.copy_coordinate(j, n)] = tangent_of(a.anchor(ea, j), n);
            }
        }
        anchor.push(row);
    }

    let mut structure: Vec<StructureEntry> = Vec::new();
    for ea in 0..r {
        for eb in 0..r {
            for d in 0..r {
                let c = a.structure(ea, eb, d);
                if c.is_zero() {
                    continue;
                }
                let cl = lift(&c);
                for m in 1..=k {
                    structure.push((
                        kind.linear_index(ea),
                        kind.core_index(eb, m),
                        kind.core_index(d, m),
                        cl.clone(),
                    ));
                }
                if ea < eb {
                    structure.push((kind.linear_index(ea), kind.linear_index(eb), kind.linear_index(d), cl));
                    for n in 1..=k {
                        structure.push((
                            kind.linear_index(ea),
                            kind.linear_index(eb),
                            kind.core_index(d, n),
                            tangent_of(&c, n),
                        ));
                    }
                }
            }
        }
    }
    let name = format!("T{k}[{}]", a.name());
    Ok(LieAlgebroid::new_unchecked(name, &chart, frame, anchor, structure)?.with_prolongation(kind))
}

/// Builds the cotangent prolongation without requiring verified axioms on
/// the input; the result is unchecked.
pub fn cotangent_prolongation_unchecked(a: &LieAlgebroid, k: usize) -> Result<LieAlgebroid> {
    if k == 0 {
        return Err(Error::Precondition("prolongation order k must be at least 1".into()));
    }
    let kind = ProlongationKind::Cotangent { base: a.clone(), k };
    let base = a.base_chart();
    let (nb, r) = (a.base_dim(), a.rank());

    let mut coords: Vec<Coordinate> = base.coords().to_vec();
    for n in 1..=k {
        for d in 0..r {
            coords.push(Coordinate::new(format!("xi{n}_{}", d + 1), Role::DualCopy(n)));
        }
    }
    let chart = Chart::new(format!("T*{k}({})", base.name()), coords)?;
    let map: Vec<usize> = (0..nb).collect();
    let lift = |p: &Polynomial| p.embed_with(&map, &chart);
    let xi = |d: usize, n: usize| Polynomial::var(&chart, kind.copy_coordinate(d, n));
    let dim = chart.dim();

    let mut frame = Vec::with_capacity(k * nb + r);
    let mut anchor = Vec::with_capacity(k * nb + r);
    for n in 1..=k {
        for i in 0..nb {
            frame.push(format!("hat(d{},{n})", base.coord(i).name));
            let mut row = vec![Polynomial::zero(&chart); dim];
            for d in 0..r {
                row[kind.copy_coordinate(d, n)] = lift(a.anchor(d, i));
            }
            anchor.push(row);
        }
    }
    for ea in 0..r {
        frame.push(format!("L({})", a.frame_names()[ea]));
        let mut row = vec![Polynomial::zero(&chart); dim];
        for j in 0..nb {
            row[j] = lift(a.anchor(ea, j));
        }
        for n in 1..=k {
            for b in 0..r {
                let mut acc = Polynomial::zero(&chart);
                for c in 0..r {
                    let s = a.structure(ea, b, c);
                    if !s.is_zero() {
                        acc += &(&lift(&s) * &xi(c, n));
                    }
                }
                row[kind.copy_coordinate(b, n)] = acc;
            }
        }
        anchor.push(row);
    }

    let mut structure: Vec<StructureEntry> = Vec::new();
    for ea in 0..r {
        for j in 0..nb {
            for i in 0..nb {
                let d = a.anchor(ea, j).diff(i);
                if d.is_zero() {
                    continue;
                }
                let dl = lift(&d);
                for m in 1..=k {
                    structure.push((
                        kind.linear_index(ea),
                        kind.core_index(j, m),
                        kind.core_index(i, m),
                        dl.clone(),
                    ));
                }
            }
        }
        for eb in ea + 1..r {
            for c in 0..r {
                let s = a.structure(ea, eb, c);
                if s.is_zero() {
                    continue;
                }
                structure.push((kind.linear_index(ea), kind.linear_index(eb), kind.linear_index(c), lift(&s)));
                for i in 0..nb {
                    let ds = s.diff(i);
                    if ds.is_zero() {
                        continue;
                    }
                    let dl = lift(&ds);
                    for n in 1..=k {
                        structure.push((
                            kind.linear_index(ea),
                            kind.linear_index(eb),
                            kind.core_index(i, n),
                            -(&dl * &xi(c, n)),
                        ));
                    }
                }
            }
        }
    }
    let name = format!("T*{k}[{}]", a.name());
    Ok(LieAlgebroid::new_unchecked(name, &chart, frame, anchor, structure)?.with_prolongation(kind))
}
