//! Sparse integer functions on vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ids::{IdError, VertexId};
use crate::lattice::IntVector;

/// Finitely supported `VertexId → ℤ`; zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexVector(BTreeMap<VertexId, BigInt>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorParseError {
    #[error("entry {0:?} is not of the form <vertex>:<integer>")]
    Malformed(String),
    #[error(transparent)]
    BadId(#[from] IdError),
    #[error("vertex {0} appears twice")]
    Duplicate(VertexId),
}

impl VertexVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: &VertexId) -> BigInt {
        self.0.get(v).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, v: VertexId, x: BigInt) {
        if x.is_zero() {
            self.0.remove(&v);
        } else {
            self.0.insert(v, x);
        }
    }

    pub fn add_to(&mut self, v: &VertexId, x: &BigInt) {
        let total = self.get(v) + x;
        self.set(v.clone(), total);
    }

    /// Nonzero entries in vertex order.
    pub fn entries(&self) -> impl Iterator<Item = (&VertexId, &BigInt)> {
        self.0.iter()
    }

    pub fn support(&self) -> BTreeSet<VertexId> {
        self.0.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|x| !x.is_negative())
    }

    pub fn scale(&self, k: &BigInt) -> VertexVector {
        let mut out = VertexVector::new();
        for (v, x) in &self.0 {
            out.set(v.clone(), x * k);
        }
        out
    }

    /// Dense form over `order`; entries outside `order` are dropped.
    pub fn to_dense<'a>(&self, order: impl IntoIterator<Item = &'a VertexId>) -> IntVector {
        order.into_iter().map(|v| self.get(v)).collect()
    }

    pub fn from_dense<'a>(order: impl IntoIterator<Item = &'a VertexId>, values: &IntVector) -> Self {
        let mut out = VertexVector::new();
        for (v, x) in order.into_iter().zip(values.iter()) {
            out.set(v.clone(), x.clone());
        }
        out
    }

    /// `(1,1,2)` over the given order.
    pub fn format_dense<'a>(&self, order: impl IntoIterator<Item = &'a VertexId>) -> String {
        self.to_dense(order).to_string()
    }
}

impl FromIterator<(VertexId, BigInt)> for VertexVector {
    fn from_iter<I: IntoIterator<Item = (VertexId, BigInt)>>(iter: I) -> Self {
        let mut out = VertexVector::new();
        for (v, x) in iter {
            out.add_to(&v, &x);
        }
        out
    }
}

impl Add for &VertexVector {
    type Output = VertexVector;
    fn add(self, rhs: &VertexVector) -> VertexVector {
        let mut out = self.clone();
        for (v, x) in &rhs.0 {
            out.add_to(v, x);
        }
        out
    }
}

impl Sub for &VertexVector {
    type Output = VertexVector;
    fn sub(self, rhs: &VertexVector) -> VertexVector {
        let mut out = self.clone();
        for (v, x) in &rhs.0 {
            out.add_to(v, &-x);
        }
        out
    }
}

/// Sparse form `w1:1 w3:2`; the zero vector renders as the empty string.
impl fmt::Display for VertexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{x}")?;
        }
        Ok(())
    }
}

/// Parses whitespace- or comma-separated `vertex:integer` entries.
pub fn parse_vector(text: &str) -> Result<VertexVector, VectorParseError> {
    let mut out = VertexVector::new();
    let mut seen = BTreeSet::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let (name, value) = token.rsplit_once(':').ok_or_else(|| VectorParseError::Malformed(token.to_string()))?;
        let id = VertexId::new(name)?;
        let x: BigInt = value.parse().map_err(|_| VectorParseError::Malformed(token.to_string()))?;
        if !seen.insert(id.clone()) {
            return Err(VectorParseError::Duplicate(id));
        }
        out.set(id, x);
    }
    Ok(out)
}
