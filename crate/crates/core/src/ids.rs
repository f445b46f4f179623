//! Vertex and edge identifiers.

use std::borrow::Borrow;
use std::fmt;

use thiserror::Error;

/// Reason an identifier was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdError {
    #[error("identifier is empty")]
    Empty,
    #[error("identifier {0:?} contains whitespace or '#'")]
    InvalidChar(String),
}

fn check(label: &str) -> Result<(), IdError> {
    if label.is_empty() {
        return Err(IdError::Empty);
    }
    if label.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(IdError::InvalidChar(label.to_string()));
    }
    Ok(())
}

macro_rules! label_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(label: impl Into<String>) -> Result<Self, IdError> {
                let label = label.into();
                check(&label)?;
                Ok(Self(label))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<&str> for $name {
            type Error = IdError;
            fn try_from(label: &str) -> Result<Self, IdError> {
                Self::new(label)
            }
        }
    };
}

label_type!(
    /// Opaque vertex label. Ordering is lexicographic and defines the
    /// canonical vertex order used by every matrix and vector.
    VertexId
);
label_type!(
    /// Opaque edge label.
    EdgeId
);

/// Shorthand used heavily in tests and fixtures. Panics on an invalid label.
pub fn v(label: &str) -> VertexId {
    VertexId::new(label).expect("valid vertex label")
}

/// See [`v`].
pub fn e(label: &str) -> EdgeId {
    EdgeId::new(label).expect("valid edge label")
}
