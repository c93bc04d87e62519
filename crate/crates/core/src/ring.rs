use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Standard-graded polynomial ring `k[x_1, ..., x_n]`, read as its
/// localization at the irrelevant ideal `m = (x_1, ..., x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: Field,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], field: Field) -> Result<Arc<PolyRing>> {
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if names.len() > crate::groebner::MAX_DIM_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("variable `{n}` declared twice")));
            }
        }
        Ok(Arc::new(PolyRing { names, field }))
    }

    /// Convenience constructor over `F_32003`.
    pub fn default_field<S: AsRef<str>>(names: &[S]) -> Result<Arc<PolyRing>> {
        PolyRing::new(names, Field::Prime(crate::field::DEFAULT_PRIME))
    }

    /// Ring with `count` auxiliary variables placed in front of the existing ones.
    /// Auxiliary names start with `_`, so they never collide with user names.
    pub(crate) fn with_aux_front(&self, count: usize) -> Arc<PolyRing> {
        let mut names: Vec<String> = (0..count).map(|i| format!("_t{i}")).collect();
        names.extend(self.names.iter().cloned());
        Arc::new(PolyRing { names, field: self.field })
    }

    pub(crate) fn from_parts(names: Vec<String>, field: Field) -> PolyRing {
        PolyRing { names, field }
    }

    /// Ring on the variables `vars` (indices into this ring), in that order.
    pub fn subring(&self, vars: &[usize]) -> Result<Arc<PolyRing>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("subring needs at least one variable".into()));
        }
        Ok(Arc::new(PolyRing { names: vars.iter().map(|&i| self.names[i].clone()).collect(), field: self.field }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(","))
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_declarations() {
        assert!(PolyRing::default_field::<&str>(&[]).is_err());
        assert!(PolyRing::default_field(&["X", "X"]).is_err());
        assert!(PolyRing::default_field(&["1X"]).is_err());
        assert!(PolyRing::default_field(&["_t"]).is_err());
        let r = PolyRing::default_field(&["X", "Y1"]).unwrap();
        assert_eq!(r.var_index("Y1"), Some(1));
    }
}
