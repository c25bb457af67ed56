//! Weighted polynomial rings.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub weight: i64,
}

impl Variable {
    pub fn new(name: impl Into<String>, weight: i64) -> Self {
        Variable {
            name: name.into(),
            weight,
        }
    }

    /// Name for human output: machine names `v#1`, `v#2` print as `v'`, `v''`.
    pub fn display_name(&self) -> String {
        display_name(&self.name)
    }
}

pub fn display_name(name: &str) -> String {
    if let Some(base) = name.strip_suffix("#1") {
        format!("{base}'")
    } else if let Some(base) = name.strip_suffix("#2") {
        format!("{base}''")
    } else {
        name.to_string()
    }
}

/// A polynomial ring `k[x_1, ..., x_n]` whose variables carry integer
/// weights. The weight vector is the grading, i.e. the `G_m`-action
/// `λ·x_i = λ^{w_i}·x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<Variable>,
    field: Field,
}

impl RingSpec {
    pub fn new(vars: Vec<Variable>, field: Field) -> Result<Arc<RingSpec>> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::Validation(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(Arc::new(RingSpec { vars, field }))
    }

    /// Convenience constructor from `(name, weight)` pairs.
    pub fn with_weights(vars: &[(&str, i64)], field: Field) -> Result<Arc<RingSpec>> {
        RingSpec::new(
            vars.iter().map(|(n, w)| Variable::new(*n, *w)).collect(),
            field,
        )
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.vars[i].weight
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn index_or_err(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Structural(format!("unknown variable `{name}`")))
    }

    /// Same variables with every weight negated (the action `λ ↦ λ^{-1}`).
    pub fn negate_weights(&self) -> Arc<RingSpec> {
        Arc::new(RingSpec {
            vars: self
                .vars
                .iter()
                .map(|v| Variable::new(v.name.clone(), -v.weight))
                .collect(),
            field: self.field,
        })
    }

    /// Ring on the variables at `keep` (in that order).
    pub fn subring(&self, keep: &[usize]) -> Arc<RingSpec> {
        Arc::new(RingSpec {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            field: self.field,
        })
    }

    pub fn with_field(&self, field: Field) -> Arc<RingSpec> {
        Arc::new(RingSpec {
            vars: self.vars.clone(),
            field,
        })
    }

    /// A variable name starting with `stem` that is not yet used.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|k| format!("{stem}_{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }

    /// Appends a variable; fails on a name clash.
    pub fn extend(&self, var: Variable) -> Result<Arc<RingSpec>> {
        let mut vars = self.vars.clone();
        vars.push(var);
        RingSpec::new(vars, self.field)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.vars.iter().all(|v| v.weight == 0)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v.display_name(), v.weight)?;
        }
        write!(f, "]")
    }
}

/// True when two ring handles describe the same ring.
pub fn same_ring(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(RingSpec::with_weights(&[("x", 1), ("x", 2)], Field::Rational).is_err());
    }

    #[test]
    fn weights_may_be_any_integer() {
        let r = RingSpec::with_weights(&[("x", -3), ("y", 0), ("z", 7)], Field::Rational).unwrap();
        assert_eq!(r.weights(), vec![-3, 0, 7]);
        assert_eq!(r.negate_weights().weights(), vec![3, 0, -7]);
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let r = RingSpec::with_weights(&[("t", 0), ("t_0", 1)], Field::Rational).unwrap();
        assert_eq!(r.fresh_name("t"), "t_1");
        assert_eq!(r.fresh_name("s"), "s");
    }

    #[test]
    fn primed_display_names() {
        assert_eq!(display_name("x#1"), "x'");
        assert_eq!(display_name("x#2"), "x''");
        assert_eq!(display_name("y1"), "y1");
    }
}
