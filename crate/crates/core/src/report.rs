//! Violation reports shared by every validator.

use std::fmt;

use crate::matrix::{format_scalar, is_zero_vec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short identity tag such as `jacobi` or `graph-dot`.
    pub identity: String,
    /// Basis indices the identity was evaluated on.
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        let res: Vec<String> = self.residual.iter().map(format_scalar).collect();
        write!(f, "{}({}): residual [{}]", self.identity, idx.join(","), res.join(", "))
    }
}

/// List of violated identity instances, in evaluation order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records a violation when `residual` is nonzero.
    pub fn check(&mut self, identity: &str, indices: &[usize], residual: Vec<Scalar>) {
        if !is_zero_vec(&residual) {
            self.violations.push(Violation {
                identity: identity.to_string(),
                indices: indices.to_vec(),
                residual,
            });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// First violation of each identity, in order of first appearance.
    pub fn first_by_identity(&self) -> Vec<&Violation> {
        let mut seen: Vec<&str> = Vec::new();
        let mut out = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.identity.as_str()) {
                seen.push(&v.identity);
                out.push(v);
            }
        }
        out
    }

    pub fn has(&self, identity: &str) -> bool {
        self.violations.iter().any(|v| v.identity == identity)
    }

    /// Distinct identity tags that failed.
    pub fn identities(&self) -> Vec<String> {
        self.first_by_identity().iter().map(|v| v.identity.clone()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
