//! Records of exact checks, shared by realizations, blocks and certificates.

use serde::{Deserialize, Serialize};

use crate::fields::Agreement;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of scalar coefficients compared, for series identities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compared: Option<usize>,
    /// Bi-truncation `(t, w)` at which a series identity was checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn exact(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            compared: None,
            trunc: None,
            detail: String::new(),
        }
    }

    pub fn series(name: impl Into<String>, a: Agreement, trunc: (i64, i64)) -> Self {
        Check {
            name: name.into(),
            passed: a.equal && a.compared > 0,
            compared: Some(a.compared),
            trunc: Some(trunc),
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// One line per check, e.g. `PASS  d(f) identity  [312 coeffs @ (10,10)]`.
pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(if c.passed { "PASS  " } else { "FAIL  " });
        out.push_str(&c.name);
        match (c.compared, c.trunc) {
            (Some(n), Some((a, b))) => out.push_str(&format!("  [{} coeffs @ ({},{})]", n, a, b)),
            (Some(n), None) => out.push_str(&format!("  [{} coeffs]", n)),
            _ => {}
        }
        if !c.detail.is_empty() {
            out.push_str("  ");
            out.push_str(&c.detail);
        }
        out.push('\n');
    }
    out
}
