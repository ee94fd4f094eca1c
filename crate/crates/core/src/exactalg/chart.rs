use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HpError, HpResult};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Complex,
    Real,
}

/// A coordinate chart with `2n` formal variables.
///
/// Variable (and tangent slot) `s < n` is `z_{s+1}` (or `x_{s+1}`), and
/// `s >= n` is `zb_{s-n+1}` (or `y_{s-n+1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chart {
    pub kind: ChartKind,
    pub n: usize,
}

pub const MAX_DIM: usize = 15;

impl Chart {
    pub fn complex(n: usize) -> Self {
        assert!(n <= MAX_DIM, "chart dimension above {MAX_DIM}");
        Chart { kind: ChartKind::Complex, n }
    }

    pub fn real(n: usize) -> Self {
        assert!(n <= MAX_DIM, "chart dimension above {MAX_DIM}");
        Chart { kind: ChartKind::Real, n }
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn is_complex(&self) -> bool {
        self.kind == ChartKind::Complex
    }

    pub fn is_real(&self) -> bool {
        self.kind == ChartKind::Real
    }

    /// The chart of the same dimension with the other kind.
    pub fn partner(&self) -> Chart {
        match self.kind {
            ChartKind::Complex => Chart::real(self.n),
            ChartKind::Real => Chart::complex(self.n),
        }
    }

    pub fn var_name(&self, v: usize) -> String {
        let (a, b) = match self.kind {
            ChartKind::Complex => ("z", "zb"),
            ChartKind::Real => ("x", "y"),
        };
        if v < self.n {
            format!("{}{}", a, v + 1)
        } else {
            format!("{}{}", b, v - self.n + 1)
        }
    }

    pub fn var_index(&self, name: &str) -> HpResult<usize> {
        let (a, b) = match self.kind {
            ChartKind::Complex => ("z", "zb"),
            ChartKind::Real => ("x", "y"),
        };
        let parse = |rest: &str| -> Option<usize> {
            let k: usize = rest.parse().ok()?;
            (k >= 1 && k <= self.n).then_some(k - 1)
        };
        if let Some(rest) = name.strip_prefix(b) {
            if let Some(k) = parse(rest) {
                return Ok(self.n + k);
            }
        }
        if let Some(rest) = name.strip_prefix(a) {
            if let Some(k) = parse(rest) {
                return Ok(k);
            }
        }
        Err(HpError::Chart(format!("unknown variable '{}' on {}", name, self)))
    }

    pub fn ensure_same(&self, other: &Chart) -> HpResult<()> {
        if self != other {
            return Err(HpError::Chart(format!("chart mismatch: {} vs {}", self, other)));
        }
        Ok(())
    }

    pub fn ensure_complex(&self) -> HpResult<()> {
        if !self.is_complex() {
            return Err(HpError::Chart(format!("complex chart required, got {}", self)));
        }
        Ok(())
    }

    pub fn ensure_real(&self) -> HpResult<()> {
        if !self.is_real() {
            return Err(HpError::Chart(format!("real chart required, got {}", self)));
        }
        Ok(())
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ChartKind::Complex => write!(f, "complex({})", self.n),
            ChartKind::Real => write!(f, "real({})", self.n),
        }
    }
}
