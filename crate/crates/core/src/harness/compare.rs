use serde::{Deserialize, Serialize};

use crate::sampling::Estimate;

/// Number of standard errors that separate a pass or a fail from an
/// inconclusive result.
pub const SIGMA: f64 = 3.0;
/// Standard errors allowed on either side of an identity.
pub const IDENTITY_SIGMA: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Skipped,
    Inconclusive,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Skipped => "skipped",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One side of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Side {
    pub value: f64,
    pub stderr: f64,
    pub exact: bool,
}

impl Side {
    pub fn exact(value: f64) -> Self {
        Side { value, stderr: 0.0, exact: true }
    }

    pub fn estimate(e: Estimate) -> Self {
        Side { value: e.mean, stderr: e.stderr, exact: false }
    }

    /// `c * self` for an exact factor `c`.
    pub fn scale(self, c: f64) -> Self {
        Side { value: self.value * c, stderr: self.stderr * c.abs(), exact: self.exact }
    }

    /// `self^p` with first-order error propagation.
    pub fn powf(self, p: f64) -> Self {
        let value = self.value.powf(p);
        let d = if self.value == 0.0 { 0.0 } else { p * self.value.powf(p - 1.0) };
        Side { value, stderr: (d * self.stderr).abs(), exact: self.exact }
    }

    /// Product of independent sides.
    pub fn times(self, other: Side) -> Self {
        let value = self.value * other.value;
        let stderr = ((self.stderr * other.value).powi(2) + (other.stderr * self.value).powi(2)).sqrt();
        Side { value, stderr, exact: self.exact && other.exact }
    }

    pub fn relative_stderr(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.stderr / self.value.abs()
        }
    }
}

impl From<Estimate> for Side {
    fn from(e: Estimate) -> Self {
        Side::estimate(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Relation {
    /// `lhs <= rhs`.
    Upper,
    /// `lhs >= rhs`.
    Lower,
    /// `lhs = rhs` up to `rel_tol |rhs|` plus the sampling error.
    Identity { rel_tol: f64 },
}

/// A single evaluated inequality or identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub relation: Relation,
    pub lhs: Side,
    pub rhs: Side,
    pub ratio: f64,
    pub status: Status,
}

impl Comparison {
    pub fn new(label: impl Into<String>, relation: Relation, lhs: Side, rhs: Side, tol: f64) -> Self {
        let status = judge(relation, lhs, rhs, tol);
        Comparison { label: label.into(), relation, lhs, rhs, ratio: lhs.value / rhs.value, status }
    }

    pub fn upper(label: impl Into<String>, lhs: Side, rhs: Side, tol: f64) -> Self {
        Self::new(label, Relation::Upper, lhs, rhs, tol)
    }

    pub fn lower(label: impl Into<String>, lhs: Side, rhs: Side, tol: f64) -> Self {
        Self::new(label, Relation::Lower, lhs, rhs, tol)
    }

    pub fn identity(label: impl Into<String>, lhs: Side, rhs: Side, rel_tol: f64) -> Self {
        Self::new(label, Relation::Identity { rel_tol }, lhs, rhs, 0.0)
    }

    /// How close the comparison is to its boundary; larger is tighter.
    pub fn tightness(&self) -> f64 {
        match self.relation {
            Relation::Upper => self.ratio,
            Relation::Lower => 1.0 / self.ratio,
            Relation::Identity { .. } => (self.ratio - 1.0).abs(),
        }
    }
}

/// Three-valued verdict with a `SIGMA` band around the tolerance boundary.
pub fn judge(relation: Relation, lhs: Side, rhs: Side, tol: f64) -> Status {
    if !(lhs.value.is_finite() && rhs.value.is_finite()) {
        return Status::Error;
    }
    let margin = |d: f64, sigma: f64| {
        if d >= SIGMA * sigma {
            Status::Pass
        } else if d < -SIGMA * sigma {
            Status::Fail
        } else {
            Status::Inconclusive
        }
    };
    match relation {
        Relation::Upper => {
            let d = rhs.value * (1.0 + tol) - lhs.value;
            margin(d, lhs.stderr.hypot((1.0 + tol) * rhs.stderr))
        }
        Relation::Lower => {
            let d = lhs.value * (1.0 + tol) - rhs.value;
            margin(d, ((1.0 + tol) * lhs.stderr).hypot(rhs.stderr))
        }
        Relation::Identity { rel_tol } => {
            let sigma = lhs.stderr.hypot(rhs.stderr);
            if (lhs.value - rhs.value).abs() <= IDENTITY_SIGMA * sigma + rel_tol * rhs.value.abs() {
                Status::Pass
            } else {
                Status::Fail
            }
        }
    }
}

/// The comparison that decides a cell: worst status first, then the
/// tightest among those.
pub fn binding(comparisons: &[Comparison]) -> Option<&Comparison> {
    comparisons.iter().max_by(|a, b| {
        a.status.cmp(&b.status).then(a.tightness().partial_cmp(&b.tightness()).unwrap_or(std::cmp::Ordering::Equal))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn est(value: f64, stderr: f64) -> Side {
        Side { value, stderr, exact: false }
    }

    #[test]
    fn upper_bound_bands() {
        assert_eq!(judge(Relation::Upper, Side::exact(1.0), Side::exact(1.0), 0.0), Status::Pass);
        assert_eq!(judge(Relation::Upper, est(1.0, 0.01), Side::exact(2.0), 0.05), Status::Pass);
        assert_eq!(judge(Relation::Upper, est(1.06, 0.01), Side::exact(1.0), 0.05), Status::Inconclusive);
        assert_eq!(judge(Relation::Upper, est(1.2, 0.01), Side::exact(1.0), 0.05), Status::Fail);
    }

    #[test]
    fn lower_bound_mirrors_upper() {
        assert_eq!(judge(Relation::Lower, est(2.0, 0.01), Side::exact(1.0), 0.05), Status::Pass);
        assert_eq!(judge(Relation::Lower, est(0.5, 0.01), Side::exact(1.0), 0.05), Status::Fail);
    }

    #[test]
    fn identity_uses_four_sigma() {
        let r = Relation::Identity { rel_tol: 0.0 };
        assert_eq!(judge(r, est(1.03, 0.01), Side::exact(1.0), 0.0), Status::Pass);
        assert_eq!(judge(r, est(1.05, 0.01), Side::exact(1.0), 0.0), Status::Fail);
        assert_eq!(judge(r, Side::exact(f64::NAN), Side::exact(1.0), 0.0), Status::Error);
    }

    #[test]
    fn binding_prefers_worst_then_tightest() {
        let a = Comparison::upper("a", Side::exact(0.9), Side::exact(1.0), 0.0);
        let b = Comparison::upper("b", Side::exact(0.5), Side::exact(1.0), 0.0);
        let c = Comparison::lower("c", Side::exact(0.5), Side::exact(1.0), 0.0);
        assert_eq!(binding(&[a.clone(), b.clone()]).unwrap().label, "a");
        assert_eq!(binding(&[a, b, c]).unwrap().label, "c");
    }
}
