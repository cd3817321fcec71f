//! Identity reports and their JSON serialization.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::spectral::fmt_sig17;

/// Added to every normalizer so that `0 = 0` comparisons yield a zero gap.
pub const GAP_FLOOR: f64 = 1e-30;

/// Fraction of the absolute integrand mass added to the normalizer of
/// [`IdentityReport::bounded`].
pub const CANCELLATION_FLOOR: f64 = 1e-6;

/// One verified instance of an identity.
///
/// For balanced identities `lhs = rhs`, `abs_gap = |lhs - rhs|` and the
/// normalizer is `|lhs| + |rhs|`. Residual-type checks (relations that must
/// vanish) carry the residual in `abs_gap` and are normalized by a scale that
/// bounds it, recorded under the `scale` parameter. Either way
/// `rel_gap = abs_gap / (normalizer + GAP_FLOOR)` lies in `[0, 1]` and
/// `pass` is `rel_gap <= tol` with `tol` recorded in `params`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity_name: String,
    pub params: Vec<(String, String)>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub pass: bool,
}

impl IdentityReport {
    /// A two-sided identity `lhs = rhs`.
    pub fn balanced(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_gap = (lhs - rhs).abs();
        Self::with_normalizer(name, lhs, rhs, abs_gap, lhs.abs() + rhs.abs(), tol)
    }

    /// A relation whose residual `abs_gap` is bounded by `scale`.
    pub fn residual(name: impl Into<String>, lhs: f64, rhs: f64, abs_gap: f64, scale: f64, tol: f64) -> Self {
        let mut r = Self::with_normalizer(name, lhs, rhs, abs_gap, scale.max(abs_gap), tol);
        r.params.push(("scale".into(), fmt_sig17(scale)));
        r
    }

    /// A two-sided identity between integrals whose round-off is controlled
    /// by `bound`, an integral of absolute values dominating both sides.
    /// The normalizer is `|lhs| + |rhs| + CANCELLATION_FLOOR * bound`, so
    /// identities whose sides both cancel to round-off level are not judged
    /// on noise alone.
    pub fn bounded(name: impl Into<String>, lhs: f64, rhs: f64, bound: f64, tol: f64) -> Self {
        let abs_gap = (lhs - rhs).abs();
        let normalizer = lhs.abs() + rhs.abs() + CANCELLATION_FLOOR * bound;
        let mut r = Self::with_normalizer(name, lhs, rhs, abs_gap, normalizer, tol);
        r.params.push(("scale".into(), fmt_sig17(bound)));
        r
    }

    fn with_normalizer(name: impl Into<String>, lhs: f64, rhs: f64, abs_gap: f64, normalizer: f64, tol: f64) -> Self {
        let rel_gap = if abs_gap.is_nan() || normalizer.is_nan() {
            f64::NAN
        } else {
            (abs_gap / (normalizer + GAP_FLOOR)).min(1.0)
        };
        Self {
            identity_name: name.into(),
            params: vec![("tol".into(), fmt_sig17(tol))],
            lhs,
            rhs,
            abs_gap,
            rel_gap,
            pass: rel_gap <= tol,
        }
    }

    /// Appends a parameter; the builder form keeps call sites compact.
    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn param_f64(self, key: impl Into<String>, value: f64) -> Self {
        self.param(key, fmt_sig17(value))
    }

    pub fn get_param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn tolerance(&self) -> f64 {
        self.get_param("tol").and_then(|v| v.parse().ok()).unwrap_or(f64::NAN)
    }

    /// Forces the verdict to fail, recording why.
    pub fn fail_with(mut self, reason: &str) -> Self {
        self.pass = false;
        self.params.push(("failure".into(), reason.into()));
        self
    }

    fn params_key(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.params {
            let _ = write!(s, "{k}={v};");
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("{");
        let _ = write!(s, "\"identity_name\":{},", json_string(&self.identity_name));
        s.push_str("\"params\":{");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}:{}", json_string(k), json_string(v));
        }
        s.push_str("},");
        let _ = write!(
            s,
            "\"lhs\":{},\"rhs\":{},\"abs_gap\":{},\"rel_gap\":{},\"pass\":{}}}",
            json_number(self.lhs),
            json_number(self.rhs),
            json_number(self.abs_gap),
            json_number(self.rel_gap),
            self.pass
        );
        s
    }
}

/// Deterministic report order: identity name, then rendered parameters.
pub fn report_order(a: &IdentityReport, b: &IdentityReport) -> Ordering {
    a.identity_name
        .cmp(&b.identity_name)
        .then_with(|| a.params_key().cmp(&b.params_key()))
}

pub fn sort_reports(reports: &mut [IdentityReport]) {
    reports.sort_by(report_order);
}

/// A top-level JSON array, one report per line.
pub fn reports_to_json(reports: &[IdentityReport]) -> String {
    let mut s = String::from("[\n");
    for (i, r) in reports.iter().enumerate() {
        s.push_str("  ");
        s.push_str(&r.to_json());
        if i + 1 < reports.len() {
            s.push(',');
        }
        s.push('\n');
    }
    s.push_str("]\n");
    s
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        fmt_sig17(x)
    } else {
        "null".into()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
