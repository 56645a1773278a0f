//! Verification-report rows and their JSON/CSV encodings.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::complexfmt::report_complex;

/// One identity checked at one grid point.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity_id: String,
    /// Parameter record; BTreeMap keeps the key order deterministic.
    pub grid_point: BTreeMap<String, f64>,
    /// Complex values as `re+imi`, 17 significant digits.
    pub lhs: String,
    pub rhs: String,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub method_pair: [String; 2],
}

impl VerificationReport {
    /// pass ⇔ rel ≤ tol, or abs ≤ tol when |rhs| < 1.
    pub fn build(
        identity_id: &str,
        grid_point: &[(&str, f64)],
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        methods: (&str, &str),
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_residual = if scale > 0.0 { abs_residual / scale } else { 0.0 };
        let pass = rel_residual <= tolerance || (rhs.norm() < 1.0 && abs_residual <= tolerance);
        Self {
            identity_id: identity_id.to_string(),
            grid_point: grid_point
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            lhs: report_complex(lhs),
            rhs: report_complex(rhs),
            abs_residual,
            rel_residual,
            tolerance,
            pass,
            method_pair: [methods.0.to_string(), methods.1.to_string()],
        }
    }

    /// A row carrying an evaluation error: never passes.
    pub fn failure(identity_id: &str, grid_point: &[(&str, f64)], error: &str) -> Self {
        Self {
            identity_id: identity_id.to_string(),
            grid_point: grid_point
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            lhs: format!("error: {error}"),
            rhs: String::new(),
            abs_residual: f64::INFINITY,
            rel_residual: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
            method_pair: ["error".into(), "error".into()],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub const CSV_HEADER: &'static str =
        "identity_id,grid_point,lhs,rhs,abs_residual,rel_residual,tolerance,pass,method_pair";

    pub fn to_csv_row(&self) -> String {
        let grid = self
            .grid_point
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{:e},{:e},{:e},{},{}",
            self.identity_id,
            grid,
            self.lhs,
            self.rhs,
            self.abs_residual,
            self.rel_residual,
            self.tolerance,
            self.pass,
            self.method_pair.join("|")
        )
    }
}
