//! Evaluation parameters controlling truncations, Euler-Maclaurin order and
//! quadrature tolerances.

use crate::error::{Error, Result};

/// Knobs for the summation, continuation and quadrature routines.
///
/// Two named presets exist because the series and continuation code want
/// different settings: [`EvalConfig::default`] carries the direct-summation
/// defaults (N = 10^4, J = 8) and [`EvalConfig::hurwitz_em`] the
/// Euler-Maclaurin continuation defaults (J = 12). The Hurwitz zeta picks its
/// truncation adaptively from |s| (growing it until the first omitted
/// correction is negligible), so only `em_order` and the tolerances matter
/// there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Truncation length N of direct partial sums.
    pub trunc: usize,
    /// Euler-Maclaurin order J: number of B_{2j} correction terms.
    pub em_order: usize,
    /// Quadrature tolerance, applied relative to the accumulated integral
    /// with itself as an absolute floor.
    pub quad_tol: f64,
    /// Exponential arguments beyond this magnitude are rejected as overflow
    /// instead of producing infinities.
    pub overflow_clamp: f64,
}

impl EvalConfig {
    pub const MIN_TRUNC: usize = 8;
    pub const MIN_EM_ORDER: usize = 2;
    pub const MAX_EM_ORDER: usize = 32;

    pub fn new(trunc: usize, em_order: usize, quad_tol: f64, overflow_clamp: f64) -> Result<Self> {
        if trunc < Self::MIN_TRUNC {
            return Err(Error::Capacity {
                what: "truncation length below minimum",
                limit: Self::MIN_TRUNC,
                got: trunc,
            });
        }
        if !(Self::MIN_EM_ORDER..=Self::MAX_EM_ORDER).contains(&em_order) {
            return Err(Error::Capacity {
                what: "Euler-Maclaurin order",
                limit: Self::MAX_EM_ORDER,
                got: em_order,
            });
        }
        if !(1e-14..=1e-4).contains(&quad_tol) {
            return Err(Error::Domain(format!(
                "quadrature tolerance {quad_tol} outside [1e-14, 1e-4]"
            )));
        }
        if !overflow_clamp.is_finite() || overflow_clamp <= 0.0 {
            return Err(Error::Domain(format!(
                "overflow clamp {overflow_clamp} must be positive and finite"
            )));
        }
        Ok(Self {
            trunc,
            em_order,
            quad_tol,
            overflow_clamp,
        })
    }

    /// Euler-Maclaurin continuation preset for the Hurwitz zeta family.
    pub fn hurwitz_em() -> Self {
        Self {
            trunc: 50,
            em_order: 12,
            quad_tol: 1e-12,
            overflow_clamp: 700.0,
        }
    }

    pub fn with_quad_tol(mut self, quad_tol: f64) -> Result<Self> {
        if !(1e-14..=1e-4).contains(&quad_tol) {
            return Err(Error::Domain(format!(
                "quadrature tolerance {quad_tol} outside [1e-14, 1e-4]"
            )));
        }
        self.quad_tol = quad_tol;
        Ok(self)
    }
}

impl Default for EvalConfig {
    /// Direct-summation defaults: N = 10^4 with an order-8 tail.
    fn default() -> Self {
        Self {
            trunc: 10_000,
            em_order: 8,
            quad_tol: 1e-10,
            overflow_clamp: 700.0,
        }
    }
}
