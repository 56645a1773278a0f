//! Hurwitz zeta ζ_H(s,a) by Euler-Maclaurin continuation, its s-derivative at
//! s = 0, and the Lerch regularized-product function L(x) on all of ℂ.
//!
//! The Euler-Maclaurin form
//!
//! ```text
//! ζ_H(s,a) = Σ_{k<N} (k+a)^{-s} + A^{1-s}/(s-1) + A^{-s}/2
//!            + Σ_{j<=J} B_{2j}/(2j)! (s)_{2j-1} A^{-s-2j+1},   A = N+a
//! ```
//!
//! is both the evaluator and the analytic continuation: N is grown until the
//! first omitted correction term is negligible, and the s-derivative at 0 is
//! taken term by term (the Pochhammer factors all vanish at s = 0 except
//! through their first factor, which differentiates exactly).

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::bernoulli;
use crate::special::{ensure_finite, log_gamma, nonpositive_integer};

const REL_TARGET: f64 = 1e-13;
const MAX_TRUNC: usize = 1 << 21;

fn check_shift_domain(a: Complex64) -> Result<()> {
    ensure_finite(a, "hurwitz shift")?;
    if nonpositive_integer(a).is_some() {
        return Err(Error::Domain(format!("shift a = {a} sits on a pole")));
    }
    if a.re <= 0.0 {
        return Err(Error::Domain(format!(
            "hurwitz zeta needs Re(a) > 0 (pre-shift via the recurrence), got a = {a}"
        )));
    }
    Ok(())
}

/// One Euler-Maclaurin pass at fixed N; returns (value, first omitted term).
fn em_pass(s: Complex64, a: Complex64, n: usize, j_order: usize) -> (Complex64, f64) {
    let mut partial = Complex64::new(0.0, 0.0);
    for k in 0..n {
        partial += (a + k as f64).powc(-s);
    }
    let big_a = a + n as f64;
    let value = partial + big_a.powc(1.0 - s) / (s - 1.0) + 0.5 * big_a.powc(-s);
    let (tail, omitted) = em_tail(s, big_a, j_order);
    (value + tail, omitted)
}

/// Σ_{j<=J} B_{2j}/(2j)! (s)_{2j-1} A^{-s-2j+1} plus the magnitude of the
/// first omitted term. Shared with the series tails.
pub(crate) fn em_tail(s: Complex64, big_a: Complex64, j_order: usize) -> (Complex64, f64) {
    let a_m2 = (big_a * big_a).inv();
    let mut apow = big_a.powc(-s - 1.0); // A^{-s-2j+1} at j=1
    let mut poch = s; // (s)_{2j-1} at j=1
    let mut tail = Complex64::new(0.0, 0.0);
    for j in 1..=j_order {
        tail += bernoulli::em_weight(j) * poch * apow;
        poch *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        apow *= a_m2;
    }
    let omitted =
        bernoulli::em_weight((j_order + 1).min(bernoulli::J_MAX)).abs() * poch.norm() * apow.norm();
    (tail, omitted)
}

/// One continuation evaluation together with the truncations it used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurwitzEval {
    pub s: Complex64,
    pub a: Complex64,
    pub value: Complex64,
    pub em_order: usize,
    pub trunc: usize,
}

/// ζ_H(s, a) for s ≠ 1, Re(a) > 0, reporting the N and J actually used.
pub fn hurwitz_zeta_eval(s: Complex64, a: Complex64, cfg: &EvalConfig) -> Result<HurwitzEval> {
    ensure_finite(s, "hurwitz exponent")?;
    check_shift_domain(a)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::ZetaPole(1.0));
    }
    // Non-positive integer s: (s)_{2j-1} vanishes for 2j-2 >= -s, the
    // formula terminates, and evaluating it at N = 0 is exact (the
    // Bernoulli-polynomial value) with no cancellation against a partial sum.
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && -s.re < 2.0 * bernoulli::J_MAX as f64 {
        let j_needed = (-s.re) as usize / 2 + 1;
        let (value, _) = em_pass(s, a, 0, j_needed);
        return Ok(HurwitzEval {
            s,
            a,
            value: ensure_finite(value, "hurwitz zeta result")?,
            em_order: j_needed,
            trunc: 0,
        });
    }
    let j_order = cfg.em_order.clamp(EvalConfig::MIN_EM_ORDER, EvalConfig::MAX_EM_ORDER);
    // Start N small and |s|-scaled: a large N costs accuracy for Re(s) < 0,
    // where the partial sum grows while the continued value stays small.
    let scale = (s.norm() + 2.0 * j_order as f64) / 3.0;
    let mut n = (scale.ceil() as usize).max(8);
    loop {
        let (value, omitted) = em_pass(s, a, n, j_order);
        if omitted <= REL_TARGET * value.norm().max(1e-300) || n >= MAX_TRUNC {
            return Ok(HurwitzEval {
                s,
                a,
                value: ensure_finite(value, "hurwitz zeta result")?,
                em_order: j_order,
                trunc: n,
            });
        }
        n *= 2;
    }
}

/// ζ_H(s, a) for s ≠ 1, Re(a) > 0.
pub fn hurwitz_zeta(s: Complex64, a: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(hurwitz_zeta_eval(s, a, cfg)?.value)
}

/// ∂ζ_H/∂s at s = 0, by term-wise differentiation of the Euler-Maclaurin
/// formula. Equals log Γ(a) - ½ log(2π).
pub fn hurwitz_zeta_ds0(a: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    check_shift_domain(a)?;
    let j_order = cfg.em_order.clamp(EvalConfig::MIN_EM_ORDER, EvalConfig::MAX_EM_ORDER);
    let n = 32usize;
    // d/ds (k+a)^{-s} |_0 = -ln(k+a)
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc -= (a + k as f64).ln();
    }
    let big_a = a + n as f64;
    let ln_a = big_a.ln();
    // d/ds A^{1-s}/(s-1) |_0 = A ln A - A ;  d/ds A^{-s}/2 |_0 = -ln(A)/2
    acc += big_a * ln_a - big_a - 0.5 * ln_a;
    // d/ds B_{2j}/(2j)! (s)_{2j-1} A^{-s-2j+1} |_0
    //   = B_{2j}/(2j)! (2j-2)! A^{1-2j} = B_{2j}/((2j)(2j-1)) A^{1-2j}
    let mut apow = big_a.inv(); // A^{1-2j} at j=1
    let a_m2 = (big_a * big_a).inv();
    for j in 1..=j_order {
        acc += bernoulli::stirling_coeff(j) * apow;
        apow *= a_m2;
    }
    ensure_finite(acc, "hurwitz ds0 result")
}

/// The Lerch function L(x) = ⧉∏_{n≥0}(n+x) together with the continuation
/// shift that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchValue {
    pub x: Complex64,
    pub value: Complex64,
    /// n_x = ⌊-Re(x)⌋ + 1 when the continuation product was used, else 0.
    pub shift_count: u32,
}

/// L(x) on all of ℂ: exp(-∂ζ_H/∂s(0,x)) for Re(x) > 0, and
/// L(x) = L(x + n_x) ∏_{n<n_x}(n+x) elsewhere. Zeros at the non-positive
/// integers are returned as exact zeros.
pub fn lerch_l(x: Complex64, cfg: &EvalConfig) -> Result<LerchValue> {
    ensure_finite(x, "lerch argument")?;
    if x.re > 0.0 {
        let value = (-hurwitz_zeta_ds0(x, cfg)?).exp();
        return Ok(LerchValue {
            x,
            value: ensure_finite(value, "lerch value")?,
            shift_count: 0,
        });
    }
    let shift_count = (-x.re).floor() as u32 + 1;
    if nonpositive_integer(x).is_some() {
        // the continuation product contains the factor (n + x) = 0 exactly
        return Ok(LerchValue {
            x,
            value: Complex64::new(0.0, 0.0),
            shift_count,
        });
    }
    let base = lerch_l(x + shift_count as f64, cfg)?.value;
    let mut product = Complex64::new(1.0, 0.0);
    for n in 0..shift_count {
        product *= x + n as f64;
    }
    Ok(LerchValue {
        x,
        value: ensure_finite(base * product, "lerch continuation value")?,
        shift_count,
    })
}

/// L(x) L(-x); equals -2x sin(πx).
pub fn lerch_pair_product(x: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    Ok(lerch_l(x, cfg)?.value * lerch_l(-x, cfg)?.value)
}

/// ∫₀¹ log Γ(x) dx, evaluated with the substitution x = e^{-v} to absorb the
/// logarithmic endpoint singularity. Equals ½ log(2π).
pub fn log_gamma_unit_integral(cfg: &EvalConfig) -> Result<f64> {
    let f = |v: f64| {
        let x = (-v).exp();
        match log_gamma(Complex64::new(x, 0.0)) {
            Ok(lg) => lg.re * x,
            Err(_) => f64::NAN,
        }
    };
    let (value, _err) = quad::integrate_real(&f, 0.0, 45.0, cfg.quad_tol, 1e-14, 20_000)?;
    Ok(value)
}
