//! Complex Gamma family (log Γ, Γ, Ψ, Ψ⁽ⁿ⁾), exact Bernoulli numbers and
//! overflow-safe trigonometric helpers.
//!
//! log Γ is evaluated by argument-raising to Re(z) >= 10 followed by the
//! Stirling series with Bernoulli coefficients; Ψ and Ψ⁽ⁿ⁾ use the analogous
//! shifted asymptotic expansions. The quadrature of the defining integral
//! serves as an independent oracle for all of them.

pub mod bernoulli;
pub mod trig;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quad;

/// Euler-Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.57721566490153286060651209008240243104215933593992;
/// √(2π).
pub const SQRT_TWO_PI: f64 = 2.5066282746310005024157652848110452530069867406099;
/// ½ log(2π).
pub const HALF_LOG_TWO_PI: f64 = 0.91893853320467274178032973640561763986139747363778;

/// Argument-raising target for the Stirling series.
const STIRLING_SHIFT: f64 = 10.0;
/// Number of Bernoulli terms in the Stirling series at Re(w) >= 10.
const STIRLING_TERMS: usize = 12;
/// Polygamma derivative order cap.
pub const POLYGAMMA_MAX_ORDER: usize = 12;

/// The offending integer if z sits exactly on a Gamma pole.
pub(crate) fn nonpositive_integer(z: Complex64) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re >= -1e18 {
        Some(z.re as i64)
    } else {
        None
    }
}

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

fn check_gamma_domain(z: Complex64) -> Result<()> {
    ensure_finite(z, "gamma argument")?;
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole(n));
    }
    if z.re < -1e6 {
        return Err(Error::Domain(format!(
            "Re(z) = {} too far left for recurrence-based evaluation",
            z.re
        )));
    }
    Ok(())
}

/// Stirling series for log Γ(w), accurate to ~1e-15 relative for Re(w) >= 10.
fn stirling_log_gamma(w: Complex64) -> Complex64 {
    let mut acc = (w - 0.5) * w.ln() - w + HALF_LOG_TWO_PI;
    let w2 = w * w;
    let mut wp = w; // w^{2j-1}
    for j in 1..=STIRLING_TERMS {
        acc += bernoulli::stirling_coeff(j) / wp;
        wp *= w2;
    }
    acc
}

/// log Γ(z): principal branch on Re(z) > 0, extended leftward by accumulating
/// -log(z+k) terms of the recurrence Γ(z+1) = z Γ(z).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_gamma_domain(z)?;
    let mut w = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        correction += w.ln();
        w += 1.0;
    }
    ensure_finite(stirling_log_gamma(w) - correction, "log_gamma result")
}

/// Γ(z) = exp(log Γ(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    let lg = log_gamma(z)?;
    if lg.re > 709.0 {
        return Err(Error::Overflow(lg.re));
    }
    ensure_finite(lg.exp(), "gamma result")
}

/// Ψ(z) = Γ'(z)/Γ(z) via recurrence shift and the Bernoulli asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_gamma_domain(z)?;
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        acc -= w.inv();
        w += 1.0;
    }
    // psi(w) = ln w - 1/(2w) - sum_j B_{2j} / (2j w^{2j})
    let mut res = w.ln() - 0.5 * w.inv();
    let w2inv = (w * w).inv();
    let mut wp = w2inv;
    for j in 1..=STIRLING_TERMS {
        res -= bernoulli::digamma_coeff(j) * wp;
        wp *= w2inv;
    }
    ensure_finite(acc + res, "digamma result")
}

/// Ψ⁽ⁿ⁾(z), the n-th derivative of Ψ, for 1 <= n <= 12.
pub fn polygamma(n: usize, z: Complex64) -> Result<Complex64> {
    if n == 0 || n > POLYGAMMA_MAX_ORDER {
        return Err(Error::Capacity {
            what: "polygamma order",
            limit: POLYGAMMA_MAX_ORDER,
            got: n,
        });
    }
    check_gamma_domain(z)?;
    let shift = 14.0 + n as f64;
    let nf = factorial(n);
    // psi^{(n)}(z) = psi^{(n)}(z+1) - (-1)^n n! / z^{n+1}
    let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < shift {
        acc -= sign_n * nf * w.powi(-(n as i32 + 1));
        w += 1.0;
    }
    // psi^{(n)}(w) = (-1)^{n-1} [ (n-1)!/w^n + n!/(2 w^{n+1})
    //                            + sum_j B_{2j} (2j+n-1)! / ((2j)! w^{2j+n}) ]
    let j_ratio = |j: usize| -> f64 {
        // (2j+n-1)! / (2j)!
        ((2 * j + 1)..=(2 * j + n - 1)).fold(1.0, |r, k| r * k as f64)
    };
    let mut series =
        factorial(n - 1) * w.powi(-(n as i32)) + nf * 0.5 * w.powi(-(n as i32 + 1));
    let w2inv = (w * w).inv();
    let mut wp = w.powi(-(n as i32 + 2));
    for j in 1..=16usize {
        series += bernoulli::bernoulli_even_f64(j)? * j_ratio(j) * wp;
        wp *= w2inv;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    ensure_finite(acc + sign * series, "polygamma result")
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Independent Gamma oracle: adaptive quadrature of ∫₀^∞ t^{z-1} e^{-t} dt.
///
/// For |Im z| > 2 the contour is rotated, t = e^{iφ}u with φ aligned to the
/// saddle of the integrand at t = z - 1 (an exact transformation of the
/// integral). On the real axis the integrand mass dwarfs |Γ(z)| once Im z is
/// large and binary64 panel sums could never reach the requested relative
/// accuracy; along the saddle direction the mass is comparable to the answer.
pub fn gamma_integral_oracle(z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    ensure_finite(z, "gamma oracle argument")?;
    if z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma integral requires Re(z) > 0, got {}",
            z.re
        )));
    }
    let sigma = z.re;
    let phi = if z.im.abs() > 2.0 {
        z.im.atan2(z.re - 1.0).clamp(-1.45, 1.45)
    } else {
        0.0
    };
    let dir = Complex64::from_polar(1.0, phi); // e^{i phi}
    let i = Complex64::new(0.0, 1.0);
    let prefactor = (i * z * phi).exp();
    // panel-error floors of the oscillatory pieces sit near 1e-13 relative
    let rel = cfg.quad_tol.max(5e-12);

    // (0, 1] piece in the log domain: u = e^x, integrand e^{z x - dir e^x}
    let x0 = -(42.0 + (1.0 + z.norm()).ln()) / sigma;
    let f_low = |x: f64| (z * x - dir * x.exp()).exp();
    let low = quad::integrate(&f_low, x0, 0.0, rel, 1e-300, 60_000)?;

    // [1, upper) piece: truncate where u^{sigma-1} e^{-u cos phi} is negligible
    let cosphi = phi.cos();
    let mut upper = 60.0_f64;
    for _ in 0..4 {
        upper = (46.0 + (sigma - 1.0).max(0.0) * upper.ln()) / cosphi;
    }
    let upper = upper.max(4.0);
    let f_high = |u: f64| {
        // u^{z-1} e^{-dir u}
        ((z - 1.0) * u.ln() - dir * u).exp()
    };
    let high = quad::integrate(&f_high, 1.0, upper, rel, 1e-300, 60_000)?;

    ensure_finite(prefactor * (low.value + high.value), "gamma oracle result")
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: EvalConfig = EvalConfig {
        trunc: 10_000,
        em_order: 8,
        quad_tol: 1e-12,
        overflow_clamp: 700.0,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    // --- frozen oracle values (50-digit arithmetic, rounded to binary64) ---
    const GAMMA_HALF: f64 = 1.7724538509055160272981674833411451827975494561224;
    const LOG_GAMMA_HALF: f64 = 0.57236494292470008707171367567652935582364740645766;
    const DIGAMMA_HALF: f64 = -1.9635100260214234794409763329987555671931596046604;
    const ZETA_3: f64 = 1.2020569031595942853997381615114499907649862923405;
    const PI_SQ_6: f64 = 1.6449340668482264364724151666460251892189499012068;

    #[test]
    fn log_gamma_trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24.0_f64.ln()).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn log_gamma_half_matches_quadrature_derived_value() {
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - LOG_GAMMA_HALF).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_complex_spot_value() {
        // loggamma(2+3i) from the 50-digit oracle
        let v = log_gamma(c(2.0, 3.0)).unwrap();
        let expected = c(-2.0928517530927333495641886250303752616932852964474,
                         2.302396543466867626153707617788581578292789221371);
        assert!((v - expected).norm() < 1e-13);
    }

    #[test]
    fn gamma_trivial_and_half_integer_values() {
        assert!(rel_err(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel_err(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel_err(gamma(c(0.5, 0.0)).unwrap(), c(GAMMA_HALF, 0.0)) < 1e-13);
    }

    #[test]
    fn gamma_left_half_plane_through_recurrence() {
        // Gamma(-2.5) from the oracle
        let v = gamma(c(-2.5, 0.0)).unwrap();
        assert!((v.re - (-0.94530872048294188122568932444861076415869304326527)).abs() < 1e-13);
        assert!(v.im.abs() < 1e-13);
        let v = gamma(c(1.0, 1.0)).unwrap();
        let expected = c(0.49801566811835604271369111746219809195296296758765,
                         -0.15494982830181068512495513048388660519587965207932);
        assert!((v - expected).norm() < 1e-14);
    }

    #[test]
    fn gamma_pole_errors_carry_the_integer() {
        assert_eq!(gamma(c(0.0, 0.0)), Err(Error::Pole(0)));
        assert_eq!(gamma(c(-3.0, 0.0)), Err(Error::Pole(-3)));
        assert_eq!(log_gamma(c(-7.0, 0.0)), Err(Error::Pole(-7)));
        assert_eq!(digamma(c(-1.0, 0.0)), Err(Error::Pole(-1)));
        assert_eq!(polygamma(2, c(0.0, 0.0)), Err(Error::Pole(0)));
    }

    #[test]
    fn digamma_frozen_values() {
        // psi(1) = -gamma: series oracle -g + sum(1/n - 1/(n+z-1)) is -g exactly at z=1
        let v = digamma(c(1.0, 0.0)).unwrap();
        assert!((v.re + EULER_GAMMA).abs() < 1e-14);
        // psi(2) = 1 - gamma by the recurrence
        let v = digamma(c(2.0, 0.0)).unwrap();
        assert!((v.re - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        // psi(1/2) = -gamma - 2 log 2 from the series oracle
        let v = digamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - DIGAMMA_HALF).abs() < 1e-14);
        // complex spot value
        let v = digamma(c(2.0, 3.0)).unwrap();
        let expected = c(1.2079807107101508807866400955803914551460705609388,
                         1.1041296805875762096619788786172571999050537973016);
        assert!((v - expected).norm() < 1e-13);
    }

    #[test]
    fn digamma_matches_truncated_series_oracle() {
        // independent oracle: psi(z) = -g + sum_{n>=1} (1/n - 1/(n+z-1)),
        // accelerated with the exact tail sum_{n>N} (z-1)/(n(n+z-1))
        // bounded by |z-1| * integral
        let z = c(1.75, -0.4);
        let n_terms = 4_000_000;
        let mut acc = Complex64::new(-EULER_GAMMA, 0.0);
        for n in 1..=n_terms {
            let nf = n as f64;
            acc += 1.0 / nf - ((z - 1.0) + nf).inv();
        }
        // tail ~ (z-1)/N with next-order correction; bound loose at 1e-7
        let v = digamma(z).unwrap();
        assert!((v - acc).norm() < 1e-6);
    }

    #[test]
    fn polygamma_frozen_values() {
        assert!(rel_err(polygamma(1, c(1.0, 0.0)).unwrap(), c(PI_SQ_6, 0.0)) < 1e-13);
        assert!(rel_err(
            polygamma(1, c(2.0, 0.0)).unwrap(),
            c(PI_SQ_6 - 1.0, 0.0)
        ) < 1e-13);
        assert!(rel_err(
            polygamma(2, c(1.0, 0.0)).unwrap(),
            c(-2.0 * ZETA_3, 0.0)
        ) < 1e-13);
        // psi'''(1) = 6 zeta(4)
        assert!(rel_err(
            polygamma(3, c(1.0, 0.0)).unwrap(),
            c(6.4939394022668291490960221792470074166485057115124, 0.0)
        ) < 1e-13);
    }

    #[test]
    fn polygamma_recurrence_holds() {
        // psi^{(n)}(z+1) = psi^{(n)}(z) + (-1)^n n!/z^{n+1}
        for n in 1..=POLYGAMMA_MAX_ORDER {
            let z = c(0.8, 0.6);
            let lhs = polygamma(n, z + 1.0).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let at_z = polygamma(n, z).unwrap();
            let shift = sign * factorial(n) * z.powi(-(n as i32 + 1));
            let rhs = at_z + shift;
            // the recurrence cancels |at_z| ~ n!/|z|^{n+1} down to |lhs|;
            // tolerance must scale with the cancelling magnitude
            let scale = at_z.norm().max(shift.norm()).max(1.0);
            assert!(
                (lhs - rhs).norm() < 1e-13 * scale,
                "order {n}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn polygamma_order_cap() {
        assert!(matches!(
            polygamma(13, c(1.0, 0.0)),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            polygamma(0, c(1.0, 0.0)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn digamma_recurrence_tight() {
        let z = c(0.3, 5.0);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + z.inv();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }

    #[test]
    fn oracle_trivial_values() {
        let v = gamma_integral_oracle(c(1.0, 0.0), &CFG).unwrap();
        assert!(rel_err(v, c(1.0, 0.0)) < 1e-11);
        let v = gamma_integral_oracle(c(2.0, 0.0), &CFG).unwrap();
        assert!(rel_err(v, c(1.0, 0.0)) < 1e-11);
        // Gamma(3.5) = 15 sqrt(pi) / 8, derived via the recurrence from Gamma(1/2)
        let v = gamma_integral_oracle(c(3.5, 0.0), &CFG).unwrap();
        assert!(rel_err(v, c(15.0 * GAMMA_HALF / 8.0, 0.0)) < 1e-11);
    }

    #[test]
    fn oracle_agrees_with_log_gamma_on_the_strip() {
        // contract: |exp(log_gamma) - oracle| relative < 1e-10
        // for 0.1 <= Re <= 30, |Im| <= 30
        let points = [
            c(0.1, 0.0),
            c(0.5, 0.5),
            c(1.0, -2.0),
            c(2.5, 7.0),
            c(5.0, -13.0),
            c(10.0, 30.0),
            c(30.0, 30.0),
            c(30.0, 0.0),
            c(0.1, 30.0),
            c(0.1, -9.0),
            c(17.0, -21.0),
        ];
        for &z in &points {
            let via_series = gamma(z).unwrap();
            let via_quad = gamma_integral_oracle(z, &CFG).unwrap();
            let e = rel_err(via_series, via_quad);
            assert!(e < 1e-10, "z = {z}: relative gap {e:.3e}");
        }
    }

    #[test]
    fn oracle_requires_positive_real_part() {
        assert!(gamma_integral_oracle(c(-0.5, 1.0), &CFG).is_err());
    }

    #[test]
    fn constants_pin_to_reference_digits() {
        assert!((EULER_GAMMA - 0.5772156649).abs() < 1e-9);
        assert!((SQRT_TWO_PI - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        assert!((HALF_LOG_TWO_PI - 0.5 * (2.0 * std::f64::consts::PI).ln()).abs() < 1e-15);
    }
}
