//! Regularized determinants ⧉∏ Q(k) of monic polynomial sequences.
//!
//! The Gamma-formula routes: for Q(t) = ∏(t + d_i) of degree ℓ,
//!
//! ```text
//! ⧉∏_{k≥0} Q(k) = ∏_i L(d_i) = (2π)^{ℓ/2} / ∏_i Γ(d_i)
//! ⧉∏_{k≥1} Q(k) = (2π)^{ℓ/2} / ∏_i Γ(d_i + 1)
//! ```
//!
//! The d_i are defined by the factorization Q(t) = ∏(t + d_i) (negated roots)
//! and are only required to avoid {0, -1, -2, …}; the formula extends off the
//! positive real axis by continuity, which the Mellin oracle validates.

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::hurwitz::lerch_l;
use crate::poly::{find_shift_set, MonicPoly, MAX_DEGREE};
use crate::special::{ensure_finite, log_gamma, trig, SQRT_TWO_PI};

/// First index of the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartIndex {
    Zero,
    One,
}

/// ε with ε² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegProductMethod {
    GammaFormula,
    ClosedForm,
    MellinOracle,
}

impl RegProductMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GammaFormula => "gamma_formula",
            Self::ClosedForm => "closed_form",
            Self::MellinOracle => "mellin_oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegProduct {
    pub value: Complex64,
    pub start_index: StartIndex,
    pub method: RegProductMethod,
    pub error_estimate: f64,
}

fn near_nonpositive_integer(d: Complex64, tol: f64) -> bool {
    if d.im.abs() > tol {
        return false;
    }
    let nearest = d.re.round();
    nearest <= 0.0 && (d.re - nearest).abs() <= tol
}

fn near_negative_integer(d: Complex64, tol: f64) -> bool {
    if d.im.abs() > tol {
        return false;
    }
    let nearest = d.re.round();
    nearest <= -1.0 && (d.re - nearest).abs() <= tol
}

/// Gamma-formula product from an explicit shift multiset.
pub(crate) fn regprod_from_shifts(
    shifts: &[Complex64],
    residual: f64,
    start_index: StartIndex,
) -> Result<RegProduct> {
    let ell = shifts.len();
    for &d in shifts {
        match start_index {
            StartIndex::Zero => {
                if near_nonpositive_integer(d, 1e-10) {
                    return Err(Error::Domain(format!(
                        "shift {d} is a Gamma pole: Q(k) vanishes for some k >= 0"
                    )));
                }
            }
            StartIndex::One => {
                if near_negative_integer(d, 1e-10) {
                    return Err(Error::Domain(format!(
                        "shift {d} is a Gamma pole: Q(k) vanishes for some k >= 1"
                    )));
                }
            }
        }
    }
    let mut log_value = Complex64::new(ell as f64 * SQRT_TWO_PI.ln(), 0.0);
    for &d in shifts {
        let arg = match start_index {
            StartIndex::Zero => d,
            StartIndex::One => d + 1.0,
        };
        log_value -= log_gamma(arg)?;
    }
    let value = ensure_finite(log_value.exp(), "regularized product")?;
    Ok(RegProduct {
        value,
        start_index,
        method: RegProductMethod::GammaFormula,
        error_estimate: value.norm() * (ell as f64 * 1e-14 + 10.0 * residual),
    })
}

/// ⧉∏_{k≥start} Q(k) by Theorem-style Gamma formula.
pub fn regprod_poly(q: &MonicPoly, start_index: StartIndex) -> Result<RegProduct> {
    let shifts = find_shift_set(q)?;
    regprod_from_shifts(&shifts.shifts, shifts.residual, start_index)
}

/// The m-th roots of ε, ordered by argument in [0, 2π).
///
/// Cardinal-axis roots are exact and the set is exactly closed under
/// conjugation (the upper half is mirrored), so conjugate-paired products
/// built from these roots come out exactly real for real inputs.
pub fn epsilon_roots(m: u32, eps: Epsilon) -> Vec<Complex64> {
    let m = m as usize;
    let snap = |v: f64| {
        if (v - v.round()).abs() < 1e-15 && v.round().abs() <= 1.0 {
            v.round()
        } else {
            v
        }
    };
    let mut roots = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..m {
        // index of the conjugate partner within the ordered set
        let partner = match eps {
            Epsilon::Plus => (m - k) % m,
            Epsilon::Minus => m - 1 - k,
        };
        if partner < k {
            roots[k] = roots[partner].conj();
            continue;
        }
        let angle = match eps {
            Epsilon::Plus => 2.0 * std::f64::consts::PI * k as f64 / m as f64,
            Epsilon::Minus => std::f64::consts::PI * (2 * k + 1) as f64 / m as f64,
        };
        let raw = Complex64::from_polar(1.0, angle);
        roots[k] = Complex64::new(snap(raw.re), snap(raw.im));
    }
    roots
}

/// ⧉∏_{k≥0} ((k+x)^m - ε y^m) = ∏_{ξ^m=1} L(x - ξ ε^{1/m} y).
///
/// `root_choice` selects which m-th root of ε plays ε^{1/m} (indices mod m,
/// ordered by argument); the ξ-product re-indexes under a different choice, so
/// the value does not depend on it beyond roundoff.
pub fn regprod_power_form(
    x: Complex64,
    y: Complex64,
    m: u32,
    eps: Epsilon,
    root_choice: usize,
    cfg: &EvalConfig,
) -> Result<RegProduct> {
    if m < 2 {
        return Err(Error::Domain(format!("power form needs m >= 2, got {m}")));
    }
    if m as usize > MAX_DEGREE {
        return Err(Error::Capacity {
            what: "power-form order m",
            limit: MAX_DEGREE,
            got: m as usize,
        });
    }
    ensure_finite(x, "power form x")?;
    ensure_finite(y, "power form y")?;
    let w = epsilon_roots(m, eps)[root_choice % m as usize];
    let args = power_form_lerch_args(x, y, m, w);
    for &d in &args {
        if near_nonpositive_integer(d, 1e-12) {
            return Err(Error::Domain(format!(
                "L argument {d} is a non-positive integer: a product factor vanishes"
            )));
        }
    }
    let mut value = Complex64::new(1.0, 0.0);
    for &d in &args {
        value *= lerch_l(d, cfg)?.value;
    }
    let value = ensure_finite(value, "power-form product")?;
    Ok(RegProduct {
        value,
        start_index: StartIndex::Zero,
        method: RegProductMethod::GammaFormula,
        error_estimate: value.norm() * m as f64 * 1e-13,
    })
}

/// The L arguments x - ξ w y over the m-th roots of unity ξ.
pub fn power_form_lerch_args(x: Complex64, y: Complex64, m: u32, w: Complex64) -> Vec<Complex64> {
    epsilon_roots(m, Epsilon::Plus)
        .into_iter()
        .map(|xi| x - xi * w * y)
        .collect()
}

/// ⧉∏_{k≥0} (k² + y) = 2 √y sinh(π √y) for y > 0.
pub fn closed_form_quadratic(y: f64) -> Result<Complex64> {
    if !y.is_finite() || y <= 0.0 {
        return Err(Error::Domain(format!("quadratic closed form needs y > 0, got {y}")));
    }
    let root = y.sqrt();
    let s = trig::safe_sinh(std::f64::consts::PI * root, trig::DEFAULT_CLAMP)?;
    Ok(Complex64::new(2.0 * root * s, 0.0))
}

/// ⧉∏_{k≥1} (k⁴ + y) = 2 y^{-1/2} (cosh(√2 π y^{1/4}) - cos(√2 π y^{1/4})) for y > 0.
pub fn closed_form_quartic(y: f64) -> Result<Complex64> {
    if !y.is_finite() || y <= 0.0 {
        return Err(Error::Domain(format!("quartic closed form needs y > 0, got {y}")));
    }
    let a = std::f64::consts::SQRT_2 * std::f64::consts::PI * y.powf(0.25);
    let c = trig::safe_cosh(a, trig::DEFAULT_CLAMP)?;
    Ok(Complex64::new(2.0 / y.sqrt() * (c - a.cos()), 0.0))
}

/// ⧉∏ Q1·Q2 / (⧉∏ Q1 · ⧉∏ Q2); equals 1 for every polynomial the Gamma
/// formula covers.
pub fn multiplicativity_ratio(
    q1: &MonicPoly,
    q2: &MonicPoly,
    start_index: StartIndex,
) -> Result<Complex64> {
    let combined = regprod_poly(&q1.mul(q2)?, start_index)?;
    let first = regprod_poly(q1, start_index)?;
    let second = regprod_poly(q2, start_index)?;
    Ok(combined.value / (first.value * second.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> EvalConfig {
        EvalConfig::hurwitz_em()
    }

    const TWO_SINH_PI: f64 = 23.09747871451549675595466863077681936899037813279;
    const QUARTIC_1: f64 = 85.563967887821437681417882822688576752055736676807;
    const QUARTIC_16: f64 = 1807.5162866406419568272336716417109038063889428444;

    #[test]
    fn linear_product_is_sqrt_two_pi() {
        let q = MonicPoly::new(vec![c(1.0, 0.0)]).unwrap();
        let p = regprod_poly(&q, StartIndex::Zero).unwrap();
        assert!((p.value.re - SQRT_TWO_PI).abs() < 1e-12);
        assert!(p.value.im.abs() < 1e-14);
    }

    #[test]
    fn factorial_sequence_from_start_one() {
        // Q(t) = t, start 1: the sequence 1, 2, 3, ... regularizes to sqrt(2 pi)
        let q = MonicPoly::new(vec![c(0.0, 0.0)]).unwrap();
        let p = regprod_poly(&q, StartIndex::One).unwrap();
        assert!((p.value.re - SQRT_TWO_PI).abs() < 1e-12);
        // but from start 0 the k = 0 factor vanishes
        assert!(regprod_poly(&q, StartIndex::Zero).is_err());
    }

    #[test]
    fn quadratic_product_is_two_pi() {
        // (t+1)(t+2) from k >= 0: (2 pi)/(Gamma(1) Gamma(2)) = 2 pi
        let q = MonicPoly::new(vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let p = regprod_poly(&q, StartIndex::Zero).unwrap();
        assert!((p.value.re - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn imaginary_shifts_reach_the_sinh_closed_form() {
        // prod_{k>=1} (k^2+1) = 2 sinh(pi)
        let q = MonicPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let p = regprod_poly(&q, StartIndex::One).unwrap();
        assert!((p.value.re - TWO_SINH_PI).abs() < 1e-11 * TWO_SINH_PI);
        assert!(p.value.im.abs() < 1e-11 * TWO_SINH_PI);
    }

    #[test]
    fn closed_forms_match_frozen_values() {
        let v = closed_form_quadratic(1.0).unwrap();
        assert!((v.re - TWO_SINH_PI).abs() < 1e-13 * TWO_SINH_PI);
        let v = closed_form_quadratic(4.0).unwrap();
        let expected = 1070.9795761640660570284697987522247088948247495966;
        assert!((v.re - expected).abs() < 1e-13 * expected);
        let v = closed_form_quartic(1.0).unwrap();
        assert!((v.re - QUARTIC_1).abs() < 1e-13 * QUARTIC_1);
        let v = closed_form_quartic(16.0).unwrap();
        assert!((v.re - QUARTIC_16).abs() < 1e-13 * QUARTIC_16);
    }

    #[test]
    fn quadratic_closed_form_small_y_leading_term() {
        let y = 1e-8;
        let v = closed_form_quadratic(y).unwrap().re;
        let leading = 2.0 * std::f64::consts::PI * y;
        // sinh(x)/x - 1 = x^2/6 ~ 1.6e-8 at x = pi sqrt(y)
        assert!((v - leading).abs() < 1e-7 * leading);
    }

    #[test]
    fn quartic_small_y_limit_is_the_fourth_power_of_sqrt_two_pi() {
        // cosh(a) - cos(a) = a^2 + O(a^6), so the y -> 0 limit is
        // 2 (sqrt2 pi)^2 = 4 pi^2 = (sqrt(2 pi))^4, the regularized k^4
        let v = closed_form_quartic(1e-9).unwrap().re;
        let limit = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((v - limit).abs() < 1e-6 * limit, "{v} vs {limit}");
    }

    #[test]
    fn closed_form_overflow_and_domain_errors() {
        assert!(matches!(
            closed_form_quadratic(1e6),
            Err(Error::Overflow(_))
        ));
        assert!(closed_form_quadratic(-1.0).is_err());
        assert!(closed_form_quartic(0.0).is_err());
    }

    #[test]
    fn power_form_reproduces_quadratic_closed_form() {
        // prod_{k>=0}(k^2 + 1): m = 2, eps = -1, x = 0, y = 1
        let p = regprod_power_form(c(0.0, 0.0), c(1.0, 0.0), 2, Epsilon::Minus, 0, &cfg()).unwrap();
        assert!((p.value.re - TWO_SINH_PI).abs() < 1e-10 * TWO_SINH_PI);
        assert!(p.value.im.abs() < 1e-10 * TWO_SINH_PI);
    }

    #[test]
    fn power_form_reproduces_quartic_closed_form() {
        // prod_{k>=1}(k^4 + 1) via the shift x -> x+1
        let p = regprod_power_form(c(1.0, 0.0), c(1.0, 0.0), 4, Epsilon::Minus, 0, &cfg()).unwrap();
        assert!((p.value.re - QUARTIC_1).abs() < 1e-10 * QUARTIC_1);
    }

    #[test]
    fn power_form_with_y_zero_is_lerch_power() {
        let x = c(1.3, 0.4);
        let p = regprod_power_form(x, c(0.0, 0.0), 3, Epsilon::Plus, 0, &cfg()).unwrap();
        let l = lerch_l(x, &cfg()).unwrap().value;
        let expected = l * l * l;
        assert!((p.value - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn power_form_root_choice_is_immaterial() {
        let x = c(0.5, 0.0);
        let y = c(1.25, 0.0);
        let base = regprod_power_form(x, y, 4, Epsilon::Minus, 0, &cfg()).unwrap();
        for choice in 1..4 {
            let other = regprod_power_form(x, y, 4, Epsilon::Minus, choice, &cfg()).unwrap();
            assert!(
                (base.value - other.value).norm() < 1e-10 * base.value.norm(),
                "choice {choice}"
            );
        }
    }

    #[test]
    fn power_form_rejects_vanishing_factor() {
        // x = 1, y = 1, m = 2, eps = +1: factor (k+1)^2 - 1 vanishes at k = 0
        assert!(
            regprod_power_form(c(1.0, 0.0), c(1.0, 0.0), 2, Epsilon::Plus, 0, &cfg()).is_err()
        );
    }

    #[test]
    fn multiplicativity_is_exactly_one_on_simple_factors() {
        let q1 = MonicPoly::new(vec![c(1.0, 0.0)]).unwrap(); // t + 1
        let q2 = MonicPoly::new(vec![c(2.0, 0.0)]).unwrap(); // t + 2
        let r = multiplicativity_ratio(&q1, &q2, StartIndex::Zero).unwrap();
        assert!((r - c(1.0, 0.0)).norm() < 1e-12);

        // Q1 = Q2 = t + 3: the product has a double shift, where the root
        // cluster centroid limits accuracy to ~1e-11
        let q3 = MonicPoly::new(vec![c(3.0, 0.0)]).unwrap();
        let r = multiplicativity_ratio(&q3, &q3, StartIndex::Zero).unwrap();
        assert!((r - c(1.0, 0.0)).norm() < 1e-10);

        let qa = MonicPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap(); // t^2+1
        let qb = MonicPoly::new(vec![c(4.0, 0.0), c(0.0, 0.0)]).unwrap(); // t^2+4
        let r = multiplicativity_ratio(&qa, &qb, StartIndex::One).unwrap();
        assert!((r - c(1.0, 0.0)).norm() < 1e-11);
    }
}
