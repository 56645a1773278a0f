//! Monic polynomials Q and their shift multisets {d_i} with Q(t) = ∏(t + d_i).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::ensure_finite;

/// Degree cap: root conditioning and the Gamma-product budget.
pub const MAX_DEGREE: usize = 32;

/// Monic polynomial t^ℓ + c_{ℓ-1} t^{ℓ-1} + … + c_0 with the leading 1 implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    /// Ascending coefficients c_0 … c_{ℓ-1}.
    coeffs: Vec<Complex64>,
}

impl MonicPoly {
    /// Build from ascending coefficients; the degree is `coeffs.len()`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial must have degree >= 1".into()));
        }
        if coeffs.len() > MAX_DEGREE {
            return Err(Error::Capacity {
                what: "polynomial degree",
                limit: MAX_DEGREE,
                got: coeffs.len(),
            });
        }
        for &c in &coeffs {
            ensure_finite(c, "polynomial coefficient")?;
        }
        Ok(Self { coeffs })
    }

    /// Expand ∏_i (t + d_i).
    pub fn from_shifts(shifts: &[Complex64]) -> Result<Self> {
        if shifts.is_empty() || shifts.len() > MAX_DEGREE {
            return Err(Error::Capacity {
                what: "polynomial degree",
                limit: MAX_DEGREE,
                got: shifts.len(),
            });
        }
        // coefficients including the leading 1, ascending
        let mut full = vec![Complex64::new(1.0, 0.0)];
        for &d in shifts {
            full.push(Complex64::new(0.0, 0.0));
            for i in (0..full.len()).rev() {
                let prev = if i > 0 {
                    full[i - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                full[i] = full[i] * d + prev;
            }
        }
        full.pop(); // drop the leading 1
        Self::new(full)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Ascending coefficients c_0 … c_{ℓ-1} (leading 1 not stored).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation including the implicit leading coefficient.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Product polynomial Q1 · Q2.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let l1 = self.degree();
        let l2 = other.degree();
        // convolution with implicit leading ones
        let a: Vec<Complex64> = self
            .coeffs
            .iter()
            .copied()
            .chain(std::iter::once(Complex64::new(1.0, 0.0)))
            .collect();
        let b: Vec<Complex64> = other
            .coeffs
            .iter()
            .copied()
            .chain(std::iter::once(Complex64::new(1.0, 0.0)))
            .collect();
        let mut prod = vec![Complex64::new(0.0, 0.0); l1 + l2 + 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] += ai * bj;
            }
        }
        prod.pop();
        Self::new(prod)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftWarning {
    /// A shift lies within 1e-8 of {0, -1, -2, …}; the start-0 product is
    /// then on (or next to) a pole of the Gamma formula.
    NearNonpositiveInteger { shift: Complex64, nearest: i64 },
    /// Two shifts coincide to ~1e-6; the formula extends by continuity.
    Repeated { shift: Complex64 },
}

/// The factorization Q(t) = ∏(t + d_i) with its measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSet {
    pub shifts: Vec<Complex64>,
    /// max_j |Q(t_j) - ∏(t_j + d_i)| / max(1, |Q(t_j)|) over 2ℓ+1 circle points.
    pub residual: f64,
    pub warnings: Vec<ShiftWarning>,
}

/// Shift set of Q by simultaneous (Durand-Kerner) iteration on
/// P(u) = (-1)^ℓ Q(-u), whose roots are exactly the d_i.
pub fn find_shift_set(q: &MonicPoly) -> Result<ShiftSet> {
    let ell = q.degree();
    // P coefficients, ascending, including leading 1: p_i = (-1)^{ell+i} q_i
    let mut p: Vec<Complex64> = Vec::with_capacity(ell + 1);
    for (i, &c) in q.coeffs().iter().enumerate() {
        let sign = if (ell + i).is_multiple_of(2) { 1.0 } else { -1.0 };
        p.push(sign * c);
    }
    p.push(Complex64::new(1.0, 0.0));
    let eval_p = |u: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in p.iter().rev() {
            acc = acc * u + c;
        }
        acc
    };

    // perturbed-circle start inside the Cauchy root bound
    let radius = 1.0 + q.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut guesses: Vec<Complex64> = (0..ell)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / ell as f64 + 0.4;
            radius * (1.0 + 0.01 * k as f64) * Complex64::from_polar(1.0, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..1000 {
        let mut max_step = 0.0_f64;
        for i in 0..ell {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..ell {
                if j != i {
                    denom *= guesses[i] - guesses[j];
                }
            }
            if denom.norm() == 0.0 {
                // collided guesses; nudge apart
                guesses[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval_p(guesses[i]) / denom;
            if !step.is_finite() {
                return Err(Error::Convergence("root iteration diverged".into()));
            }
            guesses[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + guesses[i].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }

    // Repeated roots stall the simultaneous iteration in a biased cluster of
    // radius ~1e-8 around the true root. Collapse any cluster tighter than
    // 1e-6 to one point and polish it with Newton on P^{(mult-1)}, whose
    // simple zero is the multiple root.
    let eval_deriv = |u: Complex64, order: usize| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (order..=ell).rev() {
            let factor: f64 = ((i - order + 1)..=i).map(|v| v as f64).product();
            acc = acc * u + factor * p[i];
        }
        acc
    };
    let mut assigned = vec![false; ell];
    for i in 0..ell {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        for j in (i + 1)..ell {
            if !assigned[j]
                && (guesses[i] - guesses[j]).norm() < 1e-6 * (1.0 + guesses[i].norm())
            {
                members.push(j);
            }
        }
        if members.len() > 1 {
            let mult = members.len();
            let mut root = members
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, &k| acc + guesses[k])
                / mult as f64;
            for _ in 0..60 {
                let num = eval_deriv(root, mult - 1);
                let den = eval_deriv(root, mult);
                if den.norm() == 0.0 {
                    break;
                }
                let step = num / den;
                root -= step;
                if step.norm() < 1e-16 * (1.0 + root.norm()) {
                    break;
                }
            }
            for &k in &members {
                guesses[k] = root;
                assigned[k] = true;
            }
        }
        assigned[i] = true;
    }

    // Real polynomials have conjugation-closed root sets: snap stray
    // imaginary residue on near-real shifts and mirror conjugate pairs so
    // downstream Gamma products of real polynomials come out exactly real.
    if q.coeffs().iter().all(|c| c.im == 0.0) {
        for g in guesses.iter_mut() {
            if g.im.abs() < 1e-9 * (1.0 + g.re.abs()) {
                g.im = 0.0;
            }
        }
        let mut paired = vec![false; ell];
        for i in 0..ell {
            if paired[i] || guesses[i].im == 0.0 {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for j in 0..ell {
                if j != i && !paired[j] {
                    let d = (guesses[j] - guesses[i].conj()).norm();
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((j, d));
                    }
                }
            }
            if let Some((j, d)) = best {
                if d < 1e-9 * (1.0 + guesses[i].norm()) {
                    let avg = 0.5 * (guesses[i] + guesses[j].conj());
                    guesses[i] = avg;
                    guesses[j] = avg.conj();
                    paired[i] = true;
                    paired[j] = true;
                }
            }
        }
    }

    // deterministic ordering
    guesses.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    // factorization residual at 2ℓ+1 circle points
    let m = 2 * ell + 1;
    let mut residual = 0.0_f64;
    for j in 0..m {
        let t = (radius + 1.0)
            * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
        let direct = q.eval(t);
        let mut factored = Complex64::new(1.0, 0.0);
        for &d in &guesses {
            factored *= t + d;
        }
        residual = residual.max((direct - factored).norm() / direct.norm().max(1.0));
    }
    // repeated roots stall the step criterion but still factor exactly
    if residual > 1e-9 {
        return Err(Error::Convergence(format!(
            "root finding residual {residual:.3e} after budget (converged = {converged})"
        )));
    }

    let mut warnings = Vec::new();
    for &d in &guesses {
        if d.im.abs() < 1e-8 && d.re < 0.5 {
            let nearest = d.re.round();
            if nearest <= 0.0 && (d.re - nearest).abs() < 1e-8 {
                warnings.push(ShiftWarning::NearNonpositiveInteger {
                    shift: d,
                    nearest: nearest as i64,
                });
            }
        }
    }
    for i in 0..guesses.len() {
        for j in (i + 1)..guesses.len() {
            if (guesses[i] - guesses[j]).norm() < 1e-6 * (1.0 + guesses[i].norm()) {
                warnings.push(ShiftWarning::Repeated { shift: guesses[i] });
            }
        }
    }

    Ok(ShiftSet {
        shifts: guesses,
        residual,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_shift() {
        // Q(t) = t + 1
        let q = MonicPoly::new(vec![c(1.0, 0.0)]).unwrap();
        let s = find_shift_set(&q).unwrap();
        assert_eq!(s.shifts.len(), 1);
        assert!((s.shifts[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn quadratic_with_integer_shifts() {
        // Q(t) = t^2 + 3t + 2 = (t+1)(t+2)
        let q = MonicPoly::new(vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let s = find_shift_set(&q).unwrap();
        assert!((s.shifts[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((s.shifts[1] - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn quadratic_with_imaginary_shifts() {
        // Q(t) = t^2 + 1 = (t+i)(t-i); substitution residual < 1e-12
        let q = MonicPoly::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let s = find_shift_set(&q).unwrap();
        assert!(s.residual < 1e-12);
        assert!((s.shifts[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((s.shifts[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn near_pole_shift_warns() {
        // Q(t) = t(t+1) has shifts {0, -1}... use (t + 1e-9)(t + 2)
        let q = MonicPoly::from_shifts(&[c(1e-9, 0.0), c(2.0, 0.0)]).unwrap();
        let s = find_shift_set(&q).unwrap();
        assert!(s
            .warnings
            .iter()
            .any(|w| matches!(w, ShiftWarning::NearNonpositiveInteger { .. })));
    }

    #[test]
    fn repeated_shift_warns_but_factors() {
        let q = MonicPoly::from_shifts(&[c(1.5, 0.0), c(1.5, 0.0)]).unwrap();
        let s = find_shift_set(&q).unwrap();
        assert!(s.residual < 1e-10);
        assert!(s
            .warnings
            .iter()
            .any(|w| matches!(w, ShiftWarning::Repeated { .. })));
    }

    #[test]
    fn expansion_round_trips_through_the_finder() {
        let shifts = [c(0.7, 0.4), c(2.0, -1.0), c(3.3, 0.0), c(0.9, -2.2)];
        let q = MonicPoly::from_shifts(&shifts).unwrap();
        let found = find_shift_set(&q).unwrap();
        let mut expected = shifts.to_vec();
        expected.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for (f, e) in found.shifts.iter().zip(&expected) {
            assert!((f - e).norm() < 1e-10, "{f} vs {e}");
        }
    }

    #[test]
    fn degree_cap() {
        let coeffs = vec![c(1.0, 0.0); 33];
        assert!(matches!(
            MonicPoly::new(coeffs),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn multiplication_matches_evaluation() {
        let q1 = MonicPoly::new(vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let q2 = MonicPoly::new(vec![c(1.0, 0.0)]).unwrap();
        let prod = q1.mul(&q2).unwrap();
        assert_eq!(prod.degree(), 3);
        for &t in &[c(0.5, 0.0), c(-1.3, 2.0), c(4.0, -7.0)] {
            let direct = q1.eval(t) * q2.eval(t);
            let via_prod = prod.eval(t);
            assert!((direct - via_prod).norm() < 1e-12 * direct.norm().max(1.0));
        }
    }
}
