//! Simultaneous root finding (Aberth–Ehrlich) with inclusion disks.

use num_complex::Complex64;

/// Approximate roots with radii of disjoint disks, each containing exactly
/// one root.
#[derive(Clone, Debug)]
pub struct IsolatedRoots {
    pub centers: Vec<Complex64>,
    pub radii: Vec<f64>,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Bound on `Σ|a_k||z|^k`, used for the rounding term.
fn abs_eval(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    // Fujiwara-style radius for the initial circle.
    let radius =
        (0..d).map(|k| (coeffs[k] / lead).abs().powf(1.0 / (d - k) as f64)).fold(0.0f64, f64::max).max(1e-3) * 1.5;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (p, dp) = horner(coeffs, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    z
}

/// Roots of the real polynomial `coeffs` (constant term first, leading
/// coefficient nonzero) with certified inclusion radii, or `None` if the
/// disks overlap.
pub fn isolate(coeffs: &[f64]) -> Option<IsolatedRoots> {
    let d = coeffs.len() - 1;
    assert!(d >= 1 && coeffs[d] != 0.0, "positive degree required");
    let centers = aberth(coeffs);
    let eps = f64::EPSILON;
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let z = centers[i];
        let (p, _) = horner(coeffs, z);
        // Evaluation error of Horner's rule plus the representation error of
        // the coefficients.
        let err = 4.0 * (d as f64 + 2.0) * eps * abs_eval(coeffs, z.norm());
        let prod: f64 = (0..d).filter(|&j| j != i).map(|j| (z - centers[j]).norm()).product();
        let denom = coeffs[d].abs() * prod * (1.0 - 4.0 * d as f64 * eps);
        if denom == 0.0 || !denom.is_finite() {
            return None;
        }
        // Smith's bound: every root lies in a disk of this radius around
        // some center; disjoint disks each hold exactly one root.
        radii.push(d as f64 * (p.norm() + err) / denom * (1.0 + 1e-12));
    }
    for i in 0..d {
        for j in i + 1..d {
            if (centers[i] - centers[j]).norm() <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    Some(IsolatedRoots { centers, radii })
}
