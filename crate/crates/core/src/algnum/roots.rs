//! Simultaneous complex root approximation with a posteriori inclusion radii.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::IntPolynomial;
use crate::error::{domain_err, Result};

/// Maximum number of refinement rounds; each round doubles the iteration budget.
pub const MAX_DOUBLINGS: u32 = 64;

/// One disk per root: every root of the polynomial lies in the union of the disks,
/// and pairwise disjoint disks each hold exactly one root.
#[derive(Clone, Debug, Serialize)]
pub struct RootApprox {
    pub centers: Vec<(f64, f64)>,
    pub radii: Vec<f64>,
}

impl RootApprox {
    pub fn center(&self, i: usize) -> Complex64 {
        Complex64::new(self.centers[i].0, self.centers[i].1)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(0.0, f64::max)
    }
}

/// Approximates all roots of a squarefree nonconstant polynomial within `tol`.
pub fn approximate_roots(p: &IntPolynomial, tol: f64) -> Result<RootApprox> {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return domain_err("root approximation needs a nonconstant polynomial"),
    };
    if tol.is_nan() || tol <= 0.0 {
        return domain_err("tolerance must be positive");
    }
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return domain_err("coefficients exceed floating range");
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    if n == 1 {
        let z = Complex64::new(-monic[0], 0.0);
        let r = eval_error(&monic, z) * 2.0;
        return finish(vec![z], vec![r], tol);
    }

    // Start on a circle of Cauchy-bound radius, rotated off the real axis.
    let bound = 1.0 + monic[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(bound * 0.5 + 0.1, th)
        })
        .collect();

    let mut budget = 16usize;
    let mut best = f64::INFINITY;
    let mut stall = 0;
    for _ in 0..MAX_DOUBLINGS {
        for _ in 0..budget {
            if !aberth_step(&monic, &mut z) {
                break;
            }
        }
        let radii = inclusion_radii(&monic, &z);
        let worst = radii.iter().cloned().fold(0.0, f64::max);
        if worst <= tol && disjoint(&z, &radii) {
            return finish(z, radii, tol);
        }
        if worst < best * 0.5 {
            best = worst;
            stall = 0;
        } else {
            stall += 1;
            if stall >= 4 {
                break;
            }
        }
        budget = budget.saturating_mul(2).min(1 << 16);
    }
    domain_err(format!("root tolerance {tol:e} not reachable within the iteration cap"))
}

fn finish(z: Vec<Complex64>, radii: Vec<f64>, tol: f64) -> Result<RootApprox> {
    if radii.iter().any(|r| r.is_nan() || *r > tol) {
        return domain_err(format!("root tolerance {tol:e} not reachable"));
    }
    Ok(RootApprox { centers: z.iter().map(|c| (c.re, c.im)).collect(), radii })
}

fn horner(monic: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in monic.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// |P(z)| plus a bound on its rounding error.
fn eval_error(monic: &[f64], z: Complex64) -> f64 {
    let n = monic.len();
    let az = z.norm();
    let mag = monic.iter().rev().fold(0.0, |acc, c| acc * az + c.abs());
    horner(monic, z).0.norm() + 4.0 * (n as f64) * f64::EPSILON * mag
}

/// One Aberth sweep; returns false once every correction is negligible.
fn aberth_step(monic: &[f64], z: &mut [Complex64]) -> bool {
    let n = z.len();
    let mut moved = false;
    for i in 0..n {
        let (p, dp) = horner(monic, z[i]);
        if p.norm() == 0.0 {
            continue;
        }
        let ratio = p / dp;
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            if j != i {
                s += (z[i] - z[j]).inv();
            }
        }
        let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
        if !w.re.is_finite() || !w.im.is_finite() {
            continue;
        }
        if w.norm() > f64::EPSILON * z[i].norm().max(1.0) {
            moved = true;
        }
        z[i] -= w;
    }
    moved
}

/// Weierstrass inclusion radii `n |P(z_i)| / |prod_{j != i} (z_i - z_j)|`.
fn inclusion_radii(monic: &[f64], z: &[Complex64]) -> Vec<f64> {
    let n = z.len();
    (0..n)
        .map(|i| {
            let mut prod = 1.0;
            for j in 0..n {
                if j != i {
                    prod *= (z[i] - z[j]).norm();
                }
            }
            if prod == 0.0 {
                f64::INFINITY
            } else {
                (n as f64) * eval_error(monic, z[i]) / prod
            }
        })
        .collect()
}

fn disjoint(z: &[Complex64], r: &[f64]) -> bool {
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if (z[i] - z[j]).norm() <= r[i] + r[j] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        let p: IntPolynomial = "x^2 - x - 1".parse().unwrap();
        let r = approximate_roots(&p, 1e-10).unwrap();
        let mut re: Vec<f64> = (0..2).map(|i| r.center(i).re).collect();
        re.sort_by(f64::total_cmp);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((re[1] - phi).abs() < 1e-9);
        assert!((re[0] - (1.0 - phi)).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_roots_on_circle() {
        let p: IntPolynomial = "x^4 - x^2 + 1".parse().unwrap();
        let r = approximate_roots(&p, 1e-9).unwrap();
        for i in 0..4 {
            assert!((r.center(i).norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn unreachable_tolerance_fails() {
        let p: IntPolynomial = "x^2 - 2".parse().unwrap();
        assert!(approximate_roots(&p, 1e-300).is_err());
    }
}
