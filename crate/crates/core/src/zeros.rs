//! Eneström–Kakeya annuli and unit-circle zero-freeness of the partial sums
//! s_{k,α}, with a simultaneous-iteration root finder as numerical oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alpha::{ratio_to_f64, AlphaParam};
use crate::bivar_poly::binomial_coefficients;
use crate::calculus::grid_min;
use crate::error::{Error, Result};

/// Grid size used by [`min_modulus_on_circle`] callers by default.
pub const DEFAULT_GRID: usize = 4096;
const ROOT_RESIDUAL: f64 = 1e-10;
const MAX_ABERTH_STEPS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every zero has modulus < 1.
    #[serde(rename = "CircleFree_Inside")]
    CircleFreeInside,
    /// Every zero has modulus > 1.
    #[serde(rename = "CircleFree_Outside")]
    CircleFreeOutside,
    Undecided,
}

/// All zeros lie in `inner ≤ |z| ≤ outer`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusCertificate {
    #[serde(rename = "r")]
    pub inner: f64,
    #[serde(rename = "R")]
    pub outer: f64,
    pub verdict: Verdict,
}

impl AnnulusCertificate {
    fn from_radii(inner: f64, outer: f64) -> Self {
        let verdict = if outer < 1.0 {
            Verdict::CircleFreeInside
        } else if inner > 1.0 {
            Verdict::CircleFreeOutside
        } else {
            Verdict::Undecided
        };
        AnnulusCertificate { inner, outer, verdict }
    }
}

/// Eneström–Kakeya annulus [min a_k/a_{k+1}, max a_k/a_{k+1}] of Σ a_k z^k.
pub fn ek_annulus(coeffs: &[f64]) -> Result<AnnulusCertificate> {
    if coeffs.len() < 2 {
        return Err(Error::Domain("need degree at least 1".into()));
    }
    if let Some(index) = coeffs.iter().position(|a| !(*a > 0.0)) {
        return Err(Error::NonPositiveCoefficient { index });
    }
    let ratios = coeffs.windows(2).map(|w| w[0] / w[1]);
    let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
    Ok(AnnulusCertificate::from_radii(lo, hi))
}

/// Same as [`ek_annulus`], with the ratios compared exactly.
pub fn ek_annulus_exact(coeffs: &[BigRational]) -> Result<AnnulusCertificate> {
    if coeffs.len() < 2 {
        return Err(Error::Domain("need degree at least 1".into()));
    }
    if let Some(index) = coeffs.iter().position(|a| !a.is_positive()) {
        return Err(Error::NonPositiveCoefficient { index });
    }
    let ratios: Vec<BigRational> = coeffs.windows(2).map(|w| &w[0] / &w[1]).collect();
    let lo = ratios.iter().min().expect("nonempty");
    let hi = ratios.iter().max().expect("nonempty");
    let one = BigRational::from_integer(1.into());
    let verdict = if *hi < one {
        Verdict::CircleFreeInside
    } else if *lo > one {
        Verdict::CircleFreeOutside
    } else {
        Verdict::Undecided
    };
    Ok(AnnulusCertificate { inner: ratio_to_f64(lo), outer: ratio_to_f64(hi), verdict })
}

/// Annulus for the zeros of s_{k,α}, whose coefficients are (α+1)_j/j!.
///
/// The ratios are (j+1)/(α+j+1). For α > 0 they increase to k/(α+k) < 1;
/// for −1 < α < 0 they decrease to k/(α+k) > 1; for α = 0 they all equal 1.
pub fn certify_p_circle_free(alpha: &AlphaParam, k: u32) -> Result<AnnulusCertificate> {
    alpha.require_half_plane()?;
    if k == 0 {
        return Err(Error::Domain("need k >= 1".into()));
    }
    ek_annulus_exact(&binomial_coefficients(alpha, k))
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn scaled_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    p.norm() / scale
}

/// All roots of Σ a_j z^j (coefficients in increasing degree) by
/// Aberth–Ehrlich iteration.
///
/// Each returned root has |p(z)| ≤ 10⁻¹⁰ · Σ|a_j||z|^j.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if coeffs.last().is_none_or(|c| c.is_zero()) {
        return Err(Error::Domain("leading coefficient must be nonzero".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Zeros at the origin are split off exactly.
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("leading is nonzero");
    let work = &coeffs[low..];
    let m = work.len() - 1;
    let mut out = vec![Complex64::zero(); low];
    if m == 0 {
        return Ok(out);
    }
    let lead = work[m].norm();
    let radius = work[..m].iter().map(|c| c.norm() / lead).fold(0.0, f64::max).max(1e-3);
    let geometric = (work[0].norm() / lead).powf(1.0 / m as f64).clamp(1e-3, radius + 1.0);
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(geometric, 2.0 * PI * j as f64 / m as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ABERTH_STEPS {
        let mut moved = 0.0f64;
        for i in 0..m {
            let (p, dp) = horner(work, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..m).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    let worst = z.iter().map(|r| scaled_residual(work, *r)).fold(0.0, f64::max);
    if !(worst <= ROOT_RESIDUAL) {
        return Err(Error::NoConvergence(worst));
    }
    out.extend(z);
    Ok(out)
}

/// min_θ |p_{k,α}(e^{iθ})| over a grid with golden-section refinement.
pub fn min_modulus_on_circle(alpha: &AlphaParam, k: u32, grid: usize) -> f64 {
    let coeffs: Vec<f64> = binomial_coefficients(alpha, k).iter().map(ratio_to_f64).collect();
    // p_{k,α}(e^{iθ}) = Σ a_j e^{i(k−2j)θ}
    let modulus = |t: f64| {
        coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| Complex64::from_polar(*a, (k as f64 - 2.0 * j as f64) * t))
            .sum::<Complex64>()
            .norm()
    };
    grid_min(modulus, 0.0, 2.0 * PI, grid.max(8), 3).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn al(s: &str) -> AlphaParam {
        s.parse().unwrap()
    }

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
    }

    fn sorted_by_angle(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        v
    }

    #[test]
    fn ek_examples() {
        let c = ek_annulus(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!((c.inner, c.outer, c.verdict), (1.0, 1.0, Verdict::Undecided));
        let c = ek_annulus(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!((c.inner, c.outer, c.verdict), (0.5, 2.0 / 3.0, Verdict::CircleFreeInside));
        let c = ek_annulus(&[1.0, 0.5]).unwrap();
        assert_eq!((c.inner, c.outer, c.verdict), (2.0, 2.0, Verdict::CircleFreeOutside));
        assert_eq!(ek_annulus(&[1.0, 0.0, 2.0]), Err(Error::NonPositiveCoefficient { index: 1 }));
    }

    #[test]
    fn certificate_examples() {
        let c = certify_p_circle_free(&al("1"), 3).unwrap();
        assert_eq!((c.outer, c.verdict), (0.75, Verdict::CircleFreeInside));
        let c = certify_p_circle_free(&al("-1/2"), 5).unwrap();
        assert_eq!((c.inner, c.outer, c.verdict), (10.0 / 9.0, 2.0, Verdict::CircleFreeOutside));
        let c = certify_p_circle_free(&al("-1/2"), 1).unwrap();
        assert_eq!((c.inner, c.verdict), (2.0, Verdict::CircleFreeOutside));
        assert_eq!(certify_p_circle_free(&al("0"), 2).unwrap().verdict, Verdict::Undecided);
        assert!(certify_p_circle_free(&al("-1"), 2).is_err());
    }

    #[test]
    fn certificate_radius_formulas() {
        for a in ["1/3", "1", "5/2"] {
            let alpha = al(a);
            let af = alpha.to_f64();
            let mut previous = 0.0;
            for k in 1..=15 {
                let c = certify_p_circle_free(&alpha, k).unwrap();
                let expected = k as f64 / (af + k as f64);
                assert!((c.outer - expected).abs() < 1e-15);
                assert!(c.outer > previous && c.outer < 1.0);
                previous = c.outer;
            }
        }
        for a in ["-9/10", "-1/2"] {
            let alpha = al(a);
            let af = alpha.to_f64();
            for k in 1..=15 {
                let c = certify_p_circle_free(&alpha, k).unwrap();
                assert!((c.inner - k as f64 / (af + k as f64)).abs() < 1e-14);
                assert!((c.outer - 1.0 / (af + 1.0)).abs() < 1e-14);
                let coeffs: Vec<Complex64> =
                    binomial_coefficients(&alpha, k).iter().map(|a| Complex64::new(ratio_to_f64(a), 0.0)).collect();
                for z in roots(&coeffs).unwrap() {
                    assert!(z.norm() >= c.inner - 1e-9);
                }
            }
        }
    }

    #[test]
    fn root_examples() {
        let r = sorted_by_angle(roots(&real(&[-1.0, 0.0, 1.0])).unwrap());
        assert!((r[0] - 1.0).norm() < 1e-12 && (r[1] + 1.0).norm() < 1e-12);
        let r = sorted_by_angle(roots(&real(&[1.0, 1.0, 1.0])).unwrap());
        assert!((r[0] - Complex64::from_polar(1.0, -2.0 * PI / 3.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::from_polar(1.0, 2.0 * PI / 3.0)).norm() < 1e-12);
        let r = sorted_by_angle(roots(&real(&[1.0, 2.0, 3.0])).unwrap());
        let s = 2f64.sqrt() / 3.0;
        assert!((r[0] - Complex64::new(-1.0 / 3.0, -s)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(-1.0 / 3.0, s)).norm() < 1e-12);
        assert!(roots(&real(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn roots_with_zero_at_origin_and_repeats() {
        let r = roots(&real(&[0.0, 0.0, 1.0, -2.0, 1.0])).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.iter().filter(|z| z.is_zero()).count(), 2);
        assert!(r.iter().filter(|z| !z.is_zero()).all(|z| (z - 1.0).norm() < 1e-6));
    }

    #[test]
    fn unit_alpha_zero_roots_are_roots_of_unity() {
        for k in 1..=15u32 {
            let coeffs = real(&vec![1.0; k as usize + 1]);
            let r = roots(&coeffs).unwrap();
            let mut expected: Vec<Complex64> =
                (1..=k).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (k + 1) as f64)).collect();
            for z in &r {
                let (i, d) = expected.iter().enumerate().map(|(i, e)| (i, (z - e).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
                assert!(d < 1e-9, "k={k} root {z}");
                expected.remove(i);
            }
        }
    }

    #[test]
    fn ek_soundness_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let coeffs: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.05..5.0)).collect();
            let cert = ek_annulus(&coeffs).unwrap();
            for z in roots(&real(&coeffs)).unwrap() {
                let m = z.norm();
                assert!(m >= cert.inner - 1e-8 && m <= cert.outer + 1e-8);
            }
        }
    }

    #[test]
    fn min_modulus_examples() {
        assert!((min_modulus_on_circle(&al("1"), 1, DEFAULT_GRID) - 1.0).abs() < 1e-12);
        assert!(min_modulus_on_circle(&al("0"), 1, DEFAULT_GRID) < 1e-12);
        assert!((min_modulus_on_circle(&al("3/7"), 0, DEFAULT_GRID) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_free_for_nonzero_alpha() {
        for a in ["1/2", "-1/2", "9/10", "-9/10", "1", "3"] {
            let alpha = al(a);
            for k in 1..=15 {
                assert_ne!(certify_p_circle_free(&alpha, k).unwrap().verdict, Verdict::Undecided);
                assert!(min_modulus_on_circle(&alpha, k, DEFAULT_GRID) >= 1e-3, "alpha={a} k={k}");
            }
        }
    }
}
