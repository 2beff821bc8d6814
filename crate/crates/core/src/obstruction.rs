//! Functions Σ c_k (Im z)^{α+1} p_{k,α}(z) on the upper half-plane: evaluation,
//! growth bounds, ray limits, coefficient recovery and uniqueness tests.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::alpha::{ratio_to_f64, AlphaParam};
use crate::angles::{is_admissible, AdmissibilityMode, FunctionOfAngles};
use crate::bivar_poly::binomial_coefficients;
use crate::calculus::{grid_min, HalfPlaneFn};
use crate::error::{Error, Result};

/// Smallest sample parameter for limits at infinity; samples are T, 2T, 4T.
pub const LIMIT_BASE: f64 = 1e3;
/// Default tolerance for evaluators backed by exact coefficients.
pub const EXACT_TOL: f64 = 1e-6;
/// Default tolerance for black-box evaluators.
pub const BLACK_BOX_TOL: f64 = 1e-3;
/// Angles tried in order by [`recover_coefficients`].
pub const RECOVERY_ANGLES: [f64; 3] = [PI / 2.0, PI / 3.0, PI / 5.0];
const DEGENERATE_ANGLE: f64 = 1e-6;
const RECOVERY_BASE: f64 = 1.0;
const RECOVERY_AGREEMENT: f64 = 1e-6;
const GROWTH_GRID: usize = 4096;

/// Σ_{k≤n} c_k (Im z)^{α+1} p_{k,α}(z), with α > −1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawObstruction", into = "RawObstruction")]
pub struct ObstructionFunction {
    alpha: AlphaParam,
    coeffs: Vec<Complex64>,
    // (α+1)_j/j! as floats, j = 0..=n
    binomial: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawObstruction {
    alpha: AlphaParam,
    coeffs: Vec<ComplexRecord>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRecord {
    re: f64,
    im: f64,
}

impl TryFrom<RawObstruction> for ObstructionFunction {
    type Error = Error;
    fn try_from(raw: RawObstruction) -> Result<Self> {
        ObstructionFunction::new(raw.alpha, raw.coeffs.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
    }
}

impl From<ObstructionFunction> for RawObstruction {
    fn from(u: ObstructionFunction) -> Self {
        RawObstruction {
            alpha: u.alpha,
            coeffs: u.coeffs.iter().map(|c| ComplexRecord { re: c.re, im: c.im }).collect(),
        }
    }
}

/// Order, constant and radius with |u(z)| ≤ constant·(|z|²/Im z)^order for |z| ≥ radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub order: f64,
    pub constant: f64,
    pub radius: f64,
}

/// Sampled values u(t e^{iθ}).
#[derive(Clone, Debug, PartialEq)]
pub struct RaySample {
    pub theta: f64,
    pub t_values: Vec<f64>,
    pub u_values: Vec<Complex64>,
}

impl ObstructionFunction {
    /// Trailing zero coefficients are dropped.
    pub fn new(alpha: AlphaParam, mut coeffs: Vec<Complex64>) -> Result<Self> {
        alpha.require_half_plane()?;
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        let binomial = binomial_coefficients(&alpha, coeffs.len().saturating_sub(1) as u32).iter().map(ratio_to_f64).collect();
        Ok(ObstructionFunction { alpha, coeffs, binomial })
    }

    pub fn zero(alpha: AlphaParam) -> Result<Self> {
        Self::new(alpha, Vec::new())
    }

    /// Σ c_k Im(z^k) for α = 0, given as k → c_k with k ≥ 1.
    pub fn from_v0_form(terms: &BTreeMap<usize, Complex64>) -> Result<Self> {
        let top = terms.keys().max().copied().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); top];
        for (&k, &c) in terms {
            if k == 0 {
                return Err(Error::Domain("Im(z^0) = 0 is not a basis element".into()));
            }
            coeffs[k - 1] = c;
        }
        Self::new(AlphaParam::from_int(0), coeffs)
    }

    pub fn alpha(&self) -> &AlphaParam {
        &self.alpha
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// p_{k,α}(z) for every k ≤ n, sharing powers of z and z̄.
    fn p_values(&self, z: Complex64) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let mut zp = Vec::with_capacity(n);
        let mut zbp = Vec::with_capacity(n);
        let (mut a, mut b) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        for _ in 0..n {
            zp.push(a);
            zbp.push(b);
            a *= z;
            b *= z.conj();
        }
        (0..n).map(|k| (0..=k).map(|j| self.binomial[j] * zp[k - j] * zbp[j]).sum()).collect()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im > 0.0) {
            return Err(Error::Domain(format!("point {z} is not in the upper half-plane")));
        }
        let weight = z.im.powf(self.alpha.to_f64() + 1.0);
        let sum: Complex64 = self.coeffs.iter().zip(self.p_values(z)).map(|(c, p)| c * p).sum();
        Ok(weight * sum)
    }

    /// u(t e^{iθ}) for each t.
    pub fn sample_ray(&self, theta: f64, t_values: &[f64]) -> Result<RaySample> {
        let u_values = t_values.iter().map(|t| self.eval(Complex64::from_polar(*t, theta))).collect::<Result<_>>()?;
        Ok(RaySample { theta, t_values: t_values.to_vec(), u_values })
    }
}

impl HalfPlaneFn for ObstructionFunction {
    fn eval(&self, w: Complex64) -> Complex64 {
        ObstructionFunction::eval(self, w).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// p_{k,α}(e^{iθ}) from float coefficients.
fn p_on_circle(binomial: &[f64], k: usize, theta: f64) -> Complex64 {
    (0..=k).map(|j| Complex64::from_polar(binomial[j], (k as f64 - 2.0 * j as f64) * theta)).sum()
}

/// At α = 0, (Im z)p_{k,0}(z) = Im(z^{k+1}), so Σ c_k (Im z)p_{k,0} = Σ c_k Im(z^{k+1}).
pub fn v0_form(u: &ObstructionFunction) -> Result<BTreeMap<usize, Complex64>> {
    if !u.alpha.is_zero() {
        return Err(Error::Domain(format!("v0_form needs alpha = 0, got {}", u.alpha)));
    }
    Ok(u.coeffs.iter().enumerate().filter(|(_, c)| **c != Complex64::new(0.0, 0.0)).map(|(k, c)| (k + 1, *c)).collect())
}

/// Growth of order n+α+1, valid for |z| ≥ 1.
///
/// The constant is Σ|c_k|·max_θ sin^{k+2α+2}θ·|p_{k,α}(e^{iθ})|, each maximum
/// found on a grid with golden-section refinement and then rounded up by a
/// relative 10⁻⁹.
pub fn growth_bound(u: &ObstructionFunction) -> GrowthBound {
    let a = u.alpha.to_f64();
    let Some(n) = u.degree() else {
        return GrowthBound { order: a + 1.0, constant: 0.0, radius: 1.0 };
    };
    let constant: f64 = u
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| {
            let power = k as f64 + 2.0 * a + 2.0;
            let neg = |t: f64| -(t.sin().powf(power) * p_on_circle(&u.binomial, k, t).norm());
            let (_, min) = grid_min(neg, 0.0, PI, GROWTH_GRID, 3);
            c.norm() * -min
        })
        .sum();
    GrowthBound { order: n as f64 + a + 1.0, constant: constant * (1.0 + 1e-9), radius: 1.0 }
}

/// lim_{t→∞} u(t e^{iθ}) / t^{n+α+1} = c_n sin^{α+1}θ · p_{n,α}(e^{iθ}).
pub fn ray_limit(u: &ObstructionFunction, theta: f64) -> Result<Complex64> {
    let Some(n) = u.degree() else {
        return Err(Error::Domain("the zero function has no leading ray limit".into()));
    };
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("theta = {theta} is not in (0, pi)")));
    }
    let weight = theta.sin().powf(u.alpha.to_f64() + 1.0);
    Ok(u.coeffs[n] * weight * p_on_circle(&u.binomial, n, theta))
}

/// Result of [`recover_coefficients`].
#[derive(Clone, Debug, PartialEq)]
pub struct Recovery {
    pub coeffs: Vec<Complex64>,
    /// Angle used for each degree.
    pub angles: Vec<f64>,
    /// Relative disagreement between the two extrapolations at each degree.
    pub disagreement: Vec<f64>,
    /// Largest relative misfit of the recovered function at check points.
    pub residual: f64,
}

// Value at h = 0 of the interpolating polynomial through (h_i, y_i).
fn neville_at_zero(h: &[f64], y: &[Complex64]) -> Complex64 {
    let mut p = y.to_vec();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let j = i + level;
            p[i] = (h[i] * p[i + 1] - h[j] * p[i]) / (h[i] - h[j]);
        }
    }
    p[0]
}

/// Estimates c_0..c_{n_max} from samples of an element of V_{α,n_max}.
///
/// Along a ray, u(te^{iθ}) / (t sinθ)^{α+1} = Σ c_k p_{k,α}(e^{iθ}) t^k. Going
/// down from k = n_max, the known higher terms are subtracted, the rest is
/// divided by t^k, and the result (a polynomial of degree k in 1/t) is
/// extrapolated to 1/t = 0 from the geometric nodes t = 2^j. Extrapolations
/// from k+1 and k+2 nodes must agree.
pub fn recover_coefficients<U: HalfPlaneFn + ?Sized>(
    alpha: &AlphaParam,
    evaluator: &U,
    n_max: usize,
    thetas: &[f64],
) -> Result<Recovery> {
    let known = ObstructionFunction::new(alpha.clone(), vec![Complex64::new(1.0, 0.0); n_max + 1])?;
    let binomial = known.binomial.clone();
    let a1 = alpha.to_f64() + 1.0;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut angles = vec![0.0; n_max + 1];
    let mut disagreement = vec![0.0; n_max + 1];
    for k in (0..=n_max).rev() {
        let (theta, q) = thetas
            .iter()
            .map(|t| (*t, p_on_circle(&binomial, k, *t)))
            .find(|(_, q)| q.norm() >= DEGENERATE_ANGLE)
            .ok_or(Error::AngleDegenerate(k))?;
        let higher = ObstructionFunction::new(alpha.clone(), coeffs.clone())?;
        let mut h = Vec::with_capacity(k + 2);
        let mut y = Vec::with_capacity(k + 2);
        let mut scale = 0.0f64;
        for j in 0..k + 2 {
            let t = RECOVERY_BASE * 2f64.powi(j as i32);
            let z = Complex64::from_polar(t, theta);
            let norm = (t * theta.sin()).powf(a1) * t.powi(k as i32);
            let raw = evaluator.eval(z);
            scale = scale.max(raw.norm() / norm);
            h.push(1.0 / t);
            y.push((raw - higher.eval(z)?) / norm);
        }
        let coarse = neville_at_zero(&h[..k + 1], &y[..k + 1]);
        let fine = neville_at_zero(&h, &y);
        let gap = (coarse - fine).norm() / scale.max(1.0);
        if !(gap <= RECOVERY_AGREEMENT) {
            return Err(Error::IllConditioned { degree: k, disagreement: gap });
        }
        coeffs[k] = fine / q;
        angles[k] = theta;
        disagreement[k] = gap;
    }
    let fitted = ObstructionFunction::new(alpha.clone(), coeffs.clone())?;
    let mut residual = 0.0f64;
    for t in [0.5, 1.0, 3.0] {
        for theta in [PI / 4.0, PI / 2.0, 2.0 * PI / 3.0] {
            let z = Complex64::from_polar(t, theta);
            let target = evaluator.eval(z);
            residual = residual.max((target - fitted.eval(z)?).norm() / target.norm().max(1.0));
        }
    }
    Ok(Recovery { coeffs, angles, disagreement, residual })
}

/// The limit-at-infinity rule on three samples taken at T, 2T, 4T:
/// the last is below `tol` and each is at most half the previous plus `tol`.
pub fn limit_vanishes(ratios: [f64; 3], tol: f64) -> bool {
    ratios[2] < tol && ratios[1] <= ratios[0] / 2.0 + tol && ratios[2] <= ratios[1] / 2.0 + tol
}

/// Whether u(z_j)/(Im z_j)^{α+1} is below `tol` over the last three samples.
///
/// No validity checks; at α = 0 this can report a vanishing limit for a
/// nonzero function.
pub fn sequence_ratio_vanishes(samples: &[(Complex64, Complex64)], alpha: f64, tol: f64) -> bool {
    samples.iter().rev().take(3).all(|(z, u)| (u / z.im.powf(alpha + 1.0)).norm() < tol)
}

/// For α ∉ {0} a member of V_α vanishes iff u(z_j)/(Im z_j)^{α+1} → 0 along
/// one unbounded sequence. `samples` are (z_j, u(z_j)) with |z_j| increasing.
pub fn uniqueness_test_sequence(samples: &[(Complex64, Complex64)], alpha: &AlphaParam, tol: f64) -> Result<bool> {
    alpha.require_half_plane()?;
    if alpha.is_zero() {
        return Err(Error::Domain("the sequence test does not apply at alpha = 0".into()));
    }
    if samples.len() < 3 {
        return Err(Error::Domain("need at least three samples".into()));
    }
    if samples.windows(2).any(|w| !(w[1].0.norm() > w[0].0.norm())) {
        return Err(Error::Domain("sample points must have increasing modulus".into()));
    }
    if samples.iter().any(|(z, _)| !(z.im > 0.0)) {
        return Err(Error::Domain("sample points must lie in the upper half-plane".into()));
    }
    Ok(sequence_ratio_vanishes(samples, alpha.to_f64(), tol))
}

/// Whether u(x+iy)/y → 0 as y → ∞.
pub fn geodesic_limit_vanishes<U: HalfPlaneFn + ?Sized>(u: &U, x: f64, tol: f64) -> bool {
    let ratios = [1.0, 2.0, 4.0].map(|s| {
        let y = LIMIT_BASE * s;
        (u.eval(Complex64::new(x, y)) / y).norm()
    });
    limit_vanishes(ratios, tol)
}

/// A member of V₀ vanishes iff u(x+iy)/y → 0 along two distinct vertical lines.
pub fn uniqueness_test_geodesics<U: HalfPlaneFn + ?Sized>(u: &U, x1: f64, x2: f64, tol: f64) -> Result<bool> {
    if x1 == x2 {
        return Err(Error::Domain("the two geodesics must differ".into()));
    }
    Ok(geodesic_limit_vanishes(u, x1, tol) && geodesic_limit_vanishes(u, x2, tol))
}

/// Whether u(te^{iθ})/t^η → 0 as t → ∞.
pub fn ray_limit_vanishes<U: HalfPlaneFn + ?Sized>(u: &U, theta: f64, eta: u64, tol: f64) -> bool {
    let ratios = [1.0, 2.0, 4.0].map(|s| {
        let t = LIMIT_BASE * s;
        (u.eval(Complex64::from_polar(t, theta)) / t.powf(eta as f64)).norm()
    });
    limit_vanishes(ratios, tol)
}

/// A member of V₀ of degree ≤ n_max (top Im(z^k) index ≤ n_max + 1) vanishes
/// iff u(te^{iθ})/t^{η(θ)} → 0 for every θ of an admissible family.
///
/// Lazy families are used up to the angles with η ≤ n_max + 1, which already
/// cover every degree that can occur.
pub fn uniqueness_test_rays<U: HalfPlaneFn + ?Sized>(u: &U, foa: &FunctionOfAngles, n_max: usize, tol: f64) -> Result<bool> {
    let report = is_admissible(foa, AdmissibilityMode::ExactRanges)?;
    if let Some(witness) = report.witness_failure {
        return Err(Error::NotAdmissible { witness });
    }
    let entries = foa.entries_up_to_eta(n_max as u64 + 1)?;
    Ok(entries.iter().all(|e| ray_limit_vanishes(u, e.angle.value(), e.eta, tol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::{construct_finite, construct_infinite, dyadic_rule, Angle, AngleEntry};
    use crate::calculus;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn al(s: &str) -> AlphaParam {
        s.parse().unwrap()
    }

    fn obs(a: &str, coeffs: &[Complex64]) -> ObstructionFunction {
        ObstructionFunction::new(al(a), coeffs.to_vec()).unwrap()
    }

    fn random_coeffs(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = (0..=n).map(|_| c(rng.gen_range(-7.0..7.0), rng.gen_range(-7.0..7.0))).collect();
        if v[n].norm() < 0.5 {
            v[n] = c(1.0, 0.0);
        }
        v
    }

    fn random_upper(rng: &mut ChaCha8Rng) -> Complex64 {
        c(rng.gen_range(-3.0..3.0), rng.gen_range(0.01..3.0))
    }

    #[test]
    fn eval_examples() {
        let z = c(0.7, 1.3);
        for a in ["-0.5", "0", "2"] {
            let u = obs(a, &[c(1.0, 0.0)]);
            assert!((u.eval(z).unwrap() - z.im.powf(al(a).to_f64() + 1.0)).norm() < 1e-15);
        }
        let u = obs("0", &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((u.eval(z).unwrap() - (z * z).im).norm() < 1e-14);
        let u = obs("1", &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((u.eval(c(0.0, 1.0)).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
        assert!(u.eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn v0_examples() {
        assert_eq!(v0_form(&obs("0", &[c(1.0, 0.0)])).unwrap(), BTreeMap::from([(1, c(1.0, 0.0))]));
        assert_eq!(v0_form(&obs("0", &[c(0.0, 0.0), c(1.0, 0.0)])).unwrap(), BTreeMap::from([(2, c(1.0, 0.0))]));
        assert_eq!(
            v0_form(&obs("0", &[c(2.0, 0.0), c(0.0, 3.0)])).unwrap(),
            BTreeMap::from([(1, c(2.0, 0.0)), (2, c(0.0, 3.0))])
        );
        assert!(v0_form(&obs("1", &[c(1.0, 0.0)])).is_err());
        let u = ObstructionFunction::from_v0_form(&BTreeMap::from([(3, c(1.0, 0.0))])).unwrap();
        assert_eq!(u.coeffs(), &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let u = obs("1/2", &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(u.degree(), Some(0));
        assert!(obs("1/2", &[c(0.0, 0.0)]).is_zero());
        assert!(ObstructionFunction::new(al("-1"), vec![]).is_err());
    }

    #[test]
    fn growth_examples() {
        let g = growth_bound(&obs("0", &[c(1.0, 0.0)]));
        assert_eq!(g.order, 1.0);
        assert!((g.constant - 1.0).abs() < 1e-8);
        let u = obs("0", &[c(0.0, 0.0), c(1.0, 0.0)]);
        let g = growth_bound(&u);
        assert_eq!(g.order, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let z = random_upper(&mut rng) * 4.0;
            if z.norm() < 1.0 {
                continue;
            }
            assert!(u.eval(z).unwrap().norm() <= g.constant * (z.norm_sqr() / z.im).powf(g.order));
        }
        let g = growth_bound(&ObstructionFunction::zero(al("1/2")).unwrap());
        assert_eq!((g.order, g.constant), (1.5, 0.0));
    }

    #[test]
    fn growth_bound_holds_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for a in ["-0.5", "0", "1.5"] {
            for n in 0..=4 {
                let u = obs(a, &random_coeffs(&mut rng, n));
                let g = growth_bound(&u);
                for _ in 0..500 {
                    let r = rng.gen_range(1.0..50.0);
                    let t = rng.gen_range(1e-3..PI - 1e-3);
                    let z = Complex64::from_polar(r, t);
                    let bound = g.constant * (z.norm_sqr() / z.im).powf(g.order);
                    assert!(u.eval(z).unwrap().norm() <= bound, "a={a} n={n} z={z}");
                }
            }
        }
    }

    #[test]
    fn ray_limit_examples() {
        assert!((ray_limit(&obs("2/3", &[c(1.0, 0.0)]), PI / 2.0).unwrap() - 1.0).norm() < 1e-15);
        let u = obs("0", &[c(0.0, 0.0), c(1.0, 0.0)]);
        for theta in [0.3, 1.0, 2.5] {
            assert!((ray_limit(&u, theta).unwrap() - (2.0 * theta).sin()).norm() < 1e-14);
        }
        assert!((ray_limit(&obs("1", &[c(1.0, 0.0)]), PI / 6.0).unwrap() - 0.25).norm() < 1e-15);
        assert!(ray_limit(&ObstructionFunction::zero(al("1")).unwrap(), 1.0).is_err());
    }

    #[test]
    fn ray_limit_matches_large_t_ratio() {
        let u = obs("1/2", &[c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)]);
        let theta = 1.1;
        let t: f64 = 1e6;
        let ratio = u.eval(Complex64::from_polar(t, theta)).unwrap() / t.powf(3.5);
        assert!((ratio - ray_limit(&u, theta).unwrap()).norm() < 1e-5);
    }

    #[test]
    fn recovery_examples() {
        let target = [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)];
        let u = obs("1/2", &target);
        let rec = recover_coefficients(&al("1/2"), &u, 2, &RECOVERY_ANGLES).unwrap();
        for (got, want) in rec.coeffs.iter().zip(target) {
            assert!((got - want).norm() < 1e-6);
        }
        let zero = |_: Complex64| c(0.0, 0.0);
        let rec = recover_coefficients(&al("1"), &zero, 3, &RECOVERY_ANGLES).unwrap();
        assert!(rec.coeffs.iter().all(|x| x.norm() == 0.0));
        let cube = |z: Complex64| c((z * z * z).im, 0.0);
        let rec = recover_coefficients(&al("0"), &cube, 2, &RECOVERY_ANGLES).unwrap();
        let expected = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        for (got, want) in rec.coeffs.iter().zip(expected) {
            assert!((got - want).norm() < 1e-9);
        }
    }

    #[test]
    fn recovery_reports_degenerate_angles() {
        // p_{1,0}(e^{iθ}) = 2cos θ vanishes at π/2
        let u = obs("0", &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(recover_coefficients(&al("0"), &u, 1, &[PI / 2.0]), Err(Error::AngleDegenerate(1)));
    }

    #[test]
    fn recovery_flags_functions_outside_the_class() {
        let wild = |z: Complex64| (z * 0.3).exp();
        assert!(matches!(
            recover_coefficients(&al("1"), &wild, 2, &RECOVERY_ANGLES),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn recovery_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for a in ["-0.5", "0", "0.5", "1", "2"] {
            for _ in 0..10 {
                let n = rng.gen_range(0..=5);
                let coeffs: Vec<Complex64> = (0..=n).map(|_| c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))).collect();
                let u = obs(a, &coeffs);
                let rec = recover_coefficients(&al(a), &u, 5, &RECOVERY_ANGLES).unwrap();
                for k in 0..=5 {
                    let want = coeffs.get(k).copied().unwrap_or_default();
                    assert!((rec.coeffs[k] - want).norm() < 1e-6, "a={a} k={k}");
                }
                assert!(rec.residual < 1e-9);
            }
        }
    }

    #[test]
    fn sequence_test_examples() {
        let alpha = al("1");
        let zero = ObstructionFunction::zero(alpha.clone()).unwrap();
        let sample = |u: &ObstructionFunction, pts: &[Complex64]| pts.iter().map(|z| (*z, u.eval(*z).unwrap())).collect::<Vec<_>>();
        let imag: Vec<Complex64> = (1..=8).map(|j| c(0.0, j as f64 * 100.0)).collect();
        assert!(uniqueness_test_sequence(&sample(&zero, &imag), &alpha, EXACT_TOL).unwrap());
        let one = obs("1", &[c(1.0, 0.0)]);
        assert!(!uniqueness_test_sequence(&sample(&one, &imag), &alpha, EXACT_TOL).unwrap());
        let diag: Vec<Complex64> = (1..=8).map(|j| Complex64::from_polar(j as f64 * 100.0, PI / 4.0)).collect();
        let lin = obs("1", &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(!uniqueness_test_sequence(&sample(&lin, &diag), &alpha, EXACT_TOL).unwrap());
        assert!(uniqueness_test_sequence(&sample(&zero, &imag), &al("0"), EXACT_TOL).is_err());
    }

    #[test]
    fn sequence_rule_fails_at_alpha_zero() {
        // Im(z^3) vanishes on the ray θ = π/3 but is not the zero function
        let u = obs("0", &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let pts: Vec<(Complex64, Complex64)> = (1..=6)
            .map(|j| {
                let z = Complex64::from_polar(1e3 * j as f64, PI / 3.0);
                (z, u.eval(z).unwrap())
            })
            .collect();
        assert!(sequence_ratio_vanishes(&pts, 0.0, EXACT_TOL));
        assert!(!u.is_zero());
    }

    #[test]
    fn geodesic_examples() {
        let counter = |z: Complex64| c(((z - 1.0) * (z - 1.0)).im, 0.0);
        assert!(!uniqueness_test_geodesics(&counter, 1.0, 0.0, EXACT_TOL).unwrap());
        assert!(geodesic_limit_vanishes(&counter, 1.0, EXACT_TOL));
        let zero = |_: Complex64| c(0.0, 0.0);
        assert!(uniqueness_test_geodesics(&zero, 1.0, 0.0, EXACT_TOL).unwrap());
        let im = |z: Complex64| c(z.im, 0.0);
        assert!(!uniqueness_test_geodesics(&im, 1.0, 0.0, EXACT_TOL).unwrap());
        assert!(uniqueness_test_geodesics(&zero, 2.0, 2.0, EXACT_TOL).is_err());
    }

    #[test]
    fn geodesic_asymptotics() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [1usize, 3, 5, 7] {
            let mut terms = BTreeMap::new();
            for k in 1..=n + 1 {
                terms.insert(k, c(rng.gen_range(-3.0..3.0), 0.0));
            }
            let u = ObstructionFunction::from_v0_form(&terms).unwrap();
            let x: f64 = rng.gen_range(-2.0..2.0);
            let y: f64 = 1e4;
            let sign = if (n - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
            let expected = terms[&(n + 1)] * (n as f64 + 1.0) * sign * x + terms[&n] * sign;
            let got = u.eval(c(x, y)).unwrap() / y.powi(n as i32);
            assert!((got - expected).norm() < 1e-3, "n={n}");
        }
    }

    #[test]
    fn ray_test_examples() {
        let zero = |_: Complex64| c(0.0, 0.0);
        let irr = Angle::irrational("one", 1.0).unwrap();
        let single = FunctionOfAngles::finite(vec![AngleEntry::new(irr, 1)]).unwrap();
        assert!(uniqueness_test_rays(&zero, &single, 8, EXACT_TOL).unwrap());
        let sq = |z: Complex64| c((z * z).im, 0.0);
        assert!(!uniqueness_test_rays(&sq, &single, 8, EXACT_TOL).unwrap());
        let bad = FunctionOfAngles::finite(vec![AngleEntry::new(Angle::rational(1, 2).unwrap(), 1)]).unwrap();
        assert_eq!(uniqueness_test_rays(&sq, &bad, 8, EXACT_TOL), Err(Error::NotAdmissible { witness: 2 }));
        let dy = construct_infinite(dyadic_rule()).unwrap();
        assert!(!uniqueness_test_rays(&sq, &dy, 8, EXACT_TOL).unwrap());
        assert!(uniqueness_test_rays(&zero, &dy, 8, EXACT_TOL).unwrap());
    }

    #[test]
    fn ray_test_on_random_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let half = Angle::rational(1, 2).unwrap();
        let third = Angle::rational(1, 3).unwrap();
        let fifth = Angle::rational(1, 5).unwrap();
        let family = construct_finite(&[half, third, fifth], Angle::irrational("e", 1.0).unwrap()).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(0..=8);
            let u = obs("0", &random_coeffs(&mut rng, n));
            assert!(!uniqueness_test_rays(&u, &family, 8, EXACT_TOL).unwrap());
        }
    }

    #[test]
    fn members_are_alpha_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for a in ["-0.5", "0", "0.5", "2"] {
            let af = al(a).to_f64();
            let u = obs(a, &random_coeffs(&mut rng, 4));
            for _ in 0..5 {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
                let lap = calculus::half_plane_alpha_laplacian(af, &|w| u.eval(w).unwrap(), z, calculus::DEFAULT_STEP);
                assert!(lap.norm() < 1e-4, "a={a} z={z} lap={lap}");
            }
        }
    }

    #[test]
    fn relaxed_growth_bounds_the_recovered_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for a in ["-0.5", "1"] {
            let alpha = al(a);
            let af = alpha.to_f64();
            for _ in 0..5 {
                let m = rng.gen_range(0..=4);
                let u = obs(a, &random_coeffs(&mut rng, m));
                for n in 0..=4usize {
                    // |u| / (|z|²/Im z)^{n+α+2} along two rays, at growing t
                    let decays = [PI / 2.0, 1.0].iter().all(|theta| {
                        let r = |t: f64| {
                            let z = Complex64::from_polar(t, *theta);
                            u.eval(z).unwrap().norm() / (z.norm_sqr() / z.im).powf(n as f64 + af + 2.0)
                        };
                        r(1e4) < r(1e2) * 1e-1
                    });
                    if decays {
                        let rec = recover_coefficients(&alpha, &u, 5, &RECOVERY_ANGLES).unwrap();
                        let degree = rec.coeffs.iter().rposition(|x| x.norm() > 1e-6).unwrap_or(0);
                        assert!(degree <= n);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let u = obs("1/2", &[c(1.0, 0.0), c(0.0, -2.5)]);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"alpha":"1/2","coeffs":[{"re":1.0,"im":0.0},{"re":0.0,"im":-2.5}]}"#);
        let back: ObstructionFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, u);
        let parsed: ObstructionFunction = serde_json::from_str(r#"{"alpha":0.5,"coeffs":[{"re":1,"im":0}]}"#).unwrap();
        assert_eq!(parsed.alpha(), &al("1/2"));
    }

    proptest! {
        #[test]
        fn eval_is_linear(a in prop::sample::select(vec!["-0.5", "0", "1"]), x in -3.0f64..3.0, y in 0.05f64..3.0, s in -4.0f64..4.0) {
            let u = obs(a, &[c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)]);
            let v = obs(a, &[c(0.0, 1.0), c(2.0, -1.0)]);
            let sum: Vec<Complex64> = (0..3).map(|k| u.coeffs()[k] + s * v.coeffs().get(k).copied().unwrap_or_default()).collect();
            let w = obs(a, &sum);
            let z = c(x, y);
            let lhs = w.eval(z).unwrap();
            let rhs = u.eval(z).unwrap() + s * v.eval(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }
}
