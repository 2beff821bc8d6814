//! Finite-difference Wirtinger derivatives and weighted Laplacians.
//!
//! Used as an oracle independent of the symbolic paths.

use num_complex::Complex64;

/// Default step for the nested central differences.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Functions of one complex variable, like `u(w)` on the upper half-plane.
pub trait HalfPlaneFn {
    fn eval(&self, w: Complex64) -> Complex64;
}

impl<F: Fn(Complex64) -> Complex64> HalfPlaneFn for F {
    fn eval(&self, w: Complex64) -> Complex64 {
        self(w)
    }
}

fn partials<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> (Complex64, Complex64) {
    let dx = (f(z + h) - f(z - h)) / (2.0 * h);
    let ih = Complex64::new(0.0, h);
    let dy = (f(z + ih) - f(z - ih)) / (2.0 * h);
    (dx, dy)
}

/// ∂f = ½(f_x − i f_y).
pub fn d_z<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> Complex64 {
    let (dx, dy) = partials(f, z, h);
    0.5 * (dx - Complex64::i() * dy)
}

/// ∂̄f = ½(f_x + i f_y).
pub fn d_zbar<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> Complex64 {
    let (dx, dy) = partials(f, z, h);
    0.5 * (dx + Complex64::i() * dy)
}

fn nested<F, W>(f: &F, weight: &W, z: Complex64, h: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    W: Fn(Complex64) -> f64,
{
    let inner = |w: Complex64| d_zbar(f, w, h) / weight(w);
    d_z(&inner, z, h)
}

/// ∂ (w⁻¹ ∂̄ f) at z, for a positive weight w.
///
/// Nested central differences at steps h and h/2, combined by one
/// Richardson step to cancel the O(h²) term.
pub fn weighted_laplacian<F, W>(f: &F, weight: &W, z: Complex64, h: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    W: Fn(Complex64) -> f64,
{
    let coarse = nested(f, weight, z, h);
    let fine = nested(f, weight, z, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}

/// ∂((1−|z|²)^{−α} ∂̄ f), the disc α-Laplacian.
pub fn disc_alpha_laplacian<F: Fn(Complex64) -> Complex64>(alpha: f64, f: &F, z: Complex64, h: f64) -> Complex64 {
    weighted_laplacian(f, &|w: Complex64| (1.0 - w.norm_sqr()).powf(alpha), z, h)
}

/// ∂((Im z)^{−α} ∂̄ f), the half-plane α-Laplacian.
pub fn half_plane_alpha_laplacian<F: Fn(Complex64) -> Complex64>(alpha: f64, f: &F, z: Complex64, h: f64) -> Complex64 {
    weighted_laplacian(f, &|w: Complex64| w.im.powf(alpha), z, h)
}

/// d/dθ f(e^{iθ}z) at θ = 0, which is i(z∂ − z̄∂̄)f; five-point stencil.
pub fn angular_derivative<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> Complex64 {
    let at = |t: f64| f(z * Complex64::from_polar(1.0, t));
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

/// Local minimiser of `f` on `[a, b]` by golden-section search.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iterations {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimum of `f` over `[a, b)`: a uniform grid of `grid` points, then
/// golden-section refinement around the `refine` smallest grid values.
pub fn grid_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, grid: usize, refine: usize) -> (f64, f64) {
    let step = (b - a) / grid as f64;
    let mut samples: Vec<(f64, f64)> = (0..grid).map(|i| {
        let t = a + step * i as f64;
        (t, f(t))
    }).collect();
    let mut best = samples.iter().copied().fold((a, f64::INFINITY), |acc, s| if s.1 < acc.1 { s } else { acc });
    samples.sort_by(|x, y| x.1.total_cmp(&y.1));
    for &(t, _) in samples.iter().take(refine) {
        let lo = (t - step).max(a);
        let hi = (t + step).min(b);
        let cand = golden_section_min(&f, lo, hi, 80);
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wirtinger_derivatives_of_monomials() {
        let z = Complex64::new(0.3, -0.4);
        let f = |w: Complex64| w * w * w.conj();
        // ∂ = 2z z̄, ∂̄ = z²
        assert!((d_z(&f, z, 1e-4) - 2.0 * z * z.conj()).norm() < 1e-7);
        assert!((d_zbar(&f, z, 1e-4) - z * z).norm() < 1e-7);
    }

    #[test]
    fn laplacian_of_harmonic_is_small() {
        let f = |w: Complex64| (w * w * w).re.into();
        let z = Complex64::new(0.2, 0.1);
        assert!(disc_alpha_laplacian(0.0, &f, z, DEFAULT_STEP).norm() < 1e-6);
        let g = |w: Complex64| Complex64::from(w.norm_sqr());
        // ∂∂̄|z|² = 1
        assert!((disc_alpha_laplacian(0.0, &g, z, DEFAULT_STEP) - 1.0).norm() < 1e-6);
    }

    #[test]
    fn grid_min_finds_interior_minimum() {
        let (t, v) = grid_min(|x| (x - 1.234567).powi(2) + 0.5, 0.0, 3.0, 64, 3);
        assert!((t - 1.234567).abs() < 1e-6);
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn angular_derivative_of_power() {
        let z = Complex64::new(0.5, 0.2);
        let f = |w: Complex64| w * w * w;
        let expected = Complex64::new(0.0, 3.0) * z * z * z;
        assert!((angular_derivative(&f, z, 1e-3) - expected).norm() < 1e-10);
    }
}
