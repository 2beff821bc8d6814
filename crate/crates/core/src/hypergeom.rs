//! Gauss hypergeometric series on the real interval (−1, 1) and the factors
//! F(−α, k; k+1; x) that weight the antiholomorphic part of α-harmonic series.

use crate::error::{Error, Result};
use crate::quadrature;

/// Default relative truncation tolerance for [`hyp2f1`].
pub const DEFAULT_TOL: f64 = 1e-15;
const MAX_ITERATIONS: usize = 1_000_000;
const CONSECUTIVE_SMALL: usize = 3;

/// Parameters of F(a, b; c; ·) with a relative truncation tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeomParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub tol: f64,
}

impl HypergeomParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if is_nonpositive_integer(c) {
            return Err(Error::InvalidC(c));
        }
        Ok(HypergeomParams { a, b, c, tol: DEFAULT_TOL })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn terminates(&self) -> bool {
        is_nonpositive_integer(self.a) || is_nonpositive_integer(self.b)
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

/// Direct summation of the defining power series.
///
/// Stops once the geometric tail estimate `|t|·ρ/(1−ρ)` (ρ the next term
/// ratio) stays below `tol·|sum|` for three consecutive terms.
pub fn hyp2f1_series(p: &HypergeomParams, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("hypergeometric argument must satisfy |x| < 1, got {x}")));
    }
    if is_nonpositive_integer(p.c) {
        return Err(Error::InvalidC(p.c));
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut small_run = 0;
    for n in 0..MAX_ITERATIONS {
        let nf = n as f64;
        let ratio = (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * x;
        if ratio == 0.0 {
            return Ok(sum);
        }
        term *= ratio;
        sum += term;
        let next = ((p.a + nf + 1.0) * (p.b + nf + 1.0) / ((p.c + nf + 1.0) * (nf + 2.0)) * x).abs();
        let tail = if next < 1.0 { term.abs() * next / (1.0 - next) } else { f64::INFINITY };
        if tail <= p.tol * sum.abs() || term == 0.0 {
            small_run += 1;
            if small_run >= CONSECUTIVE_SMALL {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergent { iterations: MAX_ITERATIONS })
}

/// F(a, b; c; x) for |x| < 1.
///
/// Terminating series are summed directly. Otherwise negative x goes through
/// F(a,b;c;x) = (1−x)^{−a} F(a, c−b; c; x/(x−1)), which avoids the
/// cancellation of an alternating series, and x > 1/2 with c − a − b > 0 goes
/// through F(a,b;c;x) = (1−x)^{c−a−b} F(c−a, c−b; c; x).
pub fn hyp2f1(p: &HypergeomParams, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("hypergeometric argument must satisfy |x| < 1, got {x}")));
    }
    if p.terminates() {
        return hyp2f1_series(p, x);
    }
    if x < 0.0 {
        let pfaff = HypergeomParams { a: p.a, b: p.c - p.b, c: p.c, tol: p.tol };
        return Ok((1.0 - x).powf(-p.a) * hyp2f1_series(&pfaff, x / (x - 1.0))?);
    }
    let excess = p.c - p.a - p.b;
    if x > 0.5 && excess > 0.0 {
        let transformed = HypergeomParams { a: p.c - p.a, b: p.c - p.b, c: p.c, tol: p.tol };
        return Ok((1.0 - x).powf(excess) * hyp2f1_series(&transformed, x)?);
    }
    hyp2f1_series(p, x)
}

/// F(−α, k; k+1; x) for k ≥ 1 and 0 ≤ x < 1.
pub fn f_factor(alpha: f64, k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("f_factor needs k >= 1".into()));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("f_factor needs 0 <= x < 1, got {x}")));
    }
    let kf = k as f64;
    hyp2f1(&HypergeomParams::new(-alpha, kf, kf + 1.0)?, x)
}

/// k ∫₀¹ t^{k−1} (1 − x t)^α dt by adaptive quadrature, after t = 1 − u.
///
/// Independent of the series path; used to cross-check [`f_factor`].
pub fn f_factor_quadrature(alpha: f64, k: u32, x: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("f_factor needs k >= 1".into()));
    }
    let kf = k as f64;
    let integrand = |u: f64| kf * (1.0 - u).powi(k as i32 - 1) * (1.0 - x + x * u).powf(alpha);
    quadrature::integrate(integrand, 0.0, 1.0, 1e-12)
}

/// lim_{x→1⁻} F(−α, k; k+1; x) = Γ(k+1)Γ(α+1)/Γ(k+α+1), for α > −1.
pub fn gauss_limit(alpha: f64, k: u32) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::Domain(format!("gauss_limit needs alpha > -1, got {alpha}")));
    }
    // k!/(α+1)_k
    Ok((1..=k).fold(1.0, |acc, j| acc * j as f64 / (alpha + j as f64)))
}

/// (k/x)·log(1/(1−x)), an upper bound for F(1, k; k+1; x) on (0, 1).
pub fn bound_log(k: u32, x: f64) -> f64 {
    let kf = k as f64;
    if x == 0.0 {
        return kf;
    }
    -kf / x * (-x).ln_1p()
}

/// max(1, −k/(α+1))·(1−x)^{α+1}, an upper bound for F(−α, k; k+1; x) when α < −1.
pub fn bound_below_minus1(alpha: f64, k: u32, x: f64) -> Result<f64> {
    if alpha >= -1.0 {
        return Err(Error::Domain(format!("bound_below_minus1 needs alpha < -1, got {alpha}")));
    }
    let scale = f64::max(1.0, -(k as f64) / (alpha + 1.0));
    Ok(scale * (1.0 - x).powf(alpha + 1.0))
}
