//! The α-harmonic Poisson kernel on the disc, Poisson integrals of simple
//! boundary distributions, spectra, and the Cayley map to the half-plane.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::alpha::AlphaParam;
use crate::bivar_poly::{h_poly, FloatBivarPoly};
use crate::calculus::HalfPlaneFn;
use crate::error::{Error, Result};
use crate::hypergeom::f_factor;

/// Default absolute truncation tolerance for the series.
pub const SERIES_TOL: f64 = 1e-14;
const MAX_TERMS: usize = 1_000_000;

fn check_disc(z: Complex64) -> Result<()> {
    if z.norm_sqr() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("point {z} is not in the open unit disc")))
    }
}

/// φ(z) = i(1+z)/(1−z), the disc onto the upper half-plane.
pub fn mobius(z: Complex64) -> Result<Complex64> {
    check_disc(z)?;
    Ok(Complex64::i() * (1.0 + z) / (1.0 - z))
}

/// φ′(z) = 2i/(1−z)².
pub fn mobius_derivative(z: Complex64) -> Result<Complex64> {
    check_disc(z)?;
    Ok(2.0 * Complex64::i() / ((1.0 - z) * (1.0 - z)))
}

/// log φ′(z) on the branch with log φ′(0) = log 2 + iπ/2.
///
/// Re(1−z) > 0 on the disc, so the principal Log(1−z) is continuous there.
pub fn log_mobius_derivative(z: Complex64) -> Result<Complex64> {
    check_disc(z)?;
    Ok(Complex64::new(LN_2, FRAC_PI_2) - 2.0 * (1.0 - z).ln())
}

/// c = 2^{α/2} e^{iπα/4}, chosen so that c·φ′(0)^{−α/2} = 1.
pub fn normalizing_constant(alpha: f64) -> Complex64 {
    Complex64::from_polar(2f64.powf(alpha / 2.0), PI * alpha / 4.0)
}

/// P_α(z) = (1−|z|²)^{α+1} / ((1−z)(1−z̄)^{α+1}), principal branch.
pub fn poisson_kernel(alpha: &AlphaParam, z: Complex64) -> Result<Complex64> {
    check_disc(z)?;
    let a1 = alpha.to_f64() + 1.0;
    let num = (1.0 - z.norm_sqr()).powf(a1);
    let den = (1.0 - z) * ((1.0 - z.conj()).ln() * a1).exp();
    Ok(num / den)
}

/// P_α(z) summed from its series Σ z^k + Σ ((α+1)_k/k!) F(−α,k;k+1;|z|²) z̄^k.
pub fn poisson_kernel_series(alpha: &AlphaParam, z: Complex64, tol: f64) -> Result<Complex64> {
    poisson_integral(alpha, &ToroidalDistribution::dirac(), z, tol)
}

/// Finitely presented distribution on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub enum ToroidalDistribution {
    /// Fourier coefficients by frequency.
    TrigPoly(BTreeMap<i64, Complex64>),
    /// Σ weight · δ₁^{(m)}, pairs `(m, weight)`.
    DiracDeriv(Vec<(u32, Complex64)>),
}

impl ToroidalDistribution {
    /// The unit point mass at 1.
    pub fn dirac() -> Self {
        Self::dirac_derivative(0)
    }

    /// δ₁^{(m)}.
    pub fn dirac_derivative(m: u32) -> Self {
        ToroidalDistribution::DiracDeriv(vec![(m, Complex64::new(1.0, 0.0))])
    }

    pub fn trig_poly<I: IntoIterator<Item = (i64, Complex64)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        ToroidalDistribution::TrigPoly(map)
    }

    pub fn fourier(&self, k: i64) -> Complex64 {
        match self {
            ToroidalDistribution::TrigPoly(map) => map.get(&k).copied().unwrap_or_default(),
            ToroidalDistribution::DiracDeriv(orders) => {
                let ik = Complex64::new(0.0, k as f64);
                orders.iter().map(|(m, w)| w * ik.powu(*m)).sum()
            }
        }
    }

    /// The distributional derivative d/dθ, which multiplies f̂(k) by ik.
    pub fn derivative(&self) -> Self {
        match self {
            ToroidalDistribution::TrigPoly(map) => {
                Self::trig_poly(map.iter().map(|(k, c)| (*k, c * Complex64::new(0.0, *k as f64))))
            }
            ToroidalDistribution::DiracDeriv(orders) => {
                ToroidalDistribution::DiracDeriv(orders.iter().map(|(m, w)| (m + 1, *w)).collect())
            }
        }
    }

    /// (M, N) with |f̂(k)| ≤ M(1+|k|)^N for every k.
    pub fn growth(&self) -> (f64, u32) {
        match self {
            ToroidalDistribution::TrigPoly(map) => (map.values().map(|c| c.norm()).fold(0.0, f64::max), 0),
            ToroidalDistribution::DiracDeriv(orders) => {
                let m = orders.iter().map(|(_, w)| w.norm()).sum();
                let n = orders.iter().map(|(m, _)| *m).max().unwrap_or(0);
                (m, n)
            }
        }
    }

    /// {k : f̂(k) ≠ 0}.
    pub fn spectrum(&self) -> SpectrumSet {
        match self {
            ToroidalDistribution::TrigPoly(map) => SpectrumSet::FiniteSet(map.keys().copied().collect()),
            ToroidalDistribution::DiracDeriv(orders) => dirac_spectrum(orders),
        }
    }
}

// f̂(k) = Q(k) with Q(x) = Σ w_m i^m x^m; its spectrum is ℤ minus the integer roots of Q.
fn dirac_spectrum(orders: &[(u32, Complex64)]) -> SpectrumSet {
    let mut poly: BTreeMap<u32, Complex64> = BTreeMap::new();
    for (m, w) in orders {
        *poly.entry(*m).or_default() += w * Complex64::i().powu(*m);
    }
    poly.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    let Some((&top, lead)) = poly.iter().next_back() else {
        return SpectrumSet::FiniteSet(BTreeSet::new());
    };
    let bound = 1.0 + poly.iter().filter(|(m, _)| **m != top).map(|(_, c)| c.norm() / lead.norm()).fold(0.0, f64::max);
    let bound = bound.ceil() as i64;
    let missing = (-bound..=bound)
        .filter(|&k| {
            let x = k as f64;
            let value: Complex64 = poly.iter().map(|(m, c)| c * x.powi(*m as i32)).sum();
            let scale: f64 = poly.iter().map(|(m, c)| c.norm() * x.abs().powi(*m as i32)).sum();
            value.norm() <= 1e-12 * scale
        })
        .collect();
    SpectrumSet::cofinite(None, missing)
}

/// A set of integers of one of the shapes arising as spectra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumSet {
    AllIntegers,
    FiniteSet(BTreeSet<i64>),
    /// {k : k ≥ from}.
    HalfLine(i64),
    /// ℤ, or {k ≥ from}, with finitely many points removed.
    Cofinite { from: Option<i64>, missing: BTreeSet<i64> },
}

impl SpectrumSet {
    fn cofinite(from: Option<i64>, missing: BTreeSet<i64>) -> Self {
        let missing: BTreeSet<i64> = missing.into_iter().filter(|k| from.is_none_or(|f| *k >= f)).collect();
        match (from, missing.is_empty()) {
            (None, true) => SpectrumSet::AllIntegers,
            (Some(f), true) => SpectrumSet::HalfLine(f),
            _ => SpectrumSet::Cofinite { from, missing },
        }
    }

    fn as_cofinite(&self) -> Option<(Option<i64>, BTreeSet<i64>)> {
        match self {
            SpectrumSet::AllIntegers => Some((None, BTreeSet::new())),
            SpectrumSet::HalfLine(f) => Some((Some(*f), BTreeSet::new())),
            SpectrumSet::Cofinite { from, missing } => Some((*from, missing.clone())),
            SpectrumSet::FiniteSet(_) => None,
        }
    }

    pub fn contains(&self, k: i64) -> bool {
        match self {
            SpectrumSet::FiniteSet(s) => s.contains(&k),
            _ => {
                let (from, missing) = self.as_cofinite().expect("infinite shape");
                from.is_none_or(|f| k >= f) && !missing.contains(&k)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SpectrumSet::FiniteSet(s) if s.is_empty())
    }

    pub fn intersect(&self, other: &SpectrumSet) -> SpectrumSet {
        match (self, other) {
            (SpectrumSet::FiniteSet(s), o) | (o, SpectrumSet::FiniteSet(s)) => {
                SpectrumSet::FiniteSet(s.iter().copied().filter(|k| o.contains(*k)).collect())
            }
            _ => {
                let (fa, ma) = self.as_cofinite().expect("infinite shape");
                let (fb, mb) = other.as_cofinite().expect("infinite shape");
                let from = match (fa, fb) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
                SpectrumSet::cofinite(from, ma.union(&mb).copied().collect())
            }
        }
    }
}

/// Spec(P_α): all of ℤ, or {α+1, α+2, …} when α is a negative integer.
pub fn spectrum(alpha: &AlphaParam) -> SpectrumSet {
    match alpha.negative_integer() {
        Some(n) => SpectrumSet::HalfLine(n + 1),
        None => SpectrumSet::AllIntegers,
    }
}

/// Spec(P_α[f]) = Spec(P_α) ∩ Spec(f).
pub fn spectrum_of_integral(alpha: &AlphaParam, f: &ToroidalDistribution) -> SpectrumSet {
    spectrum(alpha).intersect(&f.spectrum())
}

/// Upper bound S with |(α+1)_k/k! · F(−α,k;k+1;x)| ≤ S(1+k)^{max(α,0)}.
fn antiholomorphic_factor_bound(alpha: f64, x: f64) -> f64 {
    if alpha >= 0.0 {
        // Π(1+α/j) ≤ e^{α(1+ln k)} and F ≤ 1
        alpha.exp()
    } else if alpha > -1.0 {
        // (α+1)_k/k! · F ≤ (α+1)_k/k! · k!/(α+1)_k
        1.0
    } else {
        let head: f64 = (1..=(-alpha).ceil() as u32).map(|j| (1.0 + alpha / j as f64).abs().max(1.0)).product();
        head * (1.0 - x).powf(alpha)
    }
}

/// P_α[f](z) = Σ_{k≥0} f̂(k)z^k + Σ_{k≥1} f̂(−k)((α+1)_k/k!)F(−α,k;k+1;|z|²)z̄^k.
///
/// Infinite spectra are truncated once the bound
/// S·M(1+K)^{N+max(α,0)}|z|^K / (1−ρ) on the remaining tail drops below `tol`.
pub fn poisson_integral(alpha: &AlphaParam, f: &ToroidalDistribution, z: Complex64, tol: f64) -> Result<Complex64> {
    check_disc(z)?;
    let a = alpha.to_f64();
    let x = z.norm_sqr();
    let zbar = z.conj();
    let anti_coeff = |k: u32| -> Result<f64> {
        let mut c = 1.0;
        for j in 1..=k {
            c *= (a + j as f64) / j as f64;
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        Ok(c * f_factor(a, k, x)?)
    };
    match f {
        ToroidalDistribution::TrigPoly(map) => {
            let mut sum = Complex64::new(0.0, 0.0);
            for (&k, c) in map {
                sum += if k >= 0 {
                    c * z.powu(k as u32)
                } else {
                    let m = k.unsigned_abs() as u32;
                    c * anti_coeff(m)? * zbar.powu(m)
                };
            }
            Ok(sum)
        }
        ToroidalDistribution::DiracDeriv(_) => {
            let r = x.sqrt();
            let mut sum = f.fourier(0);
            if r == 0.0 {
                return Ok(sum);
            }
            let (m_growth, n_growth) = f.growth();
            let power = n_growth as f64 + a.max(0.0);
            let scale = 2.0 * m_growth * antiholomorphic_factor_bound(a, x).max(1.0);
            let mut zk = Complex64::new(1.0, 0.0);
            let mut zbark = Complex64::new(1.0, 0.0);
            let mut coeff = 1.0;
            for k in 1..MAX_TERMS {
                let kf = k as f64;
                zk *= z;
                zbark *= zbar;
                coeff *= (a + kf) / kf;
                sum += f.fourier(k as i64) * zk;
                if coeff != 0.0 {
                    sum += f.fourier(-(k as i64)) * coeff * f_factor(a, k as u32, x)? * zbark;
                }
                let next = kf + 1.0;
                let rho = r * ((next + 2.0) / (next + 1.0)).powf(power);
                if rho < 1.0 {
                    let tail = scale * (1.0 + next).powf(power) * r.powf(next) / (1.0 - rho);
                    if tail < tol {
                        return Ok(sum);
                    }
                }
            }
            Err(Error::NonConvergent { iterations: MAX_TERMS })
        }
    }
}

/// φ′(z)^{−α/2} u(φ(z)) on the branch of [`log_mobius_derivative`].
pub fn weighted_pullback<U: HalfPlaneFn + ?Sized>(alpha: &AlphaParam, u: &U, z: Complex64) -> Result<Complex64> {
    let w = mobius(z)?;
    let weight = (log_mobius_derivative(z)? * (-alpha.to_f64() / 2.0)).exp();
    Ok(weight * u.eval(w))
}

/// (iA)^k P_α(z) = h_{k,α}(φ(z)) P_α(z), with h_{k,α} expanded once.
#[derive(Clone, Debug)]
pub struct IaPowerKernel {
    alpha: AlphaParam,
    h: FloatBivarPoly,
}

impl IaPowerKernel {
    pub fn new(alpha: &AlphaParam, k: u32) -> Self {
        IaPowerKernel { alpha: alpha.clone(), h: h_poly(alpha, k).to_float() }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h.eval(mobius(z)?) * poisson_kernel(&self.alpha, z)?)
    }
}

/// (iA)^k P_α(z).
pub fn ia_power_kernel(alpha: &AlphaParam, k: u32, z: Complex64) -> Result<Complex64> {
    IaPowerKernel::new(alpha, k).eval(z)
}
