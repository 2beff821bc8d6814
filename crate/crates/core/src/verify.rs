//! Seeded verification suites over the identities and decision procedures
//! of every module. Randomness comes from ChaCha8 seeded with `seed`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alpha::AlphaParam;
use crate::angles::{
    construct_finite, construct_infinite, dyadic_rule, is_admissible, is_minimal, leq, lower_bound, AdmissibilityMode,
    Angle, AngleEntry, FunctionOfAngles,
};
use crate::bivar_poly::{d_alpha, decompose_h_over_p, h_poly, homogeneous_kernel_basis, p_poly, BivarPoly};
use crate::error::{Error, Result};
use crate::hypergeom::{
    bound_below_minus1, bound_log, f_factor, f_factor_quadrature, gauss_limit, hyp2f1, hyp2f1_series, HypergeomParams,
};
use crate::kernels::{poisson_integral, poisson_kernel, poisson_kernel_series, IaPowerKernel, ToroidalDistribution, SERIES_TOL};
use crate::obstruction::{
    growth_bound, recover_coefficients, uniqueness_test_geodesics, uniqueness_test_rays, uniqueness_test_sequence,
    ObstructionFunction, EXACT_TOL, RECOVERY_ANGLES,
};
use crate::zeros::{certify_p_circle_free, ek_annulus, min_modulus_on_circle, roots, Verdict, DEFAULT_GRID};

pub const SUITES: [&str; 6] = ["hypergeom", "poly-kernel", "pullback", "obstruction", "zeros", "angles"];

/// Exact α values used by the polynomial identities.
pub fn exact_alphas() -> Vec<AlphaParam> {
    ["-9/10", "-1/2", "0", "1/2", "1", "7/2"].iter().map(|s| s.parse().expect("literal")).collect()
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Overrides each suite's comparison tolerance.
    pub tol: Option<f64>,
    /// Overrides each suite's number of random cases.
    pub cases: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub index: usize,
    pub check: String,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub seed: u64,
    pub details: Vec<CaseRecord>,
}

impl RunReport {
    fn new(suite: &str, seed: u64) -> Self {
        RunReport { suite: suite.to_string(), cases: 0, failures: 0, max_residual: 0.0, seed, details: Vec::new() }
    }

    fn record(&mut self, check: impl Into<String>, passed: bool, residual: f64) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual.abs() };
        self.details.push(CaseRecord { index: self.cases, check: check.into(), passed, residual });
        self.cases += 1;
        if !passed {
            self.failures += 1;
        }
        if residual.is_finite() {
            self.max_residual = self.max_residual.max(residual);
        }
    }

    /// Residual `r` passes when `r < tol`.
    fn below(&mut self, check: impl Into<String>, residual: f64, tol: f64) {
        self.record(check, residual < tol, residual);
    }

    fn holds(&mut self, check: impl Into<String>, passed: bool) {
        self.record(check, passed, if passed { 0.0 } else { 1.0 });
    }

    fn outcome<T>(&mut self, check: impl Into<String>, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(format!("{}: {e}", check.into()), false, f64::INFINITY);
                None
            }
        }
    }

    fn absorb(&mut self, other: RunReport) {
        for case in other.details {
            let check = format!("{}/{}", other.suite, case.check);
            self.record(check, case.passed, case.residual);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<RunReport> {
    match name {
        "hypergeom" => Ok(hypergeom_suite(opts)),
        "poly-kernel" => Ok(poly_kernel_suite(opts)),
        "pullback" => Ok(pullback_suite(opts)),
        "obstruction" => Ok(obstruction_suite(opts)),
        "zeros" => Ok(zeros_suite(opts)),
        "angles" => Ok(angles_suite(opts)),
        "all" => {
            let mut report = RunReport::new("all", opts.seed);
            for suite in SUITES {
                report.absorb(run_suite(suite, opts)?);
            }
            Ok(report)
        }
        other => Err(Error::Domain(format!("unknown suite {other:?}"))),
    }
}

fn rng_for(opts: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn hypergeom_suite(opts: &VerifyOptions) -> RunReport {
    let tol = opts.tol.unwrap_or(1e-10);
    let mut rng = rng_for(opts, 1);
    let mut report = RunReport::new("hypergeom", opts.seed);
    for i in 0..opts.cases.unwrap_or(100) {
        let (a, b, c) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.3..4.0));
        let x: f64 = rng.gen_range(-0.9..0.9);
        let eval = |p: &HypergeomParams| if x < 0.0 { hyp2f1(p, x) } else { hyp2f1_series(p, x) };
        let residual = (|| -> Result<f64> {
            let lhs = eval(&HypergeomParams::new(a, b, c)?)?;
            let rhs = (1.0 - x).powf(c - a - b) * eval(&HypergeomParams::new(c - a, c - b, c)?)?;
            Ok((lhs - rhs).abs())
        })();
        if let Some(r) = report.outcome(format!("euler[{i}]"), residual) {
            report.below(format!("euler[{i}]"), r, tol);
        }
    }
    for &alpha in &[-0.9, -0.5, 0.25, 0.5, 1.0, 2.5] {
        for k in 1..=10 {
            let check = format!("gauss-approach alpha={alpha} k={k}");
            let approach = (|| -> Result<(bool, f64)> {
                let limit = gauss_limit(alpha, k)?;
                let mut gaps = Vec::new();
                for j in 1..=4 {
                    gaps.push((f_factor(alpha, k, 1.0 - 10f64.powi(-j))? - limit).abs());
                }
                let rise = gaps.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
                Ok((rise <= 1e-15, rise))
            })();
            if let Some((monotone, rise)) = report.outcome(&check, approach) {
                report.record(check, monotone, rise);
            }
        }
    }
    for &alpha in &[-0.5, 0.5, 1.0, 2.0] {
        for k in 1..=8 {
            for &x in &[0.0, 0.3, 0.7, 0.95] {
                let check = format!("quadrature alpha={alpha} k={k} x={x}");
                let r = (|| -> Result<f64> { Ok((f_factor(alpha, k, x)? - f_factor_quadrature(alpha, k, x)?).abs()) })();
                if let Some(r) = report.outcome(&check, r) {
                    report.below(check, r, tol);
                }
            }
        }
    }
    for k in 1..=10 {
        let check = format!("log-bound k={k}");
        let slack = (1..200).try_fold(f64::INFINITY, |acc, i| -> Result<f64> {
            let x = i as f64 / 200.0;
            Ok(acc.min(bound_log(k, x) - f_factor(-1.0, k, x)?))
        });
        if let Some(s) = report.outcome(&check, slack) {
            report.record(check, s >= -1e-12, s.min(0.0));
        }
    }
    for &alpha in &[-1.5, -2.0, -3.5] {
        for k in 1..=6 {
            let check = format!("divergence-bound alpha={alpha} k={k}");
            let slack = (0..100).try_fold(f64::INFINITY, |acc, i| -> Result<f64> {
                let x = i as f64 / 100.0;
                let f = f_factor(alpha, k, x)?;
                let b = bound_below_minus1(alpha, k, x)?;
                Ok(acc.min((b - f) / b))
            });
            if let Some(s) = report.outcome(&check, slack) {
                report.record(check, s >= -1e-12, s.min(0.0));
            }
        }
    }
    report
}

pub fn poly_kernel_suite(opts: &VerifyOptions) -> RunReport {
    let mut report = RunReport::new("poly-kernel", opts.seed);
    for alpha in exact_alphas() {
        for k in 0..=20 {
            report.holds(format!("kernel alpha={alpha} k={k}"), d_alpha(&alpha, &p_poly(&alpha, k)).is_zero());
        }
        for k in 0..=6 {
            let basis = homogeneous_kernel_basis(&alpha, k);
            let spanned = basis.len() == 1 && {
                let lead = basis[0].coeff(k, 0);
                p_poly(&alpha, k).scale(&lead) == basis[0]
            };
            report.holds(format!("null-space alpha={alpha} k={k}"), spanned);
        }
        for k in 0..=12 {
            let check = format!("decompose alpha={alpha} k={k}");
            if let Some(b) = report.outcome(&check, decompose_h_over_p(&alpha, k)) {
                let rebuilt = b
                    .iter()
                    .enumerate()
                    .fold(BivarPoly::zero(), |acc, (j, c)| &acc + &p_poly(&alpha, j as u32).scale(c));
                report.holds(check, rebuilt == h_poly(&alpha, k));
            }
        }
    }
    let mut rng = rng_for(opts, 2);
    for i in 0..opts.cases.unwrap_or(20) {
        let alpha = AlphaParam::from_ratio(rng.gen_range(-19..60), rng.gen_range(1..20));
        if !alpha.half_plane_valid() {
            continue;
        }
        let k = rng.gen_range(0..=10);
        report.holds(format!("random-kernel[{i}] alpha={alpha} k={k}"), d_alpha(&alpha, &p_poly(&alpha, k)).is_zero());
    }
    report
}

fn random_disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

pub fn pullback_suite(opts: &VerifyOptions) -> RunReport {
    let tol = opts.tol.unwrap_or(1e-8);
    let mut rng = rng_for(opts, 3);
    let mut report = RunReport::new("pullback", opts.seed);
    let points: Vec<Complex64> = (0..opts.cases.unwrap_or(100)).map(|_| random_disc_point(&mut rng, 0.8)).collect();
    for a in ["-0.5", "0.5", "1"] {
        let alpha: AlphaParam = a.parse().expect("literal");
        for k in 0..=5 {
            let kernel = IaPowerKernel::new(&alpha, k);
            let dist = ToroidalDistribution::dirac_derivative(k);
            let worst = points.iter().try_fold(0.0f64, |acc, z| -> Result<f64> {
                Ok(acc.max((kernel.eval(*z)? - poisson_integral(&alpha, &dist, *z, SERIES_TOL)?).norm()))
            });
            let check = format!("ia-power alpha={a} k={k}");
            if let Some(r) = report.outcome(&check, worst) {
                report.below(check, r, tol);
            }
        }
    }
    for a in ["-0.9", "-0.5", "0", "0.5", "1", "2.5"] {
        let alpha: AlphaParam = a.parse().expect("literal");
        let worst = (0..20).flat_map(|i| (0..20).map(move |j| (i, j))).try_fold(0.0f64, |acc, (i, j)| -> Result<f64> {
            let z = Complex64::from_polar(0.9 * i as f64 / 19.0, 2.0 * PI * j as f64 / 20.0);
            Ok(acc.max((poisson_kernel(&alpha, z)? - poisson_kernel_series(&alpha, z, SERIES_TOL)?).norm()))
        });
        let check = format!("closed-vs-series alpha={a}");
        if let Some(r) = report.outcome(&check, worst) {
            report.below(check, r, tol.min(1e-10));
        }
    }
    report
}

/// A random element of V_{α,n} with complex coefficients of size ≤ `scale`
/// and a leading coefficient bounded away from zero.
pub fn random_obstruction(rng: &mut ChaCha8Rng, alpha: &AlphaParam, n: usize, scale: f64) -> ObstructionFunction {
    let mut coeffs: Vec<Complex64> =
        (0..=n).map(|_| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))).collect();
    if coeffs[n].norm() < 0.1 * scale {
        coeffs[n] = Complex64::new(scale / 2.0, 0.0);
    }
    ObstructionFunction::new(alpha.clone(), coeffs).expect("alpha > -1")
}

/// An unbounded sequence in the upper half-plane: points r_j e^{iθ_j} with
/// r_j geometric and θ_j in [0.2, π−0.2].
pub fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let mut r = rng.gen_range(10.0..100.0);
    (0..len)
        .map(|_| {
            r *= rng.gen_range(1.5..3.0);
            Complex64::from_polar(r, rng.gen_range(0.2..PI - 0.2))
        })
        .collect()
}

/// The 𝒜₀ family {π/2 ↦ 1, π/3 ↦ 2, π/5 ↦ 6, irrational ↦ 30}.
pub fn four_angle_family() -> FunctionOfAngles {
    let prefix = [Angle::rational(1, 2), Angle::rational(1, 3), Angle::rational(1, 5)].map(|a| a.expect("literal"));
    construct_finite(&prefix, Angle::irrational("sqrt2", 2f64.sqrt()).expect("literal")).expect("valid construction")
}

pub fn obstruction_suite(opts: &VerifyOptions) -> RunReport {
    let tol = opts.tol.unwrap_or(1e-6);
    let cases = opts.cases.unwrap_or(20);
    let mut rng = rng_for(opts, 4);
    let mut report = RunReport::new("obstruction", opts.seed);
    for a in ["-0.5", "0", "0.5", "1", "2"] {
        let alpha: AlphaParam = a.parse().expect("literal");
        for i in 0..cases {
            let n = rng.gen_range(0..=5);
            let u = random_obstruction(&mut rng, &alpha, n, 10.0);
            let check = format!("recover alpha={a} [{i}]");
            if let Some(rec) = report.outcome(&check, recover_coefficients(&alpha, &u, 5, &RECOVERY_ANGLES)) {
                let err = (0..=5)
                    .map(|k| (rec.coeffs[k] - u.coeffs().get(k).copied().unwrap_or_default()).norm())
                    .fold(0.0, f64::max);
                report.below(check, err, tol);
            }
            let g = growth_bound(&u);
            let mut excess = 0.0f64;
            for _ in 0..200 {
                let z = Complex64::from_polar(rng.gen_range(1.0..100.0), rng.gen_range(1e-3..PI - 1e-3));
                let value = u.eval(z).map(|v| v.norm()).unwrap_or(f64::INFINITY);
                excess = excess.max(value / (g.constant * (z.norm_sqr() / z.im).powf(g.order)) - 1.0);
            }
            report.record(format!("growth alpha={a} [{i}]"), excess <= 0.0, excess.max(0.0));
        }
        if !alpha.is_zero() {
            for i in 0..cases {
                let n = rng.gen_range(0..=5);
                let u = random_obstruction(&mut rng, &alpha, n, 10.0);
                let seq = random_sequence(&mut rng, 8);
                let samples: Vec<_> = seq.iter().map(|z| (*z, u.eval(*z).expect("upper half-plane"))).collect();
                let verdict = uniqueness_test_sequence(&samples, &alpha, EXACT_TOL);
                if let Some(v) = report.outcome(format!("sequence alpha={a} [{i}]"), verdict) {
                    report.holds(format!("sequence alpha={a} [{i}]"), !v);
                }
            }
        }
    }
    let zero = |_: Complex64| Complex64::new(0.0, 0.0);
    let alpha0 = AlphaParam::from_int(0);
    let family = four_angle_family();
    for i in 0..cases {
        let n = rng.gen_range(0..=8);
        let u = random_obstruction(&mut rng, &alpha0, n, 10.0);
        let (x1, x2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if x1 != x2 {
            if let Some(v) = report.outcome(format!("geodesics [{i}]"), uniqueness_test_geodesics(&u, x1, x2, EXACT_TOL)) {
                report.holds(format!("geodesics [{i}]"), !v);
            }
        }
        if let Some(v) = report.outcome(format!("rays [{i}]"), uniqueness_test_rays(&u, &family, 8, EXACT_TOL)) {
            report.holds(format!("rays [{i}]"), !v);
        }
    }
    let counter = |z: Complex64| Complex64::new(((z - 1.0) * (z - 1.0)).im, 0.0);
    if let Some(v) = report.outcome("geodesics counterexample", uniqueness_test_geodesics(&counter, 1.0, 0.0, EXACT_TOL)) {
        report.holds("geodesics counterexample", !v);
    }
    if let Some(v) = report.outcome("geodesics zero", uniqueness_test_geodesics(&zero, 1.0, 0.0, EXACT_TOL)) {
        report.holds("geodesics zero", v);
    }
    if let Some(v) = report.outcome("rays zero", uniqueness_test_rays(&zero, &family, 8, EXACT_TOL)) {
        report.holds("rays zero", v);
    }
    report
}

pub fn zeros_suite(opts: &VerifyOptions) -> RunReport {
    let tol = opts.tol.unwrap_or(1e-9);
    let mut rng = rng_for(opts, 5);
    let mut report = RunReport::new("zeros", opts.seed);
    for a in ["1/2", "-1/2", "9/10", "-9/10", "1", "3"] {
        let alpha: AlphaParam = a.parse().expect("literal");
        for k in 1..=15 {
            let check = format!("certificate alpha={a} k={k}");
            if let Some(cert) = report.outcome(&check, certify_p_circle_free(&alpha, k)) {
                let m = min_modulus_on_circle(&alpha, k, DEFAULT_GRID);
                report.record(check, cert.verdict != Verdict::Undecided && m >= 1e-3, (1e-3 - m).max(0.0));
            }
        }
    }
    for k in 1..=15u32 {
        let check = format!("roots-of-unity k={k}");
        let coeffs = vec![Complex64::new(1.0, 0.0); k as usize + 1];
        if let Some(found) = report.outcome(&check, roots(&coeffs)) {
            let worst = found
                .iter()
                .map(|z| {
                    (1..=k)
                        .map(|j| (z - Complex64::from_polar(1.0, 2.0 * PI * j as f64 / (k + 1) as f64)).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max);
            report.below(check, worst, tol);
        }
    }
    for i in 0..opts.cases.unwrap_or(200) {
        let n = rng.gen_range(1..=12);
        let coeffs: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.05..5.0)).collect();
        let check = format!("ek-soundness [{i}]");
        let result = ek_annulus(&coeffs).and_then(|cert| {
            let complex: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(*c, 0.0)).collect();
            Ok((cert, roots(&complex)?))
        });
        if let Some((cert, found)) = report.outcome(&check, result) {
            let excess = found
                .iter()
                .map(|z| (cert.inner - z.norm()).max(z.norm() - cert.outer))
                .fold(f64::NEG_INFINITY, f64::max);
            report.record(check, excess <= 1e-8, excess.max(0.0));
        }
    }
    report
}

/// Random finite family: 1–6 rational angles with denominators ≤ 30 and
/// η ≤ 50, an optional irrational member, and often one η forced to 1.
pub fn random_finite_family(rng: &mut ChaCha8Rng) -> FunctionOfAngles {
    let size = rng.gen_range(1..=6);
    let mut entries: Vec<AngleEntry> = Vec::new();
    while entries.len() < size {
        let n = rng.gen_range(2..=30u64);
        let theta = Angle::rational(rng.gen_range(1..n), n).expect("0 < m < n");
        if !entries.iter().any(|e| e.angle == theta) {
            entries.push(AngleEntry::new(theta, rng.gen_range(1..=50)));
        }
    }
    if rng.gen_bool(0.5) {
        let theta = Angle::irrational("x", rng.gen_range(0.1..3.0)).expect("in range");
        entries.push(AngleEntry::new(theta, rng.gen_range(1..=50)));
    }
    if rng.gen_bool(0.7) {
        let i = rng.gen_range(0..entries.len());
        entries[i].eta = 1;
    }
    FunctionOfAngles::finite(entries).expect("distinct angles")
}

/// A random family from the finite construction: up to `max_prefix` rational
/// angles (denominators ≤ 12) satisfying the non-divisibility hypothesis.
pub fn random_minimal_family(rng: &mut ChaCha8Rng, max_prefix: usize) -> FunctionOfAngles {
    let pool: Vec<Angle> = (2..=12u64)
        .flat_map(|n| (1..n).filter(move |m| m.gcd(&n) == 1).map(move |m| Angle::rational(m, n).expect("0 < m < n")))
        .collect();
    let mut prefix: Vec<Angle> = Vec::new();
    let mut lcm = 1u64;
    for _ in 0..rng.gen_range(0..=max_prefix) {
        let candidates: Vec<&Angle> = pool.iter().filter(|t| !lcm.is_multiple_of(t.d())).collect();
        let theta = candidates[rng.gen_range(0..candidates.len())].clone();
        lcm = lcm.lcm(&theta.d());
        prefix.push(theta);
    }
    let tail = Angle::irrational("tail", rng.gen_range(0.1..3.0)).expect("in range");
    construct_finite(&prefix, tail).expect("hypothesis holds by construction")
}

pub fn angles_suite(opts: &VerifyOptions) -> RunReport {
    let mut rng = rng_for(opts, 6);
    let mut report = RunReport::new("angles", opts.seed);
    let limit = 10_000;
    for i in 0..opts.cases.unwrap_or(500) {
        let f = random_finite_family(&mut rng);
        let check = format!("exact-vs-brute [{i}]");
        let pair = is_admissible(&f, AdmissibilityMode::ExactRanges)
            .and_then(|e| Ok((e, is_admissible(&f, AdmissibilityMode::BruteForce(limit))?)));
        if let Some((exact, brute)) = report.outcome(&check, pair) {
            report.holds(check, brute.witness_failure == exact.witness_failure.filter(|w| *w <= limit));
        }
    }
    let mut tested = 0;
    let target = opts.cases.map_or(200, |c| c.min(200));
    while tested < target {
        let f = random_finite_family(&mut rng);
        if !is_admissible(&f, AdmissibilityMode::ExactRanges).map(|r| r.admissible).unwrap_or(false) {
            continue;
        }
        let check = format!("lower-bound [{tested}]");
        let verdict = lower_bound(&f, 64).and_then(|lb| Ok(leq(&lb, &f)? && is_minimal(&lb)?));
        if let Some(ok) = report.outcome(&check, verdict) {
            report.holds(check, ok);
        }
        tested += 1;
    }
    for i in 0..50 {
        let f = random_minimal_family(&mut rng, 4);
        let check = format!("construction-admissible [{i}]");
        let both = [AdmissibilityMode::ExactRanges, AdmissibilityMode::BruteForce(limit)]
            .iter()
            .try_fold(true, |acc, mode| Ok::<bool, Error>(acc && is_admissible(&f, *mode)?.admissible));
        if let Some(ok) = report.outcome(&check, both) {
            report.holds(check, ok);
        }
        let check = format!("minimality [{i}]");
        let perturbed = (|| -> Result<bool> {
            let entries = f.entries(0)?;
            for j in 0..entries.len() {
                let mut dropped = entries.clone();
                dropped.remove(j);
                let mut raised = entries.clone();
                raised[j].eta += 1;
                for weaker in [dropped, raised] {
                    if weaker.is_empty() {
                        continue;
                    }
                    let g = FunctionOfAngles::finite(weaker)?;
                    if is_admissible(&g, AdmissibilityMode::ExactRanges)?.admissible && leq(&g, &f)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        if let Some(ok) = report.outcome(&check, perturbed) {
            report.holds(check, ok);
        }
    }
    let dyadic = construct_infinite(dyadic_rule());
    let check = "infinite-construction";
    let ok = dyadic.and_then(|d| {
        Ok(is_admissible(&d, AdmissibilityMode::ExactRanges)?.admissible
            && is_admissible(&d, AdmissibilityMode::BruteForce(limit))?.admissible)
    });
    if let Some(ok) = report.outcome(check, ok) {
        report.holds(check, ok);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_with_default_seed() {
        let opts = VerifyOptions { seed: 7, tol: None, cases: Some(10) };
        for suite in SUITES {
            let report = run_suite(suite, &opts).unwrap();
            let failed: Vec<_> = report.details.iter().filter(|c| !c.passed).collect();
            assert!(report.passed(), "{suite}: {failed:?}");
            assert!(report.failures <= report.cases);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = VerifyOptions { seed: 3, tol: None, cases: Some(5) };
        assert_eq!(run_suite("obstruction", &opts).unwrap(), run_suite("obstruction", &opts).unwrap());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &VerifyOptions::default()).is_err());
    }

    #[test]
    fn four_angle_family_is_minimal() {
        let f = four_angle_family();
        let etas: Vec<u64> = f.entries(0).unwrap().iter().map(|e| e.eta).collect();
        assert_eq!(etas, vec![1, 2, 6, 30]);
        assert!(is_minimal(&f).unwrap());
    }
}
