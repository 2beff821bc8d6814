//! Gamma function and Pochhammer symbols.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::One;

/// Rising factorial (a)_k = a(a+1)…(a+k−1), with (a)_0 = 1.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Exact rising factorial over the rationals.
pub fn pochhammer_exact(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// (α+1)_j / j!, the binomial-series coefficient, exactly.
pub fn binomial_series_coeff(alpha_plus_one: &BigRational, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = alpha_plus_one.clone();
    for i in 1..=j {
        acc *= &term;
        acc /= BigRational::from_integer(i.into());
        term += BigRational::one();
    }
    acc
}

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (z − 1)
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    sum
}

/// Γ(x) for real x, reflection below 1/2. Poles return `NaN`.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    // Small positive integers are exact.
    if x == x.floor() && x <= 23.0 {
        return (1..x as u64).fold(1.0, |acc, j| acc * j as f64);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}
