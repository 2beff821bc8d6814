//! Exact polynomials in z and z̄ over ℚ(i), the families s_{k,α}, p_{k,α},
//! h_{k,α}, and the operators ∂, ∂̄, iA and D_α.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::alpha::{format_ratio, AlphaParam};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::special::binomial_series_coeff;

/// z^z · z̄^zbar.
///
/// Ordered by total degree, then by decreasing power of z, so that
/// `z^k` leads each homogeneous block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub z: u32,
    pub zbar: u32,
}

impl Monomial {
    pub fn new(z: u32, zbar: u32) -> Self {
        Monomial { z, zbar }
    }

    pub fn degree(&self) -> u32 {
        self.z + self.zbar
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(other.z.cmp(&self.z))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in z and z̄. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn monomial(z: u32, zbar: u32, c: GaussianRational) -> Self {
        let mut p = BivarPoly::zero();
        p.add_term(Monomial::new(z, zbar), &c);
        p
    }

    /// The polynomial z.
    pub fn z() -> Self {
        Self::monomial(1, 0, GaussianRational::one())
    }

    /// The polynomial z̄.
    pub fn zbar() -> Self {
        Self::monomial(0, 1, GaussianRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, z: u32, zbar: u32) -> GaussianRational {
        self.terms.get(&Monomial::new(z, zbar)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// ∂ = ∂/∂z, treating z̄ as independent.
    pub fn d_z(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (m, c) in &self.terms {
            if m.z > 0 {
                out.add_term(Monomial::new(m.z - 1, m.zbar), &c.scale_int(m.z as i64));
            }
        }
        out
    }

    /// ∂̄ = ∂/∂z̄.
    pub fn d_zbar(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (m, c) in &self.terms {
            if m.zbar > 0 {
                out.add_term(Monomial::new(m.z, m.zbar - 1), &c.scale_int(m.zbar as i64));
            }
        }
        out
    }

    /// Homogeneous components, indexed by degree 0..=total_degree.
    pub fn homogeneous_parts(&self) -> Vec<BivarPoly> {
        let top = match self.total_degree() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut parts = vec![BivarPoly::zero(); top + 1];
        for (m, c) in &self.terms {
            parts[m.degree() as usize].add_term(*m, c);
        }
        parts
    }

    /// Converts the coefficients to floating point once, for repeated evaluation.
    pub fn to_float(&self) -> FloatBivarPoly {
        FloatBivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.to_complex())).collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.to_float().eval(z)
    }

    /// Exact value at a Gaussian-rational point, with z̄ the conjugate of z.
    pub fn eval_exact(&self, z: &GaussianRational) -> GaussianRational {
        let zc = z.conj();
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.z {
                t = &t * z;
            }
            for _ in 0..m.zbar {
                t = &t * &zc;
            }
            acc += &t;
        }
        acc
    }
}

impl GaussianRational {
    fn scale_int(&self, n: i64) -> GaussianRational {
        let f = BigRational::from_integer(n.into());
        GaussianRational::new(&self.re * &f, &self.im * &f)
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.z + mb.z, ma.zbar + mb.zbar), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        self.scale(&-GaussianRational::one())
    }
}

/// Float shadow of a [`BivarPoly`].
#[derive(Clone, Debug)]
pub struct FloatBivarPoly {
    terms: Vec<(Monomial, Complex64)>,
}

impl FloatBivarPoly {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let max_z = self.terms.iter().map(|(m, _)| m.z).max().unwrap_or(0) as usize;
        let max_zbar = self.terms.iter().map(|(m, _)| m.zbar).max().unwrap_or(0) as usize;
        let powers = |w: Complex64, n: usize| {
            let mut v = Vec::with_capacity(n + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for _ in 0..=n {
                v.push(acc);
                acc *= w;
            }
            v
        };
        let zp = powers(z, max_z);
        let zbp = powers(z.conj(), max_zbar);
        self.terms
            .iter()
            .map(|(m, c)| c * zp[m.z as usize] * zbp[m.zbar as usize])
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    i: u32,
    j: u32,
    re: String,
    im: String,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord { i: m.z, j: m.zbar, re: format_ratio(&c.re), im: format_ratio(&c.im) })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut p = BivarPoly::zero();
        for r in records {
            let c = GaussianRational::parse(&r.re, &r.im).map_err(serde::de::Error::custom)?;
            p.add_term(Monomial::new(r.i, r.j), &c);
        }
        Ok(p)
    }
}

fn alpha_coeff(alpha: &AlphaParam, j: u32) -> GaussianRational {
    GaussianRational::real(binomial_series_coeff(&alpha.plus_one(), j))
}

/// s_{k,α}(z) = Σ_{j≤k} ((α+1)_j / j!) z^j.
pub fn s_poly(alpha: &AlphaParam, k: u32) -> BivarPoly {
    let mut p = BivarPoly::zero();
    for j in 0..=k {
        p.add_term(Monomial::new(j, 0), &alpha_coeff(alpha, j));
    }
    p
}

/// p_{k,α}(z) = Σ_{j≤k} ((α+1)_j / j!) z^{k−j} z̄^j, homogeneous of degree k.
pub fn p_poly(alpha: &AlphaParam, k: u32) -> BivarPoly {
    let mut p = BivarPoly::zero();
    for j in 0..=k {
        p.add_term(Monomial::new(k - j, j), &alpha_coeff(alpha, j));
    }
    p
}

/// Coefficients (α+1)_j/j!, j = 0..=k, shared by s_{k,α} and p_{k,α}.
pub fn binomial_coefficients(alpha: &AlphaParam, k: u32) -> Vec<BigRational> {
    (0..=k).map(|j| binomial_series_coeff(&alpha.plus_one(), j)).collect()
}

/// h_{k,α}: h₀ = 1 and
/// h_{k+1} = ½(z²+1)∂h_k + ½(z̄²+1)∂̄h_k + ½(z + (α+1)z̄ + iα)h_k.
pub fn h_poly(alpha: &AlphaParam, k: u32) -> BivarPoly {
    h_sequence(alpha, k).pop().expect("sequence is nonempty")
}

/// h_{0,α}, …, h_{k,α}.
pub fn h_sequence(alpha: &AlphaParam, k: u32) -> Vec<BivarPoly> {
    let half = GaussianRational::real(BigRational::new(1.into(), 2.into()));
    let one = GaussianRational::one();
    let z_sq_plus_one = &(&BivarPoly::z() * &BivarPoly::z()) + &BivarPoly::constant(one.clone());
    let zbar_sq_plus_one = &(&BivarPoly::zbar() * &BivarPoly::zbar()) + &BivarPoly::constant(one);
    let linear = {
        let mut p = BivarPoly::z();
        p.add_term(Monomial::new(0, 1), &GaussianRational::real(alpha.plus_one()));
        p.add_term(Monomial::new(0, 0), &GaussianRational::imag(alpha.value().clone()));
        p
    };
    let mut seq = vec![BivarPoly::one()];
    for _ in 0..k {
        let h = seq.last().expect("nonempty");
        let next = &(&(&z_sq_plus_one * &h.d_z()) + &(&zbar_sq_plus_one * &h.d_zbar())) + &(&linear * h);
        seq.push(next.scale(&half));
    }
    seq
}

/// D_α p = (z − z̄)∂∂̄p + ∂̄p − (α+1)∂p.
pub fn d_alpha(alpha: &AlphaParam, p: &BivarPoly) -> BivarPoly {
    let z_minus_zbar = &BivarPoly::z() - &BivarPoly::zbar();
    let dz = p.d_z();
    let mixed = &z_minus_zbar * &dz.d_zbar();
    let first = &mixed + &p.d_zbar();
    &first - &dz.scale(&GaussianRational::real(alpha.plus_one()))
}

/// i·A p = i(z∂ − z̄∂̄)p; the monomial z^a z̄^b is multiplied by i(a − b).
pub fn angular_derivative(p: &BivarPoly) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for (m, c) in p.terms() {
        let diff = m.z as i64 - m.zbar as i64;
        out.add_term(*m, &(c * &GaussianRational::from_ints(0, diff)));
    }
    out
}

/// Coefficients b₀..b_k with h_{k,α} = Σ b_j p_{j,α}.
///
/// Each homogeneous part of h_{k,α} is a multiple of the matching p_{j,α};
/// the multiple is read off the z^j coefficient and the full residual is
/// verified to vanish.
pub fn decompose_h_over_p(alpha: &AlphaParam, k: u32) -> Result<Vec<GaussianRational>> {
    let h = h_poly(alpha, k);
    let parts = h.homogeneous_parts();
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    let mut rebuilt = BivarPoly::zero();
    for j in 0..=k {
        let b = parts.get(j as usize).map(|part| part.coeff(j, 0)).unwrap_or_else(GaussianRational::zero);
        rebuilt = &rebuilt + &p_poly(alpha, j).scale(&b);
        coeffs.push(b);
    }
    let residual = &h - &rebuilt;
    match residual.total_degree() {
        None => Ok(coeffs),
        Some(d) => Err(Error::DecompositionFailure(d as usize)),
    }
}

/// Basis of the kernel of D_α restricted to homogeneous degree-k polynomials,
/// computed by exact Gaussian elimination on the matrix of D_α in the
/// monomial basis z^{k−j} z̄^j.
pub fn homogeneous_kernel_basis(alpha: &AlphaParam, k: u32) -> Vec<BivarPoly> {
    let cols = k as usize + 1;
    let rows = k as usize; // image lives in degree k − 1
    let mut matrix = vec![vec![GaussianRational::zero(); cols]; rows];
    for j in 0..cols {
        let image = d_alpha(alpha, &BivarPoly::monomial(k - j as u32, j as u32, GaussianRational::one()));
        for (m, c) in image.terms() {
            debug_assert_eq!(m.degree() + 1, k);
            matrix[m.zbar as usize][j] = c.clone();
        }
    }
    null_space(matrix, cols)
        .into_iter()
        .map(|v| {
            let mut p = BivarPoly::zero();
            for (j, c) in v.iter().enumerate() {
                p.add_term(Monomial::new(k - j as u32, j as u32), c);
            }
            p
        })
        .collect()
}

/// Rank of an exact matrix.
pub fn rank(matrix: Vec<Vec<GaussianRational>>, cols: usize) -> usize {
    row_reduce(matrix, cols).1.len()
}

fn row_reduce(mut m: Vec<Vec<GaussianRational>>, cols: usize) -> (Vec<Vec<GaussianRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for c in 0..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

fn null_space(matrix: Vec<Vec<GaussianRational>>, cols: usize) -> Vec<Vec<GaussianRational>> {
    let (reduced, pivots) = row_reduce(matrix, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[f] = GaussianRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[r][f].clone();
            }
            v
        })
        .collect()
}
