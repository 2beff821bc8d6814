//! Angles as rational or irrational multiples of π, admissible functions of
//! angles, their two standard constructions, the partial order, and the
//! greedy lower bound in the minimal class.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// How many generated angles a lazy family materializes when nothing
/// tighter is requested.
pub const DEFAULT_PREFIX: usize = 16;

/// An angle in (0, π).
#[derive(Clone, Debug)]
pub enum Angle {
    /// (m/n)π with gcd(m, n) = 1 and 0 < m < n.
    Rational { m: u64, n: u64 },
    /// An irrational multiple of π, identified by its label.
    Irrational { approx: f64, label: String },
}

impl Angle {
    pub fn rational(m: u64, n: u64) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Domain(format!("angle {m}/{n} of pi is not in (0, pi)")));
        }
        let g = m.gcd(&n);
        Ok(Angle::Rational { m: m / g, n: n / g })
    }

    pub fn irrational(label: &str, approx: f64) -> Result<Self> {
        if !(approx > 0.0 && approx < PI) {
            return Err(Error::Domain(format!("irrational angle approximant {approx} is not in (0, pi)")));
        }
        if label.is_empty() || label.contains(':') {
            return Err(Error::Domain(format!("bad irrational label {label:?}")));
        }
        Ok(Angle::Irrational { approx, label: label.to_string() })
    }

    /// Radians.
    pub fn value(&self) -> f64 {
        match self {
            Angle::Rational { m, n } => *m as f64 / *n as f64 * PI,
            Angle::Irrational { approx, .. } => *approx,
        }
    }

    pub fn is_irrational(&self) -> bool {
        matches!(self, Angle::Irrational { .. })
    }

    /// Generator of {k ∈ ℤ : sin(kθ) = 0}: the reduced denominator, or 0.
    pub fn d(&self) -> u64 {
        match self {
            Angle::Rational { n, .. } => *n,
            Angle::Irrational { .. } => 0,
        }
    }

    /// sin(kθ) = 0, decided exactly.
    pub fn sin_vanishes(&self, k: u64) -> bool {
        match self {
            Angle::Rational { n, .. } => k.is_multiple_of(*n),
            Angle::Irrational { .. } => k == 0,
        }
    }

    // Tie-break order for the greedy lower bound: irrational first, then by
    // value, then by denominator.
    fn preference(&self, other: &Angle) -> Ordering {
        match (self, other) {
            (Angle::Irrational { .. }, Angle::Rational { .. }) => Ordering::Less,
            (Angle::Rational { .. }, Angle::Irrational { .. }) => Ordering::Greater,
            (Angle::Rational { m: a, n: b }, Angle::Rational { m: c, n: d }) => {
                ((*a as u128) * (*d as u128)).cmp(&((*c as u128) * (*b as u128))).then(b.cmp(d))
            }
            (a, b) => a.value().total_cmp(&b.value()),
        }
    }
}

/// d(θ).
pub fn d_of(theta: &Angle) -> u64 {
    theta.d()
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::Rational { m: a, n: b }, Angle::Rational { m: c, n: d }) => a == c && b == d,
            (Angle::Irrational { label: a, .. }, Angle::Irrational { label: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Eq for Angle {}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational { m, n } => write!(f, "{m}/{n}"),
            Angle::Irrational { approx, label } => write!(f, "irr:{label}:{approx}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// `"m/n"` for (m/n)π, or `"irr:<label>:<approx>"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("irr:") {
            let (label, approx) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("expected irr:<label>:<approx>, got {s:?}")))?;
            let approx: f64 = approx.parse().map_err(|_| Error::Parse(format!("bad approximant in {s:?}")))?;
            return Angle::irrational(label, approx);
        }
        let (m, n) = s.split_once('/').ok_or_else(|| Error::Parse(format!("expected m/n, got {s:?}")))?;
        let m: u64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        Angle::rational(m, n)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One entry (θ, η(θ)) of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleEntry {
    pub angle: Angle,
    pub eta: u64,
}

impl AngleEntry {
    pub fn new(angle: Angle, eta: u64) -> Self {
        AngleEntry { angle, eta }
    }
}

/// Rule producing θ₁, θ₂, … (index starting at 1).
pub type AngleRule = Arc<dyn Fn(usize) -> Angle + Send + Sync>;

/// A function of angles (E, η).
#[derive(Clone)]
pub enum FunctionOfAngles {
    Finite(Vec<AngleEntry>),
    /// The infinite construction driven by a rule; η is derived.
    LazyInfinite(AngleRule),
}

impl fmt::Debug for FunctionOfAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionOfAngles::Finite(entries) => f.debug_tuple("Finite").field(entries).finish(),
            FunctionOfAngles::LazyInfinite(_) => f.write_str("LazyInfinite(..)"),
        }
    }
}

impl FunctionOfAngles {
    /// A finite family; angles must be distinct and every η ≥ 1.
    pub fn finite(entries: Vec<AngleEntry>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.eta == 0 {
                return Err(Error::Domain(format!("eta must be positive (entry {i})")));
            }
            if entries[..i].iter().any(|o| o.angle == e.angle) {
                return Err(Error::Domain(format!("angle {} occurs twice", e.angle)));
            }
        }
        Ok(FunctionOfAngles::Finite(entries))
    }

    /// Entries of a finite family, or the first `count` generated entries of a
    /// lazy one (validated against the construction hypothesis). A lazy
    /// prefix stops early once the next η would overflow `u64`.
    pub fn entries(&self, count: usize) -> Result<Vec<AngleEntry>> {
        match self {
            FunctionOfAngles::Finite(entries) => Ok(entries.clone()),
            FunctionOfAngles::LazyInfinite(rule) => build_prefix((1..=count).map(|k| rule(k)), u64::MAX, true),
        }
    }

    /// Generated entries of a lazy family with η ≤ bound (all entries if finite).
    pub fn entries_up_to_eta(&self, bound: u64) -> Result<Vec<AngleEntry>> {
        match self {
            FunctionOfAngles::Finite(entries) => Ok(entries.clone()),
            // η at least doubles at each step, so at most 64 angles are generated.
            FunctionOfAngles::LazyInfinite(rule) => build_prefix((1..=64).map(|k| rule(k)), bound, true),
        }
    }
}

impl Serialize for FunctionOfAngles {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.entries(DEFAULT_PREFIX).map_err(serde::ser::Error::custom)?;
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FunctionOfAngles {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<AngleEntry>::deserialize(deserializer)?;
        FunctionOfAngles::finite(entries).map_err(serde::de::Error::custom)
    }
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::Domain("lcm with an irrational angle".into()));
    }
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm of denominators"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibilityMode {
    ExactRanges,
    BruteForce(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibilityMethod {
    ExactRanges,
    BruteForce(u64),
    /// Non-divisibility hypothesis validated on a generated prefix.
    ConstructionHypothesis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    #[serde(rename = "witness", skip_serializing_if = "Option::is_none")]
    pub witness_failure: Option<u64>,
    pub method: AdmissibilityMethod,
}

/// Decides whether every k ≥ 1 has θ ∈ E with sin(kθ) ≠ 0 and η(θ) ≤ k.
///
/// `ExactRanges` splits ℤ⁺ at the distinct η values. On each piece the
/// active set is fixed, and k fails exactly when the active set is all
/// rational and k is a multiple of the lcm L of its denominators.
pub fn is_admissible(foa: &FunctionOfAngles, mode: AdmissibilityMode) -> Result<AdmissibilityReport> {
    match (foa, mode) {
        (FunctionOfAngles::Finite(entries), _) if entries.is_empty() => Err(Error::EmptyFamily),
        (FunctionOfAngles::Finite(entries), AdmissibilityMode::ExactRanges) => exact_ranges(entries),
        (_, AdmissibilityMode::BruteForce(limit)) => {
            let entries = foa.entries_up_to_eta(limit)?;
            Ok(brute_force(&entries, limit))
        }
        (FunctionOfAngles::LazyInfinite(_), AdmissibilityMode::ExactRanges) => match foa.entries(DEFAULT_PREFIX) {
            Ok(_) => Ok(AdmissibilityReport {
                admissible: true,
                witness_failure: None,
                method: AdmissibilityMethod::ConstructionHypothesis(DEFAULT_PREFIX),
            }),
            Err(Error::HypothesisViolation(k)) => Ok(AdmissibilityReport {
                admissible: false,
                witness_failure: Some(k as u64),
                method: AdmissibilityMethod::ConstructionHypothesis(DEFAULT_PREFIX),
            }),
            Err(e) => Err(e),
        },
    }
}

fn exact_ranges(entries: &[AngleEntry]) -> Result<AdmissibilityReport> {
    let report = |witness: Option<u64>| AdmissibilityReport {
        admissible: witness.is_none(),
        witness_failure: witness,
        method: AdmissibilityMethod::ExactRanges,
    };
    let mut levels: Vec<u64> = entries.iter().map(|e| e.eta).collect();
    levels.sort_unstable();
    levels.dedup();
    if levels[0] > 1 {
        return Ok(report(Some(1)));
    }
    for (j, &start) in levels.iter().enumerate() {
        let end = levels.get(j + 1).map(|next| next - 1);
        let active: Vec<&AngleEntry> = entries.iter().filter(|e| e.eta <= start).collect();
        if active.iter().any(|e| e.angle.is_irrational()) {
            continue;
        }
        let mut lcm = Some(1u64);
        for e in &active {
            lcm = lcm.and_then(|l| checked_lcm(l, e.angle.d()).ok());
        }
        let first_multiple = lcm.and_then(|l| start.div_ceil(l).checked_mul(l));
        match (first_multiple, end) {
            (Some(m), Some(end)) if m <= end => return Ok(report(Some(m))),
            (Some(m), None) => return Ok(report(Some(m))),
            (None, None) => return Err(Error::Overflow("first failing multiple")),
            _ => {}
        }
    }
    Ok(report(None))
}

fn brute_force(entries: &[AngleEntry], limit: u64) -> AdmissibilityReport {
    let witness = (1..=limit).find(|&k| !entries.iter().any(|e| e.eta <= k && !e.angle.sin_vanishes(k)));
    AdmissibilityReport {
        admissible: witness.is_none(),
        witness_failure: witness,
        method: AdmissibilityMethod::BruteForce(limit),
    }
}

/// η for the construction: η(θ₁) = 1 and η(θ_k) = lcm(d(θ₁), …, d(θ_{k−1})),
/// with d(θ_k) ∤ lcm(d(θ₁), …, d(θ_{k−1})) required for k ≥ 2.
pub fn infinite_prefix(angles: &[Angle]) -> Result<Vec<AngleEntry>> {
    build_prefix(angles.iter().cloned(), u64::MAX, false)
}

// Stops before the first η above `eta_bound`; with `truncate_on_overflow`
// an overflowing lcm also ends the prefix instead of failing.
fn build_prefix<I: Iterator<Item = Angle>>(angles: I, eta_bound: u64, truncate_on_overflow: bool) -> Result<Vec<AngleEntry>> {
    let mut lcm = Some(1u64);
    let mut out: Vec<AngleEntry> = Vec::new();
    for (i, theta) in angles.enumerate() {
        if theta.is_irrational() {
            return Err(Error::Domain(format!("angle {} in the rational prefix is irrational", i + 1)));
        }
        let eta = match lcm {
            Some(l) => l,
            None if truncate_on_overflow => break,
            None => return Err(Error::Overflow("lcm of denominators")),
        };
        if eta > eta_bound {
            break;
        }
        if i > 0 && eta % theta.d() == 0 {
            return Err(Error::HypothesisViolation(i + 1));
        }
        lcm = checked_lcm(eta, theta.d()).ok();
        out.push(AngleEntry::new(theta, eta));
    }
    Ok(out)
}

/// The infinite construction from a rule θ_k, validated on a prefix.
pub fn construct_infinite(rule: AngleRule) -> Result<FunctionOfAngles> {
    let foa = FunctionOfAngles::LazyInfinite(rule);
    foa.entries(DEFAULT_PREFIX)?;
    Ok(foa)
}

/// θ_k = π/2^k, with η(θ_k) = 2^{k−1}.
pub fn dyadic_rule() -> AngleRule {
    Arc::new(|k| Angle::Rational { m: 1, n: 1u64 << k.min(63) })
}

/// The finite construction: a rational prefix followed by an irrational tail
/// whose η is the lcm of all prefix denominators.
pub fn construct_finite(prefix: &[Angle], tail: Angle) -> Result<FunctionOfAngles> {
    if !tail.is_irrational() {
        return Err(Error::Domain(format!("tail angle {tail} must be irrational")));
    }
    let mut entries = infinite_prefix(prefix)?;
    let lcm = prefix.iter().try_fold(1u64, |acc, t| checked_lcm(acc, t.d()))?;
    entries.push(AngleEntry::new(tail, lcm));
    FunctionOfAngles::finite(entries)
}

enum Membership {
    Found(u64),
    Absent,
}

fn find(entries: &[AngleEntry], theta: &Angle) -> Result<Membership> {
    if let Some(e) = entries.iter().find(|e| e.angle == *theta) {
        return Ok(Membership::Found(e.eta));
    }
    if theta.is_irrational() {
        if let Some(other) = entries.iter().find(|e| e.angle.is_irrational()) {
            return Err(Error::UncomparableRepresentation(format!(
                "cannot decide whether {theta} equals {}",
                other.angle
            )));
        }
    }
    Ok(Membership::Absent)
}

/// (E₁, η₁) ≤ (E₂, η₂) iff E₁ ⊆ E₂ and η₁ ≥ η₂ on E₁.
///
/// `a` must be finite; a lazy `b` is searched on its first
/// [`DEFAULT_PREFIX`] generated angles.
pub fn leq(a: &FunctionOfAngles, b: &FunctionOfAngles) -> Result<bool> {
    let FunctionOfAngles::Finite(left) = a else {
        return Err(Error::UncomparableRepresentation("left family must be finite".into()));
    };
    let right = b.entries(DEFAULT_PREFIX)?;
    for e in left {
        match find(&right, &e.angle)? {
            Membership::Found(eta) if e.eta >= eta => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Whether the family is one of the constructed families, which are
/// exactly the minimal admissible ones.
pub fn is_minimal(foa: &FunctionOfAngles) -> Result<bool> {
    let report = is_admissible(foa, AdmissibilityMode::ExactRanges)?;
    if let Some(witness) = report.witness_failure {
        return Err(Error::NotAdmissible { witness });
    }
    let FunctionOfAngles::Finite(entries) = foa else {
        return Ok(true);
    };
    let mut sorted = entries.clone();
    sorted.sort_by_key(|e| e.eta);
    let (last, prefix) = sorted.split_last().expect("admissible family is nonempty");
    let rational_prefix: Vec<Angle> = prefix.iter().map(|e| e.angle.clone()).collect();
    let Ok(expected) = construct_finite(&rational_prefix, last.angle.clone()) else {
        return Ok(false);
    };
    Ok(expected.entries(0)? == sorted)
}

/// A minimal family below `foa`, built greedily.
///
/// With m the lcm of the denominators chosen so far (m = 1 at the start),
/// pick an unused θ with η(θ) ≤ m and sin(mθ) ≠ 0, give it η = m, and stop
/// after an irrational pick. Admissibility guarantees a candidate at each
/// step. Ties go to irrational angles, then the smallest angle, then the
/// smallest denominator.
pub fn lower_bound(foa: &FunctionOfAngles, max_steps: usize) -> Result<FunctionOfAngles> {
    let FunctionOfAngles::Finite(entries) = foa else {
        return Err(Error::Domain("lower_bound needs a finite family".into()));
    };
    let report = is_admissible(foa, AdmissibilityMode::ExactRanges)?;
    if let Some(witness) = report.witness_failure {
        return Err(Error::NotAdmissible { witness });
    }
    let mut chosen: Vec<AngleEntry> = Vec::new();
    let mut m = 1u64;
    for _ in 0..max_steps {
        let pick = entries
            .iter()
            .filter(|e| e.eta <= m && !e.angle.sin_vanishes(m))
            .filter(|e| !chosen.iter().any(|c| c.angle == e.angle))
            .min_by(|a, b| a.angle.preference(&b.angle))
            .ok_or(Error::NotAdmissible { witness: m })?;
        chosen.push(AngleEntry::new(pick.angle.clone(), m));
        if pick.angle.is_irrational() {
            return FunctionOfAngles::finite(chosen);
        }
        m = checked_lcm(m, pick.angle.d())?;
    }
    Err(Error::StepLimit(max_steps))
}
