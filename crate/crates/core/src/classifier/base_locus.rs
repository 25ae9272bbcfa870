//! Numerical constraints on the base locus of a special Cremona
//! transformation of `Q^3` or `Q^4`, and the case analysis that leaves a single
//! degree standing in dimension four.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::profiles::MapProfile;
use crate::congruence::{max_sectional_genus, pa_lower_bound};
use crate::error::{Error, Result};
use crate::intersection::{intersect, BaseLocusNumbers, DivisorClass};

/// Search box for the curve in `Q^3`.
pub const Q3_MAX_DEGREE: i64 = 50;
pub const Q3_MAX_GENUS: i64 = 50;

pub(crate) fn small(v: &BigInt, what: &str) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::Overflow(what.to_string()))
}

fn repeat(d: &DivisorClass, times: usize) -> Vec<DivisorClass> {
    vec![d.clone(); times]
}

/// `H'^k` and `H H'^(k-1)` on the blow-up, where `H'` is the pull-back of a
/// hyperplane under the map: the degree of the quadric and twice the degree
/// of the inverse.
pub fn pullback_targets(profile: &MapProfile) -> (i64, i64) {
    (2, 2 * profile.m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveSolution {
    pub degree: i64,
    pub genus: i64,
}

/// The unique `(d, g)` in the search box with `H (2H-E)^2 = 4` and
/// `(2H-E)^3 = 2`.
pub fn solve_q3_base_locus(profile: &MapProfile) -> Result<CurveSolution> {
    if profile.k != 3 {
        return Err(Error::domain(format!("curve search needs a profile on Q^3, got k = {}", profile.k)));
    }
    let (top, mixed) = pullback_targets(profile);
    let h = DivisorClass::hyperplane();
    let hp = DivisorClass::target_hyperplane(profile.n);
    let mut found = Vec::new();
    for d in 1..=Q3_MAX_DEGREE {
        for g in 0..=Q3_MAX_GENUS {
            if q3_system_holds(d, g, &h, &hp, top, mixed)? {
                found.push(CurveSolution { degree: d, genus: g });
            }
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::consistency(
            "unique base curve",
            format!("{} solutions in d <= {Q3_MAX_DEGREE}, g <= {Q3_MAX_GENUS}", found.len()),
        )),
    }
}

fn q3_system_holds(d: i64, g: i64, h: &DivisorClass, hp: &DivisorClass, top: i64, mixed: i64) -> Result<bool> {
    let base = BaseLocusNumbers::curve(d, g)?;
    let mut factors = vec![h.clone()];
    factors.extend(repeat(hp, 2));
    Ok(intersect(&base, &factors)? == BigInt::from(mixed) && intersect(&base, &repeat(hp, 3))? == BigInt::from(top))
}

/// Whether `(d, g)` satisfies both equations of the curve search.
pub fn q3_system_at(profile: &MapProfile, d: i64, g: i64) -> Result<bool> {
    let (top, mixed) = pullback_targets(profile);
    q3_system_holds(d, g, &DivisorClass::hyperplane(), &DivisorClass::target_hyperplane(profile.n), top, mixed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceRelations {
    pub d: i64,
    pub hk: i64,
    pub c2: i64,
    pub pi: i64,
    /// `12 chi(O_S) + 2ab`.
    pub twelve_chi_plus_2ab: i64,
}

/// An intersection number as an affine function `c0 + c_hk hk + c_c2 c2` of
/// the surface invariants at fixed degree.
fn affine_coefficients(d: i64, factors: &[DivisorClass]) -> Result<[BigInt; 3]> {
    let at = |hk: i64, c2: i64| intersect(&BaseLocusNumbers::surface(d, hk, c2)?, factors);
    let c0 = at(0, 0)?;
    let c_hk = at(1, 0)? - &c0;
    let c_c2 = at(0, 1)? - &c0;
    Ok([c0, c_hk, c_c2])
}

/// Solves `H H'^3 = 2m` and `H'^4 = 2` for `(H_S K_S, c_2(S))` at degree `d`,
/// then reads off the sectional genus and `12 chi + 2ab`.
pub fn q4_surface_relations(profile: &MapProfile, d: i64) -> Result<SurfaceRelations> {
    if profile.k != 4 {
        return Err(Error::domain(format!("surface relations need a profile on Q^4, got k = {}", profile.k)));
    }
    if d < 1 {
        return Err(Error::domain(format!("surface degree must be >= 1, got {d}")));
    }
    let (top, mixed) = pullback_targets(profile);
    let h = DivisorClass::hyperplane();
    let hp = DivisorClass::target_hyperplane(profile.n);
    let mut mixed_factors = vec![h];
    mixed_factors.extend(repeat(&hp, 3));
    let [a0, a1, a2] = affine_coefficients(d, &mixed_factors)?;
    let [b0, b1, b2] = affine_coefficients(d, &repeat(&hp, 4))?;

    // a1 hk + a2 c2 = mixed - a0, b1 hk + b2 c2 = top - b0
    let (ra, rb) = (BigInt::from(mixed) - a0, BigInt::from(top) - b0);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return Err(Error::consistency("surface relations are independent", "zero determinant"));
    }
    let hk = BigRational::new(&ra * &b2 - &a2 * &rb, det.clone());
    let c2 = BigRational::new(&a1 * &rb - &ra * &b1, det);
    if !hk.is_integer() || !c2.is_integer() {
        return Err(Error::consistency("integral surface invariants", format!("hk = {hk}, c2 = {c2} at d = {d}")));
    }
    let hk = small(&hk.to_integer(), "H_S.K_S")?;
    let c2 = small(&c2.to_integer(), "c2(S)")?;
    let twice_pi = hk + d + 2;
    if twice_pi % 2 != 0 {
        return Err(Error::consistency("integral sectional genus", format!("2 pi = {twice_pi} at d = {d}")));
    }
    Ok(SurfaceRelations {
        d,
        hk,
        c2,
        pi: twice_pi / 2,
        twelve_chi_plus_2ab: 2 * c2 - 4 * hk - 7 * d + d * d,
    })
}

/// `H^2 H'^2`, which must be positive.
pub fn h2_hprime2(profile: &MapProfile, d: i64) -> Result<i64> {
    let h = DivisorClass::hyperplane();
    let hp = DivisorClass::target_hyperplane(profile.n);
    let v = intersect(&BaseLocusNumbers::surface(d, 0, 0)?, &[h.clone(), h, hp.clone(), hp])?;
    small(&v, "H^2 H'^2")
}

/// Largest degree with `H^2 H'^2 > 0`.
pub fn max_surface_degree(profile: &MapProfile) -> Result<i64> {
    let first = h2_hprime2(profile, 1)?;
    let slope = h2_hprime2(profile, 2)? - first;
    if slope >= 0 || first <= 0 {
        return Err(Error::consistency("degree bound", format!("H^2 H'^2 = {first} + {slope}(d-1)")));
    }
    // first + slope (d - 1) > 0
    Ok(1 + (first - 1) / -slope)
}

/// Bidegrees `(a, b)`, `a <= b`, `a + b = d` with `12 | 12 chi + 2ab`.
pub fn admissible_bidegrees(relations: &SurfaceRelations) -> Vec<(i64, i64)> {
    let d = relations.d;
    (0..=d / 2)
        .map(|a| (a, d - a))
        .filter(|&(a, b)| (relations.twelve_chi_plus_2ab - 2 * a * b).rem_euclid(12) == 0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness")]
pub enum Verdict {
    GenusNonPositive { pi: i64 },
    GenusBoundExceeded { pi: i64, pi1: i64 },
    /// Maximal sectional genus forces a quadratic complex through the surface,
    /// but none exists.
    #[serde(rename_all = "camelCase")]
    QuadraticComplexContradiction { pi: i64, pi1: i64, pa_lower_bound: String },
    #[serde(rename_all = "camelCase")]
    DivisibilityFail { twelve_chi_plus_2ab: i64 },
    Survives { bidegrees: Vec<[i64; 2]> },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::GenusNonPositive { .. } => "GenusNonPositive",
            Verdict::GenusBoundExceeded { .. } => "GenusBoundExceeded",
            Verdict::QuadraticComplexContradiction { .. } => "QuadraticComplexContradiction",
            Verdict::DivisibilityFail { .. } => "DivisibilityFail",
            Verdict::Survives { .. } => "Survives",
        }
    }

    pub fn witness(&self) -> String {
        match self {
            Verdict::GenusNonPositive { pi } => format!("pi = {pi} <= 0"),
            Verdict::GenusBoundExceeded { pi, pi1 } => format!("pi = {pi} > pi1 = {pi1}"),
            Verdict::QuadraticComplexContradiction { pi1, pa_lower_bound, .. } => {
                format!("pi = pi1 = {pi1}, p_a >= {pa_lower_bound} forces h0(I_S(2)) > 0")
            }
            Verdict::DivisibilityFail { twelve_chi_plus_2ab } => {
                format!("{twelve_chi_plus_2ab} - 2ab is never divisible by 12")
            }
            Verdict::Survives { bidegrees } => {
                let parts: Vec<String> = bidegrees.iter().map(|[a, b]| format!("({a},{b})")).collect();
                parts.join(", ")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationVerdict {
    pub d: i64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl EliminationVerdict {
    pub fn survives(&self) -> bool {
        matches!(self.verdict, Verdict::Survives { .. })
    }
}

/// Smallest degree at which the maximal sectional genus bound applies.
pub const GENUS_BOUND_MIN_DEGREE: i64 = 9;

pub fn eliminate_degree(profile: &MapProfile, d: i64) -> Result<EliminationVerdict> {
    let max = max_surface_degree(profile)?;
    if !(1..=max).contains(&d) {
        return Err(Error::domain(format!("degree {d} outside [1, {max}]")));
    }
    let rel = q4_surface_relations(profile, d)?;
    let pi = rel.pi;
    let verdict = if pi <= 0 {
        Verdict::GenusNonPositive { pi }
    } else {
        let bound = (d >= GENUS_BOUND_MIN_DEGREE).then(|| max_sectional_genus(d));
        match bound {
            Some(pi1) if pi > pi1 => Verdict::GenusBoundExceeded { pi, pi1 },
            Some(pi1) if pi == pi1 => Verdict::QuadraticComplexContradiction {
                pi,
                pi1,
                pa_lower_bound: pa_lower_bound(d)?.to_string(),
            },
            _ => {
                let bidegrees = admissible_bidegrees(&rel);
                if bidegrees.is_empty() {
                    Verdict::DivisibilityFail { twelve_chi_plus_2ab: rel.twelve_chi_plus_2ab }
                } else {
                    Verdict::Survives { bidegrees: bidegrees.into_iter().map(|(a, b)| [a, b]).collect() }
                }
            }
        }
    };
    Ok(EliminationVerdict { d, verdict })
}

pub fn elimination_trace(profile: &MapProfile) -> Result<Vec<EliminationVerdict>> {
    (1..=max_surface_degree(profile)?).map(|d| eliminate_degree(profile, d)).collect()
}
