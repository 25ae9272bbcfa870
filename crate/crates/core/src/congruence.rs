//! Numerical invariants of congruences of lines, i.e. smooth surfaces in
//! `Q^4 = G(2,4)`.
//!
//! A congruence is pinned down by its bidegree `(a, b)`, sectional genus and
//! `chi(O_S)`. Everything else follows: `H_S.K_S` from adjunction, and the
//! pair `(c_2(S), K_S^2)` from Noether's formula together with the identity
//! `c_2(N_{S/Q^4}) = S^2 = a^2 + b^2`.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Congruence {
    pub a: i64,
    pub b: i64,
    pub pi: i64,
    pub chi_o: i64,
    pub d: i64,
    pub hk: i64,
    pub c2: i64,
    pub ksq: i64,
}

impl Congruence {
    pub fn new(a: i64, b: i64, pi: i64, chi_o: i64) -> Result<Self> {
        make_congruence(a, b, pi, chi_o)
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.a, self.b)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a,b)=({},{}) d={} pi={} chi={} HK={} c2={} K^2={}",
            self.a, self.b, self.d, self.pi, self.chi_o, self.hk, self.c2, self.ksq
        )
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

/// Builds the invariant record of a congruence, solving for `c_2(S)` and
/// `K_S^2`. Tuples for which `c_2(S)` comes out non-integral are rejected.
pub fn make_congruence(a: i64, b: i64, pi: i64, chi_o: i64) -> Result<Congruence> {
    if a < 0 || b < 0 {
        return Err(Error::domain(format!("bidegree ({a},{b}) has a negative entry")));
    }
    let d = a.checked_add(b).ok_or_else(|| overflow("degree"))?;
    if d < 1 {
        return Err(Error::domain("bidegree (0,0) has degree 0"));
    }
    let calc = || -> Option<(i64, i64)> {
        let hk = pi.checked_mul(2)?.checked_sub(2)?.checked_sub(d)?;
        // 2 c2 = 12 chi + 4 HK + 7d - d^2 + 2ab
        let twice_c2 = chi_o
            .checked_mul(12)?
            .checked_add(hk.checked_mul(4)?)?
            .checked_add(d.checked_mul(7)?)?
            .checked_sub(d.checked_mul(d)?)?
            .checked_add(a.checked_mul(b)?.checked_mul(2)?)?;
        Some((hk, twice_c2))
    };
    let (hk, twice_c2) = calc().ok_or_else(|| overflow("congruence invariants"))?;
    if twice_c2 % 2 != 0 {
        return Err(Error::InvalidInvariants(format!(
            "(a,b,pi,chi)=({a},{b},{pi},{chi_o}) forces c2(S) = {twice_c2}/2, which is not an integer"
        )));
    }
    let c2 = twice_c2 / 2;
    let ksq = chi_o
        .checked_mul(12)
        .and_then(|v| v.checked_sub(c2))
        .ok_or_else(|| overflow("K_S^2"))?;
    Ok(Congruence { a, b, pi, chi_o, d, hk, c2, ksq })
}

/// Total Chern class of the normal bundle: `c_1 = 1*K_S + 4*H_S` (returned as
/// the coefficient pair) and the integer `c_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalBundleChern {
    pub c1_k: i64,
    pub c1_h: i64,
    pub c2: i64,
}

pub fn chern_normal_bundle(c: &Congruence) -> NormalBundleChern {
    NormalBundleChern {
        c1_k: 1,
        c1_h: 4,
        c2: 7 * c.d + 4 * c.hk - c.c2 + c.ksq,
    }
}

/// Chern data of a vector bundle on a surface, in the form needed by
/// Riemann-Roch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleData {
    pub rank: i64,
    pub c1_sq: i64,
    pub c1_k: i64,
    pub c2: i64,
}

/// Riemann-Roch for a vector bundle on a surface:
/// `chi(V) = rk chi(O_S) + (c1^2 - c1.K)/2 - c2`.
pub fn chi_vector_bundle(v: &BundleData, chi_o: i64) -> Result<i64> {
    let diff = v.c1_sq - v.c1_k;
    if diff % 2 != 0 {
        return Err(Error::domain(format!("c1^2 - c1.K = {diff} is odd")));
    }
    Ok(v.rank * chi_o + diff / 2 - v.c2)
}

/// Bundle data of `N_{S/Q^4}` expressed through the congruence invariants.
pub fn normal_bundle_data(c: &Congruence) -> BundleData {
    let chern = chern_normal_bundle(c);
    let (x, y) = (chern.c1_k, chern.c1_h);
    // (xK + yH)^2 and (xK + yH).K
    let c1_sq = x * x * c.ksq + 2 * x * y * c.hk + y * y * c.d;
    let c1_k = x * c.ksq + y * c.hk;
    BundleData { rank: 2, c1_sq, c1_k, c2: chern.c2 }
}

/// Closed formula `chi(N) = 6d - a^2 - b^2 + 2(2 pi - 2) + 2 chi(O_S)`.
pub fn chi_normal_bundle(c: &Congruence) -> i64 {
    6 * c.d - c.a * c.a - c.b * c.b + 2 * (2 * c.pi - 2) + 2 * c.chi_o
}

/// Maximal sectional genus of a non-degenerate congruence of degree `d`.
pub fn max_sectional_genus(d: i64) -> i64 {
    let num = match d.rem_euclid(4) {
        0 => d * d - 4 * d + 8,
        2 => d * d - 4 * d + 4,
        _ => d * d - 4 * d + 3,
    };
    debug_assert_eq!(num % 8, 0);
    num / 8
}

/// Lower bound on the arithmetic genus of a congruence of degree `d >= 9`
/// attaining the maximal sectional genus.
pub fn pa_lower_bound(d: i64) -> Result<Rational64> {
    if d < 9 {
        return Err(Error::domain(format!("the arithmetic genus bound needs d >= 9, got {d}")));
    }
    let cubic = d * d * d - 12 * d * d;
    let num = match d.rem_euclid(4) {
        0 => cubic + 56 * d - 96,
        1 => cubic + 41 * d - 30,
        2 => cubic + 44 * d - 48,
        _ => cubic + 41 * d - 42,
    };
    Ok(Rational64::new(num, 96))
}

/// `P(t) = quad t^2 + lin t + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HilbertPoly {
    pub quad: Rational64,
    pub lin: Rational64,
    pub constant: i64,
}

impl HilbertPoly {
    pub fn new(quad: Rational64, lin: Rational64, constant: i64) -> Result<Self> {
        if quad <= Rational64::zero() {
            return Err(Error::domain(format!("leading coefficient {quad} must be positive")));
        }
        Ok(HilbertPoly { quad, lin, constant })
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn coeff(c: Rational64, sym: &str, f: &mut fmt::Formatter<'_>, first: bool) -> fmt::Result {
            if c.is_zero() {
                return Ok(());
            }
            let neg = c < Rational64::zero();
            let abs = if neg { -c } else { c };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if abs != Rational64::from_integer(1) || sym.is_empty() {
                if abs.is_integer() {
                    write!(f, "{}", abs.to_integer())?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            write!(f, "{sym}")
        }
        coeff(self.quad, "t^2", f, true)?;
        coeff(self.lin, "t", f, false)?;
        coeff(Rational64::from_integer(self.constant), "", f, false)
    }
}

/// `P(t) = (H_S^2/2) t^2 - (H_S.K_S/2) t + chi(O_S)`.
pub fn hilbert_polynomial(c: &Congruence) -> HilbertPoly {
    HilbertPoly {
        quad: Rational64::new(c.d, 2),
        lin: Rational64::new(-c.hk, 2),
        constant: c.chi_o,
    }
}

/// Recovered `(d, pi, chi)` from a Hilbert polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceNumbers {
    pub d: i64,
    pub pi: i64,
    pub chi_o: i64,
}

pub fn from_hilbert_polynomial(p: &HilbertPoly) -> Result<SurfaceNumbers> {
    if p.quad <= Rational64::zero() {
        return Err(Error::domain("leading coefficient must be positive"));
    }
    let d = p.quad * 2;
    let hk = -p.lin * 2;
    if !d.is_integer() || !hk.is_integer() {
        return Err(Error::domain(format!("{p} does not have half-integral coefficients")));
    }
    let (d, hk) = (d.to_integer(), hk.to_integer());
    let twice_pi = d + hk + 2;
    if twice_pi % 2 != 0 {
        return Err(Error::domain(format!("{p} gives sectional genus {twice_pi}/2")));
    }
    Ok(SurfaceNumbers { d, pi: twice_pi / 2, chi_o: p.constant })
}
