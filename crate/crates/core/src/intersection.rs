//! Intersection numbers on the blow-up `X = Bl_B(Q^k)` of a smooth quadric
//! of dimension 3 or 4 along a smooth base locus `B`.
//!
//! `Pic(X)` is generated by the pulled-back hyperplane class `H` and the
//! exceptional divisor `E`; `N_1(X)` by the pulled-back line class `l` and a
//! fiber `f` of `E -> B`. Every top intersection number reduces to the table
//! of monomials `H^i E^(k-i)`, which depends only on the numerical invariants
//! of `B`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Numerical invariants of the blow-up center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseLocusNumbers {
    /// A smooth curve of degree `d` and genus `g` in `Q^3`.
    Curve { d: BigInt, g: BigInt },
    /// A smooth surface in `Q^4` of degree `d`, with `hk = H_S.K_S` and
    /// topological Euler number `c2 = c_2(S)`.
    Surface { d: BigInt, hk: BigInt, c2: BigInt },
}

impl BaseLocusNumbers {
    pub fn curve(d: impl Into<BigInt>, g: impl Into<BigInt>) -> Result<Self> {
        let (d, g) = (d.into(), g.into());
        if d < BigInt::one() {
            return Err(Error::domain(format!("curve degree must be >= 1, got {d}")));
        }
        if g.is_negative() {
            return Err(Error::domain(format!("curve genus must be >= 0, got {g}")));
        }
        Ok(BaseLocusNumbers::Curve { d, g })
    }

    pub fn surface(d: impl Into<BigInt>, hk: impl Into<BigInt>, c2: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d < BigInt::one() {
            return Err(Error::domain(format!("surface degree must be >= 1, got {d}")));
        }
        Ok(BaseLocusNumbers::Surface {
            d,
            hk: hk.into(),
            c2: c2.into(),
        })
    }

    /// Dimension of the ambient quadric.
    pub fn k(&self) -> u32 {
        match self {
            BaseLocusNumbers::Curve { .. } => 3,
            BaseLocusNumbers::Surface { .. } => 4,
        }
    }

    /// Dimension of the base locus itself.
    pub fn r(&self) -> u32 {
        match self {
            BaseLocusNumbers::Curve { .. } => 1,
            BaseLocusNumbers::Surface { .. } => 2,
        }
    }

    pub fn degree(&self) -> &BigInt {
        match self {
            BaseLocusNumbers::Curve { d, .. } | BaseLocusNumbers::Surface { d, .. } => d,
        }
    }
}

/// The intersection number `H^i E^(k-i)`.
pub fn top_monomial(base: &BaseLocusNumbers, i: u32) -> Result<BigInt> {
    let k = base.k();
    if i > k {
        return Err(Error::domain(format!("monomial H^{i}E^{} is not a top monomial for k = {k}", k as i64 - i as i64)));
    }
    let v = match base {
        BaseLocusNumbers::Curve { d, g } => match i {
            3 => BigInt::from(2),
            2 => BigInt::zero(),
            1 => -d,
            _ => -BigInt::from(2) * g + 2 - BigInt::from(3) * d,
        },
        BaseLocusNumbers::Surface { d, hk, c2 } => match i {
            4 => BigInt::from(2),
            3 => BigInt::zero(),
            2 => -d,
            1 => -hk - BigInt::from(4) * d,
            _ => -BigInt::from(9) * d - c2 - BigInt::from(4) * hk,
        },
    };
    Ok(v)
}

/// A divisor class `hH + eE` in `Pic(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DivisorClass {
    pub h: BigInt,
    pub e: BigInt,
}

impl DivisorClass {
    pub fn new(h: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        DivisorClass { h: h.into(), e: e.into() }
    }

    pub fn hyperplane() -> Self {
        DivisorClass::new(1, 0)
    }

    pub fn exceptional() -> Self {
        DivisorClass::new(0, 1)
    }

    /// `H' = nH - E`, the pullback of the hyperplane class under the
    /// resolved map of degree `n`.
    pub fn target_hyperplane(n: impl Into<BigInt>) -> Self {
        DivisorClass::new(n, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.e.is_zero()
    }

    /// Largest integer dividing the class; zero for the zero class.
    pub fn divisibility(&self) -> BigInt {
        num_integer::Integer::gcd(&self.h, &self.e)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        DivisorClass { h: &self.h * c, e: &self.e * c }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { h: &self.h + &rhs.h, e: &self.e + &rhs.e }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { h: &self.h - &rhs.h, e: &self.e - &rhs.e }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { h: -&self.h, e: -&self.e }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &[(&self.h, "H"), (&self.e, "E")])
    }
}

/// A curve class `l*l + f*f` in `N_1(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CurveClass {
    pub l: BigInt,
    pub f: BigInt,
}

impl CurveClass {
    pub fn new(l: impl Into<BigInt>, f: impl Into<BigInt>) -> Self {
        CurveClass { l: l.into(), f: f.into() }
    }

    pub fn line() -> Self {
        CurveClass::new(1, 0)
    }

    pub fn fiber() -> Self {
        CurveClass::new(0, 1)
    }

    /// Strict transform of a line meeting the center in a scheme of length
    /// `length`.
    pub fn multisecant(length: impl Into<BigInt>) -> Self {
        CurveClass { l: BigInt::one(), f: -length.into() }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &[(&self.l, "l"), (&self.f, "f")])
    }
}

/// Intersection pairing `Pic(X) x N_1(X) -> Z` with `H.l = 1`, `H.f = 0`,
/// `E.l = 0`, `E.f = -1`.
pub fn pair(divisor: &DivisorClass, curve: &CurveClass) -> BigInt {
    &divisor.h * &curve.l - &divisor.e * &curve.f
}

/// `K_X = -kH + (k - r - 1)E` for the blow-up of `Q^k` along a smooth
/// center of dimension `r`.
pub fn canonical_class(k: i64, r: i64) -> Result<DivisorClass> {
    if !(3..=4).contains(&k) {
        return Err(Error::UnsupportedDimension(k));
    }
    if r < 1 || r > k - 2 {
        return Err(Error::domain(format!("center dimension r = {r} must lie in [1, {}]", k - 2)));
    }
    Ok(DivisorClass::new(-k, k - r - 1))
}

/// Top intersection of `k` divisor classes, computed by multilinear
/// expansion over the choice of `H` or `E` in each factor.
pub fn intersect(base: &BaseLocusNumbers, factors: &[DivisorClass]) -> Result<BigInt> {
    let k = base.k() as usize;
    if factors.len() != k {
        return Err(Error::domain(format!("expected {k} divisor factors, got {}", factors.len())));
    }
    let table = (0..=k as u32)
        .map(|i| top_monomial(base, i))
        .collect::<Result<Vec<_>>>()?;
    let mut total = BigInt::zero();
    for mask in 0u32..(1 << k) {
        let mut coeff = BigInt::one();
        for (j, factor) in factors.iter().enumerate() {
            let c = if mask & (1 << j) != 0 { &factor.h } else { &factor.e };
            if c.is_zero() {
                coeff = BigInt::zero();
                break;
            }
            coeff *= c;
        }
        if !coeff.is_zero() {
            total += coeff * &table[mask.count_ones() as usize];
        }
    }
    Ok(total)
}

/// One term `coeff * H^h_exp * E^e_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub h_exp: u32,
    pub e_exp: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.h_exp + self.e_exp
    }
}

/// Polynomial in the commuting symbols `H` and `E`, kept in canonical form:
/// monomials sorted by total degree then by `H` exponent, merged, with zero
/// coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DivisorPolynomial {
    terms: Vec<Monomial>,
}

impl DivisorPolynomial {
    pub fn zero() -> Self {
        DivisorPolynomial::default()
    }

    pub fn one() -> Self {
        DivisorPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        DivisorPolynomial::from_terms(vec![Monomial { coeff: c.into(), h_exp: 0, e_exp: 0 }])
    }

    pub fn monomial(coeff: impl Into<BigInt>, h_exp: u32, e_exp: u32) -> Self {
        DivisorPolynomial::from_terms(vec![Monomial { coeff: coeff.into(), h_exp, e_exp }])
    }

    pub fn from_divisor(d: &DivisorClass) -> Self {
        DivisorPolynomial::from_terms(vec![
            Monomial { coeff: d.h.clone(), h_exp: 1, e_exp: 0 },
            Monomial { coeff: d.e.clone(), h_exp: 0, e_exp: 1 },
        ])
    }

    pub fn from_terms(mut terms: Vec<Monomial>) -> Self {
        terms.sort_by_key(|m| (m.degree(), m.h_exp));
        let mut merged: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.h_exp == t.h_exp && last.e_exp == t.e_exp => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|m| !m.coeff.is_zero());
        DivisorPolynomial { terms: merged }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = DivisorPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// First monomial whose total degree differs from `k`, if any.
    pub fn inhomogeneous_term(&self, k: u32) -> Option<&Monomial> {
        self.terms.iter().find(|m| m.degree() != k)
    }

    /// Evaluate a homogeneous polynomial of degree `k` against the table of
    /// top monomials.
    pub fn evaluate(&self, base: &BaseLocusNumbers) -> Result<BigInt> {
        let k = base.k();
        if let Some(m) = self.inhomogeneous_term(k) {
            return Err(Error::domain(format!(
                "monomial {} has degree {}, expected {k}",
                DivisorPolynomial::from_terms(vec![m.clone()]),
                m.degree()
            )));
        }
        let mut total = BigInt::zero();
        for m in &self.terms {
            total += &m.coeff * top_monomial(base, m.h_exp)?;
        }
        Ok(total)
    }
}

impl Add for &DivisorPolynomial {
    type Output = DivisorPolynomial;
    fn add(self, rhs: &DivisorPolynomial) -> DivisorPolynomial {
        DivisorPolynomial::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned().collect())
    }
}

impl Neg for &DivisorPolynomial {
    type Output = DivisorPolynomial;
    fn neg(self) -> DivisorPolynomial {
        DivisorPolynomial {
            terms: self
                .terms
                .iter()
                .map(|m| Monomial { coeff: -&m.coeff, ..m.clone() })
                .collect(),
        }
    }
}

impl Sub for &DivisorPolynomial {
    type Output = DivisorPolynomial;
    fn sub(self, rhs: &DivisorPolynomial) -> DivisorPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &DivisorPolynomial {
    type Output = DivisorPolynomial;
    fn mul(self, rhs: &DivisorPolynomial) -> DivisorPolynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(Monomial {
                    coeff: &a.coeff * &b.coeff,
                    h_exp: a.h_exp + b.h_exp,
                    e_exp: a.e_exp + b.e_exp,
                });
            }
        }
        DivisorPolynomial::from_terms(terms)
    }
}

impl fmt::Display for DivisorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, m) in self.terms.iter().enumerate() {
            let abs = m.coeff.abs();
            if m.coeff.is_negative() {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let bare = m.degree() == 0;
            if !abs.is_one() || bare {
                write!(f, "{abs}")?;
            }
            for (sym, exp) in [("H", m.h_exp), ("E", m.e_exp)] {
                match exp {
                    0 => {}
                    1 => write!(f, "{sym}")?,
                    _ => write!(f, "{sym}^{exp}")?,
                }
            }
        }
        Ok(())
    }
}

/// Binomial expansion of `d^n` in the commuting symbols `H`, `E`.
pub fn expand_power(d: &DivisorClass, n: u32) -> DivisorPolynomial {
    let terms = (0..=n)
        .map(|i| {
            let c: BigInt = binomial(BigInt::from(n), BigInt::from(i));
            Monomial {
                coeff: c * num_traits::pow(d.h.clone(), i as usize) * num_traits::pow(d.e.clone(), (n - i) as usize),
                h_exp: i,
                e_exp: n - i,
            }
        })
        .collect();
    DivisorPolynomial::from_terms(terms)
}

fn write_linear(f: &mut fmt::Formatter<'_>, parts: &[(&BigInt, &str)]) -> fmt::Result {
    let mut wrote = false;
    for (c, sym) in parts {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            write!(f, "-")?;
        } else if wrote {
            write!(f, "+")?;
        }
        let abs = c.abs();
        if !abs.is_one() {
            write!(f, "{abs}")?;
        }
        write!(f, "{sym}")?;
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}
