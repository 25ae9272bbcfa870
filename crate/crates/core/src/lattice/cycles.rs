//! Algebraic 2-cycles on the blow-up of a cubo-cubic transformation and the
//! linear relations between them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intersection::{expand_power, DivisorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleSymbol {
    H2,
    HPrime2,
    HS,
    HT,
    E2,
    EPrime2,
    D,
    DPrime,
    Delta,
    DeltaPrime,
    /// `delta + delta'`, which the relations pin down as a whole.
    DeltaSum,
}

impl CycleSymbol {
    pub const ALL: [CycleSymbol; 11] = [
        CycleSymbol::H2,
        CycleSymbol::HPrime2,
        CycleSymbol::HS,
        CycleSymbol::HT,
        CycleSymbol::E2,
        CycleSymbol::EPrime2,
        CycleSymbol::D,
        CycleSymbol::DPrime,
        CycleSymbol::Delta,
        CycleSymbol::DeltaPrime,
        CycleSymbol::DeltaSum,
    ];

    /// Reduced expressions use only these.
    pub const BASIS: [CycleSymbol; 5] =
        [CycleSymbol::H2, CycleSymbol::HS, CycleSymbol::D, CycleSymbol::DPrime, CycleSymbol::Delta];

    pub fn is_basis(self) -> bool {
        CycleSymbol::BASIS.contains(&self)
    }

    pub fn label(self) -> &'static str {
        match self {
            CycleSymbol::H2 => "H^2",
            CycleSymbol::HPrime2 => "H'^2",
            CycleSymbol::HS => "H_S",
            CycleSymbol::HT => "H_T",
            CycleSymbol::E2 => "E^2",
            CycleSymbol::EPrime2 => "E'^2",
            CycleSymbol::D => "d",
            CycleSymbol::DPrime => "d'",
            CycleSymbol::Delta => "delta",
            CycleSymbol::DeltaPrime => "delta'",
            CycleSymbol::DeltaSum => "(delta+delta')",
        }
    }

    /// The same cycle seen from the inverse transformation.
    pub fn swapped(self) -> CycleExpression {
        use CycleSymbol::*;
        let s = match self {
            H2 => HPrime2,
            HPrime2 => H2,
            HS => HT,
            HT => HS,
            E2 => EPrime2,
            EPrime2 => E2,
            D => Delta,
            Delta => D,
            DPrime => DeltaPrime,
            DeltaPrime => DPrime,
            DeltaSum => return CycleExpression::symbol(D) + CycleExpression::symbol(DPrime),
        };
        CycleExpression::symbol(s)
    }
}

impl fmt::Display for CycleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Integer combination of cycle symbols. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CycleExpression {
    coeffs: BTreeMap<CycleSymbol, BigInt>,
}

impl CycleExpression {
    pub fn zero() -> Self {
        CycleExpression::default()
    }

    pub fn symbol(s: CycleSymbol) -> Self {
        CycleExpression::term(1, s)
    }

    pub fn term(c: impl Into<BigInt>, s: CycleSymbol) -> Self {
        CycleExpression::from_terms([(s, c.into())])
    }

    pub fn from_terms<I: IntoIterator<Item = (CycleSymbol, BigInt)>>(terms: I) -> Self {
        let mut e = CycleExpression::zero();
        for (s, c) in terms {
            e.add_term(s, &c);
        }
        e
    }

    fn add_term(&mut self, s: CycleSymbol, c: &BigInt) {
        let entry = self.coeffs.entry(s).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coeff(&self, s: CycleSymbol) -> BigInt {
        self.coeffs.get(&s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (CycleSymbol, &BigInt)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.coeffs.keys().all(|s| s.is_basis())
    }

    /// Coordinates over [`CycleSymbol::BASIS`].
    pub fn basis_coordinates(&self) -> Result<[BigInt; 5]> {
        if !self.is_reduced() {
            return Err(Error::domain(format!("{self} is not expressed in the reduction basis")));
        }
        Ok(CycleSymbol::BASIS.map(|s| self.coeff(s)))
    }

    pub fn from_basis_coordinates(c: &[BigInt; 5]) -> Self {
        CycleExpression::from_terms(CycleSymbol::BASIS.iter().copied().zip(c.iter().cloned()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycleExpression::from_terms(self.terms().map(|(s, v)| (s, v * c)))
    }

    pub fn swapped(&self) -> Self {
        self.terms()
            .fold(CycleExpression::zero(), |acc, (s, c)| acc + s.swapped().scale(c))
    }
}

impl Add for CycleExpression {
    type Output = CycleExpression;
    fn add(mut self, rhs: CycleExpression) -> CycleExpression {
        for (s, c) in rhs.coeffs {
            self.add_term(s, &c);
        }
        self
    }
}

impl Neg for CycleExpression {
    type Output = CycleExpression;
    fn neg(self) -> CycleExpression {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for CycleExpression {
    type Output = CycleExpression;
    fn sub(self, rhs: CycleExpression) -> CycleExpression {
        self + (-rhs)
    }
}

impl Mul<CycleExpression> for i64 {
    type Output = CycleExpression;
    fn mul(self, rhs: CycleExpression) -> CycleExpression {
        rhs.scale(&BigInt::from(self))
    }
}

impl fmt::Display for CycleExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}{s}")?;
            } else {
                write!(f, "{sign}{mag}{s}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: CycleExpression,
    pub rhs: CycleExpression,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: CycleExpression, rhs: CycleExpression) -> Self {
        Relation { name: name.into(), lhs, rhs }
    }

    fn difference(&self) -> CycleExpression {
        self.lhs.clone() - self.rhs.clone()
    }

    pub fn swapped(&self) -> Relation {
        Relation::new(format!("{}'", self.name), self.lhs.swapped(), self.rhs.swapped())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// Writes `(n H - E)^2` in cycle symbols, with `H^2`, `HE`, `E^2` mapped to the
/// given symbols.
fn square_of(divisor: &DivisorClass, h2: CycleSymbol, he: CycleSymbol, e2: CycleSymbol) -> CycleExpression {
    let poly = expand_power(divisor, 2);
    CycleExpression::from_terms(poly.terms().iter().map(|m| {
        let s = match (m.h_exp, m.e_exp) {
            (2, 0) => h2,
            (1, 1) => he,
            (0, 2) => e2,
            _ => unreachable!("square of a divisor is homogeneous of degree 2"),
        };
        (s, m.coeff.clone())
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new(relations: Vec<Relation>) -> Self {
        RelationSet { relations }
    }

    /// The relations among cycles for the cubo-cubic transformation
    /// `H' = 3H - E`, `H = 3H' - E'`.
    pub fn standard() -> Self {
        use CycleSymbol::*;
        let sym = CycleExpression::symbol;
        let cubic = DivisorClass::new(3, -1);
        RelationSet::new(vec![
            Relation::new("H'=3H-E", sym(HPrime2), square_of(&cubic, H2, HS, E2)),
            Relation::new("H=3H'-E'", sym(H2), square_of(&cubic, HPrime2, HT, EPrime2)),
            Relation::new("(b)", 3 * sym(H2) - sym(HS), 3 * sym(HPrime2) - sym(HT)),
            Relation::new("(c)", sym(E2), -5 * sym(H2) + sym(D) + sym(DPrime) + 4 * sym(HS)),
            Relation::new("(c')", sym(EPrime2), -5 * sym(HPrime2) + sym(DeltaSum) + 4 * sym(HT)),
            Relation::new("delta-sum", sym(Delta) + sym(DeltaPrime), sym(DeltaSum)),
        ])
    }

    /// The standard set with the relation called `name` replaced.
    pub fn with_replaced(&self, name: &str, replacement: Relation) -> Result<Self> {
        let idx = self
            .relations
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| Error::domain(format!("no relation named `{name}`")))?;
        let mut relations = self.relations.clone();
        relations[idx] = replacement;
        Ok(RelationSet::new(relations))
    }

    /// Exchanges the roles of the two sides of the transformation.
    pub fn swapped(&self) -> Self {
        RelationSet::new(self.relations.iter().map(Relation::swapped).collect())
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Solves the relations for every non-basis symbol they determine.
    pub fn compile(&self) -> Result<Reducer> {
        let columns: Vec<CycleSymbol> = CycleSymbol::ALL.iter().copied().filter(|s| !s.is_basis()).collect();
        let col_of = |s: CycleSymbol| columns.iter().position(|&c| c == s);

        // each row: non-basis coefficients, then basis coefficients
        let width = columns.len() + CycleSymbol::BASIS.len();
        let mut rows: Vec<Vec<BigRational>> = self
            .relations
            .iter()
            .map(|r| {
                let diff = r.difference();
                let mut row = vec![BigRational::zero(); width];
                for (s, c) in diff.terms() {
                    let j = match col_of(s) {
                        Some(j) => j,
                        None => columns.len() + CycleSymbol::BASIS.iter().position(|&b| b == s).unwrap(),
                    };
                    row[j] = BigRational::from_integer(c.clone());
                }
                row
            })
            .collect();

        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0;
        for col in 0..width {
            let Some(p) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            let lead = rows[next][col].clone();
            for v in rows[next].iter_mut() {
                *v /= &lead;
            }
            for i in 0..rows.len() {
                if i != next && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    let pivot_row = rows[next].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= p * &factor;
                    }
                }
            }
            pivots.push((next, col));
            next += 1;
        }

        let mut rules = BTreeMap::new();
        for (row, col) in pivots {
            if col >= columns.len() {
                let implied = CycleSymbol::BASIS
                    .iter()
                    .zip(&rows[row][columns.len()..])
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(s, c)| format!("{c}*{s}"))
                    .collect::<Vec<_>>();
                return Err(Error::domain(format!(
                    "relations force a dependency among basis cycles: {} = 0",
                    implied.join(" + ")
                )));
            }
            let free_nonbasis = (0..columns.len()).any(|j| j != col && !rows[row][j].is_zero());
            if free_nonbasis {
                continue;
            }
            let mut image = CycleExpression::zero();
            for (s, c) in CycleSymbol::BASIS.iter().zip(&rows[row][columns.len()..]) {
                if c.is_zero() {
                    continue;
                }
                if !c.is_integer() {
                    return Err(Error::domain(format!("{} has non-integral coefficient {c} on {s}", columns[col])));
                }
                image = image + CycleExpression::term(-c.to_integer(), *s);
            }
            rules.insert(columns[col], image);
        }
        Ok(Reducer { rules })
    }
}

/// Rewriting rules produced by [`RelationSet::compile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reducer {
    rules: BTreeMap<CycleSymbol, CycleExpression>,
}

impl Reducer {
    pub fn rule(&self, s: CycleSymbol) -> Option<&CycleExpression> {
        self.rules.get(&s)
    }

    pub fn reduce(&self, e: &CycleExpression) -> Result<CycleExpression> {
        let mut out = CycleExpression::zero();
        for (s, c) in e.terms() {
            if s.is_basis() {
                out = out + CycleExpression::term(c.clone(), s);
                continue;
            }
            let rule = self
                .rules
                .get(&s)
                .ok_or_else(|| Error::domain(format!("{s} is not determined by the relations")))?;
            out = out + rule.scale(c);
        }
        Ok(out)
    }
}

/// Reduces `e` with the standard relation set.
pub fn reduce_cycle(e: &CycleExpression) -> Result<CycleExpression> {
    RelationSet::standard().compile()?.reduce(e)
}

/// An identity `generator = sum of (coefficient, cycle)` in which the cycle
/// tagged `image` generates the target discriminant group and the other cycles
/// are divisible by `modulus` in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorIdentity {
    pub generator: CycleExpression,
    pub multiples: Vec<(BigInt, CycleExpression)>,
    pub image_coeff: BigInt,
    pub image: CycleExpression,
    pub modulus: BigInt,
}

impl GeneratorIdentity {
    /// `H_S + d + d' = 12 H'^2 - 12 H_T + 5 (H_T + delta + delta')`.
    pub fn standard() -> Self {
        use CycleSymbol::*;
        let sym = CycleExpression::symbol;
        GeneratorIdentity {
            generator: sym(HS) + sym(D) + sym(DPrime),
            multiples: vec![(BigInt::from(12), sym(HPrime2)), (BigInt::from(-12), sym(HT))],
            image_coeff: BigInt::from(5),
            image: sym(HT) + sym(Delta) + sym(DeltaPrime),
            modulus: BigInt::from(12),
        }
    }

    pub fn swapped(&self) -> Self {
        GeneratorIdentity {
            generator: self.generator.swapped(),
            multiples: self.multiples.iter().map(|(c, e)| (c.clone(), e.swapped())).collect(),
            image_coeff: self.image_coeff.clone(),
            image: self.image.swapped(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn right_side(&self) -> CycleExpression {
        self.multiples
            .iter()
            .fold(self.image.scale(&self.image_coeff), |acc, (c, e)| acc + e.scale(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MultiplierCheck {
    pub holds: bool,
    #[serde(serialize_with = "crate::serde_int::one")]
    pub multiplier: BigInt,
    #[serde(serialize_with = "crate::serde_int::one")]
    pub modulus: BigInt,
    /// Reduced `generator - right side`; zero when the identity holds.
    pub residual: String,
    pub reduced_generator: String,
}

pub fn check_generator_identity(relations: &RelationSet, identity: &GeneratorIdentity) -> Result<MultiplierCheck> {
    let reducer = relations.compile()?;
    let lhs = reducer.reduce(&identity.generator)?;
    let rhs = reducer.reduce(&identity.right_side())?;
    let residual = lhs.clone() - rhs;
    let divisible = identity.multiples.iter().all(|(c, _)| c.is_multiple_of(&identity.modulus));
    Ok(MultiplierCheck {
        holds: residual.is_zero() && divisible,
        multiplier: identity.image_coeff.mod_floor(&identity.modulus),
        modulus: identity.modulus.clone(),
        residual: residual.to_string(),
        reduced_generator: lhs.to_string(),
    })
}

/// The generator of the order-12 discriminant group maps to 5 times the
/// generator on the other side.
pub fn verify_mult_by_5() -> Result<MultiplierCheck> {
    check_generator_identity(&RelationSet::standard(), &GeneratorIdentity::standard())
}

/// The same identity read through the inverse transformation.
pub fn verify_mult_by_5_reverse() -> Result<MultiplierCheck> {
    check_generator_identity(&RelationSet::standard().swapped(), &GeneratorIdentity::standard().swapped())
}

/// True when multiplication by `c` on `Z/n` is neither `+1` nor `-1`, so it
/// cannot be induced by a Hodge isometry.
pub fn isometry_contradiction(modulus: &BigInt, multiplier: &BigInt) -> Result<bool> {
    if !modulus.is_positive() {
        return Err(Error::domain(format!("modulus must be positive, got {modulus}")));
    }
    let c = multiplier.mod_floor(modulus);
    let one = BigInt::one().mod_floor(modulus);
    let minus_one = (-BigInt::one()).mod_floor(modulus);
    Ok(c != one && c != minus_one)
}
