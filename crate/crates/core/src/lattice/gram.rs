use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A free abelian group with named generators and an integer symmetric
/// bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    labels: Vec<String>,
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new(labels: Vec<String>, gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::domain(format!("Gram matrix {gram} is not symmetric")));
        }
        if labels.len() != gram.rows() {
            return Err(Error::domain(format!(
                "{} labels for a lattice of rank {}",
                labels.len(),
                gram.rows()
            )));
        }
        Ok(GramLattice { labels, gram })
    }

    /// Lattice with generators named `e0, e1, ...`.
    pub fn unlabeled(gram: IntMatrix) -> Result<Self> {
        let labels = (0..gram.rows()).map(|i| format!("e{i}")).collect();
        GramLattice::new(labels, gram)
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        GramLattice::unlabeled(IntMatrix::from_rows(rows)?)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("Gram matrix is square")
    }

    pub fn product(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        self.gram.bilinear(u, v)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Gram matrix of the same lattice in the basis given by the rows of
    /// `basis` (coordinates in the current generators).
    pub fn change_basis(&self, labels: Vec<String>, basis: &IntMatrix) -> Result<GramLattice> {
        let g = &(basis * &self.gram) * &basis.transpose();
        GramLattice::new(labels, g)
    }
}

/// A finite abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    #[serde(serialize_with = "crate::serde_int::many")]
    factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    /// Builds the canonical form from any list of cyclic orders `>= 1`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Result<Self> {
        if orders.iter().any(|o| !o.is_positive()) {
            return Err(Error::domain("cyclic orders must be positive"));
        }
        let diag = IntMatrix::diagonal(orders);
        let snf = smith_normal_form(&diag);
        Ok(FiniteAbelianGroup::from_invariant_factors(snf.invariant_factors()))
    }

    fn from_invariant_factors(factors: Vec<BigInt>) -> Self {
        FiniteAbelianGroup {
            factors: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `L^* / L`, read off the Smith form of the Gram matrix.
pub fn discriminant_group(lattice: &GramLattice) -> Result<FiniteAbelianGroup> {
    let snf = smith_normal_form(lattice.gram());
    if snf.rank() < lattice.rank() {
        return Err(Error::Degenerate);
    }
    Ok(FiniteAbelianGroup::from_invariant_factors(snf.invariant_factors()))
}

/// Positive integers `i` with `i^2` dividing `|det|`: the possible indices of
/// `L` in an overlattice of the same rank.
pub fn index_candidates(lattice: &GramLattice) -> Result<Vec<BigInt>> {
    let det = lattice.determinant().abs();
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= det {
        if det.is_multiple_of(&(&i * &i)) {
            out.push(i.clone());
        }
        i += 1;
    }
    Ok(out)
}

/// One index-`p` overlattice candidate `L + (v/p) Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlatticeCandidate {
    /// Coordinates mod `p`, normalized so the first non-zero entry is 1.
    #[serde(serialize_with = "crate::serde_int::many")]
    pub vector: Vec<BigInt>,
    /// `v^T G v` for the lift with entries in `[0, p)`.
    #[serde(serialize_with = "crate::serde_int::one")]
    pub norm: BigInt,
    /// Generators on which `v` is non-zero mod `p`.
    pub support: Vec<usize>,
    /// The candidate would make a primitive generator divisible by `p`.
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SaturationReport {
    #[serde(serialize_with = "crate::serde_int::one")]
    pub prime: BigInt,
    pub saturated: bool,
    pub candidates: Vec<OverlatticeCandidate>,
    pub trace: Vec<String>,
}

fn is_prime(p: &BigInt) -> bool {
    if p < &BigInt::from(2) {
        return false;
    }
    let mut i = BigInt::from(2);
    while &i * &i <= *p {
        if p.is_multiple_of(&i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Representatives of the non-zero vectors of `(Z/p)^rank` up to scalars:
/// first non-zero coordinate equal to 1.
fn projective_points(rank: usize, p: u64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for lead in 0..rank {
        let free = rank - lead - 1;
        let count = p.checked_pow(free as u32).expect("enumeration size fits in u64");
        for mut code in 0..count {
            let mut v = vec![BigInt::zero(); rank];
            v[lead] = BigInt::one();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = BigInt::from(code % p);
                code /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Decides whether `lattice`, sitting primitively-generated inside an even
/// ambient lattice, can have an index-`p` even overlattice.
///
/// Candidates are the classes `v mod p` with `G v = 0 mod p` and
/// `v^T G v = 0 mod 2p^2`. A candidate supported only on generators listed in
/// `primitive` would force one of them to be divisible by `p`, so it is
/// excluded. The lattice is reported saturated at `p` iff every candidate is
/// excluded.
pub fn saturation_check(lattice: &GramLattice, primitive: &[usize], p: &BigInt) -> Result<SaturationReport> {
    if lattice.determinant().is_zero() {
        return Err(Error::Degenerate);
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if let Some(bad) = primitive.iter().find(|&&i| i >= lattice.rank()) {
        return Err(Error::domain(format!("generator index {bad} out of range for rank {}", lattice.rank())));
    }
    let p_small = p
        .to_u64()
        .ok_or_else(|| Error::domain(format!("prime {p} too large to enumerate")))?;
    let two_p_sq = BigInt::from(2) * p * p;

    let mut trace = Vec::new();
    let mut candidates = Vec::new();
    for v in projective_points(lattice.rank(), p_small) {
        let gv = lattice.gram().mul_vec(&v);
        if !gv.iter().all(|x| x.is_multiple_of(p)) {
            continue;
        }
        let norm = lattice.product(&v, &v);
        if !norm.is_multiple_of(&two_p_sq) {
            trace.push(format!(
                "v = {v:?}: G v = 0 mod {p} but v.v = {norm} is not 0 mod {two_p_sq}; no even overlattice"
            ));
            continue;
        }
        let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        let excluded = support.iter().all(|i| primitive.contains(i));
        let names: Vec<&str> = support.iter().map(|&i| lattice.labels()[i].as_str()).collect();
        if excluded {
            trace.push(format!(
                "v = {v:?}: overlattice would contain ({})/{p}, contradicting primitivity",
                names.join(" + ")
            ));
        } else {
            trace.push(format!("v = {v:?}: index-{p} even overlattice is possible"));
        }
        candidates.push(OverlatticeCandidate { vector: v, norm, support, excluded });
    }
    let saturated = candidates.iter().all(|c| c.excluded);
    Ok(SaturationReport { prime: p.clone(), saturated, candidates, trace })
}

/// An integer solution of `a x = b`, if one exists.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::domain(format!("right-hand side has {} entries for {} equations", b.len(), a.rows())));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i).filter(|d| !d.is_zero()) {
            Some(d) => {
                if !ci.is_multiple_of(d) {
                    return Ok(None);
                }
                y[i] = ci / d;
            }
            None => {
                if !ci.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(snf.v.mul_vec(&y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn elliptic_pair() -> GramLattice {
        GramLattice::new(
            vec!["H".into(), "Ell".into()],
            IntMatrix::from_rows(&[vec![12, 5], vec![5, 0]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn discriminant_groups() {
        let a1 = GramLattice::unlabeled(IntMatrix::diagonal(&[1, 1, 12, -1, -1])).unwrap();
        let g = discriminant_group(&a1).unwrap();
        assert_eq!(g.to_string(), "Z/12");
        assert_eq!(g.order(), big(12));
        assert_eq!(discriminant_group(&elliptic_pair()).unwrap().to_string(), "Z/25");
        let hyperbolic = GramLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(discriminant_group(&hyperbolic).unwrap().is_trivial());
        let degenerate = GramLattice::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(discriminant_group(&degenerate), Err(Error::Degenerate));
    }

    #[test]
    fn group_canonical_form() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[big(4), big(6), big(1)]).unwrap();
        assert_eq!(g.to_string(), "Z/2 x Z/12");
        assert!(!g.is_cyclic());
        assert!(FiniteAbelianGroup::from_cyclic_orders(&[big(0)]).is_err());
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(GramLattice::from_rows(&[vec![1, 2], vec![3, 4]]).is_err());
        assert!(GramLattice::new(vec!["a".into()], IntMatrix::identity(2)).is_err());
    }

    #[test]
    fn indices() {
        assert_eq!(index_candidates(&elliptic_pair()).unwrap(), vec![big(1), big(5)]);
        let unimodular = GramLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(index_candidates(&unimodular).unwrap(), vec![big(1)]);
        let d = GramLattice::unlabeled(IntMatrix::diagonal(&[4, 9])).unwrap();
        assert_eq!(index_candidates(&d).unwrap(), vec![big(1), big(2), big(3), big(6)]);
    }

    #[test]
    fn saturation_with_primitive_elliptic_class() {
        let r = saturation_check(&elliptic_pair(), &[1], &big(5)).unwrap();
        assert!(r.saturated);
        assert!(!r.candidates.is_empty());
        assert!(r.candidates.iter().all(|c| c.vector[0].is_zero()));
    }

    #[test]
    fn saturation_needs_primitivity() {
        let r = saturation_check(&elliptic_pair(), &[], &big(5)).unwrap();
        assert!(!r.saturated);
        assert_eq!(r.candidates[0].vector, vec![big(0), big(1)]);
    }

    #[test]
    fn unimodular_is_saturated() {
        let u = GramLattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        for p in [2, 3, 5, 7] {
            let r = saturation_check(&u, &[], &big(p)).unwrap();
            assert!(r.saturated);
            assert!(r.candidates.is_empty());
        }
    }

    #[test]
    fn saturation_detects_index_two() {
        // <4> has the even overlattice <1>... which is odd; <8> sits in <2> with index 2
        let l = GramLattice::unlabeled(IntMatrix::diagonal(&[8])).unwrap();
        assert!(!saturation_check(&l, &[], &big(2)).unwrap().saturated);
        let odd = GramLattice::unlabeled(IntMatrix::diagonal(&[4])).unwrap();
        assert!(saturation_check(&odd, &[], &big(2)).unwrap().saturated);
    }

    #[test]
    fn saturation_argument_errors() {
        assert!(saturation_check(&elliptic_pair(), &[], &big(4)).is_err());
        assert!(saturation_check(&elliptic_pair(), &[2], &big(5)).is_err());
        let degenerate = GramLattice::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(saturation_check(&degenerate, &[], &big(5)), Err(Error::Degenerate));
    }

    #[test]
    fn integer_systems() {
        let a = IntMatrix::from_rows(&[vec![10, 1, 1], vec![2, -1, -1]]).unwrap();
        assert_eq!(solve_integer_system(&a, &[big(6), big(4)]).unwrap(), None);
        let x = solve_integer_system(&a, &[big(12), big(0)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), vec![big(12), big(0)]);
        let b = IntMatrix::from_rows(&[vec![2, 4]]).unwrap();
        assert_eq!(solve_integer_system(&b, &[big(3)]).unwrap(), None);
    }
}
