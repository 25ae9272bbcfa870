use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::base_locus::small;
use super::profiles::MapProfile;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::intersection::{canonical_class, intersect, pair, BaseLocusNumbers, CurveClass, DivisorClass};

/// The divisorial contraction on the blow-up `X` that realizes the inverse
/// map, read off from the ray spanned by strict transforms of `n`-secant
/// lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContractionRecord {
    #[serde(serialize_with = "crate::serde_int::display")]
    pub canonical_class: DivisorClass,
    #[serde(serialize_with = "crate::serde_int::display")]
    pub exc_divisor: DivisorClass,
    #[serde(serialize_with = "crate::serde_int::display")]
    pub ray: CurveClass,
    pub lambda: i64,
    /// `H'^2 Exc^2`, non-zero so the exceptional divisor maps onto a surface.
    pub surface_image_check: i64,
    pub fano_index: i64,
    /// `K_X`, `H'` and `Exc` against the ray.
    pub trisecant_pairings: [i64; 3],
}

pub fn contraction_arithmetic(profile: &MapProfile, c: &Congruence) -> Result<ContractionRecord> {
    if profile.k != 4 {
        return Err(Error::domain(format!("contraction record is defined for k = 4, got {}", profile.k)));
    }
    let k = profile.k;
    let canonical = canonical_class(k, profile.r)?;
    let hp = DivisorClass::target_hyperplane(profile.n);
    // K_X = -k H' + Exc
    let exc = &canonical + &hp.scale(&k.into());
    let ray = CurveClass::multisecant(profile.n);

    let (k_r, hp_r, exc_r) = (pair(&canonical, &ray), pair(&hp, &ray), pair(&exc, &ray));
    if !hp_r.is_zero() {
        return Err(Error::consistency("H'.R = 0", format!("H'.R = {hp_r}")));
    }
    if !k_r.is_negative() {
        return Err(Error::consistency("K_X.R < 0", format!("K_X.R = {k_r}")));
    }
    if exc_r.is_zero() || !(&k_r % &exc_r).is_zero() {
        return Err(Error::consistency("integral discrepancy", format!("K_X.R = {k_r}, Exc.R = {exc_r}")));
    }
    let lambda = &k_r / &exc_r;
    if !lambda.is_one() {
        return Err(Error::consistency("K_X = -kH' + Exc", format!("lambda = {lambda}")));
    }

    let base = BaseLocusNumbers::surface(c.d, c.hk, c.c2)?;
    let image = intersect(&base, &[hp.clone(), hp.clone(), exc.clone(), exc.clone()])?;
    if image.is_zero() {
        return Err(Error::consistency("Exc maps onto a surface", "H'^2 Exc^2 = 0"));
    }
    let fano_index = (-&canonical).divisibility();

    Ok(ContractionRecord {
        canonical_class: canonical,
        exc_divisor: exc,
        ray,
        lambda: small(&lambda, "lambda")?,
        surface_image_check: small(&image, "H'^2 Exc^2")?,
        fano_index: small(&fano_index, "Fano index")?,
        trisecant_pairings: [small(&k_r, "K.R")?, small(&hp_r, "H'.R")?, small(&exc_r, "Exc.R")?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ten_contraction() {
        let p = MapProfile { k: 4, n: 3, m: 3, r: 2, r_prime: 2 };
        let c = Congruence::new(5, 5, 7, 2).unwrap();
        let rec = contraction_arithmetic(&p, &c).unwrap();
        assert_eq!(rec.exc_divisor, DivisorClass::new(8, -3));
        assert_eq!(rec.exc_divisor.to_string(), "8H-3E");
        assert_eq!(rec.lambda, 1);
        assert_eq!(rec.surface_image_check, -10);
        assert_eq!(rec.fano_index, 1);
        assert_eq!(rec.trisecant_pairings, [-1, 0, -1]);
        assert_eq!(rec.ray.to_string(), "l-3f");
    }

    #[test]
    fn needs_dimension_four() {
        let p = MapProfile { k: 3, n: 2, m: 2, r: 1, r_prime: 1 };
        let c = Congruence::new(5, 5, 7, 2).unwrap();
        assert!(contraction_arithmetic(&p, &c).is_err());
    }
}
