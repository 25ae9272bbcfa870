use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Numerical type of a special Cremona transformation `Q^k --> Q^k`: the map
/// is given by forms of degree `n`, its inverse by forms of degree `m`, and
/// the two base loci have dimensions `r` and `r_prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapProfile {
    pub k: i64,
    pub n: i64,
    pub m: i64,
    pub r: i64,
    pub r_prime: i64,
}

impl MapProfile {
    /// Checks `n (k - r - 1) = r' + 1` and `m (k - r' - 1) = r + 1`.
    pub fn satisfies_identities(&self) -> bool {
        self.n * (self.k - self.r - 1) == self.r_prime + 1 && self.m * (self.k - self.r_prime - 1) == self.r + 1
    }

    /// Profiles with a linear map on either side have no base locus and are
    /// not considered further.
    pub fn is_standard(&self) -> bool {
        self.n >= 2 && self.m >= 2
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.n, self.m, self.r, self.r_prime]
    }
}

/// Serializes as `[n, m, r, r']`.
impl Serialize for MapProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for v in self.as_array() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// All profiles with `1 <= r, r' <= k - 2` and integral `n, m >= 1`, sorted
/// by `(n, m, r, r')`. Standard and non-standard profiles are both returned.
pub fn enumerate_profiles(k: i64) -> Result<Vec<MapProfile>> {
    if k < 3 {
        return Err(Error::domain(format!("profiles need k >= 3, got {k}")));
    }
    let mut out = Vec::new();
    for r in 1..=k - 2 {
        for r_prime in 1..=k - 2 {
            let (dn, dm) = (k - r - 1, k - r_prime - 1);
            if (r_prime + 1) % dn != 0 || (r + 1) % dm != 0 {
                continue;
            }
            let p = MapProfile { k, n: (r_prime + 1) / dn, m: (r + 1) / dm, r, r_prime };
            debug_assert!(p.satisfies_identities());
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

pub fn standard_profiles(k: i64) -> Result<Vec<MapProfile>> {
    Ok(enumerate_profiles(k)?.into_iter().filter(MapProfile::is_standard).collect())
}
