//! Catalog of non-degenerate smooth congruences of degree 10 and the
//! identification of a congruence's type from its invariants.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::congruence::{hilbert_polynomial, Congruence, HilbertPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    /// Minimal Enriques surface of bidegree (3,7).
    Enriques,
    /// Plane blown up in 12 points.
    ZA,
    /// K3 surface blown up in one point.
    ZB,
    /// Elliptic ruled surface, sectional genus 4.
    CA,
    /// Elliptic ruled surface, sectional genus 5.
    CB,
    /// Elliptic ruled surface, sectional genus 6.
    CC,
    /// Plane blown up in 13 points.
    ZC,
    /// Plane blown up in 17 points.
    ZD,
    /// K3 surface blown up in two points, lying on a quadratic complex.
    ZEI,
    /// K3 surface blown up in two points, on no quadratic complex.
    ZEII,
    /// Minimal elliptic surface with `p_a = p_g = 2`.
    ZF,
}

impl TypeTag {
    pub const ALL: [TypeTag; 11] = [
        TypeTag::Enriques,
        TypeTag::ZA,
        TypeTag::ZB,
        TypeTag::CA,
        TypeTag::CB,
        TypeTag::CC,
        TypeTag::ZC,
        TypeTag::ZD,
        TypeTag::ZEI,
        TypeTag::ZEII,
        TypeTag::ZF,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TypeTag::Enriques => "Enriques",
            TypeTag::ZA => "Z_A",
            TypeTag::ZB => "Z_B",
            TypeTag::CA => "C_A",
            TypeTag::CB => "C_B",
            TypeTag::CC => "C_C",
            TypeTag::ZC => "Z_C",
            TypeTag::ZD => "Z_D",
            TypeTag::ZEI => "Z_E_I",
            TypeTag::ZEII => "Z_E_II",
            TypeTag::ZF => "Z_F",
        }
    }

    pub fn is_z_e(self) -> bool {
        matches!(self, TypeTag::ZEI | TypeTag::ZEII)
    }

    pub fn entry(self) -> &'static CatalogEntry {
        EMBEDDED_CATALOG
            .iter()
            .find(|e| e.tag == self)
            .expect("every tag has a catalog row")
    }
}

impl Serialize for TypeTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TypeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TypeTag::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::domain(format!("unknown surface type `{s}`")))
    }
}

/// One row of the degree-10 table. `pi` and `chi_o` are `None` where the
/// value is not recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogEntry {
    pub tag: TypeTag,
    pub a: i64,
    pub b: i64,
    pub pi: Option<i64>,
    pub chi_o: Option<i64>,
}

impl CatalogEntry {
    const fn new(tag: TypeTag, a: i64, b: i64, pi: Option<i64>, chi_o: Option<i64>) -> Self {
        CatalogEntry { tag, a, b, pi, chi_o }
    }
}

/// The authoritative table. `chi(O_S)` follows from the surface class of each
/// type (rational 1, K3 blow-up 2, elliptic ruled 0, Enriques 1, and
/// `1 + p_a = 3` for the elliptic surface).
pub static EMBEDDED_CATALOG: [CatalogEntry; 11] = [
    CatalogEntry::new(TypeTag::Enriques, 3, 7, None, Some(1)),
    CatalogEntry::new(TypeTag::ZA, 4, 6, None, Some(1)),
    CatalogEntry::new(TypeTag::ZB, 4, 6, None, Some(2)),
    CatalogEntry::new(TypeTag::CA, 5, 5, Some(4), Some(0)),
    CatalogEntry::new(TypeTag::CB, 5, 5, Some(5), Some(0)),
    CatalogEntry::new(TypeTag::CC, 5, 5, Some(6), Some(0)),
    CatalogEntry::new(TypeTag::ZC, 5, 5, None, Some(1)),
    CatalogEntry::new(TypeTag::ZD, 5, 5, None, Some(1)),
    CatalogEntry::new(TypeTag::ZEI, 5, 5, None, Some(2)),
    CatalogEntry::new(TypeTag::ZEII, 5, 5, None, Some(2)),
    CatalogEntry::new(TypeTag::ZF, 5, 5, Some(8), Some(3)),
];

/// The same table in its plain-text form, as shipped in `data/`.
pub const CATALOG_TEXT: &str = include_str!("../data/degree10_types.txt");

fn parse_optional(field: &str, line_no: usize) -> Result<Option<i64>> {
    if field == "-" {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| Error::domain(format!("line {line_no}: `{field}` is not an integer or `-`")))
}

/// Parses a whitespace-separated table with columns `label a b pi chi`;
/// `-` marks an empty cell, `#` starts a comment.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 || fields.len() > 5 {
            return Err(Error::domain(format!("line {line_no}: expected 3 to 5 columns, got {}", fields.len())));
        }
        let tag: TypeTag = fields[0].parse()?;
        let int = |s: &str| -> Result<i64> {
            s.parse()
                .map_err(|_| Error::domain(format!("line {line_no}: `{s}` is not an integer")))
        };
        let (a, b) = (int(fields[1])?, int(fields[2])?);
        if a + b != 10 {
            return Err(Error::domain(format!("line {line_no}: bidegree ({a},{b}) does not sum to 10")));
        }
        let pi = fields.get(3).map(|f| parse_optional(f, line_no)).transpose()?.flatten();
        let chi_o = fields.get(4).map(|f| parse_optional(f, line_no)).transpose()?.flatten();
        rows.push(CatalogEntry { tag, a, b, pi, chi_o });
    }
    Ok(rows)
}

pub fn render_catalog(rows: &[CatalogEntry]) -> String {
    let cell = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let mut out = String::from("# label a b pi chi\n");
    for r in rows {
        out.push_str(&format!("{} {} {} {} {}\n", r.tag, r.a, r.b, cell(r.pi), cell(r.chi_o)));
    }
    out
}

fn same_bidegree(entry: &CatalogEntry, c: &Congruence) -> bool {
    // swapping the two rulings of Q^4 exchanges a and b
    let (lo, hi) = (c.a.min(c.b), c.a.max(c.b));
    (entry.a.min(entry.b), entry.a.max(entry.b)) == (lo, hi)
}

/// Types of the catalog consistent with the invariants of `c`.
///
/// Degenerate surfaces are outside the table and yield no candidate.
pub fn degree10_type_candidates(
    c: &Congruence,
    in_quadratic_complex: bool,
    degenerate: bool,
) -> Result<Vec<TypeTag>> {
    degree10_type_candidates_in(&EMBEDDED_CATALOG, c, in_quadratic_complex, degenerate)
}

pub fn degree10_type_candidates_in(
    catalog: &[CatalogEntry],
    c: &Congruence,
    in_quadratic_complex: bool,
    degenerate: bool,
) -> Result<Vec<TypeTag>> {
    if c.d != 10 {
        return Err(Error::domain(format!("type catalog covers degree 10 only, got {}", c.d)));
    }
    if degenerate {
        return Ok(Vec::new());
    }
    let mut tags: Vec<TypeTag> = catalog
        .iter()
        .filter(|e| same_bidegree(e, c))
        .filter(|e| e.chi_o.is_none_or(|x| x == c.chi_o))
        .filter(|e| e.pi.is_none_or(|x| x == c.pi))
        .map(|e| e.tag)
        .collect();

    // Only Z_B and Z_E carry chi = 2 together with P(t) = 5t^2 - t + 2.
    let k3_poly = HilbertPoly {
        quad: 5.into(),
        lin: (-1).into(),
        constant: 2,
    };
    if hilbert_polynomial(c) == k3_poly {
        tags.retain(|t| matches!(t, TypeTag::ZB) || t.is_z_e());
    }

    let wanted = if in_quadratic_complex { TypeTag::ZEI } else { TypeTag::ZEII };
    tags.retain(|t| !t.is_z_e() || *t == wanted);
    tags.sort();
    tags.dedup();
    Ok(tags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::make_congruence;

    #[test]
    fn shipped_text_matches_embedded_table() {
        assert_eq!(parse_catalog(CATALOG_TEXT).unwrap(), EMBEDDED_CATALOG.to_vec());
        assert_eq!(parse_catalog(&render_catalog(&EMBEDDED_CATALOG)).unwrap(), EMBEDDED_CATALOG.to_vec());
    }

    #[test]
    fn every_row_has_degree_ten() {
        assert!(EMBEDDED_CATALOG.iter().all(|e| e.a + e.b == 10));
        for t in TypeTag::ALL {
            assert_eq!(t.entry().tag, t);
            assert_eq!(t.label().parse::<TypeTag>().unwrap(), t);
        }
    }

    #[test]
    fn identifies_types() {
        let z_e = make_congruence(5, 5, 7, 2).unwrap();
        assert_eq!(degree10_type_candidates(&z_e, false, false).unwrap(), vec![TypeTag::ZEII]);
        assert_eq!(degree10_type_candidates(&z_e, true, false).unwrap(), vec![TypeTag::ZEI]);

        let z_b = make_congruence(4, 6, 7, 2).unwrap();
        assert_eq!(degree10_type_candidates(&z_b, false, false).unwrap(), vec![TypeTag::ZB]);

        let enriques = make_congruence(3, 7, 6, 1).unwrap();
        for q in [false, true] {
            assert_eq!(degree10_type_candidates(&enriques, q, false).unwrap(), vec![TypeTag::Enriques]);
        }
    }

    #[test]
    fn partial_information_keeps_unknown_cells() {
        // chi = 1 on (5,5): the two rational types, whose genus is not tabulated
        let c = make_congruence(5, 5, 9, 1).unwrap();
        assert_eq!(degree10_type_candidates(&c, false, false).unwrap(), vec![TypeTag::ZC, TypeTag::ZD]);
        let ruled = make_congruence(5, 5, 5, 0).unwrap();
        assert_eq!(degree10_type_candidates(&ruled, false, false).unwrap(), vec![TypeTag::CB]);
    }

    #[test]
    fn candidate_errors_and_degenerate() {
        let c = make_congruence(5, 4, 7, 2).unwrap();
        assert!(degree10_type_candidates(&c, false, false).is_err());
        let ok = make_congruence(5, 5, 7, 2).unwrap();
        assert!(degree10_type_candidates(&ok, false, true).unwrap().is_empty());
    }

    #[test]
    fn loader_errors() {
        assert!(parse_catalog("Z_X 5 5 - -").is_err());
        assert!(parse_catalog("Z_B 4 5 - 2").is_err());
        assert!(parse_catalog("Z_B 4 6 x 2").is_err());
        assert!(parse_catalog("Z_B").is_err());
        assert_eq!(parse_catalog("# only a comment\n\n").unwrap(), vec![]);
    }
}
