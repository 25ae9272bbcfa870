//! Numerical obstructions for curves cut on the degree-10 surface by planes
//! and quadric surfaces contracted by the inverse map.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::base_locus::small;
use crate::congruence::{chern_normal_bundle, Congruence};
use crate::error::{Error, Result};
use crate::lattice::{solve_integer_system, GramLattice, IntMatrix};

/// A divisor `h H_S + k K_S` on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceDivisor {
    pub h: i64,
    pub k: i64,
}

impl fmt::Display for SurfaceDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, name) in [(self.h, "H_S"), (self.k, "K_S")] {
            match c {
                0 => {}
                1 => parts.push(format!("+{name}")),
                -1 => parts.push(format!("-{name}")),
                c if c > 0 => parts.push(format!("+{c}{name}")),
                c => parts.push(format!("{c}{name}")),
            }
        }
        let s = parts.concat();
        f.write_str(s.strip_prefix('+').unwrap_or(if s.is_empty() { "0" } else { &s }))
    }
}

/// Degree-one part of `c(N_S) (1 - 3 H_S t)`, the class whose degree on the
/// curve equals the local intersection number along it.
pub fn cap_product_linear_term(c: &Congruence) -> SurfaceDivisor {
    let chern = chern_normal_bundle(c);
    SurfaceDivisor { h: chern.c1_h - 3, k: chern.c1_k }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct XySolution {
    pub x: i64,
    pub y: i64,
    pub d_sq: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionRecord {
    #[serde(serialize_with = "crate::serde_int::display")]
    pub cap_product_linear_term: SurfaceDivisor,
    /// Plane cubic: `(H_S + K_S) C`, i.e. its degree on the minimal model.
    pub plane_fiber_curve_degree: i64,
    pub plane_fiber_canonical_degree: i64,
    pub plane_fiber_self_intersection: i64,
    pub xy_solutions: Vec<XySolution>,
    /// `((H - 2D)^2, H (H - 2D))` when `D^2 = 2`.
    pub d_sq2_exclusion: [i64; 2],
    /// Sextic on a quadric surface: `(H_S + K_S) C`.
    pub quadric_fiber_curve_degree: i64,
    pub quadric_fiber_canonical_degree: i64,
    pub rank_one_system_solvable: bool,
}

/// `S . Z` for a surface class `Z = p1 P1 + p2 P2` in the middle Chow group
/// of `Q^4`, where the two families of planes satisfy `P_i P_j = delta_ij`.
fn middle_product(c: &Congruence, p1: i64, p2: i64) -> Result<i64> {
    let chow = GramLattice::unlabeled(IntMatrix::identity(2))?;
    let v = chow.product(&[c.a.into(), c.b.into()], &[p1.into(), p2.into()]);
    small(&v, "S.Z")
}

const PLANE_CUBIC_DEGREE: i64 = 3;
const PLANE_CUBIC_GENUS: i64 = 1;
const QUADRIC_SEXTIC_DEGREE: i64 = 6;

pub fn plane_fiber_obstruction(c: &Congruence) -> Result<ObstructionRecord> {
    let linear = cap_product_linear_term(c);
    if linear != (SurfaceDivisor { h: 1, k: 1 }) {
        return Err(Error::consistency("linear term is H_S+K_S", linear.to_string()));
    }

    let plane_degree = middle_product(c, 1, 0)?;
    if middle_product(c, 0, 1)? != plane_degree {
        return Err(Error::consistency("both plane families meet S equally", format!("bidegree ({},{})", c.a, c.b)));
    }
    let plane_k = plane_degree - PLANE_CUBIC_DEGREE;
    let plane_sq = 2 * PLANE_CUBIC_GENUS - 2 - plane_k;

    // C = b*(D) + x d + y d' with K_S = d + d' and d^2 = d'^2 = -1:
    // K_S C = -x - y and C^2 = D^2 - x^2 - y^2; d C = -x, d' C = -y are >= 0
    let sum = -plane_k;
    let xy_solutions: Vec<XySolution> = (sum..=0)
        .map(|x| {
            let y = sum - x;
            XySolution { x, y, d_sq: plane_sq + x * x + y * y }
        })
        .filter(|s| s.y <= 0)
        .collect();

    // H_S + K_S is the pull-back of the hyperplane class of the minimal model
    let h0_sq = c.d + 2 * c.hk + c.ksq;
    let model = GramLattice::from_rows(&[vec![h0_sq, plane_degree], vec![plane_degree, 2]])?;
    let v: Vec<BigInt> = vec![1.into(), (-2).into()];
    let h: Vec<BigInt> = vec![1.into(), 0.into()];
    let d_sq2_exclusion = [small(&model.product(&v, &v), "(H-2D)^2")?, small(&model.product(&h, &v), "H(H-2D)")?];

    let quadric_degree = middle_product(c, 1, 1)?;
    let quadric_k = quadric_degree - QUADRIC_SEXTIC_DEGREE;

    // Pic(S) = <H_S, d, d'> when the minimal model has Picard rank one
    let pic = GramLattice::from_rows(&[vec![c.d, 1, 1], vec![1, -1, 0], vec![1, 0, -1]])?;
    let g = pic.gram();
    let k_row: Vec<BigInt> = (0..3).map(|j| &g[(1, j)] + &g[(2, j)]).collect();
    let system = IntMatrix::from_rows(&[g.row(0).to_vec(), k_row])?;
    let solvable = solve_integer_system(&system, &[QUADRIC_SEXTIC_DEGREE.into(), quadric_k.into()])?.is_some();

    Ok(ObstructionRecord {
        cap_product_linear_term: linear,
        plane_fiber_curve_degree: plane_degree,
        plane_fiber_canonical_degree: plane_k,
        plane_fiber_self_intersection: plane_sq,
        xy_solutions,
        d_sq2_exclusion,
        quadric_fiber_curve_degree: quadric_degree,
        quadric_fiber_canonical_degree: quadric_k,
        rank_one_system_solvable: solvable,
    })
}
