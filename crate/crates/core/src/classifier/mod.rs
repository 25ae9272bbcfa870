//! Classification of special quadro-quadric and cubo-cubic transformations
//! of `Q^3` and `Q^4`.

pub mod base_locus;
pub mod contraction;
pub mod obstruction;
pub mod profiles;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

pub use base_locus::{
    admissible_bidegrees, eliminate_degree, elimination_trace, max_surface_degree, q4_surface_relations,
    solve_q3_base_locus, CurveSolution, EliminationVerdict, SurfaceRelations, Verdict,
};
pub use contraction::{contraction_arithmetic, ContractionRecord};
pub use obstruction::{plane_fiber_obstruction, ObstructionRecord, XySolution};
pub use profiles::{enumerate_profiles, standard_profiles, MapProfile};

use crate::catalog::{degree10_type_candidates, TypeTag};
use crate::congruence::{
    chern_normal_bundle, chi_normal_bundle, chi_vector_bundle, normal_bundle_data, Congruence,
};
use crate::error::{Error, Result};
use crate::lattice::{
    discriminant_group, index_candidates, isometry_contradiction, saturation_check, verify_mult_by_5,
    verify_mult_by_5_reverse, GramLattice, IntMatrix,
};
use base_locus::small;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceEntry {
    pub claim: String,
    pub anchor: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BaseLocus {
    Curve {
        degree: i64,
        genus: i64,
    },
    #[serde(rename_all = "camelCase")]
    Surface {
        degree: i64,
        bidegree: [i64; 2],
        pi: i64,
        chi_o: i64,
        hk: i64,
        c2: i64,
        ksq: i64,
        chi_normal: i64,
        c2_normal: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SaturationSummary {
    pub gram: String,
    pub prime: i64,
    pub saturated: bool,
    pub index_candidates: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeSummary {
    pub discriminant_group: String,
    pub multiplier: i64,
    pub modulus: i64,
    pub identity_holds: bool,
    pub reverse_multiplier: i64,
    pub contradiction: bool,
    pub saturation: SaturationSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub k: i64,
    pub profile: MapProfile,
    /// Every solution of the profile identities, standard or not.
    pub all_profiles: Vec<MapProfile>,
    pub base_locus: BaseLocus,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_tag: Option<TypeTag>,
    pub h0: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub elimination: Vec<EliminationVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSummary>,
    pub trace: Vec<TraceEntry>,
    pub assumptions: Vec<String>,
}

struct Trace(Vec<TraceEntry>);

impl Trace {
    fn push(&mut self, claim: &str, anchor: &str, value: impl ToString) {
        self.0.push(TraceEntry { claim: claim.into(), anchor: anchor.into(), value: value.to_string() });
    }

    /// Records `value` and fails unless it equals `expected`.
    fn check<T: PartialEq + std::fmt::Display>(&mut self, claim: &str, anchor: &str, value: T, expected: T) -> Result<()> {
        if value != expected {
            return Err(Error::consistency(claim, format!("computed {value}, expected {expected}")));
        }
        self.push(claim, anchor, value);
        Ok(())
    }
}

fn ensure(cond: bool, claim: &str, detail: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::consistency(claim, detail))
    }
}

/// `h^0(O_{Q^k}(n))`.
pub fn quadric_sections(k: i64, n: i64) -> i64 {
    let ambient = binomial(k + 1 + n, n);
    let equation = if n >= 2 { binomial(k - 1 + n, n - 2) } else { 0 };
    ambient - equation
}

/// The only standard profile in dimension `k`.
fn unique_profile(k: i64) -> Result<(MapProfile, Vec<MapProfile>)> {
    let all = enumerate_profiles(k)?;
    let standard: Vec<MapProfile> = all.iter().copied().filter(MapProfile::is_standard).collect();
    match standard.as_slice() {
        [p] => Ok((*p, all)),
        _ => Err(Error::consistency("one standard profile", format!("{} standard profiles for k = {k}", standard.len()))),
    }
}

fn common_assumptions() -> Vec<String> {
    vec![
        "the exceptional divisor E is reduced and the base locus scheme is generically reduced".into(),
        "higher cohomology of I_B(n) vanishes in the Riemann-Roch cross-checks of h0".into(),
        "profiles with n = 1 or m = 1 carry no base locus and are discarded".into(),
    ]
}

pub fn classify(k: i64) -> Result<ClassificationReport> {
    match k {
        3 => classify_q3(),
        4 => classify_q4(),
        _ => Err(Error::UnsupportedDimension(k)),
    }
}

fn classify_q3() -> Result<ClassificationReport> {
    let mut trace = Trace(Vec::new());
    let (profile, all) = unique_profile(3)?;
    trace.push("profile", "n(k-r-1)=r'+1, m(k-r'-1)=r+1", format!("{:?}", profile.as_array()));

    let curve = solve_q3_base_locus(&profile)?;
    trace.push("base curve", "H(2H-E)^2=4, (2H-E)^3=2", format!("(d,g)=({},{})", curve.degree, curve.genus));

    let n = profile.n;
    let h0 = profile.k + 2;
    let by_rr = quadric_sections(3, n) - (n * curve.degree + 1 - curve.genus);
    trace.check("h0(I_C(2))", "h0(I_C(n))=k+2", by_rr, h0)?;

    Ok(ClassificationReport {
        k: 3,
        profile,
        all_profiles: all,
        base_locus: BaseLocus::Curve { degree: curve.degree, genus: curve.genus },
        type_tag: None,
        h0,
        elimination: Vec::new(),
        contraction: None,
        obstruction: None,
        lattice: None,
        trace: trace.0,
        assumptions: common_assumptions(),
    })
}

fn classify_q4() -> Result<ClassificationReport> {
    let mut trace = Trace(Vec::new());
    let (profile, all) = unique_profile(4)?;
    trace.push("profile", "n(k-r-1)=r'+1, m(k-r'-1)=r+1", format!("{:?}", profile.as_array()));

    let max_d = max_surface_degree(&profile)?;
    trace.push("degree bound", "H^2(3H-E)^2=18-d>0", format!("d<={max_d}"));

    let elimination = elimination_trace(&profile)?;
    let survivors: Vec<&EliminationVerdict> = elimination.iter().filter(|v| v.survives()).collect();
    let (d, a, b) = match survivors.as_slice() {
        [only] => match &only.verdict {
            Verdict::Survives { bidegrees } if bidegrees.len() == 1 => (only.d, bidegrees[0][0], bidegrees[0][1]),
            other => return Err(Error::consistency("one bidegree", other.witness())),
        },
        _ => return Err(Error::consistency("one surviving degree", format!("{} survivors", survivors.len()))),
    };
    trace.push("surviving degree", "12 | d^2+23d-2ab-256", format!("d={d}, (a,b)=({a},{b})"));

    let rel = q4_surface_relations(&profile, d)?;
    let twelve_chi = rel.twelve_chi_plus_2ab - 2 * a * b;
    ensure(twelve_chi % 12 == 0, "integral chi(O_S)", format!("12 chi = {twelve_chi}"))?;
    let c = Congruence::new(a, b, rel.pi, twelve_chi / 12)?;
    ensure(
        (c.hk, c.c2) == (rel.hk, rel.c2),
        "congruence matches surface relations",
        format!("{c} against hk={}, c2={}", rel.hk, rel.c2),
    )?;
    trace.push("invariants", "HK=5d-48, c2=25d-224, pi=3d-23", c.to_string());

    let chi_n = chi_normal_bundle(&c);
    trace.check("chi(N)", "chi(N)=6d-a^2-b^2+2(2pi-2)+2chi", chi_vector_bundle(&normal_bundle_data(&c), c.chi_o)?, chi_n)?;
    trace.check("c2(N)", "c2(N)=a^2+b^2", chern_normal_bundle(&c).c2, a * a + b * b)?;

    let n = profile.n;
    let h0 = profile.k + 2;
    let surface_chi = |t: i64| c.chi_o + (t * t * c.d - t * c.hk) / 2;
    trace.check("h0(I_S(3))", "h0(I_S(n))=k+2", quadric_sections(4, n) - surface_chi(n), h0)?;
    let quadrics = quadric_sections(4, 2) - surface_chi(2);
    trace.check("h0(I_S(2))", "h0(I_S(j))=0 for j<n", quadrics, 0)?;
    let in_quadratic_complex = quadrics > 0;

    let candidates = degree10_type_candidates(&c, in_quadratic_complex, false)?;
    let type_tag = match candidates.as_slice() {
        [t] => *t,
        _ => return Err(Error::consistency("unique surface type", format!("{candidates:?}"))),
    };
    trace.push("type", "chi=2, P(t)=5t^2-t+2, h0(I_S(2))=0", type_tag);

    let contraction = contraction_arithmetic(&profile, &c)?;
    trace.push("exceptional divisor", "Exc(R)=8H-3E", &contraction.exc_divisor);
    trace.push("discrepancy", "K_X.R=lambda Exc.R", contraction.lambda);
    trace.push("surface image", "(3H-E)^2(8H-3E)^2=-10", contraction.surface_image_check);
    trace.push("Fano index", "-K_X=4H-E", contraction.fano_index);

    let obstruction = plane_fiber_obstruction(&c)?;
    trace.push("plane fiber", "(H_S+K_S)C=5", obstruction.plane_fiber_curve_degree);
    trace.push("quadric fiber", "(H_S+K_S)C=10", obstruction.quadric_fiber_curve_degree);
    ensure(
        obstruction.xy_solutions.iter().any(|s| s.d_sq == 0) && obstruction.d_sq2_exclusion == [0, 2],
        "D^2 = 0 after excluding D^2 = 2",
        format!("{:?}", obstruction.xy_solutions),
    )?;
    ensure(!obstruction.rank_one_system_solvable, "rank-one system unsolvable", "integer solution found")?;
    trace.push("rank-one system", "10u+v+w=6, 2u-v-w=4", "no integer solution");

    let lattice = lattice_summary(&c, &mut trace)?;

    let mut assumptions = common_assumptions();
    assumptions.push("maximal sectional genus forces a quadratic complex through S (imported bound)".into());
    assumptions.push("the sign twist in dA_1 = dT(S_0)(-1) is not modelled; only the Z/12 action is".into());

    Ok(ClassificationReport {
        k: 4,
        profile,
        all_profiles: all,
        base_locus: BaseLocus::Surface {
            degree: c.d,
            bidegree: [c.a, c.b],
            pi: c.pi,
            chi_o: c.chi_o,
            hk: c.hk,
            c2: c.c2,
            ksq: c.ksq,
            chi_normal: chi_n,
            c2_normal: chern_normal_bundle(&c).c2,
        },
        type_tag: Some(type_tag),
        h0,
        elimination,
        contraction: Some(contraction),
        obstruction: Some(obstruction),
        lattice: Some(lattice),
        trace: trace.0,
        assumptions,
    })
}

/// `A_1 = <P_1, P_2> + <H_S + d + d', d, d'>`, with the second summand taken
/// from `Pic(S)`.
pub fn algebraic_lattice(c: &Congruence) -> Result<GramLattice> {
    let pic = GramLattice::new(
        vec!["H_S".into(), "d".into(), "d'".into()],
        IntMatrix::from_rows(&[vec![c.d, 1, 1], vec![1, -1, 0], vec![1, 0, -1]])?,
    )?;
    let basis = IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]])?;
    let ns = pic.change_basis(vec!["H_S+d+d'".into(), "d".into(), "d'".into()], &basis)?;
    let mut gram = IntMatrix::zeros(5, 5);
    gram[(0, 0)] = 1.into();
    gram[(1, 1)] = 1.into();
    for i in 0..3 {
        for j in 0..3 {
            gram[(i + 2, j + 2)] = ns.gram()[(i, j)].clone();
        }
    }
    let mut labels = vec!["P1".to_string(), "P2".to_string()];
    labels.extend(ns.labels().iter().cloned());
    GramLattice::new(labels, gram)
}

fn lattice_summary(c: &Congruence, trace: &mut Trace) -> Result<LatticeSummary> {
    let a1 = algebraic_lattice(c)?;
    let disc = discriminant_group(&a1)?;
    trace.check("dA_1", "dA_1=Z/12", disc.to_string(), "Z/12".to_string())?;

    let forward = verify_mult_by_5()?;
    ensure(forward.holds, "generator identity", forward.residual.clone())?;
    let reverse = verify_mult_by_5_reverse()?;
    ensure(reverse.holds, "reverse generator identity", reverse.residual.clone())?;
    ensure(forward.modulus == disc.order(), "identity modulus is |dA_1|", forward.modulus.to_string())?;
    trace.push("phi_A", "H_S+d+d' = 12H'^2-12H_T+5(H_T+delta+delta')", &forward.multiplier);

    let contradiction = isometry_contradiction(&forward.modulus, &forward.multiplier)?;
    ensure(contradiction, "multiplier is not +-1", forward.multiplier.to_string())?;
    trace.push("S_0 and T_0", "5 != +-1 mod 12", "non-isomorphic");

    let h0_sq = c.d + 2 * c.hk + c.ksq;
    let elliptic = GramLattice::new(
        vec!["H_S0".into(), "Ell".into()],
        IntMatrix::from_rows(&[vec![h0_sq, 5], vec![5, 0]])?,
    )?;
    let p = BigInt::from(5);
    let sat = saturation_check(&elliptic, &[1], &p)?;
    let idx = index_candidates(&elliptic)?;
    ensure(sat.saturated, "<H_S0, Ell> saturated", sat.trace.join("; "))?;
    trace.push("saturation", "[M:<H_S0,Ell>]=1 or 5", "saturated");

    Ok(LatticeSummary {
        discriminant_group: disc.to_string(),
        multiplier: small(&forward.multiplier, "multiplier")?,
        modulus: small(&forward.modulus, "modulus")?,
        identity_holds: forward.holds,
        reverse_multiplier: small(&reverse.multiplier, "multiplier")?,
        contradiction,
        saturation: SaturationSummary {
            gram: elliptic.gram().to_string(),
            prime: 5,
            saturated: sat.saturated,
            index_candidates: idx.iter().map(|i| small(i, "index")).collect::<Result<_>>()?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_section_counts() {
        assert_eq!(quadric_sections(3, 2), 14);
        assert_eq!(quadric_sections(4, 2), 20);
        assert_eq!(quadric_sections(4, 3), 50);
        assert_eq!(quadric_sections(4, 1), 6);
    }

    #[test]
    fn algebraic_lattice_table() {
        let c = Congruence::new(5, 5, 7, 2).unwrap();
        let a1 = algebraic_lattice(&c).unwrap();
        assert_eq!(a1.gram(), &IntMatrix::diagonal(&[1, 1, 12, -1, -1]));
    }

    #[test]
    fn classify_dimension_three() {
        let r = classify(3).unwrap();
        assert_eq!(r.profile.as_array(), [2, 2, 1, 1]);
        assert_eq!(r.base_locus, BaseLocus::Curve { degree: 4, genus: 0 });
        assert_eq!(r.h0, 5);
    }

    #[test]
    fn classify_dimension_four() {
        let r = classify(4).unwrap();
        assert_eq!(r.profile.as_array(), [3, 3, 2, 2]);
        assert_eq!(r.type_tag, Some(TypeTag::ZEII));
        assert_eq!(r.h0, 6);
        assert_eq!(r.elimination.len(), 17);
        let lattice = r.lattice.unwrap();
        assert_eq!((lattice.multiplier, lattice.contradiction), (5, true));
    }

    #[test]
    fn other_dimensions_unsupported() {
        assert_eq!(classify(5), Err(Error::UnsupportedDimension(5)));
        assert_eq!(classify(2), Err(Error::UnsupportedDimension(2)));
    }
}
