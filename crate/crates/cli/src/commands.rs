//! The three subcommands. Each returns the exact text to print.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use quadbir_core::classifier::{self, BaseLocus, ClassificationReport};
use quadbir_core::intersection::{BaseLocusNumbers, DivisorPolynomial};
use quadbir_core::lattice::{
    discriminant_group, index_candidates, isometry_contradiction, saturation_check, verify_mult_by_5,
    verify_mult_by_5_reverse, GramLattice, IntMatrix, MultiplierCheck,
};
use serde_json::{json, Value};

use crate::expr::{self, offending_monomial};
use crate::report::{int_value, ReportDocument, TraceRecord};
use crate::{ClassifyArgs, ClassifyFormat, CliError, IntersectArgs, LatticeArgs, LatticeCheck, OutputFormat};

/// Upper bound on the number of residue vectors the saturation check may
/// enumerate.
pub const SATURATION_ENUMERATION_LIMIT: u64 = 1_000_000;

pub fn classify(args: &ClassifyArgs, echo: &str) -> Result<String, CliError> {
    let report = classifier::classify(args.dim)?;
    Ok(match args.format {
        ClassifyFormat::Json => classify_document(&report, echo).to_json(),
        ClassifyFormat::Markdown => classify_markdown(&report, echo),
    })
}

pub fn classify_document(report: &ClassificationReport, echo: &str) -> ReportDocument {
    let mut result = serde_json::to_value(report).expect("reports serialize");
    if let Value::Object(map) = &mut result {
        map.remove("trace");
    }
    let trace = report.trace.iter().cloned().map(TraceRecord::from).collect();
    ReportDocument::new(echo, result, trace)
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn classify_markdown(report: &ClassificationReport, echo: &str) -> String {
    let mut s = String::new();
    let p = &report.profile;
    let _ = writeln!(s, "# quadbir {echo}\n");
    let _ = writeln!(s, "- version: {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "- quadric dimension: {}", report.k);
    let _ = writeln!(s, "- profile (n, m, r, r'): ({}, {}, {}, {})", p.n, p.m, p.r, p.r_prime);
    match &report.base_locus {
        BaseLocus::Curve { degree, genus } => {
            let _ = writeln!(s, "- base locus: curve of degree {degree} and genus {genus}");
        }
        BaseLocus::Surface { degree, bidegree, pi, chi_o, hk, c2, ksq, .. } => {
            let _ = writeln!(
                s,
                "- base locus: surface of degree {degree}, bidegree ({}, {}), pi = {pi}, chi = {chi_o}, H.K = {hk}, c2 = {c2}, K^2 = {ksq}",
                bidegree[0], bidegree[1]
            );
        }
    }
    if let Some(t) = &report.type_tag {
        let _ = writeln!(s, "- type: {}", t.label());
    }
    let _ = writeln!(s, "- h0: {}", report.h0);

    if !report.elimination.is_empty() {
        let _ = writeln!(s, "\n## Elimination\n\n| d | verdict | witness |\n|---|---------|---------|");
        for e in &report.elimination {
            let _ = writeln!(s, "| {} | {} | {} |", e.d, e.verdict.name(), md_cell(&e.verdict.witness()));
        }
    }

    let sections = [
        ("Contraction", serde_json::to_value(&report.contraction)),
        ("Obstruction", serde_json::to_value(&report.obstruction)),
        ("Lattice", serde_json::to_value(&report.lattice)),
    ];
    for (title, value) in sections {
        if let Ok(Value::Object(map)) = value {
            let _ = writeln!(s, "\n## {title}\n");
            for (k, v) in &map {
                let _ = writeln!(s, "- {k}: {}", compact(v));
            }
        }
    }

    let _ = writeln!(s, "\n## Trace\n\n| claim | anchor | value |\n|-------|--------|-------|");
    for t in &report.trace {
        let _ = writeln!(s, "| {} | `{}` | {} |", md_cell(&t.claim), md_cell(&t.anchor), md_cell(&t.value));
    }
    if !report.assumptions.is_empty() {
        let _ = writeln!(s, "\n## Assumptions\n");
        for a in &report.assumptions {
            let _ = writeln!(s, "- {a}");
        }
    }
    s
}

fn base_locus_numbers(args: &IntersectArgs) -> Result<BaseLocusNumbers, CliError> {
    let stray = |flags: &[(&str, bool)]| -> Result<(), CliError> {
        match flags.iter().find(|(_, present)| *present) {
            Some((name, _)) => Err(CliError::Usage(format!("--{name} is not used with --dim {}", args.dim))),
            None => Ok(()),
        }
    };
    let required = |name: &str, v: &Option<BigInt>| -> Result<BigInt, CliError> {
        v.clone().ok_or_else(|| CliError::Usage(format!("--dim {} requires --{name}", args.dim)))
    };
    Ok(match args.dim {
        3 => {
            stray(&[("hk", args.hk.is_some()), ("c2", args.c2.is_some())])?;
            BaseLocusNumbers::curve(args.d.clone(), required("g", &args.g)?)?
        }
        4 => {
            stray(&[("g", args.g.is_some())])?;
            BaseLocusNumbers::surface(args.d.clone(), required("hk", &args.hk)?, required("c2", &args.c2)?)?
        }
        k => return Err(quadbir_core::Error::UnsupportedDimension(k).into()),
    })
}

/// `n` in `H' = nH - E` for the unique standard profile in dimension `k`.
fn target_degree(k: i64) -> Result<i64, CliError> {
    match classifier::standard_profiles(k)?.as_slice() {
        [p] => Ok(p.n),
        other => Err(CliError::Verification {
            claim: "unique standard profile".into(),
            detail: format!("{} profiles for k = {k}", other.len()),
        }),
    }
}

fn parse_expression(source: &str) -> Result<expr::Expr, CliError> {
    expr::parse(source).map_err(|e| {
        let col = source[..e.position.min(source.len())].chars().count();
        CliError::Data(format!("{e}\n  {source}\n  {}^", " ".repeat(col)))
    })
}

pub fn intersect(args: &IntersectArgs, echo: &str) -> Result<String, CliError> {
    let base = base_locus_numbers(args)?;
    let k = base.k();
    let n = target_degree(args.dim)?;
    let ast = parse_expression(&args.expr)?;
    let poly = ast.to_polynomial(n);
    if let Some(m) = offending_monomial(&poly, k) {
        return Err(CliError::Data(format!(
            "expression is not homogeneous of degree {k}: monomial {} has degree {}",
            DivisorPolynomial::from_terms(vec![m.clone()]),
            m.degree()
        )));
    }
    let value = poly.evaluate(&base)?;
    Ok(match args.format {
        OutputFormat::Text => format!("{value}\n"),
        OutputFormat::Json => {
            let result = json!({
                "dim": args.dim,
                "expression": ast.to_string(),
                "expanded": poly.to_string(),
                "value": int_value(&value),
            });
            let trace = vec![
                TraceRecord::new("H'", "H'=nH-E", format!("{n}H-E")),
                TraceRecord::new("expansion", args.expr.clone(), poly.to_string()),
                TraceRecord::new("value", args.expr.clone(), &value),
            ];
            ReportDocument::new(echo, result, trace).to_json()
        }
    })
}

fn parse_gram(text: &str) -> Result<GramLattice, CliError> {
    let bad = |msg: String| CliError::Data(format!("invalid --gram: {msg}"));
    let rows: Vec<Vec<Value>> = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| match v {
                    Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("{n} is not an integer"))),
                    Value::String(s) => s.parse::<BigInt>().map_err(|_| bad(format!("{s:?} is not an integer"))),
                    other => Err(bad(format!("{other} is not an integer"))),
                })
                .collect::<Result<Vec<BigInt>, CliError>>()
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if rows.is_empty() {
        return Err(bad("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(bad("matrix is not square".into()));
    }
    Ok(GramLattice::unlabeled(IntMatrix::from_rows(&rows)?)?)
}

fn gram_value(l: &GramLattice) -> Value {
    Value::Array(l.gram().to_rows().iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect())
}

fn reject_unused(args: &LatticeArgs, allowed: &[&str]) -> Result<(), CliError> {
    let present = [
        ("gram", args.gram.is_some()),
        ("primitive", args.primitive.is_some()),
        ("p", args.p.is_some()),
        ("modulus", args.modulus.is_some()),
        ("multiplier", args.multiplier.is_some()),
    ];
    for (name, given) in present {
        if given && !allowed.contains(&name) {
            let check = format!("{:?}", args.check).to_lowercase();
            return Err(CliError::Usage(format!("--{name} is not used by --check {check}")));
        }
    }
    Ok(())
}

fn require_holds(check: &MultiplierCheck, claim: &str) -> Result<(), CliError> {
    if check.holds {
        Ok(())
    } else {
        Err(CliError::Verification { claim: claim.into(), detail: format!("residual {}", check.residual) })
    }
}

fn render(format: OutputFormat, text: String, echo: &str, result: Value, trace: Vec<TraceRecord>) -> String {
    match format {
        OutputFormat::Text => text,
        OutputFormat::Json => ReportDocument::new(echo, result, trace).to_json(),
    }
}

pub fn lattice(args: &LatticeArgs, echo: &str) -> Result<String, CliError> {
    match args.check {
        LatticeCheck::Mult5 => lattice_mult5(args, echo),
        LatticeCheck::Contradiction => lattice_contradiction(args, echo),
        LatticeCheck::Saturation => lattice_saturation(args, echo),
        LatticeCheck::Discriminant => lattice_discriminant(args, echo),
    }
}

const IDENTITY: &str = "H_S+d+d' = 12H'^2-12H_T+5(H_T+delta+delta')";

fn lattice_mult5(args: &LatticeArgs, echo: &str) -> Result<String, CliError> {
    reject_unused(args, &[])?;
    let forward = verify_mult_by_5()?;
    require_holds(&forward, "generator identity")?;
    let reverse = verify_mult_by_5_reverse()?;
    require_holds(&reverse, "reverse generator identity")?;

    let mut text = String::new();
    let _ = writeln!(text, "identity: {IDENTITY}");
    let _ = writeln!(text, "reduced generator: {}", forward.reduced_generator);
    let _ = writeln!(text, "residual: {}", forward.residual);
    let _ = writeln!(text, "multiplier: {} mod {}", forward.multiplier, forward.modulus);
    let _ = writeln!(text, "holds: {}", forward.holds);
    let _ = writeln!(text, "reverse multiplier: {} mod {}, holds: {}", reverse.multiplier, reverse.modulus, reverse.holds);
    let result = json!({ "forward": forward, "reverse": reverse });
    let trace = vec![
        TraceRecord::new("phi_A", IDENTITY, &forward.multiplier),
        TraceRecord::new("phi_A^-1", "H_T+delta+delta' -> H_S+d+d'", &reverse.multiplier),
    ];
    Ok(render(args.format, text, echo, result, trace))
}

fn lattice_contradiction(args: &LatticeArgs, echo: &str) -> Result<String, CliError> {
    reject_unused(args, &["modulus", "multiplier"])?;
    let defaults = args.modulus.is_none() && args.multiplier.is_none();
    let (modulus, multiplier) = if defaults {
        let check = verify_mult_by_5()?;
        require_holds(&check, "generator identity")?;
        (check.modulus, check.multiplier)
    } else {
        match (&args.modulus, &args.multiplier) {
            (Some(n), Some(c)) => (n.clone(), c.clone()),
            _ => return Err(CliError::Usage("--modulus and --multiplier must be given together".into())),
        }
    };
    let contradiction = isometry_contradiction(&modulus, &multiplier)?;
    let residue = |v: &BigInt| {
        let r = v % &modulus;
        if r < BigInt::from(0) { r + &modulus } else { r }
    };
    let c = residue(&multiplier);
    let minus_one = residue(&BigInt::from(-1));

    let mut text = String::new();
    let _ = writeln!(text, "{multiplier} mod {modulus} = {c}");
    let _ = writeln!(text, "+1 mod {modulus} = {}, -1 mod {modulus} = {minus_one}", residue(&BigInt::from(1)));
    let verdict = match (contradiction, defaults) {
        (true, true) => format!("{c} ∉ {{±1}} mod {modulus}: S0 and T0 non-isomorphic"),
        (true, false) => format!("{c} ∉ {{±1}} mod {modulus}: not induced by an isometry"),
        (false, _) => format!("{c} ∈ {{±1}} mod {modulus}: no contradiction"),
    };
    let _ = writeln!(text, "{verdict}");
    let result = json!({
        "modulus": int_value(&modulus),
        "multiplier": int_value(&multiplier),
        "residue": int_value(&c),
        "contradiction": contradiction,
        "verdict": verdict,
    });
    let trace = vec![TraceRecord::new("S_0 and T_0", "5 != +-1 mod 12", &verdict)];
    Ok(render(args.format, text, echo, result, trace))
}

fn lattice_saturation(args: &LatticeArgs, echo: &str) -> Result<String, CliError> {
    reject_unused(args, &["gram", "primitive", "p"])?;
    let lattice = parse_gram(args.gram.as_deref().unwrap_or("[[12,5],[5,0]]"))?;
    let primitive = args.primitive.clone().unwrap_or_else(|| vec![1]);
    let p = args.p.clone().unwrap_or_else(|| BigInt::from(5));
    let points = p
        .to_u64()
        .and_then(|q| u32::try_from(lattice.rank()).ok().and_then(|r| q.checked_pow(r)))
        .filter(|&n| n <= SATURATION_ENUMERATION_LIMIT);
    if points.is_none() {
        return Err(CliError::Data(format!(
            "p^rank = {p}^{} exceeds the enumeration limit {SATURATION_ENUMERATION_LIMIT}",
            lattice.rank()
        )));
    }
    let report = saturation_check(&lattice, &primitive, &p)?;
    let indices = index_candidates(&lattice)?;

    let mut text = String::new();
    let _ = writeln!(text, "gram: {}", gram_value(&lattice));
    let _ = writeln!(text, "primitive: {primitive:?}");
    let _ = writeln!(text, "p: {p}");
    for c in &report.candidates {
        let v: Vec<String> = c.vector.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "candidate ({}): norm {}, support {:?}, {}",
            v.join(","),
            c.norm,
            c.support,
            if c.excluded { "excluded" } else { "possible" }
        );
    }
    for line in &report.trace {
        let _ = writeln!(text, "  {line}");
    }
    let _ = writeln!(text, "saturated: {}", report.saturated);
    let idx: Vec<String> = indices.iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "index candidates: [{}]", idx.join(", "));

    let result = json!({
        "gram": gram_value(&lattice),
        "primitive": primitive,
        "report": report,
        "indexCandidates": indices.iter().map(int_value).collect::<Vec<_>>(),
    });
    let trace = vec![TraceRecord::new("saturation", format!("p = {p}"), report.saturated)];
    Ok(render(args.format, text, echo, result, trace))
}

fn lattice_discriminant(args: &LatticeArgs, echo: &str) -> Result<String, CliError> {
    reject_unused(args, &["gram"])?;
    let Some(gram) = &args.gram else {
        return Err(CliError::Usage("--check discriminant requires --gram".into()));
    };
    let lattice = parse_gram(gram)?;
    let group = discriminant_group(&lattice)?;
    let text = format!("{group}\n");
    let result = json!({
        "gram": gram_value(&lattice),
        "determinant": int_value(&lattice.determinant()),
        "group": group.to_string(),
        "invariantFactors": group.invariant_factors().iter().map(int_value).collect::<Vec<_>>(),
        "order": int_value(&group.order()),
    });
    let trace = vec![TraceRecord::new("discriminant group", "L^*/L", &group)];
    Ok(render(args.format, text, echo, result, trace))
}
