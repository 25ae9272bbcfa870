#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use quadbir_cli::expr::Expr;
use quadbir_cli::report::{ReportDocument, TraceRecord};
use quadbir_core::intersection::{BaseLocusNumbers, DivisorClass};
use quadbir_core::lattice::cycles::{CycleExpression, CycleSymbol};
use quadbir_core::lattice::IntMatrix;
use serde_json::Value;

pub fn quadbir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadbir")).args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

pub fn json_result(args: &[&str]) -> Value {
    let o = quadbir(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    ReportDocument::from_json(&stdout(&o)).expect("valid document").result
}

pub fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file exists")
}

/// Deterministic runner without failure persistence.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn expr_ast() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::H),
        Just(Expr::E),
        Just(Expr::HPrime),
        (0u32..30).prop_map(|n| Expr::Int(BigInt::from(n))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..=3).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

pub fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

pub fn divisor() -> impl Strategy<Value = DivisorClass> {
    (-9i64..=9, -9i64..=9).prop_map(|(h, e)| DivisorClass::new(h, e))
}

pub fn base_locus() -> impl Strategy<Value = BaseLocusNumbers> {
    prop_oneof![
        (1i64..=60, 0i64..=40).prop_map(|(d, g)| BaseLocusNumbers::curve(d, g).unwrap()),
        (1i64..=60, -100i64..=100, -300i64..=300).prop_map(|(d, hk, c2)| BaseLocusNumbers::surface(d, hk, c2).unwrap()),
    ]
}

pub fn cycle_expression() -> impl Strategy<Value = CycleExpression> {
    proptest::collection::vec(-50i64..=50, CycleSymbol::ALL.len()).prop_map(|cs| {
        CycleExpression::from_terms(CycleSymbol::ALL.iter().copied().zip(cs.into_iter().map(BigInt::from)))
    })
}

fn json_leaf() -> impl Strategy<Value = Value> {
    prop_oneof![
        Just(Value::Null),
        any::<bool>().prop_map(Value::from),
        any::<i64>().prop_map(Value::from),
        "[a-zA-Z0-9_'^+() -]{0,12}".prop_map(Value::from),
    ]
}

pub fn json_value() -> impl Strategy<Value = Value> {
    json_leaf().prop_recursive(3, 32, 4, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..4).prop_map(Value::Array),
            proptest::collection::btree_map("[a-z]{1,6}", inner, 0..4)
                .prop_map(|m| Value::Object(m.into_iter().collect())),
        ]
    })
}

pub fn document() -> impl Strategy<Value = ReportDocument> {
    let trace = proptest::collection::vec(
        ("[a-z _]{1,10}", "[A-Za-z0-9=+^()' -]{0,16}", "[-0-9]{1,4}").prop_map(|(c, a, v)| TraceRecord::new(c, a, v)),
        0..4,
    );
    ("[a-z0-9 -]{0,24}", json_value(), trace).prop_map(|(cmd, result, trace)| ReportDocument::new(cmd, result, trace))
}
