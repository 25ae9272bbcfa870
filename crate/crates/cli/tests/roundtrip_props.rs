mod common;

use common::{document, expr_ast};
use proptest::prelude::*;
use quadbir_cli::commands::classify_document;
use quadbir_cli::expr::parse;
use quadbir_cli::report::ReportDocument;
use quadbir_core::classifier::classify;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_expression_reparses_to_same_tree(ast in expr_ast()) {
        let printed = ast.to_string();
        let back = parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
        prop_assert_eq!(&back, &ast);
        for n in [2, 3] {
            prop_assert_eq!(back.to_polynomial(n), ast.to_polynomial(n));
        }
    }

    #[test]
    fn whitespace_is_insignificant(ast in expr_ast()) {
        let printed: Vec<char> = ast.to_string().chars().collect();
        let mut spaced = String::new();
        for (i, c) in printed.iter().enumerate() {
            spaced.push(*c);
            let next = printed.get(i + 1);
            let joined = (c.is_ascii_digit() && next.is_some_and(char::is_ascii_digit)) || next == Some(&'\'');
            if !joined {
                spaced.push_str(" \t");
            }
        }
        prop_assert_eq!(parse(&spaced).unwrap().to_polynomial(3), ast.to_polynomial(3));
    }

    #[test]
    fn documents_round_trip(doc in document()) {
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn classification_documents_round_trip() {
    for k in [3, 4] {
        let doc = classify_document(&classify(k).unwrap(), &format!("classify --dim {k}"));
        let text = doc.to_json();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
        assert_eq!(classify_document(&classify(k).unwrap(), &format!("classify --dim {k}")).to_json(), text);
    }
}

#[test]
fn implicit_product_equals_explicit() {
    for (implicit, explicit) in [("3H-E", "3*H-E"), ("2H'^2E", "2*H'^2*E"), ("(H)(E)", "H*E"), ("-2H", "-(2*H)")] {
        assert_eq!(parse(implicit).unwrap().to_polynomial(3), parse(explicit).unwrap().to_polynomial(3));
    }
}
