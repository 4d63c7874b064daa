use std::collections::BTreeSet;

use slocckit::catalog::named;
use slocckit::classifier::{
    compare, genuine_entanglement, ClassificationJson, EntanglementVerdict, Verdict, Witness,
};
use slocckit::ket::parse_state;
use slocckit::{classify, classify_with, ClassifyError, Confidence, QubitSplit, RunConfig};

#[test]
fn upsilon_is_genuinely_entangled() {
    let (v, c) = genuine_entanglement(&named("Upsilon4").unwrap(), None, &RunConfig::default()).unwrap();
    assert_eq!(v, EntanglementVerdict::Genuine);
    assert_eq!(c.theta.to_string(), "{(1,1);(1),(1),(1)}");
}

#[test]
fn product_state_is_inconclusive() {
    let (v, _) = genuine_entanglement(&parse_state("|0000>").unwrap(), None, &RunConfig::default()).unwrap();
    assert_eq!(v, EntanglementVerdict::Inconclusive);
}

#[test]
fn l_a4_representative_is_genuine() {
    let (v, c) = genuine_entanglement(&named("L_a4(1)").unwrap(), None, &RunConfig::default()).unwrap();
    assert_eq!(c.theta.to_string(), "{∅;(4)}");
    assert_eq!(v, EntanglementVerdict::Genuine);
}

#[test]
fn larger_systems_need_a_product_set() {
    let ghz8 = named("GHZ(8)").unwrap();
    let err = genuine_entanglement(&ghz8, None, &RunConfig::default()).unwrap_err();
    assert_eq!(err, ClassifyError::ProductSetRequired(8));
    let (v, _) = genuine_entanglement(&ghz8, Some(&BTreeSet::new()), &RunConfig::default()).unwrap();
    assert_eq!(v, EntanglementVerdict::Genuine);
}

#[test]
fn equal_labels_are_inconclusive() {
    let v = compare(&named("GHZ(4)").unwrap(), &named("GHZ(4)").unwrap(), None, &RunConfig::default()).unwrap();
    assert_eq!((v.verdict, v.witness), (Verdict::Inconclusive, Witness::None));
}

#[test]
fn different_spectra_are_witnessed_by_xi() {
    let v = compare(&named("GHZ(4)").unwrap(), &named("W(4)").unwrap(), None, &RunConfig::default()).unwrap();
    assert_eq!((v.verdict, v.witness), (Verdict::Inequivalent, Witness::Xi));
}

#[test]
fn compare_rejects_mismatched_sizes() {
    let err = compare(&named("GHZ(4)").unwrap(), &named("GHZ(8)").unwrap(), None, &RunConfig::default()).unwrap_err();
    assert_eq!(err, ClassifyError::ArityMismatch { left: 4, right: 8 });
}

#[test]
fn qubit_count_must_be_a_multiple_of_four() {
    let err = classify(&named("GHZ(3)").unwrap()).unwrap_err();
    assert_eq!(err, ClassifyError::NotMultipleOfFour(3));
}

#[test]
fn json_round_trips_canonically() {
    for name in ["Cluster", "L_ab3(1,2)", "Dicke(2,4)", "GHZ(8)"] {
        let c = classify(&named(name).unwrap()).unwrap();
        let text = c.to_json_string();
        let parsed: ClassificationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.canonicalize().to_string_canonical(), text, "{name}");
    }
    let text = classify(&named("Cluster").unwrap()).unwrap().to_json_string();
    assert_eq!(text, r#"{"xi":{"k":2,"ells":[1,1]},"theta":{"tau":[1,1,1,1],"pis":[[1],[1]]},"confidence":"EXACT"}"#);
}

#[test]
fn splits_change_the_matrix_but_not_validity() {
    // |EPR>_13 |EPR>_24 under the 1,3|2,4 split looks like |EPR>_12 |EPR>_34 does by default
    let s = parse_state("|0000>+|0101>+|1010>+|1111>").unwrap();
    let split = QubitSplit::parse("1,3", 4).unwrap();
    let c = classify_with(&s, Some(&split), &RunConfig::default()).unwrap();
    assert_eq!(c.theta.to_string(), "{(1,1,1,1,1,1);(1)}");
    assert_eq!(c.confidence, Confidence::Exact);
}

#[test]
fn text_report_mentions_labels() {
    let text = classify(&named("GHZ(4)").unwrap()).unwrap().render_text();
    assert!(text.contains("Xi:         (4;2)"));
    assert!(text.contains("theta:      {(1,1,1,1);(1,1)}"));
    assert!(text.contains("confidence: EXACT"));
}
