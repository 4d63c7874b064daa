use std::collections::BTreeSet;

use slocckit::classifier::emit_tables;
use slocckit::{JordanLabel, Partition, RunConfig};

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.iter().copied())
}

fn label(tau: &[usize], pis: &[&[usize]]) -> JordanLabel {
    JordanLabel::new(p(tau), pis.iter().map(|x| p(x)).collect())
}

/// The 43 four-qubit families, transcribed block by block.
fn transcribed() -> Vec<JordanLabel> {
    vec![
        // (0;4)
        label(&[], &[&[4]]),
        label(&[], &[&[2, 2]]),
        label(&[], &[&[1, 1, 2]]),
        label(&[], &[&[1, 1, 1, 1]]),
        label(&[], &[&[3, 1]]),
        // (0;1,3)
        label(&[], &[&[1], &[3]]),
        label(&[], &[&[1], &[1, 2]]),
        label(&[], &[&[1], &[1, 1, 1]]),
        // (0;1,1,2)
        label(&[], &[&[1], &[1], &[2]]),
        label(&[], &[&[1], &[1], &[1, 1]]),
        // (0;2,2)
        label(&[], &[&[1, 1], &[1, 1]]),
        label(&[], &[&[1, 1], &[2]]),
        label(&[], &[&[2], &[2]]),
        // (0;1,1,1,1)
        label(&[], &[&[1], &[1], &[1], &[1]]),
        // (2;3)
        label(&[1, 1], &[&[3]]),
        label(&[1, 1], &[&[2, 1]]),
        label(&[1, 1], &[&[1, 1, 1]]),
        // (2;1,2)
        label(&[1, 1], &[&[1], &[2]]),
        label(&[1, 1], &[&[1], &[1, 1]]),
        // (2;1,1,1)
        label(&[1, 1], &[&[1], &[1], &[1]]),
        // (4;2)
        label(&[2, 2], &[&[2]]),
        label(&[2, 2], &[&[1, 1]]),
        label(&[3, 1], &[&[2]]),
        label(&[3, 1], &[&[1, 1]]),
        label(&[1, 1, 1, 1], &[&[2]]),
        label(&[1, 1, 1, 1], &[&[1, 1]]),
        // (4;1,1)
        label(&[2, 2], &[&[1], &[1]]),
        label(&[3, 1], &[&[1], &[1]]),
        label(&[1, 1, 1, 1], &[&[1], &[1]]),
        // (6;1)
        label(&[1, 5], &[&[1]]),
        label(&[3, 3], &[&[1]]),
        label(&[2, 2, 1, 1], &[&[1]]),
        label(&[1, 1, 1, 1, 1, 1], &[&[1]]),
        label(&[3, 1, 1, 1], &[&[1]]),
        // (8;)
        label(&[7, 1], &[]),
        label(&[5, 3], &[]),
        label(&[4, 4], &[]),
        label(&[2, 2, 2, 2], &[]),
        label(&[3, 3, 1, 1], &[]),
        label(&[2, 2, 3, 1], &[]),
        label(&[5, 1, 1, 1], &[]),
        label(&[2, 2, 1, 1, 1, 1], &[]),
        label(&[3, 1, 1, 1, 1, 1], &[]),
    ]
}

#[test]
fn four_qubit_tables_match_transcription() {
    let report = emit_tables(1, &RunConfig::default()).unwrap();
    assert_eq!(report.spectrum_count(), 12);
    assert_eq!(report.family_count(), 43);
    let emitted: BTreeSet<JordanLabel> = report.families().map(|e| e.theta.clone()).collect();
    let expected: BTreeSet<JordanLabel> = transcribed().into_iter().collect();
    assert_eq!(expected.len(), 43);
    assert_eq!(emitted, expected);

    for excluded in [label(&[2, 4], &[&[1]]), label(&[2, 6], &[]), label(&[1, 1, 2, 4], &[])] {
        assert!(!emitted.contains(&excluded), "{excluded} should be excluded");
    }
}

#[test]
fn product_marks() {
    let report = emit_tables(1, &RunConfig::default()).unwrap();
    let marked_rows: BTreeSet<String> =
        report.rows.iter().filter(|r| r.product_mark.is_some()).map(|r| r.xi.to_string()).collect();
    assert_eq!(marked_rows, ["(0;4)", "(6;1)", "(8;)"].iter().map(|s| s.to_string()).collect());

    let marked: BTreeSet<JordanLabel> =
        report.families().filter(|e| e.product_mark.is_some()).map(|e| e.theta.clone()).collect();
    let expected: BTreeSet<JordanLabel> = [
        label(&[], &[&[1, 1, 1, 1]]),
        label(&[1, 1, 1, 1, 1, 1], &[&[1]]),
        label(&[2, 2, 2, 2], &[]),
        label(&[3, 3, 1, 1], &[]),
        label(&[3, 2, 2, 1], &[]),
        label(&[2, 2, 1, 1, 1, 1], &[]),
        label(&[3, 1, 1, 1, 1, 1], &[]),
    ]
    .into_iter()
    .collect();
    assert_eq!(marked, expected);
}

#[test]
fn block_sizes_per_spectrum_type() {
    let report = emit_tables(1, &RunConfig::default()).unwrap();
    let count = |xi: &str| report.rows.iter().find(|r| r.xi.to_string() == xi).unwrap().families.len();
    assert_eq!(count("(0;4)"), 5);
    assert_eq!(count("(6;1)"), 5);
    assert_eq!(count("(8;)"), 9);
    let text = report.to_string();
    assert!(text.contains("{(3,3);(1)}"));
}
