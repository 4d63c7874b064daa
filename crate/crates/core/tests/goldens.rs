use slocckit::catalog::named;
use slocckit::ket::parse_state;
use slocckit::{classify, Confidence, StateVector};

fn state(text: &str) -> StateVector {
    match named(text) {
        Ok(s) => s,
        Err(_) => parse_state(text).unwrap_or_else(|e| panic!("{text}: {e}")),
    }
}

const GOLDENS: &[(&str, &str, &str)] = &[
    ("|0000>", "(8;)", "{(2,2,1,1,1,1);}"),
    ("|0000>+|0111>", "(8;)", "{(3,3,1,1);}"),
    ("|0001>+|0010>+|0100>", "(8;)", "{(3,2,2,1);}"),
    ("|0000>+|0011>", "(8;)", "{(3,1,1,1,1,1);}"),
    ("|0000>+|0101>", "(8;)", "{(2,2,2,2);}"),
    ("|0000>+|0011>+|1100>+|1111>", "(6;1)", "{(1,1,1,1,1,1);(1)}"),
    ("|0000>+|0101>+|1010>+|1111>", "(0;4)", "{∅;(1,1,1,1)}"),
    ("GHZ(4)", "(4;2)", "{(1,1,1,1);(1,1)}"),
    ("W(4)", "(8;)", "{(3,3,1,1);}"),
    ("Cluster", "(4;1,1)", "{(1,1,1,1);(1),(1)}"),
    ("Dicke(2,4)", "(2;2,1)", "{(1,1);(1,1),(1)}"),
    ("Upsilon4", "(2;1,1,1)", "{(1,1);(1),(1),(1)}"),
    ("L_a4(0)", "(8;)", "{(4,4);}"),
    ("L_a4(1)", "(0;4)", "{∅;(4)}"),
    ("L_abc2(0,0,0)", "(8;)", "{(2,2,1,1,1,1);}"),
    ("L_a2_031(0)", "(8;)", "{(3,2,2,1);}"),
    ("L_a2b2(0,0)", "(8;)", "{(2,2,2,2);}"),
    ("L_ab3(0,1)", "(6;1)", "{(3,3);(1)}"),
    ("L_abc2(0,1,0)", "(6;1)", "{(2,2,1,1);(1)}"),
    ("L_ab3(0,0)", "(8;)", "{(3,3,1,1);}"),
    ("L_ab3_star(0,0)", "(8;)", "{(3,3,1,1);}"),
    ("L_031_031", "(8;)", "{(3,3,1,1);}"),
    ("L_ab3_star(0,1)", "(6;1)", "{(3,3);(1)}"),
    ("L_053", "(8;)", "{(5,3);}"),
    ("L_071", "(8;)", "{(7,1);}"),
    ("G_abcd(1,2,3,5)", "(0;1,1,1,1)", "{∅;(1),(1),(1),(1)}"),
    ("G_abcd(1,1,1,1)", "(0;4)", "{∅;(1,1,1,1)}"),
    ("L_abc2(1,2,3)", "(0;2,1,1)", "{∅;(2),(1),(1)}"),
    ("L_a2b2(1,2)", "(0;2,2)", "{∅;(2),(2)}"),
    ("L_a2_031(1)", "(4;2)", "{(3,1);(2)}"),
    ("L_ab3(1,2)", "(0;3,1)", "{∅;(2,1),(1)}"),
];

#[test]
fn golden_labels() {
    let mut failures = Vec::new();
    for (text, xi, theta) in GOLDENS {
        let s = state(text);
        let c = classify(&s).unwrap();
        let got = (c.xi.to_string(), c.theta.to_string());
        let want = if s.is_exact() { Confidence::Exact } else { Confidence::Float };
        if got.0 != *xi || got.1 != *theta || c.confidence != want {
            failures.push(format!("{text}: got {} {} {} {:?}, want {xi} {theta}", got.0, got.1, c.confidence, c.diagnostics));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn float_path_agrees_with_exact_path() {
    let cfg = slocckit::RunConfig::default().force_float();
    let mut failures = Vec::new();
    for (text, xi, theta) in GOLDENS {
        let c = slocckit::classify_with(&state(text), None, &cfg).unwrap();
        if c.xi.to_string() != *xi || c.theta.to_string() != *theta || c.confidence != Confidence::Float {
            failures.push(format!("{text}: got {} {} {} {:?}", c.xi, c.theta, c.confidence, c.diagnostics));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
