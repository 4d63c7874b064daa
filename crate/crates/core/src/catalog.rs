//! Named states: the standard multipartite fixtures and the representatives
//! of Verstraete et al.'s nine four-qubit families.
//!
//! States are left unnormalized; the invariants do not see a global scale.
//! Family representatives follow Verstraete, Dehaene, De Moor and Verschelde,
//! "Four qubits can be entangled in nine different ways", PRA 65, 052112
//! (2002), with `L*_{ab3}` obtained from `L_{ab3}` by flipping the signs of its
//! last two terms.

use std::fmt;

use num_traits::ToPrimitive;

use crate::ket::{parse_argument, KetError};
use crate::numkit::C64;
use crate::scalar::Scalar;
use crate::tensor::StateVector;

/// A catalog name with concrete parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedState {
    pub name: String,
    pub parameters: Vec<Scalar>,
}

impl NamedState {
    pub fn new(name: &str, parameters: Vec<Scalar>) -> Self {
        NamedState { name: name.to_string(), parameters }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.parameters.is_empty() {
            let args: Vec<String> = self.parameters.iter().map(Scalar::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub parameters: &'static [&'static str],
    pub definition: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "GHZ", parameters: &["qubits"], definition: "|0…0> + |1…1>" },
    CatalogEntry { name: "W", parameters: &["qubits"], definition: "sum of the weight-1 basis states" },
    CatalogEntry { name: "Dicke", parameters: &["k", "qubits"], definition: "sum of the weight-k basis states" },
    CatalogEntry { name: "Cluster", parameters: &[], definition: "|0000> + |0011> + |1100> - |1111>" },
    CatalogEntry { name: "Upsilon4", parameters: &[], definition: "sum of all |ijkl> except |0000> and |1111>" },
    CatalogEntry {
        name: "G_abcd",
        parameters: &["a", "b", "c", "d"],
        definition: "(a+d)/2 (|0000>+|1111>) + (a-d)/2 (|0011>+|1100>) + (b+c)/2 (|0101>+|1010>) + (b-c)/2 (|0110>+|1001>)",
    },
    CatalogEntry {
        name: "L_abc2",
        parameters: &["a", "b", "c"],
        definition: "(a+b)/2 (|0000>+|1111>) + (a-b)/2 (|0011>+|1100>) + c (|0101>+|1010>) + |0110>",
    },
    CatalogEntry {
        name: "L_a2b2",
        parameters: &["a", "b"],
        definition: "a (|0000>+|1111>) + b (|0101>+|1010>) + |0110> + |0011>",
    },
    CatalogEntry {
        name: "L_ab3",
        parameters: &["a", "b"],
        definition: "a (|0000>+|1111>) + (a+b)/2 (|0101>+|1010>) + (a-b)/2 (|0110>+|1001>) + i/sqrt2 (|0001>+|0010>+|0111>+|1011>)",
    },
    CatalogEntry {
        name: "L_ab3_star",
        parameters: &["a", "b"],
        definition: "as L_ab3 with the signs of |0111> and |1011> flipped",
    },
    CatalogEntry {
        name: "L_a4",
        parameters: &["a"],
        definition: "a (|0000>+|0101>+|1010>+|1111>) + i|0001> + |0110> - i|1011>",
    },
    CatalogEntry {
        name: "L_a2_031",
        parameters: &["a"],
        definition: "a (|0000>+|1111>) + |0011> + |0101> + |0110>",
    },
    CatalogEntry { name: "L_053", parameters: &[], definition: "|0000> + |0101> + |1000> + |1110>" },
    CatalogEntry { name: "L_071", parameters: &[], definition: "|0000> + |1011> + |1101> + |1110>" },
    CatalogEntry { name: "L_031_031", parameters: &[], definition: "|0000> + |0111>" },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Reads `Name` or `Name(p1, p2, …)`. Returns `Ok(None)` when the text is not
/// shaped like a name (so it can be tried as a ket expression instead).
pub fn parse_named(text: &str) -> Result<Option<NamedState>, KetError> {
    let text = text.trim();
    let name_len = text
        .char_indices()
        .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
        .map_or(text.len(), |(i, _)| i);
    let name = &text[..name_len];
    if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return Ok(None);
    }
    let rest = text[name_len..].trim();
    let parameters = if rest.is_empty() {
        Vec::new()
    } else if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(parse_argument).collect::<Result<Vec<_>, _>>()?
        }
    } else {
        return Ok(None);
    };
    if lookup(name).is_none() {
        return Err(KetError::UnknownName(name.to_string()));
    }
    Ok(Some(NamedState { name: name.to_string(), parameters }))
}

fn terms(n: usize, list: &[(&str, Scalar)]) -> Result<StateVector, KetError> {
    Ok(StateVector::from_terms(n, list)?)
}

fn qubit_count(name: &str, s: &Scalar) -> Result<usize, KetError> {
    let v = s.value();
    let bad = || KetError::InvalidParameter { name: name.to_string(), reason: format!("{s} is not a qubit count") };
    if v.im != 0.0 || v.re.fract() != 0.0 {
        return Err(bad());
    }
    let n = v.re.to_usize().ok_or_else(bad)?;
    if !(1..=crate::ket::MAX_QUBITS).contains(&n) {
        return Err(bad());
    }
    Ok(n)
}

fn weight_states(n: usize, k: usize) -> Vec<(String, Scalar)> {
    (0..1usize << n)
        .filter(|i| i.count_ones() as usize == k)
        .map(|i| (format!("{i:0n$b}"), Scalar::one()))
        .collect()
}

fn owned_terms(n: usize, list: Vec<(String, Scalar)>) -> Result<StateVector, KetError> {
    let borrowed: Vec<(&str, Scalar)> = list.iter().map(|(l, c)| (l.as_str(), c.clone())).collect();
    terms(n, &borrowed)
}

/// Builds the named state.
pub fn catalog_state(spec: &NamedState) -> Result<StateVector, KetError> {
    let entry = lookup(&spec.name).ok_or_else(|| KetError::UnknownName(spec.name.clone()))?;
    if spec.parameters.len() != entry.parameters.len() {
        return Err(KetError::WrongParameterCount {
            name: entry.name.to_string(),
            expected: entry.parameters.len(),
            found: spec.parameters.len(),
        });
    }
    let p = &spec.parameters;
    let one = Scalar::one;
    let i = Scalar::i;
    match entry.name {
        "GHZ" => {
            let n = qubit_count(entry.name, &p[0])?;
            owned_terms(n, vec![("0".repeat(n), one()), ("1".repeat(n), one())])
        }
        "W" => {
            let n = qubit_count(entry.name, &p[0])?;
            owned_terms(n, weight_states(n, 1))
        }
        "Dicke" => {
            let k = qubit_count(entry.name, &p[0])?;
            let n = qubit_count(entry.name, &p[1])?;
            if k > n {
                return Err(KetError::InvalidParameter {
                    name: entry.name.into(),
                    reason: format!("weight {k} exceeds {n} qubits"),
                });
            }
            owned_terms(n, weight_states(n, k))
        }
        "Cluster" => terms(4, &[("0000", one()), ("0011", one()), ("1100", one()), ("1111", -&one())]),
        "Upsilon4" => owned_terms(
            4,
            (1..15).map(|idx| (format!("{idx:04b}"), one())).collect(),
        ),
        "G_abcd" => {
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let (s1, s2, s3, s4) = ((a + d).half(), (a - d).half(), (b + c).half(), (b - c).half());
            terms(
                4,
                &[
                    ("0000", s1.clone()),
                    ("1111", s1),
                    ("0011", s2.clone()),
                    ("1100", s2),
                    ("0101", s3.clone()),
                    ("1010", s3),
                    ("0110", s4.clone()),
                    ("1001", s4),
                ],
            )
        }
        "L_abc2" => {
            let (a, b, c) = (&p[0], &p[1], &p[2]);
            let (s1, s2) = ((a + b).half(), (a - b).half());
            terms(
                4,
                &[
                    ("0000", s1.clone()),
                    ("1111", s1),
                    ("0011", s2.clone()),
                    ("1100", s2),
                    ("0101", c.clone()),
                    ("1010", c.clone()),
                    ("0110", one()),
                ],
            )
        }
        "L_a2b2" => {
            let (a, b) = (&p[0], &p[1]);
            terms(
                4,
                &[
                    ("0000", a.clone()),
                    ("1111", a.clone()),
                    ("0101", b.clone()),
                    ("1010", b.clone()),
                    ("0110", one()),
                    ("0011", one()),
                ],
            )
        }
        "L_ab3" | "L_ab3_star" => {
            let (a, b) = (&p[0], &p[1]);
            let (s1, s2) = ((a + b).half(), (a - b).half());
            let t = Scalar::float(C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2));
            let tail = if entry.name == "L_ab3" { t.clone() } else { -&t };
            terms(
                4,
                &[
                    ("0000", a.clone()),
                    ("1111", a.clone()),
                    ("0101", s1.clone()),
                    ("1010", s1),
                    ("0110", s2.clone()),
                    ("1001", s2),
                    ("0001", t.clone()),
                    ("0010", t),
                    ("0111", tail.clone()),
                    ("1011", tail),
                ],
            )
        }
        "L_a4" => {
            let a = &p[0];
            terms(
                4,
                &[
                    ("0000", a.clone()),
                    ("0101", a.clone()),
                    ("1010", a.clone()),
                    ("1111", a.clone()),
                    ("0001", i()),
                    ("0110", one()),
                    ("1011", -&i()),
                ],
            )
        }
        "L_a2_031" => {
            let a = &p[0];
            terms(
                4,
                &[("0000", a.clone()), ("1111", a.clone()), ("0011", one()), ("0101", one()), ("0110", one())],
            )
        }
        "L_053" => terms(4, &[("0000", one()), ("0101", one()), ("1000", one()), ("1110", one())]),
        "L_071" => terms(4, &[("0000", one()), ("1011", one()), ("1101", one()), ("1110", one())]),
        "L_031_031" => terms(4, &[("0000", one()), ("0111", one())]),
        other => unreachable!("catalog entry {other} has no constructor"),
    }
}

/// Resolves `Name(params…)` text to a state.
pub fn named(text: &str) -> Result<StateVector, KetError> {
    match parse_named(text)? {
        Some(spec) => catalog_state(&spec),
        None => Err(KetError::UnknownName(text.to_string())),
    }
}
