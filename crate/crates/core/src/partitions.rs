//! Integer partitions and the label types built from them.
//!
//! A [`Partition`] is the currency of the whole classification: the
//! nonzero-eigenvalue multiplicities of a spectrum form one, the Jordan block
//! sizes of every eigenvalue form one, and the zero-eigenvalue block sizes form
//! a *tri-even* one (an even number of parts, every even part repeated an even
//! number of times).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("tri-even partitions are only defined for even weights, got {0}")]
    OddWeight(usize),
    #[error("zero-eigenvalue block sizes {0} do not form a tri-even partition")]
    NotTriEven(Partition),
}

/// Weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let Some(&largest) = self.0.first() else {
            return Partition::empty();
        };
        Partition(
            (1..=largest)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// part -> multiplicity, ascending by part.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Even number of parts, and every even part occurs an even number of times.
    pub fn is_tri_even(&self) -> bool {
        self.0.len() % 2 == 0
            && self
                .multiplicities()
                .iter()
                .all(|(part, mult)| part % 2 == 1 || mult % 2 == 0)
    }

    /// True for `(1, 1, …, 1)`.
    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Larger weight first, then lexicographically larger parts first. Sorting a
/// slice ascending under this order puts it in canonical (descending) order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight()
            .cmp(&self.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Spectrum signature `(2k; ℓ₁, …, ℓ_s)`: half the zero-eigenvalue multiplicity
/// and the multiplicities of the distinct `±λ` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpectrumSignature {
    pub k: usize,
    pub ells: Partition,
}

impl SpectrumSignature {
    pub fn new(k: usize, ells: Partition) -> Self {
        SpectrumSignature { k, ells }
    }

    /// `k + ℓ₁ + … + ℓ_s`, which is `2^{2n}` for a `4n`-qubit state.
    pub fn half_dimension(&self) -> usize {
        self.k + self.ells.weight()
    }

    /// `2(ℓ₁ + … + ℓ_s) + 2k = 2^{2n+1}`.
    pub fn satisfies_am_equation(&self, n: u32) -> bool {
        2 * self.ells.weight() + 2 * self.k == 1usize << (2 * n + 1)
    }
}

impl fmt::Display for SpectrumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", 2 * self.k)?;
        for (i, l) in self.ells.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for SpectrumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Jordan label `{τ; π₁, …, π_s}`: zero-eigenvalue block sizes plus the
/// unordered multiset of block-size partitions of the nonzero pairs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanLabel {
    pub tau: Partition,
    pub pis: Vec<Partition>,
}

impl JordanLabel {
    /// Canonicalizes the multiset order of `pis`.
    pub fn new(tau: Partition, mut pis: Vec<Partition>) -> Self {
        pis.sort();
        JordanLabel { tau, pis }
    }

    /// Like [`JordanLabel::new`] but rejects a zero part that is not tri-even.
    pub fn checked(tau: Partition, pis: Vec<Partition>) -> Result<Self, PartitionError> {
        if !tau.is_tri_even() {
            return Err(PartitionError::NotTriEven(tau));
        }
        Ok(JordanLabel::new(tau, pis))
    }

    pub fn xi(&self) -> SpectrumSignature {
        SpectrumSignature {
            k: self.tau.weight() / 2,
            ells: Partition::new(self.pis.iter().map(Partition::weight)),
        }
    }
}

impl Ord for JordanLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xi()
            .cmp(&other.xi())
            .then_with(|| self.tau.cmp(&other.tau))
            .then_with(|| self.pis.cmp(&other.pis))
    }
}

impl PartialOrd for JordanLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for JordanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        if self.tau.is_empty() {
            write!(f, "∅")?;
        } else {
            write!(f, "{}", self.tau)?;
        }
        write!(f, ";")?;
        for (i, p) in self.pis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for JordanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `m`, largest parts first: `(3), (2,1), (1,1,1)`.
pub fn enumerate_partitions(m: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// `P(m)`, with `P(0) = 1`.
pub fn partition_count(m: usize) -> u64 {
    let mut table = vec![0u64; m + 1];
    table[0] = 1;
    for part in 1..=m {
        for total in part..=m {
            table[total] += table[total - part];
        }
    }
    table[m]
}

pub fn tri_even_partitions(two_k: usize) -> Result<Vec<Partition>, PartitionError> {
    if two_k % 2 == 1 {
        return Err(PartitionError::OddWeight(two_k));
    }
    Ok(enumerate_partitions(two_k)
        .into_iter()
        .filter(Partition::is_tri_even)
        .collect())
}

/// `P*(2k)`.
pub fn tri_even_count(two_k: usize) -> Result<u64, PartitionError> {
    tri_even_partitions(two_k).map(|v| v.len() as u64)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n.saturating_sub(k));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of unordered `j`-tuples of partitions of `l`: `C(j + P(l) − 1, j)`.
pub fn rho(l: usize, j: usize) -> BigUint {
    let boxes = partition_count(l);
    binomial(j as u64 + boxes - 1, j as u64)
}

fn half_dim(n: u32) -> usize {
    1usize << (2 * n)
}

/// Every spectrum signature for `4n` qubits, `k` ascending.
pub fn enumerate_spectrum_types(n: u32) -> Vec<SpectrumSignature> {
    let dim = half_dim(n);
    (0..=dim)
        .flat_map(|k| {
            enumerate_partitions(dim - k)
                .into_iter()
                .map(move |ells| SpectrumSignature { k, ells })
        })
        .collect()
}

/// `Σ_{i=0}^{2^{2n}} P(i)`.
pub fn spectrum_type_count(n: u32) -> u64 {
    (0..=half_dim(n)).map(partition_count).sum()
}

/// Every unordered choice of one partition of `ℓᵢ` for each part of `ells`.
fn pi_multisets(ells: &Partition) -> Vec<Vec<Partition>> {
    let mut acc: Vec<Vec<Partition>> = vec![Vec::new()];
    for (&l, &j) in ells.multiplicities().iter() {
        let choices = enumerate_partitions(l);
        let mut combos = Vec::new();
        multisets(&choices, j, 0, &mut Vec::new(), &mut combos);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                combos.iter().map(move |combo| {
                    let mut v = prefix.clone();
                    v.extend(combo.iter().cloned());
                    v
                })
            })
            .collect();
    }
    acc
}

fn multisets(
    items: &[Partition],
    size: usize,
    start: usize,
    current: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for i in start..items.len() {
        current.push(items[i].clone());
        multisets(items, size, i, current, out);
        current.pop();
    }
}

/// Streams every Jordan label for `4n` qubits, skipping the all-ones zero
/// partition of the vanishing state.
pub fn for_each_sjnf_type(n: u32, mut f: impl FnMut(JordanLabel)) {
    let dim = half_dim(n);
    for signature in enumerate_spectrum_types(n) {
        let taus = tri_even_partitions(2 * signature.k).expect("2k is even");
        let pis = pi_multisets(&signature.ells);
        for tau in &taus {
            if tau.weight() == 2 * dim && tau.is_all_ones() {
                continue;
            }
            for choice in &pis {
                f(JordanLabel::new(tau.clone(), choice.clone()));
            }
        }
    }
}

pub fn enumerate_sjnf_types(n: u32) -> Vec<JordanLabel> {
    let mut out = Vec::new();
    for_each_sjnf_type(n, |label| out.push(label));
    out
}

/// `η = Σ_k P*(2k) Σ_{ϖ ⊢ 2^{2n}−k} Π ρ(ℓ, mult(ℓ))`; the family count is `η − 1`.
pub fn eta(n: u32) -> BigUint {
    let dim = half_dim(n);
    let mut total = BigUint::default();
    for k in 0..=dim {
        let tri_even = tri_even_count(2 * k).expect("2k is even");
        let mut inner = BigUint::default();
        for varpi in enumerate_partitions(dim - k) {
            let mut term = BigUint::one();
            for (&l, &j) in varpi.multiplicities().iter() {
                // rho(l, 1) = P(l) covers the simple parts.
                term *= rho(l, j);
            }
            inner += term;
        }
        total += inner * tri_even;
    }
    total
}
