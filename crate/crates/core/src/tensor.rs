//! State vectors, local operators, and the coefficient-matrix reshaping.
//!
//! Qubit 1 is the most significant bit of a basis label, so `|0110⟩` has index
//! 6 and qubit `q` of an `N`-qubit label sits at bit `N − q`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkit::exact::{gq_frac, to_c64, ExactMatrix, GaussRational};
use crate::numkit::{ComplexMatrix, C64};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("expected {expected} amplitudes for {num_qubits} qubits, got {found}")]
    LengthMismatch { num_qubits: usize, expected: usize, found: usize },
    #[error("all amplitudes vanish")]
    ZeroState,
    #[error("state has {state} qubits but {ops} local operators were supplied")]
    ArityMismatch { state: usize, ops: usize },
    #[error("local operator on qubit {qubit} is singular")]
    Singular { qubit: usize },
    #[error("invalid qubit split: {0}")]
    InvalidSplit(String),
    #[error("classification needs a multiple of 4 qubits, got {0}")]
    NotMultipleOfFour(usize),
}

/// Pure state of `num_qubits` qubits, not necessarily normalized.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
    exact: Option<Vec<GaussRational>>,
}

impl StateVector {
    pub fn new(num_qubits: usize, amplitudes: Vec<Scalar>) -> Result<Self, TensorError> {
        if amplitudes.iter().all(Scalar::is_exact) {
            Self::from_exact(num_qubits, amplitudes.iter().map(|s| s.exact_value().unwrap().clone()).collect())
        } else {
            Self::from_c64(num_qubits, amplitudes.iter().map(Scalar::value).collect())
        }
    }

    pub fn from_c64(num_qubits: usize, amplitudes: Vec<C64>) -> Result<Self, TensorError> {
        check_len(num_qubits, amplitudes.len())?;
        if amplitudes.iter().all(|z| z.norm() == 0.0) {
            return Err(TensorError::ZeroState);
        }
        Ok(StateVector { num_qubits, amplitudes, exact: None })
    }

    pub fn from_exact(num_qubits: usize, amplitudes: Vec<GaussRational>) -> Result<Self, TensorError> {
        check_len(num_qubits, amplitudes.len())?;
        if amplitudes.iter().all(Zero::is_zero) {
            return Err(TensorError::ZeroState);
        }
        Ok(StateVector { num_qubits, amplitudes: amplitudes.iter().map(to_c64).collect(), exact: Some(amplitudes) })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![GaussRational::zero(); 1 << num_qubits];
        amps[index] = GaussRational::one();
        Self::from_exact(num_qubits, amps).expect("basis state is nonzero")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn exact_amplitudes(&self) -> Option<&[GaussRational]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn amplitude(&self, index: usize) -> Scalar {
        match &self.exact {
            Some(e) => Scalar::exact(e[index].clone()),
            None => Scalar::float(self.amplitudes[index]),
        }
    }

    /// Copy with the exact mirror dropped.
    pub fn to_float(&self) -> Self {
        StateVector { num_qubits: self.num_qubits, amplitudes: self.amplitudes.clone(), exact: None }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self, TensorError> {
        let amps = (0..self.amplitudes.len()).map(|i| &self.amplitude(i) * s).collect();
        Self::new(self.num_qubits, amps)
    }

    /// `|ψ⟩ ⊗ |φ⟩`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let dim = other.amplitudes.len();
        let amps = (0..self.amplitudes.len() * dim)
            .map(|i| &self.amplitude(i / dim) * &other.amplitude(i % dim))
            .collect();
        StateVector::new(self.num_qubits + other.num_qubits, amps).expect("product of nonzero states")
    }

    /// Product state whose factor `k` occupies the (1-based) qubits `parts[k].1`,
    /// listed in the factor's own qubit order.
    pub fn product_on(parts: &[(&StateVector, &[usize])]) -> Result<StateVector, TensorError> {
        let total: usize = parts.iter().map(|(s, q)| {
            debug_assert_eq!(s.num_qubits, q.len());
            q.len()
        }).sum();
        let mut seen = vec![false; total + 1];
        for (_, qubits) in parts {
            for &q in qubits.iter() {
                if q == 0 || q > total || seen[q] {
                    return Err(TensorError::InvalidSplit(format!("qubit {q} out of range or repeated")));
                }
                seen[q] = true;
            }
        }
        let amps = (0..1usize << total)
            .map(|idx| {
                parts.iter().fold(Scalar::one(), |acc, (state, qubits)| {
                    let sub = qubits.iter().fold(0usize, |a, &q| (a << 1) | ((idx >> (total - q)) & 1));
                    &acc * &state.amplitude(sub)
                })
            })
            .collect();
        StateVector::new(total, amps)
    }

    /// Sum of `c·|label⟩` terms; labels are bit strings such as `"0110"`.
    pub fn from_terms(num_qubits: usize, terms: &[(&str, Scalar)]) -> Result<StateVector, TensorError> {
        let mut amps = vec![Scalar::zero(); 1 << num_qubits];
        for (label, c) in terms {
            assert_eq!(label.len(), num_qubits, "basis label width");
            let idx = usize::from_str_radix(label, 2).expect("binary basis label");
            amps[idx] = &amps[idx] + c;
        }
        StateVector::new(num_qubits, amps)
    }
}

fn check_len(num_qubits: usize, found: usize) -> Result<(), TensorError> {
    let expected = 1usize.checked_shl(num_qubits as u32).unwrap_or(0);
    if num_qubits == 0 || found != expected {
        return Err(TensorError::LengthMismatch { num_qubits, expected, found });
    }
    Ok(())
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector({} qubits, {}) ", self.num_qubits, if self.is_exact() { "exact" } else { "float" })?;
        let mut first = true;
        for i in 0..self.amplitudes.len() {
            let a = self.amplitude(i);
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{a}|{:0width$b}>", i, width = self.num_qubits)?;
        }
        Ok(())
    }
}

/// Invertible 2×2 operator acting on one qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator {
    m: [[C64; 2]; 2],
    exact: Option<[[GaussRational; 2]; 2]>,
}

impl LocalOperator {
    pub fn from_c64(m: [[C64; 2]; 2]) -> Self {
        LocalOperator { m, exact: None }
    }

    pub fn from_exact(e: [[GaussRational; 2]; 2]) -> Self {
        let m = [[to_c64(&e[0][0]), to_c64(&e[0][1])], [to_c64(&e[1][0]), to_c64(&e[1][1])]];
        LocalOperator { m, exact: Some(e) }
    }

    pub fn identity() -> Self {
        let (o, z) = (GaussRational::one(), GaussRational::zero());
        Self::from_exact([[o.clone(), z.clone()], [z, o]])
    }

    pub fn diag(a: Scalar, d: Scalar) -> Self {
        let z = Scalar::zero();
        Self::from_scalars([[a, z.clone()], [z, d]])
    }

    pub fn from_scalars(m: [[Scalar; 2]; 2]) -> Self {
        let all_exact = m.iter().flatten().all(Scalar::is_exact);
        if all_exact {
            let e = |i: usize, j: usize| m[i][j].exact_value().unwrap().clone();
            Self::from_exact([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
        } else {
            Self::from_c64([[m[0][0].value(), m[0][1].value()], [m[1][0].value(), m[1][1].value()]])
        }
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        self.m
    }

    pub fn exact_matrix(&self) -> Option<&[[GaussRational; 2]; 2]> {
        self.exact.as_ref()
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn exact_det(&self) -> Option<GaussRational> {
        self.exact.as_ref().map(|e| &e[0][0] * &e[1][1] - &e[0][1] * &e[1][0])
    }

    /// 2-norm condition number, from the closed-form singular values.
    pub fn condition_number(&self) -> f64 {
        let fro2: f64 = self.m.iter().flatten().map(|z| z.norm_sqr()).sum();
        let det = self.det().norm();
        if det == 0.0 {
            return f64::INFINITY;
        }
        // s1^2 + s2^2 = fro2, s1 s2 = det
        let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
        let s1 = ((fro2 + disc) / 2.0).sqrt();
        let s2 = det / s1;
        s1 / s2
    }

    fn as_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 2, |i, j| self.m[i][j])
    }

    fn as_exact_matrix(&self) -> Option<ExactMatrix> {
        self.exact.as_ref().map(|e| ExactMatrix::from_fn(2, 2, |i, j| e[i][j].clone()))
    }
}

/// One invertible operator per qubit, `ops[q − 1]` acting on qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperatorSet {
    ops: Vec<LocalOperator>,
}

impl LocalOperatorSet {
    pub fn new(ops: Vec<LocalOperator>) -> Result<Self, TensorError> {
        for (i, op) in ops.iter().enumerate() {
            let singular = match op.exact_det() {
                Some(d) => d.is_zero(),
                None => op.det().norm() == 0.0,
            };
            if singular {
                return Err(TensorError::Singular { qubit: i + 1 });
            }
        }
        Ok(LocalOperatorSet { ops })
    }

    pub fn identity(num_qubits: usize) -> Self {
        LocalOperatorSet { ops: vec![LocalOperator::identity(); num_qubits] }
    }

    /// Identity everywhere except `op` on (1-based) qubit `q`.
    pub fn single(num_qubits: usize, q: usize, op: LocalOperator) -> Result<Self, TensorError> {
        let mut ops = vec![LocalOperator::identity(); num_qubits];
        ops[q - 1] = op;
        Self::new(ops)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[LocalOperator] {
        &self.ops
    }

    pub fn is_exact(&self) -> bool {
        self.ops.iter().all(|o| o.exact.is_some())
    }

    pub fn dets(&self) -> Vec<C64> {
        self.ops.iter().map(LocalOperator::det).collect()
    }

    /// `𝒜_{q₁} ⊗ 𝒜_{q₂} ⊗ …` over the listed (1-based) qubits.
    pub fn kron_of(&self, qubits: &[usize]) -> ComplexMatrix {
        qubits
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, &q| acc.kron(&self.ops[q - 1].as_matrix()))
    }

    pub fn exact_kron_of(&self, qubits: &[usize]) -> Option<ExactMatrix> {
        qubits.iter().try_fold(ExactMatrix::identity(1), |acc, &q| {
            self.ops[q - 1].as_exact_matrix().map(|m| acc.kron(&m))
        })
    }
}

/// Which qubits index the rows of the coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitSplit {
    row_qubits: Vec<usize>,
    column_qubits: Vec<usize>,
}

impl QubitSplit {
    /// Rows = qubits `1…N/2`, columns = the rest.
    pub fn default_for(num_qubits: usize) -> Result<Self, TensorError> {
        Self::new((1..=num_qubits / 2).collect(), num_qubits)
    }

    /// Columns are the complementary qubits in increasing order.
    pub fn new(row_qubits: Vec<usize>, num_qubits: usize) -> Result<Self, TensorError> {
        if num_qubits == 0 || num_qubits % 2 == 1 {
            return Err(TensorError::InvalidSplit(format!("{num_qubits} qubits cannot be split in half")));
        }
        if row_qubits.len() != num_qubits / 2 {
            return Err(TensorError::InvalidSplit(format!(
                "need {} row qubits, got {}",
                num_qubits / 2,
                row_qubits.len()
            )));
        }
        let mut seen = vec![false; num_qubits + 1];
        for &q in &row_qubits {
            if q == 0 || q > num_qubits || seen[q] {
                return Err(TensorError::InvalidSplit(format!("qubit {q} out of range or repeated")));
            }
            seen[q] = true;
        }
        let column_qubits = (1..=num_qubits).filter(|&q| !seen[q]).collect();
        Ok(QubitSplit { row_qubits, column_qubits })
    }

    /// Parses a comma-separated row-qubit list such as `"1,3"`.
    pub fn parse(text: &str, num_qubits: usize) -> Result<Self, TensorError> {
        let rows = text
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| TensorError::InvalidSplit(format!("bad qubit index {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows, num_qubits)
    }

    pub fn row_qubits(&self) -> &[usize] {
        &self.row_qubits
    }

    pub fn column_qubits(&self) -> &[usize] {
        &self.column_qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.row_qubits.len() + self.column_qubits.len()
    }

    fn coordinates(&self, index: usize) -> (usize, usize) {
        let n = self.num_qubits();
        let bit = |q: usize| (index >> (n - q)) & 1;
        let r = self.row_qubits.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        let c = self.column_qubits.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        (r, c)
    }
}

impl fmt::Display for QubitSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.row_qubits), join(&self.column_qubits))
    }
}

fn check_split(state: &StateVector, split: &QubitSplit) -> Result<(), TensorError> {
    if split.num_qubits() != state.num_qubits {
        return Err(TensorError::InvalidSplit(format!(
            "split covers {} qubits, state has {}",
            split.num_qubits(),
            state.num_qubits
        )));
    }
    Ok(())
}

/// Amplitudes reshaped so entry `(r, c)` is the amplitude whose row qubits
/// spell `r` and column qubits spell `c`.
pub fn coefficient_matrix(state: &StateVector, split: &QubitSplit) -> Result<ComplexMatrix, TensorError> {
    check_split(state, split)?;
    let side = 1usize << (state.num_qubits / 2);
    let mut m = ComplexMatrix::zeros(side, side);
    for (idx, &a) in state.amplitudes.iter().enumerate() {
        m[split.coordinates(idx)] = a;
    }
    Ok(m)
}

/// Exact counterpart of [`coefficient_matrix`]; `None` for float states.
pub fn exact_coefficient_matrix(state: &StateVector, split: &QubitSplit) -> Result<Option<ExactMatrix>, TensorError> {
    check_split(state, split)?;
    let Some(exact) = &state.exact else {
        return Ok(None);
    };
    let side = 1usize << (state.num_qubits / 2);
    let mut m = ExactMatrix::zeros(side, side);
    for (idx, a) in exact.iter().enumerate() {
        let (r, c) = split.coordinates(idx);
        m.set(r, c, a.clone());
    }
    Ok(Some(m))
}

/// Flattens a coefficient matrix back into a state (inverse of
/// [`coefficient_matrix`]).
pub fn state_from_coefficients(m: &ComplexMatrix, split: &QubitSplit) -> Result<StateVector, TensorError> {
    let n = split.num_qubits();
    let amps = (0..1usize << n).map(|idx| m[split.coordinates(idx)]).collect();
    StateVector::from_c64(n, amps)
}

/// `𝒜₁ ⊗ … ⊗ 𝒜_N |ψ⟩`, one qubit at a time.
pub fn apply_local_operators(state: &StateVector, ops: &LocalOperatorSet) -> Result<StateVector, TensorError> {
    let n = state.num_qubits;
    if ops.len() != n {
        return Err(TensorError::ArityMismatch { state: n, ops: ops.len() });
    }
    if let (Some(exact), true) = (&state.exact, ops.is_exact()) {
        let mut amps = exact.clone();
        for (k, op) in ops.ops.iter().enumerate() {
            let e = op.exact.as_ref().unwrap();
            let mask = 1usize << (n - 1 - k);
            for i in 0..amps.len() {
                if i & mask == 0 {
                    let (a0, a1) = (amps[i].clone(), amps[i | mask].clone());
                    amps[i] = &e[0][0] * &a0 + &e[0][1] * &a1;
                    amps[i | mask] = &e[1][0] * &a0 + &e[1][1] * &a1;
                }
            }
        }
        return StateVector::from_exact(n, amps);
    }
    let mut amps = state.amplitudes.clone();
    for (k, op) in ops.ops.iter().enumerate() {
        let m = op.m;
        let mask = 1usize << (n - 1 - k);
        for i in 0..amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (amps[i], amps[i | mask]);
                amps[i] = m[0][0] * a0 + m[0][1] * a1;
                amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }
    StateVector::from_c64(n, amps)
}

/// `(g, h)`: products of determinants over the row and the column qubits.
pub fn det_products(ops: &LocalOperatorSet, split: &QubitSplit) -> (C64, C64) {
    let prod = |qs: &[usize]| qs.iter().map(|&q| ops.ops[q - 1].det()).product::<C64>();
    (prod(&split.row_qubits), prod(&split.column_qubits))
}

pub fn exact_det_products(ops: &LocalOperatorSet, split: &QubitSplit) -> Option<(GaussRational, GaussRational)> {
    let prod = |qs: &[usize]| {
        qs.iter().try_fold(GaussRational::one(), |acc, &q| ops.ops[q - 1].exact_det().map(|d| acc * d))
    };
    Some((prod(&split.row_qubits)?, prod(&split.column_qubits)?))
}

/// Entry `k/8 + (l/8)·i` with `k, l` uniform in `[−16, 16]`.
pub(crate) fn random_gauss_entry(rng: &mut ChaCha8Rng) -> GaussRational {
    gq_frac(rng.gen_range(-16..=16), 8, rng.gen_range(-16..=16), 8)
}

/// Random invertible operators with Gaussian-rational entries in `[−2, 2]`,
/// resampled until `|det| ≥ 10⁻³` and the condition number is at most
/// `condition_cap`. Deterministic per seed.
pub fn random_invertible_local_ops(num_qubits: usize, seed: u64, condition_cap: f64) -> LocalOperatorSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops = (0..num_qubits)
        .map(|_| loop {
            let e = [
                [random_gauss_entry(&mut rng), random_gauss_entry(&mut rng)],
                [random_gauss_entry(&mut rng), random_gauss_entry(&mut rng)],
            ];
            let op = LocalOperator::from_exact(e);
            if op.det().norm() >= 1e-3 && op.condition_number() <= condition_cap {
                break op;
            }
        })
        .collect();
    LocalOperatorSet { ops }
}
