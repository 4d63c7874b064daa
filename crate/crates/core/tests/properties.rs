use num_traits::Zero;
use proptest::prelude::*;

use slocckit::classify;
use slocckit::ket::{parse_state, render};
use slocckit::numkit::exact::{gq, gq_frac};
use slocckit::numkit::{exact_rank, ExactMatrix, GaussRational};
use slocckit::partitions::{JordanLabel, Partition};
use slocckit::scalar::Scalar;
use slocckit::tensor::{
    apply_local_operators, coefficient_matrix, random_invertible_local_ops, QubitSplit, StateVector,
};

fn small_gauss() -> impl Strategy<Value = GaussRational> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(re, im, d)| gq_frac(re, d, im, d))
}

fn exact_state(n: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec(small_gauss(), 1 << n)
        .prop_filter("nonzero state", |v| v.iter().any(|z| !z.is_zero()))
        .prop_map(move |v| StateVector::from_exact(n, v).unwrap())
}

/// Row-reduction over Q(i) with plain division.
fn naive_rank(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<GaussRational>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let v = a[r][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        r += 1;
    }
    r
}

proptest! {
    #[test]
    fn partitions_are_order_independent(mut parts in proptest::collection::vec(1usize..6, 0..8), seed in any::<u64>()) {
        let a = Partition::new(parts.clone());
        parts.reverse();
        let shift = (seed as usize) % parts.len().max(1);
        parts.rotate_left(shift);
        let b = Partition::new(parts);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.conjugate().weight(), a.weight());
    }

    #[test]
    fn jordan_labels_ignore_pi_order(pis in proptest::collection::vec(proptest::collection::vec(1usize..4, 1..4), 0..4)) {
        let parts: Vec<Partition> = pis.iter().map(|p| Partition::new(p.clone())).collect();
        let mut reversed = parts.clone();
        reversed.reverse();
        prop_assert_eq!(JordanLabel::new(Partition::empty(), parts), JordanLabel::new(Partition::empty(), reversed));
    }

    #[test]
    fn render_then_parse_round_trips(s in exact_state(3)) {
        let text = render(&s);
        let back = parse_state(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn parser_never_panics(text in "[ |<>01i()+\\-*/.,0-9a-zA-Z_]{0,40}") {
        let _ = parse_state(&text);
    }

    #[test]
    fn bareiss_matches_plain_elimination(
        rows in 1usize..6,
        cols in 1usize..6,
        entries in proptest::collection::vec((-3i64..=3, -3i64..=3), 36),
        zero_mask in proptest::collection::vec(any::<bool>(), 36),
    ) {
        let m = ExactMatrix::from_fn(rows, cols, |i, j| {
            let k = i * 6 + j;
            if zero_mask[k] { gq(0, 0) } else { gq(entries[k].0, entries[k].1) }
        });
        prop_assert_eq!(exact_rank(&m), naive_rank(&m));
    }

    #[test]
    fn local_operators_act_on_coefficients_from_both_sides(s in exact_state(4), seed in any::<u64>()) {
        let ops = random_invertible_local_ops(4, seed, 100.0);
        let split = QubitSplit::default_for(4).unwrap();
        let moved = coefficient_matrix(&apply_local_operators(&s, &ops).unwrap(), &split).unwrap();
        let c = coefficient_matrix(&s, &split).unwrap();
        let expected = &(&ops.kron_of(split.row_qubits()) * &c) * &ops.kron_of(split.column_qubits()).transpose();
        prop_assert!(moved.distance(&expected) <= 1e-10 * expected.frobenius_norm().max(1.0));
    }

    #[test]
    fn labels_ignore_global_scale(s in exact_state(4), re in -3i64..=3, im in 1i64..=3) {
        let scaled = s.scale(&Scalar::int(re, im)).unwrap();
        let (a, b) = (classify(&s).unwrap(), classify(&scaled).unwrap());
        prop_assert_eq!(a.xi, b.xi);
        prop_assert_eq!(a.theta, b.theta);
    }
}
