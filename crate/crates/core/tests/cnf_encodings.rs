//! Exhaustive truth-table checks of gates, cardinality constraints, counters
//! and bit-vector arithmetic.

mod common;

use common::{fix, projections, solve, solve_with};
use proptest::prelude::*;
use reachsat::cnf::{parse_dimacs, BitVec, Cnf, CnfBuilder, Lit, Valuation};

/// Checks that for every assignment of `inputs`, the gate output is forced to
/// `expected(mask)`.
fn check_gate(b: &CnfBuilder, inputs: &[Lit], out: Lit, expected: impl Fn(u64) -> bool) {
    for mask in 0..1u64 << inputs.len() {
        let units = fix(inputs, mask);
        let want = expected(mask);
        let m = solve_with(b.cnf(), &units).expect("gate must accept every input");
        assert_eq!(m.value(out), want, "mask {mask:b}");
        let mut flipped = units.clone();
        flipped.push(if want { !out } else { out });
        assert!(
            solve_with(b.cnf(), &flipped).is_none(),
            "output not forced for {mask:b}"
        );
    }
}

#[test]
fn and_gate_truth_table() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(2);
    let g = b.gate_and(&xs);
    // enumerate all 3-variable models of the gate clauses
    let mut lits = xs.clone();
    lits.push(g);
    let models = projections(b.cnf(), &lits);
    let expected: std::collections::BTreeSet<Vec<bool>> = (0..4u8)
        .map(|m| {
            let (a, c) = (m & 1 == 1, m & 2 == 2);
            vec![a, c, a && c]
        })
        .collect();
    assert_eq!(models, expected);
}

#[test]
fn wide_gates_truth_tables() {
    for n in 1..=5 {
        let mut b = CnfBuilder::new();
        let xs = b.new_vars(n);
        let and = b.gate_and(&xs);
        let or = b.gate_or(&xs);
        let full = (1u64 << n) - 1;
        check_gate(&b, &xs, and, |m| m == full);
        check_gate(&b, &xs, or, |m| m != 0);
    }
}

#[test]
fn binary_gates_truth_tables() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(2);
    let imp = b.gate_implies(xs[0], xs[1]);
    let iff = b.gate_iff(xs[0], xs[1]);
    let xor = b.gate_xor(xs[0], xs[1]);
    let bit = |m: u64, i: usize| m >> i & 1 == 1;
    check_gate(&b, &xs, imp, |m| !bit(m, 0) || bit(m, 1));
    check_gate(&b, &xs, iff, |m| bit(m, 0) == bit(m, 1));
    check_gate(&b, &xs, xor, |m| bit(m, 0) != bit(m, 1));
}

#[test]
fn cardinality_truth_tables() {
    for n in 1..=8 {
        for kind in 0..3 {
            let mut b = CnfBuilder::new();
            let xs = b.new_vars(n);
            match kind {
                0 => b.at_most_one(&xs),
                1 => b.at_least_one(&xs),
                _ => b.exactly_one(&xs),
            }
            for mask in 0..1u64 << n {
                let ones = mask.count_ones();
                let want = match kind {
                    0 => ones <= 1,
                    1 => ones >= 1,
                    _ => ones == 1,
                };
                let got = solve_with(b.cnf(), &fix(&xs, mask)).is_some();
                assert_eq!(got, want, "n={n} kind={kind} mask={mask:b}");
            }
        }
    }
}

#[test]
fn exactly_one_of_four_has_four_models() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(4);
    b.exactly_one(&xs);
    assert_eq!(projections(b.cnf(), &xs).len(), 4);
}

#[test]
fn unary_counter_thresholds() {
    for n in 1..=8 {
        let mut b = CnfBuilder::new();
        let xs = b.new_vars(n);
        let count = b.unary_count(&xs);
        assert_eq!(count.len(), n);
        for mask in 0..1u64 << n {
            let k = mask.count_ones() as usize;
            let units = fix(&xs, mask);
            let m = solve_with(b.cnf(), &units).expect("counter accepts every input");
            for (i, &o) in count.outputs().iter().enumerate() {
                assert_eq!(m.value(o), k >= i + 1, "n={n} mask={mask:b} o{}", i + 1);
                let mut flipped = units.clone();
                flipped.push(if k > i { !o } else { o });
                assert!(solve_with(b.cnf(), &flipped).is_none());
            }
            assert_eq!(count.value(&m), k);
        }
    }
}

#[test]
fn capped_counter_thresholds() {
    for n in 2..=7 {
        for cap in 1..n {
            let mut b = CnfBuilder::new();
            let xs = b.new_vars(n);
            let count = b.unary_count_upto(&xs, cap);
            assert_eq!(count.len(), cap);
            for mask in 0..1u64 << n {
                let k = mask.count_ones() as usize;
                let units = fix(&xs, mask);
                let m = solve_with(b.cnf(), &units).expect("counter accepts every input");
                for (i, &o) in count.outputs().iter().enumerate() {
                    let mut flipped = units.clone();
                    flipped.push(if k > i { !o } else { o });
                    assert!(
                        solve_with(b.cnf(), &flipped).is_none(),
                        "n={n} cap={cap} mask={mask:b} o{}",
                        i + 1
                    );
                }
                assert_eq!(count.value(&m), k.min(cap));
            }
        }
    }
}

#[test]
fn five_inputs_three_true() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(5);
    let count = b.unary_count(&xs);
    let m = solve_with(b.cnf(), &fix(&xs, 0b10101)).unwrap();
    let outs: Vec<bool> = count.outputs().iter().map(|&o| m.value(o)).collect();
    assert_eq!(outs, vec![true, true, true, false, false]);
}

#[test]
fn all_false_inputs_give_all_false_outputs() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(6);
    let count = b.unary_count(&xs);
    let m = solve_with(b.cnf(), &fix(&xs, 0)).unwrap();
    assert!(count.outputs().iter().all(|&o| !m.value(o)));
}

#[test]
fn fixed_counts_match_binomials() {
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    for n in 1..=6usize {
        for k in 0..=n {
            let mut b = CnfBuilder::new();
            let xs = b.new_vars(n);
            let count = b.unary_count(&xs);
            b.fix_count(&count, k).unwrap();
            assert_eq!(
                projections(b.cnf(), &xs).len() as u64,
                binom(n as u64, k as u64),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn fix_zero_leaves_only_all_false() {
    let mut b = CnfBuilder::new();
    let xs = b.new_vars(3);
    let count = b.unary_count(&xs);
    b.fix_count(&count, 0).unwrap();
    let models = projections(b.cnf(), &xs);
    assert_eq!(models.into_iter().collect::<Vec<_>>(), vec![vec![false; 3]]);
}

#[test]
fn bounds_ge_and_le() {
    for n in 1..=5usize {
        for k in 0..=n {
            let mut b = CnfBuilder::new();
            let xs = b.new_vars(n);
            let count = b.unary_count(&xs);
            let mut ge = b.clone();
            ge.bound_ge(&count, k).unwrap();
            let mut le = b.clone();
            le.bound_le(&count, k).unwrap();
            for mask in 0..1u64 << n {
                let ones = mask.count_ones() as usize;
                assert_eq!(solve_with(ge.cnf(), &fix(&xs, mask)).is_some(), ones >= k);
                assert_eq!(solve_with(le.cnf(), &fix(&xs, mask)).is_some(), ones <= k);
            }
        }
    }
}

#[test]
fn successor_is_increment_without_overflow() {
    for width in 1..=4usize {
        let mut b = CnfBuilder::new();
        let x = b.new_bitvec(width);
        let y = b.new_bitvec(width);
        let guard = b.new_var();
        b.bitvec_successor(&x, &y, guard).unwrap();
        let top = 1u64 << width;
        for xv in 0..top {
            for yv in 0..top {
                for g in [false, true] {
                    let mut units = fix(x.bits(), xv);
                    units.extend(fix(y.bits(), yv));
                    units.push(if g { guard } else { !guard });
                    let want = !g || (xv + 1 < top && yv == xv + 1);
                    assert_eq!(
                        solve_with(b.cnf(), &units).is_some(),
                        want,
                        "w={width} x={xv} y={yv} g={g}"
                    );
                }
            }
        }
    }
}

#[test]
fn successor_examples() {
    let mut b = CnfBuilder::new();
    let x = b.new_bitvec(3);
    let y = b.new_bitvec(3);
    let t = b.true_lit();
    b.bitvec_successor(&x, &y, t).unwrap();
    let m = solve_with(b.cnf(), &fix(x.bits(), 5)).unwrap();
    assert_eq!(y.value(&m), 6);
    assert!(solve_with(b.cnf(), &fix(x.bits(), 7)).is_none());
}

#[test]
fn eq_const_examples() {
    let mut b = CnfBuilder::new();
    let x = b.new_bitvec(3);
    let t = b.true_lit();
    let mut zero = b.clone();
    zero.bitvec_eq_const(&x, 0, t).unwrap();
    let m = solve(zero.cnf()).unwrap();
    assert!(x.bits().iter().all(|&l| !m.value(l)));
    b.bitvec_eq_const(&x, 5, t).unwrap();
    let m = solve(b.cnf()).unwrap();
    let bits: Vec<bool> = x.bits().iter().map(|&l| m.value(l)).collect();
    assert_eq!(bits, vec![true, false, true]);
}

#[test]
fn eq_const_inactive_guard_leaves_vector_free() {
    for width in 1..=4 {
        let mut b = CnfBuilder::new();
        let x = b.new_bitvec(width);
        let guard = b.new_var();
        b.bitvec_eq_const(&x, 1, guard).unwrap();
        b.add_unit(!guard);
        assert_eq!(projections(b.cnf(), x.bits()).len(), 1 << width);
    }
}

#[test]
fn le_const_exhaustive() {
    for width in 1..=4usize {
        for m in 0..(1u64 << width) {
            let mut b = CnfBuilder::new();
            let x: BitVec = b.new_bitvec(width);
            b.bitvec_le_const(&x, m);
            for v in 0..(1u64 << width) {
                assert_eq!(
                    solve_with(b.cnf(), &fix(x.bits(), v)).is_some(),
                    v <= m,
                    "w={width} m={m} v={v}"
                );
            }
        }
    }
}

fn arb_clauses() -> impl Strategy<Value = (u32, Vec<Vec<i32>>)> {
    (1u32..12).prop_flat_map(|n| {
        let lit = (1..=n as i32, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(lit, 1..5), 0..20),
        )
    })
}

proptest! {
    #[test]
    fn dimacs_round_trip((n, clauses) in arb_clauses()) {
        let mut cnf = Cnf::new(n);
        for c in &clauses {
            let lits: Vec<Lit> = c.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect();
            cnf.add_clause(&lits);
        }
        let text = cnf.to_dimacs_string();
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(back.clauses(), cnf.clauses());
        prop_assert_eq!(back.num_vars(), cnf.num_vars());
    }

    #[test]
    fn tautologies_do_not_change_satisfiability((n, clauses) in arb_clauses(), v in 1i32..12) {
        let mut cnf = Cnf::new(n.max(v as u32));
        for c in &clauses {
            let lits: Vec<Lit> = c.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect();
            cnf.add_clause(&lits);
        }
        let before = solve(&cnf).is_some();
        let mut with = cnf.clone();
        let l = Lit::from_dimacs(v).unwrap();
        with.add_clause(&[l, !l]);
        prop_assert_eq!(with.num_clauses(), cnf.num_clauses());
        prop_assert_eq!(solve(&with).is_some(), before);
    }
}
