use super::*;
use crate::patterns::{enumerate_even, enumerate_odd, DefectPattern, LinkPattern};

fn lp(s: &str) -> LinkPattern {
    s.parse().unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn apply_row_conserves_outcomes_l2() {
    // all 4 tile rows on "()" give valid patterns, one outcome each
    let c2 = lp("()");
    let mut outcomes = Vec::new();
    for bits in 0..4u32 {
        let (c1, loops) = apply_row_bits(&c2, bits).unwrap();
        assert_eq!(c1.circumference(), 2);
        let _ = loops;
        outcomes.push(c1);
    }
    assert_eq!(outcomes.len(), 4);
}

#[test]
fn apply_row_length_mismatch_errors() {
    let c2 = lp("()()");
    let row = TileRow::from_bits(2, 0);
    assert!(matches!(apply_row(&c2, &row), Err(Error::InvalidArgument(_))));
}

#[test]
fn apply_row_defect_propagates() {
    for c2 in enumerate_odd(3).unwrap() {
        for bits in 0..8u32 {
            let (c1, _) = apply_row_bits(&c2, bits).unwrap();
            assert!(c1.defect().is_some());
        }
    }
}

#[test]
fn column_sums_equal_two_to_l() {
    for l in [2usize, 4] {
        let m = transition_matrix::<LinkPattern>(l).unwrap();
        for col in &m.columns {
            assert_eq!(col.iter().map(|&(_, c)| c).sum::<u64>(), 1 << l);
        }
    }
    let m = transition_matrix::<DefectPattern>(3).unwrap();
    for col in &m.columns {
        assert_eq!(col.iter().map(|&(_, c)| c).sum::<u64>(), 8);
    }
}

#[test]
fn loop_counts_do_not_affect_columns() {
    // recompute one column discarding loop counts entirely
    let l = 4;
    let m = transition_matrix::<LinkPattern>(l).unwrap();
    let j = 2;
    let c2 = m.states[j];
    let mut tally: std::collections::HashMap<LinkPattern, u64> = Default::default();
    for bits in 0..1u32 << l {
        let (c1, _ignored_loops) = apply_row_bits(&c2, bits).unwrap();
        *tally.entry(c1).or_insert(0) += 1;
    }
    let mut rebuilt: Vec<(u32, u64)> = tally
        .into_iter()
        .map(|(s, c)| (m.index_of(&s).unwrap() as u32, c))
        .collect();
    rebuilt.sort_unstable_by_key(|&(i, _)| i);
    assert_eq!(rebuilt, m.columns[j]);
}

#[test]
fn brute_force_and_sweep_agree_exactly() {
    // even L = 8 per the design contract, plus odd L = 7
    for l in [2usize, 4, 6, 8] {
        let brute = transition_matrix_with::<LinkPattern>(
            l,
            &BuildOptions {
                strategy: BuildStrategy::BruteForce,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap();
        let sweep = transition_matrix_with::<LinkPattern>(
            l,
            &BuildOptions {
                strategy: BuildStrategy::VertexSweep,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap();
        assert_eq!(brute.states, sweep.states);
        assert_eq!(brute.columns, sweep.columns, "L={l}");
    }
    for l in [3usize, 5, 7] {
        let brute = transition_matrix_with::<DefectPattern>(
            l,
            &BuildOptions {
                strategy: BuildStrategy::BruteForce,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap();
        let sweep = transition_matrix_with::<DefectPattern>(
            l,
            &BuildOptions {
                strategy: BuildStrategy::VertexSweep,
                budget: DEFAULT_BUDGET,
            },
        )
        .unwrap();
        assert_eq!(brute.columns, sweep.columns, "L={l}");
    }
}

#[test]
fn budget_guard_triggers() {
    let err = transition_matrix::<LinkPattern>(14);
    assert!(matches!(err, Err(Error::Budget(_))));
    // and lifts with an explicit budget (checked on the cheap odd side)
    let opts = BuildOptions {
        strategy: BuildStrategy::VertexSweep,
        budget: u64::MAX,
    };
    assert!(transition_matrix_with::<DefectPattern>(3, &opts).is_ok());
}

#[test]
fn stationary_l2_is_half_half() {
    let d = stationary::<LinkPattern>(2).unwrap();
    assert_eq!(d.get(&lp("()")), Some(&rat(1, 2)));
    assert_eq!(d.get(&lp(")(")), Some(&rat(1, 2)));
}

#[test]
fn stationary_l4_matches_known_values() {
    let d = stationary::<LinkPattern>(4).unwrap();
    for s in ["(())", ")(()", "())(", "))(("] {
        assert_eq!(d.get(&lp(s)), Some(&rat(1, 10)), "{s}");
    }
    for s in ["()()", ")()("] {
        assert_eq!(d.get(&lp(s)), Some(&rat(3, 10)), "{s}");
    }
}

#[test]
fn stationary_l6_min_and_ratio() {
    let d = stationary::<LinkPattern>(6).unwrap();
    let summary = summarize_even_stationary(&d).unwrap();
    assert_eq!(summary.min_prob, rat(1, 140));
    assert_eq!(summary.max_over_min, rat(25, 1));
    assert!(summary.all_ratios_integer);
    assert!(summary.nested_attains_min);
    assert!(summary.alternating_attains_max);
}

#[test]
fn stationary_l3_uniform() {
    let d = stationary::<DefectPattern>(3).unwrap();
    for (_, p) in d.iter() {
        assert_eq!(p, &rat(1, 3));
    }
}

#[test]
fn solver_routes_agree() {
    for l in [4usize, 6, 8] {
        let m = transition_matrix::<LinkPattern>(l).unwrap();
        let a = stationary_of(&m, SolveMethod::Elimination).unwrap();
        let b = stationary_of(&m, SolveMethod::Modular).unwrap();
        assert_eq!(a.probs(), b.probs(), "L={l}");
    }
    let m = transition_matrix::<DefectPattern>(5).unwrap();
    let a = stationary_of(&m, SolveMethod::Elimination).unwrap();
    let b = stationary_of(&m, SolveMethod::Modular).unwrap();
    assert_eq!(a.probs(), b.probs());
}

#[test]
fn stationary_invariant_under_rotation_and_reflection() {
    let d = stationary::<LinkPattern>(6).unwrap();
    for (s, p) in d.iter() {
        for shift in 1..6 {
            assert_eq!(d.get(&s.rotate(shift)), Some(p));
        }
        assert_eq!(d.get(&s.reflect()), Some(p));
    }
    let d = stationary::<DefectPattern>(5).unwrap();
    for (s, p) in d.iter() {
        assert_eq!(d.get(&s.rotate(2)), Some(p));
        assert_eq!(d.get(&s.reflect()), Some(p));
    }
}

#[test]
fn tile_letter_swap_leaves_columns_invariant() {
    // reflection symmetry: relabeling A<->B only permutes tile rows, so each
    // column tally is unchanged
    let l = 4;
    let c2 = lp("(())");
    let mut tally_orig: std::collections::HashMap<LinkPattern, u64> = Default::default();
    let mut tally_swap: std::collections::HashMap<LinkPattern, u64> = Default::default();
    for bits in 0..1u32 << l {
        let row = TileRow::from_bits(l, bits);
        let (a, _) = apply_row(&c2, &row).unwrap();
        let (b, _) = apply_row(&c2, &row.swapped()).unwrap();
        *tally_orig.entry(a).or_insert(0) += 1;
        *tally_swap.entry(b).or_insert(0) += 1;
    }
    assert_eq!(tally_orig, tally_swap);
}

#[test]
fn irreducibility_holds_small() {
    for l in [2usize, 4, 6] {
        assert!(transition_matrix::<LinkPattern>(l).unwrap().is_irreducible());
    }
    assert!(transition_matrix::<DefectPattern>(5).unwrap().is_irreducible());
}

#[test]
fn even_state_space_sizes() {
    assert_eq!(enumerate_even(8).unwrap().len(), 70);
    assert_eq!(enumerate_odd(7).unwrap().len(), 35);
}
