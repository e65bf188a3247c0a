use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subshift_core::applications::nonrepetitive::nonrepetitive_feasible;
use subshift_core::applications::theorem8::random_premise_counts;
use subshift_core::applications::{
    compare_pavlov, eq7_scan, kolmogorov_constant, theorem8_bound, KolmogorovQuery, Theorem8Case,
};
use subshift_core::oracle::{
    count_admissible_on_support, count_admissible_words, growth_transfer_matrix, profile_of, profile_of_patterns,
    GeneralPatternSet, TransferAutomaton, WordSet,
};
use subshift_core::series::Potential;
use subshift_core::{
    evaluate_potential, min_convergent_beta, solve_beta, ConditionMode, FamilyTerm, SizeProfile, WeightMode,
};

fn term() -> impl Strategy<Value = FamilyTerm> {
    prop_oneof![
        (1u32..=6, 1u64..=8).prop_map(|(c, s)| FamilyTerm::finite(c as f64, s)),
        (1u64..=6, 1u64..=3).prop_map(|(first, step)| FamilyTerm::one_per_size(first, step)),
        (0.05f64..2.0, 0.5f64..3.0, 0u32..=2, 1u64..=3, 1u64..=3, 0i64..=2)
            .prop_map(|(k, r, p, n, s, o)| FamilyTerm::family(k, r, p, n, s, o)),
    ]
}

fn profile() -> impl Strategy<Value = SizeProfile> {
    (2u32..=12, vec(term(), 1..=4)).prop_map(|(q, terms)| SizeProfile::new(q, terms))
}

fn mode() -> impl Strategy<Value = WeightMode> {
    prop_oneof![
        Just(WeightMode::General),
        Just(WeightMode::ZConnected),
        (1.0f64..2.0, 0.0f64..1.0).prop_map(|(c0, c1)| WeightMode::Custom { c0, c1 }),
    ]
}

fn word_set(max_words: usize) -> impl Strategy<Value = WordSet> {
    (2u32..=4).prop_flat_map(move |q| {
        vec(vec(0..q as u8, 1..=6), 0..=max_words).prop_map(move |mut words| {
            words.sort();
            words.dedup();
            WordSet::new(q, words).unwrap()
        })
    })
}

/// A point of `(edge, |A|]`, or `None` when that interval is empty.
fn point_in_domain(p: &SizeProfile, u: f64) -> Option<f64> {
    let edge = min_convergent_beta(p);
    let q = p.alphabet_size as f64;
    (edge < q).then_some(edge + (q - edge) * u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn g_is_convex(p in profile(), m in mode(), u in 1e-3f64..1.0, v in 1e-3f64..1.0) {
        let pot = Potential::new(&p, m).unwrap();
        if let (Some(a), Some(b)) = (point_in_domain(&p, u), point_in_domain(&p, v)) {
            let mid = pot.g(0.5 * (a + b));
            let chord = 0.5 * (pot.g(a) + pot.g(b));
            prop_assert!(mid <= chord * (1.0 + 1e-12), "g(mid) = {} > {}", mid, chord);
        }
    }

    #[test]
    fn sum_strictly_decreasing(p in profile(), m in mode(), u in 1e-3f64..0.9, du in 1e-2f64..0.1) {
        prop_assume!(p.is_nontrivial());
        let pot = Potential::new(&p, m).unwrap();
        if let (Some(a), Some(b)) = (point_in_domain(&p, u), point_in_domain(&p, u + du)) {
            prop_assert!(pot.sum(a) > pot.sum(b));
        }
    }

    #[test]
    fn splitting_a_finite_term_is_neutral(count in 1u32..=12, size in 1u64..=8, rest in profile(), m in mode(), u in 1e-3f64..1.0) {
        let mut whole = rest.clone();
        whole.terms.push(FamilyTerm::finite(count as f64, size));
        let mut split = rest.clone();
        split.terms.extend((0..count).map(|_| FamilyTerm::finite(1.0, size)));
        if let Some(beta) = point_in_domain(&rest, u) {
            let a = evaluate_potential(&whole, m, beta).unwrap().value;
            let b = evaluate_potential(&split, m, beta).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{} vs {}", a, b);
        }
    }

    #[test]
    fn closed_form_matches_truncated_sum(t in term(), m in mode(), u in 0.05f64..0.9) {
        prop_assume!(!t.finite);
        let beta = (t.rho / u).powf(1.0 / t.size_slope as f64);
        let p = SizeProfile::new(2, vec![t]);
        let closed = Potential::new(&p, m).unwrap().sum(beta);
        let direct: f64 = (t.n_start..t.n_start + 10_000)
            .map(|n| {
                let ln = t.kappa.ln() + t.degree as f64 * (n as f64).ln() + n as f64 * t.rho.ln()
                    + (1 - t.size(n)) as f64 * beta.ln();
                m.weight(t.size(n)) * ln.exp()
            })
            .sum();
        prop_assert!((closed - direct).abs() <= 1e-9 * direct, "{} vs {}", closed, direct);
    }

    #[test]
    fn bracketing_is_sound(p in profile(), m in mode()) {
        let s = solve_beta(&p, m, ConditionMode::NonStrict).unwrap();
        if s.feasible {
            let phi = |b: f64| evaluate_potential(&p, m, b).unwrap().value;
            prop_assert!(phi(s.beta_star) >= -1e-9);
            prop_assert!(phi(s.beta_star * (1.0 + 1e-6)) < 0.0);
            prop_assert!(s.beta_low <= s.beta_star);
        }
    }

    #[test]
    fn strict_never_exceeds_non_strict(p in profile(), m in mode(), eps in 1e-9f64..1e-1) {
        let loose = solve_beta(&p, m, ConditionMode::NonStrict).unwrap();
        let tight = solve_beta(&p, m, ConditionMode::Strict { margin: eps }).unwrap();
        if tight.feasible {
            prop_assert!(loose.feasible);
            prop_assert!(tight.beta_star <= loose.beta_star);
        }
    }

    #[test]
    fn general_weight_is_harder(p in profile()) {
        let g = solve_beta(&p, WeightMode::General, ConditionMode::NonStrict).unwrap();
        let z = solve_beta(&p, WeightMode::ZConnected, ConditionMode::NonStrict).unwrap();
        if g.feasible {
            prop_assert!(z.feasible);
            prop_assert!(g.beta_star <= z.beta_star + 1e-12);
        }
    }

    #[test]
    fn pavlov_is_dominated(p in profile()) {
        prop_assume!(p.is_nontrivial());
        let cmp = compare_pavlov(&p).unwrap();
        if cmp.pavlov.k_best >= 1 {
            prop_assert!(cmp.solution.feasible);
            prop_assert!(cmp.solution.beta_star > cmp.pavlov.k_best as f64);
        }
    }

    #[test]
    fn kolmogorov_identity(d in 0.01f64..0.99, v in 0.01f64..0.99) {
        let beta = d.exp2() + (2.0 - d.exp2()) * v;
        let c = kolmogorov_constant(KolmogorovQuery { d, beta }).unwrap().c;
        let residual = 2.0 - (1.0 - c + d).exp2() * beta / (beta - d.exp2()) - beta;
        prop_assert!(residual.abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_converges_to_non_strict(p in profile(), m in mode()) {
        let loose = solve_beta(&p, m, ConditionMode::NonStrict).unwrap();
        let mut last = f64::NEG_INFINITY;
        for eps in [1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12] {
            let tight = solve_beta(&p, m, ConditionMode::Strict { margin: eps }).unwrap();
            if tight.feasible {
                prop_assert!(tight.beta_star >= last);
                last = tight.beta_star;
            }
        }
        if loose.feasible && loose.peak_residual > 1e-6 {
            prop_assert!((loose.beta_star - last).abs() <= 1e-6 * loose.beta_star, "{} vs {}", loose.beta_star, last);
        }
    }

    #[test]
    fn forbidding_more_never_grows(ws in word_set(4), extra in vec(0u8..2, 1..=5)) {
        let mut words = ws.words().to_vec();
        prop_assume!(!words.contains(&extra));
        words.push(extra);
        let bigger = WordSet::new(ws.alphabet_size(), words).unwrap();
        let small = TransferAutomaton::build(&ws).unwrap().counts(14).unwrap();
        let large = TransferAutomaton::build(&bigger).unwrap().counts(14).unwrap();
        prop_assert!(small.iter().zip(&large).all(|(a, b)| b <= a));
        prop_assert!(growth_transfer_matrix(&bigger).unwrap() <= growth_transfer_matrix(&ws).unwrap() + 1e-9);
    }

    #[test]
    fn automaton_counts_match_enumeration(ws in word_set(5)) {
        let q = ws.alphabet_size() as f64;
        let n_max = (1..=15).take_while(|&n| q.powi(n) <= 1e6).last().unwrap() as usize;
        let counts = TransferAutomaton::build(&ws).unwrap().counts(n_max).unwrap();
        for n in 1..=n_max {
            prop_assert_eq!(counts[n - 1], count_admissible_words(&ws, n).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn z_bound_is_sound(ws in word_set(5)) {
        let s = solve_beta(&profile_of(&ws), WeightMode::ZConnected, ConditionMode::NonStrict).unwrap();
        if s.feasible {
            prop_assert!(s.beta_star <= growth_transfer_matrix(&ws).unwrap() + 1e-6);
        }
    }

    #[test]
    fn general_bound_is_sound_on_supports(ws in word_set(4), coords in vec(-20i32..=20, 1..=14)) {
        let ps = GeneralPatternSet::from_words(&ws);
        let s = solve_beta(&profile_of_patterns(&ps), WeightMode::General, ConditionMode::NonStrict).unwrap();
        let mut support = coords;
        support.sort();
        support.dedup();
        let q = ws.alphabet_size() as f64;
        while q.powi(support.len() as i32) > 1e6 {
            support.pop();
        }
        if s.feasible {
            let count = count_admissible_on_support(&ps, &support).unwrap() as f64;
            let floor = s.beta_star.powi(support.len() as i32);
            prop_assert!(count >= floor * (1.0 - 1e-12), "{} < {}", count, floor);
        }
    }

    #[test]
    fn theorem8_premise_implies_bound(seed in any::<u64>(), q in 4u32..=30, case in 1u8..=3) {
        let case = Theorem8Case::from_index(case).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let counts = random_premise_counts(&mut rng, q, case, 12);
        let out = theorem8_bound(q, &counts, case).unwrap();
        if out.premise_holds {
            prop_assert!(out.verified, "{:?}", out);
        }
    }

    #[test]
    fn eq7_is_monotone_once_true(beta in 1.6f64..1.99) {
        let scan = eq7_scan(beta, 1..=80).unwrap();
        if let Some(first) = scan.iter().position(|c| c.holds) {
            prop_assert!(scan[first..].iter().all(|c| c.holds));
        }
    }

    #[test]
    fn profile_json_round_trip(p in profile()) {
        prop_assert_eq!(SizeProfile::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn word_set_json_round_trip(ws in word_set(5)) {
        prop_assert_eq!(WordSet::from_json(&ws.to_json()).unwrap(), ws);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn larger_alphabet_only_helps(s in 2u64..=6, a in 20u32..2000, step in 1u32..500) {
        if nonrepetitive_feasible(s, a).unwrap() {
            prop_assert!(nonrepetitive_feasible(s, a + step).unwrap());
        }
    }
}
