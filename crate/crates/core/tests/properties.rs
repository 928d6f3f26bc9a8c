use std::sync::Arc;

use proptest::prelude::*;

use center_string::closest_string::{solve_closest_string, ClosestStringConfig};
use center_string::closest_substring::{solve_small_substring, solve_substring, SubstringConfig};
use center_string::exact::{exact_closest_string, exact_closest_substring};
use center_string::io::{generate_planted, InstanceFile, PlantedParams};
use center_string::lp_round::{
    build_restricted, enumerate_small_p, round_derandomized, solve_lp, solve_restricted, RoundingConfig,
    DEFAULT_ENUM_BUDGET,
};
use center_string::{
    agreement_positions, cost_string, cost_substring, Alphabet, Error, PositionSet, Seq, StringInstance,
    SubstringInstance,
};

fn binary_rows(max_n: usize, max_m: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0u8..2, m), n))
}

fn instance(rows: &[Vec<u8>], sigma: usize) -> StringInstance {
    let a = Arc::new(Alphabet::new("ACGT".chars().take(sigma.max(2))).unwrap());
    StringInstance::new(rows.iter().map(|r| Seq::from_indices(&a, r.clone()).unwrap()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closest_string_between_oracle_and_bound(rows in binary_rows(5, 10), r in 2usize..=3, seed in any::<u64>()) {
        let inst = instance(&rows, 2);
        let opt = exact_closest_string(&inst, 1 << 22).unwrap().radius;
        let mut cfg = ClosestStringConfig { r, ..ClosestStringConfig::default() };
        cfg.rounding.rng_seed = seed;
        let sol = solve_closest_string(&inst, &cfg).unwrap();
        prop_assert_eq!(cost_string(&inst, &sol.center).unwrap(), sol.radius);
        prop_assert!(sol.radius >= opt);
        prop_assert!(sol.radius as f64 <= cfg.ratio_bound() * opt as f64 + 1e-9);
    }

    #[test]
    fn free_positions_bounded_by_r_times_radius(rows in binary_rows(5, 10)) {
        let inst = instance(&rows, 2);
        let opt = exact_closest_string(&inst, 1 << 22).unwrap().radius;
        let r = inst.n().min(3);
        let q = agreement_positions(&inst.strings()[..r]).unwrap();
        prop_assert!(q.complement().len() <= r * opt);
    }

    #[test]
    fn lp_and_rounding_bracket_the_restricted_optimum(
        rows in (2usize..=5, 2usize..=8).prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0u8..3, m), n)),
        mask in prop::collection::vec(any::<bool>(), 8),
    ) {
        let inst = instance(&rows, 3);
        let m = inst.m();
        let free: Vec<usize> = (0..m).filter(|&j| mask[j]).collect();
        prop_assume!(!free.is_empty());
        let p = PositionSet::new(free, m).unwrap();
        let problem = build_restricted(&inst, &inst.strings()[0], &p.complement()).unwrap();
        let best = enumerate_small_p(&problem, DEFAULT_ENUM_BUDGET).unwrap();
        let opt = problem.cost_of_patch(&best).unwrap();
        let frac = solve_lp(&problem).unwrap();
        prop_assert!(frac.objective() <= opt as f64 + 1e-6);
        prop_assert!(*problem.fixed_costs().iter().max().unwrap() <= opt);
        match round_derandomized(&frac, &problem, 0.5) {
            Ok(x) => {
                let c = problem.cost_of_patch(&x).unwrap() as f64;
                prop_assert!(c <= frac.objective() + 0.5 * p.len() as f64 + 1e-9);
                prop_assert!(c >= opt as f64);
            }
            Err(e) => prop_assert!(matches!(e, Error::EstimatorAtLeastOne(_))),
        }
        let sol = solve_restricted(&problem, &RoundingConfig::default()).unwrap();
        prop_assert_eq!(cost_string(&inst, &sol.center).unwrap(), sol.cost);
    }

    #[test]
    fn expected_costs_match_integral_weights(rows in binary_rows(4, 8)) {
        let inst = instance(&rows, 2);
        let p = PositionSet::full(inst.m());
        let problem = build_restricted(&inst, &inst.strings()[0], &p.complement()).unwrap();
        let frac = center_string::lp_round::FractionalCenter::integral(inst.strings()[0].indices(), 2, 0.0);
        let expected = frac.expected_costs(&problem);
        for (i, s) in inst.strings().iter().enumerate() {
            let d = center_string::hamming(s, &inst.strings()[0]).unwrap();
            prop_assert!((expected[i] - d as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn substring_solutions_are_consistent(
        rows in (1usize..=3, 3usize..=7).prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0u8..2, m..=m + 2), n)),
        l in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let a = Arc::new(Alphabet::binary());
        let seqs = rows.iter().map(|r| Seq::from_indices(&a, r.clone()).unwrap()).collect();
        let inst = SubstringInstance::new(seqs, l).unwrap();
        let opt = exact_closest_substring(&inst, 1 << 12).unwrap().radius;
        let cfg = SubstringConfig { rng_seed: seed, ..SubstringConfig::default() };
        for sol in [solve_small_substring(&inst, &cfg).unwrap(), solve_substring(&inst, &cfg).unwrap()] {
            let (radius, witnesses) = cost_substring(&inst, &sol.center).unwrap();
            prop_assert_eq!(radius, sol.radius);
            prop_assert_eq!(witnesses, sol.witnesses.clone());
            prop_assert!(sol.radius >= opt);
            prop_assert!(sol.radius as f64 <= cfg.sampling_ratio_bound() * opt as f64 + 1e-9);
        }
    }

    #[test]
    fn planted_radius_at_most_d(n in 1usize..=4, m in 4usize..=9, d in 0usize..=2, seed in any::<u64>()) {
        let l = 4;
        let file = generate_planted(&PlantedParams { alphabet: Arc::new(Alphabet::binary()), n, m, window: l, d, seed }).unwrap();
        let inst = file.substring_instance().unwrap();
        let center = Seq::parse(inst.alphabet(), &file.planted.as_ref().unwrap().center).unwrap();
        prop_assert!(cost_substring(&inst, &center).unwrap().0 <= d);
    }

    #[test]
    fn instance_file_json_round_trip(rows in binary_rows(4, 12), window in proptest::option::of(1usize..=4)) {
        let file = InstanceFile {
            alphabet: "01".into(),
            strings: rows.iter().map(|r| r.iter().map(|&c| char::from(b'0' + c)).collect()).collect(),
            window,
            planted: None,
        };
        let text = file.to_json();
        let back = InstanceFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_json(), text);
        let fasta = InstanceFile::from_fasta(&file.to_fasta(), Some("01"), window).unwrap();
        prop_assert_eq!(fasta.strings, file.strings);
    }
}
