mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use rtm2v::cantor::{deinterleave, interleave, Word};
use rtm2v::gen::{random_element, random_point, random_refinement};
use rtm2v::orbit::{self, Convergence, HitVerdict, Verdict};
use rtm2v::transducer::{self, compose_transducers, quads_to_symbols, Transducer};
use rtm2v::turing::{self, fixtures, CodeStyle, Mode};
use rtm2v::{DyadicPoint, PatternPair, Rect};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn element(r: &mut ChaCha8Rng) -> PatternPair {
    let pieces = r.gen_range(1..=8);
    random_element(r, pieces)
}

fn bits() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..12).prop_map(Word::from_bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interleave_is_a_bijection(a in prop::collection::vec(0u8..2, 0..20), flip in any::<u64>()) {
        let b: Vec<u8> = a.iter().enumerate().map(|(i, x)| x ^ ((flip >> (i % 64)) & 1) as u8).collect();
        let (wa, wb) = (Word::from_bits(a), Word::from_bits(b));
        let q = interleave(&wa, &wb).unwrap();
        prop_assert_eq!(deinterleave(&q), (wa, wb));
    }

    #[test]
    fn points_are_canonical(a in bits(), b in bits()) {
        let p = DyadicPoint::new(a.clone(), b.clone());
        let q = DyadicPoint::new(a.concat(&Word::zeros(3)), b.concat(&Word::zeros(1)));
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(p.to_string().parse::<DyadicPoint>().unwrap(), p);
    }

    #[test]
    fn bisection_splits_membership(a in bits(), b in bits(), x in bits(), y in bits(), axis in 0usize..2) {
        let r = Rect::new(a, b);
        let p = DyadicPoint::new(x, y);
        let (lo, hi) = r.bisect(axis);
        prop_assert_eq!(r.contains_point(&p), lo.contains_point(&p) || hi.contains_point(&p));
        prop_assert!(!(lo.contains_point(&p) && hi.contains_point(&p)));
    }

    #[test]
    fn random_elements_are_valid_and_round_trip(seed in any::<u64>()) {
        let f = element(&mut rng(seed));
        prop_assert!(f.validate().is_ok());
        let text = f.to_string();
        let back: PatternPair = text.parse().unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn apply_matches_oracle_and_composition_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (element(&mut r), element(&mut r));
        let fg = f.compose(&g);
        prop_assert!(fg.validate().is_ok());
        for _ in 0..8 {
            let p = random_point(&mut r, 10);
            prop_assert_eq!(f.apply(&p).unwrap(), oracle_apply(&f, &p));
            prop_assert_eq!(fg.apply(&p).unwrap(), oracle_apply(&g, &oracle_apply(&f, &p)));
        }
    }

    #[test]
    fn inverse_undoes_apply(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = element(&mut r);
        let inv = f.invert();
        prop_assert!(inv.validate().is_ok());
        for _ in 0..8 {
            let p = random_point(&mut r, 10);
            prop_assert_eq!(inv.apply(&f.apply(&p).unwrap()).unwrap(), p);
        }
        prop_assert!(f.compose(&inv).equals(&PatternPair::identity()));
    }

    #[test]
    fn equality_ignores_refinement_and_reduction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = element(&mut r);
        let splits = r.gen_range(0..8);
        let g = random_refinement(&mut r, &f, splits);
        prop_assert!(g.validate().is_ok());
        prop_assert!(g.equals(&f) && f.equals(&g));
        let reduced = g.reduce();
        prop_assert!(reduced.validate().is_ok());
        prop_assert!(reduced.len() <= g.len());
        prop_assert!(reduced.equals(&f));
        let other = element(&mut r);
        let same = (0..16).all(|_| {
            let p = random_point(&mut r, 10);
            f.apply(&p).unwrap() == other.apply(&p).unwrap()
        });
        if !same {
            prop_assert!(!f.equals(&other));
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g, h) = (element(&mut r), element(&mut r), element(&mut r));
        prop_assert!(f.compose(&g).compose(&h).equals(&f.compose(&g.compose(&h))));
    }

    #[test]
    fn powers_agree_with_repeated_composition(seed in any::<u64>(), k in 0u64..6) {
        let f = element(&mut rng(seed));
        let mut slow = PatternPair::identity();
        for _ in 0..k {
            slow = slow.compose(&f);
        }
        prop_assert!(f.power(k).equals(&slow));
    }

    #[test]
    fn reversibility_checker_matches_window_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (states, symbols) = (r.gen_range(1..=4), r.gen_range(2..=3));
        let m = rtm2v::gen::random_machine(&mut r, states, symbols);
        let v = window_verdicts(&m);
        prop_assert_eq!(m.check_deterministic().is_ok(), v.deterministic);
        prop_assert_eq!(m.check_reversible().is_ok(), v.reversible);
        prop_assert_eq!(m.check_complete().err().unwrap_or_default(), v.halting_pairs);
        let text = m.to_string();
        prop_assert_eq!(text.parse::<rtm2v::TuringMachine>().unwrap(), m);
    }

    #[test]
    fn machine_steps_match_oracle_and_invert(seed in any::<u64>()) {
        let mut r = rng(seed);
        for m in [fixtures::four_state(), fixtures::toggle(), fixtures::shift(), fixtures::halting_two_state()] {
            let mut c = random_config(&mut r, &m, 4);
            for _ in 0..20 {
                let next = m.step(&c);
                prop_assert_eq!(&next, &oracle_step(&m, &c));
                let Some(next) = next else { break };
                prop_assert_eq!(m.step_back(&next), Some(c.clone()));
                c = next;
            }
        }
    }

    #[test]
    fn encoding_round_trips(seed in any::<u64>(), halting in any::<bool>(), comb in any::<bool>()) {
        let mut r = rng(seed);
        let mode = if halting { Mode::Halting } else { Mode::Complete };
        let style = if comb { CodeStyle::Comb } else { CodeStyle::ExampleStyle };
        for m in [fixtures::four_state(), fixtures::halting_two_state()] {
            let scheme = turing::default_scheme(&m, mode, style).unwrap();
            let c = random_config(&mut r, &m, 5);
            prop_assert_eq!(scheme.decode_config(&scheme.encode_config(&c)).unwrap(), c);
        }
    }

    #[test]
    fn transducer_composition_is_sequential(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (s1, s2) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let t1 = random_transducer(&mut r, 2, s1, 30);
        let t2 = random_transducer(&mut r, 2, s2, 30);
        let t = compose_transducers(&t1, &t2).unwrap();
        for _ in 0..10 {
            let len = r.gen_range(0..12);
            let w: Vec<usize> = (0..len).map(|_| r.gen_range(0..2)).collect();
            prop_assert_eq!(oracle_run(&t, &w), oracle_run(&t2, &oracle_run(&t1, &w)));
        }
        let text = t.to_string();
        prop_assert_eq!(text.parse::<Transducer>().unwrap(), t);
    }

    #[test]
    fn compiled_transducers_compose_like_elements(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (element(&mut r), element(&mut r));
        let tf = transducer::from_element(&f);
        let tg = transducer::from_element(&g);
        prop_assert!(tf.check_nondegenerate().is_ok());
        let tfg = compose_transducers(&tf, &tg).unwrap();
        let p = random_point(&mut r, 8);
        let input = quads_to_symbols(&transducer::pi_encode(&p, 48).unwrap());
        let image = oracle_apply(&g, &oracle_apply(&f, &p));
        let depth = 48 + image.first().len() + image.second().len();
        let expected = quads_to_symbols(&transducer::pi_encode(&image, depth).unwrap());
        let out = oracle_run(&tfg, &input);
        prop_assert!(expected.starts_with(&out));
        let inverse = compose_transducers(&tf, &transducer::from_element(&f.invert())).unwrap();
        prop_assert_eq!(
            inverse.bounded_identity_check(5),
            transducer::IdentityCheck::ConsistentWithIdentity { depth: 5 }
        );
    }

    #[test]
    fn orbit_traces_replay(seed in any::<u64>(), budget in 0usize..40) {
        let mut r = rng(seed);
        let f = element(&mut r);
        let p = random_point(&mut r, 6);
        let t = orbit::iterate(&f, &p, budget);
        prop_assert!(t.check());
        prop_assert!(t.points.len() <= budget + 1);
        if let Verdict::CycleDetected { entry, period } = t.verdict {
            prop_assert_eq!(&t.points[entry + period], &t.points[entry]);
        } else {
            prop_assert_eq!(t.points.len(), budget + 1);
        }
        let target = random_point(&mut r, 3);
        let rect = Rect::new(target.first().clone(), target.second().clone());
        let (ht, hit) = orbit::hit_trace(&f, &p, &rect, budget);
        prop_assert!(ht.check());
        match hit {
            HitVerdict::HitAt(k) => {
                prop_assert!(rect.contains_point(&ht.points[k]));
                prop_assert!(ht.points[..k].iter().all(|x| !rect.contains_point(x)));
            }
            _ => prop_assert!(ht.points.iter().all(|x| !rect.contains_point(x))),
        }
        let conv = orbit::converges_to(&f, &p, &target, budget);
        let (ct, again) = orbit::convergence_trace(&f, &p, &target, budget);
        prop_assert_eq!(conv, again);
        prop_assert!(ct.check());
        if let Convergence::DivergenceWitness { entry, period } = conv {
            prop_assert_eq!(&ct.points[entry + period], &ct.points[entry]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Conjugacy at the orbit level, 50 steps per start.
    #[test]
    fn orbits_decode_to_machine_runs(seed in any::<u64>()) {
        let mut r = rng(seed);
        for m in [fixtures::four_state(), fixtures::toggle(), fixtures::shift()] {
            let scheme = turing::default_scheme(&m, Mode::Complete, CodeStyle::Comb).unwrap();
            let f = turing::compile(&m, &scheme).unwrap();
            let mut c = random_config(&mut r, &m, 4);
            let t = orbit::iterate(&f, &scheme.encode_config(&c), 50);
            for p in &t.points {
                prop_assert_eq!(scheme.decode_config(p).unwrap(), c.clone());
                c = oracle_step(&m, &c).unwrap();
            }
        }
    }
}

/// Exhaustive over the support window `[-3, 3]`.
#[test]
fn eta_hits_are_exactly_halting_times() {
    let m = fixtures::halting_two_state();
    let scheme = turing::default_scheme(&m, Mode::Halting, CodeStyle::Comb).unwrap();
    let f = turing::compile(&m, &scheme).unwrap();
    let eta = turing::eta_region();
    for start in window_configs(&m, -3, 3) {
        let mut c = start.clone();
        let mut halts_at = None;
        for k in 0..=200 {
            match oracle_step(&m, &c) {
                Some(n) => c = n,
                None => {
                    halts_at = Some(k + 1);
                    break;
                }
            }
        }
        let hit = orbit::hits_rectangle(&f, &scheme.encode_config(&start), &eta, 200);
        match halts_at {
            Some(k) => assert_eq!(hit, HitVerdict::HitAt(k), "{start:?}"),
            None => assert_eq!(hit, HitVerdict::NoHitWithinBudget, "{start:?}"),
        }
    }
}

#[test]
fn basin_sampling_is_independent_of_jobs() {
    let m = fixtures::halting_two_state();
    let scheme = turing::default_scheme(&m, Mode::Halting, CodeStyle::Comb).unwrap();
    let f = turing::compile(&m, &scheme).unwrap();
    let q = DyadicPoint::new(Word::from_bits([1]), Word::empty());
    let samples = orbit::points_up_to(3);
    let serial = orbit::basin_sample(&f, &q, &samples, 60);
    for jobs in [2, 3, 8, 100] {
        assert_eq!(orbit::basin_sample_parallel(&f, &q, &samples, 60, jobs), serial);
    }
}
