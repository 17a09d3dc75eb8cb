use prefgame::automata::{dualize_apw, nbw_empty, nbw_lasso_member, Lasso, PairDpw};
use prefgame::equilibria::{lasso_is_ne_outcome, ne_exists, profile_outcome, verify_ne_profile};
use prefgame::game::{prefers, shift_relation};
use prefgame::oracles::{enumerate_lassos, enumerate_words, instance_rng, random_apw, random_game, random_nbw};
use prefgame::parity::lasso_membership_apw;
use prefgame::values::{determinacy_check, value_apw, ValueSide};
use prefgame::Limits;
use proptest::prelude::*;
use rand::Rng;

fn game(seed: u64, players: usize) -> prefgame::game::Game {
    let mut rng = instance_rng(seed, 0);
    let n = rng.gen_range(2..=4);
    random_game(&mut rng, n, players, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_evaluation_ignores_unrolling(seed in any::<u64>(), prefix in prop::collection::vec(0usize..3, 0..3),
                                             cycle in prop::collection::vec(0usize..3, 1..4), k in 0usize..4) {
        let g = game(seed, 1);
        let n = g.arena.num_vertices();
        let pre: Vec<usize> = prefix.iter().map(|&a| a % n).collect();
        let cyc: Vec<usize> = cycle.iter().map(|&a| a % n).collect();
        let dpw = g.relations[0].drive_left(&Lasso::new(vec![], vec![0]).unwrap());
        let base = dpw.accepts_periodic(&pre, &cyc);
        let mut p2 = pre.clone();
        let mut c2 = cyc.clone();
        for _ in 0..k {
            p2.push(c2[0]);
            c2.rotate_left(1);
        }
        prop_assert_eq!(base, dpw.accepts_periodic(&p2, &c2));
        let doubled = [cyc.as_slice(), cyc.as_slice()].concat();
        prop_assert_eq!(base, dpw.accepts_periodic(&pre, &doubled));
        prop_assert_eq!(Lasso::new(pre, cyc).unwrap(), Lasso::new(p2, c2).unwrap());
    }

    #[test]
    fn dualization_flips_membership(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 1);
        let states = rng.gen_range(1..=4);
        let apw = random_apw(&mut rng, states, 2, 3);
        let dual = dualize_apw(&apw);
        for x in enumerate_words(2, 5) {
            prop_assert_ne!(lasso_membership_apw(&apw, &x).unwrap(), lasso_membership_apw(&dual, &x).unwrap());
        }
    }

    #[test]
    fn emptiness_witnesses_are_members(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, 2);
        let states = rng.gen_range(1..=5);
        let nbw = random_nbw(&mut rng, states, 2, 0.3);
        match nbw_empty(&nbw) {
            Some(x) => prop_assert!(nbw_lasso_member(&nbw, &x)),
            None => {
                for x in enumerate_words(2, 6) {
                    prop_assert!(!nbw_lasso_member(&nbw, &x));
                }
            }
        }
    }

    #[test]
    fn degenerate_preferences(seed in any::<u64>()) {
        let g = game(seed, 2);
        let n = g.arena.num_vertices();
        let full = g.with_relations(vec![PairDpw::trivial(n, true); 2]).unwrap();
        let empty = g.with_relations(vec![PairDpw::trivial(n, false); 2]).unwrap();
        let plays = enumerate_lassos(&g.arena, 0, 4);
        for x in &plays {
            for y in &plays {
                prop_assert!(prefers(&full, 0, x, y).unwrap());
                prop_assert!(!prefers(&empty, 1, x, y).unwrap());
            }
        }
    }

    #[test]
    fn shifting_keeps_states(seed in any::<u64>(), steps in prop::collection::vec(0usize..8, 1..6)) {
        let g = game(seed, 1);
        let rel = &g.relations[0];
        let mut h = vec![0];
        for s in steps {
            let succ = &g.arena.succ[*h.last().unwrap()];
            h.push(succ[s % succ.len()]);
        }
        let shifted = shift_relation(rel, &h).unwrap();
        prop_assert_eq!(shifted.num_states(), rel.num_states());
        prop_assert_eq!(&shifted.dpw.delta, &rel.dpw.delta);
        prop_assert_eq!(&shifted.dpw.priority, &rel.dpw.priority);
    }

    #[test]
    fn values_partition_plays(seed in any::<u64>()) {
        let g = game(seed, 2);
        for x in enumerate_lassos(&g.arena, 0, 5) {
            prop_assert!(determinacy_check(&g, 0, 0, &x).unwrap());
        }
    }

    #[test]
    fn coalition_value_covers_outcomes(seed in any::<u64>()) {
        let g = game(seed, 2);
        let vals: Vec<_> = (0..2).map(|i| value_apw(&g, i, ValueSide::Coalition, 0).unwrap()).collect();
        for x in enumerate_lassos(&g.arena, 0, 5) {
            if lasso_is_ne_outcome(&g, 0, &x).unwrap() {
                for v in &vals {
                    prop_assert!(lasso_membership_apw(&v.apw, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn equilibrium_witnesses_certify(seed in any::<u64>(), players in 1usize..=3) {
        let g = game(seed, players);
        if let Some(w) = ne_exists(&g, 0, &Limits::default()).unwrap() {
            prop_assert!(lasso_is_ne_outcome(&g, 0, &w.outcome).unwrap());
            prop_assert!(verify_ne_profile(&g, 0, &w.profile).unwrap());
            prop_assert_eq!(profile_outcome(&g, 0, &w.profile).unwrap(), w.outcome);
        }
    }
}
