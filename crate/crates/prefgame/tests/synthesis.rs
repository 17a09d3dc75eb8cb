mod common;

use common::*;
use prefgame::automata::{apw_to_nbw, nbw_empty, Lasso, Mealy, PairDpw};
use prefgame::equilibria::lasso_is_ne_outcome;
use prefgame::game::{fork_game, Game};
use prefgame::oracles::{
    brute_ne_outcome_for, brute_relation_eval, enumerate_lassos, generate_corpus, instance_rng, Corpus,
};
use prefgame::parity::lasso_membership_apw;
use prefgame::synthesis::*;
use prefgame::Limits;
use rand::Rng;

fn leader_corpus(count: usize) -> Vec<LeaderGame> {
    let corpus = Corpus {
        count,
        max_vertices: 4,
        ..Corpus::default()
    };
    generate_corpus(&corpus)
        .into_iter()
        .filter(|g| g.num_players() >= 2)
        .map(|g| LeaderGame::new(g).unwrap())
        .collect()
}

fn with_leader(lg: &LeaderGame, rel: PairDpw) -> LeaderGame {
    let mut rels = lg.game.relations.clone();
    rels[0] = rel;
    LeaderGame::new(lg.game.with_relations(rels).unwrap()).unwrap()
}

/// One- or two-state leader machine with random moves.
fn random_machine(g: &Game, seed: usize) -> Mealy {
    let mut rng = instance_rng(99, seed);
    let size = rng.gen_range(1..=2);
    let mut m = Mealy::new(0);
    for k in 0..size {
        m.add_state(format!("m{k}"));
    }
    for k in 0..size {
        for v in 0..g.arena.num_vertices() {
            let next = rng.gen_range(0..size);
            let out = (g.arena.owner[v] == 0).then(|| {
                let succ = &g.arena.succ[v];
                succ[rng.gen_range(0..succ.len())]
            });
            m.set(k, v, next, out);
        }
    }
    m
}

/// Machine allowing every move of the leader.
fn anything(g: &Game) -> Mealy {
    let mut m = Mealy::new(0);
    m.add_state("any");
    m.nondet = true;
    for v in 0..g.arena.num_vertices() {
        if g.arena.owner[v] == 0 {
            for &w in &g.arena.succ[v] {
                m.add_choice(0, v, 0, Some(w));
            }
        } else {
            m.add_choice(0, v, 0, None);
        }
    }
    m
}

/// Follower-equilibrium outcomes of the leader product up to `maxlen`,
/// projected to the original game.
fn product_outcomes(lg: &LeaderGame, m0: &Mealy, maxlen: usize) -> Vec<Lasso> {
    let prod = leader_product(&lg.game, 0, m0).unwrap();
    let followers = lg.followers();
    enumerate_lassos(&prod.game.arena, prod.initial, maxlen)
        .into_iter()
        .filter(|x| brute_ne_outcome_for(&prod.game, x, &followers))
        .map(|x| {
            let map = |s: &[usize]| s.iter().map(|&v| prod.proj[v]).collect::<Vec<_>>();
            Lasso::new(map(x.prefix()), map(x.cycle())).unwrap()
        })
        .collect()
}

#[test]
fn zero_fixed_degenerate() {
    let x_all = enumerate_lassos(&prefgame::game::fork_arena(), 0, 5);
    for (follower, expect) in [(false, true), (true, false)] {
        let lg = LeaderGame::new(fork_game(PairDpw::trivial(3, true), PairDpw::trivial(3, follower))).unwrap();
        let apw = zero_fixed_ne_apw(&lg, 0).unwrap();
        for x in &x_all {
            assert_eq!(lasso_membership_apw(&apw, x).unwrap(), expect);
        }
    }
}

#[test]
fn zero_fixed_contains_equilibria() {
    for (k, lg) in leader_corpus(40).iter().enumerate() {
        let apw = zero_fixed_ne_apw(lg, 0).unwrap();
        for x in enumerate_lassos(&lg.game.arena, 0, 5) {
            let zero = lasso_membership_apw(&apw, &x).unwrap();
            assert_eq!(zero, brute_ne_outcome_for(&lg.game, &x, &lg.followers()), "game {k}");
            if lasso_is_ne_outcome(&lg.game, 0, &x).unwrap() {
                assert!(zero, "game {k}");
            }
        }
    }
}

#[test]
fn crs_matches_sweep() {
    let limits = Limits::default();
    for (k, lg) in leader_corpus(40).iter().enumerate() {
        let rel0 = &lg.game.relations[0];
        let outcomes: Vec<Lasso> = enumerate_lassos(&lg.game.arena, 0, 8)
            .into_iter()
            .filter(|x| brute_ne_outcome_for(&lg.game, x, &lg.followers()))
            .collect();
        for pi in enumerate_lassos(&lg.game.arena, 0, 3) {
            let got = crs_check(lg, 0, &pi, &limits).unwrap();
            let swept = outcomes.iter().any(|x| brute_relation_eval(rel0, &pi, x));
            if swept {
                assert!(got.is_some(), "game {k}");
            }
            if let Some(x) = got {
                assert!(brute_ne_outcome_for(&lg.game, &x, &lg.followers()), "game {k}");
                assert!(brute_relation_eval(rel0, &pi, &x), "game {k}");
            }
        }
    }
}

#[test]
fn crs_with_full_leader_relation_is_zero_fixed_existence() {
    let limits = Limits::default();
    for (k, lg) in leader_corpus(40).iter().enumerate() {
        let full = with_leader(lg, PairDpw::trivial(lg.game.arena.num_vertices(), true));
        let pi = enumerate_lassos(&lg.game.arena, 0, 3).remove(0);
        let crs = crs_check(&full, 0, &pi, &limits).unwrap().is_some();
        let nbw = apw_to_nbw(&zero_fixed_ne_apw(lg, 0).unwrap(), &limits).unwrap();
        assert_eq!(crs, nbw_empty(&nbw).is_some(), "game {k}");
        // Enlarging the leader relation keeps a positive answer.
        if crs_check(lg, 0, &pi, &limits).unwrap().is_some() {
            assert!(crs, "game {k}");
        }
        let empty = with_leader(lg, PairDpw::trivial(lg.game.arena.num_vertices(), false));
        assert!(crs_check(&empty, 0, &pi, &limits).unwrap().is_none());
    }
}

#[test]
fn verification_matches_product_sweep() {
    let limits = Limits::default();
    for (k, lg) in leader_corpus(40).iter().enumerate() {
        let rel0 = &lg.game.relations[0];
        let m0 = random_machine(&lg.game, k);
        let outcomes = product_outcomes(lg, &m0, 8);
        for pi in enumerate_lassos(&lg.game.arena, 0, 3) {
            let crs = verify_crs(lg, 0, &pi, &m0, &limits).unwrap();
            let ncrs = verify_ncrs(lg, 0, &pi, &m0, &limits).unwrap();
            let uni = verify_ncrs_universal(lg, 0, &pi, &m0, &limits).unwrap();
            assert_eq!(ncrs.holds, uni.holds, "game {k}");
            if outcomes.iter().any(|x| brute_relation_eval(rel0, &pi, x)) {
                assert!(crs.holds, "game {k}");
            }
            if outcomes.iter().any(|x| !brute_relation_eval(rel0, &pi, x)) {
                assert!(!ncrs.holds, "game {k}");
            }
            if let Some(x) = &crs.play {
                assert!(brute_relation_eval(rel0, &pi, x), "game {k}");
            }
            if let Some(x) = &ncrs.play {
                assert!(!brute_relation_eval(rel0, &pi, x), "game {k}");
            }
        }
    }
}

#[test]
fn universal_verification_with_unrestricted_leader() {
    let limits = Limits::default();
    for (k, lg) in leader_corpus(30).iter().enumerate() {
        let rel0 = &lg.game.relations[0];
        let m0 = anything(&lg.game);
        let outcomes = product_outcomes(lg, &m0, 7);
        for pi in enumerate_lassos(&lg.game.arena, 0, 3) {
            let uni = verify_ncrs_universal(lg, 0, &pi, &m0, &limits).unwrap();
            if outcomes.iter().any(|x| !brute_relation_eval(rel0, &pi, x)) {
                assert!(!uni.holds, "game {k}");
            }
            match &uni.play {
                Some(x) => assert!(!brute_relation_eval(rel0, &pi, x), "game {k}"),
                None => assert!(uni.holds),
            }
        }
        assert!(verify_ncrs(lg, 0, &l(&[], &[0]), &m0, &limits).is_err() || lg.game.arena.succ[0].len() == 1);
    }
}

#[test]
fn degenerate_leader_relations() {
    let limits = Limits::default();
    for (k, lg) in leader_corpus(30).iter().enumerate() {
        let n = lg.game.arena.num_vertices();
        let m0 = random_machine(&lg.game, k);
        let pi = enumerate_lassos(&lg.game.arena, 0, 3).remove(0);
        let full = with_leader(lg, PairDpw::trivial(n, true));
        let empty = with_leader(lg, PairDpw::trivial(n, false));
        assert!(verify_ncrs(&full, 0, &pi, &m0, &limits).unwrap().holds);
        assert!(
            verify_ncrs_universal(&full, 0, &pi, &anything(&lg.game), &limits)
                .unwrap()
                .holds
        );
        assert!(!verify_crs(&empty, 0, &pi, &m0, &limits).unwrap().holds);
        // With nothing acceptable, non-cooperative verification holds
        // exactly when the followers have no equilibrium at all.
        let any_ne = verify_crs(&full, 0, &pi, &m0, &limits).unwrap().holds;
        assert_eq!(
            verify_ncrs(&empty, 0, &pi, &m0, &limits).unwrap().holds,
            !any_ne,
            "game {k}"
        );
    }
}

#[test]
fn malformed_machines_are_rejected() {
    let lg = LeaderGame::new(trivial_fork(false)).unwrap();
    let pi = l(&[], &[0]);
    let limits = Limits::default();
    let mut wrong_player = Mealy::new(1);
    wrong_player.add_state("m");
    assert!(verify_crs(&lg, 0, &pi, &wrong_player, &limits).is_err());
    let mut bad_move = Mealy::new(0);
    bad_move.add_state("m");
    for v in 0..3 {
        bad_move.set(0, v, 0, None);
    }
    assert!(verify_crs(&lg, 0, &pi, &bad_move, &limits).is_err());
    assert!(verify_ncrs(&lg, 0, &pi, &anything(&lg.game), &limits).is_err());
}
