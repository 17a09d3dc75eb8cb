mod common;

use std::collections::HashSet;

use common::*;
use prefgame::automata::{canonicalize_lasso, eval_dpw_pair, Lasso, PairDpw};
use prefgame::game::{fork_arena, fork_game, validate_game, Game};
use prefgame::oracles::*;
use prefgame::values::{threshold_check, ValueSide};

fn cost(x: &Lasso, t: usize) -> Option<usize> {
    (0..x.len()).find(|&k| x.at(k) == t).map(|k| k + 1)
}

fn visited(x: &Lasso, t: usize) -> bool {
    x.letters().any(|v| v == t)
}

#[test]
fn corpus_is_deterministic_and_valid() {
    let params = Corpus::default();
    let a = generate_corpus(&params);
    let b = generate_corpus(&params);
    assert_eq!(a.len(), 100);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.arena, y.arena);
        assert_eq!(x.relations, y.relations);
        assert!(validate_game(x).is_empty());
        assert_eq!(x.arena.initial, 0);
    }
    for chunk in a.chunks(10) {
        assert!(chunk.iter().any(|g| g.num_players() > 1));
    }
    let other = generate_corpus(&Corpus { seed: 1, ..params });
    assert!(a.iter().zip(&other).any(|(x, y)| x.relations != y.relations));
}

#[test]
fn lasso_enumeration_is_canonical() {
    let a = fork_arena();
    for maxlen in 1..=6 {
        let list = enumerate_lassos(&a, 0, maxlen);
        let set: HashSet<&Lasso> = list.iter().collect();
        assert_eq!(set.len(), list.len());
        for x in &list {
            assert_eq!(&canonicalize_lasso(x.prefix(), x.cycle()).unwrap(), x);
            assert!(a.check_play_from(x, 0).is_ok());
        }
    }
}

/// Naive recount: every path of length at most `maxlen`, closed back to
/// each earlier position, canonicalized.
fn naive_count(g: &Game, maxlen: usize) -> usize {
    let mut out = HashSet::new();
    let mut paths = vec![vec![0usize]];
    while let Some(p) = paths.pop() {
        for j in 0..p.len() {
            if g.arena.is_edge(*p.last().unwrap(), p[j]) {
                out.insert(canonicalize_lasso(&p[..j], &p[j..]).unwrap());
            }
        }
        if p.len() < maxlen {
            for &w in &g.arena.succ[*p.last().unwrap()] {
                let mut q = p.clone();
                q.push(w);
                paths.push(q);
            }
        }
    }
    out.len()
}

#[test]
fn lasso_count_matches_recount() {
    let g = trivial_fork(true);
    assert_eq!(enumerate_lassos(&g.arena, 0, 4).len(), naive_count(&g, 4));
    assert!(enumerate_lassos(
        &prefgame::game::Arena::new(
            vec!["a".into(), "b".into()],
            vec!["1".into()],
            vec![0, 0],
            &[(0, 1), (1, 1)],
        )
        .unwrap(),
        0,
        1
    )
    .is_empty());
}

#[test]
fn relation_evaluators_agree_on_corpus() {
    for g in generate_corpus(&Corpus {
        count: 40,
        ..Corpus::default()
    }) {
        let plays = enumerate_lassos(&g.arena, 0, 4);
        for rel in &g.relations {
            for x in &plays {
                for y in &plays {
                    assert_eq!(eval_dpw_pair(rel, x, y).unwrap(), brute_relation_eval(rel, x, y));
                }
            }
        }
    }
}

#[test]
fn fixtures_match_direct_scans() {
    let plays = enumerate_lassos(&fork_arena(), 0, 5);
    let minc = rel("MINC", 3, &[vec![1]]);
    let maxr = rel("MAXR", 3, &[vec![1]]);
    let twot = rel("TWOT", 3, &[vec![1], vec![2]]);
    for x in &plays {
        for y in &plays {
            let (cx, cy) = (cost(x, 1), cost(y, 1));
            let minc_expect = match (cx, cy) {
                (_, None) => cx.is_none(),
                (None, Some(_)) => true,
                (Some(a), Some(b)) => a >= b,
            };
            let maxr_expect = match (cx, cy) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a <= b,
            };
            let twot_expect = (!visited(x, 1) || visited(y, 1)) && (!visited(x, 2) || visited(y, 2));
            assert_eq!(brute_relation_eval(&minc, x, y), minc_expect);
            assert_eq!(brute_relation_eval(&maxr, x, y), maxr_expect);
            assert_eq!(brute_relation_eval(&twot, x, y), twot_expect);
            assert!(brute_relation_eval(&PairDpw::trivial(3, true), x, y));
            assert!(!brute_relation_eval(&PairDpw::trivial(3, false), x, y));
        }
    }
}

#[test]
fn value_sweeps_agree() {
    for g in generate_corpus(&Corpus {
        count: 30,
        ..Corpus::default()
    }) {
        for i in 0..g.num_players() {
            for side in [ValueSide::Protagonist, ValueSide::Coalition] {
                let a = sweep_value(&g, i, side, 0, 5).unwrap();
                assert_eq!(a, sweep_value_direct(&g, i, side, 0, 5));
                if side == ValueSide::Protagonist {
                    let b: Vec<Lasso> = enumerate_lassos(&g.arena, 0, 5)
                        .into_iter()
                        .filter(|x| threshold_check(&g, i, x).unwrap().0)
                        .collect();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn value_sweeps_on_fixtures() {
    let all = enumerate_lassos(&fork_arena(), 0, 6);
    let maxr = rel("MAXR", 3, &[vec![1, 2]]);
    let g = fork_game(maxr.clone(), maxr);
    assert_eq!(sweep_value(&g, 0, ValueSide::Protagonist, 0, 6).unwrap(), all);
    let twot = rel("TWOT", 3, &[vec![1], vec![2]]);
    let g = fork_game(twot.clone(), twot);
    let expect: Vec<Lasso> = all
        .iter()
        .filter(|x| !(visited(x, 1) && visited(x, 2)))
        .cloned()
        .collect();
    assert_eq!(sweep_value(&g, 0, ValueSide::Protagonist, 0, 6).unwrap(), expect);
    assert!(sweep_value(&trivial_fork(false), 0, ValueSide::Protagonist, 0, 6)
        .unwrap()
        .is_empty());
}

#[test]
fn single_owner_value_is_reachable_improvement() {
    for g in generate_corpus(&Corpus {
        count: 40,
        max_players: 1,
        ..Corpus::default()
    }) {
        let plays = enumerate_lassos(&g.arena, 0, 6);
        let val = sweep_value_direct(&g, 0, ValueSide::Protagonist, 0, 6);
        for x in &plays {
            let improvable = plays.iter().any(|y| brute_relation_eval(&g.relations[0], x, y));
            assert_eq!(val.contains(x), improvable);
        }
    }
}
