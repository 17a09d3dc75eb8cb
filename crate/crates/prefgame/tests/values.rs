use prefgame::automata::{Lasso, Mealy, PairDpw};
use prefgame::game::{build_fixture, fork_game, Fixture, Game};
use prefgame::oracles::enumerate_lassos;
use prefgame::parity::lasso_membership_apw;
use prefgame::values::*;
use prefgame::Limits;

fn rel(name: &str, targets: &[Vec<usize>]) -> PairDpw {
    match build_fixture(name, 3, targets).unwrap() {
        Fixture::Relation(r) => r,
        Fixture::Arena(_) => unreachable!(),
    }
}

fn maxr() -> Game {
    let r = rel("MAXR", &[vec![1, 2]]);
    fork_game(r.clone(), r)
}

fn twot() -> Game {
    let r = rel("TWOT", &[vec![1], vec![2]]);
    fork_game(r.clone(), r)
}

fn trivial(full: bool) -> Game {
    fork_game(PairDpw::trivial(3, full), PairDpw::trivial(3, full))
}

fn l(p: &[usize], c: &[usize]) -> Lasso {
    Lasso::new(p.to_vec(), c.to_vec()).unwrap()
}

/// Player 1 loops `k` times on v0 and then moves to v1 (`k = None`: forever).
fn loops(k: Option<usize>) -> Mealy {
    let mut m = Mealy::new(0);
    let count = k.unwrap_or(0) + 1;
    for j in 0..count {
        m.add_state(format!("m{j}"));
    }
    for j in 0..count {
        let leave = k.is_some() && j == count - 1;
        let next = (j + 1).min(count - 1);
        m.set(j, 0, next, Some(if leave { 1 } else { 0 }));
        m.set(j, 1, j, None);
        m.set(j, 2, j, None);
    }
    m
}

#[test]
fn maxr_value_contains_every_play() {
    let g = maxr();
    let val = value_apw(&g, 0, ValueSide::Protagonist, 0).unwrap();
    assert_eq!(val.apw.num_states(), 1 + 9 * 5);
    for x in enumerate_lassos(&g.arena, 0, 6) {
        assert!(
            lasso_membership_apw(&val.apw, &x).unwrap(),
            "{}",
            g.arena.render_lasso(&x)
        );
    }
}

#[test]
fn twot_value_avoids_visiting_both_targets() {
    let g = twot();
    let val = value_apw(&g, 0, ValueSide::Protagonist, 0).unwrap();
    for x in enumerate_lassos(&g.arena, 0, 6) {
        let both = x.letters().any(|v| v == 1) && x.letters().any(|v| v == 2);
        assert_eq!(
            lasso_membership_apw(&val.apw, &x).unwrap(),
            !both,
            "{}",
            g.arena.render_lasso(&x)
        );
    }
}

#[test]
fn degenerate_relations_give_all_or_nothing() {
    for full in [true, false] {
        let g = trivial(full);
        for side in [ValueSide::Protagonist, ValueSide::Coalition] {
            let val = value_apw(&g, 0, side, 0).unwrap();
            let expect = full == (side == ValueSide::Protagonist);
            for x in enumerate_lassos(&g.arena, 0, 4) {
                assert_eq!(lasso_membership_apw(&val.apw, &x).unwrap(), expect);
            }
        }
    }
}

#[test]
fn threshold_check_on_fixtures() {
    let g = maxr();
    let pi = l(&[0], &[1]);
    let (ok, m) = threshold_check(&g, 0, &pi).unwrap();
    assert!(ok);
    let m = m.unwrap();
    assert!(m.size() <= 5 * pi.len());
    assert!(verify_threshold_strategy(&g, 0, &pi, &m).unwrap());

    let (ok, m) = threshold_check(&twot(), 0, &l(&[0, 1], &[2])).unwrap();
    assert!(!ok && m.is_none());

    let g = trivial(true);
    let pi = l(&[0, 0], &[2]);
    let (ok, m) = threshold_check(&g, 0, &pi).unwrap();
    assert!(ok);
    assert!(verify_threshold_strategy(&g, 0, &pi, &m.unwrap()).unwrap());

    assert!(threshold_check(&g, 0, &l(&[], &[1])).is_err());
}

#[test]
fn extracted_strategies_certify_every_value_play() {
    for g in [maxr(), twot()] {
        for i in 0..2 {
            for pi in enumerate_lassos(&g.arena, 0, 4) {
                let (ok, m) = threshold_check(&g, i, &pi).unwrap();
                if ok {
                    assert!(verify_threshold_strategy(&g, i, &pi, &m.unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn verify_threshold_strategy_on_loop_machines() {
    let g = maxr();
    // Reaching after two loops (c = 4) is no worse than pi's c = 3.
    assert!(verify_threshold_strategy(&g, 0, &l(&[0, 0], &[1]), &loops(Some(2))).unwrap());
    // Leaving at once reaches with c = 2 < 3.
    assert!(!verify_threshold_strategy(&g, 0, &l(&[0, 0], &[1]), &loops(Some(0))).unwrap());
    assert!(!verify_threshold_strategy(&g, 0, &l(&[0, 0, 0, 0], &[1]), &loops(Some(1))).unwrap());
    assert!(!verify_threshold_strategy(&trivial(false), 0, &l(&[0], &[1]), &loops(None)).unwrap());

    let mut bad = loops(Some(0));
    bad.set(0, 0, 0, Some(0));
    bad.set(0, 1, 0, None);
    let mut worse = bad.clone();
    worse.set(0, 0, 0, Some(7));
    assert!(verify_threshold_strategy(&g, 0, &l(&[], &[0]), &worse).is_err());
}

#[test]
fn threshold_exists_on_fixtures() {
    let limits = Limits::default();
    assert!(threshold_exists(&trivial(false), 0, 0, &limits).unwrap().is_none());
    let g = maxr();
    let pi = threshold_exists(&g, 0, 0, &limits).unwrap().unwrap();
    assert!(threshold_check(&g, 0, &pi).unwrap().0);
}

#[test]
fn verify_optimal_on_fixtures() {
    let limits = Limits::default();
    let g = maxr();
    assert!(!verify_optimal(&g, 0, 0, &loops(None), &limits).unwrap());
    assert!(!verify_optimal(&g, 0, 0, &loops(Some(1)), &limits).unwrap());
    assert!(verify_optimal(&trivial(true), 0, 0, &loops(Some(1)), &limits).unwrap());
}

#[test]
fn optimal_exists_on_fixtures() {
    let limits = Limits::default();
    assert!(optimal_exists(&maxr(), 0, 0, &limits).unwrap().is_none());
    assert!(optimal_exists(&twot(), 0, 0, &limits).unwrap().is_none());
    let g = trivial(true);
    let m = optimal_exists(&g, 0, 0, &limits).unwrap().unwrap();
    assert!(verify_optimal(&g, 0, 0, &m, &limits).unwrap());
}

#[test]
fn determinacy_on_fixtures() {
    let g = maxr();
    let x = l(&[0], &[1]);
    assert!(determinacy_check(&g, 0, 0, &x).unwrap());
    let pro = value_apw(&g, 0, ValueSide::Protagonist, 0).unwrap();
    assert!(lasso_membership_apw(&pro.apw, &x).unwrap());
    let g = twot();
    let x = l(&[0, 1], &[2]);
    let coa = value_apw(&g, 0, ValueSide::Coalition, 0).unwrap();
    assert!(lasso_membership_apw(&coa.apw, &x).unwrap());
    for x in enumerate_lassos(&g.arena, 0, 5) {
        assert!(determinacy_check(&g, 0, 0, &x).unwrap());
        assert!(determinacy_check(&maxr(), 1, 0, &x).unwrap());
    }
}
