#![allow(dead_code)]

use prefgame::automata::{Apw, Formula, Lasso, Letter, PairDpw, PairDpwBuilder};
use prefgame::game::{build_fixture, fork_game, Arena, Fixture, Game};

pub fn rel(name: &str, width: usize, targets: &[Vec<usize>]) -> PairDpw {
    match build_fixture(name, width, targets).unwrap() {
        Fixture::Relation(r) => r,
        Fixture::Arena(_) => unreachable!(),
    }
}

pub fn l(p: &[usize], c: &[usize]) -> Lasso {
    Lasso::new(p.to_vec(), c.to_vec()).unwrap()
}

pub fn trivial_fork(full: bool) -> Game {
    fork_game(PairDpw::trivial(3, full), PairDpw::trivial(3, full))
}

/// `x ⋉ y` iff `x = y`.
pub fn identity(width: usize) -> PairDpw {
    let mut b = PairDpwBuilder::new(width);
    let same = b.state("same", 0);
    let apart = b.state("apart", 1);
    b.initial(same);
    for u in 0..width {
        for v in 0..width {
            b.rule(same, Letter::Is(u), Letter::Is(v), if u == v { same } else { apart });
        }
    }
    b.rule(apart, Letter::Any, Letter::Any, apart);
    b.build().unwrap()
}

/// Fork arena with a single player owning every vertex.
pub fn fork_solo(r: PairDpw) -> Game {
    let names = ["v0", "v1", "v2"].map(String::from).to_vec();
    let edges = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (2, 1)];
    let arena = Arena::new(names, vec!["1".into()], vec![0, 0, 0], &edges).unwrap();
    Game::new(arena, vec![r]).unwrap()
}

/// Two players; the second owns `v0`, which may stay or move on to `v1`.
/// Only the first player has preferences given by `r`.
pub fn waiting_game(r: PairDpw) -> Game {
    let names = ["v0", "v1"].map(String::from).to_vec();
    let arena = Arena::new(
        names,
        vec!["1".into(), "2".into()],
        vec![1, 1],
        &[(0, 0), (0, 1), (1, 1)],
    )
    .unwrap();
    Game::new(arena, vec![r, PairDpw::trivial(2, false)]).unwrap()
}

/// Accepts the words that contain `letter`.
pub fn visits(alphabet: usize, letter: usize) -> Apw {
    let mut a = Apw::empty_shell(2, alphabet);
    a.priority = vec![1, 0];
    for x in 0..alphabet {
        a.set_trans(0, x, Formula::atom(if x == letter { 1 } else { 0 }));
        a.set_trans(1, x, Formula::True);
    }
    a
}
