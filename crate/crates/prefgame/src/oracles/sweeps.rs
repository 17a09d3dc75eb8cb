use crate::automata::{Lasso, PairDpw};
use crate::error::Result;
use crate::game::Game;
use crate::parity::{lasso_membership_game, ParityGame, Side};
use crate::values::{value_apw, ValueSide};

use super::{enumerate_lassos, oracle_solve};

/// Lassos `x` from `v0` of length at most `maxlen` in the value of `i`
/// (or of the coalition against `i`). Each membership game is solved by the
/// oracle solvers, not by the recursive solver.
pub fn sweep_value(g: &Game, i: usize, side: ValueSide, v0: usize, maxlen: usize) -> Result<Vec<Lasso>> {
    let val = value_apw(g, i, side, v0)?;
    let mut out = Vec::new();
    for x in enumerate_lassos(&g.arena, v0, maxlen) {
        let mg = lasso_membership_game(&val.apw, &x)?;
        if oracle_solve(&mg.game)[mg.initial] {
            out.push(x);
        }
    }
    Ok(out)
}

/// Play-against-word game of player `i`: positions `(u, p, q)` pair the
/// current vertex `u` of the compared play with position `p` of `x`, `q`
/// being the relation state before reading `(x_p, u)`. Even plays for
/// `side` and wins when the relation run is accepted (`Protagonist`) or
/// rejected (`Coalition`). Returns the game and its position numbering.
fn word_game(g: &Game, i: usize, side: ValueSide, x: &Lasso) -> (ParityGame, impl Fn(usize, usize, usize) -> usize) {
    let arena = &g.arena;
    let rel: &PairDpw = &g.relations[i];
    let n = arena.num_vertices();
    let len = x.len();
    let nq = rel.dpw.priority.len();
    let w = rel.width;
    let id = move |u: usize, p: usize, q: usize| (u * len + p) * nq + q;
    let mut game = ParityGame::default();
    for u in 0..n {
        for p in 0..len {
            for q in 0..nq {
                let mine = arena.owner[u] == i;
                let even = mine == (side == ValueSide::Protagonist);
                let prio = rel.dpw.priority[q] + u32::from(side == ValueSide::Coalition);
                game.add(format!("{u},{p},{q}"), if even { Side::Even } else { Side::Odd }, prio);
            }
        }
    }
    for u in 0..n {
        for p in 0..len {
            for q in 0..nq {
                let q2 = rel.dpw.delta[q * w * w + x.at(p) * w + u];
                for &u2 in &arena.succ[u] {
                    game.add_move(id(u, p, q), id(u2, x.next_pos(p), q2));
                }
            }
        }
    }
    (game, id)
}

/// Membership of `x` in the value from `v0`, decided on the play-against-word
/// game without any automaton construction.
pub fn value_member_direct(g: &Game, i: usize, side: ValueSide, v0: usize, x: &Lasso) -> bool {
    let (game, id) = word_game(g, i, side, x);
    oracle_solve(&game)[id(v0, 0, g.relations[i].dpw.initial)]
}

/// [`sweep_value`] through [`value_member_direct`].
pub fn sweep_value_direct(g: &Game, i: usize, side: ValueSide, v0: usize, maxlen: usize) -> Vec<Lasso> {
    enumerate_lassos(&g.arena, v0, maxlen)
        .into_iter()
        .filter(|x| value_member_direct(g, i, side, v0, x))
        .collect()
}

/// Whether `x` is the outcome of an equilibrium, restricted to deviations
/// of `players`: no such player weakly prefers `x` to itself, and after each
/// move of such a player off `x` the others can keep the result strictly
/// worse for the deviator.
pub fn brute_ne_outcome_for(g: &Game, x: &Lasso, players: &[usize]) -> bool {
    for &i in players {
        let rel = &g.relations[i];
        let w = rel.width;
        let table = &rel.dpw.delta;
        if super::brute_relation_eval(rel, x, x) {
            return false;
        }
        let (game, id) = word_game(g, i, ValueSide::Coalition, x);
        let win = oracle_solve(&game);
        let mut seen = vec![false; x.len() * rel.dpw.priority.len()];
        let (mut p, mut q) = (0, rel.dpw.initial);
        while !seen[p * rel.dpw.priority.len() + q] {
            seen[p * rel.dpw.priority.len() + q] = true;
            let v = x.at(p);
            let q2 = table[q * w * w + v * w + v];
            let p2 = x.next_pos(p);
            if g.arena.owner[v] == i {
                for &u in &g.arena.succ[v] {
                    if u != x.at(p2) && !win[id(u, p2, q2)] {
                        return false;
                    }
                }
            }
            p = p2;
            q = q2;
        }
    }
    true
}

pub fn brute_ne_outcome(g: &Game, x: &Lasso) -> bool {
    let all: Vec<usize> = (0..g.num_players()).collect();
    brute_ne_outcome_for(g, x, &all)
}

/// Equilibrium outcomes from `v0` of length at most `maxlen`.
pub fn sweep_ne(g: &Game, v0: usize, maxlen: usize) -> Vec<Lasso> {
    enumerate_lassos(&g.arena, v0, maxlen)
        .into_iter()
        .filter(|x| brute_ne_outcome(g, x))
        .collect()
}
