use super::{ParityGame, Regions, Side};
use crate::error::{Error, Result};

const DEFAULT_BOUND: usize = 10;

/// Oracle solver: tries every memoryless strategy of each side.
/// Refuses games with more than ten positions.
pub fn brute_solve(g: &ParityGame) -> Result<Regions> {
    brute_solve_bounded(g, DEFAULT_BOUND)
}

pub fn brute_solve_bounded(g: &ParityGame, bound: usize) -> Result<Regions> {
    if g.len() > bound {
        return Err(Error::Capacity {
            stage: "brute_solve",
            limit: bound,
        });
    }
    g.check()?;
    let (even_wins, even_strat) = best_for(g, Side::Even);
    let (odd_wins, odd_strat) = best_for(g, Side::Odd);
    for v in 0..g.len() {
        assert!(
            even_wins[v] != odd_wins[v],
            "memoryless determinacy violated at {}",
            g.names[v]
        );
    }
    let strategy = (0..g.len())
        .map(|v| match g.owner[v] {
            Side::Even if even_wins[v] => even_strat[v],
            Side::Odd if odd_wins[v] => odd_strat[v],
            _ => None,
        })
        .collect();
    Ok(Regions {
        win_even: even_wins,
        strategy,
    })
}

/// Positions from which some single memoryless strategy of `side` wins,
/// together with one strategy winning from all of them.
fn best_for(g: &ParityGame, side: Side) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = g.len();
    let own: Vec<usize> = (0..n).filter(|&v| g.owner[v] == side).collect();
    let mut choice = vec![0usize; own.len()];
    let mut union = vec![false; n];
    let mut found: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    loop {
        let mut succ: Vec<Vec<usize>> = g.succ.clone();
        for (k, &v) in own.iter().enumerate() {
            succ[v] = vec![g.succ[v][choice[k]]];
        }
        let won = winning_against_all(g, &succ, side);
        for v in 0..n {
            union[v] |= won[v];
        }
        found.push((won, choice.clone()));
        let mut k = 0;
        loop {
            if k == own.len() {
                return pick_uniform(g, &own, union, &found);
            }
            choice[k] += 1;
            if choice[k] < g.succ[own[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn pick_uniform(
    g: &ParityGame,
    own: &[usize],
    union: Vec<bool>,
    found: &[(Vec<bool>, Vec<usize>)],
) -> (Vec<bool>, Vec<Option<usize>>) {
    let (_, choice) = found
        .iter()
        .find(|(won, _)| *won == union)
        .expect("memoryless strategies are uniform for parity games");
    let mut strat = vec![None; g.len()];
    for (k, &v) in own.iter().enumerate() {
        if union[v] {
            strat[v] = Some(g.succ[v][choice[k]]);
        }
    }
    (union, strat)
}

/// In the one-player graph left after fixing `side`'s choices, `side` wins
/// from `v` iff no reachable cycle has a maximum priority of the other parity.
fn winning_against_all(g: &ParityGame, succ: &[Vec<usize>], side: Side) -> Vec<bool> {
    let n = g.len();
    let bad_parity = match side {
        Side::Even => 1,
        Side::Odd => 0,
    };
    let mut bad = vec![false; n];
    for v in 0..n {
        let d = g.priority[v];
        if d % 2 == bad_parity && on_cycle_below(succ, &g.priority, v, d) {
            bad[v] = true;
        }
    }
    (0..n).map(|v| !reaches(succ, v, &bad)).collect()
}

fn on_cycle_below(succ: &[Vec<usize>], prio: &[u32], v: usize, d: u32) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = succ[v].iter().copied().filter(|&w| prio[w] <= d).collect();
    while let Some(w) = stack.pop() {
        if w == v {
            return true;
        }
        if seen[w] {
            continue;
        }
        seen[w] = true;
        stack.extend(succ[w].iter().copied().filter(|&u| prio[u] <= d));
    }
    false
}

fn reaches(succ: &[Vec<usize>], v: usize, target: &[bool]) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = vec![v];
    while let Some(w) = stack.pop() {
        if target[w] {
            return true;
        }
        if !seen[w] {
            seen[w] = true;
            stack.extend(succ[w].iter().copied());
        }
    }
    false
}
