//! Brute-force ground truth for the test suites. Nothing here reuses the
//! evaluators of the automata pipeline unless a check compares the two.

mod corpus;
mod family;
mod random;
mod spm;
mod sweeps;

pub use corpus::{generate_corpus, instance_rng, random_game, random_relation, Corpus};
pub use family::{exhaustive_family, random_parity_game};
pub use random::{random_apw, random_formula, random_nbw};
pub use spm::{oracle_solve, spm_solve};
pub use sweeps::{
    brute_ne_outcome, brute_ne_outcome_for, sweep_ne, sweep_value, sweep_value_direct, value_member_direct,
};

use std::collections::HashSet;

use crate::automata::{canonicalize_lasso, Lasso, PairDpw};
use crate::game::Arena;

/// All canonical lassos from `v0` with at most `maxlen` positions, sorted
/// by word then prefix length.
pub fn enumerate_lassos(a: &Arena, v0: usize, maxlen: usize) -> Vec<Lasso> {
    enumerate_paths(&|u| a.succ[u].clone(), &[v0], maxlen)
}

/// All canonical lassos over letters `0..alphabet` with at most `maxlen`
/// positions.
pub fn enumerate_words(alphabet: usize, maxlen: usize) -> Vec<Lasso> {
    let all: Vec<usize> = (0..alphabet).collect();
    let all2 = all.clone();
    enumerate_paths(&move |_| all2.clone(), &all, maxlen)
}

fn enumerate_paths(succ: &dyn Fn(usize) -> Vec<usize>, starts: &[usize], maxlen: usize) -> Vec<Lasso> {
    let mut seen: HashSet<Lasso> = HashSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = starts.iter().map(|&s| vec![s]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let next = succ(last);
        for j in 0..path.len() {
            if next.contains(&path[j]) {
                let l = canonicalize_lasso(&path[..j], &path[j..]).expect("non-empty cycle");
                if seen.insert(l.clone()) {
                    out.push(l);
                }
            }
        }
        if path.len() < maxlen {
            for w in next {
                let mut p = path.clone();
                p.push(w);
                stack.push(p);
            }
        }
    }
    out.sort_by_key(Lasso::order_key);
    out
}

/// Independent evaluation of a pair automaton: unroll both lassos letter by
/// letter until a (phase, phase, state) triple repeats, then read the
/// maximum priority on the repeated segment.
pub fn brute_relation_eval(rel: &PairDpw, x: &Lasso, y: &Lasso) -> bool {
    let w = rel.width;
    let table = &rel.dpw.delta;
    let prio = &rel.dpw.priority;
    let letter = |l: &Lasso, k: usize| -> usize {
        let p = l.prefix().len();
        if k < p {
            l.prefix()[k]
        } else {
            l.cycle()[(k - p) % l.cycle().len()]
        }
    };
    let phase = |l: &Lasso, k: usize| -> usize {
        let p = l.prefix().len();
        if k < p {
            k
        } else {
            p + (k - p) % l.cycle().len()
        }
    };
    let mut visited: Vec<(usize, usize, usize)> = Vec::new();
    let mut states: Vec<usize> = Vec::new();
    let mut q = rel.dpw.initial;
    let mut k = 0;
    loop {
        let key = (phase(x, k), phase(y, k), q);
        if let Some(start) = visited.iter().position(|&t| t == key) {
            let top = states[start..].iter().map(|&s| prio[s]).max().unwrap();
            return top % 2 == 0;
        }
        visited.push(key);
        states.push(q);
        q = table[q * w * w + letter(x, k) * w + letter(y, k)];
        k += 1;
    }
}
