use rand::Rng;

use crate::automata::{Apw, Formula, Nbw};

/// Random positive formula over `states` atoms, nesting at most `depth`.
pub fn random_formula(rng: &mut impl Rng, states: usize, depth: u32) -> Formula {
    let roll = rng.gen_range(0..10);
    if depth == 0 || roll < 4 {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(rng.gen_range(0..states)),
        };
    }
    let k = rng.gen_range(2..=3);
    let parts: Vec<Formula> = (0..k).map(|_| random_formula(rng, states, depth - 1)).collect();
    if roll < 7 {
        Formula::and(parts)
    } else {
        Formula::or(parts)
    }
}

/// Random alternating automaton with priorities in `0..=max_priority`.
pub fn random_apw(rng: &mut impl Rng, states: usize, alphabet: usize, max_priority: u32) -> Apw {
    let mut a = Apw::empty_shell(states, alphabet);
    for s in 0..states {
        a.priority[s] = rng.gen_range(0..=max_priority);
        for c in 0..alphabet {
            let f = random_formula(rng, states, 2);
            a.set_trans(s, c, f);
        }
    }
    a
}

/// Random Büchi automaton; each potential edge is present with probability
/// `density`.
pub fn random_nbw(rng: &mut impl Rng, states: usize, alphabet: usize, density: f64) -> Nbw {
    let mut n = Nbw::new(alphabet);
    for _ in 0..states {
        n.add_state(rng.gen_bool(0.4));
    }
    n.initial = vec![0];
    if states > 1 && rng.gen_bool(0.3) {
        n.initial.push(rng.gen_range(1..states));
    }
    for s in 0..states {
        for c in 0..alphabet {
            for t in 0..states {
                if rng.gen_bool(density) {
                    n.add_edge(s, c, t);
                }
            }
        }
    }
    n
}
