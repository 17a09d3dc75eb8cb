use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{Dpw, PairDpw};
use crate::game::{Arena, Game};

/// Parameters of a seeded family of small random games. Instance `k` is
/// generated from its own stream, seeded by `seed` and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub max_players: usize,
    pub max_relation_states: usize,
    pub maxlen: usize,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus {
            seed: 0,
            count: 100,
            max_vertices: 5,
            max_players: 3,
            max_relation_states: 3,
            maxlen: 6,
        }
    }
}

pub fn instance_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

pub fn generate_corpus(params: &Corpus) -> Vec<Game> {
    (0..params.count)
        .map(|k| {
            let mut rng = instance_rng(params.seed, k);
            let n = rng.gen_range(2..=params.max_vertices.max(2));
            let p = rng.gen_range(1..=params.max_players.max(1));
            random_game(&mut rng, n, p, params.max_relation_states)
        })
        .collect()
}

/// Random game with `n` vertices reachable from vertex 0 and `players`
/// players, each owning at least one vertex when `players ≤ n`. Relations
/// have up to `max_states` states and priorities in `{0, 1, 2}`.
pub fn random_game(rng: &mut impl Rng, n: usize, players: usize, max_states: usize) -> Game {
    let mut owner: Vec<usize> = (0..n)
        .map(|v| if v < players { v } else { rng.gen_range(0..players) })
        .collect();
    for k in (1..n).rev() {
        let j = rng.gen_range(0..=k);
        owner.swap(k, j);
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(0.3) {
                edges.push((u, v));
            }
        }
        if !edges.iter().any(|&(s, _)| s == u) {
            edges.push((u, rng.gen_range(0..n)));
        }
    }
    let arena = Arena::new(
        (0..n).map(|v| format!("v{v}")).collect(),
        (0..players).map(|i| format!("p{}", i + 1)).collect(),
        owner,
        &edges,
    )
    .expect("generated arena is well formed");
    let relations = (0..players).map(|_| random_relation(rng, n, max_states)).collect();
    Game::new(arena, relations).expect("one relation per player")
}

/// Complete random pair automaton over `width × width` letters.
pub fn random_relation(rng: &mut impl Rng, width: usize, max_states: usize) -> PairDpw {
    let nq = rng.gen_range(1..=max_states.max(1));
    let letters = width * width;
    PairDpw {
        width,
        dpw: Dpw {
            names: (0..nq).map(|q| format!("q{q}")).collect(),
            initial: 0,
            alphabet: letters,
            delta: (0..nq * letters).map(|_| rng.gen_range(0..nq)).collect(),
            priority: (0..nq).map(|_| rng.gen_range(0..=2)).collect(),
        },
        sink: None,
        issues: Vec::new(),
    }
}
