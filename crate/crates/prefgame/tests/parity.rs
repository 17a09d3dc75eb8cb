use prefgame::oracles::{exhaustive_family, random_parity_game, spm_solve};
use prefgame::parity::{brute_solve, solve, ParityGame, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn recursive_solver_matches_enumeration_on_family() {
    let family = exhaustive_family();
    assert!(family.len() > 1000);
    for (k, g) in family.iter().enumerate() {
        assert_eq!(
            solve(g).win_even,
            brute_solve(g).unwrap().win_even,
            "game {k}\n{}",
            g.dump()
        );
    }
}

#[test]
fn recursive_solver_matches_oracles_on_random_games() {
    for seed in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=8);
        let g = random_parity_game(&mut rng, n, 4);
        let win = solve(&g).win_even;
        assert_eq!(win, brute_solve(&g).unwrap().win_even, "seed {seed}");
        assert_eq!(win, spm_solve(&g), "seed {seed}");
    }
}

/// Follows Even's strategy from `v` against random Odd choices until a
/// position repeats with the same choices pending; returns the top
/// priority of the cycle.
fn random_cycle_top(g: &ParityGame, strategy: &[Option<usize>], v: usize, rng: &mut impl Rng) -> u32 {
    // Odd is memoryless within one run: fix a random choice per position.
    let odd: Vec<usize> = g.succ.iter().map(|s| s[rng.gen_range(0..s.len())]).collect();
    let mut seen = vec![usize::MAX; g.len()];
    let mut path = Vec::new();
    let mut u = v;
    while seen[u] == usize::MAX {
        seen[u] = path.len();
        path.push(u);
        u = match g.owner[u] {
            Side::Even => strategy[u].expect("Even keeps to its region"),
            Side::Odd => odd[u],
        };
    }
    path[seen[u]..].iter().map(|&w| g.priority[w]).max().unwrap()
}

#[test]
fn even_strategies_win_against_random_opponents() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let g = random_parity_game(&mut rng, 12, 5);
        let r = solve(&g);
        for v in r.even_region() {
            for _ in 0..20 {
                assert_eq!(random_cycle_top(&g, &r.strategy, v, &mut rng) % 2, 0, "seed {seed}");
            }
        }
        for v in 0..g.len() {
            if g.owner[v] == Side::Even && r.win_even[v] {
                assert!(r.win_even[r.strategy[v].unwrap()]);
            }
        }
    }
}
