use rand::Rng;

use crate::parity::{ParityGame, Side};

fn build(owners: &[Side], prios: &[u32], succ: &[Vec<usize>]) -> ParityGame {
    let mut g = ParityGame::default();
    for k in 0..owners.len() {
        g.add(format!("p{k}"), owners[k], prios[k]);
    }
    for (v, s) in succ.iter().enumerate() {
        for &w in s {
            g.add_move(v, w);
        }
    }
    g
}

/// Every labeling of `shape` with owners and priorities from `prios`.
fn labelings(shape: &[Vec<usize>], prios: &[u32], out: &mut Vec<ParityGame>) {
    let n = shape.len();
    let kinds = 2 * prios.len();
    let total = kinds.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut owners = Vec::with_capacity(n);
        let mut pr = Vec::with_capacity(n);
        for _ in 0..n {
            let k = c % kinds;
            c /= kinds;
            owners.push(if k.is_multiple_of(2) { Side::Even } else { Side::Odd });
            pr.push(prios[k / 2]);
        }
        out.push(build(&owners, &pr, shape));
    }
}

/// Family of small games over priorities {0, 1, 2}: every game with at
/// most three positions, plus every owner and priority labeling of fixed
/// shapes with four to six positions (ring with chords, ring with loops).
pub fn exhaustive_family() -> Vec<ParityGame> {
    let prios = [0, 1, 2];
    let mut out = Vec::new();
    for n in 1..=3usize {
        let subsets: Vec<Vec<usize>> = (1..(1usize << n))
            .map(|m| (0..n).filter(|&b| m & (1 << b) != 0).collect())
            .collect();
        let shapes = subsets.len().pow(n as u32);
        for code in 0..shapes {
            let mut c = code;
            let mut shape = Vec::with_capacity(n);
            for _ in 0..n {
                shape.push(subsets[c % subsets.len()].clone());
                c /= subsets.len();
            }
            labelings(&shape, &prios, &mut out);
        }
    }
    for n in 4..=6usize {
        let chords: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n, (i + 2) % n]).collect();
        let loops: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n, i]).collect();
        labelings(&chords, &prios, &mut out);
        labelings(&loops, &prios, &mut out);
    }
    out
}

/// Random game with `n` positions, out-degree 1 to 3 and priorities up to
/// `max_priority`.
pub fn random_parity_game(rng: &mut impl Rng, n: usize, max_priority: u32) -> ParityGame {
    let owners: Vec<Side> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Side::Even } else { Side::Odd })
        .collect();
    let prios: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_priority)).collect();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let d = rng.gen_range(1..=3.min(n));
            (0..d).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    build(&owners, &prios, &succ)
}
