use super::{Arena, Game};
use crate::automata::{Letter, PairDpw, PairDpwBuilder};
use crate::error::{malformed, Result};

/// Three-vertex arena: player 1 owns `v0`, player 2 owns `v1` and `v2`.
pub fn fork_arena() -> Arena {
    let names = ["v0", "v1", "v2"].map(String::from).to_vec();
    let players = ["1", "2"].map(String::from).to_vec();
    let edges = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (2, 1)];
    Arena::new(names, players, vec![0, 1, 1], &edges).expect("fixture arena is well formed")
}

pub fn fork_game(rel1: PairDpw, rel2: PairDpw) -> Game {
    Game::new(fork_arena(), vec![rel1, rel2]).expect("fixture relations read three vertices")
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Arena(Arena),
    Relation(PairDpw),
}

/// Fixture by name. Relations take their target sets from `targets`
/// (`TWOT` needs two sets, the reachability relations one).
pub fn build_fixture(name: &str, width: usize, targets: &[Vec<usize>]) -> Result<Fixture> {
    if targets.iter().flatten().any(|&t| t >= width) {
        return malformed("target vertex outside the alphabet");
    }
    let one = || match targets {
        [t] => Ok(t.as_slice()),
        _ => malformed(format!("fixture {name} needs exactly one target set")),
    };
    let rel = match name.to_ascii_uppercase().as_str() {
        "FORK" => return Ok(Fixture::Arena(fork_arena())),
        "MINC" => min_cost(width, one()?),
        "MAXR" => max_reward(width, one()?),
        "MAXR-STRICT" => max_reward_strict(width, one()?),
        "TWOT" => match targets {
            [t1, t2] => two_targets(width, t1, t2),
            _ => return malformed("fixture TWOT needs two target sets"),
        },
        "FULL" => PairDpw::trivial(width, true),
        "EMPTY" => PairDpw::trivial(width, false),
        _ => return malformed(format!("unknown fixture {name}")),
    };
    Ok(Fixture::Relation(rel))
}

fn pairs(width: usize, t: &[usize], f: impl Fn(bool, bool) -> bool) -> Vec<(Letter, Letter)> {
    let mut out = Vec::new();
    for l in 0..width {
        for r in 0..width {
            if f(t.contains(&l), t.contains(&r)) {
                out.push((Letter::Is(l), Letter::Is(r)));
            }
        }
    }
    out
}

fn rules(b: &mut PairDpwBuilder, src: usize, list: Vec<(Letter, Letter)>, dst: usize) {
    for (l, r) in list {
        b.rule(src, l, r, dst);
    }
}

/// `x ⋉ y` iff `c(x) ≥ c(y)`, where `c` counts vertices up to the first
/// target visit and is infinite when the target is missed.
pub fn min_cost(width: usize, t: &[usize]) -> PairDpw {
    let mut b = PairDpwBuilder::new(width);
    let wait = b.state("wait", 0);
    let good = b.state("good", 0);
    let bad = b.state("bad", 1);
    b.initial(wait);
    rules(&mut b, wait, pairs(width, t, |_, y| y), good);
    rules(&mut b, wait, pairs(width, t, |x, y| x && !y), bad);
    rules(&mut b, wait, pairs(width, t, |x, y| !x && !y), wait);
    b.rule(good, Letter::Any, Letter::Any, good);
    b.rule(bad, Letter::Any, Letter::Any, bad);
    b.build().expect("fixture has an initial state")
}

/// `x ⋉ y` iff `x` misses the target, or `y` reaches it no earlier than `x`.
/// Partial like its drawing: the missing moves end in the added sink.
pub fn max_reward(width: usize, t: &[usize]) -> PairDpw {
    let mut b = PairDpwBuilder::new(width);
    let wait = b.state("wait", 0);
    let x_first = b.state("x_first", 1);
    let good = b.state("good", 0);
    let y_first = b.state("y_first", 0);
    b.initial(wait);
    rules(&mut b, wait, pairs(width, t, |x, y| x && !y), x_first);
    rules(&mut b, wait, pairs(width, t, |x, y| !x && y), y_first);
    rules(&mut b, wait, pairs(width, t, |x, y| !x && !y), wait);
    rules(&mut b, wait, pairs(width, t, |x, y| x && y), good);
    rules(&mut b, x_first, pairs(width, t, |_, y| !y), x_first);
    rules(&mut b, x_first, pairs(width, t, |_, y| y), good);
    b.rule(good, Letter::Any, Letter::Any, good);
    rules(&mut b, y_first, pairs(width, t, |x, _| !x), y_first);
    b.build().expect("fixture has an initial state")
}

/// Strict part of [`max_reward`]: `y` reaches the target and either `x`
/// misses it or reaches it strictly earlier.
pub fn max_reward_strict(width: usize, t: &[usize]) -> PairDpw {
    let mut b = PairDpwBuilder::new(width);
    let wait = b.state("wait", 1);
    let x_first = b.state("x_first", 1);
    let good = b.state("good", 0);
    let bad = b.state("bad", 1);
    let y_first = b.state("y_first", 0);
    b.initial(wait);
    rules(&mut b, wait, pairs(width, t, |x, y| x && !y), x_first);
    rules(&mut b, wait, pairs(width, t, |x, y| x && y), bad);
    rules(&mut b, wait, pairs(width, t, |x, y| !x && !y), wait);
    rules(&mut b, wait, pairs(width, t, |x, y| !x && y), y_first);
    rules(&mut b, y_first, pairs(width, t, |x, _| !x), y_first);
    rules(&mut b, y_first, pairs(width, t, |x, _| x), bad);
    rules(&mut b, x_first, pairs(width, t, |_, y| !y), x_first);
    rules(&mut b, x_first, pairs(width, t, |_, y| y), good);
    b.rule(good, Letter::Any, Letter::Any, good);
    b.rule(bad, Letter::Any, Letter::Any, bad);
    b.build().expect("fixture has an initial state")
}

/// `x ⋉ y` iff every target set visited by `x` is visited by `y`. One state
/// per pair of visited-set masks; accepting iff the `x` mask is contained in
/// the `y` mask.
pub fn two_targets(width: usize, t1: &[usize], t2: &[usize]) -> PairDpw {
    let mask = |v: usize| (t1.contains(&v) as usize) | ((t2.contains(&v) as usize) << 1);
    let label = ["none", "t1", "t2", "both"];
    let mut b = PairDpwBuilder::new(width);
    for mx in 0..4 {
        for my in 0..4 {
            let prio = if mx & !my == 0 { 0 } else { 1 };
            b.state(&format!("{}|{}", label[mx], label[my]), prio);
        }
    }
    b.initial(0);
    for mx in 0..4 {
        for my in 0..4 {
            for l in 0..width {
                for r in 0..width {
                    let dst = (mx | mask(l)) * 4 + (my | mask(r));
                    b.rule(mx * 4 + my, Letter::Is(l), Letter::Is(r), dst);
                }
            }
        }
    }
    b.build().expect("fixture has an initial state")
}
