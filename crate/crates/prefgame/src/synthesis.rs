//! Rational synthesis for a leader, player 0, facing followers: equilibria
//! with the leader's strategy fixed, the cooperative check, and verification
//! of a given leader machine in the cooperative and non-cooperative sense.

use std::collections::{BTreeSet, HashMap};

use crate::automata::{Apw, Dpw, Lasso, Mealy, PairDpw};
use crate::equilibria::{search, NeAutomaton};
use crate::error::{malformed, Limits, Result};
use crate::game::{Arena, Game};

/// Game whose player 0 is the leader; every other player is a follower.
#[derive(Clone, Debug)]
pub struct LeaderGame {
    pub game: Game,
}

impl LeaderGame {
    pub fn new(game: Game) -> Result<LeaderGame> {
        if game.num_players() == 0 {
            return malformed("a leader game needs player 0");
        }
        Ok(LeaderGame { game })
    }

    pub fn followers(&self) -> Vec<usize> {
        (1..self.game.num_players()).collect()
    }
}

/// Answer of a verification, with the play that decided it: a cooperative
/// outcome when `holds` for the cooperative check, a violating equilibrium
/// outcome when the non-cooperative checks fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    pub play: Option<Lasso>,
}

/// Outcomes of equilibria in which only the followers may deviate.
pub fn zero_fixed_ne_apw(lg: &LeaderGame, v0: usize) -> Result<Apw> {
    Ok(NeAutomaton::build(&lg.game, v0, &lg.followers())?.apw)
}

/// A play `ρ` with `pi ⋉₀ ρ` that is the outcome of some equilibrium with
/// the leader's strategy fixed.
pub fn crs_check(lg: &LeaderGame, v0: usize, pi: &Lasso, limits: &Limits) -> Result<Option<Lasso>> {
    let g = &lg.game;
    g.arena.check_play_from(pi, v0)?;
    let ne = NeAutomaton::build(g, v0, &lg.followers())?;
    let leader = g.relations[0].drive_left(pi);
    Ok(search(g, ne, vec![leader], Vec::new(), limits)?.map(|w| w.outcome))
}

/// Product of a game with a leader machine. Positions pair a vertex with
/// the set of memory states some run of the machine can be in; the leader
/// only picks outputs, so every strategy compatible with the machine is a
/// strategy of the product and conversely.
pub struct LeaderProduct {
    pub game: Game,
    /// Vertex of the original game under every product position.
    pub proj: Vec<usize>,
    pub initial: usize,
}

pub fn leader_product(g: &Game, v0: usize, m0: &Mealy) -> Result<LeaderProduct> {
    if m0.player != 0 {
        return malformed("the leader machine must control player 0");
    }
    if m0.initial >= m0.size() {
        return malformed("leader machine has no initial memory state");
    }
    let arena = &g.arena;
    type Pos = (usize, BTreeSet<usize>);
    let start: Pos = (v0, BTreeSet::from([m0.initial]));
    let mut index: HashMap<Pos, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start];
    let mut edges = Vec::new();
    let mut k = 0;
    while k < nodes.len() {
        let (v, mems) = nodes[k].clone();
        let src = k;
        k += 1;
        let mut by_target: Vec<(usize, BTreeSet<usize>)> = Vec::new();
        for &m in &mems {
            let choices = m0.choices(m, v);
            if choices.is_empty() {
                return malformed(format!(
                    "leader machine has no transition from {} on {}",
                    m0.names[m], arena.vertex_names[v]
                ));
            }
            for &(m2, out) in choices {
                let targets: Vec<usize> = if arena.owner[v] == 0 {
                    match out {
                        Some(w) if arena.is_edge(v, w) => vec![w],
                        _ => {
                            return malformed(format!(
                                "leader machine gives no valid move on {}",
                                arena.vertex_names[v]
                            ))
                        }
                    }
                } else {
                    arena.succ[v].clone()
                };
                for w in targets {
                    match by_target.iter_mut().find(|(t, _)| *t == w) {
                        Some((_, set)) => {
                            set.insert(m2);
                        }
                        None => by_target.push((w, BTreeSet::from([m2]))),
                    }
                }
            }
        }
        for key in by_target {
            let dst = *index.entry(key.clone()).or_insert_with(|| {
                nodes.push(key);
                nodes.len() - 1
            });
            edges.push((src, dst));
        }
    }
    let names: Vec<String> = nodes
        .iter()
        .map(|(v, mems)| {
            let ms: Vec<&str> = mems.iter().map(|&m| m0.names[m].as_str()).collect();
            format!("{}/{}", arena.vertex_names[*v], ms.join("+"))
        })
        .collect();
    let proj: Vec<usize> = nodes.iter().map(|n| n.0).collect();
    let owner: Vec<usize> = proj.iter().map(|&v| arena.owner[v]).collect();
    let product = Arena::new(names, arena.player_names.clone(), owner, &edges)?;
    let relations = g.relations.iter().map(|r| lift_relation(r, &proj)).collect();
    Ok(LeaderProduct {
        game: Game::new(product, relations)?,
        proj,
        initial: 0,
    })
}

/// Relation over product positions reading their projections.
fn lift_relation(rel: &PairDpw, proj: &[usize]) -> PairDpw {
    let w = proj.len();
    let nq = rel.num_states();
    let mut delta = vec![0; nq * w * w];
    for q in 0..nq {
        for l in 0..w {
            for r in 0..w {
                delta[q * w * w + l * w + r] = rel.step(q, proj[l], proj[r]);
            }
        }
    }
    PairDpw {
        width: w,
        dpw: Dpw {
            names: rel.dpw.names.clone(),
            initial: rel.initial(),
            alphabet: w * w,
            delta,
            priority: rel.dpw.priority.clone(),
        },
        sink: rel.sink,
        issues: Vec::new(),
    }
}

fn project_dpw(d: &Dpw, proj: &[usize]) -> Dpw {
    let w = proj.len();
    let mut delta = vec![0; d.num_states() * w];
    for q in 0..d.num_states() {
        for (a, &v) in proj.iter().enumerate() {
            delta[q * w + a] = d.step(q, v);
        }
    }
    Dpw {
        names: d.names.clone(),
        initial: d.initial,
        alphabet: w,
        delta,
        priority: d.priority.clone(),
    }
}

fn project_lasso(x: &Lasso, proj: &[usize]) -> Result<Lasso> {
    let map = |s: &[usize]| s.iter().map(|&v| proj[v]).collect::<Vec<_>>();
    Lasso::new(map(x.prefix()), map(x.cycle()))
}

/// Some follower equilibrium of the product whose outcome `ρ` satisfies the
/// leader condition `pi ⋉₀ ρ` (or its negation when `negate`).
fn product_search(
    lg: &LeaderGame,
    v0: usize,
    pi: &Lasso,
    m0: &Mealy,
    negate: bool,
    limits: &Limits,
) -> Result<Option<Lasso>> {
    let g = &lg.game;
    g.arena.check_play_from(pi, v0)?;
    let prod = leader_product(g, v0, m0)?;
    let rel = if negate {
        g.relations[0].complement()
    } else {
        g.relations[0].clone()
    };
    let leader = project_dpw(&rel.drive_left(pi), &prod.proj);
    let ne = NeAutomaton::build(&prod.game, prod.initial, &lg.followers())?;
    log::info!("leader product: {} positions", prod.game.arena.num_vertices());
    match search(&prod.game, ne, vec![leader], Vec::new(), limits)? {
        Some(w) => Ok(Some(project_lasso(&w.outcome, &prod.proj)?)),
        None => Ok(None),
    }
}

fn check_deterministic(m0: &Mealy) -> Result<()> {
    if m0.nondet || !m0.is_deterministic() {
        return malformed("a deterministic leader machine is required");
    }
    Ok(())
}

/// Whether some follower equilibrium against `m0` has an outcome `ρ` with
/// `pi ⋉₀ ρ`.
pub fn verify_crs(lg: &LeaderGame, v0: usize, pi: &Lasso, m0: &Mealy, limits: &Limits) -> Result<Verification> {
    check_deterministic(m0)?;
    let play = product_search(lg, v0, pi, m0, false, limits)?;
    Ok(Verification {
        holds: play.is_some(),
        play,
    })
}

/// Whether every follower equilibrium against `m0` has an outcome `ρ` with
/// `pi ⋉₀ ρ`; true when there is no such equilibrium at all.
pub fn verify_ncrs(lg: &LeaderGame, v0: usize, pi: &Lasso, m0: &Mealy, limits: &Limits) -> Result<Verification> {
    check_deterministic(m0)?;
    let play = product_search(lg, v0, pi, m0, true, limits)?;
    Ok(Verification {
        holds: play.is_none(),
        play,
    })
}

/// [`verify_ncrs`] for every strategy compatible with a nondeterministic
/// machine at once.
pub fn verify_ncrs_universal(
    lg: &LeaderGame,
    v0: usize,
    pi: &Lasso,
    m0: &Mealy,
    limits: &Limits,
) -> Result<Verification> {
    let play = product_search(lg, v0, pi, m0, true, limits)?;
    Ok(Verification {
        holds: play.is_none(),
        play,
    })
}
