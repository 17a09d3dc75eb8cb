//! Values of a player: the plays a strategy can guarantee to be at least as
//! good as every consistent outcome. Value automata, threshold decision with
//! strategy extraction and verification, and optimal strategies.

use std::collections::HashMap;

use crate::automata::{
    apw_to_nbw, determinize_nbw, dualize_apw, intersect_apws, nbw_empty, union_apws, Apw, Dpw, Formula, Lasso, Mealy,
    PairDpw,
};
use crate::error::{malformed, Limits, Result};
use crate::game::{Arena, Game};
use crate::graph;
use crate::parity::{lasso_membership_apw, lasso_membership_game, solve, ParityGame, Side};

/// Who the value automaton speaks for. `Coalition` is the other players
/// against player `i`, winning when `π ⋉ᵢ ρ` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueSide {
    Protagonist,
    Coalition,
}

/// Alternating automaton over vertices accepting the value of a player from
/// `v0`. State 0 is the pre-initial state reading `v0`; state
/// `1 + (v·|V| + u)·|Q| + q` tracks the current vertex `v` of the word, the
/// vertex `u` of the compared play and the relation state `q`.
#[derive(Clone, Debug)]
pub struct ValueApw {
    pub apw: Apw,
    pub player: usize,
    pub side: ValueSide,
    pub v0: usize,
    vertices: usize,
    relation_states: usize,
}

impl ValueApw {
    pub fn state(&self, v: usize, u: usize, q: usize) -> usize {
        1 + (v * self.vertices + u) * self.relation_states + q
    }

    /// Inverse of [`ValueApw::state`]; `None` for the pre-initial state.
    pub fn decode(&self, s: usize) -> Option<(usize, usize, usize)> {
        let k = s.checked_sub(1)?;
        let q = k % self.relation_states;
        let vu = k / self.relation_states;
        Some((vu / self.vertices, vu % self.vertices, q))
    }
}

fn side_relation(g: &Game, i: usize, side: ValueSide) -> PairDpw {
    match side {
        ValueSide::Protagonist => g.relations[i].clone(),
        ValueSide::Coalition => g.relations[i].complement(),
    }
}

fn check_player(g: &Game, i: usize) -> Result<()> {
    if i >= g.num_players() {
        return malformed(format!("player {i} does not exist"));
    }
    Ok(())
}

fn check_vertex(a: &Arena, v: usize) -> Result<()> {
    if v >= a.num_vertices() {
        return malformed(format!("vertex {v} does not exist"));
    }
    Ok(())
}

/// Value automaton of player `i` (or of the coalition against `i`) from `v0`.
pub fn value_apw(g: &Game, i: usize, side: ValueSide, v0: usize) -> Result<ValueApw> {
    check_player(g, i)?;
    check_vertex(&g.arena, v0)?;
    let rel = side_relation(g, i, side);
    let arena = &g.arena;
    let n = arena.num_vertices();
    let nq = rel.num_states();
    let mut out = ValueApw {
        apw: Apw::empty_shell(0, n),
        player: i,
        side,
        v0,
        vertices: n,
        relation_states: nq,
    };
    let mut apw = Apw::empty_shell(1 + n * n * nq, n);
    apw.names[0] = "init".to_string();
    apw.priority[0] = 0;
    apw.set_trans(0, v0, Formula::Atom(out.state(v0, v0, rel.initial())));
    for v in 0..n {
        for u in 0..n {
            let existential = (arena.owner[u] == i) != (side == ValueSide::Coalition);
            for q in 0..nq {
                let s = out.state(v, u, q);
                apw.names[s] = format!(
                    "{},{},{}",
                    arena.vertex_names[v], arena.vertex_names[u], rel.dpw.names[q]
                );
                apw.priority[s] = rel.priority(q);
                let q2 = rel.step(q, v, u);
                for &v2 in &arena.succ[v] {
                    let atoms = arena.succ[u].iter().map(|&u2| Formula::Atom(out.state(v2, u2, q2)));
                    let f = if existential {
                        Formula::or(atoms)
                    } else {
                        Formula::and(atoms)
                    };
                    apw.set_trans(s, v2, f);
                }
            }
        }
    }
    out.apw = apw;
    Ok(out)
}

/// [`threshold_check_from`] at the arena's initial vertex.
pub fn threshold_check(g: &Game, i: usize, pi: &Lasso) -> Result<(bool, Option<Mealy>)> {
    threshold_check_from(g, i, g.initial(), pi)
}

/// Whether `pi` is in the value of player `i` from `v0`. On success also
/// returns a strategy of player `i` whose memory is (relation state, lasso
/// position) and whose every outcome `ρ` satisfies `pi ⋉ᵢ ρ`.
pub fn threshold_check_from(g: &Game, i: usize, v0: usize, pi: &Lasso) -> Result<(bool, Option<Mealy>)> {
    check_player(g, i)?;
    check_vertex(&g.arena, v0)?;
    g.arena.check_play_from(pi, v0)?;
    let val = value_apw(g, i, ValueSide::Protagonist, v0)?;
    let mg = lasso_membership_game(&val.apw, pi)?;
    if !mg.member() {
        return Ok((false, None));
    }
    let arena = &g.arena;
    let rel = &g.relations[i];
    let n = arena.num_vertices();
    let len = pi.len();
    let mem = |q: usize, p: usize| q * len + p;
    let mut m = Mealy::new(i);
    for q in 0..rel.num_states() {
        for p in 0..len {
            m.add_state(format!("{}@{}", rel.dpw.names[q], p));
        }
    }
    m.initial = mem(rel.initial(), 0);
    for q in 0..rel.num_states() {
        for p in 0..len {
            let np = pi.next_pos(p);
            for u in 0..n {
                let q2 = rel.step(q, pi.at(p), u);
                let mut out = None;
                if arena.owner[u] == i {
                    let chosen = mg
                        .atom(val.state(pi.at(p), u, q), np)
                        .filter(|&a| mg.regions.win_even[a])
                        .and_then(|a| mg.next_atoms(a).first().copied())
                        .and_then(|b| match mg.kind[b] {
                            crate::parity::NodeKind::Atom { state, .. } => val.decode(state).map(|(_, u2, _)| u2),
                            _ => None,
                        });
                    out = Some(chosen.unwrap_or(arena.succ[u][0]));
                }
                m.set(mem(q, p), u, mem(q2, np), out);
            }
        }
    }
    Ok((true, Some(m.trim())))
}

fn step_machine(arena: &Arena, m: &Mealy, mem: usize, u: usize) -> Result<(usize, Option<usize>)> {
    let (next, out) = m.step(mem, u)?;
    if arena.owner[u] == m.player {
        match out {
            Some(w) if arena.is_edge(u, w) => {}
            Some(w) => {
                return malformed(format!(
                    "machine moves from {} to {}, which is not a successor",
                    arena.vertex_names[u],
                    arena.vertex_names.get(w).map_or("?", |s| s.as_str())
                ))
            }
            None => return malformed(format!("machine gives no move on {}", arena.vertex_names[u])),
        }
    }
    Ok((next, out))
}

/// Whether every play consistent with `m` from the start of `pi` satisfies
/// `pi ⋉ᵢ ρ`. Searches the product of the arena under `m`, the positions of
/// `pi` and the complemented relation for an accepting cycle.
pub fn verify_threshold_strategy(g: &Game, i: usize, pi: &Lasso, m: &Mealy) -> Result<bool> {
    check_player(g, i)?;
    if m.player != i {
        return malformed("machine controls another player");
    }
    g.arena.check_play(pi)?;
    let arena = &g.arena;
    let rel = g.relations[i].complement();
    type Node = (usize, usize, usize, usize);
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let start: Node = (pi.first(), m.initial, 0, rel.initial());
    index.insert(start, 0);
    nodes.push(start);
    let mut next = 0;
    while next < nodes.len() {
        let (u, mem, p, q) = nodes[next];
        next += 1;
        let (mem2, out) = step_machine(arena, m, mem, u)?;
        let targets: Vec<usize> = if arena.owner[u] == i {
            vec![out.unwrap()]
        } else {
            arena.succ[u].clone()
        };
        let q2 = rel.step(q, pi.at(p), u);
        let np = pi.next_pos(p);
        let mut row = Vec::new();
        for u2 in targets {
            let key = (u2, mem2, np, q2);
            let id = *index.entry(key).or_insert_with(|| {
                nodes.push(key);
                nodes.len() - 1
            });
            row.push(id);
        }
        succ.push(row);
    }
    let priority: Vec<u32> = nodes.iter().map(|&(_, _, _, q)| rel.priority(q)).collect();
    Ok(graph::even_cycle_lasso(&succ, &[0], &priority).is_none())
}

/// Some play in the value of player `i` from `v0`, found by emptiness of
/// the value automaton.
pub fn threshold_exists(g: &Game, i: usize, v0: usize, limits: &Limits) -> Result<Option<Lasso>> {
    let val = value_apw(g, i, ValueSide::Protagonist, v0)?;
    let nbw = apw_to_nbw(&val.apw, limits)?;
    Ok(nbw_empty(&nbw))
}

/// Alternating automaton over vertices accepting the plays from `v0`
/// consistent with `m`: it remembers the memory before the last vertex.
fn consistency_apw(arena: &Arena, m: &Mealy, v0: usize) -> Result<Apw> {
    let n = arena.num_vertices();
    let nm = m.size();
    let id = |mem: usize, u: usize| 1 + mem * n + u;
    let mut apw = Apw::empty_shell(1 + nm * n, n);
    apw.names[0] = "start".to_string();
    apw.set_trans(0, v0, Formula::Atom(id(m.initial, v0)));
    for mem in 0..nm {
        for u in 0..n {
            let s = id(mem, u);
            apw.names[s] = format!("{}/{}", m.names[mem], arena.vertex_names[u]);
            let Some(&(mem2, out)) = m.choices(mem, u).first() else {
                continue;
            };
            if m.choices(mem, u).len() > 1 {
                return malformed("deterministic machine expected");
            }
            for &u2 in &arena.succ[u] {
                if arena.owner[u] != m.player || out == Some(u2) {
                    apw.set_trans(s, u2, Formula::Atom(id(mem2, u2)));
                }
            }
        }
    }
    Ok(apw)
}

/// Whether `m` is optimal for player `i` from `v0`: no play `π` in the value
/// and consistent outcome `ρ` with `π ¬⋉ᵢ ρ`.
pub fn verify_optimal(g: &Game, i: usize, v0: usize, m: &Mealy, limits: &Limits) -> Result<bool> {
    check_player(g, i)?;
    if m.player != i {
        return malformed("machine controls another player");
    }
    let n = g.arena.num_vertices();
    let val = value_apw(g, i, ValueSide::Protagonist, v0)?;
    let cons = consistency_apw(&g.arena, m, v0)?;
    let bad = g.relations[i].complement().dpw.to_apw();
    let all = intersect_apws(&[val.apw.lift_left(n), cons.lift_right(n), bad])?;
    let nbw = apw_to_nbw(&all, limits)?;
    Ok(nbw_empty(&nbw).is_none())
}

/// An optimal strategy of player `i` from `v0`, if one exists: the outcomes
/// `ρ` for which every value play `π` satisfies `π ⋉ᵢ ρ` are determinized
/// into a parity automaton, and player `i` must keep the play inside it.
pub fn optimal_exists(g: &Game, i: usize, v0: usize, limits: &Limits) -> Result<Option<Mealy>> {
    check_player(g, i)?;
    let arena = &g.arena;
    let n = arena.num_vertices();
    let val = value_apw(g, i, ValueSide::Protagonist, v0)?;
    let c1 = union_apws(&[dualize_apw(&val.apw).lift_left(n), g.relations[i].dpw.to_apw()])?;
    let c2 = apw_to_nbw(&dualize_apw(&c1), limits)?;
    log::info!("optimal_exists: C2 has {} states", c2.num_states());
    let c3 = c2.project(n, true).trim();
    let c = determinize_nbw(&c3, limits)?.complement();
    log::info!("optimal_exists: C has {} states", c.num_states());
    let (pg, pos) = product_game(arena, i, &c);
    let regions = solve(&pg);
    let start = pos(v0, c.step(c.initial, v0));
    if !regions.win_even[start] {
        return Ok(None);
    }
    let mut m = Mealy::new(i);
    for k in 0..c.num_states() {
        m.add_state(c.names[k].clone());
    }
    m.initial = c.initial;
    for k in 0..c.num_states() {
        for u in 0..n {
            let k2 = c.step(k, u);
            let out = (arena.owner[u] == i).then(|| {
                regions.strategy[pos(u, k2)]
                    .map(|w| w / c.num_states())
                    .unwrap_or(arena.succ[u][0])
            });
            m.set(k, u, k2, out);
        }
    }
    Ok(Some(m.trim()))
}

/// Parity game on (vertex, automaton state after reading it); Even is
/// player `i`.
fn product_game(arena: &Arena, i: usize, c: &Dpw) -> (ParityGame, impl Fn(usize, usize) -> usize) {
    let nc = c.num_states();
    let pos = move |u: usize, k: usize| u * nc + k;
    let mut pg = ParityGame::default();
    for u in 0..arena.num_vertices() {
        let side = if arena.owner[u] == i { Side::Even } else { Side::Odd };
        for k in 0..nc {
            pg.add(format!("{}/{}", arena.vertex_names[u], c.names[k]), side, c.priority[k]);
        }
    }
    for u in 0..arena.num_vertices() {
        for k in 0..nc {
            for &u2 in &arena.succ[u] {
                pg.add_move(pos(u, k), pos(u2, c.step(k, u2)));
            }
        }
    }
    (pg, pos)
}

/// Membership of `x` in exactly one of the two values; always true.
pub fn determinacy_check(g: &Game, i: usize, v0: usize, x: &Lasso) -> Result<bool> {
    g.arena.check_play_from(x, v0)?;
    let pro = lasso_membership_apw(&value_apw(g, i, ValueSide::Protagonist, v0)?.apw, x)?;
    let coa = lasso_membership_apw(&value_apw(g, i, ValueSide::Coalition, v0)?.apw, x)?;
    Ok(pro != coa)
}
