//! Nash equilibria: automata for equilibrium outcomes, existence with
//! constraints and thresholds, Pareto-optimal outcomes, and verification of
//! strategy profiles.
//!
//! A play `π` from `v0` is an equilibrium outcome iff for every player `i`,
//! `π ⋉ᵢ π` fails and, wherever `i` owns the current vertex of `π` and moves
//! elsewhere, the other players can still force `π ⋉ᵢ ρ` to fail. The plain
//! intersection of the coalition values is only an over-approximation of
//! this set; it is kept as [`coalition_values_apw`].

use std::collections::HashMap;

use crate::automata::{
    apw_to_nbw, determinize_nbw, dualize_apw, intersect_apws, nbw_empty, union_apws, Apw, Dpw, Formula, Lasso, Mealy,
};
use crate::error::{malformed, Limits, Result};
use crate::game::Game;
use crate::parity::{lasso_membership_apw, lasso_membership_game, solve, MembershipGame, NodeKind, ParityGame, Side};
use crate::values::{value_apw, ValueApw, ValueSide};

/// Equilibrium with a lasso outcome. `profile[j]` is the machine of player
/// `j`: it replays the outcome and, after the first deviation by some `i`,
/// plays the coalition strategy against `i`. `dispatch[i]` names the memory
/// state every other machine enters when `i` deviates first.
#[derive(Clone, Debug)]
pub struct NeWitness {
    pub outcome: Lasso,
    pub profile: Vec<Mealy>,
    pub dispatch: Vec<String>,
}

/// Conjunction of automata whose state 0 only reads the first letter. The
/// pre-initial states are merged into one fresh state 0.
fn conjoin_after_init(parts: &[Apw]) -> (Apw, Vec<usize>) {
    let alphabet = parts[0].alphabet;
    let total = 1 + parts.iter().map(|p| p.num_states() - 1).sum::<usize>();
    let mut out = Apw::empty_shell(total, alphabet);
    out.names[0] = "init".to_string();
    let mut offsets = Vec::new();
    let mut offset = 1;
    for (k, p) in parts.iter().enumerate() {
        offsets.push(offset);
        let shift = offset - 1;
        for s in 1..p.num_states() {
            out.names[shift + s] = format!("{}:{}", k, p.names[s]);
            out.priority[shift + s] = p.priority[s];
            for a in 0..alphabet {
                out.set_trans(shift + s, a, p.trans(s, a).shift_atoms(shift));
            }
        }
        offset += p.num_states() - 1;
    }
    for a in 0..alphabet {
        let f = Formula::and(
            parts
                .iter()
                .zip(&offsets)
                .map(|(p, &o)| p.trans(0, a).shift_atoms(o - 1)),
        );
        out.set_trans(0, a, f);
    }
    (out, offsets)
}

/// `⋂ᵢ Val₋ᵢ(v0)` over all players, with `1 + Σᵢ |V|²·|Qᵢ|` states. Every
/// equilibrium outcome is accepted, but not conversely.
pub fn coalition_values_apw(g: &Game, v0: usize) -> Result<Apw> {
    let parts: Vec<Apw> = (0..g.num_players())
        .map(|i| value_apw(g, i, ValueSide::Coalition, v0).map(|v| v.apw))
        .collect::<Result<_>>()?;
    Ok(conjoin_after_init(&parts).0)
}

/// Coalition value automaton of `i` extended by diagonal states `(v, q)`
/// that follow the word itself: they check `π ⋉ᵢ π` fails and, on vertices
/// of `i`, start a coalition state for every move leaving the word.
fn guarded_value(g: &Game, i: usize, v0: usize) -> Result<(Apw, ValueApw)> {
    let val = value_apw(g, i, ValueSide::Coalition, v0)?;
    let arena = &g.arena;
    let rel = g.relations[i].complement();
    let n = arena.num_vertices();
    let nq = rel.num_states();
    let base = val.apw.num_states();
    let diag = |v: usize, q: usize| base + v * nq + q;
    let mut apw = val.apw.clone();
    apw.names
        .extend((0..n * nq).map(|k| format!("{}={}", arena.vertex_names[k / nq], rel.dpw.names[k % nq])));
    apw.priority.extend((0..n * nq).map(|k| rel.priority(k % nq)));
    apw.delta.extend(std::iter::repeat_n(Formula::False, n * nq * n));
    apw.set_trans(0, v0, Formula::Atom(diag(v0, rel.initial())));
    for v in 0..n {
        for q in 0..nq {
            let q2 = rel.step(q, v, v);
            for &v2 in &arena.succ[v] {
                let mut parts = vec![Formula::Atom(diag(v2, q2))];
                if arena.owner[v] == i {
                    parts.extend(
                        arena.succ[v]
                            .iter()
                            .filter(|&&u| u != v2)
                            .map(|&u| Formula::Atom(val.state(v2, u, q2))),
                    );
                }
                apw.set_trans(diag(v, q), v2, Formula::and(parts));
            }
        }
    }
    Ok((apw, val))
}

/// Plays from `v0`: state `1 + v` is at vertex `v`.
fn path_apw(g: &Game, v0: usize) -> Apw {
    let arena = &g.arena;
    let n = arena.num_vertices();
    let mut apw = Apw::empty_shell(n + 1, n);
    apw.names[0] = "init".to_string();
    apw.set_trans(0, v0, Formula::Atom(1 + v0));
    for v in 0..n {
        apw.names[1 + v] = arena.vertex_names[v].clone();
        for &w in &arena.succ[v] {
            apw.set_trans(1 + v, w, Formula::Atom(1 + w));
        }
    }
    apw
}

/// Equilibrium-outcome automaton restricted to deviations of `players`,
/// with the coalition value automata kept for strategy extraction.
pub(crate) struct NeAutomaton {
    pub apw: Apw,
    pub v0: usize,
    pub players: Vec<usize>,
    vals: Vec<ValueApw>,
    offsets: Vec<usize>,
}

impl NeAutomaton {
    pub(crate) fn build(g: &Game, v0: usize, players: &[usize]) -> Result<NeAutomaton> {
        if v0 >= g.arena.num_vertices() {
            return malformed(format!("vertex {v0} does not exist"));
        }
        let mut parts = Vec::new();
        let mut vals = Vec::new();
        for &i in players {
            let (apw, val) = guarded_value(g, i, v0)?;
            parts.push(apw);
            vals.push(val);
        }
        if parts.is_empty() {
            parts.push(path_apw(g, v0));
        }
        let (apw, offsets) = conjoin_after_init(&parts);
        Ok(NeAutomaton {
            apw,
            v0,
            players: players.to_vec(),
            vals,
            offsets,
        })
    }

    /// Global id of the coalition state `(v, u, q)` of the `k`-th player.
    fn coalition_state(&self, k: usize, v: usize, u: usize, q: usize) -> usize {
        self.offsets[k] - 1 + self.vals[k].state(v, u, q)
    }
}

/// Automaton accepting exactly the equilibrium outcomes from `v0`.
pub fn ne_outcome_apw(g: &Game, v0: usize) -> Result<Apw> {
    let all: Vec<usize> = (0..g.num_players()).collect();
    Ok(NeAutomaton::build(g, v0, &all)?.apw)
}

/// Whether the play `x` from `v0` is an equilibrium outcome.
pub fn lasso_is_ne_outcome(g: &Game, v0: usize, x: &Lasso) -> Result<bool> {
    g.arena.check_play_from(x, v0)?;
    lasso_membership_apw(&ne_outcome_apw(g, v0)?, x)
}

/// Strategy profile with outcome `x`, punishing the first deviator with the
/// coalition strategy read off the membership game of `ne` on `x`.
pub(crate) fn build_profile(g: &Game, ne: &NeAutomaton, x: &Lasso) -> Result<NeWitness> {
    let mg = lasso_membership_game(&ne.apw, x)?;
    if !mg.member() {
        return malformed("lasso is not an equilibrium outcome");
    }
    let arena = &g.arena;
    let np = g.num_players();
    let len = x.len();
    let rels = &g.relations;
    let sizes: Vec<usize> = rels.iter().map(|r| r.num_states()).collect();
    // Follow memories: (position, one relation state per player on the diagonal).
    let mut follow: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut follow_id: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let start_qs: Vec<usize> = (0..np)
        .map(|i| rels[i].step(rels[i].initial(), x.at(0), x.at(0)))
        .collect();
    follow_id.insert((0, start_qs.clone()), 0);
    follow.push((0, start_qs));
    let mut k = 0;
    while k < follow.len() {
        let (p, qs) = follow[k].clone();
        k += 1;
        let p2 = x.next_pos(p);
        let u = x.at(p2);
        let qs2: Vec<usize> = (0..np).map(|i| rels[i].step(qs[i], u, u)).collect();
        let key = (p2, qs2);
        if !follow_id.contains_key(&key) {
            follow_id.insert(key.clone(), follow.len());
            follow.push(key);
        }
    }

    let mut profile = Vec::with_capacity(np);
    let mut dispatch = vec![String::new(); np];
    for j in 0..np {
        let mut m = Mealy::new(j);
        let start = m.add_state("start");
        let free = m.add_state("free");
        let follow_base = m.size();
        for (p, qs) in &follow {
            let qs_names: Vec<&str> = (0..np).map(|i| rels[i].dpw.names[qs[i]].as_str()).collect();
            m.add_state(format!("follow@{}[{}]", p, qs_names.join(",")));
        }
        let mut punish_base = vec![usize::MAX; np];
        for &i in &ne.players {
            if i == j {
                continue;
            }
            punish_base[i] = m.size();
            for q in 0..sizes[i] {
                for p in 0..len {
                    m.add_state(format!(
                        "punish{}:{}@{}",
                        arena.player_names[i], rels[i].dpw.names[q], p
                    ));
                }
            }
        }
        let punish = |i: usize, q: usize, p: usize| punish_base[i] + q * len + p;
        m.initial = start;
        let next_out = |u: usize, p_next: usize| (arena.owner[u] == j).then(|| x.at(x.next_pos(p_next)));
        for u in 0..arena.num_vertices() {
            let first = (arena.owner[u] == j).then(|| arena.succ[u][0]);
            m.set(free, u, free, first);
            if u == x.at(0) {
                m.set(start, u, follow_base, next_out(u, 0));
            } else {
                m.set(start, u, free, first);
            }
        }
        for (f, (p, qs)) in follow.iter().enumerate() {
            let p2 = x.next_pos(*p);
            let deviator = arena.owner[x.at(*p)];
            for u in 0..arena.num_vertices() {
                if u == x.at(p2) {
                    let qs2: Vec<usize> = (0..np).map(|i| rels[i].step(qs[i], u, u)).collect();
                    let target = follow_base + follow_id[&(p2, qs2)];
                    m.set(follow_base + f, u, target, next_out(u, p2));
                } else if deviator == j || punish_base[deviator] == usize::MAX {
                    let first = (arena.owner[u] == j).then(|| arena.succ[u][0]);
                    m.set(follow_base + f, u, free, first);
                } else {
                    let (mem, out) = punish_step(g, ne, &mg, x, j, deviator, qs[deviator], p2, u, &punish);
                    m.set(follow_base + f, u, mem, out);
                }
            }
        }
        for &i in &ne.players {
            if i == j {
                continue;
            }
            for q in 0..sizes[i] {
                for p in 0..len {
                    for u in 0..arena.num_vertices() {
                        let (mem, out) = punish_step(g, ne, &mg, x, j, i, q, p, u, &punish);
                        m.set(punish(i, q, p), u, mem, out);
                    }
                }
            }
        }
        profile.push(m);
    }
    for &i in &ne.players {
        dispatch[i] = format!(
            "{}: punish{}:<relation state>@<position>",
            arena.player_names[i], arena.player_names[i]
        );
    }
    let profile = profile.into_iter().map(|m| m.trim()).collect();
    Ok(NeWitness {
        outcome: x.clone(),
        profile,
        dispatch,
    })
}

/// One step of the coalition strategy against `i`, seen by player `j`:
/// memory `(q, p)` pairs the word vertex at `p` with the current vertex `u`.
#[allow(clippy::too_many_arguments)]
fn punish_step(
    g: &Game,
    ne: &NeAutomaton,
    mg: &MembershipGame,
    x: &Lasso,
    j: usize,
    i: usize,
    q: usize,
    p: usize,
    u: usize,
    punish: &impl Fn(usize, usize, usize) -> usize,
) -> (usize, Option<usize>) {
    let arena = &g.arena;
    let rel = &g.relations[i];
    let q2 = rel.step(q, x.at(p), u);
    let mem = punish(i, q2, x.next_pos(p));
    if arena.owner[u] != j {
        return (mem, None);
    }
    let k = ne.players.iter().position(|&pl| pl == i).unwrap();
    let state = ne.coalition_state(k, x.at(p), u, q);
    let chosen = mg
        .atom(state, x.next_pos(p))
        .filter(|&a| mg.regions.win_even[a])
        .and_then(|a| mg.next_atoms(a).first().copied())
        .and_then(|b| match mg.kind[b] {
            NodeKind::Atom { state, .. } => ne.vals[k].decode(state - (ne.offsets[k] - 1)).map(|(_, u2, _)| u2),
            _ => None,
        });
    (mem, Some(chosen.unwrap_or(arena.succ[u][0])))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bound {
    /// The coalition also writes the word, after seeing the deviator's move.
    Over,
    /// The deviator also writes the word, after seeing the coalition's move.
    Under,
}

/// Positions `(v, u, q)` of the deviation game of `i` won by the coalition,
/// indexed `(v·|V| + u)·|Q| + q`, when the word is written online instead
/// of being fixed in advance.
fn deviation_wins(g: &Game, i: usize, bound: Bound) -> Vec<bool> {
    let arena = &g.arena;
    let rel = &g.relations[i];
    let n = arena.num_vertices();
    let nq = rel.num_states();
    let total = n * n * nq;
    let id = |v: usize, u: usize, q: usize| (v * n + u) * nq + q;
    let writer = if bound == Bound::Over { Side::Even } else { Side::Odd };
    let mut game = ParityGame::default();
    for k in 0..total {
        let u = (k / nq) % n;
        let side = if arena.owner[u] == i { Side::Odd } else { Side::Even };
        game.add(format!("a{k}"), side, rel.priority(k % nq) + 1);
    }
    for k in 0..total {
        game.add(format!("b{k}"), writer, 0);
    }
    for v in 0..n {
        for u in 0..n {
            for q in 0..nq {
                let q2 = rel.step(q, v, u);
                for &u2 in &arena.succ[u] {
                    game.add_move(id(v, u, q), total + id(v, u2, q2));
                }
                for &v2 in &arena.succ[v] {
                    game.add_move(total + id(v, u, q), id(v2, u, q));
                }
            }
        }
    }
    let mut win = solve(&game).win_even;
    win.truncate(total);
    win
}

enum Quick {
    Member(Lasso),
    Empty,
    /// Undecided; lassos of the over-approximation are candidates.
    Unknown(Vec<Lasso>),
}

/// Decides the cheap cases: plays whose every deviation is won by the
/// coalition even against an adaptive word are outcomes; if no play passes
/// the adaptive-coalition test, there is none. `dpws` are extra conditions
/// on the outcome.
fn sandwich(g: &Game, v0: usize, players: &[usize], dpws: &[Dpw]) -> Quick {
    let arena = &g.arena;
    let rels = &g.relations;
    for bound in [Bound::Under, Bound::Over] {
        let wins: Vec<Vec<bool>> = players.iter().map(|&i| deviation_wins(g, i, bound)).collect();
        type Node = (usize, Vec<usize>);
        let start: Node = (
            v0,
            players
                .iter()
                .map(|&i| rels[i].initial())
                .chain(dpws.iter().map(|d| d.initial))
                .collect(),
        );
        let mut index: HashMap<Node, usize> = HashMap::from([(start.clone(), 0)]);
        let mut nodes = vec![start];
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut k = 0;
        while k < nodes.len() {
            let (v, qs) = nodes[k].clone();
            k += 1;
            let mut next: Vec<usize> = players
                .iter()
                .enumerate()
                .map(|(j, &i)| rels[i].step(qs[j], v, v))
                .collect();
            next.extend(dpws.iter().enumerate().map(|(j, d)| d.step(qs[players.len() + j], v)));
            let mut row = Vec::new();
            for &v2 in &arena.succ[v] {
                let safe = players.iter().enumerate().all(|(j, &i)| {
                    arena.owner[v] != i
                        || arena.succ[v].iter().all(|&u| {
                            let nq = rels[i].num_states();
                            u == v2 || wins[j][(v2 * arena.num_vertices() + u) * nq + next[j]]
                        })
                });
                if !safe {
                    continue;
                }
                let key = (v2, next.clone());
                let id = *index.entry(key.clone()).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                row.push(id);
            }
            succ.push(row);
        }
        let mut conds: Vec<Vec<u32>> = players
            .iter()
            .enumerate()
            .map(|(j, &i)| nodes.iter().map(|(_, qs)| rels[i].priority(qs[j]) + 1).collect())
            .collect();
        conds.extend(
            dpws.iter()
                .enumerate()
                .map(|(j, d)| nodes.iter().map(|(_, qs)| d.priority[qs[players.len() + j]]).collect()),
        );
        let found = crate::graph::multi_parity_lasso(&succ, &[0], &conds);
        let word = |ns: &[usize]| ns.iter().map(|&k| nodes[k].0).collect::<Vec<_>>();
        match (bound, found) {
            (Bound::Under, Some((pre, cyc))) => {
                if let Ok(x) = Lasso::new(word(&pre), word(&cyc)) {
                    return Quick::Member(x);
                }
            }
            (Bound::Over, None) => return Quick::Empty,
            (Bound::Over, Some((pre, cyc))) => {
                let mut out: Vec<Lasso> = Lasso::new(word(&pre), word(&cyc)).into_iter().collect();
                for (pre, cyc) in short_lassos(&succ, &conds, PROBE_DEPTH, PROBE_COUNT) {
                    if let Ok(x) = Lasso::new(word(&pre), word(&cyc)) {
                        if !out.contains(&x) {
                            out.push(x);
                        }
                    }
                }
                return Quick::Unknown(out);
            }
            _ => {}
        }
    }
    Quick::Unknown(Vec::new())
}

const PROBE_DEPTH: usize = 8;
const PROBE_COUNT: usize = 64;

/// Up to `count` lassos from node 0 with at most `depth` nodes whose cycle
/// satisfies every condition, shortest paths first.
fn short_lassos(succ: &[Vec<usize>], conds: &[Vec<u32>], depth: usize, count: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![0]];
    while !layer.is_empty() && out.len() < count {
        let mut next_layer = Vec::new();
        for path in &layer {
            let last = *path.last().unwrap();
            for &t in &succ[last] {
                if let Some(j) = path.iter().position(|&p| p == t) {
                    let cyc = &path[j..];
                    let ok = conds.iter().all(|c| cyc.iter().map(|&n| c[n]).max().unwrap() % 2 == 0);
                    if ok && out.len() < count {
                        out.push((path[..j].to_vec(), cyc.to_vec()));
                    }
                } else if path.len() < depth {
                    let mut p = path.clone();
                    p.push(t);
                    next_layer.push(p);
                }
            }
        }
        if next_layer.len() > 4096 {
            next_layer.truncate(4096);
        }
        layer = next_layer;
    }
    out
}

pub(crate) fn search(
    g: &Game,
    ne: NeAutomaton,
    dpws: Vec<Dpw>,
    extra: Vec<Apw>,
    limits: &Limits,
) -> Result<Option<NeWitness>> {
    let mut list = vec![ne.apw.clone()];
    list.extend(dpws.iter().map(Dpw::to_apw));
    list.extend(extra.iter().cloned());
    let aut = if list.len() == 1 {
        ne.apw.clone()
    } else {
        intersect_apws(&list)?
    };
    let quick = if extra.is_empty() {
        sandwich(g, ne.v0, &ne.players, &dpws)
    } else {
        match sandwich(g, ne.v0, &ne.players, &[]) {
            Quick::Empty => Quick::Empty,
            Quick::Member(x) => Quick::Unknown(vec![x]),
            other => other,
        }
    };
    match quick {
        Quick::Empty => return Ok(None),
        Quick::Member(x) if lasso_membership_apw(&aut, &x)? => return build_profile(g, &ne, &x).map(Some),
        Quick::Member(x) => log::warn!("bounded witness {:?} rejected by the exact automaton", x),
        Quick::Unknown(candidates) => {
            for x in candidates {
                if lasso_membership_apw(&aut, &x)? {
                    return build_profile(g, &ne, &x).map(Some);
                }
            }
        }
    }
    let nbw = apw_to_nbw(&aut, limits)?;
    log::info!("equilibrium search: {} Büchi states", nbw.num_states());
    match nbw_empty(&nbw) {
        None => Ok(None),
        Some(x) => build_profile(g, &ne, &x).map(Some),
    }
}

/// Some equilibrium from `v0`, with a finite-memory profile.
pub fn ne_exists(g: &Game, v0: usize, limits: &Limits) -> Result<Option<NeWitness>> {
    let all: Vec<usize> = (0..g.num_players()).collect();
    search(g, NeAutomaton::build(g, v0, &all)?, Vec::new(), Vec::new(), limits)
}

/// Some equilibrium whose outcome every player `i` weakly prefers to its
/// threshold: `thresholds[i] ⋉ᵢ outcome`.
pub fn ne_threshold(g: &Game, v0: usize, thresholds: &[Lasso], limits: &Limits) -> Result<Option<NeWitness>> {
    if thresholds.len() != g.num_players() {
        return malformed("one threshold per player is required");
    }
    for t in thresholds {
        g.arena.check_play_from(t, v0)?;
    }
    let dpws: Vec<Dpw> = thresholds
        .iter()
        .enumerate()
        .map(|(i, t)| g.relations[i].drive_left(t))
        .collect();
    let all: Vec<usize> = (0..g.num_players()).collect();
    search(g, NeAutomaton::build(g, v0, &all)?, dpws, Vec::new(), limits)
}

/// Some equilibrium whose outcome is accepted by `c`.
pub fn ne_constraint(g: &Game, v0: usize, c: &Apw, limits: &Limits) -> Result<Option<NeWitness>> {
    if c.alphabet != g.arena.num_vertices() {
        return malformed("constraint must read vertices");
    }
    c.check()?;
    let all: Vec<usize> = (0..g.num_players()).collect();
    search(g, NeAutomaton::build(g, v0, &all)?, Vec::new(), vec![c.clone()], limits)
}

/// Some equilibrium outcome `π` such that no equilibrium outcome `π′` has
/// `π ⋉ᵢ π′` without `π′ ⋉ᵢ π` for a player `i` in `subset`.
pub fn pareto_ne_exists(g: &Game, v0: usize, subset: &[usize], limits: &Limits) -> Result<Option<Lasso>> {
    if subset.is_empty() || subset.iter().any(|&i| i >= g.num_players()) {
        return malformed("subset must be a non-empty set of players");
    }
    let n = g.arena.num_vertices();
    let ne = ne_outcome_apw(g, v0)?;
    let mut per_player = Vec::new();
    for &i in subset {
        let rel = &g.relations[i];
        per_player.push(union_apws(&[
            rel.complement().dpw.to_apw(),
            rel.swap_tracks().dpw.to_apw(),
        ])?);
    }
    let c1 = union_apws(&[dualize_apw(&ne).lift_right(n), intersect_apws(&per_player)?])?;
    let l2 = apw_to_nbw(&dualize_apw(&c1), limits)?;
    log::info!(
        "pareto_ne_exists: improvement pairs need {} Büchi states",
        l2.num_states()
    );
    let c2 = l2.project(n, false).trim();
    let not_improvable = determinize_nbw(&c2, limits)?.complement();
    log::info!(
        "pareto_ne_exists: unimprovable plays need {} parity states",
        not_improvable.num_states()
    );
    let all = intersect_apws(&[ne, not_improvable.to_apw()])?;
    let nbw = apw_to_nbw(&all, limits)?;
    Ok(nbw_empty(&nbw))
}

/// The unique play produced by deterministic machines, one per player.
pub fn profile_outcome(g: &Game, v0: usize, profile: &[Mealy]) -> Result<Lasso> {
    check_profile(g, profile)?;
    let arena = &g.arena;
    let mut mems: Vec<usize> = profile.iter().map(|m| m.initial).collect();
    let mut u = v0;
    let mut seen: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut word = Vec::new();
    loop {
        if let Some(&k) = seen.get(&(u, mems.clone())) {
            return Lasso::new(word[..k].to_vec(), word[k..].to_vec());
        }
        seen.insert((u, mems.clone()), word.len());
        word.push(u);
        let mut next = None;
        for (j, m) in profile.iter().enumerate() {
            let (mem, out) = m.step(mems[j], u)?;
            mems[j] = mem;
            if arena.owner[u] == j {
                next = out;
            }
        }
        match next {
            Some(w) if arena.is_edge(u, w) => u = w,
            _ => {
                return malformed(format!(
                    "machine of player {} gives no valid move on {}",
                    arena.player_names[arena.owner[u]], arena.vertex_names[u]
                ))
            }
        }
    }
}

fn check_profile(g: &Game, profile: &[Mealy]) -> Result<()> {
    if profile.len() != g.num_players() {
        return malformed("one machine per player is required");
    }
    for (j, m) in profile.iter().enumerate() {
        if m.player != j {
            return malformed(format!("machine {j} controls player {}", m.player));
        }
        if m.initial >= m.size() {
            return malformed(format!("machine {j} has no initial memory state"));
        }
    }
    Ok(())
}

/// Whether the profile is an equilibrium from `v0`: for every player `i`,
/// no play consistent with the others' machines is weakly preferred by `i`
/// to the outcome.
pub fn verify_ne_profile(g: &Game, v0: usize, profile: &[Mealy]) -> Result<bool> {
    let x = profile_outcome(g, v0, profile)?;
    let arena = &g.arena;
    for i in 0..g.num_players() {
        let rel = &g.relations[i];
        type Node = (usize, Vec<usize>, usize, usize);
        let mut index: HashMap<Node, usize> = HashMap::new();
        let mut nodes: Vec<Node> = Vec::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let start: Node = (v0, profile.iter().map(|m| m.initial).collect(), 0, rel.initial());
        index.insert(start.clone(), 0);
        nodes.push(start);
        let mut next = 0;
        while next < nodes.len() {
            let (u, mems, p, q) = nodes[next].clone();
            next += 1;
            let mut mems2 = mems.clone();
            let mut forced = None;
            for (j, m) in profile.iter().enumerate() {
                if j == i {
                    continue;
                }
                let (mem, out) = m.step(mems[j], u)?;
                mems2[j] = mem;
                if arena.owner[u] == j {
                    match out {
                        Some(w) if arena.is_edge(u, w) => forced = Some(w),
                        _ => {
                            return malformed(format!(
                                "machine of player {} gives no valid move on {}",
                                arena.player_names[j], arena.vertex_names[u]
                            ))
                        }
                    }
                }
            }
            let targets = match forced {
                Some(w) => vec![w],
                None => arena.succ[u].clone(),
            };
            let q2 = rel.step(q, x.at(p), u);
            let p2 = x.next_pos(p);
            let mut row = Vec::new();
            for w in targets {
                let key = (w, mems2.clone(), p2, q2);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        nodes.push(key.clone());
                        index.insert(key, nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                row.push(id);
            }
            succ.push(row);
        }
        let priority: Vec<u32> = nodes.iter().map(|n| rel.priority(n.3)).collect();
        if crate::graph::even_cycle_lasso(&succ, &[0], &priority).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
