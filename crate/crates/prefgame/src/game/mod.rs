//! Arenas, games with automatic preference relations, and the reference
//! fixtures used throughout the test suites.

mod fixtures;

pub use fixtures::{build_fixture, fork_arena, fork_game, Fixture};

use crate::automata::{DpwIssue, Lasso, PairDpw};
use crate::error::{malformed, Result};

/// Finite directed graph whose vertices are partitioned among players.
/// Successor lists keep declaration order, which fixes every tie-break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arena {
    pub vertex_names: Vec<String>,
    pub player_names: Vec<String>,
    pub owner: Vec<usize>,
    pub succ: Vec<Vec<usize>>,
    pub initial: usize,
}

impl Arena {
    /// Edges are given as `(src, dst)` pairs; duplicates are ignored.
    pub fn new(
        vertex_names: Vec<String>,
        player_names: Vec<String>,
        owner: Vec<usize>,
        edges: &[(usize, usize)],
    ) -> Result<Arena> {
        let n = vertex_names.len();
        if n == 0 {
            return malformed("arena has no vertices");
        }
        if owner.len() != n {
            return malformed("every vertex needs exactly one owner");
        }
        if let Some(&p) = owner.iter().find(|&&p| p >= player_names.len()) {
            return malformed(format!("owner {p} is not a declared player"));
        }
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return malformed(format!("edge ({u}, {v}) mentions an unknown vertex"));
            }
            if !succ[u].contains(&v) {
                succ[u].push(v);
            }
        }
        Ok(Arena {
            vertex_names,
            player_names,
            owner,
            succ,
            initial: 0,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_players(&self) -> usize {
        self.player_names.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn player_id(&self, name: &str) -> Option<usize> {
        self.player_names.iter().position(|p| p == name)
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.succ.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, s) in self.succ.iter().enumerate() {
            for &v in s {
                out.push((u, v));
            }
        }
        out
    }

    /// Checks that the lasso is an infinite path, seams included.
    pub fn check_play(&self, x: &Lasso) -> Result<()> {
        let n = self.num_vertices();
        if let Some(v) = x.letters().find(|&v| v >= n) {
            return malformed(format!("vertex id {v} is not in the arena"));
        }
        for k in 0..x.len() {
            let (u, v) = (x.at(k), x.at(x.next_pos(k)));
            if !self.is_edge(u, v) {
                return malformed(format!(
                    "lasso is not a play: no edge {} -> {}",
                    self.vertex_names[u], self.vertex_names[v]
                ));
            }
        }
        Ok(())
    }

    /// Checks that the lasso is a play starting at `v0`.
    pub fn check_play_from(&self, x: &Lasso, v0: usize) -> Result<()> {
        self.check_play(x)?;
        if x.first() != v0 {
            return malformed(format!(
                "play starts at {} instead of {}",
                self.vertex_names[x.first()],
                self.vertex_names[v0]
            ));
        }
        Ok(())
    }

    pub fn check_history(&self, h: &[usize]) -> Result<()> {
        if h.is_empty() {
            return malformed("history must be non-empty");
        }
        if h.iter().any(|&v| v >= self.num_vertices()) {
            return malformed("history mentions an unknown vertex");
        }
        if h.windows(2).any(|w| !self.is_edge(w[0], w[1])) {
            return malformed("history is not a path of the arena");
        }
        Ok(())
    }

    pub fn render_lasso(&self, x: &Lasso) -> String {
        let names = |s: &[usize]| {
            s.iter()
                .map(|&v| self.vertex_names[v].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        if x.prefix().is_empty() {
            format!("| {}", names(x.cycle()))
        } else {
            format!("{} | {}", names(x.prefix()), names(x.cycle()))
        }
    }
}

/// Arena plus one relation automaton per player, indexed by player id.
#[derive(Clone, Debug)]
pub struct Game {
    pub arena: Arena,
    pub relations: Vec<PairDpw>,
}

impl Game {
    pub fn new(arena: Arena, relations: Vec<PairDpw>) -> Result<Game> {
        if relations.len() != arena.num_players() {
            return malformed("one relation per player is required");
        }
        let n = arena.num_vertices();
        if let Some(k) = relations.iter().position(|r| r.width != n) {
            return malformed(format!(
                "relation of player {} reads {} vertices, arena has {}",
                arena.player_names[k], relations[k].width, n
            ));
        }
        Ok(Game { arena, relations })
    }

    pub fn num_players(&self) -> usize {
        self.arena.num_players()
    }

    pub fn initial(&self) -> usize {
        self.arena.initial
    }

    /// Same arena, other relations.
    pub fn with_relations(&self, relations: Vec<PairDpw>) -> Result<Game> {
        Game::new(self.arena.clone(), relations)
    }
}

/// Outcome of [`validate_game`]. `errors` make the game unusable; `notes`
/// record repairs applied on load, such as sink completion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub errors: Vec<String>,
    pub notes: Vec<String>,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn validate_game(g: &Game) -> Diagnostics {
    let mut d = Diagnostics::default();
    let a = &g.arena;
    for (v, s) in a.succ.iter().enumerate() {
        if s.is_empty() {
            d.errors.push(format!("vertex {} has no successor", a.vertex_names[v]));
        }
    }
    if a.initial >= a.num_vertices() {
        d.errors.push("initial vertex is not in the arena".to_string());
    }
    for (i, rel) in g.relations.iter().enumerate() {
        let who = &a.player_names[i];
        if rel.width != a.num_vertices() {
            d.errors
                .push(format!("relation of player {who} has the wrong alphabet"));
        }
        for issue in &rel.issues {
            match issue {
                DpwIssue::Nondeterministic { state, left, right } => d.errors.push(format!(
                    "relation of player {who} is nondeterministic in state {state} on ({}, {})",
                    a.vertex_names.get(*left).map_or("?", |s| s.as_str()),
                    a.vertex_names.get(*right).map_or("?", |s| s.as_str()),
                )),
                DpwIssue::Incomplete { missing } => d.notes.push(format!(
                    "relation of player {who} is incomplete: {missing} transitions routed to a rejecting sink"
                )),
            }
        }
    }
    d
}

/// Whether player `i` prefers `y` to `x`, i.e. `x ⋉ᵢ y`.
pub fn prefers(g: &Game, i: usize, x: &Lasso, y: &Lasso) -> Result<bool> {
    g.arena.check_play(x)?;
    g.arena.check_play(y)?;
    match g.relations.get(i) {
        Some(rel) => rel.eval(x, y),
        None => malformed(format!("unknown player {i}")),
    }
}

/// Relation used after history `h`: the initial state is moved by reading
/// `(h, h)` without its last vertex, where the continuation starts.
pub fn shift_relation(rel: &PairDpw, h: &[usize]) -> Result<PairDpw> {
    if h.is_empty() {
        return malformed("history must be non-empty");
    }
    if let Some(&v) = h.iter().find(|&&v| v >= rel.width) {
        return malformed(format!("letter {v} outside the automaton alphabet"));
    }
    let mut q = rel.initial();
    for &v in &h[..h.len() - 1] {
        q = rel.step(q, v, v);
    }
    let mut out = rel.clone();
    out.dpw.initial = q;
    Ok(out)
}
