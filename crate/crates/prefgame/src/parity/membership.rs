use std::collections::HashMap;

use super::{solve, ParityGame, Regions, Side};
use crate::automata::{Apw, Formula, Lasso};
use crate::error::{malformed, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Obligation: `state` must accept the suffix starting at `pos`.
    Atom {
        state: usize,
        pos: usize,
    },
    /// Disjunction chosen by Even; the atoms below read from `pos`.
    Or {
        pos: usize,
    },
    /// Conjunction chosen by Odd.
    And {
        pos: usize,
    },
    True,
    False,
}

/// Parity game deciding whether an alternating automaton accepts a lasso,
/// with the kind of every position and the solved regions.
#[derive(Clone, Debug)]
pub struct MembershipGame {
    pub game: ParityGame,
    pub kind: Vec<NodeKind>,
    pub initial: usize,
    pub regions: Regions,
    atoms: HashMap<(usize, usize), usize>,
}

impl MembershipGame {
    pub fn member(&self) -> bool {
        self.regions.win_even[self.initial]
    }

    pub fn atom(&self, state: usize, pos: usize) -> Option<usize> {
        self.atoms.get(&(state, pos)).copied()
    }

    /// Follows Even's strategy from `node` through disjunctions until the
    /// next layer of atoms. Conjunctions contribute all their branches.
    pub fn chosen_atoms(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            match self.kind[v] {
                NodeKind::Atom { .. } => out.push(v),
                NodeKind::Or { .. } => {
                    if let Some(w) = self.regions.strategy[v] {
                        stack.push(w);
                    }
                }
                NodeKind::And { .. } => stack.extend(self.game.succ[v].iter().copied()),
                NodeKind::True | NodeKind::False => {}
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Atoms one step below atom position `node` under Even's strategy.
    pub fn next_atoms(&self, node: usize) -> Vec<usize> {
        let child = self.game.succ[node][0];
        if matches!(self.kind[child], NodeKind::Atom { .. }) {
            vec![child]
        } else {
            self.chosen_atoms(child)
        }
    }
}

struct Builder<'a> {
    aut: &'a Apw,
    x: &'a Lasso,
    game: ParityGame,
    kind: Vec<NodeKind>,
    atoms: HashMap<(usize, usize), usize>,
    pending: Vec<usize>,
    true_node: Option<usize>,
    false_node: Option<usize>,
}

impl Builder<'_> {
    fn atom(&mut self, state: usize, pos: usize) -> usize {
        if let Some(&v) = self.atoms.get(&(state, pos)) {
            return v;
        }
        let name = format!("{}@{}", self.aut.names[state], pos);
        let v = self.game.add(name, Side::Even, self.aut.priority[state]);
        self.kind.push(NodeKind::Atom { state, pos });
        self.atoms.insert((state, pos), v);
        self.pending.push(v);
        v
    }

    fn constant(&mut self, value: bool) -> usize {
        let slot = if value { self.true_node } else { self.false_node };
        if let Some(v) = slot {
            return v;
        }
        let (name, prio, kind) = if value {
            ("true", 0, NodeKind::True)
        } else {
            ("false", 1, NodeKind::False)
        };
        let v = self.game.add(name, Side::Even, prio);
        self.game.add_move(v, v);
        self.kind.push(kind);
        if value {
            self.true_node = Some(v);
        } else {
            self.false_node = Some(v);
        }
        v
    }

    fn formula(&mut self, f: &Formula, pos: usize) -> usize {
        match f {
            Formula::True => self.constant(true),
            Formula::False => self.constant(false),
            Formula::Atom(t) => self.atom(*t, pos),
            Formula::And(parts) | Formula::Or(parts) => {
                let (side, kind, tag) = match f {
                    Formula::And(_) => (Side::Odd, NodeKind::And { pos }, "and"),
                    _ => (Side::Even, NodeKind::Or { pos }, "or"),
                };
                let name = format!("{}#{}@{}", tag, self.game.len(), pos);
                let v = self.game.add(name, side, 0);
                self.kind.push(kind);
                for g in parts {
                    let w = self.formula(g, pos);
                    self.game.add_move(v, w);
                }
                v
            }
        }
    }
}

/// Builds and solves the membership game of `aut` on `x`. Atom positions
/// carry the state's priority and advance along the lasso; formula
/// positions have priority 0, so every cycle crosses an atom.
pub fn lasso_membership_game(aut: &Apw, x: &Lasso) -> Result<MembershipGame> {
    if let Some(a) = x.letters().find(|&a| a >= aut.alphabet) {
        return malformed(format!("letter {a} outside the automaton alphabet"));
    }
    let mut b = Builder {
        aut,
        x,
        game: ParityGame::default(),
        kind: Vec::new(),
        atoms: HashMap::new(),
        pending: Vec::new(),
        true_node: None,
        false_node: None,
    };
    let initial = b.atom(aut.initial, 0);
    while let Some(v) = b.pending.pop() {
        let NodeKind::Atom { state, pos } = b.kind[v] else {
            unreachable!("only atoms are queued")
        };
        let f = aut.trans(state, b.x.at(pos)).clone();
        let w = b.formula(&f, b.x.next_pos(pos));
        b.game.add_move(v, w);
    }
    let regions = solve(&b.game);
    Ok(MembershipGame {
        game: b.game,
        kind: b.kind,
        initial,
        regions,
        atoms: b.atoms,
    })
}

/// Whether `aut` accepts `x`.
pub fn lasso_membership_apw(aut: &Apw, x: &Lasso) -> Result<bool> {
    Ok(lasso_membership_game(aut, x)?.member())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_automata() {
        let x = Lasso::new(vec![0, 1], vec![2]).unwrap();
        assert!(lasso_membership_apw(&Apw::trivial(3, true), &x).unwrap());
        assert!(!lasso_membership_apw(&Apw::trivial(3, false), &x).unwrap());
    }
}
