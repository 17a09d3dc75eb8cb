use std::collections::BTreeMap;

use crate::error::{malformed, Result};

/// Finite-memory strategy: reads the current vertex, moves to a new memory
/// state and, on vertices of the controlled player, outputs the next vertex.
/// The nondeterministic variant lists several `(memory, output)` choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mealy {
    pub player: usize,
    pub names: Vec<String>,
    pub initial: usize,
    pub nondet: bool,
    pub table: BTreeMap<(usize, usize), Vec<(usize, Option<usize>)>>,
}

impl Mealy {
    pub fn new(player: usize) -> Mealy {
        Mealy {
            player,
            names: Vec::new(),
            initial: 0,
            nondet: false,
            table: BTreeMap::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    pub fn set(&mut self, m: usize, v: usize, next: usize, out: Option<usize>) {
        self.table.insert((m, v), vec![(next, out)]);
    }

    pub fn add_choice(&mut self, m: usize, v: usize, next: usize, out: Option<usize>) {
        let list = self.table.entry((m, v)).or_default();
        if !list.contains(&(next, out)) {
            list.push((next, out));
        }
    }

    /// Memory size `|M|`.
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn choices(&self, m: usize, v: usize) -> &[(usize, Option<usize>)] {
        self.table.get(&(m, v)).map_or(&[], |c| c.as_slice())
    }

    /// The unique choice of a deterministic machine.
    pub fn step(&self, m: usize, v: usize) -> Result<(usize, Option<usize>)> {
        match self.choices(m, v) {
            [one] => Ok(*one),
            [] => malformed(format!(
                "machine has no transition for memory {} on vertex {}",
                self.names.get(m).map_or("?", |s| s.as_str()),
                v
            )),
            _ => malformed("deterministic machine expected"),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.table.values().all(|c| c.len() == 1)
    }

    /// Drops memory states not reachable from the initial one.
    pub fn trim(&self) -> Mealy {
        let mut seen = vec![false; self.size()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(m) = stack.pop() {
            for ((src, _), choices) in self.table.range((m, 0)..(m + 1, 0)) {
                debug_assert_eq!(*src, m);
                for &(t, _) in choices {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; self.size()];
        let mut out = Mealy::new(self.player);
        out.nondet = self.nondet;
        for m in 0..self.size() {
            if seen[m] {
                map[m] = out.add_state(self.names[m].clone());
            }
        }
        out.initial = map[self.initial];
        for (&(m, v), choices) in &self.table {
            if seen[m] {
                let list = choices.iter().map(|&(t, o)| (map[t], o)).collect();
                out.table.insert((map[m], v), list);
            }
        }
        out
    }
}
