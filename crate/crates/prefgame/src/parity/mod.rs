//! Explicit two-player parity games (max-parity, Even wins on even), the
//! recursive solver, a strategy-enumeration oracle, and the game deciding
//! whether an alternating automaton accepts a lasso.

mod brute;
mod membership;
mod zielonka;

pub use brute::{brute_solve, brute_solve_bounded};
pub use membership::{lasso_membership_apw, lasso_membership_game, MembershipGame, NodeKind};
pub use zielonka::solve;

use crate::error::{malformed, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Even,
    Odd,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Even => Side::Odd,
            Side::Odd => Side::Even,
        }
    }

    pub fn of_priority(p: u32) -> Side {
        if p.is_multiple_of(2) {
            Side::Even
        } else {
            Side::Odd
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParityGame {
    pub names: Vec<String>,
    pub owner: Vec<Side>,
    pub succ: Vec<Vec<usize>>,
    pub priority: Vec<u32>,
}

impl ParityGame {
    pub fn add(&mut self, name: impl Into<String>, owner: Side, priority: u32) -> usize {
        self.names.push(name.into());
        self.owner.push(owner);
        self.succ.push(Vec::new());
        self.priority.push(priority);
        self.names.len() - 1
    }

    pub fn add_move(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        for (v, s) in self.succ.iter().enumerate() {
            if s.is_empty() {
                return malformed(format!("position {} has no move", self.names[v]));
            }
            if s.iter().any(|&w| w >= self.len()) {
                return malformed(format!("position {} has a dangling move", self.names[v]));
            }
        }
        Ok(())
    }

    /// Debug dump, one `pos <name> <owner> <priority> <succ,...>` line per position.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in 0..self.len() {
            let owner = match self.owner[v] {
                Side::Even => "even",
                Side::Odd => "odd",
            };
            let succ: Vec<&str> = self.succ[v].iter().map(|&w| self.names[w].as_str()).collect();
            out.push_str(&format!(
                "pos {} {} {} {}\n",
                self.names[v],
                owner,
                self.priority[v],
                succ.join(",")
            ));
        }
        out
    }
}

/// Winning regions and memoryless strategies. `strategy[v]` is defined
/// exactly when `v` belongs to the region of its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub win_even: Vec<bool>,
    pub strategy: Vec<Option<usize>>,
}

impl Regions {
    pub fn winner(&self, v: usize) -> Side {
        if self.win_even[v] {
            Side::Even
        } else {
            Side::Odd
        }
    }

    pub fn win_odd(&self) -> Vec<bool> {
        self.win_even.iter().map(|&b| !b).collect()
    }

    pub fn even_region(&self) -> Vec<usize> {
        (0..self.win_even.len()).filter(|&v| self.win_even[v]).collect()
    }

    pub fn odd_region(&self) -> Vec<usize> {
        (0..self.win_even.len()).filter(|&v| !self.win_even[v]).collect()
    }
}
