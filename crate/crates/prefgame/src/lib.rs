//! Solver for turn-based multiplayer games on finite graphs whose players
//! compare plays through ω-automatic relations, each given as a
//! deterministic parity automaton reading pairs of vertices.
//!
//! Questions about values, optimal strategies, Nash equilibria and rational
//! synthesis are reduced to alternating parity automata, parity games and
//! Büchi emptiness. Positive answers carry witnesses: lassos and Mealy
//! machines.

pub mod automata;
pub mod equilibria;
pub mod error;
pub mod game;
mod graph;
pub mod io;
pub mod oracles;
pub mod parity;
pub mod synthesis;
pub mod values;

pub use error::{Error, Limits, Result};
