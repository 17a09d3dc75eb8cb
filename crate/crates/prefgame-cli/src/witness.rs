//! Witness files. Every payload is rendered to text first; certification
//! re-parses that text, so what is checked is exactly what is shipped.

use std::path::{Path, PathBuf};

use prefgame::automata::{Lasso, Mealy};
use prefgame::game::Game;
use prefgame::io::{parse_lasso, parse_mealy, write_lasso, write_mealy};
use prefgame::Result;

use crate::Failure;

/// Named text files making up one answer, in emission order.
#[derive(Default)]
pub struct Bundle {
    files: Vec<(String, String)>,
}

impl Bundle {
    pub fn lasso(&mut self, g: &Game, name: &str, x: &Lasso) -> Result<Lasso> {
        let text = write_lasso(x, &g.arena.vertex_names);
        let back = parse_lasso(&text, name, &g.arena.vertex_names)?;
        self.files.push((name.to_string(), text));
        Ok(back)
    }

    pub fn mealy(&mut self, g: &Game, name: &str, m: &Mealy) -> Result<Mealy> {
        let text = write_mealy(m, &g.arena);
        let back = parse_mealy(&text, name, &g.arena)?;
        self.files.push((name.to_string(), text));
        Ok(back)
    }

    pub fn text(&mut self, name: &str, text: String) {
        self.files.push((name.to_string(), text));
    }

    /// Prints every file after a `--- <name>` header line.
    pub fn print(&self) {
        for (name, text) in &self.files {
            println!("--- {name}");
            print!("{text}");
        }
    }

    pub fn write(&self, dir: &Path) -> std::result::Result<Vec<PathBuf>, Failure> {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        let mut paths = Vec::new();
        for (name, text) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            paths.push(path);
        }
        Ok(paths)
    }
}

pub fn profile_file(g: &Game, player: usize) -> String {
    format!("profile.{}.mealy", g.arena.player_names[player])
}

/// Machines `profile.<player>.mealy` of a bundle directory, in player order.
pub fn read_profile(g: &Game, dir: &Path) -> Result<Vec<Mealy>> {
    (0..g.num_players())
        .map(|i| {
            let path = dir.join(profile_file(g, i));
            let text = crate::read_text(&path)?;
            parse_mealy(&text, &path.display().to_string(), &g.arena)
        })
        .collect()
}
