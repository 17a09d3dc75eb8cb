//! Text formats: `.game`, `.dpw`, `.apw`, `.lasso` and `.mealy`. Names in
//! files are interned to dense ids in declaration order. Every parse error
//! cites the file and line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::automata::{canonicalize_lasso, Apw, Formula, Lasso, Letter, Mealy, PairDpw, PairDpwBuilder};
use crate::error::{Error, Result};
use crate::game::{Arena, Game};

struct Lines<'a> {
    file: &'a str,
    text: &'a str,
}

impl<'a> Lines<'a> {
    /// Non-empty lines with comments stripped, tokenized, with line numbers.
    fn iter(&self) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
        self.text.lines().enumerate().filter_map(|(k, raw)| {
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            (!toks.is_empty()).then_some((k + 1, toks))
        })
    }

    fn err<T>(&self, line: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            file: self.file.to_string(),
            line,
            msg: msg.into(),
        })
    }
}

/// First whitespace-separated token and the remaining text.
fn split_token(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(k) => (&s[..k], &s[k..]),
        None => (s, ""),
    }
}

fn lookup(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        msg: e.to_string(),
    })
}

fn parse_priority(src: &Lines, line: usize, tok: &str) -> Result<u32> {
    tok.parse().or_else(|_| src.err(line, format!("bad priority `{tok}`")))
}

/// Relation automaton over the given vertex names.
pub fn parse_dpw(text: &str, file: &str, vertices: &[String]) -> Result<PairDpw> {
    let src = Lines { file, text };
    let mut b = PairDpwBuilder::new(vertices.len());
    for (line, toks) in src.iter() {
        if toks[0] != "state" {
            continue;
        }
        if toks.len() < 3 || toks.len() > 4 || (toks.len() == 4 && toks[3] != "initial") {
            return src.err(line, "expected `state <name> <priority> [initial]`");
        }
        if b.state_id(toks[1]).is_some() {
            return src.err(line, format!("state `{}` declared twice", toks[1]));
        }
        let q = b.state(toks[1], parse_priority(&src, line, toks[2])?);
        if toks.len() == 4 {
            if b.has_initial() {
                return src.err(line, "second initial state");
            }
            b.initial(q);
        }
    }
    let letter = |line: usize, tok: &str| -> Result<Letter> {
        if tok == "*" {
            Ok(Letter::Any)
        } else {
            match lookup(vertices, tok) {
                Some(v) => Ok(Letter::Is(v)),
                None => src.err(line, format!("unknown vertex `{tok}`")),
            }
        }
    };
    for (line, toks) in src.iter() {
        match toks[0] {
            "state" => {}
            "trans" => {
                if toks.len() != 5 {
                    return src.err(line, "expected `trans <state> <left> <right> <state>`");
                }
                let state = |tok: &str| match b.state_id(tok) {
                    Some(q) => Ok(q),
                    None => src.err(line, format!("unknown state `{tok}`")),
                };
                let (s, t) = (state(toks[1])?, state(toks[4])?);
                let (l, r) = (letter(line, toks[2])?, letter(line, toks[3])?);
                b.rule(s, l, r, t);
            }
            other => return src.err(line, format!("unknown directive `{other}`")),
        }
    }
    if !b.has_initial() {
        return src.err(0, "no initial state");
    }
    b.build()
}

pub fn write_dpw(rel: &PairDpw, vertices: &[String]) -> String {
    let mut out = String::new();
    let d = &rel.dpw;
    for q in 0..d.num_states() {
        let init = if q == d.initial { " initial" } else { "" };
        let _ = writeln!(out, "state {} {}{}", d.names[q], d.priority[q], init);
    }
    for q in 0..d.num_states() {
        for l in 0..rel.width {
            for r in 0..rel.width {
                let _ = writeln!(
                    out,
                    "trans {} {} {} {}",
                    d.names[q],
                    vertices[l],
                    vertices[r],
                    d.names[rel.step(q, l, r)]
                );
            }
        }
    }
    out
}

struct FormulaParser<'a> {
    toks: Vec<&'a str>,
    pos: usize,
}

impl<'a> FormulaParser<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        let mut start = None;
        for (k, c) in text.char_indices() {
            if "()&|".contains(c) || c.is_whitespace() {
                if let Some(s) = start.take() {
                    toks.push(&text[s..k]);
                }
                if !c.is_whitespace() {
                    toks.push(&text[k..k + 1]);
                }
            } else if start.is_none() {
                start = Some(k);
            }
        }
        if let Some(s) = start {
            toks.push(&text[s..]);
        }
        FormulaParser { toks, pos: 0 }
    }

    fn parse(&mut self, states: &[String]) -> std::result::Result<Formula, String> {
        let Some(&tok) = self.toks.get(self.pos) else {
            return Err("formula ends early".to_string());
        };
        self.pos += 1;
        match tok {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            "(" => {
                let mut parts = vec![self.parse(states)?];
                let mut op = None;
                loop {
                    match self.toks.get(self.pos).copied() {
                        Some(")") => {
                            self.pos += 1;
                            break;
                        }
                        Some(o @ ("&" | "|")) => {
                            if op.is_some_and(|p| p != o) {
                                return Err("mixed `&` and `|` need parentheses".to_string());
                            }
                            op = Some(o);
                            self.pos += 1;
                            parts.push(self.parse(states)?);
                        }
                        Some(t) => return Err(format!("unexpected `{t}`")),
                        None => return Err("missing `)`".to_string()),
                    }
                }
                Ok(match op {
                    Some("|") => Formula::or(parts),
                    _ => Formula::and(parts),
                })
            }
            ")" | "&" | "|" => Err(format!("unexpected `{tok}`")),
            name => lookup(states, name)
                .map(Formula::Atom)
                .ok_or_else(|| format!("unknown state `{name}`")),
        }
    }
}

/// Alternating automaton over the given alphabet names.
pub fn parse_apw(text: &str, file: &str, letters: &[String]) -> Result<Apw> {
    let src = Lines { file, text };
    let mut names = Vec::new();
    let mut priority = Vec::new();
    let mut initial = None;
    for (line, toks) in src.iter() {
        if toks[0] != "state" {
            continue;
        }
        if toks.len() < 3 || toks.len() > 4 || (toks.len() == 4 && toks[3] != "initial") {
            return src.err(line, "expected `state <name> <priority> [initial]`");
        }
        if lookup(&names, toks[1]).is_some() {
            return src.err(line, format!("state `{}` declared twice", toks[1]));
        }
        if toks.len() == 4 {
            if initial.is_some() {
                return src.err(line, "second initial state");
            }
            initial = Some(names.len());
        }
        names.push(toks[1].to_string());
        priority.push(parse_priority(&src, line, toks[2])?);
    }
    let Some(initial) = initial else {
        return src.err(0, "no initial state");
    };
    let mut aut = Apw::empty_shell(names.len(), letters.len());
    aut.names = names;
    aut.priority = priority;
    aut.initial = initial;
    let mut seen = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let (head, rest) = split_token(body);
        match head {
            "" | "state" => {}
            "trans" => {
                let (s, rest) = split_token(rest);
                let (a, rest) = split_token(rest);
                if a.is_empty() {
                    return src.err(line, "expected `trans <state> <letter> <formula>`");
                }
                let Some(s) = lookup(&aut.names, s) else {
                    return src.err(line, format!("unknown state `{s}`"));
                };
                let Some(a) = lookup(letters, a) else {
                    return src.err(line, format!("unknown letter `{a}`"));
                };
                if let Some(prev) = seen.insert((s, a), line) {
                    return src.err(line, format!("transition already given on line {prev}"));
                }
                let mut p = FormulaParser::new(rest);
                let f = match p.parse(&aut.names) {
                    Ok(f) if p.pos == p.toks.len() => f,
                    Ok(_) => return src.err(line, "trailing tokens after formula"),
                    Err(msg) => return src.err(line, msg),
                };
                aut.set_trans(s, a, f);
            }
            other => return src.err(line, format!("unknown directive `{other}`")),
        }
    }
    Ok(aut)
}

pub fn write_apw(aut: &Apw, letters: &[String]) -> String {
    let mut out = String::new();
    for s in 0..aut.num_states() {
        let init = if s == aut.initial { " initial" } else { "" };
        let _ = writeln!(out, "state {} {}{}", aut.names[s], aut.priority[s], init);
    }
    for s in 0..aut.num_states() {
        for (a, letter) in letters.iter().enumerate() {
            let f = aut.trans(s, a);
            if *f != Formula::False {
                let _ = writeln!(out, "trans {} {} {}", aut.names[s], letter, f.render(&aut.names));
            }
        }
    }
    out
}

/// Lasso `prefix | cycle` over the given vertex names, canonicalized.
pub fn parse_lasso(text: &str, file: &str, vertices: &[String]) -> Result<Lasso> {
    let src = Lines { file, text };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(k, raw)| (k + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let [(line, body)] = lines.as_slice() else {
        return src.err(
            lines.get(1).map_or(0, |l| l.0),
            "expected exactly one line `prefix | cycle`",
        );
    };
    let Some((pre, cyc)) = body.split_once('|').filter(|(_, c)| !c.contains('|')) else {
        return src.err(*line, "expected exactly one `|`");
    };
    let ids = |part: &str| -> Result<Vec<usize>> {
        part.split_whitespace()
            .map(|t| match lookup(vertices, t) {
                Some(v) => Ok(v),
                None => src.err(*line, format!("unknown vertex `{t}`")),
            })
            .collect()
    };
    let (pre, cyc) = (ids(pre)?, ids(cyc)?);
    if cyc.is_empty() {
        return src.err(*line, "empty cycle");
    }
    canonicalize_lasso(&pre, &cyc).or_else(|e| src.err(*line, e.to_string()))
}

pub fn write_lasso(x: &Lasso, vertices: &[String]) -> String {
    let names = |s: &[usize]| s.iter().map(|&v| vertices[v].as_str()).collect::<Vec<_>>().join(" ");
    let pre = names(x.prefix());
    if pre.is_empty() {
        format!("| {}\n", names(x.cycle()))
    } else {
        format!("{} | {}\n", pre, names(x.cycle()))
    }
}

/// Finite-memory strategy over the arena's vertex and player names.
pub fn parse_mealy(text: &str, file: &str, arena: &Arena) -> Result<Mealy> {
    let src = Lines { file, text };
    let mut names: Vec<String> = Vec::new();
    let mut initial = None;
    let mut player = None;
    let mut nondet = false;
    for (line, toks) in src.iter() {
        match toks[0] {
            "mstate" => {
                if toks.len() < 2 || toks.len() > 3 || (toks.len() == 3 && toks[2] != "initial") {
                    return src.err(line, "expected `mstate <name> [initial]`");
                }
                if lookup(&names, toks[1]).is_some() {
                    return src.err(line, format!("memory state `{}` declared twice", toks[1]));
                }
                if toks.len() == 3 {
                    if initial.is_some() {
                        return src.err(line, "second initial memory state");
                    }
                    initial = Some(names.len());
                }
                names.push(toks[1].to_string());
            }
            "player" => {
                if toks.len() != 2 || player.is_some() {
                    return src.err(line, "expected one `player <id>` line");
                }
                match arena.player_id(toks[1]) {
                    Some(p) => player = Some(p),
                    None => return src.err(line, format!("unknown player `{}`", toks[1])),
                }
            }
            "nondet" => nondet = true,
            "mtrans" => {}
            other => return src.err(line, format!("unknown directive `{other}`")),
        }
    }
    let Some(player) = player else {
        return src.err(0, "missing `player` line");
    };
    let Some(initial) = initial else {
        return src.err(0, "no initial memory state");
    };
    let mut m = Mealy::new(player);
    m.nondet = nondet;
    for n in &names {
        m.add_state(n.clone());
    }
    m.initial = initial;
    for (line, toks) in src.iter() {
        if toks[0] != "mtrans" {
            continue;
        }
        if toks.len() != 5 {
            return src.err(line, "expected `mtrans <mstate> <vertex> <next-mstate> <output|->`");
        }
        let mstate = |t: &str| match lookup(&names, t) {
            Some(k) => Ok(k),
            None => src.err(line, format!("unknown memory state `{t}`")),
        };
        let vertex = |t: &str| match arena.vertex_id(t) {
            Some(v) => Ok(v),
            None => src.err(line, format!("unknown vertex `{t}`")),
        };
        let (src_m, v, dst) = (mstate(toks[1])?, vertex(toks[2])?, mstate(toks[3])?);
        let out = if toks[4] == "-" {
            if arena.owner[v] == player {
                return src.err(line, "a move is required on the controlled player's vertex");
            }
            None
        } else {
            let w = vertex(toks[4])?;
            if arena.owner[v] != player {
                return src.err(line, "output `-` expected on vertices of other players");
            }
            if !arena.is_edge(v, w) {
                return src.err(line, format!("`{}` is not a successor of `{}`", toks[4], toks[2]));
            }
            Some(w)
        };
        if !nondet && !m.choices(src_m, v).is_empty() {
            return src.err(
                line,
                "second transition for the same memory state and vertex needs `nondet`",
            );
        }
        m.add_choice(src_m, v, dst, out);
    }
    Ok(m)
}

/// Memory names are made whitespace-free and unique.
pub fn write_mealy(m: &Mealy, arena: &Arena) -> String {
    let mut names: Vec<String> = Vec::with_capacity(m.size());
    for n in &m.names {
        let mut s: String = n
            .chars()
            .map(|c| if c.is_whitespace() || c == '#' { '_' } else { c })
            .collect();
        if s.is_empty() {
            s.push('m');
        }
        while names.contains(&s) {
            s.push('\'');
        }
        names.push(s);
    }
    let mut out = String::new();
    let _ = writeln!(out, "player {}", arena.player_names[m.player]);
    if m.nondet {
        out.push_str("nondet\n");
    }
    for (k, n) in names.iter().enumerate() {
        let init = if k == m.initial { " initial" } else { "" };
        let _ = writeln!(out, "mstate {n}{init}");
    }
    for (&(src, v), choices) in &m.table {
        for &(dst, o) in choices {
            let o = o.map_or("-", |w| arena.vertex_names[w].as_str());
            let _ = writeln!(
                out,
                "mtrans {} {} {} {}",
                names[src], arena.vertex_names[v], names[dst], o
            );
        }
    }
    out
}

fn intern(names: &mut Vec<String>, name: &str) -> usize {
    match lookup(names, name) {
        Some(p) => p,
        None => {
            names.push(name.to_string());
            names.len() - 1
        }
    }
}

/// Game file; relation paths are resolved against the directory of `path`.
pub fn load_game(path: &Path) -> Result<Game> {
    let text = read_file(path)?;
    parse_game(
        &text,
        &path.display().to_string(),
        path.parent().unwrap_or(Path::new(".")),
    )
}

/// Players are numbered in order of first mention, as vertex owner or in a
/// `relation` line.
pub fn parse_game(text: &str, file: &str, base: &Path) -> Result<Game> {
    let src = Lines { file, text };
    let mut vertices: Vec<String> = Vec::new();
    let mut players: Vec<String> = Vec::new();
    let mut owner = Vec::new();
    let mut edges = Vec::new();
    let mut init = None;
    let mut rel_files: Vec<(usize, usize, PathBuf)> = Vec::new();
    for (line, toks) in src.iter() {
        match (toks[0], toks.len()) {
            ("vertex", 3) => {
                if lookup(&vertices, toks[1]).is_some() {
                    return src.err(line, format!("vertex `{}` declared twice", toks[1]));
                }
                vertices.push(toks[1].to_string());
                owner.push(intern(&mut players, toks[2]));
            }
            ("relation", 3) => {
                let p = intern(&mut players, toks[1]);
                if rel_files.iter().any(|r| r.0 == p) {
                    return src.err(line, format!("second relation for player `{}`", toks[1]));
                }
                rel_files.push((p, line, base.join(toks[2])));
            }
            ("edge", 3) | ("init", 2) => {}
            (d @ ("vertex" | "relation" | "edge" | "init"), _) => {
                return src.err(line, format!("wrong number of arguments for `{d}`"))
            }
            (other, _) => return src.err(line, format!("unknown directive `{other}`")),
        }
    }
    for (line, toks) in src.iter() {
        let vertex = |t: &str| match lookup(&vertices, t) {
            Some(v) => Ok(v),
            None => src.err(line, format!("unknown vertex `{t}`")),
        };
        match toks[0] {
            "edge" => edges.push((vertex(toks[1])?, vertex(toks[2])?)),
            "init" => {
                if init.is_some() {
                    return src.err(line, "second `init` line");
                }
                init = Some(vertex(toks[1])?);
            }
            _ => {}
        }
    }
    if vertices.is_empty() {
        return src.err(0, "no vertices");
    }
    let mut relations: Vec<Option<PairDpw>> = vec![None; players.len()];
    for (p, _, path) in &rel_files {
        let text = read_file(path)?;
        relations[*p] = Some(parse_dpw(&text, &path.display().to_string(), &vertices)?);
    }
    let relations: Vec<PairDpw> = match relations.into_iter().enumerate().map(|(p, r)| r.ok_or(p)).collect() {
        Ok(r) => r,
        Err(p) => return src.err(0, format!("player `{}` has no relation", players[p])),
    };
    let mut arena = Arena::new(vertices, players, owner, &edges).map_err(|e| Error::Parse {
        file: file.to_string(),
        line: 0,
        msg: e.to_string(),
    })?;
    arena.initial = init.unwrap_or(0);
    Game::new(arena, relations)
}

/// Writes `<stem>.game` and one `<stem>.<player>.dpw` per player into `dir`;
/// returns the game file path.
pub fn write_game(g: &Game, dir: &Path, stem: &str) -> std::io::Result<PathBuf> {
    let a = &g.arena;
    let mut out = String::new();
    for v in 0..a.num_vertices() {
        let _ = writeln!(out, "vertex {} {}", a.vertex_names[v], a.player_names[a.owner[v]]);
    }
    for (u, v) in a.edges() {
        let _ = writeln!(out, "edge {} {}", a.vertex_names[u], a.vertex_names[v]);
    }
    let _ = writeln!(out, "init {}", a.vertex_names[a.initial]);
    for (i, rel) in g.relations.iter().enumerate() {
        let file = format!("{stem}.{}.dpw", a.player_names[i]);
        std::fs::write(dir.join(&file), write_dpw(rel, &a.vertex_names))?;
        let _ = writeln!(out, "relation {} {}", a.player_names[i], file);
    }
    let path = dir.join(format!("{stem}.game"));
    std::fs::write(&path, out)?;
    Ok(path)
}
