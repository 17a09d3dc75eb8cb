//! Determinization of Büchi automata with compact Safra trees: nodes are
//! named by age, names are compacted after every step, and the parity of a
//! step is read off the smallest name that was removed or marked.

use std::collections::HashMap;

use super::dpw::Dpw;
use super::formula::union_sorted;
use super::nbw::Nbw;
use crate::error::{Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(super) struct Node {
    name: u32,
    label: Vec<usize>,
    children: Vec<Node>,
}

impl Node {
    fn names(&self, out: &mut Vec<u32>) {
        out.push(self.name);
        for c in &self.children {
            c.names(out);
        }
    }

    fn find_mut(&mut self, name: u32) -> Option<&mut Node> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter_mut().find_map(|c| c.find_mut(name))
    }

    fn update(&mut self, succ: &dyn Fn(usize) -> Vec<usize>) {
        let mut next: Vec<usize> = Vec::new();
        for &q in &self.label {
            next = union_sorted(&next, &succ(q));
        }
        self.label = next;
        for c in &mut self.children {
            c.update(succ);
        }
    }

    fn horizontal(&mut self) {
        let mut claimed: Vec<usize> = Vec::new();
        let parent = self.label.clone();
        for c in &mut self.children {
            c.label
                .retain(|q| parent.binary_search(q).is_ok() && claimed.binary_search(q).is_err());
            claimed = union_sorted(&claimed, &c.label);
            c.horizontal();
        }
    }

    fn drop_empty(&mut self, removed: &mut Vec<u32>) {
        self.children.retain(|c| {
            if c.label.is_empty() {
                c.names(removed);
                false
            } else {
                true
            }
        });
        for c in &mut self.children {
            c.drop_empty(removed);
        }
    }

    fn vertical(&mut self, removed: &mut Vec<u32>, green: &mut Vec<u32>) {
        if self.children.is_empty() {
            return;
        }
        let mut union: Vec<usize> = Vec::new();
        for c in &self.children {
            union = union_sorted(&union, &c.label);
        }
        if union == self.label {
            for c in &self.children {
                c.names(removed);
            }
            self.children.clear();
            green.push(self.name);
        } else {
            for c in &mut self.children {
                c.vertical(removed, green);
            }
        }
    }

    fn rename(&mut self, map: &HashMap<u32, u32>) {
        self.name = map[&self.name];
        for c in &mut self.children {
            c.rename(map);
        }
    }
}

/// Tree with a single root labelled by the sorted, deduplicated `label`.
pub(super) fn initial_tree(label: Vec<usize>) -> Option<Node> {
    if label.is_empty() {
        None
    } else {
        Some(Node {
            name: 1,
            label,
            children: Vec::new(),
        })
    }
}

/// One Safra step over `n` Büchi states. `succ` returns sorted successor
/// lists. Yields the next tree (`None` once no run is left) and the priority.
pub(super) fn step(
    tree: &Node,
    succ: &dyn Fn(usize) -> Vec<usize>,
    accepting: &dyn Fn(usize) -> bool,
    n: u32,
) -> (Option<Node>, u32) {
    let mut t = tree.clone();
    let mut old = Vec::new();
    t.names(&mut old);
    old.sort_unstable();
    let old_max = *old.last().unwrap();
    t.update(succ);
    let mut fresh = old_max;
    for &name in &old {
        let node = t.find_mut(name).unwrap();
        let fin: Vec<usize> = node.label.iter().copied().filter(|&q| accepting(q)).collect();
        if !fin.is_empty() {
            fresh += 1;
            node.children.push(Node {
                name: fresh,
                label: fin,
                children: Vec::new(),
            });
        }
    }
    t.horizontal();
    let mut removed = Vec::new();
    let mut green = Vec::new();
    if t.label.is_empty() {
        return (None, 1);
    }
    t.drop_empty(&mut removed);
    t.vertical(&mut removed, &mut green);
    let red = removed.into_iter().filter(|&x| x <= old_max).min();
    let green = green.into_iter().min();
    let priority = match (red, green) {
        (Some(r), Some(g)) if r < g => 2 * (n - r) + 3,
        (Some(r), None) => 2 * (n - r) + 3,
        (_, Some(g)) => 2 * (n - g) + 2,
        (None, None) => 1,
    };
    let mut alive = Vec::new();
    t.names(&mut alive);
    alive.sort_unstable();
    let map: HashMap<u32, u32> = alive.iter().enumerate().map(|(k, &x)| (x, k as u32 + 1)).collect();
    t.rename(&map);
    (Some(t), priority)
}

/// Deterministic parity automaton over the same letters with the same
/// language. States are (tree, priority of the step that produced it); the
/// empty tree is a rejecting sink.
pub fn determinize_nbw(aut: &Nbw, limits: &Limits) -> Result<Dpw> {
    let n = aut.num_states().max(1) as u32;
    let sigma = aut.alphabet;
    let mut init_label = aut.initial.clone();
    init_label.sort_unstable();
    init_label.dedup();
    type Key = (Option<Node>, u32);
    let init_tree = initial_tree(init_label);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = vec![(init_tree.clone(), 1)];
    index.insert((init_tree, 1), 0);
    let mut delta: Vec<usize> = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        let (tree, _) = keys[next].clone();
        next += 1;
        for a in 0..sigma {
            let key = match &tree {
                None => (None, 1),
                Some(t) => {
                    let succ = |q: usize| {
                        let mut v = aut.succ(q, a).to_vec();
                        v.sort_unstable();
                        v.dedup();
                        v
                    };
                    step(t, &succ, &|q| aut.accepting[q], n)
                }
            };
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    limits.check("determinize_nbw", id + 1)?;
                    index.insert(key.clone(), id);
                    keys.push(key);
                    id
                }
            };
            delta.push(id);
        }
    }
    log::info!(
        "determinize_nbw: {} Büchi states -> {} parity states",
        aut.num_states(),
        keys.len()
    );
    Ok(Dpw {
        names: (0..keys.len()).map(|k| format!("t{k}")).collect(),
        initial: 0,
        alphabet: sigma,
        delta,
        priority: keys.iter().map(|(_, p)| *p).collect(),
    })
}
