use super::lasso::{canonicalize_lasso, Lasso};
use std::collections::HashMap;

use crate::error::{Limits, Result};
use crate::graph;

/// Nondeterministic Büchi automaton over dense letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nbw {
    pub alphabet: usize,
    pub initial: Vec<usize>,
    /// `delta[s * alphabet + a]`, successor lists without duplicates
    pub delta: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl Nbw {
    pub fn new(alphabet: usize) -> Nbw {
        Nbw {
            alphabet,
            initial: Vec::new(),
            delta: Vec::new(),
            accepting: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.delta.extend(std::iter::repeat_with(Vec::new).take(self.alphabet));
        self.accepting.len() - 1
    }

    pub fn add_edge(&mut self, s: usize, a: usize, t: usize) {
        let list = &mut self.delta[s * self.alphabet + a];
        if !list.contains(&t) {
            list.push(t);
        }
    }

    pub fn succ(&self, s: usize, a: usize) -> &[usize] {
        &self.delta[s * self.alphabet + a]
    }

    /// Letter-agnostic successor lists.
    pub fn graph(&self) -> Vec<Vec<usize>> {
        (0..self.num_states())
            .map(|s| {
                let mut out: Vec<usize> = Vec::new();
                for a in 0..self.alphabet {
                    for &t in self.succ(s, a) {
                        if !out.contains(&t) {
                            out.push(t);
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// Keeps only states that are reachable and can reach an accepting
    /// cycle; the language is unchanged.
    pub fn trim(&self) -> Nbw {
        let g = self.graph();
        let n = g.len();
        let all = vec![true; n];
        let reach = graph::reachable(&g, &self.initial, &all);
        let comp = graph::scc(&g, &reach);
        let mut size = std::collections::HashMap::new();
        for v in 0..n {
            if reach[v] {
                *size.entry(comp[v]).or_insert(0usize) += 1;
            }
        }
        let mut good = vec![false; n];
        for v in 0..n {
            if reach[v] && self.accepting[v] && (size[&comp[v]] > 1 || g[v].contains(&v)) {
                good[v] = true;
            }
        }
        // backward closure
        let mut rev = vec![Vec::new(); n];
        for v in 0..n {
            if reach[v] {
                for &w in &g[v] {
                    rev[w].push(v);
                }
            }
        }
        let seeds: Vec<usize> = (0..n).filter(|&v| good[v]).collect();
        let live = graph::reachable(&rev, &seeds, &reach);
        let mut map = vec![usize::MAX; n];
        let mut out = Nbw::new(self.alphabet);
        for v in 0..n {
            if live[v] {
                map[v] = out.add_state(self.accepting[v]);
            }
        }
        for v in 0..n {
            if !live[v] {
                continue;
            }
            for a in 0..self.alphabet {
                for &t in self.succ(v, a) {
                    if live[t] {
                        out.add_edge(map[v], a, map[t]);
                    }
                }
            }
        }
        out.initial = self.initial.iter().filter(|&&s| live[s]).map(|&s| map[s]).collect();
        out
    }

    /// Quotient by the coarsest bisimulation that respects acceptance; the
    /// language is unchanged.
    pub fn reduce(&self) -> Nbw {
        let n = self.num_states();
        let mut block: Vec<usize> = self.accepting.iter().map(|&a| usize::from(a)).collect();
        let mut count = 0;
        loop {
            let mut index: HashMap<(usize, Vec<Vec<usize>>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let sig: Vec<Vec<usize>> = (0..self.alphabet)
                    .map(|a| {
                        let mut bs: Vec<usize> = self.succ(s, a).iter().map(|&t| block[t]).collect();
                        bs.sort_unstable();
                        bs.dedup();
                        bs
                    })
                    .collect();
                let k = index.len();
                next[s] = *index.entry((block[s], sig)).or_insert(k);
            }
            let stable = index.len() == count;
            count = index.len();
            block = next;
            if stable {
                break;
            }
        }
        let mut out = Nbw::new(self.alphabet);
        for _ in 0..count {
            out.add_state(false);
        }
        for s in 0..n {
            out.accepting[block[s]] = self.accepting[s];
            for a in 0..self.alphabet {
                for &t in self.succ(s, a) {
                    out.add_edge(block[s], a, block[t]);
                }
            }
        }
        out.initial = self.initial.iter().map(|&s| block[s]).collect();
        out.initial.sort_unstable();
        out.initial.dedup();
        out
    }

    /// Existentially erases one track of a pair alphabet `width²`, keeping
    /// the right track (`keep_right`) or the left one.
    pub fn project(&self, width: usize, keep_right: bool) -> Nbw {
        assert_eq!(self.alphabet, width * width);
        let mut out = Nbw::new(width);
        for s in 0..self.num_states() {
            out.add_state(self.accepting[s]);
        }
        for s in 0..self.num_states() {
            for a in 0..width {
                for b in 0..width {
                    let kept = if keep_right { b } else { a };
                    for &t in self.succ(s, a * width + b) {
                        out.add_edge(s, kept, t);
                    }
                }
            }
        }
        out.initial = self.initial.clone();
        out
    }
}

/// Intersection through the product with a round-robin counter over the
/// components' acceptance; the counter moves on when the awaited component
/// is accepting.
pub fn intersect_nbws(list: &[Nbw], limits: &Limits) -> Result<Nbw> {
    assert!(!list.is_empty());
    let alphabet = list[0].alphabet;
    let m = list.len();
    let mut out = Nbw::new(alphabet);
    let mut index: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let mut queue: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut starts: Vec<Vec<usize>> = vec![Vec::new()];
    for aut in list {
        starts = starts
            .iter()
            .flat_map(|t| aut.initial.iter().map(move |&s| [t.as_slice(), &[s]].concat()))
            .collect();
    }
    let mut intern = |key: (Vec<usize>, usize), out: &mut Nbw, queue: &mut Vec<(Vec<usize>, usize)>| -> Result<usize> {
        if let Some(&id) = index.get(&key) {
            return Ok(id);
        }
        let id = out.add_state(key.1 == 0 && list[0].accepting[key.0[0]]);
        limits.check("intersect_nbws", id + 1)?;
        index.insert(key.clone(), id);
        queue.push(key);
        Ok(id)
    };
    for t in starts {
        let id = intern((t, 0), &mut out, &mut queue)?;
        out.initial.push(id);
    }
    let mut k = 0;
    while k < queue.len() {
        let (tuple, c) = queue[k].clone();
        let src = k;
        k += 1;
        let c2 = if list[c].accepting[tuple[c]] { (c + 1) % m } else { c };
        for a in 0..alphabet {
            let mut next: Vec<Vec<usize>> = vec![Vec::new()];
            for (j, aut) in list.iter().enumerate() {
                next = next
                    .iter()
                    .flat_map(|t| {
                        aut.succ(tuple[j], a)
                            .iter()
                            .map(move |&s| [t.as_slice(), &[s]].concat())
                    })
                    .collect();
            }
            for t in next {
                let dst = intern((t, c2), &mut out, &mut queue)?;
                out.add_edge(src, a, dst);
            }
        }
    }
    Ok(out.trim())
}

/// A canonical accepting lasso, or `None` when the language is empty.
pub fn nbw_empty(aut: &Nbw) -> Option<Lasso> {
    let g = aut.graph();
    let (pre, cyc) = graph::buchi_lasso(&g, &aut.initial, &aut.accepting)?;
    let letter = |s: usize, t: usize| (0..aut.alphabet).find(|&a| aut.succ(s, a).contains(&t)).unwrap();
    let mut path = pre.clone();
    path.push(cyc[0]);
    let prefix: Vec<usize> = path.windows(2).map(|w| letter(w[0], w[1])).collect();
    let cycle: Vec<usize> = (0..cyc.len())
        .map(|k| letter(cyc[k], cyc[(k + 1) % cyc.len()]))
        .collect();
    canonicalize_lasso(&prefix, &cycle).ok()
}

/// Whether `x` is accepted: product of the lasso positions with the states,
/// then an accepting cycle search.
pub fn nbw_lasso_member(aut: &Nbw, x: &Lasso) -> bool {
    if x.letters().any(|a| a >= aut.alphabet) {
        return false;
    }
    let n = aut.num_states();
    let len = x.len();
    let node = |p: usize, s: usize| p * n + s;
    let mut succ = vec![Vec::new(); len * n];
    let mut accepting = vec![false; len * n];
    for p in 0..len {
        let a = x.at(p);
        let np = x.next_pos(p);
        for s in 0..n {
            accepting[node(p, s)] = aut.accepting[s];
            for &t in aut.succ(s, a) {
                succ[node(p, s)].push(node(np, t));
            }
        }
    }
    let init: Vec<usize> = aut.initial.iter().map(|&s| node(0, s)).collect();
    graph::buchi_lasso(&succ, &init, &accepting).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loop_witness() {
        let mut a = Nbw::new(2);
        let s = a.add_state(true);
        a.add_edge(s, 0, s);
        a.initial = vec![s];
        let w = nbw_empty(&a).unwrap();
        assert_eq!((w.prefix(), w.cycle()), (&[][..], &[0][..]));
        assert!(nbw_lasso_member(&a, &w));
    }

    #[test]
    fn unreachable_accepting_state_is_empty() {
        let mut a = Nbw::new(1);
        let s = a.add_state(false);
        let t = a.add_state(true);
        a.add_edge(s, 0, s);
        a.add_edge(t, 0, t);
        a.initial = vec![s];
        assert!(nbw_empty(&a).is_none());
        assert_eq!(a.trim().num_states(), 0);
    }

    #[test]
    fn witness_with_prefix() {
        // s0 -0-> s1 -1-> s1 (accepting)
        let mut a = Nbw::new(2);
        let s0 = a.add_state(false);
        let s1 = a.add_state(true);
        a.add_edge(s0, 0, s1);
        a.add_edge(s1, 1, s1);
        a.initial = vec![s0];
        let w = nbw_empty(&a).unwrap();
        assert_eq!((w.prefix(), w.cycle()), (&[0][..], &[1][..]));
        assert!(nbw_lasso_member(&a, &w));
    }
}
