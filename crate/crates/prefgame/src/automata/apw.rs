use super::formula::Formula;
use crate::error::{malformed, Result};

/// Alternating parity automaton with positive Boolean transition formulas.
/// Missing transitions are `False`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apw {
    pub names: Vec<String>,
    pub initial: usize,
    pub alphabet: usize,
    /// `delta[s * alphabet + a]`
    pub delta: Vec<Formula>,
    pub priority: Vec<u32>,
}

impl Apw {
    /// Automaton with `n` states, every transition `False`, priority 0.
    pub fn empty_shell(n: usize, alphabet: usize) -> Apw {
        Apw {
            names: (0..n).map(|k| format!("s{k}")).collect(),
            initial: 0,
            alphabet,
            delta: vec![Formula::False; n * alphabet],
            priority: vec![0; n],
        }
    }

    /// One state looping on every letter; accepts everything or nothing.
    pub fn trivial(alphabet: usize, universal: bool) -> Apw {
        let mut a = Apw::empty_shell(1, alphabet);
        if universal {
            a.delta = vec![Formula::True; alphabet];
        }
        a
    }

    pub fn num_states(&self) -> usize {
        self.priority.len()
    }

    pub fn trans(&self, s: usize, a: usize) -> &Formula {
        &self.delta[s * self.alphabet + a]
    }

    pub fn set_trans(&mut self, s: usize, a: usize, f: Formula) {
        self.delta[s * self.alphabet + a] = f;
    }

    pub fn index(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Every atom names an existing state.
    pub fn check(&self) -> Result<()> {
        let n = self.num_states();
        if self.initial >= n {
            return malformed("initial state out of range");
        }
        if self.delta.len() != n * self.alphabet {
            return malformed("transition table has the wrong size");
        }
        for f in &self.delta {
            for s in f.atoms() {
                if s >= n {
                    return malformed(format!("formula atom {s} names no state"));
                }
            }
        }
        Ok(())
    }

    /// States reachable from the initial one through formula atoms.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for a in 0..self.alphabet {
                self.trans(s, a).for_each_atom(&mut |t| {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                });
            }
        }
        seen
    }

    /// Drops the states with `keep[s] == false`; atoms naming them must not
    /// occur in kept formulas.
    pub fn restrict(&self, keep: &[bool]) -> Result<Apw> {
        let mut map = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for (s, &k) in keep.iter().enumerate() {
            if k {
                map[s] = next;
                next += 1;
            }
        }
        if map[self.initial] == usize::MAX {
            return malformed("cannot drop the initial state");
        }
        let mut out = Apw::empty_shell(next, self.alphabet);
        out.initial = map[self.initial];
        let mut bad = false;
        for s in 0..self.num_states() {
            if !keep[s] {
                continue;
            }
            out.names[map[s]] = self.names[s].clone();
            out.priority[map[s]] = self.priority[s];
            for a in 0..self.alphabet {
                let f = self.trans(s, a).subst(&mut |t| {
                    if map[t] == usize::MAX {
                        bad = true;
                    }
                    Formula::Atom(map[t])
                });
                out.set_trans(map[s], a, f);
            }
        }
        if bad {
            return malformed("dropped state is still referenced");
        }
        Ok(out)
    }

    pub fn prune(&self) -> Apw {
        self.restrict(&self.reachable())
            .expect("unreachable states are never referenced")
    }

    /// Reads pairs `(a, b)` over `width²` letters and follows `a` only.
    pub fn lift_left(&self, width: usize) -> Apw {
        self.lift(width, true)
    }

    /// Reads pairs `(a, b)` over `width²` letters and follows `b` only.
    pub fn lift_right(&self, width: usize) -> Apw {
        self.lift(width, false)
    }

    fn lift(&self, width: usize, left: bool) -> Apw {
        assert_eq!(self.alphabet, width, "lifting needs the vertex alphabet");
        let mut out = Apw::empty_shell(self.num_states(), width * width);
        out.names = self.names.clone();
        out.initial = self.initial;
        out.priority = self.priority.clone();
        for s in 0..self.num_states() {
            for a in 0..width {
                for b in 0..width {
                    let src = if left { a } else { b };
                    out.set_trans(s, a * width + b, self.trans(s, src).clone());
                }
            }
        }
        out
    }
}

/// Swaps conjunctions with disjunctions and raises every priority by one.
pub fn dualize_apw(aut: &Apw) -> Apw {
    Apw {
        names: aut.names.clone(),
        initial: aut.initial,
        alphabet: aut.alphabet,
        delta: aut.delta.iter().map(Formula::dual).collect(),
        priority: aut.priority.iter().map(|p| p + 1).collect(),
    }
}

fn combine(list: &[Apw], conj: bool, fresh_priority: u32) -> Result<Apw> {
    let Some(first) = list.first() else {
        return malformed("cannot combine an empty automaton list");
    };
    let alphabet = first.alphabet;
    if list.iter().any(|a| a.alphabet != alphabet) {
        return malformed("automata disagree on the alphabet");
    }
    let total: usize = 1 + list.iter().map(Apw::num_states).sum::<usize>();
    let mut out = Apw::empty_shell(total, alphabet);
    out.names[0] = "init".to_string();
    out.priority[0] = fresh_priority;
    let mut offset = 1;
    let mut starts = Vec::new();
    for (k, a) in list.iter().enumerate() {
        starts.push(offset);
        for s in 0..a.num_states() {
            out.names[offset + s] = format!("{}.{}", k, a.names[s]);
            out.priority[offset + s] = a.priority[s];
            for c in 0..alphabet {
                out.set_trans(offset + s, c, a.trans(s, c).shift_atoms(offset));
            }
        }
        offset += a.num_states();
    }
    for c in 0..alphabet {
        let parts: Vec<Formula> = list
            .iter()
            .zip(&starts)
            .map(|(a, &o)| a.trans(a.initial, c).shift_atoms(o))
            .collect();
        let f = if conj { Formula::and(parts) } else { Formula::or(parts) };
        out.set_trans(0, c, f);
    }
    Ok(out)
}

/// Disjoint union plus a fresh initial state (priority 1) whose transition is
/// the conjunction of the components' initial transitions.
pub fn intersect_apws(list: &[Apw]) -> Result<Apw> {
    combine(list, true, 1)
}

/// Dual of [`intersect_apws`]: the fresh initial state takes the disjunction.
pub fn union_apws(list: &[Apw]) -> Result<Apw> {
    combine(list, false, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_counts_states() {
        let a = Apw::trivial(3, true);
        let b = Apw::trivial(3, false);
        let c = intersect_apws(&[a.clone(), b, a]).unwrap();
        assert_eq!(c.num_states(), 4);
        assert_eq!(c.trans(0, 0), &Formula::False);
        assert!(intersect_apws(&[Apw::trivial(2, true), Apw::trivial(3, true)]).is_err());
    }

    #[test]
    fn dual_of_universal_is_empty_shape() {
        let d = dualize_apw(&Apw::trivial(2, true));
        assert_eq!(d.trans(0, 1), &Formula::False);
        assert_eq!(d.priority, vec![1]);
    }
}
