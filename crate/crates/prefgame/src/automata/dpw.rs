use super::apw::Apw;
use super::formula::Formula;
use super::lasso::{zip_periodic, Lasso};
use crate::error::{malformed, Result};

/// Deterministic, complete parity automaton with state priorities, max-parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpw {
    pub names: Vec<String>,
    pub initial: usize,
    pub alphabet: usize,
    /// `delta[q * alphabet + a]`
    pub delta: Vec<usize>,
    pub priority: Vec<u32>,
}

impl Dpw {
    pub fn num_states(&self) -> usize {
        self.priority.len()
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet + a]
    }

    pub fn index(&self) -> u32 {
        self.priority.iter().copied().max().unwrap_or(0)
    }

    /// Runs on `prefix · cycle^ω` until a (position, state) pair repeats.
    pub fn accepts_periodic(&self, prefix: &[usize], cycle: &[usize]) -> bool {
        let positions = prefix.len() + cycle.len();
        let nq = self.num_states();
        let mut seen = vec![usize::MAX; positions * nq];
        let mut trace: Vec<u32> = Vec::new();
        let mut q = self.initial;
        let mut p = 0;
        loop {
            let slot = p * nq + q;
            if seen[slot] != usize::MAX {
                let max = trace[seen[slot]..].iter().copied().max().unwrap();
                return max % 2 == 0;
            }
            seen[slot] = trace.len();
            trace.push(self.priority[q]);
            let a = if p < prefix.len() {
                prefix[p]
            } else {
                cycle[p - prefix.len()]
            };
            q = self.step(q, a);
            p = if p + 1 < positions { p + 1 } else { prefix.len() };
        }
    }

    pub fn accepts(&self, x: &Lasso) -> bool {
        self.accepts_periodic(x.prefix(), x.cycle())
    }

    /// Same automaton with every priority raised by one.
    pub fn complement(&self) -> Dpw {
        Dpw {
            priority: self.priority.iter().map(|p| p + 1).collect(),
            ..self.clone()
        }
    }

    /// The automaton seen as an alternating one with single-atom formulas.
    pub fn to_apw(&self) -> Apw {
        let delta = self.delta.iter().map(|&t| Formula::Atom(t)).collect();
        Apw {
            names: self.names.clone(),
            initial: self.initial,
            alphabet: self.alphabet,
            delta,
            priority: self.priority.clone(),
        }
    }
}

/// Letter pattern in a pair transition before expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Any,
    Is(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DpwIssue {
    /// Two rules of equal precedence disagree; the first declared one wins.
    Nondeterministic { state: String, left: usize, right: usize },
    /// Letters without a rule were routed to the added rejecting sink.
    Incomplete { missing: usize },
}

/// Parity automaton over the pair alphabet `V × V`, letter `(l, r)` encoded
/// as `l * width + r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDpw {
    pub width: usize,
    pub dpw: Dpw,
    pub sink: Option<usize>,
    pub issues: Vec<DpwIssue>,
}

impl PairDpw {
    pub fn num_states(&self) -> usize {
        self.dpw.num_states()
    }

    pub fn step(&self, q: usize, l: usize, r: usize) -> usize {
        self.dpw.step(q, l * self.width + r)
    }

    pub fn priority(&self, q: usize) -> u32 {
        self.dpw.priority[q]
    }

    pub fn initial(&self) -> usize {
        self.dpw.initial
    }

    fn check_letters(&self, x: &Lasso) -> Result<()> {
        match x.letters().find(|&v| v >= self.width) {
            Some(v) => malformed(format!("letter {v} outside the automaton alphabet")),
            None => Ok(()),
        }
    }

    /// Whether the synchronized pair `(x, y)` is accepted.
    pub fn eval(&self, x: &Lasso, y: &Lasso) -> Result<bool> {
        self.check_letters(x)?;
        self.check_letters(y)?;
        let w = self.width;
        let (pre, cyc) = zip_periodic(x, y, |a, b| a * w + b);
        Ok(self.dpw.accepts_periodic(&pre, &cyc))
    }

    pub fn complement(&self) -> PairDpw {
        PairDpw {
            width: self.width,
            dpw: self.dpw.complement(),
            sink: self.sink,
            issues: Vec::new(),
        }
    }

    /// Single state of priority 0 (`full = true`) or 1, looping on everything.
    pub fn trivial(width: usize, full: bool) -> PairDpw {
        let name = if full { "all" } else { "none" };
        PairDpw {
            width,
            dpw: Dpw {
                names: vec![name.to_string()],
                initial: 0,
                alphabet: width * width,
                delta: vec![0; width * width],
                priority: vec![if full { 0 } else { 1 }],
            },
            sink: None,
            issues: Vec::new(),
        }
    }

    /// Deterministic automaton over `V` accepting `{ρ : (pi, ρ) accepted}`:
    /// the left track is driven by the lasso. States are (state, position).
    pub fn drive_left(&self, pi: &Lasso) -> Dpw {
        let n = pi.len();
        let nq = self.num_states();
        let w = self.width;
        let id = |q: usize, p: usize| q * n + p;
        let mut names = Vec::with_capacity(nq * n);
        let mut delta = vec![0; nq * n * w];
        let mut priority = Vec::with_capacity(nq * n);
        for q in 0..nq {
            for p in 0..n {
                names.push(format!("{}@{}", self.dpw.names[q], p));
                priority.push(self.priority(q));
                for b in 0..w {
                    delta[id(q, p) * w + b] = id(self.step(q, pi.at(p), b), pi.next_pos(p));
                }
            }
        }
        Dpw {
            names,
            initial: id(self.initial(), 0),
            alphabet: w,
            delta,
            priority,
        }
    }

    /// Same relation with the two tracks exchanged.
    pub fn swap_tracks(&self) -> PairDpw {
        let w = self.width;
        let mut dpw = self.dpw.clone();
        for q in 0..dpw.num_states() {
            for l in 0..w {
                for r in 0..w {
                    dpw.delta[q * w * w + l * w + r] = self.step(q, r, l);
                }
            }
        }
        PairDpw {
            width: w,
            dpw,
            sink: self.sink,
            issues: Vec::new(),
        }
    }
}

/// `complement_dpw`: same structure, priorities raised by one.
pub fn complement_dpw(aut: &PairDpw) -> PairDpw {
    aut.complement()
}

/// `eval_dpw_pair`.
pub fn eval_dpw_pair(aut: &PairDpw, x: &Lasso, y: &Lasso) -> Result<bool> {
    aut.eval(x, y)
}

/// Collects wildcard rules and expands them into a complete [`PairDpw`].
#[derive(Clone, Debug)]
pub struct PairDpwBuilder {
    width: usize,
    names: Vec<String>,
    priority: Vec<u32>,
    initial: Option<usize>,
    rules: Vec<(usize, Letter, Letter, usize)>,
}

impl PairDpwBuilder {
    pub fn new(width: usize) -> Self {
        PairDpwBuilder {
            width,
            names: Vec::new(),
            priority: Vec::new(),
            initial: None,
            rules: Vec::new(),
        }
    }

    pub fn state(&mut self, name: &str, priority: u32) -> usize {
        self.names.push(name.to_string());
        self.priority.push(priority);
        self.names.len() - 1
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&mut self, q: usize) -> &mut Self {
        self.initial = Some(q);
        self
    }

    pub fn has_initial(&self) -> bool {
        self.initial.is_some()
    }

    pub fn rule(&mut self, src: usize, l: Letter, r: Letter, dst: usize) -> &mut Self {
        self.rules.push((src, l, r, dst));
        self
    }

    pub fn build(&self) -> Result<PairDpw> {
        let Some(initial) = self.initial else {
            return malformed("relation automaton has no initial state");
        };
        let w = self.width;
        let nq = self.names.len();
        let mut names = self.names.clone();
        let mut priority = self.priority.clone();
        let mut delta = vec![usize::MAX; nq * w * w];
        let mut level = vec![u8::MAX; nq * w * w];
        let mut issues = Vec::new();
        for &(src, l, r, dst) in &self.rules {
            let lvl = match (l, r) {
                (Letter::Is(_), Letter::Is(_)) => 0,
                (Letter::Is(_), Letter::Any) => 1,
                (Letter::Any, Letter::Is(_)) => 2,
                (Letter::Any, Letter::Any) => 3,
            };
            let ls: Vec<usize> = match l {
                Letter::Is(a) => vec![a],
                Letter::Any => (0..w).collect(),
            };
            let rs: Vec<usize> = match r {
                Letter::Is(b) => vec![b],
                Letter::Any => (0..w).collect(),
            };
            for &a in &ls {
                for &b in &rs {
                    let slot = src * w * w + a * w + b;
                    if lvl < level[slot] {
                        level[slot] = lvl;
                        delta[slot] = dst;
                    } else if lvl == level[slot] && delta[slot] != dst {
                        issues.push(DpwIssue::Nondeterministic {
                            state: self.names[src].clone(),
                            left: a,
                            right: b,
                        });
                    }
                }
            }
        }
        let missing = delta.iter().filter(|&&t| t == usize::MAX).count();
        let mut sink = None;
        if missing > 0 {
            let mut name = "sink".to_string();
            while names.contains(&name) {
                name.push('_');
            }
            names.push(name);
            priority.push(1);
            let s = nq;
            for t in delta.iter_mut() {
                if *t == usize::MAX {
                    *t = s;
                }
            }
            delta.extend(std::iter::repeat_n(s, w * w));
            sink = Some(s);
            issues.push(DpwIssue::Incomplete { missing });
        }
        Ok(PairDpw {
            width: w,
            dpw: Dpw {
                names,
                initial,
                alphabet: w * w,
                delta,
                priority,
            },
            sink,
            issues,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_exact_beats_wildcards() {
        let mut b = PairDpwBuilder::new(2);
        let q = b.state("q", 0);
        let r = b.state("r", 1);
        b.initial(q);
        b.rule(q, Letter::Any, Letter::Any, q);
        b.rule(q, Letter::Any, Letter::Is(1), r);
        b.rule(q, Letter::Is(1), Letter::Any, q);
        b.rule(q, Letter::Is(0), Letter::Is(1), q);
        b.rule(r, Letter::Any, Letter::Any, r);
        let d = b.build().unwrap();
        assert_eq!(d.step(q, 0, 1), q);
        assert_eq!(d.step(q, 1, 1), q);
        assert_eq!(d.step(q, 0, 0), q);
        assert!(d.issues.is_empty());
        assert_eq!(d.sink, None);
    }

    #[test]
    fn missing_letters_go_to_sink() {
        let mut b = PairDpwBuilder::new(2);
        let q = b.state("q", 0);
        b.initial(q);
        b.rule(q, Letter::Is(0), Letter::Any, q);
        let d = b.build().unwrap();
        let s = d.sink.unwrap();
        assert_eq!(d.step(q, 1, 0), s);
        assert_eq!(d.priority(s), 1);
        assert_eq!(d.issues, vec![DpwIssue::Incomplete { missing: 2 }]);
    }

    #[test]
    fn trivial_relations() {
        let x = Lasso::new(vec![0], vec![1]).unwrap();
        let y = Lasso::new(vec![], vec![1, 0]).unwrap();
        assert!(PairDpw::trivial(2, true).eval(&x, &y).unwrap());
        assert!(!PairDpw::trivial(2, false).eval(&x, &y).unwrap());
        assert!(!PairDpw::trivial(2, true).complement().eval(&x, &y).unwrap());
    }
}
