use std::fmt::Write as _;

/// Positive Boolean formula over state atoms. Built through [`Formula::and`]
/// and [`Formula::or`], which flatten, fold constants and drop duplicates, so
/// connective lists always hold at least two distinct children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(usize),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(s: usize) -> Formula {
        Formula::Atom(s)
    }

    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                Formula::And(inner) => {
                    for q in inner {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                other => {
                    if !out.contains(&other) {
                        out.push(other);
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out: Vec<Formula> = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                Formula::Or(inner) => {
                    for q in inner {
                        if !out.contains(&q) {
                            out.push(q);
                        }
                    }
                }
                other => {
                    if !out.contains(&other) {
                        out.push(other);
                    }
                }
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    /// Swaps `And`/`Or` and `True`/`False`.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(s) => Formula::Atom(*s),
            Formula::And(v) => Formula::Or(v.iter().map(Formula::dual).collect()),
            Formula::Or(v) => Formula::And(v.iter().map(Formula::dual).collect()),
        }
    }

    /// Substitutes every atom and renormalizes.
    pub fn subst(&self, f: &mut impl FnMut(usize) -> Formula) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(s) => f(*s),
            Formula::And(v) => {
                let parts: Vec<Formula> = v.iter().map(|g| g.subst(f)).collect();
                Formula::and(parts)
            }
            Formula::Or(v) => {
                let parts: Vec<Formula> = v.iter().map(|g| g.subst(f)).collect();
                Formula::or(parts)
            }
        }
    }

    pub fn shift_atoms(&self, offset: usize) -> Formula {
        self.subst(&mut |s| Formula::Atom(s + offset))
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(usize)) {
        match self {
            Formula::Atom(s) => f(*s),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|g| g.for_each_atom(f)),
            _ => {}
        }
    }

    pub fn atoms(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |s| {
            if !out.contains(&s) {
                out.push(s)
            }
        });
        out
    }

    pub fn eval(&self, holds: &impl Fn(usize) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(s) => holds(*s),
            Formula::And(v) => v.iter().all(|g| g.eval(holds)),
            Formula::Or(v) => v.iter().any(|g| g.eval(holds)),
        }
    }

    /// Minimal satisfying atom sets, each sorted, as an antichain.
    pub fn minimal_models(&self) -> Vec<Vec<usize>> {
        match self {
            Formula::True => vec![vec![]],
            Formula::False => vec![],
            Formula::Atom(s) => vec![vec![*s]],
            Formula::Or(v) => {
                let all = v.iter().flat_map(|g| g.minimal_models()).collect();
                minimize(all)
            }
            Formula::And(v) => {
                let mut acc: Vec<Vec<usize>> = vec![vec![]];
                for g in v {
                    let models = g.minimal_models();
                    let mut next = Vec::with_capacity(acc.len() * models.len());
                    for a in &acc {
                        for m in &models {
                            next.push(union_sorted(a, m));
                        }
                    }
                    acc = minimize(next);
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
        }
    }

    /// Renders the formula in the `.apw` grammar.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.render_into(names, &mut s);
        s
    }

    fn render_into(&self, names: &[String], out: &mut String) {
        match self {
            Formula::True => out.push_str("true"),
            Formula::False => out.push_str("false"),
            Formula::Atom(s) => {
                let _ = write!(out, "{}", names[*s]);
            }
            Formula::And(v) | Formula::Or(v) => {
                let sep = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                out.push('(');
                for (k, g) in v.iter().enumerate() {
                    if k > 0 {
                        out.push_str(sep);
                    }
                    g.render_into(names, out);
                }
                out.push(')');
            }
        }
    }
}

pub(crate) fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if a[i] > b[j] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn is_subset_sorted(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn minimize(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| is_subset_sorted(m, &s)) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::*;

    #[test]
    fn constructors_flatten_and_fold() {
        assert_eq!(Formula::and([True, Atom(1)]), Atom(1));
        assert_eq!(Formula::and([False, Atom(1)]), False);
        assert_eq!(Formula::or([True, Atom(1)]), True);
        assert_eq!(Formula::or(Vec::new()), False);
        assert_eq!(
            Formula::and([Atom(0), Formula::and([Atom(1), Atom(2)]), Atom(0)]),
            And(vec![Atom(0), Atom(1), Atom(2)])
        );
    }

    #[test]
    fn minimal_models_of_cnf() {
        let f = Formula::and([Formula::or([Atom(0), Atom(1)]), Atom(0)]);
        assert_eq!(f.minimal_models(), vec![vec![0]]);
        let g = Formula::and([Formula::or([Atom(0), Atom(1)]), Formula::or([Atom(2), Atom(3)])]);
        assert_eq!(g.minimal_models().len(), 4);
    }

    #[test]
    fn dual_swaps_connectives() {
        let f = Formula::and([Atom(0), Formula::or([Atom(1), Atom(2)])]);
        assert_eq!(f.dual(), Or(vec![Atom(0), And(vec![Atom(1), Atom(2)])]));
        assert_eq!(f.dual().dual(), f);
    }
}
