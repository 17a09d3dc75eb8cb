use crate::error::{malformed, Result};

/// Ultimately periodic word `prefix · cycle^ω` over dense letter ids, kept in
/// canonical form: primitive cycle, prefix as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

/// Canonical representative of `prefix · cycle^ω`.
pub fn canonicalize_lasso(prefix: &[usize], cycle: &[usize]) -> Result<Lasso> {
    if cycle.is_empty() {
        return malformed("lasso cycle must be non-empty");
    }
    let n = cycle.len();
    let period = (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|k| cycle[k] == cycle[k - d]))
        .unwrap_or(n);
    let mut cycle: Vec<usize> = cycle[..period].to_vec();
    let mut prefix = prefix.to_vec();
    while let Some(&last) = prefix.last() {
        if last != *cycle.last().unwrap() {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    Ok(Lasso { prefix, cycle })
}

impl Lasso {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<Lasso> {
        canonicalize_lasso(&prefix, &cycle)
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Number of positions, `|prefix| + |cycle|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at position `k` of the infinite word.
    pub fn at(&self, k: usize) -> usize {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Successor of a position in `0..len()`, wrapping into the cycle.
    pub fn next_pos(&self, p: usize) -> usize {
        if p + 1 < self.len() {
            p + 1
        } else {
            self.prefix.len()
        }
    }

    /// The finite word `prefix · cycle`.
    pub fn word(&self) -> Vec<usize> {
        let mut w = self.prefix.clone();
        w.extend_from_slice(&self.cycle);
        w
    }

    pub fn first(&self) -> usize {
        self.at(0)
    }

    /// Every letter occurring in the lasso.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.prefix.iter().chain(self.cycle.iter()).copied()
    }

    /// Sort key used for enumeration order.
    pub fn order_key(&self) -> (Vec<usize>, usize) {
        (self.word(), self.prefix.len())
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Synchronized product of two lassos as a (not necessarily canonical)
/// periodic word of letters `f(x_k, y_k)`.
pub fn zip_periodic(x: &Lasso, y: &Lasso, f: impl Fn(usize, usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let pre = x.prefix.len().max(y.prefix.len());
    let per = lcm(x.cycle.len(), y.cycle.len());
    let prefix = (0..pre).map(|k| f(x.at(k), y.at(k))).collect();
    let cycle = (pre..pre + per).map(|k| f(x.at(k), y.at(k))).collect();
    (prefix, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_root_and_rollback() {
        let l = canonicalize_lasso(&[0], &[1, 1]).unwrap();
        assert_eq!((l.prefix(), l.cycle()), (&[0][..], &[1][..]));
        let l = canonicalize_lasso(&[0, 1], &[2, 1]).unwrap();
        assert_eq!((l.prefix(), l.cycle()), (&[0][..], &[1, 2][..]));
        let l = canonicalize_lasso(&[], &[1, 2, 1, 2]).unwrap();
        assert_eq!((l.prefix(), l.cycle()), (&[][..], &[1, 2][..]));
        assert!(canonicalize_lasso(&[0], &[]).is_err());
    }

    #[test]
    fn positions_wrap_into_cycle() {
        let l = Lasso::new(vec![0], vec![1, 2]).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.next_pos(2), 1);
        assert_eq!((0..6).map(|k| l.at(k)).collect::<Vec<_>>(), vec![0, 1, 2, 1, 2, 1]);
    }
}
