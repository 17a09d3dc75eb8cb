use crate::parity::{brute_solve_bounded, ParityGame, Side};

/// Winning region of Even through the oracle solvers: strategy enumeration
/// for games of at most ten positions, small progress measures otherwise.
pub fn oracle_solve(g: &ParityGame) -> Vec<bool> {
    if g.len() <= 10 {
        brute_solve_bounded(g, 10).expect("within bound").win_even
    } else {
        spm_solve(g)
    }
}

/// Small progress measures for max-parity games. Measures count visits to
/// odd priorities; a position is won by Even iff its measure stays finite.
pub fn spm_solve(g: &ParityGame) -> Vec<bool> {
    let n = g.len();
    let top = g.priority.iter().copied().max().unwrap_or(0) as usize;
    let mut bound = vec![0u32; top + 1];
    for &p in &g.priority {
        if p % 2 == 1 {
            bound[p as usize] += 1;
        }
    }
    let mut rho: Vec<Option<Vec<u32>>> = vec![Some(vec![0; top + 1]); n];
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &g.succ[v] {
            pred[w].push(v);
        }
    }
    let mut queue: Vec<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    while let Some(v) = queue.pop() {
        queued[v] = false;
        let p = g.priority[v] as usize;
        let options = g.succ[v].iter().map(|&w| prog(&rho[w], p, &bound));
        let best = match g.owner[v] {
            Side::Even => options.min_by(|a, b| cmp(a, b, 0)).unwrap(),
            Side::Odd => options.max_by(|a, b| cmp(a, b, 0)).unwrap(),
        };
        if cmp(&best, &rho[v], 0) == std::cmp::Ordering::Greater {
            rho[v] = best;
            for &u in &pred[v] {
                if !queued[u] {
                    queued[u] = true;
                    queue.push(u);
                }
            }
        }
    }
    rho.iter().map(Option::is_some).collect()
}

/// Compares measures on the components of index at least `from`, most
/// significant (highest priority) first. `None` is the top element.
fn cmp(a: &Option<Vec<u32>>, b: &Option<Vec<u32>>, from: usize) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a, b) {
        (None, None) => Equal,
        (None, _) => Greater,
        (_, None) => Less,
        (Some(x), Some(y)) => {
            for k in (from..x.len()).rev() {
                match x[k].cmp(&y[k]) {
                    Equal => {}
                    o => return o,
                }
            }
            Equal
        }
    }
}

/// Least measure that is at least `m` on components `≥ p`, strictly
/// greater there when `p` is odd.
fn prog(m: &Option<Vec<u32>>, p: usize, bound: &[u32]) -> Option<Vec<u32>> {
    let m = m.as_ref()?;
    let mut r = m.clone();
    for x in r.iter_mut().take(p) {
        *x = 0;
    }
    if p.is_multiple_of(2) {
        return Some(r);
    }
    let mut k = p;
    loop {
        if k >= r.len() {
            return None;
        }
        if r[k] < bound[k] {
            r[k] += 1;
            return Some(r);
        }
        r[k] = 0;
        k += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops() {
        let mut g = ParityGame::default();
        let a = g.add("a", Side::Even, 1);
        let b = g.add("b", Side::Even, 2);
        let c = g.add("c", Side::Odd, 3);
        g.add_move(a, a);
        g.add_move(a, b);
        g.add_move(b, b);
        g.add_move(c, c);
        assert_eq!(spm_solve(&g), vec![true, true, false]);
    }
}
