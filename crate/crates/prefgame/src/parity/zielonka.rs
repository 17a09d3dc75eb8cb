use super::{ParityGame, Regions, Side};

struct Ctx<'a> {
    g: &'a ParityGame,
    pred: Vec<Vec<usize>>,
}

/// Zielonka's recursive algorithm with memoryless strategy extraction.
pub fn solve(g: &ParityGame) -> Regions {
    g.check().expect("parity game positions need moves");
    let n = g.len();
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &g.succ[v] {
            pred[w].push(v);
        }
    }
    let ctx = Ctx { g, pred };
    let mut win = vec![Side::Even; n];
    let mut strategy = vec![None; n];
    let alive = vec![true; n];
    ctx.rec(&alive, &mut win, &mut strategy);
    let regions = Regions {
        win_even: win.iter().map(|&s| s == Side::Even).collect(),
        strategy,
    };
    debug_assert!(check_closed(g, &regions));
    regions
}

fn check_closed(g: &ParityGame, r: &Regions) -> bool {
    (0..g.len()).all(|v| {
        let side = r.winner(v);
        if g.owner[v] == side {
            r.strategy[v].is_some_and(|w| r.winner(w) == side && g.succ[v].contains(&w))
        } else {
            g.succ[v].iter().all(|&w| r.winner(w) == side)
        }
    })
}

impl Ctx<'_> {
    /// Attractor of `target` for `side` inside `alive`; records attracting
    /// moves for `side` positions outside `target`.
    fn attractor(&self, alive: &[bool], target: &[usize], side: Side, strategy: &mut [Option<usize>]) -> Vec<bool> {
        let g = self.g;
        let n = g.len();
        let mut inside = vec![false; n];
        let mut count: Vec<usize> = (0..n)
            .map(|v| {
                if alive[v] {
                    g.succ[v].iter().filter(|&&w| alive[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue: Vec<usize> = Vec::new();
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push(t);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for &v in &self.pred[w] {
                if !alive[v] || inside[v] {
                    continue;
                }
                if g.owner[v] == side {
                    inside[v] = true;
                    strategy[v] = Some(w);
                    queue.push(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        inside[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        inside
    }

    fn rec(&self, alive: &[bool], win: &mut [Side], strategy: &mut [Option<usize>]) {
        let g = self.g;
        let n = g.len();
        let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| g.priority[v]).max() else {
            return;
        };
        let p = Side::of_priority(d);
        let top: Vec<usize> = (0..n).filter(|&v| alive[v] && g.priority[v] == d).collect();
        let mut attr_strat = vec![None; n];
        let a = self.attractor(alive, &top, p, &mut attr_strat);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
        let mut sub_win = vec![Side::Even; n];
        let mut sub_strat = vec![None; n];
        self.rec(&rest, &mut sub_win, &mut sub_strat);
        let opp = p.opponent();
        let opp_region: Vec<usize> = (0..n).filter(|&v| rest[v] && sub_win[v] == opp).collect();
        if opp_region.is_empty() {
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                win[v] = p;
                strategy[v] = if g.owner[v] != p {
                    None
                } else if rest[v] {
                    sub_strat[v]
                } else if let Some(w) = attr_strat[v] {
                    Some(w)
                } else {
                    g.succ[v].iter().copied().find(|&w| alive[w])
                };
            }
            return;
        }
        let mut b_strat = vec![None; n];
        let b = self.attractor(alive, &opp_region, opp, &mut b_strat);
        let remaining: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
        self.rec(&remaining, win, strategy);
        for v in 0..n {
            if b[v] {
                win[v] = opp;
                strategy[v] = if g.owner[v] != opp {
                    None
                } else if rest[v] && sub_win[v] == opp {
                    sub_strat[v]
                } else {
                    b_strat[v]
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loops() {
        for (p, even) in [(0, true), (1, false)] {
            let mut g = ParityGame::default();
            let v = g.add("v", Side::Even, p);
            g.add_move(v, v);
            assert_eq!(solve(&g).win_even, vec![even]);
        }
    }

    #[test]
    fn odd_escapes_to_odd_loop() {
        let mut g = ParityGame::default();
        let a = g.add("a", Side::Odd, 2);
        let b = g.add("b", Side::Even, 1);
        g.add_move(a, a);
        g.add_move(a, b);
        g.add_move(b, b);
        let r = solve(&g);
        assert_eq!(r.win_even, vec![false, false]);
        assert_eq!(r.strategy[a], Some(b));
    }
}
