//! Explicit graph helpers shared by the emptiness checks and verifiers.

use std::collections::VecDeque;

/// Tarjan's algorithm, iterative. Returns the component id of every node;
/// nodes with `alive[v] == false` are skipped and get `usize::MAX`.
pub fn scc(succ: &[Vec<usize>], alive: &[bool]) -> Vec<usize> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if !alive[root] || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                if !alive[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Nodes reachable from `init` through `alive` nodes.
pub fn reachable(succ: &[Vec<usize>], init: &[usize], alive: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &s in init {
        if alive[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if alive[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Shortest path (as a node list, both ends included) from any of `from`
/// to `to`, moving only through `alive` nodes.
pub fn shortest_path(succ: &[Vec<usize>], from: &[usize], to: usize, alive: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &s in from {
        if alive[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &succ[v] {
            if alive[w] && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest cycle through `v` inside `alive`, as the node list starting at
/// `v` (the closing edge back to `v` is implicit).
pub fn shortest_cycle(succ: &[Vec<usize>], v: usize, alive: &[bool]) -> Option<Vec<usize>> {
    if succ[v].contains(&v) {
        return Some(vec![v]);
    }
    let starts: Vec<usize> = succ[v].iter().copied().filter(|&w| alive[w]).collect();
    let mut parent = vec![usize::MAX; succ.len()];
    let mut seen = vec![false; succ.len()];
    let mut queue = VecDeque::new();
    for &s in &starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if u == v {
            let mut path = vec![];
            let mut cur = u;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            let mut cycle = vec![v];
            cycle.extend(path);
            return Some(cycle);
        }
        for &w in &succ[u] {
            if alive[w] && !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn nontrivial(succ: &[Vec<usize>], comp: &[usize], sizes: &[usize], v: usize) -> bool {
    sizes[comp[v]] > 1 || succ[v].contains(&v)
}

fn comp_sizes(comp: &[usize]) -> Vec<usize> {
    let m = comp.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    let mut sizes = vec![0; m];
    for &c in comp {
        if c != usize::MAX {
            sizes[c] += 1;
        }
    }
    sizes
}

/// Finds a lasso-shaped path from `init` whose cycle visits a node with
/// `accepting` true. Returns (prefix, cycle) node lists; the prefix ends just
/// before the first cycle node.
pub fn buchi_lasso(succ: &[Vec<usize>], init: &[usize], accepting: &[bool]) -> Option<(Vec<usize>, Vec<usize>)> {
    let all = vec![true; succ.len()];
    let reach = reachable(succ, init, &all);
    let comp = scc(succ, &reach);
    let sizes = comp_sizes(&comp);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let dist = bfs_dist(succ, init);
    for v in 0..succ.len() {
        if reach[v]
            && accepting[v]
            && nontrivial(succ, &comp, &sizes, v)
            && best.as_ref().is_none_or(|(d, _)| dist[v] < *d)
        {
            best = Some((dist[v], vec![v]));
        }
    }
    let (_, target) = best?;
    let v = target[0];
    let in_comp: Vec<bool> = comp.iter().map(|&c| c == comp[v]).collect();
    let path = shortest_path(succ, init, v, &all)?;
    let cycle = shortest_cycle(succ, v, &in_comp)?;
    Some((path[..path.len() - 1].to_vec(), cycle))
}

fn bfs_dist(succ: &[Vec<usize>], init: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; succ.len()];
    let mut queue = VecDeque::new();
    for &s in init {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Finds a reachable cycle whose maximal priority is even (max-parity
/// acceptance of a one-player graph). Returns (prefix, cycle) node lists.
pub fn even_cycle_lasso(succ: &[Vec<usize>], init: &[usize], priority: &[u32]) -> Option<(Vec<usize>, Vec<usize>)> {
    let all = vec![true; succ.len()];
    let reach = reachable(succ, init, &all);
    let mut evens: Vec<u32> = priority
        .iter()
        .zip(&reach)
        .filter(|(p, r)| **r && **p % 2 == 0)
        .map(|(p, _)| *p)
        .collect();
    evens.sort_unstable();
    evens.dedup();
    for d in evens {
        let alive: Vec<bool> = (0..succ.len()).map(|v| reach[v] && priority[v] <= d).collect();
        let comp = scc(succ, &alive);
        let sizes = comp_sizes(&comp);
        for v in 0..succ.len() {
            if alive[v] && priority[v] == d && nontrivial(succ, &comp, &sizes, v) {
                let in_comp: Vec<bool> = (0..succ.len()).map(|w| alive[w] && comp[w] == comp[v]).collect();
                let path = shortest_path(succ, init, v, &all)?;
                let cycle = shortest_cycle(succ, v, &in_comp)?;
                return Some((path[..path.len() - 1].to_vec(), cycle));
            }
        }
    }
    None
}

/// Finds a reachable cycle that satisfies every max-parity condition in
/// `priorities` at once (each vector assigns one priority per node).
pub fn multi_parity_lasso(
    succ: &[Vec<usize>],
    init: &[usize],
    priorities: &[Vec<u32>],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let all = vec![true; succ.len()];
    let reach = reachable(succ, init, &all);
    let (nodes, targets) = good_component(succ, priorities, reach)?;
    let path = shortest_path(succ, init, targets[0], &all)?;
    let cycle = cycle_through(succ, &targets, &nodes)?;
    Some((path[..path.len() - 1].to_vec(), cycle))
}

/// Strongly connected set inside `alive` where each condition's maximum is
/// even, with one node per condition carrying that maximum.
fn good_component(succ: &[Vec<usize>], priorities: &[Vec<u32>], alive: Vec<bool>) -> Option<(Vec<bool>, Vec<usize>)> {
    let comp = scc(succ, &alive);
    let sizes = comp_sizes(&comp);
    for c in 0..sizes.len() {
        let members: Vec<usize> = (0..succ.len()).filter(|&v| alive[v] && comp[v] == c).collect();
        if !nontrivial(succ, &comp, &sizes, members[0]) {
            continue;
        }
        let in_comp: Vec<bool> = (0..succ.len()).map(|v| alive[v] && comp[v] == c).collect();
        let tops: Vec<u32> = priorities
            .iter()
            .map(|pr| members.iter().map(|&v| pr[v]).max().unwrap())
            .collect();
        match tops.iter().position(|t| t % 2 == 1) {
            None => {
                let mut targets: Vec<usize> = priorities
                    .iter()
                    .zip(&tops)
                    .map(|(pr, &t)| *members.iter().find(|&&v| pr[v] == t).unwrap())
                    .collect();
                if targets.is_empty() {
                    targets.push(members[0]);
                }
                targets.dedup();
                return Some((in_comp, targets));
            }
            Some(k) => {
                let rest: Vec<bool> = (0..succ.len())
                    .map(|v| in_comp[v] && priorities[k][v] != tops[k])
                    .collect();
                if let Some(found) = good_component(succ, priorities, rest) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// Cycle inside `alive` starting at `targets[0]` and visiting every target.
fn cycle_through(succ: &[Vec<usize>], targets: &[usize], alive: &[bool]) -> Option<Vec<usize>> {
    if targets.len() == 1 {
        return shortest_cycle(succ, targets[0], alive);
    }
    let mut cycle = vec![targets[0]];
    let mut cur = targets[0];
    for &t in &targets[1..] {
        let p = shortest_path(succ, &[cur], t, alive)?;
        cycle.extend_from_slice(&p[1..]);
        cur = t;
    }
    if cur == targets[0] {
        return Some(cycle);
    }
    let from: Vec<usize> = succ[cur].iter().copied().filter(|&w| alive[w]).collect();
    let back = shortest_path(succ, &from, targets[0], alive)?;
    cycle.extend_from_slice(&back[..back.len() - 1]);
    Some(cycle)
}
