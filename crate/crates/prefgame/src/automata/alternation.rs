//! Alternation removal. Priorities are first compressed per strongly
//! connected component. A Büchi-shaped result is used as is; otherwise
//! memoryless run slices are guessed letter by letter while a determinized
//! detector of bad branches watches them, which leaves a nondeterministic
//! parity automaton.

use std::collections::HashMap;

use super::apw::Apw;
use super::formula::{is_subset_sorted, union_sorted, Formula};
use super::nbw::{intersect_nbws, Nbw};
use super::safra::{self, Node};
use crate::error::{malformed, Limits, Result};
use crate::graph;

/// Büchi-shaped automaton (priorities in {1, 2}) with the same language.
pub fn apw_to_abw(aut: &Apw, limits: &Limits) -> Result<Apw> {
    let a = compress_priorities(&aut.prune());
    let out = match a.index() {
        0..=2 => a,
        _ => {
            let npw = compress_priorities(&slice_determinize(&a, limits)?.prune());
            if npw.index() <= 2 {
                npw
            } else {
                guess_limits(&npw)
            }
        }
    };
    log::info!("apw_to_abw: {} states -> {} states", aut.num_states(), out.num_states());
    Ok(out)
}

fn state_graph(aut: &Apw) -> Vec<Vec<usize>> {
    (0..aut.num_states())
        .map(|q| {
            let mut succ: Vec<usize> = (0..aut.alphabet).flat_map(|a| aut.trans(q, a).atoms()).collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect()
}

/// Component id of every state, plus whether the component carries a cycle.
fn components(aut: &Apw) -> (Vec<usize>, Vec<bool>) {
    let succ = state_graph(aut);
    let comp = graph::scc(&succ, &vec![true; succ.len()]);
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut size = vec![0usize; ncomp];
    for &c in &comp {
        size[c] += 1;
    }
    let mut cyclic = vec![false; ncomp];
    for (q, &c) in comp.iter().enumerate() {
        if size[c] > 1 || succ[q].contains(&q) {
            cyclic[c] = true;
        }
    }
    (comp, cyclic)
}

/// Renumbers priorities inside every component to the smallest values with
/// the same order and parities, starting at 1 or 2. Every infinite branch ends
/// in one component, so acceptance is unchanged. States off every cycle get 1.
fn compress_priorities(aut: &Apw) -> Apw {
    let (comp, cyclic) = components(aut);
    let mut per_comp: Vec<Vec<u32>> = vec![Vec::new(); cyclic.len()];
    for (q, &c) in comp.iter().enumerate() {
        per_comp[c].push(aut.priority[q]);
    }
    let maps: Vec<HashMap<u32, u32>> = per_comp
        .into_iter()
        .map(|mut ps| {
            ps.sort_unstable();
            ps.dedup();
            let mut map = HashMap::new();
            let mut cur = 0;
            let mut prev = None;
            for p in ps {
                cur = match prev {
                    None => 2 - p % 2,
                    Some(q) if (q + p) % 2 == 1 => cur + 1,
                    Some(_) => cur,
                };
                map.insert(p, cur);
                prev = Some(p);
            }
            map
        })
        .collect();
    let mut out = aut.clone();
    for (q, &c) in comp.iter().enumerate() {
        out.priority[q] = if cyclic[c] { maps[c][&aut.priority[q]] } else { 1 };
    }
    out
}

/// Nondeterministic parity automaton (disjunctive formulas only) with the
/// same language.
///
/// A state is a level of a memoryless run together with a Safra tree over
/// the branch detector: copies of the original states that either wait or
/// have guessed an odd limit priority `d`, after which they must stay at or
/// below `d` and are accepting on `d`. The detector accepts the slices
/// exactly when some branch of the run is rejecting, so the complemented
/// Safra priority decides acceptance.
fn slice_determinize(aut: &Apw, limits: &Limits) -> Result<Apw> {
    let n = aut.num_states();
    let odd: Vec<u32> = (1..=aut.index()).filter(|d| d % 2 == 1).collect();
    let m = 1 + odd.len();
    let detector_size = (n * m) as u32;
    let seeds = |t: usize, out: &mut Vec<usize>| {
        out.push(t * m);
        for (j, &d) in odd.iter().enumerate() {
            if aut.priority[t] <= d {
                out.push(t * m + j + 1);
            }
        }
    };
    let accepting = |b: usize| !b.is_multiple_of(m) && aut.priority[b / m] == odd[b % m - 1];
    let mut models: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();

    type Key = (Vec<usize>, Option<Node>, u32);
    let mut init_label = Vec::new();
    seeds(aut.initial, &mut init_label);
    init_label.sort_unstable();
    let init: Key = (vec![aut.initial], safra::initial_tree(init_label), 1);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = vec![init.clone()];
    index.insert(init, 0);
    let mut succs: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        let (level, tree, _) = keys[next].clone();
        next += 1;
        let mut row = Vec::with_capacity(aut.alphabet);
        for a in 0..aut.alphabet {
            let options: Vec<Vec<Vec<usize>>> = level
                .iter()
                .map(|&q| {
                    models
                        .entry((q, a))
                        .or_insert_with(|| aut.trans(q, a).minimal_models())
                        .clone()
                })
                .collect();
            let mut targets = Vec::new();
            if options.iter().any(|o| o.is_empty()) {
                row.push(targets);
                continue;
            }
            let mut pick = vec![0usize; level.len()];
            loop {
                let chosen: Vec<&Vec<usize>> = pick.iter().zip(&options).map(|(&k, o)| &o[k]).collect();
                let mut level2 = Vec::new();
                for c in &chosen {
                    level2 = union_sorted(&level2, c);
                }
                let succ = |b: usize| {
                    let (q, j) = (b / m, b % m);
                    let pos = level.binary_search(&q).expect("detector state outside the level");
                    let mut out = Vec::new();
                    for &t in chosen[pos] {
                        if j == 0 {
                            seeds(t, &mut out);
                        } else if aut.priority[t] <= odd[j - 1] {
                            out.push(t * m + j);
                        }
                    }
                    out.sort_unstable();
                    out.dedup();
                    out
                };
                let (tree2, p) = match &tree {
                    None => (None, 1),
                    Some(t) => safra::step(t, &succ, &accepting, detector_size),
                };
                let key: Key = (level2, tree2, p);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = keys.len();
                        limits.check("apw_to_abw", id + 1)?;
                        index.insert(key.clone(), id);
                        keys.push(key);
                        id
                    }
                };
                targets.push(id);
                let mut k = 0;
                while k < pick.len() {
                    pick[k] += 1;
                    if pick[k] < options[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
            targets.sort_unstable();
            targets.dedup();
            row.push(targets);
        }
        succs.push(row);
    }
    let mut out = Apw::empty_shell(keys.len(), aut.alphabet);
    for (s, key) in keys.iter().enumerate() {
        out.names[s] = format!("d{s}");
        out.priority[s] = key.2 + 1;
        for (a, targets) in succs[s].iter().enumerate() {
            out.set_trans(s, a, Formula::or(targets.iter().map(|&t| Formula::Atom(t))));
        }
    }
    Ok(out)
}

/// Parity to Büchi for automata without conjunctions: every run is a single
/// branch, which may jump once from base mode into mode `d` for an even `d`,
/// stay at or below `d` afterwards and accept on `d`.
fn guess_limits(aut: &Apw) -> Apw {
    let n = aut.num_states();
    let modes: Vec<u32> = (0..=aut.index()).filter(|d| d % 2 == 0).collect();
    let m = modes.len();
    let mode_state = |q: usize, k: usize| n + q * m + k;
    let mut out = Apw::empty_shell(n + n * m, aut.alphabet);
    out.initial = aut.initial;
    for q in 0..n {
        out.names[q] = aut.names[q].clone();
        out.priority[q] = 1;
        for (k, &d) in modes.iter().enumerate() {
            let s = mode_state(q, k);
            out.names[s] = format!("{}^{}", aut.names[q], d);
            out.priority[s] = if aut.priority[q] == d { 2 } else { 1 };
        }
    }
    for q in 0..n {
        for a in 0..aut.alphabet {
            let f = aut.trans(q, a);
            debug_assert!(!matches!(f, Formula::And(_)));
            let base = f.subst(&mut |t| {
                let mut parts = vec![Formula::Atom(t)];
                for (k, &d) in modes.iter().enumerate() {
                    if aut.priority[t] <= d {
                        parts.push(Formula::Atom(mode_state(t, k)));
                    }
                }
                Formula::or(parts)
            });
            out.set_trans(q, a, base);
            for (k, &d) in modes.iter().enumerate() {
                let g = f.subst(&mut |t| {
                    if aut.priority[t] <= d {
                        Formula::Atom(mode_state(t, k))
                    } else {
                        Formula::False
                    }
                });
                out.set_trans(mode_state(q, k), a, g);
            }
        }
    }
    out
}

/// Breakpoint construction on a Büchi-shaped alternating automaton, built
/// lazily from `({initial}, ∅)`. States with an empty owing set accept.
///
/// Successor sets are unions of one minimal model per current state, which
/// covers every memoryless run.
pub fn abw_to_nbw(aut: &Apw, limits: &Limits) -> Result<Nbw> {
    if aut.priority.iter().any(|&p| p != 1 && p != 2) {
        return malformed("breakpoint construction expects priorities 1 and 2");
    }
    let sigma = aut.alphabet;
    let accepting: Vec<bool> = aut.priority.iter().map(|&p| p == 2).collect();
    let mut model_cache: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut models = |q: usize, a: usize| -> Vec<Vec<usize>> {
        model_cache
            .entry((q, a))
            .or_insert_with(|| aut.trans(q, a).minimal_models())
            .clone()
    };
    type Key = (Vec<usize>, Vec<usize>);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut out = Nbw::new(sigma);
    let init: Key = (vec![aut.initial], vec![]);
    index.insert(init.clone(), 0);
    keys.push(init);
    out.add_state(true);
    out.initial = vec![0];
    let mut next = 0;
    while next < keys.len() {
        let (s, o) = keys[next].clone();
        let id = next;
        next += 1;
        for a in 0..sigma {
            let mut conj: Vec<Vec<usize>> = vec![vec![]];
            for &q in &s {
                conj = product(&conj, &models(q, a));
                if conj.is_empty() {
                    break;
                }
            }
            for s2 in conj {
                let owes: Vec<Vec<usize>> = if o.is_empty() {
                    vec![s2.iter().copied().filter(|&t| !accepting[t]).collect()]
                } else {
                    let mut acc: Vec<Vec<usize>> = vec![vec![]];
                    for &q in &o {
                        let inside: Vec<Vec<usize>> =
                            models(q, a).into_iter().filter(|m| is_subset_sorted(m, &s2)).collect();
                        acc = product(&acc, &inside);
                    }
                    let mut acc: Vec<Vec<usize>> = acc
                        .into_iter()
                        .map(|mut owe| {
                            owe.retain(|&t| !accepting[t]);
                            owe
                        })
                        .collect();
                    acc.sort();
                    acc.dedup();
                    acc
                };
                for o2 in owes {
                    let key = (s2.clone(), o2);
                    let t = match index.get(&key) {
                        Some(&t) => t,
                        None => {
                            let t = out.add_state(key.1.is_empty());
                            limits.check("abw_to_nbw", t + 1)?;
                            index.insert(key.clone(), t);
                            keys.push(key);
                            t
                        }
                    };
                    out.add_edge(id, a, t);
                }
            }
        }
    }
    log::info!(
        "abw_to_nbw: {} alternating states -> {} breakpoint states",
        aut.num_states(),
        out.num_states()
    );
    Ok(out)
}

fn product(acc: &[Vec<usize>], models: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut next: Vec<Vec<usize>> = Vec::with_capacity(acc.len() * models.len());
    for a in acc {
        for m in models {
            next.push(union_sorted(a, m));
        }
    }
    next.sort_unstable();
    next.dedup();
    next
}

/// Alternation removal for an arbitrary APW. Conjunctions of independent
/// sub-automata below the initial state are converted one by one and
/// intersected afterwards.
pub fn apw_to_nbw(aut: &Apw, limits: &Limits) -> Result<Nbw> {
    let aut = aut.prune();
    if let Some(parts) = split_conjunction(&aut) {
        let mut nbws = Vec::with_capacity(parts.len());
        for p in &parts {
            let nbw = apw_to_nbw(p, limits)?;
            log::debug!(
                "conjunct of {} states: {} Büchi states",
                p.num_states(),
                nbw.num_states()
            );
            if nbw.num_states() == 0 {
                return Ok(nbw);
            }
            nbws.push(nbw);
        }
        return Ok(intersect_nbws(&nbws, limits)?.reduce());
    }
    let abw = apw_to_abw(&aut, limits)?.prune();
    Ok(abw_to_nbw(&abw, limits)?.trim().reduce())
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Splits an automaton whose initial state is left immediately and whose
/// initial transitions are conjunctions over unconnected groups of states.
/// Each part keeps a copy of the initial state.
fn split_conjunction(aut: &Apw) -> Option<Vec<Apw>> {
    let n = aut.num_states();
    let init = aut.initial;
    let mut parent: Vec<usize> = (0..n).collect();
    for q in 0..n {
        for a in 0..aut.alphabet {
            let atoms = aut.trans(q, a).atoms();
            if q != init && atoms.contains(&init) {
                return None;
            }
            if q == init {
                if atoms.contains(&init) {
                    return None;
                }
                continue;
            }
            for t in atoms {
                let (x, y) = (find(&mut parent, q), find(&mut parent, t));
                parent[x] = y;
            }
        }
    }
    let conjuncts = |a: usize| -> Vec<Formula> {
        match aut.trans(init, a) {
            Formula::And(v) => v.clone(),
            f => vec![f.clone()],
        }
    };
    for a in 0..aut.alphabet {
        for c in conjuncts(a) {
            let atoms = c.atoms();
            for w in atoms.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[x] = y;
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).filter(|&q| q != init).map(|q| find(&mut parent, q)).collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() < 2 {
        return None;
    }
    let mut parts = Vec::with_capacity(roots.len());
    for &r in &roots {
        let members: Vec<usize> = (0..n).filter(|&q| q != init && find(&mut parent, q) == r).collect();
        let mut map = vec![usize::MAX; n];
        map[init] = 0;
        for (k, &q) in members.iter().enumerate() {
            map[q] = k + 1;
        }
        let mut p = Apw::empty_shell(members.len() + 1, aut.alphabet);
        p.names[0] = aut.names[init].clone();
        p.priority[0] = aut.priority[init];
        for (k, &q) in members.iter().enumerate() {
            p.names[k + 1] = aut.names[q].clone();
            p.priority[k + 1] = aut.priority[q];
        }
        for a in 0..aut.alphabet {
            let mine = conjuncts(a).into_iter().filter(|c| {
                let atoms = c.atoms();
                atoms.is_empty() || find(&mut parent, atoms[0]) == r
            });
            let f = Formula::and(mine.collect::<Vec<_>>()).subst(&mut |t| Formula::Atom(map[t]));
            p.set_trans(0, a, f);
            for (k, &q) in members.iter().enumerate() {
                p.set_trans(k + 1, a, aut.trans(q, a).subst(&mut |t| Formula::Atom(map[t])));
            }
        }
        parts.push(p);
    }
    Some(parts)
}
