//! Acceptance suite: one `PASS`/`FAIL` line per criterion, exit status 1 if
//! any criterion fails. Runs without the libtest harness so the lines show
//! up in plain `cargo test` output.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use prefgame::automata::{
    abw_to_nbw, apw_to_abw, apw_to_nbw, determinize_nbw, nbw_empty, nbw_lasso_member, Lasso, Mealy, PairDpw,
};
use prefgame::equilibria::{
    coalition_values_apw, lasso_is_ne_outcome, ne_exists, ne_outcome_apw, profile_outcome, verify_ne_profile,
};
use prefgame::game::{fork_game, Game};
use prefgame::io::load_game;
use prefgame::oracles::{
    brute_ne_outcome_for, enumerate_lassos, enumerate_words, exhaustive_family, generate_corpus, instance_rng,
    random_apw, random_game, random_parity_game, sweep_ne, Corpus,
};
use prefgame::parity::{brute_solve, lasso_membership_apw, solve};
use prefgame::synthesis::{crs_check, verify_crs, verify_ncrs, verify_ncrs_universal, zero_fixed_ne_apw, LeaderGame};
use prefgame::values::{determinacy_check, optimal_exists, threshold_check, verify_optimal, verify_threshold_strategy};
use prefgame::Limits;

type Verdict = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: prefgame::Error) -> String {
    e.to_string()
}

/// `count` lassos spread evenly over the canonical enumeration.
fn spread(all: &[Lasso], count: usize) -> Vec<Lasso> {
    if all.len() <= count {
        return all.to_vec();
    }
    (0..count).map(|k| all[k * all.len() / count].clone()).collect()
}

fn determinacy() -> Verdict {
    let mut cases = 0;
    for k in 0..200 {
        let mut rng = instance_rng(1, k);
        let g = random_game(&mut rng, 2 + k % 4, 2, 3);
        let lassos = spread(&enumerate_lassos(&g.arena, 0, 6), 20);
        for x in &lassos {
            for i in 0..2 {
                check(determinacy_check(&g, i, 0, x).map_err(err)?, || {
                    format!("game {k} player {i} lasso {}", g.arena.render_lasso(x))
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} game/player/lasso cases, all determined"))
}

fn value_fixtures() -> Verdict {
    let maxr = load_game(&fixture("fork-maxr.game")).map_err(err)?;
    let twot = load_game(&fixture("fork-twot.game")).map_err(err)?;
    let lassos = enumerate_lassos(&maxr.arena, 0, 6);
    for x in &lassos {
        check(threshold_check(&maxr, 0, x).map_err(err)?.0, || {
            format!("max-reward: {} not in the value", maxr.arena.render_lasso(x))
        })?;
        let both = x.letters().any(|v| v == 1) && x.letters().any(|v| v == 2);
        check(threshold_check(&twot, 0, x).map_err(err)?.0 == !both, || {
            format!("two targets: {} misclassified", twot.arena.render_lasso(x))
        })?;
    }
    Ok(format!("{} lassos per fixture, zero mismatches", lassos.len()))
}

fn memory_bound() -> Verdict {
    let mut machines = 0;
    for (k, g) in generate_corpus(&Corpus::default()).iter().enumerate() {
        for i in 0..g.num_players() {
            let bound_q = g.relations[i].num_states();
            for x in enumerate_lassos(&g.arena, 0, 4) {
                let (member, m) = threshold_check(g, i, &x).map_err(err)?;
                let Some(m) = m else {
                    check(!member, || format!("game {k}: member without a machine"))?;
                    continue;
                };
                check(m.size() <= bound_q * x.len(), || {
                    format!(
                        "game {k} player {i}: {} memory states > {}·{}",
                        m.size(),
                        bound_q,
                        x.len()
                    )
                })?;
                check(verify_threshold_strategy(g, i, &x, &m).map_err(err)?, || {
                    format!("game {k} player {i}: machine fails verification")
                })?;
                machines += 1;
            }
        }
    }
    Ok(format!("{machines} machines within |Q|·|π| and verified"))
}

fn no_optimal() -> Verdict {
    let limits = Limits::default();
    for name in ["fork-maxr.game", "fork-twot.game"] {
        let g = load_game(&fixture(name)).map_err(err)?;
        check(optimal_exists(&g, 0, 0, &limits).map_err(err)?.is_none(), || {
            format!("{name}: optimal strategy found")
        })?;
    }
    let g = load_game(&fixture("fork-full.game")).map_err(err)?;
    let m = optimal_exists(&g, 0, 0, &limits)
        .map_err(err)?
        .ok_or("full relation: no optimal strategy")?;
    check(verify_optimal(&g, 0, 0, &m, &limits).map_err(err)?, || {
        "full relation: machine not optimal".into()
    })?;
    Ok("no optimal strategy for max-reward and two targets; certified machine for the full relation".into())
}

fn coalition_identity() -> Verdict {
    let mut lassos = 0;
    for (k, g) in generate_corpus(&Corpus::default()).iter().enumerate() {
        let n = g.arena.num_vertices();
        let expect = 1 + g.relations.iter().map(|r| n * n * r.num_states()).sum::<usize>();
        let inter = coalition_values_apw(g, 0).map_err(err)?;
        check(inter.num_states() == expect, || {
            format!("game {k}: {} states, expected {expect}", inter.num_states())
        })?;
        let exact = ne_outcome_apw(g, 0).map_err(err)?;
        for x in enumerate_lassos(&g.arena, 0, 6) {
            let a = lasso_membership_apw(&exact, &x).map_err(err)?;
            let b = lasso_membership_apw(&inter, &x).map_err(err)?;
            check(a == b, || {
                format!("game {k}: {} exact {a}, conjunction {b}", g.arena.render_lasso(&x))
            })?;
            lassos += 1;
        }
    }
    Ok(format!("{lassos} lassos, zero mismatches; state counts exact"))
}

fn ne_witnesses() -> Verdict {
    let limits = Limits::default();
    let (mut yes, mut no) = (0, 0);
    for (k, g) in generate_corpus(&Corpus::default()).iter().enumerate() {
        let w = ne_exists(g, 0, &limits).map_err(err)?;
        let swept = !sweep_ne(g, 0, 8).is_empty();
        check(w.is_some() == swept, || {
            format!("game {k}: procedure {} sweep {swept}", w.is_some())
        })?;
        match w {
            Some(w) => {
                check(verify_ne_profile(g, 0, &w.profile).map_err(err)?, || {
                    format!("game {k}: profile rejected")
                })?;
                check(profile_outcome(g, 0, &w.profile).map_err(err)? == w.outcome, || {
                    format!("game {k}: profile outcome differs")
                })?;
                yes += 1;
            }
            None => no += 1,
        }
    }
    Ok(format!(
        "{yes} yes (certified), {no} no, all agree with the sweep at bound 8"
    ))
}

fn trivial(g: &Game, full: bool) -> Game {
    let n = g.arena.num_vertices();
    g.with_relations(vec![PairDpw::trivial(n, full); g.num_players()])
        .unwrap()
}

/// Deterministic leader machine with one memory state: at the `v`-th leader
/// vertex it moves to successor number `salt + v` modulo the out-degree.
fn leader_machine(g: &Game, salt: usize) -> Mealy {
    let mut m = Mealy::new(0);
    m.add_state("m");
    for v in 0..g.arena.num_vertices() {
        let succ = &g.arena.succ[v];
        let out = (g.arena.owner[v] == 0).then(|| succ[(salt + v) % succ.len()]);
        m.set(0, v, 0, out);
    }
    m
}

fn multi_player(count: usize) -> Vec<Game> {
    generate_corpus(&Corpus {
        count,
        ..Corpus::default()
    })
    .into_iter()
    .filter(|g| g.num_players() >= 2)
    .collect()
}

fn degenerate_laws() -> Verdict {
    let limits = Limits::default();
    let mut games = vec![fork_game(PairDpw::trivial(3, true), PairDpw::trivial(3, true))];
    games.extend(multi_player(30));
    let mut checks = 0;
    for (k, base) in games.iter().enumerate() {
        let full = trivial(base, true);
        let empty = trivial(base, false);
        for x in enumerate_lassos(&base.arena, 0, 5) {
            for i in 0..base.num_players() {
                check(threshold_check(&full, i, &x).map_err(err)?.0, || {
                    format!("game {k}: full value misses a play")
                })?;
                check(!threshold_check(&empty, i, &x).map_err(err)?.0, || {
                    format!("game {k}: empty value has a play")
                })?;
            }
            check(lasso_is_ne_outcome(&empty, 0, &x).map_err(err)?, || {
                format!("game {k}: empty relations, not an outcome")
            })?;
            check(!lasso_is_ne_outcome(&full, 0, &x).map_err(err)?, || {
                format!("game {k}: full relations, an outcome")
            })?;
            checks += 1;
        }
        let pi = enumerate_lassos(&base.arena, 0, 3).remove(0);
        let lg_full = LeaderGame::new(full.clone()).map_err(err)?;
        let lg_empty = LeaderGame::new(empty.clone()).map_err(err)?;
        check(crs_check(&lg_full, 0, &pi, &limits).map_err(err)?.is_none(), || {
            format!("game {k}: full relations leave a follower equilibrium")
        })?;
        check(crs_check(&lg_empty, 0, &pi, &limits).map_err(err)?.is_none(), || {
            format!("game {k}: empty leader relation accepted a play")
        })?;
        let m0 = leader_machine(base, k);
        check(verify_ncrs(&lg_full, 0, &pi, &m0, &limits).map_err(err)?.holds, || {
            format!("game {k}: non-cooperative check fails with a full leader relation")
        })?;
        check(!verify_crs(&lg_empty, 0, &pi, &m0, &limits).map_err(err)?.holds, || {
            format!("game {k}: cooperative check holds with an empty leader relation")
        })?;
    }
    Ok(format!(
        "{} games, {checks} lassos, value/equilibrium/synthesis laws exact",
        games.len()
    ))
}

fn pipeline() -> Verdict {
    let limits = Limits::default();
    let words = enumerate_words(3, 5);
    let mut cases = 0;
    for seed in 0..100 {
        let mut rng = instance_rng(8, seed);
        let apw = random_apw(&mut rng, 1 + seed % 3, 3, 4);
        let nbw = abw_to_nbw(&apw_to_abw(&apw, &limits).map_err(err)?, &limits).map_err(err)?;
        let dpw = determinize_nbw(&nbw.trim().reduce(), &limits).map_err(err)?;
        for x in &words {
            let direct = lasso_membership_apw(&apw, x).map_err(err)?;
            check(direct == nbw_lasso_member(&nbw, x), || {
                format!("automaton {seed}: pipeline differs on {x:?}")
            })?;
            check(direct == dpw.accepts(x), || {
                format!("automaton {seed}: determinization differs on {x:?}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} automaton/word cases, zero mismatches"))
}

fn parity() -> Verdict {
    let family = exhaustive_family();
    for (k, g) in family.iter().enumerate() {
        check(solve(g).win_even == brute_solve(g).map_err(err)?.win_even, || {
            format!("family game {k}")
        })?;
    }
    for k in 0..500 {
        let mut rng = instance_rng(9, k);
        let g = random_parity_game(&mut rng, 1 + k % 8, 4);
        check(solve(&g).win_even == brute_solve(&g).map_err(err)?.win_even, || {
            format!("random game {k}")
        })?;
    }
    Ok(format!(
        "{} exhaustive and 500 random games, zero mismatches",
        family.len()
    ))
}

fn synthesis() -> Verdict {
    let limits = Limits::default();
    let oracle_cap = Limits::new(200_000);
    let games = multi_player(100);
    let mut checks = 0;
    let mut swept = 0;
    for (k, g) in games.iter().enumerate() {
        let lg = LeaderGame::new(g.clone()).map_err(err)?;
        let n = g.arena.num_vertices();
        let mut rels = g.relations.clone();
        rels[0] = PairDpw::trivial(n, true);
        let full = LeaderGame::new(g.with_relations(rels).map_err(err)?).map_err(err)?;
        // Independent reference: the direct alternation removal of the
        // 0-fixed automaton, or the bounded follower sweep past its cap.
        let zero_fixed = match apw_to_nbw(&zero_fixed_ne_apw(&lg, 0).map_err(err)?, &oracle_cap) {
            Ok(nbw) => nbw_empty(&nbw).is_some(),
            Err(prefgame::Error::Capacity { .. }) => {
                swept += 1;
                let followers = lg.followers();
                enumerate_lassos(&g.arena, 0, 8)
                    .iter()
                    .any(|x| brute_ne_outcome_for(g, x, &followers))
            }
            Err(e) => return Err(err(e)),
        };
        let pis = enumerate_lassos(&g.arena, 0, 3);
        let crs = crs_check(&full, 0, &pis[0], &limits).map_err(err)?.is_some();
        check(crs == zero_fixed, || {
            format!("game {k}: crs {crs}, 0-fixed existence {zero_fixed}")
        })?;
        let m0 = leader_machine(g, k);
        for pi in &pis {
            let det = verify_ncrs(&lg, 0, pi, &m0, &limits).map_err(err)?;
            let uni = verify_ncrs_universal(&lg, 0, pi, &m0, &limits).map_err(err)?;
            check(det.holds == uni.holds, || {
                format!("game {k}: universal check differs on a deterministic machine")
            })?;
            checks += 1;
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_prefgame"))
        .args(["ncrs", "--game", "any.game", "--lasso", "any.lasso"])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.code() == Some(3), || {
        format!("ncrs exited with {:?}", out.status.code())
    })?;
    Ok(format!(
        "{} games ({swept} against the sweep at bound 8), {checks} thresholds; ncrs exits 3",
        games.len()
    ))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("determinacy of values", determinacy),
        ("value semantics on fixtures", value_fixtures),
        ("threshold memory bound", memory_bound),
        ("no optimal strategy fixtures", no_optimal),
        ("equilibrium outcomes as coalition values", coalition_identity),
        ("equilibrium witnesses", ne_witnesses),
        ("degenerate relations", degenerate_laws),
        ("automata pipeline equivalence", pipeline),
        ("parity solver", parity),
        ("rational synthesis", synthesis),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
