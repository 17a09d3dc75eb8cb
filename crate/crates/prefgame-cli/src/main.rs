//! `prefgame`: decision procedures for games with ω-automatic preferences.
//!
//! Prints `RESULT yes` or `RESULT no` and exits with 0 (yes), 1 (no),
//! 2 (input error), 3 (no procedure exists) or 4 (state cap reached).

mod witness;

use std::cell::RefCell;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use prefgame::automata::{Lasso, Mealy};
use prefgame::equilibria::{
    lasso_is_ne_outcome, ne_constraint, ne_exists, ne_outcome_apw, ne_threshold, pareto_ne_exists, profile_outcome,
    verify_ne_profile, NeWitness,
};
use prefgame::game::{prefers, validate_game, Game};
use prefgame::io::{load_game, parse_apw, parse_lasso, parse_mealy, write_game};
use prefgame::oracles::{brute_ne_outcome, enumerate_lassos, generate_corpus, value_member_direct, Corpus};
use prefgame::parity::lasso_membership_game;
use prefgame::synthesis::{
    crs_check, verify_crs, verify_ncrs, verify_ncrs_universal, zero_fixed_ne_apw, LeaderGame, Verification,
};
use prefgame::values::{
    determinacy_check, optimal_exists, threshold_check, threshold_exists, value_apw, verify_optimal,
    verify_threshold_strategy, ValueSide,
};
use prefgame::{Error, Limits};

use witness::{profile_file, read_profile, Bundle};

#[derive(Parser)]
#[command(
    name = "prefgame",
    version,
    about = "Games on graphs with ω-automatic preference relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Game file (`.game`); relation files are resolved next to it.
    #[arg(long, global = true)]
    game: Option<PathBuf>,
    /// Start from this vertex instead of the game's `init`.
    #[arg(long, global = true)]
    init: Option<String>,
    /// Player name as used in the game file.
    #[arg(long, global = true)]
    player: Option<String>,
    /// Lasso `prefix | cycle`, inline or as a file path. Repeatable.
    #[arg(long, global = true)]
    lasso: Vec<String>,
    /// Mealy machine file.
    #[arg(long, global = true)]
    machine: Option<PathBuf>,
    /// Constraint automaton file (`.apw`) over the vertices.
    #[arg(long, global = true)]
    constraint: Option<PathBuf>,
    /// Directory holding `profile.<player>.mealy` files.
    #[arg(long, global = true)]
    bundle: Option<PathBuf>,
    /// Comma-separated player names.
    #[arg(long, global = true, value_delimiter = ',')]
    players: Vec<String>,
    /// Directory for witness files; printed to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// State cap of the exponential constructions.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_states: usize,
    /// Write the membership parity game to this file.
    #[arg(long, global = true)]
    dump_game: Option<PathBuf>,
    /// Skip re-checking witnesses before answering yes.
    #[arg(long, global = true)]
    no_certify: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    corpus_size: usize,
    #[arg(long, global = true)]
    maxlen: Option<usize>,
    /// Worker threads for corpus and sweep batches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Stage sizes on stderr; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game and report repairs applied on load.
    Validate,
    /// Whether the player prefers the second lasso to the first.
    Prefers,
    /// Whether the lasso is in the player's value; emits a strategy.
    ValueMember,
    /// Some play in the player's value.
    ThresholdExists,
    /// Whether the machine secures the lasso for the player.
    VerifyThreshold,
    /// Whether the machine is optimal for the player.
    VerifyOptimal,
    /// An optimal strategy of the player, if any.
    OptimalExists,
    /// Whether the lasso is in exactly one of the two values.
    Determinacy,
    /// Whether the lasso is an equilibrium outcome.
    NeMember,
    /// Some equilibrium, with a profile.
    NeExists,
    /// Some equilibrium better than one threshold lasso per player.
    NeThreshold,
    /// Some equilibrium whose outcome satisfies the constraint.
    NeConstraint,
    /// Some Pareto-optimal equilibrium outcome for the selected players.
    ParetoNe,
    /// Whether the bundle's profile is an equilibrium.
    VerifyNe,
    /// Some follower equilibrium satisfying the leader's threshold.
    Crs,
    /// Cooperative verification of a leader machine.
    VerifyCrs,
    /// Non-cooperative verification of a deterministic leader machine.
    VerifyNcrs,
    /// Non-cooperative verification of every strategy of a nondeterministic machine.
    VerifyNcrsUniversal,
    /// Non-cooperative synthesis; no procedure exists.
    Ncrs,
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// List the lassos up to `--maxlen` satisfying a brute-force predicate.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepKind::Value)]
        kind: SweepKind,
    },
    /// Write a seeded corpus of random games into `--out`.
    Corpus,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Value,
    Coalition,
    Ne,
}

pub enum Failure {
    Input(String),
    Capacity { stage: &'static str, limit: usize },
    Undecidable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Capacity { stage, limit } => Failure::Capacity { stage, limit },
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = std::result::Result<bool, Failure>;

pub fn read_text(path: &Path) -> prefgame::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        msg: e.to_string(),
    })
}

fn input<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

/// Input failure for a witness that does not pass its own check.
fn uncertified(what: &str) -> Failure {
    Failure::Input(format!("internal error: {what} failed certification"))
}

struct Ctx {
    opts: Opts,
    limits: Limits,
    /// Witnesses printed after the verdict when no `--out` is given.
    pending: RefCell<Vec<Bundle>>,
}

impl Ctx {
    fn game(&self) -> std::result::Result<Game, Failure> {
        let Some(path) = &self.opts.game else {
            return input("--game is required");
        };
        let mut g = load_game(path)?;
        let diag = validate_game(&g);
        if !diag.is_empty() {
            return input(diag.errors.join("; "));
        }
        if let Some(name) = &self.opts.init {
            match g.arena.vertex_id(name) {
                Some(v) => g.arena.initial = v,
                None => return input(format!("unknown vertex `{name}`")),
            }
        }
        Ok(g)
    }

    fn player(&self, g: &Game) -> std::result::Result<usize, Failure> {
        match &self.opts.player {
            Some(name) => player_id(g, name),
            None => input("--player is required"),
        }
    }

    fn lassos(&self, g: &Game) -> std::result::Result<Vec<Lasso>, Failure> {
        self.opts.lasso.iter().map(|arg| Ok(read_lasso(g, arg)?)).collect()
    }

    fn lasso(&self, g: &Game) -> std::result::Result<Lasso, Failure> {
        let mut all = self.lassos(g)?;
        if all.len() != 1 {
            return input("exactly one --lasso is required");
        }
        Ok(all.remove(0))
    }

    fn machine(&self, g: &Game) -> std::result::Result<Mealy, Failure> {
        let Some(path) = &self.opts.machine else {
            return input("--machine is required");
        };
        Ok(parse_mealy(&read_text(path)?, &path.display().to_string(), &g.arena)?)
    }

    fn certify(&self) -> bool {
        !self.opts.no_certify
    }

    fn emit(&self, bundle: Bundle) -> std::result::Result<(), Failure> {
        match &self.opts.out {
            Some(dir) => {
                for p in bundle.write(dir)? {
                    log::info!("wrote {}", p.display());
                }
            }
            None => self.pending.borrow_mut().push(bundle),
        }
        Ok(())
    }

    /// Membership parity game of `x` in `aut`, written when `--dump-game` is set.
    fn dump(&self, aut: &prefgame::automata::Apw, x: &Lasso) -> std::result::Result<(), Failure> {
        if let Some(path) = &self.opts.dump_game {
            let mg = lasso_membership_game(aut, x)?;
            std::fs::write(path, mg.game.dump()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn player_id(g: &Game, name: &str) -> std::result::Result<usize, Failure> {
    g.arena
        .player_id(name)
        .ok_or_else(|| Failure::Input(format!("unknown player `{name}`")))
}

/// Inline when the argument contains `|`, otherwise a file path.
fn read_lasso(g: &Game, arg: &str) -> prefgame::Result<Lasso> {
    if arg.contains('|') {
        parse_lasso(arg, "<lasso>", &g.arena.vertex_names)
    } else {
        let path = Path::new(arg);
        parse_lasso(&read_text(path)?, arg, &g.arena.vertex_names)
    }
}

fn run(cmd: Command, ctx: &Ctx) -> Run {
    match cmd {
        Command::Validate => validate(ctx),
        Command::Prefers => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            let xs = ctx.lassos(&g)?;
            let [x, y] = xs.as_slice() else {
                return input("prefers needs two --lasso arguments");
            };
            Ok(prefers(&g, i, x, y)?)
        }
        Command::ValueMember => value_member(ctx),
        Command::ThresholdExists => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            let Some(x) = threshold_exists(&g, i, g.initial(), &ctx.limits)? else {
                return Ok(false);
            };
            let mut bundle = Bundle::default();
            let x = bundle.lasso(&g, "threshold.lasso", &x)?;
            if ctx.certify() && !threshold_check(&g, i, &x)?.0 {
                return Err(uncertified("threshold lasso"));
            }
            ctx.emit(bundle)?;
            Ok(true)
        }
        Command::VerifyThreshold => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            let x = ctx.lasso(&g)?;
            Ok(verify_threshold_strategy(&g, i, &x, &ctx.machine(&g)?)?)
        }
        Command::VerifyOptimal => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            Ok(verify_optimal(&g, i, g.initial(), &ctx.machine(&g)?, &ctx.limits)?)
        }
        Command::OptimalExists => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            let Some(m) = optimal_exists(&g, i, g.initial(), &ctx.limits)? else {
                return Ok(false);
            };
            let mut bundle = Bundle::default();
            let name = format!("optimal.{}.mealy", g.arena.player_names[i]);
            let m = bundle.mealy(&g, &name, &m)?;
            if ctx.certify() && !verify_optimal(&g, i, g.initial(), &m, &ctx.limits)? {
                return Err(uncertified("optimal strategy"));
            }
            ctx.emit(bundle)?;
            Ok(true)
        }
        Command::Determinacy => {
            let g = ctx.game()?;
            let i = ctx.player(&g)?;
            let x = ctx.lasso(&g)?;
            ctx.dump(&value_apw(&g, i, ValueSide::Protagonist, g.initial())?.apw, &x)?;
            Ok(determinacy_check(&g, i, g.initial(), &x)?)
        }
        Command::NeMember => {
            let g = ctx.game()?;
            let x = ctx.lasso(&g)?;
            ctx.dump(&ne_outcome_apw(&g, g.initial())?, &x)?;
            Ok(lasso_is_ne_outcome(&g, g.initial(), &x)?)
        }
        Command::NeExists => {
            let g = ctx.game()?;
            ne_answer(ctx, &g, ne_exists(&g, g.initial(), &ctx.limits)?)
        }
        Command::NeThreshold => {
            let g = ctx.game()?;
            let pis = ctx.lassos(&g)?;
            if pis.len() != g.num_players() {
                return input(format!("one --lasso per player is required ({})", g.num_players()));
            }
            ne_answer(ctx, &g, ne_threshold(&g, g.initial(), &pis, &ctx.limits)?)
        }
        Command::NeConstraint => {
            let g = ctx.game()?;
            let Some(path) = &ctx.opts.constraint else {
                return input("--constraint is required");
            };
            let c = parse_apw(&read_text(path)?, &path.display().to_string(), &g.arena.vertex_names)?;
            ne_answer(ctx, &g, ne_constraint(&g, g.initial(), &c, &ctx.limits)?)
        }
        Command::ParetoNe => {
            let g = ctx.game()?;
            let subset: Vec<usize> = if ctx.opts.players.is_empty() {
                (0..g.num_players()).collect()
            } else {
                ctx.opts
                    .players
                    .iter()
                    .map(|p| player_id(&g, p))
                    .collect::<std::result::Result<_, _>>()?
            };
            let Some(x) = pareto_ne_exists(&g, g.initial(), &subset, &ctx.limits)? else {
                return Ok(false);
            };
            let mut bundle = Bundle::default();
            let x = bundle.lasso(&g, "outcome.lasso", &x)?;
            if ctx.certify() && !lasso_is_ne_outcome(&g, g.initial(), &x)? {
                return Err(uncertified("Pareto outcome"));
            }
            ctx.emit(bundle)?;
            Ok(true)
        }
        Command::VerifyNe => {
            let g = ctx.game()?;
            let Some(dir) = &ctx.opts.bundle else {
                return input("--bundle is required");
            };
            Ok(verify_ne_profile(&g, g.initial(), &read_profile(&g, dir)?)?)
        }
        Command::Crs => {
            let (g, lg) = leader_game(ctx)?;
            let pi = ctx.lasso(&g)?;
            let Some(x) = crs_check(&lg, g.initial(), &pi, &ctx.limits)? else {
                return Ok(false);
            };
            let mut bundle = Bundle::default();
            let x = bundle.lasso(&g, "outcome.lasso", &x)?;
            if ctx.certify() {
                let apw = zero_fixed_ne_apw(&lg, g.initial())?;
                let member = prefgame::parity::lasso_membership_apw(&apw, &x)?;
                if !member || !prefers(&g, 0, &pi, &x)? {
                    return Err(uncertified("cooperative outcome"));
                }
            }
            ctx.emit(bundle)?;
            Ok(true)
        }
        Command::VerifyCrs => {
            let (g, lg) = leader_game(ctx)?;
            let pi = ctx.lasso(&g)?;
            let v = verify_crs(&lg, g.initial(), &pi, &ctx.machine(&g)?, &ctx.limits)?;
            verification(ctx, &g, &pi, v, "outcome.lasso", true)
        }
        Command::VerifyNcrs => {
            let (g, lg) = leader_game(ctx)?;
            let pi = ctx.lasso(&g)?;
            let v = verify_ncrs(&lg, g.initial(), &pi, &ctx.machine(&g)?, &ctx.limits)?;
            verification(ctx, &g, &pi, v, "counterexample.lasso", false)
        }
        Command::VerifyNcrsUniversal => {
            let (g, lg) = leader_game(ctx)?;
            let pi = ctx.lasso(&g)?;
            let v = verify_ncrs_universal(&lg, g.initial(), &pi, &ctx.machine(&g)?, &ctx.limits)?;
            verification(ctx, &g, &pi, v, "counterexample.lasso", false)
        }
        Command::Ncrs => Err(Failure::Undecidable(
            "non-cooperative rational synthesis is undecidable already for two players; \
             no procedure exists. Use verify-ncrs or verify-ncrs-universal to check a given leader machine."
                .to_string(),
        )),
        Command::Oracle(OracleCommand::Sweep { kind }) => sweep(ctx, kind),
        Command::Oracle(OracleCommand::Corpus) => corpus(ctx),
    }
}

fn validate(ctx: &Ctx) -> Run {
    let Some(path) = &ctx.opts.game else {
        return input("--game is required");
    };
    let g = load_game(path)?;
    let diag = validate_game(&g);
    for e in &diag.errors {
        println!("error: {e}");
    }
    for n in &diag.notes {
        println!("note: {n}");
    }
    Ok(diag.is_empty())
}

fn value_member(ctx: &Ctx) -> Run {
    let g = ctx.game()?;
    let i = ctx.player(&g)?;
    let x = ctx.lasso(&g)?;
    ctx.dump(&value_apw(&g, i, ValueSide::Protagonist, g.initial())?.apw, &x)?;
    let (member, m) = threshold_check(&g, i, &x)?;
    let Some(m) = m.filter(|_| member) else {
        return Ok(false);
    };
    let mut bundle = Bundle::default();
    let name = format!("strategy.{}.mealy", g.arena.player_names[i]);
    let m = bundle.mealy(&g, &name, &m)?;
    if ctx.certify() && !verify_threshold_strategy(&g, i, &x, &m)? {
        return Err(uncertified("threshold strategy"));
    }
    ctx.emit(bundle)?;
    Ok(true)
}

fn ne_answer(ctx: &Ctx, g: &Game, w: Option<NeWitness>) -> Run {
    let Some(w) = w else {
        return Ok(false);
    };
    let mut bundle = Bundle::default();
    let outcome = bundle.lasso(g, "outcome.lasso", &w.outcome)?;
    let mut profile = Vec::new();
    for (i, m) in w.profile.iter().enumerate() {
        profile.push(bundle.mealy(g, &profile_file(g, i), m)?);
    }
    let dispatch: String = w
        .dispatch
        .iter()
        .filter(|d| !d.is_empty())
        .map(|d| format!("{d}\n"))
        .collect();
    bundle.text("dispatch.txt", dispatch);
    if ctx.certify() {
        let v0 = g.initial();
        if !verify_ne_profile(g, v0, &profile)? || profile_outcome(g, v0, &profile)? != outcome {
            return Err(uncertified("equilibrium profile"));
        }
    }
    ctx.emit(bundle)?;
    Ok(true)
}

fn leader_game(ctx: &Ctx) -> std::result::Result<(Game, LeaderGame), Failure> {
    let g = ctx.game()?;
    let lg = LeaderGame::new(g.clone())?;
    Ok((g, lg))
}

/// `want` is the value of `pi ⋉₀ play` the decisive play must have.
fn verification(ctx: &Ctx, g: &Game, pi: &Lasso, v: Verification, file: &str, want: bool) -> Run {
    if let Some(x) = &v.play {
        let mut bundle = Bundle::default();
        let x = bundle.lasso(g, file, x)?;
        if ctx.certify() && prefers(g, 0, pi, &x)? != want {
            return Err(uncertified("decisive play"));
        }
        ctx.emit(bundle)?;
    }
    Ok(v.holds)
}

fn pool(ctx: &Ctx) -> std::result::Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.opts.jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn sweep(ctx: &Ctx, kind: SweepKind) -> Run {
    let g = ctx.game()?;
    let v0 = g.initial();
    let maxlen = ctx.opts.maxlen.unwrap_or(match kind {
        SweepKind::Ne => 8,
        _ => 6,
    });
    let side = match kind {
        SweepKind::Coalition => Some(ValueSide::Coalition),
        SweepKind::Value => Some(ValueSide::Protagonist),
        SweepKind::Ne => None,
    };
    let i = match side {
        Some(_) => ctx.player(&g)?,
        None => 0,
    };
    let lassos = enumerate_lassos(&g.arena, v0, maxlen);
    let keep: Vec<bool> = pool(ctx)?.install(|| {
        lassos
            .par_iter()
            .map(|x| match side {
                Some(side) => value_member_direct(&g, i, side, v0, x),
                None => brute_ne_outcome(&g, x),
            })
            .collect()
    });
    let mut count = 0;
    for (x, _) in lassos.iter().zip(&keep).filter(|(_, &k)| k) {
        println!("{}", g.arena.render_lasso(x));
        count += 1;
    }
    eprintln!("{count} of {} lassos up to length {maxlen}", lassos.len());
    Ok(count > 0)
}

fn corpus(ctx: &Ctx) -> Run {
    let Some(dir) = &ctx.opts.out else {
        return input("--out is required");
    };
    let params = Corpus {
        seed: ctx.opts.seed,
        count: ctx.opts.corpus_size,
        maxlen: ctx.opts.maxlen.unwrap_or(6),
        ..Corpus::default()
    };
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let games = generate_corpus(&params);
    let written: Vec<std::io::Result<PathBuf>> = pool(ctx)?.install(|| {
        games
            .par_iter()
            .enumerate()
            .map(|(k, g)| write_game(g, dir, &format!("game-{k:04}")))
            .collect()
    });
    for w in written {
        let path = w.map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        println!("{}", path.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.opts.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    let ctx = Ctx {
        limits: Limits::new(cli.opts.max_states),
        opts: cli.opts,
        pending: RefCell::new(Vec::new()),
    };
    match run(cli.command, &ctx) {
        Ok(yes) => {
            println!("RESULT {}", if yes { "yes" } else { "no" });
            for bundle in ctx.pending.borrow().iter() {
                bundle.print();
            }
            ExitCode::from(if yes { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Undecidable(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Capacity { stage, limit }) => {
            eprintln!("capacity exceeded in stage {stage} (limit {limit} states)");
            ExitCode::from(4)
        }
    }
}
