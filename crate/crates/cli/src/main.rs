//! `fairshare`: share computation, allocation, verification and game
//! simulation for fair division with unequal entitlements.

mod error;
mod io;
mod shares;
mod strategy_spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fairshare::bidding::{
    replay, run_game, worst_case_adversary, worst_case_value, AdversaryOutcome, TieBreak, WinPattern,
};
use fairshare::greedy_efx::{greedy_efx_with, Arbitration};
use fairshare::ordered::{lift_allocation, ordered_version};
use fairshare::shares::two_agent_aps_allocation;
use fairshare::verify::{check_allocation, check_ce, BoundSet};
use fairshare::{Allocation, Error, Instance};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "fairshare", version, about = "Fair division of indivisible goods with entitlements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute share values for one or all agents.
    Shares {
        instance: PathBuf,
        /// Only this agent (0-based).
        #[arg(long, conflicts_with = "all")]
        agent: Option<usize>,
        /// Every agent (the default).
        #[arg(long)]
        all: bool,
        /// Comma-separated list among proportional, tps, aps, pessimistic, mms, wmms, rank.
        #[arg(long, default_value = "proportional,tps,aps,pessimistic")]
        notions: String,
    },
    /// Compute an allocation and report each agent's guarantee.
    Allocate {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Bidding)]
        method: Method,
        /// Seed for `--tie-break random`; echoed in the output.
        #[arg(long)]
        seed: Option<u64>,
        /// lowest-index or random for bidding; most-items or lowest-index for greedy-efx.
        #[arg(long, value_enum)]
        tie_break: Option<TieBreakArg>,
    },
    /// Check an allocation against the share guarantees, or as an equilibrium.
    Verify {
        instance: PathBuf,
        allocation: PathBuf,
        /// Prices to check `(allocation, prices)` as a competitive equilibrium.
        #[arg(long)]
        ce: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Bounds::Arbitrary)]
        bounds: Bounds,
    },
    /// Play the bidding game, replay a transcript, or search adversaries.
    Game {
        instance: PathBuf,
        /// Per-agent strategies such as `0=aps35,1=tps`; others play `meta`.
        #[arg(long)]
        strategies: Option<String>,
        /// Also write the transcript to this file.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Replay a transcript instead of playing.
        #[arg(long, conflicts_with_all = ["strategies", "adversary"])]
        replay: Option<PathBuf>,
        /// `worst` for the full search, or conceded rounds `k,l` / `k` / `none`.
        #[arg(long)]
        adversary: Option<String>,
        /// Focal agent for `--adversary`; defaults to the one named in `--strategies`.
        #[arg(long)]
        agent: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Bidding,
    GreedyEfx,
    TwoAgent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TieBreakArg {
    LowestIndex,
    MostItems,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bounds {
    Arbitrary,
    Gefx,
}

impl From<Bounds> for BoundSet {
    fn from(b: Bounds) -> Self {
        match b {
            Bounds::Arbitrary => BoundSet::ArbitraryEntitlements,
            Bounds::Gefx => BoundSet::EqualEntitlementsGefx,
        }
    }
}

/// What a command prints, and whether every checked bound held.
struct Outcome {
    doc: Json,
    pass: bool,
}

impl Outcome {
    fn ok(doc: Json) -> Self {
        Outcome { doc, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            io::print_json(&out.doc);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Shares {
            instance,
            agent,
            all: _,
            notions,
        } => cmd_shares(&io::read_instance(&instance)?, agent, &notions),
        Command::Allocate {
            instance,
            method,
            seed,
            tie_break,
        } => cmd_allocate(&io::read_instance(&instance)?, method, seed, tie_break),
        Command::Verify {
            instance,
            allocation,
            ce,
            bounds,
        } => {
            let inst = io::read_instance(&instance)?;
            let alloc = io::read_allocation(&allocation)?;
            let prices = ce.as_deref().map(io::read_prices).transpose()?;
            cmd_verify(&inst, &alloc, prices, bounds.into())
        }
        Command::Game {
            instance,
            strategies,
            transcript,
            replay,
            adversary,
            agent,
        } => {
            let inst = io::read_instance(&instance)?;
            if let Some(path) = replay {
                return cmd_replay(&inst, &path);
            }
            let out = cmd_game(&inst, strategies.as_deref(), adversary.as_deref(), agent)?;
            if let Some(path) = transcript {
                let t = out.doc.get("transcript").unwrap_or(&out.doc);
                io::write_text(&path, &serde_json::to_string_pretty(t).expect("serializable"))?;
            }
            Ok(out)
        }
    }
}

fn cmd_shares(inst: &Instance, agent: Option<usize>, notions: &str) -> CliResult<Outcome> {
    let notions = shares::parse_notions(notions)?;
    let agents: Vec<usize> = match agent {
        Some(i) if i >= inst.n() => {
            return Err(CliError::Usage(format!("agent {i} out of range for {} agents", inst.n())))
        }
        Some(i) => vec![i],
        None => (0..inst.n()).collect(),
    };
    let rows = agents
        .into_iter()
        .map(|i| shares::agent_shares(inst, i, &notions))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Outcome::ok(json!({ "agents": rows })))
}

/// Agent order used to break ties, drawn from `seed`.
fn priority(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

fn bidding_allocation(inst: &Instance, order: &[usize]) -> CliResult<(Allocation, Json)> {
    // agent order[k] plays in seat k, so lower seats win ties
    let agents = order.iter().map(|&i| inst.agent(i).clone()).collect();
    let seated = Instance::new(agents, inst.item_names().map(<[String]>::to_vec))?;
    let strategies = (0..seated.n())
        .map(|k| strategy_spec::build(&strategy_spec::Kind::Meta, &seated, k))
        .collect();
    let t = run_game(&seated, strategies, TieBreak::LowestIndex)?;
    let mut bundles = vec![Vec::new(); inst.n()];
    for (k, &i) in order.iter().enumerate() {
        bundles[i] = t.allocation.bundle(k).to_vec();
    }
    let transcript = serde_json::to_value(&t).expect("serializable");
    Ok((Allocation::new(bundles), transcript))
}

fn cmd_allocate(
    inst: &Instance,
    method: Method,
    seed: Option<u64>,
    tie_break: Option<TieBreakArg>,
) -> CliResult<Outcome> {
    let mut doc = json!({});
    let (alloc, bounds) = match method {
        Method::Bidding => {
            let order = match tie_break.unwrap_or(TieBreakArg::LowestIndex) {
                TieBreakArg::LowestIndex => (0..inst.n()).collect(),
                TieBreakArg::Random => {
                    let seed = seed.ok_or_else(|| CliError::Usage("--tie-break random needs --seed".into()))?;
                    priority(inst.n(), seed)
                }
                TieBreakArg::MostItems => {
                    return Err(CliError::Usage("most-items only applies to greedy-efx".into()))
                }
            };
            let (alloc, transcript) = bidding_allocation(inst, &order)?;
            doc["priority"] = json!(order);
            doc["transcript"] = transcript;
            (alloc, BoundSet::ArbitraryEntitlements)
        }
        Method::GreedyEfx => {
            let arbitration = match tie_break.unwrap_or(TieBreakArg::MostItems) {
                TieBreakArg::MostItems => Arbitration::MostItems,
                TieBreakArg::LowestIndex => Arbitration::LowestIndex,
                TieBreakArg::Random => {
                    return Err(CliError::Usage("random tie-breaking only applies to bidding".into()))
                }
            };
            if !inst.has_equal_entitlements() {
                return Err(Error::Mismatch("greedy-efx needs equal entitlements".into()).into());
            }
            let red = ordered_version(inst);
            let (ordered, trace) = greedy_efx_with(red.ordered_instance(), arbitration)?;
            doc["trace"] = serde_json::to_value(&trace).expect("serializable");
            (lift_allocation(inst, &red, &ordered)?, BoundSet::EqualEntitlementsGefx)
        }
        Method::TwoAgent => {
            if inst.n() != 2 {
                return Err(Error::Mismatch(format!("two-agent needs 2 agents, got {}", inst.n())).into());
            }
            let alloc = two_agent_aps_allocation(
                inst.valuation(0),
                inst.valuation(1),
                inst.entitlement(0),
                inst.entitlement(1),
            )?;
            (alloc, BoundSet::ArbitraryEntitlements)
        }
    };
    let report = check_allocation(inst, &alloc, bounds)?;
    doc["method"] = serde_json::to_value(method_name(method)).expect("serializable");
    if let Some(seed) = seed {
        doc["seed"] = json!(seed);
    }
    doc["allocation"] = serde_json::to_value(&alloc).expect("serializable");
    doc["report"] = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome {
        doc,
        pass: report.pass,
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Bidding => "bidding",
        Method::GreedyEfx => "greedy-efx",
        Method::TwoAgent => "two-agent",
    }
}

fn cmd_verify(
    inst: &Instance,
    alloc: &Allocation,
    prices: Option<Vec<fairshare::Rat>>,
    bounds: BoundSet,
) -> CliResult<Outcome> {
    alloc.validate(inst.n(), inst.m(), prices.is_none())?;
    match prices {
        Some(prices) => {
            let report = check_ce(inst, alloc, &prices)?;
            Ok(Outcome {
                pass: report.equilibrium,
                doc: json!({ "ce": report }),
            })
        }
        None => {
            let report = check_allocation(inst, alloc, bounds)?;
            Ok(Outcome {
                pass: report.pass,
                doc: json!({ "report": report }),
            })
        }
    }
}

fn parse_pattern(text: &str) -> CliResult<WinPattern> {
    if text == "none" {
        return Ok(WinPattern::NONE);
    }
    let rounds = text
        .split(',')
        .map(|r| {
            r.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad round `{r}` in adversary pattern")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    match rounds[..] {
        [k] => Ok(WinPattern::single(k)),
        [k, l] if k < l => Ok(WinPattern::pair(k, l)),
        _ => Err(CliError::Usage(format!(
            "adversary pattern `{text}` must be `worst`, `none`, `k` or `k,l` with k < l"
        ))),
    }
}

fn cmd_game(
    inst: &Instance,
    spec: Option<&str>,
    adversary: Option<&str>,
    agent: Option<usize>,
) -> CliResult<Outcome> {
    let (kinds, named) = strategy_spec::parse_assignment(spec, inst.n())?;
    let Some(mode) = adversary else {
        let strategies = (0..inst.n())
            .map(|i| strategy_spec::build(&kinds[i], inst, i))
            .collect();
        let t = run_game(inst, strategies, TieBreak::LowestIndex)?;
        return Ok(Outcome::ok(serde_json::to_value(&t).expect("serializable")));
    };
    let focal = agent.or(named.first().copied()).unwrap_or(0);
    if focal >= inst.n() {
        return Err(CliError::Usage(format!("agent {focal} out of range for {} agents", inst.n())));
    }
    let v = inst.valuation(focal);
    let b = inst.entitlement(focal);
    let strategy = strategy_spec::build(&kinds[focal], inst, focal);
    let pattern = if mode == "worst" {
        worst_case_value(v, b, strategy.as_ref()).1
    } else {
        parse_pattern(mode)?
    };
    let pattern_json = json!({ "first": pattern.first, "second": pattern.second });
    let doc = match worst_case_adversary(v, b, strategy.as_ref(), pattern) {
        AdversaryOutcome::Feasible(t) => json!({
            "agent": focal,
            "strategy": strategy.name(),
            "pattern": pattern_json,
            "value": t.allocation.value(0, v),
            "transcript": t,
        }),
        AdversaryOutcome::Infeasible { round } => json!({
            "agent": focal,
            "strategy": strategy.name(),
            "pattern": pattern_json,
            "infeasible_at_round": round,
        }),
    };
    Ok(Outcome::ok(doc))
}

fn cmd_replay(inst: &Instance, path: &std::path::Path) -> CliResult<Outcome> {
    let transcript: fairshare::bidding::GameTranscript =
        serde_json::from_str(&io::read_text(path)?).map_err(Error::from)?;
    let states = replay(inst.entitlements(), inst.m(), &transcript)?;
    let last = states
        .last()
        .map(|s| s.allocation())
        .unwrap_or_else(|| Allocation::empty(inst.n()));
    if last != transcript.allocation {
        return Err(Error::Allocation("replayed allocation differs from the recorded one".into()).into());
    }
    Ok(Outcome::ok(json!({
        "rounds": states.len(),
        "allocation": last,
    })))
}
