//! Parsing of `--strategies` lists such as `0=aps35:4,1=tps,2=meta`.

use fairshare::bidding::{
    best_good_z, meta_strategy, strategy_aps, strategy_bid_max_value, strategy_half_share,
    strategy_rank_item, strategy_tps, EndGame, Strategy, ZeroBid,
};
use fairshare::{Instance, Value};

use crate::error::{CliError, CliResult};

pub const NAMES: &str = "meta, aps35[:z], aps815[:z], tps, rank, max-value[:cap], half-share:z, zero";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Meta,
    Aps { z: Option<Value>, end_game: EndGame },
    Tps,
    Rank,
    MaxValue { cap: Option<Value> },
    HalfShare { z: Value },
    Zero,
}

fn number(name: &str, arg: Option<&str>) -> CliResult<Option<Value>> {
    arg.map(|a| {
        a.parse()
            .map_err(|_| CliError::Usage(format!("`{name}` expects an integer argument, got `{a}`")))
    })
    .transpose()
}

pub fn parse_kind(text: &str) -> CliResult<Kind> {
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let no_arg = |kind: Kind| match arg {
        None => Ok(kind),
        Some(_) => Err(CliError::Usage(format!("`{name}` takes no argument"))),
    };
    match name {
        "meta" => no_arg(Kind::Meta),
        "aps35" => Ok(Kind::Aps {
            z: number(name, arg)?,
            end_game: EndGame::ThreeFifths,
        }),
        "aps815" => Ok(Kind::Aps {
            z: number(name, arg)?,
            end_game: EndGame::MaxValue,
        }),
        "tps" => no_arg(Kind::Tps),
        "rank" => no_arg(Kind::Rank),
        "max-value" => Ok(Kind::MaxValue {
            cap: number(name, arg)?,
        }),
        "half-share" => Ok(Kind::HalfShare {
            z: number(name, arg)?
                .ok_or_else(|| CliError::Usage("`half-share` needs a target, as in half-share:3".into()))?,
        }),
        "zero" => no_arg(Kind::Zero),
        other => Err(CliError::Usage(format!("unknown strategy `{other}` (expected {NAMES})"))),
    }
}

/// Strategy kind per agent; agents not mentioned play `meta`.
pub fn parse_assignment(spec: Option<&str>, n: usize) -> CliResult<(Vec<Kind>, Vec<usize>)> {
    let mut kinds = vec![Kind::Meta; n];
    let mut named = Vec::new();
    for part in spec.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (agent, kind) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected `agent=strategy`, got `{part}`")))?;
        let agent: usize = agent
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad agent index `{agent}`")))?;
        if agent >= n {
            return Err(CliError::Usage(format!("agent {agent} out of range for {n} agents")));
        }
        kinds[agent] = parse_kind(kind.trim())?;
        named.push(agent);
    }
    Ok((kinds, named))
}

pub fn build(kind: &Kind, inst: &Instance, i: usize) -> Box<dyn Strategy> {
    let v = inst.valuation(i);
    let b = inst.entitlement(i);
    match kind {
        Kind::Meta => Box::new(meta_strategy(v, b)),
        Kind::Aps { z, end_game } => {
            let z = z.unwrap_or_else(|| best_good_z(v, b));
            strategy_aps(v, b, z, *end_game)
        }
        Kind::Tps => strategy_tps(v),
        Kind::Rank => strategy_rank_item(v, b),
        Kind::MaxValue { cap } => strategy_bid_max_value(v, *cap),
        Kind::HalfShare { z } => strategy_half_share(v, b, *z),
        Kind::Zero => Box::new(ZeroBid::new(v)),
    }
}
