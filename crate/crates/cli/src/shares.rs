use fairshare::shares::{
    aps_exact, mms_exact, pessimistic_share_exact, proportional_share, rank_value, tps, wmms_exact,
};
use fairshare::{format_rat, Instance};
use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, CliResult};

pub const NOTIONS: [&str; 7] = ["proportional", "tps", "aps", "pessimistic", "mms", "wmms", "rank"];

pub fn parse_notions(list: &str) -> CliResult<Vec<String>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            if NOTIONS.contains(&s) {
                Ok(s.to_string())
            } else {
                Err(CliError::Usage(format!(
                    "unknown notion `{s}` (expected one of {})",
                    NOTIONS.join(", ")
                )))
            }
        })
        .collect()
}

pub fn agent_shares(inst: &Instance, i: usize, notions: &[String]) -> CliResult<Json> {
    let v = inst.valuation(i);
    let b = inst.entitlement(i);
    let mut row = Map::new();
    row.insert("agent".into(), json!(i));
    if let Some(name) = &inst.agent(i).name {
        row.insert("name".into(), json!(name));
    }
    row.insert("entitlement".into(), json!(format_rat(b)));
    for notion in notions {
        let value = match notion.as_str() {
            "proportional" => json!(format_rat(&proportional_share(v, b))),
            "tps" => json!(format_rat(&tps(v, b))),
            "aps" => {
                let cert = aps_exact(v, b)?;
                row.insert("aps_certificate".into(), serde_json::to_value(&cert).expect("serializable"));
                json!(cert.value)
            }
            "pessimistic" => json!(pessimistic_share_exact(v, b)?),
            "mms" => json!(mms_exact(v, inst.n())?),
            "wmms" => json!(format_rat(&wmms_exact(&inst.entitlements(), i, v)?)),
            "rank" => json!(rank_value(v, b)),
            _ => unreachable!("notions are validated when parsed"),
        };
        row.insert(notion.clone(), value);
    }
    Ok(Json::Object(row))
}
