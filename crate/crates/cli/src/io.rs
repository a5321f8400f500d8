use std::fs;
use std::path::Path;

use fairshare::{parse_rat, Allocation, Error, Instance, Rat};
use serde_json::Value as Json;

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

pub fn read_instance(path: &Path) -> CliResult<Instance> {
    Ok(Instance::from_json(&read_text(path)?)?)
}

/// A bare list of bundles, or any object with an `allocation` field (such as
/// the output of `fairshare allocate`).
pub fn read_allocation(path: &Path) -> CliResult<Allocation> {
    let doc: Json = serde_json::from_str(&read_text(path)?).map_err(Error::from)?;
    let bundles = match doc {
        Json::Object(mut o) => o
            .remove("allocation")
            .ok_or_else(|| Error::Field {
                path: "allocation".into(),
                message: "missing".into(),
            })?,
        other => other,
    };
    Ok(serde_json::from_value(bundles).map_err(Error::from)?)
}

/// A list of prices, each a `"p/q"` string or an integer.
pub fn read_prices(path: &Path) -> CliResult<Vec<Rat>> {
    let doc: Json = serde_json::from_str(&read_text(path)?).map_err(Error::from)?;
    let list = match doc {
        Json::Object(mut o) => o.remove("prices").unwrap_or(Json::Null),
        other => other,
    };
    let Json::Array(items) = list else {
        return Err(Error::Field {
            path: "prices".into(),
            message: "expected an array".into(),
        }
        .into());
    };
    items
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let parsed = match p {
                Json::String(s) => parse_rat(s),
                Json::Number(n) => n
                    .as_i64()
                    .map(|x| Rat::from_integer(x.into()))
                    .ok_or_else(|| "expected an integer or a \"p/q\" string".to_string()),
                _ => Err("expected an integer or a \"p/q\" string".to_string()),
            };
            parsed.map_err(|message| {
                CliError::from(Error::Field {
                    path: format!("prices[{j}]"),
                    message,
                })
            })
        })
        .collect()
}

pub fn print_json(doc: &Json) {
    println!("{}", serde_json::to_string_pretty(doc).expect("JSON values serialize"));
}
