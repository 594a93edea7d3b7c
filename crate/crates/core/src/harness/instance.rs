//! Instance files for the `trace` subcommand:
//!
//! ```text
//! n_c=8
//! 1: 3,5,6
//! 2: 1,3
//! ```

use std::path::Path;

use crate::sic::{CapInstance, RequestTransmission};

use super::SweepError;

fn syntax(line: usize, message: String) -> SweepError {
    SweepError::Syntax { line, message }
}

pub fn parse_instance(text: &str) -> Result<CapInstance, SweepError> {
    let mut n_c = None;
    let mut transmissions = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if n_c.is_none() {
            let value = content
                .strip_prefix("n_c")
                .and_then(|r| r.trim_start().strip_prefix('='))
                .ok_or_else(|| {
                    syntax(line, format!("expected `n_c=<n>` header, got {content:?}"))
                })?;
            n_c = Some(
                value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| syntax(line, format!("bad mini-slot count {value:?}")))?,
            );
            continue;
        }
        let (id, slots) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `<id>: <slots>`, got {content:?}")))?;
        let id = id
            .trim()
            .parse::<u32>()
            .map_err(|_| syntax(line, format!("bad vehicle id {id:?}")))?;
        let slots = slots
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| syntax(line, format!("bad slot {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        transmissions.push(RequestTransmission::new(id, slots));
    }
    let n_c = n_c.ok_or_else(|| syntax(1, "missing `n_c=<n>` header".into()))?;
    Ok(CapInstance::new(n_c, transmissions)?)
}

pub fn load_instance(path: &Path) -> Result<CapInstance, SweepError> {
    parse_instance(&std::fs::read_to_string(path)?)
}
