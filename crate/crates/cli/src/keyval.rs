//! key=value config files mapping 1:1 onto the sample flags.
//!
//! One `key=value` per line; blank lines and `#` comments are ignored.
//! Values use the same syntax as the corresponding flags, e.g.
//!
//! ```text
//! kind=se
//! a=1,1,1
//! eps=0.3,0.3
//! taper=0.5,0
//! bend=2.0
//! d=0.05
//! ```
//!
//! Explicit command-line flags take precedence over config values.

use std::collections::HashMap;
use std::path::Path;

use crate::ShapeFlags;

pub fn read_file(path: &Path) -> Result<HashMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((key, value)) => {
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
            None => {
                return Err(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    idx + 1
                ))
            }
        }
    }
    Ok(map)
}

/// Fill unset sample flags from config values.
pub fn apply_sample_defaults(
    map: &HashMap<String, String>,
    shape: &mut ShapeFlags,
    d: &mut Option<f64>,
    naive: &mut Option<String>,
) -> Result<(), String> {
    let known = [
        "kind", "a", "eps", "euler", "pos", "taper", "bend", "d", "naive", "degrees",
    ];
    for key in map.keys() {
        if !known.contains(&key.as_str()) {
            return Err(format!("unknown config key {key:?}"));
        }
    }

    let get = |key: &str| map.get(key).cloned();
    shape.kind = shape.kind.take().or_else(|| get("kind"));
    shape.a = shape.a.take().or_else(|| get("a"));
    shape.eps = shape.eps.take().or_else(|| get("eps"));
    shape.euler = shape.euler.take().or_else(|| get("euler"));
    shape.pos = shape.pos.take().or_else(|| get("pos"));
    shape.taper = shape.taper.take().or_else(|| get("taper"));
    if shape.bend.is_none() {
        if let Some(text) = get("bend") {
            shape.bend = Some(
                text.parse()
                    .map_err(|_| format!("bad bend value {text:?}"))?,
            );
        }
    }
    if !shape.degrees {
        if let Some(text) = get("degrees") {
            shape.degrees = text
                .parse()
                .map_err(|_| format!("degrees must be true or false, got {text:?}"))?;
        }
    }
    if d.is_none() {
        if let Some(text) = get("d") {
            *d = Some(text.parse().map_err(|_| format!("bad d value {text:?}"))?);
        }
    }
    if naive.is_none() {
        *naive = get("naive");
    }
    Ok(())
}
