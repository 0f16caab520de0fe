//! `key=value` configuration files.
//!
//! Entries become `--key value` flags placed ahead of the ones typed on the
//! command line, so explicit flags win.

use std::path::Path;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let k = k.trim().trim_start_matches("--").replace('_', "-");
        if k.is_empty() || k == "config" {
            return Err(format!("line {}: invalid key '{}'", i + 1, k));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

/// Expands `--config PATH` into the flags it contains.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match args[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => args.get(pos + 1).cloned().ok_or("--config needs a path")?,
    };
    let skip = if args[pos].starts_with("--config=") { 1 } else { 2 };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let entries = parse(&text)?;
    let mut rest: Vec<String> = args[..pos].to_vec();
    rest.extend(args[pos + skip..].iter().cloned());
    // program name and subcommand stay in front
    let head = rest.len().min(2);
    let mut out: Vec<String> = rest[..head].to_vec();
    for (k, v) in entries {
        out.push(format!("--{k}"));
        out.push(v);
    }
    out.extend(rest[head..].iter().cloned());
    Ok(out)
}
