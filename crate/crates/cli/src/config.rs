//! `--config FILE`: `key = value` lines that act as flags not given on the
//! command line.

use std::fs;

use clap::CommandFactory;

use crate::args::Cli;
use crate::failure::Failure;

fn flag_value(args: &[String], name: &str) -> Option<(usize, Option<String>)> {
    let long = format!("--{name}");
    let prefixed = format!("--{name}=");
    args.iter().enumerate().find_map(|(k, a)| {
        if *a == long {
            Some((k, args.get(k + 1).cloned()))
        } else {
            a.strip_prefix(&prefixed).map(|v| (k, Some(v.to_string())))
        }
    })
}

pub fn has_flag(args: &[String], name: &str) -> bool {
    flag_value(args, name).is_some()
}

/// Expands `--config` into explicit flags. Flags already present win.
pub fn inject(mut args: Vec<String>) -> Result<Vec<String>, Failure> {
    let Some((_, path)) = flag_value(&args, "config") else {
        return Ok(args);
    };
    let path = path.ok_or_else(|| Failure::usage("--config needs a file name"))?;
    let text = fs::read_to_string(&path).map_err(|e| Failure::usage(format!("cannot read config `{path}`: {e}")))?;
    let root = Cli::command();
    let Some(sub) = args.get(1).and_then(|s| root.find_subcommand(s)) else {
        return Ok(args);
    };
    let mut extra = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Failure::usage(format!("{path}:{}: expected `key = value`, got `{line}`", n + 1)));
        };
        let key = k.trim().replace('_', "-");
        let value = v.trim().trim_matches('"').to_string();
        let Some(arg) = sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) else {
            return Err(Failure::usage(format!("{path}:{}: unknown key `{key}`", n + 1)));
        };
        if key == "config" {
            return Err(Failure::usage(format!("{path}:{}: config files cannot nest", n + 1)));
        }
        if has_flag(&args, &key) {
            continue;
        }
        if arg.get_action().takes_values() {
            extra.push(format!("--{key}"));
            extra.push(value);
        } else {
            match value.as_str() {
                "true" => extra.push(format!("--{key}")),
                "false" => {}
                _ => return Err(Failure::usage(format!("{path}:{}: `{key}` takes true or false", n + 1))),
            }
        }
    }
    args.extend(extra);
    Ok(args)
}

/// Drops `--name value` / `--name=value` pairs.
pub fn remove_flag(args: &mut Vec<String>, name: &str) {
    while let Some((k, _)) = flag_value(args, name) {
        let joined = args[k].contains('=');
        args.remove(k);
        if !joined && k < args.len() {
            args.remove(k);
        }
    }
}
