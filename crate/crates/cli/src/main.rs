mod args;
mod commands;
mod config;
mod failure;
mod manifest;
mod spec;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use chrono::{SecondsFormat, Utc};
use clap::Parser;

use args::{Cli, Command};
use failure::Failure;
use manifest::RunManifest;

fn main() {
    let code = run(std::env::args().collect());
    std::process::exit(code);
}

fn run(args: Vec<String>) -> i32 {
    let args = match config::inject(args) {
        Ok(a) => a,
        Err(f) => return report(f),
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command, &args) {
        Ok(()) => 0,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> i32 {
    if !f.message.is_empty() {
        eprintln!("rgglab: {f}");
    }
    f.code
}

fn clock_seed() -> u64 {
    let t = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
    t.as_secs() ^ (u64::from(t.subsec_nanos()) << 32)
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn dispatch(command: Command, raw: &[String]) -> Result<(), Failure> {
    let common = match &command {
        Command::Schema => {
            print!("{}", manifest::SCHEMA);
            return Ok(());
        }
        Command::Rerun(r) => {
            let m = manifest::read(&r.manifest)?;
            let mut argv = vec!["rgglab".to_string()];
            argv.extend(m.args);
            return match run(argv) {
                0 => Ok(()),
                code => Err(Failure {
                    code,
                    message: String::new(),
                }),
            };
        }
        c => c.common().expect("experiment subcommands carry common flags").clone(),
    };
    let seed = match common.seed {
        Some(s) => s,
        None => {
            let s = clock_seed();
            if command.is_stochastic() {
                eprintln!("rgglab: no seed given; using {s}");
            }
            s
        }
    };
    let pool = match common.jobs {
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    }
    .map_err(|e| Failure::io(e.to_string()))?;

    let started_at = now();
    let clock = Instant::now();
    // Commands render into memory on the pool; nothing is written until they succeed.
    let mut out = Vec::new();
    let mut log = Vec::new();
    let result = pool.install(|| match &command {
        Command::Connectivity(a) => commands::connectivity(a, seed, &mut out),
        Command::Betweenness(a) => commands::betweenness(a, seed, &mut out),
        Command::Geodesics(a) => commands::geodesics(a, seed, &mut out),
        Command::Dispersion(a) => commands::dispersion(a, seed, &mut out, &mut log),
        Command::Percolation(a) => commands::percolation(a, seed, &mut out),
        Command::Strauss(a) => commands::strauss(a, seed, &mut out, &mut log),
        Command::Isolation(a) => commands::isolation(a, seed, &mut out),
        Command::Pfc(a) => commands::pfc(a, &mut out),
        Command::Isolated(a) => commands::isolated(a, &mut out),
        Command::Mass(a) => commands::mass(a, &mut out),
        Command::GeodesicCount(a) => commands::geodesic_count(a, &mut out),
        Command::Rerun(_) | Command::Schema => unreachable!(),
    });
    io::stderr().write_all(&log)?;
    result?;
    match &common.out {
        Some(p) => {
            let mut f = BufWriter::new(
                File::create(p).map_err(|e| Failure::io(format!("cannot create {}: {e}", p.display())))?,
            );
            f.write_all(&out)?;
            f.flush()?;
        }
        None => {
            let mut s = io::stdout().lock();
            s.write_all(&out)?;
            s.flush()?;
        }
    }

    if let Some(path) = &common.manifest {
        let mut args = raw[1..].to_vec();
        config::remove_flag(&mut args, "config");
        config::remove_flag(&mut args, "manifest");
        config::remove_flag(&mut args, "seed");
        args.push("--seed".into());
        args.push(seed.to_string());
        let m = RunManifest {
            schema_version: manifest::SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: command.name().to_string(),
            config: manifest::config_echo(&args[1..]),
            args,
            seed,
            started_at,
            finished_at: now(),
            wall_time_seconds: clock.elapsed().as_secs_f64(),
            outputs: vec![common
                .out
                .as_ref()
                .map_or_else(|| "-".to_string(), |p| p.display().to_string())],
        };
        manifest::write(&m, path)?;
    }
    Ok(())
}
