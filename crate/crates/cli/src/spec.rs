//! Parsers for domain strings and numeric grids.

use rgglab::geometry::{Domain, Obstacle};

use crate::failure::Failure;

/// Inclusive grid `start:stop:count`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(Failure::usage(format!("grid `{s}` must look like start:stop:count")));
    };
    let start = number(a, s)?;
    let stop = number(b, s)?;
    let count: usize = n
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("grid count `{n}` in `{s}` is not a positive integer")))?;
    match count {
        0 => Err(Failure::usage(format!("grid `{s}` has zero points"))),
        1 if start != stop => Err(Failure::usage(format!("grid `{s}` has one point but distinct endpoints"))),
        1 => Ok(vec![start]),
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            Ok((0..count)
                .map(|k| if k + 1 == count { stop } else { start + step * k as f64 })
                .collect())
        }
    }
}

fn number(tok: &str, whole: &str) -> Result<f64, Failure> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("`{tok}` in `{whole}` is not a number")))?;
    if !v.is_finite() {
        return Err(Failure::usage(format!("`{tok}` in `{whole}` is not finite")));
    }
    Ok(v)
}

/// `kind:key=value,...`, e.g. `disk:R=5`, `annulus:r=2,R=20`,
/// `square:L=10,obstacles=3/3/1+7/6/1.5`.
pub fn parse_domain(s: &str) -> Result<Domain, Failure> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for tok in rest.split(',').filter(|t| !t.is_empty()) {
        let Some((k, v)) = tok.split_once('=') else {
            return Err(Failure::usage(format!("bad token `{tok}` in domain `{s}`: expected key=value")));
        };
        keys.push((k.trim(), v.trim()));
    }
    let allowed: &[&str] = match kind {
        "disk" | "sphere" => &["R"],
        "annulus" | "shell" => &["r", "R"],
        "square" => &["L", "obstacles"],
        "torus" | "interval" => &["L"],
        _ => {
            return Err(Failure::usage(format!(
                "bad token `{kind}` in domain `{s}`: expected disk, annulus, shell, sphere, square, torus or interval"
            )))
        }
    };
    for (k, _) in &keys {
        if !allowed.contains(k) {
            return Err(Failure::usage(format!("bad token `{k}` in domain `{s}`: {kind} takes {}", allowed.join(", "))));
        }
    }
    let get = |name: &str| -> Result<f64, Failure> {
        let Some((_, v)) = keys.iter().find(|(k, _)| *k == name) else {
            return Err(Failure::usage(format!("domain `{s}` is missing `{name}=`")));
        };
        number(v, s)
    };
    let domain = match kind {
        "disk" => Domain::disk(get("R")?),
        "sphere" => Domain::sphere(get("R")?),
        "annulus" => Domain::annulus(get("r")?, get("R")?),
        "shell" => Domain::shell(get("r")?, get("R")?),
        "torus" => Domain::torus(get("L")?),
        "interval" => Domain::interval(get("L")?),
        _ => {
            let obstacles = match keys.iter().find(|(k, _)| *k == "obstacles") {
                Some((_, v)) => parse_obstacles(v, s)?,
                None => Vec::new(),
            };
            Domain::square_with_obstacles(get("L")?, obstacles)
        }
    };
    domain.map_err(|e| Failure::usage(format!("domain `{s}`: {e}")))
}

fn parse_obstacles(v: &str, whole: &str) -> Result<Vec<Obstacle>, Failure> {
    v.split('+')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let xs: Vec<&str> = t.split('/').collect();
            let [x, y, r] = xs.as_slice() else {
                return Err(Failure::usage(format!("bad token `{t}` in domain `{whole}`: obstacles are x/y/radius")));
            };
            Ok(Obstacle::new(number(x, whole)?, number(y, whole)?, number(r, whole)?))
        })
        .collect()
}
