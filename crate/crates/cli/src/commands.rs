use std::io::Write;

use rgglab::analytic::{
    connectivity_mass, continuum_betweenness, expected_geodesic_cardinality, expected_isolated, expected_two_hop_exact,
    geodesic_recursion_numeric, negbin_fit, pfc_closed_form, GeodesicQuery, PfcDomainSpec, PfcGeometry, ShellRegime,
    REGIME_FACTOR,
};
use rgglab::geometry::{Domain, Point, Shape};
use rgglab::graph::ConnectionModel;
use rgglab::montecarlo::{
    betweenness_profile, estimate_pfc, geodesic_experiment, isolated_vs_disconnected, sigma_distribution,
    ExperimentConfig,
};
use rgglab::percolation::{sweep, write_sweep_csv};
use rgglab::pointprocess::{strauss_mcmc, StraussParams};
use rgglab::{Error, RandomState};

use crate::args::*;
use crate::failure::Failure;
use crate::spec::{parse_domain, parse_grid};

/// Shortest round-trip decimal form (`1.0`, `0.25`, `1e-7`, `NaN`).
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn closed_form(domain: &Domain, formula: Formula, rho: f64, beta: f64, eta: f64) -> Result<Option<f64>, Failure> {
    if formula == Formula::None {
        return Ok(None);
    }
    if eta != 2.0 {
        if formula == Formula::Auto {
            return Ok(None);
        }
        return Err(Failure::usage(format!("closed forms assume eta = 2, got {eta}")));
    }
    let r0 = beta.powf(-0.5);
    let mismatch = || Failure::usage(format!("formula {formula:?} does not apply to this domain"));
    let geometry = match (domain.shape(), formula) {
        (Shape::Disk { radius }, Formula::Auto | Formula::Disk) => PfcGeometry::Disk { outer: *radius },
        (Shape::Annulus { inner, outer }, f) => {
            let (inner, outer) = (*inner, *outer);
            match f {
                Formula::Auto if inner < r0 / REGIME_FACTOR => PfcGeometry::AnnulusSmall { inner, outer },
                Formula::Auto | Formula::AnnulusLarge => PfcGeometry::AnnulusLarge { inner, outer },
                Formula::AnnulusSmall => PfcGeometry::AnnulusSmall { inner, outer },
                Formula::AnnulusLargeLimit => PfcGeometry::AnnulusLargeLimit { inner, outer },
                _ => return Err(mismatch()),
            }
        }
        (Shape::SphericalShell { inner, outer }, f) => {
            let regime = match f {
                Formula::Auto if *inner < r0 / REGIME_FACTOR => ShellRegime::Small,
                Formula::Auto | Formula::ShellLarge => ShellRegime::Large,
                Formula::ShellSmall => ShellRegime::Small,
                _ => return Err(mismatch()),
            };
            PfcGeometry::Shell {
                inner: *inner,
                outer: *outer,
                regime,
            }
        }
        (Shape::Square { side, obstacles }, Formula::Auto | Formula::SquareObstacles) => PfcGeometry::SquareObstacles {
            side: *side,
            obstacles: obstacles.clone(),
        },
        (Shape::Sphere { .. } | Shape::Torus { .. } | Shape::Interval { .. }, Formula::Auto) => return Ok(None),
        _ => return Err(mismatch()),
    };
    Ok(Some(pfc_closed_form(&PfcDomainSpec { geometry, rho, beta })?.value))
}

fn opt(x: Option<f64>) -> String {
    num(x.unwrap_or(f64::NAN))
}

fn non_negative(name: &str, xs: &[f64]) -> Result<(), Failure> {
    match xs.iter().find(|x| **x < 0.0) {
        Some(x) => Err(Failure::usage(format!("{name} must be >= 0, got {x}"))),
        None => Ok(()),
    }
}

pub fn connectivity(a: &ConnectivityArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let model = ConnectionModel::rayleigh(a.beta, a.eta)?;
    let rhos = parse_grid(&a.rho_grid)?;
    non_negative("rho", &rhos)?;
    let analytic = rhos
        .iter()
        .map(|&rho| closed_form(&domain, a.formula, rho, a.beta, a.eta))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = ExperimentConfig::new(domain, model, rhos, a.trials, seed);
    cfg.respect_visibility = !a.no_visibility;
    let est = estimate_pfc(&cfg)?;
    writeln!(out, "rho,pfc_mc,se,pfc_analytic")?;
    for ((rho, e), an) in est.iter().zip(analytic) {
        writeln!(out, "{},{},{},{}", num(*rho), num(e.mean), num(e.std_error), opt(an))?;
    }
    Ok(())
}

pub fn betweenness(a: &BetweennessArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let grid = parse_grid(&a.eps_grid)?;
    if let Some(e) = grid.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(Failure::usage(format!("eps {e} lies outside [0, 1]")));
    }
    let g: Vec<f64> = grid.iter().map(|&e| continuum_betweenness(e)).collect::<Result<_, _>>()?;
    if a.analytic_only {
        writeln!(out, "eps,g_analytic")?;
        for (e, v) in grid.iter().zip(&g) {
            writeln!(out, "{},{}", num(*e), num(*v))?;
        }
        return Ok(());
    }
    let (Some(rho), Some(beta)) = (a.rho, a.beta) else {
        return Err(Failure::usage("--rho and --beta are required unless --analytic-only is given"));
    };
    let cfg = ExperimentConfig::new(
        Domain::disk(a.radius)?,
        ConnectionModel::rayleigh(beta, 2.0)?,
        vec![rho],
        a.trials,
        seed,
    );
    let bins = betweenness_profile(&cfg, &grid)?;
    writeln!(out, "eps,g_mc,se,g_analytic")?;
    for (b, v) in bins.iter().zip(&g) {
        writeln!(out, "{},{},{},{}", num(b.eps), num(b.normalized), num(b.std_error), num(*v))?;
    }
    Ok(())
}

/// Exact lens value on `[1, 2)`, the leading-order closed form elsewhere.
fn count_analytic(d: usize, rho: f64, r: f64) -> Result<f64, Error> {
    let q = GeodesicQuery::new(d, rho, r)?;
    if (1.0..2.0).contains(&r) {
        expected_two_hop_exact(&q)
    } else {
        expected_geodesic_cardinality(&q)
    }
}

pub fn geodesics(a: &GeodesicsArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let grid = parse_grid(&a.r_grid)?;
    non_negative("r", &grid)?;
    let analytic = grid
        .iter()
        .map(|&r| count_analytic(a.dim, a.rho, r))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = geodesic_experiment(a.dim, a.rho, &grid, a.trials, seed)?;
    writeln!(out, "r,count_mc,se,count_analytic")?;
    for (row, an) in rows.iter().zip(analytic) {
        writeln!(out, "{},{},{},{}", num(row.r), num(row.optimal.mean), num(row.optimal.std_error), num(an))?;
    }
    Ok(())
}

pub fn dispersion(a: &DispersionArgs, seed: u64, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), Failure> {
    GeodesicQuery::new(2, a.rho, a.r)?;
    let s = sigma_distribution(a.rho, a.r, a.trials, seed)?;
    writeln!(out, "k,prob")?;
    for (k, p) in &s.histogram {
        writeln!(out, "{k},{}", num(*p))?;
    }
    write!(
        log,
        "mean={} variance={} dispersion={}",
        num(s.mean),
        num(s.variance),
        num(s.dispersion)
    )?;
    match negbin_fit(s.mean, s.variance + s.mean * s.mean) {
        Ok(f) => writeln!(log, " negbin_p={} negbin_r={}", num(f.p), num(f.r))?,
        Err(_) => writeln!(log, " negbin=not-over-dispersed")?,
    }
    Ok(())
}

pub fn percolation(a: &PercolationArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let grid = parse_grid(&a.p_grid)?;
    let rows = sweep(a.side, &grid, a.trials, seed)?;
    write_sweep_csv(&rows, out)?;
    Ok(())
}

pub fn strauss(a: &StraussArgs, seed: u64, out: &mut dyn Write, log: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let params = StraussParams::new(a.omega, a.range, a.steps)?;
    let ps = strauss_mcmc(&domain, a.n, &params, &mut RandomState::new(seed))?;
    ps.write_csv(&mut *out)?;
    writeln!(
        log,
        "points={} mean_nn_distance={}",
        ps.len(),
        opt(ps.mean_nearest_neighbor_distance())
    )?;
    Ok(())
}

pub fn isolation(a: &IsolationArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let rhos = parse_grid(&a.rho_grid)?;
    non_negative("rho", &rhos)?;
    let cfg = ExperimentConfig::new(domain, ConnectionModel::rayleigh(a.beta, a.eta)?, rhos, a.trials, seed);
    writeln!(out, "rho,disconnected,with_isolated,fraction,se")?;
    for row in isolated_vs_disconnected(&cfg)? {
        writeln!(
            out,
            "{},{},{},{},{}",
            num(row.rho),
            row.disconnected,
            row.with_isolated,
            opt(row.fraction.map(|e| e.mean)),
            opt(row.fraction.map(|e| e.std_error))
        )?;
    }
    Ok(())
}

pub fn pfc(a: &PfcArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let rhos = parse_grid(&a.rho_grid)?;
    non_negative("rho", &rhos)?;
    writeln!(out, "rho,pfc_analytic")?;
    for rho in rhos {
        writeln!(out, "{},{}", num(rho), opt(closed_form(&domain, a.formula, rho, a.beta, 2.0)?))?;
    }
    Ok(())
}

pub fn isolated(a: &IsolatedArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let model = ConnectionModel::rayleigh(a.beta, a.eta)?;
    let rhos = parse_grid(&a.rho_grid)?;
    non_negative("rho", &rhos)?;
    writeln!(out, "rho,expected_isolated")?;
    for rho in rhos {
        writeln!(out, "{},{}", num(rho), num(expected_isolated(&domain, &model, rho)?))?;
    }
    Ok(())
}

pub fn mass(a: &MassArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let domain = parse_domain(&a.domain)?;
    let model = ConnectionModel::rayleigh(a.beta, a.eta)?;
    let coords = a
        .point
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad token `{t}` in point `{}`", a.point)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p = Point::new(&coords)?;
    if p.dim() != domain.dim() {
        return Err(Failure::usage(format!(
            "point has {} coordinates but the domain is {}-dimensional",
            p.dim(),
            domain.dim()
        )));
    }
    let header: Vec<String> = (0..p.dim()).map(|k| format!("x{k}")).collect();
    writeln!(out, "{},mass", header.join(","))?;
    let vals: Vec<String> = coords.iter().map(|&c| num(c)).collect();
    writeln!(out, "{},{}", vals.join(","), num(connectivity_mass(&domain, &model, &p)?))?;
    Ok(())
}

pub fn geodesic_count(a: &GeodesicCountArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let grid = parse_grid(&a.r_grid)?;
    non_negative("r", &grid)?;
    if a.recursion {
        writeln!(out, "r,count_analytic,count_recursion")?;
    } else {
        writeln!(out, "r,count_analytic")?;
    }
    for r in grid {
        let q = GeodesicQuery::new(a.dim, a.rho, r)?;
        let closed = expected_geodesic_cardinality(&q)?;
        if a.recursion {
            let rec = geodesic_recursion_numeric(&q, 1e-9)?;
            writeln!(out, "{},{},{}", num(r), num(closed), num(rec))?;
        } else {
            writeln!(out, "{},{}", num(r), num(closed))?;
        }
    }
    Ok(())
}
