//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use nalgebra::DMatrix;
use rand::Rng;
use rgglab::analytic::{
    continuum_betweenness, expected_geodesic_cardinality, expected_two_hop_exact, geodesic_recursion_numeric,
    pfc_closed_form, GeodesicQuery, PfcDomainSpec, PfcGeometry,
};
use rgglab::centrality::{brandes_betweenness, current_flow_betweenness};
use rgglab::geometry::Domain;
use rgglab::graph::{ConnectionModel, GraphInstance};
use rgglab::montecarlo::{
    betweenness_profile, estimate_pfc, geodesic_experiment, isolated_vs_disconnected, sigma_distribution,
    ExperimentConfig,
};
use rgglab::percolation::{interpolate_crossing, pc_lower_bound, sweep};
use rgglab::RandomState;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn q(d: usize, rho: f64, r: f64) -> GeodesicQuery {
    GeodesicQuery::new(d, rho, r).unwrap()
}

fn disk_pfc(outer: f64, rho: f64, beta: f64) -> f64 {
    pfc_closed_form(&PfcDomainSpec { geometry: PfcGeometry::Disk { outer }, rho, beta })
        .unwrap()
        .raw
}

fn table_coefficients() -> Outcome {
    let s3 = 3f64.sqrt();
    let mut worst: f64 = 0.0;
    for rho in [1.0f64, 4.0, 10.0] {
        let planar = [
            4.0 * rho / 3.0,
            PI * rho.powi(2) / (3.0 * s3),
            32.0 * PI * rho.powi(3) * 2f64.sqrt() / 945.0,
            PI * PI * rho.powi(4) / (180.0 * 5f64.sqrt()),
            1024.0 * PI * PI * rho.powi(5) / (2027025.0 * s3),
        ];
        let spatial = [
            PI * rho / 2.0,
            PI.powi(2) * rho.powi(2) / 18.0,
            PI.powi(3) * rho.powi(3) / 360.0,
            PI.powi(4) * rho.powi(4) / 12600.0,
            PI.powi(5) * rho.powi(5) / 680400.0,
        ];
        for (d, table) in [(2, planar), (3, spatial)] {
            for (i, want) in table.iter().enumerate() {
                let k = i + 1;
                let gap: f64 = 0.5;
                let got = expected_geodesic_cardinality(&q(d, rho, k as f64 + gap)).unwrap()
                    / gap.powf(k as f64 * (d as f64 + 1.0) / 2.0);
                worst = worst.max((got / want - 1.0).abs());
            }
        }
    }
    check(worst <= 1e-9, format!("max relative error {worst:.2e}"))
}

fn two_hop_base_case() -> Outcome {
    let row = &geodesic_experiment(2, 10.0, &[1.5], 10_000, 2).unwrap()[0];
    let want = expected_two_hop_exact(&q(2, 10.0, 1.5)).unwrap();
    let z = (row.optimal.mean - want) / row.optimal.std_error;
    check(
        z.abs() <= 3.0,
        format!("mc {:.4} ± {:.4}, exact {want:.4}, z {z:.2}", row.optimal.mean, row.optimal.std_error),
    )
}

fn spatial_polynomial() -> Outcome {
    let rho = 10.0;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let r = 2.0 + k as f64 * 0.05;
        let want = rho * rho * PI * PI / 1260.0 * ((r + 3.0) * (r + 9.0) - 6.0 / r) * (3.0 - r).powi(4);
        let got = geodesic_recursion_numeric(&q(3, rho, r), 1e-11).unwrap();
        worst = worst.max((got / want - 1.0).abs());
    }
    check(worst <= 1e-8, format!("max relative error {worst:.2e} over 20 points"))
}

fn betweenness_law() -> Outcome {
    let rho = 500.0;
    // Largest integer beta whose disk prediction still reads as connected.
    let beta = (1..400).rev().find(|&b| disk_pfc(1.0, rho, b as f64) >= 0.95).unwrap() as f64;
    let cfg = ExperimentConfig::new(
        Domain::disk(1.0).unwrap(),
        ConnectionModel::rayleigh(beta, 2.0).unwrap(),
        vec![rho],
        200,
        7,
    );
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let bins = betweenness_profile(&cfg, &grid).unwrap();
    let dev = bins
        .iter()
        .map(|b| (b.normalized - continuum_betweenness(b.eps).unwrap()).abs())
        .fold(0.0, f64::max);
    let monotone = bins
        .windows(2)
        .all(|w| w[1].normalized <= w[0].normalized + 2.0 * w[0].std_error.hypot(w[1].std_error));
    check(dev < 0.1 && monotone, format!("beta {beta}, max deviation {dev:.4}, monotone {monotone}"))
}

fn series_coefficients() -> Outcome {
    let g = |x: f64| continuum_betweenness(x.abs()).unwrap();
    let h: f64 = 0.02;
    let d2 = (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h)) / (12.0 * h * h);
    let h: f64 = 0.05;
    let d4 = (-g(3.0 * h) + 12.0 * g(2.0 * h) - 39.0 * g(h) + 56.0 * g(0.0) - 39.0 * g(-h) + 12.0 * g(-2.0 * h)
        - g(-3.0 * h))
        / (6.0 * h.powi(4));
    let (c2, c4) = (d2 / 2.0, d4 / 24.0);
    check(
        (c2 + 1.25).abs() < 1e-3 && (c4 - 13.0 / 64.0).abs() < 1e-3,
        format!("quadratic {c2:.5}, quartic {c4:.5}"),
    )
}

fn disk_connectivity() -> Outcome {
    let rhos = vec![4.0, 5.0, 6.0, 8.0];
    let cfg = ExperimentConfig::new(
        Domain::disk(5.0).unwrap(),
        ConnectionModel::rayleigh(1.0, 2.0).unwrap(),
        rhos,
        1000,
        6,
    );
    let mut ok = true;
    let mut detail = Vec::new();
    for (rho, e) in estimate_pfc(&cfg).unwrap() {
        let an = disk_pfc(5.0, rho, 1.0);
        if an >= 0.5 {
            ok &= (e.mean - an).abs() <= 0.05;
        }
        detail.push(format!("rho {rho}: {:.3}/{an:.3}", e.mean));
    }
    check(ok, detail.join(", "))
}

fn obstacle_connectivity() -> Outcome {
    let model = ConnectionModel::rayleigh(1.0, 2.0).unwrap();
    let rhos = vec![4.0, 5.0, 6.0, 8.0];
    let mut ok = true;
    let mut detail = Vec::new();

    let cfg = ExperimentConfig::new(Domain::annulus(6.0, 20.0).unwrap(), model, rhos.clone(), 1000, 1);
    let mut large = 0.0f64;
    for (rho, e) in estimate_pfc(&cfg).unwrap() {
        let spec = PfcDomainSpec { geometry: PfcGeometry::AnnulusLarge { inner: 6.0, outer: 20.0 }, rho, beta: 1.0 };
        let an = pfc_closed_form(&spec).unwrap().raw;
        large = large.max((e.mean - an).abs());
    }
    ok &= large <= 0.05;
    detail.push(format!("large hole max gap {large:.4}"));

    let mut shift = 0.0f64;
    for &rho in &rhos {
        let spec = PfcDomainSpec { geometry: PfcGeometry::AnnulusSmall { inner: 0.2, outer: 5.0 }, rho, beta: 1.0 };
        shift = shift.max((pfc_closed_form(&spec).unwrap().raw - disk_pfc(5.0, rho, 1.0)).abs());
    }
    ok &= shift < 0.01;
    detail.push(format!("small hole term {shift:.2e}"));

    let disk = ExperimentConfig::new(Domain::disk(5.0).unwrap(), model, rhos.clone(), 1000, 5);
    let holed = ExperimentConfig::new(Domain::annulus(0.2, 5.0).unwrap(), model, rhos, 1000, 5);
    let mut worst = 0.0f64;
    for ((_, a), (_, b)) in estimate_pfc(&disk).unwrap().iter().zip(estimate_pfc(&holed).unwrap()) {
        let se = a.std_error.hypot(b.std_error);
        let diff = (a.mean - b.mean).abs();
        ok &= diff < 2.0 * se || diff == 0.0;
        worst = worst.max(diff);
    }
    detail.push(format!("A/B max difference {worst:.4}"));
    check(ok, detail.join(", "))
}

fn dispersion() -> Outcome {
    let near = sigma_distribution(15.0, 1.6, 10_000, 3).unwrap().dispersion;
    let far = sigma_distribution(15.0, 2.7, 10_000, 3).unwrap().dispersion;
    check(
        (0.9..=1.1).contains(&near) && far > 1.1,
        format!("index {near:.3} at r 1.6, {far:.3} at r 2.7"),
    )
}

fn random_graph(rng: &mut RandomState, n: usize, p: f64, connected: bool) -> GraphInstance {
    let mut edges = Vec::new();
    if connected {
        for v in 1..n {
            edges.push((rng.random_range(0..v), v));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    GraphInstance::from_edges(n, &edges).unwrap()
}

/// Betweenness by listing simple paths of increasing length until some reach
/// the target.
fn enumerated_betweenness(g: &GraphInstance) -> Vec<f64> {
    fn walk(g: &GraphInstance, path: &mut Vec<usize>, t: usize, edges: usize, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if path.len() == edges + 1 {
            if v == t {
                out.push(path.clone());
            }
            return;
        }
        for &w in g.neighbors(v) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, path, t, edges, out);
                path.pop();
            }
        }
    }
    let n = g.n();
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let mut paths = Vec::new();
            for edges in 1..n {
                walk(g, &mut vec![s], t, edges, &mut paths);
                if !paths.is_empty() {
                    break;
                }
            }
            if paths.is_empty() {
                continue;
            }
            for (z, bz) in b.iter_mut().enumerate() {
                if z != s && z != t {
                    *bz += paths.iter().filter(|p| p.contains(&z)).count() as f64 / paths.len() as f64;
                }
            }
        }
    }
    b
}

fn pinv_current_flow(g: &GraphInstance) -> Vec<f64> {
    let n = g.n();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for (i, j) in g.edges() {
        l[(i, j)] -= 1.0;
        l[(j, i)] -= 1.0;
        l[(i, i)] += 1.0;
        l[(j, j)] += 1.0;
    }
    // SVD-based pseudo_inverse loses ~1e-4 on some small Laplacians; the
    // symmetric eigensolver does not.
    let eig = l.symmetric_eigen();
    let mut lp = DMatrix::<f64>::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > 1e-9 {
            let v = eig.eigenvectors.column(k);
            lp += v * v.transpose() / lambda;
        }
    }
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let v: Vec<f64> = (0..n).map(|k| lp[(k, s)] - lp[(k, t)]).collect();
            for (z, bz) in b.iter_mut().enumerate() {
                if z != s && z != t {
                    *bz += 0.5 * g.neighbors(z).iter().map(|&w| (v[z] - v[w]).abs()).sum::<f64>();
                }
            }
        }
    }
    let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
    b.iter().map(|x| x / pairs).collect()
}

fn centrality_oracles() -> Outcome {
    let mut rng = RandomState::new(9);
    let mut brandes_gap: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=12usize);
        let p = rng.random_range(0.15..0.5);
        let g = random_graph(&mut rng, n, p, false);
        let got = brandes_betweenness(&g, false).values;
        for (a, b) in got.iter().zip(enumerated_betweenness(&g)) {
            brandes_gap = brandes_gap.max((a - b).abs());
        }
    }
    let mut flow_gap: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.random_range(3..=10usize);
        let g = random_graph(&mut rng, n, 0.3, true);
        let got = current_flow_betweenness(&g).unwrap().values;
        for (a, b) in got.iter().zip(pinv_current_flow(&g)) {
            flow_gap = flow_gap.max((a - b).abs());
        }
    }
    // path counts are small integers, so the ratios agree to rounding
    check(
        brandes_gap < 1e-12 && flow_gap < 1e-9,
        format!("brandes gap {brandes_gap:.1e}, current-flow gap {flow_gap:.1e}"),
    )
}

fn percolation_threshold() -> Outcome {
    let grid: Vec<f64> = (0..=40).map(|k| 0.4 + 0.005 * k as f64).collect();
    let rows = sweep(50, &grid, 1000, 10).unwrap();
    let ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
    let span: Vec<f64> = rows.iter().map(|r| r.spanning_prob).collect();
    let cross = interpolate_crossing(&ps, &span, 0.5);
    let bound = pc_lower_bound(2).unwrap();
    check(
        cross.is_some_and(|c| (0.45..=0.55).contains(&c)) && bound == 1.0 / 3.0,
        format!("crossing {cross:?}, lower bound {bound}"),
    )
}

fn isolation_tendency() -> Outcome {
    let cfg = ExperimentConfig::new(
        Domain::disk(5.0).unwrap(),
        ConnectionModel::rayleigh(1.0, 2.0).unwrap(),
        vec![2.0, 4.0, 6.0],
        1000,
        11,
    );
    let rows = isolated_vs_disconnected(&cfg).unwrap();
    let est: Vec<_> = rows.iter().filter_map(|r| r.fraction).collect();
    let ok = est.windows(2).all(|w| w[1].mean >= w[0].mean - 3.0 * w[0].std_error.hypot(w[1].std_error));
    let shown: Vec<String> = rows
        .iter()
        .map(|r| format!("rho {}: {}/{}", r.rho, r.with_isolated, r.disconnected))
        .collect();
    check(ok, shown.join(", "))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_rgglab");
    let invocations: [&[&str]; 6] = [
        &["connectivity", "--domain", "disk:R=5", "--beta", "1", "--rho-grid", "2:6:3", "--trials", "100"],
        &["betweenness", "--rho", "100", "--beta", "20", "--eps-grid", "0:1:5", "--trials", "10"],
        &["geodesics", "--rho", "10", "--r-grid", "1.05:2.95:5", "--trials", "300"],
        &["dispersion", "--rho", "10", "--r", "1.6", "--trials", "500"],
        &["percolation", "--L", "30", "--p-grid", "0.3:0.7:5", "--trials", "100"],
        &["strauss", "--n", "40", "--omega", "0.3", "--range", "0.05", "--steps", "2000"],
    ];
    let mut diverged = Vec::new();
    for args in invocations {
        let mut outputs = Vec::new();
        for jobs in ["1", "1", "2", "4"] {
            let o = Command::new(bin)
                .args(args)
                .args(["--seed", "12", "--jobs", jobs])
                .output()
                .expect("binary runs");
            if !o.status.success() {
                return Err(format!("{} failed: {}", args[0], String::from_utf8_lossy(&o.stderr)));
            }
            outputs.push((o.stdout, o.stderr));
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            diverged.push(args[0]);
        }
    }
    check(diverged.is_empty(), format!("{} invocations x 4 runs, diverged: {diverged:?}", invocations.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("table coefficients", table_coefficients),
        ("two-hop base case", two_hop_base_case),
        ("spatial polynomial interval", spatial_polynomial),
        ("betweenness continuum law", betweenness_law),
        ("betweenness series", series_coefficients),
        ("disk connectivity", disk_connectivity),
        ("obstacle connectivity", obstacle_connectivity),
        ("geodesic dispersion", dispersion),
        ("centrality oracles", centrality_oracles),
        ("percolation threshold", percolation_threshold),
        ("isolation tendency", isolation_tendency),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = run();
        let secs = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {:>2} {name} ({d}) [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({d}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
