//! Unit-resistor current flow on a graph.

use nalgebra::{DMatrix, DVector};

use super::{CentralityKind, CentralityVector, CompensatedSum};
use crate::error::{invalid, Error, Result};
use crate::graph::{connected_components, GraphInstance};

/// Dense factorisations are refused above this many vertices.
pub const MAX_CURRENT_FLOW_VERTICES: usize = 2000;

/// Laplacian of the subgraph on `vertices` with the last vertex grounded.
fn grounded_laplacian(g: &GraphInstance, vertices: &[usize], local: &[usize]) -> DMatrix<f64> {
    let m = vertices.len();
    let mut lap = DMatrix::zeros(m - 1, m - 1);
    for (a, &v) in vertices.iter().enumerate().take(m - 1) {
        lap[(a, a)] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            let b = local[w];
            if b < m - 1 {
                lap[(a, b)] -= 1.0;
            }
        }
    }
    lap
}

/// Node potentials for a unit current entering at `s` and leaving at `t`
/// (the last vertex of the component is held at zero).
fn potentials(g: &GraphInstance, s: usize, t: usize) -> Result<(Vec<usize>, Vec<f64>)> {
    let n = g.n();
    if s >= n || t >= n {
        return Err(invalid(format!("vertex out of range (n = {n})")));
    }
    if s == t {
        return Err(invalid("source and sink must differ"));
    }
    let comp = connected_components(g)
        .into_iter()
        .find(|c| c.binary_search(&s).is_ok())
        .expect("every vertex lies in a component");
    if comp.binary_search(&t).is_err() {
        return Err(invalid(format!("vertices {s} and {t} are not connected")));
    }
    guard(comp.len())?;
    let mut local = vec![usize::MAX; n];
    for (a, &v) in comp.iter().enumerate() {
        local[v] = a;
    }
    let m = comp.len();
    let lap = grounded_laplacian(g, &comp, &local);
    let mut rhs = DVector::zeros(m - 1);
    if local[s] < m - 1 {
        rhs[local[s]] += 1.0;
    }
    if local[t] < m - 1 {
        rhs[local[t]] -= 1.0;
    }
    let chol = lap
        .cholesky()
        .ok_or_else(|| Error::Convergence("grounded Laplacian is not positive definite".into()))?;
    let sol = chol.solve(&rhs);
    let mut volt = vec![0.0; n];
    for (a, &v) in comp.iter().enumerate().take(m - 1) {
        volt[v] = sol[a];
    }
    Ok((comp, volt))
}

fn guard(m: usize) -> Result<()> {
    if m > MAX_CURRENT_FLOW_VERTICES {
        return Err(Error::Unsupported(format!(
            "current-flow solve limited to {MAX_CURRENT_FLOW_VERTICES} vertices, got {m}"
        )));
    }
    Ok(())
}

/// Current on every edge `(i, j)` (in [`GraphInstance::edges`] order), positive
/// when it flows from `i` to `j`, for a unit current from `s` to `t`.
pub fn edge_currents(g: &GraphInstance, s: usize, t: usize) -> Result<Vec<f64>> {
    let (_, volt) = potentials(g, s, t)?;
    Ok(g.edges().map(|(i, j)| volt[i] - volt[j]).collect())
}

/// Current through every vertex for one source-sink pair: half the sum of the
/// absolute currents on its edges. Source and sink carry 0.
pub fn pair_throughput(g: &GraphInstance, s: usize, t: usize) -> Result<Vec<f64>> {
    let (comp, volt) = potentials(g, s, t)?;
    let mut out = vec![0.0; g.n()];
    for &z in &comp {
        if z != s && z != t {
            out[z] = 0.5 * g.neighbors(z).iter().map(|&w| (volt[z] - volt[w]).abs()).sum::<f64>();
        }
    }
    Ok(out)
}

/// Power dissipated by the given edge currents through unit resistors.
pub fn dissipated_energy(g: &GraphInstance, currents: &[f64]) -> Result<f64> {
    if currents.len() != g.edge_count() {
        return Err(invalid(format!(
            "expected {} edge currents, got {}",
            g.edge_count(),
            currents.len()
        )));
    }
    let mut acc = CompensatedSum::default();
    for c in currents {
        acc.add(c * c);
    }
    Ok(acc.value())
}

/// Current-flow betweenness: the throughput of each vertex averaged over all
/// unordered source-sink pairs that do not include it. Disconnected graphs
/// are scored on their largest component only (`restricted` is then set).
pub fn current_flow_betweenness(g: &GraphInstance) -> Result<CentralityVector> {
    let n = g.n();
    let comps = connected_components(g);
    let mut values = vec![0.0; n];
    let restricted = comps.len() > 1;
    let Some(comp) = comps.into_iter().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))) else {
        return Ok(CentralityVector {
            values,
            normalized: true,
            kind: CentralityKind::CurrentFlow,
            restricted,
        });
    };
    let m = comp.len();
    guard(m)?;
    if m < 3 {
        return Ok(CentralityVector {
            values,
            normalized: true,
            kind: CentralityKind::CurrentFlow,
            restricted,
        });
    }
    let mut local = vec![usize::MAX; n];
    for (a, &v) in comp.iter().enumerate() {
        local[v] = a;
    }
    let lap = grounded_laplacian(g, &comp, &local);
    let inv = lap
        .cholesky()
        .ok_or_else(|| Error::Convergence("grounded Laplacian is not positive definite".into()))?
        .inverse();
    // potential of local vertex a for unit injection at local b
    let green = |a: usize, b: usize| if a == m - 1 || b == m - 1 { 0.0 } else { inv[(a, b)] };
    let mut acc = vec![CompensatedSum::default(); m];
    let mut volt = vec![0.0; m];
    for s in 0..m {
        for t in s + 1..m {
            for (a, v) in volt.iter_mut().enumerate() {
                *v = green(a, s) - green(a, t);
            }
            for (a, &z) in comp.iter().enumerate() {
                if a == s || a == t {
                    continue;
                }
                let through: f64 = g.neighbors(z).iter().map(|&w| (volt[a] - volt[local[w]]).abs()).sum();
                acc[a].add(0.5 * through);
            }
        }
    }
    let pairs = ((m - 1) * (m - 2) / 2) as f64;
    for (a, &z) in comp.iter().enumerate() {
        values[z] = acc[a].value() / pairs;
    }
    Ok(CentralityVector {
        values,
        normalized: true,
        kind: CentralityKind::CurrentFlow,
        restricted,
    })
}
