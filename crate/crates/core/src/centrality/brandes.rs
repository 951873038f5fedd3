use std::collections::VecDeque;

use super::{CentralityKind, CentralityVector};
use crate::error::{invalid, Result};
use crate::graph::GraphInstance;

/// Shortest-path betweenness by Brandes' accumulation. Each unordered pair
/// `{i, j}` with `z` strictly inside contributes `sigma_ij(z) / sigma_ij`.
/// With `normalized`, values are divided by `(n - 1)(n - 2) / 2`.
pub fn brandes_betweenness(g: &GraphInstance, normalized: bool) -> CentralityVector {
    let n = g.n();
    let mut bc = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        for &w in order.iter().rev() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in g.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] * coeff;
                }
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    // every unordered pair was seen from both ends
    let scale = if normalized && n > 2 {
        1.0 / ((n - 1) * (n - 2)) as f64
    } else {
        0.5
    };
    for v in bc.iter_mut() {
        *v *= scale;
    }
    CentralityVector {
        values: bc,
        normalized: normalized && n > 2,
        kind: CentralityKind::ShortestPath,
        restricted: false,
    }
}

/// Hop length and number of shortest paths between two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicCount {
    Reachable { hops: usize, count: u128 },
    Unreachable,
}

impl GeodesicCount {
    pub fn count(&self) -> u128 {
        match self {
            Self::Reachable { count, .. } => *count,
            Self::Unreachable => 0,
        }
    }

    pub fn hops(&self) -> Option<usize> {
        match self {
            Self::Reachable { hops, .. } => Some(*hops),
            Self::Unreachable => None,
        }
    }
}

fn check_vertex(g: &GraphInstance, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(invalid(format!("vertex {v} out of range (n = {})", g.n())));
    }
    Ok(())
}

/// Breadth-first layers from `s` with path counts.
fn bfs_counts(g: &GraphInstance, s: usize) -> (Vec<usize>, Vec<f64>) {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut sigma = vec![0.0; n];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    (dist, sigma)
}

/// Number of shortest paths from `i` to `j`, counted exactly by dynamic
/// programming over the breadth-first layers (saturating at `u128::MAX`).
pub fn geodesic_count(g: &GraphInstance, i: usize, j: usize) -> Result<GeodesicCount> {
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if i == j {
        return Err(invalid("geodesic count needs two distinct vertices"));
    }
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut count = vec![0u128; n];
    let mut queue = VecDeque::new();
    dist[i] = 0;
    count[i] = 1;
    queue.push_back(i);
    while let Some(v) = queue.pop_front() {
        if dist[v] >= dist[j] {
            break;
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                count[w] = count[w].saturating_add(count[v]);
            }
        }
    }
    Ok(if dist[j] == usize::MAX {
        GeodesicCount::Unreachable
    } else {
        GeodesicCount::Reachable {
            hops: dist[j],
            count: count[j],
        }
    })
}

/// Fraction of the shortest `i`-`j` paths that pass through `z`.
pub fn pair_dependency(g: &GraphInstance, i: usize, j: usize, z: usize) -> Result<f64> {
    for v in [i, j, z] {
        check_vertex(g, v)?;
    }
    if i == j || i == z || j == z {
        return Err(invalid("pair dependency needs three distinct vertices"));
    }
    let (di, si) = bfs_counts(g, i);
    if di[j] == usize::MAX || di[z] == usize::MAX {
        return Ok(0.0);
    }
    let (dj, sj) = bfs_counts(g, j);
    if di[z] + dj[z] != di[j] {
        return Ok(0.0);
    }
    Ok(si[z] * sj[z] / si[j])
}
