//! Uniform-grid neighbour search.

use std::collections::HashMap;

use crate::geometry::{Domain, Point, Shape};

type Key = [i64; 3];

/// Calls `visit(i, j)` (with `i < j`) for every pair that may lie within
/// `cutoff` of each other. Every such pair is visited exactly once; some
/// farther pairs are visited too.
pub(crate) fn candidate_pairs<F: FnMut(usize, usize)>(domain: &Domain, points: &[Point], cutoff: f64, mut visit: F) {
    let n = points.len();
    if n < 2 {
        return;
    }
    let dim = domain.dim();
    let (lo, hi) = domain.bounding_box();
    let dims: Vec<i64> = (0..dim)
        .map(|k| (((hi[k] - lo[k]) / cutoff).floor() as i64).max(1))
        .collect();
    let periodic = matches!(domain.shape(), Shape::Torus { .. });
    // with fewer than three cells per axis the periodic stencil would
    // revisit cells, so just scan all pairs
    if dims.iter().all(|&m| m <= 1) || (periodic && dims.iter().any(|&m| m < 3)) {
        for i in 0..n {
            for j in i + 1..n {
                visit(i, j);
            }
        }
        return;
    }
    let width: Vec<f64> = (0..dim).map(|k| (hi[k] - lo[k]) / dims[k] as f64).collect();
    let key_of = |p: &Point| -> Key {
        let mut key = [0i64; 3];
        for k in 0..dim {
            let c = ((p.coords()[k] - lo[k]) / width[k]).floor() as i64;
            key[k] = c.clamp(0, dims[k] - 1);
        }
        key
    };
    let mut cells: HashMap<Key, Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        cells.entry(key_of(p)).or_default().push(i);
    }
    let offsets = stencil(dim);
    for (key, members) in &cells {
        for off in &offsets {
            let mut other = *key;
            let mut valid = true;
            for k in 0..dim {
                let mut c = key[k] + off[k];
                if periodic {
                    c = c.rem_euclid(dims[k]);
                } else if c < 0 || c >= dims[k] {
                    valid = false;
                    break;
                }
                other[k] = c;
            }
            if !valid {
                continue;
            }
            match other.cmp(key) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => {
                    for (a, &i) in members.iter().enumerate() {
                        for &j in &members[a + 1..] {
                            visit(i.min(j), i.max(j));
                        }
                    }
                }
                std::cmp::Ordering::Greater => {
                    if let Some(others) = cells.get(&other) {
                        for &i in members {
                            for &j in others {
                                visit(i.min(j), i.max(j));
                            }
                        }
                    }
                }
            }
        }
    }
}

fn stencil(dim: usize) -> Vec<Key> {
    let mut out = Vec::new();
    let r = |k: usize| if k < dim { -1..=1 } else { 0..=0 };
    for a in r(0) {
        for b in r(1) {
            for c in r(2) {
                out.push([a, b, c]);
            }
        }
    }
    out
}
