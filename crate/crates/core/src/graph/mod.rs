//! Hard and soft random geometric graphs plus structural queries.

mod cells;

use std::io::{self, Write};

use rand::RngCore;

use crate::error::{invalid, Result};
use crate::pointprocess::PointSet;
use crate::rng::{pair_uniform, RandomState};
use crate::union_find::UnionFind;

/// Edge rule between two points at distance `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConnectionModel {
    /// Edge iff `d < r0`.
    Hard { r0: f64 },
    /// Edge with probability `exp(-beta * d^eta)`.
    Rayleigh { beta: f64, eta: f64 },
}

/// Soft edges are dropped beyond this multiple of the typical range;
/// with `eta = 2` the neglected probability is below `e^-9`.
pub const RAYLEIGH_CUTOFF: f64 = 3.0;

impl ConnectionModel {
    pub fn hard(r0: f64) -> Result<Self> {
        let m = Self::Hard { r0 };
        m.validate()?;
        Ok(m)
    }

    pub fn rayleigh(beta: f64, eta: f64) -> Result<Self> {
        let m = Self::Rayleigh { beta, eta };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        match *self {
            Self::Hard { r0 } if !ok(r0) => Err(invalid(format!("r0 must be positive, got {r0}"))),
            Self::Rayleigh { beta, eta } if !(ok(beta) && ok(eta)) => Err(invalid(format!(
                "beta and eta must be positive, got beta={beta}, eta={eta}"
            ))),
            _ => Ok(()),
        }
    }

    /// `r0` for hard disks, `beta^(-1/eta)` for Rayleigh fading.
    pub fn typical_range(&self) -> f64 {
        match *self {
            Self::Hard { r0 } => r0,
            Self::Rayleigh { beta, eta } => beta.powf(-1.0 / eta),
        }
    }

    /// Distance beyond which no edge is ever drawn.
    pub fn cutoff(&self) -> f64 {
        match *self {
            Self::Hard { r0 } => r0,
            Self::Rayleigh { .. } => RAYLEIGH_CUTOFF * self.typical_range(),
        }
    }

    pub fn probability(&self, dist: f64) -> f64 {
        match *self {
            Self::Hard { r0 } => {
                if dist < r0 {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Rayleigh { beta, eta } => (-beta * dist.powf(eta)).exp(),
        }
    }
}

/// Connection function `H(dist)`.
pub fn connection_probability(model: &ConnectionModel, dist: f64) -> Result<f64> {
    model.validate()?;
    if !(dist >= 0.0) {
        return Err(invalid(format!("distance must be >= 0, got {dist}")));
    }
    Ok(model.probability(dist))
}

/// A sampled graph: its vertices and sorted adjacency lists.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInstance {
    points: Option<PointSet>,
    adjacency: Vec<Vec<usize>>,
    model: Option<ConnectionModel>,
    edges: usize,
}

impl GraphInstance {
    /// A graph with explicit edges and no geometry.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(invalid(format!("edge ({i},{j}) references a vertex >= {n}")));
            }
            if i == j {
                return Err(invalid(format!("self-loop at vertex {i}")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        Ok(Self::finish(None, adjacency, None))
    }

    /// Geometric graph with explicit edges.
    pub fn with_points(points: PointSet, model: ConnectionModel, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::from_edges(points.len(), edges)?;
        g.points = Some(points);
        g.model = Some(model);
        Ok(g)
    }

    fn finish(points: Option<PointSet>, mut adjacency: Vec<Vec<usize>>, model: Option<ConnectionModel>) -> Self {
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let edges = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            points,
            adjacency,
            model,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn points(&self) -> Option<&PointSet> {
        self.points.as_ref()
    }

    pub fn model(&self) -> Option<&ConnectionModel> {
        self.model.as_ref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// CSV `i,j`, one edge per row, sorted.
    pub fn write_edges_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "i,j")?;
        for (i, j) in self.edges() {
            writeln!(w, "{i},{j}")?;
        }
        Ok(())
    }

    /// Connected in the graph sense; graphs with at most one vertex count as
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n()
    }
}

/// Samples edges on `points`. Each pair `(i, j)` is joined when
/// `u_ij < chi(i, j) * H(d_ij)`, where `u_ij` is a uniform attached to the
/// unordered pair and `chi` the line-of-sight indicator (or 1 when
/// `respect_visibility` is false).
pub fn build_graph(
    points: &PointSet,
    model: &ConnectionModel,
    respect_visibility: bool,
    rng: &mut RandomState,
) -> Result<GraphInstance> {
    model.validate()?;
    let key = rng.next_u64();
    let domain = points.domain();
    let pts = points.points();
    let check_sight = respect_visibility && !domain.is_convex();
    let cutoff = model.cutoff();
    let mut adjacency = vec![Vec::new(); pts.len()];
    cells::candidate_pairs(domain, pts, cutoff, |i, j| {
        let d = domain.distance(&pts[i], &pts[j]);
        if d >= cutoff {
            return;
        }
        let joined = match model {
            ConnectionModel::Hard { .. } => true,
            ConnectionModel::Rayleigh { .. } => pair_uniform(key, i, j) < model.probability(d),
        };
        if joined && (!check_sight || domain.visible(&pts[i], &pts[j])) {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
    });
    Ok(GraphInstance::finish(Some(points.clone()), adjacency, Some(*model)))
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &GraphInstance) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for (i, j) in g.edges() {
        uf.union(i, j);
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(v);
    }
    out
}

/// Number of degree-zero vertices.
pub fn isolated_count(g: &GraphInstance) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 0).count()
}

/// Largest distance between two vertices of `component`.
pub fn component_euclidean_diameter(g: &GraphInstance, component: &[usize]) -> Result<f64> {
    if component.is_empty() {
        return Err(invalid("component must not be empty"));
    }
    let ps = g
        .points()
        .ok_or_else(|| invalid("graph carries no vertex positions"))?;
    let pts = ps.points();
    if let Some(&v) = component.iter().find(|&&v| v >= pts.len()) {
        return Err(invalid(format!("vertex {v} out of range")));
    }
    let mut best = 0.0f64;
    for (a, &i) in component.iter().enumerate() {
        for &j in &component[a + 1..] {
            best = best.max(ps.domain().distance(&pts[i], &pts[j]));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Domain, Point};

    #[test]
    fn connection_function() {
        let r = ConnectionModel::rayleigh(1.0, 2.0).unwrap();
        assert_eq!(connection_probability(&r, 0.0).unwrap(), 1.0);
        assert!((connection_probability(&r, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        let h = ConnectionModel::hard(1.0).unwrap();
        assert_eq!(connection_probability(&h, 1.0).unwrap(), 0.0);
        assert_eq!(connection_probability(&h, 0.999).unwrap(), 1.0);
        assert!(connection_probability(&h, -1.0).is_err());
        assert!(ConnectionModel::hard(0.0).is_err());
        assert!(ConnectionModel::rayleigh(1.0, -2.0).is_err());
    }

    #[test]
    fn two_close_points_join() {
        let d = Domain::square(2.0).unwrap();
        let ps = PointSet::from_points(d, vec![Point::xy(0.5, 0.5), Point::xy(1.0, 0.5)], 0).unwrap();
        let g = build_graph(&ps, &ConnectionModel::hard(1.0).unwrap(), true, &mut RandomState::new(0)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn hole_blocks_edge() {
        let d = Domain::annulus(0.5, 2.0).unwrap();
        let ps = PointSet::from_points(d, vec![Point::xy(-1.0, 0.0), Point::xy(1.0, 0.0)], 0).unwrap();
        let m = ConnectionModel::hard(3.0).unwrap();
        let g = build_graph(&ps, &m, true, &mut RandomState::new(0)).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = build_graph(&ps, &m, false, &mut RandomState::new(0)).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn components_and_isolation() {
        let g = GraphInstance::from_edges(0, &[]).unwrap();
        assert!(connected_components(&g).is_empty());
        let g = GraphInstance::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0, 1], vec![2]]);
        assert_eq!(isolated_count(&g), 1);
        assert!(!g.is_connected());
        assert!(GraphInstance::from_edges(1, &[]).unwrap().is_connected());
        assert!(GraphInstance::from_edges(2, &[(0, 0)]).is_err());
    }

    #[test]
    fn diameter_of_pair() {
        let d = Domain::square(2.0).unwrap();
        let ps = PointSet::from_points(d, vec![Point::xy(0.2, 0.2), Point::xy(1.5, 0.2)], 0).unwrap();
        let g = GraphInstance::with_points(ps, ConnectionModel::hard(2.0).unwrap(), &[(0, 1)]).unwrap();
        assert_eq!(component_euclidean_diameter(&g, &[0]).unwrap(), 0.0);
        assert!((component_euclidean_diameter(&g, &[0, 1]).unwrap() - 1.3).abs() < 1e-12);
        assert!(component_euclidean_diameter(&g, &[]).is_err());
    }

    #[test]
    fn edge_csv_sorted() {
        let g = GraphInstance::from_edges(4, &[(3, 1), (0, 2), (1, 0)]).unwrap();
        let mut buf = Vec::new();
        g.write_edges_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,j\n0,1\n0,2\n1,3\n");
    }
}
