//! Shortest-path and current-flow centralities.

mod brandes;
mod current_flow;

pub use brandes::{brandes_betweenness, geodesic_count, pair_dependency, GeodesicCount};
pub use current_flow::{
    current_flow_betweenness, dissipated_energy, edge_currents, pair_throughput, MAX_CURRENT_FLOW_VERTICES,
};

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralityKind {
    ShortestPath,
    CurrentFlow,
}

/// One centrality value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub values: Vec<f64>,
    pub normalized: bool,
    pub kind: CentralityKind,
    /// Set when only the largest component was scored; other vertices get 0.
    pub restricted: bool,
}

impl CentralityVector {
    /// CSV `vertex,value`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "vertex,value")?;
        for (v, x) in self.values.iter().enumerate() {
            writeln!(w, "{v},{x}")?;
        }
        Ok(())
    }
}

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
