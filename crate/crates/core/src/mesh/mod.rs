//! Triangulated closed surfaces with intrinsic metric data.
//!
//! The metric is carried by per-triangle edge lengths, which are
//! authoritative over vertex positions; positions are kept for export,
//! immersions and conformal-factor evaluation. This lets flat tori, the
//! Klein metric of revolution and conformal factors share one cotangent-FEM
//! path: the assembly needs only intrinsic lengths.

mod factors;
mod generators;
mod io;

pub use factors::{evaluate_factor, FactorSpec};
pub use generators::{
    flat_torus, icosphere, klein_bottle_revolution, projective_plane, torus_minimal_immersion,
    LatticeBasis,
};
pub use io::{export_off, export_sidecar, import_off_with_sidecar, MeshSidecar};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sphere::UnitVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Sphere,
    Torus,
    Klein,
    Rp2,
}

impl Topology {
    pub fn orientable(self) -> bool {
        matches!(self, Topology::Sphere | Topology::Torus)
    }
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Topology::Sphere => "sphere",
            Topology::Torus => "torus",
            Topology::Klein => "klein",
            Topology::Rp2 => "rp2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("lattice basis is degenerate (|det| = {det})")]
    DegenerateLattice { det: f64 },
    #[error("triangle {triangle} violates the triangle inequality after scaling")]
    TriangleInequalityViolated { triangle: usize },
    #[error("edge ({a}, {b}) is shared by {count} triangles, expected 2")]
    NotClosed { a: usize, b: usize, count: usize },
    #[error("triangle {triangle} has a non-positive or non-finite edge length")]
    BadEdgeLength { triangle: usize },
    #[error("adjacent triangles disagree on the length of edge ({a}, {b})")]
    InconsistentEdgeLengths { a: usize, b: usize },
    #[error("lattice does not admit a minimal immersion by first eigenfunctions")]
    WrongLattice,
    #[error("mesh file is malformed: {0}")]
    Malformed(String),
}

/// Per-vertex samples of an immersion into Sⁿ ⊂ ℝ^{n+1}.
#[derive(Clone, Debug)]
pub struct ImmersionSamples {
    points: Vec<UnitVector>,
}

impl ImmersionSamples {
    pub fn new(points: Vec<UnitVector>) -> Self {
        assert!(!points.is_empty());
        let dim = points[0].dim();
        assert!(points.iter().all(|p| p.dim() == dim));
        ImmersionSamples { points }
    }

    pub fn points(&self) -> &[UnitVector] {
        &self.points
    }

    /// Ambient dimension n + 1.
    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }
}

/// A closed triangulated surface. `edge_lengths[t] = [l01, l12, l20]` holds
/// the metric lengths of the edges of triangle `t` in vertex order.
#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
    edge_lengths: Vec<[f64; 3]>,
    conformal_log_factor: Vec<f64>,
    topology: Topology,
}

impl SurfaceMesh {
    pub(crate) fn from_parts(
        vertices: Vec<[f64; 3]>,
        triangles: Vec<[usize; 3]>,
        edge_lengths: Vec<[f64; 3]>,
        conformal_log_factor: Vec<f64>,
        topology: Topology,
    ) -> Self {
        assert_eq!(triangles.len(), edge_lengths.len());
        assert_eq!(vertices.len(), conformal_log_factor.len());
        SurfaceMesh {
            vertices,
            triangles,
            edge_lengths,
            conformal_log_factor,
            topology,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edge_lengths(&self) -> &[[f64; 3]] {
        &self.edge_lengths
    }

    pub fn conformal_log_factor(&self) -> &[f64] {
        &self.conformal_log_factor
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Metric area of triangle `t` from its edge lengths (stable Heron).
    pub fn triangle_area(&self, t: usize) -> f64 {
        let [l01, l12, l20] = self.edge_lengths[t];
        heron_area(l01, l12, l20)
    }

    pub fn total_area(&self) -> f64 {
        let areas = crate::par::map_indexed(self.n_triangles(), |t| self.triangle_area(t));
        crate::par::sum(&areas)
    }

    /// Lumped vertex masses: one third of the adjacent triangle areas.
    pub fn vertex_areas(&self) -> Vec<f64> {
        let mut areas = vec![0.0; self.n_vertices()];
        for t in 0..self.n_triangles() {
            let a = self.triangle_area(t) / 3.0;
            for &v in &self.triangles[t] {
                areas[v] += a;
            }
        }
        areas
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::HashSet::new();
        for tri in &self.triangles {
            for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.n_vertices() as i64 - edges.len() as i64 + self.n_triangles() as i64
    }

    /// Check closedness (every edge in exactly two triangles), positive
    /// finite edge lengths satisfying the triangle inequality, and
    /// length agreement between adjacent triangles.
    pub fn validate(&self) -> Result<(), MeshError> {
        let mut edge_info: std::collections::HashMap<(usize, usize), (usize, f64)> =
            std::collections::HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            let ls = self.edge_lengths[t];
            if ls.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
                return Err(MeshError::BadEdgeLength { triangle: t });
            }
            if heron_area(ls[0], ls[1], ls[2]) <= 0.0 {
                return Err(MeshError::TriangleInequalityViolated { triangle: t });
            }
            for (k, (a, b)) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
                .into_iter()
                .enumerate()
            {
                let key = (a.min(b), a.max(b));
                let entry = edge_info.entry(key).or_insert((0, ls[k]));
                entry.0 += 1;
                if (entry.1 - ls[k]).abs() > 1e-9 * entry.1.max(1e-300) {
                    return Err(MeshError::InconsistentEdgeLengths { a: key.0, b: key.1 });
                }
            }
        }
        for ((a, b), (count, _)) in edge_info {
            if count != 2 {
                return Err(MeshError::NotClosed { a, b, count });
            }
        }
        Ok(())
    }

    /// Scale metric edge lengths by e^{(u_i + u_j)/2} per edge. Topology and
    /// positions are unchanged; the accumulated log factor is recorded.
    pub fn apply_conformal_factor(&self, u: &[f64]) -> Result<SurfaceMesh, MeshError> {
        assert_eq!(u.len(), self.n_vertices());
        assert!(u.iter().all(|x| x.is_finite()), "factor must be finite");
        let mut edge_lengths = self.edge_lengths.clone();
        for (t, tri) in self.triangles.iter().enumerate() {
            let pairs = [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])];
            for (k, (a, b)) in pairs.into_iter().enumerate() {
                edge_lengths[t][k] *= (0.5 * (u[a] + u[b])).exp();
            }
            let ls = edge_lengths[t];
            if heron_area(ls[0], ls[1], ls[2]) <= 0.0 {
                return Err(MeshError::TriangleInequalityViolated { triangle: t });
            }
        }
        let factor = self
            .conformal_log_factor
            .iter()
            .zip(u)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SurfaceMesh {
            vertices: self.vertices.clone(),
            triangles: self.triangles.clone(),
            edge_lengths,
            conformal_log_factor: factor,
            topology: self.topology,
        })
    }

    /// Longest metric edge in the mesh.
    pub fn max_edge_length(&self) -> f64 {
        self.edge_lengths
            .iter()
            .flat_map(|l| l.iter())
            .fold(0.0f64, |m, &l| m.max(l))
    }
}

/// Numerically stable Heron formula (Kahan's ordering). Returns 0 for
/// degenerate inputs that violate the triangle inequality.
pub fn heron_area(x: f64, y: f64, z: f64) -> f64 {
    let mut s = [x, y, z];
    s.sort_by(|p, q| q.partial_cmp(p).unwrap());
    let [a, b, c] = s;
    let term = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if term <= 0.0 {
        return 0.0;
    }
    0.25 * term.sqrt()
}
