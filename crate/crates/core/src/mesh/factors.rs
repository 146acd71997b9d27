//! Named conformal-factor presets evaluated at mesh vertex positions.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SurfaceMesh;

/// A per-vertex conformal log-factor u (the metric becomes e^{2u} g).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorSpec {
    None,
    /// Gaussian bump in the ambient position: u = A exp(-|x - c|²/(2w²)).
    Bump {
        center: [f64; 3],
        width: f64,
        amplitude: f64,
    },
    /// Seeded band-limited random field:
    /// u = (A/modes) Σ_j sin(ω_j ⟨d_j, x⟩ + θ_j) with |u| ≤ A.
    RandomFourier {
        seed: u64,
        modes: usize,
        amplitude: f64,
    },
}

/// Evaluate a factor preset at every vertex position.
pub fn evaluate_factor(spec: &FactorSpec, mesh: &SurfaceMesh) -> Vec<f64> {
    match spec {
        FactorSpec::None => vec![0.0; mesh.n_vertices()],
        FactorSpec::Bump {
            center,
            width,
            amplitude,
        } => {
            assert!(*width > 0.0, "bump width must be positive");
            mesh.vertices()
                .iter()
                .map(|v| {
                    let d2 = (v[0] - center[0]).powi(2)
                        + (v[1] - center[1]).powi(2)
                        + (v[2] - center[2]).powi(2);
                    amplitude * (-d2 / (2.0 * width * width)).exp()
                })
                .collect()
        }
        FactorSpec::RandomFourier {
            seed,
            modes,
            amplitude,
        } => {
            assert!(*modes > 0, "need at least one mode");
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let tau = 2.0 * std::f64::consts::PI;
            let terms: Vec<([f64; 3], f64, f64)> = (0..*modes)
                .map(|_| {
                    let mut d = [0.0; 3];
                    loop {
                        for c in d.iter_mut() {
                            *c = rng.gen_range(-1.0..1.0);
                        }
                        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                        if n > 1e-3 {
                            for c in d.iter_mut() {
                                *c /= n;
                            }
                            break;
                        }
                    }
                    let omega = rng.gen_range(1..=3) as f64;
                    let theta = rng.gen_range(0.0..tau);
                    (d, omega, theta)
                })
                .collect();
            mesh.vertices()
                .iter()
                .map(|v| {
                    let mut u = 0.0;
                    for (d, omega, theta) in &terms {
                        let ip = d[0] * v[0] + d[1] * v[1] + d[2] * v[2];
                        u += (omega * ip + theta).sin();
                    }
                    amplitude * u / (*modes as f64)
                })
                .collect()
        }
    }
}
