//! Generators for the canonical surfaces: icosphere, flat tori from lattice
//! bases, the Klein bottle of revolution, and the projective plane as the
//! antipodal quotient of the icosphere.

use std::collections::HashMap;

use super::{heron_area, ImmersionSamples, MeshError, SurfaceMesh, Topology};
use crate::sphere::UnitVector;

/// Basis of a 2-D lattice, rows are the generators.
#[derive(Clone, Copy, Debug)]
pub struct LatticeBasis {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl LatticeBasis {
    pub fn square() -> Self {
        LatticeBasis {
            a: [1.0, 0.0],
            b: [0.0, 1.0],
        }
    }

    /// The hexagonal lattice Z(1,0) ⊕ Z(1/2, √3/2).
    pub fn equilateral() -> Self {
        LatticeBasis {
            a: [1.0, 0.0],
            b: [0.5, 0.5 * 3.0f64.sqrt()],
        }
    }

    pub fn det(&self) -> f64 {
        self.a[0] * self.b[1] - self.a[1] * self.b[0]
    }

    /// Dual basis: vectors d₁, d₂ with ⟨dᵢ, basisⱼ⟩ = δᵢⱼ.
    pub fn dual(&self) -> [[f64; 2]; 2] {
        let d = self.det();
        [
            [self.b[1] / d, -self.b[0] / d],
            [-self.a[1] / d, self.a[0] / d],
        ]
    }
}

/// Antipodally symmetric triangulation of the unit sphere by repeated
/// midpoint subdivision of the icosahedron, together with the identity
/// immersion. Edge lengths are chordal distances of the unit positions.
pub fn icosphere(subdivisions: usize) -> (SurfaceMesh, ImmersionSamples) {
    assert!(subdivisions <= 8, "subdivision level capped at 8");
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut vertices: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    for v in vertices.iter_mut() {
        normalize3(v);
    }
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut new_faces = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |i: usize, j: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (i.min(j), i.max(j));
            if let Some(&k) = midpoints.get(&key) {
                return k;
            }
            let (p, q) = (verts[key.0], verts[key.1]);
            let mut m = [
                0.5 * (p[0] + q[0]),
                0.5 * (p[1] + q[1]),
                0.5 * (p[2] + q[2]),
            ];
            normalize3(&mut m);
            verts.push(m);
            midpoints.insert(key, verts.len() - 1);
            verts.len() - 1
        };
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            new_faces.push([a, ab, ca]);
            new_faces.push([b, bc, ab]);
            new_faces.push([c, ca, bc]);
            new_faces.push([ab, bc, ca]);
        }
        faces = new_faces;
    }

    let edge_lengths = chordal_lengths(&vertices, &faces);
    let n = vertices.len();
    let mesh = SurfaceMesh::from_parts(
        vertices.clone(),
        faces,
        edge_lengths,
        vec![0.0; n],
        Topology::Sphere,
    );
    let immersion =
        ImmersionSamples::new(vertices.into_iter().map(|v| UnitVector::new(v.to_vec())).collect());
    (mesh, immersion)
}

fn normalize3(v: &mut [f64; 3]) {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v[0] /= n;
    v[1] /= n;
    v[2] /= n;
}

fn chordal_lengths(vertices: &[[f64; 3]], faces: &[[usize; 3]]) -> Vec<[f64; 3]> {
    faces
        .iter()
        .map(|&[a, b, c]| {
            [
                dist3(vertices[a], vertices[b]),
                dist3(vertices[b], vertices[c]),
                dist3(vertices[c], vertices[a]),
            ]
        })
        .collect()
}

fn dist3(p: [f64; 3], q: [f64; 3]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
}

/// Flat torus ℝ²/L triangulated on a `resolution`² grid in lattice
/// coordinates. Edge lengths come from the flat metric exactly.
pub fn flat_torus(basis: LatticeBasis, resolution: usize) -> Result<SurfaceMesh, MeshError> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let scale = (norm2(basis.a) * norm2(basis.b)).max(1e-300);
    let det = basis.det();
    if det.abs() < 1e-12 * scale {
        return Err(MeshError::DegenerateLattice { det });
    }
    let n = resolution;
    let mut vertices = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let x = (i as f64) / (n as f64);
            let y = (j as f64) / (n as f64);
            vertices.push([
                x * basis.a[0] + y * basis.b[0],
                x * basis.a[1] + y * basis.b[1],
                0.0,
            ]);
        }
    }
    let vid = |i: usize, j: usize| (j % n) * n + (i % n);
    let la = norm2(basis.a) / n as f64;
    let lb = norm2(basis.b) / n as f64;
    // cells split along the (a - b) diagonal; for the hexagonal lattice this
    // produces equilateral triangles
    let ld = norm2([basis.a[0] - basis.b[0], basis.a[1] - basis.b[1]]) / n as f64;
    let mut triangles = Vec::with_capacity(2 * n * n);
    let mut edge_lengths = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let v00 = vid(i, j);
            let v10 = vid(i + 1, j);
            let v01 = vid(i, j + 1);
            let v11 = vid(i + 1, j + 1);
            triangles.push([v00, v10, v01]);
            edge_lengths.push([la, ld, lb]);
            triangles.push([v10, v11, v01]);
            edge_lengths.push([lb, la, ld]);
        }
    }
    Ok(SurfaceMesh::from_parts(
        vertices,
        triangles,
        edge_lengths,
        vec![0.0; n * n],
        Topology::Torus,
    ))
}

fn norm2(v: [f64; 2]) -> f64 {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

/// Klein bottle of revolution with the metric
///
/// ```text
/// g₀ = (9 + (1 + 8cos²v)²)/(1 + 8cos²v) (du² + dv²/(1 + 8cos²v))
/// ```
///
/// on the fundamental domain 0 ≤ u < π/2, 0 ≤ v < π. The domain is the
/// quotient of the torus double cover under the glide reflection
/// (u, v) ↦ (u + π/2, -v); the grid gluing identifies (π/2, v) with
/// (0, -v mod π). Edge lengths use midpoint quadrature of the metric on
/// parameter-space edges.
pub fn klein_bottle_revolution(grid_u: usize, grid_v: usize) -> SurfaceMesh {
    assert!(grid_u >= 16 && grid_v >= 16, "grids must be at least 16");
    let (nu, nv) = (grid_u, grid_v);
    let du = (std::f64::consts::PI / 2.0) / nu as f64;
    let dv = std::f64::consts::PI / nv as f64;

    let mut vertices = Vec::with_capacity(nu * nv);
    for j in 0..nv {
        for i in 0..nu {
            vertices.push([i as f64 * du, j as f64 * dv, 0.0]);
        }
    }
    // vertex id with the seam identification (nu, j) -> (0, nv - j)
    let vid = |i: usize, j: usize| -> usize {
        let jj = j % nv;
        if i == nu {
            ((nv - jj) % nv) * nu
        } else {
            jj * nu + i
        }
    };
    // metric coefficients at parameter v (cover chart)
    let guu = |v: f64| {
        let w = 1.0 + 8.0 * v.cos().powi(2);
        (9.0 + w * w) / w
    };
    let gvv = |v: f64| {
        let w = 1.0 + 8.0 * v.cos().powi(2);
        (9.0 + w * w) / (w * w)
    };
    let edge_len = |v_mid: f64, eu: f64, ev: f64| -> f64 {
        (guu(v_mid) * eu * eu + gvv(v_mid) * ev * ev).sqrt()
    };

    let mut triangles = Vec::with_capacity(2 * nu * nv);
    let mut edge_lengths = Vec::with_capacity(2 * nu * nv);
    for j in 0..nv {
        for i in 0..nu {
            let v_lo = j as f64 * dv;
            let v_hi = (j + 1) as f64 * dv;
            let v_mid = v_lo + 0.5 * dv;
            let c00 = vid(i, j);
            let c10 = vid(i + 1, j);
            let c01 = vid(i, j + 1);
            let c11 = vid(i + 1, j + 1);
            let l_u_lo = edge_len(v_lo, du, 0.0);
            let l_u_hi = edge_len(v_hi, du, 0.0);
            let l_v = edge_len(v_mid, 0.0, dv);
            let l_diag = edge_len(v_mid, du, dv);
            // cell split along the (c10, c01) diagonal
            triangles.push([c00, c10, c01]);
            edge_lengths.push([l_u_lo, l_diag, l_v]);
            triangles.push([c10, c11, c01]);
            edge_lengths.push([l_v, l_u_hi, l_diag]);
        }
    }
    SurfaceMesh::from_parts(
        vertices,
        triangles,
        edge_lengths,
        vec![0.0; nu * nv],
        Topology::Klein,
    )
}

/// Projective plane as the antipodal quotient of the icosphere. Vertices
/// keep the lexicographically larger representative of each antipodal pair;
/// metric edge lengths are inherited from the sphere.
pub fn projective_plane(subdivisions: usize) -> SurfaceMesh {
    assert!(subdivisions >= 1, "need at least one subdivision");
    let (sphere, _) = icosphere(subdivisions);
    let verts = sphere.vertices();

    // antipodes are bit-exact by construction
    let mut index_of: HashMap<[u64; 3], usize> = HashMap::new();
    for (i, v) in verts.iter().enumerate() {
        index_of.insert([v[0].to_bits(), v[1].to_bits(), v[2].to_bits()], i);
    }
    let antipode = |i: usize| -> usize {
        let v = verts[i];
        *index_of
            .get(&[(-v[0]).to_bits(), (-v[1]).to_bits(), (-v[2]).to_bits()])
            .expect("icosphere must be antipodally symmetric")
    };

    let is_canonical = |i: usize| -> bool {
        let v = verts[i];
        let w = verts[antipode(i)];
        v.partial_cmp(&w) == Some(std::cmp::Ordering::Greater)
    };

    let mut new_index = vec![usize::MAX; verts.len()];
    let mut new_vertices = Vec::with_capacity(verts.len() / 2);
    for i in 0..verts.len() {
        if is_canonical(i) {
            new_index[i] = new_vertices.len();
            new_vertices.push(verts[i]);
        }
    }
    for i in 0..verts.len() {
        if new_index[i] == usize::MAX {
            new_index[i] = new_index[antipode(i)];
        }
    }

    let mut seen = std::collections::HashSet::new();
    let mut triangles = Vec::with_capacity(sphere.n_triangles() / 2);
    let mut edge_lengths = Vec::with_capacity(sphere.n_triangles() / 2);
    for (t, tri) in sphere.triangles().iter().enumerate() {
        let mapped = [new_index[tri[0]], new_index[tri[1]], new_index[tri[2]]];
        let mut key = mapped;
        key.sort_unstable();
        if seen.insert(key) {
            triangles.push(mapped);
            edge_lengths.push(sphere.edge_lengths()[t]);
        }
    }

    let n = new_vertices.len();
    SurfaceMesh::from_parts(new_vertices, triangles, edge_lengths, vec![0.0; n], Topology::Rp2)
}

/// Minimal isometric immersion of a flat torus by its first eigenfunctions,
/// when the lattice admits one: pairs (cos 2π⟨d, x⟩, sin 2π⟨d, x⟩)/√k over
/// the k shortest dual vectors d (one per ± pair). The square lattice gives
/// S³, the hexagonal lattice S⁵. Errors with [`MeshError::WrongLattice`]
/// when the shortest dual vectors fail the conformality condition
/// Σ ddᵀ ∝ I.
pub fn torus_minimal_immersion(
    mesh: &SurfaceMesh,
    basis: LatticeBasis,
) -> Result<ImmersionSamples, MeshError> {
    assert_eq!(mesh.topology(), Topology::Torus);
    let dual = basis.dual();
    // shortest nonzero dual-lattice vectors, one per antipodal pair
    let mut shortest: Vec<[f64; 2]> = Vec::new();
    let mut min_norm = f64::INFINITY;
    for m in -4i64..=4 {
        for n in -4i64..=4 {
            if m == 0 && n == 0 {
                continue;
            }
            let v = [
                m as f64 * dual[0][0] + n as f64 * dual[1][0],
                m as f64 * dual[0][1] + n as f64 * dual[1][1],
            ];
            let nv = norm2(v);
            if nv < min_norm * (1.0 - 1e-9) {
                min_norm = nv;
                shortest.clear();
            }
            if (nv - min_norm).abs() <= 1e-9 * min_norm {
                // keep one representative per ± pair
                let canonical = v[0] > 1e-12 || (v[0].abs() <= 1e-12 && v[1] > 0.0);
                if canonical {
                    shortest.push(v);
                }
            }
        }
    }
    let k = shortest.len();
    // conformality: Σ ddᵀ must be a multiple of the identity
    let mut xx = 0.0;
    let mut xy = 0.0;
    let mut yy = 0.0;
    for d in &shortest {
        xx += d[0] * d[0];
        xy += d[0] * d[1];
        yy += d[1] * d[1];
    }
    let scale = xx.max(yy);
    if k < 2 || (xx - yy).abs() > 1e-9 * scale || xy.abs() > 1e-9 * scale {
        return Err(MeshError::WrongLattice);
    }

    let inv_sqrt_k = 1.0 / (k as f64).sqrt();
    let tau = 2.0 * std::f64::consts::PI;
    let points = mesh
        .vertices()
        .iter()
        .map(|p| {
            let mut coords = Vec::with_capacity(2 * k);
            for d in &shortest {
                let phase = tau * (d[0] * p[0] + d[1] * p[1]);
                coords.push(inv_sqrt_k * phase.cos());
                coords.push(inv_sqrt_k * phase.sin());
            }
            UnitVector::new(coords)
        })
        .collect();
    Ok(ImmersionSamples::new(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn icosphere_counts_and_area() {
        let (m0, _) = icosphere(0);
        assert_eq!(m0.n_vertices(), 12);
        assert_eq!(m0.n_triangles(), 20);
        m0.validate().unwrap();
        assert_eq!(m0.euler_characteristic(), 2);

        let (m4, imm) = icosphere(4);
        assert_eq!(m4.n_vertices(), 2562);
        assert_eq!(m4.n_triangles(), 5120);
        m4.validate().unwrap();
        let area = m4.total_area();
        assert!(
            (area - 4.0 * PI).abs() < 0.005 * 4.0 * PI,
            "area {area} too far from 4π"
        );
        assert_eq!(imm.ambient_dim(), 3);
    }

    #[test]
    fn icosphere_antipodal_symmetry_is_exact() {
        for level in [0, 2, 3] {
            let (m, _) = icosphere(level);
            let mut set = std::collections::HashSet::new();
            for v in m.vertices() {
                set.insert([v[0].to_bits(), v[1].to_bits(), v[2].to_bits()]);
            }
            for v in m.vertices() {
                assert!(
                    set.contains(&[(-v[0]).to_bits(), (-v[1]).to_bits(), (-v[2]).to_bits()]),
                    "missing exact antipode at level {level}"
                );
            }
        }
    }

    #[test]
    fn flat_torus_volumes() {
        let sq = flat_torus(LatticeBasis::square(), 16).unwrap();
        sq.validate().unwrap();
        assert!((sq.total_area() - 1.0).abs() < 1e-12);
        assert_eq!(sq.euler_characteristic(), 0);

        let eq = flat_torus(LatticeBasis::equilateral(), 16).unwrap();
        eq.validate().unwrap();
        assert!((eq.total_area() - 3.0f64.sqrt() / 2.0).abs() < 1e-12);

        let degenerate = LatticeBasis {
            a: [1.0, 0.0],
            b: [2.0, 0.0],
        };
        assert!(matches!(
            flat_torus(degenerate, 8),
            Err(MeshError::DegenerateLattice { .. })
        ));
    }

    #[test]
    fn equilateral_mesh_is_equilateral() {
        let eq = flat_torus(LatticeBasis::equilateral(), 8).unwrap();
        for ls in eq.edge_lengths() {
            assert!((ls[0] - ls[1]).abs() < 1e-15 && (ls[1] - ls[2]).abs() < 1e-15);
        }
    }

    #[test]
    fn klein_bottle_topology_and_area() {
        let k = klein_bottle_revolution(32, 32);
        k.validate().unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        assert!(!k.topology().orientable());
        // coarse-grid area already lands near 6π E(2√2/3) = 20.9935...
        let area = k.total_area();
        assert!(
            (area - 20.993525178854217).abs() < 0.02 * 20.99,
            "area {area}"
        );
    }

    #[test]
    fn projective_plane_counts() {
        let rp2 = projective_plane(2);
        rp2.validate().unwrap();
        let (sphere, _) = icosphere(2);
        assert_eq!(rp2.n_vertices() * 2, sphere.n_vertices());
        assert_eq!(rp2.n_triangles() * 2, sphere.n_triangles());
        assert_eq!(rp2.euler_characteristic(), 1);
        assert!(
            (rp2.total_area() - 2.0 * PI).abs() < 0.01 * 2.0 * PI,
            "area {}",
            rp2.total_area()
        );
    }

    #[test]
    fn minimal_immersions() {
        let eq_mesh = flat_torus(LatticeBasis::equilateral(), 8).unwrap();
        let imm = torus_minimal_immersion(&eq_mesh, LatticeBasis::equilateral()).unwrap();
        assert_eq!(imm.ambient_dim(), 6, "hexagonal lattice immerses in S⁵");

        let sq_mesh = flat_torus(LatticeBasis::square(), 8).unwrap();
        let imm = torus_minimal_immersion(&sq_mesh, LatticeBasis::square()).unwrap();
        assert_eq!(imm.ambient_dim(), 4, "square lattice immerses in S³");

        let rect = LatticeBasis {
            a: [1.0, 0.0],
            b: [0.0, 1.7],
        };
        let rect_mesh = flat_torus(rect, 8).unwrap();
        assert!(matches!(
            torus_minimal_immersion(&rect_mesh, rect),
            Err(MeshError::WrongLattice)
        ));
    }

    #[test]
    fn refinement_converges_at_second_order() {
        // area error of the icosphere shrinks ~4x per subdivision
        let errs: Vec<f64> = [3, 4, 5]
            .iter()
            .map(|&s| {
                let (m, _) = icosphere(s);
                (m.total_area() - 4.0 * PI).abs()
            })
            .collect();
        let r1 = errs[0] / errs[1];
        let r2 = errs[1] / errs[2];
        assert!(r1 > 3.0 && r1 < 5.5, "ratio {r1}");
        assert!(r2 > 3.0 && r2 < 5.5, "ratio {r2}");
    }
}
