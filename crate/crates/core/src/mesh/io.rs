//! Mesh interchange: OFF for positions and faces, plus a JSON sidecar for
//! the intrinsic data (edge lengths, conformal factor, topology tag).

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{MeshError, SurfaceMesh, Topology};

#[derive(Serialize, Deserialize)]
pub struct MeshSidecar {
    pub schema_version: u32,
    pub topology: Topology,
    pub edge_lengths: Vec<[f64; 3]>,
    pub conformal_log_factor: Vec<f64>,
}

pub fn export_off(mesh: &SurfaceMesh, w: &mut impl Write) -> std::io::Result<()> {
    writeln!(w, "OFF")?;
    writeln!(w, "{} {} 0", mesh.n_vertices(), mesh.n_triangles())?;
    for v in mesh.vertices() {
        writeln!(w, "{} {} {}", v[0], v[1], v[2])?;
    }
    for t in mesh.triangles() {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    Ok(())
}

pub fn export_sidecar(mesh: &SurfaceMesh) -> MeshSidecar {
    MeshSidecar {
        schema_version: 1,
        topology: mesh.topology(),
        edge_lengths: mesh.edge_lengths().to_vec(),
        conformal_log_factor: mesh.conformal_log_factor().to_vec(),
    }
}

pub fn import_off_with_sidecar(off: &str, sidecar: &MeshSidecar) -> Result<SurfaceMesh, MeshError> {
    let mut lines = off
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| malformed("empty file"))?;
    if header != "OFF" {
        return Err(malformed("missing OFF header"));
    }
    let counts = lines.next().ok_or_else(|| malformed("missing counts"))?;
    let mut it = counts.split_whitespace();
    let nv: usize = parse(it.next())?;
    let nf: usize = parse(it.next())?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let line = lines.next().ok_or_else(|| malformed("truncated vertices"))?;
        let mut it = line.split_whitespace();
        vertices.push([parse(it.next())?, parse(it.next())?, parse(it.next())?]);
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let line = lines.next().ok_or_else(|| malformed("truncated faces"))?;
        let mut it = line.split_whitespace();
        let arity: usize = parse(it.next())?;
        if arity != 3 {
            return Err(malformed("only triangle faces are supported"));
        }
        let tri = [parse(it.next())?, parse(it.next())?, parse(it.next())?];
        if tri.iter().any(|&v: &usize| v >= nv) {
            return Err(malformed("face index out of range"));
        }
        triangles.push(tri);
    }

    if sidecar.edge_lengths.len() != triangles.len()
        || sidecar.conformal_log_factor.len() != vertices.len()
    {
        return Err(malformed("sidecar does not match OFF geometry"));
    }
    let mesh = SurfaceMesh::from_parts(
        vertices,
        triangles,
        sidecar.edge_lengths.clone(),
        sidecar.conformal_log_factor.clone(),
        sidecar.topology,
    );
    mesh.validate()?;
    Ok(mesh)
}

fn malformed(msg: &str) -> MeshError {
    MeshError::Malformed(msg.to_string())
}

fn parse<T: std::str::FromStr>(tok: Option<&str>) -> Result<T, MeshError> {
    tok.ok_or_else(|| malformed("missing token"))?
        .parse()
        .map_err(|_| malformed("bad numeric token"))
}
