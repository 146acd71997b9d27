//! Pointwise geometry of the sphere Sⁿ ⊂ ℝ^{n+1}: Möbius automorphisms
//! parametrized by the open unit ball, hyperplane reflections, spherical
//! caps with their reflections and folding maps, and a numerical degree
//! estimator for maps S² → S².
//!
//! The Möbius map used throughout is
//!
//! ```text
//! φ_ξ(x) = ξ + (1 - |ξ|²)/|x + ξ|² (x + ξ),   ξ ∈ 𝔹^{n+1}
//! ```
//!
//! a conformal automorphism of Sⁿ with φ_0 = id, φ_{-ξ} = φ_ξ⁻¹ and
//! pointwise conformal factor ρ(x) = (1 - |ξ|²)/|x + ξ|². As |ξ| → 1 the
//! map degenerates to the constant ξ/|ξ|; the [`BallPoint`] type clamps the
//! parameter strictly inside the ball so every operation stays total.

use thiserror::Error;

/// Interior margin for Möbius parameters: |ξ| ≤ 1 - BALL_BOUNDARY_EPS.
pub const BALL_BOUNDARY_EPS: f64 = 1e-9;

/// Inner products within this tolerance of zero count as cap-boundary hits;
/// boundary points are reported as not contained.
pub const CAP_BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum GeometryError {
    /// The degree estimate was farther than 0.1 from every integer; the
    /// sampling mesh is too coarse for the map.
    #[error("degree estimate {raw} is not within 0.1 of an integer")]
    NonIntegralDegree { raw: f64 },
}

/// A point on the unit sphere Sⁿ ⊂ ℝ^{n+1}. Renormalized on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    /// Build from ambient coordinates, renormalizing to unit length.
    ///
    /// Panics if the input has fewer than 2 coordinates, is non-finite or
    /// has norm too small to normalize meaningfully.
    pub fn new(mut coords: Vec<f64>) -> Self {
        assert!(coords.len() >= 2, "ambient dimension must be at least 2");
        let norm = norm(&coords);
        assert!(
            norm.is_finite() && norm > 1e-300,
            "cannot normalize vector with norm {norm}"
        );
        for c in coords.iter_mut() {
            *c /= norm;
        }
        UnitVector { coords }
    }

    /// The i-th standard basis vector of ℝ^{dim}.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        UnitVector { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Ambient dimension n + 1.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn antipode(&self) -> UnitVector {
        UnitVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Geodesic distance on the sphere, computed from the chord for
    /// stability near coincident points.
    pub fn geodesic_distance(&self, other: &UnitVector) -> f64 {
        let chord = dist(&self.coords, &other.coords);
        2.0 * (0.5 * chord).clamp(-1.0, 1.0).asin()
    }
}

/// A Möbius parameter: a point strictly inside the unit ball 𝔹^{n+1}.
/// Construction clamps radially to |ξ| ≤ 1 - [`BALL_BOUNDARY_EPS`].
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(mut coords: Vec<f64>) -> Self {
        assert!(coords.len() >= 2, "ambient dimension must be at least 2");
        assert!(
            coords.iter().all(|c| c.is_finite()),
            "ball point coordinates must be finite"
        );
        let r = norm(&coords);
        let max_r = 1.0 - BALL_BOUNDARY_EPS;
        if r > max_r {
            let s = max_r / r;
            for c in coords.iter_mut() {
                *c *= s;
            }
        }
        BallPoint { coords }
    }

    pub fn origin(dim: usize) -> Self {
        BallPoint {
            coords: vec![0.0; dim],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn negate(&self) -> BallPoint {
        BallPoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Spherical cap C_{(p,t)} = φ_{-tp}(C_{(p,0)}), where C_{(p,0)} is the open
/// hemisphere centered at p. As t → 1 the cap fills the sphere; as t → -1
/// it shrinks to {p}.
#[derive(Clone, Debug)]
pub struct SphericalCap {
    center: UnitVector,
    t: f64,
}

impl SphericalCap {
    pub fn new(center: UnitVector, t: f64) -> Self {
        assert!(
            t.is_finite() && t > -1.0 && t < 1.0,
            "cap parameter t must lie in (-1, 1), got {t}"
        );
        SphericalCap { center, t }
    }

    pub fn center(&self) -> &UnitVector {
        &self.center
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn dim(&self) -> usize {
        self.center.dim()
    }

    /// Signed boundary coordinate: the inner product ⟨φ_{tp}(x), p⟩ pulled
    /// back through the defining automorphism. Positive inside the cap,
    /// zero on its boundary sphere.
    pub fn boundary_distance(&self, x: &UnitVector) -> f64 {
        let dim = self.dim();
        let mut tp = vec![0.0; dim];
        for (o, c) in tp.iter_mut().zip(self.center.coords()) {
            *o = self.t * c;
        }
        let mut y = vec![0.0; dim];
        moebius_apply_raw(&tp, x.coords(), &mut y);
        dot(&y, self.center.coords())
    }

    /// Membership test. Boundary points (within [`CAP_BOUNDARY_TOL`]) are
    /// reported as not contained.
    pub fn contains(&self, x: &UnitVector) -> bool {
        self.boundary_distance(x) > CAP_BOUNDARY_TOL
    }

    /// Reflection τ_C = φ_{-tp} ∘ R_p ∘ φ_{tp} across the cap boundary.
    /// An involution that swaps the cap with its complement and fixes the
    /// boundary sphere pointwise.
    pub fn reflect(&self, x: &UnitVector) -> UnitVector {
        let dim = self.dim();
        let p = self.center.coords();
        let mut tp = vec![0.0; dim];
        for (o, c) in tp.iter_mut().zip(p) {
            *o = self.t * c;
        }
        let mut y = vec![0.0; dim];
        let mut z = vec![0.0; dim];
        moebius_apply_raw(&tp, x.coords(), &mut y);
        reflect_raw(p, &y, &mut z);
        let neg_tp: Vec<f64> = tp.iter().map(|c| -c).collect();
        moebius_apply_raw(&neg_tp, &z, &mut y);
        UnitVector::new(y)
    }

    /// Folding map F_C: identity on the cap, τ_C outside. The image lies in
    /// the closure of the cap; F_C ∘ F_C = F_C.
    pub fn fold(&self, x: &UnitVector) -> UnitVector {
        if self.contains(x) {
            x.clone()
        } else {
            self.reflect(x)
        }
    }
}

// ---------------------------------------------------------------------------
// Raw slice kernels. These avoid allocation in hot loops (Hersch solves, cap
// grids); the public wrappers return properly renormalized types.
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// φ_ξ(x) = ξ + (1 - |ξ|²)/|x + ξ|² (x + ξ), written into `out`.
#[inline]
pub(crate) fn moebius_apply_raw(xi: &[f64], x: &[f64], out: &mut [f64]) {
    let mut xi_sq = 0.0;
    let mut d_sq = 0.0;
    for i in 0..x.len() {
        xi_sq += xi[i] * xi[i];
        let d = x[i] + xi[i];
        d_sq += d * d;
        out[i] = d;
    }
    let c = (1.0 - xi_sq) / d_sq;
    for i in 0..x.len() {
        out[i] = xi[i] + c * out[i];
    }
}

/// Conformal factor ρ(x) = (1 - |ξ|²)/|x + ξ|² of φ_ξ at x.
#[inline]
pub(crate) fn conformal_factor_raw(xi: &[f64], x: &[f64]) -> f64 {
    let mut xi_sq = 0.0;
    let mut d_sq = 0.0;
    for i in 0..x.len() {
        xi_sq += xi[i] * xi[i];
        let d = x[i] + xi[i];
        d_sq += d * d;
    }
    (1.0 - xi_sq) / d_sq
}

/// R_p(x) = x - 2⟨x,p⟩p, written into `out`.
#[inline]
pub(crate) fn reflect_raw(p: &[f64], x: &[f64], out: &mut [f64]) {
    let ip = dot(p, x);
    for i in 0..x.len() {
        out[i] = x[i] - 2.0 * ip * p[i];
    }
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Apply the Möbius automorphism φ_ξ to a point of Sⁿ.
pub fn moebius_apply(xi: &BallPoint, x: &UnitVector) -> UnitVector {
    assert_eq!(xi.dim(), x.dim(), "dimension mismatch");
    let mut out = vec![0.0; x.dim()];
    moebius_apply_raw(xi.coords(), x.coords(), &mut out);
    UnitVector::new(out)
}

/// Pointwise conformal factor ρ > 0 with φ_ξ* g = ρ² g at x.
pub fn moebius_conformal_factor(xi: &BallPoint, x: &UnitVector) -> f64 {
    assert_eq!(xi.dim(), x.dim(), "dimension mismatch");
    conformal_factor_raw(xi.coords(), x.coords())
}

/// Reflection across the hyperplane through the origin perpendicular to p.
pub fn reflect(p: &UnitVector, x: &UnitVector) -> UnitVector {
    assert_eq!(p.dim(), x.dim(), "dimension mismatch");
    let mut out = vec![0.0; x.dim()];
    reflect_raw(p.coords(), x.coords(), &mut out);
    UnitVector::new(out)
}

/// Residuals of the fold/reflection identities at a sample point:
///
/// - `fold_factorization`: |F_{(p,0)}(x) - R_p(F_{(-p,0)}(x))|
/// - `moebius_commutation`: |φ_ξ(R_p(x)) - R_p(φ_{R_p ξ}(x))|
///
/// Both vanish identically; the contract is ≤ 1e-12 in floating point.
#[derive(Clone, Copy, Debug)]
pub struct FoldIdentityResiduals {
    pub fold_factorization: f64,
    pub moebius_commutation: f64,
}

impl FoldIdentityResiduals {
    pub fn max(&self) -> f64 {
        self.fold_factorization.max(self.moebius_commutation)
    }
}

pub fn fold_identity_check(
    p: &UnitVector,
    x: &UnitVector,
    xi: &BallPoint,
) -> FoldIdentityResiduals {
    let hemi = SphericalCap::new(p.clone(), 0.0);
    let hemi_neg = SphericalCap::new(p.antipode(), 0.0);
    let lhs2 = hemi.fold(x);
    let rhs2 = reflect(p, &hemi_neg.fold(x));
    let fold_factorization = dist(lhs2.coords(), rhs2.coords());

    let lhs3 = moebius_apply(xi, &reflect(p, x));
    let rxi = {
        let mut out = vec![0.0; xi.dim()];
        reflect_raw(p.coords(), xi.coords(), &mut out);
        BallPoint::new(out)
    };
    let rhs3 = reflect(p, &moebius_apply(&rxi, x));
    let moebius_commutation = dist(lhs3.coords(), rhs3.coords());

    FoldIdentityResiduals {
        fold_factorization,
        moebius_commutation,
    }
}

/// Degree estimate for a map S² → S² sampled at the vertices of a closed
/// oriented triangulation.
#[derive(Clone, Copy, Debug)]
pub struct DegreeEstimate {
    pub degree: i64,
    /// Pre-rounding value of (1/4π) Σ signed spherical image areas.
    pub raw: f64,
}

/// Signed spherical area of the geodesic triangle (a, b, c) on S², by
/// L'Huilier's formula with the orientation sign taken from the scalar
/// triple product.
pub fn signed_spherical_triangle_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let ga = 2.0 * (0.5 * dist(b, c)).clamp(-1.0, 1.0).asin();
    let gb = 2.0 * (0.5 * dist(a, c)).clamp(-1.0, 1.0).asin();
    let gc = 2.0 * (0.5 * dist(a, b)).clamp(-1.0, 1.0).asin();
    let s = 0.5 * (ga + gb + gc);
    let prod = (0.5 * s).tan()
        * (0.5 * (s - ga)).tan()
        * (0.5 * (s - gb)).tan()
        * (0.5 * (s - gc)).tan();
    let excess = 4.0 * prod.max(0.0).sqrt().atan();
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    if det < 0.0 {
        -excess
    } else {
        excess
    }
}

/// Estimate the Brouwer degree of a map S² → S² from per-vertex images on a
/// closed oriented triangulation: (1/4π) times the sum of signed spherical
/// areas of the image triangles, rounded to the nearest integer.
///
/// Errors with [`GeometryError::NonIntegralDegree`] when the raw estimate is
/// farther than 0.1 from every integer.
pub fn degree_estimate(
    images: &[UnitVector],
    triangles: &[[usize; 3]],
) -> Result<DegreeEstimate, GeometryError> {
    assert!(
        images.iter().all(|v| v.dim() == 3),
        "degree estimation requires images on S²"
    );
    let areas = crate::par::map_slice(triangles, |t| {
        signed_spherical_triangle_area(
            images[t[0]].coords(),
            images[t[1]].coords(),
            images[t[2]].coords(),
        )
    });
    let raw = crate::par::sum(&areas) / (4.0 * std::f64::consts::PI);
    let degree = raw.round();
    if (raw - degree).abs() > 0.1 {
        return Err(GeometryError::NonIntegralDegree { raw });
    }
    Ok(DegreeEstimate {
        degree: degree as i64,
        raw,
    })
}
