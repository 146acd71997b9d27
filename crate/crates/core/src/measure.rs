//! Weighted atomic measures on Sⁿ.
//!
//! A [`DiscreteMeasure`] is a finite list of atoms (unit vectors) with
//! strictly positive weights. It is the discrete stand-in for the
//! pushforward measure of a surface under a sampled immersion: atoms are
//! vertex images, weights are lumped vertex areas. Totals and centers of
//! mass are summed in fixed atom order so repeated runs are bit-identical.

use thiserror::Error;

use crate::mesh::{ImmersionSamples, SurfaceMesh};
use crate::sphere::UnitVector;

/// Atoms closer than this (Euclidean) are aggregated into a single point
/// for the half-mass admissibility test. Below mesh/solver noise, above
/// double-precision rounding.
pub const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("measure has no atoms or vanishing total mass")]
    EmptyMeasure,
    #[error("atoms and weights have different lengths ({atoms} vs {weights})")]
    LengthMismatch { atoms: usize, weights: usize },
    #[error("weight at index {index} is not strictly positive ({value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("atom dimensions are inconsistent")]
    DimensionMismatch,
}

#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    atoms: Vec<UnitVector>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<UnitVector>, weights: Vec<f64>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::EmptyMeasure);
        }
        if atoms.len() != weights.len() {
            return Err(MeasureError::LengthMismatch {
                atoms: atoms.len(),
                weights: weights.len(),
            });
        }
        let dim = atoms[0].dim();
        if atoms.iter().any(|a| a.dim() != dim) {
            return Err(MeasureError::DimensionMismatch);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(MeasureError::NonPositiveWeight { index, value });
            }
        }
        let m = DiscreteMeasure { atoms, weights };
        if !(m.total_mass() > 0.0) {
            return Err(MeasureError::EmptyMeasure);
        }
        Ok(m)
    }

    /// Lumped measure of a mesh under an immersion: one atom per vertex at
    /// its image, weighted by a third of the adjacent triangle areas. This
    /// matches the lumped FEM mass matrix.
    pub fn from_mesh_immersion(
        mesh: &SurfaceMesh,
        immersion: &ImmersionSamples,
    ) -> Result<Self, MeasureError> {
        assert_eq!(immersion.points().len(), mesh.n_vertices());
        DiscreteMeasure::new(immersion.points().to_vec(), mesh.vertex_areas())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Ambient dimension n + 1 of the sphere carrying the atoms.
    pub fn dim(&self) -> usize {
        self.atoms[0].dim()
    }

    pub fn atoms(&self) -> &[UnitVector] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ wᵢ, summed in atom order.
    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// (1/μ(Sⁿ)) Σ wᵢ xᵢ — a point of the closed unit ball.
    pub fn center_of_mass(&self) -> Vec<f64> {
        let mut com = vec![0.0; self.dim()];
        for (a, &w) in self.atoms.iter().zip(&self.weights) {
            for (c, x) in com.iter_mut().zip(a.coords()) {
                *c += w * x;
            }
        }
        let mass = self.total_mass();
        for c in com.iter_mut() {
            *c /= mass;
        }
        com
    }

    /// Pushforward under a pointwise map: atoms mapped, weights unchanged.
    pub fn pushforward<F>(&self, f: F) -> DiscreteMeasure
    where
        F: Fn(&UnitVector) -> UnitVector + Sync + Send,
    {
        let atoms = crate::par::map_slice(&self.atoms, f);
        DiscreteMeasure {
            atoms,
            weights: self.weights.clone(),
        }
    }

    /// Largest aggregated weight carried by a single point, grouping atoms
    /// within [`COINCIDENCE_TOL`] of each other.
    pub fn max_point_mass(&self) -> f64 {
        let mut order: Vec<usize> = (0..self.atoms.len()).collect();
        order.sort_by(|&i, &j| {
            self.atoms[i]
                .coords()
                .partial_cmp(self.atoms[j].coords())
                .unwrap()
        });
        let mut best = 0.0f64;
        let mut acc = 0.0f64;
        let mut group_start: Option<usize> = None;
        for &i in &order {
            match group_start {
                Some(prev)
                    if crate::sphere::dist(
                        self.atoms[prev].coords(),
                        self.atoms[i].coords(),
                    ) <= COINCIDENCE_TOL =>
                {
                    acc += self.weights[i];
                }
                _ => {
                    best = best.max(acc);
                    acc = self.weights[i];
                    group_start = Some(i);
                }
            }
        }
        best.max(acc)
    }

    /// Hersch half-mass condition: every point carries strictly less than
    /// half the total mass.
    pub fn hersch_admissible(&self) -> bool {
        self.max_point_mass() < 0.5 * self.total_mass()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, i: usize) -> UnitVector {
        UnitVector::basis(dim, i)
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            DiscreteMeasure::new(vec![], vec![]),
            Err(MeasureError::EmptyMeasure)
        ));
        assert!(matches!(
            DiscreteMeasure::new(vec![e(3, 0)], vec![1.0, 2.0]),
            Err(MeasureError::LengthMismatch { .. })
        ));
        assert!(matches!(
            DiscreteMeasure::new(vec![e(3, 0)], vec![-1.0]),
            Err(MeasureError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn total_mass_and_center() {
        let m = DiscreteMeasure::new(
            vec![e(3, 0), e(3, 1), e(3, 2), e(3, 0).antipode()],
            vec![1.0; 4],
        )
        .unwrap();
        assert_eq!(m.total_mass(), 4.0);

        let two = DiscreteMeasure::new(vec![e(3, 0), e(3, 0).antipode()], vec![1.0, 1.0]).unwrap();
        assert!(crate::sphere::norm(&two.center_of_mass()) < 1e-15);

        let one = DiscreteMeasure::new(vec![e(3, 0)], vec![2.5]).unwrap();
        assert_eq!(one.center_of_mass(), vec![1.0, 0.0, 0.0]);

        let three =
            DiscreteMeasure::new(vec![e(3, 0), e(3, 1), e(3, 2)], vec![1.0, 1.0, 1.0]).unwrap();
        let com = three.center_of_mass();
        for c in com {
            assert!((c - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn pushforward_preserves_mass_and_transforms_center() {
        let m = DiscreteMeasure::new(
            vec![e(3, 0), e(3, 1), e(3, 2)],
            vec![0.3, 1.1, 0.25],
        )
        .unwrap();
        let id = m.pushforward(|x| x.clone());
        assert_eq!(id.total_mass().to_bits(), m.total_mass().to_bits());

        let p = UnitVector::new(vec![0.0, 0.0, 1.0]);
        let refl = m.pushforward(|x| crate::sphere::reflect(&p, x));
        let com = m.center_of_mass();
        let com_r = refl.center_of_mass();
        let mut expected = vec![0.0; 3];
        crate::sphere::reflect_raw(p.coords(), &com, &mut expected);
        assert!(crate::sphere::dist(&com_r, &expected) < 1e-15);
    }

    #[test]
    fn admissibility() {
        let two = DiscreteMeasure::new(vec![e(3, 0), e(3, 1)], vec![1.0, 1.0]).unwrap();
        assert!(!two.hersch_admissible(), "half mass at a point is not strict");

        let three =
            DiscreteMeasure::new(vec![e(3, 0), e(3, 1), e(3, 2)], vec![1.0, 1.0, 1.0]).unwrap();
        assert!(three.hersch_admissible());

        let one = DiscreteMeasure::new(vec![e(3, 0)], vec![1.0]).unwrap();
        assert!(!one.hersch_admissible());

        // coincident atoms aggregate
        let dup = DiscreteMeasure::new(
            vec![e(3, 0), e(3, 0), e(3, 1), e(3, 2)],
            vec![0.3, 0.3, 0.3, 0.3],
        )
        .unwrap();
        assert_eq!(dup.max_point_mass(), 0.6);
        assert!(!dup.hersch_admissible());
    }

    #[test]
    fn admissibility_invariant_under_permutation() {
        let atoms = vec![e(4, 0), e(4, 1), e(4, 2), e(4, 3)];
        let weights = vec![0.1, 0.2, 0.3, 0.4];
        let m = DiscreteMeasure::new(atoms.clone(), weights.clone()).unwrap();
        let mut rev_atoms = atoms;
        rev_atoms.reverse();
        let mut rev_weights = weights;
        rev_weights.reverse();
        let r = DiscreteMeasure::new(rev_atoms, rev_weights).unwrap();
        assert_eq!(m.hersch_admissible(), r.hersch_admissible());
        assert_eq!(m.max_point_mass(), r.max_point_mass());
    }
}
