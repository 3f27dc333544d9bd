//! PS-ear-decompositions: a PS-sphere followed by PS-balls, each glued to
//! the union of the earlier ears exactly along its boundary.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{is_subset, poset_product, Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Boundary of the simplex on `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereFactor {
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ear {
    /// Product of simplex boundaries.
    Sphere(Vec<SphereFactor>),
    /// Full simplex times a product of simplex boundaries. No factors means
    /// the rank-0 sphere `{∅}`, i.e. a bare simplex.
    Ball { simplex: Vec<u32>, sphere: Vec<SphereFactor> },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PsCondition {
    /// An ear is not a sphere (first) or a ball (later), or has the wrong rank.
    EarShape,
    /// A face of an ear is not a face of the complex.
    NotSubcomplex,
    /// The intersection with earlier ears contains a face outside the boundary.
    IntersectionExceedsBoundary,
    /// A boundary face of the ear is missing from the earlier ears.
    BoundaryNotGlued,
    /// A facet of the complex lies in no ear.
    NotCovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsViolation {
    pub condition: PsCondition,
    /// 0-based index of the offending ear, if the condition concerns one.
    pub ear: Option<usize>,
    pub witness: Face,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsReport {
    pub passed: bool,
    pub violation: Option<PsViolation>,
    /// Facet count of each ear; on success these sum to the facet count of
    /// the complex.
    pub ear_facets: Vec<usize>,
}

impl Ear {
    pub fn vertices(&self) -> Vec<u32> {
        let (simplex, sphere): (&[u32], &[SphereFactor]) = match self {
            Ear::Sphere(f) => (&[], f),
            Ear::Ball { simplex, sphere } => (simplex, sphere),
        };
        simplex.iter().chain(sphere.iter().flat_map(|f| &f.vertices)).copied().collect()
    }

    /// The ear as a complex; fails on undersized factors or repeated vertices.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        let mut seen = BTreeSet::new();
        if let Some(v) = self.vertices().into_iter().find(|&v| !seen.insert(v)) {
            return Err(Error::OverlappingVertices(v));
        }
        let (mut acc, sphere) = match self {
            Ear::Sphere(f) => (SimplicialComplex::empty_face(), f),
            Ear::Ball { simplex, sphere } => (SimplicialComplex::simplex(simplex)?, sphere),
        };
        for factor in sphere {
            acc = poset_product(&acc, &SimplicialComplex::simplex_boundary(&factor.vertices)?)?;
        }
        Ok(acc)
    }
}

fn face_set(c: &SimplicialComplex) -> HashSet<Face> {
    c.face_table().iter().flatten().cloned().collect()
}

/// Downward closure of the codimension-one faces lying in exactly one facet.
fn boundary_faces(ear: &SimplicialComplex) -> HashSet<Face> {
    let k = ear.rank();
    let mut out = HashSet::new();
    if k == 0 {
        return out;
    }
    for ridge in ear.faces_of_size(k - 1) {
        let holders = ear.facets().iter().filter(|f| is_subset(ridge, f)).count();
        if holders == 1 {
            for mask in 0u64..(1u64 << ridge.len()) {
                out.insert(
                    ridge
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
    }
    out
}

/// Largest face, ties broken lexicographically.
fn pick_witness<'a>(faces: impl Iterator<Item = &'a Face>) -> Option<Face> {
    faces.min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b))).cloned()
}

fn failure(condition: PsCondition, ear: Option<usize>, witness: Face, counts: Vec<usize>) -> PsReport {
    PsReport { passed: false, violation: Some(PsViolation { condition, ear, witness }), ear_facets: counts }
}

/// Checks that `d` is a PS-ear-decomposition of the pure complex `s`.
///
/// Conditions are tested in this order and the first failure is reported:
/// ear shapes and ranks, each ear being a subcomplex of `s`, the gluing rule
/// `ear_i ∩ (ear_0 ∪ … ∪ ear_{i-1}) = ∂ ear_i` for `i >= 1`, and finally that
/// the ears cover every facet of `s`.
pub fn verify_ps_decomposition(s: &SimplicialComplex, d: &EarDecomposition) -> Result<PsReport> {
    if !s.is_pure() {
        return Err(Error::NotPure);
    }
    for (i, ear) in d.ears.iter().enumerate() {
        if let Some(v) = ear.vertices().into_iter().find(|v| s.vertices().binary_search(v).is_err()) {
            return Err(Error::EarVertex { ear: i, vertex: v });
        }
    }
    let k = s.rank();
    if d.ears.is_empty() {
        let witness = s.facets().first().cloned().unwrap_or_default();
        return Ok(failure(PsCondition::NotCovered, None, witness, Vec::new()));
    }

    let mut complexes = Vec::with_capacity(d.ears.len());
    for (i, ear) in d.ears.iter().enumerate() {
        let shape_ok = match ear {
            Ear::Sphere(_) => i == 0,
            Ear::Ball { simplex, .. } => i > 0 && !simplex.is_empty(),
        };
        let built = match ear.complex() {
            Ok(c) if shape_ok && c.rank() == k => c,
            _ => return Ok(failure(PsCondition::EarShape, Some(i), ear.vertices(), Vec::new())),
        };
        complexes.push(built);
    }
    let counts: Vec<usize> = complexes.iter().map(|c| c.facets().len()).collect();

    for (i, c) in complexes.iter().enumerate() {
        if let Some(f) = c.facets().iter().find(|f| !s.contains_face(f)) {
            return Ok(failure(PsCondition::NotSubcomplex, Some(i), f.clone(), counts));
        }
    }

    let mut seen = face_set(&complexes[0]);
    for (i, c) in complexes.iter().enumerate().skip(1) {
        let faces = face_set(c);
        let boundary = boundary_faces(c);
        let excess = faces.iter().filter(|f| seen.contains(*f) && !boundary.contains(*f));
        if let Some(w) = pick_witness(excess) {
            return Ok(failure(PsCondition::IntersectionExceedsBoundary, Some(i), w, counts));
        }
        if let Some(w) = pick_witness(boundary.iter().filter(|f| !seen.contains(*f))) {
            return Ok(failure(PsCondition::BoundaryNotGlued, Some(i), w, counts));
        }
        seen.extend(faces);
    }

    if let Some(f) = s.facets().iter().find(|f| !seen.contains(*f)) {
        return Ok(failure(PsCondition::NotCovered, None, f.clone(), counts));
    }
    Ok(PsReport { passed: true, violation: None, ear_facets: counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u24() -> SimplicialComplex {
        SimplicialComplex::new((1..=4).flat_map(|a| (a + 1..=4).map(move |b| vec![a, b])).collect())
            .unwrap()
    }

    fn sphere(v: &[u32]) -> SphereFactor {
        SphereFactor { vertices: v.to_vec() }
    }

    #[test]
    fn single_sphere_ear() {
        let tri = SimplicialComplex::simplex_boundary(&[1, 2, 3]).unwrap();
        let d = EarDecomposition { ears: vec![Ear::Sphere(vec![sphere(&[1, 2, 3])])] };
        let r = verify_ps_decomposition(&tri, &d).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn u24_three_ears() {
        let d = EarDecomposition {
            ears: vec![
                Ear::Sphere(vec![sphere(&[1, 2, 3])]),
                Ear::Ball { simplex: vec![4], sphere: vec![sphere(&[1, 2])] },
                Ear::Ball { simplex: vec![3, 4], sphere: vec![] },
            ],
        };
        let r = verify_ps_decomposition(&u24(), &d).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.ear_facets.iter().sum::<usize>(), 6);
    }

    #[test]
    fn u24_broken_ears() {
        let d = EarDecomposition {
            ears: vec![
                Ear::Sphere(vec![sphere(&[1, 2, 3])]),
                Ear::Ball { simplex: vec![3], sphere: vec![sphere(&[1, 4])] },
            ],
        };
        let r = verify_ps_decomposition(&u24(), &d).unwrap();
        assert!(!r.passed);
        let v = r.violation.unwrap();
        assert_eq!(v.condition, PsCondition::IntersectionExceedsBoundary);
        assert_eq!(v.ear, Some(1));
        assert_eq!(v.witness, vec![1, 3]);
    }

    #[test]
    fn missing_cover_and_bad_shapes() {
        let d = EarDecomposition { ears: vec![Ear::Sphere(vec![sphere(&[1, 2, 3])])] };
        let r = verify_ps_decomposition(&u24(), &d).unwrap();
        assert_eq!(r.violation.unwrap().condition, PsCondition::NotCovered);

        let d = EarDecomposition { ears: vec![Ear::Ball { simplex: vec![1, 2], sphere: vec![] }] };
        let r = verify_ps_decomposition(&u24(), &d).unwrap();
        assert_eq!(r.violation.unwrap().condition, PsCondition::EarShape);

        let d = EarDecomposition { ears: vec![Ear::Sphere(vec![sphere(&[1])])] };
        let r = verify_ps_decomposition(&u24(), &d).unwrap();
        assert_eq!(r.violation.unwrap().condition, PsCondition::EarShape);
    }

    #[test]
    fn vertex_outside_complex_is_an_error() {
        let d = EarDecomposition { ears: vec![Ear::Sphere(vec![sphere(&[1, 2, 9])])] };
        assert_eq!(
            verify_ps_decomposition(&u24(), &d),
            Err(Error::EarVertex { ear: 0, vertex: 9 })
        );
    }
}
