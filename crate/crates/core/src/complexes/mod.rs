//! Simplicial complexes stored by their facets, with face vectors, poset
//! products and PS-spheres.

mod ears;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

pub use ears::{verify_ps_decomposition, Ear, EarDecomposition, SphereFactor};

/// A face: strictly increasing vertex labels.
pub type Face = Vec<u32>;

/// Finite simplicial complex given by its facets (maximal faces). Faces are
/// every subset of a facet; the per-size face table is built lazily once.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: Vec<u32>,
    facets: Vec<Face>,
    pure: bool,
    faces: OnceLock<Vec<Vec<Face>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex").field("facets", &self.facets).finish()
    }
}

/// f-, h- and g-vectors of a rank-k complex.
///
/// `h` is defined by `sum_i f_{i-1} t^i (1-t)^{k-i} = sum_i h_i t^i`, so that
/// `h_i` is the dimension of degree `i` of an Artinian reduction of the
/// Stanley-Reisner ring. `h_reversed_formula` is the sequence
/// `sum_{j>=i} (-1)^{j-i} C(j,i) f_{k-j-1}`, which is the same vector read
/// backwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceVectors {
    pub rank: usize,
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub g: Vec<i64>,
    pub h_reversed_formula: Vec<i64>,
}

pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

impl SimplicialComplex {
    /// Normalizes a facet list: sorts each facet, drops duplicates and any
    /// facet contained in another.
    pub fn new(facets: Vec<Vec<u32>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut cleaned = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex(f));
            }
            if f.first() == Some(&0) {
                return Err(Error::ZeroLabel);
            }
            cleaned.insert(f);
        }
        let mut by_size: Vec<Face> = cleaned.into_iter().collect();
        by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Face> = Vec::new();
        for f in by_size {
            if !kept.iter().any(|g| g.len() > f.len() && is_subset(&f, g)) {
                kept.push(f);
            }
        }
        kept.sort();
        Ok(Self::from_normalized(kept))
    }

    fn from_normalized(facets: Vec<Face>) -> Self {
        let vertices: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        let size = facets.first().map_or(0, Vec::len);
        let pure = facets.iter().all(|f| f.len() == size);
        Self { vertices: vertices.into_iter().collect(), facets, pure, faces: OnceLock::new() }
    }

    /// The full simplex on `vertices` (a single facet).
    pub fn simplex(vertices: &[u32]) -> Result<Self> {
        Self::new(vec![vertices.to_vec()])
    }

    /// Boundary of the simplex on `vertices`; needs at least two vertices.
    pub fn simplex_boundary(vertices: &[u32]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::SphereFactor(format!(
                "boundary of a simplex needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        let facets = (0..vertices.len())
            .map(|skip| {
                vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
            })
            .collect();
        Self::new(facets)
    }

    /// The complex `{∅}`: rank zero, unit for the poset product.
    pub fn empty_face() -> Self {
        Self::from_normalized(vec![Vec::new()])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Size of the largest facet.
    pub fn rank(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces grouped by size, sizes `0..=rank`, each group sorted.
    pub fn face_table(&self) -> &[Vec<Face>] {
        self.faces.get_or_init(|| {
            let mut table: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); self.rank() + 1];
            for facet in &self.facets {
                for mask in 0u64..(1u64 << facet.len()) {
                    let face: Face = facet
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    table[face.len()].insert(face);
                }
            }
            table.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    pub fn faces_of_size(&self, size: usize) -> &[Face] {
        self.face_table().get(size).map_or(&[], Vec::as_slice)
    }

    /// Minimal non-faces: the generators of the Stanley-Reisner ideal.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for faces in self.face_table() {
            for face in faces {
                let above = face.last().copied().unwrap_or(0);
                for &v in self.vertices.iter().filter(|&&v| v > above) {
                    let mut cand = face.clone();
                    cand.push(v);
                    if self.contains_face(&cand) {
                        continue;
                    }
                    let minimal = (0..cand.len()).all(|skip| {
                        let sub: Face = cand
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &w)| w)
                            .collect();
                        self.contains_face(&sub)
                    });
                    if minimal {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Subcomplex induced on `subset`: the maximal faces among `F ∩ subset`.
    pub fn induced(&self, subset: &[u32]) -> SimplicialComplex {
        let restricted: Vec<Face> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| subset.binary_search(v).is_ok()).collect())
            .collect();
        Self::new(restricted).expect("facet list is nonempty and already valid")
    }

    /// Copy with every label increased by `offset`.
    pub fn shift_labels(&self, offset: u32) -> SimplicialComplex {
        Self::from_normalized(
            self.facets.iter().map(|f| f.iter().map(|v| v + offset).collect()).collect(),
        )
    }

    pub fn face_vectors(&self) -> FaceVectors {
        face_vectors(self)
    }
}

/// Normalizing constructor.
pub fn build_complex(facets: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
    SimplicialComplex::new(facets)
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn face_vectors(s: &SimplicialComplex) -> FaceVectors {
    let k = s.rank();
    // fm[i] = f_{i-1}, i.e. number of faces of size i
    let fm: Vec<i64> = (0..=k).map(|i| s.faces_of_size(i).len() as i64).collect();

    let h: Vec<i64> = (0..=k)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(k - i, j - i) * fm[i]
                })
                .sum()
        })
        .collect();

    let h_reversed_formula: Vec<i64> = (0..=k)
        .map(|i| {
            (i..=k)
                .map(|j| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    // f_{k-j-1} is the count of faces of size k-j
                    sign * binomial(j, i) * fm[k - j]
                })
                .sum()
        })
        .collect();

    let g = h.windows(2).map(|w| w[1] - w[0]).collect();
    FaceVectors { rank: k, f: fm[1..].to_vec(), h, g, h_reversed_formula }
}

/// Product of two polynomials given by coefficient lists.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Poset-theoretic product: faces are unions `F ∪ G`. The vertex sets must
/// be disjoint.
pub fn poset_product(s: &SimplicialComplex, t: &SimplicialComplex) -> Result<SimplicialComplex> {
    if let Some(&v) = s.vertices.iter().find(|v| t.vertices.binary_search(v).is_ok()) {
        return Err(Error::OverlappingVertices(v));
    }
    let mut facets = Vec::with_capacity(s.facets.len() * t.facets.len());
    for f in &s.facets {
        for g in &t.facets {
            let mut u: Face = f.iter().chain(g).copied().collect();
            u.sort_unstable();
            facets.push(u);
        }
    }
    facets.sort();
    Ok(SimplicialComplex::from_normalized(facets))
}

/// Relabels `t` above the largest vertex of `s` so the two can be multiplied.
pub fn disjoint_relabel(s: &SimplicialComplex, t: &SimplicialComplex) -> SimplicialComplex {
    let top = s.vertices.last().copied().unwrap_or(0);
    let low = t.vertices.first().copied().unwrap_or(1);
    if low > top {
        t.clone()
    } else {
        t.shift_labels(top - low + 1)
    }
}

/// Product of boundaries of simplices with the given vertex counts, taking
/// labels from `vertex_pool` in order. An empty size list gives `{∅}`.
pub fn ps_sphere(factor_sizes: &[usize], vertex_pool: &[u32]) -> Result<SimplicialComplex> {
    let needed: usize = factor_sizes.iter().sum();
    if needed > vertex_pool.len() {
        return Err(Error::SphereFactor(format!(
            "need {} vertices, pool has {}",
            needed,
            vertex_pool.len()
        )));
    }
    let mut out = SimplicialComplex::empty_face();
    let mut start = 0;
    for &size in factor_sizes {
        let factor = SimplicialComplex::simplex_boundary(&vertex_pool[start..start + size])?;
        out = poset_product(&out, &factor)?;
        start += size;
    }
    Ok(out)
}

/// h-polynomial `prod (1 + t + ... + t^{a-1})` of a PS-sphere.
pub fn ps_sphere_h(factor_sizes: &[usize]) -> Vec<i64> {
    factor_sizes.iter().fold(vec![1], |acc, &a| poly_mul(&acc, &vec![1; a]))
}
