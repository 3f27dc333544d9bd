//! Small named matroids, complexes and monomial sets used by the test
//! suites and the acceptance harness.

use rand::Rng;

use crate::complexes::{ps_sphere, SimplicialComplex};
use crate::linalg::IntegerMatrix;
use crate::matroid::Matroid;
use crate::oseq::{monomials_of_degree, MonomialSet};

/// `k x n` Vandermonde matrix with nodes `1..=n`; every `k` columns are
/// independent, so its matroid is `U_{k,n}`.
pub fn uniform_matrix(k: usize, n: usize) -> IntegerMatrix {
    let rows = (0..k).map(|i| (1..=n as i64).map(|x| x.pow(i as u32)).collect()).collect::<Vec<_>>();
    IntegerMatrix::from_i64_rows(&rows).expect("rows have equal length")
}

/// Signed vertex-edge incidence matrix of a graph on `1..=vertices`.
pub fn graphic_matrix(vertices: usize, edges: &[(usize, usize)]) -> IntegerMatrix {
    let mut rows = vec![vec![0i64; edges.len()]; vertices];
    for (j, &(a, b)) in edges.iter().enumerate() {
        rows[a - 1][j] = 1;
        rows[b - 1][j] = -1;
    }
    IntegerMatrix::from_i64_rows(&rows).expect("rows have equal length")
}

pub fn k4_matrix() -> IntegerMatrix {
    graphic_matrix(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
}

pub fn cycle_matrix(n: usize) -> IntegerMatrix {
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
    graphic_matrix(n, &edges)
}

#[derive(Debug, Clone)]
pub struct NamedMatroid {
    pub name: String,
    pub matrix: IntegerMatrix,
    pub matroid: Matroid,
}

fn named(name: String, matrix: IntegerMatrix) -> NamedMatroid {
    let matroid = Matroid::from_matrix(&matrix.to_exact()).expect("corpus matrices are nonempty");
    NamedMatroid { name, matrix, matroid }
}

/// `U_{k,n}` for `1 <= k <= n <= 7`, then the graphic matroids of `K_4` and
/// the 4-cycle.
pub fn matroid_corpus() -> Vec<NamedMatroid> {
    let mut out = Vec::new();
    for n in 1..=7 {
        for k in 1..=n {
            out.push(named(format!("U{k},{n}"), uniform_matrix(k, n)));
        }
    }
    out.push(named("K4".into(), k4_matrix()));
    out.push(named("C4".into(), cycle_matrix(4)));
    out
}

pub const PS_SHAPES: &[&[usize]] = &[&[2], &[3], &[2, 2], &[3, 2], &[4], &[2, 2, 2], &[3, 3]];

/// Matroid independence complexes, PS-spheres and full simplices.
pub fn complex_corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> =
        matroid_corpus().into_iter().map(|m| (m.name, m.matroid.independence_complex())).collect();
    let pool: Vec<u32> = (1..=12).collect();
    for shape in PS_SHAPES {
        let s = ps_sphere(shape, &pool).expect("pool is large enough");
        out.push((format!("PS{shape:?}"), s));
    }
    for n in 1..=4u32 {
        let verts: Vec<u32> = (1..=n).collect();
        out.push((format!("simplex{n}"), SimplicialComplex::simplex(&verts).expect("nonempty")));
    }
    out
}

/// Pure complexes small enough that products of two of them stay cheap.
pub fn product_factors() -> Vec<(String, SimplicialComplex)> {
    let keep = ["U1,2", "U2,3", "U2,4", "U3,4", "U1,3", "U2,2", "K4", "PS[2]", "PS[3]", "PS[2, 2]", "simplex1", "simplex2"];
    complex_corpus().into_iter().filter(|(name, _)| keep.contains(&name.as_str())).collect()
}

/// A random nonempty set of degree-`k` monomials with `vars` and `k` drawn
/// from `1..=max_vars` and `1..=max_degree`.
pub fn random_monomial_set<R: Rng>(rng: &mut R, max_vars: usize, max_degree: usize, max_gens: usize) -> MonomialSet {
    let vars = rng.random_range(1..=max_vars);
    let k = rng.random_range(1..=max_degree);
    let all = monomials_of_degree(vars, k);
    let count = rng.random_range(1..=max_gens.min(all.len()));
    let gens = rand::seq::index::sample(rng, all.len(), count).into_iter().map(|i| all[i].clone()).collect();
    MonomialSet::new(vars, k, gens).expect("generators share a degree")
}
