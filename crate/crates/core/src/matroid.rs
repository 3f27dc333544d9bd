//! Matroids from rational column configurations or explicit basis lists,
//! plus the matroid-complex test and Gale duals of integer matrices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, rank, smith_invariants, ExactMatrix, IntegerMatrix};
use crate::report::CheckReport;

#[derive(Clone, PartialEq, Eq)]
enum Backend {
    /// Element `i` is column `i`.
    Linear(ExactMatrix),
    /// Bases as bitmasks over element positions.
    Bases(Vec<u64>),
}

/// A matroid on labelled elements. Subsets are passed as label lists; the
/// rank function is memoized.
pub struct Matroid {
    ground: Vec<u32>,
    backend: Backend,
    rank: usize,
    cache: Mutex<HashMap<u64, usize>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Self {
            ground: self.ground.clone(),
            backend: self.backend.clone(),
            rank: self.rank,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid").field("ground", &self.ground).field("rank", &self.rank).finish()
    }
}

/// Same ground set and same bases, whatever the backend.
impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases() == other.bases()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoopReport {
    pub coloops: Vec<u32>,
    pub coloop_free: bool,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

impl Matroid {
    fn with_backend(ground: Vec<u32>, backend: Backend, rank: usize) -> Self {
        Self { ground, backend, rank, cache: Mutex::new(HashMap::new()) }
    }

    /// Matroid of the columns of `config`; elements are labelled `1..=n`.
    pub fn from_matrix(config: &ExactMatrix) -> Result<Self> {
        let n = config.cols();
        if n == 0 {
            return Err(Error::NoElements);
        }
        if n > 64 {
            return Err(Error::GroundTooLarge(n));
        }
        let r = rank(config);
        Ok(Self::with_backend((1..=n as u32).collect(), Backend::Linear(config.clone()), r))
    }

    /// Matroid on `1..=n` with the given bases, after checking the basis
    /// exchange axiom. The first violation in lexicographic order of
    /// `(B1, B2, e)` is reported.
    pub fn from_bases(n: usize, bases: &[Vec<u32>]) -> Result<Self> {
        if n > 64 {
            return Err(Error::GroundTooLarge(n));
        }
        if n == 0 {
            return Err(Error::NoElements);
        }
        let Some(first) = bases.first() else {
            return Err(Error::InvalidBases("no bases given".into()));
        };
        let k = first.len();
        let mut masks = BTreeSet::new();
        for b in bases {
            if b.len() != k {
                return Err(Error::InvalidBases(format!("bases of sizes {} and {}", k, b.len())));
            }
            let mut mask = 0u64;
            for &e in b {
                if e == 0 || e as usize > n {
                    return Err(Error::InvalidBases(format!("element {e} outside 1..={n}")));
                }
                if mask >> (e - 1) & 1 == 1 {
                    return Err(Error::InvalidBases(format!("basis {b:?} repeats {e}")));
                }
                mask |= 1 << (e - 1);
            }
            masks.insert(mask);
        }
        let ground: Vec<u32> = (1..=n as u32).collect();
        let sorted: Vec<u64> = {
            let mut v: Vec<u64> = masks.iter().copied().collect();
            v.sort_by_key(|&m| labels_of(&ground, m));
            v
        };
        for &b1 in &sorted {
            for &b2 in &sorted {
                for e in 0..n {
                    if b1 >> e & 1 == 0 || b2 >> e & 1 == 1 {
                        continue;
                    }
                    let ok = (0..n)
                        .filter(|&f| b2 >> f & 1 == 1 && b1 >> f & 1 == 0)
                        .any(|f| masks.contains(&(b1 & !(1 << e) | 1 << f)));
                    if !ok {
                        return Err(Error::ExchangeAxiom {
                            b1: labels_of(&ground, b1),
                            b2: labels_of(&ground, b2),
                            e: ground[e],
                        });
                    }
                }
            }
        }
        Ok(Self::with_backend(ground, Backend::Bases(sorted), k))
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Whether this matroid carries a linear representation over Q.
    pub fn is_linear(&self) -> bool {
        matches!(self.backend, Backend::Linear(_))
    }

    fn mask_of_labels(&self, labels: &[u32]) -> Result<u64> {
        let mut mask = 0;
        for l in labels {
            match self.ground.binary_search(l) {
                Ok(i) => mask |= 1 << i,
                Err(_) => return Err(Error::NotASubset(labels.to_vec())),
            }
        }
        Ok(mask)
    }

    fn rank_of_mask(&self, mask: u64) -> usize {
        if let Some(&r) = self.cache.lock().expect("rank cache poisoned").get(&mask) {
            return r;
        }
        let r = match &self.backend {
            Backend::Linear(m) => {
                let cols: Vec<usize> = (0..self.ground.len()).filter(|&i| mask >> i & 1 == 1).collect();
                rank(&m.select_columns(&cols))
            }
            Backend::Bases(bases) => {
                bases.iter().map(|b| (b & mask).count_ones() as usize).max().unwrap_or(0)
            }
        };
        self.cache.lock().expect("rank cache poisoned").insert(mask, r);
        r
    }

    /// Rank of a subset of the ground set.
    pub fn rank_of(&self, subset: &[u32]) -> Result<usize> {
        Ok(self.rank_of_mask(self.mask_of_labels(subset)?))
    }

    pub fn is_independent(&self, subset: &[u32]) -> Result<bool> {
        let mask = self.mask_of_labels(subset)?;
        Ok(self.rank_of_mask(mask) == mask.count_ones() as usize)
    }

    fn basis_masks(&self) -> Vec<u64> {
        match &self.backend {
            Backend::Bases(b) => b.clone(),
            Backend::Linear(_) => combinations(self.ground.len(), self.rank)
                .into_iter()
                .map(|c| mask_of(&c))
                .filter(|&m| self.rank_of_mask(m) == self.rank)
                .collect(),
        }
    }

    /// All bases, each sorted, in lexicographic order.
    pub fn bases(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> =
            self.basis_masks().into_iter().map(|m| labels_of(&self.ground, m)).collect();
        out.sort();
        out
    }

    pub fn coloops(&self) -> ColoopReport {
        let all = mask_of(&(0..self.ground.len()).collect::<Vec<_>>());
        let coloops: Vec<u32> = (0..self.ground.len())
            .filter(|&i| self.rank_of_mask(all & !(1 << i)) < self.rank)
            .map(|i| self.ground[i])
            .collect();
        ColoopReport { coloop_free: coloops.is_empty(), coloops }
    }

    /// Restriction to `w`, keeping the original labels.
    pub fn restriction(&self, w: &[u32]) -> Result<Matroid> {
        let mut w = w.to_vec();
        w.sort_unstable();
        w.dedup();
        let mask = self.mask_of_labels(&w)?;
        let positions: Vec<usize> = (0..self.ground.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let r = self.rank_of_mask(mask);
        let backend = match &self.backend {
            Backend::Linear(m) => Backend::Linear(m.select_columns(&positions)),
            Backend::Bases(bases) => {
                let remap = |b: u64| {
                    positions.iter().enumerate().filter(|&(_, &p)| b >> p & 1 == 1).fold(0u64, |m, (j, _)| m | 1 << j)
                };
                let restricted: BTreeSet<u64> = bases
                    .iter()
                    .map(|b| b & mask)
                    .filter(|b| b.count_ones() as usize == r)
                    .map(remap)
                    .collect();
                Backend::Bases(restricted.into_iter().collect())
            }
        };
        Ok(Self::with_backend(w, backend, r))
    }

    /// Complex of independent sets; its facets are the bases.
    pub fn independence_complex(&self) -> SimplicialComplex {
        SimplicialComplex::new(self.bases()).expect("a matroid has at least one basis")
    }
}

fn labels_of(ground: &[u32], mask: u64) -> Vec<u32> {
    (0..ground.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ground[i]).collect()
}

pub fn matroid_from_matrix(config: &ExactMatrix) -> Result<Matroid> {
    Matroid::from_matrix(config)
}

pub fn matroid_from_bases(n: usize, bases: &[Vec<u32>]) -> Result<Matroid> {
    Matroid::from_bases(n, bases)
}

/// Exhaustive test that every induced subcomplex is pure. Subsets are
/// scanned in lexicographic order of their sorted vertex lists and the first
/// impure one is the witness.
pub fn verify_matroid_property(s: &SimplicialComplex) -> Result<CheckReport> {
    let verts = s.vertices();
    let n = verts.len();
    if n > 20 {
        return Err(Error::ExhaustiveInfeasible(n));
    }
    let facets: Vec<u32> = s
        .facets()
        .iter()
        .map(|f| f.iter().fold(0u32, |m, v| m | 1 << verts.binary_search(v).expect("facet vertex")))
        .collect();

    fn induced_is_pure(facets: &[u32], w: u32) -> bool {
        let mut inter: Vec<u32> = facets.iter().map(|f| f & w).collect();
        inter.sort_unstable();
        inter.dedup();
        let top = inter.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        let tops: Vec<u32> = inter.iter().copied().filter(|m| m.count_ones() == top).collect();
        inter.iter().all(|&m| tops.iter().any(|&t| m & t == m))
    }

    fn scan(start: usize, n: usize, w: u32, facets: &[u32]) -> Option<u32> {
        for i in start..n {
            let next = w | 1 << i;
            if !induced_is_pure(facets, next) {
                return Some(next);
            }
            if let Some(found) = scan(i + 1, n, next, facets) {
                return Some(found);
            }
        }
        None
    }

    Ok(match scan(0, n, 0, &facets) {
        None => CheckReport::pass(),
        Some(w) => CheckReport::fail(
            "impure_induced_subcomplex",
            (0..n).filter(|&i| w >> i & 1 == 1).map(|i| verts[i] as i64).collect(),
        ),
    })
}

/// Integer matrix `B` whose columns are a basis of the kernel lattice of
/// `a`, so that `0 -> Z^{n-d} -> Z^n -> Z^d -> 0` is exact. Requires `a` of
/// full row rank with coprime maximal minors.
pub fn gale_dual(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    let d = a.rows();
    let invariants = smith_invariants(a);
    if invariants.len() != d {
        return Err(Error::NotExact(format!("rank {} < {} rows", invariants.len(), d)));
    }
    let g = invariants.iter().fold(num_bigint::BigInt::one(), |acc, v| acc * v);
    if !g.is_one() {
        return Err(Error::NotExact(format!("gcd of maximal minors is {g}")));
    }
    Ok(integer_kernel(a))
}

/// Exactness certificate for a pair `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaleCertificate {
    pub product_zero: bool,
    pub rank_b: usize,
    pub expected_rank: usize,
    /// Smith invariants of `B` are all one: the columns span a saturated
    /// sublattice.
    pub saturated: bool,
}

impl GaleCertificate {
    pub fn holds(&self) -> bool {
        self.product_zero && self.rank_b == self.expected_rank && self.saturated
    }
}

pub fn certify_gale_pair(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<GaleCertificate> {
    let product_zero = a.mul(b)?.is_zero();
    let invariants = smith_invariants(b);
    Ok(GaleCertificate {
        product_zero,
        rank_b: invariants.len(),
        expected_rank: a.cols() - a.rank(),
        saturated: invariants.iter().all(One::is_one),
    })
}

/// All maximal minors in `{0, 1, -1}`.
pub fn is_unimodular(a: &IntegerMatrix) -> bool {
    let d = a.rows();
    combinations(a.cols(), d).into_iter().all(|cols| {
        let det = a.select_columns(&cols).determinant().expect("square by construction");
        det.is_zero() || det.magnitude().is_one()
    })
}
