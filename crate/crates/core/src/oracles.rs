//! Slow, independent reference computations used to cross-check the main
//! routines in tests. Nothing here shares code paths with the elimination,
//! greedy-expansion or reduced-quotient implementations it checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complexes::SimplicialComplex;
use crate::linalg::IntegerMatrix;
use crate::oseq::{monomials_of_degree, Monomial, MonomialSet};
use crate::sr::{standard_monomials, LsopCandidate};

/// Textbook Gaussian elimination over the rationals, first nonzero pivot.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            let pivot = a[r].clone();
            for (x, p) in a[i].iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][c] * laplace_determinant(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

/// gcd of all maximal minors (`rows x rows`), by enumerating column subsets.
pub fn maximal_minor_gcd(a: &IntegerMatrix) -> BigInt {
    use num_integer::Integer;
    let d = a.rows();
    subsets(a.cols(), d).into_iter().fold(BigInt::zero(), |g, cols| {
        let sub: Vec<Vec<BigInt>> = (0..d).map(|r| cols.iter().map(|&c| a.get(r, c).clone()).collect()).collect();
        g.gcd(&laplace_determinant(&sub))
    })
}

/// `h_i = sum_j (-1)^{i-j} C(k-j, i-j) f_{j-1}`.
pub fn h_from_f(f_sizes: &[i64]) -> Vec<i64> {
    let k = f_sizes.len() - 1;
    let binom = |n: usize, r: usize| -> i64 { (0..r).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64) };
    (0..=k)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * binom(k - j, i - j) * f_sizes[j]
                })
                .sum()
        })
        .collect()
}

/// Number of faces of each size `0..=rank`, counted by scanning all vertex
/// subsets.
pub fn brute_face_counts(s: &SimplicialComplex) -> Vec<i64> {
    let verts = s.vertices();
    let mut out = vec![0i64; s.rank() + 1];
    for mask in 0u64..1 << verts.len() {
        let face: Vec<u32> = (0..verts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        if s.contains_face(&face) {
            out[face.len()] += 1;
        }
    }
    out
}

/// Whether every vertex-induced subcomplex is pure, over all vertex subsets.
pub fn brute_is_matroid_complex(s: &SimplicialComplex) -> bool {
    let verts = s.vertices();
    (1u64..1 << verts.len()).all(|mask| {
        let w: Vec<u32> = (0..verts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        s.induced(&w).is_pure()
    })
}

/// Dimensions of `Q[Σ]/(θ)` in degrees `0..=max_degree`, computed directly
/// in the Stanley-Reisner ring: the degree-`d` part of `(θ)` is spanned by
/// `θ_j * m` for standard monomials `m` of degree `d-1`, with products
/// whose support is a non-face dropped.
pub fn direct_quotient_dims(s: &SimplicialComplex, theta: &LsopCandidate, max_degree: usize) -> Vec<usize> {
    let n = s.vertices().len();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let basis = standard_monomials(s, d);
        if d == 0 {
            out.push(basis.len());
            continue;
        }
        let lower = standard_monomials(s, d - 1);
        let mut rows = Vec::new();
        for form in &theta.forms {
            for m in &lower {
                let mut row = vec![BigRational::zero(); basis.len()];
                for v in 0..n {
                    if form[v].is_zero() {
                        continue;
                    }
                    let mut e = m.0.clone();
                    e[v] += 1;
                    if let Some(pos) = basis.iter().position(|b| b.0 == e) {
                        row[pos] += &form[v];
                    }
                }
                rows.push(row);
            }
        }
        out.push(basis.len() - rational_rank(&rows));
    }
    out
}

/// Size of each degree of the order ideal generated by `ms`, by testing every
/// monomial of every degree for divisibility into some generator.
pub fn divisor_counts(ms: &MonomialSet) -> Vec<usize> {
    (0..=ms.degree())
        .map(|l| {
            monomials_of_degree(ms.vars(), l)
                .iter()
                .filter(|m| ms.generators().iter().any(|g| m.divides(g)))
                .count()
        })
        .collect()
}

fn upper_closure_count(segment: &[Monomial], vars: usize, i: usize) -> usize {
    monomials_of_degree(vars, i + 1)
        .into_iter()
        .filter(|m| {
            (0..vars).filter(|&v| m.0[v] > 0).all(|v| {
                let mut e = m.0.clone();
                e[v] -= 1;
                segment.iter().any(|s| s.0 == e)
            })
        })
        .count()
}

/// Largest possible `dim A_{i+1}` when `dim A_i = a`, from the lex-segment
/// order ideal: take the `a` lex-smallest monomials of degree `i` and count
/// the degree-`i+1` monomials all of whose divisors lie among them.
pub fn lex_segment_growth(a: usize, i: usize) -> usize {
    let mut vars = 1;
    while monomials_of_degree(vars, i).len() < a {
        vars += 1;
    }
    // monomials_of_degree lists in descending lex order, so the tail is the
    // lex-smallest segment
    let all = monomials_of_degree(vars, i);
    let segment = &all[all.len() - a..];
    upper_closure_count(segment, vars, i)
}

/// Maximum of the same count over every `a`-subset of degree-`i` monomials
/// in `vars` variables. Exponential; for tiny cases only.
pub fn brute_max_growth(a: usize, i: usize, vars: usize) -> usize {
    let all = monomials_of_degree(vars, i);
    subsets(all.len(), a)
        .into_iter()
        .map(|idx| {
            let seg: Vec<Monomial> = idx.iter().map(|&j| all[j].clone()).collect();
            upper_closure_count(&seg, vars, i)
        })
        .max()
        .unwrap_or(0)
}
