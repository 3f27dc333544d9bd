//! Stanley-Reisner rings and their Artinian reductions by random linear
//! systems of parameters.
//!
//! Quotient dimensions are computed by eliminating variables: after putting
//! `θ` in reduced row echelon form, every pivot variable is a linear form in
//! the free variables, so `Q[Σ]/(θ)` becomes `Q[y_1..y_m]` modulo the images
//! of the minimal non-face monomials. The degree-`d` part of that ideal is
//! built from degree `d-1` (multiplied by each `y_j`) plus the new generators
//! of degree `d`, and kept in integer echelon form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, integer_echelon, integer_row_rank, rank, row_echelon, ExactMatrix};
use crate::oseq::{monomials_of_degree, Monomial};
use crate::report::{IhlReport, MapRank};

pub const DEFAULT_COEFF_BOUND: i64 = 10;
const DRAW_RETRIES: usize = 16;

/// Monomials of degree `d` in the vertex variables whose support is a face,
/// in descending lex order. Exponents are indexed by the sorted vertex list.
pub fn standard_monomials(s: &SimplicialComplex, d: usize) -> Vec<Monomial> {
    let verts = s.vertices();
    monomials_of_degree(verts.len(), d)
        .into_iter()
        .filter(|m| {
            let support: Vec<u32> =
                m.0.iter().zip(verts).filter(|(&e, _)| e > 0).map(|(_, &v)| v).collect();
            s.contains_face(&support)
        })
        .collect()
}

fn serialize_rows<S: Serializer>(rows: &[Vec<BigRational>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    text.serialize(ser)
}

/// `k` linear forms over the vertices, one coefficient vector each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LsopCandidate {
    #[serde(serialize_with = "serialize_rows")]
    pub forms: Vec<Vec<BigRational>>,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl LsopCandidate {
    /// Wraps explicit forms; independence is not checked here.
    pub fn from_forms(forms: Vec<Vec<BigRational>>) -> Self {
        Self { forms, seed: 0, coeff_bound: 0 }
    }
}

pub fn random_lsop(s: &SimplicialComplex, seed: u64) -> Result<LsopCandidate> {
    random_lsop_bounded(s, seed, DEFAULT_COEFF_BOUND)
}

/// Draws `rank(s)` forms with integer coefficients uniform in
/// `[-bound, bound]` from a ChaCha8 stream seeded with `seed`, redrawing
/// dependent systems.
pub fn random_lsop_bounded(s: &SimplicialComplex, seed: u64, bound: i64) -> Result<LsopCandidate> {
    let (k, n) = (s.rank(), s.vertices().len());
    let bound = bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DRAW_RETRIES {
        let forms: Vec<Vec<BigRational>> = (0..k)
            .map(|_| {
                (0..n).map(|_| BigRational::from_integer(rng.random_range(-bound..=bound).into())).collect()
            })
            .collect();
        let m = ExactMatrix::from_rows(forms.clone())?;
        if rank(&m) == k {
            return Ok(LsopCandidate { forms, seed, coeff_bound: bound });
        }
    }
    Err(Error::DependentForms(DRAW_RETRIES))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    /// `dim Q[Σ]/(θ)` in degrees `0..=k+1`.
    pub dims: Vec<usize>,
    pub h: Vec<i64>,
    pub matches_h: bool,
    /// `dims[k+1] == 0`.
    pub valid_lsop: bool,
    pub theta: LsopCandidate,
    pub ihl: Option<IhlReport>,
    pub resamples_used: usize,
    pub verdict: Option<Verdict>,
}

/// Reduced quotient `Q[y_1..y_m]/J` together with the echelon bases of `J`.
struct Quotient {
    vars: usize,
    /// image of `ω = Σ x_v` in the free variables
    omega: Vec<BigInt>,
    index: Vec<HashMap<Monomial, usize>>,
    bases: Vec<Vec<Monomial>>,
    /// `None` when the ideal fills its degree.
    ideal: Vec<Option<Vec<Vec<BigInt>>>>,
}

impl Quotient {
    fn dim(&self, d: usize) -> usize {
        self.ideal[d].as_ref().map_or(0, |j| self.bases[d].len() - j.len())
    }

    /// `lin * p` for `p` homogeneous of degree `d`.
    fn mul_linear(&self, lin: &[BigInt], p: &[BigInt], d: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.bases[d + 1].len()];
        for (a, c) in self.bases[d].iter().zip(p) {
            if c.is_zero() {
                continue;
            }
            for (j, l) in lin.iter().enumerate() {
                if l.is_zero() {
                    continue;
                }
                let mut e = a.0.clone();
                e[j] += 1;
                let idx = self.index[d + 1][&Monomial(e)];
                out[idx] += c * l;
            }
        }
        out
    }

    fn shift(&self, p: &[BigInt], d: usize, var: usize) -> Vec<BigInt> {
        let mut unit = vec![BigInt::zero(); self.vars];
        unit[var] = BigInt::one();
        self.mul_linear(&unit, p, d)
    }

    /// Rank of multiplication by `ω^power` from degree `i` to `i + power`.
    fn lefschetz(&self, i: usize, power: usize) -> MapRank {
        let (dom, cod) = (self.dim(i), self.dim(i + power));
        let rank = if dom == 0 || cod == 0 {
            0
        } else {
            let ideal_i = self.ideal[i].as_ref().expect("nonzero degree");
            let pivots: Vec<usize> = ideal_i
                .iter()
                .map(|r| r.iter().position(|v| !v.is_zero()).expect("echelon rows are nonzero"))
                .collect();
            let target = self.ideal[i + power].as_ref().expect("nonzero degree");
            let mut rows = target.clone();
            for c in (0..self.bases[i].len()).filter(|c| !pivots.contains(c)) {
                let mut p = vec![BigInt::zero(); self.bases[i].len()];
                p[c] = BigInt::one();
                for step in 0..power {
                    p = self.mul_linear(&self.omega, &p, i + step);
                }
                rows.push(p);
            }
            integer_row_rank(rows) - target.len()
        };
        MapRank::new(i, power, dom, cod, rank)
    }
}

fn reduce(s: &SimplicialComplex, theta: &LsopCandidate) -> Result<Quotient> {
    let verts = s.vertices();
    let (k, n) = (s.rank(), verts.len());
    if theta.forms.len() != k {
        return Err(Error::FormCount { expected: k, got: theta.forms.len() });
    }
    let m = ExactMatrix::from_rows(theta.forms.clone())?;
    if m.rows() > 0 && m.cols() != n {
        return Err(Error::Shape(format!("forms have {} coefficients for {} vertices", m.cols(), n)));
    }
    let (reduced, pivots) = row_echelon(&m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vars = free.len();

    // x_free[j] -> y_j, x_pivot[r] -> -sum_j R[r, free_j] y_j
    let mut images: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); vars]; n];
    for (j, &f) in free.iter().enumerate() {
        images[f][j] = BigRational::one();
    }
    for (r, &p) in pivots.iter().enumerate() {
        for (j, &f) in free.iter().enumerate() {
            images[p][j] = -reduced.get(r, f).clone();
        }
    }
    let mut omega = vec![BigRational::zero(); vars];
    for l in &images {
        for (o, c) in omega.iter_mut().zip(l) {
            *o += c;
        }
    }
    let omega = clear_denominators(&omega);
    let images: Vec<Vec<BigInt>> = images.iter().map(|l| clear_denominators(l)).collect();

    let top = k + 1;
    let bases: Vec<Vec<Monomial>> = (0..=top).map(|d| monomials_of_degree(vars, d)).collect();
    let index = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, mono)| (mono, i)).collect())
        .collect();
    let mut q = Quotient { vars, omega, index, bases, ideal: Vec::with_capacity(top + 1) };

    let mut gens: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); top + 1];
    for face in s.minimal_nonfaces() {
        let mut p = vec![BigInt::one()];
        for (d, v) in face.iter().enumerate() {
            let pos = verts.binary_search(v).expect("minimal non-faces use complex vertices");
            p = q.mul_linear(&images[pos], &p, d);
        }
        gens[face.len()].push(p);
    }

    q.ideal.push(Some(Vec::new()));
    #[allow(clippy::needless_range_loop)] // d indexes three parallel tables
    for d in 1..=top {
        let next = match &q.ideal[d - 1] {
            None => None,
            Some(prev) => {
                let mut rows: Vec<Vec<BigInt>> = Vec::new();
                for p in prev {
                    for var in 0..vars {
                        rows.push(q.shift(p, d - 1, var));
                    }
                }
                rows.append(&mut gens[d]);
                let ech = integer_echelon(rows);
                (ech.len() < q.bases[d].len()).then_some(ech)
            }
        };
        q.ideal.push(next);
    }
    Ok(q)
}

fn report_from(s: &SimplicialComplex, q: &Quotient, theta: LsopCandidate) -> QuotientReport {
    let k = s.rank();
    let dims: Vec<usize> = (0..=k + 1).map(|d| q.dim(d)).collect();
    let h = s.face_vectors().h;
    let matches_h = dims[..=k].iter().zip(&h).all(|(&d, &hv)| d as i64 == hv);
    QuotientReport {
        valid_lsop: dims[k + 1] == 0,
        dims,
        h,
        matches_h,
        theta,
        ihl: None,
        resamples_used: 0,
        verdict: None,
    }
}

/// Graded dimensions of `Q[Σ]/(θ)` in degrees `0..=k+1`.
pub fn quotient_dims(s: &SimplicialComplex, theta: &LsopCandidate) -> Result<QuotientReport> {
    let q = reduce(s, theta)?;
    Ok(report_from(s, &q, theta.clone()))
}

fn ihl_ranks(q: &Quotient, k: usize) -> IhlReport {
    IhlReport {
        top_degree: k,
        dims: (0..=k).map(|d| q.dim(d)).collect(),
        lefschetz: (0..=k / 2).map(|i| q.lefschetz(i, k - 2 * i)).collect(),
        steps: (0..k.div_ceil(2)).map(|i| q.lefschetz(i, 1)).collect(),
    }
}

pub fn sr_ihl_check(s: &SimplicialComplex, seed: u64, max_resamples: usize) -> Result<QuotientReport> {
    sr_ihl_check_bounded(s, seed, max_resamples, DEFAULT_COEFF_BOUND)
}

/// Draws up to `1 + max_resamples` l.s.o.p. candidates (seeds `seed`,
/// `seed + 1`, ...) and checks injectivity of `ω^{k-2i}: A_i -> A_{k-i}`
/// with `ω` the sum of all vertex variables. The first candidate with full
/// Lefschetz ranks gives a certified report; if every valid candidate fails,
/// the last one is returned as inconclusive.
pub fn sr_ihl_check_bounded(
    s: &SimplicialComplex,
    seed: u64,
    max_resamples: usize,
    bound: i64,
) -> Result<QuotientReport> {
    if !s.is_pure() {
        return Err(Error::NotPure);
    }
    let k = s.rank();
    let mut last = None;
    for attempt in 0..=max_resamples {
        let theta = random_lsop_bounded(s, seed.wrapping_add(attempt as u64), bound)?;
        let q = reduce(s, &theta)?;
        let mut report = report_from(s, &q, theta);
        report.resamples_used = attempt;
        if !report.valid_lsop {
            continue;
        }
        let ihl = ihl_ranks(&q, k);
        let ok = ihl.all_injective();
        report.ihl = Some(ihl);
        if ok {
            report.verdict = Some(Verdict::Certified);
            return Ok(report);
        }
        report.verdict = Some(Verdict::Inconclusive);
        last = Some(report);
    }
    last.ok_or(Error::LsopNotFound(max_resamples + 1))
}
