//! Pure O-sequences and the inverse-system ring `R = Q[∂]/∩ ann(m_j)`.
//!
//! `∂^a` annihilates `x^e` unless `a <= e` componentwise, so `R` has the
//! order ideal generated by the `m_j` as a monomial basis, and
//! `∂^a · ∂^b = ∂^{a+b}` when `a + b` divides some generator and `0`
//! otherwise. Bases inside each degree are sorted in descending
//! lexicographic order of exponent vectors (`x1^2` before `x1 x2` before
//! `x2^2`).

mod realize;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{integer_row_rank, ExactMatrix};
use crate::report::{IhlReport, MapRank};

pub use realize::{find_pure_o_realization, Realization};

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All divisors, grouped by degree `0..=deg`.
    pub fn divisors_by_degree(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.degree() + 1];
        let mut cur = vec![0u32; self.0.len()];
        loop {
            let m = Monomial(cur.clone());
            out[m.degree()].push(m);
            // odometer over 0..=e_v
            let mut v = 0;
            while v < cur.len() && cur[v] == self.0[v] {
                cur[v] = 0;
                v += 1;
            }
            if v == cur.len() {
                break;
            }
            cur[v] += 1;
        }
        out
    }
}

/// All monomials of degree `d` in `vars` variables, descending lex order.
pub fn monomials_of_degree(vars: usize, d: usize) -> Vec<Monomial> {
    fn go(v: usize, vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v + 1 == vars {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(v + 1, vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    go(0, vars, d as u32, &mut Vec::with_capacity(vars), &mut out);
    out
}

fn desc(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.cmp(a)
}

/// Degree-`k` monomial generators in a fixed pool of variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialSet {
    vars: usize,
    degree: usize,
    generators: Vec<Monomial>,
}

impl MonomialSet {
    /// Deduplicates and sorts the generators; rejects mixed degrees.
    pub fn new(vars: usize, degree: usize, generators: Vec<Monomial>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Monomials("generator degree must be at least 1".into()));
        }
        if generators.is_empty() {
            return Err(Error::Monomials("no generators".into()));
        }
        for g in &generators {
            if g.0.len() != vars {
                return Err(Error::Monomials(format!("{:?} has {} exponents, expected {}", g.0, g.0.len(), vars)));
            }
            if g.degree() != degree {
                return Err(Error::Monomials(format!(
                    "mixed degrees: {:?} has degree {}, expected {}",
                    g.0,
                    g.degree(),
                    degree
                )));
            }
        }
        let mut gens: Vec<Monomial> = generators.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        gens.sort_by(desc);
        Ok(Self { vars, degree, generators: gens })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }
}

/// Graded ring `Q[∂]/∩ ann(m_j)` with its order-ideal basis.
#[derive(Debug, Clone)]
pub struct InverseSystemRing {
    vars: usize,
    top_degree: usize,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl InverseSystemRing {
    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn basis(&self, degree: usize) -> &[Monomial] {
        self.bases.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.get(m.degree()).is_some_and(|ix| ix.contains_key(m))
    }

    /// Position of `m` in its degree's basis.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m.degree())?.get(m).copied()
    }

    /// Product of basis classes; `None` is the zero class.
    pub fn multiply(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let p = a.product(b);
        self.contains(&p).then_some(p)
    }
}

/// Divisors of the generators, per degree.
pub fn order_ideal(ms: &MonomialSet) -> InverseSystemRing {
    let k = ms.degree;
    let mut sets: Vec<BTreeSet<Monomial>> = vec![BTreeSet::new(); k + 1];
    for g in &ms.generators {
        for (d, divs) in g.divisors_by_degree().into_iter().enumerate() {
            sets[d].extend(divs);
        }
    }
    let bases: Vec<Vec<Monomial>> = sets
        .into_iter()
        .map(|s| {
            let mut v: Vec<Monomial> = s.into_iter().collect();
            v.sort_by(desc);
            v
        })
        .collect();
    let index = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    InverseSystemRing { vars: ms.vars, top_degree: k, bases, index }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureOSequence {
    pub h: Vec<usize>,
    /// Declared variables that divide no generator (0-based). They do not
    /// count towards `h_1`.
    pub unused_vars: Vec<usize>,
}

pub fn pure_o_sequence(ms: &MonomialSet) -> PureOSequence {
    let h = order_ideal(ms).dims();
    let unused_vars = (0..ms.vars).filter(|&v| ms.generators.iter().all(|g| g.0[v] == 0)).collect();
    PureOSequence { h, unused_vars }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Coefficient of `∂^c` in `(∂_1 + ... + ∂_n)^{|c|}`.
fn multinomial(c: &[u32]) -> BigInt {
    let total: u32 = c.iter().sum();
    c.iter().fold(factorial(total), |acc, &e| acc / factorial(e))
}

fn lefschetz_rows(r: &InverseSystemRing, i: usize, power: usize) -> Vec<Vec<BigInt>> {
    let dom = r.basis(i);
    r.basis(i + power)
        .iter()
        .map(|b| {
            dom.iter()
                .map(|a| b.quotient(a).map_or_else(BigInt::zero, |c| multinomial(&c.0)))
                .collect()
        })
        .collect()
}

/// Matrix of multiplication by `ω^power`, `ω = Σ ∂_j`, from `R_i` to
/// `R_{i+power}`; rows index the codomain basis, columns the domain basis.
pub fn lefschetz_matrix(r: &InverseSystemRing, i: usize, power: usize) -> Result<ExactMatrix> {
    if i + power > r.top_degree {
        return Err(Error::DegreeRange(format!(
            "degree {} + power {} exceeds top degree {}",
            i, power, r.top_degree
        )));
    }
    let rows = lefschetz_rows(r, i, power);
    let cols = r.basis(i).len();
    ExactMatrix::new(
        rows.len(),
        cols,
        rows.into_iter().flatten().map(BigRational::from_integer).collect(),
    )
}

fn map_rank(r: &InverseSystemRing, i: usize, power: usize) -> MapRank {
    let rank = integer_row_rank(lefschetz_rows(r, i, power));
    MapRank::new(i, power, r.basis(i).len(), r.basis(i + power).len(), rank)
}

/// Ranks of `L^{k-2i}: R_i -> R_{k-i}` for `0 <= 2i <= k` and of
/// `L: R_i -> R_{i+1}` for `2i < k`.
pub fn check_ihl(r: &InverseSystemRing) -> IhlReport {
    let k = r.top_degree;
    IhlReport {
        top_degree: k,
        dims: r.dims(),
        lefschetz: (0..=k / 2).map(|i| map_rank(r, i, k - 2 * i)).collect(),
        steps: (0..k.div_ceil(2)).map(|i| map_rank(r, i, 1)).collect(),
    }
}

/// Per-degree dimensions of `Q[∂]/ann(m_j)`: divisor counts of one generator.
pub fn factor_ring_dims(ms: &MonomialSet, j: usize) -> Result<Vec<usize>> {
    let g = ms.generators.get(j).ok_or(Error::GeneratorIndex(j))?;
    Ok(g.divisors_by_degree().iter().map(Vec::len).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub passed: bool,
    /// `multiplicity[l][b]`: number of generators divisible by basis element
    /// `b` of degree `l`.
    pub multiplicity: Vec<Vec<usize>>,
    /// Rank of the joint projection `R_l -> ⊕_j R^j_l` per degree.
    pub projection_rank: Vec<usize>,
}

/// Certifies that `R -> R^1 × … × R^{h_k}` is injective degree by degree.
pub fn projection_separation(r: &InverseSystemRing, ms: &MonomialSet) -> SeparationReport {
    let mut multiplicity = Vec::new();
    let mut projection_rank = Vec::new();
    for l in 0..=r.top_degree {
        let basis = r.basis(l);
        multiplicity.push(
            basis.iter().map(|b| ms.generators.iter().filter(|g| b.divides(g)).count()).collect(),
        );
        // one block of rows per generator: the coordinates of p_j in the
        // divisor basis of R^j_l
        let mut rows = Vec::new();
        for g in &ms.generators {
            for d in g.divisors_by_degree().swap_remove(l) {
                rows.push(
                    basis.iter().map(|b| if *b == d { BigInt::one() } else { BigInt::zero() }).collect(),
                );
            }
        }
        projection_rank.push(integer_row_rank(rows));
    }
    let passed = projection_rank.iter().zip(r.dims()).all(|(&rk, dim)| rk == dim);
    SeparationReport { passed, multiplicity, projection_rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vars: usize, gens: &[&[u32]]) -> MonomialSet {
        let degree = gens[0].iter().sum::<u32>() as usize;
        MonomialSet::new(vars, degree, gens.iter().map(|g| Monomial(g.to_vec())).collect()).unwrap()
    }

    fn ints(m: &ExactMatrix) -> Vec<Vec<i64>> {
        (0..m.rows()).map(|r| m.row(r).iter().map(|q| q.to_integer().try_into().unwrap()).collect()).collect()
    }

    #[test]
    fn order_ideal_dims() {
        assert_eq!(order_ideal(&set(2, &[&[1, 1]])).dims(), vec![1, 2, 1]);
        assert_eq!(order_ideal(&set(1, &[&[4]])).dims(), vec![1; 5]);
        assert_eq!(order_ideal(&set(2, &[&[2, 0], &[1, 1]])).dims(), vec![1, 2, 2]);
    }

    #[test]
    fn monomial_set_validation() {
        assert!(MonomialSet::new(2, 2, vec![Monomial(vec![2, 0]), Monomial(vec![1, 0])]).is_err());
        assert!(MonomialSet::new(2, 2, vec![Monomial(vec![2, 0, 0])]).is_err());
        assert!(MonomialSet::new(2, 0, vec![Monomial(vec![0, 0])]).is_err());
        assert!(MonomialSet::new(2, 2, vec![]).is_err());
        let s = MonomialSet::new(2, 2, vec![Monomial(vec![0, 2]), Monomial(vec![2, 0]), Monomial(vec![0, 2])]).unwrap();
        assert_eq!(s.generators(), &[Monomial(vec![2, 0]), Monomial(vec![0, 2])]);
    }

    #[test]
    fn pure_o_sequences() {
        assert_eq!(pure_o_sequence(&set(3, &[&[1, 1, 1]])).h, vec![1, 3, 3, 1]);
        assert_eq!(pure_o_sequence(&set(2, &[&[2, 0], &[0, 2]])).h, vec![1, 2, 2]);
        assert_eq!(pure_o_sequence(&set(1, &[&[3]])).h, vec![1, 1, 1, 1]);
        let p = pure_o_sequence(&set(3, &[&[2, 0, 0]]));
        assert_eq!(p.h, vec![1, 1, 1]);
        assert_eq!(p.unused_vars, vec![1, 2]);
    }

    #[test]
    fn lefschetz_matrices() {
        let r = order_ideal(&set(2, &[&[1, 1]]));
        assert_eq!(ints(&lefschetz_matrix(&r, 0, 2).unwrap()), vec![vec![2]]);

        let r = order_ideal(&set(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(ints(&lefschetz_matrix(&r, 0, 2).unwrap()), vec![vec![1], vec![1]]);

        let r = order_ideal(&set(3, &[&[2, 1, 0], &[0, 1, 2]]));
        for i in 0..=3 {
            let m = lefschetz_matrix(&r, i, 0).unwrap();
            assert_eq!(m, ExactMatrix::identity(r.basis(i).len()));
        }
        assert!(lefschetz_matrix(&r, 2, 2).is_err());
    }

    #[test]
    fn lefschetz_powers_compose() {
        let r = order_ideal(&set(3, &[&[2, 1, 1], &[0, 3, 1], &[1, 0, 3]]));
        for i in 0..=4 {
            for p in 0..=4 - i {
                for q in 0..=4 - i - p {
                    let a = lefschetz_matrix(&r, i, p).unwrap();
                    let b = lefschetz_matrix(&r, i + p, q).unwrap();
                    assert_eq!(b.mul(&a).unwrap(), lefschetz_matrix(&r, i, p + q).unwrap());
                }
            }
        }
    }

    #[test]
    fn ihl_examples() {
        let rep = check_ihl(&order_ideal(&set(2, &[&[1, 1]])));
        assert_eq!(rep.lefschetz[0].rank, 1);
        assert_eq!(rep.lefschetz[1].rank, 2);
        assert!(rep.all_injective());

        let rep = check_ihl(&order_ideal(&set(2, &[&[2, 0], &[0, 2]])));
        assert_eq!((rep.lefschetz[0].rank, rep.lefschetz[0].codomain_dim), (1, 2));
        assert!(rep.all_injective());
    }

    #[test]
    fn factor_rings() {
        assert_eq!(factor_ring_dims(&set(2, &[&[1, 1]]), 0).unwrap(), vec![1, 2, 1]);
        assert_eq!(factor_ring_dims(&set(1, &[&[3]]), 0).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(factor_ring_dims(&set(2, &[&[2, 1]]), 0).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(factor_ring_dims(&set(2, &[&[2, 1]]), 1), Err(Error::GeneratorIndex(1)));
    }

    #[test]
    fn separation() {
        let ms = set(2, &[&[1, 1]]);
        let rep = projection_separation(&order_ideal(&ms), &ms);
        assert!(rep.passed);
        assert!(rep.multiplicity.iter().flatten().all(|&m| m == 1));

        let ms = set(2, &[&[2, 0], &[1, 1]]);
        let r = order_ideal(&ms);
        let rep = projection_separation(&r, &ms);
        assert!(rep.passed);
        let x1 = r.position(&Monomial(vec![1, 0])).unwrap();
        assert_eq!(rep.multiplicity[1][x1], 2);
    }

    #[test]
    fn ring_product_rule() {
        let r = order_ideal(&set(2, &[&[2, 0], &[1, 1]]));
        let x1 = Monomial(vec![1, 0]);
        let x2 = Monomial(vec![0, 1]);
        assert_eq!(r.multiply(&x1, &x2), Some(Monomial(vec![1, 1])));
        assert_eq!(r.multiply(&x2, &x2), None);
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(2, 2);
        assert_eq!(m, vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert!(monomials_of_degree(0, 2).is_empty());
    }
}
