//! Macaulay representations, pseudopowers and the numerical checks built on
//! them: M-sequences, g-inequalities and h-vector flatness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// `a = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_r, r)` with
/// `n_i > n_{i-1} > ... > n_r >= r >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MacaulayRep {
    pub degree: u32,
    /// Pairs `(n_j, j)` from `j = degree` downwards.
    pub terms: Vec<(u64, u32)>,
}

impl MacaulayRep {
    pub fn value(&self) -> u128 {
        self.terms.iter().map(|&(n, j)| binomial(n, j)).sum()
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u32) -> u128 {
    binomial_capped(n, k, u128::MAX - 1)
}

/// `min(C(n, k), cap + 1)` without overflow.
fn binomial_capped(n: u64, k: u32, cap: u128) -> u128 {
    let k = k as u64;
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc = C(n, j) here, increasing in j since j < n/2
        match acc.checked_mul((n - j) as u128) {
            Some(p) => acc = p / (j + 1) as u128,
            None => return cap.saturating_add(1),
        }
        if acc > cap {
            return cap.saturating_add(1);
        }
    }
    acc
}

/// Greedy binomial expansion of `a` in degree `i`.
pub fn macaulay_representation(a: u64, i: u32) -> Result<MacaulayRep> {
    if a == 0 {
        return Err(Error::Macaulay("Macaulay representation needs a >= 1".into()));
    }
    if i == 0 {
        return Err(Error::Macaulay("Macaulay representation needs degree >= 1".into()));
    }
    let mut terms = Vec::new();
    let mut rest = a as u128;
    let mut j = i;
    while rest > 0 {
        debug_assert!(j >= 1, "degree-1 step always clears the remainder");
        // largest n with C(n, j) <= rest; C(n, j) >= n - j + 1 bounds the search
        let (mut lo, mut hi) = (j as u64, (rest as u64).saturating_add(j as u64));
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if binomial_capped(mid, j, rest) <= rest {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        terms.push((lo, j));
        rest -= binomial(lo, j);
        j -= 1;
    }
    Ok(MacaulayRep { degree: i, terms })
}

/// `a^{<i>}`: the Macaulay bound on the next value of an M-sequence, with
/// `0^{<i>} = 0`.
pub fn pseudopower(a: u64, i: u32) -> u128 {
    match macaulay_representation(a, i) {
        Ok(rep) => rep
            .terms
            .iter()
            .fold(0u128, |acc, &(n, j)| acc.saturating_add(binomial(n + 1, j + 1))),
        Err(_) => 0,
    }
}

fn within_bound(next: i64, current: i64, degree: usize) -> bool {
    if next <= 0 {
        return true;
    }
    let bound = pseudopower(current.max(0) as u64, degree as u32);
    (next as u128) <= bound
}

/// Macaulay's characterization of Hilbert functions of standard graded
/// algebras: `seq_0 = 1`, nonnegative entries and
/// `seq_{i+1} <= seq_i^{<i>}` for `i >= 1`.
pub fn is_m_sequence(seq: &[i64]) -> CheckReport {
    if seq.first() != Some(&1) {
        return CheckReport::fail("h0_not_one", vec![0]);
    }
    if let Some(i) = seq.iter().position(|&v| v < 0) {
        return CheckReport::fail("negative_entry", vec![i as i64]);
    }
    for i in 1..seq.len().saturating_sub(1) {
        if !within_bound(seq[i + 1], seq[i], i) {
            return CheckReport::fail("macaulay_bound", vec![(i + 1) as i64]);
        }
    }
    CheckReport::pass()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HViolationKind {
    /// `g_i < 0` for some `1 <= i <= floor(k/2)`.
    NegativeG,
    /// `g_{i+1} > g_i^{<i>}` for some `1 <= i < floor(k/2)`.
    MacaulayBound,
    /// `h_i > h_j` for some `i <= j <= k - i`.
    NotFlat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HViolation {
    pub kind: HViolationKind,
    /// The offending index; for `NotFlat` the pair `(i, j)`.
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HVectorChecks {
    pub h: Vec<i64>,
    /// `g_i = h_i - h_{i-1}` for `i = 1..=k`.
    pub g: Vec<i64>,
    pub passed: bool,
    /// Only set by [`check_flatness`]: `h_1 <= h_2 <= ... <= h_{floor(k/2)}`.
    pub hibi_chain: Option<bool>,
    pub first_violation: Option<HViolation>,
}

fn differences(h: &[i64]) -> Vec<i64> {
    h.windows(2).map(|w| w[1] - w[0]).collect()
}

/// The g-inequalities on exactly their stated index ranges: positivity for
/// `1 <= i <= floor(k/2)` and Macaulay growth of `g` for `1 <= i < floor(k/2)`.
pub fn check_g_inequalities(h: &[i64]) -> Result<HVectorChecks> {
    if h.first() != Some(&1) {
        return Err(Error::Macaulay("g-inequalities need h_0 = 1".into()));
    }
    let k = h.len() - 1;
    let half = k / 2;
    let g = differences(h);
    // g[i - 1] holds g_i
    let mut violation = None;
    for i in 1..=half {
        if g[i - 1] < 0 {
            violation = Some(HViolation { kind: HViolationKind::NegativeG, indices: vec![i] });
            break;
        }
        if i < half && !within_bound(g[i], g[i - 1], i) {
            violation = Some(HViolation { kind: HViolationKind::MacaulayBound, indices: vec![i + 1] });
            break;
        }
    }
    Ok(HVectorChecks {
        h: h.to_vec(),
        g,
        passed: violation.is_none(),
        hibi_chain: None,
        first_violation: violation,
    })
}

/// `h_i <= h_j` for all `0 <= i <= j <= k - i`.
pub fn check_flatness(h: &[i64]) -> HVectorChecks {
    let k = h.len().saturating_sub(1);
    let mut violation = None;
    'outer: for i in 0..=k / 2 {
        for j in i..=k - i {
            if h[i] > h[j] {
                violation = Some(HViolation { kind: HViolationKind::NotFlat, indices: vec![i, j] });
                break 'outer;
            }
        }
    }
    let hibi = (1..k / 2).all(|i| h[i] <= h[i + 1]);
    HVectorChecks {
        h: h.to_vec(),
        g: differences(h),
        passed: violation.is_none(),
        hibi_chain: Some(hibi),
        first_violation: violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn representation_examples() {
        assert_eq!(macaulay_representation(5, 2).unwrap().terms, vec![(3, 2), (2, 1)]);
        assert_eq!(macaulay_representation(1, 3).unwrap().terms, vec![(3, 3)]);
        assert_eq!(macaulay_representation(10, 3).unwrap().terms, vec![(5, 3)]);
        assert!(macaulay_representation(0, 2).is_err());
        assert!(macaulay_representation(3, 0).is_err());
    }

    #[test]
    fn representation_is_unique_among_decreasing_sequences() {
        // exhaustive: every strictly decreasing (n_i > ... > n_r >= r >= 1)
        // with small entries, grouped by value, hits each value once
        fn go(j: u32, max_n: u64, acc: u128, terms: &mut Vec<(u64, u32)>, out: &mut Vec<(u128, Vec<(u64, u32)>)>) {
            if !terms.is_empty() {
                out.push((acc, terms.clone()));
            }
            if j == 0 {
                return;
            }
            for n in j as u64..max_n {
                if acc + binomial(n, j) > 60 {
                    break;
                }
                terms.push((n, j));
                go(j - 1, n, acc + binomial(n, j), terms, out);
                terms.pop();
            }
        }
        for i in 1..=4u32 {
            let mut all = Vec::new();
            go(i, if i == 1 { 61 } else { 12 }, 0, &mut Vec::new(), &mut all);
            for a in 1..=60u64 {
                let hits: Vec<_> = all.iter().filter(|(v, _)| *v == a as u128).collect();
                assert_eq!(hits.len(), 1, "a={a} i={i}: {hits:?}");
                assert_eq!(macaulay_representation(a, i).unwrap().terms, hits[0].1);
            }
        }
    }

    #[test]
    fn pseudopower_examples() {
        assert_eq!(pseudopower(0, 3), 0);
        assert_eq!(pseudopower(5, 2), 7);
        for a in 1..50u64 {
            assert_eq!(pseudopower(a, 1), binomial(a + 1, 2));
        }
    }

    #[test]
    fn huge_inputs_do_not_overflow() {
        let rep = macaulay_representation(u64::MAX, 1).unwrap();
        assert_eq!(rep.terms, vec![(u64::MAX, 1)]);
        let rep = macaulay_representation(u64::MAX, 5).unwrap();
        assert_eq!(rep.value(), u64::MAX as u128);
    }

    #[test]
    fn m_sequence_examples() {
        assert!(is_m_sequence(&[1, 2, 3, 4]).passed);
        let r = is_m_sequence(&[1, 1, 2]);
        assert_eq!(r.violation.unwrap().witness, vec![2]);
        assert!(is_m_sequence(&[1]).passed);
        assert!(!is_m_sequence(&[2, 1]).passed);
        assert!(!is_m_sequence(&[1, -1]).passed);
        assert!(is_m_sequence(&[1, 3, 6, 10, 0, 0]).passed);
    }

    #[test]
    fn g_inequality_examples() {
        assert!(check_g_inequalities(&[1, 1, 1]).unwrap().passed);
        let r = check_g_inequalities(&[1, 2, 3]).unwrap();
        assert!(r.passed);
        assert_eq!(r.g, vec![1, 1]);

        let r = check_g_inequalities(&[1, 2, 1, 4, 1, 1, 1]).unwrap();
        assert!(!r.passed);
        assert_eq!(
            r.first_violation,
            Some(HViolation { kind: HViolationKind::NegativeG, indices: vec![2] })
        );

        // g = (1, 2, ...) with k = 6: g_2 = 2 > 1^{<1>} = 1
        let r = check_g_inequalities(&[1, 2, 4, 5, 4, 2, 1]).unwrap();
        assert_eq!(r.first_violation.unwrap().kind, HViolationKind::MacaulayBound);

        assert!(check_g_inequalities(&[2, 3]).is_err());
    }

    #[test]
    fn flatness_examples() {
        assert!(check_flatness(&[1, 2, 3]).passed);
        let r = check_flatness(&[1, 3, 2, 3, 1]);
        assert_eq!(r.first_violation.unwrap().indices, vec![1, 2]);
        assert_eq!(r.hibi_chain, Some(false));
        assert!(check_flatness(&[1]).passed);
        assert!(!check_flatness(&[1, 0, 0]).passed);
    }

    proptest! {
        #[test]
        fn representation_round_trips(a in 1u64..=10_000, i in 1u32..=8) {
            let rep = macaulay_representation(a, i).unwrap();
            prop_assert_eq!(rep.value(), a as u128);
            let ns: Vec<u64> = rep.terms.iter().map(|t| t.0).collect();
            prop_assert!(ns.windows(2).all(|w| w[0] > w[1]));
            let &(last_n, last_j) = rep.terms.last().unwrap();
            prop_assert!(last_j >= 1 && last_n >= last_j as u64);
        }

        #[test]
        fn pseudopower_is_monotone(a in 0u64..5_000, i in 1u32..=8) {
            prop_assert!(pseudopower(a, i) <= pseudopower(a + 1, i));
        }
    }
}
