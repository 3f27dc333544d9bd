//! Structured results shared by the checkers.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Short name of the condition that failed.
    pub condition: String,
    /// Index pair, vertex set, face, ... depending on the condition.
    pub witness: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub violation: Option<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        Self { passed: true, violation: None }
    }

    pub fn fail(condition: impl Into<String>, witness: Vec<i64>) -> Self {
        Self { passed: false, violation: Some(Violation { condition: condition.into(), witness }) }
    }
}

/// Rank of one multiplication map `degree -> degree + power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapRank {
    pub degree: usize,
    pub power: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub injective: bool,
}

impl MapRank {
    pub fn new(degree: usize, power: usize, domain_dim: usize, codomain_dim: usize, rank: usize) -> Self {
        Self { degree, power, domain_dim, codomain_dim, rank, injective: rank == domain_dim }
    }
}

/// Lefschetz ranks of a graded algebra with top degree `top_degree`.
///
/// `lefschetz` holds `L^{k-2i}: A_i -> A_{k-i}` for every `0 <= 2i <= k`;
/// `steps` holds `L: A_i -> A_{i+1}` for every `2i < k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IhlReport {
    pub top_degree: usize,
    pub dims: Vec<usize>,
    pub lefschetz: Vec<MapRank>,
    pub steps: Vec<MapRank>,
}

impl IhlReport {
    pub fn all_injective(&self) -> bool {
        self.lefschetz.iter().chain(&self.steps).all(|m| m.injective)
    }
}
