//! Independent checks of a claimed minimum cycle basis.

use super::gf2::Gf2Basis;
use super::horton::horton_weight;
use crate::cycle::Cycle;
use crate::graph::{cycle_space_dimension_any, EdgeId, WeightedGraph};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    Skipped,
}

impl Check {
    fn from(ok: bool) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub simple: Check,
    pub count: Check,
    pub rank: Check,
    pub weight: Check,
    pub expected_count: usize,
    pub actual_count: usize,
    pub rank_value: usize,
    pub total_weight: Weight,
    pub reference_weight: Option<Weight>,
}

impl VerifyReport {
    /// True iff no check failed.
    pub fn passed(&self) -> bool {
        [self.simple, self.count, self.rank, self.weight]
            .iter()
            .all(|&c| c != Check::Fail)
    }
}

/// Checks that `cycles` (edge-id lists of `g`) are simple cycles, that
/// there are as many as the cycle-space dimension, that they are
/// independent, and, when `g` has at most `weight_bound` vertices, that
/// their total weight is minimum.
pub fn verify_basis(
    g: &WeightedGraph,
    cycles: &[Vec<EdgeId>],
    weight_bound: usize,
) -> VerifyReport {
    let simple = cycles.iter().all(|c| Cycle::from_edges(g, c).is_some());
    let expected_count = cycle_space_dimension_any(g);
    let mut basis = Gf2Basis::new(g.m());
    for c in cycles {
        if c.iter().all(|&e| e < g.m()) {
            basis.insert_edges(c);
        }
    }
    let rank_value = basis.rank();
    let total_weight: Weight = cycles
        .iter()
        .flatten()
        .filter(|&&e| e < g.m())
        .map(|&e| g.edge(e).w)
        .sum();
    let reference_weight = horton_weight(g, weight_bound).ok();
    let weight = match reference_weight {
        Some(r) => Check::from(r == total_weight),
        None => Check::Skipped,
    };
    VerifyReport {
        simple: Check::from(simple),
        count: Check::from(cycles.len() == expected_count),
        rank: Check::from(rank_value == cycles.len()),
        weight,
        expected_count,
        actual_count: cycles.len(),
        rank_value,
        total_weight,
        reference_weight,
    }
}
