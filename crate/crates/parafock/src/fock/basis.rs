//! Mode configurations, occupation vectors, and truncated basis enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::sparse::SparseError;

/// Default hard cap on basis size; override per call (the CLI wires the
/// `PARAFOCK_MAX_BASIS` environment variable into this).
pub const DEFAULT_MAX_BASIS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("invalid mode configuration: {0}")]
    InvalidConfig(String),
    #[error("basis would hold {size} states, above the limit of {limit}")]
    BasisTooLarge { size: u128, limit: usize },
    #[error("sort label {letter} outside 1..={sorts}")]
    LetterOutOfRange { letter: u8, sorts: u32 },
    #[error("word of length {len} does not fit under the truncation n_max={n_max}")]
    WordTooLong { len: usize, n_max: u32 },
    #[error("interior depth {depth} leaves no columns under n_max={n_max}")]
    EmptyInterior { depth: u32, n_max: u32 },
    #[error("sort index {r} outside 1..={sorts}")]
    SortOutOfRange { r: u32, sorts: u32 },
    #[error("component index {alpha} outside 1..={order}")]
    ComponentOutOfRange { alpha: u32, order: u32 },
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// Shape of a truncated parabose Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeConfig {
    /// Number of ur sorts `R`.
    pub sorts: u32,
    /// Parabose order `p` (number of Green components).
    pub order: u32,
    /// Truncation: maximum total ur number kept.
    pub n_max: u32,
}

impl ModeConfig {
    pub fn new(sorts: u32, order: u32, n_max: u32) -> Result<Self, FockError> {
        let config = ModeConfig { sorts, order, n_max };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), FockError> {
        if self.sorts == 0 {
            return Err(FockError::InvalidConfig("sorts must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(FockError::InvalidConfig("order must be at least 1".into()));
        }
        Ok(())
    }

    /// The physically standard sort counts are 2 (single urs) and 4.
    pub fn is_standard_sorts(&self) -> bool {
        matches!(self.sorts, 2 | 4)
    }

    /// Total number of Green-component modes `R * p`.
    pub fn modes(&self) -> usize {
        self.sorts as usize * self.order as usize
    }

    /// Flat mode index for sort `r` (1-based) and component `alpha` (1-based).
    pub fn mode_index(&self, r: u32, alpha: u32) -> Result<usize, FockError> {
        if r == 0 || r > self.sorts {
            return Err(FockError::SortOutOfRange { r, sorts: self.sorts });
        }
        if alpha == 0 || alpha > self.order {
            return Err(FockError::ComponentOutOfRange { alpha, order: self.order });
        }
        Ok((r as usize - 1) * self.order as usize + (alpha as usize - 1))
    }
}

impl fmt::Display for ModeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R={} p={} n_max={}", self.sorts, self.order, self.n_max)
    }
}

/// Occupation numbers per Green-component mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OccVector(pub Vec<u32>);

impl OccVector {
    pub fn zero(modes: usize) -> Self {
        OccVector(vec![0; modes])
    }

    /// Total ur number.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Occupation total of one Green-component family `alpha` (1-based).
    pub fn family_total(&self, config: &ModeConfig, alpha: u32) -> u32 {
        let p = config.order as usize;
        let a = alpha as usize - 1;
        (0..config.sorts as usize).map(|r| self.0[r * p + a]).sum()
    }

    /// Occupation total of one sort `r` (1-based) across components.
    pub fn sort_total(&self, config: &ModeConfig, r: u32) -> u32 {
        let p = config.order as usize;
        let base = (r as usize - 1) * p;
        self.0[base..base + p].iter().sum()
    }
}

impl fmt::Display for OccVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Number of basis states for a configuration: `C(n_max + M, M)` with
/// `M = R * p` modes. `None` means the count overflows u128.
pub fn predicted_basis_size(config: &ModeConfig) -> Option<u128> {
    let m = config.modes() as u128;
    let n = config.n_max as u128;
    // C(n + m, m) computed with stepwise exact division.
    let mut acc: u128 = 1;
    for k in 1..=m {
        acc = acc.checked_mul(n + k)?;
        acc /= k;
    }
    Some(acc)
}

/// Enumerated truncated Fock basis with deterministic state ordering.
#[derive(Debug, Clone)]
pub struct FockBasis {
    config: ModeConfig,
    states: Vec<OccVector>,
    index: BTreeMap<OccVector, usize>,
    grades: Arc<Vec<u32>>,
}

impl FockBasis {
    /// Enumerates all occupation vectors with total ur number at most
    /// `n_max`, ordered by total ascending then lexicographically.
    pub fn build(config: ModeConfig, max_states: usize) -> Result<Self, FockError> {
        config.validate()?;
        let size = predicted_basis_size(&config)
            .ok_or(FockError::BasisTooLarge { size: u128::MAX, limit: max_states })?;
        if size > max_states as u128 {
            return Err(FockError::BasisTooLarge { size, limit: max_states });
        }
        let modes = config.modes();
        let mut states = Vec::with_capacity(size as usize);
        for n in 0..=config.n_max {
            let mut current = vec![0u32; modes];
            compositions(n, 0, &mut current, &mut states);
        }
        let index: BTreeMap<OccVector, usize> =
            states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let grades = Arc::new(states.iter().map(OccVector::total).collect());
        Ok(FockBasis { config, states, index, grades })
    }

    pub fn config(&self) -> &ModeConfig {
        &self.config
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &OccVector {
        &self.states[i]
    }

    pub fn index_of(&self, state: &OccVector) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Total ur number of basis state `i`.
    pub fn grade(&self, i: usize) -> u32 {
        self.grades[i]
    }

    /// Shared grade vector for operator construction.
    pub fn grades(&self) -> Arc<Vec<u32>> {
        self.grades.clone()
    }

    /// Index of the Fock vacuum (the all-zero occupation vector).
    pub fn vacuum_index(&self) -> usize {
        0
    }

    /// Columns at least `depth` below the truncation: `n <= n_max - depth`.
    pub fn interior_columns(&self, depth: u32) -> Result<Vec<usize>, FockError> {
        if depth > self.config.n_max {
            return Err(FockError::EmptyInterior { depth, n_max: self.config.n_max });
        }
        let cutoff = self.config.n_max - depth;
        Ok((0..self.size()).filter(|&i| self.grades[i] <= cutoff).collect())
    }
}

/// Appends, in lexicographic order, all fillings of `current[from..]` that
/// sum to `remaining`.
fn compositions(remaining: u32, from: usize, current: &mut Vec<u32>, out: &mut Vec<OccVector>) {
    if from == current.len() - 1 {
        current[from] = remaining;
        out.push(OccVector(current.clone()));
        current[from] = 0;
        return;
    }
    for first in 0..=remaining {
        current[from] = first;
        compositions(remaining - first, from + 1, current, out);
    }
    current[from] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_single_ur_basis() {
        let basis = FockBasis::build(ModeConfig::new(2, 1, 1).unwrap(), 100).unwrap();
        assert_eq!(basis.size(), 3);
        assert_eq!(basis.state(0), &OccVector(vec![0, 0]));
        assert_eq!(basis.state(1), &OccVector(vec![0, 1]));
        assert_eq!(basis.state(2), &OccVector(vec![1, 0]));
    }

    #[test]
    fn two_sort_order_two_counts() {
        let basis = FockBasis::build(ModeConfig::new(2, 2, 2).unwrap(), 100).unwrap();
        assert_eq!(basis.size(), 15);
    }

    #[test]
    fn four_sort_counts() {
        let basis = FockBasis::build(ModeConfig::new(4, 1, 3).unwrap(), 100).unwrap();
        assert_eq!(basis.size(), 35);
    }

    #[test]
    fn predicted_size_matches_enumeration() {
        for (sorts, order, n_max) in [(2, 1, 6), (2, 2, 4), (4, 1, 5), (3, 2, 3)] {
            let config = ModeConfig::new(sorts, order, n_max).unwrap();
            let basis = FockBasis::build(config, 1_000_000).unwrap();
            assert_eq!(predicted_basis_size(&config), Some(basis.size() as u128), "{config}");
        }
    }

    #[test]
    fn ordering_is_total_then_lex() {
        let basis = FockBasis::build(ModeConfig::new(2, 1, 2).unwrap(), 100).unwrap();
        let got: Vec<Vec<u32>> = (0..basis.size()).map(|i| basis.state(i).0.clone()).collect();
        assert_eq!(
            got,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 2], vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn oversized_basis_is_rejected_with_its_size() {
        let config = ModeConfig::new(4, 2, 6).unwrap();
        let err = FockBasis::build(config, 100).unwrap_err();
        assert_eq!(err, FockError::BasisTooLarge { size: 3003, limit: 100 });
    }

    #[test]
    fn zero_sorts_is_invalid() {
        assert!(ModeConfig::new(0, 1, 2).is_err());
        assert!(ModeConfig::new(2, 0, 2).is_err());
    }

    #[test]
    fn family_and_sort_totals() {
        let config = ModeConfig::new(2, 2, 6).unwrap();
        // Mode order: (r=1,a=1), (r=1,a=2), (r=2,a=1), (r=2,a=2).
        let occ = OccVector(vec![1, 2, 3, 4]);
        assert_eq!(occ.family_total(&config, 1), 4);
        assert_eq!(occ.family_total(&config, 2), 6);
        assert_eq!(occ.sort_total(&config, 1), 3);
        assert_eq!(occ.sort_total(&config, 2), 7);
    }

    #[test]
    fn interior_columns_respect_depth() {
        let basis = FockBasis::build(ModeConfig::new(2, 1, 6).unwrap(), 1000).unwrap();
        let interior = basis.interior_columns(4).unwrap();
        assert!(interior.iter().all(|&i| basis.grade(i) <= 2));
        assert_eq!(interior.len(), 6);
        assert!(basis.interior_columns(7).is_err());
    }
}
