//! Lorentz vacuum, zeron, and neutrino states with truncation bookkeeping.
//!
//! The states are power series in the pair-raising bilinears applied to the
//! empty state, truncated at a series cutoff. On a truncated space the
//! defining identities hold exactly away from the truncation edge: a series
//! truncated at shell `edge` produces residuals only at shells near `edge`
//! when an operator identity is applied, so every check decomposes its
//! residual by shell and certifies the interior `[0, edge - boundary_width)`
//! instead of asserting a fake global zero.
//!
//! Interior limits per state kind (`K` inner, `K'` outer series cutoff):
//! the vacuum's residuals start at shell `2K`, the zeron's at
//! `min(2K, 2K')`, the neutrino's one shell lower; the default width 4
//! stays inside those bounds for the symmetric `K = K'` runs.
//!
//! The lowered state built by [`neutrino`] satisfies three of the four
//! particle conditions on the interior but genuinely violates the
//! light-cone sum eigencondition; see its documentation for the exact
//! residual.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::Serialize;

use crate::conformal::PoincareSet;
use crate::fock::{bilinear_raising, para_op, vacuum, FockBasis, FockError, ModeConfig};
use crate::scalar::GaussianRational;
use crate::sparse::{SparseError, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatesError {
    #[error("state construction requires 4 sorts, got {0}")]
    WrongSortCount(u32),
    #[error("series reaches shell {needed}, beyond the cutoff n_max={n_max}")]
    CutoffTooSmall { needed: u32, n_max: u32 },
    #[error("zeron series requires parabose order 1, got {0}")]
    WrongOrder(u32),
    #[error("expected an untouched vacuum series state, got {0}")]
    NotAVacuumSeries(String),
    #[error("state dimension {state} does not match basis dimension {basis}")]
    DimensionMismatch { state: usize, basis: usize },
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// A state built from a truncated operator power series.
#[derive(Debug, Clone)]
pub struct TruncatedSeriesState {
    label: String,
    vector: SparseVec,
    series_cutoff: u32,
    /// Highest shell the truncated series represents faithfully; `None` for
    /// exact states that are not truncations of anything.
    truncation_edge: Option<u32>,
    shell_support: BTreeSet<u32>,
    epsilon: Option<GaussianRational>,
}

impl TruncatedSeriesState {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vector(&self) -> &SparseVec {
        &self.vector
    }

    pub fn series_cutoff(&self) -> u32 {
        self.series_cutoff
    }

    pub fn truncation_edge(&self) -> Option<u32> {
        self.truncation_edge
    }

    pub fn shell_support(&self) -> &BTreeSet<u32> {
        &self.shell_support
    }

    pub fn epsilon(&self) -> Option<&GaussianRational> {
        self.epsilon.as_ref()
    }

    /// Wraps an exact vector (no truncation edge): every residual shell is
    /// interior, so invariance checks judge the state as it stands.
    pub fn from_exact_vector(
        basis: &FockBasis,
        vector: SparseVec,
        label: impl Into<String>,
    ) -> Result<Self, StatesError> {
        if vector.dim() != basis.size() {
            return Err(StatesError::DimensionMismatch {
                state: vector.dim(),
                basis: basis.size(),
            });
        }
        let shell_support = support_shells(basis, &vector);
        Ok(TruncatedSeriesState {
            label: label.into(),
            vector,
            series_cutoff: 0,
            truncation_edge: None,
            shell_support,
            epsilon: None,
        })
    }
}

fn support_shells(basis: &FockBasis, v: &SparseVec) -> BTreeSet<u32> {
    v.iter().map(|(k, _)| basis.state(k).total()).collect()
}

fn factorial_rational(k: u32) -> BigRational {
    let mut out = BigRational::from_integer(1.into());
    for j in 2..=u64::from(k) {
        out *= BigRational::from_integer(j.into());
    }
    out
}

/// The displayed series coefficient `(-1)^(mu+lambda) i^(mu-lambda) / (mu! lambda!)`.
pub fn vacuum_series_coefficient(mu: u32, lambda: u32) -> GaussianRational {
    let sign = if (mu + lambda) % 2 == 0 { 1 } else { -1 };
    let phase = GaussianRational::i_pow(i64::from(mu) - i64::from(lambda));
    let denom = factorial_rational(mu) * factorial_rational(lambda);
    &(&GaussianRational::from_int(sign) * &phase)
        * &GaussianRational::from_rational(denom.recip())
}

/// Truncated Lorentz vacuum: the double power series of the two pair-raising
/// bilinears over the empty state, kept to total series order `K`.
pub fn lorentz_vacuum(basis: &FockBasis, k: u32) -> Result<TruncatedSeriesState, StatesError> {
    let config = basis.config();
    if config.sorts != 4 {
        return Err(StatesError::WrongSortCount(config.sorts));
    }
    if 2 * k > config.n_max {
        return Err(StatesError::CutoffTooSmall { needed: 2 * k, n_max: config.n_max });
    }
    let raise_14 = bilinear_raising(basis, 1, 4)?;
    let raise_23 = bilinear_raising(basis, 2, 3)?;

    let mut total = SparseVec::zero(basis.size());
    let mut b_power = vacuum(basis);
    for lambda in 0..=k {
        let mut term = b_power.clone();
        for mu in 0..=(k - lambda) {
            total = total.add(&term.scale(&vacuum_series_coefficient(mu, lambda)))?;
            if mu < k - lambda {
                term = raise_14.apply(&term)?;
            }
        }
        if lambda < k {
            b_power = raise_23.apply(&b_power)?;
        }
    }

    let shell_support = support_shells(basis, &total);
    debug_assert!(shell_support.iter().all(|&s| s % 2 == 0 && s <= 2 * k));
    Ok(TruncatedSeriesState {
        label: format!("lorentz-vacuum(K={k})"),
        vector: total,
        series_cutoff: k,
        truncation_edge: Some(2 * k),
        shell_support,
        epsilon: None,
    })
}

/// Truncated zeron: the power series `sum_mu (i eps)^mu / (mu!)^2` of the
/// first pair-raising bilinear over a truncated Lorentz vacuum.
pub fn zeron(
    basis: &FockBasis,
    omega: &TruncatedSeriesState,
    epsilon: &BigRational,
    k_prime: u32,
) -> Result<TruncatedSeriesState, StatesError> {
    let config = basis.config();
    if config.order != 1 {
        return Err(StatesError::WrongOrder(config.order));
    }
    if omega.vector.dim() != basis.size() {
        return Err(StatesError::DimensionMismatch {
            state: omega.vector.dim(),
            basis: basis.size(),
        });
    }
    let k = omega.series_cutoff;
    if omega.truncation_edge != Some(2 * k) || omega.epsilon.is_some() {
        return Err(StatesError::NotAVacuumSeries(omega.label.clone()));
    }
    let needed = 2 * (k + k_prime);
    if needed > config.n_max {
        return Err(StatesError::CutoffTooSmall { needed, n_max: config.n_max });
    }
    let raise_14 = bilinear_raising(basis, 1, 4)?;
    let i_eps = &GaussianRational::i() * &GaussianRational::from_rational(epsilon.clone());

    let mut total = SparseVec::zero(basis.size());
    let mut term = omega.vector.clone();
    let mut coefficient = GaussianRational::one();
    for mu in 0..=k_prime {
        if mu > 0 {
            term = raise_14.apply(&term)?;
            let mu_sq = GaussianRational::from_int(i64::from(mu) * i64::from(mu));
            coefficient = &(&coefficient * &i_eps) / &mu_sq;
        }
        total = total.add(&term.scale(&coefficient))?;
    }

    let shell_support = support_shells(basis, &total);
    Ok(TruncatedSeriesState {
        label: format!("zeron(K={k},K'={k_prime},eps={epsilon})"),
        vector: total,
        series_cutoff: k + k_prime,
        truncation_edge: Some(needed),
        shell_support,
        epsilon: Some(i_eps),
    })
}

/// Neutrino candidate: one annihilator of the first sort applied to a zeron
/// (implemented verbatim from the displayed formula, which lowers).
///
/// The transverse momenta and the light-cone difference annihilate this
/// state on the interior, but the light-cone sum eigencondition fails:
/// commuting `P0 + P3` past the lowering operator leaves the extra term
/// `(b4+ - i b1)|zeron>`, whose amplitude on the single-quantum shell is
/// exactly `epsilon`. The violation is a property of the untruncated
/// series (the shell-1 component never cancels at any cutoff), so
/// [`particle_conditions`] reports it as a genuine interior residual
/// rather than a truncation artifact. No single lowering or raising
/// operator repairs it: each of the eight candidates breaks at least one
/// of the four conditions by an analogous commutator term.
pub fn neutrino(
    basis: &FockBasis,
    zeron_state: &TruncatedSeriesState,
) -> Result<TruncatedSeriesState, StatesError> {
    if zeron_state.vector.dim() != basis.size() {
        return Err(StatesError::DimensionMismatch {
            state: zeron_state.vector.dim(),
            basis: basis.size(),
        });
    }
    let lower = para_op(basis, 1, false)?;
    let vector = lower.apply(&zeron_state.vector)?;
    let shell_support = support_shells(basis, &vector);
    Ok(TruncatedSeriesState {
        label: format!("neutrino[{}]", zeron_state.label),
        vector,
        series_cutoff: zeron_state.series_cutoff,
        truncation_edge: zeron_state.truncation_edge.map(|e| e.saturating_sub(1)),
        shell_support,
        epsilon: zeron_state.epsilon.clone(),
    })
}

/// Residual component count for one shell.
#[derive(Debug, Clone, Serialize)]
pub struct ShellCount {
    pub n: u32,
    pub residual_component_count: usize,
}

/// One condition's residual, decomposed by shell.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionResidual {
    pub condition: String,
    pub shells: Vec<ShellCount>,
    pub interior_clean: bool,
    /// The constant `c` such that `G|s> - c|s>` is interior-clean: asserted
    /// for particle conditions, discovered for vacuum conditions, absent
    /// when no constant fits.
    pub recorded_constant: Option<GaussianRational>,
}

/// Shell-resolved invariance report for one state.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub state: String,
    pub config: ModeConfig,
    pub boundary_width: u32,
    /// Shells below this limit are interior; residual components there are
    /// genuine violations, not truncation artifacts.
    pub interior_limit: u32,
    pub conditions: Vec<ConditionResidual>,
    pub pass: bool,
}

fn shell_counts(basis: &FockBasis, v: &SparseVec) -> Vec<ShellCount> {
    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    for (k, _) in v.iter() {
        *histogram.entry(basis.state(k).total()).or_insert(0) += 1;
    }
    histogram
        .into_iter()
        .map(|(n, residual_component_count)| ShellCount { n, residual_component_count })
        .collect()
}

fn interior_is_clean(basis: &FockBasis, v: &SparseVec, limit: u32) -> bool {
    v.iter().all(|(k, _)| basis.state(k).total() >= limit)
}

fn interior_limit_for(state: &TruncatedSeriesState, basis: &FockBasis, width: u32) -> u32 {
    match state.truncation_edge {
        Some(edge) => edge.saturating_sub(width),
        None => basis.config().n_max + 1,
    }
}

/// Residual of `applied - c * state` for the first constant that leaves the
/// interior clean: tries `c = 0`, then the ratio at the first interior
/// component shared with the state.
fn discover_constant(
    basis: &FockBasis,
    applied: &SparseVec,
    state: &SparseVec,
    limit: u32,
) -> (SparseVec, Option<GaussianRational>) {
    if interior_is_clean(basis, applied, limit) {
        return (applied.clone(), Some(GaussianRational::zero()));
    }
    let candidate = applied.iter().find_map(|(k, value)| {
        if basis.state(k).total() >= limit {
            return None;
        }
        state.get(k).and_then(|s| value.checked_div(s).ok())
    });
    if let Some(c) = candidate {
        let residual = applied
            .sub(&state.scale(&c))
            .expect("dimensions already checked");
        if interior_is_clean(basis, &residual, limit) {
            return (residual, Some(c));
        }
    }
    (applied.clone(), None)
}

/// Checks all ten Poincare operators against annihilation or discovered
/// proportionality on the interior.
pub fn vacuum_conditions(
    state: &TruncatedSeriesState,
    poincare: &PoincareSet<'_>,
    boundary_width: u32,
) -> Result<ResidualReport, StatesError> {
    let basis = poincare.basis();
    if state.vector.dim() != basis.size() {
        return Err(StatesError::DimensionMismatch {
            state: state.vector.dim(),
            basis: basis.size(),
        });
    }
    let limit = interior_limit_for(state, basis, boundary_width);
    let mut conditions = Vec::new();
    for (label, op) in poincare.labeled() {
        let applied = op.apply(&state.vector)?;
        let (residual, constant) = discover_constant(basis, &applied, &state.vector, limit);
        let interior_clean = constant.is_some();
        conditions.push(ConditionResidual {
            condition: label.to_string(),
            shells: shell_counts(basis, &residual),
            interior_clean,
            recorded_constant: constant,
        });
    }
    let pass = conditions.iter().all(|c| c.interior_clean);
    Ok(ResidualReport {
        state: state.label.clone(),
        config: basis.config().clone(),
        boundary_width,
        interior_limit: limit,
        conditions,
        pass,
    })
}

/// Checks the displayed particle conditions: the two transverse momenta and
/// the light-cone difference annihilate, the light-cone sum has eigenvalue
/// `i * epsilon`.
pub fn particle_conditions(
    state: &TruncatedSeriesState,
    poincare: &PoincareSet<'_>,
    boundary_width: u32,
) -> Result<ResidualReport, StatesError> {
    let basis = poincare.basis();
    if state.vector.dim() != basis.size() {
        return Err(StatesError::DimensionMismatch {
            state: state.vector.dim(),
            basis: basis.size(),
        });
    }
    let Some(eigenvalue) = state.epsilon.clone() else {
        return Err(StatesError::NotAVacuumSeries(format!(
            "{} carries no epsilon; particle conditions need a zeron or neutrino",
            state.label
        )));
    };
    let limit = interior_limit_for(state, basis, boundary_width);
    let p0 = poincare.energy();
    let p3 = poincare.momentum(3);
    let checks: [(String, crate::sparse::SparseOp, GaussianRational); 4] = [
        ("P1".into(), poincare.momentum(1).clone(), GaussianRational::zero()),
        ("P2".into(), poincare.momentum(2).clone(), GaussianRational::zero()),
        ("P0-P3".into(), p0.sub(p3)?, GaussianRational::zero()),
        ("P0+P3".into(), p0.add(p3)?, eigenvalue),
    ];
    let mut conditions = Vec::new();
    for (label, op, constant) in checks {
        let applied = op.apply(&state.vector)?;
        let residual = applied.sub(&state.vector.scale(&constant))?;
        let interior_clean = interior_is_clean(basis, &residual, limit);
        conditions.push(ConditionResidual {
            condition: label,
            shells: shell_counts(basis, &residual),
            interior_clean,
            recorded_constant: Some(constant),
        });
    }
    let pass = conditions.iter().all(|c| c.interior_clean);
    Ok(ResidualReport {
        state: state.label.clone(),
        config: basis.config().clone(),
        boundary_width,
        interior_limit: limit,
        conditions,
        pass,
    })
}

/// Dispatches to the particle conditions when the state carries an epsilon,
/// and to the vacuum conditions otherwise.
pub fn check_invariance(
    state: &TruncatedSeriesState,
    poincare: &PoincareSet<'_>,
    boundary_width: u32,
) -> Result<ResidualReport, StatesError> {
    if state.epsilon.is_some() {
        particle_conditions(state, poincare, boundary_width)
    } else {
        vacuum_conditions(state, poincare, boundary_width)
    }
}
