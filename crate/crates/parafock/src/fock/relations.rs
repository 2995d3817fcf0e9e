//! Relation verification on interior columns, and exact span ranks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::GaussianRational;
use crate::sparse::{sparse_rank, SparseOp, SparseVec};
use crate::word::{distinct_permutations, Word};

use super::basis::{FockBasis, FockError, ModeConfig};
use super::ops::{
    bilinear_lowering, bilinear_mixed, bilinear_raising, green_op, monomial_state, number_op,
    para_op, vacuum,
};

/// One offending matrix element of a failed relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// Outcome of one relation, checked exactly on every interior column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub id: String,
    pub pass: bool,
    /// Largest-magnitude offending entry (ties broken by position).
    pub worst: Option<OffendingEntry>,
}

/// Report for the full defining-relation suite of one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub config: ModeConfig,
    pub depth: u32,
    pub interior_columns: usize,
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

/// A product of operators applied right to left, with a scalar weight.
type Term<'a> = (GaussianRational, Vec<&'a SparseOp>);

fn eval_terms(terms: &[Term<'_>], dim: usize, col: usize) -> SparseVec {
    let mut acc = SparseVec::zero(dim);
    for (weight, ops) in terms {
        if weight.is_zero() {
            continue;
        }
        let mut v = SparseVec::basis_vector(dim, col).expect("interior column in range");
        for op in ops.iter().rev() {
            v = op.apply(&v).expect("ops share the basis");
        }
        acc.add_scaled(weight, &v);
    }
    acc
}

fn check_terms(id: String, terms: &[Term<'_>], dim: usize, interior: &[usize]) -> RelationCheck {
    let mut worst: Option<(usize, usize, GaussianRational)> = None;
    for &col in interior {
        let residual = eval_terms(terms, dim, col);
        for (row, value) in residual.iter() {
            let better = match &worst {
                None => true,
                Some((_, _, current)) => value.magnitude_proxy() > current.magnitude_proxy(),
            };
            if better {
                worst = Some((row, col, value.clone()));
            }
        }
    }
    RelationCheck {
        id,
        pass: worst.is_none(),
        worst: worst.map(|(row, col, value)| OffendingEntry {
            row,
            col,
            value: value.to_string(),
        }),
    }
}

fn check_vector(id: String, got: &SparseVec, want: &SparseVec) -> RelationCheck {
    let diff = got.sub(want).expect("vectors share the basis");
    let worst = diff
        .iter()
        .max_by(|a, b| {
            a.1.magnitude_proxy()
                .cmp(&b.1.magnitude_proxy())
                .then_with(|| b.0.cmp(&a.0))
        })
        .map(|(row, value)| OffendingEntry { row, col: 0, value: value.to_string() });
    RelationCheck { id, pass: diff.is_zero(), worst }
}

/// Verifies the defining relations of the Green decomposition on interior
/// columns: bosonic ladder relations inside each component family,
/// anticommutation across families, the trilinear relations, the number-
/// operator identity, and the vacuum conditions.
pub fn verify_green_relations(basis: &FockBasis, depth: u32) -> Result<RelationReport, FockError> {
    let config = *basis.config();
    let interior = basis.interior_columns(depth)?;
    let dim = basis.size();
    let (sorts, order) = (config.sorts, config.order);

    let mut greens: BTreeMap<(u32, u32, bool), SparseOp> = BTreeMap::new();
    for r in 1..=sorts {
        for alpha in 1..=order {
            for dagger in [false, true] {
                greens.insert((r, alpha, dagger), green_op(basis, r, alpha, dagger)?);
            }
        }
    }
    let mut paras: BTreeMap<(u32, bool), SparseOp> = BTreeMap::new();
    for r in 1..=sorts {
        for dagger in [false, true] {
            paras.insert((r, dagger), para_op(basis, r, dagger)?);
        }
    }
    let mut taus: BTreeMap<(u32, u32), SparseOp> = BTreeMap::new();
    let mut lowers: BTreeMap<(u32, u32), SparseOp> = BTreeMap::new();
    let mut raisers: BTreeMap<(u32, u32), SparseOp> = BTreeMap::new();
    for s in 1..=sorts {
        for t in 1..=sorts {
            taus.insert((s, t), bilinear_mixed(basis, s, t)?);
            if s <= t {
                lowers.insert((s, t), bilinear_lowering(basis, s, t)?);
                raisers.insert((s, t), bilinear_raising(basis, s, t)?);
            }
        }
    }
    let identity = SparseOp::identity(basis.grades());
    let one = GaussianRational::one();
    let minus = -GaussianRational::one();

    let mut checks = Vec::new();

    // Same-family ladder relations: each Green component family is bosonic.
    for alpha in 1..=order {
        for r in 1..=sorts {
            for s in 1..=sorts {
                let b_r = &greens[&(r, alpha, false)];
                let b_s_dag = &greens[&(s, alpha, true)];
                let delta = if r == s { minus.clone() } else { GaussianRational::zero() };
                let terms: Vec<Term> = vec![
                    (one.clone(), vec![b_r, b_s_dag]),
                    (minus.clone(), vec![b_s_dag, b_r]),
                    (delta, vec![&identity]),
                ];
                checks.push(check_terms(
                    format!("[b_{r}^({alpha}), b+_{s}^({alpha})] = delta_{r}{s}"),
                    &terms,
                    dim,
                    &interior,
                ));
            }
        }
        for r in 1..=sorts {
            for s in r..=sorts {
                for dagger in [false, true] {
                    let x = &greens[&(r, alpha, dagger)];
                    let y = &greens[&(s, alpha, dagger)];
                    let terms: Vec<Term> =
                        vec![(one.clone(), vec![x, y]), (minus.clone(), vec![y, x])];
                    let tag = if dagger { "b+" } else { "b" };
                    checks.push(check_terms(
                        format!("[{tag}_{r}^({alpha}), {tag}_{s}^({alpha})] = 0"),
                        &terms,
                        dim,
                        &interior,
                    ));
                }
            }
        }
    }

    // Cross-family anticommutation.
    for alpha in 1..=order {
        for beta in 1..=order {
            if alpha == beta {
                continue;
            }
            for r in 1..=sorts {
                for s in 1..=sorts {
                    let x = &greens[&(r, alpha, false)];
                    let y = &greens[&(s, beta, true)];
                    let terms: Vec<Term> =
                        vec![(one.clone(), vec![x, y]), (one.clone(), vec![y, x])];
                    checks.push(check_terms(
                        format!("{{b_{r}^({alpha}), b+_{s}^({beta})}} = 0"),
                        &terms,
                        dim,
                        &interior,
                    ));
                }
            }
            if alpha < beta {
                for r in 1..=sorts {
                    for s in 1..=sorts {
                        for dagger in [false, true] {
                            let x = &greens[&(r, alpha, dagger)];
                            let y = &greens[&(s, beta, dagger)];
                            let terms: Vec<Term> =
                                vec![(one.clone(), vec![x, y]), (one.clone(), vec![y, x])];
                            let tag = if dagger { "b+" } else { "b" };
                            checks.push(check_terms(
                                format!("{{{tag}_{r}^({alpha}), {tag}_{s}^({beta})}} = 0"),
                                &terms,
                                dim,
                                &interior,
                            ));
                        }
                    }
                }
            }
        }
    }

    // Trilinear relations for the parabose operators.
    for r in 1..=sorts {
        for s in 1..=sorts {
            for t in 1..=sorts {
                let a_r = &paras[&(r, false)];
                let tau = &taus[&(s, t)];
                let a_t = &paras[&(t, false)];
                let delta = if r == s { minus.clone() } else { GaussianRational::zero() };
                let terms: Vec<Term> = vec![
                    (one.clone(), vec![a_r, tau]),
                    (minus.clone(), vec![tau, a_r]),
                    (delta, vec![a_t]),
                ];
                checks.push(check_terms(
                    format!("[a_{r}, tau_{s}{t}] = delta_{r}{s} a_{t}"),
                    &terms,
                    dim,
                    &interior,
                ));
            }
            for t in s..=sorts {
                let a_r = &paras[&(r, false)];
                let low = &lowers[&(s, t)];
                let terms: Vec<Term> =
                    vec![(one.clone(), vec![a_r, low]), (minus.clone(), vec![low, a_r])];
                checks.push(check_terms(
                    format!("[a_{r}, alpha_{s}{t}] = 0"),
                    &terms,
                    dim,
                    &interior,
                ));
                let a_r_dag = &paras[&(r, true)];
                let high = &raisers[&(s, t)];
                let terms: Vec<Term> =
                    vec![(one.clone(), vec![a_r_dag, high]), (minus.clone(), vec![high, a_r_dag])];
                checks.push(check_terms(
                    format!("[a+_{r}, alpha+_{s}{t}] = 0"),
                    &terms,
                    dim,
                    &interior,
                ));
            }
        }
    }

    // Number operators: n_r = tau_rr - p/2 on interior columns.
    for r in 1..=sorts {
        let n_r = number_op(basis, r)?;
        let tau_rr = &taus[&(r, r)];
        let half_order = GaussianRational::from_ratio(i64::from(order), 2);
        let terms: Vec<Term> = vec![
            (one.clone(), vec![&n_r]),
            (minus.clone(), vec![tau_rr]),
            (half_order, vec![&identity]),
        ];
        checks.push(check_terms(format!("n_{r} = tau_{r}{r} - p/2"), &terms, dim, &interior));
    }

    // Vacuum conditions.
    let omega = vacuum(basis);
    let zero_vec = SparseVec::zero(dim);
    for r in 1..=sorts {
        for alpha in 1..=order {
            let got = greens[&(r, alpha, false)].apply(&omega)?;
            checks.push(check_vector(
                format!("b_{r}^({alpha}) |vac> = 0"),
                &got,
                &zero_vec,
            ));
        }
    }
    for r in 1..=sorts {
        for s in 1..=sorts {
            let raised = paras[&(s, true)].apply(&omega)?;
            let got = paras[&(r, false)].apply(&raised)?;
            let want = if r == s {
                omega.scale(&GaussianRational::from_int(i64::from(order)))
            } else {
                zero_vec.clone()
            };
            checks.push(check_vector(
                format!("a_{r} a+_{s} |vac> = p delta_{r}{s} |vac>"),
                &got,
                &want,
            ));
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(RelationReport { config, depth, interior_columns: interior.len(), checks, pass })
}

/// Exact dimension of the span of all monomial states whose words are
/// rearrangements of `content`.
pub fn physical_span(basis: &FockBasis, content: &[u8]) -> Result<usize, FockError> {
    let words = distinct_permutations(content);
    let mut states = Vec::with_capacity(words.len());
    for word in &words {
        states.push(monomial_state(basis, word)?);
    }
    Ok(sparse_rank(states))
}

/// The reference mixed combination `2|121> - |112> - |211>` built from
/// monomial states, exactly as a vector.
pub fn mixed_monomial_combination(basis: &FockBasis) -> Result<SparseVec, FockError> {
    let two = monomial_state(basis, &Word::new(vec![1, 2, 1]))?.scale(&GaussianRational::from_int(2));
    let a = monomial_state(basis, &Word::new(vec![1, 1, 2]))?;
    let b = monomial_state(basis, &Word::new(vec![2, 1, 1]))?;
    Ok(two.sub(&a)?.sub(&b)?)
}
