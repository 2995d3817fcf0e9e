//! Operator builders on a truncated parabose Fock basis.
//!
//! Green components of different families must anticommute while each family
//! stays bosonic. On the occupation basis this is realized with Klein sign
//! factors: component `alpha` acts through the parity of all earlier
//! families, `(-1)^(N_1 + ... + N_{alpha-1})`, evaluated on the source state.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::scalar::GaussianRational;
use crate::sparse::{SparseOp, SparseVec};
use crate::word::Word;

use super::basis::{FockBasis, FockError, OccVector};

fn klein_sign(basis: &FockBasis, state: &OccVector, alpha: u32) -> i64 {
    let mut parity = 0u32;
    for beta in 1..alpha {
        parity += state.family_total(basis.config(), beta);
    }
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Green component `b_{r}^{(alpha)}` (or its raising partner with `dagger`).
pub fn green_op(basis: &FockBasis, r: u32, alpha: u32, dagger: bool) -> Result<SparseOp, FockError> {
    let config = *basis.config();
    let mode = config.mode_index(r, alpha)?;
    let shift = if dagger { 1 } else { -1 };
    let mut op = SparseOp::zero(basis.grades(), [shift]);
    for col in 0..basis.size() {
        let state = basis.state(col);
        let sign = klein_sign(basis, state, alpha);
        if dagger {
            if state.total() + 1 > config.n_max {
                continue;
            }
            let mut target = state.clone();
            target.0[mode] += 1;
            let row = basis.index_of(&target).expect("raised state is enumerated");
            let weight = GaussianRational::from_int(sign * (i64::from(state.0[mode]) + 1));
            op.insert(row, col, weight)?;
        } else {
            if state.0[mode] == 0 {
                continue;
            }
            let mut target = state.clone();
            target.0[mode] -= 1;
            let row = basis.index_of(&target).expect("lowered state is enumerated");
            op.insert(row, col, GaussianRational::from_int(sign))?;
        }
    }
    Ok(op)
}

/// Parabose operator `a_r = sum_alpha b_r^(alpha)` (raising with `dagger`).
pub fn para_op(basis: &FockBasis, r: u32, dagger: bool) -> Result<SparseOp, FockError> {
    let order = basis.config().order;
    let mut op = green_op(basis, r, 1, dagger)?;
    for alpha in 2..=order {
        op = op.add(&green_op(basis, r, alpha, dagger)?)?;
    }
    Ok(op)
}

fn symmetrized_product(x: &SparseOp, y: &SparseOp) -> Result<SparseOp, FockError> {
    let sum = x.compose(y)?.add(&y.compose(x)?)?;
    Ok(sum.scale(&GaussianRational::from_ratio(1, 2)))
}

/// Lowering bilinear `alpha_rs = (1/2){a_r, a_s}`; grade shift -2.
pub fn bilinear_lowering(basis: &FockBasis, r: u32, s: u32) -> Result<SparseOp, FockError> {
    symmetrized_product(&para_op(basis, r, false)?, &para_op(basis, s, false)?)
}

/// Raising bilinear `alpha+_rs = (1/2){a+_r, a+_s}`; grade shift +2.
pub fn bilinear_raising(basis: &FockBasis, r: u32, s: u32) -> Result<SparseOp, FockError> {
    symmetrized_product(&para_op(basis, r, true)?, &para_op(basis, s, true)?)
}

/// Mixed bilinear `tau_rs = (1/2){a+_r, a_s}`; grade shift 0.
pub fn bilinear_mixed(basis: &FockBasis, r: u32, s: u32) -> Result<SparseOp, FockError> {
    symmetrized_product(&para_op(basis, r, true)?, &para_op(basis, s, false)?)
}

/// Sort number operator `n_r`, built directly as an exact diagonal.
///
/// The identity `n_r = tau_rr - p/2` holds on interior columns and is checked
/// by the relation suite; composing it would corrupt the boundary shell,
/// while the diagonal form is exact everywhere.
pub fn number_op(basis: &FockBasis, r: u32) -> Result<SparseOp, FockError> {
    let config = *basis.config();
    config.mode_index(r, 1)?;
    Ok(SparseOp::diagonal(basis.grades(), |i| {
        GaussianRational::from_int(i64::from(basis.state(i).sort_total(&config, r)))
    }))
}

/// Total number operator `n`; diagonal with eigenvalue `sum occ`.
pub fn total_number_op(basis: &FockBasis) -> SparseOp {
    SparseOp::diagonal(basis.grades(), |i| GaussianRational::from_int(i64::from(basis.grade(i))))
}

/// The Fock vacuum `|Omega>`.
pub fn vacuum(basis: &FockBasis) -> SparseVec {
    SparseVec::basis_vector(basis.size(), basis.vacuum_index()).expect("vacuum is state 0")
}

/// Monomial state `a+_{r1} ... a+_{rn} |Omega>`, applied right to left.
pub fn monomial_state(basis: &FockBasis, word: &Word) -> Result<SparseVec, FockError> {
    let config = basis.config();
    if word.len() > config.n_max as usize {
        return Err(FockError::WordTooLong { len: word.len(), n_max: config.n_max });
    }
    for &letter in word.letters() {
        if letter == 0 || u32::from(letter) > config.sorts {
            return Err(FockError::LetterOutOfRange { letter, sorts: config.sorts });
        }
    }
    let mut state = vacuum(basis);
    for &letter in word.letters().iter().rev() {
        let op = para_op(basis, u32::from(letter), true)?;
        state = op.apply(&state)?;
    }
    Ok(state)
}

/// Exact linear combination of monomial states.
pub fn monomial_combination<'a>(
    basis: &FockBasis,
    terms: impl IntoIterator<Item = (&'a Word, &'a BigRational)>,
) -> Result<SparseVec, FockError> {
    let mut out = SparseVec::zero(basis.size());
    for (word, coeff) in terms {
        let state = monomial_state(basis, word)?;
        out.add_scaled(&GaussianRational::from_rational(coeff.clone()), &state);
    }
    Ok(out)
}

#[allow(dead_code)]
fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeConfig;
    use crate::scalar::GaussianRational as G;
    use crate::sparse::commutator;

    fn basis(sorts: u32, order: u32, n_max: u32) -> FockBasis {
        FockBasis::build(ModeConfig::new(sorts, order, n_max).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn annihilator_kills_the_vacuum() {
        let b = basis(2, 1, 3);
        let lower = green_op(&b, 1, 1, false).unwrap();
        assert!(lower.apply(&vacuum(&b)).unwrap().is_zero());
    }

    #[test]
    fn creator_makes_unit_one_ur_state() {
        let b = basis(2, 1, 3);
        let raise = para_op(&b, 1, true).unwrap();
        let one_ur = raise.apply(&vacuum(&b)).unwrap();
        let mut occ = OccVector::zero(2);
        occ.0[0] = 1;
        let idx = b.index_of(&occ).unwrap();
        assert_eq!(one_ur.len(), 1);
        assert_eq!(one_ur.get(idx), Some(&G::one()));
    }

    #[test]
    fn ladder_weights_are_integers() {
        // b+|m> = (m+1)|m+1> on a single bosonic mode.
        let b = basis(1, 1, 4);
        let raise = green_op(&b, 1, 1, true).unwrap();
        for m in 0..4u32 {
            let col = b.index_of(&OccVector(vec![m])).unwrap();
            let row = b.index_of(&OccVector(vec![m + 1])).unwrap();
            assert_eq!(raise.get(row, col), Some(&G::from_int(i64::from(m) + 1)));
        }
    }

    #[test]
    fn same_family_ladder_commutator_is_identity_on_interior() {
        for (sorts, order) in [(2, 1), (2, 2)] {
            let b = basis(sorts, order, 6);
            let lower = green_op(&b, 1, 1, false).unwrap();
            let raise = green_op(&b, 1, 1, true).unwrap();
            let c = commutator(&lower, &raise, false).unwrap();
            for col in b.interior_columns(2).unwrap() {
                let e = SparseVec::basis_vector(b.size(), col).unwrap();
                assert_eq!(c.apply(&e).unwrap(), e, "{sorts},{order} col {col}");
            }
        }
    }

    #[test]
    fn cross_family_components_anticommute() {
        let b = basis(2, 2, 5);
        let x = green_op(&b, 1, 1, false).unwrap();
        let y_dag = green_op(&b, 2, 2, true).unwrap();
        let anti = commutator(&x, &y_dag, true).unwrap();
        for col in b.interior_columns(2).unwrap() {
            assert!(anti.column(col).is_none(), "column {col} should vanish");
        }
    }

    #[test]
    fn order_one_para_equals_green() {
        let b = basis(2, 1, 4);
        for r in 1..=2 {
            for dagger in [false, true] {
                let a = para_op(&b, r, dagger).unwrap();
                let g = green_op(&b, r, 1, dagger).unwrap();
                assert!(a.same_matrix(&g));
            }
        }
    }

    #[test]
    fn vacuum_pairing_counts_the_order() {
        for order in [1u32, 2, 3] {
            let b = basis(2, order, 4);
            let omega = vacuum(&b);
            for r in 1..=2 {
                for s in 1..=2 {
                    let raise = para_op(&b, s, true).unwrap();
                    let lower = para_op(&b, r, false).unwrap();
                    let paired = lower.apply(&raise.apply(&omega).unwrap()).unwrap();
                    let expect = if r == s {
                        omega.scale(&G::from_int(i64::from(order)))
                    } else {
                        SparseVec::zero(b.size())
                    };
                    assert_eq!(paired, expect, "p={order} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn bilinears_are_symmetric_in_their_indices() {
        let b = basis(2, 2, 5);
        assert!(bilinear_lowering(&b, 1, 2)
            .unwrap()
            .same_matrix(&bilinear_lowering(&b, 2, 1).unwrap()));
        assert!(bilinear_raising(&b, 1, 2)
            .unwrap()
            .same_matrix(&bilinear_raising(&b, 2, 1).unwrap()));
    }

    #[test]
    fn mixed_bilinear_gives_half_order_on_vacuum() {
        for order in [1u32, 2] {
            let b = basis(2, order, 4);
            let tau = bilinear_mixed(&b, 1, 1).unwrap();
            let got = tau.apply(&vacuum(&b)).unwrap();
            assert_eq!(got, vacuum(&b).scale(&G::from_ratio(i64::from(order), 2)));
        }
    }

    #[test]
    fn raising_bilinear_on_vacuum_is_a_two_ur_state() {
        let b = basis(4, 1, 4);
        let two = bilinear_raising(&b, 1, 4).unwrap().apply(&vacuum(&b)).unwrap();
        let occ = OccVector(vec![1, 0, 0, 1]);
        let idx = b.index_of(&occ).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two.get(idx), Some(&G::one()));
    }

    #[test]
    fn number_operators_are_exact_diagonals() {
        let b = basis(2, 2, 4);
        let n = total_number_op(&b);
        let n1 = number_op(&b, 1).unwrap();
        for i in 0..b.size() {
            let e = SparseVec::basis_vector(b.size(), i).unwrap();
            let total = G::from_int(i64::from(b.grade(i)));
            assert_eq!(n.apply(&e).unwrap(), e.scale(&total));
            let sort1 = G::from_int(i64::from(b.state(i).sort_total(b.config(), 1)));
            assert_eq!(n1.apply(&e).unwrap(), e.scale(&sort1));
        }
    }

    #[test]
    fn one_ur_states_have_unit_sort_number() {
        for order in [1u32, 2] {
            let b = basis(2, order, 3);
            let one = para_op(&b, 1, true).unwrap().apply(&vacuum(&b)).unwrap();
            let n1 = number_op(&b, 1).unwrap();
            assert_eq!(n1.apply(&one).unwrap(), one, "p={order}");
        }
    }

    #[test]
    fn empty_monomial_is_the_vacuum() {
        let b = basis(2, 1, 3);
        assert_eq!(monomial_state(&b, &Word::new(vec![])).unwrap(), vacuum(&b));
    }

    #[test]
    fn monomial_rejects_bad_words() {
        let b = basis(2, 1, 3);
        assert_eq!(
            monomial_state(&b, &Word::new(vec![3])),
            Err(FockError::LetterOutOfRange { letter: 3, sorts: 2 })
        );
        assert_eq!(
            monomial_state(&b, &Word::new(vec![1, 1, 2, 2])),
            Err(FockError::WordTooLong { len: 4, n_max: 3 })
        );
    }

    #[test]
    fn order_one_monomials_only_see_content() {
        let b = basis(2, 1, 4);
        let w121 = monomial_state(&b, &Word::new(vec![1, 2, 1])).unwrap();
        let w211 = monomial_state(&b, &Word::new(vec![2, 1, 1])).unwrap();
        assert_eq!(w121, w211);
    }

    #[test]
    fn order_two_monomials_distinguish_order() {
        let b = basis(2, 2, 4);
        let w121 = monomial_state(&b, &Word::new(vec![1, 2, 1])).unwrap();
        let w211 = monomial_state(&b, &Word::new(vec![2, 1, 1])).unwrap();
        assert_ne!(w121, w211);
    }
}
