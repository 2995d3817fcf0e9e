//! Dense brute-force reference engine.
//!
//! This is the oracle side of every dual-route check: operators are full
//! `dim x dim` matrices built from closed-form matrix elements (computed
//! directly from occupation vectors, not through the sparse builders),
//! products are naive triple loops, and applications scan every column.
//! It is deliberately slow and simple; the sparse engine must agree with it
//! exactly wherever both run.

use std::collections::BTreeMap;

use crate::fock::{FockBasis, OccVector};
use crate::scalar::GaussianRational;
use crate::sparse::{SparseOp, SparseVec};

/// Closed-form matrix element of a Green component between two basis states.
///
/// Raising: `<m + e_(r,a)| b+ |m> = sign * (m_(r,a) + 1)`; lowering:
/// `<m - e_(r,a)| b |m> = sign`, where `sign` is the parity of all earlier
/// component families in the source state.
pub fn green_entry(
    basis: &FockBasis,
    r: u32,
    alpha: u32,
    dagger: bool,
    row: usize,
    col: usize,
) -> GaussianRational {
    let config = basis.config();
    let mode = config.mode_index(r, alpha).expect("mode indices validated by caller");
    let from = basis.state(col);
    let to = basis.state(row);
    let delta: i64 = if dagger { 1 } else { -1 };
    if i64::from(to.0[mode]) - i64::from(from.0[mode]) != delta {
        return GaussianRational::zero();
    }
    for k in 0..from.0.len() {
        if k != mode && from.0[k] != to.0[k] {
            return GaussianRational::zero();
        }
    }
    let mut parity = 0u32;
    for beta in 1..alpha {
        parity += from.family_total(config, beta);
    }
    let sign = if parity % 2 == 0 { 1 } else { -1 };
    if dagger {
        GaussianRational::from_int(sign * (i64::from(from.0[mode]) + 1))
    } else {
        GaussianRational::from_int(sign)
    }
}

/// Closed-form matrix element of a parabose operator `a_r` / `a+_r`.
pub fn para_entry(basis: &FockBasis, r: u32, dagger: bool, row: usize, col: usize) -> GaussianRational {
    let mut sum = GaussianRational::zero();
    for alpha in 1..=basis.config().order {
        sum += &green_entry(basis, r, alpha, dagger, row, col);
    }
    sum
}

/// Closed-form matrix element of the sort number operator `n_r`.
pub fn number_entry(basis: &FockBasis, r: u32, row: usize, col: usize) -> GaussianRational {
    if row != col {
        return GaussianRational::zero();
    }
    GaussianRational::from_int(i64::from(basis.state(col).sort_total(basis.config(), r)))
}

/// Compares a sparse operator against a closed-form entry function over the
/// full `dim x dim` index square, zeros included.
pub fn compare_entrywise(
    op: &SparseOp,
    entry: impl Fn(usize, usize) -> GaussianRational,
) -> Result<(), EntryMismatch> {
    let dim = op.dim();
    let zero = GaussianRational::zero();
    for col in 0..dim {
        for row in 0..dim {
            let want = entry(row, col);
            let got = op.get(row, col).unwrap_or(&zero);
            if *got != want {
                return Err(EntryMismatch {
                    row,
                    col,
                    sparse: got.to_string(),
                    dense: want.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("entry ({row},{col}) differs: sparse {sparse}, dense {dense}")]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub sparse: String,
    pub dense: String,
}

/// Fully materialized dense operator, column-major.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseOp {
    dim: usize,
    data: Vec<GaussianRational>,
}

impl DenseOp {
    pub fn zero(dim: usize) -> Self {
        DenseOp { dim, data: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = DenseOp::zero(dim);
        for k in 0..dim {
            *out.at_mut(k, k) = GaussianRational::one();
        }
        out
    }

    pub fn from_fn(dim: usize, entry: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut out = DenseOp::zero(dim);
        for col in 0..dim {
            for row in 0..dim {
                *out.at_mut(row, col) = entry(row, col);
            }
        }
        out
    }

    pub fn from_sparse(op: &SparseOp) -> Self {
        let mut out = DenseOp::zero(op.dim());
        for (col, column) in op.columns() {
            for (&row, v) in column {
                *out.at_mut(row, col) = v.clone();
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> &GaussianRational {
        &self.data[col * self.dim + row]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut GaussianRational {
        &mut self.data[col * self.dim + row]
    }

    /// Naive `self * other` (apply `other` first); full triple loop.
    pub fn matmul(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dense dimension mismatch");
        let dim = self.dim;
        let mut out = DenseOp::zero(dim);
        for col in 0..dim {
            for mid in 0..dim {
                let x = other.at(mid, col);
                if x.is_zero() {
                    continue;
                }
                for row in 0..dim {
                    let a = self.at(row, mid);
                    if a.is_zero() {
                        continue;
                    }
                    let product = a * x;
                    *out.at_mut(row, col) += &product;
                }
            }
        }
        out
    }

    /// Full-scan matrix-vector product on a dense vector.
    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.dim, v.len(), "dense dimension mismatch");
        let mut out = vec![GaussianRational::zero(); self.dim];
        for col in 0..self.dim {
            let x = &v[col];
            if x.is_zero() {
                continue;
            }
            for row in 0..self.dim {
                let a = self.at(row, col);
                if a.is_zero() {
                    continue;
                }
                out[row] += &(a * x);
            }
        }
        out
    }

    pub fn add(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dense dimension mismatch");
        let mut out = self.clone();
        for (slot, v) in out.data.iter_mut().zip(&other.data) {
            *slot += v;
        }
        out
    }

    pub fn sub(&self, other: &DenseOp) -> DenseOp {
        assert_eq!(self.dim, other.dim, "dense dimension mismatch");
        let mut out = self.clone();
        for (slot, v) in out.data.iter_mut().zip(&other.data) {
            *slot -= v;
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> DenseOp {
        let mut out = DenseOp::zero(self.dim);
        for (slot, v) in out.data.iter_mut().zip(&self.data) {
            *slot = c * v;
        }
        out
    }

    /// `[a, b]` or `{a, b}` through full dense products.
    pub fn commutator(a: &DenseOp, b: &DenseOp, anti: bool) -> DenseOp {
        let ab = a.matmul(b);
        let ba = b.matmul(a);
        if anti {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Entrywise comparison against a sparse operator, zeros included.
    pub fn matches_sparse(&self, op: &SparseOp) -> Result<(), EntryMismatch> {
        assert_eq!(self.dim, op.dim(), "dense dimension mismatch");
        compare_entrywise(op, |row, col| self.at(row, col).clone())
    }
}

impl std::fmt::Debug for DenseOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseOp(dim={})", self.dim)
    }
}

/// Dense Green component matrix from the closed-form entries.
pub fn dense_green(basis: &FockBasis, r: u32, alpha: u32, dagger: bool) -> DenseOp {
    DenseOp::from_fn(basis.size(), |row, col| green_entry(basis, r, alpha, dagger, row, col))
}

/// Dense parabose operator matrix from the closed-form entries.
pub fn dense_para(basis: &FockBasis, r: u32, dagger: bool) -> DenseOp {
    DenseOp::from_fn(basis.size(), |row, col| para_entry(basis, r, dagger, row, col))
}

/// Dense symmetrized bilinear `(1/2){x, y}` built by dense products.
pub fn dense_bilinear(x: &DenseOp, y: &DenseOp) -> DenseOp {
    DenseOp::commutator(x, y, true).scale(&GaussianRational::from_ratio(1, 2))
}

/// Dense vector for one basis state.
pub fn dense_basis_vector(dim: usize, index: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); dim];
    v[index] = GaussianRational::one();
    v
}

pub fn dense_from_sparse_vec(v: &SparseVec) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); v.dim()];
    for (k, value) in v.iter() {
        out[k] = value.clone();
    }
    out
}

pub fn dense_vec_equals_sparse(dense: &[GaussianRational], sparse: &SparseVec) -> bool {
    dense.len() == sparse.dim()
        && dense.iter().enumerate().all(|(k, v)| match sparse.get(k) {
            Some(w) => v == w,
            None => v.is_zero(),
        })
}

/// Matrix-free apply: evaluates the closed-form entry at every row of each
/// nonzero column, contracting against `v` without materializing the matrix.
pub fn apply_entry_fn(
    dim: usize,
    entry: impl Fn(usize, usize) -> GaussianRational,
    v: &[GaussianRational],
) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); dim];
    for (col, value) in v.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        for (row, slot) in out.iter_mut().enumerate() {
            let e = entry(row, col);
            if !e.is_zero() {
                *slot = &*slot + &(&e * value);
            }
        }
    }
    out
}

/// Exact rank of dense vectors by full Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<GaussianRational>>) -> usize {
    let mut rank = 0usize;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot nonzero");
        for v in rows[rank].iter_mut() {
            *v = &*v * &inv;
        }
        let lead = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&lead) {
                    *v -= &(&factor * p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact coordinates of a dense target in the span of dense operators,
/// constrained on every row of the given columns (zeros included).
pub fn dense_solve_span(
    target: &DenseOp,
    ops: &[&DenseOp],
    cols: &[usize],
) -> Option<Vec<GaussianRational>> {
    let n = ops.len();
    let dim = target.dim();
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity(cols.len() * dim);
    for &col in cols {
        for row in 0..dim {
            let mut eq: Vec<GaussianRational> = Vec::with_capacity(n + 1);
            for op in ops {
                eq.push(op.at(row, col).clone());
            }
            eq.push(target.at(row, col).clone());
            if eq.iter().all(GaussianRational::is_zero) {
                continue;
            }
            rows.push(eq);
        }
    }
    let mut coeffs = vec![GaussianRational::zero(); n];
    let mut next = 0usize;
    let mut pivot_of: Vec<Option<usize>> = vec![None; n];
    for unknown in 0..n {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][unknown].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][unknown].inv().expect("pivot nonzero");
        for v in rows[next].iter_mut() {
            *v = &*v * &inv;
        }
        let lead = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[unknown].is_zero() {
                let factor = row[unknown].clone();
                for (v, p) in row.iter_mut().zip(&lead) {
                    *v -= &(&factor * p);
                }
            }
        }
        pivot_of[unknown] = Some(next);
        next += 1;
    }
    if rows.iter().skip(next).any(|row| !row[n].is_zero()) {
        return None;
    }
    for (unknown, pivot) in pivot_of.iter().enumerate() {
        if let Some(r) = pivot {
            coeffs[unknown] = rows[*r][n].clone();
        }
    }
    Some(coeffs)
}

/// Looks up a basis state's index from raw occupation numbers.
pub fn occ_index(basis: &FockBasis, occ: &[u32]) -> Option<usize> {
    basis.index_of(&OccVector(occ.to_vec()))
}

/// Sparse columns of a dense operator (for feeding dense results into the
/// sparse span solver when cross-checking).
pub fn dense_columns(op: &DenseOp) -> BTreeMap<usize, BTreeMap<usize, GaussianRational>> {
    let mut out = BTreeMap::new();
    for col in 0..op.dim() {
        let mut column = BTreeMap::new();
        for row in 0..op.dim() {
            let v = op.at(row, col);
            if !v.is_zero() {
                column.insert(row, v.clone());
            }
        }
        if !column.is_empty() {
            out.insert(col, column);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{
        bilinear_mixed, bilinear_raising, green_op, monomial_state, para_op, FockBasis, ModeConfig,
    };
    use crate::scalar::GaussianRational as G;
    use crate::word::Word;

    fn basis(sorts: u32, order: u32, n_max: u32) -> FockBasis {
        FockBasis::build(ModeConfig::new(sorts, order, n_max).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn sparse_green_ops_match_closed_form_entries() {
        for (sorts, order, n_max) in [(2u32, 1u32, 4u32), (2, 2, 4), (4, 1, 3), (3, 2, 3)] {
            let b = basis(sorts, order, n_max);
            for r in 1..=sorts {
                for alpha in 1..=order {
                    for dagger in [false, true] {
                        let op = green_op(&b, r, alpha, dagger).unwrap();
                        compare_entrywise(&op, |row, col| {
                            green_entry(&b, r, alpha, dagger, row, col)
                        })
                        .unwrap_or_else(|e| panic!("R={sorts} p={order} r={r} a={alpha}: {e}"));
                    }
                }
            }
        }
    }

    #[test]
    fn dense_products_match_sparse_bilinears() {
        let b = basis(2, 2, 4);
        for r in 1..=2 {
            for s in 1..=2 {
                let dense =
                    dense_bilinear(&dense_para(&b, r, true), &dense_para(&b, s, false));
                let sparse = bilinear_mixed(&b, r, s).unwrap();
                dense.matches_sparse(&sparse).unwrap();
            }
        }
        let dense = dense_bilinear(&dense_para(&b, 1, true), &dense_para(&b, 2, true));
        dense.matches_sparse(&bilinear_raising(&b, 1, 2).unwrap()).unwrap();
    }

    #[test]
    fn dense_commutator_matches_sparse() {
        let b = basis(2, 2, 4);
        let a1 = para_op(&b, 1, false).unwrap();
        let a2d = para_op(&b, 2, true).unwrap();
        let sparse = crate::sparse::commutator(&a1, &a2d, false).unwrap();
        let dense = DenseOp::commutator(&dense_para(&b, 1, false), &dense_para(&b, 2, true), false);
        dense.matches_sparse(&sparse).unwrap();
    }

    #[test]
    fn dense_application_matches_sparse_monomials() {
        let b = basis(2, 2, 5);
        for word in [vec![1], vec![1, 2], vec![1, 2, 1], vec![2, 1, 1]] {
            let sparse = monomial_state(&b, &Word::new(word.clone())).unwrap();
            let mut dense = dense_basis_vector(b.size(), b.vacuum_index());
            for &letter in word.iter().rev() {
                dense = dense_para(&b, u32::from(letter), true).apply(&dense);
            }
            assert!(dense_vec_equals_sparse(&dense, &sparse), "word {word:?}");
        }
    }

    #[test]
    fn dense_rank_sees_dependence() {
        let one = G::one;
        let rows = vec![
            vec![one(), G::zero(), one()],
            vec![G::zero(), one(), one()],
            vec![one(), one(), &one() + &one()],
        ];
        assert_eq!(dense_rank(rows), 2);
    }

    #[test]
    fn dense_solve_span_recovers_combination() {
        let b = basis(2, 1, 2);
        let id = DenseOp::identity(b.size());
        let x = dense_para(&b, 1, true);
        let target = x.scale(&G::from_ratio(2, 3)).add(&id.scale(&-G::i()));
        let cols: Vec<usize> = (0..b.size()).collect();
        let got = dense_solve_span(&target, &[&id, &x], &cols).unwrap();
        assert_eq!(got, vec![-G::i(), G::from_ratio(2, 3)]);
    }

    #[test]
    fn dense_solve_span_rejects_outside_target() {
        let b = basis(2, 1, 2);
        let id = DenseOp::identity(b.size());
        let x = dense_para(&b, 1, true);
        let y = dense_para(&b, 2, true);
        let cols: Vec<usize> = (0..b.size()).collect();
        assert!(dense_solve_span(&y, &[&id, &x], &cols).is_none());
    }

    #[test]
    fn matrix_free_apply_matches_materialized_dense() {
        let b = basis(2, 2, 4);
        let op = dense_green(&b, 2, 1, true);
        let sparse = monomial_state(&b, &Word::new(vec![1, 2])).unwrap();
        let v = dense_from_sparse_vec(&sparse);
        let via_fn = apply_entry_fn(b.size(), |row, col| green_entry(&b, 2, 1, true, row, col), &v);
        assert_eq!(via_fn, op.apply(&v));
    }
}
