//! Sparse exact linear algebra with ur-number grading.
//!
//! Vectors are maps from basis index to nonzero scalar; operators are maps
//! from column index to sparse columns. Every operator carries the basis
//! grade vector (total ur number per basis state) and a set of allowed grade
//! shifts; inserting an entry whose `grade(row) - grade(col)` is outside the
//! declared set is rejected. Composition adds shift sets pairwise, so grading
//! soundness is preserved structurally through products and commutators.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::scalar::GaussianRational;

/// Sparse column: basis index -> nonzero coefficient.
pub type Entries = BTreeMap<usize, GaussianRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SparseError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("grade vectors disagree: operators built over different bases")]
    BasisMismatch,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error(
        "grading violation at ({row},{col}): shift {shift} not in declared set {allowed:?}"
    )]
    GradingViolation {
        row: usize,
        col: usize,
        shift: i64,
        allowed: Vec<i64>,
    },
    #[error("empty column set: nothing to check or solve on")]
    EmptyColumnSet,
    #[error("target is not in the span of the given operators")]
    NotInSpan,
}

/// Sparse vector over a fixed basis; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec {
    dim: usize,
    entries: Entries,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Entries::new() }
    }

    /// Basis vector `e_index`.
    pub fn basis_vector(dim: usize, index: usize) -> Result<Self, SparseError> {
        if index >= dim {
            return Err(SparseError::IndexOutOfRange { index, dim });
        }
        let mut v = SparseVec::zero(dim);
        v.entries.insert(index, GaussianRational::one());
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&GaussianRational> {
        self.entries.get(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn set(&mut self, index: usize, value: GaussianRational) -> Result<(), SparseError> {
        if index >= self.dim {
            return Err(SparseError::IndexOutOfRange { index, dim: self.dim });
        }
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
        Ok(())
    }

    /// `self[index] += value`, dropping the entry if it cancels to zero.
    pub fn add_to(&mut self, index: usize, value: &GaussianRational) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry(index).or_insert_with(GaussianRational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&index);
        }
    }

    pub fn add(&self, rhs: &SparseVec) -> Result<SparseVec, SparseError> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_to(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &SparseVec) -> Result<SparseVec, SparseError> {
        self.check_dim(rhs)?;
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_to(k, &-v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> SparseVec {
        let mut out = SparseVec::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (k, v) in self.iter() {
            out.entries.insert(k, c * v);
        }
        out
    }

    /// `self += c * rhs` without allocating an intermediate vector.
    pub fn add_scaled(&mut self, c: &GaussianRational, rhs: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (k, v) in rhs.iter() {
            self.add_to(k, &(c * v));
        }
    }

    /// Exact scalar `c` with `self == c * rhs`, if one exists.
    pub fn proportionality(&self, rhs: &SparseVec) -> Option<GaussianRational> {
        if rhs.is_zero() {
            return self.is_zero().then(GaussianRational::zero);
        }
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        let (k, pivot) = rhs.iter().next()?;
        let c = self.get(k)?.checked_div(pivot).ok()?;
        (self == &rhs.scale(&c)).then_some(c)
    }

    fn check_dim(&self, rhs: &SparseVec) -> Result<(), SparseError> {
        if self.dim != rhs.dim {
            return Err(SparseError::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(())
    }

    pub(crate) fn from_entries(dim: usize, entries: Entries) -> Self {
        debug_assert!(entries.values().all(|v| !v.is_zero()));
        SparseVec { dim, entries }
    }

    pub(crate) fn into_entries(self) -> Entries {
        self.entries
    }
}

/// Sparse operator over a graded basis.
///
/// `grades[i]` is the total ur number of basis state `i`; `shifts` is the set
/// of grade changes the operator is allowed to produce.
#[derive(Debug, Clone)]
pub struct SparseOp {
    dim: usize,
    grades: Arc<Vec<u32>>,
    shifts: BTreeSet<i64>,
    cols: BTreeMap<usize, Entries>,
}

impl SparseOp {
    pub fn zero(grades: Arc<Vec<u32>>, shifts: impl IntoIterator<Item = i64>) -> Self {
        SparseOp {
            dim: grades.len(),
            grades,
            shifts: shifts.into_iter().collect(),
            cols: BTreeMap::new(),
        }
    }

    pub fn identity(grades: Arc<Vec<u32>>) -> Self {
        let mut op = SparseOp::zero(grades, [0]);
        for j in 0..op.dim {
            op.insert(j, j, GaussianRational::one()).expect("identity entries are grade 0");
        }
        op
    }

    /// Diagonal operator with the given exact eigenvalues.
    pub fn diagonal(grades: Arc<Vec<u32>>, eigenvalue: impl Fn(usize) -> GaussianRational) -> Self {
        let mut op = SparseOp::zero(grades, [0]);
        for j in 0..op.dim {
            let v = eigenvalue(j);
            if !v.is_zero() {
                op.insert(j, j, v).expect("diagonal entries are grade 0");
            }
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grades(&self) -> &Arc<Vec<u32>> {
        &self.grades
    }

    pub fn shifts(&self) -> &BTreeSet<i64> {
        &self.shifts
    }

    pub fn entry_count(&self) -> usize {
        self.cols.values().map(Entries::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&GaussianRational> {
        self.cols.get(&col).and_then(|c| c.get(&row))
    }

    pub fn columns(&self) -> impl Iterator<Item = (usize, &Entries)> {
        self.cols.iter().map(|(j, c)| (*j, c))
    }

    pub fn column(&self, col: usize) -> Option<&Entries> {
        self.cols.get(&col)
    }

    /// Inserts (adds) one entry, enforcing the declared grading.
    pub fn insert(
        &mut self,
        row: usize,
        col: usize,
        value: GaussianRational,
    ) -> Result<(), SparseError> {
        if row >= self.dim {
            return Err(SparseError::IndexOutOfRange { index: row, dim: self.dim });
        }
        if col >= self.dim {
            return Err(SparseError::IndexOutOfRange { index: col, dim: self.dim });
        }
        if value.is_zero() {
            return Ok(());
        }
        let shift = i64::from(self.grades[row]) - i64::from(self.grades[col]);
        if !self.shifts.contains(&shift) {
            return Err(SparseError::GradingViolation {
                row,
                col,
                shift,
                allowed: self.shifts.iter().copied().collect(),
            });
        }
        let column = self.cols.entry(col).or_default();
        let slot = column.entry(row).or_insert_with(GaussianRational::zero);
        *slot += &value;
        if slot.is_zero() {
            column.remove(&row);
            if column.is_empty() {
                self.cols.remove(&col);
            }
        }
        Ok(())
    }

    /// Rescans every stored entry against the declared shift set.
    pub fn verify_grading(&self) -> Result<(), SparseError> {
        for (&col, column) in &self.cols {
            for &row in column.keys() {
                let shift = i64::from(self.grades[row]) - i64::from(self.grades[col]);
                if !self.shifts.contains(&shift) {
                    return Err(SparseError::GradingViolation {
                        row,
                        col,
                        shift,
                        allowed: self.shifts.iter().copied().collect(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_same_basis(&self, rhs: &SparseOp) -> Result<(), SparseError> {
        if self.dim != rhs.dim {
            return Err(SparseError::DimensionMismatch(self.dim, rhs.dim));
        }
        if !Arc::ptr_eq(&self.grades, &rhs.grades) && self.grades != rhs.grades {
            return Err(SparseError::BasisMismatch);
        }
        Ok(())
    }

    pub fn apply(&self, v: &SparseVec) -> Result<SparseVec, SparseError> {
        if self.dim != v.dim {
            return Err(SparseError::DimensionMismatch(self.dim, v.dim));
        }
        let mut out = SparseVec::zero(self.dim);
        for (j, x) in v.iter() {
            if let Some(column) = self.cols.get(&j) {
                for (&row, a) in column {
                    out.add_to(row, &(a * x));
                }
            }
        }
        Ok(out)
    }

    /// One column of `self * other` (apply `other` first), exact.
    pub fn compose_column(&self, other: &SparseOp, col: usize) -> Result<Entries, SparseError> {
        self.check_same_basis(other)?;
        let mut out = SparseVec::zero(self.dim);
        if let Some(column) = other.cols.get(&col) {
            for (&mid, x) in column {
                if let Some(self_col) = self.cols.get(&mid) {
                    for (&row, a) in self_col {
                        out.add_to(row, &(a * x));
                    }
                }
            }
        }
        Ok(out.into_entries())
    }

    /// Full operator product `self * other` (apply `other` first).
    pub fn compose(&self, other: &SparseOp) -> Result<SparseOp, SparseError> {
        self.check_same_basis(other)?;
        let shifts = pairwise_sums(&self.shifts, &other.shifts);
        let mut cols = BTreeMap::new();
        for (&j, _) in &other.cols {
            let col = self.compose_column(other, j)?;
            if !col.is_empty() {
                cols.insert(j, col);
            }
        }
        let op = SparseOp { dim: self.dim, grades: self.grades.clone(), shifts, cols };
        op.verify_grading()?;
        Ok(op)
    }

    pub fn add(&self, rhs: &SparseOp) -> Result<SparseOp, SparseError> {
        self.check_same_basis(rhs)?;
        let mut out = self.clone();
        out.shifts = out.shifts.union(&rhs.shifts).copied().collect();
        for (j, column) in rhs.columns() {
            for (&row, v) in column {
                out.insert(row, j, v.clone())?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &SparseOp) -> Result<SparseOp, SparseError> {
        self.add(&rhs.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> SparseOp {
        let mut out = SparseOp {
            dim: self.dim,
            grades: self.grades.clone(),
            shifts: self.shifts.clone(),
            cols: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (j, column) in self.columns() {
            let scaled: Entries = column.iter().map(|(&r, v)| (r, c * v)).collect();
            out.cols.insert(j, scaled);
        }
        out
    }

    /// Matrix equality (dimensions and entries); declared shifts are ignored.
    pub fn same_matrix(&self, rhs: &SparseOp) -> bool {
        self.dim == rhs.dim && self.cols == rhs.cols
    }
}

fn pairwise_sums(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x + y);
        }
    }
    out
}

/// `[a, b]` (or `{a, b}` with `anti`) as a fully materialized operator.
pub fn commutator(a: &SparseOp, b: &SparseOp, anti: bool) -> Result<SparseOp, SparseError> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    if anti {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Columns of `[a, b]` (or `{a, b}`) evaluated only on `cols`.
///
/// `a` and `b` must be full operators; restricted to columns whose grade is
/// deep enough inside the truncation, the result is exact.
pub fn commutator_columns(
    a: &SparseOp,
    b: &SparseOp,
    anti: bool,
    cols: &[usize],
) -> Result<BTreeMap<usize, Entries>, SparseError> {
    let mut out = BTreeMap::new();
    for &j in cols {
        let ab = a.compose_column(b, j)?;
        let ba = b.compose_column(a, j)?;
        let mut col = SparseVec::from_entries(a.dim(), ab);
        let sign = if anti { GaussianRational::one() } else { -GaussianRational::one() };
        for (row, v) in &ba {
            col.add_to(*row, &(&sign * v));
        }
        let col = col.into_entries();
        if !col.is_empty() {
            out.insert(j, col);
        }
    }
    Ok(out)
}

/// Exact rank of a family of sparse vectors over the Gaussian rationals.
pub fn sparse_rank(vecs: impl IntoIterator<Item = SparseVec>) -> usize {
    // Incremental Gaussian elimination: pivots are kept normalized so their
    // leading entry is 1.
    let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
    for mut v in vecs {
        for (lead, pivot) in &pivots {
            if let Some(c) = v.get(*lead).cloned() {
                v.add_scaled(&-&c, pivot);
            }
        }
        let Some((lead, head)) = v.iter().next().map(|(k, c)| (k, c.clone())) else {
            continue;
        };
        let normalized = v.scale(&head.inv().expect("leading entry is nonzero"));
        pivots.push((lead, normalized));
    }
    pivots.len()
}

/// Exact coordinates of `target` in the span of `ops`, restricted to `cols`.
///
/// Solves the linear system entry-by-entry over the Gaussian rationals by
/// Gaussian elimination. Unconstrained coordinates come back zero. Returns
/// `NotInSpan` if the system is inconsistent.
pub fn solve_in_span(
    target: &BTreeMap<usize, Entries>,
    ops: &[&SparseOp],
    cols: &[usize],
) -> Result<Vec<GaussianRational>, SparseError> {
    if cols.is_empty() {
        return Err(SparseError::EmptyColumnSet);
    }
    let n = ops.len();
    // Collect every (col,row) position where the target or any basis operator
    // has support, in deterministic order.
    let mut positions: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &j in cols {
        if let Some(column) = target.get(&j) {
            for &row in column.keys() {
                positions.insert((j, row));
            }
        }
        for op in ops {
            if let Some(column) = op.column(j) {
                for &row in column.keys() {
                    positions.insert((j, row));
                }
            }
        }
    }
    // Augmented rows: n coefficients plus the right-hand side.
    let mut rows: Vec<Vec<GaussianRational>> = Vec::with_capacity(positions.len());
    for &(j, row) in &positions {
        let mut eq: Vec<GaussianRational> = Vec::with_capacity(n + 1);
        for op in ops {
            eq.push(op.get(row, j).cloned().unwrap_or_else(GaussianRational::zero));
        }
        let rhs = target
            .get(&j)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_else(GaussianRational::zero);
        eq.push(rhs);
        rows.push(eq);
    }

    let mut pivot_rows: Vec<Option<usize>> = vec![None; n];
    let mut next_row = 0usize;
    for unknown in 0..n {
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][unknown].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][unknown].inv().expect("pivot is nonzero");
        for v in rows[next_row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[next_row].clone();
        for (r, row_vec) in rows.iter_mut().enumerate() {
            if r != next_row && !row_vec[unknown].is_zero() {
                let factor = row_vec[unknown].clone();
                for (v, p) in row_vec.iter_mut().zip(&pivot) {
                    *v -= &(&factor * p);
                }
            }
        }
        pivot_rows[unknown] = Some(next_row);
        next_row += 1;
    }
    // Any remaining row with a nonzero right-hand side is an inconsistency.
    if rows.iter().skip(next_row).any(|row| !row[n].is_zero()) {
        return Err(SparseError::NotInSpan);
    }
    let mut coeffs = vec![GaussianRational::zero(); n];
    for (unknown, pivot) in pivot_rows.iter().enumerate() {
        if let Some(r) = pivot {
            coeffs[unknown] = rows[*r][n].clone();
        }
    }
    // Exact re-substitution guards the elimination itself.
    for &j in cols {
        let mut recon = SparseVec::zero(ops.first().map_or(0, |o| o.dim()));
        for (op, c) in ops.iter().zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            if let Some(column) = op.column(j) {
                for (&row, v) in column {
                    recon.add_to(row, &(c * v));
                }
            }
        }
        let want = target.get(&j);
        let have = recon.into_entries();
        match want {
            Some(column) if *column == have => {}
            None if have.is_empty() => {}
            _ => return Err(SparseError::NotInSpan),
        }
    }
    Ok(coeffs)
}
