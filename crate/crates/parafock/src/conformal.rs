//! The fifteen conformal generators and their Poincare combinations.
//!
//! All generators are exact bilinear combinations over a four-sort basis:
//! M-type from number and mixed bilinears (grading-preserving), N-type from
//! pair raising/lowering bilinears (grading +-2). Lie-algebra closure and
//! Jacobi identities are verified on interior columns, where truncation
//! cannot reach: each generator shifts the total occupation by at most 2,
//! so a commutator is exact on columns at least 4 shells below the cutoff
//! and a double commutator on columns at least 6 below.
//!
//! Structure constants are discovered by exact span solving and recorded,
//! never assumed; the identity operator is admitted into the span because
//! one generator carries an additive constant.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::fock::{
    bilinear_lowering, bilinear_mixed, bilinear_raising, number_op, total_number_op, FockBasis,
    FockError, ModeConfig,
};
use crate::scalar::GaussianRational;
use crate::sparse::{commutator_columns, solve_in_span, SparseError, SparseOp, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConformalError {
    #[error("conformal generators require 4 sorts, got {0}")]
    WrongSortCount(u32),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

/// Names of the fifteen generators, in fixed table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GeneratorName {
    M12,
    M13,
    M23,
    M15,
    M25,
    M35,
    M46,
    N14,
    N24,
    N34,
    N16,
    N26,
    N36,
    N45,
    N56,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 15] = [
        GeneratorName::M12,
        GeneratorName::M13,
        GeneratorName::M23,
        GeneratorName::M15,
        GeneratorName::M25,
        GeneratorName::M35,
        GeneratorName::M46,
        GeneratorName::N14,
        GeneratorName::N24,
        GeneratorName::N34,
        GeneratorName::N16,
        GeneratorName::N26,
        GeneratorName::N36,
        GeneratorName::N45,
        GeneratorName::N56,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GeneratorName::M12 => "M12",
            GeneratorName::M13 => "M13",
            GeneratorName::M23 => "M23",
            GeneratorName::M15 => "M15",
            GeneratorName::M25 => "M25",
            GeneratorName::M35 => "M35",
            GeneratorName::M46 => "M46",
            GeneratorName::N14 => "N14",
            GeneratorName::N24 => "N24",
            GeneratorName::N34 => "N34",
            GeneratorName::N16 => "N16",
            GeneratorName::N26 => "N26",
            GeneratorName::N36 => "N36",
            GeneratorName::N45 => "N45",
            GeneratorName::N56 => "N56",
        }
    }

    fn position(self) -> usize {
        GeneratorName::ALL.iter().position(|&g| g == self).expect("name is in ALL")
    }
}

impl std::fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The fifteen generators over one truncated basis.
pub struct GeneratorSet<'a> {
    basis: &'a FockBasis,
    ops: Vec<SparseOp>,
}

/// Builds all fifteen generators from their defining bilinear combinations.
pub fn build_generators(basis: &FockBasis) -> Result<GeneratorSet<'_>, ConformalError> {
    let config = basis.config();
    if config.sorts != 4 {
        return Err(ConformalError::WrongSortCount(config.sorts));
    }
    let half = GaussianRational::from_ratio(1, 2);
    let half_i = &half * &GaussianRational::i();

    let n: Vec<SparseOp> = (1..=4).map(|r| number_op(basis, r)).collect::<Result<_, _>>()?;
    let tau = |r, s| bilinear_mixed(basis, r, s);
    let low = |r, s| bilinear_lowering(basis, r, s);
    let high = |r, s| bilinear_raising(basis, r, s);

    // Signed sum of four operators with one common prefactor.
    let combine = |prefactor: &GaussianRational,
                   parts: [(&SparseOp, i64); 4]|
     -> Result<SparseOp, SparseError> {
        let mut sum = parts[0].0.scale(&GaussianRational::from_int(parts[0].1));
        for (op, sign) in &parts[1..] {
            sum = sum.add(&op.scale(&GaussianRational::from_int(*sign)))?;
        }
        Ok(sum.scale(prefactor))
    };

    let tau12 = tau(1, 2)?;
    let tau21 = tau(2, 1)?;
    let tau34 = tau(3, 4)?;
    let tau43 = tau(4, 3)?;
    let a13 = low(1, 3)?;
    let a24 = low(2, 4)?;
    let a14 = low(1, 4)?;
    let a23 = low(2, 3)?;
    let c13 = high(1, 3)?;
    let c24 = high(2, 4)?;
    let c14 = high(1, 4)?;
    let c23 = high(2, 3)?;

    let m12 = combine(&half_i, [(&n[0], 1), (&n[1], -1), (&n[2], 1), (&n[3], -1)])?;
    let m13 = combine(&half, [(&tau12, -1), (&tau21, 1), (&tau34, -1), (&tau43, 1)])?;
    let m23 = combine(&half_i, [(&tau12, 1), (&tau21, 1), (&tau34, 1), (&tau43, 1)])?;
    let m15 = combine(&half_i, [(&tau12, 1), (&tau21, 1), (&tau34, -1), (&tau43, -1)])?;
    let m25 = combine(&half, [(&tau12, 1), (&tau21, -1), (&tau34, -1), (&tau43, 1)])?;
    let m35 = combine(&half_i, [(&n[0], 1), (&n[1], -1), (&n[2], -1), (&n[3], 1)])?;
    let two_p = GaussianRational::from_int(2 * i64::from(config.order));
    let m46 = total_number_op(basis)
        .add(&SparseOp::identity(basis.grades()).scale(&two_p))?
        .scale(&half_i);
    let n14 = combine(&half_i, [(&a13, 1), (&c13, 1), (&a24, -1), (&c24, -1)])?;
    let n24 = combine(&half, [(&a13, -1), (&c13, 1), (&a24, -1), (&c24, 1)])?;
    let n34 = combine(&half_i, [(&a14, -1), (&c14, -1), (&a23, -1), (&c23, -1)])?;
    let n16 = combine(&half, [(&a13, -1), (&c13, 1), (&a24, 1), (&c24, -1)])?;
    let n26 = combine(&half_i, [(&a13, -1), (&c13, -1), (&a24, -1), (&c24, -1)])?;
    let n36 = combine(&half, [(&a14, 1), (&c14, -1), (&a23, 1), (&c23, -1)])?;
    let n45 = combine(&half, [(&a14, 1), (&c14, -1), (&a23, -1), (&c23, 1)])?;
    let n56 = combine(&half_i, [(&a14, 1), (&c14, 1), (&a23, -1), (&c23, -1)])?;

    let ops = vec![
        m12, m13, m23, m15, m25, m35, m46, n14, n24, n34, n16, n26, n36, n45, n56,
    ];
    for (name, op) in GeneratorName::ALL.iter().zip(&ops) {
        debug_assert!(
            op.shifts().iter().all(|s| [-2, 0, 2].contains(s)),
            "{name} has shifts outside -2..2"
        );
    }
    Ok(GeneratorSet { basis, ops })
}

impl<'a> GeneratorSet<'a> {
    pub fn basis(&self) -> &'a FockBasis {
        self.basis
    }

    pub fn get(&self, name: GeneratorName) -> &SparseOp {
        &self.ops[name.position()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (GeneratorName, &SparseOp)> {
        GeneratorName::ALL.iter().copied().zip(self.ops.iter())
    }
}

/// The ten Poincare operators: rotations, boosts, momenta, energy.
pub struct PoincareSet<'a> {
    basis: &'a FockBasis,
    ops: Vec<(&'static str, SparseOp)>,
}

/// Builds the Poincare combinations from a generator set.
pub fn build_poincare<'a>(g: &GeneratorSet<'a>) -> Result<PoincareSet<'a>, ConformalError> {
    use GeneratorName::*;
    let sum = |a: GeneratorName, b: GeneratorName| g.get(a).add(g.get(b));
    let ops = vec![
        ("M12", g.get(M12).clone()),
        ("M13", g.get(M13).clone()),
        ("M23", g.get(M23).clone()),
        ("N14", g.get(N14).clone()),
        ("N24", g.get(N24).clone()),
        ("N34", g.get(N34).clone()),
        ("P1", sum(M15, N16)?),
        ("P2", sum(M25, N26)?),
        ("P3", sum(M35, N36)?),
        ("P0", sum(N45, M46)?),
    ];
    Ok(PoincareSet { basis: g.basis, ops })
}

impl<'a> PoincareSet<'a> {
    pub fn basis(&self) -> &'a FockBasis {
        self.basis
    }

    /// All ten operators with their labels, rotations first, energy last.
    pub fn labeled(&self) -> impl Iterator<Item = (&'static str, &SparseOp)> {
        self.ops.iter().map(|(label, op)| (*label, op))
    }

    pub fn get(&self, label: &str) -> Option<&SparseOp> {
        self.ops.iter().find(|(l, _)| *l == label).map(|(_, op)| op)
    }

    pub fn momentum(&self, i: usize) -> &SparseOp {
        assert!((1..=3).contains(&i), "momentum index must be 1..=3");
        &self.ops[5 + i].1
    }

    pub fn energy(&self) -> &SparseOp {
        &self.ops[9].1
    }
}

/// One commutator expressed in the generator-plus-identity span.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureRow {
    pub left: String,
    pub right: String,
    pub in_span: bool,
    /// Coefficient per generator label, plus "1" for the identity.
    pub coefficients: BTreeMap<String, GaussianRational>,
}

/// Full closure table over all unordered generator pairs.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureTable {
    pub config: ModeConfig,
    pub depth: u32,
    pub interior_columns: usize,
    pub rows: Vec<ClosureRow>,
    pub pass: bool,
}

/// Expresses every pairwise commutator exactly in span(15 generators plus
/// identity) on interior columns; any pair outside the span fails the table.
pub fn closure_table(g: &GeneratorSet<'_>, depth: u32) -> Result<ClosureTable, ConformalError> {
    assert!(depth >= 4, "closure needs at least 4 shells of margin");
    let basis = g.basis();
    let interior = basis.interior_columns(depth)?;
    let identity = SparseOp::identity(basis.grades());
    let mut span_ops: Vec<&SparseOp> = g.iter().map(|(_, op)| op).collect();
    span_ops.push(&identity);

    let mut rows = Vec::with_capacity(105);
    let mut pass = true;
    for (i, a) in GeneratorName::ALL.iter().enumerate() {
        for b in &GeneratorName::ALL[i..] {
            let bracket = commutator_columns(g.get(*a), g.get(*b), false, &interior)?;
            let row = match solve_in_span(&bracket, &span_ops, &interior) {
                Ok(solution) => {
                    let mut coefficients = BTreeMap::new();
                    for (name, value) in GeneratorName::ALL.iter().zip(&solution) {
                        coefficients.insert(name.label().to_string(), value.clone());
                    }
                    coefficients.insert("1".to_string(), solution[15].clone());
                    ClosureRow {
                        left: a.label().to_string(),
                        right: b.label().to_string(),
                        in_span: true,
                        coefficients,
                    }
                }
                Err(SparseError::NotInSpan) => {
                    pass = false;
                    ClosureRow {
                        left: a.label().to_string(),
                        right: b.label().to_string(),
                        in_span: false,
                        coefficients: BTreeMap::new(),
                    }
                }
                Err(other) => return Err(other.into()),
            };
            rows.push(row);
        }
    }
    Ok(ClosureTable {
        config: basis.config().clone(),
        depth,
        interior_columns: interior.len(),
        rows,
        pass,
    })
}

/// Pairs whose coefficient rows differ between two tables on the fifteen
/// generator columns (the identity column is deliberately ignored).
pub fn generator_coefficient_differences(a: &ClosureTable, b: &ClosureTable) -> Vec<String> {
    let mut diffs = Vec::new();
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        if ra.left != rb.left || ra.right != rb.right {
            diffs.push(format!("row order mismatch at [{}, {}]", ra.left, ra.right));
            continue;
        }
        if !ra.in_span || !rb.in_span {
            diffs.push(format!("[{}, {}] not in span", ra.left, ra.right));
            continue;
        }
        let differs = GeneratorName::ALL.iter().any(|name| {
            ra.coefficients.get(name.label()) != rb.coefficients.get(name.label())
        });
        if differs {
            diffs.push(format!("[{}, {}]", ra.left, ra.right));
        }
    }
    diffs
}

/// Which triples a Jacobi run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleSelection {
    All,
    /// Every k-th triple of the deterministic enumeration order.
    Stride(usize),
}

/// Result of a Jacobi identity run.
#[derive(Debug, Clone, Serialize)]
pub struct JacobiReport {
    pub config: ModeConfig,
    pub depth: u32,
    pub interior_columns: usize,
    pub triples_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn comm_apply(a: &SparseOp, b: &SparseOp, v: &SparseVec) -> Result<SparseVec, SparseError> {
    let ab = a.apply(&b.apply(v)?)?;
    let ba = b.apply(&a.apply(v)?)?;
    ab.sub(&ba)
}

/// `[[a, b], c]` applied to a vector.
fn double_comm_apply(
    a: &SparseOp,
    b: &SparseOp,
    c: &SparseOp,
    v: &SparseVec,
) -> Result<SparseVec, SparseError> {
    let outer = comm_apply(a, b, &c.apply(v)?)?;
    let inner = c.apply(&comm_apply(a, b, v)?)?;
    outer.sub(&inner)
}

/// Verifies `[[A,B],C] + [[B,C],A] + [[C,A],B] = 0` on interior columns for
/// the selected generator triples.
pub fn jacobi_check(
    g: &GeneratorSet<'_>,
    depth: u32,
    selection: TripleSelection,
) -> Result<JacobiReport, ConformalError> {
    assert!(depth >= 6, "a double commutator needs at least 6 shells of margin");
    let basis = g.basis();
    let interior = basis.interior_columns(depth)?;
    let stride = match selection {
        TripleSelection::All => 1,
        TripleSelection::Stride(k) => k.max(1),
    };

    let mut triples = Vec::new();
    for i in 0..15 {
        for j in i + 1..15 {
            for k in j + 1..15 {
                triples.push((GeneratorName::ALL[i], GeneratorName::ALL[j], GeneratorName::ALL[k]));
            }
        }
    }

    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (a, b, c) in triples.into_iter().step_by(stride) {
        checked += 1;
        let (oa, ob, oc) = (g.get(a), g.get(b), g.get(c));
        for &col in &interior {
            let e = SparseVec::basis_vector(basis.size(), col)?;
            let sum = double_comm_apply(oa, ob, oc, &e)?
                .add(&double_comm_apply(ob, oc, oa, &e)?)?
                .add(&double_comm_apply(oc, oa, ob, &e)?)?;
            if !sum.is_zero() {
                failures.push(format!("({}, {}, {}) at column {col}", a, b, c));
                break;
            }
        }
    }
    let pass = failures.is_empty();
    Ok(JacobiReport {
        config: basis.config().clone(),
        depth,
        interior_columns: interior.len(),
        triples_checked: checked,
        failures,
        pass,
    })
}
