//! Young diagrams, tableaux, schemes, and formal tensors.
//!
//! Diagrams are partitions; standard tableaux (numbers 1..n, strictly
//! increasing along rows and columns) count the symmetric-group irreps;
//! standard schemes (letters 1..R, rows weakly increasing, columns strictly
//! increasing) index the GL(R) basis vectors. Each tableau/scheme pair yields
//! a formal tensor through the Young symmetrizer: symmetrize the word over
//! the tableau's rows, then antisymmetrize over its columns. Enumeration
//! counts are cross-checked against the hook-length and Weyl dimension
//! formulas, which are computed independently of the backtracking.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::GaussianRational;
use crate::word::{distinct_permutations, Word};

/// Largest `n` accepted by the diagram enumerator.
pub const MAX_DIAGRAM_CELLS: u32 = 12;

/// Largest row-group times column-group size the symmetrizer will expand.
pub const SYMMETRIZER_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YoungError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("cell count {n} outside supported range 1..={max}")]
    CellsOutOfRange { n: u32, max: u32 },
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("tableau and scheme have different diagrams")]
    DiagramMismatch,
    #[error("symmetrizer group size {size} exceeds limit {limit}")]
    SymmetrizerTooLarge { size: u64, limit: u64 },
    #[error("formal tensor words have unequal lengths")]
    UnequalWordLengths,
    #[error("symmetrizer produced the zero tensor")]
    ZeroTensor,
}

/// Partition of n as weakly decreasing positive row lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self, YoungError> {
        if rows.is_empty() {
            return Err(YoungError::InvalidDiagram("no rows".into()));
        }
        if rows.iter().any(|&r| r == 0) {
            return Err(YoungError::InvalidDiagram("zero-length row".into()));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::InvalidDiagram(format!(
                "rows {rows:?} are not weakly decreasing"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Total number of cells.
    pub fn cells(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Length of column `j` (0-based).
    pub fn column_height(&self, j: u32) -> u32 {
        self.rows.iter().filter(|&&r| r > j).count() as u32
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn enumerate_diagrams(n: u32) -> Result<Vec<YoungDiagram>, YoungError> {
    if n == 0 || n > MAX_DIAGRAM_CELLS {
        return Err(YoungError::CellsOutOfRange { n, max: MAX_DIAGRAM_CELLS });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram { rows: current.clone() });
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            current.push(part);
            descend(remaining - part, part, current, out);
            current.pop();
            part -= 1;
        }
    }
    descend(n, n, &mut current, &mut out);
    Ok(out)
}

/// Standard tableau: cells filled with 1..n, strictly increasing along each
/// row and down each column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardTableau {
    diagram: YoungDiagram,
    filling: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn new(diagram: YoungDiagram, filling: Vec<Vec<u32>>) -> Result<Self, YoungError> {
        check_shape(&diagram, &filling)?;
        let n = diagram.cells();
        let mut seen = vec![false; n as usize + 1];
        for row in &filling {
            for &v in row {
                if v == 0 || v > n || seen[v as usize] {
                    return Err(YoungError::InvalidFilling(format!(
                        "entries must be a permutation of 1..{n}"
                    )));
                }
                seen[v as usize] = true;
            }
        }
        check_monotone(&filling, true).map_err(YoungError::InvalidFilling)?;
        Ok(StandardTableau { diagram, filling })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn filling(&self) -> &[Vec<u32>] {
        &self.filling
    }
}

/// Standard scheme: cells filled with letters 1..R, weakly increasing along
/// each row and strictly increasing down each column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardScheme {
    diagram: YoungDiagram,
    filling: Vec<Vec<u8>>,
}

impl StandardScheme {
    pub fn new(diagram: YoungDiagram, filling: Vec<Vec<u8>>, letters: u8) -> Result<Self, YoungError> {
        let shape: Vec<Vec<u32>> = filling
            .iter()
            .map(|row| row.iter().map(|&v| u32::from(v)).collect())
            .collect();
        check_shape(&diagram, &shape)?;
        for row in &filling {
            for &v in row {
                if v == 0 || v > letters {
                    return Err(YoungError::InvalidFilling(format!(
                        "letter {v} outside 1..={letters}"
                    )));
                }
            }
        }
        check_monotone(&shape, false).map_err(YoungError::InvalidFilling)?;
        Ok(StandardScheme { diagram, filling })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn filling(&self) -> &[Vec<u8>] {
        &self.filling
    }

    /// Multiset of letters, sorted ascending.
    pub fn content(&self) -> Vec<u8> {
        let mut letters: Vec<u8> = self.filling.iter().flatten().copied().collect();
        letters.sort_unstable();
        letters
    }
}

fn check_shape(diagram: &YoungDiagram, filling: &[Vec<u32>]) -> Result<(), YoungError> {
    let lens: Vec<u32> = filling.iter().map(|row| row.len() as u32).collect();
    if lens != diagram.rows {
        return Err(YoungError::InvalidFilling(format!(
            "filling shape {lens:?} does not match diagram {diagram}"
        )));
    }
    Ok(())
}

/// Rows strictly (`strict_rows`) or weakly increasing; columns always strict.
fn check_monotone(filling: &[Vec<u32>], strict_rows: bool) -> Result<(), String> {
    for row in filling {
        for pair in row.windows(2) {
            if pair[0] > pair[1] || (strict_rows && pair[0] == pair[1]) {
                return Err(format!("row entries {pair:?} out of order"));
            }
        }
    }
    for i in 1..filling.len() {
        for j in 0..filling[i].len() {
            if filling[i - 1][j] >= filling[i][j] {
                return Err(format!(
                    "column entries ({}, {}) not strictly increasing",
                    filling[i - 1][j],
                    filling[i][j]
                ));
            }
        }
    }
    Ok(())
}

/// All standard tableaux of a diagram, by backtracking on where each of
/// 1..n goes (row order makes the output deterministic).
pub fn enumerate_standard_tableaux(diagram: &YoungDiagram) -> Vec<StandardTableau> {
    let rows = diagram.rows();
    let n = diagram.cells();
    let mut filled: Vec<Vec<u32>> = rows.iter().map(|&r| Vec::with_capacity(r as usize)).collect();
    let mut out = Vec::new();
    fn place(
        next: u32,
        n: u32,
        rows: &[u32],
        filled: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if next > n {
            out.push(filled.clone());
            return;
        }
        for i in 0..rows.len() {
            let len = filled[i].len();
            if len as u32 >= rows[i] {
                continue;
            }
            if i > 0 && filled[i - 1].len() <= len {
                continue;
            }
            filled[i].push(next);
            place(next + 1, n, rows, filled, out);
            filled[i].pop();
        }
    }
    let mut raw = Vec::new();
    place(1, n, rows, &mut filled, &mut raw);
    for filling in raw {
        out.push(StandardTableau { diagram: diagram.clone(), filling });
    }
    out
}

/// Number of standard tableaux, by enumeration.
pub fn count_standard_tableaux(diagram: &YoungDiagram) -> u64 {
    enumerate_standard_tableaux(diagram).len() as u64
}

/// Independent oracle: the hook-length product formula `n! / prod(hooks)`.
pub fn hook_length_count(diagram: &YoungDiagram) -> u64 {
    let rows = diagram.rows();
    let mut numerator = BigInt::one();
    for k in 1..=diagram.cells() {
        numerator *= BigInt::from(k);
    }
    let mut denominator = BigInt::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = rows[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            denominator *= BigInt::from(arm + leg + 1);
        }
    }
    let (quotient, remainder) = numerator.div_rem(&denominator);
    assert!(remainder.is_zero(), "hook product must divide n!");
    u64::try_from(quotient).expect("tableau count fits in u64 for n <= 12")
}

/// All standard schemes over letters 1..R, by row-major backtracking.
pub fn enumerate_schemes(diagram: &YoungDiagram, letters: u8) -> Vec<StandardScheme> {
    if diagram.row_count() > usize::from(letters) {
        return Vec::new();
    }
    let rows = diagram.rows();
    let mut filled: Vec<Vec<u8>> = rows.iter().map(|&r| Vec::with_capacity(r as usize)).collect();
    let mut out = Vec::new();
    fn place(
        cell: usize,
        cells: &[(usize, usize)],
        letters: u8,
        filled: &mut Vec<Vec<u8>>,
        out: &mut Vec<Vec<Vec<u8>>>,
    ) {
        let Some(&(i, j)) = cells.get(cell) else {
            out.push(filled.clone());
            return;
        };
        let mut low = 1u8;
        if j > 0 {
            low = low.max(filled[i][j - 1]);
        }
        if i > 0 {
            low = low.max(filled[i - 1][j] + 1);
        }
        for v in low..=letters {
            filled[i].push(v);
            place(cell + 1, cells, letters, filled, out);
            filled[i].pop();
        }
    }
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
        .collect();
    let mut raw = Vec::new();
    place(0, &cells, letters, &mut filled, &mut raw);
    for filling in raw {
        out.push(StandardScheme { diagram: diagram.clone(), filling });
    }
    out
}

/// Independent oracle: the Weyl dimension formula
/// `prod_{i<j} (l_i - l_j + j - i) / (j - i)` with rows padded to R by zeros.
pub fn weyl_dimension(diagram: &YoungDiagram, letters: u8) -> u64 {
    let r = usize::from(letters);
    if diagram.row_count() > r {
        return 0;
    }
    let mut lambda = vec![0i64; r];
    for (i, &len) in diagram.rows().iter().enumerate() {
        lambda[i] = i64::from(len);
    }
    let mut numerator = BigInt::one();
    let mut denominator = BigInt::one();
    for i in 0..r {
        for j in i + 1..r {
            let gap = (j - i) as i64;
            numerator *= BigInt::from(lambda[i] - lambda[j] + gap);
            denominator *= BigInt::from(gap);
        }
    }
    let (quotient, remainder) = numerator.div_rem(&denominator);
    assert!(remainder.is_zero(), "Weyl product must divide evenly");
    u64::try_from(quotient).expect("dimension fits in u64 for supported sizes")
}

/// Formal linear combination of equal-length words with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalTensor {
    word_len: usize,
    terms: BTreeMap<Word, GaussianRational>,
}

impl FormalTensor {
    pub fn zero(word_len: usize) -> Self {
        FormalTensor { word_len, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        word_len: usize,
        terms: impl IntoIterator<Item = (Word, GaussianRational)>,
    ) -> Result<Self, YoungError> {
        let mut tensor = FormalTensor::zero(word_len);
        for (word, coeff) in terms {
            tensor.add_term(&word, &coeff)?;
        }
        Ok(tensor)
    }

    /// Adds `coeff * |word>`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: &Word, coeff: &GaussianRational) -> Result<(), YoungError> {
        if word.len() != self.word_len {
            return Err(YoungError::UnequalWordLengths);
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(word) {
            Some(slot) => {
                *slot += coeff;
                if slot.is_zero() {
                    self.terms.remove(word);
                }
            }
            None => {
                self.terms.insert(word.clone(), coeff.clone());
            }
        }
        Ok(())
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Option<&GaussianRational> {
        self.terms.get(word)
    }

    pub fn add(&self, other: &FormalTensor) -> Result<FormalTensor, YoungError> {
        let mut out = self.clone();
        for (word, coeff) in &other.terms {
            out.add_term(word, coeff)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> FormalTensor {
        if c.is_zero() {
            return FormalTensor::zero(self.word_len);
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), c * v)).collect();
        FormalTensor { word_len: self.word_len, terms }
    }

    /// Applies the sort relabeling `a <-> b` to every word.
    pub fn relabeled(&self, a: u8, b: u8) -> FormalTensor {
        let mut out = FormalTensor::zero(self.word_len);
        for (word, coeff) in &self.terms {
            out.add_term(&word.relabeled(a, b), coeff).expect("length is preserved");
        }
        out
    }

    /// Canonical scaling: if every coefficient is a real rational, rescale to
    /// coprime integers; otherwise divide by the lexicographically first
    /// coefficient. Either way the first term ends up positive (or 1).
    pub fn canonicalized(&self) -> FormalTensor {
        let Some((_, first)) = self.terms.iter().next() else {
            return self.clone();
        };
        if self.terms.values().all(GaussianRational::is_real) {
            let mut denom_lcm = BigInt::one();
            for coeff in self.terms.values() {
                denom_lcm = denom_lcm.lcm(coeff.re.denom());
            }
            let mut numer_gcd = BigInt::zero();
            for coeff in self.terms.values() {
                let scaled = coeff.re.numer() * &denom_lcm / coeff.re.denom();
                numer_gcd = numer_gcd.gcd(&scaled);
            }
            let mut factor = BigRational::new(denom_lcm, numer_gcd);
            if first.re.is_negative() {
                factor = -factor;
            }
            self.scale(&GaussianRational::from_rational(factor))
        } else {
            let inv = first.inv().expect("stored coefficients are nonzero");
            self.scale(&inv)
        }
    }
}

impl fmt::Display for FormalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (word, coeff)) in self.terms.iter().enumerate() {
            let lead = k == 0;
            if coeff.is_real() {
                let mag = coeff.re.abs();
                let sign = coeff.re.is_negative();
                match (lead, sign) {
                    (true, false) => {}
                    (true, true) => write!(f, "-")?,
                    (false, false) => write!(f, " + ")?,
                    (false, true) => write!(f, " - ")?,
                }
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
            } else {
                if !lead {
                    write!(f, " + ")?;
                }
                write!(f, "({coeff})")?;
            }
            write!(f, "|{word}>")?;
        }
        Ok(())
    }
}

/// Exact rank of a family of formal tensors.
pub fn formal_rank<'a>(tensors: impl IntoIterator<Item = &'a FormalTensor>) -> usize {
    let mut reduced: Vec<FormalTensor> = Vec::new();
    for tensor in tensors {
        let mut current = tensor.clone();
        for pivot in &reduced {
            let lead = pivot.terms.iter().next().expect("pivots are nonzero").0;
            if let Some(c) = current.coefficient(lead).cloned() {
                current = current.add(&pivot.scale(&-c)).expect("equal word lengths");
            }
        }
        if !current.is_zero() {
            let lead_inv = current
                .terms
                .iter()
                .next()
                .map(|(_, c)| c.inv().expect("lead coefficient is nonzero"))
                .expect("nonzero tensor has a lead term");
            reduced.push(current.scale(&lead_inv));
            reduced.sort_by(|a, b| {
                let la = a.terms.keys().next().expect("nonzero");
                let lb = b.terms.keys().next().expect("nonzero");
                la.cmp(lb)
            });
        }
    }
    reduced.len()
}

/// Exact span equality of two families of formal tensors.
pub fn span_equal(a: &[FormalTensor], b: &[FormalTensor]) -> bool {
    let ra = formal_rank(a.iter());
    let rb = formal_rank(b.iter());
    ra == rb && formal_rank(a.iter().chain(b.iter())) == ra
}

/// Young symmetrizer tensor of a tableau/scheme pair: place the scheme's
/// letters at the word positions named by the tableau, symmetrize over the
/// tableau's rows, then antisymmetrize over its columns.
pub fn scheme_tensor(
    tableau: &StandardTableau,
    scheme: &StandardScheme,
) -> Result<FormalTensor, YoungError> {
    if tableau.diagram() != scheme.diagram() {
        return Err(YoungError::DiagramMismatch);
    }
    let diagram = tableau.diagram();
    let n = diagram.cells() as usize;

    let row_sets: Vec<Vec<usize>> = tableau
        .filling()
        .iter()
        .map(|row| row.iter().map(|&v| v as usize - 1).collect())
        .collect();
    let col_count = diagram.rows()[0] as usize;
    let mut col_sets: Vec<Vec<usize>> = vec![Vec::new(); col_count];
    for row in tableau.filling() {
        for (j, &v) in row.iter().enumerate() {
            col_sets[j].push(v as usize - 1);
        }
    }

    let mut size: u64 = 1;
    for set in row_sets.iter().chain(col_sets.iter()) {
        size = size.saturating_mul(factorial(set.len() as u64));
    }
    if size > SYMMETRIZER_LIMIT {
        return Err(YoungError::SymmetrizerTooLarge { size, limit: SYMMETRIZER_LIMIT });
    }

    let mut base = vec![0u8; n];
    for (i, row) in tableau.filling().iter().enumerate() {
        for (j, &pos) in row.iter().enumerate() {
            base[pos as usize - 1] = scheme.filling()[i][j];
        }
    }

    let row_group = block_permutations(&row_sets, n);
    let col_group = block_permutations(&col_sets, n);

    let mut tensor = FormalTensor::zero(n);
    let one = GaussianRational::one();
    let minus_one = -GaussianRational::one();
    for col_perm in &col_group {
        let sign = if permutation_sign(col_perm) { &one } else { &minus_one };
        for row_perm in &row_group {
            let mut word = vec![0u8; n];
            for k in 0..n {
                word[col_perm[row_perm[k]]] = base[k];
            }
            tensor.add_term(&Word::new(word), sign)?;
        }
    }
    if tensor.is_zero() {
        return Err(YoungError::ZeroTensor);
    }
    Ok(tensor.canonicalized())
}

fn factorial(k: u64) -> u64 {
    (1..=k).product::<u64>().max(1)
}

/// All permutations of 0..n that permute each block within itself, as full
/// position maps.
fn block_permutations(blocks: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut group: Vec<Vec<usize>> = vec![(0..n).collect()];
    for block in blocks {
        if block.len() < 2 {
            continue;
        }
        let arrangements = all_orderings(block);
        let mut next = Vec::with_capacity(group.len() * arrangements.len());
        for element in &group {
            for arrangement in &arrangements {
                let mut perm = element.clone();
                for (slot, &image) in block.iter().zip(arrangement) {
                    perm[*slot] = image;
                }
                next.push(perm);
            }
        }
        group = next;
    }
    group
}

fn all_orderings(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in all_orderings(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// True for even permutations.
fn permutation_sign(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut even = true;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut k = start;
        let mut cycle = 0usize;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            cycle += 1;
        }
        if cycle % 2 == 0 {
            even = !even;
        }
    }
    even
}

/// Fully symmetric reference tensor: the sum of all distinct words with the
/// given letter content, each with coefficient 1.
pub fn symmetric_reference(content: &[u8]) -> FormalTensor {
    let mut tensor = FormalTensor::zero(content.len());
    let one = GaussianRational::one();
    for word in distinct_permutations(content) {
        tensor.add_term(&word, &one).expect("uniform word length");
    }
    tensor
}

fn reference(entries: &[([u8; 3], i64)]) -> FormalTensor {
    let mut tensor = FormalTensor::zero(3);
    for (letters, coeff) in entries {
        tensor
            .add_term(&Word::new(letters.to_vec()), &GaussianRational::from_int(*coeff))
            .expect("uniform word length");
    }
    tensor
}

/// The worked mixed-symmetry combinations with content {1,1,2}: the pair
/// spanning the two-dimensional space plus the dependent third vector.
pub fn mixed_reference_112() -> [FormalTensor; 3] {
    [
        reference(&[([1, 1, 2], 2), ([2, 1, 1], -1), ([1, 2, 1], -1)]),
        reference(&[([2, 1, 1], 2), ([1, 1, 2], -1), ([1, 2, 1], -1)]),
        reference(&[([1, 2, 1], 2), ([1, 1, 2], -1), ([2, 1, 1], -1)]),
    ]
}

/// The worked mixed-symmetry combinations with content {1,2,2}.
pub fn mixed_reference_122() -> [FormalTensor; 2] {
    [
        reference(&[([1, 2, 2], -2), ([2, 2, 1], 1), ([2, 1, 2], 1)]),
        reference(&[([2, 2, 1], -2), ([1, 2, 2], 1), ([2, 1, 2], 1)]),
    ]
}

/// One diagram's tableau count, from both routes.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramCount {
    pub diagram: String,
    pub tableaux: u64,
    pub hook_oracle: u64,
}

/// Result of the sum-of-squares counting identity for one n.
#[derive(Debug, Clone, Serialize)]
pub struct SumSquaresReport {
    pub n: u32,
    pub counts: Vec<DiagramCount>,
    pub sum_of_squares: u64,
    pub factorial: u64,
    pub pass: bool,
}

/// Checks `sum_k f_k^2 = n!` with per-diagram counts from enumeration and
/// the hook-length oracle.
pub fn verify_sum_squares(n: u32) -> Result<SumSquaresReport, YoungError> {
    let diagrams = enumerate_diagrams(n)?;
    let mut counts = Vec::with_capacity(diagrams.len());
    let mut sum = 0u64;
    let mut all_match = true;
    for diagram in &diagrams {
        let f = count_standard_tableaux(diagram);
        let oracle = hook_length_count(diagram);
        all_match &= f == oracle;
        sum += f * f;
        counts.push(DiagramCount { diagram: diagram.to_string(), tableaux: f, hook_oracle: oracle });
    }
    let factorial = factorial(u64::from(n));
    Ok(SumSquaresReport { n, counts, sum_of_squares: sum, factorial, pass: sum == factorial && all_match })
}

/// Result of the worked dependence identities among the mixed tensors.
#[derive(Debug, Clone, Serialize)]
pub struct DependenceReport {
    /// The {1,1,2} identity: third vector plus the spanning pair sums to zero.
    pub content_112_dependent: bool,
    /// Sort swap 1 <-> 2 of the {1,1,2} pair lands in the {1,2,2} pair's span
    /// and satisfies the mirrored identity.
    pub mirror_122_consistent: bool,
    pub pass: bool,
}

/// Verifies the worked linear-dependence identity and its sort-swapped mirror.
pub fn formal_dependence_check() -> DependenceReport {
    let [t112, t211, t121] = mixed_reference_112();
    let sum = t121.add(&t112).and_then(|s| s.add(&t211)).expect("equal lengths");
    let content_112_dependent = sum.is_zero() && !t112.is_zero() && !t211.is_zero();

    let mirrored: Vec<FormalTensor> =
        mixed_reference_112().iter().map(|t| t.relabeled(1, 2)).collect();
    let mirror_sum = mirrored[0]
        .add(&mirrored[1])
        .and_then(|s| s.add(&mirrored[2]))
        .expect("equal lengths");
    let pair_122 = mixed_reference_122();
    let mirror_122_consistent = mirror_sum.is_zero() && span_equal(&mirrored, &pair_122);

    let pass = content_112_dependent && mirror_122_consistent;
    DependenceReport { content_112_dependent, mirror_122_consistent, pass }
}

/// Exact counting form of the Schur-Weyl style completeness:
/// `sum over diagrams with <= R rows of f_d * schemes_d = R^n`.
pub fn dimension_consistency(letters: u8, n: u32) -> Result<bool, YoungError> {
    let diagrams = enumerate_diagrams(n)?;
    let mut total = 0u64;
    for diagram in &diagrams {
        let schemes = enumerate_schemes(diagram, letters).len() as u64;
        if schemes == 0 {
            continue;
        }
        total += count_standard_tableaux(diagram) * schemes;
    }
    Ok(total == u64::from(letters).pow(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(rows: &[u32]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn diagram_validation() {
        assert!(YoungDiagram::new(vec![]).is_err());
        assert!(YoungDiagram::new(vec![2, 3]).is_err());
        assert!(YoungDiagram::new(vec![3, 0]).is_err());
        assert_eq!(diagram(&[3, 2]).cells(), 5);
        assert_eq!(diagram(&[3, 1]).column_height(0), 2);
        assert_eq!(diagram(&[3, 1]).column_height(1), 1);
    }

    #[test]
    fn diagram_enumeration_order_and_counts() {
        let three = enumerate_diagrams(3).unwrap();
        assert_eq!(three, vec![diagram(&[3]), diagram(&[2, 1]), diagram(&[1, 1, 1])]);
        assert_eq!(enumerate_diagrams(1).unwrap(), vec![diagram(&[1])]);
        assert_eq!(enumerate_diagrams(5).unwrap().len(), 7);
        assert!(enumerate_diagrams(0).is_err());
        assert!(enumerate_diagrams(13).is_err());
    }

    #[test]
    fn tableau_counts_match_hook_oracle() {
        for n in 1..=8 {
            for d in enumerate_diagrams(n).unwrap() {
                assert_eq!(count_standard_tableaux(&d), hook_length_count(&d), "diagram {d}");
            }
        }
        assert_eq!(count_standard_tableaux(&diagram(&[2, 1])), 2);
        assert_eq!(count_standard_tableaux(&diagram(&[6])), 1);
        assert_eq!(count_standard_tableaux(&diagram(&[3, 2])), 5);
    }

    #[test]
    fn sum_squares_identity() {
        for n in 1..=6 {
            let report = verify_sum_squares(n).unwrap();
            assert!(report.pass, "n={n}");
            assert_eq!(report.sum_of_squares, report.factorial);
        }
        let three = verify_sum_squares(3).unwrap();
        let fs: Vec<u64> = three.counts.iter().map(|c| c.tableaux).collect();
        assert_eq!(fs, vec![1, 2, 1]);
        assert_eq!(three.factorial, 6);
    }

    #[test]
    fn scheme_counts_match_weyl_oracle() {
        for n in 1..=6 {
            for d in enumerate_diagrams(n).unwrap() {
                for letters in 1..=4u8 {
                    assert_eq!(
                        enumerate_schemes(&d, letters).len() as u64,
                        weyl_dimension(&d, letters),
                        "diagram {d}, letters {letters}"
                    );
                }
            }
        }
        assert_eq!(enumerate_schemes(&diagram(&[3]), 2).len(), 4);
        assert_eq!(enumerate_schemes(&diagram(&[1, 1, 1]), 2).len(), 0);
        assert_eq!(enumerate_schemes(&diagram(&[2, 1]), 2).len(), 2);
    }

    #[test]
    fn scheme_contents_for_single_row() {
        let contents: Vec<Vec<u8>> =
            enumerate_schemes(&diagram(&[3]), 2).iter().map(StandardScheme::content).collect();
        assert_eq!(
            contents,
            vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]
        );
    }

    #[test]
    fn symmetric_tensors_match_reference() {
        let d = diagram(&[3]);
        let tableau = &enumerate_standard_tableaux(&d)[0];
        for scheme in enumerate_schemes(&d, 2) {
            let tensor = scheme_tensor(tableau, &scheme).unwrap();
            let reference = symmetric_reference(&scheme.content()).canonicalized();
            assert_eq!(tensor, reference, "content {:?}", scheme.content());
        }
    }

    #[test]
    fn mixed_tensors_span_the_reference_pair() {
        let d = diagram(&[2, 1]);
        let tableaux = enumerate_standard_tableaux(&d);
        assert_eq!(tableaux.len(), 2);
        for (scheme, reference) in [
            (vec![vec![1, 1], vec![2]], mixed_reference_112()[..2].to_vec()),
            (vec![vec![1, 2], vec![2]], mixed_reference_122().to_vec()),
        ] {
            let scheme = StandardScheme::new(d.clone(), scheme, 2).unwrap();
            let ours: Vec<FormalTensor> =
                tableaux.iter().map(|t| scheme_tensor(t, &scheme).unwrap()).collect();
            assert!(span_equal(&ours, &reference), "content {:?}", scheme.content());
        }
    }

    #[test]
    fn antisymmetric_column_tensor() {
        let d = diagram(&[1, 1]);
        let tableau = &enumerate_standard_tableaux(&d)[0];
        let scheme = StandardScheme::new(d.clone(), vec![vec![1], vec![2]], 2).unwrap();
        let tensor = scheme_tensor(tableau, &scheme).unwrap();
        let mut expected = FormalTensor::zero(2);
        expected.add_term(&Word::new(vec![1, 2]), &GaussianRational::one()).unwrap();
        expected.add_term(&Word::new(vec![2, 1]), &(-GaussianRational::one())).unwrap();
        assert_eq!(tensor, expected);
    }

    #[test]
    fn dependence_identities_hold() {
        let report = formal_dependence_check();
        assert!(report.content_112_dependent);
        assert!(report.mirror_122_consistent);
        assert!(report.pass);
    }

    #[test]
    fn dimension_consistency_counts() {
        for n in 1..=5 {
            assert!(dimension_consistency(2, n).unwrap(), "n={n}");
        }
        assert!(dimension_consistency(4, 4).unwrap());
    }

    #[test]
    fn canonicalization_rules() {
        let mut tensor = FormalTensor::zero(2);
        tensor
            .add_term(&Word::new(vec![1, 2]), &GaussianRational::from_ratio(-4, 6))
            .unwrap();
        tensor.add_term(&Word::new(vec![2, 1]), &GaussianRational::from_ratio(2, 3)).unwrap();
        let canonical = tensor.canonicalized();
        assert_eq!(
            canonical.coefficient(&Word::new(vec![1, 2])),
            Some(&GaussianRational::one())
        );
        assert_eq!(
            canonical.coefficient(&Word::new(vec![2, 1])),
            Some(&(-GaussianRational::one()))
        );
        assert_eq!(canonical.to_string(), "|12> - |21>");
    }

    #[test]
    fn symmetrizer_size_guard() {
        let d = diagram(&[10, 2]);
        let big_tableau = StandardTableau::new(
            d.clone(),
            vec![(1..=10).collect(), vec![11, 12]],
        )
        .unwrap();
        let scheme = StandardScheme::new(
            d,
            vec![vec![1; 10], vec![2, 2]],
            2,
        )
        .unwrap();
        let err = scheme_tensor(&big_tableau, &scheme).unwrap_err();
        assert!(matches!(err, YoungError::SymmetrizerTooLarge { .. }));
    }

    #[test]
    fn tensor_display_is_deterministic() {
        let [t112, ..] = mixed_reference_112();
        assert_eq!(t112.to_string(), "2|112> - |121> - |211>");
    }
}
