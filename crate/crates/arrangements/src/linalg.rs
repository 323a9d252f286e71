//! Exact rational linear algebra over arbitrary-precision rationals.
//!
//! Everything downstream (lattice ranks, differentials, cohomology quotients,
//! minimal models) reduces to row reduction over ℚ, so this module is the one
//! place where elimination order is fixed: pivots are chosen by scanning
//! columns left to right and taking the first unprocessed row with a nonzero
//! entry.  No magnitude-based pivoting, no hashing — identical inputs always
//! produce identical reduced forms, kernel bases and quotient coordinates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Exact rational scalar.  Always reduced, denominator always positive.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for a fraction `n/d` (`d` must be nonzero).
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace vector {index} lies outside the span of the ambient cycle set")]
    SubspaceNotInCycleSpan { index: usize },
    #[error("malformed rational literal {literal:?}")]
    BadRational { literal: String },
}

/// Parses a rational literal matching `-?[0-9]+(/[1-9][0-9]*)?`.
///
/// The denominator must be written without a leading zero and may not be
/// absent-but-empty; anything else (whitespace, `+` signs, decimal points) is
/// rejected rather than guessed at.
pub fn parse_rat(s: &str) -> Result<Rat, LinalgError> {
    let bad = || LinalgError::BadRational {
        literal: s.to_string(),
    };
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_part.strip_prefix('-').unwrap_or(num_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numerator: BigInt = num_part.parse().map_err(|_| bad())?;
    let denominator: BigInt = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) || d.starts_with('0') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(Rat::new(numerator, denominator))
}

/// Formats a rational in the same grammar `parse_rat` accepts: `p` when the
/// denominator is 1, `p/q` otherwise, always reduced.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse matrix over ℚ.  Zero entries are never stored, so structural
/// equality of the entry maps is equality of matrices, and the derived
/// ordering makes canonical forms usable as map keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    /// Builds a matrix from dense rows.  All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = QMat::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = QMat::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Stacks `other` below `self`; column counts must agree (a matrix with
    /// zero rows adapts to the other operand's width).
    pub fn stack(&self, other: &QMat) -> QMat {
        let cols = if self.rows == 0 {
            other.cols
        } else if other.rows == 0 {
            self.cols
        } else {
            assert_eq!(self.cols, other.cols, "stack width mismatch");
            self.cols
        };
        let mut m = QMat::zero(self.rows + other.rows, cols);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.set(self.rows + r, c, v.clone());
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    /// Reduced row echelon form with deterministic pivoting.
    ///
    /// Algorithm: walk columns left to right; in each column take the first
    /// row (at or below the current pivot row) with a nonzero entry, swap it
    /// up, scale to 1 and clear the column.  Runs in exact arithmetic.
    pub fn rref(&self) -> Rref {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(pivot_row, src);
            let inv = a[pivot_row][col].recip();
            for c in col..self.cols {
                let scaled = &a[pivot_row][c] * &inv;
                a[pivot_row][c] = scaled;
            }
            for r in 0..self.rows {
                if r != pivot_row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for c in col..self.cols {
                        let delta = &factor * &a[pivot_row][c];
                        a[r][c] = &a[r][c] - &delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            matrix: QMat::from_rows(a),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical kernel basis: one vector per free column `f`, with entry 1
    /// at `f` and `-rref[p][f]` at the pivot column of row `p`.  Vectors are
    /// ordered by free-column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let Rref { matrix, pivots } = self.rref();
        let pivot_set: BTreeMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains_key(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = rat(1);
            for (&col, &row) in &pivot_set {
                v[col] = -matrix.get(row, f);
            }
            basis.push(v);
        }
        basis
    }
}

/// Result of row reduction: the reduced matrix plus its pivot columns in
/// left-to-right order.  `pivots.len()` is the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A quotient `span(cycles) / span(subspace)` of a coordinate space, with an
/// explicit basis of selected cycle vectors and an exact linear projection.
///
/// Built once, then queried many times: cohomology groups, truncated exterior
/// algebras and minimal-model stages are all instances of this object.
#[derive(Clone, Debug)]
pub struct Quotient {
    ambient_dim: usize,
    subspace_rank: usize,
    basis: Vec<Vec<Rat>>,
    /// Top rows of the inverse-change matrix: coordinates in [subspace basis,
    /// quotient basis] for any vector of the cycle span.
    coord_rows: QMat,
    /// Remaining rows; they vanish exactly on the cycle span.
    check_rows: QMat,
}

/// Builds the quotient of `span(cycles)` by `span(subspace)` inside a
/// coordinate space of dimension `dim`.
///
/// The quotient basis consists of cycle vectors picked by pivoting on the
/// column matrix `[subspace | cycles]`, so the selection is deterministic and
/// each basis vector is an actual input cycle.  Errors if some subspace
/// vector falls outside the cycle span (the quotient would be ill-defined).
pub fn coset_representatives(
    dim: usize,
    subspace: &[Vec<Rat>],
    cycles: &[Vec<Rat>],
) -> Result<Quotient, LinalgError> {
    for v in subspace.iter().chain(cycles) {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    // Containment check: adding the subspace vectors one by one to the cycle
    // span must never raise the rank.
    let cycle_rank = QMat::from_columns(dim, cycles).rank();
    for (index, v) in subspace.iter().enumerate() {
        let mut cols: Vec<Vec<Rat>> = cycles.to_vec();
        cols.push(v.clone());
        if QMat::from_columns(dim, &cols).rank() != cycle_rank {
            return Err(LinalgError::SubspaceNotInCycleSpan { index });
        }
    }

    // Pivot over [subspace | cycles]: pivots inside the subspace block give a
    // basis of the subspace, pivots in the cycle block select the quotient
    // basis.
    let mut combined: Vec<Vec<Rat>> = subspace.to_vec();
    combined.extend(cycles.iter().cloned());
    let selection = QMat::from_columns(dim, &combined).rref();
    let mut sub_basis = Vec::new();
    let mut quo_basis = Vec::new();
    for &p in &selection.pivots {
        if p < subspace.len() {
            sub_basis.push(subspace[p].clone());
        } else {
            quo_basis.push(cycles[p - subspace.len()].clone());
        }
    }

    // Row-reduce [A | I] where A = [sub_basis | quo_basis] has full column
    // rank k: the result is [I_k T_top; 0 T_bottom] with T·A = [I_k; 0], so
    // T_top reads off coordinates and T_bottom tests membership.
    let k = sub_basis.len() + quo_basis.len();
    let mut a_cols = sub_basis.clone();
    a_cols.extend(quo_basis.iter().cloned());
    let mut augmented = QMat::from_columns(dim, &a_cols);
    augmented = join_columns(&augmented, &QMat::identity(dim));
    let reduced = augmented.rref().matrix;
    let mut coord_rows = QMat::zero(k, dim);
    let mut check_rows = QMat::zero(dim - k, dim);
    for r in 0..dim {
        for c in 0..dim {
            let v = reduced.get(r, k + c);
            if r < k {
                coord_rows.set(r, c, v);
            } else {
                check_rows.set(r - k, c, v);
            }
        }
    }
    Ok(Quotient {
        ambient_dim: dim,
        subspace_rank: sub_basis.len(),
        basis: quo_basis,
        coord_rows,
        check_rows,
    })
}

fn join_columns(left: &QMat, right: &QMat) -> QMat {
    assert_eq!(left.rows(), right.rows());
    let mut m = QMat::zero(left.rows(), left.cols() + right.cols());
    for (&(r, c), v) in &left.entries {
        m.set(r, c, v.clone());
    }
    for (&(r, c), v) in &right.entries {
        m.set(r, left.cols() + c, v.clone());
    }
    m
}

impl Quotient {
    /// Dimension of the quotient space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The selected cycle vectors representing the quotient basis.
    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// True iff `v` lies in the cycle span the quotient was built from.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        self.check_rows.mul_vec(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of a cycle vector modulo the subspace, in the quotient
    /// basis.  Linear, and zero exactly on the subspace.
    ///
    /// Panics if `v` is not in the cycle span; callers only ever project
    /// vectors they obtained as cycles, so that is an internal logic error.
    pub fn project(&self, v: &[Rat]) -> Vec<Rat> {
        assert!(
            self.contains(v),
            "projection applied to a vector outside the cycle span"
        );
        let all = self.coord_rows.mul_vec(v);
        all[self.subspace_rank..].to_vec()
    }

    /// Expands quotient coordinates back into an ambient representative.
    pub fn lift(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.basis.len(), "coordinate length mismatch");
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                for (o, bv) in out.iter_mut().zip(b) {
                    *o += c * bv;
                }
            }
        }
        out
    }
}

/// Sum of two coordinate vectors.
pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Scalar multiple of a coordinate vector.
pub fn vec_scale(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// True iff the rational is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(ns: &[i64]) -> Vec<Rat> {
        ns.iter().map(|&n| rat(n)).collect()
    }

    #[test]
    fn parse_accepts_the_grammar() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-3").unwrap(), rat(-3));
        assert_eq!(parse_rat("007").unwrap(), rat(7));
        assert_eq!(parse_rat("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat("-9/12").unwrap(), ratio(-3, 4));
    }

    #[test]
    fn parse_rejects_junk() {
        for bad in ["", "+3", "3.5", "1/0", "1/02", "1/-2", "a", "3/", "/3", " 3"] {
            assert!(parse_rat(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn format_roundtrips_reduced() {
        assert_eq!(format_rat(&ratio(4, 2)), "2");
        assert_eq!(format_rat(&ratio(-3, 6)), "-1/2");
        assert_eq!(format_rat(&rat(0)), "0");
        for s in ["5", "-7/11", "0"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
    }

    #[test]
    fn rref_small_example() {
        let m = QMat::from_int_rows(&[&[0, 1, 1], &[1, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix, QMat::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn rref_of_zero_matrix() {
        let m = QMat::zero(2, 3);
        let r = m.rref();
        assert!(r.pivots.is_empty());
        assert!(r.matrix.is_zero());
    }

    #[test]
    fn kernel_canonical_form() {
        let m = QMat::from_int_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(m.kernel_basis(), vec![iv(&[-1, 1, 0])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(QMat::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_standard_basis() {
        let m = QMat::zero(0, 3);
        let k = m.kernel_basis();
        assert_eq!(k, vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]);
    }

    #[test]
    fn quotient_with_zero_subspace_is_identity_on_cycles() {
        let cycles = vec![iv(&[1, 0]), iv(&[0, 1])];
        let q = coset_representatives(2, &[], &cycles).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.basis(), &cycles[..]);
        assert_eq!(q.project(&iv(&[3, -5])), iv(&[3, -5]));
    }

    #[test]
    fn quotient_by_diagonal_line() {
        // cycles = all of ℚ², subspace = span{(1,1)}: one-dimensional
        // quotient where the two standard vectors project to opposite values.
        let cycles = vec![iv(&[1, 0]), iv(&[0, 1])];
        let sub = vec![iv(&[1, 1])];
        let q = coset_representatives(2, &sub, &cycles).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(vec_is_zero(&q.project(&iv(&[1, 1]))));
        let a = q.project(&iv(&[1, 0]));
        let b = q.project(&iv(&[0, 1]));
        assert!(vec_is_zero(&vec_add(&a, &b)));
        assert!(!vec_is_zero(&a));
    }

    #[test]
    fn quotient_by_everything_is_trivial() {
        let cycles = vec![iv(&[1, 2]), iv(&[3, 4])];
        let q = coset_representatives(2, &cycles.clone(), &cycles).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(q.project(&iv(&[7, 9])), Vec::<Rat>::new());
    }

    #[test]
    fn quotient_rejects_subspace_outside_cycles() {
        let err = coset_representatives(2, &[iv(&[0, 1])], &[iv(&[1, 0])]).unwrap_err();
        assert_eq!(err, LinalgError::SubspaceNotInCycleSpan { index: 0 });
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    /// Strategy: small matrices with entries n/d, n ∈ [-4, 4], d ∈ [1, 3].
    fn small_matrix() -> impl Strategy<Value = QMat> {
        ((1usize..5, 1usize..5)).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |cells| {
                let rows = cells
                    .chunks(c)
                    .map(|chunk| chunk.iter().map(|&(n, d)| ratio(n, d)).collect())
                    .collect();
                QMat::from_rows(rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(&once.pivots, &twice.pivots);
        }

        #[test]
        fn kernel_vectors_are_killed_and_count_matches(m in small_matrix()) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(vec_is_zero(&m.mul_vec(v)));
            }
        }

        #[test]
        fn projection_is_linear_on_cycle_combinations(m in small_matrix()) {
            // Use the matrix columns as a cycle set and its first column span
            // as the subspace when contained; projection must be linear.
            let cols: Vec<Vec<Rat>> = (0..m.cols()).map(|c| m.column(c)).collect();
            let q = coset_representatives(m.rows(), &[], &cols).unwrap();
            let a = &cols[0];
            let b = cols.last().unwrap();
            let sum = vec_add(a, b);
            let lhs = q.project(&sum);
            let rhs = vec_add(&q.project(a), &q.project(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
