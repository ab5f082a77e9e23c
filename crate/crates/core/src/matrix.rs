//! Dense matrices over an exact scalar, plus exact span arithmetic via
//! reduced row echelon form.
//!
//! Subspaces are kept in canonical rref form, so span equality is a
//! syntactic comparison and insertion order never matters.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix parse error: {0}")]
    Parse(String),
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for j in 0..n {
            m.set(j, j, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != nc) {
            return Err(MatrixError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: nr, cols: nc, entries: rows.into_iter().flatten().collect() })
    }

    /// The matrix unit e_{jk} (1-based indices, as in e_{12}·e_{23} = e_{13}).
    pub fn elementary(rows: usize, cols: usize, j: usize, k: usize) -> Result<Self, MatrixError> {
        if j < 1 || j > rows || k < 1 || k > cols {
            return Err(MatrixError::IndexOutOfRange(format!(
                "e_({j},{k}) does not fit a {rows}x{cols} matrix"
            )));
        }
        let mut m = Self::zero(rows, cols);
        m.set(j - 1, k - 1, S::one());
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn trace(&self) -> Result<S, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::ShapeMismatch("trace of a non-square matrix".into()));
        }
        let mut t = S::zero();
        for j in 0..self.rows {
            t = t + self.at(j, j).clone();
        }
        Ok(t)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![S::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let acc = std::mem::replace(&mut out[idx], S::zero());
                    out[idx] = acc + a.clone() * b.clone();
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, entries: out })
    }

    /// Row-major flattening, the fixed vectorization convention for spans.
    pub fn vectorize(&self) -> Vec<S> {
        self.entries.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

fn check_square_pair<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<(), MatrixError> {
    if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
        return Err(MatrixError::ShapeMismatch(format!(
            "expected equal square matrices, got {}x{} and {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(())
}

/// xy − yx.
pub fn commutator<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
    check_square_pair(x, y)?;
    x.mul(y)?.sub(&y.mul(x)?)
}

/// xy + yx.
pub fn anticommutator<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Result<Matrix<S>, MatrixError> {
    check_square_pair(x, y)?;
    x.mul(y)?.add(&y.mul(x)?)
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    /// Text format: rows on lines, entries comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar + FromStr> FromStr for Matrix<S>
where
    S::Err: fmt::Display,
{
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<S>> = Vec::new();
        for line in s.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|tok| tok.trim().parse::<S>().map_err(|e| MatrixError::Parse(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MatrixError::Parse("empty matrix text".into()));
        }
        Self::from_rows(rows)
    }
}

/// Parses a file of matrices in the text format, one block per matrix,
/// blocks separated by blank lines.
pub fn parse_matrix_blocks<S: Scalar + FromStr>(text: &str) -> Result<Vec<Matrix<S>>, MatrixError>
where
    S::Err: fmt::Display,
{
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if !block.is_empty() {
                out.push(block.join("\n").parse()?);
                block.clear();
            }
        } else {
            block.push(line);
        }
    }
    if out.is_empty() {
        return Err(MatrixError::Parse("no matrices found".into()));
    }
    Ok(out)
}

/// A linear subspace of vectorized matrices, held in canonical reduced
/// row echelon form: each pivot entry is 1 and is the only nonzero entry
/// in its column, rows sorted by pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis<S> {
    ambient_dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> SpanBasis<S> {
    pub fn new(ambient_dim: usize) -> Self {
        Self { ambient_dim, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rref_rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    fn check_dim(&self, len: usize) -> Result<(), MatrixError> {
        if len != self.ambient_dim {
            return Err(MatrixError::ShapeMismatch(format!(
                "vector length {len} vs ambient dimension {}",
                self.ambient_dim
            )));
        }
        Ok(())
    }

    /// Residual of v after elimination against the current rows.
    fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut v[p], S::zero());
            for (j, rv) in row.iter().enumerate() {
                if j == p || rv.is_zero() {
                    continue;
                }
                let acc = std::mem::replace(&mut v[j], S::zero());
                v[j] = acc - f.clone() * rv.clone();
            }
        }
        v
    }

    pub(crate) fn insert_vec_in_place(&mut self, v: Vec<S>) -> bool {
        let mut v = self.reduce(v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // normalize so the pivot entry is 1
        let pivot_val = v[lead].clone();
        v[lead] = S::one();
        for x in v.iter_mut().skip(lead + 1) {
            if !x.is_zero() {
                *x = x.clone() / pivot_val.clone();
            }
        }
        // eliminate the new pivot column from existing rows
        for row in &mut self.rows {
            if row[lead].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut row[lead], S::zero());
            for (j, nv) in v.iter().enumerate() {
                if j == lead || nv.is_zero() {
                    continue;
                }
                let acc = std::mem::replace(&mut row[j], S::zero());
                row[j] = acc - f.clone() * nv.clone();
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// Returns the span extended by m, plus whether m was outside the old span.
    pub fn insert(&self, m: &Matrix<S>) -> Result<(Self, bool), MatrixError> {
        let v = m.vectorize();
        self.check_dim(v.len())?;
        let mut next = self.clone();
        let was_new = next.insert_vec_in_place(v);
        Ok((next, was_new))
    }

    pub fn contains(&self, m: &Matrix<S>) -> Result<bool, MatrixError> {
        let v = m.vectorize();
        self.check_dim(v.len())?;
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, MatrixError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(MatrixError::ShapeMismatch(format!(
                "ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(self.pivots == other.pivots && self.rows == other.rows)
    }

    /// The canonical rref rows reshaped into matrices.
    pub fn row_matrices(&self, rows: usize, cols: usize) -> Result<Vec<Matrix<S>>, MatrixError> {
        self.check_dim(rows * cols)?;
        self.rows
            .iter()
            .map(|v| Matrix::from_vec(rows, cols, v.clone()))
            .collect()
    }

    pub fn from_matrices<'a, I>(ambient_dim: usize, items: I) -> Result<Self, MatrixError>
    where
        S: 'a,
        I: IntoIterator<Item = &'a Matrix<S>>,
    {
        let mut span = Self::new(ambient_dim);
        for m in items {
            let v = m.vectorize();
            span.check_dim(v.len())?;
            span.insert_vec_in_place(v);
        }
        Ok(span)
    }
}

/// Gauss-Jordan elimination with coefficient tracking: expresses vectors
/// of the span as combinations of the original input vectors.
pub(crate) struct Expander<S> {
    pivots: Vec<usize>,
    rows: Vec<Vec<S>>,
    combos: Vec<Vec<S>>,
    n_inputs: usize,
}

impl<S: Scalar> Expander<S> {
    /// Returns None if the inputs are linearly dependent.
    pub(crate) fn new(vectors: &[Vec<S>]) -> Option<Self> {
        let n = vectors.len();
        let mut exp = Self { pivots: Vec::new(), rows: Vec::new(), combos: Vec::new(), n_inputs: n };
        for (idx, v) in vectors.iter().enumerate() {
            let mut combo = vec![S::zero(); n];
            combo[idx] = S::one();
            let mut v = v.clone();
            // eliminate against existing rows, tracking the combination
            for ((row, rc), &p) in exp.rows.iter().zip(&exp.combos).zip(&exp.pivots) {
                if v[p].is_zero() {
                    continue;
                }
                let f = std::mem::replace(&mut v[p], S::zero());
                for (j, rv) in row.iter().enumerate() {
                    if j == p || rv.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut v[j], S::zero());
                    v[j] = acc - f.clone() * rv.clone();
                }
                for (j, rv) in rc.iter().enumerate() {
                    if rv.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut combo[j], S::zero());
                    combo[j] = acc - f.clone() * rv.clone();
                }
            }
            let lead = v.iter().position(|x| !x.is_zero())?;
            let pivot_val = v[lead].clone();
            v[lead] = S::one();
            for x in v.iter_mut().skip(lead + 1) {
                if !x.is_zero() {
                    *x = x.clone() / pivot_val.clone();
                }
            }
            for x in combo.iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / pivot_val.clone();
                }
            }
            for (row, rc) in exp.rows.iter_mut().zip(exp.combos.iter_mut()) {
                if row[lead].is_zero() {
                    continue;
                }
                let f = std::mem::replace(&mut row[lead], S::zero());
                for (j, nv) in v.iter().enumerate() {
                    if j == lead || nv.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut row[j], S::zero());
                    row[j] = acc - f.clone() * nv.clone();
                }
                for (j, nv) in combo.iter().enumerate() {
                    if nv.is_zero() {
                        continue;
                    }
                    let acc = std::mem::replace(&mut rc[j], S::zero());
                    rc[j] = acc - f.clone() * nv.clone();
                }
            }
            let pos = exp.pivots.partition_point(|&p| p < lead);
            exp.pivots.insert(pos, lead);
            exp.rows.insert(pos, v);
            exp.combos.insert(pos, combo);
        }
        Some(exp)
    }

    /// Coefficients of v over the original input vectors, or None if v is
    /// outside their span.
    pub(crate) fn expand(&self, v: &[S]) -> Option<Vec<S>> {
        let mut residual = v.to_vec();
        let mut rref_coeffs = vec![S::zero(); self.rows.len()];
        for (r, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if residual[p].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut residual[p], S::zero());
            for (j, rv) in row.iter().enumerate() {
                if j == p || rv.is_zero() {
                    continue;
                }
                let acc = std::mem::replace(&mut residual[j], S::zero());
                residual[j] = acc - f.clone() * rv.clone();
            }
            rref_coeffs[r] = f;
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut out = vec![S::zero(); self.n_inputs];
        for (f, combo) in rref_coeffs.iter().zip(&self.combos) {
            if f.is_zero() {
                continue;
            }
            for (j, cv) in combo.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let acc = std::mem::replace(&mut out[j], S::zero());
                out[j] = acc + f.clone() * cv.clone();
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldElem, Rational};
    use num::BigInt;
    use proptest::prelude::*;

    type Mat = Matrix<FieldElem>;

    fn e(n: usize, j: usize, k: usize) -> Mat {
        Matrix::elementary(n, n, j, k).unwrap()
    }

    fn int_mat(rows: &[&[i64]]) -> Mat {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| FieldElem::from_int(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn elementary_examples() {
        let m = Matrix::<FieldElem>::elementary(3, 3, 1, 2).unwrap();
        assert_eq!(m, int_mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        let p = e(2, 1, 1);
        assert_eq!(p.mul(&p).unwrap(), p);
        assert_eq!(e(3, 1, 2).mul(&e(3, 2, 3)).unwrap(), e(3, 1, 3));
        assert!(Matrix::<FieldElem>::elementary(3, 3, 0, 1).is_err());
        assert!(Matrix::<FieldElem>::elementary(3, 3, 1, 4).is_err());
    }

    #[test]
    fn commutator_examples() {
        let x = int_mat(&[&[1, 2], &[3, 4]]);
        assert!(commutator(&x, &x).unwrap().is_zero());
        let ac = anticommutator(&e(2, 1, 2), &e(2, 2, 1)).unwrap();
        assert_eq!(ac, int_mat(&[&[1, 0], &[0, 1]]));
        assert!(commutator(&e(2, 1, 2), &e(3, 1, 2)).is_err());
    }

    #[test]
    fn gell_mann_l6_l7_commutator_by_direct_multiplication() {
        // independent oracle: multiply the two 3x3 matrices directly
        let i = FieldElem::i();
        let l6 = e(3, 2, 3).add(&e(3, 3, 2)).unwrap();
        let l7 = e(3, 2, 3).scale(&-i.clone()).add(&e(3, 3, 2).scale(&i)).unwrap();
        let got = commutator(&l6, &l7).unwrap();
        let two_i = FieldElem::new(
            Rational::zero(),
            Rational::new(BigInt::from(2), BigInt::from(1)),
            Rational::zero(),
            Rational::zero(),
        );
        let mut expected = Mat::zero(3, 3);
        expected.set(1, 1, two_i.clone());
        expected.set(2, 2, -two_i);
        assert_eq!(got, expected);
    }

    #[test]
    fn span_insert_examples() {
        let span = SpanBasis::new(4);
        let (same, was_new) = span.insert(&Mat::zero(2, 2)).unwrap();
        assert!(!was_new);
        assert_eq!(same.rank(), 0);

        let (s1, new1) = span.insert(&e(2, 1, 1)).unwrap();
        assert!(new1);
        assert_eq!(s1.rank(), 1);

        let a = e(2, 1, 1).add(&e(2, 2, 2)).unwrap();
        let b = e(2, 1, 1).sub(&e(2, 2, 2)).unwrap();
        let (s, n1) = SpanBasis::new(4).insert(&a).unwrap();
        assert!(n1);
        let (s, n2) = s.insert(&b).unwrap();
        assert!(n2);
        let (s, n3) = s.insert(&e(2, 2, 2)).unwrap();
        assert!(!n3);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn span_contains_and_equal_examples() {
        let (s, _) = SpanBasis::new(4).insert(&e(2, 1, 1)).unwrap();
        let seven = e(2, 1, 1).scale(&FieldElem::from_int(7));
        assert!(s.contains(&seven).unwrap());
        assert!(!s.contains(&e(2, 1, 2)).unwrap());

        let sum = e(2, 1, 1).add(&e(2, 2, 2)).unwrap();
        let diff = e(2, 1, 1).sub(&e(2, 2, 2)).unwrap();
        let a = SpanBasis::from_matrices(4, [&sum, &diff]).unwrap();
        let b = SpanBasis::from_matrices(4, [&e(2, 1, 1), &e(2, 2, 2)]).unwrap();
        assert!(a.equal(&b).unwrap());
        assert!(SpanBasis::<FieldElem>::new(4).equal(&SpanBasis::new(9)).is_err());
    }

    #[test]
    fn expander_roundtrip() {
        let vs: Vec<Vec<FieldElem>> = vec![
            int_mat(&[&[1, 1], &[0, 0]]).vectorize(),
            int_mat(&[&[1, -1], &[0, 0]]).vectorize(),
            int_mat(&[&[0, 0], &[1, 2]]).vectorize(),
        ];
        let exp = Expander::new(&vs).unwrap();
        let v = int_mat(&[&[3, 1], &[2, 4]]).vectorize();
        let coeffs = exp.expand(&v).unwrap();
        // rebuild from the coefficients
        let mut acc = vec![FieldElem::zero(); 4];
        for (c, base) in coeffs.iter().zip(&vs) {
            for (j, bv) in base.iter().enumerate() {
                acc[j] = acc[j].clone() + c.clone() * bv.clone();
            }
        }
        assert_eq!(acc, v);
        assert!(exp.expand(&int_mat(&[&[0, 0], &[0, 1]]).vectorize()).is_none());

        let dep = vec![vs[0].clone(), vs[1].clone(), int_mat(&[&[2, 0], &[0, 0]]).vectorize()];
        assert!(Expander::<FieldElem>::new(&dep).is_none());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = int_mat(&[&[0, 1], &[-2, 0]]);
        let text = m.to_string();
        assert_eq!(text, "0, 1\n-2, 0");
        assert_eq!(text.parse::<Mat>().unwrap(), m);

        let blocks = "1, 0\n0, 1\n\n0, 1\n1, 0\n";
        let ms: Vec<Mat> = parse_matrix_blocks(blocks).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0], Matrix::identity(2));
        assert!("1, x".parse::<Mat>().is_err());
    }

    fn small_int_matrix(n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            Matrix::from_vec(n, n, v.into_iter().map(FieldElem::from_int).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn trace_of_commutator_vanishes(x in small_int_matrix(3), y in small_int_matrix(3)) {
            let c = commutator(&x, &y).unwrap();
            prop_assert!(c.trace().unwrap().is_zero());
        }

        #[test]
        fn transpose_reverses_products(x in small_int_matrix(3), y in small_int_matrix(3)) {
            let lhs = x.mul(&y).unwrap().transpose();
            let rhs = y.transpose().mul(&x.transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rref_is_insertion_order_independent(
            ms in proptest::collection::vec(small_int_matrix(2), 1..5),
            seed in 0u64..1000,
        ) {
            let ambient = 4;
            let forward = SpanBasis::from_matrices(ambient, ms.iter()).unwrap();
            // a cheap deterministic shuffle
            let mut shuffled: Vec<&Mat> = ms.iter().collect();
            let n = shuffled.len();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                shuffled.swap(i, j);
            }
            let backward = SpanBasis::from_matrices(ambient, shuffled.into_iter()).unwrap();
            prop_assert_eq!(forward, backward);
        }
    }
}
