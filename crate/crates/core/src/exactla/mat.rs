use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::{Field, LinAlgError, Scalar};

/// A dense column vector.
pub type Vector = Vec<Scalar>;

/// Dense row-major matrix over a single [`Field`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from small integers given row by row.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let data = entries.iter().map(|&n| field.from_i64(n)).collect();
        Mat { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            for s in r {
                assert!(field.contains(s), "entry {s} not in {field}");
                data.push(s.clone());
            }
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        debug_assert!(self.field.contains(&s));
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let s = self.get(i, j);
                    if i == j {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.field, other.field, "field mismatch in product");
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and the pivot columns. Each pivot row is
    /// normalised before elimination, which keeps rational entries small.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let nv = v.mul(&inv);
                    m.set(r, j, nv);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> =
                (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).map(|j| (j, m.get(r, j).clone())).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pv) in &pivot_row {
                    let nv = m.get(i, *j).sub(&factor.mul(pv));
                    m.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Solves `AX = B` for a matrix `X`, if a solution exists.
    pub fn solve_matrix(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in solve_matrix");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_matrix(&Mat::identity(self.field, self.rows))
    }
}

fn kernel_from_rref(r: &Mat, pivots: &[usize]) -> Vec<Vector> {
    let field = r.field;
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); r.cols];
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            let e = r.get(row, free);
            if !e.is_zero() {
                v[p] = e.neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// A particular solution (if any) together with a kernel basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Option<Vector>,
    pub kernel: Vec<Vector>,
}

/// Solves `Ax = b` exactly.
pub fn solve_linear(a: &Mat, b: &[Scalar]) -> Result<LinearSolution, LinAlgError> {
    if b.len() != a.rows {
        return Err(LinAlgError::DimensionMismatch { expected: a.rows, found: b.len() });
    }
    if let Some(s) = b.iter().find(|s| !a.field.contains(s)) {
        return Err(LinAlgError::FieldMismatch(s.to_string(), a.field));
    }
    let bcol = Mat::from_columns(a.field, a.rows, &[b.to_vec()]);
    let (r, pivots) = a.hstack(&bcol).rref();
    let inconsistent = pivots.last() == Some(&a.cols);
    let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < a.cols).collect();
    let coeff = r.block(0, 0, r.rows, a.cols);
    let kernel = kernel_from_rref(&coeff, &coeff_pivots);
    let particular = if inconsistent {
        None
    } else {
        let mut x = vec![a.field.zero(); a.cols];
        for (row, &p) in coeff_pivots.iter().enumerate() {
            x[p] = r.get(row, a.cols).clone();
        }
        Some(x)
    };
    Ok(LinearSolution { particular, kernel })
}

/// Rank of the matrix (exposed as a free function for symmetry with the other kernels).
pub fn rank(a: &Mat) -> usize {
    a.rank()
}

/// Representatives of a basis of `span(V) / span(W)`.
///
/// Representatives are chosen greedily from `v_span` in order, so they are
/// always members of the input list.
pub fn quotient_basis(field: Field, v_span: &[Vector], w_span: &[Vector]) -> Result<Vec<Vector>, LinAlgError> {
    let dim = v_span.first().or(w_span.first()).map_or(0, Vec::len);
    if v_span.iter().chain(w_span).any(|v| v.len() != dim) {
        return Err(LinAlgError::DimensionMismatch { expected: dim, found: 0 });
    }
    if dim == 0 {
        return Ok(Vec::new());
    }
    let vmat = Mat::from_columns(field, dim, v_span);
    let rank_v = vmat.rank();
    let wmat = Mat::from_columns(field, dim, w_span);
    if vmat.hstack(&wmat).rank() > rank_v {
        return Err(LinAlgError::NotContained);
    }
    let mut chosen = wmat;
    let mut current = chosen.rank();
    let mut reps = Vec::new();
    for v in v_span {
        let trial = chosen.hstack(&Mat::from_columns(field, dim, std::slice::from_ref(v)));
        let r = trial.rank();
        if r > current {
            current = r;
            chosen = trial;
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(" "))?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Serialised as a list of rows of strings.
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn identity_system() {
        let q = Field::Rationals;
        let sol = solve_linear(&Mat::identity(q, 2), &vecq(q, &[1, 2])).unwrap();
        assert_eq!(sol.particular, Some(vecq(q, &[1, 2])));
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn one_equation_over_f2() {
        let f2 = Field::Prime(2);
        let a = Mat::from_i64(f2, 1, 2, &[1, 1]);
        let sol = solve_linear(&a, &vecq(f2, &[1])).unwrap();
        assert_eq!(sol.particular, Some(vecq(f2, &[1, 0])));
        assert_eq!(sol.kernel, vec![vecq(f2, &[1, 1])]);
    }

    #[test]
    fn inconsistent_system() {
        let q = Field::Rationals;
        let a = Mat::from_i64(q, 1, 1, &[0]);
        let sol = solve_linear(&a, &vecq(q, &[1])).unwrap();
        assert_eq!(sol.particular, None);
        assert_eq!(sol.kernel, vec![vecq(q, &[1])]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let q = Field::Rationals;
        let err = solve_linear(&Mat::identity(q, 2), &vecq(q, &[1])).unwrap_err();
        assert!(matches!(err, LinAlgError::DimensionMismatch { .. }));
    }

    #[test]
    fn ranks() {
        let q = Field::Rationals;
        assert_eq!(Mat::from_i64(q, 2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(Mat::from_i64(Field::Prime(2), 1, 1, &[2]).rank(), 0);
        assert_eq!(Mat::identity(q, 3).rank(), 3);
    }

    #[test]
    fn quotient_examples() {
        let q = Field::Rationals;
        let v = vec![vecq(q, &[1, 0]), vecq(q, &[0, 1])];
        let w = vec![vecq(q, &[1, 1])];
        assert_eq!(quotient_basis(q, &v, &w).unwrap(), vec![vecq(q, &[1, 0])]);
        assert!(quotient_basis(q, &v, &v).unwrap().is_empty());
        let single = vec![vecq(q, &[1, 2])];
        assert_eq!(quotient_basis(q, &single, &[]).unwrap(), single);
        let outside = vec![vecq(q, &[0, 1])];
        assert!(matches!(quotient_basis(q, &single, &outside), Err(LinAlgError::NotContained)));
    }

    #[test]
    fn inverse_and_solve_matrix() {
        let q = Field::Rationals;
        let a = Mat::from_i64(q, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Mat::from_i64(q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
