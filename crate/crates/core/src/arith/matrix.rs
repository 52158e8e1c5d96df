use super::extension::{ExtElem, ExtensionField};
use super::field::{Field, Ring, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field given by context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<E> {
    Consistent {
        /// One solution X of A·X = B (shape cols(A) × cols(B)).
        particular: Matrix<E>,
        /// Basis of the kernel of A.
        kernel: Vec<Vec<E>>,
    },
    Inconsistent,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros<F: Ring<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Ring<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns<F: Ring<Elem = E>>(field: &F, rows: usize, cols: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column has wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<G>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.extend_from_slice(other.row(i));
            rows.push(r);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn add<F: Ring<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Ring<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Ring<Elem = E>>(&self, c: &E, field: &F) -> Self {
        self.map(|a| field.mul(a, c))
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul<F: Ring<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = field.add(&out.data[idx], &field.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Ring<Elem = E>>(&self, v: &[E], field: &F) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        acc = field.add(&acc, &field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero<F: Ring<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|a| field.is_zero(a))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).1.len()
    }

    /// A basis of {x : A·x = 0}, one vector per free column.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(field, n));
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Basis of the row space (nonzero rows of the rref).
    pub fn row_space<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

/// Solves A·X = B exactly: a particular solution plus a kernel basis, or
/// `Inconsistent`.
pub fn solve_linear<F: Field>(a: &Matrix<F::Elem>, b: &Matrix<F::Elem>, field: &F) -> Result<Solution<F::Elem>> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let aug = a.hstack(b);
    let (r, pivots) = aug.rref(field);
    if pivots.iter().any(|&p| p >= n) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = Matrix::zeros(field, n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            particular.set(p, j, r.get(row, n + j).clone());
        }
    }
    Ok(Solution::Consistent {
        particular,
        kernel: a.kernel(field),
    })
}

/// Writes a matrix over Ω as a matrix over k on the power-basis expansion of
/// coordinates: entry (i, j) becomes the n×n block of multiplication by it,
/// and coordinate (j, l) of a vector maps to index j·n + l.
pub fn restrict_scalars_matrix(m: &Matrix<ExtElem>, ext: &ExtensionField) -> Matrix<Scalar> {
    let n = ext.degree();
    let k = ext.base();
    let mut out = Matrix::zeros(&k, m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let block = ext.mul_matrix(m.get(i, j));
            for a in 0..n {
                for b in 0..n {
                    out.set(i * n + a, j * n + b, block.get(a, b).clone());
                }
            }
        }
    }
    out
}

/// Flattens a vector over Ω into k-coordinates (index j·n + l).
pub fn restrict_vector(v: &[ExtElem]) -> Vec<Scalar> {
    v.iter().flat_map(|a| a.coords().iter().cloned()).collect()
}

/// Inverse of [`restrict_vector`].
pub fn extend_vector(v: &[Scalar], ext: &ExtensionField) -> Vec<ExtElem> {
    v.chunks(ext.degree()).map(|c| ext.from_coords(c.to_vec())).collect()
}

/// Embeds a matrix over k into Ω.
pub fn embed_matrix(m: &Matrix<Scalar>, ext: &ExtensionField) -> Matrix<ExtElem> {
    m.map(|c| ext.embed(c))
}
