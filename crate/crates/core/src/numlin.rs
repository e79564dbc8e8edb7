//! Dense real matrices, SVD-based numerical rank and observability stacks.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense `rows × cols` matrix of finite doubles.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix(DMatrix<f64>);

impl DenseMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!(
                "entry ({}, {})",
                i / cols.max(1),
                i % cols.max(1)
            )));
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_row_major(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("diagonal entry".into()));
        }
        Ok(Self(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    /// Sets one entry; non-finite values are rejected.
    pub fn set(&mut self, row: usize, col: usize, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("entry ({row}, {col})")));
        }
        self.0[(row, col)] = value;
        Ok(())
    }

    pub fn row_major(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self(&self.0 * &rhs.0))
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.rows() != rhs.rows() || self.cols() != rhs.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self(&self.0 + &rhs.0))
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.rows() == 0 || self.cols() == 0 {
            return Ok(Vec::new());
        }
        let mut sv: Vec<f64> = self.0.clone().singular_values().iter().copied().collect();
        if sv.iter().any(|x| !x.is_finite()) {
            return Err(Error::Numerical("SVD produced non-finite singular values".into()));
        }
        sv.sort_by(|a, b| b.total_cmp(a));
        Ok(sv)
    }

    pub fn as_nalgebra(&self) -> &DMatrix<f64> {
        &self.0
    }
}

impl From<DMatrix<f64>> for DenseMatrix {
    fn from(m: DMatrix<f64>) -> Self {
        Self(m)
    }
}

/// `σ_max · max(rows, cols) · ε`.
pub fn default_rank_tolerance(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    sigma_max * rows.max(cols) as f64 * f64::EPSILON
}

/// Number of singular values strictly above `tol` (default
/// [`default_rank_tolerance`]). Empty and all-zero matrices have rank 0.
pub fn numerical_rank(m: &DenseMatrix, tol: Option<f64>) -> Result<usize> {
    if let Some(t) = tol {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidInput(format!(
                "rank tolerance must be finite and non-negative, got {t}"
            )));
        }
    }
    if m.is_zero() {
        return Ok(0);
    }
    let sv = m.singular_values()?;
    let tol = tol.unwrap_or_else(|| default_rank_tolerance(m.rows(), m.cols(), sv[0]));
    Ok(sv.iter().take_while(|&&s| s > tol).count())
}

/// Vertical stack `[C; C·A; C·A²; …; C·Aⁿ⁻¹]` for square `n × n` inputs.
pub fn observability_stack(c: &DenseMatrix, a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    if a.cols() != n || c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "observability stack needs square matrices of equal size, got C {}x{} and A {}x{}",
            c.rows(),
            c.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let mut stack = DMatrix::zeros(n * n, n);
    let mut block = c.0.clone();
    for p in 0..n {
        stack.rows_mut(p * n, n).copy_from(&block);
        if p + 1 < n {
            block = &block * &a.0;
        }
    }
    if stack.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical(
            "observability stack overflowed; rescale the state matrix".into(),
        ));
    }
    Ok(DenseMatrix(stack))
}
