//! Dense linear-algebra kernels for desk-scale solves.
//!
//! Everything here is deliberately dense and direct: Cholesky with a damping
//! escalation schedule, a cyclic Jacobi eigendecomposition, a Gram-based
//! minimum-norm least-squares kernel and a partial-pivot LU. Problems in this
//! crate have tens of variables, so O(n³) factorizations with deterministic
//! behavior beat iterative solvers and their tuning knobs.
//!
//! Conventions: matrices are row-major, vectors are plain `f64` columns.
//! Public constructors reject non-finite entries; shape errors on the solver
//! entry points are reported as [`Error::ShapeMismatch`], while the small
//! arithmetic helpers panic on dimension misuse (programmer error).

use crate::error::{Error, Result};

/// Hard floor on Cholesky pivots: a damped factorization only counts as
/// successful when every pivot exceeds this.
pub const PIVOT_FLOOR: f64 = 1e-12;

/// Damping values above this abort the escalation schedule.
pub const DAMPING_CEILING: f64 = 1e12;

/// Relative tolerance (times the largest singular value) deciding numerical
/// rank in the least-squares and null-space kernels.
pub const RANK_TOL: f64 = 1e-10;

/// Relative entry tolerance for treating a matrix as symmetric.
const SYMMETRY_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// DenseVector
// ---------------------------------------------------------------------------

/// Owned dense column vector with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseVector {
    data: Vec<f64>,
}

impl DenseVector {
    /// Wraps a `Vec<f64>`, rejecting NaN/Inf entries.
    pub fn from_vec(data: Vec<f64>) -> Result<Self> {
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput("vector entry is NaN or infinite".into()));
        }
        Ok(Self { data })
    }

    /// Copies a slice, rejecting NaN/Inf entries.
    pub fn from_slice(data: &[f64]) -> Result<Self> {
        Self::from_vec(data.to_vec())
    }

    /// All-zero vector of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { data: vec![0.0; n] }
    }

    /// Internal constructor for arithmetic results; skips the finiteness scan.
    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        Self { data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.data.clone()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Euclidean inner product. Panics on length mismatch.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Max-magnitude norm (0 for the empty vector).
    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        self.norm2_squared().sqrt()
    }

    /// Squared Euclidean norm.
    pub fn norm2_squared(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// `self + other`. Panics on length mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "add: length mismatch");
        Self::from_raw(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect())
    }

    /// `self - other`. Panics on length mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "sub: length mismatch");
        Self::from_raw(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect())
    }

    /// `alpha * self`.
    pub fn scaled(&self, alpha: f64) -> Self {
        Self::from_raw(self.data.iter().map(|v| alpha * v).collect())
    }

    /// `self + alpha * other`. Panics on length mismatch.
    pub fn add_scaled(&self, alpha: f64, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "add_scaled: length mismatch");
        Self::from_raw(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for DenseVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

/// Owned dense row-major matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, validating the count and that
    /// every entry is finite.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x{} = {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput("matrix entry is NaN or infinite".into()));
        }
        Ok(Self { rows, cols, data })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Largest entry magnitude (0 for empty matrices).
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Entrywise symmetry check: |a_ij - a_ji| <= 1e-12 * max(1, |a_ij|).
    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if (a - b).abs() > SYMMETRY_TOL * a.abs().max(1.0) {
                    return false;
                }
            }
        }
        true
    }

    /// Symmetric part `(A + Aᵀ)/2`.
    pub fn symmetrized(&self) -> Self {
        assert!(self.is_square(), "symmetrized: matrix must be square");
        let n = self.rows;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                out.set(i, j, v);
            }
        }
        out
    }

    /// Matrix-vector product `A x`. Panics on dimension mismatch.
    pub fn matvec(&self, x: &DenseVector) -> DenseVector {
        assert_eq!(self.cols, x.len(), "matvec: dimension mismatch");
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            out[i] = row.iter().zip(x.as_slice()).map(|(a, b)| a * b).sum();
        }
        DenseVector::from_raw(out)
    }

    /// Transposed product `Aᵀ x`. Panics on dimension mismatch.
    pub fn tr_matvec(&self, x: &DenseVector) -> DenseVector {
        assert_eq!(self.rows, x.len(), "tr_matvec: dimension mismatch");
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        DenseVector::from_raw(out)
    }

    /// Matrix product `A B`. Panics on dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    /// Transpose copy.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Gram matrix `AᵀA`, mirrored so it is exactly symmetric.
    pub fn gram(&self) -> Self {
        let n = self.cols;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..self.rows {
                    s += self.get(k, i) * self.get(k, j);
                }
                out.set(i, j, s);
                out.set(j, i, s);
            }
        }
        out
    }

    /// Entrywise sum `A + B`. Panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix add: shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_raw(self.rows, self.cols, data)
    }

    /// `alpha * A`.
    pub fn scaled(&self, alpha: f64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|v| alpha * v).collect())
    }

    /// Symmetric rank-one update `A += scale · v vᵀ`. Panics if shapes
    /// disagree.
    pub(crate) fn rank_one_update(&mut self, v: &DenseVector, scale: f64) {
        assert!(self.is_square() && self.rows == v.len(), "rank_one_update: shape mismatch");
        for i in 0..self.rows {
            let vi = scale * v[i];
            for j in 0..self.cols {
                self.data[i * self.cols + j] += vi * v[j];
            }
        }
    }

    /// `A + tau * I`. Panics if not square.
    pub fn plus_scaled_identity(&self, tau: f64) -> Self {
        assert!(self.is_square(), "plus_scaled_identity: matrix must be square");
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) + tau;
            out.set(i, i, v);
        }
        out
    }

    /// Copies `block` into `self` with its (0,0) entry at `(r0, c0)`.
    pub(crate) fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    /// Extracts column `j` as a vector.
    pub fn column(&self, j: usize) -> DenseVector {
        assert!(j < self.cols);
        DenseVector::from_raw((0..self.rows).map(|i| self.get(i, j)).collect())
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

// ---------------------------------------------------------------------------
// Cholesky with pivot floor + damping escalation
// ---------------------------------------------------------------------------

/// Lower Cholesky factor of a symmetric matrix, or `None` if any pivot fails
/// the `PIVOT_FLOOR` test. Only the lower triangle of `h` is read.
fn cholesky_lower(h: &DenseMatrix) -> Option<DenseMatrix> {
    let n = h.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = h.get(j, j);
        for k in 0..j {
            let ljk = l.get(j, k);
            d -= ljk * ljk;
        }
        if !(d > PIVOT_FLOOR) {
            return None;
        }
        let ljj = d.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = h.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / ljj);
        }
    }
    Some(l)
}

/// Solves `L Lᵀ x = b` given the lower factor.
fn cholesky_solve_factored(l: &DenseMatrix, b: &DenseVector) -> DenseVector {
    let n = l.rows();
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l.get(i, k) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l.get(k, i) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    DenseVector::from_raw(y)
}

/// Solves `H x = b` for symmetric positive definite `H` by Cholesky.
///
/// Errors with [`Error::NotPositiveDefinite`] when a pivot falls at or below
/// the pivot floor.
pub fn cholesky_solve(h: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    if !h.is_square() || h.rows() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "cholesky_solve: H is {}x{}, rhs has length {}",
            h.rows(),
            h.cols(),
            b.len()
        )));
    }
    if !h.is_finite() || !b.is_finite() {
        return Err(Error::NonFiniteInput("cholesky_solve: non-finite operand".into()));
    }
    let l = cholesky_lower(h).ok_or(Error::NotPositiveDefinite)?;
    let mut x = cholesky_solve_factored(&l, b);
    // One pass of iterative refinement.
    let r = b.sub(&h.matvec(&x));
    x = x.add(&cholesky_solve_factored(&l, &r));
    Ok(x)
}

/// Damped Newton-system solve: finds `s` with `(H + tau I) s = -g`, taking
/// `tau` from the escalation schedule `{0, tau0, 10·tau0, …}` and stopping at
/// the first value whose Cholesky factorization keeps every pivot above
/// `PIVOT_FLOOR`. Returns the step together with the damping value used.
///
/// Errors:
/// * [`Error::NonFiniteInput`] for NaN/Inf operands,
/// * [`Error::Config`] for a negative `tau0`,
/// * [`Error::DampingExhausted`] when the schedule passes `DAMPING_CEILING`
///   (or cannot escalate because `tau0 == 0`).
pub fn solve_spd_damped(
    h: &DenseMatrix,
    g: &DenseVector,
    tau0: f64,
) -> Result<(DenseVector, f64)> {
    if !h.is_square() || h.rows() != g.len() {
        return Err(Error::ShapeMismatch(format!(
            "solve_spd_damped: H is {}x{}, g has length {}",
            h.rows(),
            h.cols(),
            g.len()
        )));
    }
    if !h.is_finite() || !g.is_finite() || !tau0.is_finite() {
        return Err(Error::NonFiniteInput("solve_spd_damped: non-finite operand".into()));
    }
    if tau0 < 0.0 {
        return Err(Error::Config("solve_spd_damped: tau0 must be nonnegative".into()));
    }
    debug_assert!(h.is_symmetric(), "solve_spd_damped expects a symmetric matrix");
    let neg_g = g.scaled(-1.0);
    let mut tau = 0.0;
    loop {
        let hd = if tau == 0.0 { h.clone() } else { h.plus_scaled_identity(tau) };
        if let Some(l) = cholesky_lower(&hd) {
            let mut s = cholesky_solve_factored(&l, &neg_g);
            // One pass of iterative refinement keeps the residual near
            // machine precision even for stiff, heavily damped systems.
            let r = neg_g.sub(&hd.matvec(&s));
            s = s.add(&cholesky_solve_factored(&l, &r));
            return Ok((s, tau));
        }
        let next = if tau == 0.0 { tau0 } else { tau * 10.0 };
        if next <= tau {
            // tau0 == 0: the schedule cannot escalate.
            return Err(Error::DampingExhausted(tau));
        }
        tau = next;
        if tau > DAMPING_CEILING {
            return Err(Error::DampingExhausted(tau));
        }
    }
}

// ---------------------------------------------------------------------------
// Symmetric eigendecomposition (cyclic Jacobi)
// ---------------------------------------------------------------------------

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as matrix columns. The input is symmetrized before the
/// decomposition; callers are expected to pass symmetric data.
pub fn symmetric_eigen(h: &DenseMatrix) -> Result<(DenseVector, DenseMatrix)> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "symmetric_eigen: matrix is {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    if !h.is_finite() {
        return Err(Error::NonFiniteInput("symmetric_eigen: non-finite entry".into()));
    }
    let n = h.rows();
    if n == 0 {
        return Ok((DenseVector::zeros(0), DenseMatrix::zeros(0, 0)));
    }
    let mut a = h.symmetrized();
    let mut v = DenseMatrix::identity(n);

    let frob = (a.data.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let off_tol = 1e-14 * frob;

    let off_norm = |m: &DenseMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let x = m.get(i, j);
                s += 2.0 * x * x;
            }
        }
        s.sqrt()
    };

    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= off_tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                // Smaller-magnitude root of t^2 + 2 t theta - 1 = 0.
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // Rotate rows/columns p and q of A.
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    let nip = c * aip - s * aiq;
                    let niq = s * aip + c * aiq;
                    a.set(i, p, nip);
                    a.set(p, i, nip);
                    a.set(i, q, niq);
                    a.set(q, i, niq);
                }
                // Accumulate the rotation into the eigenvector matrix.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
    }

    // Sort ascending, permuting eigenvector columns alongside.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).partial_cmp(&a.get(j, j)).unwrap());
    let evals = DenseVector::from_raw(order.iter().map(|&i| a.get(i, i)).collect());
    let mut evecs = DenseMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            evecs.set(i, new_j, v.get(i, old_j));
        }
    }
    Ok((evals, evecs))
}

/// Spectral condition number `λ_max / λ_min` of a symmetric positive definite
/// matrix, from a full eigendecomposition.
///
/// Errors with [`Error::NotPositiveDefinite`] when the smallest eigenvalue is
/// not strictly positive.
pub fn condition_estimate(h: &DenseMatrix) -> Result<f64> {
    let (evals, _) = symmetric_eigen(h)?;
    let n = evals.len();
    if n == 0 {
        return Err(Error::ShapeMismatch("condition_estimate: empty matrix".into()));
    }
    let lo = evals[0];
    let hi = evals[n - 1];
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(hi / lo)
}

// ---------------------------------------------------------------------------
// Least squares / null space via the Gram eigendecomposition
// ---------------------------------------------------------------------------

/// Right singular structure of `A`: eigenvectors `v_i` of `AᵀA` with singular
/// values recomputed as `σ_i = ‖A v_i‖₂` (accurate test of numerical rank),
/// plus the rank cutoff `RANK_TOL · σ_max`.
fn right_singular_structure(a: &DenseMatrix) -> Result<(DenseMatrix, Vec<f64>, f64)> {
    let (_, v) = symmetric_eigen(&a.gram())?;
    let n = a.cols();
    let mut sigmas = Vec::with_capacity(n);
    for j in 0..n {
        let w = a.matvec(&v.column(j));
        sigmas.push(w.norm2());
    }
    let sigma_max = sigmas.iter().fold(0.0_f64, |m, s| m.max(*s));
    Ok((v, sigmas, RANK_TOL * sigma_max))
}

/// Minimum-norm least-squares solution of `min ‖A x − b‖₂`.
///
/// Rank is decided with tolerance `RANK_TOL · σ_max`; directions below the
/// cutoff get no contribution, which is what makes the solution the
/// minimum-norm one.
pub fn lstsq_min_norm(a: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    if a.rows() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "lstsq_min_norm: A is {}x{}, rhs has length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFiniteInput("lstsq_min_norm: non-finite operand".into()));
    }
    let n = a.cols();
    let (v, sigmas, cutoff) = right_singular_structure(a)?;
    let mut x = DenseVector::zeros(n);
    for j in 0..n {
        let sigma = sigmas[j];
        if sigma <= cutoff {
            continue;
        }
        let vj = v.column(j);
        let w = a.matvec(&vj);
        let coeff = w.dot(b) / (sigma * sigma);
        x = x.add_scaled(coeff, &vj);
    }
    Ok(x)
}

/// Orthonormal basis for the null space of `A`, one column per direction
/// (zero columns when `A` has full column rank). Rank tolerance matches
/// [`lstsq_min_norm`].
pub fn null_space_basis(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_finite() {
        return Err(Error::NonFiniteInput("null_space_basis: non-finite entry".into()));
    }
    let n = a.cols();
    let (v, sigmas, cutoff) = right_singular_structure(a)?;
    let null_cols: Vec<usize> = (0..n).filter(|&j| sigmas[j] <= cutoff).collect();
    let mut basis = DenseMatrix::zeros(n, null_cols.len());
    for (out_j, &j) in null_cols.iter().enumerate() {
        for i in 0..n {
            basis.set(i, out_j, v.get(i, j));
        }
    }
    Ok(basis)
}

// ---------------------------------------------------------------------------
// General square solve (partial-pivot LU)
// ---------------------------------------------------------------------------

/// Solves the square system `M x = b` by Gaussian elimination with partial
/// pivoting. Errors with [`Error::SingularSystem`] when the best available
/// pivot is negligible relative to the matrix scale.
pub fn lu_solve(m: &DenseMatrix, b: &DenseVector) -> Result<DenseVector> {
    if !m.is_square() || m.rows() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "lu_solve: M is {}x{}, rhs has length {}",
            m.rows(),
            m.cols(),
            b.len()
        )));
    }
    if !m.is_finite() || !b.is_finite() {
        return Err(Error::NonFiniteInput("lu_solve: non-finite operand".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut x = b.to_vec();
    let pivot_floor = PIVOT_FLOOR * m.norm_max().max(1.0);

    for k in 0..n {
        // Pick the largest pivot in column k.
        let mut piv = k;
        let mut best = a.get(k, k).abs();
        for i in (k + 1)..n {
            let v = a.get(i, k).abs();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best <= pivot_floor {
            return Err(Error::SingularSystem);
        }
        if piv != k {
            for j in 0..n {
                let tmp = a.get(k, j);
                a.set(k, j, a.get(piv, j));
                a.set(piv, j, tmp);
            }
            x.swap(k, piv);
        }
        let akk = a.get(k, k);
        for i in (k + 1)..n {
            let factor = a.get(i, k) / akk;
            if factor == 0.0 {
                continue;
            }
            a.set(i, k, 0.0);
            for j in (k + 1)..n {
                let v = a.get(i, j) - factor * a.get(k, j);
                a.set(i, j, v);
            }
            x[i] -= factor * x[k];
        }
    }
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            x[i] -= a.get(i, j) * x[j];
        }
        x[i] /= a.get(i, i);
    }
    Ok(DenseVector::from_raw(x))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn mat(rows: usize, cols: usize, data: &[f64]) -> DenseMatrix {
        DenseMatrix::from_row_major(rows, cols, data.to_vec()).unwrap()
    }

    fn vec_(data: &[f64]) -> DenseVector {
        DenseVector::from_slice(data).unwrap()
    }

    #[test]
    fn constructors_reject_non_finite() {
        assert!(matches!(
            DenseVector::from_vec(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteInput(_))
        ));
        assert!(matches!(
            DenseMatrix::from_row_major(1, 2, vec![1.0, f64::INFINITY]),
            Err(Error::NonFiniteInput(_))
        ));
        assert!(matches!(
            DenseMatrix::from_row_major(2, 2, vec![1.0; 3]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn solve_spd_damped_identity_scale() {
        // 1x1 well-posed system: no damping needed.
        let (s, tau) = solve_spd_damped(&mat(1, 1, &[1.0]), &vec_(&[-3.0]), 1e-4).unwrap();
        assert_abs_diff_eq!(s[0], 3.0, epsilon = 1e-14);
        assert_eq!(tau, 0.0);
    }

    #[test]
    fn solve_spd_damped_escalates_on_zero_matrix() {
        let (s, tau) = solve_spd_damped(&mat(1, 1, &[0.0]), &vec_(&[1.0]), 1e-4).unwrap();
        assert_abs_diff_eq!(s[0], -1e4, epsilon = 1e-8);
        assert_eq!(tau, 1e-4);
    }

    #[test]
    fn solve_spd_damped_2d_no_damping() {
        let h = mat(2, 2, &[2.0, 0.0, 0.0, 2.0]);
        let (s, tau) = solve_spd_damped(&h, &vec_(&[2.0, -4.0]), 0.0).unwrap();
        assert_abs_diff_eq!(s[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s[1], 2.0, epsilon = 1e-14);
        assert_eq!(tau, 0.0);
    }

    #[test]
    fn solve_spd_damped_exhaustion() {
        // tau0 = 0 cannot escalate past a failed factorization.
        assert!(matches!(
            solve_spd_damped(&mat(1, 1, &[-1.0]), &vec_(&[1.0]), 0.0),
            Err(Error::DampingExhausted(_))
        ));
        // Massive negative curvature outruns the ceiling.
        assert!(matches!(
            solve_spd_damped(&mat(1, 1, &[-1e13]), &vec_(&[1.0]), 1e-4),
            Err(Error::DampingExhausted(_))
        ));
    }

    #[test]
    fn solve_spd_damped_rejects_bad_input() {
        assert!(matches!(
            solve_spd_damped(&mat(2, 2, &[1.0, 0.0, 0.0, 1.0]), &vec_(&[1.0]), 0.0),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            solve_spd_damped(&mat(1, 1, &[1.0]), &vec_(&[1.0]), f64::NAN),
            Err(Error::NonFiniteInput(_))
        ));
        assert!(matches!(
            solve_spd_damped(&mat(1, 1, &[1.0]), &vec_(&[1.0]), -1.0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn condition_estimate_frozen_values() {
        assert_abs_diff_eq!(condition_estimate(&DenseMatrix::identity(3)).unwrap(), 1.0);
        let d = mat(2, 2, &[100.0, 0.0, 0.0, 1.0]);
        assert_relative_eq!(condition_estimate(&d).unwrap(), 100.0, max_relative = 1e-12);
        let d = mat(2, 2, &[101.0, 0.0, 0.0, 1.0]);
        assert_relative_eq!(condition_estimate(&d).unwrap(), 101.0, max_relative = 1e-12);
    }

    #[test]
    fn condition_estimate_rejects_indefinite() {
        assert!(matches!(
            condition_estimate(&mat(2, 2, &[1.0, 0.0, 0.0, 0.0])),
            Err(Error::NotPositiveDefinite)
        ));
        assert!(matches!(
            condition_estimate(&mat(2, 2, &[1.0, 0.0, 0.0, -2.0])),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn symmetric_eigen_2x2() {
        let (evals, evecs) = symmetric_eigen(&mat(2, 2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        assert_abs_diff_eq!(evals[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(evals[1], 3.0, epsilon = 1e-12);
        // Residual check A v = lambda v for each pair.
        let a = mat(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        for j in 0..2 {
            let v = evecs.column(j);
            let r = a.matvec(&v).sub(&v.scaled(evals[j]));
            assert!(r.norm_inf() < 1e-12);
            assert_abs_diff_eq!(v.norm2(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn lstsq_frozen_examples() {
        // Overdetermined, residual split evenly: x = 0.
        let x = lstsq_min_norm(&mat(2, 1, &[1.0, 1.0]), &vec_(&[1.0, -1.0])).unwrap();
        assert_abs_diff_eq!(x[0], 0.0, epsilon = 1e-12);

        // Identity: exact solve.
        let x = lstsq_min_norm(&DenseMatrix::identity(3), &vec_(&[0.5, -2.0, 4.0])).unwrap();
        assert_abs_diff_eq!(x[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], -2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[2], 4.0, epsilon = 1e-12);

        // Underdetermined: minimum-norm representative.
        let x = lstsq_min_norm(&mat(1, 2, &[1.0, 0.0]), &vec_(&[2.0])).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lstsq_min_norm_vs_grid_refinement() {
        // Rank-deficient 2D instance: A = [[1, 1]], b = [2]. All least-squares
        // solutions satisfy x1 + x2 = 2; the minimum-norm one is (1, 1).
        // Cross-check with a brute-force grid refined around the incumbent.
        let a = mat(1, 2, &[1.0, 1.0]);
        let b = vec_(&[2.0]);
        let x = lstsq_min_norm(&a, &b).unwrap();

        let mut center = (0.0_f64, 0.0_f64);
        let mut radius = 3.0_f64;
        let mut best = (f64::INFINITY, f64::INFINITY, 0.0, 0.0);
        for _ in 0..6 {
            let steps = 40;
            for i in 0..=steps {
                for j in 0..=steps {
                    let x1 = center.0 - radius + 2.0 * radius * (i as f64) / (steps as f64);
                    let x2 = center.1 - radius + 2.0 * radius * (j as f64) / (steps as f64);
                    let res = (x1 + x2 - 2.0).abs();
                    let nrm = (x1 * x1 + x2 * x2).sqrt();
                    // Lexicographic: residual first, norm as tiebreaker.
                    if res < best.0 - 1e-12 || (res < best.0 + 1e-12 && nrm < best.1) {
                        best = (res, nrm, x1, x2);
                    }
                }
            }
            center = (best.2, best.3);
            radius /= 10.0;
        }
        assert_abs_diff_eq!(x[0], best.2, epsilon = 1e-4);
        assert_abs_diff_eq!(x[1], best.3, epsilon = 1e-4);
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn null_space_basis_shapes() {
        // Full column rank: empty basis.
        let n = null_space_basis(&mat(2, 1, &[1.0, 1.0])).unwrap();
        assert_eq!((n.rows(), n.cols()), (1, 0));

        // One free direction.
        let n = null_space_basis(&mat(1, 2, &[1.0, 0.0])).unwrap();
        assert_eq!((n.rows(), n.cols()), (2, 1));
        assert_abs_diff_eq!(n.get(0, 0).abs(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(n.get(1, 0).abs(), 1.0, epsilon = 1e-12);

        // Zero matrix: the whole space.
        let n = null_space_basis(&DenseMatrix::zeros(1, 2)).unwrap();
        assert_eq!((n.rows(), n.cols()), (2, 2));
    }

    #[test]
    fn lu_solve_known_and_singular() {
        let m = mat(2, 2, &[0.0, 1.0, 2.0, 0.0]); // forces a row swap
        let x = lu_solve(&m, &vec_(&[3.0, 4.0])).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 3.0, epsilon = 1e-12);

        let singular = mat(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(lu_solve(&singular, &vec_(&[1.0, 1.0])), Err(Error::SingularSystem)));
    }

    // ---- property tests ----------------------------------------------------

    /// Random SPD matrix H = R Rᵀ + delta I with entries of modest scale.
    fn spd_strategy(n: usize) -> impl Strategy<Value = DenseMatrix> {
        (proptest::collection::vec(-1.0_f64..1.0, n * n), 1e-3_f64..1.0).prop_map(
            move |(r, delta)| {
                let r = DenseMatrix::from_raw(n, n, r);
                r.transpose().gram().plus_scaled_identity(delta) // (Rᵀ)ᵀRᵀ + δI = R Rᵀ + δI
            },
        )
    }

    proptest! {
        #[test]
        fn prop_solve_spd_damped_residual(
            h in spd_strategy(4),
            g in proptest::collection::vec(-10.0_f64..10.0, 4),
            tau0 in 1e-6_f64..1e-2,
        ) {
            let g = DenseVector::from_raw(g);
            let (s, tau) = solve_spd_damped(&h, &g, tau0).unwrap();
            let hd = h.plus_scaled_identity(tau);
            let resid = hd.matvec(&s).add(&g).norm_inf();
            prop_assert!(resid <= 1e-8 * g.norm_inf().max(1.0),
                "residual {} too large", resid);
        }

        #[test]
        fn prop_condition_estimate_scale_invariant(
            h in spd_strategy(3),
            alpha in 1e-3_f64..1e3,
        ) {
            let k1 = condition_estimate(&h).unwrap();
            let mut scaled = DenseMatrix::zeros(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    scaled.set(i, j, alpha * h.get(i, j));
                }
            }
            let k2 = condition_estimate(&scaled).unwrap();
            prop_assert!((k1 - k2).abs() <= 1e-10 * k1.max(1.0),
                "condition changed under scaling: {} vs {}", k1, k2);
        }

        #[test]
        fn prop_lstsq_normal_equations(
            entries in proptest::collection::vec(-2.0_f64..2.0, 12),
            b in proptest::collection::vec(-2.0_f64..2.0, 4),
        ) {
            let a = DenseMatrix::from_raw(4, 3, entries);
            let b = DenseVector::from_raw(b);
            let x = lstsq_min_norm(&a, &b).unwrap();
            // A'(Ax - b) = 0 at any least-squares solution.
            let resid = a.tr_matvec(&a.matvec(&x).sub(&b)).norm_inf();
            prop_assert!(resid <= 1e-8, "normal-equation residual {}", resid);
        }

        #[test]
        fn prop_lstsq_min_norm_orthogonal_to_null_space(
            row in proptest::collection::vec(0.1_f64..2.0, 3),
            b in -5.0_f64..5.0,
        ) {
            // Single-row A with a guaranteed 2-dimensional null space.
            let a = DenseMatrix::from_raw(1, 3, row);
            let b = DenseVector::from_raw(vec![b]);
            let x = lstsq_min_norm(&a, &b).unwrap();
            let ns = null_space_basis(&a).unwrap();
            prop_assert_eq!(ns.cols(), 2);
            for j in 0..ns.cols() {
                prop_assert!(ns.column(j).dot(&x).abs() <= 1e-8);
            }
        }

        #[test]
        fn prop_lu_solve_residual(
            entries in proptest::collection::vec(-2.0_f64..2.0, 16),
            b in proptest::collection::vec(-5.0_f64..5.0, 4),
        ) {
            let m = DenseMatrix::from_raw(4, 4, entries)
                .plus_scaled_identity(3.0); // keep comfortably nonsingular
            let b = DenseVector::from_raw(b);
            let x = lu_solve(&m, &b).unwrap();
            let resid = m.matvec(&x).sub(&b).norm_inf();
            prop_assert!(resid <= 1e-9 * b.norm_inf().max(1.0));
        }
    }
}
