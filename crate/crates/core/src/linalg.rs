//! Dense complex linear algebra on row-major storage.
//!
//! Everything in the crate sits on top of [`ComplexMatrix`]: Kronecker
//! products, partial traces over labelled tensor factors, a cyclic Jacobi
//! eigensolver for Hermitian matrices and an isometry test.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QssError, Result};

/// Largest row or column count a Kronecker product may produce.
pub const MAX_TOTAL_DIM: usize = 20_000;

/// Entrywise tolerance for the Hermitian precondition of [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(QssError::input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QssError::input(format!(
                "non-finite matrix entry at ({}, {})",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `|a⟩⟨b|`
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        let mut data = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                data.push(x * y.conj());
            }
        }
        Self::from_raw(a.len(), b.len(), data)
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(QssError::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(QssError::input(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|z| z * factor).collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(QssError::input("matrix shapes differ in addition"));
        }
        Ok(Self::from_raw(self.rows, self.cols, self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect()))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes without normalizing them.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(QssError::input("state vector must have at least one amplitude"));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QssError::input("non-finite amplitude"));
        }
        Ok(Self { amplitudes })
    }

    /// Wraps amplitudes and rescales them to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut v = Self::new(amplitudes)?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(QssError::input("cannot normalize the zero vector"));
        }
        for z in &mut v.amplitudes {
            *z /= norm;
        }
        Ok(v)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub(crate) fn from_raw(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Ordered, labelled tensor factors. The first factor is the most
/// significant digit of a row-major basis index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemLayout {
    parts: Vec<(String, usize)>,
}

impl SubsystemLayout {
    pub fn new<S: Into<String>>(parts: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let parts: Vec<(String, usize)> = parts.into_iter().map(|(l, d)| (l.into(), d)).collect();
        for (i, (label, dim)) in parts.iter().enumerate() {
            if label.is_empty() {
                return Err(QssError::input("subsystem labels must be nonempty"));
            }
            if *dim == 0 {
                return Err(QssError::input(format!("subsystem '{label}' has dimension 0")));
            }
            if parts[..i].iter().any(|(l, _)| l == label) {
                return Err(QssError::input(format!("duplicate subsystem label '{label}'")));
            }
        }
        let layout = Self { parts };
        layout
            .dims()
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| QssError::Size("total dimension overflows".into()))?;
        Ok(layout)
    }

    /// A single unlabelled-looking factor, convenient for plain matrices.
    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new([(label, dim)])
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.parts.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|&(_, d)| d).collect()
    }

    pub fn parts(&self) -> &[(String, usize)] {
        &self.parts
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(|&(_, d)| d).product()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.parts.iter().position(|(l, _)| l == label)
    }

    /// Resolves labels to factor positions, sorted in layout order.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let p = self.position(l).ok_or_else(|| QssError::input(format!("unknown subsystem label '{l}'")))?;
            if out.contains(&p) {
                return Err(QssError::input(format!("label '{l}' listed twice")));
            }
            out.push(p);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Sub-layout made of the given factor positions (kept in layout order).
    pub fn restrict(&self, positions: &[usize]) -> Self {
        let mut pos = positions.to_vec();
        pos.sort_unstable();
        Self { parts: pos.iter().map(|&p| self.parts[p].clone()).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(self.parts.iter().chain(&other.parts).cloned())
    }
}

/// Row-major offsets of every joint basis state of the factors in `subset`
/// (positions sorted ascending), embedded in the full index space.
pub(crate) fn subsystem_offsets(dims: &[usize], subset: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut offsets = vec![0usize];
    for &p in subset {
        let mut next = Vec::with_capacity(offsets.len() * dims[p]);
        for &o in &offsets {
            for d in 0..dims[p] {
                next.push(o + d * strides[p]);
            }
        }
        offsets = next;
    }
    offsets
}

pub(crate) fn complement_positions(n: usize, subset: &[usize]) -> Vec<usize> {
    (0..n).filter(|p| !subset.contains(p)).collect()
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_product_with_limit(a, b, MAX_TOTAL_DIM)
}

pub fn tensor_product_with_limit(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    match (rows, cols) {
        (Some(r), Some(c)) if r <= max_dim && c <= max_dim => {
            let mut out = ComplexMatrix::zeros(r, c);
            for i in 0..a.rows {
                for j in 0..a.cols {
                    let x = a.get(i, j);
                    for k in 0..b.rows {
                        let row = i * b.rows + k;
                        for l in 0..b.cols {
                            out.data[row * c + j * b.cols + l] = x * b.get(k, l);
                        }
                    }
                }
            }
            Ok(out)
        }
        _ => Err(QssError::Size(format!(
            "tensor product of {}x{} and {}x{} exceeds maximum dimension {max_dim}",
            a.rows, a.cols, b.rows, b.cols
        ))),
    }
}

/// Traces out every factor not named in `keep`. The result's factors are in
/// layout order, whatever order `keep` lists them in.
pub fn partial_trace<S: AsRef<str>>(m: &ComplexMatrix, layout: &SubsystemLayout, keep: &[S]) -> Result<ComplexMatrix> {
    if !m.is_square() || m.rows != layout.total_dim() {
        return Err(QssError::input(format!(
            "matrix {}x{} does not match layout dimension {}",
            m.rows,
            m.cols,
            layout.total_dim()
        )));
    }
    let kept = layout.positions(keep)?;
    Ok(partial_trace_positions(m, &layout.dims(), &kept))
}

pub(crate) fn partial_trace_positions(m: &ComplexMatrix, dims: &[usize], kept: &[usize]) -> ComplexMatrix {
    let traced = complement_positions(dims.len(), kept);
    let keep_off = subsystem_offsets(dims, kept);
    let trace_off = subsystem_offsets(dims, &traced);
    let dk = keep_off.len();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for (i, &oi) in keep_off.iter().enumerate() {
        for (j, &oj) in keep_off.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &trace_off {
                acc += m.get(oi + t, oj + t);
            }
            out.data[i * dk + j] = acc;
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies a
/// real Givens rotation. Sweeps stop once the off-diagonal Frobenius norm is
/// at most `1e-13 · ‖m‖_F`.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(QssError::input(format!("eigensolver needs a square matrix, got {}x{}", m.rows, m.cols)));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(QssError::input(format!("matrix is not Hermitian (max |m - m†| = {defect:.3e})")));
    }
    let n = m.rows;
    let mut a = vec![ZERO; n * n];
    for i in 0..n {
        a[i * n + i] = Complex64::new(m.get(i, i).re, 0.0);
        for j in i + 1..n {
            let z = 0.5 * (m.get(i, j) + m.get(j, i).conj());
            a[i * n + j] = z;
            a[j * n + i] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n).data;
    let target = JACOBI_REL_TOL * m.frobenius_norm();
    let skip_below = target / n.max(1) as f64;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(QssError::Numeric(format!(
                "Jacobi eigensolver did not converge after {JACOBI_MAX_SWEEPS} sweeps (off-diagonal norm {off:.3e})"
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let mag = apq.norm();
                if mag <= skip_below {
                    continue;
                }
                rotate(&mut a, &mut v, n, p, q, apq, mag);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.data[r * n + new_col] = v[r * n + old_col];
        }
    }
    Ok(HermitianEigen { values, vectors, sweeps })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize, apq: Complex64, mag: f64) {
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // G = [[c, s], [-s·conj(phase), c·conj(phase)]]; A ← G† A G, V ← V G.
    let g10 = -s * phase.conj();
    let g11 = c * phase.conj();
    for k in 0..n {
        let x = a[k * n + p];
        let y = a[k * n + q];
        a[k * n + p] = c * x + g10 * y;
        a[k * n + q] = s * x + g11 * y;
    }
    for k in 0..n {
        let x = a[p * n + k];
        let y = a[q * n + k];
        a[p * n + k] = c * x + g10.conj() * y;
        a[q * n + k] = s * x + g11.conj() * y;
    }
    a[p * n + p] = Complex64::new(app - t * mag, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    for k in 0..n {
        let x = v[k * n + p];
        let y = v[k * n + q];
        v[k * n + p] = c * x + g10 * y;
        v[k * n + q] = s * x + g11 * y;
    }
}

/// True iff `max |V†V − I| ≤ tol`. Wide matrices are never isometries.
pub fn check_isometry(v: &ComplexMatrix, tol: f64) -> bool {
    isometry_defect(v).is_some_and(|d| d <= tol)
}

/// `max |V†V − I|`, or `None` for wide matrices.
pub fn isometry_defect(v: &ComplexMatrix) -> Option<f64> {
    if v.rows < v.cols {
        return None;
    }
    let k = v.cols;
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in i..k {
            let mut acc = ZERO;
            for r in 0..v.rows {
                acc += v.data[r * k + i].conj() * v.data[r * k + j];
            }
            if i == j {
                acc -= ONE;
            }
            worst = worst.max(acc.norm());
        }
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_and_diagonals() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        let b = ComplexMatrix::from_real_diagonal(&[3.0, 4.0]);
        assert_eq!(tensor_product(&a, &b).unwrap(), ComplexMatrix::from_real_diagonal(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_size_guard() {
        let big = ComplexMatrix::zeros(200, 1);
        let err = tensor_product(&big, &big).unwrap_err();
        assert!(matches!(err, QssError::Size(_)));
        assert!(tensor_product_with_limit(&big, &big, 40_000).is_ok());
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn partial_trace_bell_and_ghz() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(vec![c(s, 0.0), ZERO, ZERO, c(s, 0.0)]).unwrap();
        let layout = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let red = partial_trace(&bell.projector(), &layout, &["A"]).unwrap();
        assert!(red.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5])) < 1e-15);

        let mut ghz = vec![ZERO; 8];
        ghz[0] = c(s, 0.0);
        ghz[7] = c(s, 0.0);
        let ghz = StateVector::new(ghz).unwrap();
        let l3 = SubsystemLayout::new([("1", 2), ("2", 2), ("3", 2)]).unwrap();
        let red = partial_trace(&ghz.projector(), &l3, &["3", "1"]).unwrap();
        let expected = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(red.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_keeps_layout_order() {
        // |0⟩_A |1⟩_B: keeping [B, A] must still give the A⊗B ordering.
        let v = StateVector::basis(4, 1);
        let layout = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        let red = partial_trace(&v.projector(), &layout, &["B", "A"]).unwrap();
        assert_eq!(red, v.projector());
    }

    #[test]
    fn partial_trace_unknown_label() {
        let layout = SubsystemLayout::new([("A", 2)]).unwrap();
        let err = partial_trace(&ComplexMatrix::identity(2), &layout, &["Z"]).unwrap_err();
        assert!(matches!(err, QssError::Input(_)));
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]).unwrap();
        let rb = ComplexMatrix::from_real_diagonal(&[0.2, 0.5, 0.3]);
        let prod = tensor_product(&ra, &rb).unwrap();
        let layout = SubsystemLayout::new([("A", 2), ("B", 3)]).unwrap();
        assert!(partial_trace(&prod, &layout, &["A"]).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&prod, &layout, &["B"]).unwrap().max_abs_diff(&rb) < 1e-15);
        let empty: [&str; 0] = [];
        let scalar = partial_trace(&prod, &layout, &empty).unwrap();
        assert!((scalar.get(0, 0) - prod.trace()).norm() < 1e-15);
    }

    #[test]
    fn eig_diagonal_and_pauli_x() {
        let d = ComplexMatrix::from_real_diagonal(&[0.8, 0.2]);
        let e = hermitian_eig(&d).unwrap();
        assert_eq!(e.values, vec![0.2, 0.8]);
        assert!((e.vectors.get(1, 0).norm() - 1.0).abs() < 1e-15);
        assert!((e.vectors.get(0, 1).norm() - 1.0).abs() < 1e-15);

        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eig(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_complex_pivot() {
        // Pauli-Y has eigenvalues ±1 and a purely imaginary off-diagonal.
        let y = ComplexMatrix::new(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap();
        let e = hermitian_eig(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        let q = &e.vectors;
        let lam = ComplexMatrix::from_real_diagonal(&e.values);
        let back = q.matmul(&lam).unwrap().matmul(&q.adjoint()).unwrap();
        assert!(back.max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(QssError::Input(_))));
        assert!(matches!(hermitian_eig(&ComplexMatrix::zeros(2, 3)), Err(QssError::Input(_))));
    }

    #[test]
    fn eig_zero_and_empty() {
        let e = hermitian_eig(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        assert_eq!(e.sweeps, 0);
        let e = hermitian_eig(&ComplexMatrix::zeros(0, 0)).unwrap();
        assert!(e.values.is_empty());
    }

    #[test]
    fn isometry_checks() {
        assert!(check_isometry(&ComplexMatrix::identity(3), 1e-15));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let col = ComplexMatrix::from_real(2, 1, &[s, s]).unwrap();
        assert!(check_isometry(&col, 1e-15));
        assert!(!check_isometry(&col.adjoint(), 1.0));
        let bad = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
        assert!(!check_isometry(&bad, 1e-3));
    }
}
