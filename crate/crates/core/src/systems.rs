//! Purification of the secret and the global `R ⊗ P₁ ⊗ … ⊗ P_m` state.

use num_complex::Complex64;

use crate::entropy::{entropy_from_spectrum, DensityMatrix, EIGEN_CLAMP};
use crate::error::{QssError, Result};
use crate::linalg::{
    complement_positions, hermitian_eig, isometry_defect, partial_trace_positions, subsystem_offsets, ComplexMatrix,
    StateVector, SubsystemLayout, MAX_TOTAL_DIM, ZERO,
};
use crate::schemes::{ensemble_density, SchemeSpec, SecretEnsemble, ISOMETRY_TOL};

/// Label of the purifying reference system.
pub const REFERENCE: &str = "R";

#[derive(Debug, Clone, PartialEq)]
enum StateData {
    Pure(StateVector),
    Mixed(ComplexMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultipartiteState {
    data: StateData,
    layout: SubsystemLayout,
}

impl MultipartiteState {
    pub fn pure(vector: StateVector, layout: SubsystemLayout) -> Result<Self> {
        if vector.dim() != layout.total_dim() {
            return Err(QssError::input(format!(
                "state vector of dimension {} does not match layout dimension {}",
                vector.dim(),
                layout.total_dim()
            )));
        }
        if !vector.is_normalized(1e-10) {
            return Err(QssError::input(format!("state vector has norm {}", vector.norm())));
        }
        Ok(Self { data: StateData::Pure(vector), layout })
    }

    pub fn mixed(rho: DensityMatrix) -> Self {
        let layout = rho.layout().clone();
        Self { data: StateData::Mixed(rho.matrix().clone()), layout }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.data, StateData::Pure(_))
    }

    pub fn vector(&self) -> Option<&StateVector> {
        match &self.data {
            StateData::Pure(v) => Some(v),
            StateData::Mixed(_) => None,
        }
    }

    /// Marginal density matrix on `keep` (factors in layout order).
    pub fn reduce<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(QssError::input("cannot reduce onto an empty set of subsystems"));
        }
        let kept = self.layout.positions(keep)?;
        Ok(DensityMatrix::from_parts_unchecked(self.reduce_positions(&kept)?, self.layout.restrict(&kept)))
    }

    pub(crate) fn reduce_positions(&self, kept: &[usize]) -> Result<ComplexMatrix> {
        let dims = self.layout.dims();
        match &self.data {
            StateData::Pure(v) => {
                let dk: usize = kept.iter().map(|&p| dims[p]).product();
                if dk > MAX_TOTAL_DIM {
                    return Err(QssError::Size(format!("reduced state of dimension {dk} is too large")));
                }
                let traced = complement_positions(dims.len(), kept);
                let m = bipartite_matrix(v.amplitudes(), &dims, kept, &traced);
                m.matmul(&m.adjoint())
            }
            StateData::Mixed(m) => Ok(partial_trace_positions(m, &dims, kept)),
        }
    }

    /// Von Neumann entropy (bits) of the marginal on the given factor positions.
    /// Pure states are reduced on whichever side of the cut is smaller.
    pub(crate) fn entropy_positions(&self, kept: &[usize]) -> Result<f64> {
        if kept.is_empty() {
            return Ok(0.0);
        }
        let dims = self.layout.dims();
        let gram = match &self.data {
            StateData::Pure(v) => {
                let traced = complement_positions(dims.len(), kept);
                if traced.is_empty() {
                    return Ok(0.0);
                }
                let dk: usize = kept.iter().map(|&p| dims[p]).product();
                let dt: usize = traced.iter().map(|&p| dims[p]).product();
                let m = bipartite_matrix(v.amplitudes(), &dims, kept, &traced);
                if dk <= dt {
                    m.matmul(&m.adjoint())?
                } else {
                    m.adjoint().matmul(&m)?
                }
            }
            StateData::Mixed(m) => partial_trace_positions(m, &dims, kept),
        };
        entropy_from_spectrum(&hermitian_eig(&gram)?.values)
    }

    pub fn entropy<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64> {
        let kept = self.layout.positions(labels)?;
        self.entropy_positions(&kept)
    }

    /// `I(X:Y)` between two disjoint label sets.
    pub fn mutual_information<S: AsRef<str>>(&self, x: &[S], y: &[S]) -> Result<f64> {
        let px = self.layout.positions(x)?;
        let py = self.layout.positions(y)?;
        if px.iter().any(|p| py.contains(p)) {
            return Err(QssError::input("mutual information needs disjoint label sets"));
        }
        let mut pxy: Vec<usize> = px.iter().chain(&py).copied().collect();
        pxy.sort_unstable();
        Ok(self.entropy_positions(&px)? + self.entropy_positions(&py)? - self.entropy_positions(&pxy)?)
    }
}

/// Reshapes a pure state into the `d_kept × d_traced` coefficient matrix.
pub(crate) fn bipartite_matrix(psi: &[Complex64], dims: &[usize], kept: &[usize], traced: &[usize]) -> ComplexMatrix {
    let ko = subsystem_offsets(dims, kept);
    let to = subsystem_offsets(dims, traced);
    let mut data = Vec::with_capacity(ko.len() * to.len());
    for &i in &ko {
        for &t in &to {
            data.push(psi[i + t]);
        }
    }
    ComplexMatrix::from_raw(ko.len(), to.len(), data)
}

/// Branches `(√λ_k, e_k)` of the eigen-purification, largest eigenvalue
/// first; ties keep eigensolver order. Zero branches are retained.
pub(crate) fn purification_branches(rho_s: &DensityMatrix) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let eig = hermitian_eig(rho_s.matrix())?;
    let mut order: Vec<usize> = (0..eig.values.len()).collect();
    order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]));
    order
        .into_iter()
        .map(|k| {
            let lam = eig.values[k];
            if lam < -EIGEN_CLAMP {
                return Err(QssError::input(format!("secret density matrix has eigenvalue {lam:.3e}")));
            }
            Ok((lam.max(0.0).sqrt(), eig.vectors.column(k)))
        })
        .collect()
}

/// `Σ_k √λ_k |e_k⟩_S |k⟩_R` with the reference appended after the secret's
/// factors; `dim R = dim S`.
pub fn purify(rho_s: &DensityMatrix) -> Result<MultipartiteState> {
    if rho_s.layout().position(REFERENCE).is_some() {
        return Err(QssError::input(format!("secret layout already uses the label '{REFERENCE}'")));
    }
    let d = rho_s.dim();
    let mut psi = vec![ZERO; d * d];
    for (k, (amp, e)) in purification_branches(rho_s)?.into_iter().enumerate() {
        for (s, z) in e.into_iter().enumerate() {
            psi[s * d + k] += z * amp;
        }
    }
    let layout = rho_s.layout().concat(&SubsystemLayout::single(REFERENCE, d)?)?;
    MultipartiteState::pure(StateVector::from_raw(psi), layout)
}

/// `(I_R ⊗ V)|RS⟩` on the layout `[R, P₁, …, P_m]`.
pub fn assemble_global(scheme: &SchemeSpec, ensemble: &SecretEnsemble) -> Result<MultipartiteState> {
    let v = scheme.encoding().matrix();
    let ds = v.cols();
    if ensemble.secret_dim() != ds {
        return Err(QssError::input(format!(
            "ensemble dimension {} does not match secret dimension {ds}",
            ensemble.secret_dim()
        )));
    }
    match isometry_defect(v) {
        Some(d) if d <= ISOMETRY_TOL => {}
        _ => {
            return Err(QssError::Encoding(
                "share distribution matrix is not an isometry; supply operator-sum components to dilate it".into(),
            ))
        }
    }
    let dp = v.rows();
    if ds.checked_mul(dp).is_none_or(|t| t > MAX_TOTAL_DIM) {
        return Err(QssError::Size(format!("global dimension {ds}x{dp} exceeds the maximum {MAX_TOTAL_DIM}")));
    }
    let rho_s = ensemble_density(ensemble)?;
    let mut psi = vec![ZERO; ds * dp];
    for (r, (amp, e)) in purification_branches(&rho_s)?.into_iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let encoded = v.apply(&e)?;
        for (row, z) in encoded.into_iter().enumerate() {
            psi[r * dp + row] = z * amp;
        }
    }
    let layout = SubsystemLayout::single(REFERENCE, ds)?.concat(scheme.encoding().output_layout())?;
    MultipartiteState::pure(StateVector::from_raw(psi), layout)
}
