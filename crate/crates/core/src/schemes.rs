//! Secret ensembles, share-distribution isometries and the built-in schemes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::access::{threshold_structure, AccessStructure};
use crate::entropy::DensityMatrix;
use crate::error::{QssError, Result};
use crate::linalg::{isometry_defect, ComplexMatrix, StateVector, SubsystemLayout, MAX_TOTAL_DIM, ZERO};
use crate::systems::REFERENCE;

/// Isometry tolerance enforced on every encoding.
pub const ISOMETRY_TOL: f64 = 1e-10;
/// Tolerance on `Σ K†K = I` for operator-sum inputs to [`dilate`].
pub const TRACE_PRESERVING_TOL: f64 = 1e-9;
/// Label of the player appended by [`dilate`].
pub const ENVIRONMENT: &str = "env";

const ENSEMBLE_TOL: f64 = 1e-10;

/// Pure secret states `|X_i⟩` with prior probabilities `p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecretEnsemble {
    secret_dim: usize,
    items: Vec<(f64, StateVector)>,
}

impl SecretEnsemble {
    /// Zero-probability items are dropped.
    pub fn new(secret_dim: usize, items: Vec<(f64, StateVector)>) -> Result<Self> {
        if secret_dim == 0 {
            return Err(QssError::input("secret dimension must be at least 1"));
        }
        let mut total = 0.0;
        for (i, (p, state)) in items.iter().enumerate() {
            if !(0.0..=1.0).contains(p) {
                return Err(QssError::input(format!("ensemble[{i}].p = {p} is outside [0, 1]")));
            }
            if state.dim() != secret_dim {
                return Err(QssError::input(format!(
                    "ensemble[{i}] has dimension {}, expected {secret_dim}",
                    state.dim()
                )));
            }
            if !state.is_normalized(ENSEMBLE_TOL) {
                return Err(QssError::input(format!("ensemble[{i}] has norm {}", state.norm())));
            }
            total += p;
        }
        if (total - 1.0).abs() > ENSEMBLE_TOL {
            return Err(QssError::input(format!("ensemble probabilities sum to {total}, expected 1")));
        }
        let items: Vec<_> = items.into_iter().filter(|(p, _)| *p > 0.0).collect();
        Ok(Self { secret_dim, items })
    }

    /// Uniform over the computational basis (maximally mixed secret).
    pub fn uniform_basis(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        Self { secret_dim: dim, items: (0..dim).map(|i| (p, StateVector::basis(dim, i))).collect() }
    }

    /// `count` Gaussian-random pure states with flat-Dirichlet weights.
    pub fn random(dim: usize, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(QssError::input("random ensemble needs at least one state"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<f64> = (0..count).map(|_| Exp1.sample(&mut rng)).collect();
        let total: f64 = weights.iter().sum();
        let mut items = Vec::with_capacity(count);
        for w in weights {
            let amps = (0..dim)
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            items.push((w / total, StateVector::normalized(amps)?));
        }
        // Guard the sum against rounding before validation.
        let drift: f64 = 1.0 - items.iter().map(|(p, _)| p).sum::<f64>();
        let last = rng.random_range(0..count);
        items[last].0 += drift;
        Self::new(dim, items)
    }

    pub fn secret_dim(&self) -> usize {
        self.secret_dim
    }

    pub fn items(&self) -> &[(f64, StateVector)] {
        &self.items
    }
}

/// `ρ_S = Σ p_i |X_i⟩⟨X_i|` on a single factor labelled `S`.
pub fn ensemble_density(e: &SecretEnsemble) -> Result<DensityMatrix> {
    let d = e.secret_dim;
    let mut rho = ComplexMatrix::zeros(d, d);
    for (p, state) in &e.items {
        rho = rho.add(&state.projector().scale(Complex64::new(*p, 0.0)))?;
    }
    DensityMatrix::new(rho, SubsystemLayout::single("S", d)?)
}

/// Isometry `H_S → H_1 ⊗ … ⊗ H_m` realizing the share distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingIsometry {
    matrix: ComplexMatrix,
    output_layout: SubsystemLayout,
}

impl EncodingIsometry {
    pub fn new(matrix: ComplexMatrix, output_layout: SubsystemLayout) -> Result<Self> {
        if matrix.rows() != output_layout.total_dim() {
            return Err(QssError::input(format!(
                "encoding has {} rows but the players' joint dimension is {}",
                matrix.rows(),
                output_layout.total_dim()
            )));
        }
        match isometry_defect(&matrix) {
            Some(d) if d <= ISOMETRY_TOL => Ok(Self { matrix, output_layout }),
            Some(d) => Err(QssError::Encoding(format!(
                "encoding is not an isometry (max |V†V - I| = {d:.3e}); give the map as operator-sum \
                 components (\"kraus\") to have it dilated with an extra player"
            ))),
            None => Err(QssError::Encoding(format!(
                "encoding {}x{} is wider than tall and cannot be an isometry; give the map as operator-sum \
                 components (\"kraus\") to have it dilated with an extra player",
                matrix.rows(),
                matrix.cols()
            ))),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn output_layout(&self) -> &SubsystemLayout {
        &self.output_layout
    }

    pub fn secret_dim(&self) -> usize {
        self.matrix.cols()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpec {
    name: String,
    default_ensemble: SecretEnsemble,
    encoding: EncodingIsometry,
    gamma: AccessStructure,
}

impl SchemeSpec {
    pub fn new(
        name: impl Into<String>,
        default_ensemble: SecretEnsemble,
        encoding: EncodingIsometry,
        gamma: AccessStructure,
    ) -> Result<Self> {
        let labels = encoding.output_layout.labels();
        if labels.iter().copied().ne(gamma.players().iter().map(String::as_str)) {
            return Err(QssError::input(format!(
                "access structure players {:?} differ from encoding players {labels:?}",
                gamma.players()
            )));
        }
        if labels.contains(&REFERENCE) {
            return Err(QssError::input(format!("player label '{REFERENCE}' is reserved for the reference system")));
        }
        if default_ensemble.secret_dim() != encoding.secret_dim() {
            return Err(QssError::input(format!(
                "ensemble dimension {} differs from encoding input dimension {}",
                default_ensemble.secret_dim(),
                encoding.secret_dim()
            )));
        }
        Ok(Self { name: name.into(), default_ensemble, encoding, gamma })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn default_ensemble(&self) -> &SecretEnsemble {
        &self.default_ensemble
    }

    pub fn encoding(&self) -> &EncodingIsometry {
        &self.encoding
    }

    pub fn gamma(&self) -> &AccessStructure {
        &self.gamma
    }

    pub fn secret_dim(&self) -> usize {
        self.encoding.secret_dim()
    }

    pub fn players(&self) -> &[String] {
        self.gamma.players()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_default_ensemble(self, ensemble: SecretEnsemble) -> Result<Self> {
        Self::new(self.name, ensemble, self.encoding, self.gamma)
    }

    /// Renames players (dimensions and positions unchanged).
    pub fn relabeled(self, labels: &[String]) -> Result<Self> {
        let parts: Vec<(String, usize)> = labels.iter().cloned().zip(self.encoding.output_layout.dims()).collect();
        if parts.len() != labels.len() || labels.len() != self.gamma.player_count() {
            return Err(QssError::input("relabeling must keep the player count"));
        }
        let layout = SubsystemLayout::new(parts)?;
        let gamma = self.gamma.relabeled(labels)?;
        let encoding = EncodingIsometry { matrix: self.encoding.matrix, output_layout: layout };
        Self::new(self.name, self.default_ensemble, encoding, gamma)
    }
}

fn qutrit_players(n: usize, d: usize) -> SubsystemLayout {
    SubsystemLayout::new((1..=n).map(|i| (format!("P{i}"), d))).expect("static layout")
}

/// The qutrit `(2,3)` threshold scheme: three qutrit shares, any two recover.
pub fn cgl23_scheme() -> SchemeSpec {
    const CODEWORDS: [[&str; 3]; 3] = [["000", "111", "222"], ["012", "120", "201"], ["021", "102", "210"]];
    let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut v = ComplexMatrix::zeros(27, 3);
    for (s, words) in CODEWORDS.iter().enumerate() {
        for w in words {
            let row = w.bytes().fold(0, |acc, b| acc * 3 + (b - b'0') as usize);
            v.set(row, s, amp);
        }
    }
    let encoding = EncodingIsometry::new(v, qutrit_players(3, 3)).expect("codewords are orthonormal");
    let gamma = threshold_structure(2, 3).expect("static structure");
    SchemeSpec::new("cgl23", SecretEnsemble::uniform_basis(3), encoding, gamma).expect("consistent built-in")
}

pub(crate) fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Polynomial `(t, 2t−1)` threshold scheme over `Z_q`.
///
/// `|s⟩ ↦ q^{−(t−1)/2} Σ_f |f(1), …, f(n)⟩`, summing over the `q^{t−1}`
/// polynomials of degree `< t` whose coefficient of `x^{t−1}` is `s`. Points
/// are taken mod `q`, so for `q = n` the last player evaluates at `0`; the
/// secret therefore sits in the leading coefficient, which any `t − 1`
/// evaluations leave undetermined.
pub fn threshold_scheme(t: usize, n: usize, q: usize) -> Result<SchemeSpec> {
    if t == 0 || n != 2 * t - 1 {
        return Err(QssError::input(format!("threshold scheme needs n = 2t - 1, got t={t}, n={n}")));
    }
    if !is_prime(q) {
        return Err(QssError::input(format!("field size q={q} is not prime")));
    }
    if q < n {
        return Err(QssError::input(format!("field size q={q} is smaller than n={n}")));
    }
    let rows = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(q));
    let rows = match rows {
        Some(r) if r.saturating_mul(q) <= MAX_TOTAL_DIM => r,
        _ => return Err(QssError::Size(format!("threshold({t},{n},{q}) exceeds the maximum global dimension"))),
    };
    let free = t - 1;
    let amp = Complex64::new((q as f64).powf(-(free as f64) / 2.0), 0.0);
    let mut v = ComplexMatrix::zeros(rows, q);
    let combos = q.pow(free as u32);
    for s in 0..q {
        for c in 0..combos {
            // Coefficients of x^0..x^{t-2} from the digits of c, then s on x^{t-1}.
            let mut coeffs: Vec<usize> = (0..free).map(|k| (c / q.pow(k as u32)) % q).collect();
            coeffs.push(s);
            let row = (1..=n).fold(0, |acc, x| {
                let x = x % q;
                let y = coeffs.iter().rev().fold(0, |h, &a| (h * x + a) % q);
                acc * q + y
            });
            debug_assert_eq!(v.get(row, s), ZERO);
            v.set(row, s, amp);
        }
    }
    let encoding = EncodingIsometry::new(v, qutrit_players(n, q))?;
    SchemeSpec::new(
        format!("threshold({t},{n},{q})"),
        SecretEnsemble::uniform_basis(q),
        encoding,
        threshold_structure(t, n)?,
    )
}

/// Stinespring isometry `|s⟩ ↦ Σ_k K_k|s⟩ ⊗ |k⟩_env` of a trace-preserving
/// operator-sum map onto `players`.
pub fn dilate(components: &[ComplexMatrix], players: &SubsystemLayout) -> Result<EncodingIsometry> {
    let first = components.first().ok_or_else(|| QssError::input("dilation needs at least one component"))?;
    let (rows, cols) = (first.rows(), first.cols());
    if rows != players.total_dim() {
        return Err(QssError::input(format!(
            "components have {rows} rows but the players' joint dimension is {}",
            players.total_dim()
        )));
    }
    if players.position(ENVIRONMENT).is_some() {
        return Err(QssError::input(format!("player label '{ENVIRONMENT}' is reserved for dilation")));
    }
    let mut sum = ComplexMatrix::zeros(cols, cols);
    for (k, comp) in components.iter().enumerate() {
        if comp.rows() != rows || comp.cols() != cols {
            return Err(QssError::input(format!("component {k} has a different shape")));
        }
        sum = sum.add(&comp.adjoint().matmul(comp)?)?;
    }
    let defect = sum.max_abs_diff(&ComplexMatrix::identity(cols));
    if defect > TRACE_PRESERVING_TOL {
        return Err(QssError::input(format!(
            "operator-sum components are not trace preserving (max |ΣK†K - I| = {defect:.3e})"
        )));
    }
    let k = components.len();
    if rows.saturating_mul(k).saturating_mul(cols) > MAX_TOTAL_DIM {
        return Err(QssError::Size("dilated encoding exceeds the maximum global dimension".into()));
    }
    let mut v = ComplexMatrix::zeros(rows * k, cols);
    for (e, comp) in components.iter().enumerate() {
        for r in 0..rows {
            for c in 0..cols {
                v.set(r * k + e, c, comp.get(r, c));
            }
        }
    }
    let layout = players.concat(&SubsystemLayout::single(ENVIRONMENT, k)?)?;
    EncodingIsometry::new(v, layout)
}

/// Scheme from operator-sum components; the environment player joins no
/// minimal authorized set.
pub fn dilated_scheme(
    name: impl Into<String>,
    components: &[ComplexMatrix],
    players: &SubsystemLayout,
    gamma: &AccessStructure,
    ensemble: SecretEnsemble,
) -> Result<SchemeSpec> {
    let encoding = dilate(components, players)?;
    SchemeSpec::new(name, ensemble, encoding, gamma.with_extra_player(ENVIRONMENT)?)
}
