//! Entropic verification of secret sharing schemes and recovery synthesis.
//!
//! All quantities come from the pure global state `|R P₁ … P_m⟩`. A coalition
//! `A` is authorized-correct when `I(R:A) = I(R:S)` and unauthorized-correct
//! when `I(R:A) = 0`. Entropies are memoized per coalition of the global
//! layout, and each one is computed on the smaller side of its cut.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::access::{positions, Coalition};
use crate::entropy::von_neumann_entropy;
use crate::error::{QssError, Result};
use crate::linalg::{complement_positions, hermitian_eig, isometry_defect, ComplexMatrix, ZERO};
use crate::schemes::{ensemble_density, SchemeSpec, SecretEnsemble};
use crate::systems::{assemble_global, bipartite_matrix, purification_branches, purify, MultipartiteState, REFERENCE};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// Largest player count the exhaustive checks accept.
pub const MAX_VERIFY_PLAYERS: usize = 12;
/// Eigenvalues of `ρ_RB` below this are left out of recovery synthesis.
pub const RECOVERY_EIGEN_CUTOFF: f64 = 1e-12;
pub const RELATIVE_STATE_TOL: f64 = 1e-8;
const DEGENERATE_ENTROPY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tolerance: f64,
    /// Only minimal authorized and maximal unauthorized coalitions.
    pub fast: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, fast: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetRecord {
    pub subset: Vec<String>,
    pub authorized: bool,
    /// `I(R:A)` in bits.
    pub mutual_information: f64,
    /// `I(R:S)` for authorized coalitions, 0 otherwise.
    pub target: f64,
    /// `S(A) − S(RA)`.
    pub coherent_information: f64,
    /// Whether the coherent-information criterion gives the same verdict.
    pub criteria_agree: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoexistenceViolation {
    pub authorized: Vec<String>,
    pub complement: Vec<String>,
    /// `I(R : P∖A)` in bits.
    pub mutual_information: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareBoundRecord {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub secret_entropy: f64,
    /// `S(AB) − S(RAB)`, which must equal `S(R)` when `AB` recovers.
    pub recovery_identity_lhs: f64,
    pub reference_entropy: f64,
    pub bound_a_holds: bool,
    pub bound_b_holds: bool,
    pub identity_holds: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerEntropy {
    pub player: String,
    pub bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub secret_entropy: f64,
    pub player_entropies: Vec<PlayerEntropy>,
    /// `S(S) / max_X S(X)`; `None` when every share is (numerically) pure.
    pub rate: Option<f64>,
    /// `S(S)·|P| / Σ_X S(X)`.
    pub average_rate: Option<f64>,
    pub inverse_rate: Option<f64>,
    /// `max_X S(X) − S(S)`.
    pub max_share_gap: f64,
    /// `max S(X) ≥ S(S) − tol` over players that occur in some share-bound pair
    /// (vacuous when none do).
    pub share_bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scheme: String,
    pub tolerance: f64,
    pub fast: bool,
    pub secret_entropy: f64,
    /// `I(R:S)` of the purified secret.
    pub reference_mutual_information: f64,
    pub subsets: Vec<SubsetRecord>,
    pub coexistence_violations: Vec<CoexistenceViolation>,
    pub share_bounds: Vec<ShareBoundRecord>,
    pub rates: Option<Rates>,
    pub overall: bool,
}

impl VerificationReport {
    fn recompute_overall(&mut self) {
        self.overall = self.subsets.iter().all(|r| r.verdict)
            && self.coexistence_violations.is_empty()
            && self.share_bounds.iter().all(|r| r.verdict)
            && self.rates.as_ref().is_none_or(|r| r.share_bound_holds);
    }

    pub fn record(&self, subset: &[&str]) -> Option<&SubsetRecord> {
        self.subsets.iter().find(|r| r.subset.iter().map(String::as_str).eq(subset.iter().copied()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| QssError::Parse(e.to_string()))
    }
}

const R_BIT: Coalition = 1;

/// Memoized entropies of one assembled global state.
struct Analysis<'a> {
    scheme: &'a SchemeSpec,
    state: MultipartiteState,
    full: Coalition,
    secret_entropy: f64,
    reference_mi: f64,
    cache: HashMap<Coalition, f64>,
}

impl<'a> Analysis<'a> {
    fn new(scheme: &'a SchemeSpec, ensemble: &SecretEnsemble) -> Result<Self> {
        let m = scheme.players().len();
        if m > MAX_VERIFY_PLAYERS {
            return Err(QssError::Size(format!("{m} players exceeds the verification limit {MAX_VERIFY_PLAYERS}")));
        }
        let state = assemble_global(scheme, ensemble)?;
        let rho_s = ensemble_density(ensemble)?;
        let secret_entropy = von_neumann_entropy(&rho_s)?;
        let reference_mi = purify(&rho_s)?.mutual_information(&[REFERENCE], &["S"])?;
        Ok(Self { scheme, state, full: (1 << (m + 1)) - 1, secret_entropy, reference_mi, cache: HashMap::new() })
    }

    fn entropy(&mut self, mask: Coalition) -> Result<f64> {
        if let Some(&s) = self.cache.get(&mask) {
            return Ok(s);
        }
        let s = self.state.entropy_positions(&positions(mask))?;
        self.cache.insert(mask, s);
        // Schmidt symmetry of the pure global state.
        self.cache.insert(self.full & !mask, s);
        Ok(s)
    }

    fn players_entropy(&mut self, players: Coalition) -> Result<f64> {
        self.entropy(players << 1)
    }

    fn reference_entropy(&mut self) -> Result<f64> {
        self.entropy(R_BIT)
    }

    /// `I(R:A)` for a player coalition.
    fn reference_mi(&mut self, players: Coalition) -> Result<f64> {
        if players == 0 {
            return Ok(0.0);
        }
        let g = players << 1;
        Ok(self.entropy(R_BIT)? + self.entropy(g)? - self.entropy(g | R_BIT)?)
    }

    fn coherent_information(&mut self, players: Coalition) -> Result<f64> {
        let g = players << 1;
        Ok(self.entropy(g)? - self.entropy(g | R_BIT)?)
    }

    fn subset_records(&mut self, fast: bool, tol: f64) -> Result<Vec<SubsetRecord>> {
        let gamma = self.scheme.gamma();
        let coalitions = if fast {
            let mut v: Vec<Coalition> = gamma.minimal_masks().to_vec();
            v.extend(gamma.maximal_unauthorized().into_iter().filter(|&m| m != 0));
            let order = gamma.coalitions();
            v.sort_by_key(|m| order.iter().position(|o| o == m));
            v
        } else {
            gamma.coalitions()
        };
        let s_ref = self.reference_entropy()?;
        let mut out = Vec::with_capacity(coalitions.len());
        for mask in coalitions {
            let authorized = gamma.is_authorized_mask(mask);
            let mi = self.reference_mi(mask)?;
            let coh = self.coherent_information(mask)?;
            let (target, mi_ok, coh_ok) = if authorized {
                let t = self.reference_mi;
                (t, (mi - t).abs() <= tol, (coh - self.secret_entropy).abs() <= tol)
            } else {
                // I(R:A) = 0 ⟺ S(A) − S(RA) = −S(R).
                (0.0, mi <= tol, (coh + s_ref).abs() <= tol)
            };
            out.push(SubsetRecord {
                subset: gamma.labels(mask),
                authorized,
                mutual_information: mi,
                target,
                coherent_information: coh,
                criteria_agree: mi_ok == coh_ok,
                verdict: mi_ok && mi_ok == coh_ok,
            });
        }
        Ok(out)
    }

    fn coexistence(&mut self, tol: f64) -> Result<Vec<CoexistenceViolation>> {
        let gamma = self.scheme.gamma();
        let full = gamma.full_mask();
        let mut out = Vec::new();
        for mask in gamma.coalitions() {
            if !gamma.is_authorized_mask(mask) {
                continue;
            }
            let comp = full & !mask;
            let mi = self.reference_mi(comp)?;
            if mi > tol {
                out.push(CoexistenceViolation {
                    authorized: gamma.labels(mask),
                    complement: gamma.labels(comp),
                    mutual_information: mi,
                });
            }
        }
        Ok(out)
    }

    fn share_bounds(&mut self, tol: f64) -> Result<Vec<ShareBoundRecord>> {
        let gamma = self.scheme.gamma();
        let pairs = gamma.share_bound_pair_masks()?;
        let s_ref = self.reference_entropy()?;
        let s_s = self.secret_entropy;
        let mut out = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let sa = self.players_entropy(a)?;
            let sb = self.players_entropy(b)?;
            let lhs = self.players_entropy(a | b)? - self.entropy(((a | b) << 1) | R_BIT)?;
            let bound_a_holds = sa >= s_s - tol;
            let bound_b_holds = sb >= s_s - tol;
            let identity_holds = (lhs - s_ref).abs() <= tol;
            out.push(ShareBoundRecord {
                a: gamma.labels(a),
                b: gamma.labels(b),
                entropy_a: sa,
                entropy_b: sb,
                secret_entropy: s_s,
                recovery_identity_lhs: lhs,
                reference_entropy: s_ref,
                bound_a_holds,
                bound_b_holds,
                identity_holds,
                verdict: bound_a_holds && bound_b_holds && identity_holds,
            });
        }
        Ok(out)
    }

    fn rates(&mut self, tol: f64) -> Result<Rates> {
        let gamma = self.scheme.gamma();
        let m = gamma.player_count();
        let mut player_entropies = Vec::with_capacity(m);
        for i in 0..m {
            player_entropies
                .push(PlayerEntropy { player: gamma.players()[i].clone(), bits: self.players_entropy(1 << i)? });
        }
        let max = player_entropies.iter().map(|p| p.bits).fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = player_entropies.iter().map(|p| p.bits).sum();
        let s_s = self.secret_entropy;
        let degenerate = player_entropies.iter().all(|p| p.bits <= DEGENERATE_ENTROPY);
        let (rate, average_rate, inverse_rate) = if degenerate {
            (None, None, None)
        } else {
            (Some(s_s / max), Some(s_s * m as f64 / sum), (s_s > 0.0).then(|| max / s_s))
        };
        let in_pairs: Coalition = if m <= crate::access::MAX_PAIR_PLAYERS {
            gamma.share_bound_pair_masks()?.into_iter().fold(0, |acc, (a, b)| acc | a | b)
        } else {
            0
        };
        let pair_max = (0..m)
            .filter(|i| in_pairs & (1 << i) != 0)
            .map(|i| player_entropies[i].bits)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Rates {
            secret_entropy: s_s,
            rate,
            average_rate,
            inverse_rate,
            max_share_gap: max - s_s,
            share_bound_holds: in_pairs == 0 || pair_max >= s_s - tol,
            player_entropies,
        })
    }

    fn report_header(&self, opts: &VerifyOptions) -> VerificationReport {
        VerificationReport {
            scheme: self.scheme.name().to_string(),
            tolerance: opts.tolerance,
            fast: opts.fast,
            secret_entropy: self.secret_entropy,
            reference_mutual_information: self.reference_mi,
            subsets: Vec::new(),
            coexistence_violations: Vec::new(),
            share_bounds: Vec::new(),
            rates: None,
            overall: false,
        }
    }
}

/// Recoverability for authorized and secrecy for unauthorized coalitions.
pub fn verify_definition1(
    scheme: &SchemeSpec,
    ensemble: &SecretEnsemble,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut an = Analysis::new(scheme, ensemble)?;
    let mut report = an.report_header(opts);
    report.subsets = an.subset_records(opts.fast, opts.tolerance)?;
    report.recompute_overall();
    Ok(report)
}

/// Complements of authorized coalitions that still carry information about
/// the reference. An empty list means no share set is cloned.
pub fn check_coexistence(
    scheme: &SchemeSpec,
    ensemble: &SecretEnsemble,
    tol: f64,
) -> Result<Vec<CoexistenceViolation>> {
    Analysis::new(scheme, ensemble)?.coexistence(tol)
}

/// `S(A), S(B) ≥ S(S)` for every disjoint unauthorized pair with authorized union.
pub fn check_share_bounds(scheme: &SchemeSpec, ensemble: &SecretEnsemble, tol: f64) -> Result<Vec<ShareBoundRecord>> {
    Analysis::new(scheme, ensemble)?.share_bounds(tol)
}

pub fn rates(scheme: &SchemeSpec, ensemble: &SecretEnsemble) -> Result<Rates> {
    Analysis::new(scheme, ensemble)?.rates(DEFAULT_TOLERANCE)
}

/// Every check in one report.
pub fn verify_scheme(
    scheme: &SchemeSpec,
    ensemble: &SecretEnsemble,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut an = Analysis::new(scheme, ensemble)?;
    let mut report = an.report_header(opts);
    report.subsets = an.subset_records(opts.fast, opts.tolerance)?;
    report.coexistence_violations = an.coexistence(opts.tolerance)?;
    report.share_bounds = an.share_bounds(opts.tolerance)?;
    report.rates = Some(an.rates(opts.tolerance)?);
    report.recompute_overall();
    Ok(report)
}

/// Decoder for an authorized coalition.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryMap {
    pub subset: Vec<String>,
    /// Players outside the coalition (untouched by the decoder).
    pub complement: Vec<String>,
    /// Isometry `H_A → H_S ⊗ H_G`; `G` is discarded after decoding.
    pub isometry: ComplexMatrix,
    pub input_dim: usize,
    pub secret_dim: usize,
    pub garbage_dim: usize,
    /// `⟨RS| Tr_{G,B}[(U⊗I) Ψ (U⊗I)†] |RS⟩`.
    pub fidelity: f64,
    /// `max |⟨v_j|v_k⟩ − δ_jk|` over the relative states.
    pub relative_state_defect: f64,
    /// Spectral weight of `ρ_RB` below the eigenvalue cutoff.
    pub excluded_weight: f64,
}

/// Builds a decoder `U: H_A → H_S ⊗ H_G` by matching Schmidt decompositions.
///
/// With `B = P∖A`, both the global state and the target `|RS⟩ ⊗ |Γ_{GB}⟩`
/// (`|Γ⟩` purifying `ρ_B`) purify `ρ_RB` once `R` and `B` are decoupled.
/// Their relative states on `A` and on `S⊗G` along a common eigenbasis of
/// `ρ_RB` are paired up and the partial isometry is completed.
pub fn synthesize_recovery<S: AsRef<str>>(
    scheme: &SchemeSpec,
    ensemble: &SecretEnsemble,
    subset: &[S],
    tol: f64,
) -> Result<RecoveryMap> {
    let gamma = scheme.gamma();
    let a_mask = gamma.mask(subset)?;
    if a_mask == 0 {
        return Err(QssError::input("recovery needs a nonempty coalition"));
    }
    let b_mask = gamma.full_mask() & !a_mask;
    let mut an = Analysis::new(scheme, ensemble)?;
    let mi_b = an.reference_mi(b_mask)?;
    if mi_b > tol {
        return Err(QssError::RecoveryImpossible(format!(
            "I(R:{{{}}}) = {mi_b:.9} bits > {tol:e}: the complement is correlated with the secret",
            gamma.labels(b_mask).join(",")
        )));
    }
    if !gamma.is_authorized_mask(a_mask) {
        return Err(QssError::RecoveryImpossible(format!(
            "{{{}}} is not an authorized coalition",
            gamma.labels(a_mask).join(",")
        )));
    }

    let state = &an.state;
    let psi = state.vector().expect("global state is pure").amplitudes();
    let dims = state.layout().dims();
    let a_pos: Vec<usize> = positions(a_mask << 1);
    let rb_pos: Vec<usize> = complement_positions(dims.len(), &a_pos);
    let b_pos: Vec<usize> = rb_pos[1..].to_vec();
    let ds = dims[0];
    let da: usize = a_pos.iter().map(|&p| dims[p]).product();
    let db: usize = b_pos.iter().map(|&p| dims[p]).product();
    let dg = db.max(da.div_ceil(ds));
    let dout = ds * dg;

    // Global state as rows (R,B) × columns A.
    let m_rb_a = bipartite_matrix(psi, &dims, &rb_pos, &a_pos);
    let rho_rb = m_rb_a.matmul(&m_rb_a.adjoint())?;
    let eig = hermitian_eig(&rho_rb)?;

    // Target |RS⟩ with the same reference convention as the global state.
    let rho_s = ensemble_density(ensemble)?;
    let branches = purification_branches(&rho_s)?;
    let phi = |r: usize, s: usize| branches[r].1[s] * branches[r].0;

    // |Γ_{GB}⟩ = Σ_k √μ_k |k⟩_G |w_k⟩_B.
    let rho_b = trace_out_reference(&m_rb_a, ds, db)?;
    let eb = hermitian_eig(&rho_b)?;
    let mut gamma_gb = vec![ZERO; dg * db];
    for (k, &mu) in eb.values.iter().enumerate() {
        let amp = mu.max(0.0).sqrt();
        for b in 0..db {
            gamma_gb[k * db + b] = eb.vectors.get(b, k) * amp;
        }
    }

    let mut excluded_weight = 0.0;
    let mut v_states: Vec<Vec<Complex64>> = Vec::new();
    let mut z_states: Vec<Vec<Complex64>> = Vec::new();
    for (k, &lam) in eig.values.iter().enumerate() {
        if lam <= RECOVERY_EIGEN_CUTOFF {
            excluded_weight += lam.max(0.0);
            continue;
        }
        let scale = 1.0 / lam.sqrt();
        let u: Vec<Complex64> = eig.vectors.column(k);
        let mut v = vec![ZERO; da];
        for (rb, uc) in u.iter().enumerate() {
            let uc = uc.conj();
            for (a, out) in v.iter_mut().enumerate() {
                *out += uc * m_rb_a.get(rb, a);
            }
        }
        v.iter_mut().for_each(|x| *x *= scale);
        // z[s, g] = Σ_{r,b} conj(u[r,b]) Φ[r,s] Γ[g,b]
        let mut z = vec![ZERO; dout];
        for r in 0..ds {
            for b in 0..db {
                let uc = u[r * db + b].conj();
                if uc == ZERO {
                    continue;
                }
                for s in 0..ds {
                    let f = uc * phi(r, s);
                    if f == ZERO {
                        continue;
                    }
                    for g in 0..dg {
                        z[s * dg + g] += f * gamma_gb[g * db + b];
                    }
                }
            }
        }
        z.iter_mut().for_each(|x| *x *= scale);
        v_states.push(v);
        z_states.push(z);
    }

    let relative_state_defect = gram_defect(&v_states);
    if relative_state_defect > RELATIVE_STATE_TOL {
        return Err(QssError::Numeric(format!(
            "relative states are not orthonormal (defect {relative_state_defect:.3e})"
        )));
    }

    let v_basis = complete_basis(v_states, da);
    let z_basis = complete_basis(z_states, dout);
    if v_basis.len() != da || z_basis.len() < da {
        return Err(QssError::Numeric("could not complete the decoder to an isometry".into()));
    }
    let mut u_mat = ComplexMatrix::zeros(dout, da);
    for (v, z) in v_basis.iter().zip(&z_basis) {
        for (o, zo) in z.iter().enumerate() {
            if *zo == ZERO {
                continue;
            }
            for (a, va) in v.iter().enumerate() {
                let cur = u_mat.get(o, a);
                u_mat.set(o, a, cur + zo * va.conj());
            }
        }
    }
    let iso_defect = isometry_defect(&u_mat).unwrap_or(f64::INFINITY);
    if iso_defect > RELATIVE_STATE_TOL {
        return Err(QssError::Numeric(format!("decoder is not an isometry (defect {iso_defect:.3e})")));
    }

    // σ[r, (s,g), b] = Σ_a U[(s,g), a] Ψ[r, a, b]; fidelity against |RS⟩.
    let mut fidelity = 0.0;
    for g in 0..dg {
        for b in 0..db {
            let mut overlap = ZERO;
            for r in 0..ds {
                let row = r * db + b;
                for s in 0..ds {
                    let p = phi(r, s);
                    if p == ZERO {
                        continue;
                    }
                    let out = s * dg + g;
                    let mut sigma = ZERO;
                    for a in 0..da {
                        sigma += u_mat.get(out, a) * m_rb_a.get(row, a);
                    }
                    overlap += p.conj() * sigma;
                }
            }
            fidelity += overlap.norm_sqr();
        }
    }
    let fidelity = fidelity.clamp(0.0, 1.0);
    if fidelity < 1.0 - tol {
        return Err(QssError::Numeric(format!(
            "recovery fidelity {fidelity:.12} is below 1 - {tol:e} (excluded weight {excluded_weight:.3e})"
        )));
    }
    Ok(RecoveryMap {
        subset: gamma.labels(a_mask),
        complement: gamma.labels(b_mask),
        isometry: u_mat,
        input_dim: da,
        secret_dim: ds,
        garbage_dim: dg,
        fidelity,
        relative_state_defect,
        excluded_weight,
    })
}

/// `ρ_B` from the `(R,B) × A` coefficient matrix.
fn trace_out_reference(m: &ComplexMatrix, dr: usize, db: usize) -> Result<ComplexMatrix> {
    let rho_rb = m.matmul(&m.adjoint())?;
    let mut out = ComplexMatrix::zeros(db, db);
    for i in 0..db {
        for j in 0..db {
            let mut acc = ZERO;
            for r in 0..dr {
                acc += rho_rb.get(r * db + i, r * db + j);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

fn gram_defect(vs: &[Vec<Complex64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, x) in vs.iter().enumerate() {
        for (j, y) in vs.iter().enumerate().skip(i) {
            let mut ip: Complex64 = x.iter().zip(y).map(|(a, b)| a.conj() * b).sum();
            if i == j {
                ip -= Complex64::new(1.0, 0.0);
            }
            worst = worst.max(ip.norm());
        }
    }
    worst
}

/// Orthonormalizes `vectors` (modified Gram–Schmidt, twice) and extends them
/// with standard basis vectors up to `dim` elements.
fn complete_basis(vectors: Vec<Vec<Complex64>>, dim: usize) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let candidates = vectors.into_iter().chain((0..dim).map(|i| {
        let mut e = vec![ZERO; dim];
        e[i] = Complex64::new(1.0, 0.0);
        e
    }));
    for mut w in candidates {
        if basis.len() == dim {
            break;
        }
        for _ in 0..2 {
            for q in &basis {
                let ip: Complex64 = q.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= ip * qi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            w.iter_mut().for_each(|z| *z /= norm);
            basis.push(w);
        }
    }
    basis
}
