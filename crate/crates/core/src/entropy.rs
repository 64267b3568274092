//! Von Neumann entropy (in bits) and the quantities built from it.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{QssError, Result};
use crate::linalg::{hermitian_eig, partial_trace, ComplexMatrix, SubsystemLayout};

/// Tolerance on Hermiticity and unit trace of a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero; anything lower is rejected.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Slack below `-INEQUALITY_TOL` counts as a violated entropy inequality.
pub const INEQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: SubsystemLayout,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, layout: SubsystemLayout) -> Result<Self> {
        let rho = Self::with_basic_checks(matrix, layout)?;
        let min = hermitian_eig(&rho.matrix)?.values.first().copied().unwrap_or(0.0);
        if min < -EIGEN_CLAMP {
            return Err(QssError::input(format!("density matrix has negative eigenvalue {min:.3e}")));
        }
        Ok(rho)
    }

    /// A one-factor density matrix labelled `label`.
    pub fn single(matrix: ComplexMatrix, label: &str) -> Result<Self> {
        let layout = SubsystemLayout::single(label, matrix.rows())?;
        Self::new(matrix, layout)
    }

    fn with_basic_checks(matrix: ComplexMatrix, layout: SubsystemLayout) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != layout.total_dim() {
            return Err(QssError::input(format!(
                "density matrix {}x{} does not match layout dimension {}",
                matrix.rows(),
                matrix.cols(),
                layout.total_dim()
            )));
        }
        let defect = matrix.hermitian_defect();
        if defect > DENSITY_TOL {
            return Err(QssError::input(format!("density matrix not Hermitian (defect {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(QssError::input(format!("density matrix trace is {tr}, expected 1")));
        }
        Ok(Self { matrix, layout })
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, layout: SubsystemLayout) -> Self {
        debug_assert_eq!(matrix.rows(), layout.total_dim());
        Self { matrix, layout }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Marginal on `keep`, factors in layout order.
    pub fn reduce<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        let positions = self.layout.positions(keep)?;
        let m = partial_trace(&self.matrix, &self.layout, keep)?;
        Ok(Self::from_parts_unchecked(m, self.layout.restrict(&positions)))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.matrix)?.values)
    }

    /// Same state with factors relabelled and permuted into `order`
    /// (a permutation of layout positions).
    pub fn permuted(&self, order: &[usize]) -> Result<DensityMatrix> {
        let n = self.layout.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(QssError::input("permutation does not match the layout"));
        }
        let dims = self.layout.dims();
        let new_layout = SubsystemLayout::new(order.iter().map(|&p| self.layout.parts()[p].clone()))?;
        let new_dims = new_layout.dims();
        let total = self.dim();
        // old flat index for each new flat index
        let mut map = vec![0usize; total];
        let mut old_strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            old_strides[i] = old_strides[i + 1] * dims[i + 1];
        }
        for (new_idx, slot) in map.iter_mut().enumerate() {
            let mut rem = new_idx;
            let mut old = 0;
            for k in (0..n).rev() {
                let digit = rem % new_dims[k];
                rem /= new_dims[k];
                old += digit * old_strides[order[k]];
            }
            *slot = old;
        }
        let mut data = Vec::with_capacity(total * total);
        for &i in &map {
            for &j in &map {
                data.push(self.matrix.get(i, j));
            }
        }
        Ok(Self::from_parts_unchecked(ComplexMatrix::from_raw(total, total, data), new_layout))
    }
}

/// `−Σ λ log₂ λ` over a spectrum, clamping tiny negative eigenvalues.
pub fn entropy_from_spectrum(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lam in values {
        if lam < -EIGEN_CLAMP {
            return Err(QssError::input(format!("negative eigenvalue {lam:.3e} in entropy")));
        }
        if lam > 0.0 {
            s -= lam * lam.log2();
        }
    }
    Ok(s)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_from_spectrum(&rho.eigenvalues()?)
}

/// Entropy of the marginal on `labels`; the empty set has entropy 0.
pub fn subsystem_entropy<S: AsRef<str>>(rho: &DensityMatrix, labels: &[S]) -> Result<f64> {
    if labels.is_empty() {
        return Ok(0.0);
    }
    von_neumann_entropy(&rho.reduce(labels)?)
}

fn check_disjoint<S: AsRef<str>>(sets: &[&[S]]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(x) = a.iter().find(|x| b.iter().any(|y| y.as_ref() == x.as_ref())) {
                return Err(QssError::input(format!("label '{}' appears in two label sets", x.as_ref())));
            }
        }
    }
    Ok(())
}

fn union<A: AsRef<str>, B: AsRef<str>>(a: &[A], b: &[B]) -> Vec<String> {
    a.iter().map(|s| s.as_ref().to_string()).chain(b.iter().map(|s| s.as_ref().to_string())).collect()
}

/// `S(X|Y) = S(XY) − S(Y)`; may be negative for entangled states.
pub fn conditional_entropy<S: AsRef<str>>(rho: &DensityMatrix, x: &[S], y: &[S]) -> Result<f64> {
    check_disjoint(&[x, y])?;
    Ok(subsystem_entropy(rho, &union(x, y))? - subsystem_entropy(rho, y)?)
}

/// `I(X:Y) = S(X) + S(Y) − S(XY)`. The raw value is returned; results below
/// `−INEQUALITY_TOL` are logged.
pub fn mutual_information<S: AsRef<str>>(rho: &DensityMatrix, x: &[S], y: &[S]) -> Result<f64> {
    check_disjoint(&[x, y])?;
    let i = subsystem_entropy(rho, x)? + subsystem_entropy(rho, y)? - subsystem_entropy(rho, &union(x, y))?;
    if i < -INEQUALITY_TOL {
        log::warn!("mutual information {i:.3e} is below -{INEQUALITY_TOL:e}");
    }
    Ok(i)
}

/// `S(A) − S(RA)` for a state on exactly the factors `a ∪ r`.
pub fn coherent_information<S: AsRef<str>>(rho_ra: &DensityMatrix, a: &[S], r: &[S]) -> Result<f64> {
    check_disjoint(&[a, r])?;
    if a.len() + r.len() != rho_ra.layout().len() {
        return Err(QssError::input("coherent information needs a and r to cover every factor"));
    }
    rho_ra.layout().positions(&union(a, r))?;
    Ok(subsystem_entropy(rho_ra, a)? - von_neumann_entropy(rho_ra)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Inequality {
    Subadditivity,
    ArakiLieb,
    StrongSubadditivity,
    MutualInformationMonotonicity,
}

impl Inequality {
    pub const ALL: [Inequality; 4] = [
        Inequality::Subadditivity,
        Inequality::ArakiLieb,
        Inequality::StrongSubadditivity,
        Inequality::MutualInformationMonotonicity,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Inequality::Subadditivity => "S(XY) <= S(X) + S(Y)",
            Inequality::ArakiLieb => "S(XY) >= |S(X) - S(Y)|",
            Inequality::StrongSubadditivity => "S(XYZ) + S(Y) <= S(XY) + S(YZ)",
            Inequality::MutualInformationMonotonicity => "I(X:Y) <= I(X:YZ)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub inequality: Inequality,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub entropies: Vec<NamedValue>,
    pub conditional: Vec<NamedValue>,
    pub mutual: Vec<NamedValue>,
    pub inequalities: Vec<InequalityCheck>,
    pub tolerance: f64,
}

impl EntropyReport {
    pub fn all_hold(&self) -> bool {
        self.inequalities.iter().all(|c| c.holds)
    }

    pub fn check(&self, which: Inequality) -> Option<&InequalityCheck> {
        self.inequalities.iter().find(|c| c.inequality == which)
    }
}

fn make_check(inequality: Inequality, lhs: f64, rhs: f64) -> InequalityCheck {
    let slack = rhs - lhs;
    InequalityCheck { inequality, lhs, rhs, slack, holds: slack >= -INEQUALITY_TOL }
}

/// Evaluates subadditivity and Araki–Lieb on `(x, y)` and, when `z` is
/// nonempty, strong subadditivity and monotonicity of mutual information.
pub fn check_entropy_inequalities<S: AsRef<str>>(
    rho: &DensityMatrix,
    x: &[S],
    y: &[S],
    z: &[S],
) -> Result<EntropyReport> {
    check_disjoint(&[x, y, z])?;
    let xy = union(x, y);
    let sx = subsystem_entropy(rho, x)?;
    let sy = subsystem_entropy(rho, y)?;
    let sxy = subsystem_entropy(rho, &xy)?;
    let ixy = sx + sy - sxy;

    let mut entropies = vec![
        NamedValue { name: "S(X)".into(), bits: sx },
        NamedValue { name: "S(Y)".into(), bits: sy },
        NamedValue { name: "S(XY)".into(), bits: sxy },
    ];
    let mut conditional = vec![
        NamedValue { name: "S(X|Y)".into(), bits: sxy - sy },
        NamedValue { name: "S(Y|X)".into(), bits: sxy - sx },
    ];
    let mut mutual = vec![NamedValue { name: "I(X:Y)".into(), bits: ixy }];
    let mut inequalities = vec![
        make_check(Inequality::Subadditivity, sxy, sx + sy),
        make_check(Inequality::ArakiLieb, (sx - sy).abs(), sxy),
    ];

    if !z.is_empty() {
        let yz = union(y, z);
        let xyz = union(&xy, z);
        let syz = subsystem_entropy(rho, &yz)?;
        let sxyz = subsystem_entropy(rho, &xyz)?;
        let i_x_yz = sx + syz - sxyz;
        entropies.push(NamedValue { name: "S(YZ)".into(), bits: syz });
        entropies.push(NamedValue { name: "S(XYZ)".into(), bits: sxyz });
        conditional.push(NamedValue { name: "S(X|YZ)".into(), bits: sxyz - syz });
        mutual.push(NamedValue { name: "I(X:YZ)".into(), bits: i_x_yz });
        inequalities.push(make_check(Inequality::StrongSubadditivity, sxyz + sy, sxy + syz));
        inequalities.push(make_check(Inequality::MutualInformationMonotonicity, ixy, i_x_yz));
    }

    Ok(EntropyReport { entropies, conditional, mutual, inequalities, tolerance: INEQUALITY_TOL })
}

/// Marginal of a Haar-like random pure state on `layout ⊗ C^purifying_dim`.
/// Amplitudes are i.i.d. standard complex Gaussians drawn from a ChaCha8
/// stream seeded with `seed`.
pub fn random_density_matrix(layout: &SubsystemLayout, purifying_dim: usize, seed: u64) -> Result<DensityMatrix> {
    if purifying_dim == 0 {
        return Err(QssError::input("purifying dimension must be at least 1"));
    }
    let d = layout.total_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps: Vec<Complex64> = (0..d * purifying_dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let m = ComplexMatrix::from_raw(d, purifying_dim, amps.iter().map(|z| z / norm).collect());
    let rho = m.matmul(&m.adjoint())?;
    Ok(DensityMatrix::from_parts_unchecked(rho, layout.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_product;
    use approx::assert_abs_diff_eq;

    fn bell() -> DensityMatrix {
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[0.5, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.5],
        )
        .unwrap();
        DensityMatrix::new(m, SubsystemLayout::new([("X", 2), ("Y", 2)]).unwrap()).unwrap()
    }

    fn product() -> DensityMatrix {
        let a = ComplexMatrix::from_real(2, 2, &[0.75, 0.25, 0.25, 0.25]).unwrap();
        let b = ComplexMatrix::from_real_diagonal(&[0.2, 0.3, 0.5]);
        DensityMatrix::new(tensor_product(&a, &b).unwrap(), SubsystemLayout::new([("X", 2), ("Y", 3)]).unwrap())
            .unwrap()
    }

    #[test]
    fn maximally_mixed_entropies() {
        let q = DensityMatrix::single(ComplexMatrix::from_real_diagonal(&[0.5, 0.5]), "A").unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&q).unwrap(), 1.0, epsilon = 1e-12);
        let t = 1.0 / 3.0;
        let q3 = DensityMatrix::single(ComplexMatrix::from_real_diagonal(&[t, t, t]), "A").unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&q3).unwrap(), 3f64.log2(), epsilon = 1e-12);
    }

    #[test]
    fn non_orthogonal_ensemble_entropy() {
        // Oracle: eigenvalues of [[3/4,1/4],[1/4,1/4]] are (1 ± 1/√2)/2.
        let l1 = (1.0 + std::f64::consts::FRAC_1_SQRT_2) / 2.0;
        let l2 = (1.0 - std::f64::consts::FRAC_1_SQRT_2) / 2.0;
        let oracle = -(l1 * l1.log2() + l2 * l2.log2());
        assert_abs_diff_eq!(oracle, 0.600876, epsilon = 5e-7);
        let rho =
            DensityMatrix::single(ComplexMatrix::from_real(2, 2, &[0.75, 0.25, 0.25, 0.25]).unwrap(), "S").unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), oracle, epsilon = 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        let l = SubsystemLayout::single("A", 2).unwrap();
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.6]), l.clone()).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[1.5, -0.5]), l.clone()).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap(), l).is_err());
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clamped() {
        assert_eq!(entropy_from_spectrum(&[1.0, -5e-11]).unwrap(), 0.0);
        assert!(entropy_from_spectrum(&[1.0, -1e-9]).is_err());
    }

    #[test]
    fn bell_pair_quantities() {
        let b = bell();
        assert_abs_diff_eq!(conditional_entropy(&b, &["X"], &["Y"]).unwrap(), -1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(mutual_information(&b, &["X"], &["Y"]).unwrap(), 2.0, epsilon = 1e-9);
        let rep = check_entropy_inequalities(&b, &["X"], &["Y"], &[] as &[&str]).unwrap();
        assert_eq!(rep.inequalities.len(), 2);
        assert_abs_diff_eq!(rep.check(Inequality::ArakiLieb).unwrap().slack, 0.0, epsilon = 1e-9);
        // Pure bipartite: coherent information = S(A).
        assert_abs_diff_eq!(coherent_information(&b, &["Y"], &["X"]).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn product_state_quantities() {
        let p = product();
        let sx = subsystem_entropy(&p, &["X"]).unwrap();
        let sy = subsystem_entropy(&p, &["Y"]).unwrap();
        assert_abs_diff_eq!(mutual_information(&p, &["X"], &["Y"]).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(conditional_entropy(&p, &["X"], &["Y"]).unwrap(), sx, epsilon = 1e-9);
        assert_abs_diff_eq!(coherent_information(&p, &["Y"], &["X"]).unwrap(), -sx, epsilon = 1e-9);
        let rep = check_entropy_inequalities(&p, &["X"], &["Y"], &[] as &[&str]).unwrap();
        assert_abs_diff_eq!(rep.check(Inequality::Subadditivity).unwrap().slack, 0.0, epsilon = 1e-9);
        assert!(sy > 0.0);
    }

    #[test]
    fn overlapping_label_sets_rejected() {
        let b = bell();
        assert!(matches!(conditional_entropy(&b, &["X"], &["X"]), Err(QssError::Input(_))));
        assert!(matches!(mutual_information(&b, &["X", "Y"], &["Y"]), Err(QssError::Input(_))));
        assert!(coherent_information(&b, &["X"], &[] as &[&str]).is_err());
    }

    #[test]
    fn sampler_contracts() {
        let layout = SubsystemLayout::new([("A", 2), ("B", 3)]).unwrap();
        let pure = random_density_matrix(&layout, 1, 11).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap() <= 1e-8);
        let a = random_density_matrix(&layout, 6, 5).unwrap();
        let b = random_density_matrix(&layout, 6, 5).unwrap();
        assert_eq!(a, b);
        assert!(random_density_matrix(&layout, 0, 5).is_err());
        // Revalidate through the public constructor.
        DensityMatrix::new(a.matrix().clone(), layout).unwrap();
    }

    #[test]
    fn full_rank_samples_have_positive_entropy() {
        let layout = SubsystemLayout::new([("A", 2), ("B", 2)]).unwrap();
        for seed in 0..100 {
            let rho = random_density_matrix(&layout, 4, seed).unwrap();
            assert!(von_neumann_entropy(&rho).unwrap() > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn permutation_preserves_entropies() {
        let layout = SubsystemLayout::new([("A", 2), ("B", 3), ("C", 2)]).unwrap();
        let rho = random_density_matrix(&layout, 5, 3).unwrap();
        let perm = rho.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(perm.layout().labels(), vec!["C", "A", "B"]);
        for set in [vec!["A"], vec!["B"], vec!["C"], vec!["A", "C"], vec!["B", "C"]] {
            let a = subsystem_entropy(&rho, &set).unwrap();
            let b = subsystem_entropy(&perm, &set).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
        assert!(rho.permuted(&[0, 0, 1]).is_err());
    }
}
