//! Randomized sanity sweep of the entropy inequalities.
//!
//! Samples alternate between `2×2×2` and `2×3×2` layouts; the purifying
//! dimension cycles through full rank, 3 and 1 (pure) so that rank-deficient
//! and pure marginals get exercised too.

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::{
    check_entropy_inequalities, conditional_entropy, random_density_matrix, DensityMatrix, Inequality, INEQUALITY_TOL,
};
use crate::error::Result;
use crate::linalg::{tensor_product, ComplexMatrix, StateVector, SubsystemLayout};

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityStats {
    pub inequality: Inequality,
    pub evaluated: usize,
    pub violations: usize,
    pub min_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub stats: Vec<InequalityStats>,
    /// Subadditivity slack on a product state; should vanish.
    pub product_subadditivity_slack: f64,
    /// `S(X|Y)` of a Bell pair; should be −1.
    pub bell_conditional_entropy: f64,
    pub passed: bool,
}

impl SelftestReport {
    pub fn stat(&self, which: Inequality) -> Option<&InequalityStats> {
        self.stats.iter().find(|s| s.inequality == which)
    }

    pub fn total_violations(&self) -> usize {
        self.stats.iter().map(|s| s.violations).sum()
    }
}

fn sample_layout(i: usize) -> SubsystemLayout {
    let y = if i.is_multiple_of(2) { 2 } else { 3 };
    SubsystemLayout::new([("X", 2), ("Y", y), ("Z", 2)]).expect("static layout")
}

fn bell_pair() -> DensityMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = StateVector::new([h, 0.0, 0.0, h].iter().map(|&a| Complex64::new(a, 0.0)).collect()).expect("normalized");
    let layout = SubsystemLayout::new([("X", 2), ("Y", 2)]).expect("static layout");
    DensityMatrix::new(psi.projector(), layout).expect("valid density")
}

fn product_fixture(seed: u64) -> Result<DensityMatrix> {
    let x = random_density_matrix(&SubsystemLayout::single("X", 2)?, 2, seed)?;
    let y = random_density_matrix(&SubsystemLayout::single("Y", 3)?, 3, seed.wrapping_add(1))?;
    let m: ComplexMatrix = tensor_product(x.matrix(), y.matrix())?;
    DensityMatrix::new(m, x.layout().concat(y.layout())?)
}

pub fn run_selftest(samples: usize, seed: u64) -> Result<SelftestReport> {
    let mut stats: Vec<InequalityStats> = Inequality::ALL
        .iter()
        .map(|&inequality| InequalityStats { inequality, evaluated: 0, violations: 0, min_slack: f64::INFINITY })
        .collect();
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let layout = sample_layout(i);
        let purifying = match i % 3 {
            0 => layout.total_dim(),
            1 => 3,
            _ => 1,
        };
        let rho = random_density_matrix(&layout, purifying, seeds.next_u64())?;
        let report = check_entropy_inequalities(&rho, &["X"], &["Y"], &["Z"])?;
        for check in &report.inequalities {
            let s = stats.iter_mut().find(|s| s.inequality == check.inequality).expect("all inequalities listed");
            s.evaluated += 1;
            s.min_slack = s.min_slack.min(check.slack);
            if !check.holds {
                s.violations += 1;
            }
        }
    }

    let product = product_fixture(seeds.next_u64())?;
    let product_report = check_entropy_inequalities::<&str>(&product, &["X"], &["Y"], &[])?;
    let product_subadditivity_slack = product_report.check(Inequality::Subadditivity).map_or(f64::NAN, |c| c.slack);
    let bell_conditional_entropy = conditional_entropy(&bell_pair(), &["X"], &["Y"])?;

    let passed = stats.iter().all(|s| s.violations == 0)
        && product_subadditivity_slack.abs() <= INEQUALITY_TOL
        && (bell_conditional_entropy + 1.0).abs() <= INEQUALITY_TOL;
    Ok(SelftestReport {
        samples,
        seed,
        tolerance: INEQUALITY_TOL,
        stats,
        product_subadditivity_slack,
        bell_conditional_entropy,
        passed,
    })
}
