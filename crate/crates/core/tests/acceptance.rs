//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use qshare::access::Coalition;
use qshare::{
    cgl23_scheme, check_coexistence, check_share_bounds, purify, random_density_matrix, rates, run_selftest,
    synthesize_recovery, threshold_scheme, threshold_structure, verify_definition1, vernam_structure, QssError,
    SchemeSpec, SecretEnsemble, SubsystemLayout, VerifyOptions,
};

const TOL: f64 = 1e-7;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: QssError) -> String {
    e.to_string()
}

fn builtins() -> Vec<SchemeSpec> {
    vec![cgl23_scheme(), threshold_scheme(2, 3, 3).unwrap(), threshold_scheme(3, 5, 5).unwrap()]
}

fn qshare(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_qshare")).args(args).output().ok()?.status.code()
}

fn log3() -> f64 {
    3f64.log2()
}

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let scheme = cgl23_scheme();
    let global = qshare::assemble_global(&scheme, scheme.default_ensemble()).map_err(err)?;
    let two = 2.0 * log3();
    let i_rs = global.mutual_information(&["R"], &["P1", "P2", "P3"]).map_err(err)?;
    ensure((i_rs - two).abs() <= TOL, || format!("I(R:S) = {i_rs}"))?;
    let s_a = global.entropy(&["P1", "P2"]).map_err(err)?;
    let s_ra = global.entropy(&["R", "P1", "P2"]).map_err(err)?;
    ensure((s_a - two).abs() <= TOL, || format!("S(P1P2) = {s_a}"))?;
    ensure((s_ra - log3()).abs() <= TOL, || format!("S(R P1P2) = {s_ra}"))?;
    for pair in [["P1", "P2"], ["P1", "P3"], ["P2", "P3"]] {
        let i = global.mutual_information(&["R"], &pair).map_err(err)?;
        ensure((i - two).abs() <= TOL, || format!("I(R:{pair:?}) = {i}"))?;
    }
    let rho = global.reduce(&["R", "P1"]).map_err(err)?;
    let target = qshare::ComplexMatrix::from_real_diagonal(&[1.0 / 9.0; 9]);
    let dev = rho.matrix().max_abs_diff(&target);
    ensure(dev <= 1e-10, || format!("rho_(R,P1) deviates by {dev:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("I(R:S) = {i_rs:.9}, S(A) = {s_a:.9}, S(RA) = {s_ra:.9}, |rho_RP1 - I/9| = {dev:.1e}, {elapsed:.2?}"))
}

fn full_verification() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions { tolerance: TOL, fast: false };
    let mut checked = Vec::new();
    for scheme in builtins() {
        let report = verify_definition1(&scheme, scheme.default_ensemble(), &opts).map_err(err)?;
        let expected = (1usize << scheme.players().len()) - 1;
        ensure(report.subsets.len() == expected, || {
            format!("{}: {} subsets checked", scheme.name(), report.subsets.len())
        })?;
        ensure(report.overall, || format!("{} failed recoverability or secrecy checks", scheme.name()))?;
        ensure(report.subsets.iter().all(|r| r.criteria_agree), || format!("{}: criteria disagree", scheme.name()))?;
        checked.push(format!("{} ({} subsets)", scheme.name(), report.subsets.len()));
    }
    let global = threshold_scheme(3, 5, 5).unwrap().encoding().output_layout().total_dim() * 5;
    ensure(global == 15625, || format!("threshold(3,5,5) global dimension {global}"))?;
    for arg in ["builtin:cgl23", "threshold:2,3,3", "threshold:3,5,5"] {
        let code = qshare(&["verify", arg]);
        ensure(code == Some(0), || format!("qshare verify {arg} exited {code:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{}; CLI exit 0 x3; {elapsed:.2?}", checked.join(", ")))
}

fn share_bounds_and_rates() -> Outcome {
    let mut pairs = 0;
    for scheme in builtins() {
        let name = scheme.name().to_string();
        let records = check_share_bounds(&scheme, scheme.default_ensemble(), TOL).map_err(err)?;
        ensure(!records.is_empty(), || format!("{name}: no pairs"))?;
        for r in &records {
            ensure(r.entropy_a >= r.secret_entropy - TOL && r.entropy_b >= r.secret_entropy - TOL, || {
                format!(
                    "{name}: S(A)={} S(B)={} < S(S)={} for {:?},{:?}",
                    r.entropy_a, r.entropy_b, r.secret_entropy, r.a, r.b
                )
            })?;
            ensure((r.recovery_identity_lhs - r.reference_entropy).abs() <= TOL, || {
                format!("{name}: S(AB)-S(RAB) = {} vs S(R) = {}", r.recovery_identity_lhs, r.reference_entropy)
            })?;
            if name == "cgl23" && r.b.len() == 1 {
                ensure((r.entropy_b - r.secret_entropy).abs() <= TOL, || {
                    format!("cgl23 singleton {:?}: S = {}", r.b, r.entropy_b)
                })?;
            }
        }
        pairs += records.len();
        let rt = rates(&scheme, scheme.default_ensemble()).map_err(err)?;
        let (r, rbar) = (rt.rate.unwrap_or(f64::NAN), rt.average_rate.unwrap_or(f64::NAN));
        ensure((r - 1.0).abs() <= TOL && (rbar - 1.0).abs() <= TOL, || format!("{name}: r = {r}, r_avg = {rbar}"))?;
    }
    Ok(format!("{pairs} pairs over 3 schemes; bounds, identity and r = r_avg = 1 hold"))
}

fn coexistence() -> Outcome {
    let mut reruns = 0;
    for (k, scheme) in builtins().into_iter().enumerate() {
        let v = check_coexistence(&scheme, scheme.default_ensemble(), TOL).map_err(err)?;
        ensure(v.is_empty(), || format!("{}: {} violations", scheme.name(), v.len()))?;
        for i in 0..50u64 {
            let seed = 1000 * k as u64 + i;
            let ens = SecretEnsemble::random(scheme.secret_dim(), 1 + (i as usize % 4), seed).map_err(err)?;
            let v = check_coexistence(&scheme, &ens, TOL).map_err(err)?;
            ensure(v.is_empty(), || format!("{} seed {seed}: {v:?}", scheme.name()))?;
            reruns += 1;
        }
    }
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/basis_cloner.json");
    let cloner = qshare::load_scheme_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(err)?;
    let v = check_coexistence(&cloner, cloner.default_ensemble(), TOL).map_err(err)?;
    let worst = v.iter().map(|x| x.mutual_information).fold(0.0, f64::max);
    ensure(worst >= log3() - 1e-6, || format!("cloner violation only {worst}"))?;
    let code = qshare(&["verify", path.to_str().unwrap()]);
    ensure(code == Some(1), || format!("cloner verify exited {code:?}"))?;
    Ok(format!("0 violations on 3 built-ins + {reruns} random ensembles; cloner I(R:A) = {worst:.9}, exit 1"))
}

fn recovery() -> Outcome {
    let mut certified = 0;
    let mut refused = 0;
    let mut worst_fid = 1.0f64;
    let mut worst_defect = 0.0f64;
    for scheme in [cgl23_scheme(), threshold_scheme(2, 3, 3).unwrap()] {
        let gamma = scheme.gamma();
        for m in gamma.coalitions() as Vec<Coalition> {
            let labels = gamma.labels(m);
            match synthesize_recovery(&scheme, scheme.default_ensemble(), &labels, 1e-9) {
                Ok(map) => {
                    ensure(gamma.is_authorized_mask(m), || format!("decoder built for unauthorized {labels:?}"))?;
                    worst_fid = worst_fid.min(map.fidelity);
                    worst_defect = worst_defect.max(map.relative_state_defect);
                    ensure(map.fidelity >= 1.0 - 1e-9, || format!("{labels:?}: fidelity {}", map.fidelity))?;
                    ensure(map.relative_state_defect <= 1e-8, || {
                        format!("{labels:?}: defect {}", map.relative_state_defect)
                    })?;
                    certified += 1;
                }
                Err(QssError::RecoveryImpossible(_)) if !gamma.is_authorized_mask(m) => refused += 1,
                Err(e) => return Err(format!("{} {labels:?}: {e}", scheme.name())),
            }
        }
    }
    Ok(format!(
        "{certified} decoders certified (min fidelity {worst_fid:.12}, max defect {worst_defect:.1e}); {refused} refusals"
    ))
}

fn entropy_engine() -> Outcome {
    let report = run_selftest(1000, 7).map_err(err)?;
    ensure(report.total_violations() == 0, || format!("{} violations", report.total_violations()))?;
    let min_slack = report.stats.iter().map(|s| s.min_slack).fold(f64::INFINITY, f64::min);
    ensure(min_slack >= -1e-8, || format!("min slack {min_slack}"))?;
    ensure((report.bell_conditional_entropy + 1.0).abs() <= 1e-9, || {
        format!("Bell S(X|Y) = {}", report.bell_conditional_entropy)
    })?;
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let d = 2 + (seed as usize % 4);
        let rank = 1 + (seed as usize % d);
        let rho = random_density_matrix(&SubsystemLayout::single("S", d).unwrap(), rank, seed).map_err(err)?;
        let back = purify(&rho).and_then(|psi| psi.reduce(&["S"])).map_err(err)?;
        worst = worst.max(back.matrix().max_abs_diff(rho.matrix()));
    }
    ensure(worst <= 1e-10, || format!("purification round trip off by {worst:e}"))?;
    Ok(format!(
        "1000 samples, 0 violations (min slack {min_slack:.9}); Bell S(X|Y) = {:.9}; purification max error {worst:.1e}",
        report.bell_conditional_entropy
    ))
}

fn access_algebra() -> Outcome {
    let mut checked = 0;
    for n in 1..=8usize {
        for t in 1..=n {
            let gamma = threshold_structure(t, n).map_err(err)?;
            let minimal = gamma.minimal_masks();
            let oracle = minimal.iter().all(|&a| minimal.iter().all(|&b| a & b != 0));
            let flags = gamma.classify();
            ensure(flags.quantum_admissible == oracle && oracle == (2 * t > n), || {
                format!("threshold({t},{n}): admissible = {}, oracle = {oracle}", flags.quantum_admissible)
            })?;
            checked += 1;
        }
    }
    let vernam = vernam_structure();
    let flags = vernam.classify();
    ensure(flags.quantum_admissible && !flags.complement_closed, || format!("vernam flags {flags:?}"))?;
    let pairs = vernam.share_bound_pairs().map_err(err)?;
    let ab_m = pairs.iter().any(|(a, b)| a == &["A", "B"] && b == &["M"]);
    ensure(ab_m, || format!("pair ({{A,B}},{{M}}) missing from {pairs:?}"))?;
    let forced = vernam.forced_share_bounds().map_err(err)?;
    ensure(forced.iter().any(|f| f == &["M"]) && forced.iter().any(|f| f == &["A"]), || {
        format!("forced bounds {forced:?}")
    })?;
    Ok(format!("{checked} threshold structures match 2t > n; vernam admissible, not complement-closed, forces S(M), S(A) >= S(S)"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("example reproduction", example_reproduction),
        ("full recoverability and secrecy verification", full_verification),
        ("share-size bounds and rates", share_bounds_and_rates),
        ("no-cloning coexistence", coexistence),
        ("recovery synthesis", recovery),
        ("entropy engine properties", entropy_engine),
        ("access-structure algebra", access_algebra),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
