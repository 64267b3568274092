//! Command-line front end (`qshare`).
//!
//! Scheme arguments are either a path to a JSON scheme document or one of the
//! shorthands `builtin:cgl23` and `threshold:t,n,q`.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::access::{threshold_structure, vernam_structure, AccessFlags, AccessStructure};
use crate::document::load_scheme_str;
use crate::error::{QssError, Result};
use crate::schemes::{cgl23_scheme, threshold_scheme, SchemeSpec, SecretEnsemble};
use crate::selftest::{run_selftest, SelftestReport, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::verifier::{
    synthesize_recovery, verify_scheme, Rates, VerificationReport, VerifyOptions, DEFAULT_TOLERANCE,
};

#[derive(Debug, Parser)]
#[command(name = "qshare", version, about = "Entropic verification of quantum secret sharing schemes")]
pub struct Cli {
    /// Absolute tolerance in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Seed for sampled inputs (selftest).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check recoverability, secrecy, no-cloning and share-size bounds.
    Verify {
        /// Scheme document, `builtin:NAME` or `threshold:t,n,q`.
        scheme: String,
        /// Only minimal authorized and maximal unauthorized coalitions.
        #[arg(long)]
        fast: bool,
        /// Also verify against the uniform computational-basis ensemble.
        #[arg(long)]
        stress: bool,
    },
    /// Classify an access structure and list its share-size bounds.
    Classify {
        /// Scheme document whose access structure is classified.
        scheme: Option<String>,
        /// `threshold:t,n`, `vernam` or `sets:A,M|B,M` (players inferred).
        #[arg(long, conflicts_with = "scheme")]
        structure: Option<String>,
    },
    /// Synthesize and certify a decoder for a coalition.
    Decode {
        scheme: String,
        /// Comma-separated player labels.
        #[arg(long)]
        subset: String,
    },
    /// Sample random tripartite states through the entropy inequalities.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Share entropies and information rates.
    Rates { scheme: String },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, u8)> {
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        return Err(QssError::input(format!("--tolerance must be a nonnegative number, got {}", cli.tolerance)));
    }
    let json = cli.report == ReportFormat::Json;
    match &cli.command {
        Command::Verify { scheme, fast, stress } => {
            let scheme = resolve_scheme(scheme)?;
            let opts = VerifyOptions { tolerance: cli.tolerance, fast: *fast };
            let mut reports = vec![verify_scheme(&scheme, scheme.default_ensemble(), &opts)?];
            if *stress {
                let uniform = SecretEnsemble::uniform_basis(scheme.secret_dim());
                let mut r = verify_scheme(&scheme, &uniform, &opts)?;
                r.scheme = format!("{} (uniform basis ensemble)", r.scheme);
                reports.push(r);
            }
            let pass = reports.iter().all(|r| r.overall);
            let text = match (json, reports.len()) {
                (true, 1) => reports[0].to_json() + "\n",
                (true, _) => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
                (false, _) => reports.iter().map(verify_text).collect::<Vec<_>>().join("\n"),
            };
            Ok((text, u8::from(!pass)))
        }
        Command::Classify { scheme, structure } => {
            let gamma = match (scheme, structure) {
                (Some(s), None) => resolve_scheme(s)?.gamma().clone(),
                (None, Some(s)) => parse_structure(s)?,
                _ => return Err(QssError::input("classify needs a scheme or --structure")),
            };
            let report = ClassifyReport::new(&gamma)?;
            let text = if json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.text()
            };
            Ok((text, 0))
        }
        Command::Decode { scheme, subset } => {
            let scheme = resolve_scheme(scheme)?;
            let labels = split_labels(subset)?;
            let map = synthesize_recovery(&scheme, scheme.default_ensemble(), &labels, cli.tolerance)?;
            let report = DecodeReport {
                scheme: scheme.name().to_string(),
                subset: map.subset,
                complement: map.complement,
                input_dim: map.input_dim,
                secret_dim: map.secret_dim,
                garbage_dim: map.garbage_dim,
                fidelity: map.fidelity,
                relative_state_defect: map.relative_state_defect,
                excluded_weight: map.excluded_weight,
                tolerance: cli.tolerance,
                pass: map.fidelity >= 1.0 - cli.tolerance,
            };
            let code = u8::from(!report.pass);
            let text = if json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.text()
            };
            Ok((text, code))
        }
        Command::Selftest { samples } => {
            if *samples == 0 {
                return Err(QssError::input("--samples must be at least 1"));
            }
            let report = run_selftest(*samples, cli.seed.unwrap_or(DEFAULT_SEED))?;
            let code = u8::from(!report.passed);
            let text = if json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                selftest_text(&report)
            };
            Ok((text, code))
        }
        Command::Rates { scheme } => {
            let scheme = resolve_scheme(scheme)?;
            let rates = crate::verifier::rates(&scheme, scheme.default_ensemble())?;
            let code = u8::from(!rates.share_bound_holds);
            let text = if json {
                serde_json::to_string_pretty(&rates).expect("rates serialize") + "\n"
            } else {
                format!("scheme: {}\n{}", scheme.name(), rates_text(&rates))
            };
            Ok((text, code))
        }
    }
}

/// `builtin:NAME`, `threshold:t,n,q` or a document path.
pub fn resolve_scheme(arg: &str) -> Result<SchemeSpec> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return match name {
            "cgl23" => Ok(cgl23_scheme()),
            _ => Err(QssError::input(format!("unknown builtin scheme '{name}'"))),
        };
    }
    if let Some(params) = arg.strip_prefix("threshold:") {
        let v = parse_numbers(params, 3, "threshold:t,n,q")?;
        return threshold_scheme(v[0], v[1], v[2]);
    }
    let text =
        std::fs::read_to_string(arg).map_err(|e| QssError::input(format!("cannot read scheme file '{arg}': {e}")))?;
    load_scheme_str(&text)
}

/// `threshold:t,n`, `vernam` or `sets:A,M|B,M`.
pub fn parse_structure(spec: &str) -> Result<AccessStructure> {
    if spec == "vernam" {
        return Ok(vernam_structure());
    }
    if let Some(params) = spec.strip_prefix("threshold:") {
        let v = parse_numbers(params, 2, "threshold:t,n")?;
        return threshold_structure(v[0], v[1]);
    }
    if let Some(sets) = spec.strip_prefix("sets:") {
        let sets: Vec<Vec<String>> = sets.split('|').map(split_labels).collect::<Result<_>>()?;
        let mut players: Vec<String> = Vec::new();
        for label in sets.iter().flatten() {
            if !players.contains(label) {
                players.push(label.clone());
            }
        }
        players.sort();
        return AccessStructure::new(players, sets);
    }
    Err(QssError::Parse(format!("unrecognized structure '{spec}' (expected threshold:t,n, vernam or sets:...)")))
}

fn parse_numbers(s: &str, count: usize, shape: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| QssError::Parse(format!("expected {shape}, got '{s}'")))?;
    if v.len() != count {
        return Err(QssError::Parse(format!("expected {shape}, got '{s}'")));
    }
    Ok(v)
}

fn split_labels(s: &str) -> Result<Vec<String>> {
    let labels: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    if labels.iter().any(String::is_empty) {
        return Err(QssError::input(format!("empty label in '{s}'")));
    }
    Ok(labels)
}

fn set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| format!("{v:.9}"))
}

fn verify_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scheme: {}", r.scheme);
    let _ = writeln!(s, "tolerance: {:e}  mode: {}", r.tolerance, if r.fast { "fast" } else { "exhaustive" });
    let _ = writeln!(s, "S(S)   = {:.9} bits", r.secret_entropy);
    let _ = writeln!(s, "I(R:S) = {:.9} bits", r.reference_mutual_information);
    let _ = writeln!(s);
    let width = r.subsets.iter().map(|x| set(&x.subset).len()).max().unwrap_or(0).max(9);
    let _ =
        writeln!(s, "{:<width$}  auth  {:>12}  {:>12}  {:>13}  verdict", "coalition", "I(R:A)", "target", "S(A)-S(RA)");
    for x in &r.subsets {
        let _ = writeln!(
            s,
            "{:<width$}  {:<4}  {:>12.9}  {:>12.9}  {:>13.9}  {}{}",
            set(&x.subset),
            flag(x.authorized),
            x.mutual_information,
            x.target,
            x.coherent_information,
            if x.verdict { "ok" } else { "FAIL" },
            if x.criteria_agree { "" } else { " (coherent-information criterion disagrees)" }
        );
    }
    let failures: Vec<_> = r.subsets.iter().filter(|x| !x.verdict).collect();
    if !failures.is_empty() {
        let _ = writeln!(s);
        for x in failures {
            let kind = if x.authorized { "recoverability violation" } else { "secrecy violation" };
            let _ = writeln!(
                s,
                "{kind}: {} has I(R:A) = {:.9}, expected {:.9}",
                set(&x.subset),
                x.mutual_information,
                x.target
            );
        }
    }
    let _ = writeln!(s);
    if r.coexistence_violations.is_empty() {
        let _ = writeln!(s, "coexistence: no complement of an authorized set carries information");
    } else {
        for v in &r.coexistence_violations {
            let _ = writeln!(
                s,
                "coexistence violation: authorized {} leaves I(R:{}) = {:.9}",
                set(&v.authorized),
                set(&v.complement),
                v.mutual_information
            );
        }
    }
    let _ = writeln!(s, "share bounds: {} pair(s)", r.share_bounds.len());
    for b in &r.share_bounds {
        let _ = writeln!(
            s,
            "  A={} B={}  S(A)={:.9} S(B)={:.9} S(S)={:.9}  S(AB)-S(RAB)={:.9} S(R)={:.9}  {}",
            set(&b.a),
            set(&b.b),
            b.entropy_a,
            b.entropy_b,
            b.secret_entropy,
            b.recovery_identity_lhs,
            b.reference_entropy,
            if b.verdict { "ok" } else { "FAIL" }
        );
    }
    if let Some(rates) = &r.rates {
        let _ = writeln!(s, "rates:");
        let _ = write!(s, "{}", rates_text(rates));
    }
    let _ = writeln!(s, "overall: {}", verdict(r.overall));
    s
}

fn rates_text(r: &Rates) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "S(S) = {:.9} bits", r.secret_entropy);
    for p in &r.player_entropies {
        let _ = writeln!(s, "  S({}) = {:.9}", p.player, p.bits);
    }
    let _ =
        writeln!(s, "rate r = {}  average rate = {}  1/r = {}", opt(r.rate), opt(r.average_rate), opt(r.inverse_rate));
    let _ = writeln!(s, "max share gap = {:.9}  share bound: {}", r.max_share_gap, verdict(r.share_bound_holds));
    s
}

fn selftest_text(r: &SelftestReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "samples: {}  seed: {}  tolerance: {:e}", r.samples, r.seed, r.tolerance);
    for st in &r.stats {
        let _ = writeln!(
            s,
            "{:<32}  evaluated {:>5}  violations {:>3}  min slack {:.9}",
            st.inequality.describe(),
            st.evaluated,
            st.violations,
            st.min_slack
        );
    }
    let _ = writeln!(s, "product state subadditivity slack = {:.9}", r.product_subadditivity_slack);
    let _ = writeln!(s, "negativity: Bell pair S(X|Y) = {:.9}", r.bell_conditional_entropy);
    let _ = writeln!(s, "overall: {}", verdict(r.passed));
    s
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    players: Vec<String>,
    minimal_authorized: Vec<Vec<String>>,
    flags: AccessFlags,
    share_bound_pairs: Vec<(Vec<String>, Vec<String>)>,
    forced_share_bounds: Vec<Vec<String>>,
}

impl ClassifyReport {
    fn new(gamma: &AccessStructure) -> Result<Self> {
        Ok(Self {
            players: gamma.players().to_vec(),
            minimal_authorized: gamma.minimal_authorized().to_vec(),
            flags: gamma.classify(),
            share_bound_pairs: gamma.share_bound_pairs()?,
            forced_share_bounds: gamma.forced_share_bounds()?,
        })
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "players: {}", self.players.join(","));
        let sets: Vec<String> = self.minimal_authorized.iter().map(|m| set(m)).collect();
        let _ = writeln!(s, "minimal authorized: {}", sets.join(" "));
        let _ = writeln!(s, "monotone_antichain: {}", self.flags.monotone_antichain);
        let _ = writeln!(s, "quantum_admissible: {}", self.flags.quantum_admissible);
        let _ = writeln!(s, "complement_closed: {}", self.flags.complement_closed);
        if let Some((a, b)) = &self.flags.disjoint_witness {
            let _ = writeln!(s, "disjoint authorized witness: {} {}", set(a), set(b));
        }
        if let Some(a) = &self.flags.complement_witness {
            let _ = writeln!(s, "complement witness: {} and its complement are both unauthorized", set(a));
        }
        let _ = writeln!(s, "share-bound pairs: {}", self.share_bound_pairs.len());
        for (a, b) in &self.share_bound_pairs {
            let _ = writeln!(s, "  ({}, {})", set(a), set(b));
        }
        for f in &self.forced_share_bounds {
            let _ = writeln!(s, "bound: S({}) >= S(S)", set(f));
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct DecodeReport {
    scheme: String,
    subset: Vec<String>,
    complement: Vec<String>,
    input_dim: usize,
    secret_dim: usize,
    garbage_dim: usize,
    fidelity: f64,
    relative_state_defect: f64,
    excluded_weight: f64,
    tolerance: f64,
    pass: bool,
}

impl DecodeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scheme: {}", self.scheme);
        let _ = writeln!(s, "coalition: {}  complement: {}", set(&self.subset), set(&self.complement));
        let _ = writeln!(
            s,
            "recovery isometry: {} -> {} x {} (secret x discarded), {}x{} matrix",
            self.input_dim,
            self.secret_dim,
            self.garbage_dim,
            self.secret_dim * self.garbage_dim,
            self.input_dim
        );
        let _ = writeln!(s, "relative-state defect = {:.3e}", self.relative_state_defect);
        let _ = writeln!(s, "excluded weight = {:.3e}", self.excluded_weight);
        let _ = writeln!(s, "fidelity = {:.12}", self.fidelity);
        let _ = writeln!(s, "verdict: {}", verdict(self.pass));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qshare").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn structure_shorthands() {
        assert_eq!(parse_structure("vernam").unwrap(), vernam_structure());
        assert_eq!(parse_structure("threshold:2,3").unwrap(), threshold_structure(2, 3).unwrap());
        assert_eq!(parse_structure("sets:A,M|B,M").unwrap(), vernam_structure());
        assert!(matches!(parse_structure("threshold:2"), Err(QssError::Parse(_))));
        assert!(matches!(parse_structure("nonsense"), Err(QssError::Parse(_))));
    }

    #[test]
    fn scheme_shorthands() {
        assert_eq!(resolve_scheme("builtin:cgl23").unwrap(), cgl23_scheme());
        assert_eq!(resolve_scheme("threshold:2,3,3").unwrap(), threshold_scheme(2, 3, 3).unwrap());
        assert_eq!(resolve_scheme("/nonexistent/file.json").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn classify_threshold_2_4_prints_witness() {
        let (code, out, _) = call(&["classify", "--structure", "threshold:2,4"]);
        assert_eq!(code, 0);
        assert!(out.contains("quantum_admissible: false"));
        assert!(out.contains("disjoint authorized witness: {P1,P2} {P3,P4}"), "{out}");
    }

    #[test]
    fn bad_flags_exit_2() {
        assert_eq!(call(&["verify"]).0, 2);
        assert_eq!(call(&["selftest", "--samples", "0"]).0, 2);
        assert_eq!(call(&["--tolerance", "-1", "rates", "builtin:cgl23"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
