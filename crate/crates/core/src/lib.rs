//! Verification laboratory for quantum secret sharing schemes.
//!
//! A scheme is an isometry from a secret space into a product of player
//! spaces together with an access structure. The crate assembles the pure
//! global state with a reference system, checks recoverability and secrecy
//! entropically for every coalition, audits no-cloning and share-size bounds,
//! and synthesizes explicit decoders for authorized coalitions.
//!
//! ```
//! use qshare::{cgl23_scheme, verify_scheme, VerifyOptions};
//!
//! let scheme = cgl23_scheme();
//! let report = verify_scheme(&scheme, scheme.default_ensemble(), &VerifyOptions::default()).unwrap();
//! assert!(report.overall);
//! ```

pub mod access;
pub mod cli;
pub mod document;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod schemes;
pub mod selftest;
pub mod systems;
pub mod verifier;

pub use access::{threshold_structure, vernam_structure, AccessFlags, AccessStructure, Coalition};
pub use document::{load_scheme, load_scheme_str, parse_document, SchemeDocument};
pub use entropy::{
    check_entropy_inequalities, coherent_information, conditional_entropy, mutual_information, random_density_matrix,
    subsystem_entropy, von_neumann_entropy, DensityMatrix, EntropyReport, Inequality,
};
pub use error::{QssError, Result};
pub use linalg::{hermitian_eig, partial_trace, tensor_product, ComplexMatrix, StateVector, SubsystemLayout};
pub use num_complex::Complex64;
pub use schemes::{
    cgl23_scheme, dilate, dilated_scheme, ensemble_density, threshold_scheme, EncodingIsometry, SchemeSpec,
    SecretEnsemble,
};
pub use selftest::{run_selftest, SelftestReport};
pub use systems::{assemble_global, purify, MultipartiteState, REFERENCE};
pub use verifier::{
    check_coexistence, check_share_bounds, rates, synthesize_recovery, verify_definition1, verify_scheme, RecoveryMap,
    VerificationReport, VerifyOptions, DEFAULT_TOLERANCE,
};
