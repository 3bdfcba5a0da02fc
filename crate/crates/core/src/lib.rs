//! Simulator for the exact quantum query model.
//!
//! The centrepiece is [`builder::build_algorithm`], which constructs an
//! exact algorithm for `VERIFY_N` (every consecutive bit pair of an `N`-bit
//! word is equal) that uses `N/2` queries, where any classical decision
//! tree needs `N`. Around it sit a small real-valued state-vector simulator
//! ([`linalg`], [`query`]), the classical baseline ([`oracle`]), a string
//! equality adapter ([`apps`]) and a JSON document format ([`document`]).
//!
//! ```
//! use repverify::{builder::build_algorithm, oracle::BooleanFunction, query::check_exact};
//!
//! let alg = build_algorithm(6).unwrap();
//! assert_eq!(alg.t_queries(), 3);
//! let report = check_exact(&alg, &BooleanFunction::verify(6).unwrap()).unwrap();
//! assert!(report.exact);
//! ```

pub mod apps;
pub mod bits;
pub mod builder;
pub mod document;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod query;

pub use bits::BitString;
pub use error::{Error, Result};
