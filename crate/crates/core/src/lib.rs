//! Second-largest order statistics of exponentiated location-scale samples.
//!
//! A 2-out-of-n system fails at its second failure, so its lifetime is the
//! second-largest component lifetime. This crate evaluates that lifetime's
//! CDF and reversed hazard rate for independent and Archimedean-dependent
//! components, checks usual-stochastic and reversed-hazard-rate orders on a
//! grid, and checks the hypotheses of a catalogue of ordering results
//! ([`theorems::TheoremId`]) on concrete parameter pairs.
//!
//! ```
//! use secondlargest::{BaselineSpec, ElsConfig, GridSpec, Order, Verdict};
//!
//! let b = BaselineSpec::power_cap(0.2, 100.0).unwrap();
//! let x = ElsConfig::scalar_location(4.0, vec![5.0, 9.0, 10.0], 4.0, b.clone()).unwrap();
//! let y = ElsConfig::scalar_location(4.0, vec![7.0, 10.0, 12.0], 4.0, b).unwrap();
//! let grid = GridSpec::new(4.001, 100.0, 1024).unwrap();
//! let r = secondlargest::check_order(&x, &y, Order::St, &grid).unwrap();
//! assert_eq!(r.verdict, Verdict::Holds);
//! ```

pub mod baseline;
pub mod cli;
pub mod copula;
pub mod els;
pub mod error;
pub mod grid;
pub mod majorization;
pub mod orderstats;
pub mod report;
pub mod scenario;
pub mod theorems;

pub use baseline::{BaselineFamily, BaselineRegistry, BaselineSpec};
pub use copula::GeneratorSpec;
pub use els::{ElsConfig, SupportMode};
pub use error::{Error, Result};
pub use grid::GridSpec;
pub use orderstats::{cdf_second_largest, check_order, rh_second_largest, Order, OrderCheckReport, Verdict};
pub use scenario::Scenario;
pub use theorems::{property_suite, run_theorem, Fixture, FixtureName, SuitePolicy, TheoremId, TheoremVerdict};
