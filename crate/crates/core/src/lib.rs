//! Exact multiple (partition-indexed) qt-analogues of binomial coefficients,
//! Stirling, Bernoulli, Bell, Catalan and Fibonacci numbers, the
//! probability measures they induce on partitions, and exact checks of the
//! identities relating them.

pub mod error;
pub mod exactscalar;
pub mod partitions;
pub mod wcore;
pub mod binomial;
pub mod identities;
pub mod distributions;
pub mod specials;
pub mod suite;

pub use error::{Error, Result};
pub use exactscalar::{RatFunc, RatFuncQ, Rational, Scalar, UniPoly};
pub use partitions::{GeneralizedPartition, Partition};
pub use wcore::{Context, QtPoint, ScalarMode, WKind};
pub use binomial::qt_binomial;
pub use identities::IdentityCheck;
pub use suite::{run_suite, CheckRecord, Groups, SuiteConfig, VerificationReport};
