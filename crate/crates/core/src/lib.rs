//! Exact termirial arithmetic.
//!
//! * [`termirial`]: factorial, binomial and the generalized termirial with
//!   its identities (Pascal analog, convolution).
//! * [`oracle`]: brute-force iterated sums and subset enumeration.
//! * [`loopnest`]: parser, analyzer and simulator for chained `for` nests.
//! * [`fractal`]: the grey-square figure and its surface ratio.

pub mod error;
pub mod fractal;
pub mod loopnest;
pub mod oracle;
pub mod termirial;

pub use error::{GuardError, InvalidOrder};
pub use termirial::{
    binomial, convolution_terms, factorial, pascal_check, termirial, termirial_p,
    termirial_p_binomial, Natural, Order, TermirialExpr,
};

/// Default work budget for oracles and the loop simulator.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
