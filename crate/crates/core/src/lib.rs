//! Error exponents and achievable rates for coding over a multinomial
//! sampling channel with Dirichlet-distributed codewords.
//!
//! All logarithms are natural, so rates and exponents are in nats.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants are kept at the digits their oracles produced
#![allow(clippy::excessive_precision)]

pub mod baselines;
pub mod channel;
pub mod error;
pub mod ex_bounds;
pub mod optimize;
pub mod quad;
pub mod rc_bounds;
pub mod special_fn;

pub use error::{Error, Result};
pub use ex_bounds::{ExParams, ExSettings, ExpurgatedBounds};
pub use optimize::{Extremum, OptimizerSettings, SearchInterval};
pub use rc_bounds::{BoundQuery, ExponentPoint, RateBound, RcParams, RcSettings, TailBound};
