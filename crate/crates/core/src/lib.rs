//! Frequency-hopping sequences of length `p^n` built from order-2
//! generalized cyclotomic classes.
//!
//! The family has `2n` sequences over `2n` frequencies. Sequence `X_i` maps
//! position `t` to `(class(t) - i) mod 2n`, where `class` is the
//! Ding-Helleseth class index of `t` in `Z_{p^n}`.
//!
//! Hamming correlation is computed by brute force, which is always the
//! ground truth, and by closed forms (autocorrelation for every odd prime,
//! cross-correlation for `p = 3 mod 4`). [`correlation::verify_closed_forms`]
//! compares the two, and [`bounds`] checks the family against the
//! Lempel-Greenberg, Peng-Fan and average-correlation bounds in exact
//! rational arithmetic.
//!
//! ```
//! use fhs_core::cyclotomy::FhsParams;
//! use fhs_core::fhs::build_sequence;
//!
//! let params = FhsParams::new(3, 2).unwrap();
//! let x0 = build_sequence(0, &params).unwrap();
//! assert_eq!(x0.symbols(), &[0, 2, 3, 0, 2, 3, 1, 2, 3]);
//! ```

pub mod bounds;
pub mod cli;
pub mod correlation;
pub mod cyclotomy;
pub mod errata;
mod error;
pub mod fhs;
pub mod numtheory;

pub use error::{Error, Result};
