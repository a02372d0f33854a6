//! Exact homological algebra of N-complexes over prime fields.
//!
//! ```
//! use ngon::equiv::xi;
//! use ngon::homk::{certify_equivalent, homk_dim};
//! use ngon::ncomplex::{mu, suspension};
//!
//! let m = mu(3, 101, 1, 2, 1)?; // μ^2_1 k for N = 3
//! let s = suspension(&m);
//! assert_eq!(homk_dim(&m, &s)?, 0);
//! assert!(certify_equivalent(&s, &xi(1, 1, 1, 3, 101)?).is_some());
//! # Ok::<(), ngon::error::Error>(())
//! ```

pub mod cli;
pub mod equiv;
pub mod error;
pub mod exactla;
pub mod homk;
pub mod morcat;
pub mod ncomplex;
pub mod nfunctors;
pub mod sample;
