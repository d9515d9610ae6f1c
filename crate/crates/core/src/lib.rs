//! Dimensions of twisted conformal blocks for cyclic covers of curves.
//!
//! Three independent routes compute the same integers:
//!
//! - [`dims`]: Verlinde-type sums of characters over the finite regular
//!   torus set `Sigma_c`, for three-point numbers, fusion coefficients and
//!   the global formula for covers with paired ramification;
//! - [`kacwalton`]: the alternating sum obtained by branching, tensoring and
//!   folding constituents into the affine alcove;
//! - [`dims::factorized_dimension`]: cutting the curve along each ramified
//!   pair and gluing three-point numbers to classical Verlinde numbers.
//!
//! [`lie`] holds root data, Weyl groups and characters, [`twist`] the
//! automorphisms and their fixed subalgebras, [`alcove`] the torus
//! combinatorics, and [`batch`] the structured request/report layer behind
//! the command-line tool.
//!
//! ```
//! use std::sync::Arc;
//! use verlinde_core::{dims, kacwalton, lie::{LieType, Weight}, twist::{build_twist, TwistKind}};
//!
//! let tw = Arc::new(build_twist(LieType::A, 3, TwistKind::Diagram2).unwrap());
//! let (l, nu) = (Weight(vec![1, 0]), Weight(vec![0, 1, 0]));
//! let verlinde = dims::twisted_three_point(&tw, 1, &l, &l, &nu).unwrap();
//! let (alternating, _) = kacwalton::kac_walton_dimension(&tw, 1, &l, &l, &nu).unwrap();
//! assert_eq!(verlinde.value, alternating);
//! ```

pub mod alcove;
pub mod batch;
pub mod dims;
pub mod error;
pub mod kacwalton;
pub mod lattice;
pub mod lie;
pub mod numeric;
pub mod twist;

pub use error::{Error, Result};
