//! Evolving threshold visual cryptography.
//!
//! A secret binary image is split into shadows of the same size. Any `k`
//! shadows stacked together reveal the secret, fewer reveal nothing, and new
//! shadows can be issued at any time without touching the old ones.
//!
//! ```
//! use evcs::{image::patterns, recovery, EvolvingDealer};
//!
//! let secret = patterns::half_and_half(32, 32).unwrap();
//! let (mut dealer, mut shadows) = EvolvingDealer::init(&secret, 2, 2, 42).unwrap();
//! shadows.push(dealer.extend().unwrap());
//! let stacked = recovery::stack_or(&shadows[..2]).unwrap();
//! let report = recovery::empirical_contrast(&stacked, &secret).unwrap();
//! assert!(report.alpha > 0.3);
//! ```

pub mod better;
pub mod cli;
pub mod dealer;
pub mod error;
pub mod evolving;
pub mod image;
pub mod kernel;
pub mod manifest;
pub mod pbm;
pub mod rational;
pub mod recovery;
pub mod rng;
pub mod theory;

pub use better::{BasisMatrices, Better2Dealer, Better3Dealer};
pub use dealer::{Dealer, SchemeKind};
pub use error::{Error, Result};
pub use evolving::{share_kgrouped, EvolvingDealer, KGroupedShares, ShareGroupLayout};
pub use image::{regions, BinaryImage, RegionMask};
pub use manifest::{dealer_load, dealer_save};
pub use pbm::{load_pbm, save_pbm, PbmVariant};
pub use rational::Rational;
pub use recovery::{empirical_contrast, light_transmission, stack_or, stack_xor, ContrastReport};
pub use rng::RandomSource;
