//! Distortion analysis and strategy optimization for physical layer deception.
//!
//! A transmitter encrypts each message with a random key (or, with
//! probability `1 − α`, sends it in the clear next to a litter sequence),
//! exposes the ciphertext and protects only the key. This crate computes the
//! semantic distortion seen by a receiver over the resulting message
//! erasure channel and key Z-channel, finds the receiver's best way to treat
//! messages that arrive without a key, and picks the activation rate `α`
//! that hurts an eavesdropper most while keeping the legitimate receiver
//! within a distortion budget. Every closed form has an exhaustive
//! enumeration oracle and a Monte Carlo oracle.
//!
//! Module map:
//! - [`model`]: codewords, keys, distortion measure, scenario parameters
//! - [`fbl`]: finite-blocklength packet error rates
//! - [`crypto`]: the shift cipher and key sampling
//! - [`channels`]: erasure and Z transport channels
//! - [`distortion`]: closed forms and the enumeration oracle
//! - [`strategy`]: receiver and transmitter optimizers
//! - [`montecarlo`]: pipeline simulation
//! - [`cli`]: scenario files, CSV experiment drivers, oracle suite

pub mod channels;
pub mod cli;
pub mod crypto;
pub mod distortion;
pub mod error;
pub mod fbl;
pub mod model;
pub mod montecarlo;
pub mod strategy;

pub use channels::TransportChannel;
pub use distortion::{DeltaTerms, DistortionReport, ReceiverOption, ReceiverStrategy};
pub use error::{PldError, Result};
pub use fbl::FblCode;
pub use model::{CodebookSize, Codeword, DistortionModel, KeyValue, Scenario, NULL_KEY, NULL_MSG};
pub use montecarlo::McEstimate;
pub use strategy::{DeceptionPlan, ReceiverSolution};
