//! Finite-state language models as Heaviside Elman RNNs, and back.
//!
//! The crate revolves around two weakly equivalent representations of a
//! probability distribution over strings:
//!
//! * [`wfsa::Wfsa`] — a weighted finite-state automaton scoring a string by
//!   the total weight of the paths that scan it;
//! * [`hrnn::HrnnLm`] — an Elman network with the strict Heaviside step
//!   activation, scoring by a product of locally normalized conditionals
//!   (softmax over extended reals, or sparsemax).
//!
//! [`minsky::build_minsky`] compiles a deterministic probabilistic automaton
//! into an RNN LM of width |Σ||Q|; [`extract::extract_dpfsa`] walks any RNN
//! LM's reachable hidden configurations and recovers an equivalent automaton.
//! For unweighted automata, [`compress`] houses the two-hot and four-hot
//! space-compressed encodings into layered threshold networks, and
//! [`separate`] the transformation that makes an automaton log-alphabet
//! separable. [`verify`] provides the brute-force enumeration oracles used
//! to check all of the above.
//!
//! Every library capability has a runnable demo under `examples/`; the
//! `hrnnlm` binary exposes the same operations on the text formats defined
//! in [`textfmt`].

pub mod compress;
pub mod error;
pub mod extract;
pub mod hrnn;
pub mod minsky;
mod rng;
pub mod separate;
pub mod textfmt;
pub mod verify;
pub mod wfsa;

pub use error::{Error, Result};
