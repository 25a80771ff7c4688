//! Receiver front-end modeling and link-budget exploration for lossy
//! broadband channels.
//!
//! The crate provides closed-form gain, timing and noise models for the
//! signaling blocks of an NRZ receiver front-end (strongARM sampler,
//! self-biased inverter LNA, current-integrating amplifier and
//! multi-integrator cascades), composes them into complete front-end
//! architectures, and solves for the maximum achievable data rate, BER
//! margin and energy per bit as functions of flat channel loss.
//!
//! Every closed form ships with an independent numeric oracle
//! ([`numerics`]): adaptive quadrature for the sampler noise integral,
//! a fixed-step RC-chain transient solver for integrator gain, and a
//! seeded Monte Carlo white-noise integrator for the sampler noise
//! theory. The test suite cross-checks each expression against its
//! oracle; the `acceptance` integration test runs the end-to-end checks.
//!
//! A reference calibration, [`ref65`], reproduces the characteristic
//! operating points of a 65 nm, 1 V design.

pub mod error;
pub mod explorer;
pub mod integrator;
pub mod latch;
pub mod linkbudget;
pub mod lna;
pub mod numerics;
pub mod ref65;
pub mod techmodel;

pub use error::{Error, Result};

// Book snippets double as doc-tests so the guide can never drift from
// the API. https://github.com/rust-lang/mdBook/issues/706
#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($name:ident, $path:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $path))]
            mod $name {}
        };
    }
    booktest!(introduction, "introduction.md");
    booktest!(getting_started, "getting-started.md");
    booktest!(technology, "technology.md");
    booktest!(sampler, "sampler.md");
    booktest!(lna, "lna.md");
    booktest!(integrator, "integrator.md");
    booktest!(cascades, "cascades.md");
    booktest!(link_budget, "link-budget.md");
    booktest!(architectures, "architectures.md");
    booktest!(oracles, "oracles.md");
    booktest!(cli, "cli.md");
}
