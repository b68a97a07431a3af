//! Reproducible Monte Carlo integration and the purity integrands of
//! bipartite states bound by a central potential.
//!
//! The crate is `no_std` with `alloc`. The default `std` feature adds
//! parallel shard execution through rayon; without it shards run
//! sequentially and produce the same bits.
//!
//! Layout:
//!
//! * [`engine`]: counter-based RNG streams, plain and MISER integrators,
//!   target-driven budget growth and sharded execution.
//! * [`integrands`]: trace and purity integrands on `[-1, 1]^d`.
//! * [`physics`]: entanglement measure, gravitational Bohr radius,
//!   interferometer phase, error function and the harmonic bound.
//! * [`oracle`]: deterministic cross-checks (grid and Schmidt purity,
//!   Gauss-Legendre tensor quadratures).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod integrands;
pub mod oracle;
pub mod physics;
pub mod summation;

pub use engine::{
    integrate, integrate_miser, integrate_plain, integrate_to_target, integrate_to_target_sharded,
    shard_integrate, Domain, Integrator, IntegratorId, McEstimate, MiserParams, RngStream,
    TargetStatus, TargetedEstimate, TerminationPolicy,
};
pub use error::{Error, Result};
pub use integrands::{Integrand, PurityIntegrand, RadialWavefunction, WavefunctionFamily};
