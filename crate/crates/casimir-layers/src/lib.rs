//! Casimir and van der Waals forces in three-layer dielectric systems.
//!
//! A planar body `1` and a planar body `3` face each other across a gap of
//! width `L` filled by a medium `2`. When the dielectric functions on the
//! imaginary frequency axis satisfy `ε₁(iω) < ε₂(iω) < ε₃(iω)` the Casimir
//! force between the bodies is repulsive. This crate computes
//!
//! - the zero-temperature Lifshitz force and energy per unit area
//!   ([`lifshitz`]),
//! - the non-retarded Hamaker constant and short-distance force ([`hamaker`]),
//! - surface plasmon dispersion relations for plasma-model stacks, both for a
//!   single interface and for the coupled cavity modes ([`surface_modes`]),
//! - the renormalized vacuum energy of the coupled surface plasmons and the
//!   resulting plasmon/photon decomposition of the Casimir energy
//!   ([`plasmon_energy`]),
//! - permittivity models on the imaginary axis with built-in material
//!   presets ([`dielectric`]).
//!
//! All quantities are SI internally: frequencies in rad/s, lengths in meters,
//! energies in J/m², forces in N/m². Forces are stored with the Lifshitz sign
//! convention (negative = attraction); reduction factors divide by the
//! perfect-mirror values, so a *negative* reduction factor means repulsion.
//!
//! The [`scenario`] module backs the `casimir-layers` binary: named scenarios
//! that export dispersion branches, energy decompositions and force sweeps as
//! CSV, plus a generic config-driven sweep.

pub mod constants;
pub mod dielectric;
pub mod error;
pub mod hamaker;
pub mod lifshitz;
pub mod numerics;
pub mod plasmon_energy;
pub mod scenario;
pub mod surface_modes;

pub use dielectric::DielectricModel;
pub use error::{Error, Result};
pub use hamaker::{hamaker_constant, short_distance_force, ForceConvention, HamakerResult};
pub use lifshitz::{lifshitz_force, long_distance_estimate, ForceResult, TriLayer};
pub use numerics::{QuadratureConfig, RootConfig};
pub use plasmon_energy::{
    energy_breakdown, plasmon_energy, plasmon_energy_short, short_distance_force_slope, y_factor,
    EnergyBreakdown, PlasmonEnergy,
};
pub use surface_modes::{coupled_branches, PlasmaTriple};
