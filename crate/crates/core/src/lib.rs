//! Exact certificates that Lagrangian torus fibres are not Hamiltonian
//! volume minimizing.
//!
//! * [`chekanov`]: Hamiltonian isotopy classes of product tori in `C^n`.
//! * [`cn_tori`]: volumes of product tori and the volume-reducing witness.
//! * [`cpn`]: torus orbits of `CP^n`, chart changes and certification.
//! * [`density`]: seeded Monte Carlo over the moment simplex.
//! * [`toric`]: general compact toric manifolds given by a moment polytope.
//!
//! All arithmetic is exact over the rationals; factors of `2π` and the
//! normalisation constants of volume forms are carried symbolically.

pub mod certificate;
pub mod chekanov;
pub mod cn_tori;
pub mod cpn;
pub mod density;
pub mod error;
pub mod lp;
pub mod parallel;
pub mod poly;
pub mod rational;
pub mod toric;

pub use certificate::{Certificate, Verdict};
pub use chekanov::{invariants, isotopy_equivalent, ChekanovInvariants};
pub use cn_tori::{greedy_reduce, product_torus_sqvolume, witness, WitnessStep};
pub use cpn::{certify, chart_transform, find_good_chart, orbit_sqvolume, ChartPoint};
pub use density::{dn_density, DensityReport};
pub use error::{Error, Result};
pub use rational::{RatVec, Rational};
pub use toric::{c_threshold, toric_orbit_sqvolume, toric_witness, DelzantPolytope, VolumeModel};
