//! Singularities, singular expansions, limit-law moments and asymptotic
//! constants, all computed numerically from the network systems.

mod branch;
mod charpoint;
mod connected;
mod expansion;
mod linalg;
mod newton;
mod pointwise;
mod report;

pub use charpoint::{
    approach_singularity, augmented_residual, char_multi_det, char_pair, char_point, char_single,
    ratio_estimate, solve_char_point, CharMethod, CharPoint, JetParam,
};
pub use connected::{c_at_rho_quadrature, connected_constants, ConnectedConstants};
pub use expansion::{singular_expansion, transfer_constant, SingularExpansion, MAX_DEPTH};
pub use linalg::{determinant, Lu};
pub use newton::{newton, NewtonOptions, NewtonResult};
pub use pointwise::{network_residual, outputs_at, pointwise_solve, values_at_origin, PointSolution};
pub use branch::{
    block_jet, branch_bracket, branch_newton, branch_point, branch_point_connected,
    connected_moments_quasi_powers, connected_moments_radius, quasi_powers_input,
    quasi_powers_moments, BranchPoint, QuasiPowersInput,
};
pub use report::{moments_from_radius, AsymptoticConstant, Level, MomentMethod, MomentReport, PolyExponent};
