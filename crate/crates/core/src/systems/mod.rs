//! Network equation systems as expression DAGs, their order-by-order series
//! solution, and the block / connected / general assembly.

mod builders;
mod eval;
mod expr;
mod solve;

pub use builders::{
    c4_network_system, girth_network_system, triangle_free_single, triangle_network_system,
    triangle_reduced_pair,
};
pub use eval::{
    cyc_numeric, evaluate, evaluate_rhs, exp_geq_numeric, qbinom_numeric, Domain, PointDomain,
    SeriesDomain,
};
pub use expr::{ClassTag, Node, NodeId, SystemBuilder, SystemSpec};
pub use solve::{
    assemble_b_c4, assemble_b_girth, assemble_b_triangle, connected_from_b, evaluate_output,
    residuals, solve_class, solve_fixed_point, unroot_edges, BlockSeries, GraphClassSeries,
    SolvedNetworks,
};
