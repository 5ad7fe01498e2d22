//! Connections on the free module of one-forms with central basis.
//!
//! With `Z(A_N) = C·1` the metric, `ψ` and the Koszul system all reduce to
//! complex scalars, and the Levi-Civita connection is a 9×9 solve per basis
//! element.

mod connection;
mod defects;
mod metric;
mod registry;
mod solver;

pub use connection::{
    grassmann, grassmann_connection, half_epsilon, nabla0, nabla0_connection, perturbed, Connection,
};
pub use defects::{
    antisymmetrized_pairing_gap, bimodule_defect, compat_defect_center, eval_two_form,
    eval_via_any_lift, full_compat_defect, max_one_form_grid, max_two_form, solve_dual,
    torsion_defect,
};
pub use metric::{dual_pair, g2_gram, g2_pair, g_pair, Metric, METRIC_RANK_TOL};
pub use registry::{
    ConnectionRegistry, ConnectionStrategy, GrassmannStrategy, LeviCivitaStrategy, Nabla0Strategy,
};
pub use solver::{
    antisymmetrize, koszul_matrix, koszul_rank, levi_civita, p_sym, psi, psi_element,
};
