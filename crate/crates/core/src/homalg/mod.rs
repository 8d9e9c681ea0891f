//! Minimal resolutions, group cohomology with its ring action, cohomological support and
//! Koszul objects.

mod algebra;
mod cohomology;
mod complex;
mod support;

pub use algebra::{free_left_mult, AlgModule, FiniteAlgebra, Resolution};
pub use cohomology::{ChainLift, ExtTable, GroupCohomology};
pub use complex::WindowedComplex;
pub use support::{
    annihilator_candidate, carlson_module, compact_koszul_module, ext_ring, ext_table,
    koszul_ideal, koszul_object, koszul_object_of_class, koszul_of_trivial, r_action_table, supp,
    supp_koszul_module, supp_module, supp_module_report, support_ring, SupportOptions,
    SupportReport, DEFAULT_DEGREE_BOUND, DEFAULT_STABILIZATION_WINDOW,
};
