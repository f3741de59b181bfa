//! Serre-weight combinatorics for `GL_2` over `F_q`, `q = p^f`: the
//! extension graph, predicted weight sets, the generic envelope
//! filtration and the `D_0` construction.

pub mod d0;
pub mod envelope;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod verify;
pub mod weights;

pub use d0::{
    d0_block, d0_full, d0_sigma, radical_disjointness_check, upperbound_consistency, D0Constituent,
    D0Report, D0SigmaReport,
};
pub use envelope::{
    extension_witness, factor_dims, fil_index_intersect, fil_meet, graded_pieces, hom_dim, k_of,
    sigma_label, submodule_leq, tensor_translate, upward_closure, v_submodule, vbar_layers,
    EnvelopeReport, ExtensionWitness, FactorDims, GradedReport, JSet, MultiIndex, SubmoduleLabel,
    VbarLayers,
};
pub use error::{Error, Result};
pub use graph::{
    adjacent, decompose, enumerate_graph, ext1_dim, in_graph, omega_element, recenter_check, t_mu,
    t_mu_class, t_mu_raw, t_mu_raw_with, EDecomposition, GraphReport, GraphVertex, OmegaElement,
};
pub use lattice::{
    central_residue, dim_serre, herzig_element, herzig_reflect, herzig_reflect_inv, is_deep,
    is_generic_char, is_regular, is_restricted, lattice_class, p_dot, serre_class,
    ExtAffineElement, LambdaWElement, LatticeClass, Params, SerreWeightClass, Weight, WeylElement,
    MAX_F,
};
pub use verify::{run_suite, CheckOutcome, Fault, SuiteConfig, SuiteOutcome};
pub use weights::{
    all_presentations_one_deep, hypercube, is_one_generic, jh_dl_reduction, presentations, s_w,
    w_question, Presentation, SignedSet, TameParam, WeightReport,
};
