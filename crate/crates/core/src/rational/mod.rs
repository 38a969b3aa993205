//! `delta`, the subfunctor `B_delta`, computable biset functors and the
//! rationality checks built on them.

mod checks;
mod delta;
mod functor;
mod identities;
mod subfunctor;

pub use checks::{
    caract_check, caract_row, faithful_kernel_lattice, faithful_part, indinf_sum, k_mod_delta,
    rat_bounds, rat_quotient, rat_sub, rationality_check, rationality_check_with, CaractReport,
    CaractRow, FaithfulPart, KModDelta, RatBounds, RationalityReport,
};
pub use delta::{
    delta_context, delta_element, delta_r, induced_epsilon, is_dihedral, noncentral_classes,
    DeltaContext,
};
pub use functor::{
    b_matrix, make_b, make_k, make_quotient_bmod_bdelta, make_quotient_kmod_bdelta, make_shift,
    parse_functor, Base, ComputableFunctor, Evaluation,
};
pub use identities::{
    delta_nul_check, delta_r_in_b_delta, external_product, geometric_check, mur_kill_check,
    rank1_faithful_kernel, semidihedral_generator, y_identity_by_enumeration, y_identity_check,
    DeltaNulReport, GeometricReport, MackeyLine, MurReport, Rank1Row, YIdentityReport,
};
pub use subfunctor::{b_delta, b_delta_at, b_epsilon, subfunctor_eval, subfunctor_eval_full};
