//! Morphisms of the biset category.

mod compose;
mod elementary;
mod factorize;
mod idempotent;
mod morphism;
mod shift;

pub use compose::{
    compose, mackey_terms, orbit_terms, prepared_classes, referee_pair, referee_prepared, Method,
    PreparedBiset, RefereeReport,
};
pub use elementary::{
    def, defres, identity, ind, indinf, inf, inf_def, iso, one_point, res, twisted_diagonal,
};
pub use factorize::{factorize, FactorizationData};
pub use idempotent::{faithful_idempotent, faithful_idempotent_center};
pub use morphism::{hom_group, projections, BisetMorphism, Projections};
pub use shift::{as_morphism, regroup, shift, tilde};
