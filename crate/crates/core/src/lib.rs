//! Exact computations on finite groups with operators (Ω-groups).
//!
//! Groups are Cayley tables with element `0` as identity, carrying labeled
//! operators that act as endomorphisms. On top of that the crate computes
//! Ω-subgroup lattices, simple normal Ω-subgroups, socles, isotypical
//! components, supports, restricted direct sum predicates, and the
//! decomposition of normal morphisms between semisimple Ω-groups.

pub mod decomposition;
pub mod error;
pub mod group;
pub mod homs;
pub mod iso;
pub mod morphism;
pub mod named;
pub mod product;
pub mod set;
pub mod subgroups;

pub use decomposition::{
    check_cc, decompose, find_supplementary, greedy_refine, is_semisimple, isotypical_component,
    isotypical_component_of, mutual_independence, sdr_report, sdr_report_in, socle, support, theta, Decomposition,
    SdrReport, Semisimplicity, SupportSet, Theta,
};
pub use error::{Error, Result};
pub use group::{Limits, OmegaGroup, Operator};
pub use homs::{
    component_of_morphism, enumerate_homs, is_normal_morphism, phi, phi_inverse, ComponentVector, HomSet, PhiContext,
};
pub use iso::{are_isomorphic, certificate, IsoCertificate};
pub use morphism::OmegaMorphism;
pub use named::{build_named, with_inner_operators, GroupKind};
pub use product::{direct_product, quotient, ProductWitness};
pub use set::ElementSet;
pub use subgroups::{
    centralizer, commutator_subgroup, embed, enumerate_normal_omega_subgroups, enumerate_omega_subgroups,
    generated_subgroup, is_normal, join_normal, normal_closure, normal_omega_subgroups, simple_normal_subgroups,
    Embedding, Subgroup, SubgroupFamily,
};
