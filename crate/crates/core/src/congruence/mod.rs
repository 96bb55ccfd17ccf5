//! Finitely generated one-sided congruences `⟨H⟩` on the monoids.
//!
//! Searches are bounded: a negative answer from [`relate`] only means that
//! nothing was found within the bound.

mod candidates;
mod decompose;
mod project;
mod reduction;
mod relate;
mod sequence;

pub use candidates::{
    annihilator_candidate, intersection_candidate, max_weight_at_diameter, AnnihilatorBounds,
    AnnihilatorCandidate, CandidateConfig, IntersectionCandidate,
};
pub use decompose::{decompose_y, Decomposition};
pub use project::{project_alphabet, Projection};
pub use reduction::{find_reduction, irreducible_form, ReductionWitness};
pub use relate::{component, neighbours, relate, Budget};
pub use sequence::{
    sequence_weight, single_equation_bound_holds, small_member_bound_holds,
    start_diameter_bound_holds, CongruencePresentation, HSequence, Side, Step,
};
