//! Choosability engine: canonical list-system enumeration, exact and
//! sampled choosability checks, and bad-list certificates.

pub mod canonical;
mod engine;

pub use canonical::{
    canonical_form, cmp_lists, cmp_systems, is_canonical, CanonicalStream, SignedPermutation,
    Universe,
};
pub use engine::{
    is_chromatic_choosable, is_t_choosable, is_t_choosable_in, sample_t_choosable,
    zero_free_list_chromatic_number, CapPolicy, ChooseStatus, ChooseVerdict,
    ChromaticChoosability, ChromaticMode, SearchLimits, UniverseCap,
};
