//! Fundamental wedge representations, rational cones, and the conjectural
//! Jordan decomposition checks for the nonnegative monoid.

mod cone;
mod corpus;
mod pinning;
mod wedge;

pub use cone::{cone_meet_orthant, Cone};
pub use corpus::{
    realize_mixed_gl3, sample_cell_with_rational_jordan, sample_mixed_gl3, sample_prop_cell_element,
    AlphaCase, ALPHA_CASES,
};
pub use pinning::{
    check_31a, check_conjecture, check_lemma_uv, h_pinning, BlockOrientation, ConjError,
    ConjectureReport, HPinningData,
};
pub use wedge::{compound, levi_submodule, top_generalized_eigenspace, WedgeSpace, WeightEnd};
