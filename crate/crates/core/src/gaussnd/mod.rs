//! Multidimensional Gauss maps obtained as first returns of the Mönkemeyer map.

pub mod dynamics;
pub mod group;
pub mod subshift;
pub mod system;

pub use dynamics::{
    approx_matrix, approx_simplexes, check_nesting, classify_by_iteration, classify_piece, face_point, in_base,
    itinerary, monkemeyer_step, orbit, return_step, return_step_iterated, simplex_within, Branch, Classification,
    Itinerary, Orbit, OrbitStatus, ReturnStep,
};
pub use group::{embed, is_coordinate_swap, search_words, Generators, Letter};
pub use subshift::{facet_subshift_check, streak_rewrite, BreveWord, Face, FacetClass, StreakRewrite};
pub use system::{monkemeyer_matrices, parse_symbols, Family, MapSystem, Symbol, DEFAULT_MAX_DIM};
