//! Finite-depth model of the spectrum of a limit algebra: the tail
//! equivalence groupoid on Cantor-space prefixes, its orders and G-sets,
//! and the dyadic principal generator of an ideal.

pub mod function;
pub mod gset;
pub mod isometry;
pub mod order;
pub mod theorem;
pub mod words;

pub use function::{DyadicFunction, GSetCombination, GroupoidFunction};
pub use gset::{groupoid_compose, Arrow, GSet, TailGroupoid};
pub use isometry::{partial_homeo_of_isometry, PartialHomeo};
pub use order::{
    check_partial_order, ideal_set_check, index_table, order_from_comparator, order_layer, order_support,
    spectrum_determines, OrderReport, WordRelation,
};
pub use theorem::{
    basis_listing, check_listing_order, compress_by, compress_by_convolution, disjointify, dyadic_generator,
    generated_ideal_support, level_unit_listing, principal_generator, refine_all, subordinate_check,
    subordinate_deletion, GeneratorReport, Listing,
};
pub use words::{lex_leq, pi_coordinate, pi_coordinate_mixed, revlex_leq, Alphabets, Comparator, Word};
