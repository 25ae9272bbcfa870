//! Integer lattices, Smith normal form and the cycle relations used to
//! compare discriminant groups.

pub mod cycles;
pub mod gram;
pub mod matrix;
pub mod snf;

pub use cycles::{
    isometry_contradiction, reduce_cycle, verify_mult_by_5, verify_mult_by_5_reverse, CycleExpression, CycleSymbol,
    MultiplierCheck, Relation, RelationSet,
};
pub use gram::{
    discriminant_group, index_candidates, saturation_check, solve_integer_system, FiniteAbelianGroup, GramLattice,
    SaturationReport,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
