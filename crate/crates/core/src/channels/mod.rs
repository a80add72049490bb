//! Channel algebra on column-stacked superoperators.

mod banded;
mod kraus;
mod relaxation;
mod superop;

pub use banded::{bandedness, torus_distance, Bandedness};
pub use kraus::{kraus_decompose, KrausOperator, KrausSet, CP_VIOLATION, RANK_CUTOFF};
pub use relaxation::{relaxation_superop, RelaxationRates};
pub use superop::{compose, mix, Superoperator};
