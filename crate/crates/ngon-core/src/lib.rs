//! Compass-and-straightedge towers for regular polygons with a Fermat-prime
//! number of sides.

pub mod constructible;
pub mod construction;
pub mod cyclotomic_oracle;
pub mod format;
pub mod invariant_sets;
pub mod numeric;
pub mod period_algebra;
pub mod reference;
pub mod residues;
pub mod splitting;
pub mod tower;
