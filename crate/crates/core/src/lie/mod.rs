//! Root-system foundation: Cartan data, Weyl groups, weight arithmetic,
//! character evaluation and tensor-product decomposition.

mod character;
mod datum;
mod freudenthal;
mod point;
mod tensor;
mod types;
mod weyl;

pub use character::CharacterValue;
pub use datum::{PositiveRoot, RootDatum};
pub use point::TorusPoint;
pub use types::{Coweight, LieType, Weight};
pub use weyl::WeylGroup;

use crate::error::Result;
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn build_root_datum(lie_type: LieType, rank: usize) -> Result<Arc<RootDatum>> {
    RootDatum::new(lie_type, rank).map(Arc::new)
}

pub fn weyl_dimension(rd: &RootDatum, weight: &Weight) -> Result<u64> {
    rd.weyl_dimension(weight)
}

pub fn character_value(rd: &RootDatum, weight: &Weight, xi: &TorusPoint) -> Result<CharacterValue> {
    rd.character_value(weight, xi)
}

pub fn weight_multiplicities(rd: &RootDatum, weight: &Weight) -> Result<BTreeMap<Weight, u64>> {
    rd.weight_multiplicities(weight)
}

pub fn tensor_multiplicities(
    rd: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    rd.tensor_multiplicities(lambda, mu)
}
