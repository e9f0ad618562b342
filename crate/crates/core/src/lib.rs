//! Skew morphisms of finite cyclic groups.

pub mod arith;
pub mod census;
pub mod enumerate;
pub mod families;
pub mod invariants;
pub mod product;
pub mod quotient;
pub mod skew;
pub mod store;
