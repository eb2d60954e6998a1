//! Exact verification toolkit for the combinatorial skeleton of the descent
//! construction for GSpin groups.

pub mod arith;
pub mod cosets;
pub mod linalg;
pub mod similitude;
pub mod unramified;
pub mod weyl;
pub mod periods;
pub mod root_datum;
