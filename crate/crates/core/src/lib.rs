//! Exact differential algebra for the hypergeometric triangle-group functions
//! τ, q = e^τ, y0, y1, y2: the derivation D and its Rankin bracket, stable
//! ideal certificates, Puiseux expansions at 0, 1 and ∞, and vanishing-order
//! (multiplicity) computations.

pub mod coeff;
pub mod derivation;
pub mod hypergeom;
pub mod ideals;
pub mod multiplicity;
pub mod params;
pub mod rational;
pub mod series;
pub mod ring;
pub mod verify;
