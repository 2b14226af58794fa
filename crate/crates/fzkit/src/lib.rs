//! Exact-rational toolkit for Zariski decompositions, volume functions and
//! infinitesimal Newton–Okounkov bodies of three families of polarized
//! threefolds, with the polyhedral kernel they rest on.

pub mod ratgeom;
pub mod pwl;
pub mod surface;
pub mod threefold;
pub mod okounkov;
pub mod acceptance;
