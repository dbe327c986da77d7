//! Exact computations for weighted hyperplane arrangements: intersection
//! lattices, flag spaces, Aomoto complexes, logarithmic forms, and the
//! hypergeometric solutions of the KZ equations they produce.

pub mod aomoto;
pub mod arrangement;
pub mod cli;
pub mod exactfield;
pub mod flags;
pub mod kz;
pub mod liealg;
pub mod logforms;
pub mod svmap;
pub mod linalg;
