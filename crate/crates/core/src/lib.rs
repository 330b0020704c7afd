//! Drinfeld modules over finite fields: reduction, Newton polygons, surjectivity
//! criteria for the adelic Galois image, Frobenius sampling and density counts.

pub mod classes;
pub mod cli;
pub mod criteria;
pub mod density;
pub mod drinfeld;
pub mod field;
pub mod frobenius;
pub mod galois;
pub mod group;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod twisted;
