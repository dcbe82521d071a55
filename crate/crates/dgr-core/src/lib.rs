//! Exact computer-algebra toolkit for the Dorizzi-Grammaticos-Ramani
//! integrable system: conserved pair and symmetries, Kovalevskaya analysis
//! and the principal balance, the Painlevé curve family and its quotients,
//! pole filtrations and the projective embedding, Wronskian expressibility,
//! and the critical-value eliminant — all over exact rational arithmetic
//! (optionally extended by a primitive sixth root of unity).

pub mod error;
pub mod scalar;
pub mod poly;
pub mod linalg;
pub mod upoly;
pub mod modular;
pub mod mechanics;
pub mod weyl;
pub mod balance;
pub mod curves;

pub use error::Error;
