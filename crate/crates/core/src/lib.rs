//! Binary codes and the adinkras they define, together with the
//! supersymmetry representations those adinkras carry.

pub mod chromo;
pub mod clifford;
pub mod code;
pub mod dashing;
pub mod error;
pub mod gf2;
pub mod io;
pub mod ranking;
pub mod susyrep;

pub use error::{Error, Result};
