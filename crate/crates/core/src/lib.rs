pub mod ballean;
pub mod error;
pub mod exactmat;
pub mod groups;
pub mod json;
pub mod lattice;
pub mod verify;
pub mod witnesses;

pub use error::{Error, Result};
