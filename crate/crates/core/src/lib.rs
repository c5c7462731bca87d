pub mod cli;
pub mod error;
pub mod hopf_star;
pub mod momentum;
pub mod nc_order;
pub mod numerics;
pub mod realizations;
pub mod weyl;

pub use error::{Error, Result};
