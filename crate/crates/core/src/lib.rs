pub mod beta_rec;
pub mod density;
pub mod error;
pub mod exec;
pub mod math;
pub mod moments;
pub mod numeric;
pub mod painleve;
pub mod params;
pub mod sampling;
pub mod sun;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use params::EnsembleParams;
