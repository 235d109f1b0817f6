pub mod error;
pub mod exactlin;

pub use error::{Error, ErrorKind, Result};
pub mod jordan;
pub mod modgrp;
pub mod separate;
pub mod cryst;
