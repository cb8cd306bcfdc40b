pub mod doc;
pub mod error;
pub mod fastforward;
pub mod ffring;
pub mod intpoly;
pub mod oracle;
pub mod trigroup;
pub mod verify;
pub mod zflow;

pub use error::{Error, ErrorKind, Result};
