//! Verification kernel for finite truncated strict ∞-groupoids, their
//! twisted counterparts and the associated décalage data.

pub mod decalage;
pub mod error;
pub mod glob;
pub mod omega;
pub mod report;
pub mod testcat;
pub mod twist;

pub use error::{Error, Result};
