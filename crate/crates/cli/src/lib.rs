//! Command-line surface and file formats for the finite-metric-space toolkit.

pub mod app;
pub mod formats;
