//! Text formats, report rendering, and the `cellbound` command line.

pub mod app;
pub mod formats;
pub mod report;

pub use app::{exit, run};
