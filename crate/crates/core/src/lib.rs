//! SOT-MRAM bitcell design-technology co-optimization engine.
//!
//! Layout arithmetic ([`techmodel`]), switching physics ([`magnetics`]),
//! compact device models ([`devices`]), a small nonlinear circuit simulator
//! ([`circuit`]), array-level write and read simulation ([`arraysim`]),
//! parameter fitting ([`calibrate`]), design-space sweeps ([`explorer`]),
//! run configuration ([`config`]) and CSV/SVG output ([`report`]).

pub mod arraysim;
pub mod calibrate;
pub mod circuit;
pub mod config;
pub mod consts;
pub mod devices;
pub mod error;
pub mod explorer;
pub mod magnetics;
pub mod report;
pub mod techmodel;

pub use error::{Error, Result};
