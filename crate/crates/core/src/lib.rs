//! Pseudo-random Cartesian k-space sampling patterns for dynamic MRI.
//!
//! Five generators share one output type, [`SamplingPattern`]:
//!
//! * [`vista`]: Riesz-energy optimized ky–t sampling.
//! * [`gro`]: golden ratio offset between frames on a stretched small grid.
//! * [`cava`]: golden ratio advance between consecutive samples, so the
//!   stream can be re-binned to any temporal resolution.
//! * [`opra`]: golden-angle rotated L-shaped leaflets in ky–kz.
//! * [`pr4d`]: pseudo-radial ky–kz sampling with interleaved encodings.
//!
//! [`analysis`] measures the structural properties of a pattern and
//! [`io`] writes sample lists, netpbm masks and statistics.

pub mod analysis;
pub mod cava;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod gro;
pub mod io;
pub mod mask;
pub mod opra;
pub mod pattern;
pub mod pr4d;
pub mod vista;

pub use error::{Error, Result};
pub use geometry::{golden_fraction, polar_to_grid, StretchMap, GOLDEN_RATIO};
pub use mask::Mask;
pub use pattern::{order_acquisition, GridSpec, Method, MethodParams, Sample, SamplingPattern};
