//! Golden Ratio Offset (GRO) sampling on the ky–t grid.
//!
//! Frame 1 is a uniform comb of `n` lines on a small grid of `N_s` lines.
//! Each following frame rotates the previous one by `g̃·N_s` (circularly),
//! and every position is then stretched onto the full grid for variable
//! density. Rotation happens on real-valued small-grid positions; rounding
//! only happens inside the stretch map.

use crate::error::{invalid, Result};
use crate::geometry::{golden_fraction, StretchMap};
use crate::pattern::{order_acquisition, GridSpec, MethodParams, Sample, SamplingPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct GroParams {
    /// Size of the phase-encode grid (N).
    pub pe: usize,
    pub frames: usize,
    pub lines_per_frame: usize,
    pub encodings: usize,
    /// Ratio of central to overall acceleration; `N_s = round(N / s)`.
    pub s: f64,
    /// Transition sharpness between the dense center and sparse edges.
    pub alpha: f64,
    pub tau: u32,
}

impl Default for GroParams {
    fn default() -> Self {
        GroParams {
            pe: 160,
            frames: 64,
            lines_per_frame: 12,
            encodings: 1,
            s: 2.2,
            alpha: 3.0,
            tau: 1,
        }
    }
}

impl GroParams {
    /// Total samples per encoding (M).
    pub fn total(&self) -> usize {
        self.lines_per_frame * self.frames
    }

    /// Check every constraint and build the stretch map.
    pub fn validate(&self) -> Result<StretchMap> {
        GridSpec::planar(self.pe, self.frames, self.encodings)?;
        if self.lines_per_frame < 1 {
            return Err(invalid("n", "lines per frame must be >= 1 (got 0)"));
        }
        golden_fraction(self.tau)?;
        let map = StretchMap::new(self.pe, self.s, self.alpha)?;
        if self.lines_per_frame > map.small_size() {
            return Err(invalid(
                "n",
                format!(
                    "{} lines do not fit on the small grid of {} lines",
                    self.lines_per_frame,
                    map.small_size()
                ),
            ));
        }
        Ok(map)
    }

    fn grid(&self) -> Result<GridSpec> {
        GridSpec::planar(self.pe, self.frames, self.encodings)
    }
}

/// Frame-1 positions of one encoding on `[0, N_s)`.
///
/// Encoding `e` is offset by `(e − 1)/E` of one comb spacing.
pub fn initial_comb(params: &GroParams, encoding: usize) -> Result<Vec<f64>> {
    let map = params.validate()?;
    check_encoding(encoding, params.encodings)?;
    let spacing = map.small_size() as f64 / params.lines_per_frame as f64;
    let phase = (encoding - 1) as f64 * spacing / params.encodings as f64;
    Ok(comb(params.lines_per_frame, spacing, phase))
}

fn comb(lines: usize, spacing: f64, phase: f64) -> Vec<f64> {
    (0..lines).map(|k| k as f64 * spacing + phase).collect()
}

fn check_encoding(encoding: usize, encodings: usize) -> Result<()> {
    if encoding < 1 || encoding > encodings {
        return Err(invalid(
            "e",
            format!("encoding {encoding} outside [1, {encodings}]"),
        ));
    }
    Ok(())
}

/// Rotate `first` by the golden shift frame after frame.
pub(crate) fn rotate_frames(first: Vec<f64>, small: usize, frames: usize, tau: u32) -> Result<Vec<Vec<f64>>> {
    let n_s = small as f64;
    let shift = golden_fraction(tau)? * n_s;
    let mut out = Vec::with_capacity(frames);
    out.push(first);
    for t in 1..frames {
        let next = out[t - 1].iter().map(|p| (p + shift).rem_euclid(n_s)).collect();
        out.push(next);
    }
    Ok(out)
}

/// Pre-stretch positions of every frame for one encoding, on `[0, N_s)`.
pub fn small_grid_frames(params: &GroParams, encoding: usize) -> Result<Vec<Vec<f64>>> {
    let map = params.validate()?;
    let first = initial_comb(params, encoding)?;
    rotate_frames(first, map.small_size(), params.frames, params.tau)
}

/// Unrounded full-grid positions for a comb with an arbitrary phase.
///
/// Used to seed VISTA: the values are strictly increasing within a frame
/// before rotation, so no two samples of a frame coincide.
pub(crate) fn continuous_frames(params: &GroParams, phase_fraction: f64) -> Result<Vec<Vec<f64>>> {
    let map = params.validate()?;
    let spacing = map.small_size() as f64 / params.lines_per_frame as f64;
    let first = comb(params.lines_per_frame, spacing, phase_fraction * spacing);
    let frames = rotate_frames(first, map.small_size(), params.frames, params.tau)?;
    Ok(frames
        .into_iter()
        .map(|f| f.into_iter().map(|p| map.raw(map.from_circle(p))).collect())
        .collect())
}

pub fn generate_gro(params: &GroParams) -> Result<SamplingPattern> {
    let map = params.validate()?;
    let grid = params.grid()?;
    let mut samples = Vec::with_capacity(params.total() * params.encodings);
    for e in 1..=params.encodings {
        let frames: Vec<Vec<usize>> = small_grid_frames(params, e)?
            .iter()
            .map(|f| f.iter().map(|&p| map.apply_circle(p)).collect())
            .collect();
        for (i, (frame, ky)) in order_acquisition(&frames).into_iter().enumerate() {
            samples.push(Sample {
                encoding: e,
                order: i + 1,
                frame,
                ky,
                kz: grid.center_z(),
            });
        }
    }
    SamplingPattern::new(grid, MethodParams::Gro(params.clone()), samples)
}
