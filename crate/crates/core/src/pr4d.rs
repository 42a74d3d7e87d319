//! PR4D: pseudo-radial ky–kz sampling with interleaved encodings.
//!
//! The angle advances by an irrational fraction of a turn per sample and is
//! offset per encoding; the radius advances by `R·(2 − g)` modulo `R` and is
//! shared by all encodings.

use std::f64::consts::TAU;

use crate::error::{invalid, Error, Result};
use crate::geometry::{frac, offset_to_grid, GOLDEN_RATIO};
use crate::opra::aspect_corrected;
use crate::pattern::{GridSpec, MethodParams, Sample, SamplingPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct Pr4dParams {
    pub n_y: usize,
    pub n_z: usize,
    pub frames: usize,
    pub lines_per_frame: usize,
    pub encodings: usize,
    pub s: f64,
    pub gamma: f64,
    /// Angular increment in turns; only its fractional part matters.
    pub g_s: f64,
}

impl Default for Pr4dParams {
    fn default() -> Self {
        Pr4dParams {
            n_y: 96,
            n_z: 60,
            frames: 80,
            lines_per_frame: 30,
            encodings: 4,
            s: 3.0,
            gamma: 0.0,
            g_s: 35f64.cbrt(),
        }
    }
}

impl Pr4dParams {
    pub fn total(&self) -> usize {
        self.lines_per_frame * self.frames
    }

    /// R = ⌊(max(N_y, N_z) − 1) / 2⌋
    pub fn max_radius(&self) -> f64 {
        ((self.n_y.max(self.n_z) - 1) / 2) as f64
    }

    pub fn validate(&self) -> Result<GridSpec> {
        let grid = GridSpec::new(self.n_y, self.n_z, self.frames, self.encodings)?;
        if self.n_y.max(self.n_z) < 3 {
            return Err(invalid("pe", "largest matrix dimension must be >= 3"));
        }
        if self.lines_per_frame < 1 {
            return Err(invalid("n", "lines per frame must be >= 1 (got 0)"));
        }
        if !(self.s >= 1.0) || !self.s.is_finite() {
            return Err(invalid("s", format!("must be >= 1 (got {})", self.s)));
        }
        if !self.gamma.is_finite() {
            return Err(invalid("ar", "must be finite"));
        }
        if !self.g_s.is_finite() {
            return Err(invalid("gs", "must be finite"));
        }
        Ok(grid)
    }
}

/// Corrected angle and emitted radius of sample `i` in encoding `e`.
pub fn pr4d_polar(i: usize, e: usize, r_lin: f64, params: &Pr4dParams) -> Result<(f64, f64)> {
    params.validate()?;
    if i < 1 || e < 1 || e > params.encodings {
        return Err(Error::Domain(format!(
            "sample {i}, encoding {e} outside [1, ∞) × [1, {}]",
            params.encodings
        )));
    }
    let r_max = params.max_radius();
    if !(0.0..=r_max).contains(&r_lin) {
        return Err(Error::Domain(format!("radius {r_lin} outside [0, {r_max}]")));
    }
    let turns = frac(params.g_s);
    let offset = (e - 1) as f64 / params.encodings as f64;
    // reduce the per-sample part first so encodings differ only by the offset
    let raw = TAU * frac(frac(turns * i as f64) + turns * offset);
    let scale = (params.n_z as f64 / params.n_y as f64).powf(params.gamma);
    let theta = aspect_corrected(raw, scale);
    let r_emit = (r_lin / r_max).powf(params.s) * r_max;
    Ok((theta, r_emit))
}

/// Linear radii `r(1) = 0`, `r(i+1) = ⟨r(i) + R·(2 − g)⟩_R`.
pub fn pr4d_radius_sequence(len: usize, params: &Pr4dParams) -> Vec<f64> {
    let r_max = params.max_radius();
    let advance = r_max * (2.0 - GOLDEN_RATIO);
    let mut out = Vec::with_capacity(len);
    let mut r = 0.0;
    for _ in 0..len {
        out.push(r);
        r = (r + advance).rem_euclid(r_max);
    }
    out
}

pub fn generate_pr4d(params: &Pr4dParams) -> Result<SamplingPattern> {
    let grid = params.validate()?;
    let m = params.total();
    let radii = pr4d_radius_sequence(m, params);
    let longest = params.n_y.max(params.n_z) as f64;
    let sy = params.n_y as f64 / longest;
    let sz = params.n_z as f64 / longest;
    let mut samples = Vec::with_capacity(m * params.encodings);
    for e in 1..=params.encodings {
        for (idx, &r_lin) in radii.iter().enumerate() {
            let i = idx + 1;
            let (theta, r) = pr4d_polar(i, e, r_lin, params)?;
            let (ky, kz) = offset_to_grid(r * theta.cos() * sy, r * theta.sin() * sz, &grid);
            samples.push(Sample {
                encoding: e,
                order: i,
                frame: i.div_ceil(params.lines_per_frame),
                ky,
                kz,
            });
        }
    }
    SamplingPattern::new(grid, MethodParams::Pr4d(params.clone()), samples)
}
