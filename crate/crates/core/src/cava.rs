//! CAVA: sample-by-sample golden-ratio advance on the small grid.
//!
//! Because consecutive samples are spread by the golden fraction, any window
//! of consecutive samples is close to uniform on the small grid. That is what
//! allows the stream to be cut into frames of any size after acquisition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geometry::{golden_fraction, StretchMap};
use crate::pattern::{relabel_frames, GridSpec, MethodParams, Sample, SamplingPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct CavaParams {
    pub pe: usize,
    /// Nominal number of frames.
    pub frames: usize,
    /// Nominal lines per frame.
    pub lines_per_frame: usize,
    pub encodings: usize,
    pub s: f64,
    pub alpha: f64,
    pub tau: u32,
    /// Drives the random start position of each encoding.
    pub seed: u64,
}

impl Default for CavaParams {
    fn default() -> Self {
        CavaParams {
            pe: 120,
            frames: 48,
            lines_per_frame: 6,
            encodings: 2,
            s: 2.2,
            alpha: 3.0,
            tau: 1,
            seed: 0,
        }
    }
}

impl CavaParams {
    pub fn total(&self) -> usize {
        self.lines_per_frame * self.frames
    }

    pub fn validate(&self) -> Result<StretchMap> {
        GridSpec::planar(self.pe, self.frames, self.encodings)?;
        if self.lines_per_frame < 1 {
            return Err(invalid("n", "lines per frame must be >= 1 (got 0)"));
        }
        golden_fraction(self.tau)?;
        StretchMap::new(self.pe, self.s, self.alpha)
    }
}

/// `len` terms of `p(i+1) = ⟨p(i) + advance⟩_modulus` starting at `start`.
pub fn golden_sequence(start: f64, advance: f64, modulus: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut p = start.rem_euclid(modulus);
    for _ in 0..len {
        out.push(p);
        p = (p + advance).rem_euclid(modulus);
    }
    out
}

/// Start positions on `[0, N_s)`, one uniform draw per encoding.
pub fn start_positions(params: &CavaParams) -> Result<Vec<f64>> {
    let map = params.validate()?;
    let n_s = map.small_size() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    Ok((0..params.encodings).map(|_| rng.gen::<f64>() * n_s).collect())
}

/// Small-grid positions of one encoding in acquisition order.
pub fn cava_sequence(params: &CavaParams, encoding: usize) -> Result<Vec<f64>> {
    let map = params.validate()?;
    if encoding < 1 || encoding > params.encodings {
        return Err(invalid(
            "e",
            format!("encoding {encoding} outside [1, {}]", params.encodings),
        ));
    }
    let n_s = map.small_size() as f64;
    let start = start_positions(params)?[encoding - 1];
    let advance = golden_fraction(params.tau)? * n_s;
    Ok(golden_sequence(start, advance, n_s, params.total()))
}

pub fn generate_cava(params: &CavaParams) -> Result<SamplingPattern> {
    let map = params.validate()?;
    let grid = GridSpec::planar(params.pe, params.frames, params.encodings)?;
    let n = params.lines_per_frame;
    let mut samples = Vec::with_capacity(params.total() * params.encodings);
    for e in 1..=params.encodings {
        for (i, p) in cava_sequence(params, e)?.into_iter().enumerate() {
            samples.push(Sample {
                encoding: e,
                order: i + 1,
                frame: i / n + 1,
                ky: map.apply_circle(p),
                kz: grid.center_z(),
            });
        }
    }
    SamplingPattern::new(grid, MethodParams::Cava(params.clone()), samples)
}

/// Cut the acquisition stream of a ky–t pattern into frames of `lines`
/// consecutive samples.
pub fn rebin_2d(pattern: &SamplingPattern, lines: usize) -> Result<SamplingPattern> {
    if pattern.grid().is_volumetric() {
        return Err(Error::Domain(
            "rebin_2d expects a ky–t pattern; use analysis::rebin_3d".into(),
        ));
    }
    relabel_frames(pattern, lines)
}
