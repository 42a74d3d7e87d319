//! OPRA: L-shaped leaflets in the ky–kz plane, rotated by the golden angle.
//!
//! Each leaflet has two straight arms meeting near the k-space origin. Arm 1
//! runs inward from the boundary and arm 2 runs back out, so consecutive
//! samples never jump far. Successive leaflets rotate by π/g and their
//! radial sample positions slide by the fractional part of `(l−1)·g_s`.

use std::f64::consts::{PI, TAU};

use crate::error::{invalid, Result};
use crate::geometry::{frac, polar_to_grid, GOLDEN_RATIO};
use crate::pattern::{GridSpec, MethodParams, Sample, SamplingPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct OpraParams {
    pub n_y: usize,
    pub n_z: usize,
    /// Nominal number of frames.
    pub frames: usize,
    /// Nominal lines per frame.
    pub lines_per_frame: usize,
    /// Samples per leaflet (L); even.
    pub leaflet_len: usize,
    /// Radial density exponent.
    pub s: f64,
    /// Aspect-ratio exponent of the high-density region.
    pub gamma: f64,
    /// Irrational radial shift per leaflet (g_s).
    pub radial_shift: f64,
    /// Angular jump between the arms of a leaflet.
    pub phi: f64,
}

impl Default for OpraParams {
    fn default() -> Self {
        OpraParams {
            n_y: 96,
            n_z: 60,
            frames: 80,
            lines_per_frame: 30,
            leaflet_len: 10,
            s: 3.0,
            gamma: 0.0,
            radial_shift: 6f64.sqrt(),
            phi: PI / 12.0,
        }
    }
}

impl OpraParams {
    pub fn total(&self) -> usize {
        self.lines_per_frame * self.frames
    }

    pub fn leaflet_count(&self) -> usize {
        self.total() / self.leaflet_len
    }

    pub fn validate(&self) -> Result<GridSpec> {
        let grid = GridSpec::new(self.n_y, self.n_z, self.frames, 1)?;
        if self.lines_per_frame < 1 {
            return Err(invalid("n", "lines per frame must be >= 1 (got 0)"));
        }
        if self.leaflet_len < 2 || self.leaflet_len % 2 != 0 {
            return Err(invalid(
                "l",
                format!("leaflet size must be even and >= 2 (got {})", self.leaflet_len),
            ));
        }
        if self.total() % self.leaflet_len != 0 {
            return Err(invalid(
                "l",
                format!(
                    "leaflet size {} does not divide the {} total samples",
                    self.leaflet_len,
                    self.total()
                ),
            ));
        }
        if !(self.s >= 1.0) || !self.s.is_finite() {
            return Err(invalid("s", format!("must be >= 1 (got {})", self.s)));
        }
        if !self.gamma.is_finite() {
            return Err(invalid("ar", "must be finite"));
        }
        if !self.radial_shift.is_finite() {
            return Err(invalid("gs", "must be finite"));
        }
        if !self.phi.is_finite() {
            return Err(invalid("phi", "must be finite"));
        }
        Ok(grid)
    }
}

/// Geometry of one leaflet, arm 1 first.
#[derive(Clone, Debug, PartialEq)]
pub struct Leaflet {
    pub index: usize,
    /// Uncorrected angles θ̃ of arm 1 and arm 2.
    pub raw_angles: [f64; 2],
    /// Corrected angle of every sample.
    pub angles: Vec<f64>,
    /// Boundary radius R at every sample's angle.
    pub boundary: Vec<f64>,
    /// Radius after density shaping, in grid units from the center.
    pub radii: Vec<f64>,
}

/// Stretch the angle's kz component by `scale`, keeping its half-plane.
pub(crate) fn aspect_corrected(theta: f64, scale: f64) -> f64 {
    (scale * theta.sin()).atan2(theta.cos())
}

/// Distance from the center to the ellipse inscribed in an `n_y × n_z`
/// box, measured as a full width.
fn boundary_radius(theta: f64, n_y: f64, n_z: f64) -> f64 {
    n_y * n_z / ((n_y * theta.sin()).powi(2) + (n_z * theta.cos()).powi(2)).sqrt()
}

pub fn leaflet_geometry(index: usize, params: &OpraParams) -> Result<Leaflet> {
    params.validate()?;
    if index < 1 {
        return Err(invalid("l", "leaflet index starts at 1"));
    }
    let l = index as f64;
    let len = params.leaflet_len;
    let half = len / 2;
    let n_y = params.n_y as f64;
    let n_z = params.n_z as f64;
    let scale = (n_z / n_y).powf(params.gamma + 1.0);
    let raw_angles = [
        ((l - 1.0) * PI / GOLDEN_RATIO).rem_euclid(TAU),
        (l * PI / GOLDEN_RATIO - params.phi).rem_euclid(TAU),
    ];
    let shift = frac((l - 1.0) * params.radial_shift);

    let mut angles = Vec::with_capacity(len);
    let mut boundary = Vec::with_capacity(len);
    let mut radii = Vec::with_capacity(len);
    for j in 1..=len {
        let (raw, step) = if j <= half {
            (raw_angles[0], j)
        } else {
            // arm 2 walks back out: mirror the index
            (raw_angles[1], len - j + 1)
        };
        let theta = aspect_corrected(raw, scale);
        let r_max = boundary_radius(theta, n_y, n_z);
        let unit = r_max / half as f64;
        let r_lin = r_max - (step - 1) as f64 * unit - shift * unit;
        let r = (r_lin / r_max).powf(params.s) * (r_max / 2.0);
        angles.push(theta);
        boundary.push(r_max);
        radii.push(r);
    }
    Ok(Leaflet {
        index,
        raw_angles,
        angles,
        boundary,
        radii,
    })
}

pub fn generate_opra(params: &OpraParams) -> Result<SamplingPattern> {
    let grid = params.validate()?;
    let len = params.leaflet_len;
    let mut samples = Vec::with_capacity(params.total());
    for l in 1..=params.leaflet_count() {
        let leaflet = leaflet_geometry(l, params)?;
        for (j, (&r, &theta)) in leaflet.radii.iter().zip(&leaflet.angles).enumerate() {
            let order = (l - 1) * len + j + 1;
            let (ky, kz) = polar_to_grid(r, theta, &grid);
            samples.push(Sample {
                encoding: 1,
                order,
                frame: order.div_ceil(params.lines_per_frame),
                ky,
                kz,
            });
        }
    }
    SamplingPattern::new(grid, MethodParams::Opra(params.clone()), samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_leaflet() {
        let p = OpraParams::default();
        let lf = leaflet_geometry(1, &p).unwrap();
        assert_eq!(lf.raw_angles[0], 0.0);
        assert!((lf.raw_angles[1] - 1.679_81).abs() < 1e-5);
        let expected = [48.0, 24.576, 10.368, 3.072, 0.384];
        for (r, e) in lf.radii[..5].iter().zip(expected) {
            assert!((r - e).abs() < 1e-9, "{r} vs {e}");
        }
        assert!(lf.angles[..5].iter().all(|&a| a == 0.0));
        assert_eq!(lf.boundary[0], 96.0);
        // arm 2 ascends
        assert!(lf.radii[5..].windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn second_leaflet_angle() {
        let lf = leaflet_geometry(2, &OpraParams::default()).unwrap();
        assert!((lf.raw_angles[0] - 1.941_61).abs() < 1e-5);
        assert!((lf.angles[0] - 2.127_294).abs() < 1e-6);
    }

    #[test]
    fn first_sample_clips_to_edge() {
        let pat = generate_opra(&OpraParams::default()).unwrap();
        assert_eq!(pat.len(), 2400);
        let s = pat.samples()[0];
        assert_eq!((s.ky, s.kz), (96, 31));
        assert!(pat.samples()[..30].iter().all(|s| s.frame == 1));
        assert_eq!(pat.samples()[30].frame, 2);
    }

    #[test]
    fn rejects_bad_leaflets() {
        let odd = OpraParams {
            leaflet_len: 7,
            ..OpraParams::default()
        };
        assert!(generate_opra(&odd).is_err());
        let nondividing = OpraParams {
            leaflet_len: 14,
            ..OpraParams::default()
        };
        assert!(generate_opra(&nondividing).is_err());
        assert!(leaflet_geometry(0, &OpraParams::default()).is_err());
    }

    #[test]
    fn aspect_correction_keeps_half_plane() {
        for k in 0..64 {
            let t = k as f64 * TAU / 64.0;
            let c = aspect_corrected(t, 0.625);
            assert_eq!(c.sin().signum() * t.sin().signum() >= 0.0, true);
            assert_eq!(c.cos().signum() * t.cos().signum() >= 0.0, true);
        }
    }
}
