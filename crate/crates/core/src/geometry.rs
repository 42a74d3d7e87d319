//! Golden-ratio constants, the variable-density stretch map and polar
//! conversion onto the Cartesian grid.

use crate::error::{invalid, Error, Result};
use crate::pattern::GridSpec;

/// (1 + √5) / 2
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Fraction of the small grid advanced per step: `1 / (g + tau - 1)`.
///
/// `tau = 1` gives the golden fraction 1/g; larger `tau` gives the
/// "tiny golden" variants.
pub fn golden_fraction(tau: u32) -> Result<f64> {
    if tau < 1 {
        return Err(invalid("tau", "must be a positive integer (got 0)"));
    }
    Ok(1.0 / (GOLDEN_RATIO + f64::from(tau) - 1.0))
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(x: f64) -> f64 {
    x - x.floor()
}

// Raw stretch values that land within this distance of an integer are
// treated as that integer before the final bracket.
const SNAP_TOL: f64 = 1e-9;

/// Nonlinear map from the small grid `[1, N_s]` onto the full grid `[1, N]`.
///
/// The displacement from the small-grid center `c = (N_s + 1) / 2` is grown by
/// `κ·|c − k|^α`, with κ chosen so that both endpoints land exactly on 1
/// and N. The result is rounded to the nearest index for odd N and rounded up
/// for even N.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchMap {
    small: usize,
    full: usize,
    alpha: f64,
    kappa: f64,
}

impl StretchMap {
    pub fn new(full: usize, s: f64, alpha: f64) -> Result<Self> {
        if full < 4 {
            return Err(invalid("pe", format!("grid size must be >= 4 (got {full})")));
        }
        if !(s >= 1.0) || !s.is_finite() {
            return Err(invalid("s", format!("must be >= 1 (got {s})")));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(invalid("alph", format!("must be > 0 (got {alpha})")));
        }
        let small = (full as f64 / s).round() as usize;
        if small < 2 {
            return Err(invalid(
                "s",
                format!("round({full}/{s}) = {small} leaves fewer than 2 small-grid lines"),
            ));
        }
        let half_gap = (full - small) as f64 / 2.0;
        let half_span = (small - 1) as f64 / 2.0;
        let kappa = half_gap / half_span.powf(alpha);
        Ok(StretchMap {
            small,
            full,
            alpha,
            kappa,
        })
    }

    /// N_s
    pub fn small_size(&self) -> usize {
        self.small
    }

    /// N
    pub fn full_size(&self) -> usize {
        self.full
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Unrounded image of `k_s`; defined for any real argument.
    pub fn raw(&self, k_s: f64) -> f64 {
        let center = (self.small as f64 + 1.0) / 2.0;
        let d = center - k_s;
        k_s - self.kappa * d.signum() * d.abs().powf(self.alpha)
            + (self.full - self.small) as f64 / 2.0
    }

    pub fn apply(&self, k_s: f64) -> Result<usize> {
        if !(1.0..=self.small as f64).contains(&k_s) {
            return Err(Error::Domain(format!(
                "small-grid index {k_s} outside [1, {}]",
                self.small
            )));
        }
        Ok(self.bracket(self.raw(k_s)))
    }

    /// Map a position on the circular small grid `[0, N_s)` to its 1-based
    /// small-grid coordinate in `[1, N_s)`.
    ///
    /// The circle is scaled by `(N_s − 1) / N_s` so that the wrap point sits
    /// between the two endpoints of the line.
    pub fn from_circle(&self, p: f64) -> f64 {
        let n_s = self.small as f64;
        1.0 + p.rem_euclid(n_s) * (n_s - 1.0) / n_s
    }

    /// Full-grid index of a circular small-grid position.
    pub fn apply_circle(&self, p: f64) -> usize {
        self.bracket(self.raw(self.from_circle(p)))
    }

    fn bracket(&self, raw: f64) -> usize {
        let nearest = raw.round();
        let k = if (raw - nearest).abs() < SNAP_TOL || self.full % 2 == 1 {
            nearest
        } else {
            raw.ceil()
        };
        k.clamp(1.0, self.full as f64) as usize
    }
}

/// Convert a displacement from the k-space origin to grid indices,
/// rounding half away from zero and clipping into the grid.
pub fn offset_to_grid(dy: f64, dz: f64, grid: &GridSpec) -> (usize, usize) {
    let ky = (grid.center_y() as f64 + dy.round()).clamp(1.0, grid.n_y() as f64);
    let kz = (grid.center_z() as f64 + dz.round()).clamp(1.0, grid.n_z() as f64);
    (ky as usize, kz as usize)
}

/// Polar `(r, θ)` about the grid center, θ measured from +ky toward +kz.
pub fn polar_to_grid(r: f64, theta: f64, grid: &GridSpec) -> (usize, usize) {
    offset_to_grid(r * theta.cos(), r * theta.sin(), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_fraction_values() {
        assert!((golden_fraction(1).unwrap() - 0.618_033_988_7).abs() < 1e-10);
        assert!((golden_fraction(2).unwrap() - 0.381_966_011_3).abs() < 1e-10);
        assert!(golden_fraction(0).is_err());
        let mut prev = 1.0;
        for tau in 1..200 {
            let g = golden_fraction(tau).unwrap();
            assert!(g > 0.0 && g < prev);
            prev = g;
        }
    }

    #[test]
    fn stretch_map_defaults() {
        let m = StretchMap::new(160, 2.2, 3.0).unwrap();
        assert_eq!(m.small_size(), 73);
        assert!((m.kappa() - 43.5 / 46656.0).abs() < 1e-15);
        assert_eq!(m.apply(1.0).unwrap(), 1);
        assert_eq!(m.apply(73.0).unwrap(), 160);
        assert_eq!(m.apply(37.0).unwrap(), 81);
        assert!((m.raw(37.0) - 80.5).abs() < 1e-12);
        assert!(m.apply(0.5).is_err());
        assert!(m.apply(73.5).is_err());

        assert_eq!(StretchMap::new(120, 2.2, 3.0).unwrap().small_size(), 55);

        let id = StretchMap::new(160, 1.0, 3.0).unwrap();
        assert_eq!(id.small_size(), 160);
        assert_eq!(id.kappa(), 0.0);
        for k in 1..=160 {
            assert_eq!(id.apply(k as f64).unwrap(), k);
        }
    }

    #[test]
    fn stretch_map_rejects_bad_input() {
        assert!(StretchMap::new(3, 1.0, 1.0).is_err());
        assert!(StretchMap::new(160, 0.5, 1.0).is_err());
        assert!(StretchMap::new(160, 2.0, 0.0).is_err());
        assert!(StretchMap::new(160, 2.0, f64::NAN).is_err());
        assert!(StretchMap::new(4, 3.0, 1.0).is_err());
    }

    #[test]
    fn odd_grid_rounds_to_nearest() {
        // N = 9, s = 1 → identity raw map; 4.5 rounds up, 4.4 rounds down.
        let m = StretchMap::new(9, 1.0, 2.0).unwrap();
        assert_eq!(m.apply(4.5).unwrap(), 5);
        assert_eq!(m.apply(4.4).unwrap(), 4);
        let even = StretchMap::new(10, 1.0, 2.0).unwrap();
        assert_eq!(even.apply(4.1).unwrap(), 5);
    }

    #[test]
    fn endpoints_and_monotonicity_exhaustive() {
        for full in 4..=512usize {
            for s in [1.0, 1.5, 2.2, 3.0] {
                for alpha in [1.0, 2.0, 3.0] {
                    let Ok(m) = StretchMap::new(full, s, alpha) else {
                        continue;
                    };
                    let n_s = m.small_size();
                    assert_eq!(m.apply(1.0).unwrap(), 1, "N={full} s={s} a={alpha}");
                    assert_eq!(m.apply(n_s as f64).unwrap(), full, "N={full} s={s} a={alpha}");
                    let mut prev = 0;
                    // quarter-steps over the small grid
                    for q in 0..=(4 * (n_s - 1)) {
                        let k = m.apply(1.0 + q as f64 / 4.0).unwrap();
                        assert!(k >= prev && (1..=full).contains(&k));
                        prev = k;
                    }
                }
            }
        }
    }

    #[test]
    fn circle_coordinates_stay_in_domain() {
        let m = StretchMap::new(160, 2.2, 3.0).unwrap();
        assert_eq!(m.from_circle(0.0), 1.0);
        assert!(m.from_circle(72.999_999) < 73.0);
        assert_eq!(m.from_circle(73.0), 1.0);
        assert_eq!(m.apply_circle(0.0), 1);
    }

    #[test]
    fn polar_examples() {
        let g = GridSpec::new(96, 60, 1, 1).unwrap();
        assert_eq!(polar_to_grid(0.0, 1.234, &g), (49, 31));
        assert_eq!(polar_to_grid(10.0, 0.0, &g), (59, 31));
        assert_eq!(polar_to_grid(48.0, 0.0, &g), (96, 31));
        assert_eq!(polar_to_grid(0.5, 0.0, &g), (50, 31));
        assert_eq!(polar_to_grid(0.5, std::f64::consts::PI, &g), (48, 31));
    }

    proptest! {
        #[test]
        fn polar_stays_in_bounds(r in 0.0f64..400.0, theta in -10.0f64..10.0,
                                 ny in 2usize..100, nz in 1usize..100) {
            let g = GridSpec::new(ny, nz, 1, 1).unwrap();
            let (ky, kz) = polar_to_grid(r, theta, &g);
            prop_assert!((1..=ny).contains(&ky));
            prop_assert!((1..=nz).contains(&kz));
        }
    }
}
