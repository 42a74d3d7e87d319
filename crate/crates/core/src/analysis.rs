//! Structural statistics of a pattern and retrospective re-binning.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pattern::{relabel_frames, SamplingPattern};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JumpStats {
    pub max: f64,
    pub mean: f64,
    pub std: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport {
    /// `per_frame_counts[e][t]` = samples of encoding `e + 1` in frame `t + 1`.
    pub per_frame_counts: Vec<Vec<usize>>,
    /// Counts per ky for ky–t patterns, or per unit-width ring about the
    /// grid center for ky–kz patterns.
    pub density_histogram: Vec<u64>,
    /// Number of grid cells whose center falls in each ring (ky–kz only).
    pub ring_cells: Option<Vec<u64>>,
    /// Consecutive-sample distance per encoding, in acquisition order.
    pub jump_stats: Vec<JumpStats>,
    pub coverage_fraction: f64,
    pub collision_count: usize,
    pub total_samples: usize,
}

impl StatsReport {
    /// Ring counts divided by ring area (ky–kz patterns).
    pub fn radial_density(&self) -> Option<Vec<f64>> {
        let cells = self.ring_cells.as_ref()?;
        Some(
            self.density_histogram
                .iter()
                .zip(cells)
                .map(|(&n, &a)| if a == 0 { 0.0 } else { n as f64 / a as f64 })
                .collect(),
        )
    }
}

fn ring_of(ky: usize, kz: usize, cy: usize, cz: usize) -> usize {
    let dy = ky as f64 - cy as f64;
    let dz = kz as f64 - cz as f64;
    (dy * dy + dz * dz).sqrt().floor() as usize
}

fn jumps(pattern: &SamplingPattern, encoding: usize) -> JumpStats {
    let seq = pattern.encoding(encoding);
    let d: Vec<f64> = seq
        .windows(2)
        .map(|w| {
            let dy = w[1].ky as f64 - w[0].ky as f64;
            let dz = w[1].kz as f64 - w[0].kz as f64;
            (dy * dy + dz * dz).sqrt()
        })
        .collect();
    if d.is_empty() {
        return JumpStats::default();
    }
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    JumpStats {
        max: d.iter().copied().fold(0.0, f64::max),
        mean,
        std: var.sqrt(),
    }
}

pub fn pattern_stats(pattern: &SamplingPattern) -> Result<StatsReport> {
    if pattern.is_empty() {
        return Err(Error::Domain("empty pattern".into()));
    }
    let g = pattern.grid();
    let mut per_frame_counts = vec![vec![0; g.frames()]; g.encodings()];
    let mut cells = HashSet::new();
    let mut tuples = HashSet::new();
    for s in pattern.samples() {
        per_frame_counts[s.encoding - 1][s.frame - 1] += 1;
        cells.insert((s.ky, s.kz));
        tuples.insert((s.ky, s.kz, s.frame, s.encoding));
    }

    let (density_histogram, ring_cells) = if g.is_volumetric() {
        let (cy, cz) = (g.center_y(), g.center_z());
        let rings = (1..=g.n_y())
            .flat_map(|y| (1..=g.n_z()).map(move |z| (y, z)))
            .map(|(y, z)| ring_of(y, z, cy, cz))
            .max()
            .unwrap_or(0)
            + 1;
        let mut area = vec![0u64; rings];
        for y in 1..=g.n_y() {
            for z in 1..=g.n_z() {
                area[ring_of(y, z, cy, cz)] += 1;
            }
        }
        let mut hist = vec![0u64; rings];
        for s in pattern.samples() {
            hist[ring_of(s.ky, s.kz, cy, cz)] += 1;
        }
        (hist, Some(area))
    } else {
        let mut hist = vec![0u64; g.n_y()];
        for s in pattern.samples() {
            hist[s.ky - 1] += 1;
        }
        (hist, None)
    };

    Ok(StatsReport {
        per_frame_counts,
        density_histogram,
        ring_cells,
        jump_stats: (1..=g.encodings()).map(|e| jumps(pattern, e)).collect(),
        coverage_fraction: cells.len() as f64 / (g.n_y() * g.n_z()) as f64,
        collision_count: pattern.len() - tuples.len(),
        total_samples: pattern.len(),
    })
}

/// Cut each encoding's acquisition stream of a ky–kz pattern into frames of
/// `lines` consecutive samples.
pub fn rebin_3d(pattern: &SamplingPattern, lines: usize) -> Result<SamplingPattern> {
    if !pattern.grid().is_volumetric() {
        return Err(Error::Domain(
            "rebin_3d expects a ky–kz pattern; use cava::rebin_2d".into(),
        ));
    }
    relabel_frames(pattern, lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gro::{generate_gro, GroParams};
    use crate::opra::{generate_opra, OpraParams};
    use crate::pattern::{GridSpec, Method, MethodParams, Sample};

    fn planar(samples: Vec<Sample>, n_y: usize, frames: usize) -> SamplingPattern {
        SamplingPattern::new(
            GridSpec::planar(n_y, frames, 1).unwrap(),
            MethodParams::defaults(Method::Gro),
            samples,
        )
        .unwrap()
    }

    fn s(order: usize, frame: usize, ky: usize) -> Sample {
        Sample {
            encoding: 1,
            order,
            frame,
            ky,
            kz: 1,
        }
    }

    #[test]
    fn gro_frame_counts() {
        let st = pattern_stats(&generate_gro(&GroParams::default()).unwrap()).unwrap();
        assert!(st.per_frame_counts[0].iter().all(|&c| c == 12));
        assert_eq!(st.density_histogram.iter().sum::<u64>(), 768);
        assert_eq!(st.collision_count, 0);
        assert!(st.coverage_fraction > 0.0 && st.coverage_fraction <= 1.0);
    }

    #[test]
    fn full_coverage_and_collisions() {
        let full = planar((1..=4).map(|k| s(k, 1, k)).collect(), 4, 1);
        let st = pattern_stats(&full).unwrap();
        assert_eq!(st.coverage_fraction, 1.0);
        assert_eq!(st.collision_count, 0);
        assert_eq!(st.jump_stats[0].max, 1.0);
        assert_eq!(st.jump_stats[0].std, 0.0);

        let twice = planar(vec![s(1, 1, 2), s(2, 1, 2)], 4, 1);
        let st = pattern_stats(&twice).unwrap();
        assert_eq!(st.collision_count, 1);
        assert_eq!(st.coverage_fraction, 0.25);
        // same line in different frames is not a collision
        let apart = planar(vec![s(1, 1, 2), s(2, 2, 2)], 4, 2);
        assert_eq!(pattern_stats(&apart).unwrap().collision_count, 0);
    }

    #[test]
    fn ring_areas_cover_grid() {
        let st = pattern_stats(&generate_opra(&OpraParams::default()).unwrap()).unwrap();
        let area = st.ring_cells.clone().unwrap();
        assert_eq!(area.iter().sum::<u64>(), 96 * 60);
        assert_eq!(area[0], 1);
        assert_eq!(st.density_histogram.iter().sum::<u64>(), 2400);
        assert_eq!(st.radial_density().unwrap().len(), area.len());
    }

    #[test]
    fn rebin_opra() {
        let pat = generate_opra(&OpraParams::default()).unwrap();
        assert_eq!(rebin_3d(&pat, 30).unwrap().grid().frames(), 80);
        let leaflets = rebin_3d(&pat, 10).unwrap();
        assert_eq!(leaflets.grid().frames(), 240);
        assert_eq!(rebin_3d(&pat, 2400).unwrap().grid().frames(), 1);
        assert!(rebin_3d(&pat, 0).is_err());
        assert!(rebin_3d(&pat, 2401).is_err());
        let planar = generate_gro(&GroParams::default()).unwrap();
        assert!(rebin_3d(&planar, 4).is_err());
    }
}
