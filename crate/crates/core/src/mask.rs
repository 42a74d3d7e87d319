//! Count grids derived from a pattern.

use crate::error::{Error, Result};
use crate::pattern::SamplingPattern;

/// Row-major grid of sample counts. Row `r` is ky = r + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    rows: usize,
    cols: usize,
    counts: Vec<u32>,
}

/// Inclusive acquisition-order range `[first, last]`.
pub type Window = (usize, usize);

fn resolve_window(pattern: &SamplingPattern, window: Option<Window>) -> Result<Window> {
    let m = pattern.per_encoding();
    let (a, b) = window.unwrap_or((1, m));
    if a < 1 || a > b || b > m {
        return Err(Error::Domain(format!(
            "window {a}..{b} outside acquisition range 1..{m}"
        )));
    }
    Ok((a, b))
}

fn check_encoding(pattern: &SamplingPattern, encoding: usize) -> Result<()> {
    let e = pattern.grid().encodings();
    if encoding < 1 || encoding > e {
        return Err(Error::Domain(format!("encoding {encoding} outside 1..{e}")));
    }
    Ok(())
}

impl Mask {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mask {
            rows,
            cols,
            counts: vec![0; rows * cols],
        }
    }

    /// ky × frame counts of one encoding.
    pub fn kyt(pattern: &SamplingPattern, encoding: usize, window: Option<Window>) -> Result<Self> {
        check_encoding(pattern, encoding)?;
        let (a, b) = resolve_window(pattern, window)?;
        let g = pattern.grid();
        let mut m = Mask::zeros(g.n_y(), g.frames());
        for s in &pattern.encoding(encoding)[a - 1..b] {
            m.bump(s.ky - 1, s.frame - 1);
        }
        Ok(m)
    }

    /// ky × kz counts of one encoding, aggregated over frames.
    pub fn kykz(pattern: &SamplingPattern, encoding: usize, window: Option<Window>) -> Result<Self> {
        check_encoding(pattern, encoding)?;
        let (a, b) = resolve_window(pattern, window)?;
        let g = pattern.grid();
        let mut m = Mask::zeros(g.n_y(), g.n_z());
        for s in &pattern.encoding(encoding)[a - 1..b] {
            m.bump(s.ky - 1, s.kz - 1);
        }
        Ok(m)
    }

    /// ky against acquisition order: one column per sample in the window.
    pub fn order_trace(pattern: &SamplingPattern, encoding: usize, window: Option<Window>) -> Result<Self> {
        check_encoding(pattern, encoding)?;
        let (a, b) = resolve_window(pattern, window)?;
        let mut m = Mask::zeros(pattern.grid().n_y(), b - a + 1);
        for (col, s) in pattern.encoding(encoding)[a - 1..b].iter().enumerate() {
            m.bump(s.ky - 1, col);
        }
        Ok(m)
    }

    fn bump(&mut self, row: usize, col: usize) {
        self.counts[row * self.cols + col] += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.counts[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.counts[row * self.cols..(row + 1) * self.cols]
    }

    pub fn max_count(&self) -> u32 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn nonzero(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    /// Sampled-at-least-once view.
    pub fn binary(&self) -> Mask {
        Mask {
            rows: self.rows,
            cols: self.cols,
            counts: self.counts.iter().map(|&c| u32::from(c > 0)).collect(),
        }
    }

    pub fn column_sum(&self, col: usize) -> u64 {
        (0..self.rows).map(|r| u64::from(self.get(r, col))).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gro::{generate_gro, GroParams};

    #[test]
    fn gro_masks() {
        let pat = generate_gro(&GroParams::default()).unwrap();
        let m = Mask::kyt(&pat, 1, None).unwrap();
        assert_eq!((m.rows(), m.cols()), (160, 64));
        assert_eq!(m.total(), 768);
        for t in 0..64 {
            assert_eq!(m.column_sum(t), 12);
        }
        let trace = Mask::order_trace(&pat, 1, Some((1, 120))).unwrap();
        assert_eq!((trace.rows(), trace.cols()), (160, 120));
        assert_eq!(trace.total(), 120);
        assert!(Mask::kyt(&pat, 1, Some((0, 3))).is_err());
        assert!(Mask::kyt(&pat, 1, Some((5, 4))).is_err());
        assert!(Mask::kyt(&pat, 1, Some((1, 769))).is_err());
        assert!(Mask::kyt(&pat, 2, None).is_err());
    }
}
