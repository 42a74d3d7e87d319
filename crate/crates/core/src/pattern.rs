//! Sample containers shared by every generator.
//!
//! All indices are 1-based: `ky ∈ [1, n_y]`, `kz ∈ [1, n_z]`,
//! `frame ∈ [1, frames]`, `encoding ∈ [1, encodings]`.

use std::fmt;

use crate::cava::CavaParams;
use crate::error::{invalid, Error, Result};
use crate::gro::GroParams;
use crate::opra::OpraParams;
use crate::pr4d::Pr4dParams;
use crate::vista::VistaParams;

/// Extent of the sampled grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    n_y: usize,
    n_z: usize,
    frames: usize,
    encodings: usize,
}

impl GridSpec {
    pub fn new(n_y: usize, n_z: usize, frames: usize, encodings: usize) -> Result<Self> {
        if n_y < 2 {
            return Err(invalid("pe", format!("phase-encode size must be >= 2 (got {n_y})")));
        }
        if n_z < 1 {
            return Err(invalid("pe", "partition-encode size must be >= 1 (got 0)"));
        }
        if frames < 1 {
            return Err(invalid("fr", "number of frames must be >= 1 (got 0)"));
        }
        if encodings < 1 {
            return Err(invalid("e", "number of encodings must be >= 1 (got 0)"));
        }
        Ok(GridSpec {
            n_y,
            n_z,
            frames,
            encodings,
        })
    }

    /// A ky–t grid: `n_z` is fixed at one.
    pub fn planar(n_y: usize, frames: usize, encodings: usize) -> Result<Self> {
        Self::new(n_y, 1, frames, encodings)
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn n_z(&self) -> usize {
        self.n_z
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn encodings(&self) -> usize {
        self.encodings
    }

    pub fn is_volumetric(&self) -> bool {
        self.n_z > 1
    }

    /// Grid index of the k-space origin along ky.
    pub fn center_y(&self) -> usize {
        self.n_y / 2 + 1
    }

    /// Grid index of the k-space origin along kz (1 for planar grids).
    pub fn center_z(&self) -> usize {
        self.n_z / 2 + 1
    }

    pub(crate) fn with_frames(&self, frames: usize) -> Self {
        GridSpec { frames, ..*self }
    }
}

/// One readout line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sample {
    pub encoding: usize,
    /// Position in the acquisition sequence of its encoding, starting at 1.
    pub order: usize,
    pub frame: usize,
    pub ky: usize,
    pub kz: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Vista,
    Gro,
    Cava,
    Opra,
    Pr4d,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Vista,
        Method::Gro,
        Method::Cava,
        Method::Opra,
        Method::Pr4d,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Vista => "vista",
            Method::Gro => "gro",
            Method::Cava => "cava",
            Method::Opra => "opra",
            Method::Pr4d => "pr4d",
        }
    }

    pub fn parse(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.as_str() == name)
    }

    /// OPRA and PR4D sample the ky–kz plane; the others sample ky–t.
    pub fn is_volumetric(&self) -> bool {
        matches!(self, Method::Opra | Method::Pr4d)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The parameter record a pattern was generated from.
#[derive(Clone, Debug, PartialEq)]
pub enum MethodParams {
    Vista(VistaParams),
    Gro(GroParams),
    Cava(CavaParams),
    Opra(OpraParams),
    Pr4d(Pr4dParams),
}

impl MethodParams {
    pub fn method(&self) -> Method {
        match self {
            MethodParams::Vista(_) => Method::Vista,
            MethodParams::Gro(_) => Method::Gro,
            MethodParams::Cava(_) => Method::Cava,
            MethodParams::Opra(_) => Method::Opra,
            MethodParams::Pr4d(_) => Method::Pr4d,
        }
    }

    /// Default parameters for `method`.
    pub fn defaults(method: Method) -> MethodParams {
        match method {
            Method::Vista => MethodParams::Vista(VistaParams::default()),
            Method::Gro => MethodParams::Gro(GroParams::default()),
            Method::Cava => MethodParams::Cava(CavaParams::default()),
            Method::Opra => MethodParams::Opra(OpraParams::default()),
            Method::Pr4d => MethodParams::Pr4d(Pr4dParams::default()),
        }
    }

    pub fn generate(&self) -> Result<SamplingPattern> {
        match self {
            MethodParams::Vista(p) => crate::vista::generate_vista(p),
            MethodParams::Gro(p) => crate::gro::generate_gro(p),
            MethodParams::Cava(p) => crate::cava::generate_cava(p),
            MethodParams::Opra(p) => crate::opra::generate_opra(p),
            MethodParams::Pr4d(p) => crate::pr4d::generate_pr4d(p),
        }
    }
}

/// An acquisition-ordered list of samples on a grid.
///
/// Samples are stored sorted by `(encoding, order)`; each encoding carries
/// the same number of samples, with orders `1..=M` and no gaps.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplingPattern {
    grid: GridSpec,
    params: MethodParams,
    samples: Vec<Sample>,
}

impl SamplingPattern {
    pub fn new(grid: GridSpec, params: MethodParams, mut samples: Vec<Sample>) -> Result<Self> {
        samples.sort_by_key(|s| (s.encoding, s.order));
        let e_count = grid.encodings();
        if samples.is_empty() || samples.len() % e_count != 0 {
            return Err(Error::Domain(format!(
                "{} samples cannot be split evenly over {} encodings",
                samples.len(),
                e_count
            )));
        }
        let per_encoding = samples.len() / e_count;
        for (idx, s) in samples.iter().enumerate() {
            let encoding = idx / per_encoding + 1;
            let order = idx % per_encoding + 1;
            if s.encoding != encoding || s.order != order {
                return Err(Error::Domain(format!(
                    "expected (encoding {encoding}, order {order}), found (encoding {}, order {})",
                    s.encoding, s.order
                )));
            }
            if !(1..=grid.n_y()).contains(&s.ky)
                || !(1..=grid.n_z()).contains(&s.kz)
                || !(1..=grid.frames()).contains(&s.frame)
            {
                return Err(Error::Domain(format!(
                    "sample {s:?} lies outside the {}x{} grid with {} frames",
                    grid.n_y(),
                    grid.n_z(),
                    grid.frames()
                )));
            }
        }
        Ok(SamplingPattern {
            grid,
            params,
            samples,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn params(&self) -> &MethodParams {
        &self.params
    }

    pub fn method(&self) -> Method {
        self.params.method()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Samples per encoding (M).
    pub fn per_encoding(&self) -> usize {
        self.samples.len() / self.grid.encodings()
    }

    /// The samples of one encoding, in acquisition order.
    pub fn encoding(&self, encoding: usize) -> &[Sample] {
        let m = self.per_encoding();
        if encoding == 0 || encoding > self.grid.encodings() {
            return &[];
        }
        &self.samples[(encoding - 1) * m..encoding * m]
    }
}

/// Reassign frames so that every `lines` consecutive samples of an encoding
/// form one frame. Samples and their order are untouched.
pub(crate) fn relabel_frames(pattern: &SamplingPattern, lines: usize) -> Result<SamplingPattern> {
    let m = pattern.per_encoding();
    if lines < 1 || lines > m {
        return Err(Error::Domain(format!(
            "rebin size must lie in [1, {m}] (got {lines})"
        )));
    }
    let frames = m.div_ceil(lines);
    let samples = pattern
        .samples()
        .iter()
        .map(|s| Sample {
            frame: s.order.div_ceil(lines),
            ..*s
        })
        .collect();
    SamplingPattern::new(
        pattern.grid().with_frames(frames),
        pattern.params().clone(),
        samples,
    )
}

/// Alternating traversal: odd frames ascending in ky, even frames descending.
///
/// `frames[t]` holds the ky values of frame `t + 1`. The result lists
/// `(frame, ky)` pairs frame by frame. Sorting is stable, so repeated ky
/// values keep their input order.
pub fn order_acquisition(frames: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(frames.iter().map(Vec::len).sum());
    for (idx, ky) in frames.iter().enumerate() {
        let frame = idx + 1;
        let mut sorted = ky.clone();
        if frame % 2 == 1 {
            sorted.sort();
        } else {
            sorted.sort_by(|a, b| b.cmp(a));
        }
        out.extend(sorted.into_iter().map(|k| (frame, k)));
    }
    out
}
