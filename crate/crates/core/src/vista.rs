//! VISTA: variable-density ky–t sampling by Riesz-energy minimization.
//!
//! Every sample carries a fixed frame; only its ky coordinate moves. The
//! energy of a configuration is
//!
//! ```text
//! E = ½ Σ_i Σ_{j≠i} c(i)·c(j) / (Δky² + w·Δt²)^(β/2)
//! ```
//!
//! with `c(ky) = 1 − log10(s)·exp(−(ky − N/2 − 1)² / 2σ²)`, so samples near
//! the center repel less and pack more densely.
//!
//! Descent starts from a GRO layout, follows the gradient of the distance
//! term with `c` frozen for the iteration, and accepts a step only if the
//! full energy drops (backtracking by halving from one grid unit).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::gro::{continuous_frames, GroParams};
use crate::pattern::{order_acquisition, GridSpec, MethodParams, Sample, SamplingPattern};

const MIN_STEP: f64 = 1e-6;
const REL_TOL: f64 = 1e-6;
const COINCIDENT: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct VistaParams {
    pub pe: usize,
    pub frames: usize,
    pub lines_per_frame: usize,
    /// Extent of variable density, in `[1, 10]`.
    pub s: f64,
    /// Width of the high-density region.
    pub sigma: f64,
    /// Scaling of the time axis relative to ky.
    pub w: f64,
    /// Norm exponent.
    pub beta: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl VistaParams {
    /// Default parameters for the given grid: `σ = N/6`, `w = max(N/(10n) + 0.25, 1)`.
    pub fn for_grid(pe: usize, frames: usize, lines_per_frame: usize) -> Self {
        let n = pe as f64;
        VistaParams {
            pe,
            frames,
            lines_per_frame,
            s: 1.6,
            sigma: n / 6.0,
            w: (n / (10.0 * lines_per_frame.max(1) as f64) + 0.25).max(1.0),
            beta: 1.4,
            max_iters: 120,
            seed: 0,
        }
    }

    pub fn total(&self) -> usize {
        self.lines_per_frame * self.frames
    }

    pub fn validate(&self) -> Result<GridSpec> {
        let grid = GridSpec::planar(self.pe, self.frames, 1)?;
        if self.pe < 4 {
            return Err(invalid("pe", format!("grid size must be >= 4 (got {})", self.pe)));
        }
        if self.lines_per_frame < 1 {
            return Err(invalid("n", "lines per frame must be >= 1 (got 0)"));
        }
        if self.lines_per_frame > self.pe {
            return Err(Error::Infeasible(format!(
                "{} lines per frame exceed the {} available phase encodes",
                self.lines_per_frame, self.pe
            )));
        }
        if self.total() < 2 {
            return Err(invalid("n", "need at least two samples in total"));
        }
        if !(1.0..=10.0).contains(&self.s) {
            return Err(invalid("s", format!("must lie in [1, 10] (got {})", self.s)));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(invalid("sig", format!("must be > 0 (got {})", self.sigma)));
        }
        if !(self.w > 0.0) || !self.w.is_finite() {
            return Err(invalid("w", format!("must be > 0 (got {})", self.w)));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(invalid("beta", format!("must be > 0 (got {})", self.beta)));
        }
        Ok(grid)
    }
}

impl Default for VistaParams {
    fn default() -> Self {
        VistaParams::for_grid(160, 64, 12)
    }
}

/// Gaussian density weight `c(ky)`.
pub fn density_weight(ky: f64, params: &VistaParams) -> f64 {
    let d = ky - params.pe as f64 / 2.0 - 1.0;
    1.0 - params.s.log10() * (-(d * d) / (2.0 * params.sigma * params.sigma)).exp()
}

/// Energy of `(ky, t)` samples with the weights of `params`.
pub fn riesz_energy(samples: &[(f64, f64)], params: &VistaParams) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::Domain("energy needs at least two samples".into()));
    }
    let ky: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let t: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let c: Vec<f64> = ky.iter().map(|&k| density_weight(k, params)).collect();
    weighted_energy(&ky, &t, &c, params.w, params.beta)
}

/// Energy with explicit per-sample weights.
pub fn weighted_energy(ky: &[f64], t: &[f64], weights: &[f64], w: f64, beta: f64) -> Result<f64> {
    let expo = -beta / 2.0;
    let mut total = 0.0;
    for i in 0..ky.len() {
        let mut row = 0.0;
        for j in i + 1..ky.len() {
            let dy = ky[i] - ky[j];
            let dt = t[i] - t[j];
            let d2 = dy * dy + w * dt * dt;
            if d2 < COINCIDENT * COINCIDENT {
                return Err(Error::Singular(i, j));
            }
            row += weights[j] * d2.powf(expo);
        }
        total += weights[i] * row;
    }
    Ok(total)
}

/// Gradient of [`weighted_energy`] with respect to each ky, weights held fixed.
pub fn distance_gradient(ky: &[f64], t: &[f64], weights: &[f64], w: f64, beta: f64) -> Vec<f64> {
    let expo = -beta / 2.0 - 1.0;
    let mut grad = vec![0.0; ky.len()];
    for i in 0..ky.len() {
        let mut gi = 0.0;
        for j in i + 1..ky.len() {
            let dy = ky[i] - ky[j];
            let dt = t[i] - t[j];
            let d2 = dy * dy + w * dt * dt;
            let term = beta * weights[i] * weights[j] * d2.powf(expo) * dy;
            gi -= term;
            grad[j] += term;
        }
        grad[i] += gi;
    }
    grad
}

/// Continuous configuration during descent.
#[derive(Clone, Debug, PartialEq)]
pub struct VistaState {
    /// Real-valued ky per sample, within `[1, N]`.
    pub ky: Vec<f64>,
    /// Fixed 1-based frame per sample.
    pub frame: Vec<usize>,
    pub energy: f64,
}

impl VistaState {
    pub fn frame_counts(&self, frames: usize) -> Vec<usize> {
        let mut counts = vec![0; frames];
        for &f in &self.frame {
            counts[f - 1] += 1;
        }
        counts
    }
}

#[derive(Clone, Debug)]
pub struct VistaSolver {
    params: VistaParams,
    grid: GridSpec,
    times: Vec<f64>,
    state: VistaState,
    initial_energy: f64,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl VistaSolver {
    pub fn new(params: &VistaParams) -> Result<Self> {
        let grid = params.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let phase: f64 = rng.gen();
        let seed_layout = GroParams {
            pe: params.pe,
            frames: params.frames,
            lines_per_frame: params.lines_per_frame,
            encodings: 1,
            s: params.s.min(params.pe as f64 / params.lines_per_frame as f64),
            alpha: 3.0,
            tau: 1,
        };
        let mut ky = Vec::with_capacity(params.total());
        let mut frame = Vec::with_capacity(params.total());
        for (t, positions) in continuous_frames(&seed_layout, phase)?.into_iter().enumerate() {
            for p in positions {
                ky.push(p.clamp(1.0, params.pe as f64));
                frame.push(t + 1);
            }
        }
        let times: Vec<f64> = frame.iter().map(|&f| f as f64).collect();
        let energy = Self::energy_of(params, &ky, &times)?;
        Ok(VistaSolver {
            params: params.clone(),
            grid,
            times,
            state: VistaState { ky, frame, energy },
            initial_energy: energy,
            trace: vec![energy],
            iterations: 0,
            converged: false,
        })
    }

    fn energy_of(params: &VistaParams, ky: &[f64], times: &[f64]) -> Result<f64> {
        let c: Vec<f64> = ky.iter().map(|&k| density_weight(k, params)).collect();
        weighted_energy(ky, times, &c, params.w, params.beta)
    }

    pub fn state(&self) -> &VistaState {
        &self.state
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn is_converged(&self) -> bool {
        self.converged
    }

    /// Energies of the initial and every accepted configuration.
    pub fn energy_trace(&self) -> &[f64] {
        &self.trace
    }

    /// One outer iteration. Returns whether a move was accepted.
    pub fn step(&mut self) -> Result<bool> {
        if self.converged {
            return Ok(false);
        }
        let p = &self.params;
        let ky = &self.state.ky;
        let c: Vec<f64> = ky.iter().map(|&k| density_weight(k, p)).collect();
        let grad = distance_gradient(ky, &self.times, &c, p.w, p.beta);
        let scale = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
        if !(scale > 0.0) || !scale.is_finite() {
            self.converged = true;
            return Ok(false);
        }

        let upper = p.pe as f64;
        let mut step = 1.0;
        while step >= MIN_STEP {
            let trial: Vec<f64> = ky
                .iter()
                .zip(&grad)
                .map(|(k, g)| (k - step * g / scale).clamp(1.0, upper))
                .collect();
            match Self::energy_of(p, &trial, &self.times) {
                Ok(e) if e < self.state.energy => {
                    let drop = (self.state.energy - e) / self.state.energy;
                    self.state.ky = trial;
                    self.state.energy = e;
                    self.trace.push(e);
                    self.iterations += 1;
                    if drop < REL_TOL {
                        self.converged = true;
                    }
                    return Ok(true);
                }
                Ok(_) | Err(Error::Singular(..)) => step /= 2.0,
                Err(other) => return Err(other),
            }
        }
        self.converged = true;
        Ok(false)
    }

    /// Iterate up to `max_iters` times, then snap onto the grid.
    pub fn run(mut self) -> Result<VistaOutcome> {
        while self.iterations < self.params.max_iters && !self.converged {
            if !self.step()? {
                break;
            }
        }
        self.finish()
    }

    fn finish(self) -> Result<VistaOutcome> {
        let p = &self.params;
        let snapped = snap_to_grid(&self.state, p.pe, p.frames);
        let ky_f: Vec<f64> = snapped
            .iter()
            .flat_map(|f| f.iter().map(|&k| k as f64))
            .collect();
        let t_f: Vec<f64> = snapped
            .iter()
            .enumerate()
            .flat_map(|(t, f)| std::iter::repeat((t + 1) as f64).take(f.len()))
            .collect();
        let snapped_energy = Self::energy_of(p, &ky_f, &t_f)?;
        let samples = order_acquisition(&snapped)
            .into_iter()
            .enumerate()
            .map(|(i, (frame, ky))| Sample {
                encoding: 1,
                order: i + 1,
                frame,
                ky,
                kz: 1,
            })
            .collect();
        let pattern = SamplingPattern::new(self.grid, MethodParams::Vista(p.clone()), samples)?;
        Ok(VistaOutcome {
            pattern,
            initial_energy: self.initial_energy,
            final_energy: self.state.energy,
            snapped_energy,
            energy_trace: self.trace,
            iterations: self.iterations,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VistaOutcome {
    pub pattern: SamplingPattern,
    /// Energy of the continuous starting layout.
    pub initial_energy: f64,
    /// Energy of the continuous layout when descent stopped.
    pub final_energy: f64,
    /// Energy of the integer pattern after snapping.
    pub snapped_energy: f64,
    pub energy_trace: Vec<f64>,
    pub iterations: usize,
}

/// Round each position to the nearest index; a sample landing on an index
/// already taken in its frame moves to the closest free index instead.
fn snap_to_grid(state: &VistaState, pe: usize, frames: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); frames];
    let mut taken = vec![vec![false; pe + 1]; frames];
    for (&x, &f) in state.ky.iter().zip(&state.frame) {
        let row = &mut taken[f - 1];
        let k = nearest_free(x, row, pe);
        row[k] = true;
        out[f - 1].push(k);
    }
    out
}

fn nearest_free(x: f64, taken: &[bool], pe: usize) -> usize {
    let mut best: Option<(f64, usize)> = None;
    let first = (x.round() as usize).clamp(1, pe);
    if !taken[first] {
        return first;
    }
    for k in 1..=pe {
        if taken[k] {
            continue;
        }
        let d = (k as f64 - x).abs();
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, k));
        }
    }
    // n ≤ N guarantees a free index
    best.map(|(_, k)| k).unwrap_or(first)
}

pub fn generate_vista(params: &VistaParams) -> Result<SamplingPattern> {
    Ok(VistaSolver::new(params)?.run()?.pattern)
}
