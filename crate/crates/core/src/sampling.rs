//! Reproducible random sampling split into independent batches.
//!
//! Every batch draws from its own ChaCha8 stream keyed by `(seed, batch)`,
//! so a batch produces the same numbers whether it runs first, last, or on
//! another thread. Reductions across batches use only `max` and "lowest
//! trial index", which makes parallel and sequential runs agree bit for bit.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::metric::{validate_frame, Frame};

/// Trials per batch.
pub const BATCH: usize = 1024;

/// Random frames with `|det|` below this are redrawn.
pub const MIN_FRAME_DET: f64 = 1e-3;

pub type SampleRng = ChaCha8Rng;

/// Generator for batch `batch` of a run keyed by `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Uniform point in `[-w, w]^dim`, written into `out`.
pub fn fill_box_point(rng: &mut SampleRng, w: f64, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = rng.random_range(-w..=w);
    }
}

pub fn box_point(rng: &mut SampleRng, dim: usize, w: f64) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    fill_box_point(rng, w, &mut v);
    v
}

/// A random frame of unit rows with `|det| ≥ 1e-3`.
pub fn random_frame(rng: &mut SampleRng, dim: usize) -> Frame {
    loop {
        let rows: Vec<Vec<f64>> = (0..dim).map(|_| sphere_point(rng, dim)).collect();
        if let Ok(frame) = validate_frame(rows, false) {
            if frame.det().abs() >= MIN_FRAME_DET {
                return frame;
            }
        }
    }
}

/// Random unit vector: a normalized point of the cube `[-1, 1]^dim`.
pub fn sphere_point(rng: &mut SampleRng, dim: usize) -> Vec<f64> {
    loop {
        let v = box_point(rng, dim, 1.0);
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-2 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Log-uniform weights in `[lo, hi]`.
pub fn random_weights(rng: &mut SampleRng, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..dim).map(|_| rng.random_range(a..=b).exp()).collect()
}

/// Result of running a trial function over many seeded trials.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub trials: usize,
    pub max_violation: f64,
    /// Lowest-index trial whose violation exceeded the tolerance, with the
    /// points it used.
    pub witness: Option<(usize, Vec<Vec<f64>>)>,
}

impl Sweep {
    fn empty() -> Self {
        Self {
            trials: 0,
            max_violation: 0.0,
            witness: None,
        }
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.trials += other.trials;
        self.max_violation = self.max_violation.max(other.max_violation);
        self.witness = match (self.witness, other.witness) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Run `count` trials. `trial` receives the batch generator, the global
/// trial index and a scratch buffer for the points it examines, and returns
/// the violation for that trial. NaN violations count as infinite.
pub fn sweep<F>(seed: u64, count: usize, tolerance: f64, parallel: bool, trial: F) -> Sweep
where
    F: Fn(&mut SampleRng, usize, &mut Vec<Vec<f64>>) -> f64 + Sync,
{
    sweep_range(seed, 0, count, tolerance, parallel, &trial)
}

/// Trials `start..end` of the run keyed by `seed`; `start` must be a
/// multiple of [`BATCH`]. Splitting a run into consecutive ranges gives the
/// same trials as one [`sweep`].
pub fn sweep_range<F>(
    seed: u64,
    start: usize,
    end: usize,
    tolerance: f64,
    parallel: bool,
    trial: &F,
) -> Sweep
where
    F: Fn(&mut SampleRng, usize, &mut Vec<Vec<f64>>) -> f64 + Sync,
{
    assert_eq!(start % BATCH, 0, "ranges start on a batch boundary");
    let batches = start / BATCH..end.div_ceil(BATCH);
    let run = |b: usize| {
        let mut rng = batch_rng(seed, b as u64);
        let mut scratch = Vec::new();
        let mut out = Sweep::empty();
        for i in b * BATCH..((b + 1) * BATCH).min(end) {
            let mut v = trial(&mut rng, i, &mut scratch);
            if v.is_nan() {
                v = f64::INFINITY;
            }
            out.trials += 1;
            out.max_violation = out.max_violation.max(v);
            if v > tolerance && out.witness.is_none() {
                out.witness = Some((i, scratch.clone()));
            }
        }
        out
    };
    if parallel {
        batches
            .into_par_iter()
            .map(run)
            .reduce(Sweep::empty, Sweep::merge)
    } else {
        batches.map(run).fold(Sweep::empty(), Sweep::merge)
    }
}
