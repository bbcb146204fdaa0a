//! Seeded RAF samplers. Every random draw in the library goes through a
//! [`RafSampler`], so a seed fixes the whole sample set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::raf::{AlternativeSet, Raf};

/// Gap kept between the coordinates of a strictly dominated pair.
pub const DOMINANCE_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerKind {
    /// Independent uniform coordinates.
    #[default]
    Uniform,
    /// Coordinates drawn from `{0, 1/(levels-1), ..., 1}`.
    Grid { levels: u32 },
    /// Uniform, except that a whole RAF is drawn from the grid with
    /// probability `grid_fraction`. Grid draws produce ties and boundary
    /// values that uniform draws essentially never hit.
    Mixed { grid_fraction: f64, levels: u32 },
}


#[derive(Clone, Debug)]
pub struct RafSampler {
    alts: AlternativeSet,
    kind: SamplerKind,
    seed: u64,
    rng: ChaCha8Rng,
}

impl RafSampler {
    pub fn new(alts: &AlternativeSet, kind: SamplerKind, seed: u64) -> Self {
        Self {
            alts: alts.clone(),
            kind,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(alts: &AlternativeSet, seed: u64) -> Self {
        Self::new(alts, SamplerKind::Uniform, seed)
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alts
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn kind(&self) -> SamplerKind {
        self.kind
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.gen_range(0.0..=1.0)
    }

    fn grid_value(&mut self, levels: u32) -> f64 {
        let steps = levels.max(2) - 1;
        f64::from(self.rng.gen_range(0..=steps)) / f64::from(steps)
    }

    fn values(&mut self) -> Vec<f64> {
        let n = self.alts.len();
        let grid = match self.kind {
            SamplerKind::Uniform => None,
            SamplerKind::Grid { levels } => Some(levels),
            SamplerKind::Mixed {
                grid_fraction,
                levels,
            } => self.rng.gen_bool(grid_fraction.clamp(0.0, 1.0)).then_some(levels),
        };
        match grid {
            Some(levels) => (0..n).map(|_| self.grid_value(levels)).collect(),
            None => (0..n).map(|_| self.unit()).collect(),
        }
    }

    fn raf(&self, values: Vec<f64>) -> Raf {
        Raf::new(&self.alts, values).expect("sampled values lie in [0,1]")
    }

    pub fn sample(&mut self) -> Raf {
        let v = self.values();
        self.raf(v)
    }

    pub fn sample_many(&mut self, n: usize) -> Vec<Raf> {
        (0..n).map(|_| self.sample()).collect()
    }

    pub fn sample_pairs(&mut self, n: usize) -> Vec<(Raf, Raf)> {
        (0..n).map(|_| (self.sample(), self.sample())).collect()
    }

    /// `(A, B)` with `A(x) > B(x)` everywhere: draw `A`, then
    /// `B(x) = A(x) * U(0, 1 - DOMINANCE_GAP)`.
    pub fn sample_strictly_dominated_pair(&mut self) -> (Raf, Raf) {
        let mut a = self.values();
        for v in a.iter_mut() {
            while *v <= 0.0 {
                *v = self.unit();
            }
        }
        let b = a
            .iter()
            .map(|&x| x * self.rng.gen_range(0.0..1.0 - DOMINANCE_GAP))
            .collect();
        (self.raf(a), self.raf(b))
    }

    /// `(A, B)` with `A(x) >= B(x)` everywhere, mixing in ties at 0, at 1
    /// and in the interior so every branch of the perturbation construction
    /// gets exercised.
    pub fn sample_pointwise_dominated_pair(&mut self) -> (Raf, Raf) {
        let n = self.alts.len();
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for _ in 0..n {
            let x = match self.rng.gen_range(0..10) {
                0 | 1 => 1.0,
                2 | 3 => 0.0,
                _ => self.unit(),
            };
            let y = match self.rng.gen_range(0..10) {
                0..=3 => x,
                4 => 0.0,
                _ => x * self.unit(),
            };
            a.push(x);
            b.push(y);
        }
        (self.raf(a), self.raf(b))
    }
}
