//! Run configuration: deterministic seed and exact-solve budgets.

/// Caps on the exact computations that can grow combinatorially. Everything
/// under the cap runs to completion in exact arithmetic; anything over it is
/// refused up-front with a typed error so callers can fall back to sampled
/// verification instead of silently stalling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum `rows * cols` for a dense exact linear solve (system building
    /// included). The default admits every certification the standard
    /// catalogue needs up to ambient dimension 6; larger maps need an
    /// explicit raise.
    pub solve_cells: u64,
    /// Work estimate cap for cubic-data interpolation, measured as
    /// `lattice_points(n) * n^3`. The default admits dimension 15 and
    /// refuses dimension 27, where closed forms must be used instead.
    pub cubic_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            solve_cells: 200_000,
            cubic_work: 10_000_000,
        }
    }
}

impl Budget {
    /// Budget with both caps scaled from a single headline number, as set by
    /// the command line `--budget` flag (the cubic-work cap scales
    /// proportionally to keep the two knobs consistent).
    pub fn with_solve_cells(cells: u64) -> Self {
        let d = Budget::default();
        Budget {
            solve_cells: cells,
            cubic_work: (cells as u128 * d.cubic_work as u128 / d.solve_cells as u128)
                .min(u64::MAX as u128) as u64,
        }
    }

    pub fn check_solve(&self, rows: usize, cols: usize) -> bool {
        (rows as u64).saturating_mul(cols as u64) <= self.solve_cells
    }
}

/// Seed plus budgets; passed to every operation that samples points or builds
/// a nontrivial exact system. Two runs with equal configs and inputs produce
/// byte-identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub budget: Budget,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 2019,
            budget: Budget::default(),
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config {
            seed,
            ..Config::default()
        }
    }
}
