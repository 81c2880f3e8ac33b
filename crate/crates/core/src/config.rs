/// Tunable guards and thresholds. All length limits are configuration, not
/// constants baked into the algorithms.
#[derive(Debug, Clone)]
pub struct Config {
    /// Hard cap on generated word length (generators fail loudly beyond it).
    pub max_len: usize,
    /// Maximum word length for the exact gamma* search.
    pub gamma_guard: usize,
    /// Maximum word length accepted by the exhaustive subset oracles.
    pub oracle_guard: usize,
    /// Appearance saturation slack is `n / slack_div`.
    pub slack_div: usize,
    /// Relative-residual threshold for growth classification.
    pub growth_threshold: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_len: 1 << 20,
            gamma_guard: 512,
            oracle_guard: 16,
            slack_div: 4,
            growth_threshold: 0.2,
        }
    }
}

impl Config {
    /// Config with a raised gamma* guard, for callers that accept the cost.
    pub fn with_gamma_guard(mut self, guard: usize) -> Self {
        self.gamma_guard = guard;
        self
    }

    pub fn with_max_len(mut self, cap: usize) -> Self {
        self.max_len = cap;
        self
    }
}
