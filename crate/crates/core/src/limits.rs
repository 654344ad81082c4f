//! Desk-scale guards for the exponential computations.

/// Environment variable overriding [`Limits::max_enumeration_size`].
pub const MAX_SIZE_ENV: &str = "GROUPOIDAL_MAX_SIZE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest matrix size accepted for relation operations.
    pub max_relation_size: usize,
    /// Largest matrix size for exhaustive ideal enumeration.
    pub max_enumeration_size: usize,
    /// Most invariant projections collected before giving up.
    pub max_projections: usize,
    /// Most algebra levels in a tower computation.
    pub max_tower_depth: usize,
    /// Largest level size reached by a tower computation.
    pub max_tower_size: usize,
    /// Most words at a truncation depth of the tail groupoid.
    pub max_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_relation_size: 64,
            max_enumeration_size: 8,
            max_projections: 1 << 16,
            max_tower_depth: 6,
            max_tower_size: 128,
            max_words: 256,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration guard taken from `GROUPOIDAL_MAX_SIZE`
    /// when it parses as a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            limits.max_enumeration_size = n;
        }
        limits
    }
}
