/// Resource caps shared by the expansion-heavy algorithms.
///
/// Exceeding a cap yields [`crate::Error::Budget`]; no algorithm silently
/// truncates its work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of terms in any polynomial produced by `pow`/`mul`.
    pub max_terms: u64,
    /// Maximum number of S-polynomial reductions in one Gröbner computation.
    pub max_pairs: u64,
    /// Maximum number of generator products kept while powering an ideal.
    pub max_products: u64,
    /// Largest allowed `p^e`.
    pub max_prime_power: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 10_000_000,
            max_pairs: 100_000,
            max_products: 1_000_000,
            max_prime_power: 100_000_000,
        }
    }
}

impl Budget {
    /// Every cap set to `limit` (the prime-power cap is left alone).
    pub fn uniform(limit: u64) -> Self {
        Budget {
            max_terms: limit,
            max_pairs: limit,
            max_products: limit,
            ..Budget::default()
        }
    }
}
