//! Test-only support for the exact-arithmetic suites: an independent
//! brute-force feasibility oracle (Fourier–Motzkin, no simplex code
//! shared with the library) and deterministic random generators for
//! ring elements, cones, type-(L) data, and Morse systems.

pub mod fm;
pub mod gen;

pub use fm::cone_membership_oracle;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG for reproducible randomized suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
