//! Words in the genus-two mapping class group and the identity oracle.

pub mod identity;
pub mod surface;
pub mod symplectic;
pub mod word;

pub use identity::{equal, is_identity, Budget, Verdict};
pub use surface::{act, twist_action, SurfaceAutomorphism, SurfaceWord};
pub use symplectic::{sp_image, SpMatrix};
pub use word::{chain_six, iota, sigma_expansion, Generator, Sign, SignedGenerator, Word};

/// `free_reduce(w)`
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// `expand_sigma(w)`
pub fn expand_sigma(w: &Word) -> Word {
    w.expand_sigma()
}
