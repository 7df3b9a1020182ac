//! Named sub-seed derivation so individual random components can be pinned
//! independently of one another.

/// Derives a child seed from the master seed and a component name.
pub fn subseed(master: u64, name: &str) -> u64 {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(name.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is long enough"))
}
