//! Byte keys for deduplicating enumerated maps.
//!
//! A key is a one-byte type tag followed by the reduced decimal form of each
//! normalized coefficient, each terminated by `;`. Reduced forms are unique,
//! so two maps of the same type share a key exactly when they are equal.

use super::rat::Rat;

pub trait CanonicalKey {
    fn canonical_key(&self) -> Vec<u8>;
}

pub(crate) fn encode(tag: u8, parts: &[&[Rat]]) -> Vec<u8> {
    let mut out = vec![tag];
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            out.push(b'|');
        }
        for r in part.iter() {
            out.extend_from_slice(r.to_string().as_bytes());
            out.push(b';');
        }
    }
    out
}
