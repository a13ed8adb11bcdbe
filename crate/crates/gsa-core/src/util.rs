//! Small shared helpers.

/// FNV-1a over explicit bytes; a fixed, seed-free 64-bit digest so that
/// hashes (and anything sorted by them) are identical across runs and
/// platforms.
pub fn fnv1a64(chunks: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for chunk in chunks {
        for &b in *chunk {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

pub fn hash_u32s(parts: &[&[u32]]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for &v in *part {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_digest() {
        assert_eq!(fnv1a64(&[b"abc"]), fnv1a64(&[b"a", b"bc"]));
        assert_ne!(fnv1a64(&[b"abc"]), fnv1a64(&[b"acb"]));
    }
}
