//! Report plumbing: version banner and input digests. Identical invocations
//! must produce byte-identical reports, so the digest is a fixed FNV-1a
//! over the raw input bytes.

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 64-bit FNV-1a.
pub fn digest(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn digest_hex(bytes: &[u8]) -> String {
    format!("{:016x}", digest(bytes))
}

/// Standard report header.
pub fn header(input: &[u8]) -> String {
    format!("pfalg {}\ninput-digest: {}\n", VERSION, digest_hex(input))
}
