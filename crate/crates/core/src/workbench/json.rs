//! Canonical JSON: compact, fields in declaration order, every float in
//! exponent form with 17 significant digits, and a trailing newline. Equal
//! values always serialize to equal bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use sha2::{Digest, Sha256};

use super::WbResult;

#[derive(Debug, Clone, Copy, Default)]
struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            CompactFormatter.write_null(writer)
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Canonical bytes of `value`.
pub fn to_canonical_vec<T: Serialize>(value: &T) -> WbResult<Vec<u8>> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(out)
}

pub fn to_canonical_string<T: Serialize>(value: &T) -> WbResult<String> {
    Ok(String::from_utf8(to_canonical_vec(value)?).expect("serde_json emits UTF-8"))
}

/// `sha256:` followed by the lowercase hex digest of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + 64);
    out.push_str("sha256:");
    for b in hash.iter() {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        let s = to_canonical_string(&vec![0.1, -2.5e-7, 3.0]).unwrap();
        assert_eq!(s, "[1.0000000000000001e-1,-2.4999999999999999e-7,3.0000000000000000e0]\n");
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1, -2.5e-7, 3.0]);
    }

    #[test]
    fn digest_is_prefixed_hex() {
        let d = digest(b"abc");
        assert_eq!(d, "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
