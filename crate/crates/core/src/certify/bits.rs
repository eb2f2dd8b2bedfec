use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A bit string, serialized as `"<length>:<hex>"` with the bits packed
/// big-endian and zero-padded to whole bytes.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    /// Appends `value` in `width` bits, most significant first.
    pub fn push_uint(&mut self, value: u64, width: usize) {
        debug_assert!(
            width >= 64 || value >> width == 0,
            "{value} does not fit in {width} bits"
        );
        for k in (0..width).rev() {
            self.0.push(k < 64 && value >> k & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: &self.0, pos: 0 }
    }

    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self
            .0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << (7 - k)))
            })
            .collect();
        format!("{}:{}", self.0.len(), hex::encode(bytes))
    }

    pub fn from_hex(text: &str) -> Option<Bits> {
        let (len, digits) = text.split_once(':')?;
        let len: usize = len.parse().ok()?;
        let bytes = hex::decode(digits).ok()?;
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let bits: Vec<bool> = (0..len).map(|k| bytes[k / 8] >> (7 - k % 8) & 1 == 1).collect();
        // Padding must be zero so the encoding is unique.
        let padding_clear = (len..bytes.len() * 8).all(|k| bytes[k / 8] >> (7 - k % 8) & 1 == 0);
        padding_clear.then_some(Bits(bits))
    }

    /// Every bit string of length `len`, in increasing numeric order.
    pub fn all_of_length(len: usize) -> Vec<Bits> {
        assert!(len < 32, "refusing to list 2^{len} bit strings");
        (0..1u64 << len)
            .map(|v| {
                let mut b = Bits::new();
                b.push_uint(v, len);
                b
            })
            .collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "Bits({s})")
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Bits::from_hex(&text).ok_or_else(|| serde::de::Error::custom(format!("malformed bit string `{text}`")))
    }
}

/// Sequential decoder; every read fails once the bits run out.
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    pub fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    pub fn uint(&mut self, width: usize) -> Option<u64> {
        if width > 64 || self.pos + width > self.bits.len() {
            return None;
        }
        let v = self.bits[self.pos..self.pos + width]
            .iter()
            .fold(0u64, |acc, &b| acc << 1 | u64::from(b));
        self.pos += width;
        Some(v)
    }

    pub fn take(&mut self, len: usize) -> Option<Vec<bool>> {
        if self.pos + len > self.bits.len() {
            return None;
        }
        let out = self.bits[self.pos..self.pos + len].to_vec();
        self.pos += len;
        Some(out)
    }

    pub fn is_done(&self) -> bool {
        self.pos == self.bits.len()
    }
}

/// `⌈log₂(id_max + 1)⌉`, the fixed identifier width.
pub fn id_width(id_max: u64) -> usize {
    (64 - id_max.leading_zeros() as usize).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let mut b = Bits::new();
        b.push_uint(5, 3);
        b.push(true);
        b.push_uint(0x1ff, 9);
        assert_eq!(b.len(), 13);
        assert_eq!(b.to_hex(), "13:bff8");
        assert_eq!(Bits::from_hex("13:bff8"), Some(b.clone()));
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<Bits>(&json).unwrap(), b);
        let mut r = b.reader();
        assert_eq!((r.uint(3), r.bit(), r.uint(9)), (Some(5), Some(true), Some(0x1ff)));
        assert!(r.is_done() && r.bit().is_none());
    }

    #[test]
    fn malformed_hex() {
        assert_eq!(Bits::from_hex("3:ff"), None);
        assert_eq!(Bits::from_hex("9:ff"), None);
        assert_eq!(Bits::from_hex("x:00"), None);
        assert_eq!(Bits::from_hex("0:"), Some(Bits::new()));
    }

    #[test]
    fn widths() {
        assert_eq!(id_width(1), 1);
        assert_eq!(id_width(6), 3);
        assert_eq!(id_width(7), 3);
        assert_eq!(id_width(8), 4);
        assert_eq!(id_width(4096), 13);
        assert_eq!(Bits::all_of_length(3).len(), 8);
    }
}
