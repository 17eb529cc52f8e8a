/// Up to four unsigned integers; the wire content of one message.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Payload {
    fields: [u64; Payload::MAX_FIELDS],
    len: u8,
}

impl Payload {
    pub const MAX_FIELDS: usize = 4;

    pub fn new(values: &[u64]) -> Self {
        assert!(
            values.len() <= Self::MAX_FIELDS,
            "payload has too many fields"
        );
        let mut fields = [0; Self::MAX_FIELDS];
        fields[..values.len()].copy_from_slice(values);
        Payload {
            fields,
            len: values.len() as u8,
        }
    }

    pub fn fields(&self) -> &[u64] {
        &self.fields[..self.len as usize]
    }

    /// Canonical encoding: each field as an unsigned LEB128 varint. A
    /// field-less payload is a single zero byte.
    pub fn encode(&self, out: &mut Vec<u8>) {
        if self.len == 0 {
            out.push(0);
            return;
        }
        for &f in self.fields() {
            let mut v = f;
            loop {
                let byte = (v & 0x7f) as u8;
                v >>= 7;
                if v == 0 {
                    out.push(byte);
                    break;
                }
                out.push(byte | 0x80);
            }
        }
    }

    pub fn encoded_len(&self) -> usize {
        if self.len == 0 {
            return 1;
        }
        self.fields().iter().map(|&f| varint_len(f)).sum()
    }

    pub fn width_bits(&self) -> u32 {
        8 * self.encoded_len() as u32
    }
}

fn varint_len(v: u64) -> usize {
    let bits = 64 - v.leading_zeros() as usize;
    bits.div_ceil(7).max(1)
}

/// A message exchanged between neighbouring nodes.
///
/// Only the integer fields go on the wire; which variant a message is
/// follows from the round schedule every node already knows.
pub trait Message: Clone {
    fn payload(&self) -> Payload;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        let mut buf = Vec::new();
        Payload::new(&[1, 300]).encode(&mut buf);
        assert_eq!(buf, vec![0x01, 0xac, 0x02]);
        assert_eq!(Payload::new(&[1, 300]).width_bits(), 24);
        assert_eq!(Payload::new(&[]).width_bits(), 8);
        assert_eq!(Payload::new(&[0]).width_bits(), 8);
        assert_eq!(Payload::new(&[u64::MAX]).encoded_len(), 10);
    }

    proptest! {
        #[test]
        fn width_matches_encoding(values in proptest::collection::vec(any::<u64>(), 0..=4)) {
            let p = Payload::new(&values);
            let mut buf = Vec::new();
            p.encode(&mut buf);
            prop_assert_eq!(buf.len(), p.encoded_len());
        }
    }
}
