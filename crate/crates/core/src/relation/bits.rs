use std::fmt;

/// Dense little-endian bit sequence backed by 64-bit words.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` in the
/// last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitTable {
    len: usize,
    words: Vec<u64>,
}

impl BitTable {
    pub fn zeros(len: usize) -> Self {
        BitTable { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut t = BitTable { len, words: vec![!0; len.div_ceil(64)] };
        t.clear_tail();
        t
    }

    /// Parse a `0`/`1` string, index 0 first. Whitespace is ignored.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let digits: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut t = BitTable::zeros(digits.len());
        for (i, d) in digits.into_iter().enumerate() {
            match d {
                b'0' => {}
                b'1' => t.set(i, true),
                _ => return None,
            }
        }
        Some(t)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn and_assign(&mut self, other: &BitTable) {
        assert_eq!(self.len, other.len, "bit table length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn or_assign(&mut self, other: &BitTable) {
        assert_eq!(self.len, other.len, "bit table length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn not(&self) -> BitTable {
        let mut t = BitTable { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        t.clear_tail();
        t
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &BitTable) -> bool {
        assert_eq!(self.len, other.len, "bit table length mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Lowercase hex of the table read as the binary integer `Σ bit_i 2^i`,
    /// most significant digit first, zero-padded to `ceil(len/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < self.len && self.get(i) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble, 16).unwrap());
        }
        out
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 256 {
            write!(f, "BitTable({})", self.to_bit_string())
        } else {
            write!(f, "BitTable(len={}, ones={})", self.len, self.count_ones())
        }
    }
}

impl fmt::Display for BitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        let t = BitTable::from_bit_str("0101010110101010").unwrap();
        assert_eq!(t.to_bit_string(), "0101010110101010");
        assert_eq!(t.count_ones(), 8);
        assert!(BitTable::from_bit_str("01x").is_none());
    }

    #[test]
    fn hex_is_binary_integer() {
        // bits 1 and 3 set -> 0b1010 = 0xa
        let t = BitTable::from_bit_str("0101").unwrap();
        assert_eq!(t.to_hex(), "a");
        let t = BitTable::from_bit_str("1111111111111110").unwrap();
        assert_eq!(t.to_hex(), "7fff");
    }

    #[test]
    fn tail_bits_stay_clear() {
        let t = BitTable::ones(70);
        assert_eq!(t.count_ones(), 70);
        assert!(t.not().none());
        assert!(t.all());
    }

    #[test]
    fn iter_ones_matches_get() {
        let t = BitTable::from_bit_str("1001010101101010").unwrap();
        let ones: Vec<usize> = t.iter_ones().collect();
        assert_eq!(ones, vec![0, 3, 5, 7, 9, 10, 12, 14]);
    }
}
