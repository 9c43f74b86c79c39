//! Packed bit vectors used for codewords, sequences and character rows.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitSeq {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

impl BitSeq {
    pub fn zeros(len: usize) -> BitSeq {
        BitSeq {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> BitSeq {
        let mut out = BitSeq::zeros(len);
        for i in 0..len {
            if f(i) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn xor_assign(&mut self, other: &BitSeq) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Hamming distance to `other`.
    pub fn distance(&self, other: &BitSeq) -> u32 {
        xor_weight(&self.words, &other.words)
    }

    /// The sequence read from position `shift` onwards: bit i of the result is bit (i + shift) mod len.
    pub fn rotate(&self, shift: usize) -> BitSeq {
        let len = self.len;
        if len == 0 {
            return self.clone();
        }
        let shift = shift % len;
        if len <= 64 {
            let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            let w = self.words[0];
            let rotated = if shift == 0 {
                w
            } else {
                ((w >> shift) | (w << (len - shift))) & mask
            };
            return BitSeq {
                len,
                words: vec![rotated],
            };
        }
        BitSeq::from_fn(len, |i| self.get((i + shift) % len))
    }

    /// The first `len` bits.
    pub fn truncate(&self, len: usize) -> BitSeq {
        BitSeq::from_fn(len.min(self.len), |i| self.get(i))
    }
}

#[inline]
pub(crate) fn xor_weight(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rotate_matches_index_arithmetic(len in 1usize..200, seed in any::<u64>(), shift in 0usize..400) {
            let s = BitSeq::from_fn(len, |i| (seed.rotate_left(i as u32 % 64) ^ (i as u64 * 0x9e37)) & 1 == 1);
            let r = s.rotate(shift);
            for i in 0..len {
                prop_assert_eq!(r.get(i), s.get((i + shift) % len));
            }
            prop_assert_eq!(r.weight(), s.weight());
        }
    }

    #[test]
    fn distance_and_weight() {
        let a = BitSeq::from_fn(100, |i| i % 3 == 0);
        let b = BitSeq::from_fn(100, |i| i % 2 == 0);
        let direct = (0..100).filter(|&i| (i % 3 == 0) != (i % 2 == 0)).count() as u32;
        assert_eq!(a.distance(&b), direct);
        assert_eq!(a.weight(), 34);
        assert_eq!(a.truncate(10).weight(), 4);
    }
}
