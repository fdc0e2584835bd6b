use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One Boolean state per vertex, packed 64 to a word.
///
/// Bits beyond `len` in the last word are always zero, so derived equality
/// and hashing agree with the logical value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Configuration {
    words: Vec<u64>,
    len: usize,
}

impl Configuration {
    pub fn zeros(len: usize) -> Self {
        Configuration {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut c = Configuration {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        c.clear_tail();
        c
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut c = Configuration::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                c.set(i, true);
            }
        }
        c
    }

    /// Low `len` bits of `value`, bit i of the integer becoming vertex i.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut c = Configuration::zeros(len);
        if len > 0 {
            c.words[0] = value;
            c.clear_tail();
        }
        c
    }

    /// Inverse of [`Configuration::from_index`]; requires `len <= 64`.
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
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

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of set bits in `start..start + len`.
    #[inline]
    pub fn count_range(&self, start: usize, len: usize) -> u32 {
        let end = start + len;
        debug_assert!(end <= self.len);
        let (sw, sb) = (start >> 6, start & 63);
        let (ew, eb) = (end >> 6, end & 63);
        if sw == ew {
            if len == 0 {
                return 0;
            }
            let mask = ((1u64 << len) - 1) << sb;
            return (self.words[sw] & mask).count_ones();
        }
        let mut total = (self.words[sw] >> sb).count_ones();
        for w in &self.words[sw + 1..ew] {
            total += w.count_ones();
        }
        if eb != 0 {
            total += (self.words[ew] & ((1u64 << eb) - 1)).count_ones();
        }
        total
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Restriction to the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Configuration {
        let mut c = Configuration::zeros(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            c.set(i, self.get(v));
        }
        c
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.trim().chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::parse(0, format!("invalid bit {other:?} in bitstring")))
                }
            }
        }
        Ok(Configuration::from_bits(&bits))
    }
}
