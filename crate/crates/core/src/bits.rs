//! Fixed-width bit strings used as black-box inputs.
//!
//! Bit `x1` is the leftmost character and the most significant bit of the
//! numeric index, so iterating indices `0..2^N` enumerates inputs in
//! lexicographic order.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    /// Input number `index` of width `len`, with `x1` as the most significant bit.
    pub fn from_index(index: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let bits = (0..len)
            .map(|pos| (index >> (len - 1 - pos)) & 1 == 1)
            .collect();
        BitString(bits)
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value of the 1-based variable `x_k`.
    pub fn var(&self, k: usize) -> Option<bool> {
        k.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Copy with the 0-based position `pos` inverted.
    pub fn flipped(&self, pos: usize) -> Self {
        let mut bits = self.0.clone();
        bits[pos] = !bits[pos];
        BitString(bits)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Serialized as its `"0101"` string form.
impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}
