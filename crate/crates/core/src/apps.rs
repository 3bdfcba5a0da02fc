//! String equality through the `VERIFY` algorithm.
//!
//! Two `k`-bit strings are interleaved into one `2k`-bit word: `y` fills
//! the odd positions `x1, x3, …` and `z` the even positions `x2, x4, …`.
//! The word is accepted exactly when `y == z`.

use std::sync::OnceLock;

use crate::bits::BitString;
use crate::builder::build_algorithm;
use crate::error::{Error, Result};
use crate::query::{compute, QueryAlgorithm};

/// Longest string [`strings_equal`] accepts.
pub const MAX_STRING_LEN: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringPair {
    y: BitString,
    z: BitString,
}

impl StringPair {
    pub fn new(y: BitString, z: BitString) -> Result<Self> {
        if y.len() != z.len() {
            return Err(Error::StringLengthMismatch { y: y.len(), z: z.len() });
        }
        if y.is_empty() {
            return Err(Error::EmptyString);
        }
        Ok(StringPair { y, z })
    }

    pub fn y(&self) -> &BitString {
        &self.y
    }

    pub fn z(&self) -> &BitString {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn interleave(pair: &StringPair) -> BitString {
    pair.y.iter().zip(pair.z.iter()).flat_map(|(a, b)| [a, b]).collect::<Vec<_>>().into()
}

/// Inverse of [`interleave`].
pub fn deinterleave(word: &BitString) -> Result<StringPair> {
    if !word.len().is_multiple_of(2) {
        return Err(Error::OddArity(word.len()));
    }
    let (y, z): (Vec<bool>, Vec<bool>) = word.as_slice().chunks_exact(2).map(|p| (p[0], p[1])).unzip();
    StringPair::new(y.into(), z.into())
}

fn cached_algorithm(k: usize) -> Result<&'static QueryAlgorithm> {
    static CACHE: [OnceLock<QueryAlgorithm>; MAX_STRING_LEN] = [const { OnceLock::new() }; MAX_STRING_LEN];
    let slot = &CACHE[k - 1];
    if let Some(alg) = slot.get() {
        return Ok(alg);
    }
    let alg = build_algorithm(2 * k)?;
    Ok(slot.get_or_init(|| alg))
}

/// Decides `y == z` by running the `VERIFY_{2k}` algorithm on the interleaved word.
pub fn strings_equal(pair: &StringPair) -> Result<bool> {
    let k = pair.len();
    if k > MAX_STRING_LEN {
        return Err(Error::ArityTooLarge { arity: k, max: MAX_STRING_LEN });
    }
    let outcome = compute(cached_algorithm(k)?, &interleave(pair))?;
    debug_assert!(outcome.exact);
    Ok(outcome.output)
}
