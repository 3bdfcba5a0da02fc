//! Classical side of the query model: Boolean functions, sensitivity and a
//! deterministic decision-tree baseline that counts its queries.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest arity for which [`sensitivity`] sweeps all `N · 2^N` neighbours.
pub const MAX_SENSITIVITY_ARITY: usize = 20;
/// Largest arity a truth table may have.
pub const MAX_TABLE_ARITY: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BooleanFunction {
    /// 1 iff every consecutive pair `(x_{2j-1}, x_{2j})` is equal.
    Verify { arity: usize },
    /// Outputs indexed by the input number (`x1` most significant).
    TruthTable { arity: usize, table: Vec<bool> },
}

impl BooleanFunction {
    pub fn verify(arity: usize) -> Result<Self> {
        if arity < 2 || !arity.is_multiple_of(2) {
            return Err(Error::OddArity(arity));
        }
        if arity > 64 {
            return Err(Error::ArityTooLarge { arity, max: 64 });
        }
        Ok(BooleanFunction::Verify { arity })
    }

    pub fn truth_table(arity: usize, table: Vec<bool>) -> Result<Self> {
        if arity > MAX_TABLE_ARITY {
            return Err(Error::ArityTooLarge { arity, max: MAX_TABLE_ARITY });
        }
        let expected = 1usize << arity;
        if table.len() != expected {
            return Err(Error::TruthTableLength { expected, found: table.len() });
        }
        Ok(BooleanFunction::TruthTable { arity, table })
    }

    /// Tabulates any function given by its evaluator.
    pub fn tabulate(arity: usize, f: impl Fn(&BitString) -> bool) -> Result<Self> {
        if arity > MAX_TABLE_ARITY {
            return Err(Error::ArityTooLarge { arity, max: MAX_TABLE_ARITY });
        }
        let table = (0..1u64 << arity).map(|i| f(&BitString::from_index(i, arity))).collect();
        Self::truth_table(arity, table)
    }

    pub fn arity(&self) -> usize {
        match self {
            BooleanFunction::Verify { arity } | BooleanFunction::TruthTable { arity, .. } => *arity,
        }
    }

    pub fn eval(&self, input: &BitString) -> Result<bool> {
        if input.len() != self.arity() {
            return Err(Error::InputLength { expected: self.arity(), found: input.len() });
        }
        Ok(self.eval_unchecked(input))
    }

    fn eval_unchecked(&self, input: &BitString) -> bool {
        match self {
            BooleanFunction::Verify { .. } => input.as_slice().chunks_exact(2).all(|p| p[0] == p[1]),
            BooleanFunction::TruthTable { table, .. } => table[input.to_index() as usize],
        }
    }
}

/// On-disk truth table: `{"arity": N, "table": [0, 1, ...]}`, indexed by input number.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruthTableDocument {
    pub arity: usize,
    pub table: Vec<u8>,
}

impl TruthTableDocument {
    pub fn into_function(self) -> Result<BooleanFunction> {
        let table = self
            .table
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Document(format!("truth table entry {other} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BooleanFunction::truth_table(self.arity, table)
    }
}

/// Maximum sensitivity and the lexicographically first input attaining it.
pub fn sensitivity(f: &BooleanFunction) -> Result<(usize, BitString)> {
    let n = f.arity();
    if n > MAX_SENSITIVITY_ARITY {
        return Err(Error::ArityTooLarge { arity: n, max: MAX_SENSITIVITY_ARITY });
    }
    let mut best = (0, BitString::zeros(n));
    for index in 0..1u64 << n {
        let x = BitString::from_index(index, n);
        let value = f.eval_unchecked(&x);
        let s = (0..n).filter(|&pos| f.eval_unchecked(&x.flipped(pos)) != value).count();
        if s > best.0 {
            best = (s, x);
        }
    }
    Ok(best)
}

/// Sensitivity of `f` on the single input `x`.
pub fn sensitivity_at(f: &BooleanFunction, x: &BitString) -> Result<usize> {
    let value = f.eval(x)?;
    Ok((0..x.len()).filter(|&pos| f.eval_unchecked(&x.flipped(pos)) != value).count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRunReport {
    pub output: bool,
    pub queries_used: usize,
    /// 1-based variable indices in the order they were queried.
    pub query_sequence: Vec<usize>,
}

/// Deterministic decision tree for `VERIFY_n`: scan the pairs left to
/// right and stop at the first unequal pair.
///
/// `oracle(k)` returns the 1-based variable `x_k`.
pub fn classical_verify<F>(n: usize, mut oracle: F) -> Result<ClassicalRunReport>
where
    F: FnMut(usize) -> Result<bool>,
{
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OddArity(n));
    }
    let mut query_sequence = Vec::with_capacity(n);
    let mut ask = |k: usize, seq: &mut Vec<usize>| {
        seq.push(k);
        oracle(k)
    };
    for pair in 0..n / 2 {
        let left = ask(2 * pair + 1, &mut query_sequence)?;
        let right = ask(2 * pair + 2, &mut query_sequence)?;
        if left != right {
            return Ok(ClassicalRunReport {
                output: false,
                queries_used: query_sequence.len(),
                query_sequence,
            });
        }
    }
    Ok(ClassicalRunReport { output: true, queries_used: query_sequence.len(), query_sequence })
}

/// [`classical_verify`] against a known input.
pub fn classical_verify_input(input: &BitString) -> Result<ClassicalRunReport> {
    classical_verify(input.len(), |k| {
        input.var(k).ok_or_else(|| Error::Oracle { index: k, message: "no such variable".into() })
    })
}

/// Largest number of queries the decision tree spends over all `2^n` inputs.
pub fn classical_worst_case(n: usize) -> Result<usize> {
    if n > MAX_TABLE_ARITY {
        return Err(Error::ArityTooLarge { arity: n, max: MAX_TABLE_ARITY });
    }
    let mut worst = 0;
    for index in 0..1u64 << n {
        worst = worst.max(classical_verify_input(&BitString::from_index(index, n))?.queries_used);
    }
    Ok(worst)
}
