//! Quantum query algorithms: data model, execution and exactness checking.
//!
//! An algorithm starts in a fixed state, applies `T` stages of
//! (input-independent unitary, query), then a final unitary, and measures
//! in the computational basis. Each basis state carries an output label.
//! Basis indices are 0-based throughout; variable indices are 1-based.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::linalg::{self, SquareMatrix, StateVector, MATRIX_TOL, NORM_TOL};
use crate::oracle::BooleanFunction;

/// Exhaustive sweeps are refused above this arity.
pub const MAX_EXHAUSTIVE_ARITY: usize = 24;

/// Diagonal entry of a query matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryEntry {
    /// Always `+1`.
    Fixed,
    /// `(-1)^{x_k}` for the 1-based variable `k`.
    Var(usize),
}

/// Per-basis-state query behaviour; the induced matrix is diagonal with entries ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    diagonal: Vec<QueryEntry>,
}

impl QuerySpec {
    pub fn new(diagonal: Vec<QueryEntry>) -> Self {
        QuerySpec { diagonal }
    }

    pub fn fixed(dim: usize) -> Self {
        QuerySpec { diagonal: vec![QueryEntry::Fixed; dim] }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn entries(&self) -> &[QueryEntry] {
        &self.diagonal
    }

    /// Largest variable index referenced, 0 if none.
    pub fn max_var(&self) -> usize {
        self.diagonal
            .iter()
            .map(|e| match e {
                QueryEntry::Fixed => 0,
                QueryEntry::Var(k) => *k,
            })
            .max()
            .unwrap_or(0)
    }

    fn check_vars(&self, arity: usize) -> Result<()> {
        for entry in &self.diagonal {
            if let QueryEntry::Var(k) = *entry {
                if k == 0 || k > arity {
                    return Err(Error::VarIndexOutOfRange { index: k, arity });
                }
            }
        }
        Ok(())
    }

    fn sign_mask(&self, input: &BitString) -> Vec<bool> {
        self.diagonal
            .iter()
            .map(|e| match e {
                QueryEntry::Fixed => false,
                QueryEntry::Var(k) => input.as_slice()[k - 1],
            })
            .collect()
    }
}

/// The concrete diagonal query matrix for `input`.
pub fn realize_query(spec: &QuerySpec, input: &BitString) -> Result<SquareMatrix> {
    spec.check_vars(input.len())?;
    let diag = spec.sign_mask(input).into_iter().map(|neg| if neg { -1.0 } else { 1.0 }).collect();
    Ok(SquareMatrix::diagonal(diag))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub unitary: SquareMatrix,
    pub query: QuerySpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryAlgorithm {
    n_vars: usize,
    start: StateVector,
    stages: Vec<Stage>,
    final_unitary: SquareMatrix,
    labels: Vec<bool>,
}

impl QueryAlgorithm {
    /// Checks every structural invariant and that all matrices are unitary
    /// within [`MATRIX_TOL`].
    pub fn new(
        n_vars: usize,
        start: StateVector,
        stages: Vec<Stage>,
        final_unitary: SquareMatrix,
        labels: Vec<bool>,
    ) -> Result<Self> {
        let alg = Self::new_unverified(n_vars, start, stages, final_unitary, labels)?;
        alg.check_unitary(MATRIX_TOL)?;
        Ok(alg)
    }

    /// Like [`QueryAlgorithm::new`] but skips the unitarity check, so that
    /// hand-edited or deliberately mutated algorithms can still be executed.
    pub fn new_unverified(
        n_vars: usize,
        start: StateVector,
        stages: Vec<Stage>,
        final_unitary: SquareMatrix,
        labels: Vec<bool>,
    ) -> Result<Self> {
        let dim = start.len();
        if !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        if final_unitary.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: final_unitary.dim() });
        }
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: labels.len() });
        }
        for stage in &stages {
            if stage.unitary.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: stage.unitary.dim() });
            }
            if stage.query.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: stage.query.dim() });
            }
            stage.query.check_vars(n_vars)?;
        }
        Ok(QueryAlgorithm { n_vars, start, stages, final_unitary, labels })
    }

    /// Reports the first matrix whose unitarity deviation exceeds `tol`.
    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        for (i, stage) in self.stages.iter().enumerate() {
            let deviation = linalg::unitarity_deviation(&stage.unitary);
            if !(deviation <= tol) {
                return Err(Error::NonUnitary { what: format!("U{}", i + 1), deviation });
            }
        }
        let deviation = linalg::unitarity_deviation(&self.final_unitary);
        if !(deviation <= tol) {
            return Err(Error::NonUnitary { what: "final unitary".into(), deviation });
        }
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn t_queries(&self) -> usize {
        self.stages.len()
    }

    pub fn dim(&self) -> usize {
        self.start.len()
    }

    pub fn start(&self) -> &StateVector {
        &self.start
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn final_unitary(&self) -> &SquareMatrix {
        &self.final_unitary
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    /// Copy with different measurement labels.
    pub fn with_labels(&self, labels: Vec<bool>) -> Result<Self> {
        Self::new_unverified(
            self.n_vars,
            self.start.clone(),
            self.stages.clone(),
            self.final_unitary.clone(),
            labels,
        )
    }

    /// Copy with stage `stage` (0-based) using a different unitary.
    pub fn with_stage_unitary(&self, stage: usize, unitary: SquareMatrix) -> Result<Self> {
        let mut stages = self.stages.clone();
        stages[stage].unitary = unitary;
        Self::new_unverified(
            self.n_vars,
            self.start.clone(),
            stages,
            self.final_unitary.clone(),
            self.labels.clone(),
        )
    }

    fn check_input(&self, input: &BitString) -> Result<()> {
        if input.len() != self.n_vars {
            return Err(Error::InputLength { expected: self.n_vars, found: input.len() });
        }
        Ok(())
    }

    /// Runs the pipeline, handing each intermediate state to `visit`
    /// (start, then after every unitary and every query, then final).
    fn evolve(&self, input: &BitString, mut visit: impl FnMut(&[f64])) -> Vec<f64> {
        let mut current = self.start.amplitudes().to_vec();
        let mut scratch = vec![0.0; current.len()];
        visit(&current);
        for stage in &self.stages {
            stage.unitary.apply_into(&current, &mut scratch);
            std::mem::swap(&mut current, &mut scratch);
            visit(&current);
            for (amp, negate) in current.iter_mut().zip(stage.query.sign_mask(input)) {
                if negate {
                    *amp = -*amp;
                }
            }
            visit(&current);
        }
        self.final_unitary.apply_into(&current, &mut scratch);
        visit(&scratch);
        scratch
    }
}

/// Every state of one execution: the start state, the state after each of
/// the `2T + 1` transformations, `2T + 2` states in total.
#[derive(Clone, Debug, PartialEq)]
pub struct RunTrace {
    pub states: Vec<StateVector>,
}

impl RunTrace {
    pub fn start(&self) -> &StateVector {
        &self.states[0]
    }

    /// State after stage `i` (1-based), i.e. after `U_i` then `Q_i`.
    pub fn after_stage(&self, i: usize) -> &StateVector {
        &self.states[2 * i]
    }

    /// State after `U_i`, before the query of stage `i` (1-based).
    pub fn after_unitary(&self, i: usize) -> &StateVector {
        &self.states[2 * i - 1]
    }

    pub fn final_state(&self) -> &StateVector {
        self.states.last().expect("trace is never empty")
    }

    /// Number of query applications recorded.
    pub fn query_count(&self) -> usize {
        (self.states.len() - 2) / 2
    }
}

pub fn run(alg: &QueryAlgorithm, input: &BitString) -> Result<RunTrace> {
    alg.check_input(input)?;
    let mut states = Vec::with_capacity(2 * alg.t_queries() + 2);
    alg.evolve(input, |s| states.push(StateVector::from_raw(s.to_vec())));
    Ok(RunTrace { states })
}

/// Probabilities `(p0, p1)` of measuring a basis state labelled 0 or 1.
pub fn measure(final_state: &StateVector, labels: &[bool]) -> Result<(f64, f64)> {
    if final_state.len() != labels.len() {
        return Err(Error::DimensionMismatch { expected: final_state.len(), found: labels.len() });
    }
    Ok(probabilities(final_state.amplitudes(), labels))
}

fn probabilities(amplitudes: &[f64], labels: &[bool]) -> (f64, f64) {
    let mut p = (0.0, 0.0);
    for (a, &label) in amplitudes.iter().zip(labels) {
        if label {
            p.1 += a * a;
        } else {
            p.0 += a * a;
        }
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub output: bool,
    /// Probability of `output`; 0.5 for an ambiguous measurement.
    pub probability: f64,
    /// The output is produced with probability 1 within [`NORM_TOL`].
    pub exact: bool,
}

fn decide((p0, p1): (f64, f64)) -> Outcome {
    if (p0 - p1).abs() <= NORM_TOL {
        return Outcome { output: false, probability: 0.5, exact: false };
    }
    let (output, probability) = if p1 > p0 { (true, p1) } else { (false, p0) };
    Outcome { output, probability, exact: probability >= 1.0 - NORM_TOL }
}

pub fn compute(alg: &QueryAlgorithm, input: &BitString) -> Result<Outcome> {
    alg.check_input(input)?;
    let final_state = alg.evolve(input, |_| {});
    Ok(decide(probabilities(&final_state, alg.labels())))
}

/// Result of sweeping every input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactnessReport {
    pub exact: bool,
    /// Lexicographically first input on which the algorithm is wrong or inexact.
    pub counterexample: Option<BitString>,
    pub inputs_tested: u64,
    /// Smallest probability of the correct output over all inputs.
    pub min_correct_probability: f64,
}

#[derive(Clone, Copy)]
struct Sweep {
    first_failure: Option<u64>,
    min_correct: f64,
}

impl Sweep {
    const EMPTY: Sweep = Sweep { first_failure: None, min_correct: f64::INFINITY };

    fn merge(self, other: Sweep) -> Sweep {
        let first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Sweep { first_failure, min_correct: self.min_correct.min(other.min_correct) }
    }
}

fn sweep_range(alg: &QueryAlgorithm, f: &BooleanFunction, range: std::ops::Range<u64>) -> Sweep {
    let n = alg.n_vars();
    let mut acc = Sweep::EMPTY;
    for index in range {
        let input = BitString::from_index(index, n);
        let expected = f.eval(&input).expect("arity checked");
        let final_state = alg.evolve(&input, |_| {});
        let (p0, p1) = probabilities(&final_state, alg.labels());
        let outcome = decide((p0, p1));
        let correct = if expected { p1 } else { p0 };
        // NaN compares false, so a NaN probability also counts as a failure.
        acc.min_correct = if correct.is_nan() { f64::NEG_INFINITY } else { acc.min_correct.min(correct) };
        if !(outcome.exact && outcome.output == expected) && acc.first_failure.is_none() {
            acc.first_failure = Some(index);
        }
    }
    acc
}

fn prepare_sweep(alg: &QueryAlgorithm, f: &BooleanFunction) -> Result<u64> {
    if alg.n_vars() != f.arity() {
        return Err(Error::InputLength { expected: alg.n_vars(), found: f.arity() });
    }
    if f.arity() > MAX_EXHAUSTIVE_ARITY {
        return Err(Error::ArityTooLarge { arity: f.arity(), max: MAX_EXHAUSTIVE_ARITY });
    }
    Ok(1u64 << f.arity())
}

fn report(total: u64, sweep: Sweep, n: usize) -> ExactnessReport {
    ExactnessReport {
        exact: sweep.first_failure.is_none(),
        counterexample: sweep.first_failure.map(|i| BitString::from_index(i, n)),
        inputs_tested: total,
        min_correct_probability: sweep.min_correct,
    }
}

/// Whether `alg` computes `f` exactly, checked on all `2^N` inputs.
pub fn check_exact(alg: &QueryAlgorithm, f: &BooleanFunction) -> Result<ExactnessReport> {
    let total = prepare_sweep(alg, f)?;
    Ok(report(total, sweep_range(alg, f, 0..total), alg.n_vars()))
}

/// [`check_exact`] with the input space split across threads. The report
/// is identical to the serial one.
pub fn check_exact_parallel(alg: &QueryAlgorithm, f: &BooleanFunction) -> Result<ExactnessReport> {
    let total = prepare_sweep(alg, f)?;
    const CHUNK: u64 = 1024;
    let chunks = total.div_ceil(CHUNK);
    let sweep = (0..chunks)
        .into_par_iter()
        .map(|c| sweep_range(alg, f, c * CHUNK..((c + 1) * CHUNK).min(total)))
        .reduce(|| Sweep::EMPTY, Sweep::merge);
    Ok(report(total, sweep, alg.n_vars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hadamard;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    /// H, diag(x1, x2), H on (1, 0); the two-variable instance written out by hand.
    fn two_var() -> QueryAlgorithm {
        QueryAlgorithm::new(
            2,
            StateVector::basis(2, 0).unwrap(),
            vec![Stage {
                unitary: hadamard(),
                query: QuerySpec::new(vec![QueryEntry::Var(1), QueryEntry::Var(2)]),
            }],
            hadamard(),
            vec![true, false],
        )
        .unwrap()
    }

    #[test]
    fn realize_query_examples() {
        use QueryEntry::*;
        let spec = QuerySpec::new(vec![Var(1), Fixed, Var(2), Fixed]);
        let q = realize_query(&spec, &bits("1100")).unwrap();
        assert_eq!(q.to_row_major(), SquareMatrix::diagonal(vec![-1.0, 1.0, -1.0, 1.0]).to_row_major());
        let q = realize_query(&QuerySpec::fixed(4), &bits("1011")).unwrap();
        assert_eq!(q.to_row_major(), SquareMatrix::identity(4).to_row_major());
        assert!(linalg::is_unitary(&q, MATRIX_TOL));
    }

    #[test]
    fn realize_query_var_out_of_range() {
        let spec = QuerySpec::new(vec![QueryEntry::Var(3), QueryEntry::Fixed]);
        assert!(matches!(
            realize_query(&spec, &bits("01")),
            Err(Error::VarIndexOutOfRange { index: 3, arity: 2 })
        ));
        let spec = QuerySpec::new(vec![QueryEntry::Var(0), QueryEntry::Fixed]);
        assert!(realize_query(&spec, &bits("01")).is_err());
    }

    #[test]
    fn constructor_rejects_bad_structure() {
        let start = StateVector::basis(2, 0).unwrap();
        let stage = Stage { unitary: hadamard(), query: QuerySpec::new(vec![QueryEntry::Var(3); 2]) };
        assert!(matches!(
            QueryAlgorithm::new(2, start.clone(), vec![stage], hadamard(), vec![true, false]),
            Err(Error::VarIndexOutOfRange { index: 3, arity: 2 })
        ));
        assert!(QueryAlgorithm::new(2, start.clone(), vec![], hadamard(), vec![true]).is_err());
        assert!(QueryAlgorithm::new(2, start.clone(), vec![], SquareMatrix::identity(4), vec![true, false]).is_err());
        let skew = hadamard().with_entry(0, 0, 0.0);
        assert!(matches!(
            QueryAlgorithm::new(2, start.clone(), vec![], skew.clone(), vec![true, false]),
            Err(Error::NonUnitary { .. })
        ));
        assert!(QueryAlgorithm::new_unverified(2, start, vec![], skew, vec![true, false]).is_ok());
    }

    #[test]
    fn two_var_hand_simulation() {
        let alg = two_var();
        // (1,0) -H-> (a,a) -Q(0,1)-> (a,-a) -H-> (0,1): label 0 with certainty.
        let out = compute(&alg, &bits("01")).unwrap();
        assert!(!out.output && out.exact);
        assert!((out.probability - 1.0).abs() <= NORM_TOL);
        let trace = run(&alg, &bits("01")).unwrap();
        assert!(trace.final_state().max_abs_diff(&[0.0, 1.0]).unwrap() <= NORM_TOL);
        for (x, want) in [("00", true), ("01", false), ("10", false), ("11", true)] {
            let out = compute(&alg, &bits(x)).unwrap();
            assert_eq!(out.output, want, "input {x}");
            assert!(out.exact);
        }
    }

    #[test]
    fn run_trace_shape() {
        let alg = two_var();
        let trace = run(&alg, &bits("10")).unwrap();
        assert_eq!(trace.states.len(), 2 * alg.t_queries() + 2);
        assert_eq!(trace.query_count(), 1);
        assert_eq!(trace.start().amplitudes(), &[1.0, 0.0]);
        for s in &trace.states {
            assert!((s.norm() - 1.0).abs() <= NORM_TOL);
        }
        assert!(matches!(run(&alg, &bits("101")), Err(Error::InputLength { expected: 2, found: 3 })));
    }

    #[test]
    fn run_matches_explicit_matrix_product() {
        let alg = two_var();
        for x in ["00", "01", "10", "11"] {
            let input = bits(x);
            let mut state = alg.start().clone();
            for stage in alg.stages() {
                state = linalg::apply(&stage.unitary, &state).unwrap();
                state = linalg::apply(&realize_query(&stage.query, &input).unwrap(), &state).unwrap();
            }
            state = linalg::apply(alg.final_unitary(), &state).unwrap();
            assert_eq!(&state, run(&alg, &input).unwrap().final_state());
        }
    }

    #[test]
    fn measure_examples() {
        let labels = [true, false, false, false];
        let (p0, p1) = measure(&StateVector::new(vec![-1.0, 0.0, 0.0, 0.0]).unwrap(), &labels).unwrap();
        assert_eq!((p0, p1), (0.0, 1.0));
        let (p0, p1) = measure(&StateVector::new(vec![0.0, 1.0, 0.0, 0.0]).unwrap(), &labels).unwrap();
        assert_eq!((p0, p1), (1.0, 0.0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (p0, p1) = measure(&StateVector::new(vec![h, h]).unwrap(), &[true, false]).unwrap();
        assert!((p0 - 0.5).abs() <= NORM_TOL && (p1 - 0.5).abs() <= NORM_TOL);
        assert!(measure(&StateVector::basis(2, 0).unwrap(), &labels).is_err());
    }

    #[test]
    fn ambiguous_measurement_is_reported() {
        let alg = QueryAlgorithm::new(
            1,
            StateVector::basis(2, 0).unwrap(),
            vec![],
            hadamard(),
            vec![true, false],
        )
        .unwrap();
        let out = compute(&alg, &bits("0")).unwrap();
        assert_eq!(out, Outcome { output: false, probability: 0.5, exact: false });
    }

    #[test]
    fn check_exact_on_two_var() {
        let alg = two_var();
        let f = BooleanFunction::verify(2).unwrap();
        let report = check_exact(&alg, &f).unwrap();
        assert!(report.exact);
        assert_eq!(report.inputs_tested, 4);
        assert_eq!(report.counterexample, None);
        assert_eq!(check_exact_parallel(&alg, &f).unwrap(), report);

        let wrong = alg.with_labels(vec![false, false]).unwrap();
        let report = check_exact(&wrong, &f).unwrap();
        assert_eq!(report.counterexample, Some(bits("00")));
        assert_eq!(report.min_correct_probability, 0.0);

        let f4 = BooleanFunction::verify(4).unwrap();
        assert!(matches!(check_exact(&alg, &f4), Err(Error::InputLength { .. })));
    }
}
