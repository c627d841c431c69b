//! q-sequences, normal reduction numbers and b-sequences.
//!
//! Nothing here knows about graphs or families: inputs are the integers
//! `q(kI)`, the graded lengths `l(I^n / Q I^{n-1})`, `e_0(I)` and `l(A/I)`,
//! and everything downstream depends on differences only.

use std::fmt;

use thiserror::Error;

use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid q-sequence: {0}")]
    InvalidQSequence(String),
    #[error("q-sequence not admissible: step at n={n} is {value}")]
    NotAdmissible { n: usize, value: i64 },
    #[error("index must be >= 1")]
    InvalidIndex,
    #[error("invalid step sequence: {0}")]
    InvalidSteps(String),
    #[error("inadmissible steps: b_{n} = {value} < 0")]
    InadmissibleB { n: usize, value: i64 },
    #[error("b-sequence needs r >= 1 (at least two entries)")]
    RankTooSmall,
    #[error("b-sequence entry b_{n} = {value} is negative")]
    NegativeB { n: usize, value: i64 },
    #[error("normal reduction number must be >= 1, got {0}")]
    InvalidReductionNumber(i64),
}

/// `q(0I) = p_g >= q(I) >= q(2I) >= ...`, stored up to (and including) a
/// repeated final value; later terms are that value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSequence {
    values: Vec<i64>,
}

impl QSequence {
    pub fn new(values: Vec<i64>) -> Result<Self, ReductionError> {
        let bad = |m: &str| Err(ReductionError::InvalidQSequence(m.to_string()));
        if values.len() < 2 {
            return bad("need at least two terms to witness stabilization");
        }
        if values.iter().any(|&v| v < 0) {
            return bad("terms must be nonnegative");
        }
        if values.windows(2).any(|w| w[1] > w[0]) {
            return bad("terms must be nonincreasing");
        }
        let n = values.len();
        if values[n - 1] != values[n - 2] {
            return bad("final value must repeat (stabilization)");
        }
        Ok(QSequence { values })
    }

    /// Builds a sequence from the drops `q(0I) - q(kI)` for `k = 1, 2, ...`.
    /// The unknown anchor `p_g` is fixed so that the limit is 0; all derived
    /// quantities depend on differences only.
    pub fn from_drops(drops: &[i64]) -> Result<Self, ReductionError> {
        let mut d = Vec::with_capacity(drops.len() + 1);
        d.push(0);
        d.extend_from_slice(drops);
        let top = *d.last().expect("nonempty");
        QSequence::new(d.iter().map(|x| top - x).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `q(kI)`, extended by the stable value.
    pub fn get(&self, k: usize) -> i64 {
        *self
            .values
            .get(k)
            .unwrap_or_else(|| self.values.last().expect("nonempty"))
    }

    /// `l(I^{n+1} / Q I^n) = (q_{n-1} - q_n) - (q_n - q_{n+1})` for `n >= 1`.
    pub fn step(&self, n: usize) -> Result<i64, ReductionError> {
        if n == 0 {
            return Err(ReductionError::InvalidIndex);
        }
        let v = (self.get(n - 1) - self.get(n)) - (self.get(n) - self.get(n + 1));
        if v < 0 {
            return Err(ReductionError::NotAdmissible { n, value: v });
        }
        Ok(v)
    }

    /// Checks that every step is nonnegative.
    pub fn check_admissible(&self) -> Result<(), ReductionError> {
        for n in 1..=self.values.len() {
            self.step(n)?;
        }
        Ok(())
    }

    /// Relative normal reduction number: least `n >= 1` with
    /// `q_{n-1} - q_n = q_n - q_{n+1}`.
    pub fn nr(&self) -> usize {
        (1..)
            .find(|&n| self.get(n - 1) - self.get(n) == self.get(n) - self.get(n + 1))
            .expect("stabilized sequence")
    }

    /// Normal reduction number: least `n >= 1` with `q_{n-1} = q_n`.
    pub fn br(&self) -> usize {
        let br = (1..)
            .find(|&n| self.get(n - 1) == self.get(n))
            .expect("stabilized sequence");
        debug_assert!(br >= self.nr());
        br
    }

    /// The sequence of `I_k = closure(I^k)`: `q(n I_k) = q(kn I)`.
    pub fn of_power(&self, k: usize) -> QSequence {
        assert!(k >= 1);
        let len = self.values.len().div_ceil(k) + 2;
        QSequence {
            values: (0..len).map(|n| self.get(n * k)).collect(),
        }
    }
}

pub fn step_from_q(q: &QSequence, n: usize) -> Result<i64, ReductionError> {
    q.step(n)
}

pub fn nr_from_q(q: &QSequence) -> usize {
    q.nr()
}

pub fn br_from_q(q: &QSequence) -> usize {
    q.br()
}

/// `br(closure(I^k)) = ceil((r - 1) / k) + 1`.
pub fn br_power(r: usize, k: usize) -> usize {
    assert!(r >= 1 && k >= 1);
    (r - 1).div_ceil(k) + 1
}

/// `s_n = l(I^n / Q I^{n-1})` for `n = 1, 2, ...`, with `e_0` and `l(A/I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSequence {
    steps: Vec<i64>,
    e0: i64,
    colength: i64,
}

impl StepSequence {
    pub fn new(steps: Vec<i64>, e0: i64, colength: i64) -> Result<Self, ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidSteps(m));
        if steps.is_empty() {
            return bad("empty".into());
        }
        if let Some(n) = steps.iter().position(|&s| s < 0) {
            return bad(format!("s_{} = {} is negative", n + 1, steps[n]));
        }
        if *steps.last().expect("nonempty") != 0 {
            return bad("last step must be 0".into());
        }
        if steps[0] != e0 - colength {
            return bad(format!(
                "s_1 = {} but e_0 - l(A/I) = {}",
                steps[0],
                e0 - colength
            ));
        }
        Ok(StepSequence {
            steps,
            e0,
            colength,
        })
    }

    /// `s_n`, 1-based; zero past the stored range.
    pub fn get(&self, n: usize) -> i64 {
        assert!(n >= 1);
        self.steps.get(n - 1).copied().unwrap_or(0)
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn e0(&self) -> i64 {
        self.e0
    }

    pub fn colength(&self) -> i64 {
        self.colength
    }

    /// Largest `n` with `s_n > 0`; equals `br(I)` when the normal tangent
    /// cone is Cohen-Macaulay.
    pub fn r(&self) -> usize {
        self.steps.iter().rposition(|&s| s > 0).map_or(0, |i| i + 1)
    }

    /// `b_0 = l(A/I)`, `b_n = s_n - s_{n+1}` for `1 <= n <= r`.
    pub fn b_sequence(&self) -> Result<BSequence, ReductionError> {
        let r = self.r();
        if r == 0 {
            return Err(ReductionError::RankTooSmall);
        }
        let mut b = Vec::with_capacity(r + 1);
        b.push(self.colength);
        for n in 1..=r {
            let v = self.get(n) - self.get(n + 1);
            if v < 0 {
                return Err(ReductionError::InadmissibleB { n, value: v });
            }
            b.push(v);
        }
        let seq = BSequence::new(b)?;
        debug_assert_eq!(seq.e0(), self.e0);
        Ok(seq)
    }
}

pub fn b_sequence(steps: &StepSequence) -> Result<BSequence, ReductionError> {
    steps.b_sequence()
}

/// `b_0, ..., b_r` with `b_n = l(B_n)`, `b_0 = l(A/I)` and `sum b_n = e_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BSequence {
    b: Vec<i64>,
}

impl BSequence {
    pub fn new(b: Vec<i64>) -> Result<Self, ReductionError> {
        if b.len() < 2 {
            return Err(ReductionError::RankTooSmall);
        }
        if let Some(n) = b.iter().position(|&x| x < 0) {
            return Err(ReductionError::NegativeB { n, value: b[n] });
        }
        Ok(BSequence { b })
    }

    pub fn values(&self) -> &[i64] {
        &self.b
    }

    pub fn r(&self) -> usize {
        self.b.len() - 1
    }

    pub fn e0(&self) -> i64 {
        self.b.iter().sum()
    }

    pub fn colength(&self) -> i64 {
        self.b[0]
    }

    fn prefix(&self, n: usize) -> i64 {
        self.b[..n].iter().sum()
    }

    /// `l(A/L_n) = b_0 + ... + b_{n-1}` for `n = 1..=r`, `L_n = Q + I^n`.
    pub fn l_colengths(&self) -> Vec<i64> {
        (1..=self.r()).map(|n| self.prefix(n)).collect()
    }

    /// `b_k = b_{r-k}` for all `k`.
    pub fn is_symmetric(&self) -> bool {
        self.b.iter().eq(self.b.iter().rev())
    }

    /// `l(A/L_n) + l(A/L_{r+1-n}) = e_0` for `n = 1..=ceil(r/2)`.
    pub fn complementarity_check(&self) -> bool {
        let r = self.r();
        let e0 = self.e0();
        let ok = (1..=r.div_ceil(2)).all(|n| self.prefix(n) + self.prefix(r + 1 - n) == e0);
        debug_assert_eq!(ok, self.is_symmetric());
        ok
    }

    /// `sum_{k=2}^{r} (k-1) b_k = b_0 - chi(Z)`.
    pub fn eqbb_check(&self, chi: &Q) -> bool {
        let lhs: i64 = self
            .b
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, &b)| (k as i64 - 1) * b)
            .sum();
        q(lhs) == q(self.b[0]) - chi
    }
}

impl fmt::Display for BSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(r - 1) Z^2 + K_X Z = 0`. For `r = 1` this is `K_X Z = 0`, for
/// `r = 2` it is `chi(Z) = 0`. Expects `Z^2 < 0`.
pub fn gorenstein_cycle_criterion(zsq: i64, kz: i64, r: usize) -> bool {
    debug_assert!(zsq < 0);
    (r as i64 - 1) * zsq + kz == 0
}

/// The unique `r >= 1` solving the cycle criterion, if any.
pub fn criterion_solution(zsq: i64, kz: i64) -> Option<usize> {
    let e0 = -zsq;
    if e0 <= 0 || kz < 0 || kz % e0 != 0 {
        return None;
    }
    Some(1 + (kz / e0) as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BrClass {
    /// `br = 1`
    PgIdeal,
    /// `br = 2`
    Elliptic,
    Higher,
}

impl BrClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BrClass::PgIdeal => "pg",
            BrClass::Elliptic => "elliptic",
            BrClass::Higher => "higher",
        }
    }
}

pub fn classify_by_br(r: i64) -> Result<BrClass, ReductionError> {
    match r {
        1 => Ok(BrClass::PgIdeal),
        2 => Ok(BrClass::Elliptic),
        r if r > 2 => Ok(BrClass::Higher),
        r => Err(ReductionError::InvalidReductionNumber(r)),
    }
}

/// `l(A/I) <= p_g + 2 - r`, valid in the Gorenstein case with `r >= 2`.
pub fn colength_bound_check(colength: i64, pg: i64, r: i64) -> bool {
    colength <= pg + 2 - r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> QSequence {
        QSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn steps_from_q() {
        assert_eq!(qs(&[1, 0, 0]).step(1), Ok(1));
        // drops of the (3,6,6) maximal ideal: q_0 - q_k = 4, 6, 7, 7
        let b366 = QSequence::from_drops(&[4, 6, 7, 7]).unwrap();
        assert_eq!(b366.step(2), Ok(1));
        assert_eq!(
            (1..=4).map(|n| b366.step(n).unwrap()).collect::<Vec<_>>(),
            vec![2, 1, 1, 0]
        );
        assert_eq!(qs(&[10, 7, 7]).step(1), Ok(3));
        assert_eq!(
            qs(&[5, 4, 2, 2]).step(1),
            Err(ReductionError::NotAdmissible { n: 1, value: -1 })
        );
        assert_eq!(qs(&[1, 0, 0]).step(0), Err(ReductionError::InvalidIndex));
    }

    #[test]
    fn rejects_bad_q_sequences() {
        assert!(QSequence::new(vec![3]).is_err());
        assert!(QSequence::new(vec![3, 4, 4]).is_err());
        assert!(QSequence::new(vec![3, 2]).is_err());
        assert!(QSequence::new(vec![-1, -1]).is_err());
    }

    #[test]
    fn reduction_numbers() {
        let c = qs(&[4, 4]);
        assert_eq!((c.nr(), c.br()), (1, 1));
        let e = qs(&[10, 7, 7]);
        assert_eq!(e.br(), 2);
        let s = qs(&[1, 0, 0]);
        assert_eq!((s.nr(), s.br()), (2, 2));
        let b366 = QSequence::from_drops(&[4, 6, 7, 7]).unwrap();
        assert_eq!(b366.br(), 4);
    }

    #[test]
    fn powers() {
        assert_eq!(br_power(7, 1), 7);
        assert_eq!(br_power(4, 3), 2);
        for r in 2..20 {
            assert_eq!(br_power(r, r - 1), 2);
        }
        let b366 = QSequence::from_drops(&[4, 6, 7, 7]).unwrap();
        for k in 1..=4 {
            assert_eq!(b366.of_power(k).br(), br_power(4, k));
        }
    }

    #[test]
    fn b_sequences() {
        let s = StepSequence::new(vec![2, 2, 1, 1, 0], 3, 1).unwrap();
        assert_eq!(s.r(), 4);
        assert_eq!(s.b_sequence().unwrap().values(), &[1, 0, 1, 0, 1]);
        let s = StepSequence::new(vec![2, 1, 1, 0], 3, 1).unwrap();
        assert_eq!(s.b_sequence().unwrap().values(), &[1, 1, 0, 1]);
        let s = StepSequence::new(vec![1, 0], 2, 1).unwrap();
        assert_eq!(s.b_sequence().unwrap().values(), &[1, 1]);

        assert!(StepSequence::new(vec![2, 1], 3, 1).is_err());
        assert!(StepSequence::new(vec![2, 0], 4, 1).is_err());
        let up = StepSequence::new(vec![1, 2, 0], 2, 1).unwrap();
        assert_eq!(
            up.b_sequence(),
            Err(ReductionError::InadmissibleB { n: 1, value: -1 })
        );
    }

    #[test]
    fn l_colengths_and_symmetry() {
        let g = BSequence::new(vec![1, 0, 1, 0, 1]).unwrap();
        assert_eq!(g.l_colengths(), vec![1, 1, 2, 2]);
        assert!(g.is_symmetric());
        assert!(g.complementarity_check());
        let n = BSequence::new(vec![1, 1, 0, 1]).unwrap();
        assert_eq!(n.l_colengths(), vec![1, 2, 2]);
        assert!(!n.is_symmetric());
        assert!(!n.complementarity_check());
        assert_eq!(BSequence::new(vec![3]), Err(ReductionError::RankTooSmall));
        assert!(BSequence::new(vec![2, 3, 2]).unwrap().is_symmetric());
        // r = 1: 2 l = e_0 exactly when b_0 = b_1.
        assert!(BSequence::new(vec![2, 2]).unwrap().complementarity_check());
        assert!(!BSequence::new(vec![1, 2]).unwrap().complementarity_check());
    }

    #[test]
    fn cycle_criterion() {
        assert!(gorenstein_cycle_criterion(-3, 9, 4));
        assert!(!gorenstein_cycle_criterion(-3, 5, 3));
        assert!(gorenstein_cycle_criterion(-2, 0, 1));
        assert_eq!(criterion_solution(-3, 9), Some(4));
        assert_eq!(criterion_solution(-3, 5), None);
        assert_eq!(criterion_solution(-2, 0), Some(1));
        assert_eq!(criterion_solution(-1, -1), None);
    }

    #[test]
    fn eqbb() {
        let g = BSequence::new(vec![1, 0, 1, 0, 1]).unwrap();
        assert!(g.eqbb_check(&q(-3)));
        let n = BSequence::new(vec![1, 1, 0, 1]).unwrap();
        assert!(n.eqbb_check(&q(-1)));
        assert!(!n.eqbb_check(&q(0)));
        let r1 = BSequence::new(vec![4, 2]).unwrap();
        assert!(r1.eqbb_check(&q(4)));
    }

    #[test]
    fn br_classes_and_bounds() {
        assert_eq!(classify_by_br(1), Ok(BrClass::PgIdeal));
        assert_eq!(classify_by_br(2), Ok(BrClass::Elliptic));
        assert_eq!(classify_by_br(4), Ok(BrClass::Higher));
        assert!(classify_by_br(0).is_err());
        assert!(colength_bound_check(3, 10, 2));
        assert!(colength_bound_check(1, 1, 2));
        assert!(!colength_bound_check(5, 3, 2));
    }

    fn b_strategy() -> impl Strategy<Value = Vec<i64>> {
        (prop::collection::vec(0i64..5, 1..8), 1i64..5).prop_map(|(mut v, last)| {
            v.push(last);
            v
        })
    }

    proptest! {
        #[test]
        fn symmetric_iff_complementary(b in b_strategy()) {
            // rebuild the step sequence the b-sequence came from
            let r = b.len() - 1;
            let steps: Vec<i64> = (1..=r + 1).map(|n| b[n.min(r + 1)..].iter().sum()).collect();
            let e0: i64 = b.iter().sum();
            let s = StepSequence::new(steps, e0, b[0]).unwrap();
            let seq = s.b_sequence().unwrap();
            prop_assert_eq!(seq.values(), &b[..]);
            prop_assert_eq!(seq.e0(), e0);
            prop_assert_eq!(seq.colength(), b[0]);
            prop_assert_eq!(seq.is_symmetric(), seq.complementarity_check());
        }

        #[test]
        fn power_formula_matches_rescaled_q(drops in prop::collection::vec(0i64..4, 1..8), k in 1usize..6) {
            // concave drop profiles: nonincreasing first differences
            let mut deltas = drops.clone();
            deltas.sort_unstable_by(|a, b| b.cmp(a));
            let mut acc = 0;
            let mut d: Vec<i64> = deltas.iter().map(|x| { acc += x; acc }).collect();
            d.push(acc);
            let q = QSequence::from_drops(&d).unwrap();
            prop_assert!(q.check_admissible().is_ok());
            prop_assert_eq!(q.of_power(k).br(), br_power(q.br(), k));
        }
    }
}
