//! Brieskorn hypersurfaces `x^a + y^b + z^c = 0` and the maximal ideal.
//!
//! Integral closures of powers of `m` are layered monomial ideals over
//! `Q = (y, z)`: `closure(m^n) = sum_k x^k Q^{n - n_k}` with `n_k = floor(kb/a)`.
//! `c` enters no formula beyond the ordering `b <= c`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::rational::q;
use crate::reduction::{br_power, BSequence, QSequence, StepSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrieskornError {
    #[error("type ({a},{b},{c}) must satisfy 2 <= a <= b <= c")]
    BadOrder { a: u32, b: u32, c: u32 },
    #[error("n = {n} outside 1..={r}")]
    OutOfRange { n: u32, r: u32 },
    #[error("layer vector has {found} entries, expected {expected}")]
    LayerCount { expected: usize, found: usize },
    #[error("layers not closed under x: e_{k} < e_{next}", next = k + 1)]
    NotXClosed { k: usize },
    #[error("layers not closed under x^a: e_0 = {e0} > e_(a-1) + b = {bound}")]
    NotWrapClosed { e0: u64, bound: u64 },
}

/// Characteristic hypothesis under which the family results hold; recorded, never checked.
pub const CHARACTERISTIC_NOTE: &str = "char k does not divide abc";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrieskornType {
    a: u32,
    b: u32,
    c: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub d: u32,
    /// `n_1, ..., n_{a-1}`
    pub n: Vec<u32>,
    pub r: u32,
    pub zsq: i64,
    pub kz: i64,
}

impl BrieskornType {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, BrieskornError> {
        if a < 2 || a > b || b > c {
            return Err(BrieskornError::BadOrder { a, b, c });
        }
        Ok(BrieskornType { a, b, c })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn d(&self) -> u32 {
        self.a.gcd(&self.b)
    }

    /// `n_k = floor(kb/a)`, with `n_0 = 0`.
    pub fn n_k(&self, k: u32) -> u32 {
        k * self.b / self.a
    }

    /// `br(m) = nr(m) = n_{a-1}`.
    pub fn r(&self) -> u32 {
        self.n_k(self.a - 1)
    }

    pub fn zsq(&self) -> i64 {
        -i64::from(self.a)
    }

    pub fn kz(&self) -> i64 {
        let (a, b, d) = (i64::from(self.a), i64::from(self.b), i64::from(self.d()));
        d + a * b - b - 2 * a
    }

    /// `chi(Z) = -(Z^2 + K_X Z)/2` for the maximal ideal cycle.
    pub fn chi(&self) -> i64 {
        let twice = -(self.zsq() + self.kz());
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            d: self.d(),
            n: (1..self.a).map(|k| self.n_k(k)).collect(),
            r: self.r(),
            zsq: self.zsq(),
            kz: self.kz(),
        }
    }

    /// `closure(m^n)`: layer exponents `max(n - n_k, 0)`.
    pub fn overline_power(&self, n: u32) -> LayeredMonomialIdeal {
        LayeredMonomialIdeal {
            e: (0..self.a)
                .map(|k| u64::from(n.saturating_sub(self.n_k(k))))
                .collect(),
        }
    }

    /// Least `r` with `closure(m^{n+1}) = Q closure(m^n)` for every `n` in
    /// `[r, r + ab]`.
    pub fn br_direct(&self) -> u32 {
        let window = self.a * self.b;
        let mut start = 0;
        let mut n = 0;
        loop {
            if self.overline_power(n + 1) != self.overline_power(n).q_multiply() {
                start = n + 1;
            } else if n - start >= window {
                break;
            }
            n += 1;
        }
        assert_eq!(start, self.r(), "br(m) differs from n_(a-1) for {self}");
        start
    }

    /// `l(A/L_n) = min{k : n <= n_k}` with `L_n = Q + closure(m^n)`.
    pub fn l_colength(&self, n: u32) -> Result<u32, BrieskornError> {
        let r = self.r();
        if n < 1 || n > r {
            return Err(BrieskornError::OutOfRange { n, r });
        }
        Ok((1..self.a)
            .find(|&k| n <= self.n_k(k))
            .expect("n <= n_(a-1)"))
    }

    /// `l(closure(m^{k+1}) / Q closure(m^k)) = a - ceil(a(k+1)/b)`, checked
    /// against the layered colength difference.
    pub fn step(&self, k: u32) -> i64 {
        let (a, b) = (u64::from(self.a), u64::from(self.b));
        let formula = a as i64 - (a * u64::from(k + 1)).div_ceil(b) as i64;
        let by_layers =
            self.overline_power(k).q_multiply().colength() - self.overline_power(k + 1).colength();
        assert_eq!(
            formula, by_layers as i64,
            "step mismatch for {self} at k={k}"
        );
        formula
    }

    pub fn steps(&self) -> Vec<i64> {
        (0..=self.r()).map(|k| self.step(k)).collect()
    }

    /// `l_I = 1`, `e_0 = a`.
    pub fn b_sequence(&self) -> BSequence {
        let steps = StepSequence::new(self.steps(), i64::from(self.a), 1)
            .expect("step formula yields a valid step sequence");
        let b = steps.b_sequence().expect("steps are nonincreasing");
        debug_assert_eq!(b.r(), self.r() as usize);
        b
    }

    pub fn is_gorenstein(&self) -> GorensteinVerdicts {
        let (a, b, d) = (self.a, self.b, self.d());
        let arith = b % a == 0 || b % a == d % a;
        let cycle =
            crate::reduction::gorenstein_cycle_criterion(self.zsq(), self.kz(), self.r() as usize);
        let symmetric = self.b_sequence().is_symmetric();
        let v = GorensteinVerdicts {
            arith,
            cycle,
            symmetric,
        };
        assert!(v.agree(), "verdicts disagree for {self}: {v:?}");
        v
    }

    /// `delta_n = q(n m) - q((n+1) m)`, starting at `p_g - q(m) = 1 - chi(Z)`
    /// and descending by `step(n)`; returned up to the first zero.
    pub fn q_differences(&self) -> Vec<i64> {
        let mut deltas = vec![1 - self.chi()];
        for n in 1..=self.r() {
            let next = deltas[deltas.len() - 1] - self.step(n);
            deltas.push(next);
        }
        let zero = deltas
            .iter()
            .position(|&x| x == 0)
            .expect("differences reach 0");
        assert!(deltas[zero..].iter().all(|&x| x == 0));
        deltas.truncate(zero + 1);
        deltas
    }

    /// `q(0) - q(k m)` for `k = 1, ...`, ending on a repeat.
    pub fn q_drops(&self) -> Vec<i64> {
        let mut acc = 0;
        self.q_differences()
            .iter()
            .map(|d| {
                acc += d;
                acc
            })
            .collect()
    }

    /// q-sequence anchored at `q(m^N) = 0` for large `N`.
    pub fn q_sequence(&self) -> QSequence {
        QSequence::from_drops(&self.q_drops()).expect("drops are concave")
    }
}

impl fmt::Display for BrieskornType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GorensteinVerdicts {
    /// `b mod a` is `0` or `d`
    pub arith: bool,
    /// `(r-1) Z^2 + K_X Z = 0`
    pub cycle: bool,
    /// b-sequence symmetric
    pub symmetric: bool,
}

impl GorensteinVerdicts {
    pub fn agree(&self) -> bool {
        self.arith == self.cycle && self.cycle == self.symmetric
    }
}

/// `sum_k x^k Q^{e_k}`, `Q = (y, z)`, as a submodule of `A = sum_{k<a} x^k k[[y,z]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayeredMonomialIdeal {
    e: Vec<u64>,
}

impl LayeredMonomialIdeal {
    pub fn new(t: &BrieskornType, e: Vec<u64>) -> Result<Self, BrieskornError> {
        let ideal = LayeredMonomialIdeal { e };
        ideal.validate(t)?;
        Ok(ideal)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.e
    }

    pub fn validate(&self, t: &BrieskornType) -> Result<(), BrieskornError> {
        let a = t.a() as usize;
        if self.e.len() != a {
            return Err(BrieskornError::LayerCount {
                expected: a,
                found: self.e.len(),
            });
        }
        if let Some(k) = self.e.windows(2).position(|w| w[1] > w[0]) {
            return Err(BrieskornError::NotXClosed { k });
        }
        let bound = self.e[a - 1] + u64::from(t.b());
        if self.e[0] > bound {
            return Err(BrieskornError::NotWrapClosed {
                e0: self.e[0],
                bound,
            });
        }
        Ok(())
    }

    /// Multiplication by `Q` raises each layer by one.
    pub fn q_multiply(&self) -> Self {
        LayeredMonomialIdeal {
            e: self.e.iter().map(|e| e + 1).collect(),
        }
    }

    /// Monomials `y^i z^j` with `i + j < e_k`, summed over layers.
    pub fn colength(&self) -> u64 {
        self.e.iter().map(|e| e * (e + 1) / 2).sum()
    }
}

/// Everything computed for one type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrieskornAnalysis {
    pub t: BrieskornType,
    pub invariants: Invariants,
    pub chi: i64,
    pub br_direct: u32,
    pub steps: Vec<i64>,
    pub b_sequence: BSequence,
    pub l_colengths: Vec<u32>,
    pub q_drops: Vec<i64>,
    pub verdicts: GorensteinVerdicts,
    pub complementary: bool,
    pub eqbb: bool,
}

pub fn analyze(t: BrieskornType) -> BrieskornAnalysis {
    let b_sequence = t.b_sequence();
    let l_colengths: Vec<u32> = (1..=t.r())
        .map(|n| t.l_colength(n).expect("in range"))
        .collect();
    debug_assert!(b_sequence
        .l_colengths()
        .iter()
        .zip(&l_colengths)
        .all(|(x, y)| *x == i64::from(*y)));
    BrieskornAnalysis {
        t,
        invariants: t.invariants(),
        chi: t.chi(),
        br_direct: t.br_direct(),
        steps: t.steps(),
        complementary: b_sequence.complementarity_check(),
        eqbb: b_sequence.eqbb_check(&q(t.chi())),
        b_sequence,
        l_colengths,
        q_drops: t.q_drops(),
        verdicts: t.is_gorenstein(),
    }
}

/// All types with `2 <= a <= b <= c <= max`, in lexicographic order.
pub fn types_up_to(max: u32) -> impl Iterator<Item = BrieskornType> {
    (2..=max).flat_map(move |a| {
        (a..=max).flat_map(move |b| (b..=max).map(move |c| BrieskornType { a, b, c }))
    })
}

/// A type's failure of one of the family's structural claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub t: BrieskornType,
    pub claim: &'static str,
}

pub const CLAIM_R_LOWER_BOUND: &str = "r >= a - 1";
pub const CLAIM_ODD_NOT_GORENSTEIN: &str = "r and a both odd implies not Gorenstein";
pub const CLAIM_THREE_S: &str = "(3,3s,3s) is Gorenstein with r = 2s";
pub const CLAIM_A4_RESIDUES: &str = "a = 4 and Gorenstein implies r = 0, 1 mod 3";
pub const CLAIM_DIAGONAL: &str = "(a,a,a) is Gorenstein with r = a - 1";
pub const CLAIM_TAIL: &str = "b = a n_1 + delta with 0 < delta < a implies r = b - n_1 - 1";
pub const CLAIM_THREE_WAY: &str = "arith, cycle and b-symmetry verdicts agree";
pub const CLAIM_BR_DIRECT: &str = "direct reduction number equals n_(a-1)";
pub const CLAIM_COMPLEMENTARITY: &str = "complementarity holds iff Gorenstein";
pub const CLAIM_EQBB: &str = "sum (k-1) b_k = b_0 - chi";

/// Checks the structural claims for a single analysis.
pub fn violations(x: &BrieskornAnalysis) -> Vec<Violation> {
    let t = x.t;
    let (a, b, c, r) = (t.a(), t.b(), t.c(), t.r());
    let gor = x.verdicts.cycle;
    let mut out = Vec::new();
    let mut check = |ok: bool, claim| {
        if !ok {
            out.push(Violation { t, claim });
        }
    };
    check(x.verdicts.agree(), CLAIM_THREE_WAY);
    check(x.br_direct == r, CLAIM_BR_DIRECT);
    check(x.complementary == gor, CLAIM_COMPLEMENTARITY);
    check(x.eqbb, CLAIM_EQBB);
    check(r + 1 >= a, CLAIM_R_LOWER_BOUND);
    check(!(r % 2 == 1 && a % 2 == 1 && gor), CLAIM_ODD_NOT_GORENSTEIN);
    if a == 3 && b == c && b % 3 == 0 {
        check(gor && r == 2 * (b / 3), CLAIM_THREE_S);
    }
    if a == 4 && gor {
        check(r % 3 != 2, CLAIM_A4_RESIDUES);
    }
    if a == b && b == c {
        check(gor && r == a - 1, CLAIM_DIAGONAL);
    }
    let n1 = t.n_k(1);
    let delta = b - a * n1;
    if delta >= 1 {
        check(r == b - n1 - 1, CLAIM_TAIL);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSummary {
    pub max: u32,
    pub types: usize,
    pub gorenstein: usize,
    pub violations: Vec<Violation>,
}

pub fn corollary_suite(max: u32) -> SweepSummary {
    let mut summary = SweepSummary {
        max,
        types: 0,
        gorenstein: 0,
        violations: Vec::new(),
    };
    for t in types_up_to(max) {
        let x = analyze(t);
        summary.types += 1;
        summary.gorenstein += usize::from(x.verdicts.cycle);
        summary.violations.extend(violations(&x));
    }
    summary
}

/// `br(closure(m^k))` from the rescaled q-differences against
/// `ceil((r-1)/k) + 1`, for `1 <= k <= r`. Returns the failing `k`s.
pub fn power_reduction_mismatches(t: &BrieskornType) -> Vec<u32> {
    let qs = t.q_sequence();
    let r = t.r();
    assert_eq!(qs.br(), r as usize);
    (1..=r)
        .filter(|&k| qs.of_power(k as usize).br() != br_power(r as usize, k as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u32, b: u32, c: u32) -> BrieskornType {
        BrieskornType::new(a, b, c).unwrap()
    }

    #[test]
    fn ordering_enforced() {
        assert!(BrieskornType::new(1, 2, 3).is_err());
        assert!(BrieskornType::new(3, 2, 5).is_err());
        assert!(BrieskornType::new(2, 5, 4).is_err());
    }

    #[test]
    fn invariants() {
        let i = t(3, 5, 5).invariants();
        assert_eq!(
            (i.d, i.n.clone(), i.r, i.zsq, i.kz),
            (1, vec![1, 3], 3, -3, 5)
        );
        let i = t(2, 3, 6).invariants();
        assert_eq!((i.d, i.n, i.r), (1, vec![1], 1));
        let i = t(3, 6, 6).invariants();
        assert_eq!((i.d, i.n, i.r, i.kz), (3, vec![2, 4], 4, 9));
    }

    #[test]
    fn layered_ideals() {
        let x = t(3, 5, 5);
        assert_eq!(x.overline_power(3).exponents(), &[3, 2, 0]);
        assert_eq!(x.overline_power(1).exponents(), &[1, 0, 0]);
        assert_eq!(x.overline_power(4).exponents(), &[4, 3, 1]);
        assert_eq!(x.overline_power(3).q_multiply(), x.overline_power(4));
        assert_eq!(x.overline_power(0).q_multiply().exponents(), &[1, 1, 1]);
        assert_eq!(x.overline_power(2).q_multiply().exponents(), &[3, 2, 1]);
        assert_eq!(x.overline_power(1).colength(), 1);
        assert_eq!(x.overline_power(3).colength(), 9);
        assert_eq!(x.overline_power(2).colength(), 4);
        for n in 0..40 {
            assert!(x.overline_power(n).validate(&x).is_ok());
        }
        assert_eq!(
            LayeredMonomialIdeal::new(&x, vec![1, 2, 0]),
            Err(BrieskornError::NotXClosed { k: 0 })
        );
        assert!(LayeredMonomialIdeal::new(&x, vec![8, 3, 3]).is_ok());
        assert!(matches!(
            LayeredMonomialIdeal::new(&x, vec![9, 3, 3]),
            Err(BrieskornError::NotWrapClosed { .. })
        ));
        assert!(LayeredMonomialIdeal::new(&x, vec![1, 0]).is_err());
    }

    #[test]
    fn direct_reduction_numbers() {
        assert_eq!(t(3, 5, 5).br_direct(), 3);
        assert_eq!(t(2, 3, 6).br_direct(), 1);
        assert_eq!(t(3, 6, 6).br_direct(), 4);
    }

    #[test]
    fn l_colengths() {
        let x = t(3, 5, 5);
        let got: Vec<u32> = (1..=3).map(|n| x.l_colength(n).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 2]);
        assert_eq!(t(3, 6, 6).l_colength(4), Ok(2));
        assert_eq!(
            x.l_colength(0),
            Err(BrieskornError::OutOfRange { n: 0, r: 3 })
        );
        assert_eq!(
            x.l_colength(4),
            Err(BrieskornError::OutOfRange { n: 4, r: 3 })
        );
        for ty in types_up_to(9) {
            assert_eq!(ty.l_colength(1), Ok(1));
        }
    }

    #[test]
    fn steps() {
        assert_eq!(t(3, 5, 5).steps(), vec![2, 1, 1, 0]);
        let x = t(3, 6, 6);
        assert_eq!(x.steps(), vec![2, 2, 1, 1, 0]);
        let (a, b, d) = (3, 6, 3);
        let tail: i64 = (1..=x.r()).map(|k| x.step(k)).sum();
        assert_eq!(tail, (d + b * (a - 1) - 3 * a + 2) / 2);
    }

    #[test]
    fn b_sequences() {
        assert_eq!(t(3, 6, 6).b_sequence().values(), &[1, 0, 1, 0, 1]);
        assert_eq!(t(3, 5, 5).b_sequence().values(), &[1, 1, 0, 1]);
        assert_eq!(t(2, 2, 2).b_sequence().values(), &[1, 1]);
    }

    #[test]
    fn verdicts() {
        let all = |v: GorensteinVerdicts| (v.arith, v.cycle, v.symmetric);
        assert_eq!(all(t(3, 6, 6).is_gorenstein()), (true, true, true));
        assert_eq!(all(t(3, 5, 5).is_gorenstein()), (false, false, false));
        assert_eq!(all(t(4, 6, 7).is_gorenstein()), (true, true, true));
    }

    #[test]
    fn q_data() {
        let x = t(3, 6, 6);
        assert_eq!(x.chi(), -3);
        assert_eq!(x.q_differences(), vec![4, 2, 1, 0]);
        assert_eq!(x.q_drops(), vec![4, 6, 7, 7]);
        let qs = x.q_sequence();
        assert_eq!(qs.br(), 4);
        assert_eq!(qs.step(2), Ok(1));
        assert!(power_reduction_mismatches(&x).is_empty());
    }

    #[test]
    fn small_sweep_is_clean() {
        let s = corollary_suite(12);
        assert!(s.violations.is_empty(), "{:?}", s.violations);
        assert_eq!(s.types, types_up_to(12).count());
        for s in 1..=10 {
            let x = analyze(t(3, 3 * s, 3 * s));
            assert!(x.verdicts.cycle);
            assert_eq!(x.invariants.r, 2 * s);
        }
    }
}
