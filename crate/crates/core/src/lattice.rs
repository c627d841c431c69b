//! Exact intersection theory on a weighted dual graph.
//!
//! Everything here is exact: rationals are `BigRational`, minors are
//! `BigInt`. The [`Lattice`] caches the intersection form, the canonical
//! values `K_X E_i` and the dual basis `E_j^*` of a validated graph.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::WeightedDualGraph;
use crate::rational::{ceil_i64, format_q, is_nonnegative, lcm_denominators, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cycle has {found} coefficients, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("graph has no arrows, so no cycle can be reconstructed")]
    NoArrows,
    #[error("bound has a negative coefficient")]
    NegativeBound,
    #[error("bound must be integral")]
    NonIntegralBound,
    #[error("bound must be a positive cycle")]
    ZeroBound,
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Symmetric integer matrix `M_ij = E_i E_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    n: usize,
    entries: Vec<i64>,
}

impl IntersectionForm {
    pub fn of(graph: &WeightedDualGraph) -> Self {
        let n = graph.len();
        let mut entries = vec![0; n * n];
        for (i, v) in graph.vertices().iter().enumerate() {
            entries[i * n + i] = v.self_intersection;
        }
        for &(i, j) in graph.edges() {
            entries[i * n + j] += 1;
            entries[j * n + i] += 1;
        }
        IntersectionForm { n, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        let form = IntersectionForm { n, entries };
        for i in 0..n {
            for j in 0..i {
                if form.get(i, j) != form.get(j, i) {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(form)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// True iff every leading principal minor of `-M` is positive.
    pub fn is_negative_definite(&self) -> bool {
        self.first_failing_minor().is_none()
    }

    /// Index `k` (0-based) of the first leading principal minor of `-M` of
    /// size `k + 1` that is not positive, if any.
    ///
    /// Fraction-free (Bareiss) elimination: the pivot at step `k` equals
    /// that minor, and while all earlier pivots are positive no row swaps
    /// are needed.
    pub fn first_failing_minor(&self) -> Option<usize> {
        let n = self.n;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(-self.get(i, j))).collect())
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return Some(k);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        None
    }

    /// Leading principal minors of `-M`, each computed independently.
    pub fn negated_leading_minors(&self) -> Vec<BigInt> {
        (1..=self.n)
            .map(|k| {
                let rows: Vec<Vec<Q>> = (0..k)
                    .map(|i| (0..k).map(|j| q(-self.get(i, j))).collect())
                    .collect();
                determinant(rows).to_integer()
            })
            .collect()
    }
}

fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            let f = &row[col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= p * &f;
            }
        }
    }
    det
}

/// Exact inverse of a nonsingular matrix by Gauss-Jordan elimination.
fn inverse(form: &IntersectionForm) -> Vec<Vec<Q>> {
    let n = form.size();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = (0..n).map(|j| q(form.get(i, j))).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("negative definite form is nonsingular");
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &pivot;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= p * &f;
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// A rational cycle `sum c_i E_i`, coefficients in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    coeffs: Vec<Q>,
}

impl Cycle {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Cycle { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Cycle {
            coeffs: vec![Q::zero(); n],
        }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Cycle {
            coeffs: coeffs.iter().map(|&c| q(c)).collect(),
        }
    }

    /// The curve `E_i` itself.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut c = Cycle::zero(n);
        c.coeffs[i] = Q::one();
        c
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Q::is_integer)
    }

    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(is_nonnegative)
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &Cycle) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    /// Coefficientwise `self > other`: `self >= other` and `self != other`.
    pub fn exceeds(&self, other: &Cycle) -> bool {
        self.dominates(other) && self != other
    }

    pub fn scale(&self, s: &Q) -> Cycle {
        Cycle {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Coefficientwise ceiling.
    pub fn ceil(&self) -> Vec<i64> {
        self.coeffs.iter().map(ceil_i64).collect()
    }

    pub fn max_coefficient(&self) -> Option<&Q> {
        self.coeffs.iter().max()
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        Cycle {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_q(c))?;
        }
        f.write_str(")")
    }
}

/// `K_X E_i = 2 g_i - 2 - E_i^2` for every vertex (adjunction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalData {
    pub kvals: Vec<i64>,
}

pub fn intersection_form(graph: &WeightedDualGraph) -> IntersectionForm {
    IntersectionForm::of(graph)
}

pub fn canonical_values(graph: &WeightedDualGraph) -> CanonicalData {
    let kvals = graph
        .vertices()
        .iter()
        .map(|v| 2 * i64::from(v.genus) - 2 - v.self_intersection)
        .collect();
    CanonicalData { kvals }
}

/// Cycles from the `Z not> Z_K` enumeration, each paired with `chi(Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalEnumeration {
    pub canonical_cycle: Cycle,
    pub entries: Vec<(Cycle, Q)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiMin {
    pub value: Q,
    pub witness: Cycle,
    pub bound: Cycle,
}

pub const FIXED_COMPONENT_CAVEAT: &str =
    "superset: the no-fixed-component hypothesis on O_X(-Z) is not checked combinatorially";
pub const NONPOSITIVE_CANONICAL_WARNING: &str =
    "Z_K has no positive coefficient; enumeration is empty by convention";

/// Cached exact data of one graph.
#[derive(Debug, Clone)]
pub struct Lattice {
    ids: Vec<String>,
    form: IntersectionForm,
    canonical: CanonicalData,
    duals: Vec<Cycle>,
    arrows: Vec<(usize, u64)>,
}

impl Lattice {
    pub fn new(graph: &WeightedDualGraph) -> Self {
        let form = IntersectionForm::of(graph);
        let inv = inverse(&form);
        // E_j^* E_i = -delta_ij, so E_j^* = -(M^{-1}) e_j.
        let duals: Vec<Cycle> = (0..form.size())
            .map(|j| Cycle::new(inv.iter().map(|row| -row[j].clone()).collect()))
            .collect();
        for d in &duals {
            debug_assert!(d.coeffs.iter().all(Signed::is_positive));
        }
        Lattice {
            ids: graph.vertices().iter().map(|v| v.id.clone()).collect(),
            form,
            canonical: canonical_values(graph),
            duals,
            arrows: graph.arrows().iter().map(|a| (a.at, a.weight)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn canonical(&self) -> &CanonicalData {
        &self.canonical
    }

    pub fn index_of(&self, id: &str) -> Result<usize, LatticeError> {
        self.ids
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| LatticeError::UnknownVertex(id.to_string()))
    }

    fn check_dim(&self, z: &Cycle) -> Result<(), LatticeError> {
        if z.len() == self.len() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.len(),
                found: z.len(),
            })
        }
    }

    /// `Z E_i`.
    pub fn pairing_with_vertex(&self, z: &Cycle, i: usize) -> Q {
        let mut acc = Q::zero();
        for (j, c) in z.coeffs.iter().enumerate() {
            let m = self.form.get(i, j);
            if m != 0 && !c.is_zero() {
                acc += c * q(m);
            }
        }
        acc
    }

    /// `Z W = Z^T M W`.
    pub fn pairing(&self, z: &Cycle, w: &Cycle) -> Result<Q, LatticeError> {
        self.check_dim(z)?;
        self.check_dim(w)?;
        Ok(z.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * self.pairing_with_vertex(w, i))
            .sum())
    }

    pub fn self_intersection(&self, z: &Cycle) -> Result<Q, LatticeError> {
        self.pairing(z, z)
    }

    /// `K_X Z`.
    pub fn canonical_pairing(&self, z: &Cycle) -> Result<Q, LatticeError> {
        self.check_dim(z)?;
        Ok(z.coeffs
            .iter()
            .zip(&self.canonical.kvals)
            .map(|(c, &k)| c * q(k))
            .sum())
    }

    /// `chi(Z) = -(Z^2 + K_X Z) / 2`.
    pub fn chi(&self, z: &Cycle) -> Result<Q, LatticeError> {
        let v = -(self.self_intersection(z)? + self.canonical_pairing(z)?) / q(2);
        debug_assert!(!z.is_integral() || v.is_integer());
        Ok(v)
    }

    pub fn dual(&self, index: usize) -> &Cycle {
        &self.duals[index]
    }

    /// `E_j^*` with `E_j^* E_i = -delta_ij`.
    pub fn dual_cycle(&self, id: &str) -> Result<&Cycle, LatticeError> {
        Ok(&self.duals[self.index_of(id)?])
    }

    /// `Z = sum weight * E_at^*` over the arrowheads.
    pub fn cycle_from_arrows(&self) -> Result<Cycle, LatticeError> {
        if self.arrows.is_empty() {
            return Err(LatticeError::NoArrows);
        }
        let mut z = Cycle::zero(self.len());
        for &(at, w) in &self.arrows {
            z = &z + &self.duals[at].scale(&Q::from_integer(BigInt::from(w)));
        }
        debug_assert!(self.is_antinef(&z));
        Ok(z)
    }

    /// `Z E_i <= 0` for all `i`.
    pub fn is_antinef(&self, z: &Cycle) -> bool {
        z.len() == self.len()
            && (0..self.len()).all(|i| !self.pairing_with_vertex(z, i).is_positive())
    }

    /// Smallest positive integral anti-nef cycle, via a Laufer computation
    /// sequence starting at the first vertex.
    pub fn fundamental_cycle(&self) -> Cycle {
        let n = self.len();
        let mut z = vec![0i64; n];
        z[0] = 1;
        loop {
            let bad = (0..n).find(|&i| (0..n).map(|j| self.form.get(i, j) * z[j]).sum::<i64>() > 0);
            match bad {
                Some(i) => z[i] += 1,
                None => return Cycle::from_integers(&z),
            }
        }
    }

    /// `Z_K` with `(K_X + Z_K) E_i = 0`, i.e. `Z_K = sum_j (K_X E_j) E_j^*`.
    pub fn canonical_cycle(&self) -> Cycle {
        let mut z = Cycle::zero(self.len());
        for (j, &k) in self.canonical.kvals.iter().enumerate() {
            if k != 0 {
                z = &z + &self.duals[j].scale(&q(k));
            }
        }
        z
    }

    /// All nonzero integral anti-nef `Z` with `Z - W` not effective,
    /// sorted lexicographically.
    pub fn enumerate_antinef_below(&self, w: &Cycle) -> Result<Vec<Cycle>, LatticeError> {
        self.check_dim(w)?;
        if !w.is_effective() {
            return Err(LatticeError::NegativeBound);
        }
        if !w.is_integral() {
            return Err(LatticeError::NonIntegralBound);
        }
        Ok(self.antinef_not_dominating(w))
    }

    /// All nonzero integral anti-nef `Z` with `not (Z > Z_K)`, with `chi(Z)`.
    pub fn enumerate_antinef_not_exceeding_canonical(&self) -> CanonicalEnumeration {
        let zk = self.canonical_cycle();
        let mut warnings = vec![FIXED_COMPONENT_CAVEAT.to_string()];
        let mut cycles = Vec::new();
        if zk.coeffs.iter().any(Signed::is_positive) {
            cycles = self.antinef_not_dominating(&zk);
            // Z = Z_K itself is not excluded by "Z > Z_K".
            if zk.is_integral() && self.is_antinef(&zk) {
                cycles.push(zk.clone());
                cycles.sort();
            }
        } else {
            warnings.push(NONPOSITIVE_CANONICAL_WARNING.to_string());
        }
        let entries = cycles
            .into_iter()
            .map(|z| {
                let chi = self.chi(&z).expect("dimension checked");
                (z, chi)
            })
            .collect();
        CanonicalEnumeration {
            canonical_cycle: zk,
            entries,
            warnings,
        }
    }

    /// Integral anti-nef cycles are exactly `sum n_j E_j^*` with `n_j >= 0`
    /// and integral sum. Each `E_j^*` is strictly positive, so once a partial
    /// sum dominates the bound every extension does too; the search walks
    /// the `n` vectors depth-first and cuts there.
    fn antinef_not_dominating(&self, bound: &Cycle) -> Vec<Cycle> {
        let n = self.len();
        let den = lcm_denominators(self.duals.iter().flat_map(|d| d.coeffs.iter()));
        let scaled = |x: &Q| -> Q { x * Q::from_integer(den.clone()) };
        let nums: Vec<Vec<i128>> = self
            .duals
            .iter()
            .map(|d| {
                d.coeffs
                    .iter()
                    .map(|c| {
                        scaled(c)
                            .to_integer()
                            .to_i128()
                            .expect("dual coefficient overflow")
                    })
                    .collect()
            })
            .collect();
        let thresholds: Vec<i128> = bound
            .coeffs
            .iter()
            .map(|c| {
                scaled(c)
                    .ceil()
                    .to_integer()
                    .to_i128()
                    .expect("bound overflow")
            })
            .collect();
        let search = DominanceSearch {
            nums,
            thresholds,
            den: den.to_i128().expect("denominator overflow"),
        };
        let mut out = Vec::new();
        let mut partial = vec![0i128; n];
        if !search.dominated(&partial) {
            search.descend(0, &mut partial, false, &mut out);
        }
        out.sort();
        out
    }

    /// Minimum of `chi` over integral `0 < C <= bound`, with the
    /// lexicographically least minimizer. A bounded search, not a
    /// certificate for the global minimum.
    pub fn chi_min(&self, bound: &Cycle) -> Result<ChiMin, LatticeError> {
        self.check_dim(bound)?;
        if !bound.is_effective() {
            return Err(LatticeError::NegativeBound);
        }
        let Some(limits) = bound.to_integers() else {
            return Err(LatticeError::NonIntegralBound);
        };
        if bound.is_zero() {
            return Err(LatticeError::ZeroBound);
        }
        let n = self.len();
        let k = &self.canonical.kvals;
        let chi2 = |c: &[i64]| -> i64 {
            // -2 chi = C^2 + K C
            let mut s = 0i64;
            for (i, &ci) in c.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                let row: i64 = c
                    .iter()
                    .enumerate()
                    .map(|(j, &cj)| self.form.get(i, j) * cj)
                    .sum();
                s += ci * (row + k[i]);
            }
            -s
        };
        let mut c = vec![0i64; n];
        let mut best: Option<(i64, Vec<i64>)> = None;
        // Odometer over the box in lexicographic order (last coordinate fastest).
        loop {
            let mut pos = n;
            loop {
                if pos == 0 {
                    let (v, w) = best.expect("box contains a positive cycle");
                    return Ok(ChiMin {
                        value: Q::new(BigInt::from(v), BigInt::from(2)),
                        witness: Cycle::from_integers(&w),
                        bound: bound.clone(),
                    });
                }
                pos -= 1;
                if c[pos] < limits[pos] {
                    c[pos] += 1;
                    for x in &mut c[pos + 1..] {
                        *x = 0;
                    }
                    break;
                }
            }
            let v = chi2(&c);
            if best.as_ref().map_or(true, |(b, _)| v < *b) {
                best = Some((v, c.clone()));
            }
        }
    }

    /// Default search box for [`Lattice::chi_min`]:
    /// `2 * max(ceil(Z_K), 0) + Z_f`, coefficientwise.
    pub fn default_chi_bound(&self) -> Cycle {
        let zk = self.canonical_cycle().ceil();
        let zf = self.fundamental_cycle().to_integers().expect("integral");
        let b: Vec<i64> = zk.iter().zip(&zf).map(|(k, f)| 2 * k.max(&0) + f).collect();
        Cycle::from_integers(&b)
    }

    /// Human-readable `id:coeff` listing, zero terms omitted.
    pub fn describe(&self, z: &Cycle) -> String {
        let parts: Vec<String> = self
            .ids
            .iter()
            .zip(&z.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(id, c)| format!("{id}:{}", format_q(c)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

struct DominanceSearch {
    nums: Vec<Vec<i128>>,
    thresholds: Vec<i128>,
    den: i128,
}

impl DominanceSearch {
    fn dominated(&self, partial: &[i128]) -> bool {
        partial.iter().zip(&self.thresholds).all(|(a, t)| a >= t)
    }

    fn descend(&self, j: usize, partial: &mut [i128], nonzero: bool, out: &mut Vec<Cycle>) {
        if j == self.nums.len() {
            if nonzero && partial.iter().all(|x| x % self.den == 0) {
                out.push(Cycle::from_integers(
                    &partial
                        .iter()
                        .map(|x| (x / self.den) as i64)
                        .collect::<Vec<_>>(),
                ));
            }
            return;
        }
        self.descend(j + 1, partial, nonzero, out);
        let mut added = 0i128;
        loop {
            for (p, d) in partial.iter_mut().zip(&self.nums[j]) {
                *p += d;
            }
            added += 1;
            if self.dominated(partial) {
                break;
            }
            self.descend(j + 1, partial, true, out);
        }
        for (p, d) in partial.iter_mut().zip(&self.nums[j]) {
            *p -= d * added;
        }
    }
}
