//! Homogeneous hypersurface singularities of degree `d`.
//!
//! The minimal resolution is a single curve `C` of genus `(d-1)(d-2)/2`
//! with `C^2 = -d`. Ideals are described by a cycle `u C` pulled back along
//! point blow-ups with multiplicities `a_i`.

use std::collections::BTreeMap;

use num_integer::Integer;
use thiserror::Error;

use crate::graph::{Arrow, Vertex, WeightedDualGraph};
use crate::lattice::{Cycle, Lattice};
use crate::rational::{q, Q};
use crate::reduction::br_power;

/// Degrees above this have no completeness claim.
pub const VERIFIED_MAX_DEGREE: u32 = 5;
pub const DEFAULT_SEARCH_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogError {
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("power n = {n} outside 1..={d}")]
    PowerOutOfRange { d: u32, n: u32 },
    #[error("u must be at least 1")]
    ZeroU,
    #[error("blow-up multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("on-curve index {index} out of range for {len} multiplicities")]
    BadIndex { index: usize, len: usize },
    #[error("on-curve index {0} repeated")]
    RepeatedIndex(usize),
    #[error("not anti-nef: P too heavy (Z.E0 = {0} > 0)")]
    NotAntinef(i64),
}

/// `S(t) = t(t-1)(t-2)/6`.
pub fn s(t: u64) -> u64 {
    if t < 2 {
        return 0;
    }
    t * (t - 1) * (t - 2) / 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomogModel {
    pub d: u32,
    pub genus: u32,
    pub csq: i64,
    pub kc: i64,
    pub pg: u64,
    pub br_m: u32,
}

pub fn model(d: u32) -> Result<HomogModel, HomogError> {
    if d < 3 {
        return Err(HomogError::DegreeTooSmall(d));
    }
    let di = i64::from(d);
    Ok(HomogModel {
        d,
        genus: (d - 1) * (d - 2) / 2,
        csq: -di,
        kc: di * (di - 2),
        pg: s(u64::from(d)),
        br_m: d - 1,
    })
}

/// `chi(uC) = du(u - d + 2)/2`.
pub fn chi_uc(d: u32, u: u32) -> i64 {
    let (d, u) = (i64::from(d), i64::from(u));
    let twice = d * u * (u - d + 2);
    assert_eq!(twice % 2, 0);
    twice / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerReport {
    pub d: u32,
    pub n: u32,
    pub colength: u64,
    pub q: u64,
    pub gorenstein: bool,
    pub br: u32,
}

/// Data of `m^n` for `1 <= n <= d`.
pub fn power_report(d: u32, n: u32) -> Result<PowerReport, HomogError> {
    model(d)?;
    if n < 1 || n > d {
        return Err(HomogError::PowerOutOfRange { d, n });
    }
    let gorenstein = (d - 2) % n == 0;
    let br = br_power((d - 1) as usize, n as usize) as u32;
    if gorenstein {
        assert_eq!(br, 1 + (d - 2) / n);
    }
    Ok(PowerReport {
        d,
        n,
        colength: s(u64::from(n) + 2),
        q: s(u64::from(d - n)),
        gorenstein,
        br,
    })
}

/// `Z = phi^*(uC) + sum a_i E_i`, where the `i`-th blow-up centre lies on
/// the proper transform of `C` exactly when `i` is in `on_curve`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlowupDatum {
    pub u: u32,
    pub mults: Vec<u32>,
    pub on_curve: Vec<usize>,
}

impl BlowupDatum {
    pub fn new(u: u32, mults: Vec<u32>, on_curve: Vec<usize>) -> Result<Self, HomogError> {
        if u == 0 {
            return Err(HomogError::ZeroU);
        }
        if mults.contains(&0) {
            return Err(HomogError::ZeroMultiplicity);
        }
        let mut seen = vec![false; mults.len()];
        for &i in &on_curve {
            if i >= mults.len() {
                return Err(HomogError::BadIndex {
                    index: i,
                    len: mults.len(),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(HomogError::RepeatedIndex(i));
            }
        }
        Ok(BlowupDatum { u, mults, on_curve })
    }

    /// Every centre on the curve.
    pub fn on_curve_all(u: u32, mults: Vec<u32>) -> Result<Self, HomogError> {
        let all = (0..mults.len()).collect();
        BlowupDatum::new(u, mults, all)
    }

    pub fn is_all_on_curve(&self) -> bool {
        self.on_curve.len() == self.mults.len()
    }

    /// `Z / s`, when every coefficient is divisible by `s`.
    pub fn divide(&self, s: u32) -> Option<BlowupDatum> {
        if s == 0 || self.u % s != 0 || self.mults.iter().any(|a| a % s != 0) {
            return None;
        }
        Some(BlowupDatum {
            u: self.u / s,
            mults: self.mults.iter().map(|a| a / s).collect(),
            on_curve: self.on_curve.clone(),
        })
    }

    pub fn gcd(&self) -> u32 {
        self.mults.iter().fold(self.u, |g, a| g.gcd(a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlowupAnalysis {
    pub chi: i64,
    pub zsq: i64,
    pub ze0: i64,
}

pub fn blowup_analysis(d: u32, datum: &BlowupDatum) -> Result<BlowupAnalysis, HomogError> {
    model(d)?;
    let (di, u) = (i64::from(d), i64::from(datum.u));
    let a: Vec<i64> = datum.mults.iter().map(|&a| i64::from(a)).collect();
    let chi = chi_uc(d, datum.u) + a.iter().map(|a| a * (a + 1) / 2).sum::<i64>();
    let zsq = -(di * u * u + a.iter().map(|a| a * a).sum::<i64>());
    let ze0 = -u * di + datum.on_curve.iter().map(|&i| a[i]).sum::<i64>();
    if ze0 > 0 {
        return Err(HomogError::NotAntinef(ze0));
    }
    Ok(BlowupAnalysis { chi, zsq, ze0 })
}

/// A resolution graph carrying the datum when all centres are distinct points
/// of `C`: `E_0` with `E_0^2 = -d - m`, one `(-1)`-curve `E_i` per centre, and
/// arrows fixing `Z = u E_0 + sum (u + a_i) E_i`.
pub fn realize(d: u32, datum: &BlowupDatum) -> Option<WeightedDualGraph> {
    let m = model(d).ok()?;
    if !datum.is_all_on_curve() {
        return None;
    }
    let k = datum.mults.len();
    let mut vertices = vec![Vertex::new("E0", m.csq - k as i64, m.genus)];
    vertices.extend((1..=k).map(|i| Vertex::new(format!("E{i}"), -1, 0)));
    let edges = (1..=k).map(|i| (0, i)).collect();
    let on_e0 =
        u64::from(datum.u) * u64::from(d) - datum.mults.iter().map(|&a| u64::from(a)).sum::<u64>();
    let mut arrows = Vec::new();
    if on_e0 > 0 {
        arrows.push(Arrow {
            at: 0,
            weight: on_e0,
        });
    }
    arrows.extend(datum.mults.iter().enumerate().map(|(i, &a)| Arrow {
        at: i + 1,
        weight: u64::from(a),
    }));
    WeightedDualGraph::new(
        Some(format!("d{d}_{}", label(d, datum))),
        vertices,
        edges,
        arrows,
    )
    .ok()
}

/// The realized `Z` in the basis `(E_0, E_1, ...)`.
pub fn realized_cycle(datum: &BlowupDatum) -> Cycle {
    let mut z = vec![i64::from(datum.u)];
    z.extend(datum.mults.iter().map(|&a| i64::from(datum.u + a)));
    Cycle::from_integers(&z)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlReport {
    pub d: u32,
    pub chi: i64,
    pub q: i64,
    /// `l(A/I(L))` and `l(A/closure(I(L)^2))`, derived for `d = 5` only.
    pub colength: Option<i64>,
    pub colength2: Option<i64>,
}

/// Data of `I(L) = (L) + m^2` for a linear form `L`.
pub fn il_report(d: u32) -> Result<IlReport, HomogError> {
    let m = model(d)?;
    let di = i64::from(d);
    let chi = di * (5 - di) / 2;
    let q = -2 + di + s(u64::from(d - 1)) as i64;
    let (mut colength, mut colength2) = (None, None);
    if d == 5 {
        let datum = il_datum();
        let b = blowup_analysis(d, &datum).expect("anti-nef");
        assert_eq!(b.chi, chi);
        let pg = m.pg as i64;
        colength = Some(b.chi + pg - q);
        // br = 2 gives q(2I) = q(I); chi(2Z) = 2 chi(Z) - Z^2
        let chi2 = 2 * b.chi - b.zsq;
        colength2 = Some(chi2 + pg - q);
    }
    Ok(IlReport {
        d,
        chi,
        q,
        colength,
        colength2,
    })
}

fn il_datum() -> BlowupDatum {
    BlowupDatum::on_curve_all(1, vec![1; 5]).expect("valid")
}

/// `"m"`, `"m^n"`, `"I(L)"` or `"blowup(u, [a_1,...])"`.
pub fn label(d: u32, datum: &BlowupDatum) -> String {
    if datum.mults.is_empty() {
        return if datum.u == 1 {
            "m".to_string()
        } else {
            format!("m^{}", datum.u)
        };
    }
    if d == 5 && datum.u == 1 && datum.mults == [1; 5] && datum.is_all_on_curve() {
        return "I(L)".to_string();
    }
    let mults: Vec<String> = datum.mults.iter().map(u32::to_string).collect();
    format!("blowup({}, [{}])", datum.u, mults.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R2Solution {
    pub datum: BlowupDatum,
    pub label: String,
    pub analysis: BlowupAnalysis,
}

/// Nonincreasing lists `a_1 >= a_2 >= ...` with `sum a_i(a_i+1)/2 = target`.
fn triangular_multisets(target: u64) -> Vec<Vec<u32>> {
    fn go(rest: u64, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=max).rev() {
            let t = u64::from(a) * u64::from(a + 1) / 2;
            if t <= rest {
                cur.push(a);
                go(rest - t, a, cur, out);
                cur.pop();
            }
        }
    }
    let mut max = 1u32;
    while u64::from(max + 1) * u64::from(max + 2) / 2 <= target {
        max += 1;
    }
    let mut out = Vec::new();
    if target > 0 {
        go(target, max, &mut Vec::new(), &mut out);
    }
    out
}

/// Indices of some subset of `values` summing to `target`.
fn subset_with_sum(values: &[u32], target: u64) -> Option<Vec<usize>> {
    let target = usize::try_from(target).ok()?;
    // reach[s] = index used to first reach sum s
    let mut reach: Vec<Option<(usize, usize)>> = vec![None; target + 1];
    let mut reached = vec![false; target + 1];
    reached[0] = true;
    for (i, &v) in values.iter().enumerate() {
        let v = v as usize;
        for s in (v..=target).rev() {
            if !reached[s] && reached[s - v] {
                reached[s] = true;
                reach[s] = Some((i, s - v));
            }
        }
    }
    if !reached[target] {
        return None;
    }
    let mut picked = Vec::new();
    let mut s = target;
    while s > 0 {
        let (i, prev) = reach[s].expect("reached");
        picked.push(i);
        s = prev;
    }
    picked.sort_unstable();
    Some(picked)
}

/// Combinatorial candidates for `chi(Z) = 0` (normal reduction number 2):
/// `u = d - 2` without blow-ups, or `u <= d - 3` with blow-ups satisfying
/// `sum a_i(a_i+1)/2 = -chi(uC)` and some `P` with `sum_P a_i = ud`.
pub fn search_r2(d: u32) -> Result<Vec<R2Solution>, HomogError> {
    model(d)?;
    let mut out = Vec::new();
    for u in 1..=d - 2 {
        let candidates: Vec<(Vec<u32>, Vec<usize>)> = if u == d - 2 {
            vec![(Vec::new(), Vec::new())]
        } else {
            let target = u64::try_from(-chi_uc(d, u)).expect("chi(uC) < 0 for u < d-2");
            triangular_multisets(target)
                .into_iter()
                .filter_map(|mults| {
                    let p = subset_with_sum(&mults, u64::from(u) * u64::from(d))?;
                    Some((mults, p))
                })
                .collect()
        };
        for (mults, p) in candidates {
            let datum = BlowupDatum::new(u, mults, p).expect("valid by construction");
            let analysis = blowup_analysis(d, &datum).expect("anti-nef");
            debug_assert_eq!(analysis.chi, 0);
            debug_assert!(datum.mults.is_empty() || analysis.ze0 == 0);
            out.push(R2Solution {
                label: label(d, &datum),
                datum,
                analysis,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedIdeal {
    pub label: String,
    pub datum: BlowupDatum,
    /// Label of the `chi = 0` cycle this one divides, and the factor.
    pub parent: String,
    pub factor: u32,
    pub br: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub d: u32,
    pub ideals: Vec<ClassifiedIdeal>,
    pub verified: bool,
}

impl Classification {
    pub fn labels(&self) -> Vec<String> {
        self.ideals.iter().map(|i| i.label.clone()).collect()
    }
}

/// Gorenstein candidates: every `W` with `s W` equal to a `chi = 0` solution.
/// `W` then has normal reduction number `s + 1`.
pub fn classify(d: u32) -> Result<Classification, HomogError> {
    let mut found: BTreeMap<(u32, Vec<u32>), ClassifiedIdeal> = BTreeMap::new();
    for sol in search_r2(d)? {
        let g = sol.datum.gcd();
        for s in (1..=g).filter(|s| g % s == 0) {
            let w = sol.datum.divide(s).expect("s divides gcd");
            blowup_analysis(d, &w).expect("Z/s anti-nef");
            found
                .entry((w.u, w.mults.clone()))
                .or_insert(ClassifiedIdeal {
                    label: label(d, &w),
                    parent: sol.label.clone(),
                    factor: s,
                    br: s + 1,
                    datum: w,
                });
        }
    }
    Ok(Classification {
        d,
        ideals: found.into_values().collect(),
        verified: d <= VERIFIED_MAX_DEGREE,
    })
}

/// `{m^n : n | d - 2}` plus `I(L)` for `d = 5`.
pub fn expected_classification(d: u32) -> Option<Vec<String>> {
    if !(3..=VERIFIED_MAX_DEGREE).contains(&d) {
        return None;
    }
    let mut out: Vec<String> = (1..=d - 2)
        .filter(|n| (d - 2) % n == 0)
        .map(|n| label(d, &BlowupDatum::on_curve_all(n, Vec::new()).expect("valid")))
        .collect();
    if d == 5 {
        out.push("I(L)".to_string());
    }
    out.sort();
    Some(out)
}

/// Checks the datum-level numbers against a realized resolution graph.
pub fn cross_check_realization(d: u32, datum: &BlowupDatum) -> Option<bool> {
    let g = realize(d, datum)?;
    let lat = Lattice::new(&g);
    let z = realized_cycle(datum);
    let b = blowup_analysis(d, datum).ok()?;
    let ok = lat.cycle_from_arrows().ok()? == z
        && lat.is_antinef(&z)
        && lat.chi(&z).ok()? == q(b.chi)
        && lat.self_intersection(&z).ok()? == q(b.zsq)
        && lat.pairing_with_vertex(&z, 0) == q(b.ze0);
    Some(ok)
}

/// `chi` of the realized cycle as a rational, for reports.
pub fn realized_chi(d: u32, datum: &BlowupDatum) -> Option<Q> {
    let g = realize(d, datum)?;
    Lattice::new(&g).chi(&realized_cycle(datum)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_values() {
        assert_eq!((s(0), s(1), s(2), s(4), s(5)), (0, 0, 0, 4, 10));
    }

    #[test]
    fn models() {
        let m = model(5).unwrap();
        assert_eq!((m.genus, m.csq, m.kc, m.pg, m.br_m), (6, -5, 15, 10, 4));
        let m = model(3).unwrap();
        assert_eq!((m.genus, m.csq, m.kc, m.pg), (1, -3, 3, 1));
        let m = model(4).unwrap();
        assert_eq!((m.genus, m.csq, m.kc, m.pg), (3, -4, 8, 4));
        assert_eq!(model(2), Err(HomogError::DegreeTooSmall(2)));
    }

    #[test]
    fn chi_of_multiples() {
        assert_eq!(chi_uc(4, 1), -2);
        assert_eq!(chi_uc(5, 2), -5);
        for d in 3..12 {
            assert_eq!(chi_uc(d, d - 2), 0);
        }
    }

    #[test]
    fn powers() {
        let p = power_report(5, 1).unwrap();
        assert_eq!((p.colength, p.q, p.gorenstein, p.br), (1, 4, true, 4));
        let p = power_report(5, 3).unwrap();
        assert_eq!((p.colength, p.q, p.gorenstein, p.br), (10, 0, true, 2));
        let p = power_report(4, 2).unwrap();
        assert_eq!((p.gorenstein, p.br), (true, 2));
        let p = power_report(5, 2).unwrap();
        assert_eq!((p.gorenstein, p.br), (false, 3));
        assert!(power_report(5, 0).is_err());
        assert!(power_report(5, 6).is_err());
        for d in 3..15 {
            let p = power_report(d, d - 2).unwrap();
            assert!(p.gorenstein && p.br == 2);
        }
    }

    #[test]
    fn blowups() {
        let b = blowup_analysis(5, &il_datum()).unwrap();
        assert_eq!((b.chi, b.zsq, b.ze0), (0, -10, 0));
        let two = BlowupDatum::on_curve_all(1, vec![1, 1]).unwrap();
        let b = blowup_analysis(4, &two).unwrap();
        assert_eq!((b.chi, b.ze0), (0, -2));
        let bare = BlowupDatum::new(2, vec![], vec![]).unwrap();
        let b = blowup_analysis(6, &bare).unwrap();
        assert_eq!((b.chi, b.ze0), (chi_uc(6, 2), -12));
        let heavy = BlowupDatum::on_curve_all(1, vec![2, 2]).unwrap();
        assert_eq!(blowup_analysis(3, &heavy), Err(HomogError::NotAntinef(1)));
        assert!(BlowupDatum::new(1, vec![1], vec![1]).is_err());
        assert!(BlowupDatum::new(1, vec![1, 1], vec![0, 0]).is_err());
        assert!(BlowupDatum::new(1, vec![0], vec![]).is_err());
    }

    #[test]
    fn il_values() {
        let r = il_report(5).unwrap();
        assert_eq!(
            (r.chi, r.q, r.colength, r.colength2),
            (0, 7, Some(3), Some(13))
        );
        let r = il_report(4).unwrap();
        assert_eq!((r.chi, r.q, r.colength), (2, 3, None));
        let r = il_report(3).unwrap();
        assert_eq!((r.chi, r.q), (3, 1));
    }

    #[test]
    fn multisets() {
        assert_eq!(
            triangular_multisets(5),
            vec![vec![2, 1, 1], vec![1, 1, 1, 1, 1]]
        );
        assert_eq!(triangular_multisets(3), vec![vec![2], vec![1, 1, 1]]);
        assert_eq!(subset_with_sum(&[2, 1, 1], 3), Some(vec![0, 1]));
        assert_eq!(subset_with_sum(&[2, 1, 1], 5), None);
    }

    #[test]
    fn r2_search() {
        let labels =
            |d| -> Vec<String> { search_r2(d).unwrap().into_iter().map(|s| s.label).collect() };
        assert_eq!(labels(3), vec!["m"]);
        assert_eq!(labels(4), vec!["m^2"]);
        assert_eq!(labels(5), vec!["I(L)", "m^3"]);
    }

    #[test]
    fn classification_matches_expected() {
        for d in 3..=5 {
            let c = classify(d).unwrap();
            let mut got = c.labels();
            got.sort();
            assert_eq!(Some(got), expected_classification(d), "d = {d}");
            assert!(c.verified);
        }
        assert!(!classify(6).unwrap().verified);
        let c = classify(5).unwrap();
        let m = c.ideals.iter().find(|i| i.label == "m").unwrap();
        assert_eq!((m.parent.as_str(), m.factor, m.br), ("m^3", 3, 4));
    }

    #[test]
    fn realizations_agree() {
        for d in 3..=8 {
            for sol in search_r2(d).unwrap() {
                if let Some(ok) = cross_check_realization(d, &sol.datum) {
                    assert!(ok, "d = {d}, {}", sol.label);
                }
            }
        }
        let g = realize(5, &il_datum()).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(realized_chi(5, &il_datum()), Some(q(0)));
        assert_eq!(
            cross_check_realization(4, &BlowupDatum::on_curve_all(1, vec![1, 1]).unwrap()),
            Some(true)
        );
        assert_eq!(
            realize(5, &BlowupDatum::new(1, vec![1], vec![]).unwrap()),
            None
        );
    }
}
