//! The bundled acceptance suite run by `ntc verify-paper`.
//!
//! Each check recomputes its quantities from first principles where it can,
//! so a regression in one oracle shows up as a disagreement with another.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use ntc_core::brieskorn::{self, BrieskornType};
use ntc_core::homogeneous::{self, BlowupDatum};
use ntc_core::rational::{q, to_i64};
use ntc_core::reduction::{br_power, gorenstein_cycle_criterion, BSequence, QSequence};
use ntc_core::{fixtures, io, Cycle, Lattice, Vertex, WeightedDualGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Sweep bound for Brieskorn types `a <= b <= c <= max`.
    pub max: u32,
    /// Directory holding `<name>.wdg.json` fixtures; embedded corpus if `None`.
    pub fixtures: Option<PathBuf>,
    /// Largest vertex count for the brute-force fundamental cycle check.
    pub brute_force_vertices: usize,
    /// Coefficient bound of the brute-force search box.
    pub brute_force_box: i64,
    /// Random integral cycles per fixture in the chi integrality check.
    pub random_cycles: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max: 30,
            fixtures: None,
            brute_force_vertices: 5,
            brute_force_box: 6,
            random_cycles: 1000,
            seed: 0x5eed_2d5c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: &'static str,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(&VerifyOptions) -> Result<String, String>,
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "brieskorn-three-way",
        anchor: "Brieskorn Gorenstein equivalence: b mod a in {0, d} iff (r-1)Z^2 + K_X Z = 0 iff b-sequence symmetric",
        run: three_way,
    },
    Check {
        id: "brieskorn-br-direct",
        anchor: "Brieskorn reduction number br(m) = n_(a-1)",
        run: br_direct,
    },
    Check {
        id: "brieskorn-steps",
        anchor: "Brieskorn step formula a - ceil(a(k+1)/b) and its sum (d + b(a-1) - 3a + 2)/2",
        run: steps,
    },
    Check {
        id: "brieskorn-355",
        anchor: "Brieskorn (3,5,5): closure(m^3) = m^3 + (x^2), r = 3",
        run: type_355,
    },
    Check {
        id: "brieskorn-corollaries",
        anchor: "Brieskorn corollaries: (3,3s,3s), (a,a,a), a = 4 residues, odd r and a",
        run: corollaries,
    },
    Check {
        id: "brieskorn-eqbb",
        anchor: "b-sequence identity sum (k-1) b_k = b_0 - chi(Z)",
        run: eqbb,
    },
    Check {
        id: "homog-classification",
        anchor: "homogeneous classification: d=3 {m}, d=4 {m, m^2}, d=5 {m, m^3, I(L)}",
        run: homog_classification,
    },
    Check {
        id: "homog-il",
        anchor: "I(L) at d = 5: chi 0, Z^2 = -10, q 7, colengths 3 and 13",
        run: homog_il,
    },
    Check {
        id: "graph-degree5-chains",
        anchor: "degree-5 chain graphs realizing I(L): Z = E5* and Z = E3* + E5*",
        run: degree5_graphs,
    },
    Check {
        id: "graph-pg-ideals",
        anchor: "graphs of m and m^2 on a genus-1 curve: K_X Z = 0 vs K_X Z = 2",
        run: pg_graphs,
    },
    Check {
        id: "power-reduction",
        anchor: "br(closure(I^k)) = ceil((r-1)/k) + 1 on Brieskorn q-differences",
        run: power_reduction,
    },
    Check {
        id: "lattice-properties",
        anchor: "lattice property suites: definiteness, duals, chi integrality, fundamental cycle, enumeration",
        run: lattice_properties,
    },
    Check {
        id: "homog-powers",
        anchor: "powers of m on degree-d cones: m^n Gorenstein iff n | d - 2",
        run: homog_powers,
    },
    Check {
        id: "b-sequence-duality",
        anchor: "b-sequence symmetry iff L-colength complementarity",
        run: b_duality,
    },
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panicked".to_string()
    }
}

pub fn run_check(check: &Check, opts: &VerifyOptions) -> Outcome {
    let result = panic::catch_unwind(AssertUnwindSafe(|| (check.run)(opts)))
        .unwrap_or_else(|p| Err(format!("internal assertion failed: {}", panic_message(p))));
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id: check.id,
        anchor: check.anchor,
        passed,
        detail,
    }
}

pub fn run(opts: &VerifyOptions) -> Vec<Outcome> {
    CHECKS.iter().map(|c| run_check(c, opts)).collect()
}

pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

pub fn load_fixture(opts: &VerifyOptions, name: &str) -> Result<WeightedDualGraph, String> {
    let text = match &opts.fixtures {
        Some(dir) => {
            let path = dir.join(format!("{name}{}", io::FILE_EXTENSION));
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => fixtures::text(name)
            .ok_or_else(|| format!("no embedded fixture {name}"))?
            .to_string(),
    };
    io::parse(&text).map_err(|d| format!("fixture {name}: {d}"))
}

fn sweep(opts: &VerifyOptions) -> impl Iterator<Item = BrieskornType> {
    brieskorn::types_up_to(opts.max)
}

fn chi_of(t: &BrieskornType) -> i64 {
    let (a, b, d) = (i64::from(t.a()), i64::from(t.b()), i64::from(t.d()));
    let twice = -(-a + d + a * b - b - 2 * a);
    assert_eq!(twice % 2, 0);
    twice / 2
}

fn three_way(opts: &VerifyOptions) -> Result<String, String> {
    let (mut n, mut gor) = (0, 0);
    for t in sweep(opts) {
        let (a, b, d) = (t.a(), t.b(), t.d());
        let arith = b % a == 0 || b % a == d % a;
        let kz = i64::from(d) + i64::from(a) * i64::from(b) - i64::from(b) - 2 * i64::from(a);
        let r = (a - 1) * b / a;
        let cycle = gorenstein_cycle_criterion(-i64::from(a), kz, r as usize);
        let symmetric = t.b_sequence().is_symmetric();
        ensure(arith == cycle && cycle == symmetric, || {
            format!("{t}: arith={arith} cycle={cycle} symmetric={symmetric}")
        })?;
        n += 1;
        gor += usize::from(cycle);
    }
    Ok(format!("{n} types agree ({gor} Gorenstein)"))
}

fn br_direct(opts: &VerifyOptions) -> Result<String, String> {
    let mut n = 0;
    for t in sweep(opts) {
        let expected = (t.a() - 1) * t.b() / t.a();
        let got = t.br_direct();
        ensure(got == expected, || {
            format!("{t}: br_direct {got} != n_(a-1) {expected}")
        })?;
        n += 1;
    }
    Ok(format!("{n} types"))
}

fn steps(opts: &VerifyOptions) -> Result<String, String> {
    let mut pairs = 0;
    for t in sweep(opts) {
        let (a, b) = (i64::from(t.a()), i64::from(t.b()));
        let r = t.r();
        let mut tail = 0;
        for k in 0..=r {
            let formula = a - (a * (i64::from(k) + 1) + b - 1) / b;
            let layers = t.overline_power(k).q_multiply().colength() as i64
                - t.overline_power(k + 1).colength() as i64;
            ensure(formula == layers, || {
                format!("{t}, k={k}: formula {formula} != layered difference {layers}")
            })?;
            if k >= 1 {
                tail += formula;
            }
            pairs += 1;
        }
        let d = i64::from(t.d());
        let closed = d + b * (a - 1) - 3 * a + 2;
        ensure(closed % 2 == 0 && tail == closed / 2, || {
            format!("{t}: sum of steps {tail} != ({closed})/2")
        })?;
    }
    Ok(format!("{pairs} (type, k) pairs"))
}

fn type_355(_: &VerifyOptions) -> Result<String, String> {
    let t = BrieskornType::new(3, 5, 5).map_err(|e| e.to_string())?;
    ensure(t.r() == 3 && t.br_direct() == 3, || {
        format!("r = {}", t.r())
    })?;
    let cube = t.overline_power(3);
    ensure(cube.exponents() == [3, 2, 0], || {
        format!("closure(m^3) exponents {:?}", cube.exponents())
    })?;
    ensure(cube.colength() == 9, || {
        format!("colength {}", cube.colength())
    })?;
    let b = t.b_sequence();
    ensure(b.values() == [1, 1, 0, 1], || format!("b = {b}"))?;
    let v = t.is_gorenstein();
    ensure(!v.arith && !v.cycle && !v.symmetric, || format!("{v:?}"))?;
    Ok("r=3, exponents (3,2,0), colength 9, b=(1,1,0,1), not Gorenstein".into())
}

fn corollaries(opts: &VerifyOptions) -> Result<String, String> {
    for s in 1..=10 {
        let t = BrieskornType::new(3, 3 * s, 3 * s).map_err(|e| e.to_string())?;
        ensure(t.is_gorenstein().cycle && t.r() == 2 * s, || {
            format!("{t}: r = {}", t.r())
        })?;
    }
    for a in 2..=12 {
        let t = BrieskornType::new(a, a, a).map_err(|e| e.to_string())?;
        ensure(t.is_gorenstein().cycle && t.r() == a - 1, || {
            format!("{t}: r = {}", t.r())
        })?;
    }
    let mut checked = 0;
    for t in sweep(opts) {
        let x = brieskorn::analyze(t);
        let bad = brieskorn::violations(&x);
        ensure(bad.is_empty(), || format!("{t}: {}", bad[0].claim))?;
        checked += 1;
    }
    Ok(format!(
        "families s<=10, a<=12; {checked} sweep types without violations"
    ))
}

fn eqbb(opts: &VerifyOptions) -> Result<String, String> {
    let mut n = 0;
    for t in sweep(opts) {
        let chi = chi_of(&t);
        let b = t.b_sequence();
        ensure(b.eqbb_check(&q(chi)), || format!("{t}: b={b}, chi={chi}"))?;
        n += 1;
    }
    let t366 = BrieskornType::new(3, 6, 6).map_err(|e| e.to_string())?;
    let b = t366.b_sequence();
    let lhs: i64 = b
        .values()
        .iter()
        .enumerate()
        .skip(2)
        .map(|(k, x)| (k as i64 - 1) * x)
        .sum();
    ensure(lhs == 4 && chi_of(&t366) == -3, || {
        format!("(3,6,6): lhs {lhs}")
    })?;
    Ok(format!("{n} types; (3,6,6): 4 = 1 - (-3)"))
}

fn homog_classification(_: &VerifyOptions) -> Result<String, String> {
    let expected: [(u32, &[&str]); 3] =
        [(3, &["m"]), (4, &["m", "m^2"]), (5, &["I(L)", "m", "m^3"])];
    for (d, want) in expected {
        let mut got = homogeneous::classify(d)
            .map_err(|e| e.to_string())?
            .labels();
        got.sort();
        ensure(got == want, || format!("d={d}: {got:?}"))?;
    }
    Ok("d=3 {m}; d=4 {m, m^2}; d=5 {m, m^3, I(L)}".into())
}

fn homog_il(_: &VerifyOptions) -> Result<String, String> {
    let il = homogeneous::il_report(5).map_err(|e| e.to_string())?;
    let datum = BlowupDatum::on_curve_all(1, vec![1; 5]).map_err(|e| e.to_string())?;
    let b = homogeneous::blowup_analysis(5, &datum).map_err(|e| e.to_string())?;
    ensure(il.chi == 0 && b.chi == 0 && b.zsq == -10, || {
        format!("{il:?} {b:?}")
    })?;
    ensure(il.q == 7, || format!("q = {}", il.q))?;
    let pg = homogeneous::model(5).map_err(|e| e.to_string())?.pg as i64;
    let chi2 = 2 * b.chi - b.zsq;
    ensure(il.colength == Some(b.chi + pg - il.q), || format!("{il:?}"))?;
    ensure(
        il.colength == Some(3) && il.colength2 == Some(chi2 + pg - il.q),
        || format!("{il:?}"),
    )?;
    ensure(il.colength2 == Some(13), || format!("{il:?}"))?;
    ensure(
        homogeneous::cross_check_realization(5, &datum) == Some(true),
        || "realized graph disagrees".into(),
    )?;
    Ok("chi 0, Z^2 -10, q 7, colength 3, colength of square 13".into())
}

fn by_id(lat: &Lattice, z: &Cycle) -> BTreeMap<String, i64> {
    lat.ids()
        .iter()
        .zip(z.coeffs())
        .map(|(id, c)| (id.clone(), to_i64(c).unwrap_or(i64::MIN)))
        .collect()
}

fn expect_cycle(lat: &Lattice, z: &Cycle, want: &[(&str, i64)]) -> Result<(), String> {
    let want: BTreeMap<String, i64> = want.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let got = by_id(lat, z);
    ensure(got == want, || {
        format!("cycle {} expected {want:?}", lat.describe(z))
    })
}

fn degree5_graphs(opts: &VerifyOptions) -> Result<String, String> {
    let g1 = load_fixture(opts, "ex5_11_1")?;
    let l1 = Lattice::new(&g1);
    let e5 = l1.dual_cycle("E5").map_err(|e| e.to_string())?.clone();
    expect_cycle(
        &l1,
        &e5,
        &[
            ("E0", 1),
            ("E5", 10),
            ("E4", 8),
            ("E3", 6),
            ("E2", 4),
            ("E1", 2),
        ],
    )?;
    let z1 = l1.cycle_from_arrows().map_err(|e| e.to_string())?;
    ensure(z1 == e5, || "arrows do not give E5*".into())?;

    let g2 = load_fixture(opts, "ex5_11_2")?;
    let l2 = Lattice::new(&g2);
    let sum = l2.dual_cycle("E3").map_err(|e| e.to_string())?
        + l2.dual_cycle("E5").map_err(|e| e.to_string())?;
    expect_cycle(
        &l2,
        &sum,
        &[
            ("E4", 2),
            ("E5", 4),
            ("E0", 1),
            ("E3", 6),
            ("E2", 4),
            ("E1", 2),
        ],
    )?;
    let z2 = l2.cycle_from_arrows().map_err(|e| e.to_string())?;
    ensure(z2 == sum, || "arrows do not give E3* + E5*".into())?;

    let il = homogeneous::il_report(5).map_err(|e| e.to_string())?;
    for (name, lat, z) in [("first", &l1, &z1), ("second", &l2, &z2)] {
        let zsq = lat.self_intersection(z).map_err(|e| e.to_string())?;
        let kz = lat.canonical_pairing(z).map_err(|e| e.to_string())?;
        let chi = lat.chi(z).map_err(|e| e.to_string())?;
        ensure(zsq == q(-10) && chi == q(il.chi), || {
            format!("{name} graph: Z^2 = {zsq}, chi = {chi}")
        })?;
        let (zsq, kz) = (to_i64(&zsq).unwrap(), to_i64(&kz).unwrap());
        ensure(gorenstein_cycle_criterion(zsq, kz, 2), || {
            format!("{name} graph: criterion fails at r=2")
        })?;
    }
    Ok("E5* = (1,10,8,6,4,2); both graphs Z^2 = -10, chi = 0, criterion at r = 2".into())
}

fn pg_graphs(opts: &VerifyOptions) -> Result<String, String> {
    let g = load_fixture(opts, "ex4_4_m")?;
    let lat = Lattice::new(&g);
    let z = lat.cycle_from_arrows().map_err(|e| e.to_string())?;
    expect_cycle(&lat, &z, &[("E1", 1), ("E2", 2)])?;
    let kz = lat.canonical_pairing(&z).map_err(|e| e.to_string())?;
    ensure(kz == q(0), || format!("K_X Z = {kz}"))?;

    let g = load_fixture(opts, "ex4_4_m2")?;
    let lat = Lattice::new(&g);
    let z = lat.cycle_from_arrows().map_err(|e| e.to_string())?;
    expect_cycle(&lat, &z, &[("E", 2)])?;
    let kz = lat.canonical_pairing(&z).map_err(|e| e.to_string())?;
    ensure(kz == q(2), || format!("K_X Z = {kz}"))?;
    Ok("m: Z = E1 + 2E2, K_X Z = 0; m^2: Z = 2E, K_X Z = 2".into())
}

fn power_reduction(opts: &VerifyOptions) -> Result<String, String> {
    let mut pairs = 0;
    for t in sweep(opts) {
        let qs = QSequence::from_drops(&t.q_drops()).map_err(|e| e.to_string())?;
        let r = t.r() as usize;
        ensure(qs.br() == r, || {
            format!("{t}: br from q = {} != {r}", qs.br())
        })?;
        for k in 1..=r {
            let got = qs.of_power(k).br();
            ensure(got == br_power(r, k), || {
                format!("{t}, k={k}: {got} != {}", br_power(r, k))
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (type, k) pairs"))
}

fn homog_powers(_: &VerifyOptions) -> Result<String, String> {
    for d in 3..=12 {
        let p = homogeneous::power_report(d, d - 2).map_err(|e| e.to_string())?;
        ensure(p.gorenstein && p.br == 2, || format!("d={d}: {p:?}"))?;
        for n in 1..=d {
            let p = homogeneous::power_report(d, n).map_err(|e| e.to_string())?;
            ensure(p.gorenstein == ((d - 2) % n == 0), || format!("{p:?}"))?;
        }
    }
    let p = homogeneous::power_report(5, 1).map_err(|e| e.to_string())?;
    ensure((p.colength, p.q, p.br) == (1, 4, 4), || format!("{p:?}"))?;
    let p = homogeneous::power_report(5, 3).map_err(|e| e.to_string())?;
    ensure((p.colength, p.q, p.br) == (10, 0, 2), || format!("{p:?}"))?;
    Ok("d = 3..12".into())
}

fn b_duality(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut symmetric = 0;
    for _ in 0..2000 {
        let len = rng.gen_range(2..9);
        let mut b: Vec<i64> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        if rng.gen_bool(0.3) {
            for i in 0..len / 2 {
                b[len - 1 - i] = b[i];
            }
        }
        let seq = BSequence::new(b).map_err(|e| e.to_string())?;
        ensure(seq.is_symmetric() == seq.complementarity_check(), || {
            format!("{seq}")
        })?;
        symmetric += usize::from(seq.is_symmetric());
    }
    Ok(format!("2000 random sequences ({symmetric} symmetric)"))
}

const FIXTURE_NAMES: [&str; 9] = [
    "ex4_4_m",
    "ex4_4_m2",
    "ex5_11_1",
    "ex5_11_2",
    "homog_d3",
    "homog_d4",
    "homog_d5",
    "a1_rdp",
    "double_edge",
];

fn lattice_properties(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut enumerated = 0;
    for name in FIXTURE_NAMES {
        let g = load_fixture(opts, name)?;
        let lat = Lattice::new(&g);
        ensure(lat.form().is_negative_definite(), || {
            format!("{name}: not negative definite")
        })?;
        let n = lat.len();
        for j in 0..n {
            let dual = lat.dual(j);
            ensure(dual.coeffs().iter().all(|c| *c > q(0)), || {
                format!("{name}: dual {j} not strictly positive")
            })?;
            for i in 0..n {
                let want = if i == j { q(-1) } else { q(0) };
                ensure(lat.pairing_with_vertex(dual, i) == want, || {
                    format!("{name}: dual {j} pairs wrongly with {i}")
                })?;
            }
        }
        for _ in 0..opts.random_cycles {
            let z: Vec<i64> = (0..n).map(|_| rng.gen_range(-8..=8)).collect();
            let chi = lat
                .chi(&Cycle::from_integers(&z))
                .map_err(|e| e.to_string())?;
            ensure(chi.is_integer(), || format!("{name}: chi({z:?}) = {chi}"))?;
        }
        enumerated += check_enumerations(name, &lat)?;
    }
    let (graphs, skipped) = brute_force_fundamental(opts, &mut rng)?;
    Ok(format!(
        "{} fixtures; {enumerated} enumerated cycles; fundamental cycle on {graphs} graphs ({skipped} beyond box)",
        FIXTURE_NAMES.len()
    ))
}

fn strictly_sorted(v: &[Cycle]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn check_enumerations(name: &str, lat: &Lattice) -> Result<usize, String> {
    let w = lat.fundamental_cycle().scale(&q(2));
    let below = lat.enumerate_antinef_below(&w).map_err(|e| e.to_string())?;
    for z in &below {
        ensure(z.is_integral() && !z.is_zero() && lat.is_antinef(z), || {
            format!("{name}: {} fails anti-nef predicate", lat.describe(z))
        })?;
        ensure(!z.dominates(&w), || {
            format!("{name}: {} dominates W", lat.describe(z))
        })?;
    }
    ensure(strictly_sorted(&below), || {
        format!("{name}: below list unsorted or duplicated")
    })?;
    let e = lat.enumerate_antinef_not_exceeding_canonical();
    let zs: Vec<Cycle> = e.entries.iter().map(|(z, _)| z.clone()).collect();
    for (z, chi) in &e.entries {
        ensure(z.is_integral() && !z.is_zero() && lat.is_antinef(z), || {
            format!("{name}: {} fails anti-nef predicate", lat.describe(z))
        })?;
        ensure(!z.exceeds(&e.canonical_cycle), || {
            format!("{name}: {} exceeds Z_K", lat.describe(z))
        })?;
        ensure(lat.chi(z).map_err(|e| e.to_string())? == *chi, || {
            format!("{name}: stale chi for {}", lat.describe(z))
        })?;
    }
    ensure(strictly_sorted(&zs), || {
        format!("{name}: zk list unsorted or duplicated")
    })?;
    Ok(below.len() + zs.len())
}

/// Edge sets of all connected simple graphs on `n` labeled vertices.
fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let mut reached = vec![false; n];
        reached[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &edges {
                if reached[i] != reached[j] {
                    reached[i] = true;
                    reached[j] = true;
                    changed = true;
                }
            }
        }
        if reached.iter().all(|&r| r) {
            out.push(edges);
        }
    }
    out
}

fn random_definite_graph(
    n: usize,
    edges: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> WeightedDualGraph {
    let build = |selfs: &[i64], genera: &[u32]| {
        let vertices = (0..n)
            .map(|i| Vertex::new(format!("v{i}"), selfs[i], genera[i]))
            .collect();
        WeightedDualGraph::new(None, vertices, edges.to_vec(), Vec::new())
    };
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    for _ in 0..4 {
        let selfs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=-1)).collect();
        if let Ok(g) = build(&selfs, &genera) {
            return g;
        }
    }
    // diagonally dominant fallback
    let selfs: Vec<i64> = (0..n)
        .map(|i| {
            let deg = edges.iter().filter(|&&(a, b)| a == i || b == i).count() as i64;
            -(deg + 1) - rng.gen_range(0..=1)
        })
        .collect();
    build(&selfs, &genera).expect("diagonally dominant")
}

/// Coefficientwise minimum of nonzero anti-nef cycles in `[0, bound]^n`.
fn brute_force_minimum(lat: &Lattice, bound: i64) -> Option<Vec<i64>> {
    let n = lat.len();
    let m = lat.form();
    let mut c = vec![0i64; n];
    let mut pair = vec![0i64; n];
    let mut best: Option<Vec<i64>> = None;
    loop {
        let mut pos = n;
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            if c[pos] < bound {
                c[pos] += 1;
                for (i, p) in pair.iter_mut().enumerate() {
                    *p += m.get(i, pos);
                }
                break;
            }
            for (i, p) in pair.iter_mut().enumerate() {
                *p -= c[pos] * m.get(i, pos);
            }
            c[pos] = 0;
        }
        if pair.iter().all(|&p| p <= 0) {
            best = Some(match best {
                None => c.clone(),
                Some(b) => b.iter().zip(&c).map(|(x, y)| *x.min(y)).collect(),
            });
        }
    }
}

fn brute_force_fundamental(
    opts: &VerifyOptions,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, usize), String> {
    let (mut graphs, mut skipped) = (0, 0);
    for n in 1..=opts.brute_force_vertices {
        for edges in connected_graphs(n) {
            let g = random_definite_graph(n, &edges, rng);
            let lat = Lattice::new(&g);
            let laufer = lat.fundamental_cycle().to_integers().expect("integral");
            let inside = laufer.iter().all(|&x| x <= opts.brute_force_box);
            let brute = brute_force_minimum(&lat, opts.brute_force_box);
            if inside {
                ensure(brute.as_ref() == Some(&laufer), || {
                    format!(
                        "{}: Laufer {laufer:?}, brute force {brute:?}",
                        io::serialize(&g)
                    )
                })?;
            } else {
                ensure(brute.is_none(), || {
                    format!(
                        "{}: anti-nef cycle below Laufer's {laufer:?}",
                        io::serialize(&g)
                    )
                })?;
                skipped += 1;
            }
            graphs += 1;
        }
    }
    Ok((graphs, skipped))
}
