//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails if any criterion fails, except those listed in
//! `KNOWN_UNATTAINABLE`, which still print FAIL.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zipstrata::glnzip::{
    classify_22, for_each_invertible, fp_point_census, length2_cross_check, orbit_class, perm_matrix, xi_classify,
    Signature,
};
use zipstrata::hasse::{hasse_any_lweight, hasse_feasible, validate_witness};
use zipstrata::strata::{is_small, orbit_codim, pi_small, small_lower_neighbors, two_condition_small, xi_of_weyl};
use zipstrata::{SimpleSet, ZipDatum, F2, F3};

const MAX_N: usize = 12;
const PROPERTY_MAX_N: usize = 5;
const CONJUGATION_SAMPLES: usize = 1000;
/// |W_I| at (10, 2).
const SWEEP_BUDGET: u64 = 7_257_600;
const SEED: u64 = 20_240_601;

const TRICHOTOMY_LIMIT: Duration = Duration::from_secs(60);
const CROSS_ORACLE_LIMIT: Duration = Duration::from_secs(10);
const CENSUS_LIMIT: Duration = Duration::from_secs(300);

/// Criteria whose displayed statement disagrees with exact computation.
/// The displayed I_{w_2} index range in the m < n/2 branch is off by one.
const KNOWN_UNATTAINABLE: &[&str] = &["2"];

type Criterion = Box<dyn FnOnce() -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{} [{:.2}s]", out.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail = format!("{} exceeds {}s", out.detail, limit.as_secs());
        }
    }
    out
}

fn signatures(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (4..=max_n).flat_map(|n| (2..=n / 2).map(move |s| (n - s, s)))
}

fn inv_mod(s: usize, n: usize) -> usize {
    (1..n).find(|m| (m * s) % n == 1).expect("coprime")
}

fn residues(n: usize, values: impl IntoIterator<Item = i64>) -> SimpleSet {
    SimpleSet::from_one_based(values.into_iter().map(|v| v.rem_euclid(n as i64) as usize))
}

fn trichotomy() -> Outcome {
    let mut checked = 0;
    for (r, s) in signatures(MAX_N) {
        match length2_cross_check(Signature { r, s }, SWEEP_BUDGET) {
            Ok(c) if c.agrees() => checked += 1,
            Ok(c) => return outcome(false, format!("({r},{s}): closed form {:?} vs computed", c.report)),
            Err(e) => return outcome(false, format!("({r},{s}): {e}")),
        }
    }
    outcome(true, format!("{checked} signatures"))
}

/// (displayed formulas, displayed I_{w_1} with the corrected I_{w_2} range).
fn canonical_types() -> (Outcome, Outcome) {
    let mut mismatches = Vec::new();
    let mut corrected_mismatches = Vec::new();
    let mut checked = 0;
    for (r, s) in signatures(MAX_N).filter(|(r, s)| r.gcd(s) == 1) {
        let n = r + s;
        let sig = Signature { r, s };
        let zd = sig.datum().unwrap();
        let (w1, w2, _) = sig.length2_elements(&zd).unwrap();
        let got1 = zd.canonical_type(&w1).unwrap();
        let got2 = zd.canonical_type(&w2).unwrap();
        let m = inv_mod(s, n) as i64;
        let (s_, r_, n_) = (s as i64, r as i64, n as i64);
        let (exp1, exp2, fixed2) = if 2 * m > n_ {
            let i1 = residues(n, (0..=n_ - m - 2).map(|k| 1 + k * s_).chain([r_ + 1]));
            (i1, SimpleSet::EMPTY, SimpleSet::EMPTY)
        } else {
            let shown = residues(n, (1..=m - 1).map(|k| -1 + k * s_).chain([r_ - 1]));
            let fixed = residues(n, (0..=m - 2).map(|k| -1 + k * s_).chain([r_ - 1]));
            (SimpleSet::EMPTY, shown, fixed)
        };
        checked += 1;
        if got1 != exp1 || got2 != exp2 {
            mismatches.push(format!("({r},{s}) got {:?}/{:?}", got1.one_based(), got2.one_based()));
        }
        if got1 != exp1 || got2 != fixed2 {
            corrected_mismatches.push(format!("({r},{s})"));
        }
    }
    let shown = if mismatches.is_empty() {
        outcome(true, format!("{checked} coprime signatures"))
    } else {
        outcome(false, format!("{} of {checked} coprime signatures differ, first {}", mismatches.len(), mismatches[0]))
    };
    let fixed = outcome(
        corrected_mismatches.is_empty(),
        format!("I_w2 = {{-1+ks : 0<=k<=m-2}} u {{r-1}}: {} mismatches of {checked}", corrected_mismatches.len()),
    );
    (shown, fixed)
}

fn smallness_catalog() -> Outcome {
    let mut checked = 0;
    for n in 4..=MAX_N {
        for r in 2..=n - 2 {
            let zd = ZipDatum::gl(n, r).unwrap();
            let weyl = zd.weyl();
            let coprime = r.gcd(&(n - r)) == 1;
            let up = is_small(&zd, &weyl.simple(r)).unwrap();
            let down = is_small(&zd, &weyl.simple(r - 2)).unwrap();
            if up != coprime || down != coprime {
                return outcome(false, format!("({r},{}): small {up}/{down}, coprime {coprime}", n - r));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} signatures"))
}

fn x_i(n: usize, i: usize) -> Vec<usize> {
    (1..=n)
        .map(|j| {
            if j <= i {
                j
            } else if j == i + 1 {
                n
            } else {
                j - 1
            }
        })
        .collect()
}

fn hasse_catalogs() -> Outcome {
    for n in 3..=7 {
        let zd = ZipDatum::gl(n, n - 1).unwrap();
        let zero = vec![0; n];
        for i in 0..n {
            let x = zd.weyl().from_one_line(&x_i(n, i)).unwrap();
            let out = hasse_feasible(&zd, &x, &zero).unwrap();
            let Some(wit) = out.witness() else {
                return outcome(false, format!("x_{i} at n = {n} infeasible"));
            };
            if !validate_witness(&zd, &x, &zero, &wit.scaled, wit.multiplier).unwrap() {
                return outcome(false, format!("x_{i} at n = {n}: witness rejected"));
            }
        }
    }
    let zd = ZipDatum::gl(4, 2).unwrap();
    let failing: Vec<String> = zd
        .strata()
        .unwrap()
        .iter()
        .filter(|w| hasse_any_lweight(&zd, w).unwrap().is_none())
        .map(|w| zd.display(w))
        .collect();
    outcome(failing == ["[1324]"], format!("(n-1,1) hooks for n <= 7; (2,2) without invariant: {failing:?}"))
}

fn cross_oracle() -> Outcome {
    let mut checked = 0;
    for (n, r) in [(3, 2), (4, 2)] {
        let zd = ZipDatum::gl(n, r).unwrap();
        for w in zd.weyl().elements().unwrap() {
            let expected = xi_of_weyl(&zd, &w).unwrap();
            let f2 = xi_classify(&zd, &perm_matrix::<F2>(&zd, &w).unwrap(), 1).unwrap();
            let f3 = xi_classify(&zd, &perm_matrix::<F3>(&zd, &w).unwrap(), 1).unwrap();
            if f2 != expected || f3 != expected {
                return outcome(false, format!("({n},{r}) {}", zd.display(&w)));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} permutation matrices over F_2 and F_3"))
}

fn m_independence() -> Outcome {
    for (n, r) in [(3, 2), (4, 2)] {
        let zd = ZipDatum::gl(n, r).unwrap();
        let census = fp_point_census::<F2>(&zd, &[1, 2, 3], 1 << 20).unwrap();
        if let Some((label, counts)) = census.rows.iter().find(|(_, c)| c.iter().any(|x| *x != c[0])) {
            return outcome(false, format!("({n},{r}) {label}: {counts:?}"));
        }
    }
    let zd = ZipDatum::gl(4, 2).unwrap();
    let mut disagreements = 0;
    let mut total = 0;
    for_each_invertible::<F2>(4, &mut |g| {
        total += 1;
        let table = classify_22(g).unwrap().w;
        if zd.weyl().one_line(&orbit_class(&zd, g, 1).unwrap()).unwrap() != table {
            disagreements += 1;
        }
        true
    });
    outcome(
        disagreements == 0,
        format!("censuses equal for m = 1,2,3; classify_22 vs filtration: {disagreements} of {total} differ"),
    )
}

fn property_suite() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=PROPERTY_MAX_N {
        for r in 1..n {
            let s = n - r;
            let zd = ZipDatum::gl(n, r).unwrap();
            let weyl = zd.weyl();
            for w in weyl.elements().unwrap() {
                let (minus, plus) = orbit_codim(&zd, &w).unwrap();
                if minus + plus != r * s {
                    failures.push(format!("conservation ({r},{s}) {}", zd.display(&w)));
                }
                if weyl.length(&xi_of_weyl(&zd, &w).unwrap()) > weyl.length(&w) {
                    failures.push(format!("length ({r},{s}) {}", zd.display(&w)));
                }
                if is_small(&zd, &w).unwrap() != two_condition_small(&zd, &w).unwrap() {
                    failures.push(format!("smallness criteria ({r},{s}) {}", zd.display(&w)));
                }
            }
            for w in zd.strata().unwrap() {
                if pi_small(&zd, &w).ok() != Some(w.clone()) {
                    failures.push(format!("section ({r},{s}) {}", zd.display(&w)));
                }
                let base = zd.lower_neighbors(zd.i(), &w).unwrap().len();
                for k in zd.i().subsets() {
                    if small_lower_neighbors(&zd, k, &w).unwrap().len() < base {
                        failures.push(format!("neighbors ({r},{s}) {}", zd.display(&w)));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..CONJUGATION_SAMPLES {
        let n = rng.gen_range(2..=6);
        let r = rng.gen_range(1..n);
        let zd = ZipDatum::gl(n, r).unwrap();
        let weyl = zd.weyl();
        let mut line: Vec<usize> = (1..=n).collect();
        line.shuffle(&mut rng);
        let w = weyl.from_one_line(&line).unwrap();
        let mut a_line: Vec<usize> = (1..=r).collect();
        a_line.shuffle(&mut rng);
        let mut tail: Vec<usize> = (r + 1..=n).collect();
        tail.shuffle(&mut rng);
        a_line.extend(tail);
        let a = weyl.from_one_line(&a_line).unwrap();
        let conj =
            weyl.from_one_line(&compose(&compose(&a_line, &line), &invert(&one_line(&zd, &zd.psi(&a))))).unwrap();
        if orbit_codim(&zd, &conj).unwrap() != orbit_codim(&zd, &w).unwrap() {
            failures.push(format!("covariance ({r},{}) {}", n - r, zd.display(&w)));
        }
    }
    match failures.first() {
        None => outcome(true, format!("exhaustive n <= {PROPERTY_MAX_N}, {CONJUGATION_SAMPLES} conjugation samples")),
        Some(first) => outcome(false, format!("{} failures, first {first}", failures.len())),
    }
}

fn one_line(zd: &ZipDatum, w: &zipstrata::WeylElement) -> Vec<usize> {
    zd.weyl().one_line(w).unwrap()
}

fn compose(u: &[usize], v: &[usize]) -> Vec<usize> {
    v.iter().map(|&j| u[j - 1]).collect()
}

fn invert(u: &[usize]) -> Vec<usize> {
    let mut out = vec![0; u.len()];
    for (i, &j) in u.iter().enumerate() {
        out[j - 1] = i + 1;
    }
    out
}

fn main() {
    let (shown, fixed) = canonical_types();
    let criteria: Vec<(&str, &str, Criterion)> = vec![
        ("1", "length-2 trichotomy, n <= 12", Box::new(|| timed(Some(TRICHOTOMY_LIMIT), trichotomy))),
        ("2", "displayed canonical-type formulas", Box::new(|| shown)),
        ("2b", "canonical types with corrected w_2 range", Box::new(|| fixed)),
        ("3", "smallness of s_(r+1), s_(r-1) iff coprime", Box::new(|| timed(None, smallness_catalog))),
        ("4", "Hasse catalogs", Box::new(|| timed(None, hasse_catalogs))),
        ("5", "finite-field vs combinatorial classifier", Box::new(|| timed(Some(CROSS_ORACLE_LIMIT), cross_oracle))),
        ("6", "m-independence on F_2-points", Box::new(|| timed(Some(CENSUS_LIMIT), m_independence))),
        ("7", "property suite", Box::new(|| timed(None, property_suite))),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let out = run();
        println!("{} {id:>3}  {name}: {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        if !out.pass && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
