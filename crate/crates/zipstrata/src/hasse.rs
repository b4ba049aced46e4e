//! Characteristic-zero Hasse invariants: the set E_w and exact rational
//! feasibility of λ = wλ_0 − zλ_0 with ⟨λ_0, α∨⟩ < 0 for α ∈ E_w.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::{pairing, RootId};
use crate::scalar::Field;
use crate::weyl::WeylElement;
use crate::zipdatum::ZipDatum;
use crate::Rational;

/// E_w = {α > 0 : ws_α ≤ w and ℓ(ws_α) = ℓ(w) − 1}.
pub fn e_w_set(zd: &ZipDatum, w: &WeylElement) -> Result<Vec<RootId>> {
    let weyl = zd.weyl();
    weyl.check(w)?;
    let l = weyl.length(w);
    let mut out = Vec::new();
    for a in zd.rs().positive_roots() {
        let x = weyl.mul(w, &weyl.reflection(a));
        if weyl.length(&x) + 1 == l && weyl.bruhat_leq(&x, w) {
            out.push(a);
        }
    }
    Ok(out)
}

/// A rational λ_0 and its integral multiple m·λ_0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseWitness {
    pub lambda0: Vec<Rational>,
    pub multiplier: i64,
    pub scaled: Vec<i64>,
}

/// Why no λ_0 exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// y with yᵀ(w − z) = 0 and yᵀλ ≠ 0.
    Equalities { y: Vec<Rational> },
    /// μ ≥ 0, μ ≠ 0 on E_w with Σμ_α⟨λ_0, α∨⟩ constant and ≥ 0 on the
    /// solution space, contradicting Σμ_α⟨λ_0, α∨⟩ < 0.
    Farkas { roots: Vec<RootId>, multipliers: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HasseOutcome {
    Feasible(HasseWitness),
    Infeasible(Infeasibility),
}

impl HasseOutcome {
    pub fn witness(&self) -> Option<&HasseWitness> {
        match self {
            HasseOutcome::Feasible(w) => Some(w),
            HasseOutcome::Infeasible(_) => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, HasseOutcome::Feasible(_))
    }
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Integer matrix of u acting on the character lattice.
fn action_matrix(zd: &ZipDatum, u: &WeylElement) -> Vec<Vec<i64>> {
    let dim = zd.lattice().dim;
    let cols: Vec<Vec<i64>> = (0..dim)
        .map(|j| {
            let e: Vec<i64> = (0..dim).map(|k| i64::from(k == j)).collect();
            zd.weyl().apply_weight(u, zd.lattice(), &e)
        })
        .collect();
    (0..dim).map(|i| (0..dim).map(|j| cols[j][i]).collect()).collect()
}

/// Row vector of λ ↦ ⟨λ, α∨⟩.
fn coroot_row(zd: &ZipDatum, alpha: RootId) -> Vec<i64> {
    let dim = zd.lattice().dim;
    (0..dim)
        .map(|j| {
            let e: Vec<i64> = (0..dim).map(|k| i64::from(k == j)).collect();
            pairing(zd.rs(), zd.lattice(), &e, alpha)
        })
        .collect()
}

/// Matrix of λ_0 ↦ wλ_0 − zλ_0.
pub fn w_minus_z(zd: &ZipDatum, w: &WeylElement) -> Vec<Vec<i64>> {
    let a = action_matrix(zd, w);
    let b = action_matrix(zd, zd.z());
    a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

fn require_split(zd: &ZipDatum) -> Result<()> {
    if zd.sigma().is_identity() {
        Ok(())
    } else {
        Err(Error::Unsupported("Hasse feasibility is implemented for sigma = id only".into()))
    }
}

/// Decides whether some λ_0 ∈ Q^d has (w − z)λ_0 = λ and ⟨λ_0, α∨⟩ < 0 for
/// all α ∈ E_w. A witness is scaled to an integral one, valid for L(mλ).
pub fn hasse_feasible(zd: &ZipDatum, w: &WeylElement, lambda: &[i64]) -> Result<HasseOutcome> {
    require_split(zd)?;
    zd.check_min_rep(zd.i(), w)?;
    let dim = zd.lattice().dim;
    if lambda.len() != dim {
        return Err(Error::Precondition(format!("weight has {} entries, lattice has rank {dim}", lambda.len())));
    }
    let m = w_minus_z(zd, w);
    let e = e_w_set(zd, w)?;
    let strict: Vec<Vec<i64>> = e.iter().map(|&a| coroot_row(zd, a)).collect();
    let outcome = solve_strict(&m, lambda, &strict);
    finish(outcome, &e, lambda)
}

/// Decides whether some λ_0 has ⟨(w − z)λ_0, α∨⟩ = 0 for α ∈ I and
/// ⟨λ_0, α∨⟩ < 0 on E_w; returns λ = (w − z)λ_0 for the integral witness.
pub fn hasse_any_lweight(zd: &ZipDatum, w: &WeylElement) -> Result<Option<(Vec<i64>, HasseWitness)>> {
    require_split(zd)?;
    zd.check_min_rep(zd.i(), w)?;
    let m = w_minus_z(zd, w);
    let eq: Vec<Vec<i64>> = zd
        .i()
        .iter()
        .map(|i| {
            let c = coroot_row(zd, zd.rs().simple_root(i));
            (0..m[0].len()).map(|j| (0..m.len()).map(|k| c[k] * m[k][j]).sum()).collect()
        })
        .collect();
    let dim = zd.lattice().dim;
    let e = e_w_set(zd, w)?;
    let strict: Vec<Vec<i64>> = e.iter().map(|&a| coroot_row(zd, a)).collect();
    let eq = if eq.is_empty() { vec![vec![0; dim]] } else { eq };
    let rhs = vec![0; eq.len()];
    match finish(solve_strict(&eq, &rhs, &strict), &e, &rhs)? {
        HasseOutcome::Feasible(wit) => {
            let lambda: Vec<i64> = m.iter().map(|row| row.iter().zip(&wit.scaled).map(|(a, b)| a * b).sum()).collect();
            Ok(Some((lambda, wit)))
        }
        HasseOutcome::Infeasible(_) => Ok(None),
    }
}

fn finish(outcome: Solve, e: &[RootId], lambda: &[i64]) -> Result<HasseOutcome> {
    Ok(match outcome {
        Solve::Feasible(x) => HasseOutcome::Feasible(integral_witness(x)?),
        Solve::Inconsistent(y) => {
            debug_assert!(lambda.iter().any(|&v| v != 0));
            HasseOutcome::Infeasible(Infeasibility::Equalities { y })
        }
        Solve::Farkas(mu) => HasseOutcome::Infeasible(Infeasibility::Farkas { roots: e.to_vec(), multipliers: mu }),
    })
}

fn integral_witness(x: Vec<Rational>) -> Result<HasseWitness> {
    let m = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let overflow = || Error::Internal("witness does not fit in 64-bit integers".into());
    let scaled =
        x.iter().map(|v| (v.numer() * (&m / v.denom())).to_i64().ok_or_else(overflow)).collect::<Result<Vec<_>>>()?;
    Ok(HasseWitness { lambda0: x, multiplier: m.to_i64().ok_or_else(overflow)?, scaled })
}

/// Checks a witness with integer arithmetic: (w − z)·(mλ_0) = mλ and
/// ⟨mλ_0, α∨⟩ < 0 on E_w.
pub fn validate_witness(
    zd: &ZipDatum,
    w: &WeylElement,
    lambda: &[i64],
    scaled: &[i64],
    multiplier: i64,
) -> Result<bool> {
    let m = w_minus_z(zd, w);
    if multiplier < 1 || scaled.len() != m.len() {
        return Ok(false);
    }
    let image_ok =
        m.iter().zip(lambda).all(|(row, l)| row.iter().zip(scaled).map(|(a, b)| a * b).sum::<i64>() == multiplier * l);
    let strict_ok = e_w_set(zd, w)?.iter().all(|&a| pairing(zd.rs(), zd.lattice(), scaled, a) < 0);
    Ok(image_ok && strict_ok)
}

/// Replays an infeasibility certificate against the original system.
pub fn replay_certificate(zd: &ZipDatum, w: &WeylElement, lambda: &[i64], cert: &Infeasibility) -> Result<bool> {
    let m = w_minus_z(zd, w);
    let dim = m.len();
    match cert {
        Infeasibility::Equalities { y } => {
            let kills = (0..dim).all(|j| (0..dim).fold(Rational::zero(), |acc, k| acc + &y[k] * q(m[k][j])).is_zero());
            let hits = y.iter().zip(lambda).fold(Rational::zero(), |acc, (a, &l)| acc + a * q(l));
            Ok(kills && !hits.is_zero())
        }
        Infeasibility::Farkas { roots, multipliers } => {
            if roots.len() != multipliers.len()
                || multipliers.iter().any(|x| x.is_negative())
                || multipliers.iter().all(|x| x.is_zero())
            {
                return Ok(false);
            }
            // Σμ_α⟨λ_0, α∨⟩ must be a constant c ≥ 0 on {λ_0 : (w − z)λ_0 = λ}.
            let combo: Vec<Rational> = (0..dim)
                .map(|j| {
                    roots
                        .iter()
                        .zip(multipliers)
                        .fold(Rational::zero(), |acc, (&a, mu)| acc + mu * q(coroot_row(zd, a)[j]))
                })
                .collect();
            let mq = Matrix::from_fn(dim, dim, |i, j| q(m[i][j]));
            let Some(p) = particular_solution(&mq, &lambda.iter().map(|&v| q(v)).collect::<Vec<_>>()) else {
                return Ok(false);
            };
            let constant_on_fiber = mq.kernel().iter().all(|k| dot(&combo, k).is_zero());
            Ok(constant_on_fiber && !dot(&combo, &p).is_negative())
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn particular_solution(m: &Matrix<Rational>, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let aug = Matrix::from_fn(rows, cols + 1, |i, j| if j < cols { m[(i, j)].clone() } else { rhs[i].clone() });
    let (r, pivots) = aug.rref();
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, cols)].clone();
    }
    Some(x)
}

enum Solve {
    Feasible(Vec<Rational>),
    Inconsistent(Vec<Rational>),
    Farkas(Vec<Rational>),
}

/// Solves A·x = b together with s_k·x < 0 for every strict row.
fn solve_strict(a: &[Vec<i64>], b: &[i64], strict: &[Vec<i64>]) -> Solve {
    let dim = a[0].len();
    let am = Matrix::from_fn(a.len(), dim, |i, j| q(a[i][j]));
    let bq: Vec<Rational> = b.iter().map(|&v| q(v)).collect();
    let Some(p) = particular_solution(&am, &bq) else {
        let y = am
            .transpose()
            .kernel()
            .into_iter()
            .find(|y| !dot(y, &bq).is_zero())
            .expect("an inconsistent system has a separating left kernel vector");
        return Solve::Inconsistent(y);
    };
    let basis = am.kernel();
    // s_k·(p + Σ y_j n_j) < 0  ⟺  c_k·y + e_k < 0.
    let sq: Vec<Vec<Rational>> = strict.iter().map(|s| s.iter().map(|&v| q(v)).collect()).collect();
    let c: Vec<Vec<Rational>> = sq.iter().map(|s| basis.iter().map(|n| dot(s, n)).collect()).collect();
    let e: Vec<Rational> = sq.iter().map(|s| dot(s, &p)).collect();
    match fourier_motzkin(&c, &e, basis.len()) {
        Ok(y) => {
            let mut x = p;
            for (yj, n) in y.iter().zip(&basis) {
                for (xi, ni) in x.iter_mut().zip(n) {
                    *xi += yj * ni;
                }
            }
            Solve::Feasible(x)
        }
        Err(mu) => Solve::Farkas(mu),
    }
}

/// coef·(y, t) ≤ rhs, with the multipliers of the original rows.
#[derive(Clone)]
struct Row {
    coef: Vec<Rational>,
    rhs: Rational,
    mult: Vec<Rational>,
}

impl Row {
    /// Rescales so that the t coefficient is 1 (it is always positive).
    fn normalized(mut self) -> Row {
        let t = self.coef.last().expect("t column").clone();
        if !t.is_one() {
            let inv = t.recip();
            self.coef.iter_mut().for_each(|x| *x *= &inv);
            self.rhs *= &inv;
            self.mult.iter_mut().for_each(|x| *x *= &inv);
        }
        self
    }
}

/// Maximizes t subject to c_k·y + e_k + t ≤ 0 and t ≤ 1 by eliminating the
/// y variables. Returns y with c_k·y + e_k < 0 for all k, or multipliers
/// μ ≥ 0, μ ≠ 0 with Σμc = 0 and Σμe ≥ 0.
fn fourier_motzkin(
    c: &[Vec<Rational>],
    e: &[Rational],
    nvars: usize,
) -> std::result::Result<Vec<Rational>, Vec<Rational>> {
    let k = c.len();
    let mut rows: Vec<Row> = (0..k)
        .map(|i| {
            let mut coef = c[i].clone();
            coef.push(Rational::one());
            let mut mult = vec![Rational::zero(); k + 1];
            mult[i] = Rational::one();
            Row { coef, rhs: -e[i].clone(), mult }
        })
        .collect();
    let mut cap = vec![Rational::zero(); nvars];
    cap.push(Rational::one());
    let mut cap_mult = vec![Rational::zero(); k + 1];
    cap_mult[k] = Rational::one();
    rows.push(Row { coef: cap, rhs: Rational::one(), mult: cap_mult });

    let mut levels: Vec<Vec<Row>> = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            if r.coef[j].is_positive() {
                pos.push(r);
            } else if r.coef[j].is_negative() {
                neg.push(r);
            } else {
                keep.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (-n.coef[j].clone(), p.coef[j].clone());
                let combine = |x: &Rational, y: &Rational| &a * x + &b * y;
                keep.push(
                    Row {
                        coef: p.coef.iter().zip(&n.coef).map(|(x, y)| combine(x, y)).collect(),
                        rhs: combine(&p.rhs, &n.rhs),
                        mult: p.mult.iter().zip(&n.mult).map(|(x, y)| combine(x, y)).collect(),
                    }
                    .normalized(),
                );
            }
        }
        // Keep the tightest row for each coefficient vector.
        let mut best: HashMap<Vec<Rational>, Row> = HashMap::new();
        for r in keep {
            match best.get(&r.coef) {
                Some(old) if old.rhs <= r.rhs => {}
                _ => {
                    best.insert(r.coef.clone(), r);
                }
            }
        }
        let mut next: Vec<Row> = best.into_values().collect();
        next.sort_by(|x, y| x.coef.cmp(&y.coef).then(x.rhs.cmp(&y.rhs)));
        levels.push(std::mem::replace(&mut rows, next));
    }

    // Only t remains: every row reads t ≤ rhs.
    let tightest = rows.iter().min_by(|x, y| x.rhs.cmp(&y.rhs)).expect("the cap row survives");
    let t = tightest.rhs.clone();
    if !t.is_positive() {
        let mut mu = tightest.mult.clone();
        mu.truncate(k);
        return Err(mu);
    }

    let mut y = vec![Rational::zero(); nvars];
    for j in (0..nvars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for r in &levels[j] {
            let cj = &r.coef[j];
            if cj.is_zero() {
                continue;
            }
            let mut rest = r.rhs.clone() - &r.coef[nvars] * &t;
            for (l, yl) in y.iter().enumerate().skip(j + 1) {
                rest -= &r.coef[l] * yl;
            }
            let bound = rest / cj;
            if cj.is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        y[j] = pick_between(lo, hi);
    }
    Ok(y)
}

/// A simple rational in [lo, hi].
fn pick_between(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    let zero = Rational::zero();
    match (lo, hi) {
        (None, None) => zero,
        (Some(l), None) => {
            if l <= zero {
                zero
            } else {
                l.ceil()
            }
        }
        (None, Some(h)) => {
            if h >= zero {
                zero
            } else {
                h.floor()
            }
        }
        (Some(l), Some(h)) => {
            if l <= zero && zero <= h {
                zero
            } else if l.ceil() <= h {
                if l.is_positive() {
                    l.ceil()
                } else {
                    h.floor()
                }
            } else {
                (l + h) / q(2)
            }
        }
    }
}

/// Per-stratum JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseReport {
    pub w: String,
    #[serde(rename = "E_w")]
    pub e_w: Vec<String>,
    pub lambda: Vec<i64>,
    pub feasible: bool,
    pub witness: Option<Vec<i64>>,
    pub multiplier: Option<i64>,
}

pub fn hasse_report(zd: &ZipDatum, w: &WeylElement, lambda: &[i64]) -> Result<HasseReport> {
    let outcome = hasse_feasible(zd, w, lambda)?;
    let e = e_w_set(zd, w)?;
    let wit = outcome.witness();
    Ok(HasseReport {
        w: zd.display(w),
        e_w: e.iter().map(|&a| zd.rs().root_label(a)).collect(),
        lambda: lambda.to_vec(),
        feasible: outcome.is_feasible(),
        witness: wit.map(|x| x.scaled.clone()),
        multiplier: wit.map(|x| x.multiplier),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(zd: &ZipDatum, s: &str) -> WeylElement {
        zd.weyl().parse(s).unwrap()
    }

    /// x_i in one-line notation: j ↦ j (j ≤ i), i+1 ↦ n, j ↦ j − 1 (j ≥ i + 2).
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

    #[test]
    fn e_w_examples() {
        let zd = ZipDatum::gl(4, 2).unwrap();
        let e = e_w_set(&zd, &w(&zd, "1324")).unwrap();
        assert_eq!(e, vec![zd.rs().simple_root(1)]);
        assert!(e_w_set(&zd, &zd.weyl().identity()).unwrap().is_empty());
        for n in 3..=6 {
            let zd = ZipDatum::gl(n, n - 1).unwrap();
            for i in 0..n {
                let x = zd.weyl().from_one_line(&x_i(n, i)).unwrap();
                assert!(zd.weyl().is_min_rep(zd.i(), &x));
                let expected: Vec<RootId> = (i + 2..=n).map(|j| zd.rs().pair_root(i, j - 1)).collect();
                let mut got = e_w_set(&zd, &x).unwrap();
                got.sort();
                let mut exp = expected.clone();
                exp.sort();
                assert_eq!(got, exp, "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn hook_strata_have_hasse_invariants() {
        for n in 3..=7 {
            let zd = ZipDatum::gl(n, n - 1).unwrap();
            for i in 0..n {
                let x = zd.weyl().from_one_line(&x_i(n, i)).unwrap();
                let zero = vec![0; n];
                let out = hasse_feasible(&zd, &x, &zero).unwrap();
                let wit = out.witness().expect("feasible");
                assert!(validate_witness(&zd, &x, &zero, &wit.scaled, wit.multiplier).unwrap());
                // λ_i = (0^{i+1}, 1^{n−i−1}).
                let li: Vec<i64> = (0..n).map(|k| i64::from(k > i)).collect();
                assert!(validate_witness(&zd, &x, &zero, &li, 1).unwrap(), "n = {n}, i = {i}");
            }
        }
        let zd = ZipDatum::gl(3, 2).unwrap();
        assert!(validate_witness(&zd, zd.z(), &[0, 0, 0], &[0, 1, 1], 1).unwrap());
    }

    #[test]
    fn the_22_stratum_without_hasse_invariant() {
        let zd = ZipDatum::gl(4, 2).unwrap();
        let x = w(&zd, "1324");
        let out = hasse_feasible(&zd, &x, &[0; 4]).unwrap();
        let HasseOutcome::Infeasible(cert) = &out else { panic!("expected infeasible") };
        assert!(matches!(cert, Infeasibility::Farkas { .. }));
        assert!(replay_certificate(&zd, &x, &[0; 4], cert).unwrap());
        assert!(hasse_any_lweight(&zd, &x).unwrap().is_none());
        assert!(hasse_any_lweight(&zd, &w(&zd, "3124")).unwrap().is_some());
        for s in zd.strata().unwrap() {
            assert_eq!(hasse_any_lweight(&zd, &s).unwrap().is_some(), zd.display(&s) != "[1324]");
        }
        // (w − z)λ_0 = (a1 − a3, a3 − a4, a2 − a1, a4 − a2).
        assert_eq!(
            w_minus_z(&zd, &x),
            vec![vec![1, 0, -1, 0], vec![0, 0, 1, -1], vec![-1, 1, 0, 0], vec![0, -1, 0, 1]]
        );
    }

    #[test]
    fn identity_is_always_feasible() {
        for (n, r) in [(3, 1), (4, 2), (5, 2)] {
            let zd = ZipDatum::gl(n, r).unwrap();
            let id = zd.weyl().identity();
            let out = hasse_feasible(&zd, &id, &vec![0; n]).unwrap();
            assert_eq!(out.witness().unwrap().scaled, vec![0; n]);
            let (lambda, _) = hasse_any_lweight(&zd, &id).unwrap().unwrap();
            assert_eq!(lambda, vec![0; n]);
        }
    }

    #[test]
    fn inconsistent_weight_has_an_equality_certificate() {
        let zd = ZipDatum::gl(3, 2).unwrap();
        // The image of w − z lies in the sum-zero hyperplane.
        let lambda = [1, 0, 0];
        let x = w(&zd, "s2");
        let out = hasse_feasible(&zd, &x, &lambda).unwrap();
        let HasseOutcome::Infeasible(cert @ Infeasibility::Equalities { .. }) = &out else {
            panic!("expected an equality conflict")
        };
        assert!(replay_certificate(&zd, &x, &lambda, cert).unwrap());
    }

    #[test]
    fn twisted_sigma_is_unsupported() {
        let doc: crate::zipdatum::ZipDatumDoc =
            serde_json::from_str(r#"{"gl": {"n": 3, "r": 1}, "sigma": "flip"}"#).unwrap();
        let zd = doc.build(1, crate::weyl::DEFAULT_BUDGET).unwrap();
        let id = zd.weyl().identity();
        assert!(matches!(hasse_feasible(&zd, &id, &[0, 0, 0]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fourier_motzkin_small_systems() {
        // y < 0 and −y − 1 < 0 → some y in (−1, 0).
        let c = vec![vec![q(1)], vec![q(-1)]];
        let e = vec![q(0), q(-1)];
        let y = fourier_motzkin(&c, &e, 1).unwrap();
        assert!(y[0] < q(0) && y[0] > q(-1));
        // y < 0 and −y < 0 is empty; μ = (1, 1).
        let e = vec![q(0), q(0)];
        let mu = fourier_motzkin(&c, &e, 1).unwrap_err();
        assert!(mu.iter().all(|m| m.is_positive()));
        // No variables: 1 < 0 fails with μ = (1).
        let mu = fourier_motzkin(&[vec![]], &[q(1)], 0).unwrap_err();
        assert_eq!(mu, vec![q(1)]);
    }

    fn strict_system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..4, 1usize..6).prop_flat_map(|(d, k)| {
            (prop::collection::vec(prop::collection::vec(-3i64..=3, d), k), prop::collection::vec(-3i64..=3, k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn fourier_motzkin_answers_are_certified((c, e) in strict_system()) {
            let d = c[0].len();
            let cq: Vec<Vec<Rational>> = c.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
            let eq: Vec<Rational> = e.iter().map(|&v| q(v)).collect();
            match fourier_motzkin(&cq, &eq, d) {
                Ok(y) => {
                    for (row, ek) in cq.iter().zip(&eq) {
                        prop_assert!((dot(row, &y) + ek).is_negative());
                    }
                }
                Err(mu) => {
                    prop_assert!(mu.iter().all(|m| !m.is_negative()));
                    prop_assert!(mu.iter().any(|m| m.is_positive()));
                    for j in 0..d {
                        let s = mu.iter().zip(&cq).fold(Rational::zero(), |acc, (m, r)| acc + m * &r[j]);
                        prop_assert!(s.is_zero());
                    }
                    prop_assert!(!dot(&mu, &eq).is_negative());
                }
            }
        }

        #[test]
        fn feasibility_is_scale_invariant(n in 3usize..6, pick in any::<usize>(), lam in prop::collection::vec(-2i64..=2, 5), m in 1i64..4) {
            let zd = ZipDatum::gl(n, n - 1).unwrap();
            let strata = zd.strata().unwrap();
            let x = &strata[pick % strata.len()];
            // Project into the image of w − z so both outcomes occur.
            let mat = w_minus_z(&zd, x);
            let base: Vec<i64> = mat.iter().map(|row| row.iter().zip(&lam).map(|(a, b)| a * b).sum()).collect();
            let scaled: Vec<i64> = base.iter().map(|v| v * m).collect();
            let a = hasse_feasible(&zd, x, &base).unwrap();
            let b = hasse_feasible(&zd, x, &scaled).unwrap();
            prop_assert_eq!(a.is_feasible(), b.is_feasible());
            if let Some(wit) = b.witness() {
                prop_assert!(validate_witness(&zd, x, &scaled, &wit.scaled, wit.multiplier).unwrap());
            }
            if let HasseOutcome::Infeasible(cert) = &a {
                prop_assert!(replay_certificate(&zd, x, &base, cert).unwrap());
            }
        }
    }
}
