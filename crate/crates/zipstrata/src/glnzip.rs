//! GL_n of signature (r, s): Dieudonné spaces over finite fields and the
//! full classifier Ξ on matrices, the Schur-complement invariants Δ, Δ',
//! characteristic-polynomial Hasse invariants for (n−1, 1), the length-2
//! closed form and point censuses.

use std::collections::BTreeMap;

use num_traits::Zero;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, FiniteField, Gf};
use crate::strata::{decide_smooth, StratumVerdict};
use crate::weyl::WeylElement;
use crate::zipdatum::ZipDatum;

/// (r, s) with r ≥ s ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if s == 0 || r < s {
            return Err(Error::Precondition(format!("signature ({r}, {s}) needs r >= s >= 1")));
        }
        Ok(Signature { r, s })
    }

    pub fn n(&self) -> usize {
        self.r + self.s
    }

    pub fn datum(&self) -> Result<ZipDatum> {
        ZipDatum::gl(self.n(), self.r)
    }

    pub fn datum_with_budget(&self, budget: u64) -> Result<ZipDatum> {
        ZipDatum::gl_with_budget(self.n(), self.r, budget)
    }

    /// (w_1, w_2, w') = (s_r s_{r+1}, s_r s_{r−1}, s_r), for s ≥ 2.
    pub fn length2_elements(&self, zd: &ZipDatum) -> Result<(WeylElement, WeylElement, WeylElement)> {
        if self.s < 2 {
            return Err(Error::Precondition("w_1 needs s >= 2".into()));
        }
        let weyl = zd.weyl();
        let r = self.r - 1;
        Ok((weyl.from_word(&[r, r + 1])?, weyl.from_word(&[r, r - 1])?, weyl.from_word(&[r])?))
    }
}

fn gl_signature(zd: &ZipDatum) -> Result<(usize, usize)> {
    zd.gl_signature()
        .ok_or_else(|| Error::Unsupported("needs a GL_n datum with a maximal parabolic and sigma = id".into()))
}

/// ẇ with ẇe_j = e_{w(j)}.
pub fn perm_matrix<F: Field>(zd: &ZipDatum, w: &WeylElement) -> Result<Matrix<F>> {
    let line = zd.weyl().one_line(w).ok_or_else(|| Error::Unsupported("permutation matrices need type A".into()))?;
    Ok(Matrix::permutation(&line.iter().map(|x| x - 1).collect::<Vec<_>>()))
}

/// Entrywise σ^e.
pub fn frobenius_matrix<F: FiniteField>(m: &Matrix<F>, e: i64) -> Matrix<F> {
    m.map(|x| x.frobenius_pow(e))
}

fn frobenius_space<F: FiniteField>(v: &Subspace<F>, e: i64) -> Subspace<F> {
    v.map_entries(|x| x.frobenius_pow(e))
}

fn projector<F: Field>(n: usize, range: std::ops::Range<usize>) -> Matrix<F> {
    Matrix::from_fn(n, n, |i, j| if i == j && range.contains(&i) { F::one() } else { F::zero() })
}

/// Φ(f) = (a, b) with a = f·p_1 and b = σ^{−m}(p_2·f⁻¹); F = a⊗σ^m and
/// V = b⊗σ^{−m}.
pub fn phi_map<F: FiniteField>(f: &Matrix<F>, r: usize, m: u32) -> Result<(Matrix<F>, Matrix<F>)> {
    let n = f.rows();
    let finv = f.inverse().ok_or(Error::Singular)?;
    let a = f * &projector(n, 0..r);
    let b = frobenius_matrix(&(&projector(n, r..n) * &finv), -i64::from(m));
    let sb = frobenius_matrix(&b, i64::from(m));
    let ok = (&a * &sb).is_zero()
        && (&sb * &a).is_zero()
        && a.rank() == r
        && b.rank() == n - r
        && Subspace::span(n, a.kernel()) == Subspace::span(n, (r..n).map(|i| crate::linalg::unit(n, i)));
    if !ok {
        return Err(Error::Internal("Phi(f) violates the Dieudonne relations".into()));
    }
    Ok((a, b))
}

/// The coarsest filtration stable under F(M) = a·σ^m(M) and
/// V⁻¹(M) = σ^m({y : b·y ∈ M}).
pub fn canonical_filtration<F: FiniteField>(a: &Matrix<F>, b: &Matrix<F>, m: u32) -> Result<Vec<Subspace<F>>> {
    let n = a.rows();
    let e = i64::from(m);
    let f_op = |v: &Subspace<F>| frobenius_space(v, e).image(a);
    let vinv_op = |v: &Subspace<F>| frobenius_space(&v.preimage(b), e);
    let mut chain: Vec<Subspace<F>> = vec![Subspace::zero(n), Subspace::full(n)];
    for _ in 0..=2 * n {
        let mut grown = false;
        let current = chain.clone();
        for v in &current {
            for img in [f_op(v), vinv_op(v)] {
                if !chain.contains(&img) {
                    chain.push(img);
                    grown = true;
                }
            }
        }
        chain.sort_by_key(|v| v.dim());
        if chain.windows(2).any(|p| p[0].dim() == p[1].dim() || !p[0].is_subspace_of(&p[1])) {
            return Err(Error::Internal("canonical filtration is not a chain".into()));
        }
        if !grown {
            return Ok(chain);
        }
    }
    Err(Error::Internal("canonical filtration did not stabilize".into()))
}

/// The ^I W class of g: the w with g ∈ G_w = E·(ẇż⁻¹) for the Frobenius
/// exponent m, read off from the relative position of the canonical
/// filtration of D_g and 0 ⊆ V(D) ⊆ D.
pub fn orbit_class<F: FiniteField>(zd: &ZipDatum, g: &Matrix<F>, m: u32) -> Result<WeylElement> {
    let (r, _) = gl_signature(zd)?;
    let n = g.rows();
    let (a, b) = phi_map(g, r, m)?;
    let chain = canonical_filtration(&a, &b, m)?;
    let vd = Subspace::column_space(&b);
    // c_k = dim(V(D) ∩ D_k) along any full flag refining the chain; each
    // graded piece lies entirely inside or transversal to V(D).
    let mut c = vec![0usize; n + 1];
    for pair in chain.windows(2) {
        let (lo, hi) = (pair[0].dim(), pair[1].dim());
        let gain = vd.intersect(&pair[1]).dim() - vd.intersect(&pair[0]).dim();
        if gain != 0 && gain != hi - lo {
            return Err(Error::Internal("graded piece is not homogeneous for V(D)".into()));
        }
        for k in lo + 1..=hi {
            c[k] = c[k - 1] + usize::from(gain != 0);
        }
    }
    // Positions n − k + 1 where c jumps carry the values r+1..n.
    let mut in_s = vec![false; n + 1];
    for k in 1..=n {
        if c[k] > c[k - 1] {
            in_s[n - k + 1] = true;
        }
    }
    let (mut low, mut high) = (1, r + 1);
    let line: Vec<usize> = (1..=n)
        .map(|p| {
            let v = if in_s[p] { &mut high } else { &mut low };
            *v += 1;
            *v - 1
        })
        .collect();
    Ok(zd.weyl().from_one_line(&line)?)
}

/// Ξ(f): the w ∈ ^I W with f·ż⁻¹ ∈ G_w.
pub fn xi_classify<F: FiniteField>(zd: &ZipDatum, f: &Matrix<F>, m: u32) -> Result<WeylElement> {
    let zinv = perm_matrix::<F>(zd, zd.z_inv())?;
    orbit_class(zd, &(f * &zinv), m)
}

/// A random element of E_m = {(x, y) ∈ P × Q : Levi(y) = σ^m(Levi(x))}.
pub fn random_zip_pair<F: FiniteField, R: Rng>(r: usize, s: usize, m: u32, rng: &mut R) -> (Matrix<F>, Matrix<F>) {
    let n = r + s;
    let a = random_invertible::<F, R>(r, rng);
    let d = random_invertible::<F, R>(s, rng);
    let e = i64::from(m);
    let (sa, sd) = (frobenius_matrix(&a, e), frobenius_matrix(&d, e));
    let mut x = Matrix::zeros(n, n);
    let mut y = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            match (i < r, j < r) {
                (true, true) => {
                    x[(i, j)] = a[(i, j)];
                    y[(i, j)] = sa[(i, j)];
                }
                (false, false) => {
                    x[(i, j)] = d[(i - r, j - r)];
                    y[(i, j)] = sd[(i - r, j - r)];
                }
                (false, true) => x[(i, j)] = random_element(rng),
                (true, false) => y[(i, j)] = random_element(rng),
            }
        }
    }
    (x, y)
}

pub fn random_element<F: FiniteField, R: Rng>(rng: &mut R) -> F {
    F::from_index(rng.gen_range(0..F::ORDER))
}

pub fn random_invertible<F: FiniteField, R: Rng>(n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let m: Matrix<F> = Matrix::from_fn(n, n, |_, _| random_element(rng));
        if n == 0 || !m.det().is_zero() {
            return m;
        }
    }
}

/// (A, B, C, D) blocks of g for the signature (r, n − r).
fn blocks<F: Field>(g: &Matrix<F>, r: usize) -> (Matrix<F>, Matrix<F>, Matrix<F>, Matrix<F>) {
    let s = g.rows() - r;
    (g.block(0, 0, r, r), g.block(0, r, r, s), g.block(r, 0, s, r), g.block(r, r, s, s))
}

/// Δ(g) = A.
pub fn delta<F: Field>(g: &Matrix<F>, r: usize) -> Matrix<F> {
    g.block(0, 0, r, r)
}

/// Δ'(g) = det(A)D − C·Adj(A)·B.
pub fn delta_prime<F: Field>(g: &Matrix<F>, r: usize) -> Matrix<F> {
    let (a, b, c, d) = blocks(g, r);
    &d.scale(&a.det()) - &(&(&c * &a.adjugate()) * &b)
}

/// The (2,2) invariants and the stratum they determine.
#[derive(Clone, PartialEq)]
pub struct Classify22<F> {
    pub w: [usize; 4],
    pub ha0: F,
    pub ha1: F,
    pub ha0_prime: F,
    pub ha1_prime: F,
    pub delta: Matrix<F>,
    pub delta_prime: Matrix<F>,
}

/// Stratum of g ∈ GL_4 for (2,2) and σ = id, from Ha_0 = det Δ, Ha_1 = tr Δ,
/// Ha'_0 = det Δ', Ha'_1 = tr Δ'.
pub fn classify_22<F: Field>(g: &Matrix<F>) -> Result<Classify22<F>> {
    if g.rows() != 4 || g.cols() != 4 {
        return Err(Error::Precondition("classify_22 needs a 4x4 matrix".into()));
    }
    if g.det().is_zero() {
        return Err(Error::Singular);
    }
    let dl = delta(g, 2);
    let dp = delta_prime(g, 2);
    let (ha0, ha1, ha0_prime, ha1_prime) = (dl.det(), dl.trace(), dp.det(), dp.trace());
    let w = if !ha0.is_zero() {
        [3, 4, 1, 2]
    } else {
        match (ha1.is_zero(), ha1_prime.is_zero()) {
            (false, false) => [3, 1, 4, 2],
            (false, true) => [1, 3, 4, 2],
            (true, false) => [3, 1, 2, 4],
            (true, true) if !dl.is_zero() => [1, 3, 2, 4],
            (true, true) => [1, 2, 3, 4],
        }
    };
    Ok(Classify22 { w, ha0, ha1, ha0_prime, ha1_prime, delta: dl, delta_prime: dp })
}

/// Ha_0, …, Ha_{n−1} for (n−1, 1): char_{Δ(g)}(X) = X^{n−1} + Σ Ha_i X^i and
/// Ha_{n−1} = 1. In particular Ha_0 = (−1)^{n−1} det Δ(g).
pub fn char_ha_coeffs<F: Field>(g: &Matrix<F>, sig: Signature) -> Result<Vec<F>> {
    if sig.s != 1 || g.rows() != sig.n() {
        return Err(Error::Precondition("characteristic-polynomial invariants need signature (n-1, 1)".into()));
    }
    Ok(delta(g, sig.r).charpoly())
}

pub type F65521 = Gf<65521, 1>;

/// π(w) for (n−1, 1) as the index i of x_i: the generic X-valuation of
/// char_{bΔ(wz⁻¹)} over lower-triangular b, taken as the minimum over
/// `samples` random b in GL_{n−1}(F_65521). A wrong answer needs every sample
/// to hit a proper hypersurface, probability at most (n/65521)^samples.
pub fn pi_char_poly(zd: &ZipDatum, w: &WeylElement, samples: usize, seed: u64) -> Result<usize> {
    let (r, s) = gl_signature(zd)?;
    if s != 1 {
        return Err(Error::Precondition("pi_char_poly needs signature (n-1, 1)".into()));
    }
    let g = &perm_matrix::<F65521>(zd, w)? * &perm_matrix(zd, zd.z_inv())?;
    let dl = delta(&g, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = r;
    for _ in 0..samples.max(1) {
        let b = Matrix::from_fn(r, r, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => random_element(&mut rng),
            std::cmp::Ordering::Equal => F65521::from_index(rng.gen_range(1..F65521::ORDER)),
            std::cmp::Ordering::Less => F65521::zero(),
        });
        let poly = (&b * &dl).charpoly();
        let val = poly.iter().position(|c| !c.is_zero()).expect("monic");
        best = best.min(val);
    }
    Ok(best)
}

/// Whether two r×r matrices are conjugate under GL_r(F_q), by search.
pub fn similar<F: FiniteField>(x: &Matrix<F>, y: &Matrix<F>) -> bool {
    let r = x.rows();
    if x.charpoly() != y.charpoly() || x.rank() != y.rank() {
        return false;
    }
    let mut found = false;
    for_each_invertible::<F>(r, &mut |p| {
        if p * x == y * p {
            found = true;
        }
        !found
    });
    found
}

/// |GL_n(F_q)|.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = u128::from(q).pow(n as u32);
    (0..n).map(|i| qn - u128::from(q).pow(i as u32)).product()
}

/// Calls `f` on every invertible n×n matrix until it returns false.
pub fn for_each_invertible<F: FiniteField>(n: usize, f: &mut dyn FnMut(&Matrix<F>) -> bool) {
    let vectors: Vec<Vec<F>> = (0..F::ORDER.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let x = F::from_index(idx % F::ORDER);
                    idx /= F::ORDER;
                    x
                })
                .collect()
        })
        .collect();
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(n);
    fn rec<F: FiniteField>(
        n: usize,
        vectors: &[Vec<F>],
        rows: &mut Vec<Vec<F>>,
        f: &mut dyn FnMut(&Matrix<F>) -> bool,
    ) -> bool {
        if rows.len() == n {
            return f(&Matrix::from_rows(rows.clone()));
        }
        let span = Subspace::span(n, rows.iter().cloned());
        for v in vectors {
            if span.contains(v) {
                continue;
            }
            rows.push(v.clone());
            let go_on = rec(n, vectors, rows, f);
            rows.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(n, &vectors, &mut rows, f);
}

/// Per-stratum point counts of GL_n(F_q), one column per exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub r: usize,
    pub q: u64,
    pub exponents: Vec<u32>,
    /// Stratum label and its counts in exponent order.
    pub rows: Vec<(String, Vec<u64>)>,
    pub total: u64,
}

/// Counts {g ∈ GL_n(F_q) : g ∈ G_{m,w}} for every w and every m.
pub fn fp_point_census<F: FiniteField>(zd: &ZipDatum, exponents: &[u32], budget: u64) -> Result<Census> {
    let (r, s) = gl_signature(zd)?;
    let n = r + s;
    let needed = gl_order(n, F::ORDER) * exponents.len().max(1) as u128;
    if needed > u128::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let strata = zd.strata()?;
    let index: BTreeMap<WeylElement, usize> = strata.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut counts = vec![vec![0u64; exponents.len()]; strata.len()];
    let mut total = 0u64;
    let mut failure: Option<Error> = None;
    for_each_invertible::<F>(n, &mut |g| {
        total += 1;
        for (k, &m) in exponents.iter().enumerate() {
            match orbit_class(zd, g, m) {
                Ok(w) => counts[index[&w]][k] += 1,
                Err(e) => {
                    failure = Some(e);
                    return false;
                }
            }
        }
        true
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Census {
        n,
        r,
        q: F::ORDER,
        exponents: exponents.to_vec(),
        rows: strata.iter().zip(counts).map(|(w, c)| (zd.display(w), c)).collect(),
        total,
    })
}

/// Outcome of the closed form for one of U_1, U_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedVerdict {
    Smooth,
    NotSmooth,
    NotBounded,
}

impl ClosedVerdict {
    pub fn is_smooth(self) -> bool {
        self == ClosedVerdict::Smooth
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    GcdAboveThree,
    GcdTwoOrThree,
    Coprime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Length2Report {
    pub r: usize,
    pub s: usize,
    pub gcd: usize,
    /// s⁻¹ mod n when gcd(r, s) = 1.
    pub m: Option<usize>,
    pub branch: Branch,
    pub u1: ClosedVerdict,
    pub u2: ClosedVerdict,
}

/// s⁻¹ mod n.
pub fn inv_mod(s: usize, n: usize) -> Option<usize> {
    (1..n).find(|m| (m * s) % n == 1)
}

/// Smoothness of U_i = X_{w_i} ∪ X_{w'} from the signature alone.
pub fn length2_closed_form(sig: Signature) -> Result<Length2Report> {
    if sig.s < 2 {
        return Err(Error::Precondition(
            "s = 1: every stratum closure is smooth; the length-2 closed form needs s >= 2".into(),
        ));
    }
    let n = sig.n();
    let gcd = sig.r.gcd(&sig.s);
    let (branch, m, u1, u2) = match gcd {
        1 => {
            let m = inv_mod(sig.s, n).expect("coprime");
            let (u1, u2) = if 2 * m > n {
                (ClosedVerdict::Smooth, ClosedVerdict::NotSmooth)
            } else {
                (ClosedVerdict::NotSmooth, ClosedVerdict::Smooth)
            };
            (Branch::Coprime, Some(m), u1, u2)
        }
        2 | 3 => (Branch::GcdTwoOrThree, None, ClosedVerdict::Smooth, ClosedVerdict::Smooth),
        _ => (Branch::GcdAboveThree, None, ClosedVerdict::NotBounded, ClosedVerdict::NotBounded),
    };
    Ok(Length2Report { r: sig.r, s: sig.s, gcd, m, branch, u1, u2 })
}

/// The closed form next to the general decision procedure.
#[derive(Debug, Clone)]
pub struct Length2Check {
    pub report: Length2Report,
    pub u1: StratumVerdict,
    pub u2: StratumVerdict,
}

impl Length2Check {
    pub fn agrees(&self) -> bool {
        let matches = |c: ClosedVerdict, v: &StratumVerdict| match c {
            ClosedVerdict::Smooth => v.smooth,
            ClosedVerdict::NotSmooth => !v.smooth,
            ClosedVerdict::NotBounded => !v.bounded,
        };
        matches(self.report.u1, &self.u1) && matches(self.report.u2, &self.u2)
    }
}

/// Enumerations over W_I are bounded by `budget`; (10, 2) needs 10!·2!.
pub fn length2_cross_check(sig: Signature, budget: u64) -> Result<Length2Check> {
    let report = length2_closed_form(sig)?;
    let zd = sig.datum_with_budget(budget)?;
    let (w1, w2, wp) = sig.length2_elements(&zd)?;
    Ok(Length2Check { report, u1: decide_smooth(&zd, &w1, &wp)?, u2: decide_smooth(&zd, &w2, &wp)? })
}
