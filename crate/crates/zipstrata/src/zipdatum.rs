//! Combinatorial zip data: the frame element z, the type J, the twisted
//! isomorphism ψ, twisted orders ≼_K on ^K W and canonical types.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{build_generic, build_gl, CharacterLattice, Realization, RootId, RootSystem, SimpleSet};
use crate::weyl::{Weyl, WeylElement, DEFAULT_BUDGET};

/// A diagram automorphism σ of the based root datum, acting on Δ, Φ, W and
/// (when known) on the character lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedAutomorphism {
    delta_perm: Vec<usize>,
    root_perm: Vec<RootId>,
    /// τ with σ(w) = τ·w·τ⁻¹ on the faithful W-set.
    faithful_perm: Vec<u16>,
    lattice_map: Option<Vec<Vec<i64>>>,
}

impl BasedAutomorphism {
    pub fn identity(weyl: &Weyl, lattice: &CharacterLattice) -> Self {
        Self::new(weyl, lattice, (0..weyl.rank()).collect()).expect("identity is an automorphism")
    }

    /// σ(α_i) = α_{delta_perm[i]} (0-based).
    pub fn new(weyl: &Weyl, lattice: &CharacterLattice, delta_perm: Vec<usize>) -> Result<Self> {
        let rs = weyl.rs();
        let rank = rs.rank();
        let mut seen = vec![false; rank];
        if delta_perm.len() != rank || delta_perm.iter().any(|&x| x >= rank || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::BadSigma(format!("{delta_perm:?} is not a permutation of the {rank} simple roots")));
        }
        let c = rs.cartan();
        for i in 0..rank {
            for j in 0..rank {
                if c[delta_perm[i]][delta_perm[j]] != c[i][j] {
                    return Err(Error::BadSigma(format!(
                        "does not preserve the Cartan matrix at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let root_perm: Vec<RootId> = (0..rs.num_roots())
            .map(|a| {
                let x = rs.simple_coords(a);
                let mut y = vec![0i64; rank];
                for (i, &xi) in x.iter().enumerate() {
                    y[delta_perm[i]] = xi;
                }
                rs.find_by_simple_coords(&y).map_err(Error::from)
            })
            .collect::<Result<_>>()?;
        let is_id = delta_perm.iter().enumerate().all(|(i, &x)| i == x);
        let faithful_perm: Vec<u16> = match rs.realization() {
            Realization::TypeAGl { n } if is_id => (0..n as u16).collect(),
            Realization::TypeAGl { n } => (0..n as u16).rev().collect(),
            Realization::Generic => root_perm.iter().map(|&x| x as u16).collect(),
        };
        let lattice_map = if is_id {
            Some((0..lattice.dim).map(|i| (0..lattice.dim).map(|j| i64::from(i == j)).collect()).collect())
        } else {
            match rs.realization() {
                // λ ↦ −w_0λ.
                Realization::TypeAGl { n } if *lattice == CharacterLattice::gl(n) => {
                    Some((0..n).map(|i| (0..n).map(|j| -i64::from(i + j == n - 1)).collect()).collect())
                }
                Realization::Generic if *lattice == CharacterLattice::root_lattice(c) => {
                    Some((0..rank).map(|i| (0..rank).map(|j| i64::from(delta_perm[j] == i)).collect()).collect())
                }
                _ => None,
            }
        };
        let sigma = BasedAutomorphism { delta_perm, root_perm, faithful_perm, lattice_map };
        // σ(s_j α) = σ(s_j) σ(α).
        for j in 0..rank {
            let sj = sigma.apply_element(weyl, &weyl.simple(j));
            for a in 0..rs.num_roots() {
                if sigma.apply_root(rs.reflect_simple(j, a)) != weyl.apply(&sj, sigma.apply_root(a)) {
                    return Err(Error::BadSigma("action on W is not compatible with the action on roots".into()));
                }
            }
        }
        Ok(sigma)
    }

    pub fn delta_perm(&self) -> &[usize] {
        &self.delta_perm
    }

    pub fn is_identity(&self) -> bool {
        self.delta_perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn apply_root(&self, a: RootId) -> RootId {
        self.root_perm[a]
    }

    pub fn apply_set(&self, k: SimpleSet) -> SimpleSet {
        SimpleSet::from_indices(k.iter().map(|i| self.delta_perm[i]))
    }

    pub fn apply_element(&self, weyl: &Weyl, w: &WeylElement) -> WeylElement {
        if self.is_identity() {
            w.clone()
        } else {
            weyl.conjugate_by_perm(&self.faithful_perm, w)
        }
    }

    /// The induced map on the character lattice, when it is determined by
    /// the data (identity, type A with Z^n, or the root lattice).
    pub fn lattice_map(&self) -> Option<&[Vec<i64>]> {
        self.lattice_map.as_deref()
    }

    /// Order of σ as a permutation of Δ.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.delta_perm.clone();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| self.delta_perm[x]).collect();
            k += 1;
        }
        k
    }
}

/// The permutation of Δ for σ^m.
pub fn power_delta_perm(delta_perm: &[usize], m: u32) -> Vec<usize> {
    let mut p: Vec<usize> = (0..delta_perm.len()).collect();
    for _ in 0..m {
        p = p.iter().map(|&x| delta_perm[x]).collect();
    }
    p
}

/// A combinatorial zip datum (W, I, σ) with its lattice and derived z, J.
#[derive(Debug)]
pub struct ZipDatum {
    weyl: Weyl,
    lattice: CharacterLattice,
    i: SimpleSet,
    sigma: BasedAutomorphism,
    z: WeylElement,
    z_inv: WeylElement,
    j: SimpleSet,
}

/// Builds a zip datum and checks that z⁻¹σ(I) ⊆ Δ.
pub fn make_zip_datum(
    rs: RootSystem,
    i: SimpleSet,
    delta_perm: Option<Vec<usize>>,
    lattice: CharacterLattice,
    budget: u64,
) -> Result<ZipDatum> {
    let rank = rs.rank();
    if !i.is_subset(SimpleSet::all(rank)) {
        return Err(Error::Precondition(format!("I = {i:?} is not a set of simple roots")));
    }
    lattice.validate(&rs)?;
    let weyl = Weyl::with_budget(rs, budget);
    let sigma = match delta_perm {
        Some(p) => BasedAutomorphism::new(&weyl, &lattice, p)?,
        None => BasedAutomorphism::identity(&weyl, &lattice),
    };
    let w0 = weyl.longest_element(SimpleSet::all(rank));
    let w0i = weyl.longest_element(i);
    let z = weyl.mul(&sigma.apply_element(&weyl, &w0i), &w0);
    let z_inv = weyl.inverse(&z);
    let mut j = SimpleSet::EMPTY;
    for k in sigma.apply_set(i).iter() {
        let image = weyl.apply(&z_inv, weyl.rs().simple_root(k));
        match weyl.rs().simple_index(image) {
            Some(s) => j.insert(s),
            None => return Err(Error::BadSigma("z^-1 does not map sigma(I) into the simple roots".into())),
        }
    }
    Ok(ZipDatum { weyl, lattice, i, sigma, z, z_inv, j })
}

/// JSON description of a zip datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZipDatumDoc {
    Gl {
        gl: GlSpec,
        #[serde(default)]
        sigma: SigmaSpec,
    },
    Generic {
        cartan: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lattice: Option<CharacterLattice>,
        #[serde(rename = "I")]
        i: SimpleSet,
        #[serde(default)]
        sigma: SigmaSpec,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlSpec {
    pub n: usize,
    pub r: usize,
}

/// "id", "flip", or an explicit 1-based permutation of Δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaSpec {
    Named(String),
    Perm(Vec<usize>),
}

impl Default for SigmaSpec {
    fn default() -> Self {
        SigmaSpec::Named("id".into())
    }
}

impl SigmaSpec {
    /// Parses "id", "flip" or "2,1,3".
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) && !t.is_empty() {
            let p = t
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| Error::BadSigma(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            Ok(SigmaSpec::Perm(p))
        } else {
            Ok(SigmaSpec::Named(t.to_string()))
        }
    }

    /// 0-based permutation of Δ, or `None` for the identity.
    pub fn resolve(&self, rank: usize) -> Result<Option<Vec<usize>>> {
        match self {
            SigmaSpec::Named(s) if s == "id" || s == "identity" => Ok(None),
            SigmaSpec::Named(s) if s == "flip" => Ok(Some((0..rank).rev().collect())),
            SigmaSpec::Named(s) => Err(Error::BadSigma(format!("unknown automorphism {s:?}"))),
            SigmaSpec::Perm(p) => {
                if p.contains(&0) {
                    return Err(Error::BadSigma("permutation entries are 1-based".into()));
                }
                Ok(Some(p.iter().map(|x| x - 1).collect()))
            }
        }
    }
}

impl ZipDatumDoc {
    /// Builds the datum with σ replaced by σ^m.
    pub fn build(&self, m: u32, budget: u64) -> Result<ZipDatum> {
        match self {
            ZipDatumDoc::Gl { gl, sigma } => {
                let (rs, lattice, i) = build_gl(gl.n, gl.r)?;
                let p = sigma.resolve(rs.rank())?.map(|p| power_delta_perm(&p, m));
                make_zip_datum(rs, i, p, lattice, budget)
            }
            ZipDatumDoc::Generic { cartan, lattice, i, sigma } => {
                let (rs, lattice) = build_generic(cartan.clone(), lattice.clone())?;
                let p = sigma.resolve(rs.rank())?.map(|p| power_delta_perm(&p, m));
                make_zip_datum(rs, *i, p, lattice, budget)
            }
        }
    }
}

impl ZipDatum {
    /// GL_n with I = Δ ∖ {α_r} and σ = id.
    pub fn gl(n: usize, r: usize) -> Result<Self> {
        Self::gl_with_budget(n, r, DEFAULT_BUDGET)
    }

    pub fn gl_with_budget(n: usize, r: usize, budget: u64) -> Result<Self> {
        let (rs, lattice, i) = build_gl(n, r)?;
        make_zip_datum(rs, i, None, lattice, budget)
    }

    pub fn weyl(&self) -> &Weyl {
        &self.weyl
    }

    pub fn rs(&self) -> &RootSystem {
        self.weyl.rs()
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.lattice
    }

    pub fn i(&self) -> SimpleSet {
        self.i
    }

    pub fn j(&self) -> SimpleSet {
        self.j
    }

    pub fn sigma(&self) -> &BasedAutomorphism {
        &self.sigma
    }

    pub fn z(&self) -> &WeylElement {
        &self.z
    }

    pub fn z_inv(&self) -> &WeylElement {
        &self.z_inv
    }

    /// GL_n signature (r, s) when the datum is of that form with σ = id.
    pub fn gl_signature(&self) -> Option<(usize, usize)> {
        let n = self.rs().type_a_n()?;
        let missing: Vec<usize> = SimpleSet::all(n - 1).difference(self.i).iter().collect();
        (missing.len() == 1 && self.sigma.is_identity()).then(|| (missing[0] + 1, n - missing[0] - 1))
    }

    pub fn sigma_of(&self, w: &WeylElement) -> WeylElement {
        self.sigma.apply_element(&self.weyl, w)
    }

    /// ψ(x) = z⁻¹σ(x)z.
    pub fn psi(&self, x: &WeylElement) -> WeylElement {
        let w = &self.weyl;
        w.mul(&w.mul(&self.z_inv, &self.sigma_of(x)), &self.z)
    }

    pub fn display(&self, w: &WeylElement) -> String {
        self.weyl.display(w)
    }

    pub(crate) fn check_in_i(&self, k: SimpleSet) -> Result<()> {
        if k.is_subset(self.i) {
            Ok(())
        } else {
            Err(Error::TypeNotInI { k: k.one_based(), i: self.i.one_based() })
        }
    }

    pub(crate) fn check_min_rep(&self, k: SimpleSet, w: &WeylElement) -> Result<()> {
        self.weyl.check(w)?;
        if self.weyl.is_min_rep(k, w) {
            Ok(())
        } else {
            Err(Error::NotMinimal { element: self.display(w), k: k.one_based() })
        }
    }

    /// ^K W sorted by (length, canonical word).
    pub fn minimal_reps(&self, k: SimpleSet) -> Result<Vec<WeylElement>> {
        Ok(self.weyl.min_reps(k, None)?)
    }

    /// w' ≼_K w: some x ∈ W_K has x·w'·ψ(x)⁻¹ ≤ w. The same z is used for
    /// every K.
    pub fn twisted_leq(&self, k: SimpleSet, w_prime: &WeylElement, w: &WeylElement) -> Result<bool> {
        self.check_in_i(k)?;
        self.check_min_rep(k, w_prime)?;
        self.check_min_rep(k, w)?;
        self.twisted_leq_unchecked(k, w_prime, w)
    }

    pub(crate) fn twisted_leq_unchecked(&self, k: SimpleSet, w_prime: &WeylElement, w: &WeylElement) -> Result<bool> {
        let weyl = &self.weyl;
        let lw = weyl.length(w);
        if weyl.length(w_prime) > lw {
            return Ok(false);
        }
        let found = weyl.for_each_parabolic(k, |x| {
            // x·w'·ψ(x)⁻¹ = x·w'·z⁻¹·σ(x)⁻¹·z
            let sx_inv = weyl.inverse(&self.sigma_of(x));
            let cand = weyl.mul(&weyl.mul(&weyl.mul(&weyl.mul(x, w_prime), &self.z_inv), &sx_inv), &self.z);
            if weyl.length(&cand) <= lw && weyl.bruhat_leq(&cand, w) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(found)
    }

    /// Γ_K(w): elements of ^K W of length ℓ(w) − 1 below w for ≼_K.
    pub fn lower_neighbors(&self, k: SimpleSet, w: &WeylElement) -> Result<Vec<WeylElement>> {
        self.check_in_i(k)?;
        self.check_min_rep(k, w)?;
        let l = self.weyl.length(w);
        if l == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for c in self.weyl.min_reps_of_length(k, l - 1)? {
            if self.twisted_leq_unchecked(k, &c, w)? {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// I_w: the largest I_0 ⊆ I with (wz⁻¹)σ(I_0) = I_0.
    pub fn canonical_type(&self, w: &WeylElement) -> Result<SimpleSet> {
        self.check_min_rep(self.i, w)?;
        Ok(self.canonical_type_unchecked(w))
    }

    pub(crate) fn canonical_type_unchecked(&self, w: &WeylElement) -> SimpleSet {
        let weyl = &self.weyl;
        let rs = weyl.rs();
        let v = weyl.mul(w, &self.z_inv);
        let image: Vec<Option<usize>> =
            (0..rs.rank()).map(|i| rs.simple_index(weyl.apply(&v, self.sigma.apply_root(rs.simple_root(i))))).collect();
        // T_{k+1} = I ∩ φ_w(T_k) decreases to ⋂_m φ_w^m(I).
        let mut t = self.i;
        loop {
            let next = SimpleSet::from_indices(t.iter().filter_map(|i| image[i]).filter(|&j| self.i.contains(j)));
            if next == t {
                return t;
            }
            t = next;
        }
    }

    /// ^I W with lengths, for reports.
    pub fn strata(&self) -> Result<Vec<WeylElement>> {
        self.minimal_reps(self.i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(zd: &ZipDatum, s: &str) -> WeylElement {
        zd.weyl().parse(s).unwrap()
    }

    fn names(zd: &ZipDatum, v: &[WeylElement]) -> Vec<String> {
        v.iter().map(|x| zd.display(x)).collect()
    }

    #[test]
    fn frame_elements() {
        let zd = ZipDatum::gl(4, 2).unwrap();
        assert_eq!(zd.display(zd.z()), "[3412]");
        assert_eq!(zd.j(), zd.i());
        let zd = ZipDatum::gl(3, 2).unwrap();
        assert_eq!(zd.display(zd.z()), "[312]");
        let (rs, lat, _) = build_gl(4, 2).unwrap();
        let full = make_zip_datum(rs, SimpleSet::all(3), None, lat, DEFAULT_BUDGET).unwrap();
        assert!(full.weyl().is_identity(full.z()));
        assert_eq!(full.j(), SimpleSet::all(3));
    }

    #[test]
    fn psi_maps_w_i_onto_w_j() {
        for (n, r) in [(4, 2), (5, 3), (5, 1), (6, 2)] {
            let zd = ZipDatum::gl(n, r).unwrap();
            let weyl = zd.weyl();
            let wi = weyl.parabolic_elements(zd.i()).unwrap();
            let mut images: Vec<WeylElement> = wi.iter().map(|x| zd.psi(x)).collect();
            assert!(images.iter().all(|y| weyl.in_parabolic(y, zd.j())));
            images.sort();
            images.dedup();
            assert_eq!(images.len(), wi.len());
        }
    }

    #[test]
    fn strata_of_22() {
        let zd = ZipDatum::gl(4, 2).unwrap();
        let reps = zd.minimal_reps(zd.i()).unwrap();
        assert_eq!(names(&zd, &reps), ["[1234]", "[1324]", "[1342]", "[3124]", "[3142]", "[3412]"]);
        assert_eq!(zd.minimal_reps(SimpleSet::EMPTY).unwrap().len(), 24);
        assert_eq!(zd.minimal_reps(SimpleSet::all(3)).unwrap().len(), 1);
    }

    #[test]
    fn twisted_order_at_22() {
        let zd = ZipDatum::gl(4, 2).unwrap();
        let i = zd.i();
        let a = w(&zd, "1342");
        let b = w(&zd, "3142");
        let c = w(&zd, "3124");
        assert!(zd.twisted_leq(i, &a, &a).unwrap());
        assert!(zd.twisted_leq(i, &a, &b).unwrap());
        assert!(!zd.twisted_leq(i, &a, &c).unwrap());
        assert!(!zd.twisted_leq(i, &c, &a).unwrap());
        assert_eq!(names(&zd, &zd.lower_neighbors(i, &b).unwrap()), ["[1342]", "[3124]"]);
        assert_eq!(names(&zd, &zd.lower_neighbors(i, &w(&zd, "1324")).unwrap()), ["[1234]"]);
        assert!(zd.lower_neighbors(i, &zd.weyl().identity()).unwrap().is_empty());
        // Not in ^I W.
        assert!(matches!(zd.twisted_leq(i, &w(&zd, "2134"), &b), Err(Error::NotMinimal { .. })));
        // K not inside I.
        assert!(matches!(zd.twisted_leq(SimpleSet::from_one_based([2]), &a, &b), Err(Error::TypeNotInI { .. })));
    }

    #[test]
    fn canonical_types() {
        let zd = ZipDatum::gl(5, 3).unwrap();
        let w1 = w(&zd, "s3 s4");
        let w2 = w(&zd, "s3 s2");
        assert_eq!(zd.canonical_type(&w1).unwrap(), SimpleSet::from_one_based([1, 4]));
        assert_eq!(zd.canonical_type(&w2).unwrap(), SimpleSet::EMPTY);
        let zd = ZipDatum::gl(4, 2).unwrap();
        assert_eq!(zd.canonical_type(&w(&zd, "3142")).unwrap(), SimpleSet::EMPTY);
        assert_eq!(zd.canonical_type(&zd.weyl().identity()).unwrap(), zd.i());
        // Image of I_{w_1} at (3,5) under i ↦ n − i.
        let zd = ZipDatum::gl(8, 5).unwrap();
        let w2 = w(&zd, "s5 s4");
        assert_eq!(zd.canonical_type(&w2).unwrap(), SimpleSet::from_one_based([2, 4, 7]));
        let zd = ZipDatum::gl(8, 3).unwrap();
        assert_eq!(zd.canonical_type(&w(&zd, "s3 s4")).unwrap(), SimpleSet::from_one_based([1, 4, 6]));
    }

    fn all_gl_data(max_n: usize) -> Vec<ZipDatum> {
        let mut out = Vec::new();
        for n in 2..=max_n {
            for r in 1..n {
                out.push(ZipDatum::gl(n, r).unwrap());
            }
        }
        out
    }

    #[test]
    fn canonical_type_is_stable() {
        for zd in all_gl_data(6) {
            let weyl = zd.weyl();
            for x in zd.strata().unwrap() {
                let iw = zd.canonical_type(&x).unwrap();
                assert!(iw.is_subset(zd.i()));
                let v = weyl.mul(&x, zd.z_inv());
                let image: SimpleSet = SimpleSet::from_indices(iw.iter().map(|i| {
                    zd.rs()
                        .simple_index(weyl.apply(&v, zd.sigma().apply_root(zd.rs().simple_root(i))))
                        .expect("simple image")
                }));
                assert_eq!(image, iw);
            }
        }
    }

    #[test]
    fn lower_neighbors_shrink_with_the_type() {
        for zd in all_gl_data(5) {
            let i = zd.i();
            for k in i.subsets() {
                for kp in k.subsets() {
                    for x in zd.minimal_reps(k).unwrap() {
                        let big = zd.lower_neighbors(k, &x).unwrap();
                        for y in zd.lower_neighbors(kp, &x).unwrap() {
                            if zd.weyl().is_min_rep(k, &y) {
                                assert!(big.contains(&y));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_order_is_graded_below() {
        for zd in all_gl_data(5) {
            let weyl = zd.weyl();
            for k in zd.i().subsets() {
                let reps = zd.minimal_reps(k).unwrap();
                for a in &reps {
                    for b in &reps {
                        if zd.twisted_leq(k, a, b).unwrap() {
                            assert!(weyl.length(a) <= weyl.length(b));
                            if weyl.length(a) == weyl.length(b) {
                                assert_eq!(a, b);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swapping_r_and_s_gives_isomorphic_posets() {
        for n in 2..=6 {
            for r in 1..n {
                let a = ZipDatum::gl(n, r).unwrap();
                let b = ZipDatum::gl(n, n - r).unwrap();
                let flip = |x: &WeylElement| {
                    // Conjugation by w_0 transported to the other datum.
                    let one = a.weyl().one_line(x).unwrap();
                    let conj: Vec<usize> = (0..n).map(|i| n + 1 - one[n - 1 - i]).collect();
                    b.weyl().from_one_line(&conj).unwrap()
                };
                let ra = a.strata().unwrap();
                for x in &ra {
                    for y in &ra {
                        assert_eq!(
                            a.twisted_leq(a.i(), x, y).unwrap(),
                            b.twisted_leq(b.i(), &flip(x), &flip(y)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn non_trivial_sigma() {
        let doc: ZipDatumDoc = serde_json::from_str(r#"{"gl": {"n": 4, "r": 2}, "sigma": "flip"}"#).unwrap();
        let zd = doc.build(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(zd.sigma().order(), 2);
        // σ(w_{0,I}) = w_{0,I} here, so z = w_{0,I}w_0 as in the split case.
        assert_eq!(zd.display(zd.z()), "[3412]");
        let sq = doc.build(2, DEFAULT_BUDGET).unwrap();
        assert!(sq.sigma().is_identity());
        let doc: ZipDatumDoc = serde_json::from_str(r#"{"gl": {"n": 3, "r": 1}, "sigma": "flip"}"#).unwrap();
        let zd = doc.build(1, DEFAULT_BUDGET).unwrap();
        let weyl = zd.weyl();
        for x in weyl.elements().unwrap() {
            let s = zd.sigma_of(&x);
            assert_eq!(weyl.length(&s), weyl.length(&x));
            assert_eq!(zd.sigma_of(&s), x);
        }
        // ψ lands in W_J.
        for x in weyl.parabolic_elements(zd.i()).unwrap() {
            assert!(weyl.in_parabolic(&zd.psi(&x), zd.j()));
        }
    }

    #[test]
    fn generic_datum_from_json() {
        let doc: ZipDatumDoc = serde_json::from_str(r#"{"cartan": [[2,-2],[-1,2]], "I": [1], "sigma": "id"}"#).unwrap();
        let zd = doc.build(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(zd.strata().unwrap().len(), 4);
        let bad: ZipDatumDoc =
            serde_json::from_str(r#"{"cartan": [[2,-2],[-1,2]], "I": [1], "sigma": [2,1]}"#).unwrap();
        assert!(matches!(bad.build(1, DEFAULT_BUDGET), Err(Error::BadSigma(_))));
        let d4: ZipDatumDoc = serde_json::from_str(
            r#"{"cartan": [[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]], "I": [1,2], "sigma": [3,2,4,1]}"#,
        )
        .unwrap();
        let zd = d4.build(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(zd.sigma().order(), 3);
        assert_eq!(zd.j().len(), 2);
    }
}
