//! w-sequences, smallness, the representative map Ξ on W, π on small
//! elements and the smoothness decision for elementary pairs.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootId, SimpleSet};
use crate::weyl::WeylElement;
use crate::zipdatum::ZipDatum;

/// (β_0, …, β_n) with β_{i+1} = vσ(β_i), β_0 non-compact positive, β_1..β_{n−1}
/// compact and β_n non-compact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSequence {
    pub roots: Vec<RootId>,
    pub positive: bool,
}

impl WSequence {
    pub fn head(&self) -> RootId {
        self.roots[0]
    }

    pub fn body(&self) -> &[RootId] {
        &self.roots[1..self.roots.len() - 1]
    }

    pub fn tail(&self) -> RootId {
        *self.roots.last().expect("sequences have at least two roots")
    }
}

/// All v-sequences with their sign counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WSequences {
    pub sequences: Vec<WSequence>,
    pub plus: usize,
    pub minus: usize,
}

/// β ↦ vσ(β) as a table on root ids.
fn operator(zd: &ZipDatum, v: &WeylElement) -> Vec<RootId> {
    let weyl = zd.weyl();
    (0..zd.rs().num_roots()).map(|a| weyl.apply(v, zd.sigma().apply_root(a))).collect()
}

fn compact_mask(zd: &ZipDatum) -> Vec<bool> {
    let rs = zd.rs();
    (0..rs.num_roots()).map(|a| rs.is_compact(a, zd.i())).collect()
}

/// One sequence per non-compact positive root, in root order.
pub fn w_sequences(zd: &ZipDatum, v: &WeylElement) -> Result<WSequences> {
    zd.weyl().check(v)?;
    let rs = zd.rs();
    let op = operator(zd, v);
    let compact = compact_mask(zd);
    let mut sequences = Vec::new();
    let mut plus = 0;
    for b in rs.non_compact_positive(zd.i()) {
        let mut roots = vec![b];
        let mut cur = op[b];
        while compact[cur] {
            roots.push(cur);
            cur = op[cur];
        }
        roots.push(cur);
        let positive = rs.is_positive(cur);
        plus += usize::from(positive);
        sequences.push(WSequence { roots, positive });
    }
    let minus = sequences.len() - plus;
    Ok(WSequences { sequences, plus, minus })
}

/// (|S⁺_v|, |S⁻_v|) without materializing the sequences.
pub(crate) fn sequence_counts(zd: &ZipDatum, v: &WeylElement) -> (usize, usize) {
    let rs = zd.rs();
    let op = operator(zd, v);
    let compact = compact_mask(zd);
    let mut plus = 0;
    let mut total = 0;
    for b in rs.non_compact_positive(zd.i()) {
        let mut cur = op[b];
        while compact[cur] {
            cur = op[cur];
        }
        plus += usize::from(rs.is_positive(cur));
        total += 1;
    }
    (plus, total - plus)
}

/// w is small iff |S⁺_{wz⁻¹}| = ℓ(w).
pub fn is_small(zd: &ZipDatum, w: &WeylElement) -> Result<bool> {
    zd.weyl().check(w)?;
    Ok(is_small_unchecked(zd, w))
}

fn is_small_unchecked(zd: &ZipDatum, w: &WeylElement) -> bool {
    let v = zd.weyl().mul(w, zd.z_inv());
    sequence_counts(zd, &v).0 == zd.weyl().length(w) as usize
}

/// Smallness via sign patterns: no positive-to-negative step inside a
/// wz⁻¹-sequence after its head, and constant sign on every orbit of
/// β ↦ wz⁻¹σ(β) contained in Φ_L.
pub fn two_condition_small(zd: &ZipDatum, w: &WeylElement) -> Result<bool> {
    zd.weyl().check(w)?;
    let rs = zd.rs();
    let v = zd.weyl().mul(w, zd.z_inv());
    let seqs = w_sequences(zd, &v)?;
    for s in &seqs.sequences {
        for pair in s.roots[1..].windows(2) {
            if rs.is_positive(pair[0]) && !rs.is_positive(pair[1]) {
                return Ok(false);
            }
        }
    }
    let op = operator(zd, &v);
    let compact = compact_mask(zd);
    let mut seen = vec![false; rs.num_roots()];
    for start in 0..rs.num_roots() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut cur = op[start];
        while cur != start {
            seen[cur] = true;
            orbit.push(cur);
            cur = op[cur];
        }
        if orbit.iter().all(|&a| compact[a]) {
            let sign = rs.is_positive(start);
            if orbit.iter().any(|&a| rs.is_positive(a) != sign) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ξ(w'): the unique w ∈ ^I W with w' = a·x·w·ψ(a)⁻¹ for some a ∈ W_I and
/// x ∈ W_{I_w}. Every a ∈ W_I is tried and the accepted candidates must agree.
pub fn xi_of_weyl(zd: &ZipDatum, w_prime: &WeylElement) -> Result<WeylElement> {
    let weyl = zd.weyl();
    weyl.check(w_prime)?;
    let i = zd.i();
    if weyl.is_min_rep(i, w_prime) {
        return Ok(w_prime.clone());
    }
    let mut types: HashMap<WeylElement, SimpleSet> = HashMap::new();
    let mut found: Option<WeylElement> = None;
    let mut conflict: Option<WeylElement> = None;
    weyl.for_each_parabolic(i, |a| {
        let v = weyl.mul(&weyl.mul(&weyl.inverse(a), w_prime), &zd.psi(a));
        let (u, cand) = weyl.min_coset_rep(i, &v);
        let accept = weyl.is_identity(&u) || {
            let iw = *types.entry(cand.clone()).or_insert_with(|| zd.canonical_type_unchecked(&cand));
            weyl.in_parabolic(&u, iw)
        };
        if accept {
            match &found {
                None => found = Some(cand),
                Some(f) if *f != cand => {
                    conflict = Some(cand);
                    return ControlFlow::Break(());
                }
                Some(_) => {}
            }
        }
        ControlFlow::Continue(())
    })?;
    match (found, conflict) {
        (Some(f), Some(c)) => Err(Error::Internal(format!(
            "two representatives {} and {} for {}",
            zd.display(&f),
            zd.display(&c),
            zd.display(w_prime)
        ))),
        (Some(f), None) => Ok(f),
        (None, _) => Err(Error::Internal(format!("no representative found for {}", zd.display(w_prime)))),
    }
}

/// π(w) = Ξ(w), defined here only for small w.
pub fn pi_small(zd: &ZipDatum, w: &WeylElement) -> Result<WeylElement> {
    if !is_small(zd, w)? {
        return Err(Error::NotSmall(zd.display(w)));
    }
    xi_of_weyl(zd, w)
}

/// (dim Stab_E(wz⁻¹), dim of the orbit minus dim P) = (|S⁻|, |S⁺|).
pub fn orbit_codim(zd: &ZipDatum, w: &WeylElement) -> Result<(usize, usize)> {
    zd.weyl().check(w)?;
    let v = zd.weyl().mul(w, zd.z_inv());
    let (plus, minus) = sequence_counts(zd, &v);
    Ok((minus, plus))
}

/// Γ^sm_K(w): the small elements of Γ_K(w).
pub fn small_lower_neighbors(zd: &ZipDatum, k: SimpleSet, w: &WeylElement) -> Result<Vec<WeylElement>> {
    Ok(zd.lower_neighbors(k, w)?.into_iter().filter(|v| is_small_unchecked(zd, v)).collect())
}

/// The smoothness verdict for an elementary pair (w, w').
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumVerdict {
    pub w: WeylElement,
    pub w_prime: WeylElement,
    pub i_w: SimpleSet,
    pub i_w_prime: SimpleSet,
    pub bounded: bool,
    /// A simple root of I_{w'} outside I_w (0-based), when unbounded.
    pub violating_root: Option<usize>,
    pub gamma: Vec<WeylElement>,
    pub gamma_small: Vec<WeylElement>,
    pub separating: bool,
    /// v ∈ Γ^sm_{I_w}(w) ∖ {w'} with π(v) = w', when not separating.
    pub certificate: Option<WeylElement>,
    pub smooth: bool,
}

/// JSON form of a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub w: String,
    pub w_prime: String,
    pub bounded: bool,
    #[serde(rename = "I_w")]
    pub i_w: SimpleSet,
    #[serde(rename = "I_w_prime")]
    pub i_w_prime: SimpleSet,
    pub violating_root: Option<usize>,
    pub gamma: Vec<String>,
    pub gamma_small: Vec<String>,
    pub separating: bool,
    pub certificate: Option<String>,
    pub smooth: bool,
}

impl StratumVerdict {
    pub fn report(&self, zd: &ZipDatum) -> VerdictReport {
        let names = |v: &[WeylElement]| v.iter().map(|x| zd.display(x)).collect();
        VerdictReport {
            w: zd.display(&self.w),
            w_prime: zd.display(&self.w_prime),
            bounded: self.bounded,
            i_w: self.i_w,
            i_w_prime: self.i_w_prime,
            violating_root: self.violating_root.map(|i| i + 1),
            gamma: names(&self.gamma),
            gamma_small: names(&self.gamma_small),
            separating: self.separating,
            certificate: self.certificate.as_ref().map(|c| zd.display(c)),
            smooth: self.smooth,
        }
    }
}

/// Decides smoothness of the elementary substack U(w, w'): it is smooth iff
/// I_{w'} ⊆ I_w and w' ∉ π(Γ^sm_{I_w}(w) ∖ {w'}).
pub fn decide_smooth(zd: &ZipDatum, w: &WeylElement, w_prime: &WeylElement) -> Result<StratumVerdict> {
    let weyl = zd.weyl();
    let i = zd.i();
    zd.check_min_rep(i, w)?;
    zd.check_min_rep(i, w_prime)?;
    if weyl.length(w_prime) + 1 != weyl.length(w) {
        return Err(Error::Precondition(format!(
            "w' = {} does not have length l(w) - 1 = {}",
            zd.display(w_prime),
            i64::from(weyl.length(w)) - 1
        )));
    }
    if !zd.twisted_leq_unchecked(i, w_prime, w)? {
        return Err(Error::Precondition(format!(
            "w' = {} is not below w = {} in the closure order",
            zd.display(w_prime),
            zd.display(w)
        )));
    }
    let i_w = zd.canonical_type_unchecked(w);
    let i_w_prime = zd.canonical_type_unchecked(w_prime);
    let violating_root = i_w_prime.difference(i_w).iter().next();
    let bounded = violating_root.is_none();
    let gamma = zd.lower_neighbors(i_w, w)?;
    let gamma_small: Vec<WeylElement> = gamma.iter().filter(|v| is_small_unchecked(zd, v)).cloned().collect();
    let mut certificate = None;
    for v in gamma_small.iter().filter(|v| *v != w_prime) {
        if xi_of_weyl(zd, v)? == *w_prime {
            certificate = Some(v.clone());
            break;
        }
    }
    let separating = certificate.is_none();
    Ok(StratumVerdict {
        w: w.clone(),
        w_prime: w_prime.clone(),
        i_w,
        i_w_prime,
        bounded,
        violating_root,
        gamma,
        gamma_small,
        separating,
        certificate,
        smooth: bounded && separating,
    })
}

/// Per-neighbor data for the codimension-one closure criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub holds: bool,
    pub i_w: SimpleSet,
    /// Γ_I(w) with whether I_{w'} ⊆ I_w.
    pub neighbors: Vec<(WeylElement, bool)>,
    /// Γ^sm_{I_w}(w) ∖ Γ_I(w).
    pub extra_small: Vec<WeylElement>,
}

/// The closure of the stratum of w is smooth in codimension one iff
/// I_{w'} ⊆ I_w for all w' ∈ Γ_I(w) and Γ^sm_{I_w}(w) ⊆ Γ_I(w).
pub fn closure_codim1(zd: &ZipDatum, w: &WeylElement) -> Result<ClosureReport> {
    let i = zd.i();
    zd.check_min_rep(i, w)?;
    let i_w = zd.canonical_type_unchecked(w);
    let gamma_i = zd.lower_neighbors(i, w)?;
    let neighbors: Vec<(WeylElement, bool)> =
        gamma_i.iter().map(|v| (v.clone(), zd.canonical_type_unchecked(v).is_subset(i_w))).collect();
    let extra_small: Vec<WeylElement> =
        small_lower_neighbors(zd, i_w, w)?.into_iter().filter(|v| !gamma_i.contains(v)).collect();
    let holds = neighbors.iter().all(|(_, b)| *b) && extra_small.is_empty();
    Ok(ClosureReport { holds, i_w, neighbors, extra_small })
}
