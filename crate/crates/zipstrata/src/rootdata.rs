//! Finite reduced root systems, character lattices and parabolic types.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a root inside its [`RootSystem`]. Positive roots occupy
/// `0..num_positive()`, simple roots come first, and the negative of root
/// `i` is `i ± num_positive()`.
pub type RootId = usize;

/// Upper bound on |Φ| accepted while closing Δ under reflections; a Cartan
/// matrix producing more roots is treated as not of finite type.
const MAX_ROOTS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid signature: need 1 <= r < n, got n={n}, r={r}")]
    BadSignature { n: usize, r: usize },
    #[error("invalid Cartan matrix: {0}")]
    BadCartan(String),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("inconsistent lattice: {0}")]
    BadLattice(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("simple index {0} out of range")]
    BadSimpleIndex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    /// Type A_{n-1} realized in Z^n with α_i = e_i − e_{i+1}.
    TypeAGl { n: usize },
    /// Roots in simple-root coordinates for a supplied Cartan matrix.
    Generic,
}

/// A set of simple roots, stored as a bit mask over 0-based simple indices.
/// Serialized as the sorted list of 1-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleSet(u64);

impl SimpleSet {
    pub const EMPTY: SimpleSet = SimpleSet(0);

    pub fn all(rank: usize) -> Self {
        if rank == 64 {
            SimpleSet(u64::MAX)
        } else {
            SimpleSet((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        SimpleSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        SimpleSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    /// From 1-based simple indices.
    pub fn from_one_based(indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_indices(indices.into_iter().map(|i| i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn is_subset(self, other: SimpleSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SimpleSet) -> Self {
        SimpleSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SimpleSet) -> Self {
        SimpleSet(self.0 & other.0)
    }

    pub fn difference(self, other: SimpleSet) -> Self {
        SimpleSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets, in increasing order of their bit masks.
    pub fn subsets(self) -> Vec<SimpleSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(SimpleSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out
    }
}

impl fmt::Debug for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

impl Serialize for SimpleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i == 0 || i > 64) {
            return Err(serde::de::Error::custom("simple indices are 1-based and at most 64"));
        }
        Ok(SimpleSet::from_one_based(v))
    }
}

/// A root with its coordinates (ambient Z^n for type A, simple-root
/// coordinates otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub positive: bool,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    realization: Realization,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    simple_coords: Vec<Vec<i64>>,
    coroot_coords: Vec<Vec<i64>>,
    support: Vec<u64>,
    reflect: Vec<Vec<RootId>>,
    lookup: HashMap<Vec<i64>, RootId>,
    simple_lookup: HashMap<Vec<i64>, RootId>,
    /// Type A only: root id of e_i − e_j (0-based, i ≠ j), and the inverse map.
    pair_index: Vec<Vec<RootId>>,
    root_pair: Vec<(usize, usize)>,
}

impl RootSystem {
    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// n for type A_{n-1} in Z^n.
    pub fn type_a_n(&self) -> Option<usize> {
        match self.realization {
            Realization::TypeAGl { n } => Some(n),
            Realization::Generic => None,
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn simple_root(&self, i: usize) -> RootId {
        i
    }

    pub fn positive_roots(&self) -> std::ops::Range<RootId> {
        0..self.num_positive()
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id < self.num_positive()
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let np = self.num_positive();
        if id < np {
            id + np
        } else {
            id - np
        }
    }

    /// Index of the simple root `id`, if it is one.
    pub fn simple_index(&self, id: RootId) -> Option<usize> {
        (id < self.rank).then_some(id)
    }

    pub fn find(&self, coords: &[i64]) -> Result<RootId, RootDataError> {
        self.lookup.get(coords).copied().ok_or_else(|| RootDataError::NotARoot(format!("{coords:?}")))
    }

    pub fn find_by_simple_coords(&self, coords: &[i64]) -> Result<RootId, RootDataError> {
        self.simple_lookup.get(coords).copied().ok_or_else(|| RootDataError::NotARoot(format!("{coords:?}")))
    }

    /// Coefficients of the root in the basis of simple roots.
    pub fn simple_coords(&self, id: RootId) -> &[i64] {
        &self.simple_coords[id]
    }

    /// Coefficients of the coroot α∨ in the basis of simple coroots.
    pub fn coroot_coords(&self, id: RootId) -> &[i64] {
        &self.coroot_coords[id]
    }

    /// Simple roots appearing in the root with nonzero coefficient.
    pub fn support(&self, id: RootId) -> SimpleSet {
        SimpleSet::from_bits(self.support[id])
    }

    pub fn height(&self, id: RootId) -> i64 {
        self.simple_coords[id].iter().sum()
    }

    /// s_j(α) for the simple reflection s_j.
    pub fn reflect_simple(&self, j: usize, id: RootId) -> RootId {
        self.reflect[j][id]
    }

    pub(crate) fn reflection_table(&self, j: usize) -> &[RootId] {
        &self.reflect[j]
    }

    /// Type A: root e_i − e_j for 0-based i ≠ j.
    pub fn pair_root(&self, i: usize, j: usize) -> RootId {
        self.pair_index[i][j]
    }

    /// Type A: the pair (i, j) with root = e_i − e_j.
    pub fn root_pair(&self, id: RootId) -> (usize, usize) {
        self.root_pair[id]
    }

    /// α ∈ Φ_K, i.e. the root lies in the span of K.
    pub fn is_compact(&self, id: RootId, k: SimpleSet) -> bool {
        self.support(id).is_subset(k)
    }

    pub fn non_compact_positive(&self, k: SimpleSet) -> Vec<RootId> {
        self.positive_roots().filter(|&a| !self.is_compact(a, k)).collect()
    }

    /// Human-readable name: e_i−e_j for type A, otherwise the simple
    /// coordinates.
    pub fn root_label(&self, id: RootId) -> String {
        match self.realization {
            Realization::TypeAGl { .. } => {
                let (i, j) = self.root_pair[id];
                format!("e{}-e{}", i + 1, j + 1)
            }
            Realization::Generic => format!("{:?}", self.simple_coords[id]),
        }
    }
}

fn validate_cartan(cartan: &[Vec<i64>]) -> Result<usize, RootDataError> {
    let rank = cartan.len();
    if rank == 0 || rank > 64 {
        return Err(RootDataError::BadCartan(format!("rank {rank} outside 1..=64")));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != rank {
            return Err(RootDataError::BadCartan("matrix is not square".into()));
        }
        for (j, &a) in row.iter().enumerate() {
            if i == j && a != 2 {
                return Err(RootDataError::BadCartan(format!("diagonal entry ({},{}) is {a}", i + 1, j + 1)));
            }
            if i != j && a > 0 {
                return Err(RootDataError::BadCartan(format!("positive off-diagonal entry ({},{})", i + 1, j + 1)));
            }
            if i != j && (a == 0) != (cartan[j][i] == 0) {
                return Err(RootDataError::BadCartan(format!(
                    "entries ({0},{1}) and ({1},{0}) disagree on vanishing",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(rank)
}

/// Closes Δ under simple reflections. Returns pairs (root, coroot), both in
/// simple coordinates, with `cartan[i][j] = ⟨α_i, α_j∨⟩`.
type RootCorootPairs = Vec<(Vec<i64>, Vec<i64>)>;

fn close_under_reflections(cartan: &[Vec<i64>]) -> Result<RootCorootPairs, RootDataError> {
    let rank = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v
    };
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        seen.insert(unit(i), unit(i));
        order.push(unit(i));
        queue.push_back(unit(i));
    }
    while let Some(x) = queue.pop_front() {
        let y = seen[&x].clone();
        for j in 0..rank {
            // s_j(x) = x − ⟨x, α_j∨⟩ α_j and s_j(y) = y − ⟨α_j, y⟩ α_j∨.
            let px: i64 = (0..rank).map(|i| x[i] * cartan[i][j]).sum();
            let py: i64 = (0..rank).map(|i| y[i] * cartan[j][i]).sum();
            let mut sx = x.clone();
            sx[j] -= px;
            let mut sy = y.clone();
            sy[j] -= py;
            if !seen.contains_key(&sx) {
                if seen.len() >= MAX_ROOTS {
                    return Err(RootDataError::NotFiniteType);
                }
                let mixed = sx.iter().any(|&c| c > 0) && sx.iter().any(|&c| c < 0);
                if mixed {
                    return Err(RootDataError::NotFiniteType);
                }
                seen.insert(sx.clone(), sy);
                order.push(sx.clone());
                queue.push_back(sx);
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|x| {
            let y = seen[&x].clone();
            (x, y)
        })
        .collect())
}

fn assemble(
    realization: Realization,
    cartan: Vec<Vec<i64>>,
    pairs: Vec<(Vec<i64>, Vec<i64>)>,
    ambient: impl Fn(&[i64]) -> Vec<i64>,
) -> RootSystem {
    let rank = cartan.len();
    let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
        pairs.into_iter().filter(|(x, _)| x.iter().all(|&c| c >= 0)).collect();
    // Simple roots first (in index order), then by height, then by reversed
    // simple coordinates for a deterministic order.
    positive.sort_by(|(a, _), (b, _)| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let np = positive.len();
    let mut simple_coords = Vec::with_capacity(2 * np);
    let mut coroot_coords = Vec::with_capacity(2 * np);
    for (x, y) in &positive {
        simple_coords.push(x.clone());
        coroot_coords.push(y.clone());
    }
    for (x, y) in &positive {
        simple_coords.push(x.iter().map(|c| -c).collect());
        coroot_coords.push(y.iter().map(|c| -c).collect());
    }
    let roots: Vec<Root> =
        simple_coords.iter().enumerate().map(|(id, x)| Root { coords: ambient(x), positive: id < np }).collect();
    let lookup: HashMap<Vec<i64>, RootId> = roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    let by_simple: HashMap<Vec<i64>, RootId> = simple_coords.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let support = simple_coords
        .iter()
        .map(|x| x.iter().enumerate().filter(|(_, &c)| c != 0).fold(0u64, |acc, (i, _)| acc | 1 << i))
        .collect();
    let reflect = (0..rank)
        .map(|j| {
            simple_coords
                .iter()
                .map(|x| {
                    let px: i64 = (0..rank).map(|i| x[i] * cartan[i][j]).sum();
                    let mut sx = x.clone();
                    sx[j] -= px;
                    by_simple[&sx]
                })
                .collect()
        })
        .collect();
    RootSystem {
        realization,
        rank,
        cartan,
        roots,
        simple_coords,
        coroot_coords,
        support,
        reflect,
        lookup,
        simple_lookup: by_simple,
        pair_index: Vec::new(),
        root_pair: Vec::new(),
    }
}

/// Integer data of a character lattice X*(T) relative to a root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterLattice {
    pub dim: usize,
    /// dim × rank matrix with entry (k, j) = ⟨e_k, α_j∨⟩.
    pub pairing: Vec<Vec<i64>>,
    /// rank × dim matrix whose i-th row is α_i as a lattice vector.
    pub root_embedding: Vec<Vec<i64>>,
}

impl CharacterLattice {
    /// The root lattice itself: basis Δ, pairing given by the Cartan matrix.
    pub fn root_lattice(cartan: &[Vec<i64>]) -> Self {
        let rank = cartan.len();
        CharacterLattice {
            dim: rank,
            pairing: cartan.to_vec(),
            root_embedding: (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    /// Z^n with ⟨λ, α_i∨⟩ = λ_i − λ_{i+1}.
    pub fn gl(n: usize) -> Self {
        let delta = |k: usize, i: usize| i64::from(k == i) - i64::from(k == i + 1);
        CharacterLattice {
            dim: n,
            pairing: (0..n).map(|k| (0..n - 1).map(|i| delta(k, i)).collect()).collect(),
            root_embedding: (0..n - 1).map(|i| (0..n).map(|k| delta(k, i)).collect()).collect(),
        }
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<(), RootDataError> {
        let rank = rs.rank();
        if self.dim == 0 {
            return Err(RootDataError::BadLattice("dimension must be positive".into()));
        }
        if self.pairing.len() != self.dim || self.pairing.iter().any(|r| r.len() != rank) {
            return Err(RootDataError::BadLattice(format!("pairing must be {} x {rank}", self.dim)));
        }
        if self.root_embedding.len() != rank || self.root_embedding.iter().any(|r| r.len() != self.dim) {
            return Err(RootDataError::BadLattice(format!("root_embedding must be {rank} x {}", self.dim)));
        }
        for i in 0..rank {
            for j in 0..rank {
                let v: i64 = (0..self.dim).map(|k| self.root_embedding[i][k] * self.pairing[k][j]).sum();
                if v != rs.cartan()[i][j] {
                    return Err(RootDataError::BadLattice(format!(
                        "root embedding and pairing give <a{}, a{}v> = {v}, Cartan matrix says {}",
                        i + 1,
                        j + 1,
                        rs.cartan()[i][j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// ⟨λ, α_j∨⟩ for all simple j.
    pub fn simple_pairings(&self, lambda: &[i64]) -> Vec<i64> {
        let rank = self.root_embedding.len();
        (0..rank).map(|j| (0..self.dim).map(|k| lambda[k] * self.pairing[k][j]).sum()).collect()
    }

    /// The root as a lattice vector.
    pub fn root_vector(&self, rs: &RootSystem, alpha: RootId) -> Vec<i64> {
        let c = rs.simple_coords(alpha);
        (0..self.dim).map(|k| c.iter().zip(&self.root_embedding).map(|(ci, row)| ci * row[k]).sum()).collect()
    }

    /// s_α(λ) = λ − ⟨λ, α∨⟩α.
    pub fn reflect(&self, rs: &RootSystem, alpha: RootId, lambda: &[i64]) -> Vec<i64> {
        let p = pairing(rs, self, lambda, alpha);
        let a = self.root_vector(rs, alpha);
        lambda.iter().zip(a).map(|(l, x)| l - p * x).collect()
    }
}

/// ⟨λ, α∨⟩.
pub fn pairing(rs: &RootSystem, lattice: &CharacterLattice, lambda: &[i64], alpha: RootId) -> i64 {
    let simple = lattice.simple_pairings(lambda);
    rs.coroot_coords(alpha).iter().zip(simple).map(|(c, p)| c * p).sum()
}

pub fn is_compact(rs: &RootSystem, alpha: RootId, k: SimpleSet) -> bool {
    rs.is_compact(alpha, k)
}

/// Type A_{n-1} in Z^n, the lattice Z^n, and I = Δ ∖ {α_r}.
pub fn build_gl(n: usize, r: usize) -> Result<(RootSystem, CharacterLattice, SimpleSet), RootDataError> {
    if n < 2 || r == 0 || r >= n {
        return Err(RootDataError::BadSignature { n, r });
    }
    let rs = type_a(n);
    let mut i = SimpleSet::all(n - 1);
    i.remove(r - 1);
    Ok((rs, CharacterLattice::gl(n), i))
}

/// The type A_{n-1} root system realized in Z^n.
pub fn type_a(n: usize) -> RootSystem {
    assert!(n >= 2, "type A realization needs n >= 2");
    let rank = n - 1;
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x: Vec<i64> = (0..rank).map(|k| i64::from(k >= i && k < j)).collect();
            pairs.push((x.clone(), x));
        }
    }
    let ambient = |x: &[i64]| {
        // Σ c_k (e_k − e_{k+1}) in Z^n.
        let mut v = vec![0i64; n];
        for (k, &c) in x.iter().enumerate() {
            v[k] += c;
            v[k + 1] -= c;
        }
        v
    };
    let mut rs = assemble(Realization::TypeAGl { n }, cartan, pairs, ambient);
    let mut pair_index = vec![vec![usize::MAX; n]; n];
    let mut root_pair = vec![(0, 0); rs.num_roots()];
    for (id, root) in rs.roots.iter().enumerate() {
        let i = root.coords.iter().position(|&c| c == 1).expect("type A root");
        let j = root.coords.iter().position(|&c| c == -1).expect("type A root");
        pair_index[i][j] = id;
        root_pair[id] = (i, j);
    }
    rs.pair_index = pair_index;
    rs.root_pair = root_pair;
    rs
}

/// Root system of a Cartan matrix of finite type, with a lattice (defaults
/// to the root lattice).
pub fn build_generic(
    cartan: Vec<Vec<i64>>,
    lattice: Option<CharacterLattice>,
) -> Result<(RootSystem, CharacterLattice), RootDataError> {
    validate_cartan(&cartan)?;
    let pairs = close_under_reflections(&cartan)?;
    let lattice = lattice.unwrap_or_else(|| CharacterLattice::root_lattice(&cartan));
    let rs = assemble(Realization::Generic, cartan, pairs, |x| x.to_vec());
    lattice.validate(&rs)?;
    Ok((rs, lattice))
}

/// JSON document describing a generic root datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumDoc {
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<CharacterLattice>,
}
