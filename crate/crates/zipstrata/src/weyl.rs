//! Weyl group arithmetic: composition, length, Bruhat order, parabolic
//! subgroups and minimal coset representatives.
//!
//! Elements are permutations of a faithful W-set: {1..n} for the type A
//! realization and the set of roots otherwise. Composition is
//! `(uv)(x) = u(v(x))`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{OnceLock, RwLock};

use serde_json::Value;
use thiserror::Error;

use crate::rootdata::{CharacterLattice, Realization, RootId, RootSystem, SimpleSet};

/// Default cap on the size of any enumerated subset of W (10!).
pub const DEFAULT_BUDGET: u64 = 3_628_800;

const MEMO_CAP: usize = 1 << 20;

type PermPair = (Box<[u16]>, Box<[u16]>);

static NEXT_PARENT: AtomicU32 = AtomicU32::new(1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("elements belong to different Weyl groups")]
    MixedParents,
    #[error("operation needs the type A realization")]
    NotTypeA,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("simple index {0} out of range")]
    BadSimpleIndex(usize),
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

#[derive(Clone)]
pub struct WeylElement {
    parent: u32,
    perm: Box<[u16]>,
    length: OnceLock<u32>,
}

impl WeylElement {
    /// The underlying permutation of the faithful W-set (0-based).
    pub fn perm(&self) -> &[u16] {
        &self.perm
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.perm.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.parent, &self.perm).cmp(&(other.parent, &other.perm))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.perm)
    }
}

/// A Weyl group together with its root system and Bruhat memo table.
pub struct Weyl {
    rs: RootSystem,
    id: u32,
    budget: u64,
    memo: RwLock<HashMap<PermPair, bool>>,
}

impl fmt::Debug for Weyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weyl").field("realization", &self.rs.realization()).field("rank", &self.rs.rank()).finish()
    }
}

impl Weyl {
    pub fn new(rs: RootSystem) -> Self {
        Self::with_budget(rs, DEFAULT_BUDGET)
    }

    pub fn with_budget(rs: RootSystem, budget: u64) -> Self {
        Weyl { rs, id: NEXT_PARENT.fetch_add(1, Ordering::Relaxed), budget, memo: RwLock::new(HashMap::new()) }
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn degree(&self) -> usize {
        match self.rs.realization() {
            Realization::TypeAGl { n } => n,
            Realization::Generic => self.rs.num_roots(),
        }
    }

    fn is_type_a(&self) -> bool {
        matches!(self.rs.realization(), Realization::TypeAGl { .. })
    }

    pub(crate) fn wrap(&self, perm: Box<[u16]>) -> WeylElement {
        WeylElement { parent: self.id, perm, length: OnceLock::new() }
    }

    fn wrap_len(&self, perm: Box<[u16]>, len: u32) -> WeylElement {
        let lock = OnceLock::new();
        let _ = lock.set(len);
        WeylElement { parent: self.id, perm, length: lock }
    }

    pub fn check(&self, w: &WeylElement) -> Result<(), WeylError> {
        if w.parent == self.id {
            Ok(())
        } else {
            Err(WeylError::MixedParents)
        }
    }

    pub fn identity(&self) -> WeylElement {
        self.wrap_len((0..self.degree() as u16).collect(), 0)
    }

    pub fn is_identity(&self, w: &WeylElement) -> bool {
        w.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// The simple reflection s_j (0-based j).
    pub fn simple(&self, j: usize) -> WeylElement {
        assert!(j < self.rank(), "simple index out of range");
        let perm: Box<[u16]> = if self.is_type_a() {
            let mut p: Vec<u16> = (0..self.degree() as u16).collect();
            p.swap(j, j + 1);
            p.into()
        } else {
            self.rs.reflection_table(j).iter().map(|&x| x as u16).collect()
        };
        self.wrap_len(perm, 1)
    }

    /// Product s_{j_1}⋯s_{j_k} of simple reflections (0-based indices).
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement, WeylError> {
        let mut w = self.identity();
        for &j in word {
            if j >= self.rank() {
                return Err(WeylError::BadSimpleIndex(j + 1));
            }
            w = self.mul(&w, &self.simple(j));
        }
        Ok(w)
    }

    /// Type A: the permutation i ↦ a_i from 1-based one-line notation.
    pub fn from_one_line(&self, a: &[usize]) -> Result<WeylElement, WeylError> {
        let Realization::TypeAGl { n } = self.rs.realization() else {
            return Err(WeylError::NotTypeA);
        };
        let mut seen = vec![false; n];
        if a.len() != n || a.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true)) {
            return Err(WeylError::Parse(format!("{a:?} is not a permutation of 1..{n}")));
        }
        Ok(self.wrap(a.iter().map(|&x| (x - 1) as u16).collect()))
    }

    /// Type A: 1-based one-line notation.
    pub fn one_line(&self, w: &WeylElement) -> Option<Vec<usize>> {
        self.is_type_a().then(|| w.perm.iter().map(|&x| x as usize + 1).collect())
    }

    pub(crate) fn mul(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        debug_assert_eq!(u.parent, v.parent);
        self.wrap(v.perm.iter().map(|&x| u.perm[x as usize]).collect())
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement, WeylError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    pub fn inverse(&self, u: &WeylElement) -> WeylElement {
        let mut inv = vec![0u16; u.perm.len()];
        for (i, &x) in u.perm.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        let out = self.wrap(inv.into());
        if let Some(&l) = u.length.get() {
            let _ = out.length.set(l);
        }
        out
    }

    /// u·v·u⁻¹ style conjugation of `w` by a permutation of the faithful set.
    pub(crate) fn conjugate_by_perm(&self, tau: &[u16], w: &WeylElement) -> WeylElement {
        let mut out = vec![0u16; w.perm.len()];
        for (x, &wx) in w.perm.iter().enumerate() {
            out[tau[x] as usize] = tau[wx as usize];
        }
        self.wrap(out.into())
    }

    pub fn apply(&self, u: &WeylElement, alpha: RootId) -> RootId {
        if self.is_type_a() {
            let (i, j) = self.rs.root_pair(alpha);
            self.rs.pair_root(u.perm[i] as usize, u.perm[j] as usize)
        } else {
            u.perm[alpha] as RootId
        }
    }

    /// The W-action on the character lattice.
    pub fn apply_weight(&self, u: &WeylElement, lattice: &CharacterLattice, lambda: &[i64]) -> Vec<i64> {
        if self.is_type_a() && lattice.dim == self.degree() && *lattice == CharacterLattice::gl(self.degree()) {
            let mut out = vec![0i64; lambda.len()];
            for (i, &x) in u.perm.iter().enumerate() {
                out[x as usize] = lambda[i];
            }
            return out;
        }
        let mut v = lambda.to_vec();
        for &j in self.reduced_word(u).iter().rev() {
            v = lattice.reflect(&self.rs, self.rs.simple_root(j), &v);
        }
        v
    }

    pub fn length(&self, w: &WeylElement) -> u32 {
        *w.length.get_or_init(|| self.compute_length(&w.perm))
    }

    fn compute_length(&self, perm: &[u16]) -> u32 {
        if self.is_type_a() {
            let mut inv = 0;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            inv
        } else {
            let np = self.rs.num_positive();
            perm[..np].iter().filter(|&&x| x as usize >= np).count() as u32
        }
    }

    /// w⁻¹(α_j) < 0, i.e. ℓ(s_j w) < ℓ(w).
    pub fn is_left_descent(&self, w: &WeylElement, j: usize) -> bool {
        let inv = self.inverse(w);
        self.is_right_descent(&inv, j)
    }

    /// w(α_j) < 0, i.e. ℓ(w s_j) < ℓ(w).
    pub fn is_right_descent(&self, w: &WeylElement, j: usize) -> bool {
        if self.is_type_a() {
            w.perm[j] > w.perm[j + 1]
        } else {
            w.perm[j] as usize >= self.rs.num_positive()
        }
    }

    /// Reduced word by greedy left descent, smallest index first (0-based).
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.inverse(w);
        // Left descents of w are right descents of w⁻¹; peel s_j off the left.
        'outer: loop {
            for j in 0..self.rank() {
                if self.is_right_descent(&cur, j) {
                    word.push(j);
                    cur = self.mul(&cur, &self.simple(j));
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// The reflection s_α for any root α.
    pub fn reflection(&self, alpha: RootId) -> WeylElement {
        if self.is_type_a() {
            let (i, j) = self.rs.root_pair(alpha);
            let mut p: Vec<u16> = (0..self.degree() as u16).collect();
            p.swap(i, j);
            return self.wrap(p.into());
        }
        let rs = &self.rs;
        let a = rs.simple_coords(alpha);
        let c = rs.coroot_coords(alpha);
        let cartan = rs.cartan();
        let perm: Box<[u16]> = (0..rs.num_roots())
            .map(|b| {
                let x = rs.simple_coords(b);
                let p: i64 =
                    (0..rs.rank()).map(|i| (0..rs.rank()).map(|j| x[i] * cartan[i][j] * c[j]).sum::<i64>()).sum();
                let y: Vec<i64> = x.iter().zip(a).map(|(xi, ai)| xi - p * ai).collect();
                rs.find(&y).expect("reflection permutes roots") as u16
            })
            .collect();
        self.wrap(perm)
    }

    fn left_mul_simple(&self, j: usize, perm: &mut [u16], inv: &mut [u16]) {
        if self.is_type_a() {
            let (a, b) = (j as u16, j as u16 + 1);
            let (pa, pb) = (inv[j] as usize, inv[j + 1] as usize);
            perm[pa] = b;
            perm[pb] = a;
            inv.swap(j, j + 1);
        } else {
            let table = self.rs.reflection_table(j);
            for x in perm.iter_mut() {
                *x = table[*x as usize] as u16;
            }
            let old = inv.to_vec();
            for (y, slot) in inv.iter_mut().enumerate() {
                *slot = old[table[y]];
            }
        }
    }

    fn inv_is_neg(&self, inv: &[u16], j: usize) -> bool {
        if self.is_type_a() {
            inv[j] > inv[j + 1]
        } else {
            inv[j] as usize >= self.rs.num_positive()
        }
    }

    /// Bruhat order by the lifting recursion, memoized.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let key = (v.perm.clone(), w.perm.clone());
        if let Some(&hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit;
        }
        let result = self.bruhat_uncached(v, w);
        let mut memo = self.memo.write().expect("memo lock");
        if memo.len() >= MEMO_CAP {
            memo.clear();
        }
        memo.insert(key, result);
        result
    }

    fn bruhat_uncached(&self, v: &WeylElement, w: &WeylElement) -> bool {
        let mut lv = self.length(v);
        let mut lw = self.length(w);
        let mut vp = v.perm.to_vec();
        let mut wp = w.perm.to_vec();
        let mut vi = self.inverse(v).perm.to_vec();
        let mut wi = self.inverse(w).perm.to_vec();
        loop {
            if lv > lw {
                return false;
            }
            if lv == 0 {
                return true;
            }
            if lv == lw {
                return vp == wp;
            }
            let j = (0..self.rank()).find(|&j| self.inv_is_neg(&wi, j)).expect("nonidentity has a descent");
            self.left_mul_simple(j, &mut wp, &mut wi);
            lw -= 1;
            if self.inv_is_neg(&vi, j) {
                self.left_mul_simple(j, &mut vp, &mut vi);
                lv -= 1;
            }
        }
    }

    /// Longest element of W_K.
    pub fn longest_element(&self, k: SimpleSet) -> WeylElement {
        if let Realization::TypeAGl { n } = self.rs.realization() {
            let mut p: Vec<u16> = (0..n as u16).collect();
            for block in type_a_blocks(n, k) {
                p[block.clone()].reverse();
            }
            return self.wrap(p.into());
        }
        let mut w = self.identity();
        'outer: loop {
            for j in k.iter() {
                if !self.is_right_descent(&w, j) {
                    w = self.mul(&w, &self.simple(j));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// u ∈ W_K.
    pub fn in_parabolic(&self, u: &WeylElement, k: SimpleSet) -> bool {
        if let Realization::TypeAGl { n } = self.rs.realization() {
            let block = type_a_block_ids(n, k);
            return u.perm.iter().enumerate().all(|(p, &x)| block[p] == block[x as usize]);
        }
        self.rs.positive_roots().all(|a| self.rs.is_positive(self.apply(u, a)) || self.rs.is_compact(a, k))
    }

    /// w ∈ ^K W, i.e. w⁻¹(Φ_K⁺) ⊆ Φ⁺.
    pub fn is_min_rep(&self, k: SimpleSet, w: &WeylElement) -> bool {
        let inv = self.inverse(w);
        k.iter().all(|j| !self.is_right_descent(&inv, j))
    }

    /// w = u·w_min with u ∈ W_K and w_min ∈ ^K W.
    pub fn min_coset_rep(&self, k: SimpleSet, w: &WeylElement) -> (WeylElement, WeylElement) {
        if let Realization::TypeAGl { n } = self.rs.realization() {
            let mut wmin = vec![0u16; n];
            for block in type_a_blocks(n, k) {
                let mut next = block.start as u16;
                for (p, &x) in w.perm.iter().enumerate() {
                    if block.contains(&(x as usize)) {
                        wmin[p] = next;
                        next += 1;
                    }
                }
            }
            let wmin = self.wrap(wmin.into());
            let u = self.mul(w, &self.inverse(&wmin));
            return (u, wmin);
        }
        let mut cur = w.clone();
        let mut u = self.identity();
        'outer: loop {
            let inv = self.inverse(&cur);
            for j in k.iter() {
                if self.is_right_descent(&inv, j) {
                    let s = self.simple(j);
                    cur = self.mul(&s, &cur);
                    u = self.mul(&u, &s);
                    continue 'outer;
                }
            }
            return (u, cur);
        }
    }

    /// |W_K|.
    pub fn parabolic_order(&self, k: SimpleSet) -> u128 {
        if let Realization::TypeAGl { n } = self.rs.realization() {
            return type_a_blocks(n, k).into_iter().map(|b| factorial(b.len())).product();
        }
        let mut count = 0u128;
        let _ = self.generic_parabolic(k, u64::MAX, &mut |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }

    /// |W|.
    pub fn order(&self) -> u128 {
        self.parabolic_order(SimpleSet::all(self.rank()))
    }

    fn check_budget(&self, needed: u128) -> Result<(), WeylError> {
        if needed > self.budget as u128 {
            Err(WeylError::BudgetExceeded { needed, budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Visits every element of W_K (identity first) until `f` breaks.
    /// Returns `Ok(true)` if the visit was cut short.
    pub fn for_each_parabolic(
        &self,
        k: SimpleSet,
        mut f: impl FnMut(&WeylElement) -> ControlFlow<()>,
    ) -> Result<bool, WeylError> {
        if let Realization::TypeAGl { n } = self.rs.realization() {
            self.check_budget(self.parabolic_order(k))?;
            let blocks = type_a_blocks(n, k);
            let mut p: Vec<u16> = (0..n as u16).collect();
            loop {
                if f(&self.wrap(p.clone().into())).is_break() {
                    return Ok(true);
                }
                // Odometer over blocks, each advanced by next_permutation.
                let mut advanced = false;
                for block in blocks.iter().rev() {
                    if next_permutation(&mut p[block.clone()]) {
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    return Ok(false);
                }
            }
        }
        self.generic_parabolic(k, self.budget, &mut f)
    }

    fn generic_parabolic(
        &self,
        k: SimpleSet,
        cap: u64,
        f: &mut dyn FnMut(&WeylElement) -> ControlFlow<()>,
    ) -> Result<bool, WeylError> {
        let mut seen: HashSet<Box<[u16]>> = HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity().perm);
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                if f(w).is_break() {
                    return Ok(true);
                }
                for j in k.iter() {
                    if !self.is_right_descent(w, j) {
                        let ws = self.mul(w, &self.simple(j));
                        if seen.insert(ws.perm.clone()) {
                            if seen.len() as u64 > cap {
                                return Err(WeylError::BudgetExceeded { needed: seen.len() as u128, budget: cap });
                            }
                            next.push(ws);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    /// All elements of W_K sorted by (length, canonical word).
    pub fn parabolic_elements(&self, k: SimpleSet) -> Result<Vec<WeylElement>, WeylError> {
        let mut out = Vec::new();
        self.for_each_parabolic(k, |x| {
            out.push(x.clone());
            ControlFlow::Continue(())
        })?;
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// Elements of ^K W of length at most `max_len` (all of them when `None`),
    /// sorted by (length, canonical word).
    pub fn min_reps(&self, k: SimpleSet, max_len: Option<u32>) -> Result<Vec<WeylElement>, WeylError> {
        if max_len.is_none() && self.is_type_a() {
            let total = self.order() / self.parabolic_order(k);
            self.check_budget(total)?;
        }
        let mut out = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        let mut level = 0u32;
        while !frontier.is_empty() && max_len.is_none_or(|m| level < m) {
            let mut next: HashSet<WeylElement> = HashSet::new();
            for w in &frontier {
                for j in 0..self.rank() {
                    if self.is_right_descent(w, j) {
                        continue;
                    }
                    let ws = self.wrap_len(self.mul(w, &self.simple(j)).perm, level + 1);
                    if self.is_min_rep(k, &ws) {
                        next.insert(ws);
                    }
                }
            }
            level += 1;
            out.extend(next.iter().cloned());
            self.check_budget(out.len() as u128)?;
            frontier = next.into_iter().collect();
        }
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// Elements of ^K W of exactly the given length.
    pub fn min_reps_of_length(&self, k: SimpleSet, len: u32) -> Result<Vec<WeylElement>, WeylError> {
        let mut all = self.min_reps(k, Some(len))?;
        all.retain(|w| self.length(w) == len);
        Ok(all)
    }

    /// All of W (subject to the budget).
    pub fn elements(&self) -> Result<Vec<WeylElement>, WeylError> {
        self.min_reps(SimpleSet::EMPTY, None)
    }

    /// Sort key: (length, one-line word) for type A, (length, reduced word)
    /// otherwise.
    pub fn sort_key(&self, w: &WeylElement) -> (u32, Vec<usize>) {
        let word = if self.is_type_a() { w.perm.iter().map(|&x| x as usize).collect() } else { self.reduced_word(w) };
        (self.length(w), word)
    }

    pub fn sort_elements(&self, v: &mut [WeylElement]) {
        v.sort_by_cached_key(|w| self.sort_key(w));
    }

    /// JSON form: one-line array for type A, reduced word (1-based) otherwise.
    pub fn to_json(&self, w: &WeylElement) -> Value {
        match self.one_line(w) {
            Some(a) => Value::from(a),
            None => Value::from(self.reduced_word(w).into_iter().map(|j| j + 1).collect::<Vec<_>>()),
        }
    }

    pub fn from_json(&self, v: &Value) -> Result<WeylElement, WeylError> {
        let arr: Vec<usize> = serde_json::from_value(v.clone()).map_err(|e| WeylError::Parse(e.to_string()))?;
        if self.is_type_a() {
            self.from_one_line(&arr)
        } else {
            if arr.contains(&0) {
                return Err(WeylError::Parse("simple indices are 1-based".into()));
            }
            self.from_word(&arr.iter().map(|j| j - 1).collect::<Vec<_>>())
        }
    }

    /// Display form: "[3412]" (or "[10,2,…]" past n = 9) for type A, a word
    /// such as "s1 s3" otherwise, "e" for the identity.
    pub fn display(&self, w: &WeylElement) -> String {
        if let Some(a) = self.one_line(w) {
            if a.len() <= 9 {
                return format!("[{}]", a.iter().map(|x| x.to_string()).collect::<String>());
            }
            return format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        }
        let word = self.reduced_word(w);
        if word.is_empty() {
            "e".into()
        } else {
            word.iter().map(|j| format!("s{}", j + 1)).collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses "3,4,1,2", "[3412]", "s1 s3", "s1*s3" or "e".
    pub fn parse(&self, text: &str) -> Result<WeylElement, WeylError> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "id" {
            return Ok(self.identity());
        }
        if t.contains('s') {
            let mut word = Vec::new();
            for tok in
                t.split(|c: char| c.is_whitespace() || c == '*' || c == '.' || c == ',').filter(|s| !s.is_empty())
            {
                let idx: usize = tok
                    .strip_prefix('s')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| WeylError::Parse(format!("bad simple reflection token {tok:?}")))?;
                if idx == 0 || idx > self.rank() {
                    return Err(WeylError::BadSimpleIndex(idx));
                }
                word.push(idx - 1);
            }
            return self.from_word(&word);
        }
        let Realization::TypeAGl { n } = self.rs.realization() else {
            return Err(WeylError::Parse("generic root systems take reduced words such as \"s1 s2\"".into()));
        };
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let values: Result<Vec<usize>, _> = if parts.len() == 1 && n <= 9 && parts[0].len() == n {
            parts[0].chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or(())).collect()
        } else {
            parts.iter().map(|s| s.parse::<usize>().map_err(|_| ())).collect()
        };
        let values = values.map_err(|_| WeylError::Parse(format!("bad one-line permutation {t:?}")))?;
        self.from_one_line(&values)
    }
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Blocks of consecutive positions joined by simple roots in K.
pub(crate) fn type_a_blocks(n: usize, k: SimpleSet) -> Vec<std::ops::Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for p in 0..n {
        if p + 1 == n || !k.contains(p) {
            blocks.push(start..p + 1);
            start = p + 1;
        }
    }
    blocks
}

fn type_a_block_ids(n: usize, k: SimpleSet) -> Vec<usize> {
    let mut ids = vec![0; n];
    for (b, range) in type_a_blocks(n, k).into_iter().enumerate() {
        for p in range {
            ids[p] = b;
        }
    }
    ids
}

fn next_permutation(a: &mut [u16]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        a.reverse();
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
