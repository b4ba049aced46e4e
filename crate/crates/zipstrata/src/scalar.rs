//! Exact scalar fields: prime and small extension finite fields, and the rationals.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical ring map.
    fn from_int(v: i64) -> Self;
}

/// A finite field with a Frobenius automorphism.
pub trait FiniteField: Field + Copy + Eq + Hash + Ord {
    const CHARACTERISTIC: u32;
    const DEGREE: u32;
    const ORDER: u64;

    /// x ↦ x^p.
    fn frobenius(self) -> Self;

    /// σ^e for any integer e; negative exponents use σ^DEGREE = id.
    fn frobenius_pow(self, e: i64) -> Self {
        let k = Self::DEGREE as i64;
        let mut x = self;
        for _ in 0..e.rem_euclid(k) {
            x = x.frobenius();
        }
        x
    }

    /// Element with base-p digit expansion `i` (constant coefficient first).
    fn from_index(i: u64) -> Self;

    fn index(self) -> u64;

    /// All elements in index order.
    fn elements() -> Vec<Self> {
        (0..Self::ORDER).map(Self::from_index).collect()
    }
}

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest monic polynomial x^k + c_{k-1}x^{k-1} + … + c_0 (ordered by the
/// base-p number c_0 + c_1 p + …) without roots in F_p. For k ≤ 3 that is
/// exactly irreducibility. For k = 1 the modulus is x.
const fn smallest_irreducible(p: u32, k: usize) -> [u32; 3] {
    let mut out = [0u32; 3];
    if k == 1 {
        return out;
    }
    let p64 = p as u64;
    let mut total = 1u64;
    let mut i = 0;
    while i < k {
        total *= p64;
        i += 1;
    }
    let mut code = 0u64;
    while code < total {
        let mut c = [0u64; 3];
        let mut rest = code;
        let mut j = 0;
        while j < k {
            c[j] = rest % p64;
            rest /= p64;
            j += 1;
        }
        let mut has_root = false;
        let mut x = 0u64;
        while x < p64 {
            // Horner evaluation of the monic polynomial at x.
            let mut acc = 1u64;
            let mut d = k;
            while d > 0 {
                d -= 1;
                acc = (acc * x + c[d]) % p64;
            }
            if acc == 0 {
                has_root = true;
                break;
            }
            x += 1;
        }
        if !has_root {
            let mut j = 0;
            while j < k {
                out[j] = c[j] as u32;
                j += 1;
            }
            return out;
        }
        code += 1;
    }
    panic!("no irreducible polynomial found")
}

/// The field F_{P^K}, elements stored as coefficient vectors of polynomials
/// of degree < K reduced modulo a generated monic irreducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf<const P: u32, const K: usize> {
    c: [u32; K],
}

impl<const P: u32, const K: usize> Gf<P, K> {
    const VALID: () = assert!(is_prime(P) && K >= 1 && K <= 3, "unsupported field parameters");

    /// Coefficients c_0..c_{K-1} of the reduction polynomial (monic, degree K).
    pub const MODULUS: [u32; 3] = smallest_irreducible(P, K);

    pub fn from_coeffs(coeffs: [u32; K]) -> Self {
        let () = Self::VALID;
        let mut c = coeffs;
        for x in c.iter_mut() {
            *x %= P;
        }
        Gf { c }
    }

    pub fn coeffs(&self) -> [u32; K] {
        self.c
    }

    /// Generator of the extension as a polynomial ring quotient (x itself);
    /// equals 0 when K = 1.
    pub fn gen() -> Self {
        let mut c = [0u32; K];
        if K > 1 {
            c[1] = 1;
        }
        Self::from_coeffs(c)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32, const K: usize> Zero for Gf<P, K> {
    fn zero() -> Self {
        Self::from_coeffs([0; K])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

impl<const P: u32, const K: usize> One for Gf<P, K> {
    fn one() -> Self {
        let mut c = [0u32; K];
        c[0] = 1;
        Self::from_coeffs(c)
    }
}

impl<const P: u32, const K: usize> Add for Gf<P, K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c) {
            *x = ((*x as u64 + y as u64) % P as u64) as u32;
        }
        Gf { c }
    }
}

impl<const P: u32, const K: usize> Neg for Gf<P, K> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = (P - *x) % P;
        }
        Gf { c }
    }
}

impl<const P: u32, const K: usize> Sub for Gf<P, K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u32, const K: usize> Mul for Gf<P, K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = P as u64;
        let mut prod = [0u64; 6];
        for i in 0..K {
            for j in 0..K {
                prod[i + j] = (prod[i + j] + self.c[i] as u64 * rhs.c[j] as u64) % p;
            }
        }
        let m = Self::MODULUS;
        for d in (K..2 * K - 1).rev() {
            let t = prod[d];
            if t != 0 {
                prod[d] = 0;
                for i in 0..K {
                    prod[d - K + i] = (prod[d - K + i] + t * ((p - m[i] as u64) % p)) % p;
                }
            }
        }
        let mut c = [0u32; K];
        for i in 0..K {
            c[i] = prod[i] as u32;
        }
        Gf { c }
    }
}

impl<const P: u32, const K: usize> Div for Gf<P, K> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in finite field")
    }
}

impl<const P: u32, const K: usize> Field for Gf<P, K> {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(Self::ORDER - 2))
        }
    }

    fn from_int(v: i64) -> Self {
        let mut c = [0u32; K];
        c[0] = v.rem_euclid(P as i64) as u32;
        Self::from_coeffs(c)
    }
}

impl<const P: u32, const K: usize> FiniteField for Gf<P, K> {
    const CHARACTERISTIC: u32 = P;
    const DEGREE: u32 = K as u32;
    const ORDER: u64 = (P as u64).pow(K as u32);

    fn frobenius(self) -> Self {
        if K == 1 {
            self
        } else {
            self.pow(P as u64)
        }
    }

    fn from_index(i: u64) -> Self {
        let mut c = [0u32; K];
        let mut rest = i;
        for x in c.iter_mut() {
            *x = (rest % P as u64) as u32;
            rest /= P as u64;
        }
        Self::from_coeffs(c)
    }

    fn index(self) -> u64 {
        self.c.iter().rev().fold(0u64, |acc, &x| acc * P as u64 + x as u64)
    }
}

impl<const P: u32, const K: usize> fmt::Display for Gf<P, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if K == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut terms = Vec::new();
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            terms.push(match i {
                0 => format!("{x}"),
                1 if x == 1 => "t".to_string(),
                1 => format!("{x}t"),
                _ if x == 1 => format!("t^{i}"),
                _ => format!("{x}t^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl<const P: u32, const K: usize> fmt::Debug for Gf<P, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Fields with a compatible total order (used by the feasibility solver).
pub trait OrderedField: Field + PartialOrd {
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
}

impl OrderedField for BigRational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}
