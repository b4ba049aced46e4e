//! Dense matrices and row-reduced subspaces over an exact field.

use std::fmt;

use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Row-major integer entries mapped into the field.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| T::from_int(entries[i * cols + j]))
    }

    /// Permutation matrix sending e_j to e_{perm[j]} (0-based one-line notation).
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let sub = factor.clone() * m[(r, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = det * pivot.clone();
            let inv = pivot.inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone() * inv.clone();
                    for j in c..n {
                        let sub = factor.clone() * m[(c, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - sub;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Basis of {x : self·x = 0}.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Coefficients c_0, …, c_n of det(X·1 − self) = Σ c_i X^i (c_n = 1),
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Coefficients from the highest degree down.
        let mut p: Vec<T> = vec![T::one()];
        for k in 0..n {
            let a = self[(k, k)].clone();
            let row: Vec<T> = (0..k).map(|j| self[(k, j)].clone()).collect();
            let mut col: Vec<T> = (0..k).map(|i| self[(i, k)].clone()).collect();
            // First column of the Toeplitz factor: 1, -a, -R·C, -R·A·C, …
            let mut t = vec![T::one(), -a];
            for _ in 0..k {
                let rc = row.iter().zip(&col).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                t.push(-rc);
                col = (0..k)
                    .map(|i| (0..k).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * col[j].clone()))
                    .collect();
            }
            let mut next = vec![T::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    if i >= j && i - j < t.len() {
                        *slot = slot.clone() + t[i - j].clone() * pj.clone();
                    }
                }
            }
            p = next;
        }
        p.reverse();
        p
    }

    /// Classical adjoint: adj(A)·A = A·adj(A) = det(A)·1.
    pub fn adjugate(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, n, |i, j| {
            let minor = Self::from_fn(n - 1, n - 1, |a, b| {
                let r = if a < j { a } else { a + 1 };
                let c = if b < i { b } else { b + 1 };
                self[(r, c)].clone()
            });
            let d = minor.det();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> std::ops::Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        out
    }
}

impl<T: Field> std::ops::Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<T: Field> std::ops::Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// A subspace of T^n, stored as the nonzero rows of a reduced row echelon
/// basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<T>>) -> Self {
        let rows: Vec<Vec<T>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(rows).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Span of the columns of `m`.
    pub fn column_space(m: &Matrix<T>) -> Self {
        Self::span(m.rows(), (0..m.cols()).map(|j| m.column(j)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Linear equations cutting out the subspace: rows of the returned matrix
    /// vanish exactly on `self`.
    pub fn equations(&self) -> Matrix<T> {
        let n = self.ambient;
        if self.basis.is_empty() {
            return Matrix::identity(n);
        }
        let ann = Matrix::from_rows(self.basis.clone()).kernel();
        if ann.is_empty() {
            Matrix::zeros(1, n)
        } else {
            Matrix::from_rows(ann)
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let eq_a = self.equations();
        let eq_b = other.equations();
        let mut rows: Vec<Vec<T>> = (0..eq_a.rows()).map(|i| eq_a.row(i).to_vec()).collect();
        rows.extend((0..eq_b.rows()).map(|i| eq_b.row(i).to_vec()));
        Self::span(self.ambient, Matrix::from_rows(rows).kernel())
    }

    /// m·self.
    pub fn image(&self, m: &Matrix<T>) -> Self {
        Self::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }

    /// {y : m·y ∈ self}.
    pub fn preimage(&self, m: &Matrix<T>) -> Self {
        let eq = self.equations();
        Self::span(m.cols(), (&eq * m).kernel())
    }

    /// Entrywise image of the subspace under a field automorphism.
    pub fn map_entries(&self, f: impl Fn(&T) -> T) -> Self {
        Self::span(self.ambient, self.basis.iter().map(|v| v.iter().map(&f).collect()))
    }
}

impl<T: fmt::Display> fmt::Debug for Subspace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}}")
    }
}

pub fn unit<T: Field>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf;
    use crate::Rational;
    use num_traits::Zero;
    use proptest::prelude::*;

    type F3 = Gf<3, 1>;

    fn rat(m: &[i64], n: usize) -> Matrix<Rational> {
        Matrix::from_ints(n, n, m)
    }

    /// det(x·1 − M) by cofactor expansion, evaluated at integer points.
    fn charpoly_at(m: &Matrix<Rational>, x: i64) -> Rational {
        let n = m.rows();
        let shifted = Matrix::from_fn(n, n, |i, j| {
            let d = if i == j { Rational::from_int(x) } else { Rational::from_int(0) };
            d - m[(i, j)].clone()
        });
        cofactor_det(&shifted)
    }

    fn cofactor_det(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut acc = Rational::from_int(0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |a, b| m[(a + 1, if b < j { b } else { b + 1 })].clone());
            let term = m[(0, j)].clone() * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn eval(poly: &[Rational], x: i64) -> Rational {
        poly.iter().rev().fold(Rational::from_int(0), |acc, c| acc * Rational::from_int(x) + c.clone())
    }

    #[test]
    fn rank_det_inverse_small() {
        let m = rat(&[2, 1, 0, 1, 3, 1, 0, 1, 4], 3);
        assert_eq!(m.det(), Rational::from_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        let singular = rat(&[1, 2, 2, 4], 2);
        assert_eq!(singular.rank(), 1);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.kernel().len(), 1);
    }

    #[test]
    fn subspace_intersection_and_preimage() {
        let e = |i| unit::<F3>(3, i);
        let a = Subspace::span(3, vec![e(0), e(1)]);
        let b = Subspace::span(3, vec![e(1), e(2)]);
        assert_eq!(a.intersect(&b), Subspace::span(3, vec![e(1)]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        // Projection onto the first coordinate: preimage of 0 is span(e1, e2).
        let p = Matrix::<F3>::from_ints(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(Subspace::zero(3).preimage(&p), Subspace::span(3, vec![e(1), e(2)]));
    }

    proptest! {
        #[test]
        fn charpoly_matches_cofactor_oracle(entries in proptest::collection::vec(-4i64..5, 16)) {
            let m = rat(&entries, 4);
            let cp = m.charpoly();
            prop_assert_eq!(cp.len(), 5);
            prop_assert_eq!(cp[4].clone(), Rational::from_int(1));
            for x in -2..3 {
                prop_assert_eq!(eval(&cp, x), charpoly_at(&m, x));
            }
        }

        #[test]
        fn adjugate_identity(entries in proptest::collection::vec(-3i64..4, 9)) {
            let m = rat(&entries, 3);
            let adj = m.adjugate();
            prop_assert_eq!(&adj * &m, Matrix::identity(3).scale(&m.det()));
        }

        #[test]
        fn rref_is_canonical(entries in proptest::collection::vec(0i64..3, 12), mix in proptest::collection::vec(0i64..3, 9)) {
            let m = Matrix::<F3>::from_ints(3, 4, &entries);
            let g = Matrix::<F3>::from_ints(3, 3, &mix);
            prop_assume!(!g.det().is_zero());
            let rows = |x: &Matrix<F3>| (0..x.rows()).map(|i| x.row(i).to_vec()).collect::<Vec<_>>();
            let s1 = Subspace::span(4, rows(&m));
            let s2 = Subspace::span(4, rows(&(&g * &m)));
            prop_assert_eq!(s1.dim(), m.rank());
            prop_assert_eq!(s1, s2);
        }
    }
}
