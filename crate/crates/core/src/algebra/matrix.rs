//! Polynomial and rational matrices: determinants, minors, Jacobians,
//! characteristic polynomials and exact linear solves.

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Ring};
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![MPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = MPoly::one(ring);
        }
        m
    }

    pub fn from_rational(ring: &Ring, m: &RatMatrix) -> Self {
        PolyMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(|c| MPoly::constant(ring, c.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension("matrix sum of different shapes".into()));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.checked_add(b)).collect::<Result<_, _>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &MPoly) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.entries.first().or(other.entries.first()).map(|p| p.ring().clone());
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MPoly::zero(ring.as_ref().expect("non-empty matrix"));
                for k in 0..self.cols {
                    let prod = self.get(i, k).checked_mul(other.get(k, j))?;
                    acc = acc.checked_add(&prod)?;
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact determinant: cofactor expansion up to 4x4, fraction-free
    /// Bareiss elimination beyond.
    pub fn determinant(&self) -> Result<MPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= 4 {
            Ok(self.det_expansion())
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_expansion(&self) -> MPoly {
        let n = self.rows;
        let idx: Vec<usize> = (0..n).collect();
        self.expand(&idx, &idx)
    }

    fn expand(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        match rows.len() {
            0 => MPoly::one(self.entries[0].ring()),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]);
                let b = self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]);
                &a - &b
            }
            _ => {
                let mut acc = MPoly::zero(self.entries[0].ring());
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let minor = e * &self.expand(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
                }
                acc
            }
        }
    }

    pub fn det_bareiss(&self) -> Result<MPoly, AlgebraError> {
        let n = self.rows;
        if n == 0 {
            return Err(AlgebraError::Dimension("empty matrix".into()));
        }
        let ring = self.entries[0].ring().clone();
        let mut a: Vec<Vec<MPoly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = MPoly::one(&ring);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(MPoly::zero(&ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// All `k x k` minors, in lexicographic order of (rows, cols).
    pub fn minors(&self, k: usize) -> Vec<MPoly> {
        let mut out = Vec::new();
        for rs in combinations(self.rows, k) {
            for cs in combinations(self.cols, k) {
                out.push(self.submatrix(&rs, &cs).det_expansion_or_bareiss());
            }
        }
        out
    }

    fn det_expansion_or_bareiss(&self) -> MPoly {
        self.determinant().expect("square submatrix")
    }

    /// Evaluates every entry at a rational point.
    pub fn eval(&self, point: &[Rational]) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.entries.iter().map(|p| p.eval(point)).collect() }
    }
}

/// Jacobian of `f` with respect to `vars` (row per polynomial).
pub fn jacobian(f: &[MPoly], vars: &[usize]) -> PolyMatrix {
    let entries = f.iter().flat_map(|p| vars.iter().map(move |&v| p.derivative(v))).collect();
    PolyMatrix { rows: f.len(), cols: vars.len(), entries }
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 && cur[0] == n - k {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| super::rational::rat(x)).collect()).collect();
        Self::from_rows(v).expect("rectangular")
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> Result<Rational, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                for j in 0..n {
                    a.data.swap(p * n + j, k * n + j);
                }
                det = -det;
            }
            let piv = a.get(k, k).clone();
            det *= &piv;
            for i in k + 1..n {
                let f = a.get(i, k) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(t I - M)` by the division-free
    /// Berkowitz algorithm.
    pub fn char_poly(&self) -> Result<UPoly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UPoly::one());
        }
        // coefficient vector, highest degree first
        let mut v: Vec<Rational> = vec![Rational::one(), -self.get(0, 0).clone()];
        for r in 1..n {
            // partition the leading (r+1)x(r+1) block as [[A, R], [C, a]]
            let a = self.get(r, r).clone();
            let rvec: Vec<Rational> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let cvec: Vec<Rational> = (0..r).map(|i| self.get(i, r).clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
            let mut col = Vec::with_capacity(r + 2);
            col.push(Rational::one());
            col.push(-a);
            let mut w = cvec.clone();
            for _ in 0..r {
                let dot: Rational = rvec.iter().zip(&w).map(|(x, y)| x * y).sum();
                col.push(-dot);
                // w <- A w with A the leading r x r block
                w = (0..r).map(|i| (0..r).map(|j| self.get(i, j) * &w[j]).sum()).collect();
            }
            let mut next = vec![Rational::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (k, vk) in v.iter().enumerate() {
                    if i >= k {
                        *slot += &col[i - k] * vk;
                    }
                }
            }
            v = next;
        }
        v.reverse();
        Ok(UPoly::new(v))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else { continue };
            if p != row {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, row * a.cols + j);
                }
            }
            let inv = a.get(row, col).recip();
            for j in col..a.cols {
                let v = a.get(row, j) * &inv;
                a.set(row, j, v);
            }
            for i in 0..a.rows {
                if i == row || a.get(i, col).is_zero() {
                    continue;
                }
                let f = a.get(i, col).clone();
                for j in col..a.cols {
                    let v = a.get(i, j) - &f * a.get(row, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some solution of `self * x = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| super::rational::to_f64(self.get(i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::rational::rat;

    #[test]
    fn identity_determinant() {
        let r = Ring::new(&["x"]);
        assert_eq!(PolyMatrix::identity(&r, 2).determinant().unwrap(), MPoly::one(&r));
    }

    #[test]
    fn point_pencil_determinant() {
        let r = Ring::new(&["x1", "x2"]);
        let e = |s| parse_poly(&r, s).unwrap();
        let m = PolyMatrix::new(2, 2, vec![e("1-x1"), e("x2-1"), e("x2-1"), e("x1-1")]).unwrap();
        assert_eq!(m.determinant().unwrap(), e("-(x1-1)^2 - (x2-1)^2"));
    }

    #[test]
    fn non_square_rejected() {
        let r = Ring::new(&["x"]);
        assert!(matches!(PolyMatrix::zeros(&r, 2, 3).determinant(), Err(AlgebraError::NonSquare { .. })));
    }

    #[test]
    fn bareiss_matches_expansion() {
        let r = Ring::new(&["a", "b"]);
        let e = |s| parse_poly(&r, s).unwrap();
        let texts = [
            "a", "b", "1", "a+b", "2", "0", "b^2", "1", "a", "3", "a-b", "0", "1", "b", "a*b", "2", "a", "1", "b", "0",
            "1", "0", "a", "b", "a+1",
        ];
        let m = PolyMatrix::new(5, 5, texts.iter().map(|t| e(t)).collect()).unwrap();
        let sub = m.submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3]);
        assert_eq!(sub.det_bareiss().unwrap(), sub.det_expansion());
        assert_eq!(m.det_bareiss().unwrap(), m.det_expansion());
    }

    #[test]
    fn jacobian_of_perturbed_incidence() {
        let r = Ring::new(&["eps", "x1", "x2", "y"]);
        let e = |s| parse_poly(&r, s).unwrap();
        let f = [e("eps - x1 + x2*y"), e("x2 + eps*y + x1*y")];
        let j = jacobian(&f, &[1, 2, 3]);
        let want = ["-1", "y", "x2", "y", "1", "eps + x1"];
        for (got, w) in j.entries().iter().zip(want) {
            assert_eq!(got, &e(w));
        }
    }

    #[test]
    fn char_poly_2x2() {
        let m = RatMatrix::from_i64(&[&[80, -68], &[-68, 109]]);
        assert_eq!(m.char_poly().unwrap(), UPoly::from_i64(&[4096, -189, 1]));
    }

    #[test]
    fn char_poly_matches_determinant_definition() {
        let m = RatMatrix::from_i64(&[&[2, -1, 3, 0], &[4, 0, 1, -2], &[1, 1, 1, 1], &[0, 5, -3, 2]]);
        let cp = m.char_poly().unwrap();
        for t in -3..4 {
            let mut s = RatMatrix::identity(4).scale(&rat(t));
            s = s.add(&m.scale(&rat(-1)));
            assert_eq!(cp.eval(&rat(t)), s.determinant().unwrap());
        }
    }

    #[test]
    fn solve_and_rank() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
        assert!(a.solve(&[rat(1), rat(3)]).is_none());
        let x = a.solve(&[rat(1), rat(2)]).unwrap();
        assert_eq!(&x[0] + rat(2) * &x[1], rat(1));
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
