//! Dense matrices over F_p with row-vector conventions: a matrix acts on the
//! right of row vectors, and subspaces are row spaces.

use crate::prime::Prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: Prime, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.into_iter().map(|x| x % p.get()));
        }
        FpMatrix { p, rows: n, cols, data }
    }

    /// Permutation matrix with row i carrying a 1 in column `image[i]`.
    pub fn permutation(p: Prime, image: &[usize]) -> Self {
        let n = image.len();
        let mut m = Self::zeros(p, n, n);
        for (i, &j) in image.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let q = self.p.get() as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        // flush well before u64 overflow
        let flush_every = (u64::MAX / ((q - 1).max(1) * (q - 1).max(1))).min(1 << 20) as usize;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (s, &b) in acc.iter_mut().zip(brow) {
                    *s += a * b as u64;
                }
                pending += 1;
                if pending == flush_every {
                    acc.iter_mut().for_each(|s| *s %= q);
                    pending = 0;
                }
            }
            for (j, s) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (s % q) as u32;
            }
        }
        out
    }

    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let q = self.p.get() as u64;
        let mut acc = vec![0u64; self.cols];
        let flush_every = (u64::MAX / ((q - 1).max(1) * (q - 1).max(1))).min(1 << 20) as usize;
        let mut pending = 0;
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (s, &b) in acc.iter_mut().zip(self.row(k)) {
                *s += a as u64 * b as u64;
            }
            pending += 1;
            if pending == flush_every {
                acc.iter_mut().for_each(|s| *s %= q);
                pending = 0;
            }
        }
        acc.into_iter().map(|s| (s % q) as u32).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.p.add(a, b)).collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> Self {
        let data = self.data.iter().map(|&a| self.p.mul(a, c)).collect();
        FpMatrix { data, ..*self }
    }

    /// self - c·I
    pub fn sub_scalar(&self, c: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.data[i * self.cols + i] = self.p.sub(v, c % self.p.get());
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        Subspace::from_rows(self.p, self.cols, self.row_vecs()).dim()
    }

    /// Basis of {x : x·self = 0}.
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        self.transpose().right_kernel()
    }

    /// Basis of {y : self·y^T = 0}, as row vectors.
    pub fn right_kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.row_vecs();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
            m.swap(r, k);
            let inv = p.inv(m[r][c]);
            m[r].iter_mut().for_each(|x| *x = p.mul(*x, inv));
            let pivot_row = m[r].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = p.sub(*x, p.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = p.neg(m[i][f]);
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.rows - self.rank()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut a = self.row_vecs();
        let mut inv = Self::identity(p, n).row_vecs();
        for c in 0..n {
            let k = (c..n).find(|&k| a[k][c] != 0)?;
            a.swap(c, k);
            inv.swap(c, k);
            let s = p.inv(a[c][c]);
            a[c].iter_mut().for_each(|x| *x = p.mul(*x, s));
            inv[c].iter_mut().for_each(|x| *x = p.mul(*x, s));
            let (arow, irow) = (a[c].clone(), inv[c].clone());
            for k in 0..n {
                if k != c && a[k][c] != 0 {
                    let f = a[k][c];
                    for (x, &y) in a[k].iter_mut().zip(&arow) {
                        *x = p.sub(*x, p.mul(f, y));
                    }
                    for (x, &y) in inv[k].iter_mut().zip(&irow) {
                        *x = p.sub(*x, p.mul(f, y));
                    }
                }
            }
        }
        Some(Self::from_rows(p, n, inv))
    }

    /// Characteristic polynomial det(xI - self), coefficients from degree 0 upward.
    pub fn charpoly(&self) -> Vec<u32> {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let n = self.rows;
        let mut h = self.row_vecs();
        // reduce to upper Hessenberg form by similarity
        for c in 0..n.saturating_sub(2) {
            let Some(k) = (c + 1..n).find(|&k| h[k][c] != 0) else { continue };
            if k != c + 1 {
                h.swap(k, c + 1);
                for row in h.iter_mut() {
                    row.swap(k, c + 1);
                }
            }
            let inv = p.inv(h[c + 1][c]);
            for k in c + 2..n {
                let f = p.mul(h[k][c], inv);
                if f == 0 {
                    continue;
                }
                // row_k -= f·row_{c+1}; then col_{c+1} += f·col_k
                let src = h[c + 1].clone();
                for (x, &y) in h[k].iter_mut().zip(&src) {
                    *x = p.sub(*x, p.mul(f, y));
                }
                for row in h.iter_mut() {
                    let add = p.mul(f, row[k]);
                    row[c + 1] = p.add(row[c + 1], add);
                }
            }
        }
        // Hessenberg recurrence
        let mut polys: Vec<Vec<u32>> = vec![vec![1]];
        for k in 0..n {
            // (x - h_kk)·P_k
            let prev = &polys[k];
            let mut next = vec![0u32; k + 2];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = p.add(next[i + 1], c);
                next[i] = p.sub(next[i], p.mul(h[k][k], c));
            }
            let mut prod = 1u32;
            for i in (0..k).rev() {
                prod = p.mul(prod, h[i + 1][i]);
                if prod == 0 {
                    break;
                }
                let coef = p.mul(prod, h[i][k]);
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = p.sub(next[j], p.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

/// A row space kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: Prime, ambient: usize) -> Self {
        Subspace { p, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(p: Prime, ambient: usize, rows: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut s = Self::new(p, ambient);
        for r in rows {
            s.insert(r);
            if s.dim() == ambient {
                break;
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the components along pivots; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = p.sub(*x, p.mul(f, y));
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let p = self.p;
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else { return false };
        let inv = p.inv(v[pc]);
        v.iter_mut().for_each(|x| *x = p.mul(*x, inv));
        for row in self.basis.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    if y != 0 {
                        *x = p.sub(*x, p.mul(f, y));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.basis.insert(at, v);
        true
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Complement coordinates: positions that are not pivots.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut k = 0;
        for c in 0..self.ambient {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32) -> Prime {
        Prime::new(q).unwrap()
    }

    #[test]
    fn rank_and_kernels() {
        let m = FpMatrix::from_rows(p(3), 3, vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        // rows 1 and 2 are proportional mod 3
        assert_eq!(m.rank(), 2);
        let lk = m.left_kernel();
        assert_eq!(lk.len(), 1);
        assert!(m.vec_mul(&lk[0]).iter().all(|&x| x == 0));
        let rk = m.right_kernel();
        assert_eq!(rk.len(), 1);
        assert!(m.transpose().vec_mul(&rk[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn inverse_and_power() {
        let m = FpMatrix::from_rows(p(5), 2, vec![vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let c = FpMatrix::permutation(p(2), &[1, 2, 3, 0]);
        assert!(c.pow(4).is_identity());
        assert!(!c.pow(2).is_identity());
        assert!(FpMatrix::from_rows(p(2), 2, vec![vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_permutation() {
        // 3-cycle over F_5: x^3 - 1
        let c = FpMatrix::permutation(p(5), &[1, 2, 0]);
        assert_eq!(c.charpoly(), vec![4, 0, 0, 1]);
        // identity over F_3, size 2: (x-1)^2 = x^2 - 2x + 1
        assert_eq!(FpMatrix::identity(p(3), 2).charpoly(), vec![1, 1, 1]);
    }

    #[test]
    fn charpoly_matches_determinant_definition() {
        // Compare with det(xI - A) at every x in F_7 via elimination.
        let a = FpMatrix::from_rows(p(7), 3, vec![vec![2, 5, 1], vec![0, 3, 6], vec![4, 4, 0]]);
        let cp = a.charpoly();
        for x in 0..7u32 {
            let m = a.sub_scalar(x).scale(6); // xI - A = -(A - xI)
            let val = cp.iter().rev().fold(0u32, |acc, &c| (acc * x + c) % 7);
            assert_eq!(val, det(&m));
        }
    }

    fn det(m: &FpMatrix) -> u32 {
        let p = m.prime();
        let mut a = m.row_vecs();
        let n = a.len();
        let mut d = 1u32;
        for c in 0..n {
            let Some(k) = (c..n).find(|&k| a[k][c] != 0) else { return 0 };
            if k != c {
                a.swap(c, k);
                d = p.neg(d);
            }
            d = p.mul(d, a[c][c]);
            let inv = p.inv(a[c][c]);
            for k in c + 1..n {
                let f = p.mul(a[k][c], inv);
                let src = a[c].clone();
                for (x, &y) in a[k].iter_mut().zip(&src) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        d
    }

    #[test]
    fn subspace_coordinates() {
        let mut s = Subspace::new(p(2), 4);
        assert!(s.insert(vec![1, 1, 0, 0]));
        assert!(s.insert(vec![0, 1, 1, 0]));
        assert!(!s.insert(vec![1, 0, 1, 0]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.non_pivots(), vec![2, 3]);
        let v = vec![1, 0, 1, 0];
        let c = s.coords(&v);
        let mut rebuilt = vec![0; 4];
        for (coef, row) in c.iter().zip(s.basis()) {
            for (x, y) in rebuilt.iter_mut().zip(row) {
                *x = (*x + coef * y) % 2;
            }
        }
        assert_eq!(rebuilt, v);
    }
}
