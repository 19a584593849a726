//! Exact dense linear algebra over the prime field F_p.
//!
//! Everything here is elementary row reduction with modular inverses; it
//! backs the nullspace annihilator backend, endomorphism rank/injectivity
//! tests, and subspace bases for the algebra-backed rings. Matrices are
//! dense row-major `u64` residues, which is plenty at the dimensions this
//! engine works with (basis dimension, not element count).

/// Dense matrix over F_p, entries reduced to `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    a: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse mod a prime, via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut m = FpMat::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.a[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.a.extend(row.iter().map(|&v| v % self.p));
        self.rows += 1;
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut m = self.clone();
        m.a.extend_from_slice(&other.a);
        m.rows += other.rows;
        m
    }

    /// Matrix product `self * other`.
    pub fn mul_mat(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.at(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j);
                    out.set(i, j, (cur + v * other.at(k, j)) % self.p);
                }
            }
        }
        out
    }

    /// Scale every entry by `c`.
    pub fn scale(&self, c: u64) -> FpMat {
        let mut out = self.clone();
        for v in out.a.iter_mut() {
            *v = *v * (c % self.p) % self.p;
        }
        out
    }

    /// Matrix-vector product `self * x`.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |s, (&a, &b)| (s + a * b) % self.p)
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// nonzero row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut sel = None;
            for i in r..self.rows {
                if self.at(i, c) != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            for j in 0..self.cols {
                let (x, y) = (self.at(r, j), self.at(i, j));
                self.set(r, j, y);
                self.set(i, j, x);
            }
            let inv = inv_mod(self.at(r, c), self.p);
            for j in 0..self.cols {
                let v = self.at(r, j) * inv % self.p;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.at(i, c) != 0 {
                    let f = self.at(i, c);
                    for j in 0..self.cols {
                        let v = (self.at(i, j) + (self.p - f) * self.at(r, j)) % self.p;
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace `{x : self * x = 0}`, one basis vector
    /// per row of the returned matrix.
    pub fn nullspace(&self) -> FpMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = FpMat::zeros(self.p, 0, self.cols);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                let val = m.at(ri, free);
                if val != 0 {
                    v[pc] = (self.p - val) % self.p;
                }
            }
            basis.push_row(&v);
        }
        basis
    }

    /// Echelonized basis of the row space (zero rows dropped).
    pub fn row_space_basis(&self) -> FpMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = FpMat::zeros(self.p, 0, self.cols);
        for i in 0..pivots.len() {
            out.push_row(m.row(i));
        }
        out
    }

    /// Reduce `v` against this echelonized basis (rows must be in rref
    /// form). Returns the residual; a zero residual means `v` is in the span.
    pub fn reduce_against(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for i in 0..self.rows {
            let pc = match self.row(i).iter().position(|&x| x != 0) {
                Some(c) => c,
                None => continue,
            };
            if w[pc] != 0 {
                // rref rows have pivot 1
                let f = w[pc];
                for (wj, &rj) in w.iter_mut().zip(self.row(i)) {
                    *wj = (*wj + (self.p - f) * rj) % self.p;
                }
            }
        }
        w
    }

    pub fn span_contains(&self, v: &[u64]) -> bool {
        self.reduce_against(v).iter().all(|&x| x == 0)
    }

    /// Enumerate every vector in the row span, in lexicographic order of the
    /// coefficient tuple over the basis rows (all p^rank combinations).
    pub fn span_vectors(&self) -> Vec<Vec<u64>> {
        let rank = self.rows;
        let total = (self.p as u128).pow(rank as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; rank];
        loop {
            let mut v = vec![0u64; self.cols];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (vj, &rj) in v.iter_mut().zip(self.row(i)) {
                        *vj = (*vj + c * rj) % self.p;
                    }
                }
            }
            out.push(v);
            let mut k = 0;
            loop {
                if k == rank {
                    return out;
                }
                coeffs[k] += 1;
                if coeffs[k] == self.p {
                    coeffs[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }
}
