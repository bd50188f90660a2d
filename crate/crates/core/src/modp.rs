//! Dense linear algebra over a prime field F_p. Used for mod-p homology
//! dimensions, mod-p cocycle bases, and the induced coproduct on homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactlin::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits u64")
}

impl ModMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let mut out = Self::zero(p, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.set(i, j, reduce(m.get(i, j), p));
            }
        }
        out
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut out = Self::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, f(i, j) % p);
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    fn mul_el(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv_el(&self, a: u64) -> u64 {
        // Fermat: a^(p-2) mod p
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc: u64 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_el(acc, base);
            }
            base = self.mul_el(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u128 * v[j] as u128) % self.p as u128;
                }
                acc as u64
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let pr = match (row..self.rows).find(|&r| self.get(r, col) != 0) {
                Some(pr) => pr,
                None => continue,
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = self.inv_el(self.get(row, col));
            for j in col..self.cols {
                let v = self.mul_el(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for j in col..self.cols {
                        let v = (self.get(r, j) + self.p - self.mul_el(factor, self.get(row, j)) % self.p) % self.p;
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, as vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let c = m.get(r, free);
                if c != 0 {
                    v[pc] = self.p - c;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b`, if a solution exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ModMatrix::zero(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = ModMatrix::from_fn(3, 2, 3, |i, j| ((i + j) % 3) as u64);
        let rk = m.rank();
        let ker = m.kernel_basis();
        assert_eq!(rk + ker.len(), 3);
        for k in &ker {
            assert!(m.mul_vec(k).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn solve_round_trip() {
        let m = ModMatrix::from_fn(5, 3, 4, |i, j| ((2 * i + 3 * j + 1) % 5) as u64);
        let x = vec![1, 2, 3, 4];
        let b = m.mul_vec(&x);
        let sol = m.solve(&b).expect("consistent system");
        assert_eq!(m.mul_vec(&sol), b);
        // an inconsistent system: 0 = 1
        let z = ModMatrix::zero(5, 1, 1);
        assert_eq!(z.solve(&[1]), None);
    }
}
