//! Exact integer linear algebra: dense arbitrary-precision matrices, Smith
//! normal form with recorded unimodular transforms, integral solving, and
//! homology of a pair of boundary maps.
//!
//! Everything here is exact; there is no floating point in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major matrix over ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Rank over ℚ by fraction-free (Bareiss) elimination. Independent of the
    /// Smith normal form path; the two are cross-checked in homology runs.
    pub fn rank_rational(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * cols + j].clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            if row >= rows {
                break;
            }
            let pivot_row = (row..rows).find(|&r| !at(&m, r, col).is_zero());
            let pr = match pivot_row {
                Some(pr) => pr,
                None => continue,
            };
            if pr != row {
                for j in 0..cols {
                    m.swap(row * cols + j, pr * cols + j);
                }
            }
            let pivot = at(&m, row, col);
            for r in row + 1..rows {
                for j in col + 1..cols {
                    let v = (&pivot * at(&m, r, j) - at(&m, r, col) * at(&m, row, j)) / &prev;
                    m[r * cols + j] = v;
                }
                m[r * cols + col] = BigInt::zero();
            }
            prev = pivot;
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Rank over ℚ or over F_p when a prime modulus is given.
    pub fn rank(&self, modulus: Option<u64>) -> Result<usize> {
        match modulus {
            None => Ok(self.rank_rational()),
            Some(p) => {
                require_prime(p)?;
                Ok(crate::modp::ModMatrix::from_int(self, p).rank())
            }
        }
    }

    /// Row-major JSON array-of-arrays, for debugging dumps. Entries that fit
    /// an i64 are numbers, anything larger becomes a decimal string.
    pub fn to_json(&self) -> serde_json::Value {
        use num_traits::ToPrimitive;
        let rows: Vec<serde_json::Value> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        match v.to_i64() {
                            Some(n) => serde_json::json!(n),
                            None => serde_json::json!(v.to_string()),
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

pub fn require_prime(p: u64) -> Result<()> {
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::CompositeModulus(p));
    }
    Ok(())
}

/// Smith normal form `U · M · V = D` with unimodular `U`, `V` and a diagonal
/// divisibility chain `d₁ | d₂ | …` of non-negative entries.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Solve `M x = b` for the decomposed matrix, reusing the transforms.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let (rows, cols) = (self.d.rows, self.d.cols);
        assert_eq!(b.len(), rows, "solve: rhs length");
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..rows {
            let d = if i < cols {
                self.d.get(i, i).clone()
            } else {
                BigInt::zero()
            };
            if d.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                let (q, r) = ub[i].div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Smith normal form by elementary operations. Pivots are chosen with minimal
/// nonzero absolute value, ties broken by (row, col), so the run is
/// deterministic. The transform identity `U·M·V = D` is re-verified before
/// returning.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // minimal |entry| in the active submatrix, tie-break by (row, col)
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if x.abs() < d.get(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);
        if d.get(t, t).is_negative() {
            negate_row(&mut d, &mut u, t);
        }

        let mut dirty = false;
        for i in t + 1..rows {
            let q = rounded_div(d.get(i, t), d.get(t, t));
            if !q.is_zero() {
                row_sub(&mut d, &mut u, i, t, &q);
            }
            if !d.get(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..cols {
            let q = rounded_div(d.get(t, j), d.get(t, t));
            if !q.is_zero() {
                col_sub(&mut d, &mut v, j, t, &q);
            }
            if !d.get(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            // a nonzero remainder is strictly smaller than the pivot, so the
            // re-selection above terminates
            continue;
        }
        // enforce the divisibility chain
        let pv = d.get(t, t).clone();
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(d.get(i, j) % &pv).is_zero());
        if let Some((i, _)) = offender {
            row_add(&mut d, &mut u, t, i);
            continue;
        }
        t += 1;
    }

    let result = SnfResult { d, u, v };
    debug_assert!(verify_snf(m, &result));
    assert!(
        verify_snf(m, &result),
        "smith normal form postcondition U*M*V == D"
    );
    result
}

fn verify_snf(m: &IntMatrix, snf: &SnfResult) -> bool {
    if snf.u.mul(m).mul(&snf.v) != snf.d {
        return false;
    }
    let diag = snf.invariant_factors();
    diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
        && diag.iter().all(|x| x.is_positive())
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q*b|
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let x = d.get(a, j).clone();
        d.set(a, j, d.get(b, j).clone());
        d.set(b, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j).clone();
        u.set(a, j, u.get(b, j).clone());
        u.set(b, j, x);
    }
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let x = d.get(i, a).clone();
        d.set(i, a, d.get(i, b).clone());
        d.set(i, b, x);
    }
    for i in 0..v.rows {
        let x = v.get(i, a).clone();
        v.set(i, a, v.get(i, b).clone());
        v.set(i, b, x);
    }
}

fn negate_row(d: &mut IntMatrix, u: &mut IntMatrix, r: usize) {
    for j in 0..d.cols {
        let x = -d.get(r, j);
        d.set(r, j, x);
    }
    for j in 0..u.cols {
        let x = -u.get(r, j);
        u.set(r, j, x);
    }
}

/// row a -= q * row b
fn row_sub(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for j in 0..d.cols {
        let x = d.get(a, j) - q * d.get(b, j);
        d.set(a, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j) - q * u.get(b, j);
        u.set(a, j, x);
    }
}

/// col a -= q * col b
fn col_sub(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize, q: &BigInt) {
    for i in 0..d.rows {
        let x = d.get(i, a) - q * d.get(i, b);
        d.set(i, a, x);
    }
    for i in 0..v.rows {
        let x = v.get(i, a) - q * v.get(i, b);
        v.set(i, a, x);
    }
}

/// row a += row b
fn row_add(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..d.cols {
        let x = d.get(a, j) + d.get(b, j);
        d.set(a, j, x);
    }
    for j in 0..u.cols {
        let x = u.get(a, j) + u.get(b, j);
        u.set(a, j, x);
    }
}

/// A ℤ-basis of `Ker(M)`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Solve `M x = b` over ℤ, if a solution exists.
pub fn solve_integral(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            context: format!("solve: rhs length {} vs {} rows", b.len(), m.rows),
        });
    }
    Ok(smith_normal_form(m).solve(b))
}

/// A homology group over ℤ (free rank plus invariant-factor torsion) or its
/// dimension over F_p (torsion empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// invariant factors > 1, in divisibility order, as decimal strings
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Homology of `Ker(boundary_out) / Im(boundary_in)`.
///
/// `boundary_out : C_n → C_{n-1}` and `boundary_in : C_{n+1} → C_n`;
/// the composition is checked to vanish. Over ℤ the free rank is computed by
/// two independent routes (Bareiss rank and SNF rank) which must agree, and
/// the torsion is the set of invariant factors of `boundary_in` exceeding 1.
pub fn homology_of_pair(
    boundary_out: &IntMatrix,
    boundary_in: &IntMatrix,
    modulus: Option<u64>,
) -> Result<HomologyGroup> {
    if boundary_out.cols != boundary_in.rows {
        return Err(Error::DimensionMismatch {
            context: format!(
                "homology: out is {}x{} but in is {}x{}",
                boundary_out.rows, boundary_out.cols, boundary_in.rows, boundary_in.cols
            ),
        });
    }
    let composite = boundary_out.mul(boundary_in);
    if !composite.is_zero() {
        let column = (0..composite.cols)
            .find(|&j| (0..composite.rows).any(|i| !composite.get(i, j).is_zero()))
            .unwrap();
        return Err(Error::CompositionNonzero { column });
    }
    let n = boundary_out.cols;
    match modulus {
        Some(p) => {
            require_prime(p)?;
            let rk_out = crate::modp::ModMatrix::from_int(boundary_out, p).rank();
            let rk_in = crate::modp::ModMatrix::from_int(boundary_in, p).rank();
            Ok(HomologyGroup::free(n - rk_out - rk_in))
        }
        None => {
            let snf_in = smith_normal_form(boundary_in);
            let rk_in = snf_in.rank();
            let rk_out_q = boundary_out.rank_rational();
            let rk_out_snf = smith_normal_form(boundary_out).rank();
            if rk_out_q != rk_out_snf {
                return Err(Error::Internal(format!(
                    "rank disagreement: Bareiss {rk_out_q} vs SNF {rk_out_snf}"
                )));
            }
            let rk_in_q = boundary_in.rank_rational();
            if rk_in_q != rk_in {
                return Err(Error::Internal(format!(
                    "rank disagreement: Bareiss {rk_in_q} vs SNF {rk_in}"
                )));
            }
            let torsion = snf_in
                .invariant_factors()
                .into_iter()
                .filter(|v| !v.is_one())
                .map(|v| v.to_string())
                .collect();
            Ok(HomologyGroup {
                free_rank: n - rk_out_q - rk_in,
                torsion,
            })
        }
    }
}
