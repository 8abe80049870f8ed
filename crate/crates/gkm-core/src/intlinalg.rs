//! Exact integer linear algebra: Hermite and Smith normal forms with
//! transforms, integer kernels, lattice arithmetic, and GF(2) row reduction.
//!
//! Elimination runs over `i128` with overflow checks and transparently
//! restarts over `BigInt` when an intermediate value would not fit.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense matrix of arbitrary-precision integers, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
        }
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn into_row_vecs(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }

    fn to_i128_rows(&self) -> Option<Vec<Vec<i128>>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|v| i128::try_from(v).ok()).collect())
            .collect()
    }

    /// Row-style Hermite normal form: returns `(H, U, rank)` with
    /// `H = U * self`, `U` unimodular, pivots positive, entries above each
    /// pivot reduced into `[0, pivot)`, and zero rows at the bottom.
    pub fn hnf_with_transform(&self) -> (IntMatrix, IntMatrix, usize) {
        if let Some(small) = self.to_i128_rows() {
            let u: Vec<Vec<i128>> = (0..self.rows)
                .map(|i| {
                    let mut r = vec![0i128; self.rows];
                    r[i] = 1;
                    r
                })
                .collect();
            if let Some((h, u, rank)) = hnf_generic(small, u, self.cols) {
                let conv = |rows: Vec<Vec<i128>>, cols| {
                    IntMatrix::from_rows(
                        cols,
                        rows.into_iter()
                            .map(|r| r.into_iter().map(BigInt::from).collect())
                            .collect(),
                    )
                };
                return (conv(h, self.cols), conv(u, self.rows), rank);
            }
        }
        let (h, u, rank) = hnf_generic(
            self.data.clone(),
            IntMatrix::identity(self.rows).data,
            self.cols,
        )
        .expect("bigint elimination cannot overflow");
        (
            IntMatrix::from_rows(self.cols, h),
            IntMatrix::from_rows(self.rows, u),
            rank,
        )
    }

    pub fn hnf(&self) -> (IntMatrix, usize) {
        let (h, _, rank) = self.hnf_with_transform();
        (h, rank)
    }

    pub fn rank(&self) -> usize {
        self.hnf_with_transform().2
    }

    /// Basis of the right kernel `{x : self * x = 0}`, as matrix rows.
    /// The result spans a saturated lattice.
    pub fn kernel_basis(&self) -> IntMatrix {
        let t = self.transpose();
        let (_, u, rank) = t.hnf_with_transform();
        let rows: Vec<Vec<BigInt>> = u.data[rank..].to_vec();
        IntMatrix::from_rows(self.cols, rows)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let (h, u, rank) = self.hnf_with_transform();
        if rank != self.rows || h != IntMatrix::identity(self.rows) {
            return Err(Error::Internal("matrix is not unimodular".into()));
        }
        Ok(u)
    }

    /// Smith normal form: `(d, U, V)` with `U * self * V` diagonal with
    /// entries `d` (each dividing the next, nonnegative).
    pub fn snf_with_transforms(&self) -> (Vec<BigInt>, IntMatrix, IntMatrix) {
        let mut a = self.data.clone();
        let rows = self.rows;
        let cols = self.cols;
        let mut u = IntMatrix::identity(rows).data;
        let mut v = IntMatrix::identity(cols).data;

        let col_sub_mul = |a: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
            for r in a.iter_mut() {
                let t = &r[src] * q;
                r[dst] -= t;
            }
        };
        let col_swap = |a: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
            for r in a.iter_mut() {
                r.swap(x, y);
            }
        };

        let mut t = 0;
        while t < rows.min(cols) {
            // locate a minimal nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        best = match best {
                            None => Some((i, j)),
                            Some((bi, bj)) => {
                                if a[i][j].abs() < a[bi][bj].abs() {
                                    Some((i, j))
                                } else {
                                    Some((bi, bj))
                                }
                            }
                        };
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut v, t, bj);

            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = rounded_div(&a[i][t], &a[t][t]);
                    if !q.vanishes() {
                        let (head, tail) = a.split_at_mut(i);
                        row_sub_mul_big(&mut tail[0], &head[t], &q);
                        let (head, tail) = u.split_at_mut(i);
                        row_sub_mul_big(&mut tail[0], &head[t], &q);
                    }
                    if !a[i][t].is_zero() {
                        // remainder is smaller; promote it to the pivot
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = rounded_div(&a[t][j], &a[t][t]);
                    if !q.vanishes() {
                        col_sub_mul(&mut a, j, t, &q);
                        col_sub_mul(&mut v, j, t, &q);
                    }
                    if !a[t][j].is_zero() {
                        col_swap(&mut a, t, j);
                        col_swap(&mut v, t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot now alone in its row and column; enforce divisibility
                let mut fixed = true;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            // fold the offending row into the pivot row
                            for c in 0..cols {
                                let add = a[i][c].clone();
                                a[t][c] += add;
                            }
                            for c in 0..rows {
                                let add = u[i][c].clone();
                                u[t][c] += add;
                            }
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
            if a[t][t].is_negative() {
                for c in 0..cols {
                    a[t][c] = -a[t][c].clone();
                }
                for c in 0..rows {
                    u[t][c] = -u[t][c].clone();
                }
            }
            t += 1;
        }
        let d: Vec<BigInt> = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
        (
            d,
            IntMatrix::from_rows(rows, u),
            IntMatrix::from_rows(cols, v),
        )
    }

    pub fn snf(&self) -> Vec<BigInt> {
        self.snf_with_transforms().0
    }
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn row_sub_mul_big(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.vanishes() {
            *d -= s * q;
        }
    }
}

// arithmetic used by the shared elimination routine; the i128 impl reports
// overflow so the caller can restart with bigints
trait Elim: Clone {
    fn vanishes(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn checked_neg(&self) -> Option<Self>;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn div_rounded(&self, b: &Self) -> Option<Self>;
    fn div_floor_by(&self, b: &Self) -> Option<Self>;
}

impl Elim for i128 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn div_rounded(&self, b: &Self) -> Option<Self> {
        let q = self.checked_div(*b)?;
        let r = self - q * b;
        if r.unsigned_abs() * 2 > b.unsigned_abs() {
            if (*self < 0) == (*b < 0) {
                q.checked_add(1)
            } else {
                q.checked_sub(1)
            }
        } else {
            Some(q)
        }
    }
    fn div_floor_by(&self, b: &Self) -> Option<Self> {
        if *b == -1 && *self == i128::MIN {
            return None;
        }
        Some(self.div_floor(b))
    }
}

impl Elim for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn div_rounded(&self, b: &Self) -> Option<Self> {
        Some(rounded_div(self, b))
    }
    fn div_floor_by(&self, b: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, b))
    }
}

fn row_sub_mul<E: Elim>(dst: &mut [E], src: &[E], q: &E) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.vanishes() {
            *d = d.sub_mul(q, s)?;
        }
    }
    Some(())
}

fn hnf_generic<E: Elim>(
    mut m: Vec<Vec<E>>,
    mut u: Vec<Vec<E>>,
    cols: usize,
) -> Option<(Vec<Vec<E>>, Vec<Vec<E>>, usize)> {
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !m[i][c].vanishes() {
                    best = Some(match best {
                        None => i,
                        Some(j) => {
                            if m[i][c].cmp_abs(&m[j][c]) == Ordering::Less {
                                i
                            } else {
                                j
                            }
                        }
                    });
                }
            }
            let Some(p) = best else { break };
            m.swap(r, p);
            u.swap(r, p);
            let mut again = false;
            for i in r + 1..rows {
                if m[i][c].vanishes() {
                    continue;
                }
                let q = m[i][c].div_rounded(&m[r][c])?;
                if !q.vanishes() {
                    let (head, tail) = m.split_at_mut(i);
                    row_sub_mul(&mut tail[0], &head[r], &q)?;
                    let (head, tail) = u.split_at_mut(i);
                    row_sub_mul(&mut tail[0], &head[r], &q)?;
                }
                if !m[i][c].vanishes() {
                    again = true;
                }
            }
            if again {
                continue;
            }
            if m[r][c].is_neg() {
                for x in m[r].iter_mut() {
                    *x = x.checked_neg()?;
                }
                for x in u[r].iter_mut() {
                    *x = x.checked_neg()?;
                }
            }
            for i in 0..r {
                if m[i][c].vanishes() {
                    continue;
                }
                let q = m[i][c].div_floor_by(&m[r][c])?;
                if !q.vanishes() {
                    let (head, tail) = m.split_at_mut(r);
                    row_sub_mul(&mut head[i], &tail[0], &q)?;
                    let (head, tail) = u.split_at_mut(r);
                    row_sub_mul(&mut head[i], &tail[0], &q)?;
                }
            }
            r += 1;
            break;
        }
    }
    Some((m, u, r))
}

/// Finite or infinite index of a sublattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl std::fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// A sublattice of `Z^n`, stored as a Hermite normal form basis (one row per
/// basis vector); two equal lattices compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_matrix(m: IntMatrix) -> Lattice {
        let ambient = m.cols();
        let (h, rank) = m.hnf();
        let rows: Vec<Vec<BigInt>> = h.data[..rank].to_vec();
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|v| !v.is_zero()).unwrap())
            .collect();
        Lattice { ambient, basis: IntMatrix::from_rows(ambient, rows), pivots }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Lattice {
        Lattice::from_matrix(IntMatrix::from_rows(ambient, rows))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem: Vec<BigInt> = v.to_vec();
        let mut cs = Vec::with_capacity(self.rank());
        for (i, &p) in self.pivots.iter().enumerate() {
            let pivot = &self.basis.data[i][p];
            let (q, r) = rem[p].div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            if !q.vanishes() {
                row_sub_mul_big(&mut rem, &self.basis.data[i], &q);
            }
            cs.push(q);
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(cs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.data.iter().all(|r| self.contains(r))
    }

    /// Image under projection onto the listed coordinates (in order).
    pub fn project(&self, keep: &[usize]) -> Lattice {
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .data
            .iter()
            .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Lattice::from_rows(keep.len(), rows)
    }

    /// Smallest sublattice of `Z^n` containing this one with torsion-free
    /// quotient.
    pub fn saturate(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let k = self.basis.kernel_basis();
        Lattice::from_matrix(k.kernel_basis())
    }

    /// Saturation at 2 only: the lattice of vectors `v` with `2^k v` in this
    /// lattice for some `k`, i.e. the result of clearing powers of two from
    /// the elementary divisors (odd torsion is preserved).
    pub fn saturate_at_2(&self) -> Lattice {
        let r = self.rank();
        if r == 0 {
            return self.clone();
        }
        let sat = self.saturate();
        let coords: Vec<Vec<BigInt>> = self
            .basis
            .data
            .iter()
            .map(|row| {
                sat.coords(row).expect("lattice lies inside its saturation")
            })
            .collect();
        let c = IntMatrix::from_rows(r, coords);
        let (d, _u, v) = c.snf_with_transforms();
        let v_inv = v.inverse_unimodular().expect("snf column transform");
        let s_tilde = v_inv.mul(&sat.basis);
        let rows: Vec<Vec<BigInt>> = d
            .iter()
            .zip(&s_tilde.data)
            .map(|(di, row)| {
                let odd = odd_part(di);
                row.iter().map(|x| x * &odd).collect()
            })
            .collect();
        Lattice::from_rows(self.ambient, rows)
    }

    /// Index `[other : self]` for a sublattice `self` of `other`.
    pub fn index_in(&self, other: &Lattice) -> Result<LatticeIndex> {
        assert_eq!(self.ambient, other.ambient);
        let mut coord_rows = Vec::with_capacity(self.rank());
        for row in &self.basis.data {
            match other.coords(row) {
                Some(c) => coord_rows.push(c),
                None => {
                    return Err(Error::Usage(
                        "index_in: not a sublattice".into(),
                    ))
                }
            }
        }
        if self.rank() < other.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let c = IntMatrix::from_rows(other.rank(), coord_rows);
        let (h, rank) = c.hnf();
        if rank < other.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let mut det = BigInt::one();
        for i in 0..rank {
            det *= &h.data[i][i];
        }
        Ok(LatticeIndex::Finite(det))
    }
}

/// Largest odd divisor (sign preserved).
pub fn odd_part(v: &BigInt) -> BigInt {
    if v.is_zero() {
        return BigInt::zero();
    }
    v >> v.trailing_zeros().unwrap_or(0)
}

/// Bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> F2Matrix {
        let words = cols.div_ceil(64).max(1);
        F2Matrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = i * self.words + j / 64;
        let b = 1u64 << (j % 64);
        if v {
            self.data[w] |= b;
        } else {
            self.data[w] &= !b;
        }
    }

    pub fn from_int_matrix(m: &IntMatrix) -> F2Matrix {
        let mut out = F2Matrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.at(i, j).is_odd() {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (a, b) = (dst * self.words, src * self.words);
        for w in 0..self.words {
            let v = self.data[b + w];
            self.data[a + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words {
            self.data.swap(a * self.words + w, b * self.words + w);
        }
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel over GF(2), one vector per row.
    pub fn kernel_basis(&self) -> F2Matrix {
        let (m, pivots) = self.rref();
        let is_pivot: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let free: Vec<usize> =
            (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut out = F2Matrix::zero(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &c) in pivots.iter().enumerate() {
                if m.get(i, f) {
                    out.set(k, c, true);
                }
            }
        }
        out
    }

    /// Canonical basis of the row space: RREF with zero rows dropped.
    pub fn row_space(&self) -> F2Matrix {
        let (m, pivots) = self.rref();
        let rank = pivots.len();
        let mut out = F2Matrix::zero(rank, self.cols);
        out.data[..rank * self.words]
            .copy_from_slice(&m.data[..rank * self.words]);
        out
    }

    pub fn row_space_contains(&self, v: &[bool]) -> bool {
        assert_eq!(v.len(), self.cols);
        let (m, pivots) = self.rref();
        let mut rem: Vec<bool> = v.to_vec();
        for (i, &c) in pivots.iter().enumerate() {
            if rem[c] {
                for j in 0..self.cols {
                    rem[j] ^= m.get(i, j);
                }
            }
        }
        rem.iter().all(|&b| !b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(
            rows.first().map_or(0, |r| r.len()),
            &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn hnf_example() {
        let m = mat(&[&[2, 4], &[1, 1]]);
        let (h, u, rank) = m.hnf_with_transform();
        assert_eq!(rank, 2);
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m), h);
        // u is unimodular
        let (hu, _, _) = u.hnf_with_transform();
        assert_eq!(hu, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = mat(&[&[3, 7, 2], &[0, 5, 9]]);
        let (h, u, rank) = m.hnf_with_transform();
        assert_eq!(rank, 2);
        assert_eq!(u.mul(&m), h);
        // entry above the second pivot lies in [0, pivot)
        let p = h.at(1, 1).clone();
        assert!(*h.at(0, 1) >= BigInt::zero() && *h.at(0, 1) < p);
    }

    #[test]
    fn snf_example() {
        let m = mat(&[&[2, 4], &[6, 8]]);
        let (d, u, v) = m.snf_with_transforms();
        assert_eq!(d, vec![big(2), big(4)]);
        let prod = u.mul(&m).mul(&v);
        let mut expect = IntMatrix::zero(2, 2);
        expect.set(0, 0, big(2));
        expect.set(1, 1, big(4));
        assert_eq!(prod, expect);
    }

    #[test]
    fn kernel_example() {
        let m = mat(&[&[1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        // each kernel row maps to zero
        for r in k.row_vecs() {
            let s: BigInt = r.iter().sum();
            assert!(s.vanishes());
        }
        let expect =
            Lattice::from_rows(3, vec![
                vec![big(1), big(0), big(-1)],
                vec![big(0), big(1), big(-1)],
            ]);
        assert_eq!(Lattice::from_matrix(k), expect);
    }

    #[test]
    fn lattice_membership_and_coords() {
        let l = Lattice::from_rows(2, vec![
            vec![big(2), big(0)],
            vec![big(0), big(3)],
        ]);
        assert!(l.contains(&[big(4), big(-3)]));
        assert!(!l.contains(&[big(1), big(0)]));
        assert_eq!(l.coords(&[big(4), big(-3)]), Some(vec![big(2), big(-1)]));
    }

    #[test]
    fn lattice_projection() {
        let l = Lattice::from_rows(2, vec![
            vec![big(2), big(1)],
            vec![big(0), big(3)],
        ]);
        // first coordinate
        let p0 = l.project(&[0]);
        assert_eq!(p0, Lattice::from_rows(1, vec![vec![big(2)]]));
        // second coordinate
        let p1 = l.project(&[1]);
        assert_eq!(p1, Lattice::from_rows(1, vec![vec![big(1)]]));
    }

    #[test]
    fn saturation() {
        let l = Lattice::from_rows(2, vec![vec![big(2), big(2)]]);
        let s = l.saturate();
        assert_eq!(s, Lattice::from_rows(2, vec![vec![big(1), big(1)]]));
        // saturating twice is stable
        assert_eq!(s.saturate(), s);
    }

    #[test]
    fn saturation_at_two_strips_only_twos() {
        // spanned by (2,0) and (0,6): 2-saturation keeps the odd factor 3
        let l = Lattice::from_rows(2, vec![
            vec![big(2), big(0)],
            vec![big(0), big(6)],
        ]);
        let s2 = l.saturate_at_2();
        assert_eq!(
            s2,
            Lattice::from_rows(2, vec![vec![big(1), big(0)], vec![big(0), big(3)]])
        );
        // full-rank saturated lattice is fixed
        assert_eq!(s2.saturate_at_2(), s2);
        // mixed example: (2,2) spans index-2 sublattice of its saturation
        let m = Lattice::from_rows(2, vec![vec![big(2), big(2)]]);
        assert_eq!(
            m.saturate_at_2(),
            Lattice::from_rows(2, vec![vec![big(1), big(1)]])
        );
        let m3 = Lattice::from_rows(2, vec![vec![big(3), big(3)]]);
        assert_eq!(m3.saturate_at_2(), m3);
    }

    #[test]
    fn lattice_index() {
        let k = Lattice::from_rows(2, vec![
            vec![big(1), big(0)],
            vec![big(0), big(1)],
        ]);
        let l = Lattice::from_rows(2, vec![
            vec![big(1), big(0)],
            vec![big(0), big(2)],
        ]);
        assert_eq!(l.index_in(&k).unwrap(), LatticeIndex::Finite(big(2)));
        assert_eq!(k.index_in(&k).unwrap(), LatticeIndex::Finite(big(1)));
        let thin = Lattice::from_rows(2, vec![vec![big(1), big(0)]]);
        assert_eq!(thin.index_in(&k).unwrap(), LatticeIndex::Infinite);
        assert!(k.index_in(&thin).is_err());
    }

    #[test]
    fn random_hnf_and_kernel_properties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let m = IntMatrix::from_i64_rows(
                cols,
                &(0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
                    .collect::<Vec<_>>(),
            );
            let (h, u, rank) = m.hnf_with_transform();
            assert_eq!(u.mul(&m), h);
            let (hu, _, urank) = u.hnf_with_transform();
            assert_eq!(urank, rows);
            assert_eq!(hu, IntMatrix::identity(rows));
            for i in rank..rows {
                assert!(h.row(i).iter().all(|v| v.is_zero()));
            }
            let k = m.kernel_basis();
            assert_eq!(k.rows(), cols - rank);
            for r in k.row_vecs() {
                for i in 0..rows {
                    let dot: BigInt =
                        (0..cols).map(|j| m.at(i, j) * &r[j]).sum();
                    assert!(dot.is_zero());
                }
            }
            // kernels are saturated
            let kl = Lattice::from_matrix(k);
            assert_eq!(kl.saturate(), kl);
            // snf reproduces the matrix shape
            let (d, su, sv) = m.snf_with_transforms();
            let prod = su.mul(&m).mul(&sv);
            for i in 0..rows {
                for j in 0..cols {
                    let expect = if i == j && i < d.len() {
                        d[i].clone()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(*prod.at(i, j), expect, "snf mismatch");
                }
            }
            for w in d.windows(2) {
                if !w[1].is_zero() {
                    assert!(!w[0].is_zero());
                    assert!((&w[1] % &w[0]).is_zero());
                }
            }
        }
    }

    #[test]
    fn f2_rref_and_kernel() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let f = F2Matrix::from_int_matrix(&m);
        assert_eq!(f.rank(), 2);
        let k = f.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_bits(0), vec![true, true, true]);
        assert!(f.row_space_contains(&[true, 0 == 1, true]));
        assert!(!f.row_space_contains(&[true, false, false]));
        // row space canonical form is idempotent
        assert_eq!(f.row_space(), f.row_space().row_space());
    }

    #[test]
    fn f2_wide_matrix() {
        // exercise multi-word rows
        let cols = 130;
        let mut m = F2Matrix::zero(2, cols);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 129, true);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), cols - 2);
    }

    #[test]
    fn bigint_fallback_matches_small_path() {
        // force the bigint path with a huge entry and compare against the
        // same system scaled to fit in i128
        let huge: BigInt = BigInt::from(1) << 140;
        let m = IntMatrix::from_rows(2, vec![
            vec![huge.clone(), BigInt::zero()],
            vec![BigInt::zero(), big(3)],
        ]);
        let (h, u, rank) = m.hnf_with_transform();
        assert_eq!(rank, 2);
        assert_eq!(u.mul(&m), h);
        assert_eq!(*h.at(0, 0), huge);
    }

    #[test]
    fn odd_parts() {
        assert_eq!(odd_part(&big(24)), big(3));
        assert_eq!(odd_part(&big(-8)), big(-1));
        assert_eq!(odd_part(&big(7)), big(7));
        assert_eq!(odd_part(&big(0)), big(0));
    }
}
