//! Sparse matrices over the Gaussian rationals and exact rank computation.
//!
//! Rank is computed by fraction-free (Bareiss) elimination after clearing
//! denominators row by row: row operations stay in the Gaussian integers,
//! every division is exact by construction and checked at runtime, and
//! pivoting picks the first nonzero entry in column-major scan order, so the
//! result is deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinearMap::new(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut m = LinearMap::new(rows, cols);
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfBounds {
                    index: vec![r, c],
                    shape: vec![rows, cols],
                });
            }
            m.insert_add(r, c, v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut m = LinearMap::new(nr, nc);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), nc, "ragged rows");
            for (c, v) in row.into_iter().enumerate() {
                m.insert_add(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    /// Adds `v` onto entry `(r, c)`, dropping it if the sum cancels.
    pub fn insert_add(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of bounds");
        if v.is_zero() {
            return;
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Per-column nonzero entries, `columns()[c] = [(row, coefficient)]`.
    pub fn columns(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (&(r, c), v) in &self.entries {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    /// Matrix composition `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if self.cols != inner.rows {
            return Err(Error::DimensionMismatch {
                party: 0,
                expected: self.cols,
                found: inner.rows,
            });
        }
        let mut out = LinearMap::new(self.rows, inner.cols);
        let inner_rows: Vec<Vec<(usize, &Scalar)>> = {
            let mut rows = vec![Vec::new(); inner.rows];
            for (&(r, c), v) in &inner.entries {
                rows[r].push((c, v));
            }
            rows
        };
        for (&(r, mid), a) in &self.entries {
            for &(c, b) in &inner_rows[mid] {
                out.insert_add(r, c, a * b);
            }
        }
        Ok(out)
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_norm_sqr(&self) -> BigRational {
        self.entries
            .values()
            .map(Scalar::norm_sqr)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Exact rank over the Gaussian rationals.
    pub fn rank_exact(&self) -> usize {
        let rows = self.integer_rows();
        bareiss_rank(rows, self.cols)
    }

    /// Clears denominators: each row is scaled by the least common multiple
    /// of its denominators, which leaves the rank unchanged.
    fn integer_rows(&self) -> Vec<SparseRow> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter()
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| {
                    acc.lcm(v.re().denom()).lcm(v.im().denom())
                });
                let cells = row
                    .into_iter()
                    .map(|(c, v)| {
                        let re = v.re().numer() * (&lcm / v.re().denom());
                        let im = v.im().numer() * (&lcm / v.im().denom());
                        (c, GaussInt { re, im })
                    })
                    .collect();
                SparseRow { cells }
            })
            .collect()
    }
}

impl std::fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "LinearMap({}x{}, {} entries)",
            self.rows,
            self.cols,
            self.entries.len()
        )
    }
}

/// Gaussian integer used internally by the elimination.
#[derive(Clone, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn neg(&self) -> Self {
        GaussInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Division that is known to be exact in the Gaussian integers.
    fn exact_div(&self, den: &Self) -> Self {
        let conj = GaussInt {
            re: den.re.clone(),
            im: -den.im.clone(),
        };
        let num = self.mul(&conj);
        let norm = &den.re * &den.re + &den.im * &den.im;
        let (qr, rr) = num.re.div_rem(&norm);
        let (qi, ri) = num.im.div_rem(&norm);
        assert!(
            rr.is_zero() && ri.is_zero(),
            "non-exact division in fraction-free elimination"
        );
        GaussInt { re: qr, im: qi }
    }
}

/// A matrix row as a sorted sparse list of `(column, value)` cells.
struct SparseRow {
    cells: Vec<(usize, GaussInt)>,
}

impl SparseRow {
    fn normalize(&mut self) {
        self.cells.sort_by_key(|(c, _)| *c);
        debug_assert!(self.cells.windows(2).all(|w| w[0].0 < w[1].0));
    }

    fn get(&self, col: usize) -> Option<&GaussInt> {
        self.cells
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.cells[i].1)
    }
}

/// Fraction-free elimination with first-nonzero pivoting.
///
/// Invariant (Bareiss): after each step every stored value is a minor of the
/// original integer matrix, so dividing by the previous pivot is exact.
fn bareiss_rank(mut rows: Vec<SparseRow>, cols: usize) -> usize {
    for r in &mut rows {
        r.normalize();
    }
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = GaussInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..nrows).find(|&i| rows[i].get(col).is_some()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let piv = rows[rank].get(col).expect("pivot").clone();
        let (before, after) = rows.split_at_mut(rank + 1);
        let pivot = &before[rank];
        for row in after {
            let head = row.get(col).cloned();
            let mut cells = Vec::with_capacity(row.cells.len() + pivot.cells.len());
            match head {
                None => {
                    // new value = old · piv / prev
                    for (c, v) in row.cells.iter().filter(|(c, _)| *c > col) {
                        cells.push((*c, v.mul(&piv).exact_div(&prev)));
                    }
                }
                Some(head) => {
                    // new value = (old · piv − head · pivot_row) / prev
                    let mut a = row.cells.iter().filter(|(c, _)| *c > col).peekable();
                    let mut b = pivot.cells.iter().filter(|(c, _)| *c > col).peekable();
                    loop {
                        let v = match (a.peek(), b.peek()) {
                            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                                let cell = (*ca, va.mul(&piv).exact_div(&prev));
                                a.next();
                                cell
                            }
                            (Some((ca, _)), Some((cb, vb))) if cb < ca => {
                                let cell = (*cb, head.mul(vb).neg().exact_div(&prev));
                                b.next();
                                cell
                            }
                            (Some((ca, va)), Some((_, vb))) => {
                                let cell =
                                    (*ca, va.mul(&piv).sub(&head.mul(vb)).exact_div(&prev));
                                a.next();
                                b.next();
                                cell
                            }
                            (Some((ca, va)), None) => {
                                let cell = (*ca, va.mul(&piv).exact_div(&prev));
                                a.next();
                                cell
                            }
                            (None, Some((cb, vb))) => {
                                let cell = (*cb, head.mul(vb).neg().exact_div(&prev));
                                b.next();
                                cell
                            }
                            (None, None) => break,
                        };
                        if !v.1.is_zero() {
                            cells.push(v);
                        }
                    }
                }
            }
            row.cells = cells;
        }
        prev = piv;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_of_identity_and_ones() {
        assert_eq!(LinearMap::identity(3).rank_exact(), 3);
        let ones = LinearMap::from_dense(vec![vec![s(1); 5]; 5]);
        assert_eq!(ones.rank_exact(), 1);
        assert_eq!(LinearMap::new(4, 7).rank_exact(), 0);
    }

    #[test]
    fn rank_with_rational_and_complex_entries() {
        // rows: (1/2, 1/3), (3, 2) — independent
        let m = LinearMap::from_dense(vec![
            vec![Scalar::from_fraction(1, 2), Scalar::from_fraction(1, 3)],
            vec![s(3), s(2)],
        ]);
        assert_eq!(m.rank_exact(), 2);
        // second row = i · first row
        let m = LinearMap::from_dense(vec![
            vec![s(1), s(2)],
            vec![Scalar::i(), &Scalar::i() * &s(2)],
        ]);
        assert_eq!(m.rank_exact(), 1);
    }

    #[test]
    fn rank_deficient_with_column_skips() {
        let m = LinearMap::from_dense(vec![
            vec![s(0), s(1), s(2), s(3)],
            vec![s(0), s(2), s(4), s(6)],
            vec![s(0), s(0), s(0), s(1)],
        ]);
        assert_eq!(m.rank_exact(), 2);
    }

    #[test]
    fn compose_matches_manual_product() {
        let a = LinearMap::from_dense(vec![vec![s(1), s(2)], vec![s(0), s(1)]]);
        let b = LinearMap::from_dense(vec![vec![s(3)], vec![s(4)]]);
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.get(0, 0), Some(&s(11)));
        assert_eq!(ab.get(1, 0), Some(&s(4)));
        assert!(a.compose(&a.compose(&b).unwrap()).is_ok());
        assert!(b.compose(&a).is_err());
    }

    #[test]
    fn frobenius_norm() {
        let m = LinearMap::from_dense(vec![vec![s(3), Scalar::i()], vec![s(0), s(2)]]);
        assert_eq!(
            m.frobenius_norm_sqr(),
            num_rational::BigRational::from_integer(14.into())
        );
    }
}
