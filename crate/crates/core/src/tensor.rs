//! Sparse multiparty tensors over an exact coefficient ring.
//!
//! A tensor of order `k` is a map from multi-indices (one 0-based index per
//! party) to nonzero coefficients. Zero entries are never stored, indices are
//! always within the declared shape, and entry maps are ordered, so structural
//! equality is semantic equality.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::scalar::{EpsScalar, Ring, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct SparseTensor<R: Ring> {
    shape: Vec<usize>,
    entries: BTreeMap<Vec<usize>, R>,
}

impl<R: Ring> SparseTensor<R> {
    /// The zero tensor of the given shape.
    pub fn zeros(shape: Vec<usize>) -> Self {
        SparseTensor {
            shape,
            entries: BTreeMap::new(),
        }
    }

    /// Basis tensor with a single coefficient-1 entry.
    pub fn basis(shape: Vec<usize>, index: Vec<usize>) -> Result<Self> {
        let mut t = SparseTensor::zeros(shape);
        t.check_bounds(&index)?;
        t.entries.insert(index, R::one());
        Ok(t)
    }

    /// Builds a tensor from `(index, coefficient)` pairs, accumulating
    /// repeated indices and dropping anything that cancels to zero.
    pub fn from_entries(
        shape: Vec<usize>,
        entries: impl IntoIterator<Item = (Vec<usize>, R)>,
    ) -> Result<Self> {
        let mut t = SparseTensor::zeros(shape);
        for (idx, coef) in entries {
            t.check_bounds(&idx)?;
            t.insert_add(idx, coef);
        }
        Ok(t)
    }

    fn check_bounds(&self, index: &[usize]) -> Result<()> {
        if index.len() != self.shape.len()
            || index.iter().zip(&self.shape).any(|(i, d)| i >= d)
        {
            return Err(Error::IndexOutOfBounds {
                index: index.to_vec(),
                shape: self.shape.clone(),
            });
        }
        Ok(())
    }

    /// Adds `coef` onto the entry at `index`. The index must be in bounds.
    pub fn insert_add(&mut self, index: Vec<usize>, coef: R) {
        debug_assert!(self.check_bounds(&index).is_ok());
        if coef.is_zero() {
            return;
        }
        match self.entries.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().ring_add(&coef);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Number of parties.
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &R)> {
        self.entries.iter()
    }

    pub fn coefficient(&self, index: &[usize]) -> Option<&R> {
        self.entries.get(index)
    }

    /// The set of multi-indices carrying a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Vec<usize>> {
        self.entries.keys().cloned().collect()
    }

    /// True when every stored coefficient equals 1.
    pub fn is_zero_one(&self) -> bool {
        self.entries.values().all(|c| *c == R::one())
    }

    /// Entrywise sum. Shapes must agree.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.shape != rhs.shape {
            return Err(Error::ShapeMismatch(self.shape.clone(), rhs.shape.clone()));
        }
        let mut out = self.clone();
        for (idx, coef) in &rhs.entries {
            out.insert_add(idx.clone(), coef.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SparseTensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i.clone(), c.ring_neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = SparseTensor::zeros(self.shape.clone());
        for (idx, coef) in &self.entries {
            out.insert_add(idx.clone(), coef.scale(s));
        }
        out
    }

    /// Tensor product; the result has the concatenated shape and one entry
    /// per pair of input entries.
    pub fn tensor_product(&self, rhs: &Self) -> Self {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&rhs.shape);
        let mut entries = BTreeMap::new();
        for (ia, ca) in &self.entries {
            for (ib, cb) in &rhs.entries {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                entries.insert(idx, ca.ring_mul(cb));
            }
        }
        SparseTensor { shape, entries }
    }

    /// Moves party `p` to position `sigma[p]`.
    pub fn permute_parties(&self, sigma: &[usize]) -> Result<Self> {
        let k = self.order();
        let mut seen = vec![false; k];
        if sigma.len() != k || sigma.iter().any(|&d| d >= k || std::mem::replace(&mut seen[d], true)) {
            return Err(Error::NotAPermutation(sigma.to_vec()));
        }
        let mut shape = vec![0; k];
        for (p, &d) in sigma.iter().zip(&self.shape) {
            shape[*p] = d;
        }
        let entries = self
            .entries
            .iter()
            .map(|(idx, c)| {
                let mut out = vec![0; k];
                for (p, &i) in sigma.iter().zip(idx) {
                    out[*p] = i;
                }
                (out, c.clone())
            })
            .collect();
        Ok(SparseTensor { shape, entries })
    }

    /// Applies one linear map per party: the multilinear action
    /// `(M_1 ⊗ … ⊗ M_k)·t`, exactly.
    pub fn apply_local_maps(&self, maps: &[LinearMap]) -> Result<Self> {
        if maps.len() != self.order() {
            return Err(Error::InvalidParameter(format!(
                "expected {} local maps, got {}",
                self.order(),
                maps.len()
            )));
        }
        for (p, m) in maps.iter().enumerate() {
            if m.cols() != self.shape[p] {
                return Err(Error::DimensionMismatch {
                    party: p,
                    expected: self.shape[p],
                    found: m.cols(),
                });
            }
        }
        let columns: Vec<Vec<Vec<(usize, Scalar)>>> =
            maps.iter().map(|m| m.columns()).collect();
        let shape: Vec<usize> = maps.iter().map(|m| m.rows()).collect();
        let mut out = SparseTensor::zeros(shape);
        let k = self.order();
        for (idx, coef) in &self.entries {
            // Cartesian product over the nonzero column images of each party.
            let images: Vec<&[(usize, Scalar)]> = (0..k)
                .map(|p| columns[p][idx[p]].as_slice())
                .collect();
            if images.iter().any(|im| im.is_empty()) {
                continue;
            }
            let mut pos = vec![0usize; k];
            loop {
                let mut target = Vec::with_capacity(k);
                let mut c = coef.clone();
                for p in 0..k {
                    let (row, s) = &images[p][pos[p]];
                    target.push(*row);
                    c = c.scale(s);
                }
                out.insert_add(target, c);
                // advance the mixed-radix counter
                let mut p = k;
                loop {
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                    pos[p] += 1;
                    if pos[p] < images[p].len() {
                        break;
                    }
                    pos[p] = 0;
                    if p == 0 {
                        p = usize::MAX;
                        break;
                    }
                }
                if p == usize::MAX {
                    break;
                }
            }
        }
        Ok(out)
    }
}

impl SparseTensor<Scalar> {
    /// Flattens along the bipartition `(parties, complement)` into a matrix.
    ///
    /// Rows are indexed by the mixed-radix composite over `parties` in
    /// ascending party order (row-major), columns likewise over the
    /// complement. Entries transfer bijectively.
    pub fn flatten(&self, parties: &[usize]) -> Result<LinearMap> {
        let k = self.order();
        let mut side = vec![false; k];
        for &p in parties {
            if p >= k {
                return Err(Error::InvalidBipartition(format!(
                    "party {p} out of range for order {k}"
                )));
            }
            if std::mem::replace(&mut side[p], true) {
                return Err(Error::InvalidBipartition(format!("party {p} repeated")));
            }
        }
        let rows_parties: Vec<usize> = (0..k).filter(|&p| side[p]).collect();
        let cols_parties: Vec<usize> = (0..k).filter(|&p| !side[p]).collect();
        if rows_parties.is_empty() || cols_parties.is_empty() {
            return Err(Error::InvalidBipartition(
                "bipartition side must be a nonempty proper subset".into(),
            ));
        }
        let row_dim: usize = rows_parties.iter().map(|&p| self.shape[p]).product();
        let col_dim: usize = cols_parties.iter().map(|&p| self.shape[p]).product();
        let mut m = LinearMap::new(row_dim, col_dim);
        for (idx, coef) in &self.entries {
            let row = rows_parties
                .iter()
                .fold(0, |acc, &p| acc * self.shape[p] + idx[p]);
            let col = cols_parties
                .iter()
                .fold(0, |acc, &p| acc * self.shape[p] + idx[p]);
            m.insert_add(row, col, coef.clone());
        }
        Ok(m)
    }

    /// Embeds exact coefficients as degree-0 polynomials.
    pub fn lift_eps(&self) -> SparseTensor<EpsScalar> {
        SparseTensor {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i.clone(), EpsScalar::from_scalar(c.clone())))
                .collect(),
        }
    }
}

impl SparseTensor<EpsScalar> {
    /// Extracts the degree-`h` coefficient slice as an exact tensor.
    pub fn eps_coefficient(&self, h: usize) -> SparseTensor<Scalar> {
        let mut out = SparseTensor::zeros(self.shape.clone());
        for (idx, coef) in &self.entries {
            out.insert_add(idx.clone(), coef.coefficient(h));
        }
        out
    }
}

impl<R: Ring> std::fmt::Debug for SparseTensor<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseTensor{:?} {{", self.shape)?;
        for (idx, c) in self.entries.iter().take(16) {
            write!(f, " {idx:?}: {c:?},")?;
        }
        if self.entries.len() > 16 {
            write!(f, " … ({} entries)", self.entries.len())?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(shape: Vec<usize>, idx: Vec<usize>) -> SparseTensor<Scalar> {
        SparseTensor::basis(shape, idx).unwrap()
    }

    #[test]
    fn add_identity_and_inverse() {
        let t = ket(vec![2, 2], vec![0, 0])
            .add(&ket(vec![2, 2], vec![1, 1]))
            .unwrap();
        let zero = SparseTensor::zeros(vec![2, 2]);
        assert_eq!(t.add(&zero).unwrap(), t);
        assert!(t.add(&t.neg()).unwrap().is_zero());
        assert_eq!(t.num_entries(), 2);
    }

    #[test]
    fn add_rejects_shape_mismatch() {
        let a = SparseTensor::<Scalar>::zeros(vec![2, 2]);
        let b = SparseTensor::<Scalar>::zeros(vec![2, 3]);
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_, _))));
    }

    #[test]
    fn product_with_empty_shape_unit() {
        let t = ket(vec![2, 3], vec![1, 2]);
        let unit = SparseTensor::basis(vec![], vec![]).unwrap();
        let p = t.tensor_product(&unit);
        assert_eq!(p.shape(), t.shape());
        assert_eq!(p, t);
    }

    #[test]
    fn permute_identity_and_swap() {
        let t = ket(vec![2, 2], vec![0, 1]);
        assert_eq!(t.permute_parties(&[0, 1]).unwrap(), t);
        let s = t.permute_parties(&[1, 0]).unwrap();
        assert_eq!(s, ket(vec![2, 2], vec![1, 0]));
        assert!(t.permute_parties(&[0, 0]).is_err());
        assert!(t.permute_parties(&[0]).is_err());
    }

    #[test]
    fn flatten_three_party_example() {
        // |000> + |111> flattened on parties {0,1}: 4x2 with entries (0,0),(3,1)
        let t = ket(vec![2, 2, 2], vec![0, 0, 0])
            .add(&ket(vec![2, 2, 2], vec![1, 1, 1]))
            .unwrap();
        let m = t.flatten(&[0, 1]).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert_eq!(m.get(0, 0), Some(&Scalar::one()));
        assert_eq!(m.get(3, 1), Some(&Scalar::one()));
        assert_eq!(m.num_entries(), 2);
        assert!(t.flatten(&[]).is_err());
        assert!(t.flatten(&[0, 1, 2]).is_err());
    }

    #[test]
    fn apply_local_maps_identity_and_zero() {
        let t = ket(vec![2, 2], vec![0, 1]);
        let id = LinearMap::identity(2);
        assert_eq!(t.apply_local_maps(&[id.clone(), id.clone()]).unwrap(), t);
        let z = LinearMap::new(2, 2);
        assert!(t.apply_local_maps(&[z, id]).unwrap().is_zero());
    }

    #[test]
    fn eps_slices() {
        let t = ket(vec![2], vec![0]);
        let eps_t = SparseTensor::from_entries(
            vec![2],
            vec![(vec![0], EpsScalar::monomial(Scalar::one(), 1))],
        )
        .unwrap();
        assert_eq!(eps_t.eps_coefficient(1), t);
        assert!(eps_t.eps_coefficient(0).is_zero());
    }

    #[test]
    fn out_of_bounds_rejected() {
        let r = SparseTensor::from_entries(vec![2, 2], vec![(vec![0, 2], Scalar::one())]);
        assert!(matches!(r, Err(Error::IndexOutOfBounds { .. })));
    }
}
