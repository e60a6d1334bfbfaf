//! Exact rational linear algebra on sparse vectors.
//!
//! Everything downstream (multiplication kernels, cohomology, ideal powers)
//! reduces to spanning subspaces of ℚ^n and testing membership. Vectors are
//! sparse maps index → coefficient with no explicit zeros; subspaces keep a
//! reduced row-echelon basis so membership tests are a single reduction pass.

use std::collections::BTreeMap;

use num::BigRational;
use num::{One, Zero};

/// Exact scalar used everywhere in the crate. No floating point anywhere.
pub type Scalar = BigRational;

/// Sparse vector over ℚ: index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// `dst += c * src`, dropping entries that cancel to zero.
pub fn add_scaled(dst: &mut SparseVec, src: &SparseVec, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (&idx, coeff) in src {
        let entry = dst.entry(idx).or_insert_with(Scalar::zero);
        *entry += coeff * c;
        if entry.is_zero() {
            dst.remove(&idx);
        }
    }
}

pub fn scale(v: &mut SparseVec, c: &Scalar) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for coeff in v.values_mut() {
        *coeff *= c;
    }
}

/// Smallest index with a nonzero coefficient.
pub fn leading_index(v: &SparseVec) -> Option<usize> {
    v.keys().next().copied()
}

/// Row-reduced basis of a subspace of ℚ^dim.
///
/// Invariant: rows are in reduced row-echelon form — leading coefficients are
/// 1, pivot columns strictly increase, and each pivot column is zero in every
/// other row. There are no zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, rows: Vec::new() }
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::zero(ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Residual of `v` after eliminating against the basis.
    /// Zero result means `v` lies in the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.reduce_in_place(&mut w);
        w
    }

    fn reduce_in_place(&self, w: &mut SparseVec) {
        for row in &self.rows {
            let pivot = leading_index(row).expect("no zero rows");
            if let Some(c) = w.get(&pivot) {
                let c = -c.clone();
                add_scaled(w, row, &c);
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector, keeping the basis in reduced row-echelon form.
    /// Returns true when the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.keys().all(|&i| i < self.ambient_dim));
        let mut w = v;
        self.reduce_in_place(&mut w);
        let Some(pivot) = leading_index(&w) else {
            return false;
        };
        let inv = w[&pivot].clone().recip();
        scale(&mut w, &inv);
        // Back-eliminate the new pivot from the existing rows.
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot) {
                let c = -c.clone();
                add_scaled(row, &w, &c);
            }
        }
        let pos = self
            .rows
            .partition_point(|row| leading_index(row).unwrap() < pivot);
        self.rows.insert(pos, w);
        true
    }
}

/// Kernel of a linear map given by the images of the domain basis vectors.
///
/// `images[i]` is the image of e_i as a sparse vector over the codomain.
/// Returns a reduced row-echelon basis of the kernel inside ℚ^domain_dim.
pub fn kernel_of_map(domain_dim: usize, images: &[SparseVec]) -> Subspace {
    assert_eq!(images.len(), domain_dim);
    // Augmented elimination: image coordinates first, domain tracking shifted
    // past every image index. Rows whose image part cancels are kernel vectors.
    let offset = images
        .iter()
        .flat_map(|v| v.keys().copied())
        .max()
        .map_or(1, |m| m + 1);

    // pivot column (in image space) → eliminated row
    let mut pivots: Vec<SparseVec> = Vec::new();
    let mut kernel_rows: Vec<SparseVec> = Vec::new();

    for (i, image) in images.iter().enumerate() {
        let mut row: SparseVec = image.clone();
        row.insert(offset + i, Scalar::one());
        // Eliminate on the image part only.
        for p in &pivots {
            let pivot = leading_index(p).unwrap();
            if pivot >= offset {
                break;
            }
            if let Some(c) = row.get(&pivot) {
                let c = -c.clone();
                add_scaled(&mut row, p, &c);
            }
        }
        match leading_index(&row) {
            Some(lead) if lead < offset => {
                let inv = row[&lead].clone().recip();
                scale(&mut row, &inv);
                let pos = pivots.partition_point(|p| leading_index(p).unwrap() < lead);
                pivots.insert(pos, row);
            }
            Some(_) => {
                // Image part vanished: the tracking part is a kernel vector.
                let tracked: SparseVec = row
                    .into_iter()
                    .map(|(idx, c)| (idx - offset, c))
                    .collect();
                kernel_rows.push(tracked);
            }
            None => unreachable!("tracking coordinate cannot cancel"),
        }
    }

    Subspace::span(domain_dim, kernel_rows)
}
