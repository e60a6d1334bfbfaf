//! Tensor powers with the Koszul sign rule.
//!
//! The basis of the r-th tensor power is the set of r-tuples of base basis
//! indices, graded by total degree. Products follow
//!   (x_1⊗…⊗x_r)(y_1⊗…⊗y_r) = (−1)^{Σ_{i>j} |x_i||y_j|} (x_1y_1 ⊗ … ⊗ x_ry_r),
//! which for r = 2 is the familiar (a⊗b)(c⊗d) = (−1)^{|b||c|}(ac⊗bd) and in
//! general is what composing adjacent transpositions yields.

use std::collections::BTreeMap;

use num::One;

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec};

use super::{Element, GradedAlgebra, GradedRing};

/// The r-th tensor power of a [`GradedAlgebra`]. Tuple index i encodes the
/// tuple of base indices in big-endian base-dim digits, so the canonical
/// order on tuples is plain index order.
#[derive(Debug, Clone)]
pub struct TensorPowerAlgebra {
    base: GradedAlgebra,
    r: u32,
    dim: usize,
    degrees: Vec<usize>,
    by_degree: BTreeMap<usize, Vec<usize>>,
    top: usize,
}

/// Builds the tensor power, refusing when the tuple basis would exceed the
/// default cap.
pub fn tensor_power(base: &GradedAlgebra, r: u32) -> Result<TensorPowerAlgebra> {
    tensor_power_with(base, r, &Budget::default())
}

pub fn tensor_power_with(
    base: &GradedAlgebra,
    r: u32,
    budget: &Budget,
) -> Result<TensorPowerAlgebra> {
    if r < 2 {
        return Err(Error::Domain(format!("tensor power needs r >= 2, got {r}")));
    }
    let dim = base
        .dim()
        .checked_pow(r)
        .filter(|&d| d <= budget.max_tensor_basis)
        .ok_or_else(|| {
            Error::Resource(format!(
                "tensor power basis {}^{} exceeds the cap of {} tuple elements",
                base.dim(),
                r,
                budget.max_tensor_basis
            ))
        })?;

    let mut degrees = Vec::with_capacity(dim);
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut tuple = vec![0usize; r as usize];
    for idx in 0..dim {
        decode(idx, base.dim(), &mut tuple);
        let d: usize = tuple.iter().map(|&k| base.degree(k)).sum();
        degrees.push(d);
        by_degree.entry(d).or_default().push(idx);
    }
    let top = degrees.iter().copied().max().unwrap_or(0);
    Ok(TensorPowerAlgebra { base: base.clone(), r, dim, degrees, by_degree, top })
}

fn decode(mut idx: usize, base_dim: usize, tuple: &mut [usize]) {
    for slot in tuple.iter_mut().rev() {
        *slot = idx % base_dim;
        idx /= base_dim;
    }
}

impl TensorPowerAlgebra {
    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        let mut tuple = vec![0usize; self.r as usize];
        decode(idx, self.base.dim(), &mut tuple);
        tuple
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.r as usize);
        tuple.iter().fold(0, |acc, &k| {
            debug_assert!(k < self.base.dim());
            acc * self.base.dim() + k
        })
    }

    /// Tuple basis index with `base_idx` in `position` (0-based) and the unit
    /// everywhere else: the element usually written b(position+1).
    pub fn positioned(&self, position: usize, base_idx: usize) -> usize {
        assert!(position < self.r as usize);
        let mut tuple = vec![self.base.unit_index(); self.r as usize];
        tuple[position] = base_idx;
        self.index_of(&tuple)
    }

    /// Image of a tuple basis element under the multiplication map to the
    /// base: the product of its components.
    pub fn product_map_basis(&self, idx: usize) -> SparseVec {
        let tuple = self.tuple_of(idx);
        let mut acc: SparseVec =
            [(self.base.unit_index(), Scalar::one())].into_iter().collect();
        for &k in &tuple {
            let mut next = SparseVec::new();
            for (&m, c) in &acc {
                self.base.mul_basis_scaled_into(m, k, c, &mut next);
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Multiplication map on elements: x_1⊗…⊗x_r ↦ x_1⋯x_r, extended linearly.
    pub fn product_map(&self, e: &Element) -> Result<Element> {
        if e.ambient_dim() != self.dim {
            return Err(Error::Input(format!(
                "element of ambient dimension {} used in a tensor power of dimension {}",
                e.ambient_dim(),
                self.dim
            )));
        }
        let mut out = SparseVec::new();
        for (&idx, c) in e.terms() {
            crate::linalg::add_scaled(&mut out, &self.product_map_basis(idx), c);
        }
        Element::from_terms(self.base.dim(), out)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.ambient_dim() != self.dim || b.ambient_dim() != self.dim {
            return Err(Error::Input(format!(
                "element of ambient dimension {} used in a tensor power of dimension {}",
                a.ambient_dim().max(b.ambient_dim()),
                self.dim
            )));
        }
        Element::from_terms(self.dim, self.multiply_raw(a.terms(), b.terms()))
    }

    pub fn basis_element(&self, idx: usize) -> Result<Element> {
        Element::basis(self.dim, idx)
    }

    pub fn label(&self, idx: usize) -> String {
        self.tuple_of(idx)
            .iter()
            .map(|&k| self.base.label(k).to_string())
            .collect::<Vec<_>>()
            .join("(x)")
    }
}

impl GradedRing for TensorPowerAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn degree(&self, idx: usize) -> usize {
        self.degrees[idx]
    }

    fn top_degree(&self) -> usize {
        self.top
    }

    fn degree_block(&self, d: usize) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    fn mul_basis_scaled_into(&self, i: usize, j: usize, c: &Scalar, out: &mut SparseVec) {
        let r = self.r as usize;
        let base_dim = self.base.dim();
        let mut s = vec![0usize; r];
        let mut t = vec![0usize; r];
        decode(i, base_dim, &mut s);
        decode(j, base_dim, &mut t);

        // Koszul sign: every y_j crosses every x_i with i > j.
        let mut crossings = 0usize;
        for (pos_i, &si) in s.iter().enumerate() {
            if self.base.degree(si) % 2 == 0 {
                continue;
            }
            for &tj in t.iter().take(pos_i) {
                crossings += self.base.degree(tj) % 2;
            }
        }
        let mut coeff = c.clone();
        if crossings % 2 == 1 {
            coeff = -coeff;
        }

        // Componentwise products, then the expansion of their tensor product.
        let components: Vec<&SparseVec> = (0..r)
            .map(|k| self.base.basis_product(s[k], t[k]))
            .collect();
        if components.iter().any(|p| p.is_empty()) {
            return;
        }
        expand_into(&components, base_dim, &coeff, out);
    }
}

/// Accumulates the expansion of c·(p_1 ⊗ … ⊗ p_r) over the tuple basis.
fn expand_into(components: &[&SparseVec], base_dim: usize, c: &Scalar, out: &mut SparseVec) {
    fn rec(
        components: &[&SparseVec],
        base_dim: usize,
        level: usize,
        idx: usize,
        coeff: Scalar,
        out: &mut SparseVec,
    ) {
        if level == components.len() {
            use num::Zero;
            let entry = out.entry(idx).or_insert_with(Scalar::zero);
            *entry += coeff;
            if entry.is_zero() {
                out.remove(&idx);
            }
            return;
        }
        for (&k, c) in components[level] {
            rec(components, base_dim, level + 1, idx * base_dim + k, &coeff * c, out);
        }
    }
    rec(components, base_dim, 0, 0, c.clone(), out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{even_sphere, odd_sphere, six_dim_ring};
    use crate::algebra::GradedAlgebra;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn odd_sphere_square_has_expected_degrees() {
        let t = tensor_power(&odd_sphere(), 2).unwrap();
        assert_eq!(t.dim(), 4);
        let mut degs: Vec<usize> = (0..4).map(|i| t.degree(i)).collect();
        degs.sort();
        assert_eq!(degs, vec![0, 3, 3, 6]);
    }

    #[test]
    fn koszul_sign_on_the_odd_square() {
        let t = tensor_power(&odd_sphere(), 2).unwrap();
        let x1 = t.basis_element(t.positioned(0, 1)).unwrap(); // x⊗1
        let x2 = t.basis_element(t.positioned(1, 1)).unwrap(); // 1⊗x
        let xx = t.basis_element(t.index_of(&[1, 1])).unwrap(); // x⊗x

        assert_eq!(t.multiply(&x1, &x2).unwrap(), xx);
        assert_eq!(t.multiply(&x2, &x1).unwrap(), xx.scale(&-q(1)));
        assert!(t.multiply(&x1, &x1).unwrap().is_zero());
    }

    #[test]
    fn tensor_cube_dimension() {
        let t = tensor_power(&six_dim_ring(), 3).unwrap();
        assert_eq!(t.dim(), 216);
    }

    #[test]
    fn cap_is_enforced() {
        let budget = Budget { max_tensor_basis: 100, ..Budget::default() };
        let err = tensor_power_with(&six_dim_ring(), 3, &budget).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn product_map_collapses_tuples() {
        let h = six_dim_ring();
        let t = tensor_power(&h, 2).unwrap();
        // μ(x ⊗ yz) = x·yz = xyz
        let e = t.basis_element(t.index_of(&[1, 4])).unwrap();
        let collapsed = t.product_map(&e).unwrap();
        assert_eq!(collapsed, h.basis_element(5).unwrap());
        // μ(v(1)) = v = μ(v(2))
        for idx in 1..h.dim() {
            let left = t.basis_element(t.positioned(0, idx)).unwrap();
            let right = t.basis_element(t.positioned(1, idx)).unwrap();
            assert_eq!(t.product_map(&left).unwrap(), h.basis_element(idx).unwrap());
            assert_eq!(t.product_map(&left).unwrap(), t.product_map(&right).unwrap());
        }
    }

    #[test]
    fn product_map_is_an_algebra_map() {
        let h = six_dim_ring();
        let t = tensor_power(&h, 2).unwrap();
        // μ(a·b) = μ(a)·μ(b) on a pair of sparse mixed elements.
        let a = t
            .basis_element(t.index_of(&[1, 0]))
            .unwrap()
            .add(&t.basis_element(t.index_of(&[0, 2])).unwrap().scale(&q(2)))
            .unwrap();
        let b = t
            .basis_element(t.index_of(&[0, 4]))
            .unwrap()
            .sub(&t.basis_element(t.index_of(&[3, 0])).unwrap())
            .unwrap();
        let lhs = t.product_map(&t.multiply(&a, &b).unwrap()).unwrap();
        let mu_a = t.product_map(&a).unwrap();
        let mu_b = t.product_map(&b).unwrap();
        let rhs = crate::algebra::multiply(&h, &mu_a, &mu_b).unwrap();
        assert_eq!(lhs, rhs);
    }

    /// The sign formula agrees with an explicitly tabulated tensor-square
    /// algebra, and that table passes full validation (commutativity and
    /// associativity included).
    #[test]
    fn sign_formula_matches_tabulated_product() {
        for base in [odd_sphere(), even_sphere(), six_dim_ring()] {
            let t = tensor_power(&base, 2).unwrap();
            let basis: Vec<(String, usize)> =
                (0..t.dim()).map(|i| (t.label(i), t.degree(i))).collect();
            let mut products = Vec::new();
            for i in 0..t.dim() {
                for j in 0..t.dim() {
                    let mut value = SparseVec::new();
                    t.mul_basis_scaled_into(i, j, &q(1), &mut value);
                    products.push(((i, j), value));
                }
            }
            let tabulated = GradedAlgebra::new(basis, products)
                .expect("tensor square must pass algebra validation");
            for i in 0..t.dim() {
                for j in 0..t.dim() {
                    let mut via_formula = SparseVec::new();
                    t.mul_basis_scaled_into(i, j, &q(1), &mut via_formula);
                    assert_eq!(&via_formula, tabulated.basis_product(i, j));
                }
            }
        }
    }

    #[test]
    fn triple_power_associativity_spot_checks() {
        let t = tensor_power(&odd_sphere(), 3).unwrap();
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                for k in 0..t.dim() {
                    let a = t.basis_element(i).unwrap();
                    let b = t.basis_element(j).unwrap();
                    let c = t.basis_element(k).unwrap();
                    let left = t.multiply(&t.multiply(&a, &b).unwrap(), &c).unwrap();
                    let right = t.multiply(&a, &t.multiply(&b, &c).unwrap()).unwrap();
                    assert_eq!(left, right, "triple ({i}, {j}, {k})");
                }
            }
        }
    }
}
