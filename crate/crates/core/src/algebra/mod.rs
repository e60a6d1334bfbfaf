//! Exact graded-commutative algebras over ℚ given by structure constants.
//!
//! An algebra is a homogeneous basis with a product table. Construction
//! validates every axiom — unit, degree-additivity, graded commutativity,
//! associativity — and names the offending pair or triple on failure. The
//! only invariant this module computes directly is the cup length; tensor
//! powers and zero-divisor cup lengths live in the sibling modules.

mod parse;
mod tensor;
mod zcl;

pub use parse::parse_algebra;
pub use tensor::{tensor_power, tensor_power_with, TensorPowerAlgebra};
pub use zcl::{
    ideal_power_nonzero, ideal_span, mult_kernel, mult_kernel_with, tensor_mult_kernel,
    zcl_r, zcl_r_with, zcl_superadditivity_check, zcl_superadditivity_check_with,
};
pub(crate) use zcl::span_products;

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Scalar, SparseVec};

/// Anything with a finite homogeneous basis and a bilinear product on it.
/// Shared by [`GradedAlgebra`] and [`TensorPowerAlgebra`] so the subspace
/// machinery can run over either.
pub trait GradedRing {
    fn dim(&self) -> usize;
    fn degree(&self, idx: usize) -> usize;
    fn top_degree(&self) -> usize;
    /// Basis indices of one degree slice (empty slice when none).
    fn degree_block(&self, d: usize) -> &[usize];
    /// `out += c · (b_i · b_j)`.
    fn mul_basis_scaled_into(&self, i: usize, j: usize, c: &Scalar, out: &mut SparseVec);

    fn multiply_raw(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, ca) in a {
            for (&j, cb) in b {
                let c = ca * cb;
                self.mul_basis_scaled_into(i, j, &c, &mut out);
            }
        }
        out
    }
}

/// Element of a specific algebra: sparse rational combination of its basis.
/// Carries the ambient dimension so cross-algebra mixups are caught.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    ambient_dim: usize,
    terms: SparseVec,
}

impl Element {
    pub fn zero(ambient_dim: usize) -> Self {
        Element { ambient_dim, terms: SparseVec::new() }
    }

    pub fn from_terms(ambient_dim: usize, terms: SparseVec) -> Result<Self> {
        if let Some(&idx) = terms.keys().find(|&&i| i >= ambient_dim) {
            return Err(Error::Input(format!(
                "term index {idx} outside ambient dimension {ambient_dim}"
            )));
        }
        Ok(Element { ambient_dim, terms })
    }

    pub fn basis(ambient_dim: usize, idx: usize) -> Result<Self> {
        Self::from_terms(ambient_dim, [(idx, Scalar::one())].into_iter().collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn terms(&self) -> &SparseVec {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Input("elements live in different algebras".into()));
        }
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &Scalar::one());
        Ok(Element { ambient_dim: self.ambient_dim, terms })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Input("elements live in different algebras".into()));
        }
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &-Scalar::one());
        Ok(Element { ambient_dim: self.ambient_dim, terms })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut terms = self.terms.clone();
        crate::linalg::scale(&mut terms, c);
        Element { ambient_dim: self.ambient_dim, terms }
    }
}

/// Finite-dimensional graded-commutative ℚ-algebra with explicit structure
/// constants. Valid by construction: see [`GradedAlgebra::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct GradedAlgebra {
    labels: Vec<String>,
    degrees: Vec<usize>,
    unit: usize,
    products: Vec<Vec<SparseVec>>,
    by_degree: BTreeMap<usize, Vec<usize>>,
    top: usize,
}

impl GradedAlgebra {
    /// Validated constructor.
    ///
    /// `products` lists basis products by index pair. Products of the unit
    /// are implied; for a pair given in one order only, the other order is
    /// filled in by graded commutativity. Missing non-unit pairs default to
    /// zero. Any violated axiom is reported with the witness pair or triple.
    pub fn new(
        basis: Vec<(String, usize)>,
        products: Vec<((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Construction("basis must be nonempty".into()));
        }
        let dim = basis.len();
        let labels: Vec<String> = basis.iter().map(|(l, _)| l.clone()).collect();
        let degrees: Vec<usize> = basis.iter().map(|&(_, d)| d).collect();
        {
            let mut seen = std::collections::BTreeSet::new();
            for l in &labels {
                if !seen.insert(l) {
                    return Err(Error::Construction(format!("duplicate basis label `{l}`")));
                }
            }
        }

        let zero_degree: Vec<usize> =
            (0..dim).filter(|&i| degrees[i] == 0).collect();
        let unit = match zero_degree.as_slice() {
            [u] => *u,
            [] => return Err(Error::Construction("no degree-0 basis element".into())),
            more => {
                return Err(Error::Construction(format!(
                    "degree-0 component must be one-dimensional, found basis elements {} and {}",
                    labels[more[0]], labels[more[1]]
                )))
            }
        };

        let mut table: Vec<Vec<Option<SparseVec>>> = vec![vec![None; dim]; dim];
        for ((i, j), value) in products {
            if i >= dim || j >= dim {
                return Err(Error::Construction(format!(
                    "product entry ({i}, {j}) outside basis of dimension {dim}"
                )));
            }
            if let Some(&idx) = value.keys().find(|&&k| k >= dim) {
                return Err(Error::Construction(format!(
                    "product of ({}, {}) references index {idx} outside the basis",
                    labels[i], labels[j]
                )));
            }
            if table[i][j].replace(value).is_some() {
                return Err(Error::Construction(format!(
                    "product of ({}, {}) given twice",
                    labels[i], labels[j]
                )));
            }
        }

        // Unit row and column are forced.
        for k in 0..dim {
            for (a, b) in [(unit, k), (k, unit)] {
                let expected: SparseVec = [(k, Scalar::one())].into_iter().collect();
                match &table[a][b] {
                    None => table[a][b] = Some(expected),
                    Some(given) if *given == expected => {}
                    Some(_) => {
                        return Err(Error::Construction(format!(
                            "unit law violated at pair ({}, {})",
                            labels[a], labels[b]
                        )))
                    }
                }
            }
        }

        // Graded commutativity determines each missing transpose and must
        // hold when both orders were given.
        for i in 0..dim {
            for j in 0..dim {
                if table[i][j].is_none() && table[j][i].is_none() {
                    table[i][j] = Some(SparseVec::new());
                    table[j][i] = Some(SparseVec::new());
                    continue;
                }
                if let (Some(fwd), maybe_back) = (table[i][j].clone(), table[j][i].clone()) {
                    let mut mirrored = fwd;
                    if degrees[i] % 2 == 1 && degrees[j] % 2 == 1 {
                        crate::linalg::scale(&mut mirrored, &-Scalar::one());
                    }
                    match maybe_back {
                        None => table[j][i] = Some(mirrored),
                        Some(back) if back == mirrored => {}
                        Some(_) => {
                            return Err(Error::Construction(format!(
                                "graded commutativity violated at pair ({}, {})",
                                labels[i], labels[j]
                            )))
                        }
                    }
                }
            }
        }

        let products: Vec<Vec<SparseVec>> = table
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect();

        let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &d) in degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        let top = degrees.iter().copied().max().unwrap_or(0);

        let alg = GradedAlgebra { labels, degrees, unit, products, by_degree, top };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        // Degree-additivity.
        for i in 0..dim {
            for j in 0..dim {
                let expected = self.degrees[i] + self.degrees[j];
                for (&k, _) in &self.products[i][j] {
                    if self.degrees[k] != expected {
                        return Err(Error::Construction(format!(
                            "product of ({}, {}) has a term {} of degree {} instead of {}",
                            self.labels[i], self.labels[j], self.labels[k], self.degrees[k],
                            expected
                        )));
                    }
                }
            }
        }
        // Odd squares must vanish (forced by graded commutativity over ℚ).
        for i in 0..dim {
            if self.degrees[i] % 2 == 1 && !self.products[i][i].is_empty() {
                return Err(Error::Construction(format!(
                    "graded commutativity violated at pair ({}, {}): odd square is nonzero",
                    self.labels[i], self.labels[i]
                )));
            }
        }
        // Associativity on every basis triple.
        for i in 0..dim {
            for j in 0..dim {
                let ij = &self.products[i][j];
                for k in 0..dim {
                    let mut left = SparseVec::new();
                    for (&m, c) in ij {
                        self.mul_basis_scaled_into(m, k, c, &mut left);
                    }
                    let mut right = SparseVec::new();
                    for (&m, c) in &self.products[j][k] {
                        self.mul_basis_scaled_into(i, m, c, &mut right);
                    }
                    if left != right {
                        return Err(Error::Construction(format!(
                            "associativity violated at triple ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    pub fn unit_element(&self) -> Element {
        Element::basis(self.dim(), self.unit).expect("unit index is valid")
    }

    pub fn basis_element(&self, idx: usize) -> Result<Element> {
        Element::basis(self.dim(), idx)
    }

    /// Degree of a homogeneous element; None for zero or mixed elements
    /// (mixed elements are legal but carry no degree).
    pub fn element_degree(&self, e: &Element) -> Option<usize> {
        let mut it = e.terms.keys();
        let first = self.degrees[*it.next()?];
        it.all(|&k| self.degrees[k] == first).then_some(first)
    }

    pub fn element_to_string(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&idx, coeff)) in e.terms.iter().enumerate() {
            let c = coeff.clone();
            if k == 0 {
                if c == -Scalar::one() {
                    out.push('-');
                } else if c != Scalar::one() {
                    out.push_str(&format!("{c}*"));
                }
            } else if c == -Scalar::one() {
                out.push_str(" - ");
            } else if c == Scalar::one() {
                out.push_str(" + ");
            } else if c < Scalar::zero() {
                out.push_str(&format!(" - {}*", -c.clone()));
            } else {
                out.push_str(&format!(" + {c}*"));
            }
            out.push_str(&self.labels[idx]);
        }
        out
    }
}

impl GradedRing for GradedAlgebra {
    fn dim(&self) -> usize {
        self.labels.len()
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
        add_scaled(out, &self.products[i][j], c);
    }
}

/// Same contract as [`GradedAlgebra::new`], under the operation name used
/// throughout the crate.
pub fn make_algebra(
    basis: Vec<(String, usize)>,
    products: Vec<((usize, usize), SparseVec)>,
) -> Result<GradedAlgebra> {
    GradedAlgebra::new(basis, products)
}

/// Bilinear product of two elements of `h`.
pub fn multiply(h: &GradedAlgebra, a: &Element, b: &Element) -> Result<Element> {
    if a.ambient_dim() != h.dim() || b.ambient_dim() != h.dim() {
        return Err(Error::Input(format!(
            "element of dimension-{} ambient used in a dimension-{} algebra",
            a.ambient_dim().max(b.ambient_dim()),
            h.dim()
        )));
    }
    Ok(Element { ambient_dim: h.dim(), terms: h.multiply_raw(a.terms(), b.terms()) })
}

/// Greatest n such that a product of n positive-degree elements is nonzero;
/// 0 for the trivial algebra. Equivalently the nilpotency exponent of the
/// augmentation ideal minus one.
pub fn cup_length(h: &GradedAlgebra) -> usize {
    let positive: Vec<SparseVec> = (0..h.dim())
        .filter(|&i| h.degree(i) > 0)
        .map(|i| [(i, Scalar::one())].into_iter().collect())
        .collect();
    if positive.is_empty() {
        return 0;
    }
    let ideal = crate::linalg::Subspace::span(h.dim(), positive.iter().cloned());
    let mut n = 1;
    let mut power = ideal.clone();
    loop {
        let next = zcl::span_products(h, &power, &ideal);
        if next.is_zero() {
            return n;
        }
        power = next;
        n += 1;
    }
}

/// Exterior algebra on `odd_degrees` generators (each of odd degree), used
/// in tests and as the underlying algebra of pure-odd free models. Basis is
/// indexed by subsets in (degree, canonical) order.
pub fn exterior_algebra(names: &[&str], odd_degrees: &[usize]) -> Result<GradedAlgebra> {
    assert_eq!(names.len(), odd_degrees.len());
    if odd_degrees.iter().any(|d| d % 2 == 0) {
        return Err(Error::Input("exterior_algebra expects odd degrees".into()));
    }
    let m = names.len();
    if m >= usize::BITS as usize {
        return Err(Error::Resource("too many exterior generators".into()));
    }
    let mut subsets: Vec<usize> = (0..(1usize << m)).collect();
    let degree_of = |s: usize| -> usize {
        (0..m).filter(|&g| s & (1 << g) != 0).map(|g| odd_degrees[g]).sum()
    };
    subsets.sort_by_key(|&s| (degree_of(s), s));
    let label_of = |s: usize| -> String {
        if s == 0 {
            return "1".into();
        }
        (0..m).filter(|&g| s & (1 << g) != 0).map(|g| names[g]).collect::<Vec<_>>().join("*")
    };
    let index: BTreeMap<usize, usize> =
        subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let basis: Vec<(String, usize)> =
        subsets.iter().map(|&s| (label_of(s), degree_of(s))).collect();

    let mut products = Vec::new();
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue; // repeated odd generator, product is zero
            }
            // Sign: letters of t cross the letters of s that sit above them.
            let mut crossings = 0usize;
            for g in 0..m {
                if t & (1 << g) != 0 {
                    crossings += (s >> (g + 1)).count_ones() as usize;
                }
            }
            let sign = if crossings % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let value: SparseVec = [(index[&(s | t)], sign)].into_iter().collect();
            products.push(((i, j), value));
        }
    }
    GradedAlgebra::new(basis, products)
}


#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::{even_sphere, odd_sphere, six_dim_ring};

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn odd_exterior_is_valid() {
        let h = odd_sphere();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.unit_index(), 0);
        assert!(h.basis_product(1, 1).is_empty());
    }

    #[test]
    fn six_dim_ring_is_valid_and_has_the_stated_products() {
        let h = six_dim_ring();
        let x = h.basis_element(1).unwrap();
        let y = h.basis_element(2).unwrap();
        let xz = h.basis_element(3).unwrap();
        let yz = h.basis_element(4).unwrap();
        let xyz = h.basis_element(5).unwrap();

        assert_eq!(multiply(&h, &x, &yz).unwrap(), xyz);
        assert_eq!(multiply(&h, &y, &xz).unwrap(), xyz.scale(&-q(1)));
        assert!(multiply(&h, &x, &y).unwrap().is_zero());
        assert!(multiply(&h, &x, &x).unwrap().is_zero());
        // Mirrored orientation carries the Koszul sign: yz·x = (−1)^{8·3}·xyz.
        assert_eq!(multiply(&h, &yz, &x).unwrap(), xyz);
    }

    #[test]
    fn unit_products_are_implied() {
        let h = six_dim_ring();
        let a = h.basis_element(3).unwrap();
        assert_eq!(multiply(&h, &h.unit_element(), &a).unwrap(), a);
        assert_eq!(multiply(&h, &a, &h.unit_element()).unwrap(), a);
    }

    #[test]
    fn degree_violations_are_named() {
        // x·x = x has degree 6 ≠ 3.
        let err = GradedAlgebra::new(
            vec![("1".into(), 0), ("x".into(), 3)],
            vec![((1, 1), [(1, q(1))].into_iter().collect())],
        )
        .unwrap_err();
        assert!(err.to_string().contains("(x, x)"), "{err}");
    }

    #[test]
    fn commutativity_violations_are_named() {
        // u·v and v·u both given, but without the even-degree symmetry.
        let err = GradedAlgebra::new(
            vec![("1".into(), 0), ("u".into(), 2), ("v".into(), 2), ("w".into(), 4)],
            vec![
                ((1, 2), [(3, q(1))].into_iter().collect()),
                ((2, 1), [(3, q(-1))].into_iter().collect()),
            ],
        )
        .unwrap_err();
        assert!(err.to_string().contains("commutativity"), "{err}");
    }

    #[test]
    fn associativity_violations_are_named() {
        // (u·u)·w = w·w = 0 while u·(u·w) = u·s = t.
        let err = GradedAlgebra::new(
            vec![
                ("1".into(), 0),
                ("u".into(), 2),
                ("w".into(), 4),
                ("s".into(), 6),
                ("t".into(), 8),
            ],
            vec![
                ((1, 1), [(2, q(1))].into_iter().collect()),
                ((1, 2), [(3, q(1))].into_iter().collect()),
                ((1, 3), [(4, q(1))].into_iter().collect()),
                ((2, 2), SparseVec::new()),
            ],
        )
        .unwrap_err();
        assert!(err.to_string().contains("associativity violated at triple (u, u, w)"), "{err}");
    }

    #[test]
    fn two_units_are_rejected() {
        let err = GradedAlgebra::new(
            vec![("1".into(), 0), ("e".into(), 0)],
            vec![],
        )
        .unwrap_err();
        assert!(err.to_string().contains("one-dimensional"), "{err}");
    }

    #[test]
    fn element_degree_flags_mixed_elements() {
        let h = six_dim_ring();
        let x = h.basis_element(1).unwrap();
        let xz = h.basis_element(3).unwrap();
        assert_eq!(h.element_degree(&x), Some(3));
        assert_eq!(h.element_degree(&x.add(&xz).unwrap()), None);
        assert_eq!(h.element_degree(&Element::zero(h.dim())), None);
    }

    #[test]
    fn ambient_mismatch_is_an_input_error() {
        let h = six_dim_ring();
        let other = odd_sphere();
        let a = other.basis_element(1).unwrap();
        let err = multiply(&h, &a, &a).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn cup_length_examples() {
        assert_eq!(cup_length(&odd_sphere()), 1);
        assert_eq!(cup_length(&even_sphere()), 1);
        assert_eq!(cup_length(&six_dim_ring()), 2);

        let trivial =
            GradedAlgebra::new(vec![("1".into(), 0)], vec![]).unwrap();
        assert_eq!(cup_length(&trivial), 0);
    }

    #[test]
    fn cup_length_of_exterior_algebras_is_the_generator_count() {
        // Torus-like rings: the top product of all generators survives.
        for m in 1..=4 {
            let names: Vec<String> = (0..m).map(|g| format!("t{g}")).collect();
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let degrees = vec![1usize; m];
            let h = exterior_algebra(&name_refs, &degrees).unwrap();
            assert_eq!(cup_length(&h), m, "m = {m}");
        }
    }

    #[test]
    fn exterior_algebra_signs() {
        let h = exterior_algebra(&["a", "b"], &[1, 1]).unwrap();
        let a = h.index_of_label("a").unwrap();
        let b = h.index_of_label("b").unwrap();
        let ab = h.index_of_label("a*b").unwrap();
        let ea = h.basis_element(a).unwrap();
        let eb = h.basis_element(b).unwrap();
        assert_eq!(multiply(&h, &ea, &eb).unwrap(), h.basis_element(ab).unwrap());
        assert_eq!(
            multiply(&h, &eb, &ea).unwrap(),
            h.basis_element(ab).unwrap().scale(&-Scalar::one())
        );
    }
}
