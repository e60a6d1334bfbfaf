//! Cohomology of a model and its ring structure on chosen representatives.
//!
//! Everything is degreewise linear algebra over the monomial bases: cocycles
//! are the kernel of d, coboundaries its image from one degree below, and
//! representatives are the first cocycles in canonical order that are
//! independent modulo coboundaries. Products of representatives are
//! multiplied out and re-expressed in the chosen basis; a verification pass
//! confirms the result does not depend on the representative choice.

use rayon::prelude::*;

use num::One;

use crate::algebra::GradedAlgebra;
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, kernel_of_map, leading_index, scale, Scalar, SparseVec, Subspace};

use super::free::{mono_to_string, monomials_of_degree, poly_mul, FreePoly, Mono};
use super::SullivanModel;

/// Betti numbers and chosen representative cocycles through one degree.
#[derive(Debug, Clone)]
pub struct Cohomology {
    truncation: usize,
    dims: Vec<usize>,
    representatives: Vec<Vec<FreePoly>>,
}

impl Cohomology {
    /// Largest degree the table covers.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn representatives(&self, degree: usize) -> &[FreePoly] {
        self.representatives.get(degree).map_or(&[], Vec::as_slice)
    }

    /// Σ (−1)^d dim H^d over the computed range.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, &dim)| if d % 2 == 0 { dim as i64 } else { -(dim as i64) })
            .sum()
    }
}

/// The cochain complex of a model through a fixed degree: monomial bases and
/// the matrices of d.
struct Complex {
    bases: Vec<Vec<Mono>>,
    /// images[d][k] = d(bases[d][k]) over positions in bases[d+1].
    images: Vec<Vec<SparseVec>>,
}

impl Complex {
    fn new(model: &SullivanModel, up_to: usize, budget: &Budget) -> Result<Self> {
        let bases: Vec<Vec<Mono>> = (0..=up_to + 1)
            .map(|d| monomials_of_degree(model.degrees(), d))
            .collect();
        for (d, basis) in bases.iter().enumerate() {
            if basis.len() > budget.max_tensor_basis {
                return Err(Error::Resource(format!(
                    "monomial basis of degree {d} has {} elements, over the cap of {}",
                    basis.len(),
                    budget.max_tensor_basis
                )));
            }
        }
        let image_block = |d: usize| -> Vec<SparseVec> {
            differential_block(model, &bases[d], &bases[d + 1])
        };
        let images: Vec<Vec<SparseVec>> = if budget.parallel {
            (0..=up_to).into_par_iter().map(image_block).collect()
        } else {
            (0..=up_to).map(image_block).collect()
        };
        Ok(Complex { bases, images })
    }

    fn basis(&self, d: usize) -> &[Mono] {
        self.bases.get(d).map_or(&[], Vec::as_slice)
    }

    fn cocycles(&self, d: usize) -> Subspace {
        kernel_of_map(self.bases[d].len(), &self.images[d])
    }

    fn coboundaries(&self, d: usize) -> Subspace {
        if d == 0 {
            return Subspace::zero(self.bases[0].len());
        }
        Subspace::span(self.bases[d].len(), self.images[d - 1].iter().cloned())
    }

    fn vec_to_poly(&self, d: usize, v: &SparseVec) -> FreePoly {
        let mut poly = FreePoly::zero();
        for (&pos, c) in v {
            poly.add_term(self.bases[d][pos].clone(), c.clone());
        }
        poly
    }

    fn poly_to_vec(&self, d: usize, poly: &FreePoly) -> SparseVec {
        let index: std::collections::HashMap<&Mono, usize> =
            self.bases[d].iter().enumerate().map(|(k, m)| (m, k)).collect();
        poly.terms
            .iter()
            .map(|(m, c)| (*index.get(m).expect("monomial of the right degree"), c.clone()))
            .collect()
    }
}

/// d as a matrix block: images of `domain` monomials over `codomain` positions.
fn differential_block(
    model: &SullivanModel,
    domain: &[Mono],
    codomain: &[Mono],
) -> Vec<SparseVec> {
    let index: std::collections::HashMap<&Mono, usize> =
        codomain.iter().enumerate().map(|(k, m)| (m, k)).collect();
    domain
        .iter()
        .map(|mono| {
            let image = model.apply_d(&FreePoly::monomial(mono.clone()));
            image
                .terms
                .iter()
                .map(|(m, c)| (*index.get(m).expect("d raises degree by one"), c.clone()))
                .collect()
        })
        .collect()
}

/// Betti numbers and representative cocycles for degrees 0..=up_to.
pub fn cohomology(model: &SullivanModel, up_to: usize) -> Result<Cohomology> {
    cohomology_with(model, up_to, &Budget::default())
}

pub fn cohomology_with(
    model: &SullivanModel,
    up_to: usize,
    budget: &Budget,
) -> Result<Cohomology> {
    let complex = Complex::new(model, up_to, budget)?;
    let mut dims = Vec::with_capacity(up_to + 1);
    let mut representatives = Vec::with_capacity(up_to + 1);
    for d in 0..=up_to {
        let (reps, dim) = choose_representatives(&complex, d);
        dims.push(dim);
        representatives.push(reps.into_iter().map(|v| complex.vec_to_poly(d, &v)).collect());
    }
    Ok(Cohomology { truncation: up_to, dims, representatives })
}

/// First-in-canonical-order cocycles that are independent modulo coboundaries.
fn choose_representatives(complex: &Complex, d: usize) -> (Vec<SparseVec>, usize) {
    let cocycles = complex.cocycles(d);
    let coboundaries = complex.coboundaries(d);
    let quotient_dim = cocycles.dim() - coboundaries.dim();
    let mut span = coboundaries;
    let mut reps = Vec::with_capacity(quotient_dim);
    for row in cocycles.rows() {
        if span.insert(row.clone()) {
            reps.push(row.clone());
        }
    }
    debug_assert_eq!(reps.len(), quotient_dim);
    (reps, quotient_dim)
}

/// Rewrites cochain vectors as combinations of chosen class representatives
/// modulo coboundaries.
struct ClassExpresser {
    rows: Vec<(SparseVec, SparseVec)>, // (value in RREF order, class coords)
}

impl ClassExpresser {
    fn new(reps: &[SparseVec], class_offset: usize, coboundaries: &Subspace) -> Self {
        let mut expresser = ClassExpresser { rows: Vec::new() };
        for (k, rep) in reps.iter().enumerate() {
            let coords: SparseVec =
                [(class_offset + k, Scalar::one())].into_iter().collect();
            expresser.insert(rep.clone(), coords);
        }
        for row in coboundaries.rows() {
            expresser.insert(row.clone(), SparseVec::new());
        }
        expresser
    }

    fn insert(&mut self, mut value: SparseVec, mut coords: SparseVec) {
        for (rv, rc) in &self.rows {
            let pivot = leading_index(rv).expect("no zero rows stored");
            if let Some(c) = value.get(&pivot) {
                let c = -c.clone();
                add_scaled(&mut value, rv, &c);
                add_scaled(&mut coords, rc, &c);
            }
        }
        let Some(pivot) = leading_index(&value) else {
            return; // dependent on earlier rows
        };
        let inv = value[&pivot].clone().recip();
        scale(&mut value, &inv);
        scale(&mut coords, &inv);
        let pos = self
            .rows
            .partition_point(|(rv, _)| leading_index(rv).unwrap() < pivot);
        self.rows.insert(pos, (value, coords));
    }

    /// Class coordinates of `v`; None when `v` is not in the span.
    fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut value = v.clone();
        let mut coords = SparseVec::new();
        for (rv, rc) in &self.rows {
            let pivot = leading_index(rv).expect("no zero rows stored");
            if let Some(c) = value.get(&pivot) {
                let c = c.clone();
                let neg = -c.clone();
                add_scaled(&mut value, rv, &neg);
                add_scaled(&mut coords, rc, &c);
            }
        }
        value.is_empty().then_some(coords)
    }
}

/// The cohomology ring on the chosen representatives, as a validated
/// [`GradedAlgebra`]. Classes are taken through degree `up_to`; a nonzero
/// product escaping that range raises `Error::Truncation` with the degree
/// the caller must extend to. For a pure-odd model, `up_to = total_degree()`
/// makes the result exact.
pub fn cohomology_ring(model: &SullivanModel, up_to: usize) -> Result<GradedAlgebra> {
    cohomology_ring_with(model, up_to, &Budget::default())
}

pub fn cohomology_ring_with(
    model: &SullivanModel,
    up_to: usize,
    budget: &Budget,
) -> Result<GradedAlgebra> {
    let complex = Complex::new(model, up_to, budget)?;

    // Classes in degree order; remember each degree's expresser.
    let mut labels: Vec<(String, usize)> = Vec::new();
    let mut reps: Vec<(usize, SparseVec)> = Vec::new(); // (degree, vector)
    let mut expressers: std::collections::BTreeMap<usize, ClassExpresser> = Default::default();
    let mut coboundary_pick: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    for d in 0..=up_to {
        let (chosen, _) = choose_representatives(&complex, d);
        let coboundaries = complex.coboundaries(d);
        if let Some(first) = coboundaries.rows().first() {
            coboundary_pick.insert(d, first.clone());
        }
        let class_offset = reps.len();
        expressers.insert(d, ClassExpresser::new(&chosen, class_offset, &coboundaries));
        for v in chosen {
            let lead = leading_index(&v).expect("representatives are nonzero");
            let label = mono_to_string(&complex.basis(d)[lead], model.names());
            labels.push((label, d));
            reps.push((d, v));
        }
    }

    let class_poly = |k: usize| -> FreePoly {
        let (d, v) = &reps[k];
        complex.vec_to_poly(*d, v)
    };

    // Multiply representatives and re-express every product.
    let mut products: Vec<((usize, usize), SparseVec)> = Vec::new();
    let mut required_degree: Option<usize> = None;
    for i in 0..reps.len() {
        for j in i..reps.len() {
            let s = reps[i].0 + reps[j].0;
            let product = poly_mul(&class_poly(i), &class_poly(j), model.degrees());
            if s <= up_to {
                let value = if product.is_zero() {
                    SparseVec::new()
                } else {
                    let vec = complex.poly_to_vec(s, &product);
                    expressers[&s]
                        .express(&vec)
                        .expect("a product of cocycles is a cocycle")
                };
                products.push(((i, j), value));
            } else if !product.is_zero() && !is_coboundary(model, s, &product, budget)? {
                required_degree = Some(required_degree.map_or(s, |r| r.max(s)));
            } else {
                products.push(((i, j), SparseVec::new()));
            }
        }
    }
    if let Some(required) = required_degree {
        return Err(Error::Truncation { computed: up_to, required });
    }

    // Verification pass: shifting a representative by a coboundary must not
    // change any product class. Only stored (i ≤ j) pairs are checked; the
    // swapped order differs by a fixed sign and adds nothing.
    let table: std::collections::BTreeMap<(usize, usize), &SparseVec> =
        products.iter().map(|((i, j), v)| ((*i, *j), v)).collect();
    for i in 0..reps.len() {
        let d_i = reps[i].0;
        let Some(shift) = coboundary_pick.get(&d_i) else { continue };
        let mut shifted = reps[i].1.clone();
        add_scaled(&mut shifted, shift, &Scalar::one());
        let alt = complex.vec_to_poly(d_i, &shifted);
        for j in i..reps.len() {
            let s = d_i + reps[j].0;
            if s > up_to {
                continue;
            }
            let expected = table[&(i, j)];
            let product = poly_mul(&alt, &class_poly(j), model.degrees());
            let value = if product.is_zero() {
                SparseVec::new()
            } else {
                let vec = complex.poly_to_vec(s, &product);
                expressers[&s].express(&vec).expect("cocycle product")
            };
            assert_eq!(
                &value, expected,
                "representative choice leaked into the product of classes {i} and {j}"
            );
        }
    }

    GradedAlgebra::new(labels, products)
}

/// True iff `poly` (homogeneous of degree s) is in the image of d.
fn is_coboundary(
    model: &SullivanModel,
    s: usize,
    poly: &FreePoly,
    budget: &Budget,
) -> Result<bool> {
    let below = monomials_of_degree(model.degrees(), s - 1);
    let here = monomials_of_degree(model.degrees(), s);
    if below.len().max(here.len()) > budget.max_tensor_basis {
        return Err(Error::Resource(format!(
            "monomial basis of degree {s} exceeds the cap of {}",
            budget.max_tensor_basis
        )));
    }
    let images = differential_block(model, &below, &here);
    let image_span = Subspace::span(here.len(), images.into_iter());
    let index: std::collections::HashMap<&Mono, usize> =
        here.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let vec: SparseVec = poly
        .terms
        .iter()
        .map(|(m, c)| (*index.get(m).expect("degree-s monomial"), c.clone()))
        .collect();
    Ok(image_span.contains(&vec))
}
