//! The kernel ideal of the r-fold multiplication and its nilpotency.
//!
//! For a model (ΛV, d) the kernel of μ_r: (ΛV)^{⊗r} → ΛV is generated by the
//! differences v(i) − v(i+1), where v(i) puts a generator in the i-th tensor
//! slot. For pure-odd models the underlying algebra is finite-dimensional, so
//! whether a power of that ideal vanishes is decidable by exact spans; one
//! vanishing power certifies the upper bound behind the pure-odd formula.

use crate::algebra::{
    exterior_algebra, ideal_span, tensor_power_with, Element, GradedAlgebra,
    TensorPowerAlgebra,
};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

use super::SullivanModel;

/// The generators v(i) − v(i+1) of ker μ_r inside a tensor power.
#[derive(Debug, Clone)]
pub struct KrIdeal {
    pub r: u32,
    pub generators: Vec<Element>,
}

/// The underlying graded algebra of a pure-odd model: the exterior algebra
/// on its generators, with the differential forgotten.
pub fn monomial_algebra(m: &SullivanModel) -> Result<GradedAlgebra> {
    if !m.is_pure_odd() {
        return Err(Error::Unsupported(
            "the underlying algebra is finite-dimensional only for pure-odd models; \
             even generators are refused rather than truncated"
                .into(),
        ));
    }
    let names: Vec<&str> = m.names().iter().map(String::as_str).collect();
    exterior_algebra(&names, m.degrees())
}

/// The tensor power of the underlying algebra together with the ideal
/// generators v(i) − v(i+1) for v in V and 1 ≤ i ≤ r−1.
pub fn kr_generators(
    m: &SullivanModel,
    r: u32,
    budget: &Budget,
) -> Result<(TensorPowerAlgebra, KrIdeal)> {
    if r < 2 {
        return Err(Error::Domain(format!("the kernel ideal needs r >= 2, got {r}")));
    }
    let base = monomial_algebra(m)?;
    let tensor = tensor_power_with(&base, r, budget)?;
    let mut generators = Vec::with_capacity(m.generator_count() * (r as usize - 1));
    for name in m.names() {
        let v = base
            .index_of_label(name)
            .expect("generator label exists in the monomial algebra");
        for position in 0..(r as usize - 1) {
            let left = tensor.basis_element(tensor.positioned(position, v))?;
            let right = tensor.basis_element(tensor.positioned(position + 1, v))?;
            generators.push(left.sub(&right)?);
        }
    }
    Ok((tensor, KrIdeal { r, generators }))
}

/// True iff every product of n+1 elements of the kernel ideal vanishes,
/// computed as the (n+1)-st power of the ideal's subspace span.
pub fn kr_power_vanishes(m: &SullivanModel, r: u32, n: usize) -> Result<bool> {
    kr_power_vanishes_with(m, r, n, &Budget::default())
}

pub fn kr_power_vanishes_with(
    m: &SullivanModel,
    r: u32,
    n: usize,
    budget: &Budget,
) -> Result<bool> {
    let (tensor, ideal) = kr_generators(m, r, budget)?;
    let rows: Vec<SparseVec> =
        ideal.generators.iter().map(|g| g.terms().clone()).collect();
    let span = ideal_span(&tensor, &rows);
    if span.is_zero() {
        return Ok(true);
    }
    let mut power = span.clone();
    for _ in 0..n {
        power = crate::algebra::span_products(&tensor, &power, &span);
        if power.is_zero() {
            return Ok(true);
        }
    }
    Ok(power.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tensor_mult_kernel;
    use crate::sullivan::fixtures::{odd_sphere_model, odd_witness_model};
    use crate::sullivan::parse_model;

    #[test]
    fn generator_counts_and_mu_vanishing() {
        let budget = Budget::default();
        let (tensor, ideal) = kr_generators(&odd_witness_model(), 2, &budget).unwrap();
        assert_eq!(ideal.generators.len(), 3);
        for g in &ideal.generators {
            assert!(tensor.product_map(g).unwrap().is_zero());
        }

        let (tensor, ideal) = kr_generators(&odd_sphere_model(), 3, &budget).unwrap();
        assert_eq!(ideal.generators.len(), 2);
        for g in &ideal.generators {
            assert!(tensor.product_map(g).unwrap().is_zero());
        }
    }

    #[test]
    fn the_two_slot_generators_are_the_expected_differences() {
        let budget = Budget::default();
        let m = odd_witness_model();
        let (tensor, ideal) = kr_generators(&m, 2, &budget).unwrap();
        let base = tensor.base().clone();
        for (g, name) in m.names().iter().enumerate() {
            let v = base.index_of_label(name).unwrap();
            let left = tensor.basis_element(tensor.positioned(0, v)).unwrap();
            let right = tensor.basis_element(tensor.positioned(1, v)).unwrap();
            assert_eq!(ideal.generators[g], left.sub(&right).unwrap());
        }
    }

    #[test]
    fn ideal_span_equals_the_multiplication_kernel() {
        // The ideal generated by the slot differences is exactly ker μ_r.
        let budget = Budget::default();
        for (model, r) in [
            (odd_sphere_model(), 2u32),
            (odd_sphere_model(), 3),
            (odd_witness_model(), 2),
        ] {
            let (tensor, ideal) = kr_generators(&model, r, &budget).unwrap();
            let rows: Vec<SparseVec> =
                ideal.generators.iter().map(|g| g.terms().clone()).collect();
            let span = ideal_span(&tensor, &rows);
            let kernel = tensor_mult_kernel(&tensor, &budget);
            assert_eq!(span, kernel, "model {:?}, r = {r}", model.names());
        }
    }

    #[test]
    fn nilpotency_certificates() {
        // The witness model has dim V = 3: K_2⁴ = 0 but K_2³ ≠ 0.
        let m = odd_witness_model();
        assert!(kr_power_vanishes(&m, 2, 3).unwrap());
        assert!(!kr_power_vanishes(&m, 2, 2).unwrap());

        // One odd generator: the single difference squares to zero.
        let sphere = odd_sphere_model();
        assert!(kr_power_vanishes(&sphere, 2, 1).unwrap());
        assert!(!kr_power_vanishes(&sphere, 2, 0).unwrap());
    }

    #[test]
    fn nilpotency_is_monotone_in_n() {
        let m = parse_model("gen x 3\ngen y 5\n").unwrap();
        let threshold = 2; // (r−1)·dim V for r = 2
        for n in 0..=4 {
            let vanished = kr_power_vanishes(&m, 2, n).unwrap();
            assert_eq!(vanished, n >= threshold, "n = {n}");
        }
    }

    #[test]
    fn even_generators_are_refused() {
        let m = parse_model("gen u 2\n").unwrap();
        let err = kr_power_vanishes(&m, 2, 1).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)), "{err}");
    }

    #[test]
    fn empty_model_has_zero_ideal() {
        let m = parse_model("").unwrap();
        assert!(kr_power_vanishes(&m, 2, 0).unwrap());
    }

    #[test]
    fn scale_guard_is_respected() {
        let budget = Budget { max_tensor_basis: 10, ..Budget::default() };
        let err = kr_power_vanishes_with(&odd_witness_model(), 2, 3, &budget).unwrap_err();
        assert!(matches!(err, Error::Resource(_)), "{err}");
    }
}
