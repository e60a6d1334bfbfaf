//! Multiplication kernels, ideal powers and the zero-divisor cup-length.
//!
//! zcl_r is the greatest n such that n elements of ker(H^{⊗r} → H) have a
//! nonzero product. Over a field that existential is equivalent to the n-th
//! power of the kernel subspace being nonzero, so everything here is finite
//! linear algebra: spans of products, computed degree by degree.

use rayon::prelude::*;

use crate::config::Budget;
use crate::error::Result;
use crate::linalg::{kernel_of_map, SparseVec, Subspace};

use super::{GradedAlgebra, GradedRing, TensorPowerAlgebra};
use super::tensor::tensor_power_with;

/// Degree of a homogeneous sparse row; None for zero or mixed rows.
fn row_degree<A: GradedRing>(alg: &A, row: &SparseVec) -> Option<usize> {
    let mut it = row.keys();
    let first = alg.degree(*it.next()?);
    it.all(|&k| alg.degree(k) == first).then_some(first)
}

/// Span of all pairwise products of rows of `a` and `b`.
///
/// Products whose degree exceeds the top degree vanish and are skipped, and
/// no product is computed for a degree whose block is already saturated.
pub(crate) fn span_products<A: GradedRing>(alg: &A, a: &Subspace, b: &Subspace) -> Subspace {
    let top = alg.top_degree();
    let mut out = Subspace::zero(alg.dim());
    let mut block_dims: std::collections::BTreeMap<usize, usize> = Default::default();
    for ra in a.rows() {
        let da = row_degree(alg, ra);
        for rb in b.rows() {
            let target = match (da, row_degree(alg, rb)) {
                (Some(da), Some(db)) => {
                    let d = da + db;
                    if d > top {
                        continue;
                    }
                    if block_dims.get(&d).copied().unwrap_or(0) == alg.degree_block(d).len() {
                        continue;
                    }
                    Some(d)
                }
                _ => None,
            };
            let prod = alg.multiply_raw(ra, rb);
            if prod.is_empty() {
                continue;
            }
            if out.insert(prod) {
                if let Some(d) = target {
                    *block_dims.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// Exact kernel of the multiplication map of a tensor power, computed
/// degreewise. The result is a reduced row-echelon basis over the tuple
/// indices; for a connected base the degree-0 part is automatically zero.
pub fn tensor_mult_kernel(t: &TensorPowerAlgebra, budget: &Budget) -> Subspace {
    let degrees: Vec<usize> = {
        let mut ds: Vec<usize> = (0..=t.top_degree())
            .filter(|&d| !t.degree_block(d).is_empty())
            .collect();
        ds.sort();
        ds
    };

    let kernel_block = |&d: &usize| -> (usize, Vec<SparseVec>) {
        let block = t.degree_block(d);
        let images: Vec<SparseVec> =
            block.iter().map(|&idx| t.product_map_basis(idx)).collect();
        let kernel = kernel_of_map(block.len(), &images);
        let rows = kernel
            .rows()
            .iter()
            .map(|row| row.iter().map(|(&pos, c)| (block[pos], c.clone())).collect())
            .collect();
        (d, rows)
    };

    let blocks: Vec<(usize, Vec<SparseVec>)> = if budget.parallel {
        let mut blocks: Vec<_> = degrees.par_iter().map(kernel_block).collect();
        blocks.sort_by_key(|&(d, _)| d);
        blocks
    } else {
        degrees.iter().map(kernel_block).collect()
    };

    let mut out = Subspace::zero(t.dim());
    for (_, rows) in blocks {
        for row in rows {
            out.insert(row);
        }
    }
    out
}

/// Kernel of the r-fold multiplication H^{⊗r} → H.
pub fn mult_kernel(h: &GradedAlgebra, r: u32) -> Result<Subspace> {
    mult_kernel_with(h, r, &Budget::default())
}

pub fn mult_kernel_with(h: &GradedAlgebra, r: u32, budget: &Budget) -> Result<Subspace> {
    let t = tensor_power_with(h, r, budget)?;
    Ok(tensor_mult_kernel(&t, budget))
}

/// True iff some product of n elements of `k` is nonzero — equivalently,
/// iff the span of n-fold products of basis elements of `k` is nonzero.
pub fn ideal_power_nonzero<A: GradedRing>(alg: &A, k: &Subspace, n: usize) -> bool {
    assert!(n >= 1, "powers are indexed from 1");
    if k.is_zero() {
        return false;
    }
    let mut power = k.clone();
    for _ in 1..n {
        power = span_products(alg, &power, k);
        if power.is_zero() {
            return false;
        }
    }
    true
}

/// Span of the ideal generated by `generators`: all products g·w over basis
/// elements w, the unit included.
pub fn ideal_span<A: GradedRing>(alg: &A, generators: &[SparseVec]) -> Subspace {
    let top = alg.top_degree();
    let mut out = Subspace::zero(alg.dim());
    let mut block_dims: std::collections::BTreeMap<usize, usize> = Default::default();
    for g in generators {
        let dg = row_degree(alg, g);
        for w in 0..alg.dim() {
            let target = match dg {
                Some(dg) => {
                    let d = dg + alg.degree(w);
                    if d > top {
                        continue;
                    }
                    if block_dims.get(&d).copied().unwrap_or(0) == alg.degree_block(d).len() {
                        continue;
                    }
                    Some(d)
                }
                None => None,
            };
            let mut prod = SparseVec::new();
            for (&i, c) in g {
                alg.mul_basis_scaled_into(i, w, c, &mut prod);
            }
            if prod.is_empty() {
                continue;
            }
            if out.insert(prod) {
                if let Some(d) = target {
                    *block_dims.entry(d).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// The r-th zero-divisor cup-length of `h`: the greatest n with a nonzero
/// n-fold product inside ker(H^{⊗r} → H); 0 when the kernel is zero.
///
/// Terminates because kernel elements have positive degree, so n is bounded
/// by top degree over the least positive kernel degree.
pub fn zcl_r(h: &GradedAlgebra, r: u32) -> Result<usize> {
    zcl_r_with(h, r, &Budget::default())
}

pub fn zcl_r_with(h: &GradedAlgebra, r: u32, budget: &Budget) -> Result<usize> {
    let t = tensor_power_with(h, r, budget)?;
    let kernel = tensor_mult_kernel(&t, budget);
    if kernel.is_zero() {
        return Ok(0);
    }
    let mut n = 1;
    let mut power = kernel.clone();
    loop {
        let next = span_products(&t, &power, &kernel);
        if next.is_zero() {
            return Ok(n);
        }
        power = next;
        n += 1;
    }
}

/// Checks zcl_{r+1}(H) ≥ zcl_r(H) + cup_length(H). A false return means an
/// implementation bug, so callers surface it as a diagnostic.
pub fn zcl_superadditivity_check(h: &GradedAlgebra, r: u32) -> Result<bool> {
    zcl_superadditivity_check_with(h, r, &Budget::default())
}

pub fn zcl_superadditivity_check_with(h: &GradedAlgebra, r: u32, budget: &Budget) -> Result<bool> {
    let low = zcl_r_with(h, r, budget)?;
    let high = zcl_r_with(h, r + 1, budget)?;
    Ok(high >= low + super::cup_length(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{even_sphere, odd_sphere, six_dim_ring};
    use crate::algebra::tensor::tensor_power;
    use crate::linalg::Scalar;
    use num::One;

    fn unit_vec(idx: usize) -> SparseVec {
        [(idx, Scalar::one())].into_iter().collect()
    }

    #[test]
    fn odd_sphere_kernel_is_the_expected_span() {
        let h = odd_sphere();
        let t = tensor_power(&h, 2).unwrap();
        let k = mult_kernel(&h, 2).unwrap();
        assert_eq!(k.dim(), 2);

        // x⊗1 − 1⊗x and x⊗x span the kernel.
        let x1 = t.positioned(0, 1);
        let x2 = t.positioned(1, 1);
        let xx = t.index_of(&[1, 1]);
        let mut difference = unit_vec(x1);
        crate::linalg::add_scaled(&mut difference, &unit_vec(x2), &-Scalar::one());
        assert!(k.contains(&difference));
        assert!(k.contains(&unit_vec(xx)));
        assert!(!k.contains(&unit_vec(x1)));

        // Degree 0 slice of the kernel is zero: the unit tuple is not in it.
        assert!(!k.contains(&unit_vec(t.index_of(&[0, 0]))));
    }

    #[test]
    fn kernel_rank_nullity_degreewise() {
        let h = six_dim_ring();
        let t = tensor_power(&h, 2).unwrap();
        let k = tensor_mult_kernel(&t, &Budget::default());
        // Image of μ is all of H (h ↦ h⊗1), so the kernel has dim 36 − 6.
        assert_eq!(k.dim(), t.dim() - h.dim());

        // Degreewise: kernel dim + image dim = block dim for every degree.
        for d in 0..=t.top_degree() {
            let block = t.degree_block(d);
            if block.is_empty() {
                continue;
            }
            let images: Vec<SparseVec> =
                block.iter().map(|&i| t.product_map_basis(i)).collect();
            let image = Subspace::span(h.dim(), images.iter().cloned());
            let kernel_rows_in_d = k
                .rows()
                .iter()
                .filter(|row| row.keys().all(|&i| t.degree(i) == d))
                .count();
            assert_eq!(kernel_rows_in_d + image.dim(), block.len(), "degree {d}");
        }
    }

    #[test]
    fn parallel_kernel_matches_sequential() {
        let h = six_dim_ring();
        let t = tensor_power(&h, 2).unwrap();
        let sequential = tensor_mult_kernel(&t, &Budget::default());
        let parallel = tensor_mult_kernel(&t, &Budget::default().with_parallel(true));
        assert_eq!(sequential, parallel);
    }

    #[test]
    fn ideal_power_examples() {
        let h = odd_sphere();
        let t = tensor_power(&h, 2).unwrap();

        // Any nonzero subspace has a nonzero first power.
        let k = mult_kernel(&h, 2).unwrap();
        assert!(ideal_power_nonzero(&t, &k, 1));

        // (x⊗1 − 1⊗x)² = −x⊗x + x⊗x = 0.
        let mut difference = unit_vec(t.positioned(0, 1));
        crate::linalg::add_scaled(&mut difference, &unit_vec(t.positioned(1, 1)), &-Scalar::one());
        let span = Subspace::span(t.dim(), [difference]);
        assert!(!ideal_power_nonzero(&t, &span, 2));

        // Even analog: ū² = −2·u⊗u ≠ 0, ū³ = 0.
        let e = even_sphere();
        let te = tensor_power(&e, 2).unwrap();
        let mut ubar = unit_vec(te.positioned(0, 1));
        crate::linalg::add_scaled(&mut ubar, &unit_vec(te.positioned(1, 1)), &-Scalar::one());
        let span = Subspace::span(te.dim(), [ubar.clone()]);
        assert!(ideal_power_nonzero(&te, &span, 2));
        assert!(!ideal_power_nonzero(&te, &span, 3));

        // And the square really is −2·u⊗u.
        let prod = te.multiply_raw(&ubar, &ubar);
        let expected: SparseVec =
            [(te.index_of(&[1, 1]), -Scalar::from_integer(2.into()))].into_iter().collect();
        assert_eq!(prod, expected);
    }

    #[test]
    fn zcl_examples() {
        assert_eq!(zcl_r(&odd_sphere(), 2).unwrap(), 1);
        assert_eq!(zcl_r(&even_sphere(), 2).unwrap(), 2);
    }

    #[test]
    fn zcl_of_the_six_dim_ring_is_three() {
        // Pinned regression value, consistent with the bounds 1 ≤ zcl_2 ≤ 3:
        // (x⊗1−1⊗x)(y⊗1−1⊗y)((xz)⊗1−1⊗(xz)) = −xyz⊗x − x⊗xyz ≠ 0.
        assert_eq!(zcl_r(&six_dim_ring(), 2).unwrap(), 3);
    }

    #[test]
    fn zcl_of_trivial_kernel_is_zero() {
        let trivial = crate::algebra::GradedAlgebra::new(vec![("1".into(), 0)], vec![]).unwrap();
        assert_eq!(zcl_r(&trivial, 2).unwrap(), 0);
    }

    #[test]
    fn superadditivity_examples() {
        assert!(zcl_superadditivity_check(&odd_sphere(), 2).unwrap());
        assert!(zcl_superadditivity_check(&even_sphere(), 2).unwrap());
    }

    #[test]
    fn pruned_equals_unpruned_on_small_algebras() {
        // The degree-pruned power computation agrees with a plain spanning
        // computation that multiplies everything out.
        for h in [odd_sphere(), even_sphere()] {
            for r in 2..=3u32 {
                let t = tensor_power(&h, r).unwrap();
                let k = tensor_mult_kernel(&t, &Budget::default());
                let expected;
                let mut power = k.clone();
                let mut n = 1;
                loop {
                    // Unpruned next power.
                    let mut rows = Vec::new();
                    for ra in power.rows() {
                        for rb in k.rows() {
                            rows.push(t.multiply_raw(ra, rb));
                        }
                    }
                    let next = Subspace::span(t.dim(), rows);
                    if next.is_zero() {
                        expected = n;
                        break;
                    }
                    power = next;
                    n += 1;
                }
                assert_eq!(zcl_r(&h, r).unwrap(), expected, "algebra dim {}, r={r}", h.dim());
            }
        }
    }
}
