//! Monomials and polynomials in a free graded-commutative algebra.
//!
//! A monomial is an exponent vector over the declared generators; odd-degree
//! generators never carry an exponent above 1. The canonical order within a
//! degree is descending lexicographic on exponent vectors, so the earliest
//! declared generator is the most significant — x comes before y, and x*z
//! before y*z.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::linalg::Scalar;

/// Exponent vector, one entry per generator in declaration order.
pub type Mono = Vec<u32>;

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreePoly {
    pub terms: BTreeMap<Mono, Scalar>,
}

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly::default()
    }

    pub fn monomial(mono: Mono) -> Self {
        FreePoly { terms: [(mono, Scalar::one())].into_iter().collect() }
    }

    pub fn one(generator_count: usize) -> Self {
        FreePoly::monomial(vec![0; generator_count])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Scalar) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FreePoly, c: &Scalar) {
        for (mono, coeff) in &other.terms {
            self.add_term(mono.clone(), coeff * c);
        }
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= c;
        }
    }
}

pub fn mono_degree(mono: &[u32], degrees: &[usize]) -> usize {
    mono.iter().zip(degrees).map(|(&e, &d)| e as usize * d).sum()
}

/// Product of two monomials with the word-merge sign. None when an odd
/// generator would be squared.
pub fn mono_mul(a: &[u32], b: &[u32], degrees: &[usize]) -> Option<(i8, Mono)> {
    let mut crossings = 0usize;
    for (g, &eb) in b.iter().enumerate() {
        if eb == 0 {
            continue;
        }
        if degrees[g] % 2 == 1 {
            if a[g] + eb >= 2 {
                return None;
            }
            // This letter of b crosses every odd letter of a above it.
            crossings += a
                .iter()
                .enumerate()
                .skip(g + 1)
                .filter(|&(h, &ea)| ea > 0 && degrees[h] % 2 == 1)
                .map(|(_, &ea)| ea as usize)
                .sum::<usize>();
        }
    }
    let product: Mono = a.iter().zip(b).map(|(&x, &y)| x + y).collect();
    Some((if crossings % 2 == 0 { 1 } else { -1 }, product))
}

pub fn poly_mul(a: &FreePoly, b: &FreePoly, degrees: &[usize]) -> FreePoly {
    let mut out = FreePoly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((sign, mono)) = mono_mul(ma, mb, degrees) {
                let mut coeff = ca * cb;
                if sign < 0 {
                    coeff = -coeff;
                }
                out.add_term(mono, coeff);
            }
        }
    }
    out
}

/// All monomials of one total degree, in canonical (descending lex) order.
pub fn monomials_of_degree(degrees: &[usize], target: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u32; degrees.len()];
    collect(degrees, 0, target, &mut current, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn collect(degrees: &[usize], g: usize, remaining: usize, current: &mut Mono, out: &mut Vec<Mono>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    if g == degrees.len() {
        return;
    }
    let max_exp = if degrees[g] % 2 == 1 { 1 } else { remaining / degrees[g] };
    for e in 0..=(max_exp as u32) {
        let used = e as usize * degrees[g];
        if used > remaining {
            break;
        }
        current[g] = e;
        collect(degrees, g + 1, remaining - used, current, out);
    }
    current[g] = 0;
}

pub fn mono_to_string(mono: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (g, &e) in mono.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[g].clone()),
            _ => parts.push(format!("{}^{e}", names[g])),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn poly_to_string(poly: &FreePoly, names: &[String]) -> String {
    if poly.is_zero() {
        return "0".into();
    }
    // Render in canonical order: descending lex on monomials.
    let mut monos: Vec<&Mono> = poly.terms.keys().collect();
    monos.sort_by(|a, b| b.cmp(a));
    let mut out = String::new();
    for (k, mono) in monos.iter().enumerate() {
        let coeff = &poly.terms[*mono];
        let body = mono_to_string(mono, names);
        let is_unit_mono = body == "1";
        if k == 0 {
            if *coeff == -Scalar::one() && !is_unit_mono {
                out.push('-');
            } else if *coeff != Scalar::one() || is_unit_mono {
                out.push_str(&format!("{coeff}"));
                if !is_unit_mono {
                    out.push('*');
                }
            }
        } else {
            let (sep, mag) = if coeff < &Scalar::zero() {
                (" - ", -coeff.clone())
            } else {
                (" + ", coeff.clone())
            };
            out.push_str(sep);
            if mag != Scalar::one() || is_unit_mono {
                out.push_str(&format!("{mag}"));
                if !is_unit_mono {
                    out.push('*');
                }
            }
        }
        if !is_unit_mono {
            out.push_str(&body);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn odd_squares_vanish() {
        let degrees = [3usize, 3, 5];
        assert!(mono_mul(&[1, 0, 0], &[1, 0, 0], &degrees).is_none());
        let (sign, mono) = mono_mul(&[1, 0, 0], &[0, 1, 0], &degrees).unwrap();
        assert_eq!((sign, mono), (1, vec![1, 1, 0]));
        // y·x = −x·y: the letter x of the right factor crosses y.
        let (sign, mono) = mono_mul(&[0, 1, 0], &[1, 0, 0], &degrees).unwrap();
        assert_eq!((sign, mono), (-1, vec![1, 1, 0]));
    }

    #[test]
    fn even_generators_commute_freely() {
        let degrees = [2usize, 3];
        let (sign, mono) = mono_mul(&[0, 1], &[2, 0], &degrees).unwrap();
        assert_eq!((sign, mono), (1, vec![2, 1]));
        let (sign, _) = mono_mul(&[2, 0], &[0, 1], &degrees).unwrap();
        assert_eq!(sign, 1);
    }

    #[test]
    fn triple_product_associativity() {
        let degrees = [3usize, 3, 5, 2];
        let monos = monomials_of_degree(&degrees, 8);
        let polys: Vec<FreePoly> = monos.into_iter().map(FreePoly::monomial).collect();
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    let left = poly_mul(&poly_mul(a, b, &degrees), c, &degrees);
                    let right = poly_mul(a, &poly_mul(b, c, &degrees), &degrees);
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn monomial_bases_are_canonical() {
        // Λ(x, y, z) with |x| = |y| = 3, |z| = 5.
        let degrees = [3usize, 3, 5];
        assert_eq!(monomials_of_degree(&degrees, 3), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(monomials_of_degree(&degrees, 8), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(monomials_of_degree(&degrees, 11), vec![vec![1, 1, 1]]);
        assert_eq!(monomials_of_degree(&degrees, 4), Vec::<Mono>::new());

        // Even generators repeat.
        let even = [2usize];
        assert_eq!(monomials_of_degree(&even, 6), vec![vec![3]]);
    }

    #[test]
    fn rendering() {
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let mut p = FreePoly::zero();
        p.add_term(vec![1, 1, 0], q(1));
        p.add_term(vec![0, 0, 1], q(-2));
        assert_eq!(poly_to_string(&p, &names), "x*y - 2*z");
        assert_eq!(poly_to_string(&FreePoly::zero(), &names), "0");
        let one = FreePoly::one(3);
        assert_eq!(poly_to_string(&one, &names), "1");
    }
}
