//! Finitely generated free graded-commutative models with a differential.
//!
//! A model is a list of generators of degree ≥ 2 with a degree +1 derivation
//! d. Construction validates that every differential has the right degree,
//! contains no squared odd generator, and satisfies d∘d = 0 on each generator
//! (which propagates to the whole algebra). Cohomology, kernel ideals and the
//! pure-odd formulas build on this.

pub mod bounds;
pub mod cohomology;
pub mod free;
mod kr;

pub use bounds::{mtc_bounds, MtcBounds};
pub use cohomology::{
    cohomology, cohomology_ring, cohomology_ring_with, cohomology_with, Cohomology,
};
pub use kr::{kr_generators, kr_power_vanishes, kr_power_vanishes_with, monomial_algebra, KrIdeal};

use num::One;

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::poly_text::parse_expression;

use free::{mono_degree, poly_mul, poly_to_string, FreePoly};

/// A free graded-commutative model (ΛV, d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    names: Vec<String>,
    degrees: Vec<usize>,
    differentials: Vec<FreePoly>,
}

impl SullivanModel {
    /// Validated constructor. `differentials` pairs generator names with
    /// their images; omitted generators get d = 0.
    pub fn new(
        generators: Vec<(String, usize)>,
        differentials: Vec<(String, FreePoly)>,
    ) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
        let degrees: Vec<usize> = generators.iter().map(|&(_, d)| d).collect();
        {
            let mut seen = std::collections::BTreeSet::new();
            for (i, n) in names.iter().enumerate() {
                if !seen.insert(n) {
                    return Err(Error::Construction(format!("duplicate generator `{n}`")));
                }
                if degrees[i] < 2 {
                    return Err(Error::Construction(format!(
                        "generator `{n}` has degree {}; degrees must be at least 2",
                        degrees[i]
                    )));
                }
            }
        }
        let mut diffs = vec![FreePoly::zero(); names.len()];
        for (name, poly) in differentials {
            let idx = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| Error::Construction(format!("unknown generator `{name}`")))?;
            if !diffs[idx].is_zero() {
                return Err(Error::Construction(format!(
                    "differential of `{name}` given twice"
                )));
            }
            // Differentials parsed before every generator was declared carry
            // short exponent vectors; pad them to the full generator count.
            let mut padded = FreePoly::zero();
            for (mono, coeff) in &poly.terms {
                if mono.len() > names.len() {
                    return Err(Error::Construction(format!(
                        "differential of `{name}` has a malformed monomial"
                    )));
                }
                let mut full = mono.clone();
                full.resize(names.len(), 0);
                padded.add_term(full, coeff.clone());
            }
            diffs[idx] = padded;
        }
        let model = SullivanModel { names, degrees, differentials: diffs };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        for (g, d_g) in self.differentials.iter().enumerate() {
            let expected = self.degrees[g] + 1;
            for mono in d_g.terms.keys() {
                if mono.len() != self.generator_count() {
                    return Err(Error::Construction(format!(
                        "differential of `{}` has a malformed monomial",
                        self.names[g]
                    )));
                }
                let found = mono_degree(mono, &self.degrees);
                if found != expected {
                    return Err(Error::Construction(format!(
                        "differential of `{}` must have degree {expected}, found a term of degree {found}",
                        self.names[g]
                    )));
                }
            }
        }
        // d² = 0 on generators extends to the whole algebra.
        for g in 0..self.generator_count() {
            let residue = self.apply_d(&self.differentials[g]);
            if !residue.is_zero() {
                return Err(Error::Construction(format!(
                    "d² is nonzero on generator `{}`: d(d({})) = {}",
                    self.names[g],
                    self.names[g],
                    poly_to_string(&residue, &self.names)
                )));
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn differential(&self, g: usize) -> &FreePoly {
        &self.differentials[g]
    }

    /// Sum of all generator degrees: the top degree of the underlying algebra
    /// when the model is pure-odd.
    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn is_pure_odd(&self) -> bool {
        self.degrees.iter().all(|d| d % 2 == 1)
    }

    /// Minimal means no linear part: every differential lands in the square
    /// of the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d_g| {
            d_g.terms
                .keys()
                .all(|mono| mono.iter().map(|&e| e as usize).sum::<usize>() != 1)
        })
    }

    /// The derivation extended by the graded Leibniz rule:
    /// d(ab) = d(a)b + (−1)^{|a|} a d(b), d(1) = 0.
    pub fn apply_d(&self, e: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero();
        for (mono, coeff) in &e.terms {
            out.add_scaled(&self.d_mono(mono), coeff);
        }
        out
    }

    fn d_mono(&self, mono: &[u32]) -> FreePoly {
        // First generator with a nonzero exponent; d(1) = 0.
        let Some(g) = mono.iter().position(|&e| e > 0) else {
            return FreePoly::zero();
        };
        let e = mono[g];
        let mut rest = mono.to_vec();
        rest[g] = 0;

        let mut out = FreePoly::zero();
        // d(g^e) · rest, with d(g^e) = e·g^{e−1}·d(g).
        if !self.differentials[g].is_zero() {
            let mut g_power = vec![0u32; mono.len()];
            g_power[g] = e - 1;
            let mut head = poly_mul(
                &FreePoly::monomial(g_power),
                &self.differentials[g],
                &self.degrees,
            );
            head.scale(&Scalar::from_integer(e.into()));
            let head = poly_mul(&head, &FreePoly::monomial(rest.clone()), &self.degrees);
            out.add_scaled(&head, &Scalar::one());
        }
        // (−1)^{|g^e|} g^e · d(rest).
        if rest.iter().any(|&x| x > 0) {
            let d_rest = self.d_mono(&rest);
            if !d_rest.is_zero() {
                let mut g_power = vec![0u32; mono.len()];
                g_power[g] = e;
                let tail = poly_mul(&FreePoly::monomial(g_power), &d_rest, &self.degrees);
                let sign = if (e as usize * self.degrees[g]) % 2 == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                out.add_scaled(&tail, &sign);
            }
        }
        out
    }

    /// Parses a polynomial in the generators, e.g. `x*y - 1/2*z`.
    pub fn parse_poly(&self, text: &str) -> Result<FreePoly> {
        poly_from_terms(text, 1, 0, &self.names, &self.degrees)
    }

    pub fn poly_to_string(&self, poly: &FreePoly) -> String {
        poly_to_string(poly, &self.names)
    }
}

fn poly_from_terms(
    text: &str,
    line: usize,
    col_offset: usize,
    names: &[String],
    degrees: &[usize],
) -> Result<FreePoly> {
    let mut out = FreePoly::zero();
    for term in parse_expression(text, line, col_offset)? {
        let mut mono = vec![0u32; names.len()];
        for factor in &term.factors {
            let g = names.iter().position(|n| n == factor).ok_or_else(|| Error::ParseAt {
                line,
                col: col_offset + term.col,
                msg: format!("unknown generator `{factor}`"),
            })?;
            if degrees[g] % 2 == 1 && mono[g] >= 1 {
                return Err(Error::ParseAt {
                    line,
                    col: col_offset + term.col,
                    msg: format!("odd generator `{factor}` squared"),
                });
            }
            mono[g] += 1;
        }
        // The written factor order is normalized to the canonical word order;
        // track the sign of that permutation over the odd letters.
        let mut sign = 1i8;
        let mut seen_odd: Vec<usize> = Vec::new();
        for factor in &term.factors {
            let g = names.iter().position(|n| n == factor).unwrap();
            if degrees[g] % 2 == 1 {
                sign *= if seen_odd.iter().filter(|&&h| h > g).count() % 2 == 1 {
                    -1
                } else {
                    1
                };
                seen_odd.push(g);
            }
        }
        let mut coeff = term.coeff;
        if sign < 0 {
            coeff = -coeff;
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

/// Parses the model file format: `gen <name> <degree>` and
/// `d <name> = <polynomial>` lines; omitted differentials are zero.
/// `#` comments and blank lines are skipped.
pub fn parse_model(text: &str) -> Result<SullivanModel> {
    let mut generators: Vec<(String, usize)> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut degrees: Vec<usize> = Vec::new();
    let mut differentials: Vec<(String, FreePoly)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("gen ") {
            let mut tokens = rest.split_whitespace();
            let name = tokens
                .next()
                .ok_or_else(|| err("generator line needs a name".into()))?
                .to_string();
            if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(err(format!("`{name}` is not a valid generator name")));
            }
            let degree: usize = tokens
                .next()
                .ok_or_else(|| err("generator line needs a degree".into()))?
                .parse()
                .map_err(|_| err("degree is not a number".into()))?;
            if tokens.next().is_some() {
                return Err(err("trailing tokens on generator line".into()));
            }
            generators.push((name.clone(), degree));
            names.push(name);
            degrees.push(degree);
        } else if let Some(rest) = line.strip_prefix("d ") {
            let (head, expr) = rest
                .split_once('=')
                .ok_or_else(|| err("differential line needs `= <polynomial>`".into()))?;
            let name = head.trim().to_string();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err("differential line takes exactly one generator name".into()));
            }
            if !names.contains(&name) {
                return Err(err(format!("unknown generator `{name}`")));
            }
            let col_offset = raw.len() - raw.trim_start().len() + (line.len() - expr.len());
            let poly =
                poly_from_terms(expr.trim_end(), line_no, col_offset, &names, &degrees)?;
            differentials.push((name, poly));
        } else {
            let tag = line.split_whitespace().next().unwrap_or("");
            return Err(err(format!("unknown line tag `{tag}`")));
        }
    }

    SullivanModel::new(generators, differentials)
}

/// cat of a pure-odd minimal model: the number of generators.
pub fn cat_pure_odd(m: &SullivanModel) -> Result<usize> {
    if !m.is_pure_odd() {
        return Err(Error::Domain(
            "category formula needs a pure-odd model (all generator degrees odd)".into(),
        ));
    }
    if !m.is_minimal() {
        return Err(Error::Domain(
            "category formula needs a minimal model (no linear differential terms)".into(),
        ));
    }
    Ok(m.generator_count())
}

/// TC_r = MTC_r = (r−1)·cat for a pure-odd minimal model.
pub fn tc_mtc_pure_odd(m: &SullivanModel, r: u32) -> Result<usize> {
    if r < 2 {
        return Err(Error::Domain(format!("topological complexity needs r >= 2, got {r}")));
    }
    Ok((r as usize - 1) * cat_pure_odd(m)?)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Λ(x, y, z), |x| = |y| = 3, |z| = 5, dz = xy.
    pub fn odd_witness_model() -> SullivanModel {
        parse_model("gen x 3\ngen y 3\ngen z 5\nd z = x*y\n").unwrap()
    }

    /// Λ(x), |x| = 3.
    pub fn odd_sphere_model() -> SullivanModel {
        parse_model("gen x 3\n").unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::{odd_sphere_model, odd_witness_model};

    #[test]
    fn parse_the_odd_witness_model() {
        let m = odd_witness_model();
        assert_eq!(m.generator_count(), 3);
        assert_eq!(m.degrees(), &[3, 3, 5]);
        assert!(m.differential(0).is_zero());
        assert!(m.differential(1).is_zero());
        assert_eq!(m.poly_to_string(m.differential(2)), "x*y");
    }

    #[test]
    fn implicit_zero_differential() {
        let m = odd_sphere_model();
        assert_eq!(m.generator_count(), 1);
        assert!(m.differential(0).is_zero());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = parse_model("gen z 5\nd z = z\n").unwrap_err();
        assert!(err.to_string().contains("degree 6"), "{err}");
    }

    #[test]
    fn d_squared_must_vanish() {
        // d(t) = u·v with d(v) = u², so d²(t) = u³ ≠ 0.
        let text = "gen u 2\ngen v 3\ngen t 4\nd v = u*u\nd t = u*v\n";
        let err = parse_model(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("d²") && msg.contains("`t`"), "{msg}");
    }

    #[test]
    fn odd_square_in_input_is_rejected() {
        let err = parse_model("gen x 3\ngen w 6\nd w = x*x\n").unwrap_err();
        assert!(err.to_string().contains("squared"), "{err}");
    }

    #[test]
    fn degree_one_generators_are_rejected() {
        let err = parse_model("gen x 1\n").unwrap_err();
        assert!(err.to_string().contains("at least 2"), "{err}");
    }

    #[test]
    fn apply_d_examples() {
        let m = odd_witness_model();
        // d(z) = x·y
        let z = m.parse_poly("z").unwrap();
        assert_eq!(m.apply_d(&z), m.parse_poly("x*y").unwrap());
        // d(1) = 0
        let one = m.parse_poly("1").unwrap();
        assert!(m.apply_d(&one).is_zero());
        // d(xz) = −x·(xy) = 0
        let xz = m.parse_poly("x*z").unwrap();
        assert!(m.apply_d(&xz).is_zero());
        // d(yz) = 0, d(xyz) = 0, d(xy) = 0
        for poly in ["y*z", "x*y*z", "x*y"] {
            assert!(m.apply_d(&m.parse_poly(poly).unwrap()).is_zero(), "{poly}");
        }
    }

    #[test]
    fn leibniz_rule_on_products() {
        // d(ab) = d(a)b + (−1)^{|a|} a d(b) on a model with even generators.
        let m = parse_model("gen u 2\ngen v 3\nd v = u*u\n").unwrap();
        let cases = [
            ("u", "v"),
            ("v", "u"),
            ("u*u", "v"),
            ("u*v", "u"),
        ];
        for (a_text, b_text) in cases {
            let a = m.parse_poly(a_text).unwrap();
            let b = m.parse_poly(b_text).unwrap();
            let ab = poly_mul(&a, &b, m.degrees());
            let lhs = m.apply_d(&ab);

            let deg_a = mono_degree(a.terms.keys().next().unwrap(), m.degrees());
            let mut rhs = poly_mul(&m.apply_d(&a), &b, m.degrees());
            let signed = {
                let mut t = poly_mul(&a, &m.apply_d(&b), m.degrees());
                if deg_a % 2 == 1 {
                    t.scale(&-Scalar::one());
                }
                t
            };
            rhs.add_scaled(&signed, &Scalar::one());
            assert_eq!(lhs, rhs, "({a_text})·({b_text})");
        }
    }

    #[test]
    fn written_factor_order_is_normalized() {
        let m = odd_witness_model();
        // y*x = −x*y.
        let yx = m.parse_poly("y*x").unwrap();
        let xy = m.parse_poly("x*y").unwrap();
        let mut negated = xy.clone();
        negated.scale(&-Scalar::one());
        assert_eq!(yx, negated);
    }

    #[test]
    fn pure_odd_and_minimality() {
        assert!(odd_witness_model().is_pure_odd());
        assert!(odd_witness_model().is_minimal());
        assert!(odd_sphere_model().is_pure_odd());
        assert!(parse_model("").unwrap().is_pure_odd());

        let even = parse_model("gen u 2\n").unwrap();
        assert!(!even.is_pure_odd());

        // dv = w is a linear differential: valid but not minimal.
        let non_minimal = parse_model("gen v 3\ngen w 4\nd v = w\n").unwrap();
        assert!(!non_minimal.is_minimal());
    }

    #[test]
    fn cat_and_tc_formulas() {
        assert_eq!(cat_pure_odd(&odd_witness_model()).unwrap(), 3);
        assert_eq!(cat_pure_odd(&odd_sphere_model()).unwrap(), 1);
        let five = parse_model("gen a 3\ngen b 3\ngen c 3\ngen d 5\ngen e 5\n").unwrap();
        assert_eq!(cat_pure_odd(&five).unwrap(), 5);

        assert_eq!(tc_mtc_pure_odd(&odd_witness_model(), 2).unwrap(), 3);
        assert_eq!(tc_mtc_pure_odd(&odd_witness_model(), 5).unwrap(), 12);
        assert_eq!(tc_mtc_pure_odd(&odd_sphere_model(), 4).unwrap(), 3);

        let even = parse_model("gen u 2\n").unwrap();
        assert!(cat_pure_odd(&even).is_err());
        assert!(tc_mtc_pure_odd(&odd_witness_model(), 1).is_err());
    }
}
