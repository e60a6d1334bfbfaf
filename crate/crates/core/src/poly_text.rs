//! Shared text grammar for linear combinations and polynomials.
//!
//! Terms are separated by `+`/`-`; each term is an optional rational
//! coefficient like `3` or `-1/2` joined by `*` to names, e.g. `-1/2*x*y`.
//! Juxtaposition (`2x`, `xy`) is not allowed. Both the algebra file format
//! and the model file format parse expressions through this module.

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};

/// One parsed term: coefficient, named factors in written order, and the
/// 1-based column where the term starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub factors: Vec<String>,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numerator: BigInt = num_text.parse().ok()?;
    let denominator: BigInt = den_text.parse().ok()?;
    if denominator == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(numerator, denominator))
}

/// Parses an expression into terms. `line` and `col_offset` locate the text
/// inside its file so errors carry absolute positions.
pub fn parse_expression(text: &str, line: usize, col_offset: usize) -> Result<Vec<Term>> {
    let err = |col: usize, msg: String| Error::ParseAt { line, col: col_offset + col, msg };
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    let mut terms = Vec::new();
    let mut i = 0usize;

    let skip_ws = |i: &mut usize| {
        while *i < n && chars[*i].is_whitespace() {
            *i += 1;
        }
    };

    skip_ws(&mut i);
    if i == n {
        return Err(err(1, "empty expression".into()));
    }
    loop {
        // Optional sign in front of the term.
        let mut negative = false;
        if chars[i] == '+' || chars[i] == '-' {
            negative = chars[i] == '-';
            i += 1;
            skip_ws(&mut i);
            if i == n {
                return Err(err(i, "dangling sign at end of expression".into()));
            }
            if chars[i] == '+' || chars[i] == '-' {
                return Err(err(i + 1, "consecutive signs".into()));
            }
        }
        let term_start = i;
        while i < n && chars[i] != '+' && chars[i] != '-' {
            i += 1;
        }
        let chunk: String = chars[term_start..i].iter().collect();
        let term_col = term_start + 1;
        terms.push(parse_term(chunk.trim_end(), negative, term_col, &err)?);
        if i == n {
            break;
        }
    }
    Ok(terms)
}

fn parse_term(
    chunk: &str,
    negative: bool,
    col: usize,
    err: &impl Fn(usize, String) -> Error,
) -> Result<Term> {
    if chunk.is_empty() {
        return Err(err(col, "empty term".into()));
    }
    let mut coeff = BigRational::one();
    let mut factors = Vec::new();
    let mut factor_col = col;
    for factor in chunk.split('*') {
        let trimmed = factor.trim();
        if trimmed.is_empty() {
            return Err(err(factor_col, "empty factor".into()));
        }
        let first = trimmed.chars().next().unwrap();
        if is_ident_start(first) {
            if !trimmed.chars().all(is_ident_char) {
                return Err(err(
                    factor_col,
                    format!("`{trimmed}` is not a valid name (juxtaposition is not allowed)"),
                ));
            }
            factors.push(trimmed.to_string());
        } else if first.is_ascii_digit() {
            let value = parse_rational(trimmed)
                .ok_or_else(|| err(factor_col, format!("bad rational `{trimmed}`")))?;
            coeff *= value;
        } else {
            return Err(err(factor_col, format!("unexpected token `{trimmed}`")));
        }
        factor_col += factor.chars().count() + 1;
    }
    if negative {
        coeff = -coeff;
    }
    Ok(Term { coeff, factors, col })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_names_and_coefficients() {
        let terms = parse_expression("x*y", 1, 0).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].coeff, q(1, 1));
        assert_eq!(terms[0].factors, vec!["x", "y"]);

        let terms = parse_expression("-1/2*xyz + 2*x", 1, 0).unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].coeff, q(-1, 2));
        assert_eq!(terms[0].factors, vec!["xyz"]);
        assert_eq!(terms[1].coeff, q(2, 1));
        assert_eq!(terms[1].factors, vec!["x"]);
    }

    #[test]
    fn constants_and_zero() {
        let terms = parse_expression("0", 1, 0).unwrap();
        assert_eq!(terms[0].coeff, q(0, 1));
        assert!(terms[0].factors.is_empty());

        let terms = parse_expression("3", 1, 0).unwrap();
        assert_eq!(terms[0].coeff, q(3, 1));
    }

    #[test]
    fn leading_sign() {
        let terms = parse_expression("-x + y", 1, 0).unwrap();
        assert_eq!(terms[0].coeff, q(-1, 1));
        assert_eq!(terms[1].coeff, q(1, 1));
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let err = parse_expression("2x", 1, 0).unwrap_err();
        assert!(matches!(err, Error::ParseAt { .. }), "{err}");
        let err = parse_expression("x y", 1, 0).unwrap_err();
        assert!(err.to_string().contains("not a valid name"), "{err}");
    }

    #[test]
    fn malformed_expressions_carry_columns() {
        assert!(parse_expression("", 1, 0).is_err());
        assert!(parse_expression("x + + y", 1, 0).is_err());
        assert!(parse_expression("x*", 1, 0).is_err());
        assert!(parse_expression("1/0*x", 1, 0).is_err());
        let err = parse_expression("x + ?", 3, 10).unwrap_err();
        match err {
            Error::ParseAt { line, col, .. } => {
                assert_eq!(line, 3);
                assert!(col > 10);
            }
            other => panic!("unexpected error {other}"),
        }
    }
}
