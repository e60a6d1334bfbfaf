//! Text format for graded algebras.
//!
//! Lines `b <label> <degree>` declare basis elements (the first degree-0
//! element is the unit) and lines `p <label_i> <label_j> = <combination>`
//! give products as linear combinations of basis labels, e.g.
//! `p y xz = -1*xyz`. Unlisted products are zero, unit products are implied.
//! `#` comments and blank lines are skipped.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly_text::parse_expression;

use super::GradedAlgebra;

pub fn parse_algebra(text: &str) -> Result<GradedAlgebra> {
    let mut basis: Vec<(String, usize)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut products: Vec<((usize, usize), SparseVec)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        if let Some(rest) = line.strip_prefix("b ") {
            let mut tokens = rest.split_whitespace();
            let label = tokens
                .next()
                .ok_or_else(|| err("basis line needs a label".into()))?
                .to_string();
            let degree: usize = tokens
                .next()
                .ok_or_else(|| err("basis line needs a degree".into()))?
                .parse()
                .map_err(|_| err("degree is not a number".into()))?;
            if tokens.next().is_some() {
                return Err(err("trailing tokens on basis line".into()));
            }
            if index.insert(label.clone(), basis.len()).is_some() {
                return Err(err(format!("duplicate basis label `{label}`")));
            }
            basis.push((label, degree));
        } else if let Some(rest) = line.strip_prefix("p ") {
            let (head, expr) = rest
                .split_once('=')
                .ok_or_else(|| err("product line needs `= <combination>`".into()))?;
            let mut tokens = head.split_whitespace();
            let mut lookup = |what: &str| -> Result<usize> {
                let label = tokens
                    .next()
                    .ok_or_else(|| err(format!("product line needs a {what} label")))?;
                index
                    .get(label)
                    .copied()
                    .ok_or_else(|| err(format!("unknown basis label `{label}`")))
            };
            let i = lookup("left")?;
            let j = lookup("right")?;
            if tokens.next().is_some() {
                return Err(err("product line takes exactly two labels".into()));
            }
            let col_offset = raw.len() - raw.trim_start().len() + (line.len() - expr.len());
            let value = combination_to_vec(expr, line_no, col_offset, &index)?;
            products.push(((i, j), value));
        } else {
            let tag = line.split_whitespace().next().unwrap_or("");
            return Err(err(format!("unknown line tag `{tag}`")));
        }
    }

    GradedAlgebra::new(basis, products)
}

/// A linear combination of basis labels; a bare rational means a multiple of
/// the unit and resolves through the label map after construction.
fn combination_to_vec(
    expr: &str,
    line: usize,
    col_offset: usize,
    index: &BTreeMap<String, usize>,
) -> Result<SparseVec> {
    use num::Zero;
    let mut out = SparseVec::new();
    for term in parse_expression(expr.trim_end(), line, col_offset)? {
        let target = match term.factors.as_slice() {
            [] => {
                if term.coeff.is_zero() {
                    continue;
                }
                // Degree-additivity rules out products landing on the unit,
                // so a nonzero constant can never be meant here.
                return Err(Error::ParseAt {
                    line,
                    col: col_offset + term.col,
                    msg: "nonzero constant terms are not allowed in product combinations".into(),
                });
            }
            [label] => index.get(label).copied().ok_or_else(|| Error::ParseAt {
                line,
                col: col_offset + term.col,
                msg: format!("unknown basis label `{label}`"),
            })?,
            more => {
                return Err(Error::ParseAt {
                    line,
                    col: col_offset + term.col,
                    msg: format!(
                        "a linear combination takes one label per term, got {}",
                        more.len()
                    ),
                })
            }
        };
        if term.coeff.is_zero() {
            continue;
        }
        let entry = out.entry(target).or_insert_with(num::BigRational::zero);
        *entry += term.coeff;
        if entry.is_zero() {
            out.remove(&target);
        }
    }
    Ok(out)
}
