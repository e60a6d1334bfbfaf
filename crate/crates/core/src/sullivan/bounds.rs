//! Interval bounds for the module topological complexity.
//!
//! No algorithm decides MTC_r in general, so it is carried as an interval:
//! lower bounds come from (r−1)·cat, from a computed zero-divisor cup-length,
//! and from iterating the difference inequality zcl_2 + (r−2)·cup; the upper
//! bound is r·cat. An exact value is filled in only when the caller certifies
//! the pure-odd case, where MTC_r = TC_r = (r−1)·cat.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MtcBounds {
    pub r: u32,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

/// Assembles the proved bounds for one r.
///
/// `zcl` optionally maps r to computed zero-divisor cup-lengths; `pure_odd`
/// asserts the caller verified the model is pure-odd and minimal, which pins
/// the exact value (r−1)·cat. Inconsistent inputs — a lower bound above the
/// upper bound, or a certified exact value outside the interval — fail with
/// a contradiction error.
pub fn mtc_bounds(
    cat: usize,
    cup: usize,
    zcl: Option<&BTreeMap<u32, usize>>,
    r: u32,
    pure_odd: bool,
) -> Result<MtcBounds> {
    if r < 2 {
        return Err(Error::Domain(format!("bounds are defined for r >= 2, got {r}")));
    }
    if cup > cat {
        return Err(Error::Input(format!(
            "cup-length {cup} exceeds the category {cat}; inputs are inconsistent"
        )));
    }
    let mut lower = (r as usize - 1) * cat;
    if let Some(map) = zcl {
        if let Some(&z) = map.get(&r) {
            lower = lower.max(z);
        }
        if let Some(&z2) = map.get(&2) {
            lower = lower.max(z2 + (r as usize - 2) * cup);
        }
    }
    let upper = r as usize * cat;
    if lower > upper {
        return Err(Error::Contradiction(format!(
            "lower bound {lower} exceeds upper bound {upper} at r = {r}; \
             the supplied invariants cannot all be right"
        )));
    }
    let exact = if pure_odd {
        let value = (r as usize - 1) * cat;
        if value < lower || value > upper {
            return Err(Error::Contradiction(format!(
                "pure-odd exact value {value} falls outside [{lower}, {upper}] at r = {r}"
            )));
        }
        Some(value)
    } else {
        None
    };
    Ok(MtcBounds { r, lower, upper, exact })
}
