//! Eventually-arithmetic invariant sequences and their generating functions.
//!
//! A sequence TC_2, TC_3, … that eventually grows by a constant difference d
//! has generating function Σ_{r≥1} TC_{r+1} x^r = P(x)/(1−x)² for a unique
//! integer polynomial P, and P(1) recovers d. [`series_to_p`] computes P
//! exactly and re-expands the quotient to confirm the round trip.

use std::fmt;

use num::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer sequence r ↦ TC_{r+1} (r ≥ 1), given by an explicit prefix and a
/// declared arithmetic tail. The caller must declare the stabilization index
/// and common difference; nothing is ever inferred from the prefix alone,
/// because early differences can overshoot the eventual one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TcSequence {
    prefix: Vec<i64>,
    diff: i64,
    stab: usize,
}

impl TcSequence {
    /// Validates that the declared difference matches the prefix tail:
    /// term(r+1) − term(r) = diff for every stab ≤ r < m.
    pub fn new(prefix: Vec<i64>, diff: i64, stab: usize) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::Construction("sequence prefix must be nonempty".into()));
        }
        if let Some(bad) = prefix.iter().position(|&t| t < 0) {
            return Err(Error::Construction(format!(
                "term {} is negative ({})",
                bad + 1,
                prefix[bad]
            )));
        }
        let m = prefix.len();
        if stab == 0 || stab > m {
            return Err(Error::Construction(format!(
                "stabilization index {stab} must lie in 1..={m}"
            )));
        }
        for r in stab..m {
            let observed = prefix[r] - prefix[r - 1];
            if observed != diff {
                return Err(Error::Construction(format!(
                    "declared difference {diff} does not match the prefix at index {}: \
                     term({}) - term({r}) = {observed}",
                    r + 1,
                    r + 1,
                )));
            }
        }
        Ok(TcSequence { prefix, diff, stab })
    }

    /// TC_{r+1}, defined for every r ≥ 1 by arithmetic extension.
    pub fn term(&self, r: usize) -> i64 {
        assert!(r >= 1, "terms are indexed from 1");
        let m = self.prefix.len();
        if r <= m {
            self.prefix[r - 1]
        } else {
            self.prefix[m - 1] + (r - m) as i64 * self.diff
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn diff(&self) -> i64 {
        self.diff
    }

    pub fn stab(&self) -> usize {
        self.stab
    }

    /// Termwise sum. The result stabilizes once both summands have.
    pub fn termwise_sum(&self, other: &TcSequence) -> TcSequence {
        let m = self.prefix.len().max(other.prefix.len()).max(self.stab).max(other.stab);
        let prefix = (1..=m).map(|r| self.term(r) + other.term(r)).collect();
        TcSequence::new(prefix, self.diff + other.diff, self.stab.max(other.stab))
            .expect("sum of valid sequences is valid")
    }
}

/// Parses the one-line literal `prefix=5,9,12 diff=3 stab=2`.
pub fn parse_sequence_literal(text: &str) -> Result<TcSequence> {
    let mut prefix: Option<Vec<i64>> = None;
    let mut diff: Option<i64> = None;
    let mut stab: Option<usize> = None;
    let err = |msg: String| Error::Parse { line: 1, msg };
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{field}`")))?;
        match key {
            "prefix" => {
                let terms: std::result::Result<Vec<i64>, _> =
                    value.split(',').map(|t| t.trim().parse()).collect();
                prefix = Some(terms.map_err(|_| err(format!("bad prefix list `{value}`")))?);
            }
            "diff" => {
                diff = Some(value.parse().map_err(|_| err(format!("bad diff `{value}`")))?);
            }
            "stab" => {
                stab = Some(value.parse().map_err(|_| err(format!("bad stab `{value}`")))?);
            }
            other => return Err(err(format!("unknown field `{other}`"))),
        }
    }
    let prefix = prefix.ok_or_else(|| err("missing field `prefix`".into()))?;
    let diff = diff.ok_or_else(|| err("missing field `diff`".into()))?;
    let stab = stab.ok_or_else(|| err("missing field `stab`".into()))?;
    TcSequence::new(prefix, diff, stab)
}

/// Exact integer polynomial, coefficients lowest degree first, no trailing
/// zeros. The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_bigints(coeffs.into_iter().map(BigInt::from).collect())
    }

    fn from_bigints(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Sum of coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        IntPolynomial::from_bigints(coeffs)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_bigints(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// The rational function P(x)/(1−x)², stored through its numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: IntPolynomial,
}

impl RationalSeries {
    /// First `terms` power-series coefficients of P(x)/(1−x)², starting at x^0.
    /// Uses 1/(1−x)² = Σ (k+1) x^k.
    pub fn expand(&self, terms: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); terms];
        for (i, a) in self.numerator.coeffs().iter().enumerate() {
            for k in i..terms {
                out[k] += a * BigInt::from((k - i + 1) as i64);
            }
        }
        out
    }
}

/// The unique integer polynomial P with Σ_{r≥1} term(r) x^r = P(x)/(1−x)².
///
/// P = (1−x)²·(prefix part below stab) + a·x^s·(1−x) + d·x^{s+1}, where
/// s = stab, a = term(s), d = diff. The result is re-expanded and compared
/// against the sequence before it is returned.
pub fn series_to_p(seq: &TcSequence) -> IntPolynomial {
    let s = seq.stab();
    let a = seq.term(s);
    let d = seq.diff();

    let one_minus_x = IntPolynomial::from_coeffs([1, -1]);
    let one_minus_x_sq = one_minus_x.mul(&one_minus_x);

    // Σ_{r<s} term(r) x^r
    let mut head = vec![0i64; s];
    for (r, slot) in head.iter_mut().enumerate().skip(1) {
        *slot = seq.term(r);
    }
    let head = IntPolynomial::from_coeffs(head);

    let mut tail_a = vec![0i64; s + 1];
    tail_a[s] = a;
    let tail_a = IntPolynomial::from_coeffs(tail_a).mul(&one_minus_x);

    let mut tail_d = vec![0i64; s + 2];
    tail_d[s + 1] = d;
    let tail_d = IntPolynomial::from_coeffs(tail_d);

    let p = head.mul(&one_minus_x_sq).add(&tail_a).add(&tail_d);

    // Round-trip guard: expanding P/(1−x)² must reproduce the sequence.
    let horizon = seq.prefix().len() + 3;
    let expansion = RationalSeries { numerator: p.clone() }.expand(horizon + 1);
    assert!(expansion[0].is_zero(), "series must have no constant term");
    for (r, value) in expansion.iter().enumerate().skip(1) {
        assert_eq!(
            value,
            &BigInt::from(seq.term(r)),
            "re-expansion mismatch at term {r}"
        );
    }
    p
}

/// True iff P(1) equals `cat` — equivalently, iff the eventual difference of
/// the underlying sequence equals `cat`.
pub fn p_at_one_check(p: &IntPolynomial, cat: i64) -> bool {
    p.eval_at_one() == BigInt::from(cat)
}

/// Builds the TC sequence of the gamma graph family from the closed form,
/// computes P, and checks deg P = n+1 and P(1) = n+1.
pub fn gamma_degree_check(n: usize) -> Result<(IntPolynomial, bool)> {
    use crate::graph::gamma_z_closed_form;
    if n < 2 {
        return Err(Error::Domain(format!("gamma family needs n >= 2, got {n}")));
    }
    // term(r) = TC_{r+1} = z_{r+1}; the tail is arithmetic from r = n on.
    let prefix: Vec<i64> = (1..=n)
        .map(|r| gamma_z_closed_form(n, r as u32 + 1).map(|z| z as i64))
        .collect::<Result<_>>()?;
    let seq = TcSequence::new(prefix, n as i64 + 1, n)?;
    let p = series_to_p(&seq);
    let ok = p.degree() == Some(n + 1) && p_at_one_check(&p, n as i64 + 1);
    Ok((p, ok))
}

/// One row of the difference table: TC_{r+1} − TC_r together with its label r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub r: usize,
    pub difference: i64,
}

/// Difference table of a sequence with bound findings.
///
/// `instability` lists every r whose difference TC_{r+1} − TC_r exceeds cat;
/// `out_of_band` lists every r violating cup ≤ difference ≤ 2·cat, the band
/// that any module-complexity sequence must respect. Violations are findings,
/// not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub instability: Vec<usize>,
    pub out_of_band: Vec<usize>,
    pub stable_difference: i64,
}

pub fn growth_report(seq: &TcSequence, cat: i64, cup: i64) -> Result<GrowthReport> {
    if !(0 <= cup && cup <= cat) {
        return Err(Error::Input(format!(
            "growth report needs cat >= cup >= 0, got cat={cat}, cup={cup}"
        )));
    }
    let horizon = seq.prefix().len().max(seq.stab()) + 2;
    let mut rows = Vec::new();
    let mut instability = Vec::new();
    let mut out_of_band = Vec::new();
    for r in 2..=horizon {
        let difference = seq.term(r) - seq.term(r - 1);
        if difference > cat {
            instability.push(r);
        }
        if difference < cup || difference > 2 * cat {
            out_of_band.push(r);
        }
        rows.push(GrowthRow { r, difference });
    }
    Ok(GrowthReport { rows, instability, out_of_band, stable_difference: seq.diff() })
}
