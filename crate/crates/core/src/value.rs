//! Exact arithmetic on the MV-algebra `[0,1]`, restricted in practice to
//! finite Łukasiewicz chains, plus subquantale validation for the scalar
//! domain `D`.

use crate::error::ModelError;
use crate::report::CheckReport;
use num_rational::Ratio;
use std::fmt;
use std::str::FromStr;

/// An exact rational in `[0,1]`, kept in canonical reduced form.
///
/// Carries the MV-algebra operations: truncated sum `⊕`, the Łukasiewicz
/// t-norm `⊙`, the involution `*`, truncated difference `⊖`, and the lattice
/// `∧`/`∨` (which coincide with min/max on rationals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MVValue(Ratio<u64>);

// The arithmetic here is truncated, not the ring arithmetic the std operator
// traits suggest, so the operations stay inherent methods.
#[allow(clippy::should_implement_trait)]
impl MVValue {
    pub fn zero() -> Self {
        MVValue(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        MVValue(Ratio::from_integer(1))
    }

    /// Builds `numer/denom`, reducing to canonical form. Rejects values
    /// outside `[0,1]` and a zero denominator.
    pub fn new(numer: u64, denom: u64) -> Result<Self, ModelError> {
        if denom == 0 {
            return Err(ModelError::MalformedValue {
                literal: format!("{numer}/{denom}"),
                reason: "zero denominator".to_owned(),
            });
        }
        if numer > denom {
            return Err(ModelError::ValueOutOfRange {
                literal: format!("{numer}/{denom}"),
            });
        }
        Ok(MVValue(Ratio::new(numer, denom)))
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    /// Truncated sum: `min(1, a + b)`.
    pub fn add(self, other: Self) -> Self {
        let sum = self.0 + other.0;
        if sum > Ratio::from_integer(1) {
            MVValue::one()
        } else {
            MVValue(sum)
        }
    }

    /// Łukasiewicz product: `max(0, a + b - 1)`, i.e. `(a* ⊕ b*)*`.
    pub fn mul(self, other: Self) -> Self {
        let sum = self.0 + other.0;
        let one = Ratio::from_integer(1);
        if sum <= one {
            MVValue::zero()
        } else {
            MVValue(sum - one)
        }
    }

    /// Involution: `1 - a`.
    pub fn neg(self) -> Self {
        MVValue(Ratio::from_integer(1) - self.0)
    }

    /// Truncated difference: `max(0, a - b)`, i.e. `a ⊙ b*`.
    pub fn sub(self, other: Self) -> Self {
        if self.0 <= other.0 {
            MVValue::zero()
        } else {
            MVValue(self.0 - other.0)
        }
    }

    /// Lattice meet (min).
    pub fn meet(self, other: Self) -> Self {
        self.min(other)
    }

    /// Lattice join (max).
    pub fn join(self, other: Self) -> Self {
        self.max(other)
    }
}

impl fmt::Display for MVValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.numer() == &0 {
            write!(f, "0")
        } else if self.0.numer() == self.0.denom() {
            write!(f, "1")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for MVValue {
    type Err = ModelError;

    /// Parses the literal grammar `"0" | "1" | "<n>/<d>"` with `0 < n < d`
    /// and `gcd(n, d) = 1`. Non-canonical fractions are rejected so that the
    /// textual form of every value is unique.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => return Ok(MVValue::zero()),
            "1" => return Ok(MVValue::one()),
            _ => {}
        }
        let malformed = |reason: &str| ModelError::MalformedValue {
            literal: s.to_owned(),
            reason: reason.to_owned(),
        };
        let (n_str, d_str) = s
            .split_once('/')
            .ok_or_else(|| malformed("expected \"0\", \"1\" or \"n/d\""))?;
        let n: u64 = n_str
            .parse()
            .map_err(|_| malformed("numerator is not a non-negative integer"))?;
        let d: u64 = d_str
            .parse()
            .map_err(|_| malformed("denominator is not a positive integer"))?;
        if d == 0 {
            return Err(malformed("zero denominator"));
        }
        if n > d {
            return Err(ModelError::ValueOutOfRange {
                literal: s.to_owned(),
            });
        }
        if n == 0 || n == d {
            return Err(malformed("write the endpoints as \"0\" and \"1\""));
        }
        if num_integer::gcd(n, d) != 1 {
            return Err(malformed("fraction is not in reduced form"));
        }
        Ok(MVValue(Ratio::new(n, d)))
    }
}

/// The finite Łukasiewicz chain `Ł_q = {0, 1/q, …, 1}`.
///
/// Closed under all MV operations, which makes it the desk-scale stand-in
/// for the full unit interval: every finite model declares one chain and all
/// of its values live there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chain {
    denominator: u64,
}

impl Chain {
    pub fn new(denominator: u64) -> Result<Self, ModelError> {
        if denominator == 0 {
            return Err(ModelError::Invalid(
                "chain denominator must be positive".to_owned(),
            ));
        }
        Ok(Chain { denominator })
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    /// Number of elements, `q + 1`.
    pub fn len(self) -> usize {
        self.denominator as usize + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn elements(self) -> impl Iterator<Item = MVValue> {
        let q = self.denominator;
        (0..=q).map(move |k| MVValue(Ratio::new(k, q)))
    }

    pub fn contains(self, value: MVValue) -> bool {
        self.denominator.is_multiple_of(value.denom())
    }

    /// Position of `value` in the chain (`k` for `k/q`), if it belongs.
    pub fn index_of(self, value: MVValue) -> Option<usize> {
        if self.contains(value) {
            Some((value.numer() * (self.denominator / value.denom())) as usize)
        } else {
            None
        }
    }

    pub fn element(self, index: usize) -> MVValue {
        MVValue(Ratio::new(index as u64, self.denominator))
    }

    /// The smallest chain containing every given value (lcm of denominators).
    pub fn spanning(values: impl IntoIterator<Item = MVValue>) -> Result<Chain, ModelError> {
        let mut q: u64 = 1;
        for v in values {
            q = num_integer::lcm(q, v.denom());
        }
        Chain::new(q)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.denominator)
    }
}

/// A finite subquantale of the chain: the scalar domain `D` of lamination.
///
/// Validity (contains 0 and 1, closed under `⊙` and binary `∨`) is checked
/// by [`check_subquantale`]; the struct itself only keeps the carrier sorted
/// and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subquantale {
    elements: Vec<MVValue>,
}

impl Subquantale {
    pub fn new(values: impl IntoIterator<Item = MVValue>) -> Self {
        let mut elements: Vec<MVValue> = values.into_iter().collect();
        elements.sort();
        elements.dedup();
        Subquantale { elements }
    }

    /// The two-element Boolean subquantale `{0, 1}`.
    pub fn boolean() -> Self {
        Subquantale::new([MVValue::zero(), MVValue::one()])
    }

    /// The whole chain as a subquantale of itself.
    pub fn full_chain(chain: Chain) -> Self {
        Subquantale::new(chain.elements())
    }

    pub fn elements(&self) -> &[MVValue] {
        &self.elements
    }

    pub fn contains(&self, value: MVValue) -> bool {
        self.elements.binary_search(&value).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl fmt::Display for Subquantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Checks that `s` is a subquantale of the chain: it must contain 1, contain
/// 0 (the empty supremum), and be closed under `⊙` and binary `∨`. All
/// violating pairs are listed. An element outside the chain is an input
/// error, not a failed check.
pub fn check_subquantale(s: &Subquantale, chain: Chain) -> Result<CheckReport, ModelError> {
    for v in s.elements() {
        if !chain.contains(*v) {
            return Err(ModelError::OutsideChain {
                value: v.to_string(),
                chain: chain.to_string(),
            });
        }
    }
    let mut report = CheckReport::builder("subquantale");
    report.expect(
        s.contains(MVValue::one()),
        "contains-unit",
        &["1"],
        "1 ∈ D",
        "missing",
    );
    report.expect(
        s.contains(MVValue::zero()),
        "contains-empty-supremum",
        &["0"],
        "0 = sup ∅ ∈ D",
        "missing",
    );
    for &a in s.elements() {
        for &b in s.elements() {
            let prod = a.mul(b);
            if !s.contains(prod) {
                report.fail(
                    "mul-closed",
                    &[a, b],
                    format!("{prod} ∈ D"),
                    "missing".to_owned(),
                );
            }
            let join = a.join(b);
            if !s.contains(join) {
                report.fail(
                    "join-closed",
                    &[a, b],
                    format!("{join} ∈ D"),
                    "missing".to_owned(),
                );
            }
        }
    }
    Ok(report.finish())
}
