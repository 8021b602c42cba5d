//! Fuzzy sets over a finite carrier with pointwise MV operations.

use crate::error::ModelError;
use crate::value::{Chain, MVValue};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// An ordered list of distinct point names. The order is fixed at load and
/// defines the canonical ordering used for every value vector and all output.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    points: Vec<String>,
}

impl Carrier {
    pub fn new(
        points: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Arc<Self>, ModelError> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(ModelError::EmptyCarrier);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(ModelError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Arc::new(Carrier { points }))
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ModelError> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| ModelError::UnknownPoint(name.to_owned()))
    }
}

/// A total map carrier → value, the basic object every topology is made of.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzySet {
    carrier: Arc<Carrier>,
    values: Vec<MVValue>,
}

impl FuzzySet {
    pub fn from_values(carrier: &Arc<Carrier>, values: Vec<MVValue>) -> Result<Self, ModelError> {
        if values.len() != carrier.len() {
            return Err(ModelError::CarrierMismatch(format!(
                "expected {} values, got {}",
                carrier.len(),
                values.len()
            )));
        }
        Ok(FuzzySet {
            carrier: Arc::clone(carrier),
            values,
        })
    }

    pub fn constant(carrier: &Arc<Carrier>, value: MVValue) -> Self {
        FuzzySet {
            carrier: Arc::clone(carrier),
            values: vec![value; carrier.len()],
        }
    }

    /// The bottom constant `0̲`.
    pub fn bottom(carrier: &Arc<Carrier>) -> Self {
        FuzzySet::constant(carrier, MVValue::zero())
    }

    /// The top constant `1̲`.
    pub fn top(carrier: &Arc<Carrier>) -> Self {
        FuzzySet::constant(carrier, MVValue::one())
    }

    /// The characteristic map of a crisp subset: 1 on `subset`, 0 elsewhere.
    pub fn characteristic<S: AsRef<str>>(
        carrier: &Arc<Carrier>,
        subset: impl IntoIterator<Item = S>,
    ) -> Result<Self, ModelError> {
        let mut values = vec![MVValue::zero(); carrier.len()];
        for name in subset {
            let idx = carrier.index_of(name.as_ref())?;
            values[idx] = MVValue::one();
        }
        Ok(FuzzySet {
            carrier: Arc::clone(carrier),
            values,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn values(&self) -> &[MVValue] {
        &self.values
    }

    pub fn value_at(&self, name: &str) -> Result<MVValue, ModelError> {
        Ok(self.values[self.carrier.index_of(name)?])
    }

    pub fn get(&self, index: usize) -> MVValue {
        self.values[index]
    }

    pub fn is_valued_in(&self, chain: Chain) -> bool {
        self.values.iter().all(|v| chain.contains(*v))
    }

    fn require_same_carrier(&self, other: &FuzzySet) -> Result<(), ModelError> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(ModelError::CarrierMismatch(format!(
                "fuzzy sets over {:?} and {:?}",
                self.carrier.points(),
                other.carrier.points()
            )))
        }
    }

    fn zip(
        &self,
        other: &FuzzySet,
        op: impl Fn(MVValue, MVValue) -> MVValue,
    ) -> Result<FuzzySet, ModelError> {
        self.require_same_carrier(other)?;
        Ok(FuzzySet {
            carrier: Arc::clone(&self.carrier),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Pointwise truncated sum `α ⊕ β`.
    pub fn add(&self, other: &FuzzySet) -> Result<FuzzySet, ModelError> {
        self.zip(other, MVValue::add)
    }

    /// Pointwise Łukasiewicz product `α ⊙ β`.
    pub fn mul(&self, other: &FuzzySet) -> Result<FuzzySet, ModelError> {
        self.zip(other, MVValue::mul)
    }

    /// Pointwise meet `α ∧ β`.
    pub fn meet(&self, other: &FuzzySet) -> Result<FuzzySet, ModelError> {
        self.zip(other, MVValue::meet)
    }

    /// Pointwise join `α ∨ β`.
    pub fn join(&self, other: &FuzzySet) -> Result<FuzzySet, ModelError> {
        self.zip(other, MVValue::join)
    }

    /// Pointwise involution `α*`.
    pub fn neg(&self) -> FuzzySet {
        FuzzySet {
            carrier: Arc::clone(&self.carrier),
            values: self.values.iter().map(|v| v.neg()).collect(),
        }
    }

    /// `(r ⊙ α)(x) = r ⊙ α(x)`, the scalar action of the lamination degree.
    pub fn scalar_mul(&self, r: MVValue) -> FuzzySet {
        FuzzySet {
            carrier: Arc::clone(&self.carrier),
            values: self.values.iter().map(|v| r.mul(*v)).collect(),
        }
    }

    /// The k-fold truncated sum `α ⊕ … ⊕ α`; `k = 0` is rejected.
    pub fn nfold_add(&self, k: u32) -> Result<FuzzySet, ModelError> {
        if k == 0 {
            return Err(ModelError::Invalid(
                "n-fold sum needs at least one summand".to_owned(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    /// Pointwise order: true iff `self(p) ≤ other(p)` at every point.
    pub fn leq(&self, other: &FuzzySet) -> Result<bool, ModelError> {
        self.require_same_carrier(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// Lexicographic comparison of value vectors in carrier order; the
    /// canonical total order used to sort open-set families.
    pub fn cmp_values(&self, other: &FuzzySet) -> Ordering {
        self.values.cmp(&other.values)
    }
}

impl fmt::Display for FuzzySet {
    /// Compact form `x=1/2,y=3/5,z=3/5` in carrier order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, v)) in self.carrier.points().iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}={v}")?;
        }
        Ok(())
    }
}

/// Size of the full fuzzy powerset `V^X`, refused above `limit`.
pub fn powerset_size(chain: Chain, carrier: &Carrier, limit: usize) -> Result<usize, ModelError> {
    let base = chain.len();
    let mut size: usize = 1;
    for _ in 0..carrier.len() {
        size = size.saturating_mul(base);
        if size > limit {
            return Err(ModelError::SizeLimit {
                what: format!("fuzzy powerset {}^{}", chain, carrier.len()),
                need: format!("{base}^{}", carrier.len()),
                limit,
            });
        }
    }
    Ok(size)
}

/// Enumerates all of `V^X` in canonical order: value vectors ordered
/// lexicographically in carrier order (an odometer with the last point
/// varying fastest).
pub fn powerset_iter(
    chain: Chain,
    carrier: &Arc<Carrier>,
    limit: usize,
) -> Result<impl Iterator<Item = FuzzySet> + '_, ModelError> {
    let total = powerset_size(chain, carrier, limit)?;
    let n = carrier.len();
    let base = chain.len();
    Ok((0..total).map(move |mut idx| {
        let mut digits = vec![0usize; n];
        for slot in (0..n).rev() {
            digits[slot] = idx % base;
            idx /= base;
        }
        FuzzySet {
            carrier: Arc::clone(carrier),
            values: digits.into_iter().map(|k| chain.element(k)).collect(),
        }
    }))
}

/// Position of `set` in the canonical enumeration of `V^X`.
pub fn powerset_index(chain: Chain, set: &FuzzySet) -> Result<usize, ModelError> {
    let base = chain.len();
    let mut idx = 0usize;
    for v in set.values() {
        let digit = chain.index_of(*v).ok_or_else(|| ModelError::OutsideChain {
            value: v.to_string(),
            chain: chain.to_string(),
        })?;
        idx = idx * base + digit;
    }
    Ok(idx)
}
