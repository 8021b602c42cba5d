//! MV-interior operators, MV-neighbourhood functions, fuzzy MV-filters, and
//! the correspondences between them and topologies.
//!
//! Operators are stored as total tables over the finite fuzzy powerset
//! `V^X` in its canonical enumeration order; the same order defines the
//! join range of the neighbourhood law U6.

use crate::error::ModelError;
use crate::frame::{DFrame, OpKind, Point};
use crate::fuzzy::{powerset_index, powerset_iter, powerset_size, Carrier, FuzzySet};
use crate::report::CheckReport;
use crate::space::MVSpace;
use crate::value::{check_subquantale, Chain, MVValue, Subquantale};
use std::sync::Arc;

/// A total map `V^X → V^X` given by its output table in canonical input
/// order. Whether it actually satisfies the interior laws I1–I6 is decided
/// by [`InteriorOperator::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorOperator {
    carrier: Arc<Carrier>,
    chain: Chain,
    outputs: Vec<FuzzySet>,
}

impl InteriorOperator {
    pub fn from_fn(
        carrier: &Arc<Carrier>,
        chain: Chain,
        limit: usize,
        mut f: impl FnMut(&FuzzySet) -> Result<FuzzySet, ModelError>,
    ) -> Result<Self, ModelError> {
        let mut outputs = Vec::with_capacity(powerset_size(chain, carrier, limit)?);
        for input in powerset_iter(chain, carrier, limit)? {
            let out = f(&input)?;
            if out.carrier() != carrier {
                return Err(ModelError::CarrierMismatch(
                    "operator output lives on a different carrier".to_owned(),
                ));
            }
            if !out.is_valued_in(chain) {
                return Err(ModelError::OutsideChain {
                    value: out.to_string(),
                    chain: chain.to_string(),
                });
            }
            outputs.push(out);
        }
        Ok(InteriorOperator {
            carrier: Arc::clone(carrier),
            chain,
            outputs,
        })
    }

    /// The interior operation of a space, materialized over all of `V^X`.
    pub fn from_space(space: &MVSpace, limit: usize) -> Result<Self, ModelError> {
        InteriorOperator::from_fn(space.carrier(), space.chain(), limit, |set| {
            space.interior(set)
        })
    }

    pub fn identity(
        carrier: &Arc<Carrier>,
        chain: Chain,
        limit: usize,
    ) -> Result<Self, ModelError> {
        InteriorOperator::from_fn(carrier, chain, limit, |set| Ok(set.clone()))
    }

    /// Builds the operator from `(input, output)` pairs that must cover
    /// `V^X` exactly once each.
    pub fn from_entries(
        carrier: &Arc<Carrier>,
        chain: Chain,
        entries: impl IntoIterator<Item = (FuzzySet, FuzzySet)>,
        limit: usize,
    ) -> Result<Self, ModelError> {
        let total = powerset_size(chain, carrier, limit)?;
        let mut outputs: Vec<Option<FuzzySet>> = vec![None; total];
        for (input, output) in entries {
            if input.carrier() != carrier || output.carrier() != carrier {
                return Err(ModelError::CarrierMismatch(
                    "table entry lives on a different carrier".to_owned(),
                ));
            }
            if !output.is_valued_in(chain) {
                return Err(ModelError::OutsideChain {
                    value: output.to_string(),
                    chain: chain.to_string(),
                });
            }
            let idx = powerset_index(chain, &input)?;
            if outputs[idx].is_some() {
                return Err(ModelError::Invalid(format!(
                    "duplicate table entry for input {input}"
                )));
            }
            outputs[idx] = Some(output);
        }
        let outputs = outputs
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    ModelError::NonTotalTable(format!(
                        "operator table misses input #{i} of {total}"
                    ))
                })
            })
            .collect::<Result<Vec<FuzzySet>, ModelError>>()?;
        Ok(InteriorOperator {
            carrier: Arc::clone(carrier),
            chain,
            outputs,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn outputs(&self) -> &[FuzzySet] {
        &self.outputs
    }

    pub fn inputs(&self) -> impl Iterator<Item = FuzzySet> + '_ {
        powerset_iter(self.chain, &self.carrier, usize::MAX).expect("size already admitted")
    }

    pub fn apply(&self, set: &FuzzySet) -> Result<&FuzzySet, ModelError> {
        Ok(&self.outputs[powerset_index(self.chain, set)?])
    }

    /// Checks I1–I6 on every input (pair), then re-derives monotonicity as a
    /// sanity cross-check.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::builder("interior-operator");
        let base = self.chain.len();
        let n = self.carrier.len();
        let combine = |a: &FuzzySet, b: &FuzzySet, op: fn(MVValue, MVValue) -> MVValue| -> usize {
            let mut idx = 0usize;
            for k in 0..n {
                let v = op(a.get(k), b.get(k));
                idx = idx * base + self.chain.index_of(v).expect("closed chain op");
            }
            idx
        };
        let inputs: Vec<FuzzySet> = self.inputs().collect();

        let top = FuzzySet::top(&self.carrier);
        let top_out = &self.outputs[powerset_index(self.chain, &top).expect("top index")];
        report.expect(
            top_out == &top,
            "I1-preserves-top",
            &[&top],
            top.to_string(),
            top_out.to_string(),
        );
        for (i, input) in inputs.iter().enumerate() {
            let out = &self.outputs[i];
            if !out.leq(input).expect("same carrier") {
                report.fail("I2-contractive", &[input], "f(α) ≤ α", out.to_string());
            }
            let again = &self.outputs[powerset_index(self.chain, out).expect("output index")];
            if again != out {
                report.fail(
                    "I3-idempotent",
                    &[input],
                    out.to_string(),
                    again.to_string(),
                );
            }
        }
        for (i, a) in inputs.iter().enumerate() {
            let fa = &self.outputs[i];
            for (j, b) in inputs.iter().enumerate().skip(i) {
                let fb = &self.outputs[j];
                let f_meet = &self.outputs[combine(a, b, MVValue::meet)];
                let pointwise_ok = (0..n).all(|k| fa.get(k).meet(fb.get(k)) == f_meet.get(k));
                if !pointwise_ok {
                    report.fail(
                        "I4-preserves-meets",
                        &[a, b],
                        "f(α)∧f(β) = f(α∧β)",
                        format!("f(α∧β) = {f_meet}"),
                    );
                }
                let f_add = &self.outputs[combine(a, b, MVValue::add)];
                if !(0..n).all(|k| fa.get(k).add(fb.get(k)) <= f_add.get(k)) {
                    report.fail(
                        "I5-super-preserves-add",
                        &[a, b],
                        "f(α)⊕f(β) ≤ f(α⊕β)",
                        format!("f(α⊕β) = {f_add}"),
                    );
                }
                let f_mul = &self.outputs[combine(a, b, MVValue::mul)];
                if !(0..n).all(|k| fa.get(k).mul(fb.get(k)) <= f_mul.get(k)) {
                    report.fail(
                        "I6-super-preserves-mul",
                        &[a, b],
                        "f(α)⊙f(β) ≤ f(α⊙β)",
                        format!("f(α⊙β) = {f_mul}"),
                    );
                }
            }
        }
        // Monotonicity follows from I4; derived here independently.
        for (i, a) in inputs.iter().enumerate() {
            for (j, b) in inputs.iter().enumerate() {
                if i != j
                    && a.leq(b).expect("same carrier")
                    && !self.outputs[i].leq(&self.outputs[j]).expect("same carrier")
                {
                    report.fail(
                        "monotone",
                        &[a, b],
                        "f(α) ≤ f(β)",
                        format!("f(α) = {}, f(β) = {}", self.outputs[i], self.outputs[j]),
                    );
                }
            }
        }
        report.finish()
    }
}

/// The topology of fixpoints `τ = {α : f(α) = α}`, with the lamination
/// degree extracted by scanning which chain constants are fixed. The
/// extracted `D` is validated as a subquantale, the result must pass the
/// axiom check, and the result's interior is re-verified to equal `f` on all
/// of `V^X`.
pub fn topology_from_interior(op: &InteriorOperator) -> Result<MVSpace, ModelError> {
    let mut opens = Vec::new();
    for (i, input) in op.inputs().enumerate() {
        if op.outputs()[i] == input {
            opens.push(input);
        }
    }
    let mut lamination = Vec::new();
    for r in op.chain().elements() {
        let constant = FuzzySet::constant(op.carrier(), r);
        if op.apply(&constant)? == &constant {
            lamination.push(r);
        }
    }
    let lamination = Subquantale::new(lamination);
    let sub = check_subquantale(&lamination, op.chain())?;
    if !sub.passed {
        return Err(ModelError::from_failed_report(
            "extracted scalar set is not a subquantale",
            &sub,
        ));
    }
    let space = MVSpace::from_opens(Arc::clone(op.carrier()), op.chain(), lamination, opens)?;
    let axioms = space.check_axioms();
    if !axioms.passed {
        return Err(ModelError::from_failed_report(
            "fixpoints do not form a topology (not an interior operator)",
            &axioms,
        ));
    }
    for (i, input) in op.inputs().enumerate() {
        if space.interior(&input)? != op.outputs()[i] {
            return Err(ModelError::Invalid(format!(
                "interior of the fixpoint topology differs from the operator at {input}"
            )));
        }
    }
    Ok(space)
}

/// A family of per-point maps `μ_x : V^X → V`, stored as one table in
/// canonical input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbhdFunction {
    carrier: Arc<Carrier>,
    chain: Chain,
    /// `table[input index][point index]`.
    table: Vec<Vec<MVValue>>,
}

impl NbhdFunction {
    pub fn from_fn(
        carrier: &Arc<Carrier>,
        chain: Chain,
        limit: usize,
        mut mu: impl FnMut(usize, &FuzzySet) -> Result<MVValue, ModelError>,
    ) -> Result<Self, ModelError> {
        let mut table = Vec::with_capacity(powerset_size(chain, carrier, limit)?);
        for input in powerset_iter(chain, carrier, limit)? {
            let mut row = Vec::with_capacity(carrier.len());
            for x in 0..carrier.len() {
                let v = mu(x, &input)?;
                if !chain.contains(v) {
                    return Err(ModelError::OutsideChain {
                        value: v.to_string(),
                        chain: chain.to_string(),
                    });
                }
                row.push(v);
            }
            table.push(row);
        }
        Ok(NbhdFunction {
            carrier: Arc::clone(carrier),
            chain,
            table,
        })
    }

    /// The neighbourhood systems of a space: `μ_x(u) = u°(x)`.
    pub fn from_space(space: &MVSpace, limit: usize) -> Result<Self, ModelError> {
        NbhdFunction::from_fn(space.carrier(), space.chain(), limit, |x, input| {
            Ok(space.interior(input)?.get(x))
        })
    }

    pub fn from_entries(
        carrier: &Arc<Carrier>,
        chain: Chain,
        entries: impl IntoIterator<Item = (FuzzySet, Vec<MVValue>)>,
        limit: usize,
    ) -> Result<Self, ModelError> {
        let total = powerset_size(chain, carrier, limit)?;
        let mut table: Vec<Option<Vec<MVValue>>> = vec![None; total];
        for (input, row) in entries {
            if input.carrier() != carrier {
                return Err(ModelError::CarrierMismatch(
                    "table entry lives on a different carrier".to_owned(),
                ));
            }
            if row.len() != carrier.len() {
                return Err(ModelError::NonTotalTable(format!(
                    "entry for {input} assigns {} of {} points",
                    row.len(),
                    carrier.len()
                )));
            }
            for v in &row {
                if !chain.contains(*v) {
                    return Err(ModelError::OutsideChain {
                        value: v.to_string(),
                        chain: chain.to_string(),
                    });
                }
            }
            let idx = powerset_index(chain, &input)?;
            if table[idx].is_some() {
                return Err(ModelError::Invalid(format!(
                    "duplicate table entry for input {input}"
                )));
            }
            table[idx] = Some(row);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    ModelError::NonTotalTable(format!("table misses input #{i} of {total}"))
                })
            })
            .collect::<Result<Vec<Vec<MVValue>>, ModelError>>()?;
        Ok(NbhdFunction {
            carrier: Arc::clone(carrier),
            chain,
            table,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn table(&self) -> &[Vec<MVValue>] {
        &self.table
    }

    pub fn inputs(&self) -> impl Iterator<Item = FuzzySet> + '_ {
        powerset_iter(self.chain, &self.carrier, usize::MAX).expect("size already admitted")
    }

    pub fn mu(&self, point: &str, set: &FuzzySet) -> Result<MVValue, ModelError> {
        let x = self.carrier.index_of(point)?;
        Ok(self.table[powerset_index(self.chain, set)?][x])
    }

    /// Checks U1–U6 for every point; U6 is evaluated by the exhaustive join
    /// over all of `V^X`.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::builder("nbhd-function");
        let base = self.chain.len();
        let n = self.carrier.len();
        let inputs: Vec<FuzzySet> = self.inputs().collect();
        let names = self.carrier.points();
        let combine = |a: &FuzzySet, b: &FuzzySet, op: fn(MVValue, MVValue) -> MVValue| -> usize {
            let mut idx = 0usize;
            for k in 0..n {
                let v = op(a.get(k), b.get(k));
                idx = idx * base + self.chain.index_of(v).expect("closed chain op");
            }
            idx
        };

        let top_idx = self.table.len() - 1;
        for (x, name) in names.iter().enumerate() {
            report.expect(
                self.table[top_idx][x] == MVValue::one(),
                "U1-full-at-top",
                &[name],
                "μ_x(1̲) = 1",
                self.table[top_idx][x],
            );
        }
        for (i, input) in inputs.iter().enumerate() {
            for (x, name) in names.iter().enumerate() {
                if self.table[i][x] > input.get(x) {
                    report.fail(
                        "U2-below-membership",
                        &[name.clone(), input.to_string()],
                        format!("μ_x(α) ≤ α(x) = {}", input.get(x)),
                        self.table[i][x].to_string(),
                    );
                }
            }
        }
        for (i, a) in inputs.iter().enumerate() {
            for (j, b) in inputs.iter().enumerate().skip(i) {
                let meet_idx = combine(a, b, MVValue::meet);
                let add_idx = combine(a, b, MVValue::add);
                let mul_idx = combine(a, b, MVValue::mul);
                for (x, name) in names.iter().enumerate() {
                    let (ma, mb) = (self.table[i][x], self.table[j][x]);
                    if ma.meet(mb) != self.table[meet_idx][x] {
                        report.fail(
                            "U3-preserves-meets",
                            &[name.clone(), a.to_string(), b.to_string()],
                            format!("μ_x(α)∧μ_x(β) = {}", ma.meet(mb)),
                            self.table[meet_idx][x].to_string(),
                        );
                    }
                    if ma.add(mb) > self.table[add_idx][x] {
                        report.fail(
                            "U4-super-preserves-add",
                            &[name.clone(), a.to_string(), b.to_string()],
                            "μ_x(α)⊕μ_x(β) ≤ μ_x(α⊕β)",
                            self.table[add_idx][x].to_string(),
                        );
                    }
                    if ma.mul(mb) > self.table[mul_idx][x] {
                        report.fail(
                            "U5-super-preserves-mul",
                            &[name.clone(), a.to_string(), b.to_string()],
                            "μ_x(α)⊙μ_x(β) ≤ μ_x(α⊙β)",
                            self.table[mul_idx][x].to_string(),
                        );
                    }
                }
            }
        }
        // U6: μ_x(α) = ⋁{ μ_x(β) : β(y) ≤ μ_y(α) for all y }.
        for (i, a) in inputs.iter().enumerate() {
            for (x, name) in names.iter().enumerate() {
                let mut join = MVValue::zero();
                for (j, b) in inputs.iter().enumerate() {
                    if (0..n).all(|y| b.get(y) <= self.table[i][y]) {
                        join = join.max(self.table[j][x]);
                    }
                }
                if join != self.table[i][x] {
                    report.fail(
                        "U6-join-of-inner-systems",
                        &[name.clone(), a.to_string()],
                        self.table[i][x].to_string(),
                        join.to_string(),
                    );
                }
            }
        }
        report.finish()
    }
}

/// Retags an interior operator as its neighbourhood function,
/// `μ_x(α) = f(α)(x)`; the result satisfies U1–U6 whenever `f` satisfies
/// I1–I6.
pub fn nbhd_from_interior(op: &InteriorOperator) -> NbhdFunction {
    NbhdFunction {
        carrier: Arc::clone(op.carrier()),
        chain: op.chain(),
        table: op
            .outputs()
            .iter()
            .map(|out| out.values().to_vec())
            .collect(),
    }
}

/// The interior operator induced by a neighbourhood function,
/// `f(α)(y) = μ_y(α)`.
pub fn interior_from_nbhd(nbhd: &NbhdFunction) -> Result<InteriorOperator, ModelError> {
    let outputs = nbhd
        .table()
        .iter()
        .map(|row| FuzzySet::from_values(nbhd.carrier(), row.clone()))
        .collect::<Result<Vec<FuzzySet>, ModelError>>()?;
    Ok(InteriorOperator {
        carrier: Arc::clone(nbhd.carrier()),
        chain: nbhd.chain(),
        outputs,
    })
}

/// The topology induced by a neighbourhood function:
/// `τ = {α : μ_y(α) = α(y) for all y}`, with `D` extracted from the fixed
/// constants. Computed straight from the fixedness condition, not through
/// [`interior_from_nbhd`], so the two construction routes stay independent
/// and their agreement is checkable.
pub fn topology_from_nbhd(nbhd: &NbhdFunction) -> Result<MVSpace, ModelError> {
    let n = nbhd.carrier().len();
    let fixed = |idx: usize, input: &FuzzySet| -> bool {
        (0..n).all(|y| nbhd.table()[idx][y] == input.get(y))
    };
    let mut opens = Vec::new();
    for (idx, input) in nbhd.inputs().enumerate() {
        if fixed(idx, &input) {
            opens.push(input);
        }
    }
    let mut lamination = Vec::new();
    for r in nbhd.chain().elements() {
        let constant = FuzzySet::constant(nbhd.carrier(), r);
        if fixed(powerset_index(nbhd.chain(), &constant)?, &constant) {
            lamination.push(r);
        }
    }
    let lamination = Subquantale::new(lamination);
    let sub = check_subquantale(&lamination, nbhd.chain())?;
    if !sub.passed {
        return Err(ModelError::from_failed_report(
            "extracted scalar set is not a subquantale",
            &sub,
        ));
    }
    let space = MVSpace::from_opens(Arc::clone(nbhd.carrier()), nbhd.chain(), lamination, opens)?;
    let axioms = space.check_axioms();
    if !axioms.passed {
        return Err(ModelError::from_failed_report(
            "fixed sets do not form a topology (not a neighbourhood function)",
            &axioms,
        ));
    }
    Ok(space)
}

/// A map `ν : M → [0,1]` on a frame, candidate fuzzy MV-filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyFilter {
    frame: Arc<DFrame>,
    values: Vec<MVValue>,
}

impl FuzzyFilter {
    pub fn new(frame: &Arc<DFrame>, values: Vec<MVValue>) -> Result<Self, ModelError> {
        if values.len() != frame.len() {
            return Err(ModelError::NonTotalTable(format!(
                "filter assigns {} of {} elements",
                values.len(),
                frame.len()
            )));
        }
        Ok(FuzzyFilter {
            frame: Arc::clone(frame),
            values,
        })
    }

    /// Every point of a frame is in particular a candidate filter.
    pub fn from_point(point: &Point) -> Self {
        FuzzyFilter {
            frame: Arc::clone(point.frame()),
            values: point.values().to_vec(),
        }
    }

    pub fn values(&self) -> &[MVValue] {
        &self.values
    }

    /// Checks F1–F5: unit and zero values, preservation of `∧`, and
    /// super-preservation of `·` and `+`.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::builder("fuzzy-filter");
        let frame = &self.frame;
        report.expect(
            self.values[frame.one()] == MVValue::one(),
            "F1-unit",
            &["1"],
            "ν(1) = 1",
            self.values[frame.one()],
        );
        report.expect(
            self.values[frame.zero()] == MVValue::zero(),
            "F2-zero",
            &["0"],
            "ν(0) = 0",
            self.values[frame.zero()],
        );
        let n = frame.len();
        for a in 0..n {
            for b in a..n {
                let (va, vb) = (self.values[a], self.values[b]);
                let meet = self.values[frame.apply(OpKind::Meet, a, b)];
                report.expect(
                    va.meet(vb) == meet,
                    "F3-preserves-meets",
                    &[frame.name(a), frame.name(b)],
                    format!("ν(α)∧ν(β) = {}", va.meet(vb)),
                    meet,
                );
                let times = self.values[frame.apply(OpKind::Times, a, b)];
                report.expect(
                    va.mul(vb) <= times,
                    "F4-super-preserves-times",
                    &[frame.name(a), frame.name(b)],
                    format!("ν(α)⊙ν(β) = {} ≤ ν(α·β)", va.mul(vb)),
                    times,
                );
                let plus = self.values[frame.apply(OpKind::Plus, a, b)];
                report.expect(
                    va.add(vb) <= plus,
                    "F5-super-preserves-plus",
                    &[frame.name(a), frame.name(b)],
                    format!("ν(α)⊕ν(β) = {} ≤ ν(α+β)", va.add(vb)),
                    plus,
                );
            }
        }
        report.finish()
    }
}
