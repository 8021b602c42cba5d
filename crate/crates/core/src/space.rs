//! D-laminated MV-spaces: construction, axiom checking, topology generation,
//! interior, neighbourhood systems, continuity, and separation properties.

use crate::error::ModelError;
use crate::fuzzy::{Carrier, FuzzySet};
use crate::report::CheckReport;
use crate::value::{check_subquantale, Chain, MVValue, Subquantale};
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

/// A finite D-laminated MV-space: a carrier, the ambient chain, the scalar
/// domain `D`, and a family of opens kept sorted by value vector.
///
/// Construction validates structure (non-empty carrier, values inside the
/// chain, `D` inside the chain); whether the family actually satisfies the
/// topology axioms is the business of [`MVSpace::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVSpace {
    carrier: Arc<Carrier>,
    chain: Chain,
    lamination: Subquantale,
    opens: Vec<FuzzySet>,
}

impl MVSpace {
    pub fn from_opens(
        carrier: Arc<Carrier>,
        chain: Chain,
        lamination: Subquantale,
        opens: impl IntoIterator<Item = FuzzySet>,
    ) -> Result<Self, ModelError> {
        for d in lamination.elements() {
            if !chain.contains(*d) {
                return Err(ModelError::OutsideChain {
                    value: d.to_string(),
                    chain: chain.to_string(),
                });
            }
        }
        let mut sorted: Vec<FuzzySet> = Vec::new();
        for open in opens {
            if open.carrier() != &carrier {
                return Err(ModelError::CarrierMismatch(format!(
                    "open {open} is not defined over the carrier {:?}",
                    carrier.points()
                )));
            }
            if !open.is_valued_in(chain) {
                return Err(ModelError::OutsideChain {
                    value: open.to_string(),
                    chain: chain.to_string(),
                });
            }
            sorted.push(open);
        }
        sorted.sort_by(FuzzySet::cmp_values);
        sorted.dedup();
        Ok(MVSpace {
            carrier,
            chain,
            lamination,
            opens: sorted,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn lamination(&self) -> &Subquantale {
        &self.lamination
    }

    /// The opens in canonical (value-vector lexicographic) order.
    pub fn opens(&self) -> &[FuzzySet] {
        &self.opens
    }

    pub fn contains_open(&self, set: &FuzzySet) -> bool {
        self.open_index(set).is_some()
    }

    pub fn open_index(&self, set: &FuzzySet) -> Option<usize> {
        self.opens
            .binary_search_by(|o| o.cmp_values(set))
            .ok()
            .filter(|&i| self.opens[i] == *set)
    }

    /// Verifies the D-laminated topology axioms: `1̲ ∈ τ`, closure under all
    /// joins of subsets (finite case: binary joins and the empty join `0̲`),
    /// closure under scalar multiples over `D`, and under binary `⊙`, `⊕`,
    /// `∧`. `D` itself is re-validated as a subquantale.
    pub fn check_axioms(&self) -> CheckReport {
        let mut report = CheckReport::builder("space-axioms");
        let top = FuzzySet::top(&self.carrier);
        let bottom = FuzzySet::bottom(&self.carrier);
        report.expect(
            self.contains_open(&top),
            "top-open",
            &["1̲"],
            "1̲ ∈ τ",
            "missing",
        );
        report.expect(
            self.contains_open(&bottom),
            "empty-join-open",
            &["0̲"],
            "0̲ = ⋁∅ ∈ τ",
            "missing",
        );
        let binary = [
            (
                "join-closed",
                FuzzySet::join as fn(&FuzzySet, &FuzzySet) -> Result<FuzzySet, ModelError>,
            ),
            ("mul-closed", FuzzySet::mul),
            ("add-closed", FuzzySet::add),
            ("meet-closed", FuzzySet::meet),
        ];
        for i in 0..self.opens.len() {
            for j in i..self.opens.len() {
                let (a, b) = (&self.opens[i], &self.opens[j]);
                for (law, op) in &binary {
                    let result = op(a, b).expect("opens share a carrier");
                    if !self.contains_open(&result) {
                        report.fail(law, &[a, b], format!("{result} ∈ τ"), "missing".to_owned());
                    }
                }
            }
        }
        for &r in self.lamination.elements() {
            for open in &self.opens {
                let scaled = open.scalar_mul(r);
                if !self.contains_open(&scaled) {
                    report.fail(
                        "scalar-closed",
                        &[r.to_string(), open.to_string()],
                        format!("{scaled} ∈ τ"),
                        "missing".to_owned(),
                    );
                }
            }
        }
        match check_subquantale(&self.lamination, self.chain) {
            Ok(sub) => report.absorb(sub),
            Err(e) => report.fail("subquantale", &["D"], "valid subquantale", e.to_string()),
        }
        report
            .note("constant maps r̲ for r ∈ D are open as r ⊙ 1̲; not checked separately".to_owned());
        report.note(
            "infinitary join closure reduces to binary joins plus 0̲ on a finite family".to_owned(),
        );
        report.finish()
    }

    /// Interior `α° = ⋁{β ∈ τ : β ≤ α}`: the largest open below `α`.
    pub fn interior(&self, set: &FuzzySet) -> Result<FuzzySet, ModelError> {
        if set.carrier() != &self.carrier {
            return Err(ModelError::CarrierMismatch(
                "interior argument lives on a different carrier".to_owned(),
            ));
        }
        if !set.is_valued_in(self.chain) {
            return Err(ModelError::OutsideChain {
                value: set.to_string(),
                chain: self.chain.to_string(),
            });
        }
        let mut acc = FuzzySet::bottom(&self.carrier);
        for open in &self.opens {
            if open.leq(set)? {
                acc = acc.join(open)?;
            }
        }
        Ok(acc)
    }

    /// The neighbourhood system `μ_x(u) = u°(x)`, evaluated lazily.
    pub fn mu(&self, point: &str, set: &FuzzySet) -> Result<MVValue, ModelError> {
        let idx = self.carrier.index_of(point)?;
        Ok(self.interior(set)?.get(idx))
    }

    /// The same value by an independent route: the largest value `β(x)`
    /// attained by an open `β ≤ u` (witness search rather than a pointwise
    /// join). Used to cross-check [`MVSpace::mu`].
    pub fn mu_by_witness_search(&self, point: &str, set: &FuzzySet) -> Result<MVValue, ModelError> {
        let idx = self.carrier.index_of(point)?;
        let mut best = MVValue::zero();
        for open in &self.opens {
            if open.leq(set)? {
                best = best.max(open.get(idx));
            }
        }
        Ok(best)
    }

    /// True iff `u` is a neighbourhood of `x`: some open `α ≤ u` with
    /// `α(x) = 1`, equivalently `u°(x) = 1`. Both routes are computed and
    /// must agree.
    pub fn is_neighbourhood(&self, set: &FuzzySet, point: &str) -> Result<bool, ModelError> {
        let idx = self.carrier.index_of(point)?;
        let via_interior = self.interior(set)?.get(idx) == MVValue::one();
        let mut via_witness = false;
        for open in &self.opens {
            if open.get(idx) == MVValue::one() && open.leq(set)? {
                via_witness = true;
                break;
            }
        }
        if via_interior != via_witness {
            return Err(ModelError::Internal(format!(
                "neighbourhood routes disagree at {point} on {set}"
            )));
        }
        Ok(via_interior)
    }

    /// `T_0`: every pair of distinct points is separated by some open's value.
    pub fn is_t0(&self) -> bool {
        let n = self.carrier.len();
        for i in 0..n {
            for j in i + 1..n {
                if !self.opens.iter().any(|o| o.get(i) != o.get(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Hausdorff: every pair of distinct points admits opens `α_x, α_y` with
    /// `α_x(x) = α_y(y) = 1` and `α_x ∧ α_y = 0̲`.
    pub fn is_hausdorff(&self) -> bool {
        let n = self.carrier.len();
        let bottom = FuzzySet::bottom(&self.carrier);
        for i in 0..n {
            for j in i + 1..n {
                let mut separated = false;
                'search: for a in &self.opens {
                    if a.get(i) != MVValue::one() {
                        continue;
                    }
                    for b in &self.opens {
                        if b.get(j) == MVValue::one()
                            && a.meet(b).expect("shared carrier") == bottom
                        {
                            separated = true;
                            break 'search;
                        }
                    }
                }
                if !separated {
                    return false;
                }
            }
        }
        true
    }
}

/// Least D-laminated topology containing the generators: a worklist fixpoint
/// closing `{0̲, 1̲} ∪ generators` under binary `∨`, `⊙`, `⊕`, `∧` and the
/// scalar action of every `r ∈ D`. Terminates because `V^X` is finite;
/// refused when the family would exceed `limit`.
pub fn generate_topology(
    carrier: Arc<Carrier>,
    chain: Chain,
    lamination: Subquantale,
    generators: impl IntoIterator<Item = FuzzySet>,
    limit: usize,
) -> Result<MVSpace, ModelError> {
    let sub_report = check_subquantale(&lamination, chain)?;
    if !sub_report.passed {
        return Err(ModelError::InvalidSubquantale(
            lamination.to_string(),
            sub_report.counterexamples[0].to_string(),
        ));
    }

    let mut family: BTreeSet<Vec<MVValue>> = BTreeSet::new();
    let mut queue: VecDeque<FuzzySet> = VecDeque::new();
    let push = |set: FuzzySet,
                family: &mut BTreeSet<Vec<MVValue>>,
                queue: &mut VecDeque<FuzzySet>|
     -> Result<(), ModelError> {
        if family.insert(set.values().to_vec()) {
            if family.len() > limit {
                return Err(ModelError::SizeLimit {
                    what: "generated topology".to_owned(),
                    need: format!("more than {limit}"),
                    limit,
                });
            }
            queue.push_back(set);
        }
        Ok(())
    };

    let seeds = [FuzzySet::bottom(&carrier), FuzzySet::top(&carrier)];
    for seed in seeds {
        push(seed, &mut family, &mut queue)?;
    }
    for g in generators {
        if g.carrier() != &carrier {
            return Err(ModelError::CarrierMismatch(format!(
                "generator {g} is not defined over the carrier {:?}",
                carrier.points()
            )));
        }
        if !g.is_valued_in(chain) {
            return Err(ModelError::OutsideChain {
                value: g.to_string(),
                chain: chain.to_string(),
            });
        }
        push(g, &mut family, &mut queue)?;
    }

    let mut settled: Vec<FuzzySet> = Vec::new();
    while let Some(current) = queue.pop_front() {
        for &r in lamination.elements() {
            push(current.scalar_mul(r), &mut family, &mut queue)?;
        }
        // Pair the new element with everything settled so far and itself.
        for other in settled.iter().chain(std::iter::once(&current)) {
            for result in [
                current.join(other)?,
                current.mul(other)?,
                current.add(other)?,
                current.meet(other)?,
            ] {
                push(result, &mut family, &mut queue)?;
            }
        }
        settled.push(current);
    }

    MVSpace::from_opens(carrier, chain, lamination, settled)
}

/// A total crisp map between carriers; fuzzy sets travel backwards along it
/// by composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispMap {
    source: Arc<Carrier>,
    target: Arc<Carrier>,
    images: Vec<usize>,
}

impl CrispMap {
    /// Builds the map from `(point, image)` pairs, which must cover the
    /// source carrier exactly.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        source: &Arc<Carrier>,
        target: &Arc<Carrier>,
        pairs: impl IntoIterator<Item = (S, T)>,
    ) -> Result<Self, ModelError> {
        let mut images: Vec<Option<usize>> = vec![None; source.len()];
        for (p, q) in pairs {
            let i = source.index_of(p.as_ref())?;
            let j = target.index_of(q.as_ref())?;
            if images[i].is_some() {
                return Err(ModelError::Invalid(format!(
                    "point {:?} mapped twice",
                    p.as_ref()
                )));
            }
            images[i] = Some(j);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    ModelError::NonTotalTable(format!(
                        "no image for point {:?}",
                        source.points()[i]
                    ))
                })
            })
            .collect::<Result<Vec<usize>, ModelError>>()?;
        Ok(CrispMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn identity(carrier: &Arc<Carrier>) -> Self {
        CrispMap {
            source: Arc::clone(carrier),
            target: Arc::clone(carrier),
            images: (0..carrier.len()).collect(),
        }
    }

    pub fn constant(
        source: &Arc<Carrier>,
        target: &Arc<Carrier>,
        point: &str,
    ) -> Result<Self, ModelError> {
        let j = target.index_of(point)?;
        Ok(CrispMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images: vec![j; source.len()],
        })
    }

    pub fn source(&self) -> &Arc<Carrier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Carrier> {
        &self.target
    }

    pub fn image_index(&self, source_index: usize) -> usize {
        self.images[source_index]
    }

    pub fn image_of(&self, point: &str) -> Result<&str, ModelError> {
        let i = self.source.index_of(point)?;
        Ok(&self.target.points()[self.images[i]])
    }

    /// The preimage `f^←(α) = α ∘ f` of a fuzzy set on the target.
    pub fn preimage(&self, set: &FuzzySet) -> Result<FuzzySet, ModelError> {
        if set.carrier() != &self.target {
            return Err(ModelError::CarrierMismatch(
                "preimage argument lives on a different carrier".to_owned(),
            ));
        }
        FuzzySet::from_values(
            &self.source,
            self.images.iter().map(|&j| set.get(j)).collect(),
        )
    }

    /// `self` followed by `next` (`next ∘ self`).
    pub fn compose(&self, next: &CrispMap) -> Result<CrispMap, ModelError> {
        if self.target != next.source {
            return Err(ModelError::CarrierMismatch(
                "composition endpoints do not match".to_owned(),
            ));
        }
        Ok(CrispMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            images: self.images.iter().map(|&j| next.images[j]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        for &j in &self.images {
            if seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Result<CrispMap, ModelError> {
        if !self.is_bijective() {
            return Err(ModelError::Invalid("map is not bijective".to_owned()));
        }
        let mut back = vec![0usize; self.target.len()];
        for (i, &j) in self.images.iter().enumerate() {
            back[j] = i;
        }
        Ok(CrispMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            images: back,
        })
    }
}

impl std::fmt::Display for CrispMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, &j) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}", self.source.points()[i], self.target.points()[j])?;
        }
        Ok(())
    }
}

/// Continuity of `f : S → T`: the preimage of every open of `T` is open in
/// `S`. The two spaces must share chain and lamination degree.
pub fn is_continuous(
    map: &CrispMap,
    source: &MVSpace,
    target: &MVSpace,
) -> Result<CheckReport, ModelError> {
    if map.source() != source.carrier() || map.target() != target.carrier() {
        return Err(ModelError::CarrierMismatch(
            "map endpoints do not match the given spaces".to_owned(),
        ));
    }
    if source.chain() != target.chain() {
        return Err(ModelError::ChainMismatch {
            expected: source.chain().to_string(),
            got: target.chain().to_string(),
        });
    }
    if source.lamination() != target.lamination() {
        return Err(ModelError::Invalid(format!(
            "lamination degrees differ: {} vs {}",
            source.lamination(),
            target.lamination()
        )));
    }
    let mut report = CheckReport::builder("continuity");
    for open in target.opens() {
        let pre = map.preimage(open)?;
        if !source.contains_open(&pre) {
            report.fail(
                "preimage-open",
                &[open],
                format!("{pre} ∈ τ_source"),
                "missing".to_owned(),
            );
        }
    }
    Ok(report.finish())
}
