//! Finite D-frames presented by full operation tables: law checking,
//! homomorphisms, point enumeration into a finite chain, and the spectrum.

use crate::error::ModelError;
use crate::fuzzy::{Carrier, FuzzySet};
use crate::report::CheckReport;
use crate::space::MVSpace;
use crate::value::{check_subquantale, Chain, MVValue, Subquantale};
use std::fmt;
use std::sync::Arc;

/// Which binary table an operation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Join,
    Meet,
    Plus,
    Times,
}

impl OpKind {
    pub const ALL: [OpKind; 4] = [OpKind::Join, OpKind::Meet, OpKind::Plus, OpKind::Times];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Join => "join",
            OpKind::Meet => "meet",
            OpKind::Plus => "plus",
            OpKind::Times => "times",
        }
    }

    /// The same operation on chain elements, as chain indices `k` of `k/q`.
    pub fn eval_chain(self, q: usize, a: usize, b: usize) -> usize {
        match self {
            OpKind::Join => a.max(b),
            OpKind::Meet => a.min(b),
            OpKind::Plus => (a + b).min(q),
            OpKind::Times => (a + b).saturating_sub(q),
        }
    }
}

/// A finite D-frame given by total operation tables over named elements.
///
/// The scalar table is keyed by the elements of the lamination degree `D`;
/// `one` must be the lattice top and `zero` doubles as the lattice bottom and
/// the identity of `+` (a single field, so the identification is structural).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DFrame {
    elements: Vec<String>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    plus: Vec<Vec<usize>>,
    times: Vec<Vec<usize>>,
    scalar: Vec<(MVValue, Vec<usize>)>,
    one: usize,
    zero: usize,
}

impl DFrame {
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        elements: Vec<String>,
        join: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        plus: Vec<Vec<usize>>,
        times: Vec<Vec<usize>>,
        scalar: Vec<(MVValue, Vec<usize>)>,
        one: usize,
        zero: usize,
    ) -> Result<Arc<Self>, ModelError> {
        let n = elements.len();
        if n == 0 {
            return Err(ModelError::Invalid("a frame needs elements".to_owned()));
        }
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(ModelError::Invalid(format!(
                    "duplicate element name {name:?}"
                )));
            }
        }
        for (what, table) in [
            ("join", &join),
            ("meet", &meet),
            ("plus", &plus),
            ("times", &times),
        ] {
            if table.len() != n || table.iter().any(|row| row.len() != n) {
                return Err(ModelError::NonTotalTable(format!(
                    "{what} table is not {n}x{n}"
                )));
            }
            if table.iter().flatten().any(|&v| v >= n) {
                return Err(ModelError::NonTotalTable(format!(
                    "{what} table references an element out of range"
                )));
            }
        }
        if scalar.is_empty() {
            return Err(ModelError::NonTotalTable(
                "scalar table has no entries; D may not be empty".to_owned(),
            ));
        }
        for (i, (r, row)) in scalar.iter().enumerate() {
            if scalar[..i].iter().any(|(s, _)| s == r) {
                return Err(ModelError::Invalid(format!("duplicate scalar key {r}")));
            }
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(ModelError::NonTotalTable(format!(
                    "scalar row for {r} is not total"
                )));
            }
        }
        if one >= n || zero >= n {
            return Err(ModelError::UnknownElement(
                "one/zero out of range".to_owned(),
            ));
        }
        let mut scalar = scalar;
        scalar.sort_by_key(|(r, _)| *r);
        Ok(Arc::new(DFrame {
            elements,
            join,
            meet,
            plus,
            times,
            scalar,
            one,
            zero,
        }))
    }

    /// Builds the tables by evaluating closures over element indices.
    pub fn from_fn(
        elements: Vec<String>,
        one: usize,
        zero: usize,
        lamination: &Subquantale,
        mut op: impl FnMut(OpKind, usize, usize) -> Result<usize, ModelError>,
        mut scalar_op: impl FnMut(MVValue, usize) -> Result<usize, ModelError>,
    ) -> Result<Arc<Self>, ModelError> {
        let n = elements.len();
        let mut tables: Vec<Vec<Vec<usize>>> = Vec::with_capacity(4);
        for kind in OpKind::ALL {
            let mut table = vec![vec![0usize; n]; n];
            for (a, row) in table.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    *cell = op(kind, a, b)?;
                }
            }
            tables.push(table);
        }
        let mut scalar = Vec::with_capacity(lamination.len());
        for &r in lamination.elements() {
            let mut row = vec![0usize; n];
            for (a, cell) in row.iter_mut().enumerate() {
                *cell = scalar_op(r, a)?;
            }
            scalar.push((r, row));
        }
        let times = tables.pop().expect("four tables");
        let plus = tables.pop().expect("three tables");
        let meet = tables.pop().expect("two tables");
        let join = tables.pop().expect("one table");
        DFrame::from_tables(elements, join, meet, plus, times, scalar, one, zero)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ModelError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| ModelError::UnknownElement(name.to_owned()))
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn table(&self, kind: OpKind) -> &Vec<Vec<usize>> {
        match kind {
            OpKind::Join => &self.join,
            OpKind::Meet => &self.meet,
            OpKind::Plus => &self.plus,
            OpKind::Times => &self.times,
        }
    }

    pub fn apply(&self, kind: OpKind, a: usize, b: usize) -> usize {
        self.table(kind)[a][b]
    }

    pub fn scalar_pairs(&self) -> &[(MVValue, Vec<usize>)] {
        &self.scalar
    }

    pub fn scalar_apply(&self, r: MVValue, a: usize) -> Result<usize, ModelError> {
        self.scalar
            .iter()
            .find(|(s, _)| *s == r)
            .map(|(_, row)| row[a])
            .ok_or_else(|| ModelError::Invalid(format!("{r} is not a scalar of this frame")))
    }

    /// The lamination degree `D`, read off the scalar table keys.
    pub fn lamination(&self) -> Subquantale {
        Subquantale::new(self.scalar.iter().map(|(r, _)| *r))
    }

    /// The lattice order: `a ≤ b` iff `a ∨ b = b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.join[a][b] == b
    }

    /// A deterministic linear extension of the lattice order (smallest index
    /// first among elements whose strict predecessors are all emitted).
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut emitted = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mut pick = None;
            for e in 0..n {
                if emitted[e] {
                    continue;
                }
                let ready =
                    (0..n).all(|a| a == e || emitted[a] || !(self.le(a, e) && !self.le(e, a)));
                if ready {
                    pick = Some(e);
                    break;
                }
            }
            // Broken tables can make the order cyclic; fall back to index order.
            let e = pick.unwrap_or_else(|| (0..n).find(|&e| !emitted[e]).unwrap());
            emitted[e] = true;
            out.push(e);
        }
        out
    }

    /// Checks every D-frame law on every tuple of elements: bounded
    /// distributive lattice, quantale multiplication, the `+`-monoid with its
    /// distribution over meets, the scalar-action laws, and the subquantale
    /// laws for `D` itself.
    pub fn check_d_frame(&self) -> CheckReport {
        let n = self.len();
        let name = |i: usize| self.elements[i].clone();
        let mut report = CheckReport::builder("d-frame-laws");

        let commutative: [(&str, &Vec<Vec<usize>>); 4] = [
            ("join", &self.join),
            ("meet", &self.meet),
            ("plus", &self.plus),
            ("times", &self.times),
        ];
        for (op, table) in commutative {
            for a in 0..n {
                for b in a..n {
                    if table[a][b] != table[b][a] {
                        report.fail(
                            &format!("{op}-commutative"),
                            &[name(a), name(b)],
                            name(table[a][b]),
                            name(table[b][a]),
                        );
                    }
                    for c in 0..n {
                        let left = table[table[a][b]][c];
                        let right = table[a][table[b][c]];
                        if left != right {
                            report.fail(
                                &format!("{op}-associative"),
                                &[name(a), name(b), name(c)],
                                name(left),
                                name(right),
                            );
                        }
                    }
                }
            }
        }

        for a in 0..n {
            report.expect_eq(
                "join-idempotent",
                &[name(a)],
                &name(a),
                &name(self.join[a][a]),
            );
            report.expect_eq(
                "meet-idempotent",
                &[name(a)],
                &name(a),
                &name(self.meet[a][a]),
            );
            report.expect_eq(
                "one-is-top",
                &[name(a)],
                &name(a),
                &name(self.meet[a][self.one]),
            );
            report.expect_eq(
                "zero-is-bottom",
                &[name(a)],
                &name(a),
                &name(self.join[a][self.zero]),
            );
            report.expect_eq(
                "plus-identity",
                &[name(a)],
                &name(a),
                &name(self.plus[a][self.zero]),
            );
            report.expect_eq(
                "times-annihilates-bottom",
                &[name(a)],
                &name(self.zero),
                &name(self.times[a][self.zero]),
            );
            for b in 0..n {
                report.expect_eq(
                    "absorption",
                    &[name(a), name(b)],
                    &name(a),
                    &name(self.join[a][self.meet[a][b]]),
                );
                report.expect_eq(
                    "absorption-dual",
                    &[name(a), name(b)],
                    &name(a),
                    &name(self.meet[a][self.join[a][b]]),
                );
                for c in 0..n {
                    report.expect_eq(
                        "meet-distributes-over-join",
                        &[name(a), name(b), name(c)],
                        &name(self.join[self.meet[a][b]][self.meet[a][c]]),
                        &name(self.meet[a][self.join[b][c]]),
                    );
                    report.expect_eq(
                        "times-distributes-over-join",
                        &[name(a), name(b), name(c)],
                        &name(self.join[self.times[a][b]][self.times[a][c]]),
                        &name(self.times[a][self.join[b][c]]),
                    );
                    report.expect_eq(
                        "plus-distributes-over-meet",
                        &[name(a), name(b), name(c)],
                        &name(self.meet[self.plus[a][b]][self.plus[a][c]]),
                        &name(self.plus[a][self.meet[b][c]]),
                    );
                }
            }
        }

        // Scalar-action laws over D.
        let d = self.lamination();
        let scalar = |r: MVValue, a: usize| -> Option<usize> {
            self.scalar
                .iter()
                .find(|(s, _)| *s == r)
                .map(|(_, row)| row[a])
        };
        if d.contains(MVValue::one()) {
            for a in 0..n {
                let got = scalar(MVValue::one(), a).unwrap();
                report.expect_eq("scalar-unit", &[name(a)], &name(a), &name(got));
            }
        }
        if d.contains(MVValue::zero()) {
            for a in 0..n {
                let got = scalar(MVValue::zero(), a).unwrap();
                report.expect_eq(
                    "scalar-empty-supremum",
                    &[name(a)],
                    &name(self.zero),
                    &name(got),
                );
            }
        }
        for &q in d.elements() {
            for &r in d.elements() {
                let qr = q.mul(r);
                let q_join_r = q.join(r);
                for a in 0..n {
                    if let (Some(inner), Some(lhs)) = (scalar(r, a), scalar(qr, a)) {
                        if let Some(rhs) = scalar(q, inner) {
                            report.expect(
                                lhs == rhs,
                                "scalar-composition",
                                &[q.to_string(), r.to_string(), name(a)],
                                name(lhs),
                                name(rhs),
                            );
                        }
                    }
                    if let (Some(qa), Some(ra), Some(joint)) =
                        (scalar(q, a), scalar(r, a), scalar(q_join_r, a))
                    {
                        report.expect(
                            self.join[qa][ra] == joint,
                            "scalar-join-distribution",
                            &[q.to_string(), r.to_string(), name(a)],
                            name(joint),
                            name(self.join[qa][ra]),
                        );
                    }
                }
            }
        }
        for &q in d.elements() {
            for a in 0..n {
                let qa = scalar(q, a).unwrap();
                for b in 0..n {
                    let qb = scalar(q, b).unwrap();
                    report.expect_eq(
                        "scalar-distributes-over-join",
                        &[q.to_string(), name(a), name(b)],
                        &name(self.join[qa][qb]),
                        &name(scalar(q, self.join[a][b]).unwrap()),
                    );
                    let q_ab = scalar(q, self.times[a][b]).unwrap();
                    report.expect_eq(
                        "scalar-times-exchange-left",
                        &[q.to_string(), name(a), name(b)],
                        &name(self.times[qa][b]),
                        &name(q_ab),
                    );
                    report.expect_eq(
                        "scalar-times-exchange-right",
                        &[q.to_string(), name(a), name(b)],
                        &name(self.times[a][qb]),
                        &name(q_ab),
                    );
                }
            }
        }
        match Chain::spanning(d.elements().iter().copied()) {
            Ok(chain) => match check_subquantale(&d, chain) {
                Ok(sub) => report.absorb(sub),
                Err(e) => report.fail("subquantale", &["D"], "valid subquantale", e.to_string()),
            },
            Err(e) => report.fail("subquantale", &["D"], "valid subquantale", e.to_string()),
        }
        report.note(
            "the +-identity and the lattice bottom are one structural element (zero)".to_owned(),
        );
        report.finish()
    }
}

impl fmt::Display for DFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D-frame with {} elements over D = {}",
            self.len(),
            self.lamination()
        )
    }
}

/// The chain itself viewed as a D-frame: `∨ = max`, `∧ = min`, `· = ⊙`,
/// `+ = ⊕`, scalars acting by `⊙`.
pub fn chain_as_dframe(chain: Chain, lamination: &Subquantale) -> Result<Arc<DFrame>, ModelError> {
    for r in lamination.elements() {
        if !chain.contains(*r) {
            return Err(ModelError::OutsideChain {
                value: r.to_string(),
                chain: chain.to_string(),
            });
        }
    }
    let q = chain.len() - 1;
    let names: Vec<String> = chain.elements().map(|v| v.to_string()).collect();
    DFrame::from_fn(
        names,
        q,
        0,
        lamination,
        |kind, a, b| Ok(kind.eval_chain(q, a, b)),
        |r, a| {
            let rk = chain.index_of(r).expect("scalar inside chain");
            Ok(OpKind::Times.eval_chain(q, rk, a))
        },
    )
}

/// A map between two D-frames, stored in the algebraic direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameHom {
    source: Arc<DFrame>,
    target: Arc<DFrame>,
    map: Vec<usize>,
}

impl FrameHom {
    pub fn new(
        source: Arc<DFrame>,
        target: Arc<DFrame>,
        map: Vec<usize>,
    ) -> Result<Self, ModelError> {
        if map.len() != source.len() {
            return Err(ModelError::NonTotalTable(format!(
                "assignment covers {} of {} elements",
                map.len(),
                source.len()
            )));
        }
        if map.iter().any(|&v| v >= target.len()) {
            return Err(ModelError::UnknownElement(
                "assignment references an element out of range".to_owned(),
            ));
        }
        Ok(FrameHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(frame: &Arc<DFrame>) -> Self {
        FrameHom {
            source: Arc::clone(frame),
            target: Arc::clone(frame),
            map: (0..frame.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<DFrame> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DFrame> {
        &self.target
    }

    pub fn apply(&self, index: usize) -> usize {
        self.map[index]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `next` (`next ∘ self` in the algebraic direction).
    pub fn compose(&self, next: &FrameHom) -> Result<FrameHom, ModelError> {
        if self.target != next.source {
            return Err(ModelError::Invalid(
                "homomorphism endpoints do not match".to_owned(),
            ));
        }
        Ok(FrameHom {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            map: self.map.iter().map(|&v| next.map[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }
}

/// Verifies the seven preservation clauses of a D-frame homomorphism: the
/// unit, binary joins, the empty join (`zero ↦ zero`), meets, `·`, `+`, and
/// the scalar action of every `r ∈ D`. The two frames must carry the same
/// `D`; anything else is an input error.
pub fn check_frame_hom(hom: &FrameHom) -> Result<CheckReport, ModelError> {
    let src = hom.source();
    let tgt = hom.target();
    if src.lamination() != tgt.lamination() {
        return Err(ModelError::Invalid(format!(
            "scalar domains differ: {} vs {}",
            src.lamination(),
            tgt.lamination()
        )));
    }
    let mut report = CheckReport::builder("frame-hom");
    let sname = |i: usize| src.name(i).to_owned();
    let tname = |i: usize| tgt.name(i).to_owned();
    report.expect_eq(
        "preserves-one",
        &["1"],
        &tname(tgt.one()),
        &tname(hom.apply(src.one())),
    );
    report.expect_eq(
        "preserves-empty-join",
        &["0"],
        &tname(tgt.zero()),
        &tname(hom.apply(src.zero())),
    );
    let n = src.len();
    for a in 0..n {
        for b in 0..n {
            for (law, kind) in [
                ("preserves-join", OpKind::Join),
                ("preserves-meet", OpKind::Meet),
                ("preserves-times", OpKind::Times),
                ("preserves-plus", OpKind::Plus),
            ] {
                let through = hom.apply(src.apply(kind, a, b));
                let after = tgt.apply(kind, hom.apply(a), hom.apply(b));
                if through != after {
                    report.fail(law, &[sname(a), sname(b)], tname(through), tname(after));
                }
            }
        }
    }
    for (r, row) in src.scalar_pairs() {
        for (a, &ra) in row.iter().enumerate() {
            let through = hom.apply(ra);
            let after = tgt.scalar_apply(*r, hom.apply(a))?;
            report.expect(
                through == after,
                "preserves-scalar",
                &[r.to_string(), sname(a)],
                tname(through),
                tname(after),
            );
        }
    }
    Ok(report.finish())
}

/// A point of a D-frame: a value assignment into a finite chain that is a
/// D-frame homomorphism into the chain viewed as a D-frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    frame: Arc<DFrame>,
    codomain: Chain,
    values: Vec<MVValue>,
}

impl Point {
    pub fn new(
        frame: Arc<DFrame>,
        codomain: Chain,
        values: Vec<MVValue>,
    ) -> Result<Self, ModelError> {
        if values.len() != frame.len() {
            return Err(ModelError::NonTotalTable(format!(
                "point assigns {} of {} elements",
                values.len(),
                frame.len()
            )));
        }
        for v in &values {
            if !codomain.contains(*v) {
                return Err(ModelError::OutsideChain {
                    value: v.to_string(),
                    chain: codomain.to_string(),
                });
            }
        }
        Ok(Point {
            frame,
            codomain,
            values,
        })
    }

    pub fn frame(&self) -> &Arc<DFrame> {
        &self.frame
    }

    pub fn codomain(&self) -> Chain {
        self.codomain
    }

    pub fn values(&self) -> &[MVValue] {
        &self.values
    }

    pub fn value(&self, index: usize) -> MVValue {
        self.values[index]
    }

    pub fn value_of(&self, element: &str) -> Result<MVValue, ModelError> {
        Ok(self.values[self.frame.index_of(element)?])
    }

    /// The point as a frame homomorphism into `chain_as_dframe`.
    pub fn as_frame_hom(&self, chain_frame: &Arc<DFrame>) -> Result<FrameHom, ModelError> {
        let map = self
            .values
            .iter()
            .map(|v| {
                self.codomain
                    .index_of(*v)
                    .ok_or_else(|| ModelError::OutsideChain {
                        value: v.to_string(),
                        chain: self.codomain.to_string(),
                    })
            })
            .collect::<Result<Vec<usize>, ModelError>>()?;
        FrameHom::new(Arc::clone(&self.frame), Arc::clone(chain_frame), map)
    }

    /// Re-verifies all preservation clauses directly, independently of the
    /// search that produced the point.
    pub fn check(&self) -> Result<CheckReport, ModelError> {
        let chain_frame = chain_as_dframe(self.codomain, &self.frame.lamination())?;
        check_frame_hom(&self.as_frame_hom(&chain_frame)?)
    }

    /// Precomposition `self ∘ hom` along `hom : L → M` with `M` the frame of
    /// `self`; the result assigns values to `L`.
    pub fn precompose(&self, hom: &FrameHom) -> Result<Point, ModelError> {
        if hom.target() != &self.frame {
            return Err(ModelError::Invalid(
                "hom target does not match the point's frame".to_owned(),
            ));
        }
        Point::new(
            Arc::clone(hom.source()),
            self.codomain,
            hom.assignment().iter().map(|&v| self.values[v]).collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self
            .frame
            .element_names()
            .iter()
            .zip(&self.values)
            .enumerate()
        {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{name} -> {v}")?;
        }
        Ok(())
    }
}

/// Enumerates every point of the frame with values in `codomain`, by
/// backtracking over a linear extension of the lattice order with
/// monotonicity bounds and table-constraint propagation. The result is
/// sorted by value vector, so it does not depend on the search order, and
/// every found assignment is re-verified through [`check_frame_hom`].
pub fn enumerate_points(frame: &Arc<DFrame>, codomain: Chain) -> Result<Vec<Point>, ModelError> {
    let order = frame.linear_extension();
    enumerate_points_in_order(frame, codomain, &order)
}

fn enumerate_points_in_order(
    frame: &Arc<DFrame>,
    codomain: Chain,
    order: &[usize],
) -> Result<Vec<Point>, ModelError> {
    let d = frame.lamination();
    for r in d.elements() {
        if !codomain.contains(*r) {
            return Err(ModelError::OutsideChain {
                value: r.to_string(),
                chain: codomain.to_string(),
            });
        }
    }
    let n = frame.len();
    let q = codomain.len() - 1;
    let scalar_indices: Vec<(usize, &Vec<usize>)> = frame
        .scalar_pairs()
        .iter()
        .map(|(r, row)| (codomain.index_of(*r).expect("scalar inside codomain"), row))
        .collect();

    struct Search<'a> {
        frame: &'a DFrame,
        order: &'a [usize],
        q: usize,
        scalar_indices: Vec<(usize, &'a Vec<usize>)>,
        values: Vec<Option<usize>>,
        assigned: Vec<usize>,
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn consistent_with(&self, element: usize, value: usize) -> bool {
            // Check every table constraint whose operands and result are all
            // assigned once `element` takes `value`.
            let val = |e: usize| -> Option<usize> {
                if e == element {
                    Some(value)
                } else {
                    self.values[e]
                }
            };
            let touched = self.assigned.iter().copied().chain([element]);
            for a in touched.clone() {
                let va = val(a).unwrap();
                for b in touched.clone() {
                    let vb = val(b).unwrap();
                    for kind in OpKind::ALL {
                        let result = self.frame.apply(kind, a, b);
                        if let Some(vr) = val(result) {
                            if kind.eval_chain(self.q, va, vb) != vr {
                                return false;
                            }
                        }
                    }
                }
                for (rk, row) in &self.scalar_indices {
                    if let Some(vr) = val(row[a]) {
                        if OpKind::Times.eval_chain(self.q, *rk, va) != vr {
                            return false;
                        }
                    }
                }
            }
            true
        }

        fn recurse(&mut self, pos: usize) {
            if pos == self.order.len() {
                self.found
                    .push(self.values.iter().map(|v| v.unwrap()).collect());
                return;
            }
            let element = self.order[pos];
            let (mut lo, mut hi) = (0usize, self.q);
            if element == self.frame.zero() {
                hi = 0;
            }
            if element == self.frame.one() {
                lo = self.q;
            }
            for &a in &self.assigned {
                let va = self.values[a].unwrap();
                if self.frame.le(a, element) {
                    lo = lo.max(va);
                }
                if self.frame.le(element, a) {
                    hi = hi.min(va);
                }
            }
            if lo > hi {
                return;
            }
            for value in lo..=hi {
                if self.consistent_with(element, value) {
                    self.values[element] = Some(value);
                    self.assigned.push(element);
                    self.recurse(pos + 1);
                    self.assigned.pop();
                    self.values[element] = None;
                }
            }
        }
    }

    let mut search = Search {
        frame,
        order,
        q,
        scalar_indices,
        values: vec![None; n],
        assigned: Vec::new(),
        found: Vec::new(),
    };
    search.recurse(0);
    let mut found = search.found;
    found.sort();
    found.dedup();

    let chain_frame = chain_as_dframe(codomain, &d)?;
    let mut points = Vec::with_capacity(found.len());
    for assignment in found {
        let point = Point::new(
            Arc::clone(frame),
            codomain,
            assignment.iter().map(|&k| codomain.element(k)).collect(),
        )?;
        let verdict = check_frame_hom(&point.as_frame_hom(&chain_frame)?)?;
        if !verdict.passed {
            return Err(ModelError::Internal(format!(
                "enumerated assignment fails re-verification: {}",
                verdict.counterexamples[0]
            )));
        }
        points.push(point);
    }
    Ok(points)
}

/// The spectrum of a frame: the enumerated points topologized by the opens
/// `â : p ↦ p(a)`. A frame without points yields no space (`space: None`),
/// which callers surface as a warning.
#[derive(Debug, Clone)]
pub struct SpectrumOutcome {
    pub points: Vec<Point>,
    pub space: Option<MVSpace>,
}

pub fn spectrum(frame: &Arc<DFrame>, codomain: Chain) -> Result<SpectrumOutcome, ModelError> {
    let points = enumerate_points(frame, codomain)?;
    if points.is_empty() {
        return Ok(SpectrumOutcome {
            points,
            space: None,
        });
    }
    let carrier = Carrier::new((0..points.len()).map(|i| format!("p{i}")))?;
    let opens = (0..frame.len())
        .map(|a| FuzzySet::from_values(&carrier, points.iter().map(|p| p.value(a)).collect()))
        .collect::<Result<Vec<FuzzySet>, ModelError>>()?;
    let space = MVSpace::from_opens(carrier, codomain, frame.lamination(), opens)?;
    Ok(SpectrumOutcome {
        points,
        space: Some(space),
    })
}

/// The continuous map `pt(q) : pt M → pt L, p ↦ p ∘ q` induced between the
/// spectra by a homomorphism `q : L → M`. Every composite is located in the
/// enumerated point set of `L` and the map is re-verified to be continuous;
/// a failure of either step is an internal error.
pub fn pt_of_hom(hom: &FrameHom, codomain: Chain) -> Result<crate::space::CrispMap, ModelError> {
    let source_spectrum = spectrum(hom.source(), codomain)?;
    let target_spectrum = spectrum(hom.target(), codomain)?;
    let (target_space, source_space) = match (&target_spectrum.space, &source_spectrum.space) {
        (Some(t), Some(s)) => (t, s),
        _ => return Err(ModelError::EmptySpectrum),
    };
    let mut images = Vec::with_capacity(target_spectrum.points.len());
    for p in &target_spectrum.points {
        let composite = p.precompose(hom)?;
        let at = source_spectrum
            .points
            .iter()
            .position(|candidate| candidate == &composite)
            .ok_or_else(|| {
                ModelError::Internal(format!(
                    "composite {composite} is not an enumerated point of the source frame"
                ))
            })?;
        images.push((
            target_space.carrier().points()[images.len()].clone(),
            source_space.carrier().points()[at].clone(),
        ));
    }
    let map = crate::space::CrispMap::new(
        target_space.carrier(),
        source_space.carrier(),
        images.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )?;
    let continuity = crate::space::is_continuous(&map, target_space, source_space)?;
    if !continuity.passed {
        return Err(ModelError::Internal(format!(
            "pt of a homomorphism is not continuous: {}",
            continuity.counterexamples[0]
        )));
    }
    Ok(map)
}
