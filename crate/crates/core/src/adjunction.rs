//! The functors Ω and pt on objects and morphisms, the unit and counit of
//! the adjunction between D-laminated MV-spaces and D-frames, the triangle
//! identities, and the sobriety / spatiality deciders.

use crate::error::ModelError;
use crate::frame::{
    check_frame_hom, enumerate_points, spectrum, DFrame, FrameHom, OpKind, Point, SpectrumOutcome,
};
use crate::fuzzy::FuzzySet;
use crate::report::CheckReport;
use crate::space::{is_continuous, CrispMap, MVSpace};
use crate::value::{Chain, MVValue};
use std::fmt;
use std::sync::Arc;

/// Canonical element name for an open inside an Ω-frame: its value vector.
pub fn open_element_name(open: &FuzzySet) -> String {
    let body: Vec<String> = open.values().iter().map(|v| v.to_string()).collect();
    format!("({})", body.join(","))
}

/// `Ω(S)`: the opens of a space packaged as a table-presented D-frame with
/// `∨`, `∧`, `⊙` as `·`, `⊕` as `+`, and the scalar action of `D`.
pub fn omega_of_space(space: &MVSpace) -> Result<Arc<DFrame>, ModelError> {
    let opens = space.opens();
    let names: Vec<String> = opens.iter().map(open_element_name).collect();
    let locate = |set: FuzzySet| -> Result<usize, ModelError> {
        space.open_index(&set).ok_or_else(|| {
            ModelError::Invalid(format!(
                "family is not closed: {set} is required but not open"
            ))
        })
    };
    let one = locate(FuzzySet::top(space.carrier()))?;
    let zero = locate(FuzzySet::bottom(space.carrier()))?;
    DFrame::from_fn(
        names,
        one,
        zero,
        space.lamination(),
        |kind, a, b| {
            let (x, y) = (&opens[a], &opens[b]);
            let result = match kind {
                OpKind::Join => x.join(y)?,
                OpKind::Meet => x.meet(y)?,
                OpKind::Plus => x.add(y)?,
                OpKind::Times => x.mul(y)?,
            };
            locate(result)
        },
        |r, a| locate(opens[a].scalar_mul(r)),
    )
}

/// `Ω(f)`: the preimage homomorphism `Ω(T) → Ω(S)` of a continuous map
/// `f : S → T`. A discontinuous map is rejected with its counterexample.
pub fn omega_of_map(
    map: &CrispMap,
    source: &MVSpace,
    target: &MVSpace,
) -> Result<FrameHom, ModelError> {
    let continuity = is_continuous(map, source, target)?;
    if !continuity.passed {
        return Err(ModelError::NotContinuous(
            continuity.counterexamples[0].to_string(),
        ));
    }
    let source_frame = omega_of_space(source)?;
    let target_frame = omega_of_space(target)?;
    let assignment = target
        .opens()
        .iter()
        .map(|open| {
            let pre = map.preimage(open)?;
            source.open_index(&pre).ok_or_else(|| {
                ModelError::Internal(format!("preimage {pre} vanished after continuity check"))
            })
        })
        .collect::<Result<Vec<usize>, ModelError>>()?;
    FrameHom::new(target_frame, source_frame, assignment)
}

/// Everything the adjunction needs to know about one space at once:
/// `Ω(S)`, its enumerated points over the codomain, the spectrum space, and
/// the unit evaluations `η(x) = ev_x` located inside the point set.
pub struct SpaceAnalysis {
    pub frame: Arc<DFrame>,
    pub points: Vec<Point>,
    pub spectrum: SpectrumOutcome,
    /// Per carrier point `x`, the evaluation `α ↦ α(x)`.
    pub evaluations: Vec<Point>,
    /// Per carrier point, the index of its evaluation in `points`.
    pub evaluation_indices: Vec<usize>,
}

pub fn analyze_space(space: &MVSpace, codomain: Chain) -> Result<SpaceAnalysis, ModelError> {
    for open in space.opens() {
        if !open.is_valued_in(codomain) {
            return Err(ModelError::OutsideChain {
                value: open.to_string(),
                chain: codomain.to_string(),
            });
        }
    }
    let frame = omega_of_space(space)?;
    let points = enumerate_points(&frame, codomain)?;
    let spectrum = spectrum(&frame, codomain)?;
    if spectrum.points != points {
        return Err(ModelError::Internal(
            "spectrum and enumeration disagree".to_owned(),
        ));
    }
    let mut evaluations = Vec::with_capacity(space.carrier().len());
    let mut evaluation_indices = Vec::with_capacity(space.carrier().len());
    for x in 0..space.carrier().len() {
        let values: Vec<MVValue> = space.opens().iter().map(|o| o.get(x)).collect();
        let ev = Point::new(Arc::clone(&frame), codomain, values)?;
        let at = points.iter().position(|p| p == &ev).ok_or_else(|| {
            ModelError::Internal(format!(
                "evaluation at {} is missing from the enumerated points",
                space.carrier().points()[x]
            ))
        })?;
        evaluations.push(ev);
        evaluation_indices.push(at);
    }
    Ok(SpaceAnalysis {
        frame,
        points,
        spectrum,
        evaluations,
        evaluation_indices,
    })
}

impl SpaceAnalysis {
    /// The unit as a crisp map `S → pt Ω(S)` into the spectrum carrier.
    pub fn eta_map(&self, space: &MVSpace) -> Result<CrispMap, ModelError> {
        let spectrum_space = self
            .spectrum
            .space
            .as_ref()
            .ok_or(ModelError::EmptySpectrum)?;
        CrispMap::new(
            space.carrier(),
            spectrum_space.carrier(),
            space
                .carrier()
                .points()
                .iter()
                .zip(&self.evaluation_indices)
                .map(|(x, &i)| (x.clone(), format!("p{i}"))),
        )
    }
}

/// The unit `η_X : x ↦ (α ↦ α(x))`, with every evaluation verified to land
/// in the enumerated point set.
pub struct Unit {
    pub analysis: SpaceAnalysis,
}

pub fn unit(space: &MVSpace, codomain: Chain) -> Result<Unit, ModelError> {
    Ok(Unit {
        analysis: analyze_space(space, codomain)?,
    })
}

/// The counit `ε_M : a ↦ â` as an actual homomorphism `M → Ω(pt M)`,
/// verified to pass the homomorphism check.
pub struct Counit {
    pub spectrum: SpectrumOutcome,
    pub spectrum_frame: Arc<DFrame>,
    pub hom: FrameHom,
}

pub fn counit(frame: &Arc<DFrame>, codomain: Chain) -> Result<Counit, ModelError> {
    let outcome = spectrum(frame, codomain)?;
    let space = outcome.space.as_ref().ok_or(ModelError::EmptySpectrum)?;
    let spectrum_frame = omega_of_space(space)?;
    let assignment = (0..frame.len())
        .map(|a| {
            let hat = FuzzySet::from_values(
                space.carrier(),
                outcome.points.iter().map(|p| p.value(a)).collect(),
            )?;
            space.open_index(&hat).ok_or_else(|| {
                ModelError::Internal(format!("{hat} is missing from the spectrum opens"))
            })
        })
        .collect::<Result<Vec<usize>, ModelError>>()?;
    let hom = FrameHom::new(Arc::clone(frame), Arc::clone(&spectrum_frame), assignment)?;
    let verdict = check_frame_hom(&hom)?;
    if !verdict.passed {
        return Err(ModelError::Internal(format!(
            "counit fails the homomorphism check: {}",
            verdict.counterexamples[0]
        )));
    }
    Ok(Counit {
        spectrum: outcome,
        spectrum_frame,
        hom,
    })
}

/// Triangle identity on the space side: `Ω(η_X) ∘ ε_{Ω(X)} = id_{Ω(X)}`,
/// verified open by open through the actual composed homomorphisms.
pub fn check_triangle_space(space: &MVSpace, codomain: Chain) -> Result<CheckReport, ModelError> {
    let analysis = analyze_space(space, codomain)?;
    let spectrum_space = analysis
        .spectrum
        .space
        .as_ref()
        .ok_or(ModelError::EmptySpectrum)?;
    let eta = analysis.eta_map(space)?;
    let epsilon = counit(&analysis.frame, codomain)?;
    let omega_eta = omega_of_map(&eta, space, spectrum_space)?;
    let composed = epsilon.hom.compose(&omega_eta)?;
    let mut report = CheckReport::builder("triangle-space");
    for (a, open) in space.opens().iter().enumerate() {
        let back = composed.apply(a);
        report.expect(
            back == a,
            "omega-eta-after-counit-is-identity",
            &[open],
            open_element_name(open),
            composed.target().name(back).to_owned(),
        );
    }
    Ok(report.finish())
}

/// Triangle identity on the frame side: `pt(ε_M) ∘ η_{pt M} = id_{pt M}`,
/// verified point by point by composing each evaluation with the counit.
pub fn check_triangle_frame(
    frame: &Arc<DFrame>,
    codomain: Chain,
) -> Result<CheckReport, ModelError> {
    let epsilon = counit(frame, codomain)?;
    let space = epsilon
        .spectrum
        .space
        .as_ref()
        .ok_or(ModelError::EmptySpectrum)?;
    let spectrum_analysis = analyze_space(space, codomain)?;
    let mut report = CheckReport::builder("triangle-frame");
    for (i, p) in epsilon.spectrum.points.iter().enumerate() {
        // η_{pt M}(p) is the evaluation of the spectrum space at its i-th
        // carrier point; pt(ε_M) precomposes it with the counit.
        let eta_p = &spectrum_analysis.evaluations[i];
        let back = eta_p.precompose(&epsilon.hom)?;
        report.expect(
            &back == p,
            "pt-counit-after-eta-is-identity",
            &[format!("p{i}")],
            p.to_string(),
            back.to_string(),
        );
    }
    Ok(report.finish())
}

/// Sobriety verdict over the declared codomain chain. A positive verdict is
/// qualified "over V": enumeration is complete only relative to the chain.
/// Negative witnesses are absolute, since every chain-valued point is a
/// genuine point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoberVerdict {
    Sober { codomain: Chain, point_count: usize },
    NotSober { witness: SoberWitness },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoberWitness {
    /// Two carrier points share the same evaluation: `η` is not injective.
    EvaluationsCoincide { first: String, second: String },
    /// An enumerated point that is no evaluation: `η` is not surjective.
    UnmatchedPoint { point: String },
}

impl fmt::Display for SoberWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SoberWitness::EvaluationsCoincide { first, second } => {
                write!(f, "eta({first}) = eta({second})")
            }
            SoberWitness::UnmatchedPoint { point } => {
                write!(f, "point [{point}] is not an evaluation")
            }
        }
    }
}

impl SoberVerdict {
    pub fn is_sober(&self) -> bool {
        matches!(self, SoberVerdict::Sober { .. })
    }
}

pub fn is_sober(space: &MVSpace, codomain: Chain) -> Result<SoberVerdict, ModelError> {
    let analysis = analyze_space(space, codomain)?;
    sober_from_analysis(space, codomain, &analysis)
}

fn sober_from_analysis(
    space: &MVSpace,
    codomain: Chain,
    analysis: &SpaceAnalysis,
) -> Result<SoberVerdict, ModelError> {
    let names = space.carrier().points();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            if analysis.evaluations[i] == analysis.evaluations[j] {
                return Ok(SoberVerdict::NotSober {
                    witness: SoberWitness::EvaluationsCoincide {
                        first: names[i].clone(),
                        second: names[j].clone(),
                    },
                });
            }
        }
    }
    for (k, p) in analysis.points.iter().enumerate() {
        if !analysis.evaluation_indices.contains(&k) {
            return Ok(SoberVerdict::NotSober {
                witness: SoberWitness::UnmatchedPoint {
                    point: p.to_string(),
                },
            });
        }
    }
    Ok(SoberVerdict::Sober {
        codomain,
        point_count: analysis.points.len(),
    })
}

/// Spatiality verdict: injectivity of the counit over the enumerated points.
/// A positive verdict is absolute (the chain-valued points already separate
/// the elements); a negative one is qualified over the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpatialVerdict {
    Spatial {
        point_count: usize,
    },
    NotSpatial {
        codomain: Chain,
        first: String,
        second: String,
    },
}

impl SpatialVerdict {
    pub fn is_spatial(&self) -> bool {
        matches!(self, SpatialVerdict::Spatial { .. })
    }
}

pub fn is_spatial(frame: &Arc<DFrame>, codomain: Chain) -> Result<SpatialVerdict, ModelError> {
    let points = enumerate_points(frame, codomain)?;
    for a in 0..frame.len() {
        for b in a + 1..frame.len() {
            if points.iter().all(|p| p.value(a) == p.value(b)) {
                return Ok(SpatialVerdict::NotSpatial {
                    codomain,
                    first: frame.name(a).to_owned(),
                    second: frame.name(b).to_owned(),
                });
            }
        }
    }
    Ok(SpatialVerdict::Spatial {
        point_count: points.len(),
    })
}

/// Cross-checks the sobriety verdict against the neighbourhood-system
/// characterization: the space is sober exactly when every enumerated point
/// of `Ω(S)` coincides with `μ_x` restricted to the opens for a unique `x`.
/// For sober spaces the corollary `p⁻¹[1] = {α ∈ τ : α(x) = 1}` is verified
/// as well.
pub fn sober_via_nbhd(space: &MVSpace, codomain: Chain) -> Result<CheckReport, ModelError> {
    let analysis = analyze_space(space, codomain)?;
    let verdict = sober_from_analysis(space, codomain, &analysis)?;
    let mut report = CheckReport::builder("sober-vs-neighbourhood");
    let names = space.carrier().points();

    let mut all_unique = true;
    let mut matches_per_point: Vec<Vec<usize>> = Vec::new();
    for p in &analysis.points {
        let mut matches = Vec::new();
        for (xi, x) in names.iter().enumerate() {
            let mut agrees = true;
            for (a, open) in space.opens().iter().enumerate() {
                if space.mu(x, open)? != p.value(a) {
                    agrees = false;
                    break;
                }
            }
            if agrees {
                matches.push(xi);
            }
        }
        if matches.len() != 1 {
            all_unique = false;
        }
        matches_per_point.push(matches);
    }
    report.expect(
        all_unique == verdict.is_sober(),
        "sober-iff-unique-neighbourhood-system",
        &["all points"],
        format!("sober = {}", verdict.is_sober()),
        format!("unique μ_x match = {all_unique}"),
    );
    if let SoberVerdict::Sober { .. } = verdict {
        for (p, matches) in analysis.points.iter().zip(&matches_per_point) {
            let x = names[matches[0]].as_str();
            for (a, open) in space.opens().iter().enumerate() {
                let in_kernel = p.value(a) == MVValue::one();
                let full_at_x = open.value_at(x)? == MVValue::one();
                report.expect(
                    in_kernel == full_at_x,
                    "kernel-matches-open-neighbourhoods",
                    &[x.to_owned(), open.to_string()],
                    format!("p({}) = 1 iff open is full at {x}", open_element_name(open)),
                    format!("p = {}, value at {x} = {}", p.value(a), open.value_at(x)?),
                );
            }
        }
    } else {
        report.note(format!(
            "not sober; μ_x matches per point: {:?}",
            matches_per_point
        ));
    }
    Ok(report.finish())
}

/// Unit naturality square for a continuous map `f : S → T`:
/// `pt(Ω(f)) ∘ η_S = η_T ∘ f`.
pub fn check_unit_naturality(
    map: &CrispMap,
    source: &MVSpace,
    target: &MVSpace,
    codomain: Chain,
) -> Result<CheckReport, ModelError> {
    let omega_f = omega_of_map(map, source, target)?;
    let source_analysis = analyze_space(source, codomain)?;
    let target_analysis = analyze_space(target, codomain)?;
    let mut report = CheckReport::builder("unit-naturality");
    for (xi, x) in source.carrier().points().iter().enumerate() {
        let left = source_analysis.evaluations[xi].precompose(&omega_f)?;
        let fx = source.carrier().index_of(x)?;
        let right = &target_analysis.evaluations[map.image_index(fx)];
        report.expect(
            &left == right,
            "naturality-square",
            &[x],
            right.to_string(),
            left.to_string(),
        );
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::value::Subquantale;

    fn l2() -> Chain {
        Chain::new(2).unwrap()
    }

    fn l10() -> Chain {
        Chain::new(10).unwrap()
    }

    #[test]
    fn omega_of_paper3_has_the_expected_hasse_diagram() {
        let space = corpus::paper3();
        let frame = omega_of_space(&space).unwrap();
        assert_eq!(frame.len(), 10);
        assert!(frame.check_d_frame().passed);

        // Covering relation, written as (value at x, value at y) pairs since
        // every open agrees on y and z.
        let pair = |o: &FuzzySet| (o.get(0).to_string(), o.get(1).to_string());
        let opens = space.opens();
        let mut covers = Vec::new();
        for a in 0..frame.len() {
            for b in 0..frame.len() {
                if a == b || !frame.le(b, a) {
                    continue;
                }
                let strictly_between = (0..frame.len()).any(|c| {
                    c != a
                        && c != b
                        && frame.le(b, c)
                        && frame.le(c, a)
                        && !frame.le(a, c)
                        && !frame.le(c, b)
                });
                if !strictly_between {
                    covers.push((pair(&opens[a]), pair(&opens[b])));
                }
            }
        }
        covers.sort();
        let mut expected: Vec<((String, String), (String, String))> = [
            (("1", "1"), ("1/2", "1")),
            (("1/2", "1"), ("1/2", "4/5")),
            (("1/2", "1"), ("0", "1")),
            (("1/2", "4/5"), ("1/2", "3/5")),
            (("1/2", "4/5"), ("0", "4/5")),
            (("0", "1"), ("0", "4/5")),
            (("1/2", "3/5"), ("0", "3/5")),
            (("0", "4/5"), ("0", "3/5")),
            (("0", "3/5"), ("0", "2/5")),
            (("0", "2/5"), ("0", "1/5")),
            (("0", "1/5"), ("0", "0")),
        ]
        .iter()
        .map(|((a1, a2), (b1, b2))| {
            (
                (a1.to_string(), a2.to_string()),
                (b1.to_string(), b2.to_string()),
            )
        })
        .collect();
        expected.sort();
        assert_eq!(covers, expected);
    }

    #[test]
    fn omega_of_small_spaces() {
        let ind = omega_of_space(&corpus::indiscrete3()).unwrap();
        assert_eq!(ind.len(), 2);
        assert!(ind.check_d_frame().passed);

        let disc = omega_of_space(&corpus::disc2()).unwrap();
        assert_eq!(disc.len(), 9);
        assert!(disc.check_d_frame().passed);
    }

    #[test]
    fn omega_of_maps_and_contravariance() {
        let space = corpus::paper3();
        let id = CrispMap::identity(space.carrier());
        let omega_id = omega_of_map(&id, &space, &space).unwrap();
        assert_eq!(omega_id, FrameHom::identity(omega_id.source()));

        let swap = CrispMap::new(
            space.carrier(),
            space.carrier(),
            [("x", "x"), ("y", "z"), ("z", "y")],
        )
        .unwrap();
        let omega_swap = omega_of_map(&swap, &space, &space).unwrap();
        // Every open is symmetric in y and z, so the preimage map fixes τ.
        assert_eq!(omega_swap, FrameHom::identity(omega_swap.source()));

        let collapse = CrispMap::constant(space.carrier(), space.carrier(), "x").unwrap();
        assert!(matches!(
            omega_of_map(&collapse, &space, &space),
            Err(ModelError::NotContinuous(_))
        ));

        for (name, f, src, dst) in corpus::corpus_continuous_maps() {
            let omega_f = omega_of_map(&f, &src, &dst).unwrap();
            assert!(check_frame_hom(&omega_f).unwrap().passed, "{name}");
            // Contravariance against the identity on both sides.
            let id_src = omega_of_map(&CrispMap::identity(src.carrier()), &src, &src).unwrap();
            let id_dst = omega_of_map(&CrispMap::identity(dst.carrier()), &dst, &dst).unwrap();
            assert_eq!(omega_f.compose(&id_src).unwrap(), omega_f, "{name}");
            assert_eq!(id_dst.compose(&omega_f).unwrap(), omega_f, "{name}");
        }
    }

    #[test]
    fn contravariance_on_a_composite() {
        let space = corpus::paper3();
        let swap = CrispMap::new(
            space.carrier(),
            space.carrier(),
            [("x", "x"), ("y", "z"), ("z", "y")],
        )
        .unwrap();
        let composite = swap.compose(&swap).unwrap();
        let lhs = omega_of_map(&composite, &space, &space).unwrap();
        let omega_swap = omega_of_map(&swap, &space, &space).unwrap();
        let rhs = omega_swap.compose(&omega_swap).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_collapses_y_and_z_on_paper3() {
        let space = corpus::paper3();
        let u = unit(&space, l10()).unwrap();
        let evals = &u.analysis.evaluations;
        assert_eq!(evals[1], evals[2]);
        assert_ne!(evals[0], evals[1]);
        let rho_index = space.open_index(&corpus::paper3_generator()).unwrap();
        assert_eq!(evals[1].value(rho_index).to_string(), "3/5");
        assert_eq!(evals[0].value(rho_index).to_string(), "1/2");
        assert_eq!(u.analysis.points.len(), 2);
    }

    #[test]
    fn unit_on_one_point_and_discrete_spaces() {
        let one = unit(&corpus::onept(), l10()).unwrap();
        assert_eq!(one.analysis.points.len(), 1);
        assert_eq!(one.analysis.evaluations.len(), 1);

        let disc = unit(&corpus::disc2(), l2()).unwrap();
        assert_eq!(disc.analysis.points.len(), 2);
        assert_ne!(disc.analysis.evaluations[0], disc.analysis.evaluations[1]);
    }

    #[test]
    fn counit_injectivity() {
        let omega3 = omega_of_space(&corpus::paper3()).unwrap();
        let eps = counit(&omega3, l10()).unwrap();
        assert!(eps.hom.is_injective());

        let eps3 = counit(&corpus::f3(), l2()).unwrap();
        assert!(eps3.hom.is_injective());

        let eps4 = counit(&corpus::f4(), l10()).unwrap();
        assert!(!eps4.hom.is_injective());
        let m = corpus::f4().index_of("m").unwrap();
        let top = corpus::f4().index_of("top").unwrap();
        assert_eq!(eps4.hom.apply(m), eps4.hom.apply(top));
    }

    #[test]
    fn triangles_hold_on_the_corpus() {
        for (name, space) in corpus::corpus_spaces() {
            let codomain = space.chain();
            let t = check_triangle_space(&space, codomain).unwrap();
            assert!(t.passed, "space triangle on {name}: {t}");
            let frame = omega_of_space(&space).unwrap();
            let t = check_triangle_frame(&frame, codomain).unwrap();
            assert!(t.passed, "frame triangle on Ω({name}): {t}");
        }
        for (name, frame, codomain) in corpus::corpus_frames() {
            let t = check_triangle_frame(&frame, codomain).unwrap();
            assert!(t.passed, "frame triangle on {name}: {t}");
        }
    }

    #[test]
    fn sober_verdicts() {
        let paper3 = is_sober(&corpus::paper3(), l10()).unwrap();
        match paper3 {
            SoberVerdict::NotSober {
                witness: SoberWitness::EvaluationsCoincide { first, second },
            } => {
                assert_eq!((first.as_str(), second.as_str()), ("y", "z"));
            }
            other => panic!("expected collision witness, got {other:?}"),
        }

        let disc2 = is_sober(&corpus::disc2(), l2()).unwrap();
        assert_eq!(
            disc2,
            SoberVerdict::Sober {
                codomain: l2(),
                point_count: 2
            }
        );

        let ind = is_sober(&corpus::indiscrete3(), l10()).unwrap();
        assert!(!ind.is_sober());

        for (name, frame, codomain) in corpus::corpus_frames() {
            let space = spectrum(&frame, codomain).unwrap().space.unwrap();
            let verdict = is_sober(&space, codomain).unwrap();
            assert!(verdict.is_sober(), "spectrum of {name} must be sober");
        }
    }

    #[test]
    fn spatial_verdicts() {
        for (name, space) in corpus::corpus_spaces() {
            let frame = omega_of_space(&space).unwrap();
            let verdict = is_spatial(&frame, space.chain()).unwrap();
            assert!(verdict.is_spatial(), "Ω({name}) must be spatial");
        }
        let f4 = is_spatial(&corpus::f4(), l10()).unwrap();
        assert_eq!(
            f4,
            SpatialVerdict::NotSpatial {
                codomain: l10(),
                first: "m".to_owned(),
                second: "top".to_owned()
            }
        );
        let f3 = is_spatial(&corpus::f3(), l2()).unwrap();
        assert!(f3.is_spatial());
    }

    #[test]
    fn sober_neighbourhood_characterization() {
        for (name, space) in corpus::corpus_spaces() {
            let report = sober_via_nbhd(&space, space.chain()).unwrap();
            assert!(report.passed, "{name}: {report}");
        }
    }

    #[test]
    fn t0_iff_eta_injective() {
        for (name, space) in corpus::corpus_spaces() {
            let analysis = analyze_space(&space, space.chain()).unwrap();
            let mut injective = true;
            for i in 0..analysis.evaluations.len() {
                for j in i + 1..analysis.evaluations.len() {
                    if analysis.evaluations[i] == analysis.evaluations[j] {
                        injective = false;
                    }
                }
            }
            assert_eq!(space.is_t0(), injective, "{name}");
        }
    }

    #[test]
    fn eta_is_a_homeomorphism_on_sober_spaces() {
        for (name, space) in corpus::corpus_spaces() {
            let analysis = analyze_space(&space, space.chain()).unwrap();
            let verdict = sober_from_analysis(&space, space.chain(), &analysis).unwrap();
            if !verdict.is_sober() {
                continue;
            }
            let eta = analysis.eta_map(&space).unwrap();
            let spectrum_space = analysis.spectrum.space.as_ref().unwrap();
            assert!(eta.is_bijective(), "{name}");
            assert!(
                is_continuous(&eta, &space, spectrum_space).unwrap().passed,
                "{name}: eta not continuous"
            );
            let back = eta.inverse().unwrap();
            assert!(
                is_continuous(&back, spectrum_space, &space).unwrap().passed,
                "{name}: eta inverse not continuous"
            );
        }
    }

    #[test]
    fn duality_on_sober_spatial_pairs() {
        // For sober S and M = Ω(S): spectrum(M) ≅ S via η and Ω(spectrum(M)) ≅ M via ε.
        for (name, space) in corpus::corpus_spaces() {
            let analysis = analyze_space(&space, space.chain()).unwrap();
            let verdict = sober_from_analysis(&space, space.chain(), &analysis).unwrap();
            if !verdict.is_sober() {
                continue;
            }
            let eps = counit(&analysis.frame, space.chain()).unwrap();
            assert!(eps.hom.is_injective(), "{name}");
            assert_eq!(
                eps.hom.source().len(),
                eps.hom.target().len(),
                "{name}: counit is not onto a same-size frame"
            );
            // Transported tables agree: the counit is a bijective homomorphism
            // and so is its inverse.
            let inverse_map: Vec<usize> = {
                let mut back = vec![0usize; eps.hom.target().len()];
                for (a, &b) in eps.hom.assignment().iter().enumerate() {
                    back[b] = a;
                }
                back
            };
            let inverse = FrameHom::new(
                Arc::clone(eps.hom.target()),
                Arc::clone(eps.hom.source()),
                inverse_map,
            )
            .unwrap();
            assert!(check_frame_hom(&inverse).unwrap().passed, "{name}");
        }
    }

    #[test]
    fn naturality_on_corpus_maps() {
        for (name, f, src, dst) in corpus::corpus_continuous_maps() {
            let report = check_unit_naturality(&f, &src, &dst, src.chain()).unwrap();
            assert!(report.passed, "{name}: {report}");
        }
    }

    #[test]
    fn omega_is_a_d_frame_on_every_corpus_space() {
        for (name, space) in corpus::corpus_spaces() {
            let frame = omega_of_space(&space).unwrap();
            let report = frame.check_d_frame();
            assert!(report.passed, "Omega({name}): {report}");
        }
    }

    #[test]
    fn spectrum_of_omega_paper3_has_two_points_and_ten_distinct_opens() {
        let space = corpus::paper3();
        let frame = omega_of_space(&space).unwrap();
        let outcome = crate::frame::spectrum(&frame, l10()).unwrap();
        assert_eq!(outcome.points.len(), 2);
        let spectrum_space = outcome.space.unwrap();
        assert_eq!(spectrum_space.opens().len(), 10);
        assert!(spectrum_space.check_axioms().passed);
        // Every open vector is the (value at x, value at y) pair of one
        // original open.
        for (a, open) in space.opens().iter().enumerate() {
            let hat = FuzzySet::from_values(
                spectrum_space.carrier(),
                outcome.points.iter().map(|p| p.value(a)).collect(),
            )
            .unwrap();
            assert!(spectrum_space.contains_open(&hat), "{open} lost its hat");
        }
    }

    #[test]
    fn pt_is_contravariantly_functorial_on_a_composite() {
        // q1 = counit of f4 : F4 → G, q2 = counit of G : G → H; then
        // pt(q2 ∘ q1) = pt(q1) composed after pt(q2).
        let eps1 = counit(&corpus::f4(), l10()).unwrap();
        let g = Arc::clone(eps1.hom.target());
        let eps2 = counit(&g, l10()).unwrap();
        let composite = eps1.hom.compose(&eps2.hom).unwrap();
        let lhs = crate::frame::pt_of_hom(&composite, l10()).unwrap();
        let pt_q2 = crate::frame::pt_of_hom(&eps2.hom, l10()).unwrap();
        let pt_q1 = crate::frame::pt_of_hom(&eps1.hom, l10()).unwrap();
        let rhs = pt_q2.compose(&pt_q1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pt_of_omega_swap_fixes_both_points() {
        let space = corpus::paper3();
        let swap = CrispMap::new(
            space.carrier(),
            space.carrier(),
            [("x", "x"), ("y", "z"), ("z", "y")],
        )
        .unwrap();
        let omega_swap = omega_of_map(&swap, &space, &space).unwrap();
        let map = crate::frame::pt_of_hom(&omega_swap, l10()).unwrap();
        assert_eq!(map, CrispMap::identity(map.source()));
    }

    #[test]
    fn analysis_rejects_codomain_not_containing_the_values() {
        let space = corpus::disc2();
        let err = analyze_space(&space, Chain::new(3).unwrap());
        assert!(matches!(err, Err(ModelError::OutsideChain { .. })));
        let _ = Subquantale::boolean();
    }
}
