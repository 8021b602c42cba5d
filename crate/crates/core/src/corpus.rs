//! Built-in desk-scale models: the spaces, frames and maps exercised by the
//! test suite and shipped as `fixtures/` for the command line.

use crate::frame::DFrame;
use crate::fuzzy::{Carrier, FuzzySet};
use crate::space::{generate_topology, CrispMap, MVSpace};
use crate::value::{Chain, MVValue, Subquantale};
use std::sync::Arc;

fn val(s: &str) -> MVValue {
    s.parse().expect("corpus literal")
}

fn l2() -> Chain {
    Chain::new(2).expect("chain")
}

fn l10() -> Chain {
    Chain::new(10).expect("chain")
}

/// Three points, chain Ł10, D = {0,1}; generated by the single fuzzy set
/// ρ = ⟨1/2, 3/5, 3/5⟩. Ten opens, all agreeing on y and z, so the space is
/// neither T0 nor Hausdorff nor sober.
pub fn paper3() -> MVSpace {
    let carrier = Carrier::new(["x", "y", "z"]).expect("carrier");
    let rho = FuzzySet::from_values(&carrier, vec![val("1/2"), val("3/5"), val("3/5")])
        .expect("generator");
    generate_topology(carrier, l10(), Subquantale::boolean(), [rho], 10_000)
        .expect("paper3 closure")
}

/// The generator ρ of [`paper3`], for tests that rebuild pieces of it.
pub fn paper3_generator() -> FuzzySet {
    let space = paper3();
    FuzzySet::from_values(space.carrier(), vec![val("1/2"), val("3/5"), val("3/5")])
        .expect("generator")
}

/// The discrete space on two points over Ł2 (all nine fuzzy sets open),
/// laminated by the full chain.
pub fn disc2() -> MVSpace {
    let carrier = Carrier::new(["x", "y"]).expect("carrier");
    let chain = l2();
    let opens = crate::fuzzy::powerset_iter(chain, &carrier, 100)
        .expect("nine sets")
        .collect::<Vec<FuzzySet>>();
    MVSpace::from_opens(carrier, chain, Subquantale::full_chain(chain), opens).expect("disc2")
}

/// The one-point space over Ł10 with every constant open (lamination by the
/// full chain), the finite stand-in for the one-element test space.
pub fn onept() -> MVSpace {
    let carrier = Carrier::new(["star"]).expect("carrier");
    let chain = l10();
    generate_topology(carrier, chain, Subquantale::full_chain(chain), [], 100)
        .expect("onept closure")
}

/// The indiscrete space on three points: τ = {0̲, 1̲}, D = {0,1}.
pub fn indiscrete3() -> MVSpace {
    let carrier = Carrier::new(["x", "y", "z"]).expect("carrier");
    let opens = [FuzzySet::bottom(&carrier), FuzzySet::top(&carrier)];
    MVSpace::from_opens(carrier, l10(), Subquantale::boolean(), opens).expect("indiscrete3")
}

/// The three-chain frame bot < m < top with m·m = bot and m+m = top: the
/// Ł2 chain in table form. Spatial; its unique point over Ł2 sends m to 1/2.
pub fn f3() -> Arc<DFrame> {
    let elements = vec!["bot".to_owned(), "m".to_owned(), "top".to_owned()];
    // Indices: bot = 0, m = 1, top = 2.
    let join = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
    let meet = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
    let plus = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    let times = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
    let scalar = vec![(val("0"), vec![0, 0, 0]), (val("1"), vec![0, 1, 2])];
    DFrame::from_tables(elements, join, meet, plus, times, scalar, 2, 0).expect("f3")
}

/// The three-chain frame with idempotent multiplication (m·m = m) and
/// m+m = top. Its unique point over Ł10 sends m to 1, so m̂ = 1̂ and the
/// frame is not spatial over Ł10.
pub fn f4() -> Arc<DFrame> {
    let elements = vec!["bot".to_owned(), "m".to_owned(), "top".to_owned()];
    let join = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
    let meet = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
    let plus = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    let times = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
    let scalar = vec![(val("0"), vec![0, 0, 0]), (val("1"), vec![0, 1, 2])];
    DFrame::from_tables(elements, join, meet, plus, times, scalar, 2, 0).expect("f4")
}

/// Default point-enumeration codomain for each corpus frame.
pub fn f3_codomain() -> Chain {
    l2()
}

pub fn f4_codomain() -> Chain {
    l10()
}

/// All corpus spaces by name, spectra of the corpus frames included.
pub fn corpus_spaces() -> Vec<(String, MVSpace)> {
    let spec3 = crate::frame::spectrum(&f3(), f3_codomain())
        .expect("f3 spectrum")
        .space
        .expect("f3 has a point");
    let spec4 = crate::frame::spectrum(&f4(), f4_codomain())
        .expect("f4 spectrum")
        .space
        .expect("f4 has a point");
    vec![
        ("paper3".to_owned(), paper3()),
        ("disc2".to_owned(), disc2()),
        ("onept".to_owned(), onept()),
        ("indiscrete3".to_owned(), indiscrete3()),
        ("spectrum-f3".to_owned(), spec3),
        ("spectrum-f4".to_owned(), spec4),
    ]
}

/// The two table-presented corpus frames with their default codomains.
pub fn corpus_frames() -> Vec<(String, Arc<DFrame>, Chain)> {
    vec![
        ("f3".to_owned(), f3(), f3_codomain()),
        ("f4".to_owned(), f4(), f4_codomain()),
    ]
}

/// Named continuous maps between corpus spaces (sharing chain and
/// lamination degree), used by the continuity, functoriality and naturality
/// suites.
pub fn corpus_continuous_maps() -> Vec<(String, CrispMap, MVSpace, MVSpace)> {
    let p3 = paper3();
    let d2 = disc2();
    let ind3 = indiscrete3();
    let spec4 = crate::frame::spectrum(&f4(), f4_codomain())
        .expect("f4 spectrum")
        .space
        .expect("f4 has a point");
    let swap_yz = CrispMap::new(
        p3.carrier(),
        p3.carrier(),
        [("x", "x"), ("y", "z"), ("z", "y")],
    )
    .expect("swap");
    let swap_xy =
        CrispMap::new(d2.carrier(), d2.carrier(), [("x", "y"), ("y", "x")]).expect("swap");
    let rename = CrispMap::new(
        p3.carrier(),
        ind3.carrier(),
        [("x", "x"), ("y", "y"), ("z", "z")],
    )
    .expect("rename");
    let collapse = CrispMap::constant(p3.carrier(), spec4.carrier(), "p0").expect("collapse");
    vec![
        (
            "paper3-identity".to_owned(),
            CrispMap::identity(p3.carrier()),
            p3.clone(),
            p3.clone(),
        ),
        ("paper3-swap-yz".to_owned(), swap_yz, p3.clone(), p3.clone()),
        (
            "disc2-identity".to_owned(),
            CrispMap::identity(d2.carrier()),
            d2.clone(),
            d2.clone(),
        ),
        ("disc2-swap-xy".to_owned(), swap_xy, d2.clone(), d2),
        ("paper3-to-indiscrete3".to_owned(), rename, p3.clone(), ind3),
        ("paper3-to-spectrum-f4".to_owned(), collapse, p3, spec4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::is_continuous;

    #[test]
    fn every_corpus_space_is_a_topology() {
        for (name, space) in corpus_spaces() {
            let report = space.check_axioms();
            assert!(report.passed, "{name}: {report}");
        }
    }

    #[test]
    fn every_corpus_frame_passes_the_laws() {
        for (name, frame, _) in corpus_frames() {
            let report = frame.check_d_frame();
            assert!(report.passed, "{name}: {report}");
        }
    }

    #[test]
    fn every_corpus_map_is_continuous() {
        for (name, map, src, dst) in corpus_continuous_maps() {
            let report = is_continuous(&map, &src, &dst).unwrap();
            assert!(report.passed, "{name}: {report}");
        }
    }

    #[test]
    fn hausdorff_implies_t0_on_the_corpus() {
        for (name, space) in corpus_spaces() {
            if space.is_hausdorff() {
                assert!(space.is_t0(), "{name} is Hausdorff but not T0");
            }
        }
    }
}
