//! Exact-arithmetic workbench for finite MV-topological spaces and D-frames.
//!
//! Everything here works over a finite Łukasiewicz chain `Ł_q = {0, 1/q, …, 1}`
//! with exact rational values: fuzzy sets over a finite carrier, D-laminated
//! MV-topologies, table-presented D-frames, the `Ω ⊣ pt` adjunction with its
//! unit and counit, sobriety and spatiality deciders, and the interior /
//! neighbourhood / filter operator calculus. All checks are exhaustive over
//! the declared finite structures and report structured counterexamples.
//!
//! Point enumeration targets a declared finite codomain chain, so verdicts
//! that depend on the completeness of the enumeration (sober, non-spatial)
//! are qualified "over Ł_q" throughout the API.

pub mod adjunction;
pub mod corpus;
pub mod error;
pub mod frame;
pub mod fuzzy;
pub mod operators;
pub mod report;
pub mod schema;
pub mod space;
pub mod value;

pub use error::ModelError;
pub use frame::{DFrame, FrameHom, Point, SpectrumOutcome};
pub use fuzzy::{Carrier, FuzzySet};
pub use report::{CheckReport, Witness};
pub use space::{CrispMap, MVSpace};
pub use value::{Chain, MVValue, Subquantale};

/// Default ceiling on materialized fuzzy powersets and generated topologies.
pub const DEFAULT_SIZE_LIMIT: usize = 1_000_000;
