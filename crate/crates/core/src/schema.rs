//! JSON file formats for spaces, frames and operator tables, plus the
//! conversions between the file form and the checked in-memory structures.

use crate::error::ModelError;
use crate::frame::{DFrame, OpKind};
use crate::fuzzy::{Carrier, FuzzySet};
use crate::operators::{InteriorOperator, NbhdFunction};
use crate::space::{generate_topology, MVSpace};
use crate::value::{Chain, MVValue, Subquantale};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The `"D"` field: `"boolean"` for {0,1}, `"chain"` for the whole chain,
/// or an explicit list of value literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DSpec {
    Named(String),
    Explicit(Vec<String>),
}

impl DSpec {
    pub fn resolve(&self, chain: Chain) -> Result<Subquantale, ModelError> {
        match self {
            DSpec::Named(name) => match name.as_str() {
                "boolean" => Ok(Subquantale::boolean()),
                "chain" => Ok(Subquantale::full_chain(chain)),
                other => Err(ModelError::Invalid(format!(
                    "unknown D keyword {other:?}; expected \"boolean\", \"chain\" or a list"
                ))),
            },
            DSpec::Explicit(literals) => {
                let mut values = Vec::with_capacity(literals.len());
                for lit in literals {
                    values.push(lit.parse::<MVValue>()?);
                }
                Ok(Subquantale::new(values))
            }
        }
    }

    pub fn for_subquantale(d: &Subquantale, chain: Chain) -> DSpec {
        if d == &Subquantale::boolean() {
            DSpec::Named("boolean".to_owned())
        } else if d == &Subquantale::full_chain(chain) {
            DSpec::Named("chain".to_owned())
        } else {
            DSpec::Explicit(d.elements().iter().map(|v| v.to_string()).collect())
        }
    }
}

pub type FuzzyDto = BTreeMap<String, String>;

fn fuzzy_from_dto(carrier: &Arc<Carrier>, dto: &FuzzyDto) -> Result<FuzzySet, ModelError> {
    let mut values = Vec::with_capacity(carrier.len());
    for point in carrier.points() {
        let literal = dto.get(point).ok_or_else(|| {
            ModelError::CarrierMismatch(format!("fuzzy set is missing the point {point:?}"))
        })?;
        values.push(literal.parse::<MVValue>()?);
    }
    for key in dto.keys() {
        if carrier.index_of(key).is_err() {
            return Err(ModelError::UnknownPoint(key.clone()));
        }
    }
    FuzzySet::from_values(carrier, values)
}

fn dto_from_fuzzy(set: &FuzzySet) -> FuzzyDto {
    set.carrier()
        .points()
        .iter()
        .zip(set.values())
        .map(|(p, v)| (p.clone(), v.to_string()))
        .collect()
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, ModelError> {
    serde_json::from_str(text).map_err(|e| ModelError::Invalid(format!("invalid JSON: {e}")))
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

/// File form of a space. Exactly one of `generators` / `opens` is given:
/// generators are closed into a topology on load, an explicit open family is
/// re-checked against the axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub carrier: Vec<String>,
    pub chain_denominator: u64,
    #[serde(rename = "D")]
    pub d: DSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<BTreeMap<String, FuzzyDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<FuzzyDto>>,
}

/// Builds the space without gating on the axiom check (the `check` command
/// wants to report violations rather than refuse the file).
pub fn space_from_file_unchecked(file: &SpaceFile, limit: usize) -> Result<MVSpace, ModelError> {
    let carrier = Carrier::new(file.carrier.iter().cloned())?;
    let chain = Chain::new(file.chain_denominator)?;
    let lamination = file.d.resolve(chain)?;
    match (&file.generators, &file.opens) {
        (Some(generators), None) => {
            let sets = generators
                .values()
                .map(|dto| fuzzy_from_dto(&carrier, dto))
                .collect::<Result<Vec<FuzzySet>, ModelError>>()?;
            generate_topology(carrier, chain, lamination, sets, limit)
        }
        (None, Some(opens)) => {
            let sets = opens
                .iter()
                .map(|dto| fuzzy_from_dto(&carrier, dto))
                .collect::<Result<Vec<FuzzySet>, ModelError>>()?;
            MVSpace::from_opens(carrier, chain, lamination, sets)
        }
        _ => Err(ModelError::Invalid(
            "exactly one of \"generators\" and \"opens\" is required".to_owned(),
        )),
    }
}

/// Full load path: build, then reject any explicit open family that fails
/// the topology axioms.
pub fn space_from_file(file: &SpaceFile, limit: usize) -> Result<MVSpace, ModelError> {
    let space = space_from_file_unchecked(file, limit)?;
    if file.opens.is_some() {
        let report = space.check_axioms();
        if !report.passed {
            return Err(ModelError::from_failed_report(
                "open family violates the topology axioms",
                &report,
            ));
        }
    }
    Ok(space)
}

pub fn space_to_file(space: &MVSpace) -> SpaceFile {
    SpaceFile {
        carrier: space.carrier().points().to_vec(),
        chain_denominator: space.chain().denominator(),
        d: DSpec::for_subquantale(space.lamination(), space.chain()),
        generators: None,
        opens: Some(space.opens().iter().map(dto_from_fuzzy).collect()),
    }
}

pub fn parse_space_json(text: &str, limit: usize) -> Result<MVSpace, ModelError> {
    space_from_file(&from_json::<SpaceFile>(text)?, limit)
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// File form of a table-presented frame. Tables are row-major element
/// names; scalar rows are keyed by the value literals of `D`. The optional
/// `chain_denominator` fixes the default codomain for point enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub elements: Vec<String>,
    pub join: Vec<Vec<String>>,
    pub meet: Vec<Vec<String>>,
    pub plus: Vec<Vec<String>>,
    pub times: Vec<Vec<String>>,
    pub scalar: BTreeMap<String, Vec<String>>,
    pub one: String,
    pub zero: String,
    #[serde(rename = "D")]
    pub d: DSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_denominator: Option<u64>,
}

/// Builds the frame plus its default point-enumeration codomain without
/// gating on the law check.
pub fn frame_from_file_unchecked(file: &FrameFile) -> Result<(Arc<DFrame>, Chain), ModelError> {
    let names = &file.elements;
    let index_of = |name: &String| -> Result<usize, ModelError> {
        names
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| ModelError::UnknownElement(name.clone()))
    };
    let table = |rows: &Vec<Vec<String>>, what: &str| -> Result<Vec<Vec<usize>>, ModelError> {
        if rows.len() != names.len() {
            return Err(ModelError::NonTotalTable(format!(
                "{what} table has {} rows for {} elements",
                rows.len(),
                names.len()
            )));
        }
        rows.iter()
            .map(|row| {
                if row.len() != names.len() {
                    return Err(ModelError::NonTotalTable(format!(
                        "{what} table row has {} entries for {} elements",
                        row.len(),
                        names.len()
                    )));
                }
                row.iter().map(index_of).collect()
            })
            .collect()
    };
    let default_codomain = match file.chain_denominator {
        Some(q) => Chain::new(q)?,
        None => {
            let mut values = Vec::new();
            for literal in file.scalar.keys() {
                values.push(literal.parse::<MVValue>()?);
            }
            Chain::spanning(values)?
        }
    };
    let lamination = file.d.resolve(default_codomain)?;
    let mut scalar = Vec::with_capacity(file.scalar.len());
    for (literal, row) in &file.scalar {
        let value = literal.parse::<MVValue>()?;
        if !lamination.contains(value) {
            return Err(ModelError::Invalid(format!(
                "scalar row for {value} does not belong to D = {lamination}"
            )));
        }
        if row.len() != names.len() {
            return Err(ModelError::NonTotalTable(format!(
                "scalar row for {value} is not total"
            )));
        }
        scalar.push((value, row.iter().map(index_of).collect::<Result<_, _>>()?));
    }
    for d in lamination.elements() {
        if !scalar.iter().any(|(r, _)| r == d) {
            return Err(ModelError::NonTotalTable(format!(
                "scalar table has no row for {d} ∈ D"
            )));
        }
    }
    let frame = DFrame::from_tables(
        names.clone(),
        table(&file.join, "join")?,
        table(&file.meet, "meet")?,
        table(&file.plus, "plus")?,
        table(&file.times, "times")?,
        scalar,
        index_of(&file.one)?,
        index_of(&file.zero)?,
    )?;
    Ok((frame, default_codomain))
}

/// Full load path: reject on any violated frame law, naming the tuple.
pub fn frame_from_file(file: &FrameFile) -> Result<(Arc<DFrame>, Chain), ModelError> {
    let (frame, codomain) = frame_from_file_unchecked(file)?;
    let report = frame.check_d_frame();
    if !report.passed {
        return Err(ModelError::from_failed_report(
            "frame violates the D-frame laws",
            &report,
        ));
    }
    Ok((frame, codomain))
}

pub fn frame_to_file(frame: &DFrame, codomain: Option<Chain>) -> FrameFile {
    let names = frame.element_names();
    let table = |kind: OpKind| -> Vec<Vec<String>> {
        frame
            .table(kind)
            .iter()
            .map(|row| row.iter().map(|&i| names[i].clone()).collect())
            .collect()
    };
    let d = frame.lamination();
    let d_chain = Chain::spanning(d.elements().iter().copied()).expect("nonempty D");
    FrameFile {
        elements: names.to_vec(),
        join: table(OpKind::Join),
        meet: table(OpKind::Meet),
        plus: table(OpKind::Plus),
        times: table(OpKind::Times),
        scalar: frame
            .scalar_pairs()
            .iter()
            .map(|(r, row)| {
                (
                    r.to_string(),
                    row.iter().map(|&i| names[i].clone()).collect(),
                )
            })
            .collect(),
        one: names[frame.one()].clone(),
        zero: names[frame.zero()].clone(),
        d: DSpec::for_subquantale(&d, codomain.unwrap_or(d_chain)),
        chain_denominator: codomain.map(|c| c.denominator()),
    }
}

pub fn parse_frame_json(text: &str) -> Result<(Arc<DFrame>, Chain), ModelError> {
    frame_from_file(&from_json::<FrameFile>(text)?)
}

// ---------------------------------------------------------------------------
// Operator tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Interior,
    Nbhd,
}

/// File form of an operator table over `V^X`. For `kind = "interior"` each
/// `out` is the image fuzzy set `f(α)`; for `kind = "nbhd"` the `out` object
/// maps each point `x` to `μ_x(α)`. The table must cover `V^X` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub carrier: Vec<String>,
    pub chain_denominator: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub table: Vec<OperatorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    #[serde(rename = "in")]
    pub input: FuzzyDto,
    #[serde(rename = "out")]
    pub output: FuzzyDto,
}

#[derive(Debug, Clone)]
pub enum ParsedOperator {
    Interior(InteriorOperator),
    Nbhd(NbhdFunction),
}

pub fn operator_kind(file: &OperatorFile) -> Result<OperatorKind, ModelError> {
    match file.kind.as_deref() {
        None | Some("interior") => Ok(OperatorKind::Interior),
        Some("nbhd") => Ok(OperatorKind::Nbhd),
        Some(other) => Err(ModelError::Invalid(format!(
            "unknown operator kind {other:?}; expected \"interior\" or \"nbhd\""
        ))),
    }
}

pub fn operator_from_file(
    file: &OperatorFile,
    limit: usize,
    kind_override: Option<OperatorKind>,
) -> Result<ParsedOperator, ModelError> {
    let carrier = Carrier::new(file.carrier.iter().cloned())?;
    let chain = Chain::new(file.chain_denominator)?;
    let kind = match kind_override {
        Some(k) => k,
        None => operator_kind(file)?,
    };
    match kind {
        OperatorKind::Interior => {
            let entries = file
                .table
                .iter()
                .map(|e| {
                    Ok((
                        fuzzy_from_dto(&carrier, &e.input)?,
                        fuzzy_from_dto(&carrier, &e.output)?,
                    ))
                })
                .collect::<Result<Vec<(FuzzySet, FuzzySet)>, ModelError>>()?;
            Ok(ParsedOperator::Interior(InteriorOperator::from_entries(
                &carrier, chain, entries, limit,
            )?))
        }
        OperatorKind::Nbhd => {
            let entries = file
                .table
                .iter()
                .map(|e| {
                    let input = fuzzy_from_dto(&carrier, &e.input)?;
                    // Same key discipline as a fuzzy set: exactly the carrier.
                    let row = fuzzy_from_dto(&carrier, &e.output)?.values().to_vec();
                    Ok((input, row))
                })
                .collect::<Result<Vec<(FuzzySet, Vec<MVValue>)>, ModelError>>()?;
            Ok(ParsedOperator::Nbhd(NbhdFunction::from_entries(
                &carrier, chain, entries, limit,
            )?))
        }
    }
}

pub fn interior_to_file(op: &InteriorOperator) -> OperatorFile {
    OperatorFile {
        carrier: op.carrier().points().to_vec(),
        chain_denominator: op.chain().denominator(),
        kind: Some("interior".to_owned()),
        table: op
            .inputs()
            .zip(op.outputs())
            .map(|(input, output)| OperatorEntry {
                input: dto_from_fuzzy(&input),
                output: dto_from_fuzzy(output),
            })
            .collect(),
    }
}

pub fn nbhd_to_file(nbhd: &NbhdFunction) -> OperatorFile {
    OperatorFile {
        carrier: nbhd.carrier().points().to_vec(),
        chain_denominator: nbhd.chain().denominator(),
        kind: Some("nbhd".to_owned()),
        table: nbhd
            .inputs()
            .zip(nbhd.table())
            .map(|(input, row)| OperatorEntry {
                input: dto_from_fuzzy(&input),
                output: nbhd
                    .carrier()
                    .points()
                    .iter()
                    .zip(row)
                    .map(|(p, v)| (p.clone(), v.to_string()))
                    .collect(),
            })
            .collect(),
    }
}

pub fn parse_operator_json(
    text: &str,
    limit: usize,
    kind_override: Option<OperatorKind>,
) -> Result<ParsedOperator, ModelError> {
    operator_from_file(&from_json::<OperatorFile>(text)?, limit, kind_override)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const PAPER3_JSON: &str = r#"{
        "carrier": ["x", "y", "z"],
        "chain_denominator": 10,
        "D": "boolean",
        "generators": {"rho": {"x": "1/2", "y": "3/5", "z": "3/5"}}
    }"#;

    #[test]
    fn generators_form_closes_to_the_topology() {
        let space = parse_space_json(PAPER3_JSON, 10_000).unwrap();
        assert_eq!(space, corpus::paper3());
    }

    #[test]
    fn opens_form_round_trips() {
        for (name, space) in corpus::corpus_spaces() {
            let file = space_to_file(&space);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back = parse_space_json(&text, 10_000).unwrap();
            assert_eq!(back, space, "{name}");
        }
    }

    #[test]
    fn bad_space_files_are_rejected() {
        let bad_d = PAPER3_JSON.replace("\"boolean\"", "[\"1/2\", \"1\"]");
        assert!(matches!(
            parse_space_json(&bad_d, 10_000),
            Err(ModelError::InvalidSubquantale(_, _))
        ));

        let bad_value = PAPER3_JSON.replace("1/2", "2/1");
        assert!(matches!(
            parse_space_json(&bad_value, 10_000),
            Err(ModelError::ValueOutOfRange { .. })
        ));

        let unreduced = PAPER3_JSON.replace("1/2", "2/4");
        assert!(matches!(
            parse_space_json(&unreduced, 10_000),
            Err(ModelError::MalformedValue { .. })
        ));

        let unknown_key = PAPER3_JSON.replace("\"carrier\"", "\"points\"");
        let err = parse_space_json(&unknown_key, 10_000).unwrap_err();
        assert!(err.to_string().contains("unknown field"), "{err}");

        let not_closed = r#"{
            "carrier": ["x", "y", "z"],
            "chain_denominator": 10,
            "D": "boolean",
            "opens": [
                {"x": "0", "y": "0", "z": "0"},
                {"x": "1/2", "y": "3/5", "z": "3/5"},
                {"x": "1", "y": "1", "z": "1"}
            ]
        }"#;
        let err = parse_space_json(not_closed, 10_000).unwrap_err();
        assert!(err.to_string().contains("violates the topology axioms"));
        // The unchecked path accepts it, for the diagnostic command.
        let file: SpaceFile = serde_json::from_str(not_closed).unwrap();
        let space = space_from_file_unchecked(&file, 10_000).unwrap();
        assert!(!space.check_axioms().passed);

        let both = r#"{
            "carrier": ["x"],
            "chain_denominator": 2,
            "D": "boolean",
            "generators": {},
            "opens": []
        }"#;
        assert!(parse_space_json(both, 10_000).is_err());
    }

    #[test]
    fn missing_carrier_key_in_fuzzy_dto() {
        let missing = PAPER3_JSON.replace("\"z\": \"3/5\"", "\"w\": \"3/5\"");
        let err = parse_space_json(&missing, 10_000).unwrap_err();
        assert!(
            matches!(
                err,
                ModelError::CarrierMismatch(_) | ModelError::UnknownPoint(_)
            ),
            "{err}"
        );
    }

    #[test]
    fn frame_files_round_trip() {
        for (name, frame, codomain) in corpus::corpus_frames() {
            let file = frame_to_file(&frame, Some(codomain));
            let text = serde_json::to_string_pretty(&file).unwrap();
            let (back, back_codomain) = parse_frame_json(&text).unwrap();
            assert_eq!(back, frame, "{name}");
            assert_eq!(back_codomain, codomain, "{name}");
        }
    }

    #[test]
    fn broken_frame_file_is_rejected_with_the_tuple() {
        let mut file = frame_to_file(&corpus::f3(), Some(Chain::new(2).unwrap()));
        file.times[1][2] = "top".to_owned();
        file.times[2][1] = "top".to_owned();
        let text = serde_json::to_string(&file).unwrap();
        let err = parse_frame_json(&text).unwrap_err();
        assert!(
            err.to_string().contains("violates the D-frame laws"),
            "{err}"
        );
        // Lenient path still builds it.
        let parsed: FrameFile = serde_json::from_str(&text).unwrap();
        let (frame, _) = frame_from_file_unchecked(&parsed).unwrap();
        assert!(!frame.check_d_frame().passed);
    }

    #[test]
    fn frame_default_codomain_falls_back_to_d() {
        let mut file = frame_to_file(&corpus::f3(), None);
        file.chain_denominator = None;
        let (_, codomain) = frame_from_file(&file).unwrap();
        assert_eq!(codomain.denominator(), 1);
    }

    #[test]
    fn operator_files_round_trip_both_kinds() {
        let space = corpus::disc2();
        let op = InteriorOperator::from_space(&space, 100).unwrap();
        let file = interior_to_file(&op);
        let text = serde_json::to_string(&file).unwrap();
        match parse_operator_json(&text, 100, None).unwrap() {
            ParsedOperator::Interior(back) => assert_eq!(back, op),
            _ => panic!("kind lost in round trip"),
        }

        let mu = NbhdFunction::from_space(&space, 100).unwrap();
        let file = nbhd_to_file(&mu);
        let text = serde_json::to_string(&file).unwrap();
        match parse_operator_json(&text, 100, None).unwrap() {
            ParsedOperator::Nbhd(back) => assert_eq!(back, mu),
            _ => panic!("kind lost in round trip"),
        }

        // The same bytes reinterpreted as the other kind still parse: the
        // schemas are isomorphic, only the reading changes.
        match parse_operator_json(&text, 100, Some(OperatorKind::Interior)).unwrap() {
            ParsedOperator::Interior(_) => {}
            _ => panic!("override ignored"),
        }
    }

    #[test]
    fn operator_table_must_cover_the_powerset() {
        let space = corpus::disc2();
        let op = InteriorOperator::from_space(&space, 100).unwrap();
        let mut file = interior_to_file(&op);
        file.table.pop();
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(
            parse_operator_json(&text, 100, None),
            Err(ModelError::NonTotalTable(_))
        ));
    }
}
