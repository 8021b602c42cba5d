//! `mvtop`: parse model files, run checks and constructions, and emit
//! human-readable or JSON reports with deterministic exit codes.
//!
//! Exit code contract: 0 = all checks pass / predicate true, 1 = predicate
//! false or a check failed (the report lists witnesses), 2 = input error.

mod report;

use clap::{Parser, Subcommand};
use mvtop_core::adjunction::{
    check_triangle_frame, check_triangle_space, is_sober, is_spatial, omega_of_space, SoberVerdict,
    SpatialVerdict,
};
use mvtop_core::frame::{enumerate_points, spectrum, DFrame};
use mvtop_core::operators::{InteriorOperator, NbhdFunction};
use mvtop_core::schema::{
    self, frame_from_file_unchecked, interior_to_file, nbhd_to_file, space_from_file,
    space_from_file_unchecked, space_to_file, FrameFile, OperatorFile, OperatorKind,
    ParsedOperator, SpaceFile,
};
use mvtop_core::space::{is_continuous, CrispMap, MVSpace};
use mvtop_core::value::Chain;
use mvtop_core::{CheckReport, FuzzySet, ModelError};
use report::{InputDigest, RunReport};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mvtop",
    version,
    about = "Exact-arithmetic workbench for finite MV-topological spaces and D-frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Codomain chain denominator for point enumeration
    /// (default: the model's own chain).
    #[arg(long, global = true, value_name = "q")]
    codomain: Option<u64>,
    /// Ceiling on materialized powersets and generated topologies.
    #[arg(long, global = true, value_name = "n", default_value_t = mvtop_core::DEFAULT_SIZE_LIMIT)]
    limit: usize,
    /// Write the command's artifact (model or table JSON) to this path.
    #[arg(long, global = true, value_name = "path")]
    out: Option<PathBuf>,
    /// Fill elapsed_ms in the JSON report (off by default, so reports are
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space file and report every topology-axiom violation.
    Check { space: PathBuf },
    /// Close a generator family into a topology and emit the opens form.
    Generate { space: PathBuf },
    /// Interior of one fuzzy set, or the full interior-operator table.
    Interior {
        space: PathBuf,
        /// Fuzzy set in compact form, e.g. x=1/2,y=3/5,z=3/5.
        set: Option<String>,
    },
    /// Neighbourhood values mu_x, or the full neighbourhood table.
    Nbhd {
        space: PathBuf,
        /// Fuzzy set in compact form, e.g. x=1/2,y=3/5,z=3/5.
        set: Option<String>,
        /// Restrict to one carrier point.
        #[arg(long)]
        point: Option<String>,
    },
    /// Enumerate the points of a frame (or of Omega of a space).
    Points { model: PathBuf },
    /// Decide sobriety of a space over the codomain chain.
    Sober { space: PathBuf },
    /// Decide spatiality of a frame (or of Omega of a space).
    Spatial { model: PathBuf },
    /// Verify both triangle identities on a space or frame file.
    Triangles { model: PathBuf },
    /// Check continuity of a crisp map, e.g. x=x,y=z,z=y.
    Continuous {
        source: PathBuf,
        target: PathBuf,
        map: String,
    },
    /// Parse a frame file and report every D-frame-law violation.
    FrameCheck { frame: PathBuf },
    /// Check an operator table file (I1-I6, or U1-U6 for kind "nbhd").
    OpCheck {
        table: PathBuf,
        /// Override the table's kind: "interior" or "nbhd".
        #[arg(long)]
        kind: Option<String>,
    },
}

/// Input problems: exit code 2.
struct InputError(String);

impl From<ModelError> for InputError {
    fn from(e: ModelError) -> Self {
        InputError(e.to_string())
    }
}

/// What a command produced, before rendering.
#[derive(Default)]
struct Outcome {
    passed: bool,
    qualifier: Option<String>,
    witnesses: Vec<String>,
    results: Vec<String>,
    verdicts: Vec<CheckReport>,
    notes: Vec<String>,
    /// Rendered JSON artifact (generated model or operator table).
    artifact: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            passed: true,
            ..Default::default()
        }
    }

    fn from_reports(reports: Vec<CheckReport>) -> Self {
        let passed = reports.iter().all(|r| r.passed);
        let witnesses = reports
            .iter()
            .flat_map(|r| r.counterexamples.iter().map(|w| w.to_string()))
            .collect();
        Outcome {
            passed,
            witnesses,
            verdicts: reports,
            ..Default::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let inputs = match input_digests(&cli.command) {
        Ok(v) => v,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let exit = if outcome.passed { 0 } else { 1 };
            render(&cli, &outcome, inputs, started);
            ExitCode::from(exit)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn render(cli: &Cli, outcome: &Outcome, inputs: Vec<InputDigest>, started: Instant) {
    if let (Some(path), Some(artifact)) = (&cli.out, &outcome.artifact) {
        if let Err(e) = std::fs::write(path, format!("{artifact}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
        }
    }
    if cli.json {
        let report = RunReport {
            command: command_name(&cli.command).to_owned(),
            inputs,
            passed: outcome.passed,
            qualifier: outcome.qualifier.clone(),
            witnesses: outcome.witnesses.clone(),
            results: outcome.results.clone(),
            verdicts: outcome.verdicts.clone(),
            notes: outcome.notes.clone(),
            elapsed_ms: cli.timing.then(|| started.elapsed().as_millis()),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
        return;
    }
    // Human-readable rendering. When an artifact goes to stdout, the summary
    // moves to stderr so stdout stays parseable.
    let artifact_on_stdout = outcome.artifact.is_some() && cli.out.is_none();
    if let Some(artifact) = outcome.artifact.as_ref().filter(|_| cli.out.is_none()) {
        println!("{artifact}");
    }
    let mut lines = Vec::new();
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    let qualifier = outcome
        .qualifier
        .as_deref()
        .map(|q| format!(" [{q}]"))
        .unwrap_or_default();
    lines.push(format!(
        "{}: {verdict}{qualifier}",
        command_name(&cli.command)
    ));
    for result in &outcome.results {
        lines.push(format!("  {result}"));
    }
    for witness in &outcome.witnesses {
        lines.push(format!("  witness: {witness}"));
    }
    for verdict in &outcome.verdicts {
        lines.push(format!("  {verdict}"));
    }
    for note in &outcome.notes {
        lines.push(format!("  note: {note}"));
    }
    if cli.timing {
        lines.push(format!("  elapsed: {} ms", started.elapsed().as_millis()));
    }
    let body = lines.join("\n");
    if artifact_on_stdout {
        eprintln!("{body}");
    } else {
        println!("{body}");
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Check { .. } => "check",
        Command::Generate { .. } => "generate",
        Command::Interior { .. } => "interior",
        Command::Nbhd { .. } => "nbhd",
        Command::Points { .. } => "points",
        Command::Sober { .. } => "sober",
        Command::Spatial { .. } => "spatial",
        Command::Triangles { .. } => "triangles",
        Command::Continuous { .. } => "continuous",
        Command::FrameCheck { .. } => "frame-check",
        Command::OpCheck { .. } => "op-check",
    }
}

fn command_paths(command: &Command) -> Vec<&Path> {
    match command {
        Command::Check { space }
        | Command::Generate { space }
        | Command::Interior { space, .. }
        | Command::Nbhd { space, .. }
        | Command::Sober { space } => vec![space],
        Command::Points { model } | Command::Spatial { model } | Command::Triangles { model } => {
            vec![model]
        }
        Command::Continuous { source, target, .. } => vec![source, target],
        Command::FrameCheck { frame } => vec![frame],
        Command::OpCheck { table, .. } => vec![table],
    }
}

fn input_digests(command: &Command) -> Result<Vec<InputDigest>, InputError> {
    command_paths(command)
        .into_iter()
        .map(|path| {
            let bytes = std::fs::read(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            Ok(InputDigest::new(path, &bytes))
        })
        .collect()
}

fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))
}

fn parse_dto<T: for<'de> serde::Deserialize<'de>>(
    path: &Path,
    text: &str,
) -> Result<T, InputError> {
    serde_json::from_str(text)
        .map_err(|e| InputError(format!("{}: invalid JSON: {e}", path.display())))
}

/// A model file is a space (has "carrier") or a frame (has "elements").
enum ModelFile {
    Space(SpaceFile),
    Frame(FrameFile),
}

fn load_model(path: &Path) -> Result<ModelFile, InputError> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{}: invalid JSON: {e}", path.display())))?;
    let object = value
        .as_object()
        .ok_or_else(|| InputError(format!("{}: expected a JSON object", path.display())))?;
    if object.contains_key("elements") {
        Ok(ModelFile::Frame(parse_dto(path, &text)?))
    } else if object.contains_key("carrier") {
        Ok(ModelFile::Space(parse_dto(path, &text)?))
    } else {
        Err(InputError(format!(
            "{}: neither a space file (carrier) nor a frame file (elements)",
            path.display()
        )))
    }
}

fn load_space(path: &Path, limit: usize) -> Result<MVSpace, InputError> {
    let text = read_text(path)?;
    let file: SpaceFile = parse_dto(path, &text)?;
    Ok(space_from_file(&file, limit)?)
}

fn codomain_for(space: &MVSpace, flag: Option<u64>) -> Result<Chain, InputError> {
    match flag {
        Some(q) => Ok(Chain::new(q)?),
        None => Ok(space.chain()),
    }
}

fn sober_qualifier(chain: Chain) -> String {
    format!("over-{chain}")
}

/// Parses the compact fuzzy-set form `x=1/2,y=3/5,z=3/5`.
fn parse_compact_set(space: &MVSpace, compact: &str) -> Result<FuzzySet, InputError> {
    let mut dto: BTreeMap<String, String> = BTreeMap::new();
    for pair in compact.split(',') {
        let (point, value) = pair.split_once('=').ok_or_else(|| {
            InputError(format!(
                "malformed assignment {pair:?}; expected point=value"
            ))
        })?;
        if dto
            .insert(point.trim().to_owned(), value.trim().to_owned())
            .is_some()
        {
            return Err(InputError(format!("point {point:?} assigned twice")));
        }
    }
    let mut values = Vec::with_capacity(space.carrier().len());
    for point in space.carrier().points() {
        let literal = dto
            .remove(point)
            .ok_or_else(|| InputError(format!("missing value for point {point:?}")))?;
        values.push(
            literal
                .parse::<mvtop_core::MVValue>()
                .map_err(|e| InputError(e.to_string()))?,
        );
    }
    if let Some(extra) = dto.keys().next() {
        return Err(InputError(format!("unknown point {extra:?}")));
    }
    if let Some(v) = values.iter().find(|v| !space.chain().contains(**v)) {
        return Err(InputError(format!(
            "value {v} is not an element of the chain {}",
            space.chain()
        )));
    }
    Ok(FuzzySet::from_values(space.carrier(), values)?)
}

fn parse_compact_map(
    source: &MVSpace,
    target: &MVSpace,
    compact: &str,
) -> Result<CrispMap, InputError> {
    let pairs = compact
        .split(',')
        .map(|pair| {
            pair.split_once('=')
                .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                .ok_or_else(|| {
                    InputError(format!(
                        "malformed assignment {pair:?}; expected point=image"
                    ))
                })
        })
        .collect::<Result<Vec<(String, String)>, InputError>>()?;
    Ok(CrispMap::new(source.carrier(), target.carrier(), pairs)?)
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Check { space } => {
            let text = read_text(space)?;
            let file: SpaceFile = parse_dto(space, &text)?;
            let model = space_from_file_unchecked(&file, cli.limit)?;
            let mut outcome = Outcome::from_reports(vec![model.check_axioms()]);
            outcome.results.push(format!(
                "space on {} points over {}, D = {}, {} opens",
                model.carrier().len(),
                model.chain(),
                model.lamination(),
                model.opens().len()
            ));
            Ok(outcome)
        }
        Command::Generate { space } => {
            let model = load_space(space, cli.limit)?;
            let file = space_to_file(&model);
            let mut outcome = Outcome::pass();
            outcome.artifact = Some(serde_json::to_string_pretty(&file).expect("space serializes"));
            outcome
                .results
                .push(format!("{} opens", model.opens().len()));
            for open in model.opens() {
                outcome.results.push(open.to_string());
            }
            Ok(outcome)
        }
        Command::Interior { space, set } => {
            let model = load_space(space, cli.limit)?;
            let mut outcome = Outcome::pass();
            match set {
                Some(compact) => {
                    let alpha = parse_compact_set(&model, compact)?;
                    let inner = model.interior(&alpha)?;
                    outcome.results.push(format!("interior: {inner}"));
                }
                None => {
                    let op = InteriorOperator::from_space(&model, cli.limit)?;
                    let file = interior_to_file(&op);
                    outcome.artifact =
                        Some(serde_json::to_string_pretty(&file).expect("table serializes"));
                    outcome
                        .results
                        .push(format!("interior table with {} entries", file.table.len()));
                }
            }
            Ok(outcome)
        }
        Command::Nbhd { space, set, point } => {
            let model = load_space(space, cli.limit)?;
            let mut outcome = Outcome::pass();
            match set {
                Some(compact) => {
                    let alpha = parse_compact_set(&model, compact)?;
                    let points: Vec<&String> = match point {
                        Some(p) => {
                            model.carrier().index_of(p)?;
                            model
                                .carrier()
                                .points()
                                .iter()
                                .filter(|name| *name == p)
                                .collect()
                        }
                        None => model.carrier().points().iter().collect(),
                    };
                    for p in points {
                        let mu = model.mu(p, &alpha)?;
                        let via_witness = model.mu_by_witness_search(p, &alpha)?;
                        if mu != via_witness {
                            return Err(InputError(format!(
                                "internal: interior and witness-search routes disagree at {p}"
                            )));
                        }
                        let nbhd = if model.is_neighbourhood(&alpha, p)? {
                            " (neighbourhood)"
                        } else {
                            ""
                        };
                        outcome.results.push(format!("mu_{p} = {mu}{nbhd}"));
                    }
                }
                None => {
                    let mu = NbhdFunction::from_space(&model, cli.limit)?;
                    let file = nbhd_to_file(&mu);
                    outcome.artifact =
                        Some(serde_json::to_string_pretty(&file).expect("table serializes"));
                    outcome.results.push(format!(
                        "neighbourhood table with {} entries",
                        file.table.len()
                    ));
                }
            }
            Ok(outcome)
        }
        Command::Points { model } => {
            let (frame, codomain, label) = load_frame_like(model, cli)?;
            let points = enumerate_points(&frame, codomain)?;
            let mut outcome = Outcome::pass();
            outcome.qualifier = Some(sober_qualifier(codomain));
            outcome.results.push(format!(
                "{} points of {label} over {codomain}",
                points.len()
            ));
            for p in &points {
                outcome.results.push(format!("[{p}]"));
            }
            Ok(outcome)
        }
        Command::Sober { space } => {
            let model = load_space(space, cli.limit)?;
            let codomain = codomain_for(&model, cli.codomain)?;
            let verdict = is_sober(&model, codomain)?;
            let mut outcome = Outcome::pass();
            match verdict {
                SoberVerdict::Sober {
                    codomain,
                    point_count,
                } => {
                    outcome.qualifier = Some(sober_qualifier(codomain));
                    outcome.results.push(format!(
                        "sober over {codomain}: {point_count} points, all evaluations"
                    ));
                }
                SoberVerdict::NotSober { witness } => {
                    outcome.passed = false;
                    outcome.results.push("not sober".to_owned());
                    outcome.witnesses.push(witness.to_string());
                }
            }
            Ok(outcome)
        }
        Command::Spatial { model } => {
            let (frame, codomain, label) = load_frame_like(model, cli)?;
            let verdict = is_spatial(&frame, codomain)?;
            let mut outcome = Outcome::pass();
            match verdict {
                SpatialVerdict::Spatial { point_count } => {
                    outcome.results.push(format!(
                        "spatial: {point_count} points of {label} separate the elements"
                    ));
                }
                SpatialVerdict::NotSpatial {
                    codomain,
                    first,
                    second,
                } => {
                    outcome.passed = false;
                    outcome.qualifier = Some(sober_qualifier(codomain));
                    outcome.results.push("not spatial".to_owned());
                    outcome
                        .witnesses
                        .push(format!("({first}, {second}) are identified by every point"));
                }
            }
            Ok(outcome)
        }
        Command::Triangles { model } => {
            let mut reports = Vec::new();
            let mut notes = Vec::new();
            match load_model(model)? {
                ModelFile::Space(file) => {
                    let space = space_from_file(&file, cli.limit)?;
                    let codomain = codomain_for(&space, cli.codomain)?;
                    reports.push(check_triangle_space(&space, codomain)?);
                    let frame = omega_of_space(&space)?;
                    reports.push(check_triangle_frame(&frame, codomain)?);
                    let mut outcome = Outcome::from_reports(reports);
                    outcome.qualifier = Some(sober_qualifier(codomain));
                    Ok(outcome)
                }
                ModelFile::Frame(file) => {
                    let (frame, default_codomain) = schema::frame_from_file(&file)?;
                    let codomain = match cli.codomain {
                        Some(q) => Chain::new(q)?,
                        None => default_codomain,
                    };
                    match check_triangle_frame(&frame, codomain) {
                        Ok(report) => {
                            reports.push(report);
                            let outcome_space = spectrum(&frame, codomain)?
                                .space
                                .expect("nonempty: triangle check succeeded");
                            reports.push(check_triangle_space(&outcome_space, codomain)?);
                        }
                        Err(ModelError::EmptySpectrum) => {
                            notes.push(format!(
                                "frame has no points over {codomain}; triangle identities hold vacuously"
                            ));
                        }
                        Err(e) => return Err(e.into()),
                    }
                    let mut outcome = Outcome::from_reports(reports);
                    outcome.qualifier = Some(sober_qualifier(codomain));
                    outcome.notes = notes;
                    Ok(outcome)
                }
            }
        }
        Command::Continuous {
            source,
            target,
            map,
        } => {
            let source_space = load_space(source, cli.limit)?;
            let target_space = load_space(target, cli.limit)?;
            let crisp = parse_compact_map(&source_space, &target_space, map)?;
            let report = is_continuous(&crisp, &source_space, &target_space)?;
            Ok(Outcome::from_reports(vec![report]))
        }
        Command::FrameCheck { frame } => {
            let text = read_text(frame)?;
            let file: FrameFile = parse_dto(frame, &text)?;
            let (model, _) = frame_from_file_unchecked(&file)?;
            let mut outcome = Outcome::from_reports(vec![model.check_d_frame()]);
            outcome.results.push(format!(
                "frame with {} elements, D = {}",
                model.len(),
                model.lamination()
            ));
            Ok(outcome)
        }
        Command::OpCheck { table, kind } => {
            let text = read_text(table)?;
            let file: OperatorFile = parse_dto(table, &text)?;
            let kind_override = match kind.as_deref() {
                None => None,
                Some("interior") => Some(OperatorKind::Interior),
                Some("nbhd") => Some(OperatorKind::Nbhd),
                Some(other) => {
                    return Err(InputError(format!(
                        "unknown kind {other:?}; expected \"interior\" or \"nbhd\""
                    )))
                }
            };
            let parsed = schema::operator_from_file(&file, cli.limit, kind_override)?;
            let (report, label) = match &parsed {
                ParsedOperator::Interior(op) => (op.check(), "interior operator"),
                ParsedOperator::Nbhd(mu) => (mu.check(), "neighbourhood function"),
            };
            let mut outcome = Outcome::from_reports(vec![report]);
            outcome
                .results
                .push(format!("{label} with {} table entries", file.table.len()));
            Ok(outcome)
        }
    }
}

/// Loads a frame, or a space turned into its frame of opens, for the
/// commands that accept both kinds of model. Returns the frame, the
/// codomain chain to enumerate into, and a short label.
fn load_frame_like(path: &Path, cli: &Cli) -> Result<(Arc<DFrame>, Chain, String), InputError> {
    match load_model(path)? {
        ModelFile::Space(file) => {
            let space = space_from_file(&file, cli.limit)?;
            let codomain = codomain_for(&space, cli.codomain)?;
            let frame = omega_of_space(&space)?;
            Ok((frame, codomain, "Omega(space)".to_owned()))
        }
        ModelFile::Frame(file) => {
            let (frame, default_codomain) = schema::frame_from_file(&file)?;
            let codomain = match cli.codomain {
                Some(q) => Chain::new(q)?,
                None => default_codomain,
            };
            Ok((frame, codomain, "frame".to_owned()))
        }
    }
}
