//! Batch driver: reads a JSON problem file, runs the selected probability
//! transformations and prints a comparison table ranked by PIC, or runs
//! the qualitative label pipeline.
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 when
//! `--require-defined` is set and the report contains undefined values.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use dsmp::{
    format_elem, parse_expr, q_dsm_p, q_pic, run_selected, AtomSet, Frame, FrameModel,
    LabelScale, MassAssignment, QualMassAssignment, Transform,
};

#[derive(Parser)]
#[command(
    name = "dsmp",
    version,
    about = "Probability transformations of belief mass assignments, ranked by PIC"
)]
struct Args {
    /// Problem file (JSON)
    #[arg(long)]
    input: PathBuf,

    /// Tuning parameter for DSmP (and qDSmP)
    #[arg(long, default_value_t = 0.001)]
    epsilon: f64,

    /// Comma-separated subset of betp,dsmp,prbel,prpl,prnpl,prapl,prhyb,cuzzp
    #[arg(long)]
    transforms: Option<String>,

    /// Comma-separated element expressions used as report columns
    #[arg(long)]
    elements: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,

    /// Print 0 instead of NaN for undefined PrBel singletons
    #[arg(long)]
    force_prbel_zero: bool,

    /// Exit with status 2 when the report contains undefined values
    #[arg(long)]
    require_defined: bool,

    /// Run the qualitative pipeline on the file's qualitative section
    #[arg(long)]
    qualitative: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    frame: Vec<String>,
    model: ModelSpec,
    #[serde(default)]
    masses: Option<Vec<MassEntry>>,
    #[serde(default)]
    qualitative: Option<QualSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSpec {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    constraints: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MassEntry {
    element: String,
    mass: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QualSection {
    n: u32,
    masses: Vec<QualEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QualEntry {
    element: String,
    label_index: i64,
}

#[derive(Serialize)]
struct QuantReport<'a> {
    frame: &'a [String],
    model: &'a str,
    epsilon: f64,
    elements: Vec<String>,
    rows: Vec<QuantRow>,
}

#[derive(Serialize)]
struct QuantRow {
    transform: String,
    values: Vec<Option<f64>>,
    pic: Option<f64>,
}

#[derive(Serialize)]
struct QualReport<'a> {
    frame: &'a [String],
    model: &'a str,
    n: u32,
    epsilon: f64,
    transform: String,
    atoms: Vec<String>,
    labels: Vec<i64>,
    indices: Vec<String>,
    quasi_normalized_input: bool,
    quasi_normalized_output: bool,
    pic: f64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(fully_defined) => {
            if args.require_defined && !fully_defined {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

/// Runs the pipeline; returns whether every reported value was defined.
fn run(args: &Args) -> Result<bool, String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("input: cannot read {}: {e}", args.input.display()))?;
    let file: ProblemFile =
        serde_json::from_str(&text).map_err(|e| format!("input: invalid problem file: {e}"))?;

    if file.masses.is_some() == file.qualitative.is_some() {
        return Err("masses/qualitative: exactly one of the two sections must be present".into());
    }

    let model = build_model(&file)?;
    if args.qualitative {
        run_qualitative(args, &file, model)
    } else {
        run_quantitative(args, &file, model)
    }
}

fn build_model(file: &ProblemFile) -> Result<FrameModel, String> {
    let frame = Frame::new(file.frame.clone()).map_err(|e| format!("frame: {e}"))?;
    match file.model.kind.as_str() {
        "free" | "shafer" => {
            if file.model.constraints.is_some() {
                return Err("model.constraints: only allowed with the hybrid model type".into());
            }
            Ok(if file.model.kind == "free" {
                FrameModel::free(frame)
            } else {
                FrameModel::shafer(frame)
            })
        }
        "hybrid" => {
            let free = FrameModel::free(frame.clone());
            let mut empty = AtomSet::EMPTY;
            for (i, text) in file
                .model
                .constraints
                .as_deref()
                .unwrap_or_default()
                .iter()
                .enumerate()
            {
                let elem =
                    parse_expr(text, &free).map_err(|e| format!("model.constraints[{i}]: {e}"))?;
                empty = free.element_union(empty, elem);
            }
            FrameModel::hybrid(frame, empty).map_err(|e| format!("model.constraints: {e}"))
        }
        other => Err(format!(
            "model.type: expected free, shafer or hybrid, got `{other}`"
        )),
    }
}

fn selected_transforms(args: &Args) -> Result<Vec<Transform>, String> {
    let Some(list) = &args.transforms else {
        return Ok(Transform::ALL.to_vec());
    };
    let mut out = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let t = Transform::from_selector(token)
            .ok_or_else(|| format!("transforms: unknown transform `{token}`"))?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err("transforms: empty selection".into());
    }
    Ok(out)
}

/// Default report columns: the unit-cardinal elements of the event
/// algebra plus every focal element of higher cardinality.
fn default_elements(bba: &MassAssignment) -> Vec<AtomSet> {
    let model = bba.model();
    let mut out: Vec<AtomSet> = Vec::new();
    for atom in model.full_set().atoms() {
        let bit = atom.atom_bits().next().expect("single atom");
        let product = model
            .atom_member_indices(bit)
            .into_iter()
            .fold(model.full_set(), |acc, i| {
                model.element_intersection(acc, model.singleton(i))
            });
        if product == atom {
            out.push(atom);
        }
    }
    let mut composites: Vec<AtomSet> = bba
        .focal_elements()
        .map(|(x, _)| x)
        .filter(|x| model.dsm_cardinal(*x) >= 2)
        .collect();
    composites.sort_by_key(|x| (model.dsm_cardinal(*x), x.mask()));
    for x in composites {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn run_quantitative(args: &Args, file: &ProblemFile, model: FrameModel) -> Result<bool, String> {
    if !args.epsilon.is_finite() || args.epsilon < 0.0 {
        return Err(format!(
            "epsilon: must be finite and >= 0, got {}",
            args.epsilon
        ));
    }
    let entries = file
        .masses
        .as_ref()
        .ok_or("masses: required unless --qualitative is set")?;
    let pairs: Vec<(&str, f64)> = entries
        .iter()
        .map(|e| (e.element.as_str(), e.mass))
        .collect();
    let bba =
        MassAssignment::from_exprs(model.clone(), &pairs).map_err(|e| format!("masses: {e}"))?;

    let (headers, columns) = match &args.elements {
        Some(list) => {
            let mut headers = Vec::new();
            let mut columns = Vec::new();
            for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let elem = parse_expr(token, &model).map_err(|e| format!("elements: {e}"))?;
                headers.push(token.to_string());
                columns.push(elem);
            }
            if columns.is_empty() {
                return Err("elements: empty selection".into());
            }
            (headers, columns)
        }
        None => {
            let columns = default_elements(&bba);
            let headers = columns.iter().map(|x| format_elem(*x, &model)).collect();
            (headers, columns)
        }
    };

    let transforms = selected_transforms(args)?;
    let runs = run_selected(&bba, args.epsilon, &transforms, args.force_prbel_zero)
        .map_err(|e| e.to_string())?;

    let rows: Vec<QuantRow> = runs
        .iter()
        .map(|run| QuantRow {
            transform: run.label().to_string(),
            values: columns.iter().map(|x| run.outcome.evaluate(*x)).collect(),
            pic: run.pic,
        })
        .collect();
    let fully_defined = rows
        .iter()
        .all(|r| r.pic.is_some() && r.values.iter().all(Option::is_some));

    let report = QuantReport {
        frame: &file.frame,
        model: &file.model.kind,
        epsilon: args.epsilon,
        elements: headers,
        rows,
    };
    print_quant(&report, args.format);
    Ok(fully_defined)
}

/// Writes the rendered report in one shot, ignoring a closed pipe.
fn emit(text: String) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_quant(report: &QuantReport, format: Format) {
    use std::fmt::Write;
    let mut out = String::new();
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(report).expect("report serializes");
            writeln!(out, "{json}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "transform,{},PIC", report.elements.join(",")).unwrap();
            for row in &report.rows {
                let cells: Vec<String> = row.values.iter().map(|v| fmt_value(*v)).collect();
                writeln!(
                    out,
                    "{},{},{}",
                    row.transform,
                    cells.join(","),
                    fmt_value(row.pic)
                )
                .unwrap();
            }
        }
        Format::Md => {
            writeln!(out, "| transform | {} | PIC |", report.elements.join(" | ")).unwrap();
            writeln!(out, "|{}|", vec![" --- "; report.elements.len() + 2].join("|")).unwrap();
            for row in &report.rows {
                let cells: Vec<String> = row.values.iter().map(|v| fmt_value(*v)).collect();
                writeln!(
                    out,
                    "| {} | {} | {} |",
                    row.transform,
                    cells.join(" | "),
                    fmt_value(row.pic)
                )
                .unwrap();
            }
        }
    }
    emit(out);
}

fn run_qualitative(args: &Args, file: &ProblemFile, model: FrameModel) -> Result<bool, String> {
    if !args.epsilon.is_finite() || args.epsilon <= 0.0 {
        return Err(format!(
            "epsilon: the qualitative pipeline needs epsilon > 0, got {}",
            args.epsilon
        ));
    }
    let section = file
        .qualitative
        .as_ref()
        .ok_or("qualitative: required with --qualitative")?;
    let scale = LabelScale::new(section.n).map_err(|e| format!("qualitative.n: {e}"))?;
    let pairs: Vec<(&str, i64)> = section
        .masses
        .iter()
        .map(|e| (e.element.as_str(), e.label_index))
        .collect();
    let qm = QualMassAssignment::from_exprs(model.clone(), scale, &pairs)
        .map_err(|e| format!("qualitative.masses: {e}"))?;

    let labeled = q_dsm_p(&qm, args.epsilon).map_err(|e| format!("qualitative: {e}"))?;
    let pic = q_pic(&labeled).map_err(|e| format!("qualitative.masses: {e}"))?;

    let mut exact_sum = scale.label(0);
    for (_, label) in &labeled {
        exact_sum = exact_sum.q_add(label).expect("one scale per run");
    }
    let quasi_out = exact_sum == scale.label(scale.max_index());

    let report = QualReport {
        frame: &file.frame,
        model: &file.model.kind,
        n: section.n,
        epsilon: args.epsilon,
        transform: format!("qDSmP_{}", args.epsilon),
        atoms: labeled
            .iter()
            .map(|(a, _)| format_elem(*a, &model))
            .collect(),
        labels: labeled.iter().map(|(_, l)| l.rounded_index()).collect(),
        indices: labeled.iter().map(|(_, l)| l.index().to_string()).collect(),
        quasi_normalized_input: qm.is_quasi_normalized(),
        quasi_normalized_output: quasi_out,
        pic,
    };
    print_qual(&report, args.format);
    Ok(true)
}

fn print_qual(report: &QualReport, format: Format) {
    use std::fmt::Write;
    let mut out = String::new();
    let labels: Vec<String> = report.labels.iter().map(|i| label_text(*i)).collect();
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(report).expect("report serializes");
            writeln!(out, "{json}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "transform,{},PIC", report.atoms.join(",")).unwrap();
            writeln!(
                out,
                "{},{},{:.4}",
                report.transform,
                labels.join(","),
                report.pic
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(out, "| transform | {} | PIC |", report.atoms.join(" | ")).unwrap();
            writeln!(out, "|{}|", vec![" --- "; report.atoms.len() + 2].join("|")).unwrap();
            writeln!(
                out,
                "| {} | {} | {:.4} |",
                report.transform,
                labels.join(" | "),
                report.pic
            )
            .unwrap();
        }
    }
    emit(out);
}

fn label_text(index: i64) -> String {
    if index < 0 {
        format!("-L_{}", -index)
    } else {
        format!("L_{index}")
    }
}

fn fmt_value(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:.4}"),
        None => "NaN".to_string(),
    }
}
