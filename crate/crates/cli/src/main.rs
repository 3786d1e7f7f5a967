use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bfacet::census::{self, CensusBounds, CensusReport, PlanarBounds, Template};
use bfacet::classifier::{
    classify_b_polytope_2d, classify_facet, classify_marked_polygon, detect_exotic_subtype, ExoticSubtype, FacetClass,
};
use bfacet::faces::{enumerate_faces, internal_v_faces, v_faces, Face};
use bfacet::format::{self, PointSet};
use bfacet::predicates::{facet_hyperplane, is_b_face, is_b_facet, is_b_polytope, is_marked_b_polytope, Verdict};
use bfacet::{Error, PointConfig};

mod corpus;
mod render;

const EXIT_OK: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "bfacet", version, about = "Decide and classify B-facets of lattice point configurations")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,
    /// Worker threads for censuses (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the configuration in a point set file.
    Classify { path: PathBuf },
    /// Run a single predicate on a point set file.
    Check {
        #[arg(value_enum)]
        predicate: Predicate,
        path: PathBuf,
        /// 1-based point indices of the face, for `b-face`.
        #[arg(long, value_delimiter = ',')]
        face: Vec<usize>,
    },
    /// Run an exhaustive census.
    Census {
        #[arg(value_enum)]
        kind: CensusKind,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Re-verify the built-in example corpus.
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    BFacet,
    BPolytope,
    MarkedBPolytope,
    BFace,
    VFaces,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusKind {
    Theorem,
    Remark,
    Claims,
    Projection,
    Section,
    #[value(name = "2d")]
    Planar,
    Exotic,
}

#[derive(clap::Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    max_covector: i64,
    #[arg(long, default_value_t = 3)]
    max_offset: i64,
    #[arg(long, default_value_t = 7)]
    max_points: usize,
    #[arg(long)]
    coordinate_cap: Option<i64>,
    /// Random configurations checked in addition to the census (`remark`).
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest template parameter `a` (`exotic`).
    #[arg(long, default_value_t = 4)]
    max_a: i64,
    /// Largest free template entry (`exotic`).
    #[arg(long, default_value_t = 8)]
    max_star: i64,
}

impl BoundsArgs {
    fn census(&self) -> Result<CensusBounds, Error> {
        let b = CensusBounds::new(self.dim, self.max_covector, self.max_offset, self.max_points)?;
        match self.coordinate_cap {
            Some(m) => b.with_coordinate_cap(m),
            None => Ok(b),
        }
    }
}

/// A command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPositive { .. } | Error::HypothesisViolated(_) => EXIT_FAILS,
            Error::Overflow | Error::ZeroVector => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::NotPositive { .. } => format!("not a positive-covector configuration: {e}"),
            Error::NotHyperplane { .. } | Error::DimensionMismatch { .. } | Error::NotFullDimensional { .. } => {
                format!("dimension error: {e}")
            }
            Error::Parse { .. } => format!("parse error: {e}"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

/// A finished report and the exit code it implies.
struct Outcome {
    report: Value,
    code: u8,
}

fn load(path: &Path) -> Result<PointSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "holds": v.holds,
        "simplices_checked": v.simplices_checked,
        "counterexample": v.counterexample.as_ref().map(|s| s.vertices().to_vec()),
    })
}

fn face_json(f: &Face) -> Value {
    json!({ "dim": f.dim(), "members": f.members(), "support": f.support().coords() })
}

fn classify(path: &Path) -> Result<Outcome, Failure> {
    let set = load(path)?;
    let config = set.config()?;
    if config.ambient_dim() == 2 && config.is_full_dimensional() {
        let report = if set.marks.is_empty() {
            let class = classify_b_polytope_2d(&config)?;
            let brute = is_b_polytope(&config)?;
            json!({ "command": "classify", "points": config, "b_polytope": verdict_json(&brute), "class": class })
        } else {
            let mp = set.marked()?;
            let class = classify_marked_polygon(&mp)?;
            let brute = is_marked_b_polytope(&mp)?;
            json!({
                "command": "classify",
                "points": config,
                "marks": mp.marked_members(),
                "marked_b_polytope": verdict_json(&brute),
                "class": class,
            })
        };
        return Ok(Outcome { report, code: EXIT_OK });
    }
    let h = facet_hyperplane(&config)?.clone();
    let class = classify_facet(&config)?;
    let verdict = is_b_facet(&config)?;
    let subtype = match class {
        FacetClass::FlatBorder { subtype, .. } => subtype,
        _ => ExoticSubtype::None,
    };
    let report = json!({
        "command": "classify",
        "points": config,
        "hyperplane": { "covector": h.covector(), "offset": h.offset() },
        "b_facet": verdict_json(&verdict),
        "class": class,
        "exotic_subtype": subtype,
    });
    Ok(Outcome { report, code: EXIT_OK })
}

fn check(predicate: Predicate, path: &Path, face: &[usize]) -> Result<Outcome, Failure> {
    let set = load(path)?;
    let config = set.config()?;
    let (name, verdict, extra) = match predicate {
        Predicate::BFacet => ("b-facet", is_b_facet(&config)?, Value::Null),
        Predicate::BPolytope => ("b-polytope", is_b_polytope(&config)?, Value::Null),
        Predicate::MarkedBPolytope => {
            let mp = set.marked()?;
            ("marked-b-polytope", is_marked_b_polytope(&mp)?, json!(mp.marked_members()))
        }
        Predicate::BFace => {
            let f = find_face(&set, &config, face)?;
            let holds = is_b_face(&config, &f)?;
            let report = json!({
                "command": "check",
                "predicate": "b-face",
                "points": config,
                "face": face_json(&f),
                "holds": holds,
            });
            return Ok(Outcome { report, code: if holds { EXIT_OK } else { EXIT_FAILS } });
        }
        Predicate::VFaces => {
            let all: Vec<Value> = v_faces(&config)?.iter().map(face_json).collect();
            let internal: Vec<Value> = internal_v_faces(&config)?.iter().map(face_json).collect();
            let report = json!({
                "command": "check",
                "predicate": "v-faces",
                "points": config,
                "v_faces": all,
                "internal_v_faces": internal,
            });
            return Ok(Outcome { report, code: EXIT_OK });
        }
    };
    let mut report = json!({
        "command": "check",
        "predicate": name,
        "points": config,
        "verdict": verdict_json(&verdict),
    });
    if !extra.is_null() {
        report["marks"] = extra;
    }
    Ok(Outcome { report, code: if verdict.holds { EXIT_OK } else { EXIT_FAILS } })
}

fn find_face(set: &PointSet, config: &PointConfig, indices: &[usize]) -> Result<Face, Failure> {
    if indices.is_empty() {
        return Err(input_error("b-face needs --face with 1-based point indices"));
    }
    let mut members = Vec::new();
    for &i in indices {
        let p = set.points.get(i.wrapping_sub(1)).ok_or_else(|| input_error(format!("no point with index {i}")))?;
        members.push(p.clone());
    }
    members.sort();
    members.dedup();
    enumerate_faces(config)?
        .into_iter()
        .find(|f| f.members() == members.as_slice())
        .ok_or_else(|| input_error("the listed points are not a face"))
}

fn census_json(r: &CensusReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn run_census(kind: CensusKind, args: &BoundsArgs) -> Result<Outcome, Failure> {
    let report = match kind {
        CensusKind::Theorem => census::verify_main_theorem(&args.census()?)?,
        CensusKind::Remark => census::verify_remark(&args.census()?, args.samples, args.seed)?,
        CensusKind::Claims => census::verify_claims(&args.census()?)?,
        CensusKind::Projection => census::verify_lemma_projection(&args.census()?)?,
        CensusKind::Section => census::verify_lemma_section(&args.census()?)?,
        CensusKind::Planar => census::verify_2d_lemmas(&PlanarBounds::default())?,
        CensusKind::Exotic => {
            if args.max_a < 1 || args.max_star < 0 {
                return Err(input_error("template bounds must be non-negative, with --max-a at least 1"));
            }
            let found = census::find_exotic_instances(args.max_a, args.max_star)?;
            let count = |t: Template| found.iter().filter(|i| i.template == t).count();
            let ok = count(Template::Pyramid) > 0 && count(Template::Circuit) > 0;
            let instances: Vec<Value> = found
                .iter()
                .map(|i| {
                    json!({
                        "template": i.template,
                        "points": i.config,
                        "covector": i.covector,
                        "offset": i.offset,
                        "subtype": detect_exotic_subtype(&i.config),
                    })
                })
                .collect();
            let report = json!({
                "command": "census",
                "statement": "exotic",
                "bounds": { "max_a": args.max_a, "max_star": args.max_star },
                "pyramids": count(Template::Pyramid),
                "circuits": count(Template::Circuit),
                "instances": instances,
            });
            return Ok(Outcome { report, code: if ok { EXIT_OK } else { EXIT_FAILS } });
        }
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_FAILS };
    let mut value = census_json(&report);
    value["command"] = json!("census");
    Ok(Outcome { report: value, code })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Classify { path } => classify(path),
        Command::Check { predicate, path, face } => check(*predicate, path, face),
        Command::Census { kind, bounds } => run_census(*kind, bounds),
        Command::Examples => {
            let (report, ok) = corpus::verify()?;
            Ok(Outcome { report, code: if ok { EXIT_OK } else { EXIT_FAILS } })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(EXIT_INPUT);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                OutputFormat::Structured => {
                    serde_json::to_string_pretty(&out.report).expect("json values serialize") + "\n"
                }
                OutputFormat::Human => render::human(&out.report),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
