//! Command-line front end.
//!
//! Rotations travel as JSON documents `{"a":[s,x1,x2,x3],"b":[s,x1,x2,x3]}`,
//! read from a file argument or standard input. Exit codes: 0 success,
//! 1 verification discrepancy, 2 malformed input, 3 non-unit factors.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::compose::{compose, compose_gibbs, is_composition_simple, GibbsPair, SimplicityReport};
use crate::error::Error;
use crate::oracle::planes_from_matrix;
use crate::plane::Plane;
use crate::quat::Quaternion;
use crate::rotation::{simple_to_reflections, Rotation4, RotationKind};
use crate::sample::{self, KindRequest};
use crate::tol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_NOT_UNIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "quat4d",
    version,
    about = "Classify, compose and verify rotations x -> a x b of 4-space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonOpts {
    /// Threshold on |Sa - Sb| and on verification discrepancies.
    #[arg(long, default_value_t = tol::DEFAULT_EPS)]
    pub eps: f64,
    /// Emit JSON instead of the human-readable report.
    #[arg(long)]
    pub json: bool,
    /// Rescale input factors to unit norm instead of rejecting them.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a rotation and print its angles and invariant planes.
    Classify {
        /// Rotation document; standard input when omitted.
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compose g after f.
    Compose {
        /// Documents for f and g. With fewer than two paths the remaining
        /// documents are read from standard input.
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
        /// Also report the Gibbs-vector composition parameters.
        #[arg(long)]
        gibbs: bool,
        /// Also decide simplicity of the composite of two simple rotations.
        #[arg(long)]
        check_simple: bool,
    },
    /// Cross-check closed-form planes and angles against the matrix oracle.
    Verify {
        /// One or more concatenated documents; standard input when omitted.
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
        /// Verify this many seeded random rotations instead of reading input.
        #[arg(long)]
        batch: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindRequest::Any)]
        kind: KindRequest,
    },
    /// Print a seeded random rotation document.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindRequest::Any)]
        kind: KindRequest,
    },
    /// Split a simple rotation into two hyperplane reflections.
    Reflections {
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("non-unit factor: {0}")]
    NotUnit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Malformed(_) => EXIT_MALFORMED,
            Self::NotUnit(_) => EXIT_NOT_UNIT,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUnit { .. } => Self::NotUnit(e.to_string()),
            other => Self::Malformed(other.to_string()),
        }
    }
}

/// `{"a":[s,x1,x2,x3],"b":[s,x1,x2,x3]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationDoc {
    pub a: [f64; 4],
    pub b: [f64; 4],
}

impl RotationDoc {
    pub fn to_rotation(&self, normalize: bool) -> Result<Rotation4, CliError> {
        let a = Quaternion::try_from_array(self.a)?;
        let b = Quaternion::try_from_array(self.b)?;
        let r = if normalize {
            Rotation4::new_normalized(a, b)
        } else {
            Rotation4::new(a, b)
        };
        Ok(r?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite floats serialize")
    }
}

impl From<&Rotation4> for RotationDoc {
    fn from(r: &Rotation4) -> Self {
        Self {
            a: r.a().to_array(),
            b: r.b().to_array(),
        }
    }
}

/// Parses one or more whitespace-separated documents.
pub fn parse_docs(text: &str) -> Result<Vec<RotationDoc>, CliError> {
    let docs = serde_json::Deserializer::from_str(text)
        .into_iter::<RotationDoc>()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    if docs.is_empty() {
        return Err(CliError::Malformed("no rotation document found".into()));
    }
    Ok(docs)
}

pub fn parse_doc(text: &str) -> Result<RotationDoc, CliError> {
    let mut docs = parse_docs(text)?;
    if docs.len() != 1 {
        return Err(CliError::Malformed(format!(
            "expected one rotation document, found {}",
            docs.len()
        )));
    }
    Ok(docs.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneDoc {
    pub u: [f64; 4],
    pub w: [f64; 4],
}

impl From<&Plane> for PlaneDoc {
    fn from(p: &Plane) -> Self {
        Self {
            u: p.u.to_array(),
            w: p.w.to_array(),
        }
    }
}

impl PlaneDoc {
    pub fn to_plane(&self) -> Plane {
        Plane {
            u: Quaternion::from_array(self.u),
            w: Quaternion::from_array(self.w),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneEntry {
    /// `rotation`, `fixed`, `plane1` or `plane2`.
    pub role: String,
    pub angle: f64,
    pub plane: PlaneDoc,
    pub projector: [[f64; 4]; 4],
}

impl PlaneEntry {
    fn new(role: &str, angle: f64, plane: &Plane) -> Self {
        Self {
            role: role.into(),
            angle,
            plane: plane.into(),
            projector: plane.projector().entries,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub kind: String,
    pub angles: Vec<f64>,
    pub planes: Vec<PlaneEntry>,
}

impl ClassifyReport {
    pub fn from_kind(kind: &RotationKind) -> Self {
        let planes = match kind {
            RotationKind::Simple {
                angle,
                fixed_plane,
                rotation_plane,
            } => vec![
                PlaneEntry::new("rotation", *angle, rotation_plane),
                PlaneEntry::new("fixed", 0.0, fixed_plane),
            ],
            RotationKind::Double {
                plane1,
                angle1,
                plane2,
                angle2,
            } => vec![
                PlaneEntry::new("plane1", *angle1, plane1),
                PlaneEntry::new("plane2", *angle2, plane2),
            ],
            _ => Vec::new(),
        };
        Self {
            kind: kind.name().into(),
            angles: kind.angles(),
            planes,
        }
    }
}

pub fn cmd_classify(
    doc: &RotationDoc,
    eps: f64,
    normalize: bool,
) -> Result<ClassifyReport, CliError> {
    let r = doc.to_rotation(normalize)?;
    Ok(ClassifyReport::from_kind(&r.classify(eps)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GibbsDoc {
    pub p_tilde: [f64; 3],
    pub q_tilde: [f64; 3],
    pub cos_alpha: f64,
    pub cos_beta: f64,
}

impl From<&GibbsPair> for GibbsDoc {
    fn from(g: &GibbsPair) -> Self {
        Self {
            p_tilde: g.p_tilde.to_array(),
            q_tilde: g.q_tilde.to_array(),
            cos_alpha: g.cos_alpha,
            cos_beta: g.cos_beta,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicityDoc {
    pub s_condition: f64,
    pub det_normals: f64,
    pub intersection_dim: usize,
    pub is_simple: bool,
    pub tests_agree: bool,
    /// Kind of the composite according to `classify`.
    pub composite_kind: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComposeReport {
    pub rotation: RotationDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gibbs: Option<GibbsDoc>,
    /// Set when `--gibbs` was requested but the Gibbs chart is singular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gibbs_singular: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<SimplicityDoc>,
    /// Set when `--check-simple` was requested on a non-simple input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity_skipped: Option<String>,
}

pub fn cmd_compose(
    f: &RotationDoc,
    g: &RotationDoc,
    opts: &CommonOpts,
    gibbs: bool,
    check_simple: bool,
) -> Result<ComposeReport, CliError> {
    let f = f.to_rotation(opts.normalize)?;
    let g = g.to_rotation(opts.normalize)?;
    let h = compose(&g, &f);
    let mut report = ComposeReport {
        rotation: (&h).into(),
        gibbs: None,
        gibbs_singular: None,
        simplicity: None,
        simplicity_skipped: None,
    };
    if gibbs {
        let composed = GibbsPair::from_rotation(&f)
            .and_then(|gf| GibbsPair::from_rotation(&g).map(|gg| (gf, gg)))
            .and_then(|(gf, gg)| compose_gibbs(&gf, &gg));
        match composed {
            Ok(p) => report.gibbs = Some((&p).into()),
            Err(e) => report.gibbs_singular = Some(e.to_string()),
        }
    }
    if check_simple {
        match is_composition_simple(&f, &g, opts.eps) {
            Ok(s) => report.simplicity = Some(simplicity_doc(&s, &h, opts.eps)),
            Err(e) => report.simplicity_skipped = Some(e.to_string()),
        }
    }
    Ok(report)
}

fn simplicity_doc(s: &SimplicityReport, h: &Rotation4, eps: f64) -> SimplicityDoc {
    SimplicityDoc {
        s_condition: s.s_condition,
        det_normals: s.det_normals,
        intersection_dim: s.intersection_dim,
        is_simple: s.is_simple,
        tests_agree: s.tests_agree(),
        composite_kind: h.classify(eps).name().into(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaneAngle {
    pub angle: f64,
    pub plane: PlaneDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rotation: RotationDoc,
    pub kind: String,
    pub formula: Vec<PlaneAngle>,
    pub formula_angles: Vec<f64>,
    pub oracle: Vec<PlaneAngle>,
    pub oracle_isoclinic: bool,
    pub max_angle_discrepancy: f64,
    /// Zero when the planes are not unique (isoclinic cases).
    pub max_projector_discrepancy: f64,
    pub consistent: bool,
}

/// Compares `classify` against `planes_from_matrix` for one rotation.
pub fn verify_rotation(r: &Rotation4, eps: f64) -> Result<VerifyReport, CliError> {
    let kind = r.classify(eps);
    let oracle = planes_from_matrix(&r.to_matrix(), eps.max(tol::EPS_PLANE))?;
    let oracle_pairs = [
        (oracle.angle1, oracle.plane1),
        (oracle.angle2, oracle.plane2),
    ];

    let formula: Vec<(f64, Option<Plane>)> = match kind {
        RotationKind::Identity => vec![(0.0, None), (0.0, None)],
        RotationKind::LeftIsoclinic { angle } | RotationKind::RightIsoclinic { angle } => {
            vec![(angle, None), (angle, None)]
        }
        RotationKind::Simple {
            angle,
            fixed_plane,
            rotation_plane,
        } => vec![(angle, Some(rotation_plane)), (0.0, Some(fixed_plane))],
        RotationKind::Double {
            plane1,
            angle1,
            plane2,
            angle2,
        } => vec![(angle1, Some(plane1)), (angle2, Some(plane2))],
    };

    // Pair formula entries with oracle entries by angle.
    let straight = (formula[0].0 - oracle.angle1).abs() + (formula[1].0 - oracle.angle2).abs();
    let swapped = (formula[0].0 - oracle.angle2).abs() + (formula[1].0 - oracle.angle1).abs();
    let order = if straight <= swapped { [0, 1] } else { [1, 0] };

    let mut max_angle: f64 = 0.0;
    let mut max_proj: f64 = 0.0;
    for (f, &o) in formula.iter().zip(order.iter()) {
        let (o_angle, o_plane) = oracle_pairs[o];
        max_angle = max_angle.max((f.0 - o_angle).abs());
        if let (Some(p), false) = (f.1, oracle.isoclinic) {
            max_proj = max_proj.max(p.distance(&o_plane));
        }
    }

    let to_doc = |(angle, plane): (f64, Plane)| PlaneAngle {
        angle,
        plane: (&plane).into(),
    };
    Ok(VerifyReport {
        rotation: r.into(),
        kind: kind.name().into(),
        formula: formula
            .iter()
            .filter_map(|&(a, p)| p.map(|p| to_doc((a, p))))
            .collect(),
        formula_angles: formula.iter().map(|f| f.0).collect(),
        oracle: oracle_pairs.into_iter().map(to_doc).collect(),
        oracle_isoclinic: oracle.isoclinic,
        max_angle_discrepancy: max_angle,
        max_projector_discrepancy: max_proj,
        consistent: max_angle <= eps && max_proj <= eps,
    })
}

pub fn cmd_verify(doc: &RotationDoc, eps: f64, normalize: bool) -> Result<VerifyReport, CliError> {
    verify_rotation(&doc.to_rotation(normalize)?, eps)
}

pub fn cmd_random(seed: u64, kind: KindRequest) -> RotationDoc {
    (&sample::rotation(&mut sample::rng(seed), kind)).into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReflectionsDoc {
    pub y: [f64; 4],
    pub z: [f64; 4],
}

pub fn cmd_reflections(
    doc: &RotationDoc,
    eps: f64,
    normalize: bool,
) -> Result<ReflectionsDoc, CliError> {
    let r = doc.to_rotation(normalize)?;
    let (y, z) = simple_to_reflections(&r, eps)?;
    Ok(ReflectionsDoc {
        y: y.get().to_array(),
        z: z.get().to_array(),
    })
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| CliError::Malformed(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Malformed(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn q6(x: [f64; 4]) -> String {
    format!("{:.6}", Quaternion::from_array(x))
}

fn write_planes(out: &mut dyn Write, planes: &[PlaneEntry]) -> std::io::Result<()> {
    for p in planes {
        writeln!(
            out,
            "{} plane: span{{{}, {}}}  angle {:.6} rad ({:.6} deg)",
            p.role,
            q6(p.plane.u),
            q6(p.plane.w),
            p.angle,
            p.angle.to_degrees()
        )?;
        writeln!(out, "  projector:")?;
        for row in &p.projector {
            writeln!(
                out,
                "    [{:>10.6} {:>10.6} {:>10.6} {:>10.6}]",
                row[0], row[1], row[2], row[3]
            )?;
        }
    }
    Ok(())
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(value).expect("report serializes")
    )
}

fn write_classify(out: &mut dyn Write, r: &ClassifyReport) -> std::io::Result<()> {
    writeln!(out, "kind: {}", r.kind)?;
    let angles: Vec<String> = r
        .angles
        .iter()
        .map(|a| format!("{a:.6} rad ({:.6} deg)", a.to_degrees()))
        .collect();
    writeln!(out, "angles: {}", angles.join(", "))?;
    write_planes(out, &r.planes)
}

fn write_compose(out: &mut dyn Write, r: &ComposeReport) -> std::io::Result<()> {
    writeln!(out, "{}", r.rotation.to_json())?;
    if let Some(g) = &r.gibbs {
        writeln!(
            out,
            "gibbs: p~ = [{:.6}, {:.6}, {:.6}]  q~ = [{:.6}, {:.6}, {:.6}]  cos alpha = {:.6}  cos beta = {:.6}",
            g.p_tilde[0], g.p_tilde[1], g.p_tilde[2], g.q_tilde[0], g.q_tilde[1], g.q_tilde[2],
            g.cos_alpha, g.cos_beta
        )?;
    }
    if let Some(s) = &r.gibbs_singular {
        writeln!(out, "gibbs: singular ({s}); use the quaternion result")?;
    }
    if let Some(s) = &r.simplicity {
        writeln!(
            out,
            "simplicity: {}  residual {:.6e}  det {:.6e}  intersection dim {}  tests agree: {}  composite: {}",
            if s.is_simple { "simple" } else { "not simple" },
            s.s_condition,
            s.det_normals,
            s.intersection_dim,
            s.tests_agree,
            s.composite_kind
        )?;
    }
    if let Some(s) = &r.simplicity_skipped {
        writeln!(out, "simplicity: skipped ({s})")?;
    }
    Ok(())
}

fn write_verify(out: &mut dyn Write, r: &VerifyReport) -> std::io::Result<()> {
    writeln!(out, "kind: {}", r.kind)?;
    let fmt = |list: &[PlaneAngle]| -> Vec<String> {
        list.iter()
            .map(|p| {
                format!(
                    "{:.6} rad on span{{{}, {}}}",
                    p.angle,
                    q6(p.plane.u),
                    q6(p.plane.w)
                )
            })
            .collect()
    };
    writeln!(out, "formula angles: {:?}", r.formula_angles)?;
    for line in fmt(&r.formula) {
        writeln!(out, "  formula: {line}")?;
    }
    for line in fmt(&r.oracle) {
        writeln!(out, "  oracle:  {line}")?;
    }
    if r.oracle_isoclinic {
        writeln!(out, "  oracle: isoclinic, planes not unique")?;
    }
    writeln!(
        out,
        "max angle discrepancy {:.3e}, max projector discrepancy {:.3e}: {}",
        r.max_angle_discrepancy,
        r.max_projector_discrepancy,
        if r.consistent {
            "consistent"
        } else {
            "DISCREPANCY"
        }
    )
}

fn execute(
    cli: Cli,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Malformed(format!("output: {e}"));
    match cli.command {
        Command::Classify { input, opts } => {
            let doc = parse_doc(&read_input(input.as_ref(), stdin)?)?;
            let report = cmd_classify(&doc, opts.eps, opts.normalize)?;
            if opts.json {
                json_line(out, &report).map_err(io)?;
            } else {
                write_classify(out, &report).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Compose {
            inputs,
            opts,
            gibbs,
            check_simple,
        } => {
            if inputs.len() > 2 {
                return Err(CliError::Malformed(
                    "compose takes at most two inputs".into(),
                ));
            }
            let mut docs = Vec::new();
            for p in &inputs {
                docs.push(parse_doc(&read_input(Some(p), stdin)?)?);
            }
            if docs.len() < 2 {
                docs.extend(parse_docs(&read_input(None, stdin)?)?);
            }
            if docs.len() != 2 {
                return Err(CliError::Malformed(format!(
                    "compose needs exactly two documents (f then g), got {}",
                    docs.len()
                )));
            }
            let report = cmd_compose(&docs[0], &docs[1], &opts, gibbs, check_simple)?;
            if let Some(s) = &report.gibbs_singular {
                writeln!(err, "warning: Gibbs chart singular: {s}").map_err(io)?;
            }
            if let Some(s) = &report.simplicity_skipped {
                writeln!(err, "warning: simplicity check skipped: {s}").map_err(io)?;
            }
            if opts.json && (gibbs || check_simple) {
                json_line(out, &report).map_err(io)?;
            } else if opts.json || !(gibbs || check_simple) {
                writeln!(out, "{}", report.rotation.to_json()).map_err(io)?;
            } else {
                write_compose(out, &report).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            opts,
            batch,
            seed,
            kind,
        } => {
            let docs = match batch {
                Some(n) => (0..n)
                    .map(|i| cmd_random(seed.wrapping_add(i), kind))
                    .collect(),
                None => parse_docs(&read_input(input.as_ref(), stdin)?)?,
            };
            let mut failures = 0usize;
            let mut worst_angle: f64 = 0.0;
            let mut worst_proj: f64 = 0.0;
            for doc in &docs {
                let report = cmd_verify(doc, opts.eps, opts.normalize)?;
                worst_angle = worst_angle.max(report.max_angle_discrepancy);
                worst_proj = worst_proj.max(report.max_projector_discrepancy);
                if !report.consistent {
                    failures += 1;
                }
                if opts.json {
                    json_line(out, &report).map_err(io)?;
                } else if docs.len() == 1 || !report.consistent {
                    write_verify(out, &report).map_err(io)?;
                }
            }
            if docs.len() > 1 && !opts.json {
                writeln!(
                    out,
                    "verified {} rotations: {} consistent, {} discrepant (max angle {:.3e}, max projector {:.3e})",
                    docs.len(),
                    docs.len() - failures,
                    failures,
                    worst_angle,
                    worst_proj
                )
                .map_err(io)?;
            }
            Ok(if failures == 0 {
                EXIT_OK
            } else {
                EXIT_DISCREPANCY
            })
        }
        Command::Random { seed, kind } => {
            writeln!(out, "{}", cmd_random(seed, kind).to_json()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Reflections { input, opts } => {
            let doc = parse_doc(&read_input(input.as_ref(), stdin)?)?;
            let r = cmd_reflections(&doc, opts.eps, opts.normalize)?;
            if opts.json {
                json_line(out, &r).map_err(io)?;
            } else {
                writeln!(out, "y: {}", q6(r.y)).map_err(io)?;
                writeln!(out, "z: {}", q6(r.z)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
