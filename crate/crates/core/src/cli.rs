//! Command-line front end.  Every subcommand prints a machine-readable
//! report: JSON with canonically sorted keys and every number rendered
//! as a decimal string (nothing in scope is approximate, so no floats
//! exist anywhere), or TSV with a header row for tabular output.
//!
//! Exit codes: 0 on success, 1 on a domain error (reported as a JSON
//! object with a single "error" key on standard output), 2 on a usage
//! error (diagnostic on standard error).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classify::{classify_curve, Assumptions, ClassificationReport};
use crate::cone::SurfaceModel;
use crate::existence::{mori_exists, scan_nonreduced};
use crate::lattice::{Ambient, DivisorClass, GeneratorKind};
use crate::pell;
use crate::quadform;

#[derive(Parser, Debug)]
#[command(
    name = "k3curves",
    version,
    about = "Exact arithmetic for curve classes on special quartic surfaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fundamental solution of x² − Ny² = 1 via the continued fraction of √N
    Pell {
        /// Non-square modulus N ≥ 2
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Decide whether the lattice form 4x² + 2exy + sy² represents n
    Represents {
        /// Mixed coefficient h·G
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        /// Generator square G·G (must be even)
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        /// Target value
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Extremal rays of the effective cone of a surface family
    Rays {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Second extremal rays of the rational families e = 2..9, as TSV
    Table1,
    /// Cohomology of a line bundle on a surface of a family
    Coh {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Divisor class "x,y"
        #[arg(long, allow_hyphen_values = true)]
        class: DivisorClass,
    },
    /// Hilbert-scheme classification of a curve class
    Classify {
        /// Ambient 3-fold
        #[arg(long, value_enum)]
        ambient: AmbientArg,
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Curve class "a,b"
        #[arg(long, allow_hyphen_values = true)]
        class: DivisorClass,
        /// Grant: the rigid curve's normal bundle is globally generated
        #[arg(long = "assume-gg")]
        assume_gg: bool,
        /// Grant: the pencil comparison map is non-surjective
        #[arg(long = "assume-pi")]
        assume_pi: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Whether a smooth quartic surface carries a curve of degree d, genus g
    Exists {
        #[arg(allow_hyphen_values = true)]
        d: i64,
        #[arg(allow_hyphen_values = true)]
        g: i64,
    },
    /// Classify all candidate classes up to a degree cutoff, keeping the
    /// generically non-reduced components
    Scan {
        #[arg(long, value_enum)]
        ambient: AmbientArg,
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Largest curve degree to consider
        #[arg(long)]
        dmax: i64,
        #[arg(long = "assume-gg")]
        assume_gg: bool,
        #[arg(long = "assume-pi")]
        assume_pi: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reproduce the two worked examples end to end
    Examples,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Surface family
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Degree of the special generator, e = h·G
    #[arg(long, allow_hyphen_values = true)]
    e: i64,
    /// Generator square G·G; fixed per family except for --family none
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
}

impl SurfaceArgs {
    fn build(&self) -> Result<SurfaceModel, DomainError> {
        SurfaceModel::from_family(self.family.into(), self.e, self.s)
            .map_err(|e| DomainError(e.to_string()))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AmbientArg {
    P3,
    V4,
}

impl From<AmbientArg> for Ambient {
    fn from(value: AmbientArg) -> Self {
        match value {
            AmbientArg::P3 => Ambient::ProjectiveSpace3,
            AmbientArg::V4 => Ambient::QuarticThreefold,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Rational,
    Elliptic,
    Line,
    None,
}

impl From<FamilyArg> for GeneratorKind {
    fn from(value: FamilyArg) -> Self {
        match value {
            FamilyArg::Rational => GeneratorKind::Rational,
            FamilyArg::Elliptic => GeneratorKind::Elliptic,
            FamilyArg::Line => GeneratorKind::Line,
            FamilyArg::None => GeneratorKind::NoSpecialCurves,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

struct DomainError(String);

/// Parse `args` and run the selected subcommand, writing the report to
/// `out` and usage diagnostics to `err`.  Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = writeln!(out, "{report}");
            0
        }
        Err(DomainError(message)) => {
            let _ = writeln!(out, "{}", json!({ "error": message }));
            1
        }
    }
}

fn execute(command: Command) -> Result<String, DomainError> {
    match command {
        Command::Pell { n } => cmd_pell(n),
        Command::Represents { e, s, n } => cmd_represents(e, s, n),
        Command::Rays { surface } => cmd_rays(&surface),
        Command::Table1 => Ok(table1()),
        Command::Coh { surface, class } => cmd_coh(&surface, &class),
        Command::Classify {
            ambient,
            surface,
            class,
            assume_gg,
            assume_pi,
            format,
        } => {
            let report = classify_curve(
                ambient.into(),
                &surface.build()?,
                &class,
                &Assumptions {
                    normal_bundle_globally_generated: assume_gg,
                    pi_map_nonsurjective_elliptic: assume_pi,
                },
            );
            Ok(match format {
                Format::Json => report_json(&report).to_string(),
                Format::Tsv => format!("{}\n{}", report_tsv_header(), report_tsv_row(&report)),
                Format::Pretty => report_pretty(&report),
            })
        }
        Command::Exists { d, g } => cmd_exists(d, g),
        Command::Scan {
            ambient,
            surface,
            dmax,
            assume_gg,
            assume_pi,
            format,
        } => {
            if dmax < 1 {
                return Err(DomainError("degree cutoff must be at least 1".into()));
            }
            let reports = scan_nonreduced(
                ambient.into(),
                &surface.build()?,
                dmax,
                &Assumptions {
                    normal_bundle_globally_generated: assume_gg,
                    pi_map_nonsurjective_elliptic: assume_pi,
                },
            );
            Ok(match format {
                Format::Json => {
                    Value::Array(reports.iter().map(report_json).collect()).to_string()
                }
                Format::Tsv => {
                    let mut lines = vec![report_tsv_header().to_string()];
                    lines.extend(reports.iter().map(report_tsv_row));
                    lines.join("\n")
                }
                Format::Pretty => {
                    if reports.is_empty() {
                        "no generically non-reduced components up to the cutoff".to_string()
                    } else {
                        reports
                            .iter()
                            .map(report_pretty)
                            .collect::<Vec<_>>()
                            .join("\n\n")
                    }
                }
            })
        }
        Command::Examples => Ok(examples()),
    }
}

fn big_str(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn int_str(v: i64) -> Value {
    Value::String(v.to_string())
}

fn cmd_pell(n: i64) -> Result<String, DomainError> {
    let solution = pell::fundamental_solution(n).map_err(|e| DomainError(e.to_string()))?;
    let (a0, period) = pell::sqrt_continued_fraction(n).expect("solution exists, so N is valid");
    Ok(json!({
        "n": int_str(n),
        "a0": int_str(a0),
        "period": period.iter().map(|a| int_str(*a)).collect::<Vec<_>>(),
        "x": big_str(&solution.x),
        "y": big_str(&solution.y),
    })
    .to_string())
}

fn cmd_represents(e: i64, s: i64, n: i64) -> Result<String, DomainError> {
    if s % 2 != 0 {
        return Err(DomainError(format!(
            "G·G must be even on a K3 surface, got {s}"
        )));
    }
    let det = 4i128 * s as i128 - (e as i128) * (e as i128);
    if det >= 0 {
        return Err(DomainError(format!(
            "Gram determinant 4·{s} − {e}² = {det} must be negative"
        )));
    }
    let result = quadform::represents_form(e, s, &BigInt::from(n));
    Ok(json!({
        "e": int_str(e),
        "s": int_str(s),
        "n": int_str(n),
        "representable": result.representable,
        "witness": result.witness.as_ref().map(|w| w.to_string()),
    })
    .to_string())
}

fn cmd_rays(surface: &SurfaceArgs) -> Result<String, DomainError> {
    let model = surface.build()?;
    let (e, s) = model.gram();
    let rays: Vec<Value> = model
        .mori_cone()
        .rays()
        .into_iter()
        .map(|ray| {
            json!({
                "kind": ray.kind_name(),
                "class": ray.class().map(|c| c.to_string()),
                "degree": ray.class().map(|c| model.degree(c).to_string()),
            })
        })
        .collect();
    Ok(json!({
        "family": model.kind().to_string(),
        "e": int_str(e),
        "s": int_str(s),
        "rebased": model.rebased(),
        "rays": rays,
    })
    .to_string())
}

fn table1() -> String {
    let mut lines = vec!["e\t(x,y)\td(E')".to_string()];
    for e in 2..=9 {
        let model = SurfaceModel::from_family(GeneratorKind::Rational, e, None)
            .expect("rational families with 2 ≤ e ≤ 9 are valid");
        let second = model.mori_cone().rays()[1]
            .class()
            .expect("rational-family rays carry classes");
        // Published convention: the second ray is xh − yE with y > 0.
        lines.push(format!(
            "{e}\t({},{})\t{}",
            second.x,
            -&second.y,
            model.degree(second)
        ));
    }
    lines.join("\n")
}

fn cmd_coh(surface: &SurfaceArgs, class: &DivisorClass) -> Result<String, DomainError> {
    let model = surface.build()?;
    let (e, s) = model.gram();
    let triple = model.cohomology(class);
    Ok(json!({
        "family": model.kind().to_string(),
        "e": int_str(e),
        "s": int_str(s),
        "class": class.to_string(),
        "h0": big_str(&triple.h0),
        "h1": big_str(&triple.h1),
        "h2": big_str(&triple.h2),
        "chi": big_str(&model.euler_characteristic(class)),
        "effective": model.is_effective(class),
        "nef": model.is_nef(class),
    })
    .to_string())
}

fn cmd_exists(d: i64, g: i64) -> Result<String, DomainError> {
    if d <= 0 {
        return Err(DomainError(format!("degree must be positive, got {d}")));
    }
    if g < 0 {
        return Err(DomainError(format!("genus must be non-negative, got {g}")));
    }
    Ok(json!({
        "d": int_str(d),
        "g": int_str(g),
        "exists": mori_exists(&BigInt::from(d), &BigInt::from(g)),
    })
    .to_string())
}

fn report_json(report: &ClassificationReport) -> Value {
    json!({
        "ambient": report.ambient.to_string(),
        "curve_class": report.curve_class.to_string(),
        "degree": big_str(&report.degree),
        "genus": big_str(&report.genus),
        "adjoint_class": report.adjoint_class.to_string(),
        "adjoint_effective": report.adjoint_effective,
        "adjoint_nef": report.adjoint_nef,
        "adjoint_ray_pairings": report
            .adjoint_ray_pairings
            .as_ref()
            .map(|(a, b)| vec![a.to_string(), b.to_string()]),
        "h1_adjoint": big_str(&report.h1_adjoint),
        "status": report.status.label(),
        "status_reason": report.status.reason(),
        "family_dimension": report.family_dimension.as_ref().map(BigInt::to_string),
        "normal_bundle_sections": report
            .normal_bundle_sections
            .as_ref()
            .map(BigInt::to_string),
        "preconditions": {
            "smooth_connected_member": report.preconditions.smooth_connected_member,
            "not_complete_intersection": report.preconditions.not_complete_intersection,
            "degree_above_bound": report.preconditions.degree_above_bound,
            "adjoint_effective": report.preconditions.adjoint_effective,
        },
        "model_note": report.model_note.as_deref(),
    })
}

fn report_tsv_header() -> &'static str {
    "curve\tdegree\tgenus\tadjoint\th1\tstatus\tdim\th0_ncv"
}

fn report_tsv_row(report: &ClassificationReport) -> String {
    let opt = |v: &Option<BigInt>| v.as_ref().map_or("-".to_string(), BigInt::to_string);
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        report.curve_class,
        report.degree,
        report.genus,
        report.adjoint_class,
        report.h1_adjoint,
        report.status.label(),
        opt(&report.family_dimension),
        opt(&report.normal_bundle_sections),
    )
}

fn report_pretty(report: &ClassificationReport) -> String {
    let mut lines = vec![
        format!(
            "curve {} in {}: degree {}, genus {}",
            report.curve_class, report.ambient, report.degree, report.genus
        ),
        format!(
            "adjoint class {}: effective {}, nef {}, h1 = {}",
            report.adjoint_class, report.adjoint_effective, report.adjoint_nef, report.h1_adjoint
        ),
        format!("status: {}", report.status),
    ];
    if let (Some(dim), Some(h0)) = (&report.family_dimension, &report.normal_bundle_sections) {
        lines.push(format!(
            "family dimension {dim}, normal bundle sections {h0}"
        ));
    }
    if !report.preconditions.all_pass() {
        lines.push(format!(
            "failed checks: {}",
            report.preconditions.failures().join(", ")
        ));
    }
    if let Some(note) = &report.model_note {
        lines.push(format!("note: {note}"));
    }
    lines.join("\n")
}

fn examples() -> String {
    let conic = SurfaceModel::from_family(GeneratorKind::Rational, 2, None)
        .expect("the e = 2 rational family is valid");
    let first = classify_curve(
        Ambient::QuarticThreefold,
        &conic,
        &DivisorClass::new(2, 2),
        &Assumptions {
            normal_bundle_globally_generated: true,
            pi_map_nonsurjective_elliptic: false,
        },
    );
    let second = classify_curve(
        Ambient::ProjectiveSpace3,
        &SurfaceModel::plane_cubic(),
        &DivisorClass::new(4, 2),
        &Assumptions::default(),
    );
    let summary = |r: &ClassificationReport| {
        json!({
            "ambient": r.ambient.to_string(),
            "curve": r.curve_class.to_string(),
            "d": big_str(&r.degree),
            "g": big_str(&r.genus),
            "dim": r.family_dimension.as_ref().map(BigInt::to_string),
            "h1": big_str(&r.h1_adjoint),
            "h0_normal_bundle": r.normal_bundle_sections.as_ref().map(BigInt::to_string),
            "status": r.status.label(),
        })
    };
    Value::Array(vec![summary(&first), summary(&second)]).to_string()
}
