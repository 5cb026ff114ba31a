//! `isoparametric-lab`: build Cartan–Münzner families and check their geometry.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
//! errors (bad flags, unknown family, out-of-range level).

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use isoparametric::families::{catalog, catalog_names, signed_c, verify_exact, FamilyKind, FamilySpec};
use isoparametric::geometry::{
    admissible_parallel_distances, focal_identity_checks, focal_map, gradient_flow_geodesy_oriented,
    parallel_spectrum_check, spectrum, FamilyField, Orientation, Sampler, SpectrumReport,
};
use isoparametric::report::{Report, ResidualSummary};
use isoparametric::tolerance::{self, Tolerances};
use isoparametric::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Catalog,
    Verify,
    Spectrum,
    Focal,
    Identity,
    Flow,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Catalog => "catalog",
            CommandKind::Verify => "verify",
            CommandKind::Spectrum => "spectrum",
            CommandKind::Focal => "focal",
            CommandKind::Identity => "identity",
            CommandKind::Flow => "flow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub family: Option<String>,
    pub level: f64,
    pub samples: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub tolerances: Tolerances,
    pub arc: f64,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            family: None,
            level: 0.0,
            samples: 100,
            seed: tolerance::DEFAULT_SEED,
            output: None,
            format: Format::Json,
            tolerances: Tolerances::default(),
            arc: PI / 8.0,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "isoparametric-lab", version, about = "Isoparametric hypersurfaces in spheres")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// List the built-in families.
    Catalog(Common),
    /// Exact Cartan–Münzner identities and the Beltrami equations on the sphere.
    Verify(Common),
    /// Principal curvatures on a level set.
    Spectrum(Common),
    /// Focal maps and focal submanifolds.
    Focal(Common),
    /// Scalar law on normal circles and the parallel-hypersurface law.
    Identity(Common),
    /// Gradient flow lines against great circles.
    Flow(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Family selector: g1-<n>, g2-<p>-<q>, g3-<r|c|h|o>.
    #[arg(long)]
    family: Option<String>,
    /// Level s in (−1, 1).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    level: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = "ISOPAR_SEED", default_value_t = tolerance::DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, group = "format")]
    json: bool,
    #[arg(long, group = "format")]
    csv: bool,
    #[arg(long, group = "format")]
    text: bool,
    #[arg(long, default_value_t = tolerance::SPECTRAL)]
    tol_spectral: f64,
    #[arg(long, default_value_t = tolerance::IDENTITY)]
    tol_identity: f64,
    /// Arc length for `flow`.
    #[arg(long, default_value_t = PI / 8.0)]
    arc: f64,
}

impl Cmd {
    fn into_config(self) -> RunConfig {
        let (command, c) = match self {
            Cmd::Catalog(c) => (CommandKind::Catalog, c),
            Cmd::Verify(c) => (CommandKind::Verify, c),
            Cmd::Spectrum(c) => (CommandKind::Spectrum, c),
            Cmd::Focal(c) => (CommandKind::Focal, c),
            Cmd::Identity(c) => (CommandKind::Identity, c),
            Cmd::Flow(c) => (CommandKind::Flow, c),
        };
        let format = if c.csv {
            Format::Csv
        } else if c.text {
            Format::Text
        } else {
            Format::Json
        };
        RunConfig {
            command,
            family: c.family,
            level: c.level,
            samples: c.samples,
            seed: c.seed,
            output: c.output,
            format,
            tolerances: Tolerances { spectral: c.tol_spectral, identity: c.tol_identity },
            arc: c.arc,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command.into_config(), out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFamily(_) | Error::LevelOutOfRange(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Executes `config`, writes its output and returns the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match config.command {
        CommandKind::Catalog => Ok((render_catalog(config.format), true)),
        _ => run_report(config).map(|r| (render(&r, config.format), r.passed)),
    };
    match result {
        Ok((body, passed)) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, body.as_bytes()),
                None => out.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.eigenvalue_csv(),
        Format::Text => report.to_text(),
    }
}

fn render_catalog(format: Format) -> String {
    let families = catalog();
    match format {
        Format::Json => {
            let v = Value::Array(families.iter().map(FamilySpec::to_json).collect());
            let mut s = serde_json::to_string_pretty(&v).expect("catalog serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("name,g,ambient_dim,n,m1,m2,c_expected,terms\n");
            for f in &families {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    f.name,
                    f.g,
                    f.ambient_dim,
                    f.n(),
                    f.multiplicities[0],
                    f.multiplicities[1],
                    f.c_expected,
                    f.f.num_terms()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for f in &families {
                let _ = writeln!(
                    s,
                    "{:<8} g={} S^{} multiplicities ({}, {}) c={} terms={}",
                    f.name,
                    f.g,
                    f.ambient_dim - 1,
                    f.multiplicities[0],
                    f.multiplicities[1],
                    f.c_expected,
                    f.f.num_terms()
                );
            }
            s
        }
    }
}

fn resolve_family(config: &RunConfig) -> Result<FamilySpec, Failure> {
    let listing = || catalog_names().join(", ");
    let Some(sel) = &config.family else {
        return Err(Failure::Usage(format!("--family is required; known families: {}", listing())));
    };
    sel.parse::<FamilyKind>()
        .and_then(|k| k.build())
        .map_err(|e| Failure::Usage(format!("{e}; known families: {}", listing())))
}

fn check_level(s: f64) -> Result<(), Failure> {
    if s > -1.0 && s < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("level {s} must lie in (−1, 1)")))
    }
}

fn run_report(config: &RunConfig) -> Result<Report, Failure> {
    let spec = resolve_family(config)?;
    if config.samples == 0 && config.command != CommandKind::Verify {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let mut report = Report::new(config.command.name(), &spec.name, config.seed);
    let mut summary = ResidualSummary::new();
    match config.command {
        CommandKind::Verify => verify(&spec, config, &mut report, &mut summary),
        CommandKind::Spectrum => {
            check_level(config.level)?;
            spectrum_command(spec, config, &mut report, &mut summary)?
        }
        CommandKind::Focal => {
            check_level(config.level)?;
            focal_command(spec, config, &mut report, &mut summary)?
        }
        CommandKind::Identity => identity_command(spec, config, &mut report, &mut summary)?,
        CommandKind::Flow => {
            check_level(config.level)?;
            flow_command(spec, config, &mut report, &mut summary)?
        }
        CommandKind::Catalog => unreachable!("catalog has no report"),
    }
    report.finish(&summary);
    Ok(report)
}

fn verify(spec: &FamilySpec, config: &RunConfig, report: &mut Report, summary: &mut ResidualSummary) {
    let exact = verify_exact(spec);
    let zero = |b: bool| if b { "zero polynomial" } else { "nonzero" };
    let laplacian_note = if exact.c_equation_skipped {
        format!("laplacian(F) {}; c-equation skipped for g = 1", zero(exact.laplacian_zero))
    } else {
        zero(exact.laplacian_zero).to_string()
    };
    report.set_section(
        "identities",
        &json!({
            "euler: <grad F, x> - g F": zero(exact.euler_zero),
            "grad_norm_sq(F) - g^2 r^(2g-2)": zero(exact.grad_norm_zero),
            "laplacian(F) - c r^(g-2)": laplacian_note,
        }),
    );
    report.set_section("exact", &exact);
    report.set_section("family", &family_meta(spec));
    let mut passed = exact.passed();

    // Beltrami equations at random sphere points
    if let Some(sign) = exact.c_sign.or(exact.c_equation_skipped.then_some(0)) {
        let field = FamilyField::new(spec.clone());
        let c = signed_c(spec, sign);
        let (g, n) = (spec.g as f64, spec.n() as f64);
        let mut sampler = Sampler::new(config.seed);
        for _ in 0..config.samples {
            let x = sampler.sphere_point(spec.ambient_dim);
            let v = field.value(x.coords());
            summary.record("beltrami_1", (field.sphere_grad_norm_sq(x.coords()) - g * g * (1.0 - v * v)).abs());
            summary.record("beltrami_2", (field.sphere_laplacian(x.coords()) - (c - g * (n + g) * v)).abs());
        }
        for name in ["beltrami_1", "beltrami_2"] {
            if let Some(s) = summary.get(name) {
                passed &= s.max < config.tolerances.identity;
            }
        }
    }
    report.passed = passed;
}

fn family_meta(spec: &FamilySpec) -> Value {
    json!({
        "name": spec.name,
        "g": spec.g,
        "ambient_dim": spec.ambient_dim,
        "n": spec.n(),
        "multiplicities": spec.multiplicities,
        "c_expected": spec.c_expected.to_string(),
        "terms": spec.f.num_terms(),
    })
}

fn sample_spectra(field: &Arc<FamilyField>, config: &RunConfig) -> Result<Vec<SpectrumReport>, Failure> {
    let mut sampler = Sampler::new(config.seed);
    let mut out = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        let p = sampler.level_point(field, config.level)?;
        out.push(spectrum(&p)?);
    }
    Ok(out)
}

/// Clusters expected on the level through `θ₁ = π/(2g)`, i.e. `s = 0`.
fn expected_zero_level(spec: &FamilySpec) -> Vec<(f64, u32)> {
    let g = spec.g as f64;
    (0..spec.g as usize).map(|i| (PI / (2.0 * g) + i as f64 * PI / g, spec.multiplicity(i))).collect()
}

fn spectrum_command(
    spec: FamilySpec,
    config: &RunConfig,
    report: &mut Report,
    summary: &mut ResidualSummary,
) -> Result<(), Failure> {
    let tol = config.tolerances;
    let field = FamilyField::new(spec.clone());
    let points = sample_spectra(&field, config)?;
    report.level = Some(config.level);
    let reference: Vec<(f64, u32)> = points[0].clusters.iter().map(|c| (c.theta, c.multiplicity)).collect();

    let mut passed = true;
    let mut spread: f64 = 0.0;
    for p in &points {
        passed &= p.within(tol.spectral, tol.identity);
        if p.clusters.len() != reference.len() {
            passed = false;
        }
        for (c, r) in p.clusters.iter().zip(&reference) {
            spread = spread.max((c.theta - r.0).abs());
            passed &= c.multiplicity == r.1;
        }
    }
    summary.record("cluster_spread", spread);
    passed &= spread < tol.spectral;

    let clusters: Vec<Value> =
        reference.iter().map(|(t, m)| json!({"theta": t, "theta_over_pi": t / PI, "multiplicity": m})).collect();
    report.set_section("clusters", &clusters);
    report.set_section("g_observed", &points[0].g_observed);

    if config.level == 0.0 {
        let expected = expected_zero_level(&spec);
        let orientation = points[0].orientation_match(&expected, tol.spectral);
        let resolved: Vec<Value> =
            expected.iter().map(|(t, m)| json!({"theta": t, "theta_over_pi": t / PI, "multiplicity": m})).collect();
        report.set_section(
            "orientation",
            &json!({
                "expected": resolved,
                "match": orientation,
                "note": "the opposite unit normal maps θ to π − θ and negates every principal curvature",
            }),
        );
        passed &= orientation.is_some();
    }

    for p in points {
        report.push_point(p, summary);
    }
    report.passed = passed;
    Ok(())
}

fn focal_command(
    spec: FamilySpec,
    config: &RunConfig,
    report: &mut Report,
    summary: &mut ResidualSummary,
) -> Result<(), Failure> {
    let field = FamilyField::new(spec);
    let mut sampler = Sampler::new(config.seed);
    report.level = Some(config.level);
    let mut passed = true;
    for _ in 0..config.samples {
        let p = sampler.level_point(&field, config.level)?;
        let base = spectrum(&p)?;
        for i in 0..base.clusters.len() {
            let r = focal_map(&p, i)?;
            passed &= r.rank_ok()
                && r.eigenvalue_residual < tolerance::FOCAL_EIGENVALUE
                && r.trace.abs() < tolerance::FOCAL_TRACE
                && r.trace_opposite.abs() < tolerance::FOCAL_TRACE;
            if !r.rank_ok() {
                summary.record("rank_mismatch", 1.0);
            }
            report.push_focal(r, summary);
        }
    }
    report.passed = passed;
    Ok(())
}

fn identity_command(
    spec: FamilySpec,
    config: &RunConfig,
    report: &mut Report,
    summary: &mut ResidualSummary,
) -> Result<(), Failure> {
    let tol = config.tolerances;
    let field = FamilyField::new(spec);
    let circles = focal_identity_checks(&field, config.samples, config.seed)?;
    summary.record("scalar_law", circles.max_scalar_residual);
    summary.record("focal_value", circles.max_focal_value_residual);
    summary.record("focal_spacing", circles.max_spacing_residual);
    let mut passed = circles.passed(tol.identity);
    report.set_section("normal_circles", &circles);

    // parallel law on the level through a fresh sample point
    check_level(config.level)?;
    report.level = Some(config.level);
    let mut sampler = Sampler::new(config.seed);
    let p = sampler.level_point(&field, config.level)?;
    let base = spectrum(&p)?;
    let mut checks = Vec::new();
    for t in admissible_parallel_distances(&base, 10) {
        let c = parallel_spectrum_check(&p, t)?;
        summary.record("parallel_law", c.residual);
        passed &= c.multiplicities_match && c.residual < tol.spectral;
        checks.push(c);
    }
    report.set_section("parallel", &checks);
    report.passed = passed;
    Ok(())
}

fn flow_command(
    spec: FamilySpec,
    config: &RunConfig,
    report: &mut Report,
    summary: &mut ResidualSummary,
) -> Result<(), Failure> {
    let field = FamilyField::new(spec);
    let mut sampler = Sampler::new(config.seed);
    report.level = Some(config.level);
    let mut passed = true;
    let mut rows = Vec::new();
    for k in 0..config.samples {
        let p = sampler.level_point(&field, config.level)?;
        for orientation in [Orientation::Gradient, Orientation::Reversed] {
            match gradient_flow_geodesy_oriented(&p, config.arc, orientation) {
                Ok(d) => {
                    summary.record("flow_deviation", d);
                    passed &= d < tolerance::FLOW_DEVIATION;
                    rows.push(json!({"sample": k, "orientation": orientation, "deviation": d}));
                }
                Err(Error::FlowEnteredFocalNeighborhood { arc_reached }) => {
                    passed = false;
                    rows.push(json!({
                        "sample": k,
                        "orientation": orientation,
                        "error": "entered focal neighborhood",
                        "arc_reached": arc_reached,
                    }));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    report.set_section("arc", &config.arc);
    report.set_section("flows", &rows);
    report.passed = passed;
    Ok(())
}
