//! Command-line front end.
//!
//! Every command produces a [`RunReport`]. Text output is rendered from the
//! same report as `--json`, so both views carry identical values.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::axes::{full_span, is_primitive, verify_fusion, Axis, FusionLaw};
use crate::error::{Error, Result};
use crate::fischer::{automorphism_from_flip, build_space, load_space, save_space, FischerSpace};
use crate::flip::{
    c6_case, compare_tables, configuration, flip_subalgebra, generate_from_axes, series, table_of,
    BasisMatching, Configuration, SeriesKind, SeriesResult, SubalgebraBasis,
};
use crate::groups::{generate_class, parse_cycles, AffineSymElement, FlipMap};
use crate::linalg::EchelonBasis;
use crate::matsuo::{Element, MatsuoAlgebra};
use crate::scalar::{format_rational, int, parse_rational, rat, Field, RatFunc, Rational};
use crate::structure::{analyse, qk_closed_form, radical_basis, simplicity, GramAnalysis, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "axial",
    version,
    about = "Matsuo algebras, double axes and flip subalgebras"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, export or import a Fischer space.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Classify the orbits of a flip and build its subalgebra.
    Flip(FlipArgs),
    /// A member of the Q_k, 2Q_k or 3Q_k series with its Gram analysis.
    Series(SeriesArgs),
    /// A two-generated configuration checked against its bundled table.
    Case(CaseArgs),
    /// Check fusion laws of axes.
    Fusion(FusionArgs),
    /// Gram determinant, critical values, radicals and simplicity.
    Gram(GramArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpaceAction {
    /// Build Γ(p^(n-1):S_n) and summarise it.
    Build {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write Γ(p^(n-1):S_n) in the fischer-space format.
    Export {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read and validate a fischer-space file.
    Import { file: PathBuf },
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// 1 for S_n, 2 or 3 for the affine extensions.
    #[arg(long, default_value_t = 1)]
    pub p: u8,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct FlipArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Disjoint cycles of the conjugating permutation, e.g. `(1,2)(3,4)`.
    #[arg(long)]
    pub cycles: String,
    /// Apply the translation twist before conjugating.
    #[arg(long)]
    pub twist_z: bool,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// `qk`, `2qk` or `3qk`.
    pub kind: SeriesKind,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[command(flatten)]
    pub eta: EtaArgs,
    /// Write the multiplication table here instead of into the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EtaArgs {
    /// `p/q`, or `eta` for the symbolic algebra.
    #[arg(long, default_value = "eta", allow_hyphen_values = true)]
    pub eta: String,
    /// Same as `--eta eta`.
    #[arg(long, conflicts_with = "eta")]
    pub symbolic: bool,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    pub id: String,
    /// Write the computed table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// A 36-point fischer-space file, required for C6.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// Labels of `a, b, c, d` in the imported space (repeat four times).
    #[arg(long = "point")]
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// A bundled configuration.
    #[arg(long, conflicts_with_all = ["series", "p", "n", "space"])]
    pub case: Option<String>,
    /// A series member, with `--k` and `--m`.
    #[arg(long, conflicts_with_all = ["p", "n", "space"], requires = "k")]
    pub series: Option<SeriesKind>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, requires = "n")]
    pub p: Option<u8>,
    /// The whole Matsuo algebra of Γ(p^(n-1):S_n).
    #[arg(long, conflicts_with = "space")]
    pub n: Option<usize>,
    /// The whole Matsuo algebra of a fischer-space file.
    #[arg(long)]
    pub space: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FusionArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// A point label or `label+label` (repeatable). Defaults to the
    /// generators of a case, otherwise every single and double axis.
    #[arg(long = "axis")]
    pub axes: Vec<String>,
    /// `auto` (Jordan for singles, Monster (2η,η) for doubles), `jordan`
    /// or `monster`.
    #[arg(long, default_value = "auto")]
    pub law: String,
    #[command(flatten)]
    pub eta: EtaArgs,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub eta: EtaArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Skipped,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Skipped => 0,
            Status::Mismatch | Status::Error => 1,
        }
    }
}

/// The machine-readable result of one command.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub report: &'static str,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub status: Status,
    pub timing_ms: u64,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            report: "v1",
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            status: Status::Ok,
            timing_ms: 0,
        }
    }

    fn input(&mut self, key: &str, v: impl Serialize) {
        self.inputs.insert(key.into(), json!(v));
    }

    fn output(&mut self, key: &str, v: impl Serialize) {
        self.outputs.insert(key.into(), json!(v));
    }

    fn fail_unless(&mut self, ok: bool) {
        if !ok && self.status == Status::Ok {
            self.status = Status::Mismatch;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.inputs {
            out += &format!("input {k}: {}\n", inline(v));
        }
        for (k, v) in &self.outputs {
            match v {
                Value::String(s) if s.contains('\n') => {
                    out += &format!("{k}:\n");
                    for l in s.lines() {
                        out += &format!("  {l}\n");
                    }
                }
                Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
                    out += &format!("{k}:\n");
                    for x in xs {
                        out += &format!("  - {}\n", inline(x));
                    }
                }
                _ => out += &format!("{k}: {}\n", inline(v)),
            }
        }
        out += &format!("timing_ms: {}\n", self.timing_ms);
        out += &format!("status: {}\n", inline(&json!(self.status)));
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let (mut report, usage) = match dispatch(&cli.command) {
        Ok(r) => (r, false),
        Err(e) => {
            let mut r = RunReport::new(name);
            r.status = Status::Error;
            r.output("error", e.code());
            r.output("message", e.to_string());
            (r, e.is_usage())
        }
    };
    report.timing_ms = started.elapsed().as_millis() as u64;
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
    } else {
        report.to_text()
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 1;
    }
    if usage {
        2
    } else {
        report.status.exit_code()
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Space { action } => match action {
            SpaceAction::Build { .. } => "space build",
            SpaceAction::Export { .. } => "space export",
            SpaceAction::Import { .. } => "space import",
        },
        Command::Flip(_) => "flip",
        Command::Series(_) => "series",
        Command::Case(_) => "case",
        Command::Fusion(_) => "fusion",
        Command::Gram(_) => "gram",
    }
}

fn dispatch(c: &Command) -> Result<RunReport> {
    match c {
        Command::Space { action } => cmd_space(action),
        Command::Flip(a) => cmd_flip(a),
        Command::Series(a) => cmd_series(a),
        Command::Case(a) => cmd_case(a),
        Command::Fusion(a) => cmd_fusion(a),
        Command::Gram(a) => cmd_gram(a),
    }
}

/// `None` for symbolic η.
pub fn parse_eta(s: &str) -> Result<Option<Rational>> {
    if s.trim() == "eta" {
        return Ok(None);
    }
    let r = parse_rational(s)?;
    if r == int(0) || r == int(1) || r == rat(1, 2) {
        return Err(Error::ExcludedEta(format_rational(&r)));
    }
    Ok(Some(r))
}

impl EtaArgs {
    fn value(&self) -> Result<Option<Rational>> {
        if self.symbolic {
            Ok(None)
        } else {
            parse_eta(&self.eta)
        }
    }

    fn describe(&self) -> String {
        if self.symbolic {
            "eta".into()
        } else {
            self.eta.trim().to_string()
        }
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn group_space(g: &GroupArgs) -> Result<(crate::groups::TranspositionClass, FischerSpace)> {
    let cls = generate_class(g.p, g.n)?;
    let space = build_space(&cls)?;
    Ok((cls, space))
}

fn space_summary(r: &mut RunReport, space: &FischerSpace) {
    let lines = space.lines();
    let valency = (0..space.len())
        .map(|a| space.lines_through(a).len())
        .collect::<Vec<_>>();
    r.output("points", space.len());
    r.output("lines", lines.len());
    r.output(
        "min_lines_per_point",
        valency.iter().min().copied().unwrap_or(0),
    );
    r.output(
        "max_lines_per_point",
        valency.iter().max().copied().unwrap_or(0),
    );
}

fn cmd_space(action: &SpaceAction) -> Result<RunReport> {
    match action {
        SpaceAction::Build { group, out } | SpaceAction::Export { group, out } => {
            let export = matches!(action, SpaceAction::Export { .. });
            let mut r = RunReport::new(if export {
                "space export"
            } else {
                "space build"
            });
            r.input("p", group.p);
            r.input("n", group.n);
            let (_, space) = group_space(group)?;
            space_summary(&mut r, &space);
            let text = save_space(&space);
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    r.output("file", path.display().to_string());
                }
                None if export => r.output("space", text),
                None => {}
            }
            Ok(r)
        }
        SpaceAction::Import { file } => {
            let mut r = RunReport::new("space import");
            r.input("file", file.display().to_string());
            let space = load_space(&read_file(file)?)?;
            space_summary(&mut r, &space);
            Ok(r)
        }
    }
}

fn labels(space: &FischerSpace, axes: &[Axis]) -> Vec<String> {
    axes.iter().map(|a| a.describe(space)).collect()
}

fn cmd_flip(a: &FlipArgs) -> Result<RunReport> {
    let mut r = RunReport::new("flip");
    r.input("p", a.group.p);
    r.input("n", a.group.n);
    r.input("cycles", &a.cycles);
    r.input("twist_z", a.twist_z);
    let (cls, space) = group_space(&a.group)?;
    let cycles = parse_cycles(&a.cycles)?;
    let g = AffineSymElement::from_cycles(a.group.p, a.group.n, &cycles)?;
    let fm = if a.twist_z {
        FlipMap::twisted(g)
    } else {
        FlipMap::conj(g)
    };
    let aut = automorphism_from_flip(&space, &cls, &fm)?;
    let alg = MatsuoAlgebra::symbolic(space);
    let f = flip_subalgebra(&alg, &aut)?;
    let c = &f.classification;
    let space = alg.space();
    r.output("singles", labels(space, &c.singles));
    r.output("doubles", labels(space, &c.doubles));
    r.output(
        "extras",
        c.extras
            .iter()
            .map(|&(p, q)| format!("{}+{}", space.label(p), space.label(q)))
            .collect::<Vec<_>>(),
    );
    r.output("fixed_dim", c.orbit_count());
    r.output("dim", f.basis.dim());
    r.output("equals_fixed", f.equals_fixed);
    let primitive = doubles_primitive(&alg, &c.doubles, f.basis.echelon())?;
    r.output("doubles_primitive", primitive);
    r.fail_unless(primitive);
    Ok(r)
}

fn doubles_primitive<F: Field>(
    alg: &MatsuoAlgebra<F>,
    doubles: &[Axis],
    span: &EchelonBasis<F>,
) -> Result<bool> {
    for d in doubles {
        if !is_primitive(alg, d, span)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gram_outputs(r: &mut RunReport, g: &GramAnalysis) {
    r.output("determinant", g.det.to_string());
    r.output(
        "roots",
        g.roots
            .iter()
            .map(|(x, m)| json!({"eta": format_rational(x), "multiplicity": m}))
            .collect::<Vec<_>>(),
    );
    r.output(
        "critical_eta",
        g.critical().iter().map(format_rational).collect::<Vec<_>>(),
    );
    r.output("radicals", &g.scan);
}

/// Radical dimension and simplicity verdict at one rational η.
fn numeric_outputs(
    r: &mut RunReport,
    alg: &MatsuoAlgebra<RatFunc>,
    basis: &[Element<RatFunc>],
    axes: &[Axis],
    eta: &Rational,
) -> Result<()> {
    let rad = radical_basis(alg, basis, eta)?;
    r.output("radical_dim", rad.dim());
    r.output("radical_is_ideal", rad.is_ideal);
    let v = simplicity(alg, basis, axes, eta)?;
    r.output("projection_graph_connected", v.connected);
    r.output(
        "verdict",
        match &v.verdict {
            Verdict::Simple => "simple".to_string(),
            Verdict::NotSimple { radical_dim } => format!("not simple (radical dim {radical_dim})"),
            Verdict::Inconclusive(why) => format!("inconclusive: {why}"),
        },
    );
    Ok(())
}

fn cmd_series(a: &SeriesArgs) -> Result<RunReport> {
    let mut r = RunReport::new("series");
    r.input("kind", a.kind.to_string());
    r.input("k", a.k);
    r.input("m", a.m);
    r.input("eta", a.eta.describe());
    let eta = a.eta.value()?;
    let s = series(a.kind, a.k, a.m)?;
    series_outputs(&mut r, &s)?;
    let basis = s.subalgebra.basis.rows().to_vec();
    let axes = s.subalgebra.classification.axes();
    match eta {
        None => {
            let g = analyse(&s.algebra, &basis)?;
            gram_outputs(&mut r, &g);
            if a.kind == SeriesKind::Qk && a.m == 0 {
                let ok = g.det == qk_closed_form(a.k);
                r.output("closed_form_matches", ok);
                r.fail_unless(ok);
            } else {
                r.output("critical_eta_status", "computed conjecture");
            }
        }
        Some(e) => numeric_outputs(&mut r, &s.algebra, &basis, &axes, &e)?,
    }
    let text = s.table.to_text();
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            r.output("table_file", path.display().to_string());
        }
        None => r.output("table", text),
    }
    Ok(r)
}

fn series_outputs(r: &mut RunReport, s: &SeriesResult) -> Result<()> {
    let c = &s.subalgebra.classification;
    let expected = s.kind.expected_dim(s.k, s.m);
    r.output("n", 2 * s.k + s.m);
    r.output("singles", c.singles.len());
    r.output("doubles", c.doubles.len());
    r.output("extras", c.extras.len());
    r.output("dim", s.subalgebra.basis.dim());
    r.output("expected_dim", expected);
    r.output("equals_fixed", s.subalgebra.equals_fixed);
    let primitive = doubles_primitive(&s.algebra, &c.doubles, s.subalgebra.basis.echelon())?;
    r.output("doubles_primitive", primitive);
    r.fail_unless(s.subalgebra.basis.dim() == expected && primitive);
    if let Some(split) = &s.split {
        r.output("split", split);
        r.fail_unless(split.holds);
    }
    Ok(())
}

fn load_case(a: &CaseArgs) -> Result<Option<Configuration>> {
    if !a.id.eq_ignore_ascii_case("C6") {
        return configuration(&a.id).map(Some);
    }
    let Some(path) = &a.space else {
        return Ok(None);
    };
    let labels: [&str; 4] = a
        .points
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| Error::InvalidArgument("C6 needs exactly four --point labels".into()))?;
    let space = load_space(&read_file(path)?)?;
    if space.len() != 36 {
        return Err(Error::DimensionMismatch {
            expected: 36,
            found: space.len(),
        });
    }
    c6_case(space, labels).map(Some)
}

fn cmd_case(a: &CaseArgs) -> Result<RunReport> {
    let mut r = RunReport::new("case");
    r.input("id", &a.id);
    if let Some(p) = &a.space {
        r.input("space", p.display().to_string());
    }
    let Some(case) = load_case(a)? else {
        r.status = Status::Skipped;
        r.output(
            "message",
            "C6 requires imported space: pass --space FILE with a 36-point space and four --point labels",
        );
        return Ok(r);
    };
    let alg = &case.algebra;
    let sub = generate_from_axes(alg, &case.generators, alg.dim())?;
    r.output("generators", labels(alg.space(), &case.generators));
    r.output("dim", sub.dim());
    r.output("expected_dim", case.expected_dim);
    r.output("closed", sub.is_closed(alg)?);
    if let Some(d) = case.expected_dim {
        r.fail_unless(sub.dim() == d);
    } else {
        let support = support_single(alg, &case.generators, &sub);
        r.output("support_single_in_subalgebra", support);
    }
    let computed = table_of(alg, &sub)?;
    if let Some(path) = &a.out {
        write_file(path, &computed.to_text())?;
        r.output("table_file", path.display().to_string());
    }
    if let Some(fixture) = case.fixture_table() {
        let fixture = fixture?;
        let diff = compare_tables(&computed, &fixture, BasisMatching::UpToPermutation)?;
        r.output("table_matches_fixture", diff.equal);
        if diff.equal {
            r.output("message", format!("table matches {} fixture", case.id));
        } else {
            r.output(
                "message",
                format!(
                    "table differs from {} fixture in {} entries",
                    case.id,
                    diff.mismatches.len()
                ),
            );
            r.output(
                "mismatches",
                diff.mismatches
                    .iter()
                    .map(|m| {
                        json!({
                            "entry": format!("{}*{}", fixture.labels[m.i], fixture.labels[m.j]),
                            "computed": m.computed,
                            "expected": m.expected,
                        })
                    })
                    .collect::<Vec<_>>(),
            );
        }
        r.fail_unless(diff.equal);
    }
    Ok(r)
}

/// Whether some point of a double generator lies in the subalgebra.
fn support_single<F: Field>(
    alg: &MatsuoAlgebra<F>,
    generators: &[Axis],
    sub: &SubalgebraBasis<F>,
) -> bool {
    generators
        .iter()
        .filter(|g| g.is_double())
        .flat_map(|g| g.points())
        .any(|p| sub.contains(&alg.point(p)))
}

/// The algebra, an optional subalgebra basis, and default axes.
struct Target {
    algebra: MatsuoAlgebra<RatFunc>,
    basis: Option<SubalgebraBasis<RatFunc>>,
    axes: Vec<Axis>,
}

fn all_axes(space: &FischerSpace) -> Vec<Axis> {
    let n = space.len();
    let mut out: Vec<Axis> = (0..n).map(Axis::Single).collect();
    for a in 0..n {
        for b in a + 1..n {
            if !space.collinear(a, b) {
                out.push(Axis::Double(a, b));
            }
        }
    }
    out
}

fn target(a: &AlgebraArgs, r: &mut RunReport) -> Result<Target> {
    if let Some(id) = &a.case {
        r.input("case", id);
        let case = configuration(id)?;
        let sub = generate_from_axes(&case.algebra, &case.generators, case.algebra.dim())?;
        return Ok(Target {
            axes: case.generators.clone(),
            basis: Some(sub),
            algebra: case.algebra,
        });
    }
    if let Some(kind) = a.series {
        let k =
            a.k.ok_or_else(|| Error::InvalidArgument("--series needs --k".into()))?;
        r.input("series", kind.to_string());
        r.input("k", k);
        r.input("m", a.m);
        let s = series(kind, k, a.m)?;
        return Ok(Target {
            axes: s.subalgebra.classification.axes(),
            basis: Some(s.subalgebra.basis),
            algebra: s.algebra,
        });
    }
    let space = if let Some(path) = &a.space {
        r.input("space", path.display().to_string());
        load_space(&read_file(path)?)?
    } else if let Some(n) = a.n {
        let g = GroupArgs {
            p: a.p.unwrap_or(1),
            n,
        };
        r.input("p", g.p);
        r.input("n", n);
        group_space(&g)?.1
    } else {
        return Err(Error::InvalidArgument(
            "give one of --case, --series, --n or --space".into(),
        ));
    };
    let axes = all_axes(&space);
    Ok(Target {
        algebra: MatsuoAlgebra::symbolic(space),
        basis: None,
        axes,
    })
}

/// Splits `a+b` at `+` signs outside parentheses.
pub fn parse_axis(space: &FischerSpace, s: &str) -> Result<Axis> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    let idx = parts
        .iter()
        .map(|l| {
            space
                .index_of(l.trim())
                .ok_or_else(|| Error::InvalidArgument(format!("no point labelled {:?}", l.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    let axis = match idx[..] {
        [a] => Axis::Single(a),
        [a, b] => Axis::double(a, b),
        _ => return Err(Error::InvalidArgument(format!("not an axis: {s:?}"))),
    };
    axis.validate(space)?;
    Ok(axis)
}

#[derive(Clone, Copy)]
enum LawChoice {
    Auto,
    Jordan,
    Monster,
}

fn law_for<F: Field>(choice: LawChoice, axis: &Axis, eta: &F) -> Result<(String, FusionLaw<F>)> {
    let two_eta = eta.clone() + eta;
    match (choice, axis.is_double()) {
        (LawChoice::Jordan, _) | (LawChoice::Auto, false) => {
            Ok(("jordan".into(), FusionLaw::jordan(eta.clone())?))
        }
        (LawChoice::Monster, _) | (LawChoice::Auto, true) => Ok((
            "monster(2eta,eta)".into(),
            FusionLaw::monster(two_eta, eta.clone())?,
        )),
    }
}

fn fusion_reports<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axes: &[Axis],
    span: &EchelonBasis<F>,
    choice: LawChoice,
) -> Result<(Vec<Value>, bool)> {
    let mut all = true;
    let mut out = Vec::new();
    for axis in axes {
        let (name, law) = law_for(choice, axis, alg.eta())?;
        let rep = verify_fusion(alg, axis, &law, span)?;
        all &= rep.holds();
        out.push(json!({
            "axis": rep.axis,
            "law": name,
            "dims": rep.dims,
            "semisimple": rep.semisimple,
            "violations": rep.violations.len(),
            "holds": rep.holds(),
        }));
    }
    Ok((out, all))
}

fn cmd_fusion(a: &FusionArgs) -> Result<RunReport> {
    let mut r = RunReport::new("fusion");
    r.input("law", &a.law);
    r.input("eta", a.eta.describe());
    let choice = match a.law.as_str() {
        "auto" => LawChoice::Auto,
        "jordan" => LawChoice::Jordan,
        "monster" => LawChoice::Monster,
        other => return Err(Error::InvalidArgument(format!("unknown law {other:?}"))),
    };
    let eta = a.eta.value()?;
    let t = target(&a.algebra, &mut r)?;
    let axes = if a.axes.is_empty() {
        t.axes.clone()
    } else {
        a.axes
            .iter()
            .map(|s| parse_axis(t.algebra.space(), s))
            .collect::<Result<Vec<_>>>()?
    };
    r.input("axes", labels(t.algebra.space(), &axes));
    let (reports, all) = match eta {
        None => {
            let span = match &t.basis {
                Some(b) => b.echelon().clone(),
                None => full_span(&t.algebra),
            };
            fusion_reports(&t.algebra, &axes, &span, choice)?
        }
        Some(e) => {
            let num = t.algebra.specialize(e)?;
            let span = match &t.basis {
                Some(b) => generate_from_axes(&num, b.generators(), num.dim())?
                    .echelon()
                    .clone(),
                None => full_span(&num),
            };
            fusion_reports(&num, &axes, &span, choice)?
        }
    };
    r.output("axes_checked", reports.len());
    r.output("all_hold", all);
    r.output("reports", reports);
    r.fail_unless(all);
    Ok(r)
}

fn cmd_gram(a: &GramArgs) -> Result<RunReport> {
    let mut r = RunReport::new("gram");
    r.input("eta", a.eta.describe());
    let eta = a.eta.value()?;
    let t = target(&a.algebra, &mut r)?;
    let basis: Vec<Element<RatFunc>> = match &t.basis {
        Some(b) => b.rows().to_vec(),
        None => (0..t.algebra.dim()).map(|i| t.algebra.point(i)).collect(),
    };
    let singles: Vec<Axis> = t.axes.iter().filter(|x| !x.is_double()).copied().collect();
    let axes = if t.basis.is_some() {
        t.axes.clone()
    } else {
        singles
    };
    r.output("dim", basis.len());
    match eta {
        None => {
            let g = analyse(&t.algebra, &basis)?;
            gram_outputs(&mut r, &g);
        }
        Some(e) => numeric_outputs(&mut r, &t.algebra, &basis, &axes, &e)?,
    }
    Ok(r)
}
