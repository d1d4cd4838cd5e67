use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twotorsion::experiments::{
    rank_bound_scan, run_census, write_csv, ExperimentConfig, Method, Preset, SampleTarget,
};
use twotorsion::field::{make_field, BinaryField};
use twotorsion::hassewitt::hw_matrix;
use twotorsion::hyperelliptic::HyperModel;
use twotorsion::lattice::{Classification, LatticePolygon};
use twotorsion::laurent::LaurentPoly;
use twotorsion::zeta::{self, LPolynomial};
use twotorsion::Error;

#[derive(Parser)]
#[command(name = "twotorsion", version, about = "Rational 2-torsion on Jacobians of curves over GF(2^r)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice polygon queries.
    Polygon {
        #[command(subcommand)]
        action: PolygonAction,
    },
    /// Newton polygon, non-degeneracy and S_Delta membership of a curve.
    Curve(CurveArgs),
    /// Hasse-Witt matrix of a non-degenerate curve.
    Hw(HwArgs),
    /// Smoothness, 2-torsion and Hasse-Witt rank of y^2 + H1 y + H0.
    Hyp(HypArgs),
    /// Point counts and L-polynomial.
    Zeta(ZetaArgs),
    /// Seeded census of random curves on a polygon, written as CSV.
    Experiment(ExperimentArgs),
}

#[derive(Subcommand)]
enum PolygonAction {
    /// Genus, edge congruence solutions and classification.
    Classify(PolygonInput),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolygonInput {
    /// Vertices as "i,j;i,j;...".
    #[arg(long)]
    vertices: Option<String>,
    /// Named polygon: S<i>, H<g>, E or T<d>.
    #[arg(long)]
    preset: Option<String>,
    /// JSON file holding an array of [i, j] pairs, or a previous classify output.
    #[arg(long)]
    from_json: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    /// Curve JSON file, or "-" for stdin.
    #[arg(long)]
    curve_json: PathBuf,
    /// Polygon for the S_Delta test; defaults to the Newton polygon.
    #[arg(long)]
    vertices: Option<String>,
}

#[derive(Args)]
struct HwArgs {
    #[arg(long)]
    curve_json: PathBuf,
    /// Include the matrix entries.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct HypModelArgs {
    #[arg(long)]
    g: Option<usize>,
    /// Comma-separated hex coefficients of H1, constant term first.
    #[arg(long)]
    h1: Option<String>,
    /// Comma-separated hex coefficients of H0, constant term first.
    #[arg(long)]
    h0: Option<String>,
    /// Field degree: coefficients lie in GF(2^r).
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Field modulus in hex; defaults to the least irreducible polynomial.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct HypArgs {
    #[command(flatten)]
    model: HypModelArgs,
}

#[derive(Args)]
struct ZetaArgs {
    /// Curve JSON file; alternatively give a hyperelliptic model.
    #[arg(long, conflicts_with_all = ["g", "h1", "h0"])]
    curve_json: Option<PathBuf>,
    #[command(flatten)]
    model: HypModelArgs,
    /// log2 of the largest field enumerated while counting points.
    #[arg(long, default_value_t = zeta::DEFAULT_CAP_BITS)]
    cap_bits: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Attempted,
    Nondegenerate,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Named polygon: S<i>, H<g>, E or T<d>.
    #[arg(long, required_unless_present = "vertices", conflicts_with = "vertices")]
    preset: Option<String>,
    #[arg(long)]
    vertices: Option<String>,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// auto, hyperelliptic, manin or zeta.
    #[arg(long, default_value = "auto")]
    method: String,
    /// What --samples counts.
    #[arg(long, value_enum, default_value = "attempted")]
    target: TargetArg,
    /// Decide with every applicable method and count disagreements.
    #[arg(long)]
    cross_check: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the Hasse-Witt rank scan instead of the census and emit JSON.
    #[arg(long)]
    rank_scan: bool,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain(e),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            println!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Polygon { action: PolygonAction::Classify(input) } => emit(&classify(&read_polygon(&input)?)?),
        Command::Curve(a) => curve(a),
        Command::Hw(a) => hw(a),
        Command::Hyp(a) => emit(&read_model(&a.model)?.report()?),
        Command::Zeta(a) => zeta_cmd(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn emit(v: &Value) -> CliResult<()> {
    let s = serde_json::to_string_pretty(v).expect("serializable");
    to_stdout(format!("{s}\n").as_bytes())
}

/// A reader that closed the pipe early is not an error.
fn to_stdout(bytes: &[u8]) -> CliResult<()> {
    match io::stdout().write_all(bytes) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Usage(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_polygon(input: &PolygonInput) -> CliResult<LatticePolygon> {
    if let Some(v) = &input.vertices {
        return Ok(LatticePolygon::parse_vertices(v)?);
    }
    if let Some(p) = &input.preset {
        return Ok(p.parse::<Preset>()?.polygon()?);
    }
    let path = input.from_json.as_ref().expect("clap group");
    let doc = read_json(path)?;
    let vertices = doc.get("vertices").cloned().unwrap_or(doc);
    let pts: Vec<(i64, i64)> =
        serde_json::from_value(vertices).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(LatticePolygon::new(&pts)?)
}

/// A curve document, or any CLI output embedding one under "curve".
fn read_curve(path: &Path) -> CliResult<LaurentPoly> {
    let doc = read_json(path)?;
    let curve = doc.get("curve").cloned().unwrap_or(doc);
    Ok(LaurentPoly::from_json(&curve)?)
}

fn read_field(r: u32, modulus: Option<&str>) -> CliResult<BinaryField> {
    match modulus {
        None => Ok(make_field(r)?),
        Some(h) => {
            let m = u64::from_str_radix(h.trim_start_matches("0x"), 16)
                .map_err(|e| Failure::Usage(format!("modulus {h:?}: {e}")))?;
            Ok(BinaryField::with_modulus(r, m)?)
        }
    }
}

fn read_model(a: &HypModelArgs) -> CliResult<HyperModel> {
    let (Some(g), Some(h1), Some(h0)) = (a.g, &a.h1, &a.h0) else {
        return Err(Failure::Usage("--g, --h1 and --h0 are required".into()));
    };
    let field = read_field(a.r, a.modulus.as_deref())?;
    Ok(HyperModel::from_hex(field, g, h1, h0)?)
}

fn classify(p: &LatticePolygon) -> CliResult<Value> {
    let class = p.classify();
    let sol = p.congruence_solutions();
    let half_canonical = if class == Classification::Admissible {
        sol.in_polygon.iter().map(|&s| p.half_canonical(s)).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    Ok(json!({
        "vertices": p.vertices(),
        "class": class.to_string(),
        "genus": p.genus(),
        "rho": sol.rho,
        "interior_collinear": p.interior_collinear(),
        "classes_mod2": sol.classes_mod2,
        "solutions": sol.in_polygon,
        "half_canonical": half_canonical,
    }))
}

fn curve(a: CurveArgs) -> CliResult<()> {
    let f = read_curve(&a.curve_json)?;
    let np = f.newton_polygon()?;
    let delta = match &a.vertices {
        Some(v) => LatticePolygon::parse_vertices(v)?,
        None => np.clone(),
    };
    let degeneracy = f.degeneracy()?;
    // Membership is only defined for admissible polygons.
    let in_s_delta = match f.in_s_delta(&delta) {
        Ok(b) => Some(b),
        Err(Error::Inadmissible(_)) => None,
        Err(e) => return Err(e.into()),
    };
    emit(&json!({
        "curve": f.to_json(),
        "newton_polygon": np.vertices(),
        "genus": np.genus(),
        "nondegenerate": degeneracy.is_none(),
        "degeneracy": degeneracy.map(|d| d.to_string()),
        "in_s_delta": in_s_delta,
    }))
}

fn hw(a: HwArgs) -> CliResult<()> {
    let f = read_curve(&a.curve_json)?;
    let m = hw_matrix(&f)?;
    let mut out = json!({
        "curve": f.to_json(),
        "genus": m.dim(),
        "rank": m.rank(),
        "ordinary": m.is_ordinary(),
        "two_rank": m.two_rank(),
        "has_2torsion": m.manin_product().has_eigenvalue_one(),
    });
    if a.dump {
        out["matrix"] = m.to_json();
    }
    emit(&out)
}

fn zeta_cmd(a: ZetaArgs) -> CliResult<()> {
    let (l, head): (LPolynomial, Value) = match &a.curve_json {
        Some(path) => {
            let f = read_curve(path)?;
            (zeta::zeta_of_with_cap(&f, a.cap_bits)?, json!({ "curve": f.to_json() }))
        }
        None => {
            let m = read_model(&a.model)?;
            (m.zeta_with_cap(a.cap_bits)?, json!({ "genus": m.genus() }))
        }
    };
    let two = l.jacobian_two_data();
    let counts: Vec<String> = l.point_counts(l.g).iter().map(i128::to_string).collect();
    let coeffs: Vec<String> = l.coeffs.iter().map(i128::to_string).collect();
    let mut out = head;
    out["q"] = json!(l.q);
    out["genus"] = json!(l.g);
    out["point_counts"] = json!(counts);
    out["l_coefficients"] = json!(coeffs);
    out["order"] = json!(two.order.to_string());
    out["two_rank"] = json!(two.two_rank);
    out["flags"] = json!({
        "has_2torsion": two.has_2torsion,
        "supersingular": l.is_supersingular(),
        "dim_2torsion_bound": two.dim_2torsion_bound,
    });
    emit(&out)
}

fn experiment(a: ExperimentArgs) -> CliResult<()> {
    let mut cfg = match (&a.preset, &a.vertices) {
        (Some(p), _) => ExperimentConfig::preset(p.parse()?, a.r, a.samples, a.seed)?,
        (None, Some(v)) => ExperimentConfig::custom(v, LatticePolygon::parse_vertices(v)?, a.r, a.samples, a.seed),
        (None, None) => unreachable!("clap requires one"),
    };
    cfg.method = a.method.parse::<Method>()?;
    cfg.target = match a.target {
        TargetArg::Attempted => SampleTarget::Attempted,
        TargetArg::Nondegenerate => SampleTarget::Nondegenerate,
    };
    cfg.cross_check = a.cross_check;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = a.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;

    let mut buf = Vec::new();
    if a.rank_scan {
        let rep = pool.install(|| rank_bound_scan(&cfg))?;
        let s = serde_json::to_string_pretty(&rep).expect("serializable");
        writeln!(buf, "{s}").expect("in memory");
    } else {
        let rep = pool.install(|| run_census(&cfg))?;
        write_csv(&mut buf, &[rep])?;
    }
    match &a.out {
        Some(path) => fs::write(path, buf).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => to_stdout(&buf),
    }
}
