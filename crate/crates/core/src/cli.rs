//! Command-line front end. Every subcommand reads the JSON formats of the
//! library types, writes one JSON (or flat table) document that echoes the
//! seed and tolerances, and exits with 0 (computed), 1 (input error) or
//! 2 (inconclusive verdict).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bipartite::{
    block_decompose, decompose_projection_psi, is_maximally_entangled, schmidt_decompose, BipartiteDims,
    BipartiteVector, PURITY_TOL, SCHMIDT_TOL,
};
use crate::channel::{channel_report, haar_average, ChannelJson};
use crate::error::{Error, Result};
use crate::hull::{
    block_ellipsoid_membership_test, frank_wolfe_membership, inscribed_ball_density_states, inscribed_radius_estimate,
    AffineSlice, BallConfig, FrankWolfeConfig, MembershipStatus, OrbitSpec, R0,
};
use crate::operator::{projector, ComplexMatrix, DensityState, HermitianOperator, C64};
use crate::orbit::{is_convex_body, torus_check_spectrum, torus_fixed_point_check, GroupAction, RealLinearMap};
use crate::random::task_rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "convexed-orbits", version, about = "Convex hulls of group orbits of quantum states and channels")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override `NAME=VALUE`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Iteration cap for Frank–Wolfe.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    FullUnitary,
    Local,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceArg {
    Full,
    Block00,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schmidt decomposition of a bipartite vector.
    Schmidt {
        #[arg(long)]
        vector: PathBuf,
    },
    /// Decide whether a pure state is maximally entangled.
    CertifyMaxent {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        dims: Vec<usize>,
    },
    /// Decide whether Conv(K·x₀) has non-empty interior.
    ConvexBody {
        #[arg(long)]
        state: PathBuf,
        /// `full`, `local D1 D2`, or `custom` (with --generators).
        #[arg(long, num_args = 1..=3, value_names = ["KIND", "D"])]
        action: Vec<String>,
        /// JSON `{"generators": [[[...]]], "fixed_space": [[...]]}` for custom actions.
        #[arg(long)]
        generators: Option<PathBuf>,
    },
    /// Block decomposition of a state or of the projector onto a vector.
    Blocks {
        #[arg(long, conflicts_with = "vector")]
        state: Option<PathBuf>,
        #[arg(long)]
        vector: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        dims: Vec<usize>,
    },
    /// Frank–Wolfe membership of a target in the convexed orbit of a base state.
    Membership {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_enum)]
        orbit: OrbitKind,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        dims: Vec<usize>,
    },
    /// Inscribed-ball radius of a convexed orbit around its center.
    Ball {
        #[arg(long, value_enum)]
        orbit: OrbitKind,
        /// Full-unitary orbit of a pure state (the density body).
        #[arg(long)]
        pure: bool,
        #[arg(long)]
        d: Option<usize>,
        /// Base state as a JSON matrix.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Local orbit of φ(λ) on 2×2.
        #[arg(long)]
        lambda_sq: Option<f64>,
        /// Local orbit of ½(P_{e₁}⊗P_{f₁} + P_{e₂}⊗P_{f₂}) on 2×2.
        #[arg(long)]
        rho0: bool,
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = SliceArg::Full)]
        slice: SliceArg,
        /// Probe directions; 0 reports only closed forms.
        #[arg(long, default_value_t = 0)]
        directions: usize,
        #[arg(long, default_value_t = 12)]
        bisection_steps: usize,
    },
    /// Sample the boundary of E(λ) and check containment in C(λ).
    EllipsoidCheck {
        #[arg(long)]
        lambda_sq: f64,
        /// R(λ); measured with inscribed-radius probes when omitted.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        directions: usize,
    },
    /// Trace preservation, unitality, complete positivity and mixed-unitary certificate.
    ChannelReport {
        #[arg(long)]
        channel: PathBuf,
        /// Attempt a mixed-unitary certificate (doubly stochastic channels only).
        #[arg(long)]
        certify: bool,
    },
    /// Torus fixed-point check on the permutation orbit of a spectrum.
    Kostant {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "state")]
        spectrum: Option<Vec<f64>>,
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Monte Carlo Haar average of U X U^† against tr(X)·I/d.
    HaarAverage {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Seed, tolerances, destination and format of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: Format,
    pub max_iter: Option<usize>,
}

const TOLERANCE_NAMES: &[(&str, f64)] =
    &[("schmidt", SCHMIDT_TOL), ("purity", PURITY_TOL), ("maxent", 1e-8), ("dist", 1e-6)];

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Result<Self> {
        let mut tolerances: BTreeMap<String, f64> = TOLERANCE_NAMES.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for t in &g.tol {
            let (name, value) =
                t.split_once('=').ok_or_else(|| Error::Input(format!("--tol expects NAME=VALUE, got `{t}`")))?;
            let name = name.trim().trim_end_matches("_tol");
            if !tolerances.contains_key(name) {
                let known: Vec<&str> = TOLERANCE_NAMES.iter().map(|(k, _)| *k).collect();
                return Err(Error::Input(format!("unknown tolerance `{name}` (known: {})", known.join(", "))));
            }
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("tolerance `{name}` has non-numeric value `{value}`")))?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Input(format!("tolerance `{name}` must be a non-negative number")));
            }
            tolerances.insert(name.to_string(), v);
        }
        Ok(Self { seed: g.seed, tolerances, output: g.out.clone(), format: g.format, max_iter: g.max_iter })
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    fn frank_wolfe(&self, default_iter: usize) -> FrankWolfeConfig {
        FrankWolfeConfig {
            dist_tol: self.tol("dist"),
            max_iter: self.max_iter.unwrap_or(default_iter),
            seed: self.seed,
            ..FrankWolfeConfig::default()
        }
    }
}

/// Outcome of one invocation: exit code and the text that was produced.
#[derive(Clone, Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_from<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> CliOutcome {
    let fail = |e: Error| CliOutcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") };
    let config = match RunConfig::from_args(&cli.global) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let (name, result) = match dispatch(&cli.command, &config) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let doc = json!({
        "command": name,
        "seed": config.seed,
        "tolerances": config.tolerances,
        "max_iter": config.max_iter,
        "result": result.value,
    });
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serializable report") + "\n",
        Format::Table => table(&doc),
    };
    let code = if result.inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK };
    match &config.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => CliOutcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => fail(Error::Input(format!("cannot write {}: {e}", path.display()))),
        },
        None => CliOutcome { code, stdout: text, stderr: String::new() },
    }
}

struct Report {
    value: Value,
    inconclusive: bool,
}

impl Report {
    fn of<T: Serialize>(v: &T) -> Self {
        Self { value: serde_json::to_value(v).expect("serializable result"), inconclusive: false }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{what} {}: {e}", path.display())))
}

fn dims_arg(v: &[usize], n: usize) -> Result<BipartiteDims> {
    match v {
        [d1, d2] => BipartiteDims::new(*d1, *d2),
        [] => {
            let d = (n as f64).sqrt().round() as usize;
            if d * d == n {
                BipartiteDims::new(d, d)
            } else {
                Err(Error::Input(format!("--dims D1 D2 is required for dimension {n}")))
            }
        }
        _ => Err(Error::Input("--dims takes two integers".into())),
    }
}

fn parse_action(a: &[String], generators: Option<&PathBuf>, n: usize) -> Result<GroupAction> {
    let num =
        |s: &String| s.parse::<usize>().map_err(|_| Error::Input(format!("--action expects integers, got `{s}`")));
    match a.first().map(String::as_str) {
        Some("full") | Some("full-unitary") => Ok(GroupAction::full(match a.get(1) {
            Some(d) => num(d)?,
            None => n,
        })),
        Some("local") => match a {
            [_, d1, d2] => Ok(GroupAction::local(num(d1)?, num(d2)?)),
            _ => {
                let dims = dims_arg(&[], n)?;
                Ok(GroupAction::local(dims.d1, dims.d2))
            }
        },
        Some("custom") => {
            let path = generators.ok_or_else(|| Error::Input("custom action needs --generators FILE".into()))?;
            let spec: CustomJson = read_json(path, "generators")?;
            let gens = spec
                .generators
                .iter()
                .enumerate()
                .map(|(k, rows)| {
                    let m = rows.len();
                    if rows.iter().any(|r| r.len() != m) {
                        return Err(Error::Input(format!("field `generators[{k}]` is not a square array")));
                    }
                    RealLinearMap::new(m, rows.concat())
                })
                .collect::<Result<Vec<_>>>()?;
            GroupAction::custom(gens, spec.fixed_space)
        }
        Some(other) => Err(Error::Input(format!("unknown action `{other}` (expected full, local or custom)"))),
        None => Err(Error::Input("--action is required".into())),
    }
}

#[derive(serde::Deserialize)]
struct CustomJson {
    generators: Vec<Vec<Vec<f64>>>,
    fixed_space: Option<Vec<Vec<f64>>>,
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<(&'static str, Report)> {
    Ok(match cmd {
        Command::Schmidt { vector } => {
            let v: BipartiteVector = read_json(vector, "vector")?;
            ("schmidt", Report::of(&schmidt_decompose(&v.amplitudes, v.dims, cfg.tol("schmidt"))?))
        }
        Command::CertifyMaxent { state, dims } => {
            let rho: DensityState = read_json(state, "state")?;
            let dims = dims_arg(dims, rho.dim())?;
            ("certify-maxent", Report::of(&is_maximally_entangled(&rho, dims, cfg.tol("maxent"))?))
        }
        Command::ConvexBody { state, action, generators } => {
            let x: HermitianOperator = read_json(state, "state")?;
            let action = parse_action(action, generators.as_ref(), x.dim())?;
            ("convex-body", Report::of(&is_convex_body(&action, &x)?))
        }
        Command::Blocks { state, vector, dims } => {
            let comps = match (state, vector) {
                (Some(s), None) => {
                    let x: HermitianOperator = read_json(s, "state")?;
                    let dims = dims_arg(dims, x.dim())?;
                    block_decompose(&x, dims)?
                }
                (None, Some(v)) => {
                    let v: BipartiteVector = read_json(v, "vector")?;
                    decompose_projection_psi(&v.amplitudes, v.dims)?
                }
                _ => return Err(Error::Input("blocks needs --state or --vector".into())),
            };
            let value = json!({
                "d1": comps.dims.d1,
                "d2": comps.dims.d2,
                "c_id": comps.c_id,
                "p10": comps.p10,
                "p01": comps.p01,
                "p00": comps.p00,
                "norms": comps.norms(),
            });
            ("blocks", Report { value, inconclusive: false })
        }
        Command::Membership { target, base, orbit, dims } => {
            let t: HermitianOperator = read_json(target, "target")?;
            let b: DensityState = read_json(base, "base")?;
            let action = match orbit {
                OrbitKind::FullUnitary => GroupAction::full(b.dim()),
                OrbitKind::Local => {
                    let d = dims_arg(dims, b.dim())?;
                    GroupAction::local(d.d1, d.d2)
                }
            };
            let spec = OrbitSpec::new(action, b)?;
            let v = frank_wolfe_membership(&t, &spec, &cfg.frank_wolfe(5000))?;
            let mut value = serde_json::to_value(&v).expect("serializable verdict");
            value["reconstruction_error"] = json!(v.mixture().map(|m| m.distance(&t)));
            ("membership", Report { value, inconclusive: v.status == MembershipStatus::Inconclusive })
        }
        Command::Ball { orbit, pure, d, state, lambda_sq, rho0, dims, slice, directions, bisection_steps } => {
            let base = match (state, lambda_sq, rho0, pure) {
                (Some(p), None, false, false) => read_json::<DensityState>(p, "state")?,
                (None, Some(l), false, false) => BipartiteVector::phi_lambda(*l)?.projector()?,
                (None, None, true, false) => rho0_state()?,
                (None, None, false, true) => {
                    let n = d.ok_or_else(|| Error::Input("--pure needs --d N".into()))?;
                    if n < 2 {
                        return Err(Error::Domain(format!("--d must be at least 2, got {n}")));
                    }
                    let mut e = vec![C64::new(0.0, 0.0); n];
                    e[0] = C64::new(1.0, 0.0);
                    projector(&e)?
                }
                (None, None, false, false) => {
                    return Err(Error::Input("ball needs --state, --lambda-sq, --rho0 or --pure".into()))
                }
                _ => return Err(Error::Input("--state, --lambda-sq, --rho0 and --pure are mutually exclusive".into())),
            };
            let n = base.dim();
            let pure_base = base.is_pure(cfg.tol("purity"))?;
            let action = match orbit {
                OrbitKind::FullUnitary => GroupAction::full(n),
                OrbitKind::Local => {
                    let dd = dims_arg(dims, n)?;
                    GroupAction::local(dd.d1, dd.d2)
                }
            };
            let exact = matches!(orbit, OrbitKind::FullUnitary) && pure_base && *slice == SliceArg::Full;
            let mut value = json!({ "orbit": action.name() });
            if exact {
                let ball = inscribed_ball_density_states(n)?;
                value["radius"] = json!(ball.radius_upper);
                value["exact"] = serde_json::to_value(&ball).expect("serializable ball");
            }
            if *directions > 0 || !exact {
                if *directions == 0 {
                    return Err(Error::Input("no closed form for this orbit; pass --directions N".into()));
                }
                let spec = OrbitSpec::new(action, base)?;
                let bc = BallConfig {
                    directions: *directions,
                    slice: match slice {
                        SliceArg::Full => AffineSlice::Full,
                        SliceArg::Block00 => AffineSlice::Block00,
                    },
                    bisection_steps: *bisection_steps,
                    membership: FrankWolfeConfig {
                        dist_tol: if cfg_has(cfg, "dist") { cfg.tol("dist") } else { 1e-4 },
                        max_iter: cfg.max_iter.unwrap_or(300),
                        seed: cfg.seed,
                        ..FrankWolfeConfig::default()
                    },
                    seed: cfg.seed,
                    ..BallConfig::default()
                };
                let est = inscribed_radius_estimate(&spec, &DensityState::maximally_mixed(n), &bc)?;
                if !exact {
                    value["radius"] = json!([est.radius_lower, est.radius_upper]);
                }
                value["estimate"] = serde_json::to_value(&est).expect("serializable estimate");
            }
            ("ball", Report { value, inconclusive: false })
        }
        Command::EllipsoidCheck { lambda_sq, r, r0, samples, directions } => {
            let r0 = r0.unwrap_or(R0);
            let fw = FrankWolfeConfig {
                dist_tol: if cfg_has(cfg, "dist") { cfg.tol("dist") } else { 1e-4 },
                max_iter: cfg.max_iter.unwrap_or(2000),
                seed: cfg.seed,
                ..FrankWolfeConfig::default()
            };
            let r = match r {
                Some(r) => *r,
                None => {
                    let spec = OrbitSpec::new(
                        GroupAction::local(2, 2),
                        BipartiteVector::phi_lambda(*lambda_sq)?.projector()?,
                    )?;
                    let bc = BallConfig { directions: *directions, seed: cfg.seed, ..BallConfig::default() };
                    inscribed_radius_estimate(&spec, &DensityState::maximally_mixed(4), &bc)?.radius_lower
                }
            };
            let rep = block_ellipsoid_membership_test(*lambda_sq, r, r0, *samples, &fw)?;
            let inconclusive = rep.failures.iter().any(|f| f.status == MembershipStatus::Inconclusive);
            (
                "ellipsoid-check",
                Report { value: serde_json::to_value(&rep).expect("serializable report"), inconclusive },
            )
        }
        Command::ChannelReport { channel, certify } => {
            let c: ChannelJson = read_json(channel, "channel")?;
            let choi = c.to_choi()?;
            let fw = cfg.frank_wolfe(5000);
            let rep = channel_report(&choi, certify.then_some(&fw))?;
            let inconclusive = rep.mixed_unitary.as_ref().is_some_and(|m| m.status == MembershipStatus::Inconclusive);
            ("channel-report", Report { value: serde_json::to_value(&rep).expect("serializable report"), inconclusive })
        }
        Command::Kostant { spectrum, state } => {
            let check = match (spectrum, state) {
                (Some(s), None) => torus_check_spectrum(s)?,
                (None, Some(p)) => torus_fixed_point_check(&read_json::<HermitianOperator>(p, "state")?)?,
                _ => return Err(Error::Input("kostant needs --spectrum or --state".into())),
            };
            ("kostant", Report::of(&check))
        }
        Command::HaarAverage { matrix, d, samples } => {
            let x = match matrix {
                Some(p) => read_json::<ComplexMatrix>(p, "matrix")?,
                None => {
                    if *d == 0 {
                        return Err(Error::Domain("--d must be positive".into()));
                    }
                    let mut m = ComplexMatrix::zeros(*d);
                    m[(0, 0)] = C64::new(1.0, 0.0);
                    m
                }
            };
            let avg = haar_average(&x, *samples, &mut task_rng(cfg.seed, 0));
            let value = json!({ "samples": avg.samples, "mean": avg.mean, "error": avg.error });
            ("haar-average", Report { value, inconclusive: false })
        }
    })
}

fn cfg_has(cfg: &RunConfig, name: &str) -> bool {
    let default = TOLERANCE_NAMES.iter().find(|(k, _)| *k == name).map(|(_, v)| *v);
    Some(cfg.tol(name)) != default
}

/// `½(P_{e₁}⊗P_{f₁} + P_{e₂}⊗P_{f₂})` on 2×2.
pub fn rho0_state() -> Result<DensityState> {
    DensityState::new(HermitianOperator::diag(&[0.5, 0.0, 0.0, 0.5]))
}

fn table(doc: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", doc, &mut lines);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), serde_json::to_string(a).expect("array")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
