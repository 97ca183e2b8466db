//! Command-line front end.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::examples::{p2_from_display, reproduce};
use crate::parabolic::{parse_sigma, ParabolicDatum};
use crate::params::paramfile::{resolve_vertex, write_map, ParamFile};
use crate::params::{check_constraint, EpsilonSet, ParamContext};
use crate::quiverbuild::export::{from_json, relation_text, to_dot, to_json};
use crate::quiverbuild::{build_quiver_with, build_relations, check_directed_for, filtration_order, ArrowMode, Quiver, VertexWindow};
use crate::quiverrep::repfile::RepFile;
use crate::quiverrep::{check_relations, is_semistable_bounded, per_vertex, DEFAULT_BOUND};
use crate::rootsys::build_root_system;
use crate::vortexsolve::{kempf_ness_flow, FlowOptions, HermitianRep};
use crate::weight::{format_rational, parse_rational, rational_to_f64, Rational, Weight};

#[derive(Debug, Parser)]
#[command(name = "pquiver", version, about = "Quivers with relations for parabolic subgroups, dimensional-reduction parameters and stability checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the quiver with relations on a window of weights.
    BuildQuiver {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Compute arrow multiplicities with the character engine even where a closed form exists.
        #[arg(long)]
        generic: bool,
        /// Skip relation construction.
        #[arg(long)]
        no_relations: bool,
    },
    /// Print the relations of a quiver.
    ShowRelations {
        #[command(flatten)]
        source: QuiverSource,
    },
    /// Order the support of an isotypic decomposition, λ_0 < λ_1 < … < λ_m.
    FiltrationOrder {
        #[command(flatten)]
        group: GroupArgs,
        /// Weights with optional multiplicities, e.g. "(0,0):1;(1,-2):2".
        #[arg(long)]
        weights: String,
    },
    /// Slope μ_ε(O_λ) of a homogeneous line bundle.
    Slope {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        eps: EpsArgs,
        /// Coordinates of --weight: fundamental weights, or the (x1, x2) display plane of P2.
        #[arg(long, value_enum, default_value_t = Basis::Fw)]
        basis: Basis,
    },
    /// Convert between τ, τ′ and σ parameters.
    ConvertParams {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        eps: EpsArgs,
        #[arg(long, value_enum)]
        from: ParamKind,
        #[arg(long, value_enum)]
        to: ParamKind,
        /// Parameter file holding the input values.
        #[arg(long)]
        params: PathBuf,
        /// Ascending vertex order for σ conversions, e.g. "(0);(2)".
        #[arg(long)]
        order: Option<String>,
    },
    /// Check Σ τ_i rk(F_i/F_{i−1}) = deg F.
    CheckConstraint {
        /// Comma-separated τ_i.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Comma-separated quotient ranks.
        #[arg(long)]
        ranks: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: String,
    },
    /// Exact τ′-stability of a representation (point base, F_p enumeration).
    CheckStability {
        #[command(flatten)]
        source: QuiverSource,
        #[arg(long)]
        rep: PathBuf,
        /// Parameter file with tauprime.<vertex> entries.
        #[arg(long)]
        tau_prime: PathBuf,
        /// Upper bound on the total dimension.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Numerical moment-map flow for the point-base vortex equations.
    SolveVortex {
        #[command(flatten)]
        source: QuiverSource,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        tau_prime: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 50_000)]
        max_iters: usize,
        /// Write the residual trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Print a worked example.
    ReproduceExample {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Group type, e.g. A2, B2, A1xA1.
    #[arg(long)]
    pub group: String,
    /// Simple roots not in the Levi, one-based, e.g. "a2" or "a1,a2".
    #[arg(long)]
    pub sigma: String,
}

impl GroupArgs {
    pub fn parabolic(&self) -> Result<ParabolicDatum> {
        let rs = build_root_system(self.group.parse()?)?;
        let sigma = parse_sigma(&self.sigma, rs.rank())?;
        ParabolicDatum::new(std::sync::Arc::new(rs), &sigma)
    }
}

/// The window is the box `[lo, hi]^rank` of fundamental-weight coordinates
/// intersected with the dominant weights, unless explicit vertices are given.
#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    #[arg(long, default_value_t = -9, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
    pub hi: i64,
    /// Explicit vertices, e.g. "(0,0);(1,-2)".
    #[arg(long)]
    pub vertices: Option<String>,
}

impl WindowArgs {
    pub fn window(&self, rank: usize) -> Result<VertexWindow> {
        match &self.vertices {
            Some(v) => Ok(VertexWindow::Explicit(parse_weight_list(v)?)),
            None => Ok(VertexWindow::cube(rank, self.lo, self.hi)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct QuiverSource {
    /// Quiver JSON written by build-quiver.
    #[arg(long, conflicts_with_all = ["group", "sigma"])]
    pub quiver: Option<PathBuf>,
    #[arg(long, requires = "sigma")]
    pub group: Option<String>,
    #[arg(long, requires = "group")]
    pub sigma: Option<String>,
    #[command(flatten)]
    pub window: WindowArgs,
}

impl QuiverSource {
    /// The quiver and, when the group is known, its parabolic datum.
    pub fn load(&self) -> Result<(Quiver, Option<ParabolicDatum>)> {
        if let Some(path) = &self.quiver {
            let q = from_json(&std::fs::read_to_string(path)?)?;
            let p = match (&q.group, &q.sigma) {
                (Some(g), Some(s)) => Some(ParabolicDatum::new(std::sync::Arc::new(build_root_system(g.parse()?)?), s)?),
                _ => None,
            };
            return Ok((q, p));
        }
        let (Some(group), Some(sigma)) = (&self.group, &self.sigma) else {
            return Err(Error::Config("give either --quiver or --group with --sigma".into()));
        };
        let p = GroupArgs { group: group.clone(), sigma: sigma.clone() }.parabolic()?;
        let q = build_quiver_with(&p, &self.window.window(p.rank())?, ArrowMode::Auto)?;
        let q = build_relations(&p, &q)?;
        Ok((q, Some(p)))
    }
}

#[derive(Debug, Clone, Args)]
pub struct EpsArgs {
    /// Uniform ε on every root of Σ.
    #[arg(long, conflicts_with = "eps_file")]
    pub eps: Option<String>,
    /// Parameter file with epsilon.<label> entries.
    #[arg(long)]
    pub eps_file: Option<PathBuf>,
}

impl EpsArgs {
    pub fn epsilon(&self, p: &ParabolicDatum) -> Result<EpsilonSet> {
        match (&self.eps, &self.eps_file) {
            (Some(e), _) => Ok(EpsilonSet::uniform(p, parse_rational(e)?)),
            (None, Some(f)) => ParamFile::load(f)?.epsilon_set(p),
            (None, None) => Ok(EpsilonSet::uniform(p, Rational::from_integer(1.into()))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Fw,
    P2x,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamKind {
    Tau,
    Tauprime,
    Sigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    P1xp1,
    P2,
    BorelA2,
    Triple,
}

impl ExampleName {
    fn name(self) -> &'static str {
        match self {
            ExampleName::P1xp1 => "p1xp1",
            ExampleName::P2 => "p2",
            ExampleName::BorelA2 => "borel-a2",
            ExampleName::Triple => "triple",
        }
    }
}

fn parse_weight_list(s: &str) -> Result<Vec<Weight>> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

fn table(q: &Quiver) -> String {
    let mut s = format!("status {}\nvertices {}\n", q.status, q.vertices.len());
    for (i, v) in q.vertices.iter().enumerate() {
        s.push_str(&format!("  v{i} {v}\n"));
    }
    s.push_str(&format!("arrows {}\n", q.arrows.len()));
    for a in &q.arrows {
        s.push_str(&format!("  a{} {} -> {} #{}\n", a.id, q.vertices[a.tail], q.vertices[a.head], a.index));
    }
    s.push_str(&format!("relations {}\n", q.relations.len()));
    for r in &q.relations {
        s.push_str(&format!("  {}\n", relation_text(r, |a| format!("a{a}"))));
    }
    s.push_str(&format!(
        "boundary: dropped arrows {}, truncated relations {}\n",
        q.boundary.dropped_arrows.len(),
        q.boundary.truncated_relations
    ));
    s
}

fn multiplicities(q: &Quiver, p: Option<&ParabolicDatum>) -> Result<Vec<u64>> {
    match p {
        Some(p) => {
            let ctx = crate::charring::CharEngine::new(p);
            q.vertices.iter().map(|v| ctx.weyl_dim(v)).collect()
        }
        None => Ok(vec![1; q.vertices.len()]),
    }
}

fn tau_prime_for(q: &Quiver, path: &std::path::Path) -> Result<Vec<Rational>> {
    let f = ParamFile::load(path)?;
    per_vertex(q, &f.tauprime_map(&q.vertices)?, Some(Rational::from_integer(0.into())))
}

/// Executes a parsed command and returns what it prints on standard output.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::BuildQuiver { group, window, format, generic, no_relations } => {
            let p = group.parabolic()?;
            let mode = if generic { ArrowMode::Generic } else { ArrowMode::Auto };
            let mut q = build_quiver_with(&p, &window.window(p.rank())?, mode)?;
            if !no_relations {
                q = build_relations(&p, &q)?;
            }
            check_directed_for(&p, &q)?;
            Ok(match format {
                Format::Json => to_json(&q) + "\n",
                Format::Dot => to_dot(&p, &q),
                Format::Table => table(&q),
            })
        }
        Command::ShowRelations { source } => {
            let (q, _) = source.load()?;
            let mut s = format!("status {}\n", q.status);
            for (i, r) in q.relations.iter().enumerate() {
                let start = q.arrow(r.terms[0].path[0]).tail;
                s.push_str(&format!("r{i} at {}: {}\n", q.vertices[start], relation_text(r, |a| format!("a{a}"))));
            }
            Ok(s)
        }
        Command::FiltrationOrder { group, weights } => {
            let p = group.parabolic()?;
            let mut support = BTreeMap::new();
            for tok in weights.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                let (w, m) = match tok.rsplit_once(':') {
                    Some((w, m)) => (w, m.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad multiplicity in {tok:?}")))?),
                    None => (tok, 1),
                };
                support.insert(w.trim().parse::<Weight>()?, m);
            }
            let mut s = String::new();
            for (i, (w, m)) in filtration_order(&p, &support)?.into_iter().enumerate() {
                s.push_str(&format!("{i} {w} multiplicity {m} sigma_height {}\n", format_rational(&p.sigma_height(&w)?)));
            }
            Ok(s)
        }
        Command::Slope { group, weight, eps, basis } => {
            let p = group.parabolic()?;
            let w: Weight = weight.parse()?;
            let w = match basis {
                Basis::Fw => w,
                Basis::P2x => {
                    if p.rs.spec.to_string() != "A2" || p.sigma != [1] {
                        return Err(Error::Config("--basis p2x needs --group A2 --sigma a2".into()));
                    }
                    if w.rank() != 2 {
                        return Err(Error::DimensionMismatch { expected: 2, got: w.rank() });
                    }
                    p2_from_display(&w.coords[0], &w.coords[1])
                }
            };
            let ctx = ParamContext::new(&p, &eps.epsilon(&p)?)?;
            Ok(format!("{}\n", format_rational(&ctx.slope(&w)?)))
        }
        Command::ConvertParams { group, eps, from, to, params, order } => {
            let p = group.parabolic()?;
            let ctx = ParamContext::new(&p, &eps.epsilon(&p)?)?;
            let f = ParamFile::load(&params)?;
            let order = match &order {
                Some(o) => parse_weight_list(o)?,
                None => Vec::new(),
            };
            let resolve = |entries: &[(String, Rational)]| -> Result<BTreeMap<Weight, Rational>> {
                entries.iter().map(|(k, v)| Ok((resolve_vertex(k, &order)?, v.clone()))).collect()
            };
            let tp = match from {
                ParamKind::Tau => ctx.tau_to_tauprime(&resolve(&f.tau)?)?,
                ParamKind::Tauprime => resolve(&f.tauprime)?,
                ParamKind::Sigma => {
                    let (tp, warnings) = ctx.sigma_to_tauprime(&f.sigma_list()?, &order)?;
                    for w in warnings {
                        eprintln!("warning: {w}");
                    }
                    tp
                }
            };
            Ok(match to {
                ParamKind::Tauprime => write_map("tauprime", &tp),
                ParamKind::Tau => write_map("tau", &ctx.tauprime_to_tau(&tp)?),
                ParamKind::Sigma => {
                    let sigma = ctx.tauprime_to_sigma(&tp, &order)?;
                    sigma.iter().enumerate().map(|(i, s)| format!("sigma.{i} = {}\n", format_rational(s))).collect()
                }
            })
        }
        Command::CheckConstraint { tau, ranks, deg } => {
            let tau = parse_list(&tau, parse_rational)?;
            let ranks = parse_list(&ranks, |t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad rank {t:?}"))))?;
            let (ok, residual) = check_constraint(&tau, &ranks, &parse_rational(&deg)?)?;
            Ok(format!("{} residual {}\n", if ok { "holds" } else { "violated" }, format_rational(&residual)))
        }
        Command::CheckStability { source, rep, tau_prime, bound } => {
            let (q, p) = source.load()?;
            let r = RepFile::load(&rep)?.to_rep(&q)?;
            let n = multiplicities(&q, p.as_ref())?;
            let tp = tau_prime_for(&q, &tau_prime)?;
            let violations = check_relations(&r)?;
            let report = is_semistable_bounded(&r, &tp, &n, bound)?;
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "sub_dims": q.vertices.iter().zip(&w.sub_dims).filter(|(_, &d)| d > 0)
                        .map(|(v, d)| (v.to_string(), *d)).collect::<BTreeMap<_, _>>(),
                    "slope": report.witness_slope.as_ref().map(format_rational),
                })
            });
            let out = json!({
                "verdict": report.verdict.as_str(),
                "polystable": report.polystable,
                "slope": format_rational(&report.slope),
                "prime": report.prime,
                "witness": witness,
                "relations_violated": violations.iter().map(|v| v.relation).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&out)? + "\n")
        }
        Command::SolveVortex { source, rep, tau_prime, tol, step, max_iters, trace } => {
            let (q, p) = source.load()?;
            let (dims, maps) = RepFile::load(&rep)?.to_complex(&q)?;
            let n = multiplicities(&q, p.as_ref())?;
            let tp: Vec<f64> = tau_prime_for(&q, &tau_prime)?.iter().map(rational_to_f64).collect();
            let hr = HermitianRep::new(q, dims, maps, n, tp)?;
            let opts = FlowOptions { tol, step, max_iters, ..FlowOptions::default() };
            let (_, report) = kempf_ness_flow(&hr, opts)?;
            if let Some(path) = trace {
                std::fs::write(path, report.trace_csv())?;
            }
            Ok(report.to_json() + "\n")
        }
        Command::ReproduceExample { name } => reproduce(name.name()),
    }
}

/// Parses `args` (including the program name), runs, and returns `(exit status, stdout, stderr)`.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                (0, text, String::new())
            } else {
                (code, String::new(), text)
            }
        }
        Ok(cli) => match run(cli) {
            Ok(out) => (0, out, String::new()),
            Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
        },
    }
}
