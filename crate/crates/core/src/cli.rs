//! Command-line surface: argument definitions and command dispatch.
//!
//! [`run`] returns the text destined for stdout together with an exit code,
//! so commands can be exercised without spawning a process.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::affine::{AffineElt, AffineTables, DEFAULT_INTERVAL_BUDGET};
use crate::error::{Error, Result};
use crate::maxnewton::{
    cocover_bound, cocover_cases, is_saturated_chain, lift_chains, m_k, max_newton_formula, mazur_check, sweep_pairs,
    viehmann_oracle_with, MaxNewtonInput,
};
use crate::qbg::{format_monomial, root_label, QbgPath, QuantumBruhatGraph, DEFAULT_PATH_BUDGET};
use crate::root_data::{
    fmt_rational, parse_cartan_type, parse_rational, split_list, upper_hull_polygon, Basis, HullPoint, LieType,
    NewtonPolygon, RatVec, RootSystem,
};
use crate::weyl::{WeylElt, WeylWord, DEFAULT_GROUP_BUDGET};

#[derive(Debug, Parser)]
#[command(
    name = "maxnewton",
    version,
    about = "Maximal Newton points and the quantum Bruhat graph"
)]
pub struct Cli {
    /// Cartan type letter (A-G), or a full name such as E6.
    #[arg(long = "type", global = true, default_value = "A")]
    pub lie_type: String,

    /// Rank; implied when --type includes it.
    #[arg(long, global = true)]
    pub rank: Option<usize>,

    /// Maximum number of Bruhat-interval elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_INTERVAL_BUDGET)]
    pub budget: usize,

    /// Maximum number of Weyl group elements.
    #[arg(long, global = true, env = "NEWTON_QBG_BUDGET", default_value_t = DEFAULT_GROUP_BUDGET)]
    pub group_budget: usize,

    /// Maximum number of paths listed by `qbg all-paths`.
    #[arg(long, global = true, default_value_t = DEFAULT_PATH_BUDGET)]
    pub path_budget: usize,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
    Tsv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the root datum.
    Roots,
    /// Quantum Bruhat graph queries.
    #[command(subcommand)]
    Qbg(QbgCommand),
    /// Newton points and the maximal Newton point.
    #[command(subcommand)]
    Newton(NewtonCommand),
    /// Cocovers of x, with case ids where they apply.
    Cocovers(ElementArgs),
    /// Saturated chains lifted from a shortest path.
    Chains {
        #[command(flatten)]
        element: ElementArgs,
        /// Lift every shortest path instead of the canonical one.
        #[arg(long)]
        all_paths: bool,
    },
    /// The superregularity constant M_k.
    Mk {
        #[arg(long)]
        k: usize,
    },
    /// Necessary condition ν(b) ≤ λ − α∨_x for X_x(b) to be non-empty.
    Mazur {
        #[command(flatten)]
        element: ElementArgs,
        /// ν(b) in simple-coroot coordinates (rationals allowed).
        #[arg(long, allow_hyphen_values = true)]
        nu_b: String,
    },
    /// Newton polygon from slopes or from points (upper convex hull).
    Polygon {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "points")]
        slopes: Option<String>,
        /// Points `x,y;x,y;...`; `y` may be `-inf` for an absent point.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum QbgCommand {
    /// The whole graph as DOT (default) or JSON.
    Export,
    /// One canonical shortest path.
    Path(PathArgs),
    /// Every shortest path.
    AllPaths(PathArgs),
}

#[derive(Debug, Args)]
pub struct PathArgs {
    /// Reduced word such as 12; empty for the identity.
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
}

#[derive(Debug, Subcommand)]
pub enum NewtonCommand {
    /// ν(t^λ w).
    Point(ElementArgs),
    /// ν_x from the path formula, optionally checked against the interval oracle.
    Max {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long)]
        oracle: bool,
    },
    /// Formula against oracle over all (v, w) at a fixed dominant λ.
    Sweep {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Check only this many randomly chosen pairs.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct LambdaArgs {
    /// Simple-coroot coordinates.
    #[arg(long, allow_hyphen_values = true, group = "lam")]
    pub lambda: Option<String>,
    /// ⟨λ, α_i⟩ for each simple root; a single value applies to all.
    #[arg(long, allow_hyphen_values = true, group = "lam")]
    pub pairings: Option<String>,
    /// ε-coordinates (type A only).
    #[arg(long, allow_hyphen_values = true, group = "lam")]
    pub lambda_eps: Option<String>,
}

#[derive(Debug, Args, Clone)]
pub struct ElementArgs {
    #[command(flatten)]
    pub lambda: LambdaArgs,
    /// Chamber v; when given, λ must be dominant and x = t^{vλ} w.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Finite part w as a word.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub w: String,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Diagnostics for stderr.
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

struct Context {
    rs: Arc<RootSystem>,
    cli_budget: usize,
    group_budget: usize,
    path_budget: usize,
    seed: u64,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let (lie_type, rank) = if cli.lie_type.chars().any(|c| c.is_ascii_digit()) {
            let (t, r) = parse_cartan_type(&cli.lie_type)?;
            if cli.rank.is_some_and(|x| x != r) {
                return Err(Error::Parse(format!(
                    "--type {} conflicts with --rank {}",
                    cli.lie_type,
                    cli.rank.unwrap()
                )));
            }
            (t, r)
        } else {
            let t: LieType = cli.lie_type.parse()?;
            let r = cli.rank.ok_or_else(|| Error::Parse("--rank is required".into()))?;
            (t, r)
        };
        Ok(Self {
            rs: Arc::new(RootSystem::new(lie_type, rank)?),
            cli_budget: cli.budget,
            group_budget: cli.group_budget,
            path_budget: cli.path_budget,
            seed: cli.seed,
        })
    }

    fn qbg(&self) -> Result<QuantumBruhatGraph> {
        QuantumBruhatGraph::build(Arc::clone(&self.rs), self.group_budget)
    }

    fn weyl(&self, word: &str) -> Result<WeylElt> {
        self.rs.weyl_from_word(&WeylWord::parse(word)?)
    }

    fn lambda(&self, args: &LambdaArgs) -> Result<Vec<i64>> {
        let rs = &self.rs;
        let ints = |s: &str| -> Result<Vec<i64>> {
            split_list(s)
                .into_iter()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
                })
                .collect()
        };
        let lam = if let Some(s) = &args.lambda {
            ints(s)?
        } else if let Some(s) = &args.pairings {
            let mut p = ints(s)?;
            if p.len() == 1 {
                p = vec![p[0]; rs.rank];
            }
            if p.len() != rs.rank {
                return Err(Error::Dimension {
                    expected: rs.rank,
                    got: p.len(),
                });
            }
            rs.coweight_from_pairings(&p)?
        } else if let Some(s) = &args.lambda_eps {
            let eps = RatVec::parse(Basis::Epsilon, s)?;
            rs.eps_to_coroot(&eps)?
                .to_ints()
                .ok_or_else(|| Error::Parse(format!("{s:?} is not in the coroot lattice")))?
        } else {
            return Err(Error::Parse(
                "one of --lambda, --pairings, --lambda-eps is required".into(),
            ));
        };
        if lam.len() != rs.rank {
            return Err(Error::Dimension {
                expected: rs.rank,
                got: lam.len(),
            });
        }
        Ok(lam)
    }

    /// `x` as written on the command line.
    fn element(&self, args: &ElementArgs) -> Result<AffineElt> {
        let lam = self.lambda(&args.lambda)?;
        let w = self.weyl(&args.w)?;
        match &args.v {
            Some(v) => {
                let input = MaxNewtonInput::new(&self.rs, self.weyl(v)?, lam, w)?;
                Ok(input.to_affine())
            }
            None => Ok(AffineElt::new(lam, w)),
        }
    }

    fn input(&self, args: &ElementArgs) -> Result<MaxNewtonInput> {
        let lam = self.lambda(&args.lambda)?;
        let w = self.weyl(&args.w)?;
        match &args.v {
            Some(v) => MaxNewtonInput::new(&self.rs, self.weyl(v)?, lam, w),
            None => MaxNewtonInput::from_affine(&self.rs, &AffineElt::new(lam, w)),
        }
    }

    fn show(&self, w: &WeylElt) -> String {
        self.rs.weyl_display(w)
    }

    fn show_x(&self, x: &AffineElt) -> String {
        self.rs.affine_display(x)
    }
}

fn ints_csv(v: &[i64]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn to_json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_cli<I, T>(args: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_cli(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 1,
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    if let Command::Polygon { slopes, points } = &cli.command {
        return cmd_polygon(slopes.as_deref(), points.as_deref(), cli.format);
    }
    let ctx = Context::new(cli)?;
    match &cli.command {
        Command::Roots => Ok(Outcome::ok(to_json_string(
            &serde_json::to_value(ctx.rs.to_json()).unwrap(),
        ))),
        Command::Qbg(sub) => cmd_qbg(&ctx, sub, cli.format),
        Command::Newton(sub) => cmd_newton(&ctx, sub, cli.format),
        Command::Cocovers(el) => cmd_cocovers(&ctx, el, cli.format),
        Command::Chains { element, all_paths } => cmd_chains(&ctx, element, *all_paths, cli.format),
        Command::Mk { k } => {
            let value = m_k(&ctx.rs, *k);
            Ok(Outcome::ok(match cli.format {
                Some(Format::Json) => to_json_string(&json!({ "type": ctx.rs.name(), "k": k, "M_k": value })),
                _ => format!("{value}\n"),
            }))
        }
        Command::Mazur { element, nu_b } => cmd_mazur(&ctx, element, nu_b, cli.format),
        Command::Polygon { .. } => unreachable!(),
    }
}

fn path_text(ctx: &Context, g: &QuantumBruhatGraph, p: &QbgPath) -> String {
    let mut s = ctx.show(g.group().element(p.start));
    for e in &p.edges {
        let _ = write!(
            s,
            " -[{} {}]-> {}",
            root_label(&ctx.rs, e.root),
            e.kind,
            ctx.show(g.group().element(e.target))
        );
    }
    s
}

fn path_json(ctx: &Context, g: &QuantumBruhatGraph, p: &QbgPath) -> serde_json::Value {
    let group = g.group();
    json!({
        "from": group.word(p.start).to_string(),
        "to": group.word(p.end()).to_string(),
        "length": p.len(),
        "weight": p.weight,
        "monomial": format_monomial(&p.weight),
        "path": p.steps(),
        "vertices": std::iter::once(p.start)
            .chain(p.edges.iter().map(|e| e.target))
            .map(|w| ctx.rs.lex_min_word(group.element(w)).to_string())
            .collect::<Vec<_>>(),
    })
}

fn cmd_qbg(ctx: &Context, sub: &QbgCommand, format: Option<Format>) -> Result<Outcome> {
    let g = ctx.qbg()?;
    let group = g.group();
    match sub {
        QbgCommand::Export => match format.unwrap_or(Format::Dot) {
            Format::Dot => Ok(Outcome::ok(g.to_dot())),
            Format::Json => Ok(Outcome::ok(to_json_string(&serde_json::to_value(g.to_json()).unwrap()))),
            f => Err(Error::Parse(format!("qbg export supports dot or json, not {f:?}"))),
        },
        QbgCommand::Path(a) => {
            let (u, v) = (group.index_of(&ctx.weyl(&a.from)?), group.index_of(&ctx.weyl(&a.to)?));
            let p = g.min_path(u, v);
            Ok(Outcome::ok(match format.unwrap_or(Format::Text) {
                Format::Json => to_json_string(&path_json(ctx, &g, &p)),
                _ => format!(
                    "length {}\nweight {}\nmonomial {}\npath {}\n",
                    p.len(),
                    ints_csv(&p.weight),
                    format_monomial(&p.weight),
                    path_text(ctx, &g, &p)
                ),
            }))
        }
        QbgCommand::AllPaths(a) => {
            let (u, v) = (group.index_of(&ctx.weyl(&a.from)?), group.index_of(&ctx.weyl(&a.to)?));
            let paths = g.all_min_paths(u, v, ctx.path_budget)?;
            Ok(Outcome::ok(match format.unwrap_or(Format::Text) {
                Format::Json => to_json_string(&json!({
                    "count": paths.len(),
                    "paths": paths.iter().map(|p| path_json(ctx, &g, p)).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = format!("count {}\n", paths.len());
                    for p in &paths {
                        let _ = writeln!(s, "{} | weight {}", path_text(ctx, &g, p), ints_csv(&p.weight));
                    }
                    s
                }
            }))
        }
    }
}

fn cmd_newton(ctx: &Context, sub: &NewtonCommand, format: Option<Format>) -> Result<Outcome> {
    match sub {
        NewtonCommand::Point(el) => {
            let x = ctx.element(el)?;
            let nu = ctx.rs.newton_point(&x);
            let shown = if el.lambda.lambda_eps.is_some() {
                ctx.rs.coroot_to_eps(&nu.value)?
            } else {
                nu.value.clone()
            };
            Ok(Outcome::ok(match format.unwrap_or(Format::Text) {
                Format::Json => to_json_string(&json!({
                    "x": ctx.rs.affine_to_json(&x),
                    "nu": shown.to_strings(),
                    "basis": shown.basis.to_string(),
                })),
                _ => format!("{shown}\n"),
            }))
        }
        NewtonCommand::Max { element, oracle } => {
            let g = ctx.qbg()?;
            let input = ctx.input(element)?;
            let res = max_newton_formula(&g, &input);
            let mut stderr = String::new();
            if !res.superregular {
                let _ = writeln!(
                    stderr,
                    "note: <λ,α_i> > M_{} = {} fails; the formula value is not guaranteed",
                    res.k,
                    m_k(&ctx.rs, res.k)
                );
            }
            let orc = if *oracle {
                let tables = AffineTables::new(g.group());
                Some(viehmann_oracle_with(&tables, &input.to_affine(), ctx.cli_budget)?)
            } else {
                None
            };
            let agree = orc.as_ref().map(|o| o.nu == res.nu_x);
            let stdout = match format.unwrap_or(Format::Json) {
                Format::Json => to_json_string(&serde_json::to_value(res.to_json(&ctx.rs, orc.as_ref())).unwrap()),
                _ => {
                    let mut s = format!(
                        "x {}\nk {}\nsuperregular {}\ncorrection {}\nnu_x {}\npath {}\n",
                        ctx.show_x(&input.to_affine()),
                        res.k,
                        res.superregular,
                        ints_csv(&res.correction),
                        res.nu_x,
                        path_text(ctx, &g, &res.witness_path)
                    );
                    if let Some(o) = &orc {
                        let _ = writeln!(s, "oracle {}\ninterval_size {}", o.nu, o.interval_size);
                    }
                    s
                }
            };
            let mut code = 0;
            if let (Some(a), Some(o)) = (agree, &orc) {
                if a {
                    stderr.push_str("AGREE\n");
                } else {
                    let _ = writeln!(
                        stderr,
                        "DISAGREE formula {} oracle {} interval_size {}",
                        res.nu_x, o.nu, o.interval_size
                    );
                    code = 1;
                }
            }
            Ok(Outcome { stdout, stderr, code })
        }
        NewtonCommand::Sweep { lambda, sample } => cmd_sweep(ctx, lambda, *sample, format),
    }
}

fn cmd_sweep(ctx: &Context, lambda: &LambdaArgs, sample: Option<usize>, format: Option<Format>) -> Result<Outcome> {
    let g = ctx.qbg()?;
    let group = g.group();
    let rs = &ctx.rs;
    let lam = ctx.lambda(lambda)?;
    let n = group.len() as u32;
    let mut pairs: Vec<(u32, u32)> = (0..n).flat_map(|v| (0..n).map(move |w| (v, w))).collect();
    if let Some(s) = sample {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(s);
        pairs.sort();
    }
    let rows = sweep_pairs(&g, &lam, &pairs, ctx.cli_budget)?;
    let agree = rows.iter().filter(|r| r.agrees()).count();
    let summary = format!("{agree}/{} AGREE", rows.len());
    let stdout = match format.unwrap_or(Format::Text) {
        Format::Json => to_json_string(&json!({
            "type": rs.name(),
            "lambda": lam,
            "agree": agree,
            "total": rows.len(),
            "rows": rows.iter().map(|r| json!({
                "v": group.word(r.v).to_string(),
                "w": group.word(r.w).to_string(),
                "k": r.k,
                "superregular": r.superregular,
                "formula": r.formula.to_strings(),
                "oracle": r.oracle.to_strings(),
                "interval_size": r.interval_size,
                "agree": r.agrees(),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::from("v\tw\tk\tsuperregular\tformula\toracle\tinterval\tverdict\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    ctx.show(group.element(r.v)),
                    ctx.show(group.element(r.w)),
                    r.k,
                    r.superregular,
                    r.formula,
                    r.oracle,
                    r.interval_size,
                    if r.agrees() { "AGREE" } else { "DISAGREE" }
                );
            }
            let _ = writeln!(s, "{summary}");
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if agree == rows.len() { 0 } else { 1 },
    })
}

fn cmd_cocovers(ctx: &Context, el: &ElementArgs, format: Option<Format>) -> Result<Outcome> {
    let rs = &ctx.rs;
    let x = ctx.element(el)?;
    let brute = rs.cocovers(&x);
    let mut stderr = String::new();
    let cases = match MaxNewtonInput::from_affine(rs, &x) {
        Ok(input) => {
            let bound = cocover_bound(rs);
            if (0..rs.rank).any(|i| rs.pair_simple(&input.lambda_plus, i) < bound) {
                let _ = writeln!(
                    stderr,
                    "note: <λ,α_i> >= {bound} fails; case formulas may miss or repeat cocovers"
                );
            }
            Some(cocover_cases(rs, &input))
        }
        Err(_) => {
            stderr.push_str("note: translation part is not regular; listing cocovers without case ids\n");
            None
        }
    };
    let stdout = match format.unwrap_or(Format::Text) {
        Format::Json => to_json_string(&json!({
            "x": rs.affine_to_json(&x),
            "cocovers": brute.iter().map(|y| rs.affine_to_json(y)).collect::<Vec<_>>(),
            "cases": cases.as_ref().map(|cs| cs.iter().map(|c| json!({
                "case": c.case_id,
                "alpha": c.alpha + 1,
                "level": c.level,
                "result": rs.affine_to_json(&c.result),
            })).collect::<Vec<_>>()),
        })),
        _ => {
            let mut s = String::new();
            for y in &brute {
                let ids: Vec<String> = cases
                    .iter()
                    .flatten()
                    .filter(|c| &c.result == y)
                    .map(|c| format!("({}) {} n={}", c.case_id, root_label(rs, c.alpha), c.level))
                    .collect();
                if ids.is_empty() {
                    let _ = writeln!(s, "{}", ctx.show_x(y));
                } else {
                    let _ = writeln!(s, "{}\t{}", ctx.show_x(y), ids.join("; "));
                }
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr,
        code: 0,
    })
}

fn cmd_chains(ctx: &Context, el: &ElementArgs, all_paths: bool, format: Option<Format>) -> Result<Outcome> {
    let rs = &ctx.rs;
    let g = ctx.qbg()?;
    let input = ctx.input(el)?;
    let group = g.group();
    let (u, v) = (group.index_of(&input.path_start(rs)), group.index_of(&input.v));
    let paths = if all_paths {
        g.all_min_paths(u, v, ctx.path_budget)?
    } else {
        vec![g.min_path(u, v)]
    };
    let mut chains = Vec::new();
    for p in &paths {
        chains.extend(lift_chains(rs, &input, p)?);
    }
    let valid = chains.iter().all(|c| is_saturated_chain(rs, c));
    let stdout = match format.unwrap_or(Format::Text) {
        Format::Json => to_json_string(&json!({
            "count": chains.len(),
            "valid": valid,
            "chains": chains.iter().map(|c| json!({
                "elements": c.elements.iter().map(|e| rs.affine_to_json(e)).collect::<Vec<_>>(),
                "terminal_translation": c.terminal_translation,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!("count {}\n", chains.len());
            for c in &chains {
                let parts: Vec<String> = c.elements.iter().map(|e| ctx.show_x(e)).collect();
                let _ = writeln!(s, "{}", parts.join(" > "));
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if valid { 0 } else { 1 },
    })
}

fn cmd_mazur(ctx: &Context, el: &ElementArgs, nu_b: &str, format: Option<Format>) -> Result<Outcome> {
    let g = ctx.qbg()?;
    let input = ctx.input(el)?;
    let nu = RatVec::parse(Basis::SimpleCoroot, nu_b)?;
    if nu.dim() != ctx.rs.rank {
        return Err(Error::Dimension {
            expected: ctx.rs.rank,
            got: nu.dim(),
        });
    }
    let rep = mazur_check(&g, &input, &nu)?;
    let verdict = if rep.holds { "PASS" } else { "FAIL" };
    let stderr = if rep.conjectural {
        "note: λ is not superregular for this x; the bound is conjectural\n".to_string()
    } else {
        String::new()
    };
    let stdout = match format.unwrap_or(Format::Text) {
        Format::Json => to_json_string(&json!({
            "holds": rep.holds,
            "bound": rep.bound.to_strings(),
            "conjectural": rep.conjectural,
        })),
        _ => format!("{verdict} nu_b {nu} <= {}\n", rep.bound),
    };
    Ok(Outcome {
        stdout,
        stderr,
        code: 0,
    })
}

fn parse_points(s: &str) -> Result<Vec<HullPoint>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pt| {
            let (x, y) = pt
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected x,y in {pt:?}")))?;
            let x: i64 = x.trim().parse().map_err(|_| Error::Parse(format!("bad x in {pt:?}")))?;
            let y = y.trim();
            if y.eq_ignore_ascii_case("-inf") {
                Ok(HullPoint::absent(x))
            } else {
                Ok(HullPoint::new(x, parse_rational(y)?))
            }
        })
        .collect()
}

fn cmd_polygon(slopes: Option<&str>, points: Option<&str>, format: Option<Format>) -> Result<Outcome> {
    let poly = match (slopes, points) {
        (Some(s), _) => {
            let v = split_list(s)
                .into_iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            NewtonPolygon::from_slopes(&v)?
        }
        (None, Some(p)) => upper_hull_polygon(&parse_points(p)?)?,
        (None, None) => return Err(Error::Parse("one of --slopes, --points is required".into())),
    };
    let slopes: Vec<String> = poly.slopes.iter().map(fmt_rational).collect();
    Ok(Outcome::ok(match format.unwrap_or(Format::Text) {
        Format::Tsv => poly.to_tsv(),
        Format::Svg => poly.to_svg(),
        Format::Json => to_json_string(&json!({
            "slopes": slopes,
            "vertices": poly.vertices.iter().map(|(x, y)| [fmt_rational(x), fmt_rational(y)]).collect::<Vec<_>>(),
        })),
        _ => format!("{}\n", slopes.join(",")),
    }))
}
