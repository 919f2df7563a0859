//! The `osc` command line: map loading, argument handling and report
//! rendering on top of `osc-core`.

pub mod parse;

use std::ffi::OsString;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use osc_core::algebra::binomial_usize;
use osc_core::catalog;
use osc_core::checks::{
    a5_report, lanteri_check, main_hypothesis_report, veronese_characterization_check,
};
use osc_core::chow::{
    a1_vanishing_report, a4_reciprocal_check, chern_principal_parts, chern_r,
    principal_parts_kclass,
};
use osc_core::inflection::{
    default_coeff_degree, hyperosculation_scan, identical_equations, inflection_divisor,
    rank_drop_minors, remove_content, wronskian,
};
use osc_core::jet::{
    equation_space, general_point, generic_jet_rank, h_sequence, hopf_check, jet_matrix,
    osculating_duality_check, RankMethod, SAMPLE_BOX,
};
use osc_core::report::{big_json, rat_vec_json};
use osc_core::{Error, HypothesisReport, PolyMap, Rat};

pub use parse::{parse_point, parse_poly, ParseError};

#[derive(Parser, Debug)]
#[command(
    name = "osc",
    version,
    about = "Osculating spaces, inflection and Chern classes of polynomial maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// JSON map file, or `catalog:NAME`
    #[arg(long, global = true)]
    pub map: Option<String>,
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Chart coordinates, comma-separated rationals
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 8)]
    pub samples: usize,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub coeff_degree: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true)]
    pub r: Option<usize>,
    #[arg(long, global = true)]
    pub y: Option<usize>,
    #[arg(long, global = true)]
    pub e: Option<i64>,
    /// h-sequence `h_1,h_2,...` for `check hopf`
    #[arg(long, global = true)]
    pub hseq: Option<String>,
    /// Assert x(m) = r+1 = C(n+m,m) - 1 for `check a5` without a map
    #[arg(long, global = true)]
    pub assert_rank: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Osculating dimension at a point
    Dim,
    /// Osculating dimension at a general point
    GenericDim,
    /// Equations of order <= m at a point
    Equations,
    /// Equations holding identically on the chart
    Identical,
    /// h-sequence at a point or a general point
    Hseq,
    /// Rank drops of the jet over samples and the grid
    Scan,
    /// Generic-rank minors of the symbolic jet
    Minors,
    /// Wronskian of a curve
    Wronskian,
    /// Inflection divisor of a rational curve
    Inflect,
    /// Chern classes of principal parts on P^n
    Chern,
    /// Hypothesis and consequence checks
    Check {
        #[arg(value_enum)]
        which: CheckKind,
    },
    /// List catalog maps
    Catalog,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Main,
    Veronese,
    A5,
    Lanteri,
    Hopf,
    Duality,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCatalogEntry(_) => CliError::Usage(e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Result of a command: a JSON value plus the human rendering.
struct Output {
    result: Value,
    text: Vec<String>,
    trace: Vec<String>,
}

impl Output {
    fn new(result: Value, text: Vec<String>) -> Self {
        Output {
            result,
            text,
            trace: Vec::new(),
        }
    }

    fn report(rep: HypothesisReport) -> Self {
        let mut text = vec![format!("verdict: {}", rep.verdict), rep.summary.clone()];
        text.extend(rep.trace.iter().map(|t| format!("  {t}")));
        let trace = rep.trace.clone();
        Output {
            result: serde_json::to_value(&rep).expect("report serializes"),
            text,
            trace,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    vars: Vec<String>,
    coords: Vec<String>,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    bundle: bool,
}

/// Builds a map from the JSON file format `{"vars": [...], "coords": [...]}`.
pub fn map_from_json(text: &str) -> CliResult<PolyMap> {
    let spec: MapFile =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("map file: {e}")))?;
    if spec.vars.is_empty() {
        return Err(CliError::Usage("map file: `vars` is empty".into()));
    }
    for (i, v) in spec.vars.iter().enumerate() {
        if !parse::is_identifier(v) {
            return Err(CliError::Usage(format!(
                "map file: `{v}` is not a valid variable name"
            )));
        }
        if spec.vars[..i].contains(v) {
            return Err(CliError::Usage(format!(
                "map file: variable `{v}` repeated"
            )));
        }
    }
    let coords = spec
        .coords
        .iter()
        .enumerate()
        .map(|(i, src)| {
            parse_poly(src, &spec.vars).map_err(|e| CliError::Usage(format!("coords[{i}]: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut map = PolyMap::new(coords)?.with_var_names(spec.vars)?;
    if let Some(name) = spec.name {
        map = map.with_name(name);
    }
    if spec.bundle {
        map = map.as_bundle_chart();
    }
    Ok(map)
}

fn load_map(spec: &str) -> CliResult<PolyMap> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog::lookup(name)?);
    }
    let text = std::fs::read_to_string(Path::new(spec))
        .map_err(|e| CliError::Usage(format!("cannot read map file `{spec}`: {e}")))?;
    map_from_json(&text)
}

struct Ctx {
    opts: Opts,
}

impl Ctx {
    fn map(&self) -> CliResult<PolyMap> {
        let spec = self.opts.map.as_deref().ok_or_else(|| missing("--map"))?;
        load_map(spec)
    }

    fn order(&self) -> CliResult<usize> {
        self.opts.order.ok_or_else(|| missing("--order"))
    }

    fn point(&self, map: &PolyMap) -> CliResult<Option<Vec<Rat>>> {
        let Some(src) = &self.opts.point else {
            return Ok(None);
        };
        let p = parse_point(src).map_err(|e| CliError::Usage(format!("--point: {e}")))?;
        if p.len() != map.n() {
            return Err(CliError::Usage(format!(
                "--point has {} coordinates, the map has {} variables",
                p.len(),
                map.n()
            )));
        }
        Ok(Some(p))
    }

    fn required_point(&self, map: &PolyMap) -> CliResult<Vec<Rat>> {
        self.point(map)?.ok_or_else(|| missing("--point"))
    }

    fn need<T: Copy>(&self, v: Option<T>, flag: &str) -> CliResult<T> {
        v.ok_or_else(|| missing(flag))
    }
}

fn missing(flag: &str) -> CliError {
    CliError::Usage(format!("{flag} is required for this command"))
}

fn show_point(p: &[Rat]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn method_text(m: &RankMethod) -> String {
    match m {
        RankMethod::Symbolic => "exact symbolic rank".into(),
        RankMethod::Sampled {
            seed,
            trials,
            bound,
        } => format!("max rank over {trials} samples in [-{bound}, {bound}], seed {seed}"),
    }
}

fn cmd_dim(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let p = ctx.required_point(&map)?;
    let rank = jet_matrix(&map, m, &p)?.rank();
    let dim = rank as i64 - 1;
    Ok(Output::new(
        json!({"order": m, "point": rat_vec_json(&p), "jet_rank": rank, "dim": dim}),
        vec![format!("dim T({m}) = {dim}")],
    ))
}

fn cmd_generic_dim(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let g = generic_jet_rank(&map, m, ctx.opts.seed, ctx.opts.samples);
    let dim = g.rank as i64 - 1;
    let mut out = Output::new(
        json!({"order": m, "jet_rank": g.rank, "dim": dim, "method": g.method}),
        vec![format!("generic dim T({m}) = {dim}")],
    );
    out.trace.push(method_text(&g.method));
    Ok(out)
}

fn cmd_equations(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let p = ctx.required_point(&map)?;
    let eqs = equation_space(&map, m, &p)?;
    let mut text = vec![format!("dim V_{m} = {}", eqs.len())];
    text.extend(eqs.iter().map(|e| e.display()));
    let rows: Vec<Value> = eqs.iter().map(|e| rat_vec_json(e.coeffs())).collect();
    Ok(Output::new(
        json!({"order": m, "point": rat_vec_json(&p), "dim": eqs.len(), "equations": rows}),
        text,
    ))
}

fn cmd_identical(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let bound = ctx
        .opts
        .coeff_degree
        .unwrap_or_else(|| default_coeff_degree(m));
    let eqs = identical_equations(&map, m, bound);
    let names = map.var_names();
    let shown: Vec<String> = eqs.iter().map(|e| e.display_with(names)).collect();
    let exact = eqs.iter().filter(|e| e.has_exact_order()).count();
    let mut text = vec![format!(
        "{} identical equations of order <= {m} with coefficient degree <= {bound} ({exact} of exact order {m})",
        eqs.len()
    )];
    text.extend(shown.iter().cloned());
    Ok(Output::new(
        json!({"order": m, "coeff_degree": bound, "count": eqs.len(), "exact_order": exact, "equations": shown}),
        text,
    ))
}

fn cmd_hseq(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let (p, general) = match ctx.point(&map)? {
        Some(p) => (p, false),
        None => (general_point(&map, m, ctx.opts.seed)?, true),
    };
    let h = h_sequence(&map, m, &p)?;
    let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
    let mut out = Output::new(
        json!({"order": m, "point": rat_vec_json(&p), "general_point": general, "h_sequence": h}),
        vec![format!("h = ({})", shown.join(", "))],
    );
    out.trace.push(format!(
        "{} point {}",
        if general { "general" } else { "given" },
        show_point(&p)
    ));
    Ok(out)
}

fn cmd_scan(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let res = hyperosculation_scan(&map, m, ctx.opts.seed, ctx.opts.samples)?;
    let mut text = vec![format!(
        "generic rank {}, {} points checked, {} rank drops",
        res.generic_rank,
        res.points_checked,
        res.hits.len()
    )];
    text.extend(
        res.hits
            .iter()
            .map(|h| format!("rank {} at {}", h.rank, show_point(&h.point))),
    );
    let mut out = Output::new(serde_json::to_value(&res).expect("serializes"), text);
    out.trace
        .push("best effort: an empty scan does not prove the locus empty".into());
    Ok(out)
}

fn cmd_minors(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let m = ctx.order()?;
    let res = rank_drop_minors(&map, m)?;
    let names = map.var_names();
    let shown: Vec<String> = res
        .minors
        .iter()
        .map(|p| p.display_with(names).to_string())
        .collect();
    let mut text = vec![format!(
        "generic rank {}, {} distinct minors",
        res.generic_rank,
        shown.len()
    )];
    if res.locus_is_empty() {
        text.push("a minor is constant: the rank never drops in this chart".into());
    }
    text.extend(shown.iter().cloned());
    Ok(Output::new(
        json!({"order": m, "generic_rank": res.generic_rank, "locus_empty": res.locus_is_empty(), "minors": shown}),
        text,
    ))
}

fn cmd_wronskian(ctx: &Ctx) -> CliResult<Output> {
    let map = remove_content(&ctx.map()?)?;
    let w = wronskian(&map)?;
    let shown = w.display_with(map.var_names()).to_string();
    let constant = w.is_constant();
    let verdict = if constant {
        "no hyperosculating points"
    } else {
        "hyperosculating points at the zeros of W"
    };
    Ok(Output::new(
        json!({"wronskian": shown, "constant": constant, "verdict": verdict}),
        vec![format!("W = {shown}"), verdict.to_string()],
    ))
}

fn cmd_inflect(ctx: &Ctx) -> CliResult<Output> {
    let map = ctx.map()?;
    let div = inflection_divisor(&map)?;
    let mut text = vec![format!("degree {}, r = {}", div.degree, div.r)];
    for z in &div.rational {
        text.push(format!("t = {}: order {}", z.root, z.order));
    }
    for f in &div.residual {
        text.push(format!(
            "factor {} (degree {}, multiplicity {})",
            f.factor.display_with(map.var_names()),
            f.degree,
            f.multiplicity
        ));
    }
    text.push(format!("infinity: order {}", div.order_at_infinity));
    text.push(format!(
        "total {} = (r+1)(d-r) = {}: {}",
        div.total_weight,
        div.expected_weight,
        if div.is_consistent() {
            "consistent"
        } else {
            "MISMATCH"
        }
    ));
    let mut result = serde_json::to_value(&div).expect("serializes");
    result["wronskian"] = Value::from(div.wronskian.display_with(map.var_names()).to_string());
    result["consistent"] = Value::from(div.is_consistent());
    for (slot, f) in div.residual.iter().enumerate() {
        result["residual"][slot]["factor"] =
            Value::from(f.factor.display_with(map.var_names()).to_string());
    }
    Ok(Output::new(result, text))
}

fn cmd_chern(ctx: &Ctx) -> CliResult<Output> {
    let n = ctx.need(ctx.opts.n, "--n")?;
    let d = ctx.need(ctx.opts.d, "--d")?;
    let m = ctx.need(ctx.opts.m, "--m")?;
    let k = principal_parts_kclass(n, d, m)?;
    let c = chern_principal_parts(n, d, m)?;
    let cr = chern_r(n, d, m)?;
    let a4 = a4_reciprocal_check(n, d, m)?;
    let mut text = vec![
        c.to_string(),
        format!("P^{m}(O({d})) on P^{n} = {k}"),
        format!("c(R) = {cr}"),
        format!("1/c(R*) comparison: {}", a4.verdict),
    ];
    let kterms: Vec<Value> = k
        .terms()
        .into_iter()
        .map(|(t, mult)| json!({"twist": t, "multiplicity": big_json(&mult)}))
        .collect();
    let mut result = json!({
        "chern_class": c.to_json(),
        "chern_class_text": c.to_string(),
        "rank": big_json(&k.rank()),
        "kclass": kterms,
        "chern_R": cr.to_json(),
        "a4": serde_json::to_value(&a4).expect("serializes"),
    });
    let mut trace = a4.trace.clone();
    if let Some(r) = ctx.opts.r {
        let a1 = a1_vanishing_report(n, d, m, r)?;
        text.push(format!("obstruction window: {}", a1.summary));
        trace.extend(a1.trace.iter().cloned());
        result["a1"] = serde_json::to_value(&a1).expect("serializes");
    }
    let mut out = Output::new(result, text);
    out.trace = trace;
    Ok(out)
}

fn parse_hseq(src: &str) -> CliResult<Vec<usize>> {
    src.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--hseq: `{}` is not a count", s.trim())))
        })
        .collect()
}

fn cmd_check(ctx: &Ctx, which: CheckKind) -> CliResult<Output> {
    let o = &ctx.opts;
    match which {
        CheckKind::Main => Ok(Output::report(main_hypothesis_report(
            &ctx.map()?,
            ctx.order()?,
            o.seed,
        )?)),
        CheckKind::Veronese => Ok(Output::report(veronese_characterization_check(
            &ctx.map()?,
            ctx.order()?,
            o.seed,
            o.samples,
        )?)),
        CheckKind::Lanteri => Ok(Output::report(lanteri_check(
            &ctx.map()?,
            o.samples,
            o.seed,
        )?)),
        CheckKind::A5 => {
            let n = ctx.need(o.n, "--n")?;
            let d = ctx.need(o.d, "--d")?;
            let m = ctx.need(o.m, "--m")?;
            let y = ctx.need(o.y, "--y")?;
            let e = ctx.need(o.e, "--e")?;
            let mut note = None;
            let asserted = match &o.map {
                Some(_) => {
                    let map = ctx.map()?;
                    if map.n() != n {
                        return Err(CliError::Usage(format!(
                            "--n {n} does not match the map dimension {}",
                            map.n()
                        )));
                    }
                    let rank = generic_jet_rank(&map, m, o.seed, o.samples).rank;
                    let target = binomial_usize(n + m, m) - 1;
                    note = Some(format!(
                        "x({m}) = generic jet rank {rank}, r+1 = {}, C(n+m,m) - 1 = {target}",
                        map.r() + 1
                    ));
                    rank == map.r() + 1 && rank == target
                }
                None => o.assert_rank,
            };
            let mut rep = a5_report(n, d, m, y, e, asserted)?;
            if let Some(line) = note {
                rep.trace.insert(0, line);
            }
            Ok(Output::report(rep))
        }
        CheckKind::Hopf => {
            let (h, n) = match &o.hseq {
                Some(src) => (parse_hseq(src)?, ctx.need(o.n, "--n")?),
                None => {
                    let map = ctx.map()?;
                    let m = ctx.order()?;
                    let p = match ctx.point(&map)? {
                        Some(p) => p,
                        None => general_point(&map, m, o.seed)?,
                    };
                    (h_sequence(&map, m, &p)?, map.n())
                }
            };
            let rep = hopf_check(&h, n);
            let failing: Vec<String> = rep
                .entries
                .iter()
                .filter(|e| !e.pass)
                .map(|e| {
                    format!(
                        "h_{} = {} < {} (m = {}, d = {})",
                        e.m + e.d,
                        e.actual,
                        e.bound,
                        e.m,
                        e.d
                    )
                })
                .collect();
            let mut text = vec![format!(
                "hopf: {} ({} inequalities checked)",
                if rep.pass { "pass" } else { "fail" },
                rep.entries.len()
            )];
            text.extend(failing);
            Ok(Output::new(
                json!({"h_sequence": h, "n": n, "pass": rep.pass, "entries": rep.entries}),
                text,
            ))
        }
        CheckKind::Duality => {
            let map = ctx.map()?;
            let m = ctx.order()?;
            let p = match ctx.point(&map)? {
                Some(p) => p,
                None => general_point(&map, m, o.seed)?,
            };
            let rep = osculating_duality_check(&map, m, &p)?;
            let text = vec![format!(
                "dim T({m}) + dim |V - {}p| = {} + {} = {} (r - 1 = {}): {}",
                m + 1,
                rep.osculating_dim,
                rep.linear_system_dim,
                rep.osculating_dim + rep.linear_system_dim,
                rep.r as i64 - 1,
                if rep.holds { "holds" } else { "fails" }
            )];
            let mut result = serde_json::to_value(&rep).expect("serializes");
            result["point"] = rat_vec_json(&p);
            Ok(Output::new(result, text))
        }
    }
}

fn cmd_catalog() -> CliResult<Output> {
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for e in catalog::catalog() {
        let dims: Vec<String> = e
            .expected_generic_dims
            .iter()
            .map(|(m, d)| format!("T({m})={d}"))
            .collect();
        text.push(format!(
            "{:<14} n={} r={} {}{}  {}",
            e.name,
            e.map.n(),
            e.map.r(),
            e.map.describe(),
            if e.is_scroll_chart { " [bundle]" } else { "" },
            dims.join(" ")
        ));
        let dims: Vec<Value> = e
            .expected_generic_dims
            .iter()
            .map(|(m, d)| json!({"order": m, "dim": d}))
            .collect();
        rows.push(json!({
            "name": e.name,
            "n": e.map.n(),
            "r": e.map.r(),
            "vars": e.map.var_names(),
            "coords": e.map.coords().iter().map(|c| c.display_with(e.map.var_names()).to_string()).collect::<Vec<_>>(),
            "bundle": e.is_scroll_chart,
            "veronese": e.is_veronese,
            "generic_dims": dims,
        }));
    }
    Ok(Output::new(Value::Array(rows), text))
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Dim => "dim".into(),
        Command::GenericDim => "generic-dim".into(),
        Command::Equations => "equations".into(),
        Command::Identical => "identical".into(),
        Command::Hseq => "hseq".into(),
        Command::Scan => "scan".into(),
        Command::Minors => "minors".into(),
        Command::Wronskian => "wronskian".into(),
        Command::Inflect => "inflect".into(),
        Command::Chern => "chern".into(),
        Command::Check { which } => format!(
            "check {}",
            which
                .to_possible_value()
                .expect("no skipped variants")
                .get_name()
        ),
        Command::Catalog => "catalog".into(),
    }
}

fn inputs_json(o: &Opts) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Option<Value>| {
        if let Some(v) = v {
            m.insert(k.into(), v);
        }
    };
    put("map", o.map.clone().map(Value::from));
    put("order", o.order.map(Value::from));
    put("point", o.point.clone().map(Value::from));
    put("seed", Some(Value::from(o.seed)));
    put("samples", Some(Value::from(o.samples)));
    put("coeff_degree", o.coeff_degree.map(Value::from));
    put("n", o.n.map(Value::from));
    put("d", o.d.map(Value::from));
    put("m", o.m.map(Value::from));
    put("r", o.r.map(Value::from));
    put("y", o.y.map(Value::from));
    put("e", o.e.map(Value::from));
    put("hseq", o.hseq.clone().map(Value::from));
    if o.assert_rank {
        put("assert_rank", Some(Value::from(true)));
    }
    m
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let ctx = Ctx {
        opts: cli.opts.clone(),
    };
    match &cli.command {
        Command::Dim => cmd_dim(&ctx),
        Command::GenericDim => cmd_generic_dim(&ctx),
        Command::Equations => cmd_equations(&ctx),
        Command::Identical => cmd_identical(&ctx),
        Command::Hseq => cmd_hseq(&ctx),
        Command::Scan => cmd_scan(&ctx),
        Command::Minors => cmd_minors(&ctx),
        Command::Wronskian => cmd_wronskian(&ctx),
        Command::Inflect => cmd_inflect(&ctx),
        Command::Chern => cmd_chern(&ctx),
        Command::Check { which } => cmd_check(&ctx, *which),
        Command::Catalog => cmd_catalog(),
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs a full command line (program name first).
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                RunOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut trace = vec![
        format!("seed = {}", cli.opts.seed),
        format!("samples = {}", cli.opts.samples),
        format!("sample box = [-{SAMPLE_BOX}, {SAMPLE_BOX}]"),
    ];
    match dispatch(&cli) {
        Ok(out) => {
            trace.extend(out.trace);
            let stdout = if cli.opts.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "inputs": Value::Object(inputs_json(&cli.opts)),
                    "result": out.result,
                    "trace": trace,
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("serializes")
                )
            } else {
                let mut s = out.text.join("\n");
                s.push('\n');
                s
            };
            RunOutput {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => RunOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}
