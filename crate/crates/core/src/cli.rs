//! Command-line front end. [`run`] is what the binary calls; it writes
//! reports to `out`, diagnostics to `err`, and returns the exit code:
//! 0 for success, 1 for a negative verdict, 2 for input errors.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::asymptotics::{classify_growth, dominates_within, ends_profile, growth_sequence, Domination};
use crate::cayley::{
    build_ball_from, component_comparability, schutzenberger_graph_ball, units_within, DigraphBall, Relation,
};
use crate::desc::{self, DescriptionError};
use crate::geometry::{
    check_projection_qi, check_qi_embedding, check_quasi_isometry, check_quotient_qi, quasi_density,
    search_quasi_isometry, symmetrize, Bound, FiniteSemimetricSpace, PointMap, QiConstants, QiFailure, QuotientError,
    QuotientReport, SearchBounds, SearchOutcome, SpaceError,
};
use crate::green::{
    check_schutz_action, green_relations, schutzenberger_group, svarc_milnor_generators, GreenError, SchutzAction,
};
use crate::monoid::{builtin, Element, FiniteMonoid, Monoid, MonoidError, Side, DEFAULT_ELEMENT_CAP};
use crate::rational::{parse_q, Dist, Q};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Description(#[from] DescriptionError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("{0}")]
    Usage(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "semigeom", version, about = "Monoids as semimetric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or draw the out-ball of an element.
    Ball(BallArgs),
    /// Horizon-certified distances in a ball.
    Dist(DistArgs),
    /// Components and comparability of sampled points.
    Poset(PosetArgs),
    /// Green's R-, L- and H-classes of a finite monoid.
    Green(MonoidArgs),
    /// Schützenberger graph and group of an H-class.
    Schutz(SchutzArgs),
    /// Check the Schützenberger group action.
    Act(ActArgs),
    /// Extract generators from a covering ball and check the comparison bounds.
    Svarc(SvarcArgs),
    /// Growth sequence, classification and domination certificates.
    Growth(GrowthArgs),
    /// Ends estimate from a ball.
    Ends(EndsArgs),
    /// Check a map between spaces against given constants.
    QiCheck(QiCheckArgs),
    /// Search for a quasi-isometry between small spaces.
    QiSearch(QiSearchArgs),
    /// Quasi-metricity constant and basepoints of a space.
    Quasimetric(SpaceArgs),
    /// Symmetrize a strongly connected space.
    Symmetrize(SymmetrizeArgs),
    /// Check the quotient map by a congruence.
    Quotient(QuotientArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Table,
    Dot,
}

#[derive(Debug, Args)]
pub struct MonoidArgs {
    /// Monoid description file, or `builtin:NAME`.
    #[arg(long)]
    pub monoid: String,
    /// Element cap for enumeration.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct BallArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long, default_value_t = 64)]
    pub radius: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    /// Base element (defaults to the identity).
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Table)]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long, default_value_t = 64)]
    pub radius: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    pub side: SideArg,
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
}

#[derive(Debug, Args)]
pub struct PosetArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long, default_value_t = 64)]
    pub radius: usize,
    /// Interior points sampled per edge.
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct SchutzArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    /// A member of the H-class (defaults to the identity).
    #[arg(long)]
    pub element: Option<String>,
    /// Work on the radius-R ball instead of enumerating the monoid.
    #[arg(long)]
    pub horizon: Option<usize>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Table)]
    pub format: GraphFormat,
}

#[derive(Debug, Args)]
pub struct ActArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long)]
    pub element: Option<String>,
    /// Largest out-ball radius for the properness check.
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Truncate at this radius (identity H-class only).
    #[arg(long)]
    pub horizon: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SvarcArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long)]
    pub element: Option<String>,
    /// Strong ball radius (defaults to the realized covering radius).
    #[arg(long)]
    pub rho: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long = "max", default_value_t = 16)]
    pub mmax: usize,
    /// Second monoid to compare growth with.
    #[arg(long)]
    pub compare: Option<String>,
    /// Window for the second monoid (defaults to --max).
    #[arg(long)]
    pub compare_max: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub lambda_max: u64,
    #[arg(long, default_value_t = 4)]
    pub c_max: u64,
}

#[derive(Debug, Args)]
pub struct EndsArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, default_value_t = 12)]
    pub radius: usize,
}

#[derive(Debug, Args)]
pub struct QiCheckArgs {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long, value_parser = parse_q)]
    pub lambda: Q,
    #[arg(long, value_parser = parse_q)]
    pub epsilon: Q,
    #[arg(long, value_parser = parse_q)]
    pub mu: Q,
}

#[derive(Debug, Args)]
pub struct QiSearchArgs {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub lambda_max: u32,
    #[arg(long, value_parser = parse_q, default_value = "4")]
    pub epsilon_max: Q,
    #[arg(long, value_parser = parse_q, default_value = "4")]
    pub mu_max: Q,
    /// Largest space size accepted by the search.
    #[arg(long, default_value_t = crate::geometry::DEFAULT_SEARCH_CAP)]
    pub max_points: usize,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long, value_parser = parse_q, default_value = "0")]
    pub epsilon: Q,
}

#[derive(Debug, Args)]
pub struct SymmetrizeArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Write the symmetrized space here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub monoid: MonoidArgs,
    /// Partition file; defaults to the first-projection kernel of a product.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Compare radius-R balls of a product and its first factor instead.
    #[arg(long, conflicts_with = "partition")]
    pub horizon: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// `Ok(true)` for a positive (or purely informational) result.
fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Ball(a) => ball(a, out),
        Command::Dist(a) => dist(a, out),
        Command::Poset(a) => poset(a, out),
        Command::Green(a) => green(a, out),
        Command::Schutz(a) => schutz(a, out),
        Command::Act(a) => act(a, out),
        Command::Svarc(a) => svarc(a, out),
        Command::Growth(a) => growth(a, out),
        Command::Ends(a) => ends(a, out),
        Command::QiCheck(a) => qi_check(a, out),
        Command::QiSearch(a) => qi_search(a, out),
        Command::Quasimetric(a) => quasimetric(a, out),
        Command::Symmetrize(a) => symmetrize_cmd(a, out),
        Command::Quotient(a) => quotient(a, out),
    }
}

pub fn load_monoid(source: &str) -> Result<Monoid, CliError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin::by_name(name).ok_or_else(|| CliError::Usage(format!("no built-in monoid named {name:?}")));
    }
    Ok(desc::load_monoid(Path::new(source))?)
}

fn element_or_identity(m: &Monoid, name: Option<&str>) -> Result<Element, CliError> {
    match name {
        Some(s) => Ok(m.parse_element(s)?),
        None => Ok(m.identity().clone()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(out: &mut dyn Write, ok: bool) -> Result<bool, CliError> {
    writeln!(out, "verdict: {}", if ok { "ok" } else { "fail" })?;
    Ok(ok)
}

fn write_graph(out: &mut dyn Write, g: &DigraphBall, format: GraphFormat) -> io::Result<()> {
    match format {
        GraphFormat::Dot => out.write_all(g.to_dot().as_bytes()),
        GraphFormat::Table => {
            writeln!(out, "index\telement\tlength\tcomplete\tout\tin")?;
            for (i, v) in g.vertices.iter().enumerate() {
                writeln!(
                    out,
                    "{i}\t{}\t{}\t{}\t{}\t{}",
                    g.name(i),
                    v.length,
                    yes_no(g.complete_within[i]),
                    g.out_degree(i),
                    g.in_degree(i)
                )?;
            }
            writeln!(out, "source\ttarget\tlabel")?;
            for e in &g.edges {
                writeln!(out, "{}\t{}\t{}", g.name(e.source), g.name(e.target), g.label(e))?;
            }
            Ok(())
        }
    }
}

fn ball(a: &BallArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let base = element_or_identity(&m, a.base.as_deref())?;
    let g = build_ball_from(&m, &base, a.side.into(), a.radius, a.monoid.cap)?;
    if a.format == GraphFormat::Table {
        writeln!(
            out,
            "# ball radius={} side={} base={} size={}",
            a.radius,
            Side::from(a.side).name(),
            m.render(&base),
            g.len()
        )?;
    }
    write_graph(out, &g, a.format)?;
    Ok(true)
}

fn dist(a: &DistArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let base = element_or_identity(&m, a.base.as_deref())?;
    let g = build_ball_from(&m, &base, a.side.into(), a.radius, a.monoid.cap)?;
    match (&a.from, &a.to) {
        (Some(u), Some(v)) => {
            let find = |s: &str| -> Result<usize, CliError> {
                let x = m.parse_element(s)?;
                g.position_of(&x)
                    .ok_or_else(|| CliError::Usage(format!("{} is outside the radius-{} ball", m.render(&x), a.radius)))
            };
            let (u, v) = (find(u)?, find(v)?);
            writeln!(out, "{}\t{}\t{}", g.name(u), g.name(v), g.graph_distance(u, v))?;
        }
        _ => out.write_all(g.distance_dump().as_bytes())?,
    }
    Ok(true)
}

fn poset(a: &PosetArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let g = build_ball_from(&m, m.identity(), Side::Right, a.radius, a.monoid.cap)?;
    let comps = g.strongly_connected_components();
    writeln!(out, "# components radius={}", a.radius)?;
    writeln!(out, "component\tverified\tmembers")?;
    for (i, c) in comps.components.iter().enumerate() {
        let names: Vec<&str> = c.iter().map(|&v| g.name(v)).collect();
        writeln!(out, "{i}\t{}\t{}", yes_no(comps.verified[i]), names.join(" "))?;
    }
    let cmp = component_comparability(&g, a.samples);
    let inc = cmp.pairs_with(Relation::Incomparable);
    let unknown = cmp.pairs_with(Relation::Unknown);
    writeln!(out, "points: {}", cmp.points.len())?;
    writeln!(out, "incomparable pairs: {}", inc.len())?;
    writeln!(out, "unknown pairs: {}", unknown.len())?;
    for (i, j) in inc {
        writeln!(out, "incomparable\t{}\t{}", g.point_name(cmp.points[i]), g.point_name(cmp.points[j]))?;
    }
    Ok(true)
}

fn finite(m: &Monoid, cap: usize) -> Result<FiniteMonoid, CliError> {
    Ok(FiniteMonoid::new(m, cap)?)
}

fn class_names(fm: &FiniteMonoid, class: &[usize]) -> String {
    let names: Vec<String> = class.iter().map(|&i| fm.name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

fn green(a: &MonoidArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid)?;
    let fm = finite(&m, a.cap)?;
    let g = green_relations(&fm);
    writeln!(out, "elements: {}", fm.len())?;
    writeln!(out, "R-classes: {}", g.r_classes.len())?;
    writeln!(out, "L-classes: {}", g.l_classes.len())?;
    writeln!(out, "H-classes: {}", g.h_classes.len())?;
    for (tag, classes) in [("R", &g.r_classes), ("L", &g.l_classes), ("H", &g.h_classes)] {
        for (i, c) in classes.iter().enumerate() {
            writeln!(out, "{tag}{i}\t{}", class_names(&fm, c))?;
        }
    }
    for (i, j) in &g.r_order {
        writeln!(out, "R{i} < R{j}")?;
    }
    Ok(true)
}

fn h_class_of(
    fm: &FiniteMonoid,
    m: &Monoid,
    element: Option<&str>,
) -> Result<(crate::green::GreenStructure, usize), CliError> {
    let x = element_or_identity(m, element)?;
    let i = fm.index_of(&x).ok_or_else(|| CliError::Usage("element not found".into()))?;
    let g = green_relations(fm);
    let h = g.h_of[i];
    Ok((g, h))
}

fn schutz(a: &SchutzArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    if let Some(r) = a.horizon {
        let h = element_or_identity(&m, a.element.as_deref())?;
        let g = schutzenberger_graph_ball(&m, &h, r, a.monoid.cap)?;
        if a.format == GraphFormat::Table {
            writeln!(out, "# schutzenberger graph of {} horizon={r} vertices={}", m.render(&h), g.len())?;
        }
        write_graph(out, &g, a.format)?;
        if a.format == GraphFormat::Table && &h == m.identity() {
            let units = units_within(&m, r, a.monoid.cap)?;
            let names: Vec<String> = units.iter().map(|u| m.render(u)).collect();
            writeln!(out, "units within horizon: {} ({})", units.len(), names.join(", "))?;
        }
        return Ok(true);
    }
    let fm = finite(&m, a.monoid.cap)?;
    let (g, h) = h_class_of(&fm, &m, a.element.as_deref())?;
    let group = schutzenberger_group(&fm, &g, &g.h_classes[h])?;
    let graph = schutzenberger_graph_ball(&m, fm.element(group.h_class[0]), fm.len(), a.monoid.cap)?;
    if a.format == GraphFormat::Dot {
        out.write_all(graph.to_dot().as_bytes())?;
        return Ok(true);
    }
    writeln!(out, "# schutzenberger graph of H{h} vertices={}", graph.len())?;
    write_graph(out, &graph, GraphFormat::Table)?;
    writeln!(out, "H-class: {}", class_names(&fm, &group.h_class))?;
    writeln!(out, "group order: {}", group.order())?;
    for (k, p) in group.perms.iter().enumerate() {
        let images: Vec<String> = p.iter().map(|&i| fm.name(group.h_class[i])).collect();
        writeln!(out, "g{k}\trep={}\t{}", fm.name(group.representatives[k]), images.join(" "))?;
    }
    writeln!(out, "table")?;
    for row in &group.table {
        let cells: Vec<String> = row.iter().map(|c| format!("g{c}")).collect();
        writeln!(out, "{}", cells.join("\t"))?;
    }
    Ok(true)
}

fn build_action(
    m: &Monoid,
    element: Option<&str>,
    horizon: Option<usize>,
    cap: usize,
) -> Result<SchutzAction, CliError> {
    if let Some(r) = horizon {
        if element.is_some() && element_or_identity(m, element)? != *m.identity() {
            return Err(CliError::Usage("truncated mode supports only the identity's H-class".into()));
        }
        return Ok(SchutzAction::truncated(m, r, cap)?);
    }
    let fm = finite(m, cap)?;
    let (g, h) = h_class_of(&fm, m, element)?;
    let group = schutzenberger_group(&fm, &g, &g.h_classes[h])?;
    Ok(SchutzAction::exact(&fm, &group, cap)?)
}

fn act(a: &ActArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let action = build_action(&m, a.element.as_deref(), a.horizon, a.monoid.cap)?;
    let radius = a.horizon.unwrap_or(a.radius);
    let r = check_schutz_action(&action, radius);
    writeln!(out, "group order: {}", r.group_order)?;
    writeln!(out, "vertices: {}", r.vertices)?;
    match r.horizon {
        Some(h) => writeln!(out, "horizon: {h}")?,
        None => writeln!(out, "horizon: exact")?,
    }
    writeln!(out, "isometric: {}", yes_no(r.isometric))?;
    if let Some((g, x, y)) = r.isometry_counterexample {
        writeln!(
            out,
            "isometry counterexample: g={} x={} y={}",
            action.group_names[g],
            action.graph.name(x),
            action.graph.name(y)
        )?;
    }
    writeln!(out, "undecided pairs: {}", r.isometry_undecided)?;
    writeln!(out, "radius\tball\ttranslates meeting ball")?;
    for (rho, b, c) in &r.proper_counts {
        writeln!(out, "{rho}\t{b}\t{c}")?;
    }
    writeln!(out, "outward proper: {}", yes_no(r.outward_proper))?;
    match r.cocompact {
        Ok(l) => writeln!(out, "cocompact: yes (covering radius {l})")?,
        Err(l) => writeln!(out, "cocompact: no (no covering radius below {l})")?,
    }
    match r.realized_covering_radius {
        Some(rho) => writeln!(out, "realized covering radius: {rho}")?,
        None => writeln!(out, "realized covering radius: not found")?,
    }
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    verdict(out, r.isometric && r.outward_proper && r.cocompact.is_ok())
}

fn svarc(a: &SvarcArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let action = build_action(&m, a.element.as_deref(), None, a.monoid.cap)?;
    let rho = match a.rho {
        Some(r) => r,
        None => check_schutz_action(&action, 1)
            .realized_covering_radius
            .ok_or_else(|| CliError::Usage("no realized covering radius; pass --rho".into()))?,
    };
    let report = match svarc_milnor_generators(&action, rho) {
        Ok(r) => r,
        Err(GreenError::NotGenerating { unreachable }) => {
            writeln!(out, "rho: {rho}")?;
            writeln!(out, "generating: no")?;
            writeln!(out, "unreachable: {}", unreachable.join(" "))?;
            return verdict(out, false);
        }
        Err(e) => return Err(e.into()),
    };
    let names = |gs: &[usize]| gs.iter().map(|&g| action.group_names[g].clone()).collect::<Vec<_>>().join(" ");
    writeln!(out, "rho: {rho}")?;
    writeln!(
        out,
        "ball: {}",
        report.ball.iter().map(|&v| action.graph.name(v).to_string()).collect::<Vec<_>>().join(" ")
    )?;
    writeln!(out, "S: {}", names(&report.generators))?;
    writeln!(out, "generating: yes")?;
    writeln!(out, "lambda: {}", Dist::Finite(report.lambda))?;
    writeln!(out, "g\td_S(e,g)\td(x0,gx0)")?;
    for (g, ds, dx) in &report.rows {
        writeln!(out, "{}\t{ds}\t{}", action.group_names[*g], Dist::Finite(*dx))?;
    }
    writeln!(out, "d_S(e,g) <= d(x0,gx0) + 1: {}", yes_no(report.word_bound))?;
    writeln!(out, "d(x0,gx0) <= lambda d_S(e,g): {}", yes_no(report.distance_bound))?;
    verdict(out, report.word_bound && report.distance_bound)
}

fn growth(a: &GrowthArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    let g = growth_sequence(&m, a.mmax, a.monoid.cap)?;
    writeln!(out, "# growth of {}", g.label)?;
    writeln!(out, "m\tg(m)")?;
    for (i, v) in g.values.iter().enumerate() {
        writeln!(out, "{i}\t{v}")?;
    }
    writeln!(out, "class: {}", classify_growth(&g.values))?;
    let Some(other) = &a.compare else { return Ok(true) };
    let m2 = load_monoid(other)?;
    let window2 = a.compare_max.unwrap_or(a.mmax);
    let g2 = growth_sequence(&m2, window2, a.monoid.cap)?;
    let mut ok = true;
    let windows = format!("windows {} and {window2}", a.mmax);
    for (tag, x, y) in [("first <= second", &g.values, &g2.values), ("second <= first", &g2.values, &g.values)] {
        match dominates_within(x, y, a.lambda_max, a.c_max) {
            Domination::Witness { lambda, c, checked } => {
                writeln!(out, "{tag}: witness lambda={lambda} C={c} (checked {checked} values, {windows})")?
            }
            Domination::NoneWithinBounds => {
                ok = false;
                writeln!(out, "{tag}: none within bounds lambda<={} C<={} ({windows})", a.lambda_max, a.c_max)?
            }
        }
    }
    verdict(out, ok)
}

fn ends(a: &EndsArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    if a.kmax >= a.radius {
        return Err(CliError::Usage("--kmax must be below --radius".into()));
    }
    let m = load_monoid(&a.monoid.monoid)?;
    let p = ends_profile(&m, a.kmax, a.radius, a.monoid.cap)?;
    writeln!(out, "# ends estimate, outer radius {} (estimate from a truncated ball)", p.radius)?;
    writeln!(out, "k\te(k,r)\te(k,r-1)")?;
    for (i, k) in p.ks.iter().enumerate() {
        writeln!(out, "{k}\t{}\t{}", p.counts[i], p.previous[i])?;
    }
    writeln!(out, "verdict: {}", p.verdict)?;
    Ok(true)
}

fn load_space(p: &Path) -> Result<FiniteSemimetricSpace, CliError> {
    Ok(desc::load_space(p)?)
}

fn bound_name(b: Bound) -> &'static str {
    match b {
        Bound::Lower => "lower",
        Bound::Upper => "upper",
    }
}

fn write_failure(
    out: &mut dyn Write,
    f: &QiFailure,
    x: &FiniteSemimetricSpace,
    y: &FiniteSemimetricSpace,
) -> io::Result<()> {
    match f {
        QiFailure::Embedding(v) => {
            writeln!(out, "violation: {} bound at ({}, {})", bound_name(v.bound), x.names()[v.x], x.names()[v.y])
        }
        QiFailure::Density { y: p, needed } => {
            writeln!(out, "violation: density at {} needs mu={}", y.names()[*p], needed)
        }
    }
}

fn qi_check(a: &QiCheckArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let x = load_space(&a.source)?;
    let y = load_space(&a.target)?;
    let f = desc::load_map(&a.map, &x, &y)?;
    if a.lambda < Q::from_integer(1) || a.epsilon < Q::from_integer(0) || a.mu < Q::from_integer(0) {
        return Err(CliError::Usage("need lambda >= 1, epsilon >= 0, mu >= 0".into()));
    }
    let c = QiConstants::new(a.lambda, a.epsilon, a.mu);
    writeln!(out, "constants: {c}")?;
    writeln!(out, "density: {}", quasi_density(&f, &x, &y))?;
    let res = check_quasi_isometry(&f, &x, &y, &c);
    if let Err(fail) = &res {
        write_failure(out, fail, &x, &y)?;
    }
    verdict(out, res.is_ok())
}

fn qi_search(a: &QiSearchArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let x = load_space(&a.source)?;
    let y = load_space(&a.target)?;
    let bounds =
        SearchBounds { lambda_max: a.lambda_max, epsilon_max: a.epsilon_max, mu_max: a.mu_max, cap: a.max_points };
    match search_quasi_isometry(&x, &y, &bounds)? {
        SearchOutcome::Found { map, constants, isometric_grade } => {
            writeln!(out, "map: {}", desc::map_to_json(&map, &y))?;
            writeln!(out, "constants: {constants}")?;
            writeln!(out, "isometric grade: {}", yes_no(isometric_grade))?;
            verdict(out, true)
        }
        SearchOutcome::NoneWithinBounds => {
            writeln!(
                out,
                "none within bounds lambda<={} epsilon<={} mu<={}",
                a.lambda_max,
                Dist::Finite(a.epsilon_max),
                Dist::Finite(a.mu_max)
            )?;
            verdict(out, false)
        }
    }
}

fn quasimetric(a: &SpaceArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let x = load_space(&a.space)?;
    let bp: Vec<&str> = x.basepoints().into_iter().map(|i| x.names()[i].as_str()).collect();
    writeln!(out, "points: {}", x.len())?;
    writeln!(out, "basepoints: {}", bp.join(" "))?;
    match x.quasi_metricity_constant(a.epsilon) {
        Ok(l) => {
            writeln!(out, "epsilon: {}", Dist::Finite(a.epsilon))?;
            writeln!(out, "lambda: {}", Dist::Finite(l))?;
            verdict(out, true)
        }
        Err(SpaceError::NotStronglyConnected { x: p, y: q }) => {
            writeln!(out, "not strongly connected: d({p}, {q}) = inf")?;
            verdict(out, false)
        }
        Err(e) => Err(e.into()),
    }
}

fn symmetrize_cmd(a: &SymmetrizeArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let x = load_space(&a.space.space)?;
    let s = symmetrize(&x, a.space.epsilon)?;
    let id = PointMap::identity(x.len());
    let forward = check_quasi_isometry(&id, &x, &s.space, &s.forward).is_ok();
    let back = QiConstants::new(s.forward.lambda, s.epsilon, Q::from_integer(0));
    let backward = check_quasi_isometry(&id, &s.space, &x, &back).is_ok();
    let (bl, be) = s.backward;
    let quasi = check_qi_embedding(&id, &x, &x, Q::from_integer(1), Q::from_integer(0)).is_ok()
        && x.quasi_metricity_constant(be).map(|l| l <= bl).unwrap_or(false);
    let json = desc::space_to_json(&s.space);
    writeln!(out, "lambda: {}", Dist::Finite(s.lambda))?;
    writeln!(out, "forward: {}", s.forward)?;
    writeln!(out, "metric: {}", yes_no(s.space.is_metric()))?;
    writeln!(out, "identity X -> X': {}", yes_no(forward))?;
    writeln!(out, "identity X' -> X: {}", yes_no(backward))?;
    writeln!(out, "backward quasi-metricity ({}, {}): {}", Dist::Finite(bl), Dist::Finite(be), yes_no(quasi))?;
    match &a.output {
        Some(p) => std::fs::write(p, json)?,
        None => out.write_all(json.as_bytes())?,
    }
    verdict(out, forward && backward && quasi && s.space.is_metric())
}

fn write_quotient(out: &mut dyn Write, r: &QuotientReport) -> Result<bool, CliError> {
    writeln!(out, "elements: {}", r.source_size)?;
    writeln!(out, "classes: {}", r.quotient_size)?;
    writeln!(out, "R: {}", r.diameter)?;
    if let Some(c) = &r.constants {
        writeln!(out, "constants: {c}")?;
    }
    if let Some(h) = r.horizon {
        writeln!(out, "horizon: {h}")?;
    }
    if let Err(f) = &r.verdict {
        write_failure(out, f, &r.source, &r.target)?;
    }
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    verdict(out, r.is_ok())
}

fn quotient(a: &QuotientArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let m = load_monoid(&a.monoid.monoid)?;
    if let Some(r) = a.horizon {
        return write_quotient(out, &check_projection_qi(&m, r, a.monoid.cap)?);
    }
    let eta = match &a.partition {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            desc::parse_partition(&text, &p.display().to_string(), &m)?
        }
        None => crate::geometry::projection_kernel(&m, a.monoid.cap)?,
    };
    write_quotient(out, &check_quotient_qi(&m, &eta, a.monoid.cap)?)
}
