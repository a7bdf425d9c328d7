use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spanmack::biset::{biset_compose, double_burnside_table, phi, span_of_biset, DoubleBurnsideBasis};
use spanmack::burnside::{omega_pull, omega_push, BurnsideBasis};
use spanmack::cell::{bipullback, ZeroCell};
use spanmack::config::Config;
use spanmack::derivator::{base_change, comma_square, left_kan};
use spanmack::factorization::sim_factorize;
use spanmack::group::{find_isomorphism, subgroup_group, subgroup_lattice, Group};
use spanmack::groupoid::el;
use spanmack::io;
use spanmack::linalg::Matrix;
use spanmack::mackey::{
    evaluate_span, is_deflative, multiplication_functional, tensor_truncated, validate_green, Burnside, BurnsideGreen,
    Cardinality, GroupUniverse, MackeyFunctor, MackeyPresentation, TruncationWindow,
};
use spanmack::report::run_all;
use spanmack::span::{compose_spans, double_coset_oracle, lift_r, lift_t, spans_isomorphic, SpanLinComb};
use spanmack::Error;

#[derive(Parser)]
#[command(name = "spanmack", version, about = "Exact computations with spans, Burnside and Mackey functors, and bisets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// 0-, 1- and 2-cells of the bicategory of group actions
    #[command(subcommand)]
    Cell(CellCmd),
    /// Stabilizerwise-image factorization
    #[command(subcommand)]
    Factor(FactorCmd),
    /// Spans and their composition
    #[command(subcommand)]
    Span(SpanCmd),
    /// The Burnside functor Ω
    #[command(subcommand)]
    Burnside(BurnsideCmd),
    /// Mackey functors on presentations
    #[command(subcommand)]
    Mackey(MackeyCmd),
    /// Bisets, double Burnside rings and biset functors
    #[command(subcommand)]
    Biset(BisetCmd),
    /// Represented prederivator on finite groupoids
    #[command(subcommand)]
    Deriv(DerivCmd),
    /// Run the acceptance checks
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Subcommand)]
enum CellCmd {
    /// Validate a 1-cell
    Check {
        #[arg(long)]
        cell: PathBuf,
    },
    /// second∘first
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// Bipullback of a cospan
    Pullback {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// The groupoid of elements of a 0-cell
    El {
        #[arg(long)]
        zerocell: PathBuf,
    },
}

#[derive(Subcommand)]
enum FactorCmd {
    Sim {
        #[arg(long)]
        cell: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpanCmd {
    /// second∘first, decomposed into transitive spans
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    Iso {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// res∘ind against the double coset formula
    DcCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
}

#[derive(Subcommand)]
enum BurnsideCmd {
    Table {
        #[arg(long)]
        group: String,
        /// A 0-cell over the group; the point by default
        #[arg(long)]
        gset: Option<PathBuf>,
    },
    Maps {
        #[arg(long)]
        cell: PathBuf,
    },
}

#[derive(Args)]
struct MackeyArg {
    /// "omega", "cardinality" or a presentation file
    #[arg(long, default_value = "omega")]
    mackey: String,
}

#[derive(Args)]
struct UniverseArg {
    /// Groups generating the universe
    #[arg(long, value_delimiter = ',', default_value = "C2,C3,S3")]
    groups: Vec<String>,
}

#[derive(Subcommand)]
enum MackeyCmd {
    /// M on a span
    Eval {
        #[command(flatten)]
        m: MackeyArg,
        #[arg(long)]
        span: PathBuf,
    },
    Deflative {
        #[command(flatten)]
        m: MackeyArg,
        #[command(flatten)]
        u: UniverseArg,
    },
    /// Truncated coend M⊗N at pt/G
    Tensor {
        #[command(flatten)]
        m: MackeyArg,
        #[arg(long, default_value = "omega")]
        other: String,
        #[arg(long, default_value = "e")]
        group: String,
        /// max group order, max set size, max depth
        #[arg(long, value_delimiter = ',', default_value = "6,6,1")]
        window: Vec<usize>,
    },
    /// Green functor axioms for Ω
    GreenCheck {
        #[command(flatten)]
        u: UniverseArg,
    },
    /// Tabulate M as a presentation
    Tabulate {
        #[command(flatten)]
        m: MackeyArg,
        #[command(flatten)]
        u: UniverseArg,
    },
}

#[derive(Subcommand)]
enum BisetCmd {
    /// second ×_H first
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    ToSpan {
        #[arg(long)]
        biset: PathBuf,
    },
    /// Multiplication table of B(G,G)
    DoubleBurnside {
        #[arg(long)]
        group: String,
    },
    /// The biset functor of a deflative Mackey functor
    Phi {
        #[command(flatten)]
        m: MackeyArg,
        #[command(flatten)]
        u: UniverseArg,
        #[arg(long, default_value_t = 36)]
        max_product_order: usize,
    },
}

#[derive(Subcommand)]
enum DerivCmd {
    /// Left Kan extension u_! D
    Kan {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Base change for the comma square of a cospan
    BaseChange {
        #[arg(long)]
        square: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Every acceptance check
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplier for sample counts
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write report.json and report.txt here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Malformed input, exit 2.
    Input(Error),
    /// Failed computation, exit 1.
    Run(Error),
}

/// Output and whether every check in it passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn json(v: Value, passed: bool) -> Self {
        Outcome { text: serde_json::to_string_pretty(&v).expect("serializable") + "\n", passed }
    }
}

fn input<T>(r: spanmack::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Input)
}

fn run<T>(r: spanmack::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::Run)
}

fn path(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

/// A catalog name or a JSON group file.
fn load_group(s: &str) -> Result<Group, Failure> {
    if Path::new(s).is_file() {
        input(io::read_file(s).and_then(|g| io::group(&g)))
    } else {
        input(io::group(&io::GroupSpec::Name(s.into())))
    }
}

fn load_mackey(s: &str) -> Result<Arc<dyn MackeyFunctor>, Failure> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "omega" | "burnside" => Arc::new(Burnside),
        "cardinality" => Arc::new(Cardinality),
        _ => {
            let v: Value = input(io::read_file(s))?;
            let p = input(MackeyPresentation::from_json(&v))?;
            let problems = input(p.validate())?;
            if !problems.is_empty() {
                return Err(Failure::Input(Error::InvalidPresentation(problems.join("; "))));
            }
            Arc::new(p)
        }
    })
}

fn universe(u: &UniverseArg) -> Result<GroupUniverse, Failure> {
    let groups = u.groups.iter().map(|g| load_group(g)).collect::<Result<Vec<_>, _>>()?;
    run(GroupUniverse::generated_by(&groups))
}

fn matrix(m: &Matrix) -> Value {
    io::matrix_json(m)
}

fn cell_cmd(c: &CellCmd) -> Result<Outcome, Failure> {
    match c {
        CellCmd::Check { cell } => {
            let spec: io::OneCellSpec = input(io::read_file(&path(cell)))?;
            match io::onecell(&spec) {
                Ok(a) => Ok(Outcome::json(json!({ "valid": true, "equivariant": a.is_equivariant() }), true)),
                Err(e @ Error::Parse(_)) => Err(Failure::Input(e)),
                Err(e) => Ok(Outcome::json(json!({ "valid": false, "reason": e.to_string() }), false)),
            }
        }
        CellCmd::Compose { first, second } => {
            let a = input(io::read_file(&path(first)).and_then(|s| io::onecell(&s)))?;
            let b = input(io::read_file(&path(second)).and_then(|s| io::onecell(&s)))?;
            let c = input(b.compose(&a))?;
            Ok(Outcome::json(serde_json::to_value(io::onecell_spec(&c)).expect("serializable"), true))
        }
        CellCmd::Pullback { left, right } => {
            let a = input(io::read_file(&path(left)).and_then(|s| io::onecell(&s)))?;
            let b = input(io::read_file(&path(right)).and_then(|s| io::onecell(&s)))?;
            let p = input(bipullback(&a, &b))?;
            Ok(Outcome::json(
                json!({
                    "apex": io::zerocell_spec(&p.apex),
                    "triples": p.triples,
                    "proj_left": io::onecell_spec(&p.proj_left),
                    "proj_right": io::onecell_spec(&p.proj_right),
                    "kappa": p.kappa.eps,
                }),
                true,
            ))
        }
        CellCmd::El { zerocell } => {
            let x = input(io::read_file(&path(zerocell)).and_then(|s| io::zerocell(&s)))?;
            let gp = el(&x);
            let morphisms: Vec<(usize, usize)> = (0..gp.morphisms()).map(|f| (gp.src(f), gp.dst(f))).collect();
            Ok(Outcome::json(
                json!({
                    "objects": gp.objects(),
                    "morphisms": morphisms,
                    "identities": (0..gp.objects()).map(|a| gp.id(a)).collect::<Vec<_>>(),
                    "components": gp.components(),
                }),
                true,
            ))
        }
    }
}

fn factor_cmd(c: &FactorCmd) -> Result<Outcome, Failure> {
    let FactorCmd::Sim { cell } = c;
    let a = input(io::read_file(&path(cell)).and_then(|s| io::onecell(&s)))?;
    let f = sim_factorize(&a);
    Ok(Outcome::json(
        json!({
            "sim_size": f.sim.size(),
            "sim": io::zerocell_spec(&f.sim),
            "upsilon": io::onecell_spec(&f.upsilon),
            "alpha_tilde": io::onecell_spec(&f.alpha_tilde),
            "labels": f.labels,
        }),
        true,
    ))
}

fn span_cmd(c: &SpanCmd) -> Result<Outcome, Failure> {
    let load = |p: &PathBuf| input(io::read_file(&path(p)).and_then(|s| io::span(&s)));
    match c {
        SpanCmd::Compose { first, second } => {
            let (s, t) = (load(first)?, load(second)?);
            let c = input(compose_spans(&t, &s))?;
            Ok(Outcome::json(io::lincomb_json(&c.decompose()), true))
        }
        SpanCmd::Iso { first, second } => {
            let (s, t) = (load(first)?, load(second)?);
            let iso = spans_isomorphic(&s, &t);
            let found = iso.is_some();
            Ok(Outcome::json(json!({ "isomorphic": found, "iso": iso.map(|i| io::onecell_spec(&i)) }), found))
        }
        SpanCmd::DcCheck { group, subgroup } => {
            let g = load_group(group)?;
            let h = load_group(subgroup)?;
            let lattice = run(subgroup_lattice(&g))?;
            let sub = (0..lattice.num_classes())
                .map(|c| lattice.class_rep(c).to_vec())
                .find(|s| s.len() == h.order() && find_isomorphism(&subgroup_group(&g, s).0, &h).is_some())
                .ok_or_else(|| Failure::Input(Error::InvalidGroup(format!("{} has no subgroup isomorphic to {}", g.label(), h.label()))))?;
            let (_, incl) = subgroup_group(&g, &sub);
            let iota = spanmack::cell::OneCell::from_hom(&incl);
            let composite = run(lift_r(&iota).compose(&lift_t(&iota)))?;
            let (oracle, reps) = double_coset_oracle(&g, &sub);
            let ok = composite.equals(&oracle);
            Ok(Outcome::json(
                json!({
                    "subgroup": sub,
                    "double_coset_reps": reps,
                    "terms": oracle.num_terms(),
                    "res_ind": io::lincomb_json(&composite),
                    "agrees": ok,
                }),
                ok,
            ))
        }
    }
}

fn burnside_cmd(c: &BurnsideCmd) -> Result<Outcome, Failure> {
    match c {
        BurnsideCmd::Table { group, gset } => {
            let g = load_group(group)?;
            let x = match gset {
                Some(p) => input(io::read_file(&path(p)).and_then(|s| io::zerocell(&s)))?,
                None => ZeroCell::pt(&g),
            };
            if !spanmack::group::same_group(x.group(), &g) {
                return Err(Failure::Input(Error::GroupMismatch("the G-set is over another group".into())));
            }
            let b = run(BurnsideBasis::of(&x))?;
            let n = b.rank();
            let table: Vec<Vec<Vec<String>>> =
                (0..n).map(|i| (0..n).map(|j| b.mul_basis(i, j).iter().map(|c| c.to_string()).collect()).collect()).collect();
            Ok(Outcome::json(json!({ "basis": (0..n).map(|i| b.label(i)).collect::<Vec<_>>(), "table": table }), true))
        }
        BurnsideCmd::Maps { cell } => {
            let a = input(io::read_file(&path(cell)).and_then(|s| io::onecell(&s)))?;
            let (bx, by) = (run(BurnsideBasis::of(&a.src))?, run(BurnsideBasis::of(&a.dst))?);
            Ok(Outcome::json(
                json!({
                    "source_basis": (0..bx.rank()).map(|i| bx.label(i)).collect::<Vec<_>>(),
                    "target_basis": (0..by.rank()).map(|i| by.label(i)).collect::<Vec<_>>(),
                    "push": matrix(&run(omega_push(&a))?),
                    "pull": matrix(&run(omega_pull(&a))?),
                }),
                true,
            ))
        }
    }
}

fn mackey_cmd(c: &MackeyCmd) -> Result<Outcome, Failure> {
    match c {
        MackeyCmd::Eval { m, span } => {
            let m = load_mackey(&m.mackey)?;
            let s = input(io::read_file(&path(span)).and_then(|s| io::span(&s)))?;
            let v = run(evaluate_span(m.as_ref(), &SpanLinComb::from_span(&s)))?;
            Ok(Outcome::json(json!({ "mackey": m.label(), "matrix": matrix(&v) }), true))
        }
        MackeyCmd::Deflative { m, u } => {
            let m = load_mackey(&m.mackey)?;
            let r = run(is_deflative(m.as_ref(), &universe(u)?))?;
            let witness = r.witness.as_ref().map(|w| {
                json!({ "group": w.group, "quotient": w.quotient, "kernel_order": w.kernel_order, "defect": matrix(&w.defect) })
            });
            Ok(Outcome::json(json!({ "deflative": r.deflative, "checked": r.checked, "witness": witness }), r.deflative))
        }
        MackeyCmd::Tensor { m, other, group, window } => {
            let (mm, nn) = (load_mackey(&m.mackey)?, load_mackey(other)?);
            let [o, s, d] = window[..] else {
                return Err(Failure::Input(Error::Parse("--window takes three numbers".into())));
            };
            let w = input(TruncationWindow::new(o, s, d))?;
            let x = ZeroCell::pt(&load_group(group)?);
            let t = run(tensor_truncated(mm.as_ref(), nn.as_ref(), &x, w))?;
            let l = run(multiplication_functional(&t, nn.as_ref()))?;
            let killed = t.dense_relations().iter().all(|r| l.apply(r).iter().all(|c| *c == 0.into()));
            Ok(Outcome::json(
                json!({
                    "objects": t.objects.len(),
                    "total_dim": t.total_dim,
                    "relations": t.relations.len(),
                    "relation_rank": t.relation_rank(),
                    "quotient_rank": t.quotient_rank(),
                    "multiplication_annihilates_relations": killed,
                }),
                killed,
            ))
        }
        MackeyCmd::GreenCheck { u } => {
            let groups = u.groups.iter().map(|g| load_group(g)).collect::<Result<Vec<_>, _>>()?;
            let r = run(validate_green(&BurnsideGreen::standard(), &groups))?;
            Ok(Outcome::json(json!({ "passed": r.passed(), "failures": r.failures() }), r.passed()))
        }
        MackeyCmd::Tabulate { m, u } => {
            let m = load_mackey(&m.mackey)?;
            let p = run(MackeyPresentation::tabulate(m.as_ref(), Arc::new(universe(u)?)))?;
            Ok(Outcome::json(p.to_json(), true))
        }
    }
}

fn biset_cmd(c: &BisetCmd) -> Result<Outcome, Failure> {
    let load = |p: &PathBuf| input(io::read_file(&path(p)).and_then(|s| io::biset(&s)));
    match c {
        BisetCmd::Compose { first, second } => {
            let (u, v) = (load(first)?, load(second)?);
            let w = input(biset_compose(&v, &u))?;
            Ok(Outcome::json(serde_json::to_value(io::biset_spec(&w)).expect("serializable"), true))
        }
        BisetCmd::ToSpan { biset } => {
            let s = span_of_biset(&load(biset)?);
            Ok(Outcome::json(serde_json::to_value(io::span_spec(&s)).expect("serializable"), true))
        }
        BisetCmd::DoubleBurnside { group } => {
            let g = load_group(group)?;
            let (basis, table) = run(double_burnside_table(&g))?;
            Ok(Outcome::json(double_burnside_json(&basis, &table), true))
        }
        BisetCmd::Phi { m, u, max_product_order } => {
            let m = load_mackey(&m.mackey)?;
            let t = run(phi(m.as_ref(), &universe(u)?, *max_product_order))?;
            let actions: Vec<Value> = t
                .actions
                .iter()
                .map(|(h, g, label, a)| json!({ "left": t.groups[*h], "right": t.groups[*g], "biset": label, "matrix": matrix(a) }))
                .collect();
            Ok(Outcome::json(json!({ "groups": t.groups, "ranks": t.ranks, "actions": actions }), true))
        }
    }
}

fn double_burnside_json(basis: &DoubleBurnsideBasis, table: &[Vec<spanmack::biset::DoubleBurnsideElement>]) -> Value {
    let rows: Vec<Vec<Vec<String>>> =
        table.iter().map(|r| r.iter().map(|e| e.coeffs.iter().map(|c| c.to_string()).collect()).collect()).collect();
    json!({ "basis": (0..basis.rank()).map(|i| basis.label(i)).collect::<Vec<_>>(), "table": rows })
}

fn deriv_cmd(c: &DerivCmd) -> Result<Outcome, Failure> {
    match c {
        DerivCmd::Kan { functor, diagram } => {
            let u = input(io::read_file(&path(functor)).and_then(|s| io::functor(&s)))?;
            let spec: io::DiagramSpec = input(io::read_file(&path(diagram)))?;
            let d = input(io::diagram(&u.src, &spec))?;
            let k = run(left_kan(&u, &d))?;
            Ok(Outcome::json(
                json!({ "diagram": io::diagram_spec(&k.diagram), "unit": k.unit, "representatives": k.reps }),
                true,
            ))
        }
        DerivCmd::BaseChange { square } => {
            let spec: io::SquareSpec = input(io::read_file(&path(square)))?;
            let (a, b) = (input(io::functor(&spec.left))?, input(io::functor(&spec.right))?);
            let sq = input(comma_square(&a, &b))?;
            let d = input(io::diagram(&a.src, &spec.diagram))?;
            let r = run(base_change(&sq, &d))?;
            Ok(Outcome::json(
                json!({
                    "comma_objects": sq.objects.len(),
                    "lhs": io::diagram_spec(&r.lhs),
                    "rhs": io::diagram_spec(&r.rhs),
                    "mate": r.mate,
                    "mate_well_defined": r.mate_well_defined,
                    "mate_is_iso": r.mate_is_iso,
                    "iso_exists": r.iso_exists,
                    "holds": r.holds(),
                }),
                r.holds(),
            ))
        }
    }
}

fn report_cmd(c: &ReportCmd) -> Result<Outcome, Failure> {
    let ReportCmd::All { seed, samples, format, out } = c;
    let config = Config { seed: *seed, samples: *samples, ..Config::default() };
    let report = run(run_all(&config))?;
    if let Some(dir) = out {
        let write = |name: &str, text: String| {
            std::fs::write(dir.join(name), text).map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", path(dir)))))
        };
        write("report.json", report.to_json())?;
        write("report.txt", report.to_text())?;
    }
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    Ok(Outcome { text, passed: report.passed() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cell(c) => cell_cmd(c),
        Command::Factor(c) => factor_cmd(c),
        Command::Span(c) => span_cmd(c),
        Command::Burnside(c) => burnside_cmd(c),
        Command::Mackey(c) => mackey_cmd(c),
        Command::Biset(c) => biset_cmd(c),
        Command::Deriv(c) => deriv_cmd(c),
        Command::Report(c) => report_cmd(c),
    };
    match result {
        Ok(o) => {
            print!("{}", o.text);
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
