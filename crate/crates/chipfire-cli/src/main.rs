use std::path::PathBuf;
use std::process::ExitCode;

use chipfire::arithmetical::{euclidean_star, gmax_bound_check};
use chipfire::io::{parse_divisor, GraphFile, LoadedGraph};
use chipfire::rank::enumerate_extremes;
use chipfire::reduction::{dhar, is_effective_class, is_reduced, reduce};
use chipfire::riemann_roch::{rational_string, rr_formula_check, rr_verdict, Point};
use chipfire::{oracle, sandpile, Error, ExtremeClassSet, Game, Ranker, RRReport, Side, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chipfire", version, about = "Chip-firing, reduced divisors and Riemann-Roch checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameKind {
    Row,
    Column,
    Chip,
}

#[derive(Args)]
struct Common {
    /// Graph JSON file
    graph: PathBuf,
    /// Base vertex v0
    #[arg(long, default_value_t = 0)]
    base: usize,
    /// Game to play: row or column on a digraph; chip (default) on an arithmetical graph
    #[arg(long, value_enum)]
    game: Option<GameKind>,
    /// Maximum number of candidates for exhaustive scans
    #[arg(long, env = "CHIPFIRE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args)]
struct WithDivisor {
    #[command(flatten)]
    common: Common,
    /// Comma-separated divisor, e.g. "-1,0,2"
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Subcommand)]
enum Command {
    /// Structural facts about the graph and its game
    Info(Common),
    /// Equivalent v0-reduced divisor and the firing that reaches it
    Reduce {
        #[command(flatten)]
        args: WithDivisor,
        /// Emit the Dhar trace of the result as JSON lines
        #[arg(long)]
        trace: bool,
    },
    /// Dhar's algorithm on a divisor that is nonnegative off v0
    Dhar(WithDivisor),
    /// Rank of a divisor
    Rank(WithDivisor),
    /// Extreme classes of the region of non-effective divisors
    Extremes {
        #[command(flatten)]
        common: Common,
        /// Accepted for compatibility; output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Uniformity, reflection invariance and the Riemann-Roch verdict
    RrCheck {
        #[command(flatten)]
        common: Common,
        /// Also verify the Riemann-Roch formula on the box [-B, B]^n
        #[arg(long)]
        formula_box: Option<i64>,
    },
    /// Sandpile dynamics with v0 as sink
    #[command(subcommand)]
    Sandpile(SandpileCommand),
    /// Arithmetical graph tools
    #[command(subcommand)]
    Arith(ArithCommand),
    /// Brute-force reference computations
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum SandpileCommand {
    Stabilize(WithDivisor),
    Recurrent(WithDivisor),
    Minimal(Common),
    /// Natural Riemann-Roch test through minimal recurrent configurations
    NaturalRr(Common),
}

#[derive(Subcommand)]
enum ArithCommand {
    Validate { graph: PathBuf },
    G0 { graph: PathBuf },
    /// Associated digraph as a digraph file
    Digraph { graph: PathBuf },
    /// Euclidean star generated by r0 > r1
    Star {
        #[arg(long)]
        r0: i64,
        #[arg(long)]
        r1: i64,
    },
    /// g_max <= g0 and, when tight, the canonical pairing of top-degree classes
    Check {
        graph: PathBuf,
        #[arg(long, env = "CHIPFIRE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Rank {
        #[command(flatten)]
        args: WithDivisor,
        #[arg(long = "box", default_value_t = 3)]
        radius: i64,
    },
    Effective {
        #[command(flatten)]
        args: WithDivisor,
        #[arg(long = "box", default_value_t = 3)]
        radius: i64,
    },
    Reduced(WithDivisor),
}

enum Output {
    Document(Value),
    Lines(Vec<Value>),
}

struct Outcome {
    output: Output,
    failed: bool,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome { output: Output::Document(v), failed: false }
    }

    fn check(v: Value, passed: bool) -> Self {
        Outcome { output: Output::Document(v), failed: !passed }
    }
}

fn read_graph(path: &PathBuf) -> chipfire::Result<LoadedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    GraphFile::parse(&text)?.load()
}

fn side_game(g: &chipfire::Digraph, side: Side) -> chipfire::Result<(Game, &'static str)> {
    let name = match side {
        Side::Row => "row",
        Side::Column => "column",
    };
    Ok((Game::on_digraph(g, side)?, name))
}

fn build_game(graph: &LoadedGraph, kind: Option<GameKind>) -> chipfire::Result<(Game, &'static str)> {
    match (graph, kind) {
        (LoadedGraph::Digraph(g), None | Some(GameKind::Row)) => side_game(g, Side::Row),
        (LoadedGraph::Digraph(g), Some(GameKind::Column)) => side_game(g, Side::Column),
        (LoadedGraph::Digraph(_), Some(GameKind::Chip)) => {
            Err(Error::InvalidInput("the chip game needs an arithmetical graph".into()))
        }
        (LoadedGraph::Arithmetical(ag), None | Some(GameKind::Chip)) => Ok((ag.chip_game(), "chip")),
        (LoadedGraph::Arithmetical(ag), Some(GameKind::Row)) => side_game(&ag.associated_digraph(), Side::Row),
        (LoadedGraph::Arithmetical(ag), Some(GameKind::Column)) => {
            side_game(&ag.associated_digraph(), Side::Column)
        }
    }
}

fn setup(common: &Common) -> chipfire::Result<(LoadedGraph, Game, &'static str)> {
    let graph = read_graph(&common.graph)?;
    let (game, name) = build_game(&graph, common.game)?;
    game.check_base(common.base)?;
    Ok((graph, game, name))
}

fn setup_divisor(args: &WithDivisor) -> chipfire::Result<(LoadedGraph, Game, &'static str, Vec<i64>)> {
    let (graph, game, name) = setup(&args.common)?;
    let d = parse_divisor(&args.divisor)?;
    game.check_divisor(&d)?;
    Ok((graph, game, name, d))
}

fn point(p: &Point) -> Value {
    json!(p.iter().map(rational_string).collect::<Vec<_>>())
}

fn extremes_json(set: &ExtremeClassSet) -> Value {
    json!({
        "base": set.base,
        "classes": set.classes.iter().map(|c| json!({
            "rep": c.rep,
            "degree": c.degree,
            "all_reps": c.all_reps,
        })).collect::<Vec<_>>(),
        "g_min": set.g_min,
        "g_max": set.g_max,
    })
}

fn report_json(report: &RRReport, game_name: &str) -> Value {
    json!({
        "game": game_name,
        "base": report.base,
        "uniform": report.uniform,
        "reflection_invariant": report.reflection_invariant,
        "rr": report.rr_property,
        "g": report.g,
        "g_min": report.extremes.g_min,
        "g_max": report.extremes.g_max,
        "canonical": report.canonical,
        "reflection_canonical": report.reflection_canonical,
        "natural_rr": report.natural_rr,
        "crit_points": report.crit_points.iter().map(point).collect::<Vec<_>>(),
        "reflection": report.reflection.as_ref().map(|r| json!({
            "witness": point(&r.witness),
            "matching": r.matching,
            "offsets": r.offsets,
        })),
        "extremes": extremes_json(&report.extremes),
    })
}

fn info(common: &Common) -> chipfire::Result<Outcome> {
    let graph = read_graph(&common.graph)?;
    let (game, name) = build_game(&graph, common.game)?;
    let mut out = json!({
        "vertices": game.vertex_count(),
        "strongly_connected": true,
        "game": name,
        "period_vector": game.period(),
        "weight_vector": game.weight(),
        "firing_matrix": game.matrix(),
        "thresholds": game.thresholds(),
        "lattice_rank": game.lattice().rank(),
    });
    let extra = match &graph {
        LoadedGraph::Digraph(g) => json!({
            "type": "digraph",
            "eulerian": g.is_eulerian(),
            "out_degrees": g.out_degrees(),
        }),
        LoadedGraph::Arithmetical(ag) => json!({
            "type": "arithmetical",
            "multiplicities": ag.multiplicities(),
            "deltas": ag.deltas(),
            "g0": ag.g0()?,
        }),
    };
    if let (Value::Object(map), Value::Object(more)) = (&mut out, extra) {
        map.extend(more);
    }
    Ok(Outcome::ok(out))
}

fn run(cli: Cli) -> chipfire::Result<Outcome> {
    match cli.command {
        Command::Info(common) => info(&common),
        Command::Reduce { args, trace } => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let v0 = args.common.base;
            let (reduced, strategy) = reduce(&game, v0, &d)?;
            let result = json!({ "divisor": reduced, "strategy": strategy });
            if !trace {
                return Ok(Outcome::ok(result));
            }
            let t = dhar(&game, v0, &reduced)?;
            let mut lines: Vec<Value> = t
                .steps
                .iter()
                .map(|s| json!({ "strategy": s.strategy, "vertex": s.vertex }))
                .collect();
            lines.push(json!({ "terminal": t.terminal, "reduced_witnesses": t.reduced_witnesses }));
            lines.push(result);
            Ok(Outcome { output: Output::Lines(lines), failed: false })
        }
        Command::Dhar(args) => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let t = dhar(&game, args.common.base, &d)?;
            Ok(Outcome::ok(json!({
                "reduced": t.is_reduced(),
                "steps": t.steps,
                "terminal": t.terminal,
                "reduced_witnesses": t.reduced_witnesses,
            })))
        }
        Command::Rank(args) => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let rank = Ranker::new(&game, args.common.base)?.rank(&d)?;
            Ok(Outcome::ok(json!({ "rank": rank })))
        }
        Command::Extremes { common, .. } => {
            let (_, game, _) = setup(&common)?;
            let set = enumerate_extremes(&game, common.base, common.budget)?;
            Ok(Outcome::ok(extremes_json(&set)))
        }
        Command::RrCheck { common, formula_box } => {
            let (_, game, name) = setup(&common)?;
            let report = rr_verdict(&game, common.base, common.budget)?;
            let mut out = report_json(&report, name);
            let mut passed = true;
            if let Some(b) = formula_box {
                if b < 0 {
                    return Err(Error::InvalidInput("--formula-box must be nonnegative".into()));
                }
                let check = rr_formula_check(&game, &report, b);
                passed = check.passed();
                out["formula_check"] = json!(check);
            }
            Ok(Outcome::check(out, passed))
        }
        Command::Sandpile(cmd) => run_sandpile(cmd),
        Command::Arith(cmd) => run_arith(cmd),
        Command::Oracle(cmd) => run_oracle(cmd),
    }
}

fn run_sandpile(cmd: SandpileCommand) -> chipfire::Result<Outcome> {
    match cmd {
        SandpileCommand::Stabilize(args) => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let (config, firings) = sandpile::stabilize(&game, args.common.base, &d, None)?;
            Ok(Outcome::ok(json!({ "config": config, "firings": firings })))
        }
        SandpileCommand::Recurrent(args) => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let recurrent = sandpile::is_recurrent(&game, args.common.base, &d)?;
            Ok(Outcome::ok(json!({ "recurrent": recurrent })))
        }
        SandpileCommand::Minimal(common) => {
            let (_, game, _) = setup(&common)?;
            let minimal = sandpile::minimal_recurrents(&game, common.base, common.budget)?;
            Ok(Outcome::ok(json!({ "minimal_recurrents": minimal })))
        }
        SandpileCommand::NaturalRr(common) => {
            let (_, game, _) = setup(&common)?;
            let report = rr_verdict(&game, common.base, common.budget)?;
            let verdict = sandpile::natural_rr_via_sandpile(&game, &report, common.budget)?;
            Ok(Outcome::ok(json!(verdict)))
        }
    }
}

fn arithmetical(path: &PathBuf) -> chipfire::Result<chipfire::ArithmeticalGraph> {
    match read_graph(path)? {
        LoadedGraph::Arithmetical(ag) => Ok(ag),
        LoadedGraph::Digraph(_) => Err(Error::InvalidInput("expected an arithmetical graph file".into())),
    }
}

fn run_arith(cmd: ArithCommand) -> chipfire::Result<Outcome> {
    match cmd {
        ArithCommand::Validate { graph } => {
            let ag = arithmetical(&graph)?;
            Ok(Outcome::ok(json!({
                "valid": true,
                "multiplicities": ag.multiplicities(),
                "deltas": ag.deltas(),
                "g0": ag.g0()?,
            })))
        }
        ArithCommand::G0 { graph } => Ok(Outcome::ok(json!({ "g0": arithmetical(&graph)?.g0()? }))),
        ArithCommand::Digraph { graph } => {
            let g = arithmetical(&graph)?.associated_digraph();
            Ok(Outcome::ok(json!(GraphFile::from_digraph(&g))))
        }
        ArithCommand::Star { r0, r1 } => {
            let ag = euclidean_star(r0, r1)?;
            Ok(Outcome::ok(json!(GraphFile::from_arithmetical(&ag))))
        }
        ArithCommand::Check { graph, budget } => {
            let bound = gmax_bound_check(&arithmetical(&graph)?, budget)?;
            let passed = bound.holds && bound.pairing != Some(false);
            Ok(Outcome::check(json!(bound), passed))
        }
    }
}

fn run_oracle(cmd: OracleCommand) -> chipfire::Result<Outcome> {
    match cmd {
        OracleCommand::Rank { args, radius } => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let rank = oracle::rank_bruteforce(&game, &d, radius);
            Ok(Outcome::ok(json!({ "rank": rank, "box": radius })))
        }
        OracleCommand::Effective { args, radius } => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let brute = oracle::effective_bruteforce(&game, &d, radius);
            let fast = is_effective_class(&game, args.common.base, &d)?;
            Ok(Outcome::check(json!({ "effective": brute, "box": radius, "fast": fast }), brute == fast))
        }
        OracleCommand::Reduced(args) => {
            let (_, game, _, d) = setup_divisor(&args)?;
            let v0 = args.common.base;
            let brute = oracle::reduced_bruteforce(&game, v0, &d);
            let fast = (0..d.len()).all(|v| v == v0 || d[v] >= 0) && is_reduced(&game, v0, &d)?;
            Ok(Outcome::check(json!({ "reduced": brute, "fast": fast }), brute == fast))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            match outcome.output {
                Output::Document(v) => println!("{v}"),
                Output::Lines(lines) => lines.iter().for_each(|v| println!("{v}")),
            }
            ExitCode::from(if outcome.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("chipfire: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } | Error::StepCap(_) => 3,
                _ => 2,
            })
        }
    }
}
