//! Command-line driver for `lextype`.
//!
//! [`run_cli`] parses arguments, runs one subcommand and returns the exit
//! code together with the report text, so it can be tested without spawning
//! a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lextype_core::harness::{
    equivalent_variant, gen_structure, run_fuzz, verify_invariance, FuzzBounds, GenParams,
};
use lextype_core::{
    find_morphism, hierarchy_equivalent, parse_instance, rcbr_iterate, refine, serialize_instance,
    Error, Event, Instance, Morphism, TaggedType,
};
use serde_json::{json, Value};

mod render;

use render::Names;

/// Success, or the checked property holds.
pub const EXIT_OK: i32 = 0;
/// The checked property is false.
pub const EXIT_FALSE: i32 = 1;
/// Bad command line.
pub const EXIT_USAGE: i32 = 2;
/// Unreadable or invalid input.
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lextype",
    version,
    about = "Solve and compare lexicographic type structures"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cautious rationality and iterated cautious belief, level by level.
    Solve { file: PathBuf },
    /// Hierarchy classes of every type at depths 1 through K.
    Hierarchy {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// A hierarchy morphism from the first structure to the second.
    Morphism { file: PathBuf },
    /// Hierarchy morphisms in both directions.
    Equivalent { file: PathBuf },
    /// Compare strategy projections of the two structures at every level.
    VerifyInvariance { file: PathBuf },
    /// Emit a random instance.
    Gen(GenArgs),
    /// Check invariance and transport on generated structure pairs.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    players: usize,
    /// Strategies per player, `N` or `LO..HI`.
    #[arg(long, default_value = "1..3", value_parser = parse_bounds)]
    strategies: (usize, usize),
    /// Types per player, `N` or `LO..HI`.
    #[arg(long, default_value = "1..3", value_parser = parse_bounds)]
    types: (usize, usize),
    /// LPS length, `N` or `LO..HI`.
    #[arg(long, default_value = "1..3", value_parser = parse_bounds)]
    lps_len: (usize, usize),
    /// Every mass is a multiple of 1/DENOMINATOR.
    #[arg(long, default_value_t = 12)]
    denominator: u32,
    /// Also emit a hierarchy-equivalent rewrite as the second structure.
    #[arg(long)]
    variant: bool,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    iters: u64,
    #[arg(long, default_value_t = 3)]
    max_players: usize,
    #[arg(long, default_value_t = 3)]
    max_strategies: usize,
    #[arg(long, default_value_t = 3)]
    max_types: usize,
    #[arg(long, default_value_t = 3)]
    max_lps_len: usize,
    #[arg(long, default_value_t = 12)]
    denominator: u32,
}

fn parse_bounds(text: &str) -> Result<(usize, usize), String> {
    let number = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok((number(lo)?, number(hi.trim_start_matches('='))?)),
        None => number(text).map(|n| (n, n)),
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: EXIT_INVALID,
            message: format!("error: {e}\n"),
        }
    }
}

type Outcome = Result<(i32, String), Failure>;

/// Runs one command line (`argv[0]` is the program name) and returns the
/// exit code and the report.
pub fn run_cli<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Solve { file } => solve(&file, json),
        Command::Hierarchy { file, depth } => hierarchy(&file, depth, json),
        Command::Morphism { file } => morphism(&file, json),
        Command::Equivalent { file } => equivalent(&file, json),
        Command::VerifyInvariance { file } => invariance(&file, json),
        Command::Gen(args) => generate(&args),
        Command::Fuzz(args) => fuzz(&args, json),
    };
    match result {
        Ok(done) => done,
        Err(f) => (f.code, f.message),
    }
}

fn load(path: &PathBuf) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("error: cannot read {}: {e}\n", path.display()),
    })?;
    parse_instance(&text).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("error: {}: {e}\n", path.display()),
    })
}

fn load_pair(path: &PathBuf) -> Result<Instance, Failure> {
    let inst = load(path)?;
    if inst.structures.len() != 2 {
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!(
                "error: {}: this command compares two structures, the file has {}\n",
                path.display(),
                inst.structures.len()
            ),
        });
    }
    Ok(inst)
}

fn json_out(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
    text.push('\n');
    text
}

fn solve(path: &PathBuf, json: bool) -> Outcome {
    let inst = load(path)?;
    let mut text = String::new();
    let mut docs = Vec::new();
    for (k, s) in inst.structures.iter().enumerate() {
        let names = Names::new(s);
        let label = inst.structure_label(k);
        let trace = rcbr_iterate(s);
        let levels: Vec<Value> = trace
            .levels()
            .iter()
            .enumerate()
            .map(|(m, level)| {
                json!({
                    "level": m,
                    "players": level.iter().map(|e| event_json(&names, e)).collect::<Vec<_>>(),
                })
            })
            .collect();
        docs.push(json!({
            "structure": label,
            "stabilized_at": trace.stabilized_at(),
            "levels": levels,
        }));
        writeln!(
            text,
            "structure {label}: stabilized at level {}",
            trace.stabilized_at()
        )
        .unwrap();
        for (m, level) in trace.levels().iter().enumerate() {
            writeln!(text, "  R^{m}").unwrap();
            for e in level {
                writeln!(
                    text,
                    "    {}: {}  proj {}",
                    names.player(e.player),
                    names.pairs(e),
                    names.strategies(e.player, &e.strategy_projection())
                )
                .unwrap();
            }
        }
    }
    if json {
        return Ok((EXIT_OK, json_out(json!({ "structures": docs }))));
    }
    Ok((EXIT_OK, text))
}

fn event_json(names: &Names, e: &Event) -> Value {
    json!({
        "player": names.player(e.player),
        "pairs": e.pairs.iter().map(|&(s, t)| json!([names.strategy(e.player, s), names.type_name(e.player, t)])).collect::<Vec<_>>(),
        "projection": e.strategy_projection().into_iter().map(|s| names.strategy(e.player, s)).collect::<Vec<_>>(),
    })
}

fn tagged_label(inst: &Instance, x: TaggedType) -> String {
    let k = x.origin.index();
    let name = inst.structures[k].type_name(x.player, x.type_id);
    if inst.structures.len() == 1 {
        name.to_string()
    } else {
        format!("{}:{name}", inst.structure_label(k))
    }
}

fn hierarchy(path: &PathBuf, depth: usize, json: bool) -> Outcome {
    if depth == 0 {
        return Err(Failure {
            code: EXIT_USAGE,
            message: "error: --depth must be at least 1\n".into(),
        });
    }
    let inst = load(path)?;
    let refs: Vec<_> = inst.structures.iter().collect();
    let game = &inst.game;
    let mut text = String::new();
    let mut docs = Vec::new();
    for d in 1..=depth {
        let partition = refine(&refs, d)?;
        writeln!(text, "depth {d}").unwrap();
        let mut per_player = Vec::new();
        for (i, classes) in partition.classes.iter().enumerate() {
            let rendered: Vec<Vec<String>> = classes
                .iter()
                .map(|c| c.iter().map(|&x| tagged_label(&inst, x)).collect())
                .collect();
            let shown: Vec<String> = rendered
                .iter()
                .map(|c| format!("{{{}}}", c.join(", ")))
                .collect();
            writeln!(text, "  {}: {}", game.player_name(i), shown.join(" ")).unwrap();
            per_player.push(json!({ "player": game.player_name(i), "classes": rendered }));
        }
        docs.push(json!({ "depth": d, "players": per_player }));
    }
    if json {
        return Ok((EXIT_OK, json_out(json!({ "depths": docs }))));
    }
    Ok((EXIT_OK, text))
}

fn morphism_lines(inst: &Instance, from: usize, phi: &Morphism) -> (String, Value) {
    let to = 1 - from;
    let (src, dst) = (&inst.structures[from], &inst.structures[to]);
    let mut text = String::new();
    let mut maps = Vec::new();
    for (i, map) in phi.maps.iter().enumerate() {
        let pairs: Vec<(String, String)> = map
            .iter()
            .enumerate()
            .map(|(t, &u)| {
                (
                    src.type_name(i, t).to_string(),
                    dst.type_name(i, u).to_string(),
                )
            })
            .collect();
        let shown: Vec<String> = pairs.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
        writeln!(
            text,
            "    {}: {}",
            inst.game.player_name(i),
            shown.join(", ")
        )
        .unwrap();
        maps.push(json!({
            "player": inst.game.player_name(i),
            "map": pairs.into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        }));
    }
    let value = json!({
        "from": inst.structure_label(from),
        "to": inst.structure_label(to),
        "maps": maps,
    });
    (text, value)
}

fn witness_section(
    inst: &Instance,
    from: usize,
    phi: &Option<Morphism>,
    text: &mut String,
) -> Value {
    let arrow = format!(
        "{} -> {}",
        inst.structure_label(from),
        inst.structure_label(1 - from)
    );
    match phi {
        Some(phi) => {
            let (lines, value) = morphism_lines(inst, from, phi);
            writeln!(text, "  morphism {arrow}").unwrap();
            text.push_str(&lines);
            value
        }
        None => {
            writeln!(text, "  no morphism {arrow}").unwrap();
            Value::Null
        }
    }
}

fn morphism(path: &PathBuf, json: bool) -> Outcome {
    let inst = load_pair(path)?;
    let phi = find_morphism(&inst.structures[0], &inst.structures[1])?;
    let code = if phi.is_some() { EXIT_OK } else { EXIT_FALSE };
    let mut text = String::new();
    let value = witness_section(&inst, 0, &phi, &mut text);
    if json {
        return Ok((
            code,
            json_out(json!({ "exists": phi.is_some(), "morphism": value })),
        ));
    }
    Ok((code, text))
}

fn equivalent(path: &PathBuf, json: bool) -> Outcome {
    let inst = load_pair(path)?;
    let eq = hierarchy_equivalent(&inst.structures[0], &inst.structures[1])?;
    let code = if eq.holds() { EXIT_OK } else { EXIT_FALSE };
    let mut text = String::new();
    writeln!(text, "hierarchy-equivalent: {}", eq.holds()).unwrap();
    writeln!(text, "hierarchies stabilize at depth {}", eq.stable_depth).unwrap();
    let forward = witness_section(&inst, 0, &eq.forward, &mut text);
    let backward = witness_section(&inst, 1, &eq.backward, &mut text);
    if json {
        return Ok((
            code,
            json_out(json!({
                "equivalent": eq.holds(),
                "stable_depth": eq.stable_depth,
                "forward": forward,
                "backward": backward,
            })),
        ));
    }
    Ok((code, text))
}

fn invariance(path: &PathBuf, json: bool) -> Outcome {
    let inst = load_pair(path)?;
    let (a, b) = (&inst.structures[0], &inst.structures[1]);
    let report = verify_invariance(a, b)?;
    let code = if report.verdict { EXIT_OK } else { EXIT_FALSE };
    let names = Names::new(a);
    let (la, lb) = (inst.structure_label(0), inst.structure_label(1));
    let mut text = String::new();
    writeln!(
        text,
        "stabilization: hierarchies {}, {la} {}, {lb} {}",
        report.stable_depth, report.first_stabilized_at, report.second_stabilized_at
    )
    .unwrap();
    let mut rows = Vec::new();
    for r in &report.rows {
        let p = names.strategies(r.player, &r.first);
        let q = names.strategies(r.player, &r.second);
        writeln!(
            text,
            "  m={} {}: {la} {p}  {lb} {q}  {}",
            r.level,
            names.player(r.player),
            if r.equal { "equal" } else { "DIFFERENT" }
        )
        .unwrap();
        rows.push(json!({
            "level": r.level,
            "player": names.player(r.player),
            "first": r.first.iter().map(|&s| names.strategy(r.player, s)).collect::<Vec<_>>(),
            "second": r.second.iter().map(|&s| names.strategy(r.player, s)).collect::<Vec<_>>(),
            "equal": r.equal,
        }));
    }
    writeln!(text, "verdict: {}", report.verdict).unwrap();
    if json {
        return Ok((
            code,
            json_out(json!({
                "stable_depth": report.stable_depth,
                "first_stabilized_at": report.first_stabilized_at,
                "second_stabilized_at": report.second_stabilized_at,
                "rows": rows,
                "verdict": report.verdict,
            })),
        ));
    }
    Ok((code, text))
}

fn generate(args: &GenArgs) -> Outcome {
    let params = GenParams {
        seed: args.seed,
        players: args.players,
        strategies: args.strategies,
        types: args.types,
        lps_len: args.lps_len,
        denominator: args.denominator,
        ..GenParams::default()
    };
    let structure = gen_structure(&params)?;
    let inst = if args.variant {
        let v = equivalent_variant(&structure, args.seed);
        Instance::new(vec![structure, v.structure]).named(&["original", "variant"])
    } else {
        Instance::new(vec![structure]).named(&["original"])
    };
    Ok((EXIT_OK, serialize_instance(&inst)))
}

fn fuzz(args: &FuzzArgs, json: bool) -> Outcome {
    let bounds = FuzzBounds {
        max_players: args.max_players,
        max_strategies: args.max_strategies,
        max_types: args.max_types,
        max_lps_len: args.max_lps_len,
        denominator: args.denominator,
    };
    let summary = run_fuzz(args.seed, args.iters, &bounds)?;
    let code = if summary.passed() {
        EXIT_OK
    } else {
        EXIT_FALSE
    };
    if json {
        return Ok((
            code,
            json_out(serde_json::to_value(&summary).expect("summary serializes")),
        ));
    }
    let mut text = String::new();
    writeln!(
        text,
        "seeds {}..{}: {} failed, {} with differing events",
        summary.first_seed,
        summary.first_seed + summary.iterations,
        summary.failures.len(),
        summary.nontrivial
    )
    .unwrap();
    for f in &summary.failures {
        writeln!(
            text,
            "  seed {}: equivalent {}, invariance {}, transport {}",
            f.seed, f.equivalent, f.invariance, f.transport
        )
        .unwrap();
    }
    Ok((code, text))
}
