//! Command line over the library: evaluate terms to combination sets, sweep
//! naturality squares, decide structural predicates, and convert between the
//! value syntaxes. Exit codes are part of the interface: 0 when the answer
//! is positive, 1 when a law fails or a predicate is false, 2 on usage,
//! parse, and universe errors.

use std::collections::BTreeSet;
use std::error::Error;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ddnat::diagram::DiagramStore;
use ddnat::lawcheck::{
    no_natural_bijection_report, sweep, EnumBudget, FunctorKind, Restriction, SquareReport,
    TermKind,
};
use ddnat::sentential::{
    interpret_sdd, interpret_zsdd, is_partition_sdd, is_strongly_deterministic_sdd,
    is_strongly_deterministic_zsdd, sdd_of_diagram,
};
use ddnat::setfun::{BooleanFunction, CombinationSet, FiniteMap, Universe};
use ddnat::text::{
    parse_combination_set, parse_diagram, parse_order, parse_sdd, parse_universe, parse_vtree,
    parse_zsdd,
};
use ddnat::vtree::{respects_vtree_sdd, respects_vtree_zsdd, vtree_of_order};

type CliResult<T> = Result<T, Box<dyn Error>>;

/// Read decision diagrams and their sentential generalizations as
/// combination sets, check which readings commute with relabeling, and
/// convert between the value syntaxes.
#[derive(Parser)]
#[command(name = "ddnat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term to its combination set over a universe.
    Interpret {
        /// Reading to apply.
        #[arg(value_enum)]
        kind: KindArg,
        /// Term text, or @path to a file holding it.
        term: String,
        /// Comma-separated universe. Without it the term's own names are
        /// used, with a warning: the readings depend on the universe.
        #[arg(long)]
        universe: Option<String>,
    },
    /// Sweep naturality squares for a reading paired with a transport
    /// action, or replay the argument that no bijection between the two
    /// transports commutes with every map.
    Check {
        /// Term family to sweep.
        #[arg(value_enum, required_unless_present = "prop24")]
        kind: Option<KindArg>,
        /// Transport action to pair the reading with.
        #[arg(long, value_enum, required_unless_present = "prop24")]
        functor: Option<FunctorArg>,
        /// Narrow the sweep to order-respecting diagrams under strictly
        /// monotone maps, or vtree-respecting terms under embeddings.
        #[arg(long, value_enum)]
        restricted: Option<RestrictedArg>,
        /// Replay the two-transport collapse argument instead of sweeping.
        #[arg(
            long,
            conflicts_with_all = ["kind", "functor", "restricted", "max_size", "max_depth", "seed"]
        )]
        prop24: bool,
        /// Largest universe the sweep enumerates.
        #[arg(long)]
        max_size: Option<usize>,
        /// Deepest term shape the sweep enumerates.
        #[arg(long)]
        max_depth: Option<usize>,
        /// Seed for the random terms topping up a capped stream.
        #[arg(long)]
        seed: Option<u64>,
        /// Report style.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Decide a structural property of a term; the exit code mirrors the
    /// printed answer.
    Predicate {
        /// Property to decide. Sentential properties try the intersection
        /// syntax first and fall back to the join syntax; the reserved
        /// terminals keep the two grammars disjoint.
        #[arg(value_enum)]
        name: PredicateArg,
        /// Term text, or @path to a file holding it.
        term: String,
        /// Total order for respects-order, comma-separated.
        #[arg(long)]
        order: Option<String>,
        /// Vtree for respects-vtree.
        #[arg(long)]
        vtree: Option<String>,
        /// Universe for strongly-deterministic and partition. Without it the
        /// term's own names are used, with a warning.
        #[arg(long)]
        universe: Option<String>,
    },
    /// Rewrite a value from one syntax into another.
    Convert {
        /// Conversion to apply.
        #[arg(value_enum)]
        direction: DirectionArg,
        /// Input text, or @path to a file holding it.
        input: String,
        /// Universe for cs-to-bf and bf-to-cs. Without it the union of the
        /// listed combinations is used, with a warning.
        #[arg(long)]
        universe: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Bdd,
    Zdd,
    Sdd,
    Zsdd,
}

impl From<KindArg> for TermKind {
    fn from(kind: KindArg) -> TermKind {
        match kind {
            KindArg::Bdd => TermKind::Bdd,
            KindArg::Zdd => TermKind::Zdd,
            KindArg::Sdd => TermKind::Sdd,
            KindArg::Zsdd => TermKind::Zsdd,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FunctorArg {
    Covariant,
    Contravariant,
}

impl From<FunctorArg> for FunctorKind {
    fn from(functor: FunctorArg) -> FunctorKind {
        match functor {
            FunctorArg::Covariant => FunctorKind::Covariant,
            FunctorArg::Contravariant => FunctorKind::Contravariant,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RestrictedArg {
    Order,
    Vtree,
}

impl From<RestrictedArg> for Restriction {
    fn from(restricted: RestrictedArg) -> Restriction {
        match restricted {
            RestrictedArg::Order => Restriction::OrderRespecting,
            RestrictedArg::Vtree => Restriction::VtreeRespecting,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    RespectsOrder,
    RespectsVtree,
    StronglyDeterministic,
    Partition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    CsToBf,
    BfToCs,
    OrderToVtree,
    BddToSdd,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Interpret {
            kind,
            term,
            universe,
        } => cmd_interpret(kind, &term, universe.as_deref()),
        Command::Check {
            kind,
            functor,
            restricted,
            prop24,
            max_size,
            max_depth,
            seed,
            format,
        } => {
            if prop24 {
                cmd_prop24(format)
            } else {
                let kind = kind.expect("clap requires a kind unless --prop24 is set");
                let functor = functor.expect("clap requires --functor unless --prop24 is set");
                cmd_check(kind, functor, restricted, max_size, max_depth, seed, format)
            }
        }
        Command::Predicate {
            name,
            term,
            order,
            vtree,
            universe,
        } => cmd_predicate(
            name,
            &term,
            order.as_deref(),
            vtree.as_deref(),
            universe.as_deref(),
        ),
        Command::Convert {
            direction,
            input,
            universe,
        } => cmd_convert(direction, &input, universe.as_deref()),
    }
}

fn cmd_interpret(kind: KindArg, term: &str, universe: Option<&str>) -> CliResult<ExitCode> {
    let term = read_arg(term)?;
    let value = match kind {
        KindArg::Bdd | KindArg::Zdd => {
            let mut store = DiagramStore::new();
            let root = parse_diagram(&mut store, &term)?;
            let universe = universe_or_infer(universe, store.labels_of(root), "term")?;
            match kind {
                KindArg::Bdd => store.interpret_bdd(root, &universe)?,
                _ => store.interpret_zdd(root, &universe)?,
            }
        }
        KindArg::Sdd => {
            let s = parse_sdd(&term)?;
            let universe = universe_or_infer(universe, s.variables(), "term")?;
            interpret_sdd(&s, &universe)?
        }
        KindArg::Zsdd => {
            let z = parse_zsdd(&term)?;
            let universe = universe_or_infer(universe, z.variables(), "term")?;
            interpret_zsdd(&z, &universe)?
        }
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    kind: KindArg,
    functor: FunctorArg,
    restricted: Option<RestrictedArg>,
    max_size: Option<usize>,
    max_depth: Option<usize>,
    seed: Option<u64>,
    format: FormatArg,
) -> CliResult<ExitCode> {
    let kind = TermKind::from(kind);
    let restriction = restricted.map_or(Restriction::Unrestricted, Restriction::from);
    let mut budget = EnumBudget::default_for(kind);
    if let Some(size) = max_size {
        budget.max_universe_size = size;
    }
    if let Some(depth) = max_depth {
        budget.max_depth = depth;
    }
    if let Some(seed) = seed {
        budget.random_seed = seed;
    }
    let report = sweep(kind, functor.into(), restriction, &budget)?;
    print_square_report(&report, restriction, format);
    Ok(exit_for(report.holds()))
}

fn cmd_prop24(format: FormatArg) -> CliResult<ExitCode> {
    let report = no_natural_bijection_report();
    match format {
        FormatArg::Text => {
            println!("inclusion transport: {}", report.inclusion_transport);
            println!("collapse transport: {}", report.collapse_transport);
            println!("candidates: {}", report.candidates);
            println!("constrained: {}", report.constrained);
            println!("holds: {}", report.holds);
        }
        FormatArg::Records => {
            println!("inclusion_transport={}", report.inclusion_transport);
            println!("collapse_transport={}", report.collapse_transport);
            println!("candidates={}", report.candidates);
            println!("constrained={}", report.constrained);
            println!("holds={}", report.holds);
        }
    }
    Ok(exit_for(report.holds))
}

fn cmd_predicate(
    name: PredicateArg,
    term: &str,
    order: Option<&str>,
    vtree: Option<&str>,
    universe: Option<&str>,
) -> CliResult<ExitCode> {
    let term = read_arg(term)?;
    let answer = match name {
        PredicateArg::RespectsOrder => {
            let spec = order.ok_or("respects-order needs --order")?;
            let order = parse_order(spec)?;
            let mut store = DiagramStore::new();
            let root = parse_diagram(&mut store, &term)?;
            store.respects_order(root, &order)?
        }
        PredicateArg::RespectsVtree => {
            let spec = vtree.ok_or("respects-vtree needs --vtree")?;
            let vtree = parse_vtree(spec)?;
            match parse_sdd(&term) {
                Ok(s) => respects_vtree_sdd(&s, &vtree),
                Err(first) => match parse_zsdd(&term) {
                    Ok(z) => respects_vtree_zsdd(&z, &vtree),
                    Err(second) => return Err(neither_sentential(first, second)),
                },
            }
        }
        PredicateArg::StronglyDeterministic => match parse_sdd(&term) {
            Ok(s) => {
                let universe = universe_or_infer(universe, s.variables(), "term")?;
                is_strongly_deterministic_sdd(&s, &universe)?
            }
            Err(first) => match parse_zsdd(&term) {
                Ok(z) => {
                    let universe = universe_or_infer(universe, z.variables(), "term")?;
                    is_strongly_deterministic_zsdd(&z, &universe)?
                }
                Err(second) => return Err(neither_sentential(first, second)),
            },
        },
        PredicateArg::Partition => {
            let s = parse_sdd(&term)?;
            let universe = universe_or_infer(universe, s.variables(), "term")?;
            is_partition_sdd(&s, &universe)?
        }
    };
    println!("{answer}");
    Ok(exit_for(answer))
}

fn cmd_convert(direction: DirectionArg, input: &str, universe: Option<&str>) -> CliResult<ExitCode> {
    let input = read_arg(input)?;
    let printed = match direction {
        DirectionArg::CsToBf => {
            let members = parse_combination_set(&input)?;
            let universe = universe_or_infer(universe, member_names(&members), "set")?;
            CombinationSet::new(universe, members)?
                .to_boolean_function()
                .to_string()
        }
        DirectionArg::BfToCs => {
            let accepted = parse_combination_set(&input)?;
            let universe = universe_or_infer(universe, member_names(&accepted), "set")?;
            BooleanFunction::new(universe, accepted)?
                .to_combination_set()
                .to_string()
        }
        DirectionArg::OrderToVtree => {
            let order = parse_order(&input)?;
            vtree_of_order(&order)?.to_string()
        }
        DirectionArg::BddToSdd => {
            let mut store = DiagramStore::new();
            let root = parse_diagram(&mut store, &input)?;
            sdd_of_diagram(&store, root).to_string()
        }
    };
    println!("{printed}");
    Ok(ExitCode::SUCCESS)
}

fn print_square_report(report: &SquareReport, restriction: Restriction, format: FormatArg) {
    match format {
        FormatArg::Text => match &report.witness {
            None => println!("holds after {} squares", report.squares),
            Some(witness) => {
                println!("violated at square {}", report.squares);
                println!("term: {}", witness.term);
                println!("domain: {{{}}}", witness.map.domain());
                println!("codomain: {{{}}}", witness.map.codomain());
                println!("map: {{{}}}", witness.map);
                println!("relabel-then-interpret: {}", witness.lhs);
                println!("interpret-then-transport: {}", witness.rhs);
            }
        },
        FormatArg::Records => {
            println!("kind={}", report.kind);
            println!("functor={}", report.functor);
            println!("restriction={restriction}");
            println!("holds={}", report.holds());
            println!("squares={}", report.squares);
            if let Some(witness) = &report.witness {
                println!("term={}", witness.term);
                println!("domain={}", witness.map.domain());
                println!("codomain={}", witness.map.codomain());
                println!("map={}", record_pairs(&witness.map));
                println!("lhs={}", witness.lhs);
                println!("rhs={}", witness.rhs);
            }
        }
    }
}

fn record_pairs(map: &FiniteMap) -> String {
    map.pairs()
        .map(|(x, y)| format!("{x}->{y}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Inline argument text, or the contents of a file named by `@path`.
fn read_arg(raw: &str) -> CliResult<String> {
    match raw.strip_prefix('@') {
        Some(path) => Ok(fs::read_to_string(path)
            .map_err(|error| format!("cannot read `{path}`: {error}"))?
            .trim()
            .to_owned()),
        None => Ok(raw.to_owned()),
    }
}

fn universe_or_infer(
    explicit: Option<&str>,
    names: BTreeSet<String>,
    what: &str,
) -> CliResult<Universe> {
    match explicit {
        Some(spec) => Ok(parse_universe(spec)?),
        None => {
            let inferred = Universe::new(names);
            eprintln!("warning: --universe not given, using {{{inferred}}} from the {what}");
            Ok(inferred)
        }
    }
}

fn member_names(combinations: &BTreeSet<ddnat::setfun::Combination>) -> BTreeSet<String> {
    combinations
        .iter()
        .flat_map(|combination| combination.iter().map(str::to_owned))
        .collect()
}

fn neither_sentential(first: ddnat::Error, second: ddnat::Error) -> Box<dyn Error> {
    format!("term parses neither as an sdd ({first}) nor as a zsdd ({second})").into()
}

fn exit_for(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
