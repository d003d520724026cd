//! End-to-end checks of the binary: each documented command produces its
//! output byte for byte with the documented exit code, errors land on exit
//! code 2, and every value syntax round-trips through its printer on a
//! generated corpus.

use std::collections::BTreeSet;
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ddnat::diagram::{DiagramStore, NodeId, TotalOrder};
use ddnat::sentential::{sdd_of_diagram, Sdd, Zsdd};
use ddnat::setfun::{CombinationSet, FiniteMap, Universe};
use ddnat::text::{
    format_diagram, format_map_lines, parse_combination_set, parse_diagram, parse_map_pairs,
    parse_order, parse_sdd, parse_universe, parse_vtree, parse_zsdd,
};
use ddnat::vtree::Vtree;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_ddnat"))
        .args(args)
        .output()
        .expect("the binary launches");
    (
        output.status.code().expect("the binary exits normally"),
        String::from_utf8(output.stdout).expect("stdout is utf-8"),
        String::from_utf8(output.stderr).expect("stderr is utf-8"),
    )
}

fn expect_clean(args: &[&str], stdout: &str) {
    let got = run(args);
    assert_eq!(
        got,
        (0, stdout.to_owned(), String::new()),
        "command: {args:?}"
    );
}

#[test]
fn interpret_prints_the_documented_readings() {
    expect_clean(
        &["interpret", "bdd", "(a (b 0 1) 1)", "--universe", "a,b"],
        "{{a}{b}{a b}}\n",
    );
    expect_clean(
        &["interpret", "zdd", "(a (b 0 1) 1)", "--universe", "a,b,c"],
        "{{a}{b}}\n",
    );
    expect_clean(
        &["interpret", "zsdd", "(or (a E) (E b))", "--universe", "a,b"],
        "{{a}{b}}\n",
    );
}

#[test]
fn interpret_widens_with_the_universe() {
    expect_clean(
        &["interpret", "bdd", "(a (b 0 1) 1)", "--universe", "a,b,c"],
        "{{a}{b}{a b}{a c}{b c}{a b c}}\n",
    );
    expect_clean(
        &["interpret", "zdd", "(a (b 0 1) 1)", "--universe", "a,b"],
        "{{a}{b}}\n",
    );
}

#[test]
fn interpret_without_a_universe_warns_and_uses_the_term_names() {
    let (code, stdout, stderr) = run(&["interpret", "bdd", "(a 0 1)"]);
    assert_eq!((code, stdout.as_str()), (0, "{{a}}\n"));
    assert!(
        stderr.contains("warning") && stderr.contains("{a}"),
        "stderr must name the inferred universe: {stderr}"
    );
}

#[test]
fn check_holds_for_the_family_reading_under_the_covariant_action() {
    expect_clean(
        &["check", "zdd", "--functor", "covariant"],
        "holds after 62320300 squares\n",
    );
}

#[test]
fn check_reports_the_smallest_break_for_the_mismatched_pairing() {
    let (code, stdout, stderr) = run(&["check", "zdd", "--functor", "contravariant"]);
    assert_eq!(code, 1);
    assert_eq!(stderr, "");
    assert_eq!(
        stdout,
        "violated at square 4\n\
         term: 1\n\
         domain: {}\n\
         codomain: {a}\n\
         map: {}\n\
         relabel-then-interpret: {{}}\n\
         interpret-then-transport: {{}{a}}\n"
    );
}

#[test]
fn check_covers_the_decomposition_families_too() {
    expect_clean(
        &["check", "sdd", "--functor", "contravariant"],
        "holds after 364608 squares\n",
    );
    let (code, stdout, _) = run(&["check", "sdd", "--functor", "covariant"]);
    assert_eq!(code, 1);
    assert!(
        stdout.starts_with("violated at square "),
        "a witness must be reported: {stdout}"
    );
}

#[test]
fn check_prop24_prints_the_collapse_trace() {
    expect_clean(
        &["check", "--prop24"],
        "inclusion transport: {{}{x}{y}{x y}}\n\
         collapse transport: {{}{x}{y}{x y}}\n\
         candidates: 4\n\
         constrained: 4\n\
         holds: true\n",
    );
}

#[test]
fn check_honors_budget_flags_and_the_records_format() {
    expect_clean(
        &[
            "check", "zdd", "--functor", "covariant", "--max-size", "2", "--format", "records",
        ],
        "kind=zdd\nfunctor=covariant\nrestriction=unrestricted\nholds=true\nsquares=501236\n",
    );
}

#[test]
fn restricted_sweeps_rescue_only_the_matching_pairings() {
    let (code, stdout, _) = run(&["check", "bdd", "--functor", "contravariant", "--restricted", "order"]);
    assert_eq!((code, stdout.as_str()), (0, "holds after 71690 squares\n"));
    let (code, _, _) = run(&["check", "bdd", "--functor", "covariant", "--restricted", "order"]);
    assert_eq!(code, 1, "the order restriction must not fix the wrong action");
}

#[test]
fn predicates_print_their_answer_and_mirror_it_in_the_exit_code() {
    expect_clean(
        &["predicate", "respects-order", "(a (b 0 1) 1)", "--order", "a,b"],
        "true\n",
    );
    expect_clean(
        &["predicate", "respects-vtree", "(or (a E) (E b))", "--vtree", "(a b)"],
        "true\n",
    );
    expect_clean(
        &["predicate", "partition", "(or (a T) ((! a) T))", "--universe", "a"],
        "true\n",
    );
    let (code, stdout, _) = run(&["predicate", "respects-order", "(b (a 0 1) 1)", "--order", "a,b"]);
    assert_eq!((code, stdout.as_str()), (1, "false\n"));
}

#[test]
fn strongly_deterministic_falls_back_to_the_join_syntax() {
    expect_clean(
        &[
            "predicate", "strongly-deterministic", "(or (a E) (E b))", "--universe", "a,b",
        ],
        "true\n",
    );
    let (code, stdout, _) = run(&[
        "predicate", "strongly-deterministic", "(or (a T) (T F))", "--universe", "a",
    ]);
    assert_eq!((code, stdout.as_str()), (1, "false\n"));
}

#[test]
fn convert_prints_the_documented_forms() {
    expect_clean(&["convert", "order-to-vtree", "a,b,c"], "(a (b c))\n");
    expect_clean(&["convert", "bdd-to-sdd", "(a 0 1)"], "(or ((! a) F) (a T))\n");
    expect_clean(&["convert", "cs-to-bf", "{{a}}", "--universe", "a"], "{{a}}\n");
    expect_clean(&["convert", "bf-to-cs", "{{}{a b}}", "--universe", "a,b"], "{{}{a b}}\n");
}

#[test]
fn malformed_input_and_bad_flags_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["interpret", "bdd", "(a (b 0", "--universe", "a,b"],
        &["interpret", "bdd", "(a 0 1)", "--universe", "b"],
        &["interpret", "sdd", "(or (a E) (E b))", "--universe", "a,b"],
        &["predicate", "respects-order", "(a 0 1)"],
        &["predicate", "respects-vtree", "(a 0 1)", "--vtree", "a"],
        &["predicate", "partition", "(or (a E) (E b))", "--universe", "a,b"],
        &["check", "zdd"],
        &["check", "zdd", "--prop24"],
        &["check", "bdd", "--functor", "covariant", "--restricted", "vtree"],
        &["convert", "order-to-vtree", "a,a"],
        &["convert", "cs-to-bf", "{{a}}", "--universe", "b"],
        &["interpret", "bdd", "@/no/such/file", "--universe", "a"],
        &["interpret", "bdd", "(a 0 1)", "--bogus"],
    ];
    for args in cases {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 2, "command {args:?} must fail with usage code: {stderr}");
        assert!(!stderr.is_empty(), "command {args:?} must explain itself");
    }
}

#[test]
fn file_inputs_behave_like_inline_terms() {
    let path = std::env::temp_dir().join("ddnat-acceptance-term.txt");
    std::fs::write(&path, "(a (b 0 1) 1)\n").expect("the temp dir is writable");
    let arg = format!("@{}", path.display());
    expect_clean(
        &["interpret", "zdd", &arg, "--universe", "a,b"],
        "{{a}{b}}\n",
    );
    std::fs::remove_file(&path).expect("the temp file still exists");
}

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "ab", "x0", "_u"];

fn random_diagram(store: &mut DiagramStore, rng: &mut ChaCha8Rng, depth: usize) -> NodeId {
    if depth == 0 || rng.gen_bool(0.3) {
        return store.terminal(rng.gen_bool(0.5));
    }
    let lo = random_diagram(store, rng, depth - 1);
    let hi = random_diagram(store, rng, depth - 1);
    let label = *NAMES.choose(rng).expect("the pool is nonempty");
    store.decision(label, lo, hi)
}

fn random_sdd(rng: &mut ChaCha8Rng, depth: usize) -> Sdd {
    match rng.gen_range(0..if depth == 0 { 4 } else { 5 }) {
        0 => Sdd::bot(),
        1 => Sdd::top(),
        2 => Sdd::neg(*NAMES.choose(rng).expect("the pool is nonempty")),
        3 => Sdd::pos(*NAMES.choose(rng).expect("the pool is nonempty")),
        _ => {
            let pairs: Vec<(Sdd, Sdd)> = (0..rng.gen_range(1..=3))
                .map(|_| (random_sdd(rng, depth - 1), random_sdd(rng, depth - 1)))
                .collect();
            Sdd::decomposition(pairs).expect("at least one pair")
        }
    }
}

fn random_zsdd(rng: &mut ChaCha8Rng, depth: usize) -> Zsdd {
    match rng.gen_range(0..if depth == 0 { 4 } else { 5 }) {
        0 => Zsdd::bot(),
        1 => Zsdd::eps(),
        2 => Zsdd::var(*NAMES.choose(rng).expect("the pool is nonempty")),
        3 => Zsdd::pm_var(*NAMES.choose(rng).expect("the pool is nonempty")),
        _ => {
            let pairs: Vec<(Zsdd, Zsdd)> = (0..rng.gen_range(1..=3))
                .map(|_| (random_zsdd(rng, depth - 1), random_zsdd(rng, depth - 1)))
                .collect();
            Zsdd::decomposition(pairs).expect("at least one pair")
        }
    }
}

fn shuffled_names(rng: &mut ChaCha8Rng) -> Vec<&'static str> {
    let mut pool = NAMES.to_vec();
    pool.shuffle(rng);
    pool
}

fn random_vtree(rng: &mut ChaCha8Rng) -> Vtree {
    fn build(rng: &mut ChaCha8Rng, leaves: &[&str]) -> Vtree {
        if leaves.len() == 1 {
            return Vtree::leaf(leaves[0]);
        }
        let split = rng.gen_range(1..leaves.len());
        Vtree::node(build(rng, &leaves[..split]), build(rng, &leaves[split..]))
            .expect("leaf blocks are disjoint")
    }
    let pool = shuffled_names(rng);
    let count = rng.gen_range(1..=pool.len());
    build(rng, &pool[..count])
}

#[test]
fn diagram_text_round_trips_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut store = DiagramStore::new();
    for _ in 0..60 {
        let root = random_diagram(&mut store, &mut rng, 4);
        let printed = format_diagram(&store, root);
        let reparsed = parse_diagram(&mut store, &printed).expect("printed diagrams parse");
        assert_eq!(reparsed, root, "diagram `{printed}` must round-trip");
    }
}

#[test]
fn sdd_text_round_trips_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..60 {
        let term = random_sdd(&mut rng, 3);
        let printed = term.to_string();
        assert_eq!(
            parse_sdd(&printed).expect("printed terms parse"),
            term,
            "sdd `{printed}` must round-trip"
        );
    }
}

#[test]
fn zsdd_text_round_trips_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let term = random_zsdd(&mut rng, 3);
        let printed = term.to_string();
        assert_eq!(
            parse_zsdd(&printed).expect("printed terms parse"),
            term,
            "zsdd `{printed}` must round-trip"
        );
    }
}

#[test]
fn vtree_text_round_trips_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..60 {
        let vtree = random_vtree(&mut rng);
        let printed = vtree.to_string();
        assert_eq!(
            parse_vtree(&printed).expect("printed vtrees parse"),
            vtree,
            "vtree `{printed}` must round-trip"
        );
    }
}

#[test]
fn combination_set_text_round_trips_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let universe = Universe::new(["a", "b", "c", "d", "e", "f"]);
    let subsets = universe.subsets();
    for _ in 0..60 {
        let members: Vec<_> = subsets
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .cloned()
            .collect();
        let set = CombinationSet::new(universe.clone(), members).expect("members fit");
        let printed = set.to_string();
        assert_eq!(
            &parse_combination_set(&printed).expect("printed sets parse"),
            set.as_set(),
            "combination set `{printed}` must round-trip"
        );
    }
}

#[test]
fn universe_and_order_text_round_trip_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let pool = shuffled_names(&mut rng);
        let names = &pool[..rng.gen_range(0..=pool.len())];

        let universe = Universe::new(names.to_vec());
        let printed = universe.to_string();
        assert_eq!(
            parse_universe(&printed).expect("printed universes parse"),
            universe,
            "universe `{printed}` must round-trip"
        );

        let order = TotalOrder::new(names.to_vec()).expect("shuffled names are distinct");
        let printed = order.to_string();
        assert_eq!(
            parse_order(&printed).expect("printed orders parse"),
            order,
            "order `{printed}` must round-trip"
        );
    }
}

#[test]
fn map_lines_round_trip_on_a_generated_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let domain_names = shuffled_names(&mut rng);
        let domain_names = &domain_names[..rng.gen_range(0..=4)];
        let codomain_names = shuffled_names(&mut rng);
        let codomain_names = &codomain_names[..rng.gen_range(1..=4)];
        let table: Vec<(&str, &str)> = domain_names
            .iter()
            .map(|x| (*x, *codomain_names.choose(&mut rng).expect("nonempty")))
            .collect();
        let map = FiniteMap::new(
            Universe::new(domain_names.to_vec()),
            Universe::new(codomain_names.to_vec()),
            table,
        )
        .expect("the table is total over its domain");

        let printed = format_map_lines(&map);
        let pairs = parse_map_pairs(&printed).expect("printed maps parse");
        let rebuilt = FiniteMap::new(map.domain().clone(), map.codomain().clone(), pairs)
            .expect("parsed pairs rebuild the map");
        assert_eq!(rebuilt, map, "map lines `{printed}` must round-trip");
    }
}

#[test]
fn shannon_conversion_through_the_binary_matches_the_library() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut store = DiagramStore::new();
    let mut seen = BTreeSet::new();
    for _ in 0..10 {
        let root = random_diagram(&mut store, &mut rng, 3);
        let printed = format_diagram(&store, root);
        if !seen.insert(printed.clone()) {
            continue;
        }
        let expected = format!("{}\n", sdd_of_diagram(&store, root));
        expect_clean(&["convert", "bdd-to-sdd", &printed], &expected);
    }
}
