//! Textual forms for every value the CLI exchanges, with parsers that report
//! byte positions and printers that emit one canonical form per value.
//!
//! Grammar (whitespace-insensitive, names match `[A-Za-z_][A-Za-z0-9_]*`):
//!
//! ```text
//! diagram  := `0` | `1` | `(` name diagram diagram `)`
//! sdd      := `T` | `F` | name | `(!` name `)` | `(or` (`(` sdd sdd `)`)+ `)`
//! zsdd     := `F` | `E` | name | `(+-` name `)` | `(or` (`(` zsdd zsdd `)`)+ `)`
//! vtree    := name | `(` vtree vtree `)`
//! combiset := `{` (`{` name* `}`)* `}`
//! order    := name (`,` name)*          (also universes; may be empty)
//! map      := (name `->` name)*
//! ```
//!
//! `T`, `F`, and `E` are reserved words in both sentential term languages,
//! so a term's family can be told apart by parsing alone. Combination sets
//! print with combinations ordered by size then lexicographically, which is
//! the comparison order of [`Combination`] itself.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::{DiagramStore, NodeId, NodeView, TotalOrder};
use crate::error::{Error, Result};
use crate::sentential::{Sdd, SddView, Zsdd, ZsddView};
use crate::setfun::{BooleanFunction, Combination, CombinationSet, FiniteMap, Universe};
use crate::vtree::{Vtree, VtreeView};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let byte = self.peek();
        if byte.is_some() {
            self.pos += 1;
        }
        byte
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, wanted: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == wanted => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!(
                "expected `{}`, found `{}`",
                wanted as char, b as char
            ))),
            None => Err(self.error(format!("expected `{}`, found end of input", wanted as char))),
        }
    }

    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                self.pos += 1;
            }
            _ => return Err(self.error("expected a name")),
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parse a diagram term into `store`, returning its root.
pub fn parse_diagram(store: &mut DiagramStore, src: &str) -> Result<NodeId> {
    let mut cur = Cursor::new(src);
    let root = diagram_term(store, &mut cur)?;
    cur.finish()?;
    Ok(root)
}

fn diagram_term(store: &mut DiagramStore, cur: &mut Cursor) -> Result<NodeId> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'0') => {
            cur.bump();
            Ok(store.terminal(false))
        }
        Some(b'1') => {
            cur.bump();
            Ok(store.terminal(true))
        }
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            let label = cur.name()?;
            let lo = diagram_term(store, cur)?;
            let hi = diagram_term(store, cur)?;
            cur.skip_ws();
            cur.expect(b')')?;
            Ok(store.decision(&label, lo, hi))
        }
        _ => Err(cur.error("expected `0`, `1`, or `(`")),
    }
}

pub fn parse_sdd(src: &str) -> Result<Sdd> {
    let mut cur = Cursor::new(src);
    let term = sdd_term(&mut cur)?;
    cur.finish()?;
    Ok(term)
}

fn sdd_term(cur: &mut Cursor) -> Result<Sdd> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            if cur.peek() == Some(b'!') {
                cur.bump();
                cur.skip_ws();
                let name = checked_variable(cur)?;
                cur.skip_ws();
                cur.expect(b')')?;
                return Ok(Sdd::neg(name));
            }
            let word_pos = cur.pos;
            let word = cur.name()?;
            if word != "or" {
                return Err(cur.error_at(word_pos, "expected `!` or `or`"));
            }
            let mut pairs = Vec::new();
            loop {
                cur.skip_ws();
                if cur.peek() == Some(b')') {
                    cur.bump();
                    break;
                }
                cur.expect(b'(')?;
                let prime = sdd_term(cur)?;
                let sub = sdd_term(cur)?;
                cur.skip_ws();
                cur.expect(b')')?;
                pairs.push((prime, sub));
            }
            if pairs.is_empty() {
                return Err(cur.error("expected at least one (prime sub) pair"));
            }
            Ok(Sdd::decomposition(pairs).expect("the pair list is nonempty"))
        }
        _ => {
            let word_pos = cur.pos;
            let word = cur.name()?;
            match word.as_str() {
                "T" => Ok(Sdd::top()),
                "F" => Ok(Sdd::bot()),
                "E" => Err(cur.error_at(word_pos, "`E` is a reserved word")),
                _ => Ok(Sdd::pos(word)),
            }
        }
    }
}

pub fn parse_zsdd(src: &str) -> Result<Zsdd> {
    let mut cur = Cursor::new(src);
    let term = zsdd_term(&mut cur)?;
    cur.finish()?;
    Ok(term)
}

fn zsdd_term(cur: &mut Cursor) -> Result<Zsdd> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            if cur.peek() == Some(b'+') {
                cur.bump();
                cur.expect(b'-')?;
                cur.skip_ws();
                let name = checked_variable(cur)?;
                cur.skip_ws();
                cur.expect(b')')?;
                return Ok(Zsdd::pm_var(name));
            }
            let word_pos = cur.pos;
            let word = cur.name()?;
            if word != "or" {
                return Err(cur.error_at(word_pos, "expected `+-` or `or`"));
            }
            let mut pairs = Vec::new();
            loop {
                cur.skip_ws();
                if cur.peek() == Some(b')') {
                    cur.bump();
                    break;
                }
                cur.expect(b'(')?;
                let prime = zsdd_term(cur)?;
                let sub = zsdd_term(cur)?;
                cur.skip_ws();
                cur.expect(b')')?;
                pairs.push((prime, sub));
            }
            if pairs.is_empty() {
                return Err(cur.error("expected at least one (prime sub) pair"));
            }
            Ok(Zsdd::decomposition(pairs).expect("the pair list is nonempty"))
        }
        _ => {
            let word_pos = cur.pos;
            let word = cur.name()?;
            match word.as_str() {
                "F" => Ok(Zsdd::bot()),
                "E" => Ok(Zsdd::eps()),
                "T" => Err(cur.error_at(word_pos, "`T` is a reserved word")),
                _ => Ok(Zsdd::var(word)),
            }
        }
    }
}

fn checked_variable(cur: &mut Cursor) -> Result<String> {
    let word_pos = cur.pos;
    let word = cur.name()?;
    if matches!(word.as_str(), "T" | "F" | "E") {
        return Err(cur.error_at(word_pos, format!("`{word}` is a reserved word")));
    }
    Ok(word)
}

pub fn parse_vtree(src: &str) -> Result<Vtree> {
    let mut cur = Cursor::new(src);
    let tree = vtree_term(&mut cur)?;
    cur.finish()?;
    Ok(tree)
}

fn vtree_term(cur: &mut Cursor) -> Result<Vtree> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            let left = vtree_term(cur)?;
            let right = vtree_term(cur)?;
            cur.skip_ws();
            cur.expect(b')')?;
            Vtree::node(left, right)
        }
        _ => Ok(Vtree::leaf(cur.name()?)),
    }
}

/// Parse a combination-set literal. The universe is not part of the text;
/// pair the result with one via [`CombinationSet::new`].
pub fn parse_combination_set(src: &str) -> Result<BTreeSet<Combination>> {
    let mut cur = Cursor::new(src);
    let combos = combiset_body(&mut cur)?;
    cur.finish()?;
    Ok(combos)
}

fn combiset_body(cur: &mut Cursor) -> Result<BTreeSet<Combination>> {
    cur.skip_ws();
    cur.expect(b'{')?;
    let mut combos = BTreeSet::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b'}') => {
                cur.bump();
                return Ok(combos);
            }
            Some(b'{') => {
                cur.bump();
                let mut members = Vec::new();
                loop {
                    cur.skip_ws();
                    if cur.peek() == Some(b'}') {
                        cur.bump();
                        break;
                    }
                    members.push(cur.name()?);
                }
                combos.insert(Combination::new(members));
            }
            _ => return Err(cur.error("expected `{` or `}`")),
        }
    }
}

/// Parse a comma-separated name list into a universe. Empty input (or only
/// whitespace) is the empty universe.
pub fn parse_universe(src: &str) -> Result<Universe> {
    Ok(Universe::new(name_list(src)?))
}

/// Parse a comma-separated name list into a total order. Duplicates are an
/// error here, unlike for universes.
pub fn parse_order(src: &str) -> Result<TotalOrder> {
    TotalOrder::new(name_list(src)?)
}

fn name_list(src: &str) -> Result<Vec<String>> {
    let mut cur = Cursor::new(src);
    let mut names = Vec::new();
    cur.skip_ws();
    if cur.pos == src.len() {
        return Ok(names);
    }
    names.push(cur.name()?);
    loop {
        cur.skip_ws();
        if cur.pos == src.len() {
            return Ok(names);
        }
        cur.expect(b',')?;
        cur.skip_ws();
        names.push(cur.name()?);
    }
}

/// Parse `name -> name` entries, separated by any whitespace.
pub fn parse_map_pairs(src: &str) -> Result<Vec<(String, String)>> {
    let mut cur = Cursor::new(src);
    let mut pairs = Vec::new();
    loop {
        cur.skip_ws();
        if cur.pos == src.len() {
            return Ok(pairs);
        }
        let source = cur.name()?;
        cur.skip_ws();
        cur.expect(b'-')?;
        cur.expect(b'>')?;
        cur.skip_ws();
        let target = cur.name()?;
        pairs.push((source, target));
    }
}

pub fn format_diagram(store: &DiagramStore, root: NodeId) -> String {
    let mut out = String::new();
    write_diagram(store, root, &mut out);
    out
}

fn write_diagram(store: &DiagramStore, id: NodeId, out: &mut String) {
    match store.view(id) {
        NodeView::Terminal(false) => out.push('0'),
        NodeView::Terminal(true) => out.push('1'),
        NodeView::Decision { label, lo, hi } => {
            out.push('(');
            out.push_str(label);
            out.push(' ');
            write_diagram(store, lo, out);
            out.push(' ');
            write_diagram(store, hi, out);
            out.push(')');
        }
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for member in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            f.write_str(member)?;
            first = false;
        }
        f.write_str("}")
    }
}

fn write_combination_sets(
    f: &mut fmt::Formatter<'_>,
    combos: &BTreeSet<Combination>,
) -> fmt::Result {
    f.write_str("{")?;
    for combo in combos {
        write!(f, "{combo}")?;
    }
    f.write_str("}")
}

impl fmt::Display for CombinationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination_sets(f, self.as_set())
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination_sets(f, self.as_set())
    }
}

impl fmt::Display for Sdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            SddView::Bot => f.write_str("F"),
            SddView::Top => f.write_str("T"),
            SddView::Pos(x) => f.write_str(x),
            SddView::Neg(x) => write!(f, "(! {x})"),
            SddView::Decomp(pairs) => {
                f.write_str("(or")?;
                for (p, s) in pairs {
                    write!(f, " ({p} {s})")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Zsdd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            ZsddView::Bot => f.write_str("F"),
            ZsddView::Eps => f.write_str("E"),
            ZsddView::Var(x) => f.write_str(x),
            ZsddView::PmVar(x) => write!(f, "(+- {x})"),
            ZsddView::Decomp(pairs) => {
                f.write_str("(or")?;
                for (p, s) in pairs {
                    write!(f, " ({p} {s})")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Vtree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            VtreeView::Leaf(name) => f.write_str(name),
            VtreeView::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Display for TotalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

/// The map file form: one `name -> name` line per entry.
pub fn format_map_lines(map: &FiniteMap) -> String {
    let mut out = String::new();
    for (x, y) in map.pairs() {
        out.push_str(x);
        out.push_str(" -> ");
        out.push_str(y);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_round_trip_and_errors() {
        let mut store = DiagramStore::new();
        let d = parse_diagram(&mut store, " ( a (b 0 1) 1 ) ").unwrap();
        assert_eq!(format_diagram(&store, d), "(a (b 0 1) 1)");
        assert_eq!(parse_diagram(&mut store, "(a (b 0 1) 1)").unwrap(), d);

        match parse_diagram(&mut store, "(a 0)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(parse_diagram(&mut store, "2").is_err());
        assert!(parse_diagram(&mut store, "1 1").is_err());
        assert!(parse_diagram(&mut store, "(a 0 1").is_err());
    }

    #[test]
    fn sdd_text_forms() {
        assert_eq!(parse_sdd("T").unwrap(), Sdd::top());
        assert_eq!(parse_sdd("F").unwrap(), Sdd::bot());
        assert_eq!(parse_sdd("or").unwrap(), Sdd::pos("or"));
        assert_eq!(parse_sdd("(! a)").unwrap(), Sdd::neg("a"));
        let d = parse_sdd("(or (a T) ((! a) F))").unwrap();
        assert_eq!(
            d,
            Sdd::decomposition([(Sdd::pos("a"), Sdd::top()), (Sdd::neg("a"), Sdd::bot())])
                .unwrap()
        );
        // Canonical print order puts the negative literal first.
        assert_eq!(d.to_string(), "(or ((! a) F) (a T))");
        assert!(parse_sdd("E").is_err());
        assert!(parse_sdd("(or)").is_err());
        assert!(parse_sdd("(and (a T))").is_err());
        assert!(parse_sdd("(! T)").is_err());
    }

    #[test]
    fn zsdd_text_forms() {
        assert_eq!(parse_zsdd("E").unwrap(), Zsdd::eps());
        assert_eq!(parse_zsdd("F").unwrap(), Zsdd::bot());
        assert_eq!(parse_zsdd("x1").unwrap(), Zsdd::var("x1"));
        assert_eq!(parse_zsdd("(+- a)").unwrap(), Zsdd::pm_var("a"));
        let alpha = parse_zsdd("(or (a E) (E b))").unwrap();
        assert_eq!(
            alpha,
            Zsdd::decomposition([
                (Zsdd::var("a"), Zsdd::eps()),
                (Zsdd::eps(), Zsdd::var("b")),
            ])
            .unwrap()
        );
        assert_eq!(alpha.to_string(), "(or (E b) (a E))");
        assert!(parse_zsdd("T").is_err());
        assert!(parse_zsdd("(+ a)").is_err());
    }

    #[test]
    fn vtree_text_forms() {
        assert_eq!(parse_vtree("a").unwrap(), Vtree::leaf("a"));
        let wide = parse_vtree("((a c) b)").unwrap();
        assert_eq!(wide.to_string(), "((a c) b)");
        assert!(parse_vtree("(a a)").is_err());
        assert!(parse_vtree("(a)").is_err());
    }

    #[test]
    fn combiset_text_forms() {
        assert!(parse_combination_set("{}").unwrap().is_empty());
        let set = parse_combination_set("{{a b} {} {b}}").unwrap();
        let universe = Universe::new(["a", "b"]);
        let cs = CombinationSet::new(universe, set).unwrap();
        assert_eq!(cs.to_string(), "{{}{b}{a b}}");
        assert!(parse_combination_set("{{a}").is_err());
        assert!(parse_combination_set("{a}").is_err());
    }

    #[test]
    fn name_list_forms() {
        assert!(parse_universe("").unwrap().is_empty());
        assert_eq!(parse_universe(" a , b ").unwrap(), Universe::new(["a", "b"]));
        assert_eq!(parse_universe("a,a").unwrap(), Universe::new(["a"]));
        assert!(parse_order("a,a").is_err());
        assert_eq!(parse_order("b,a").unwrap().names(), ["b", "a"]);
        assert!(parse_universe("a,,b").is_err());
        assert!(parse_universe("a b").is_err());
    }

    #[test]
    fn map_pair_lines() {
        let pairs = parse_map_pairs("a -> x\nb -> y\n").unwrap();
        assert_eq!(
            pairs,
            vec![
                ("a".to_string(), "x".to_string()),
                ("b".to_string(), "y".to_string())
            ]
        );
        assert!(parse_map_pairs("a => x").is_err());
        let map = FiniteMap::new(
            Universe::new(["a", "b"]),
            Universe::new(["x", "y"]),
            pairs,
        )
        .unwrap();
        assert_eq!(format_map_lines(&map), "a -> x\nb -> y\n");
    }
}
