//! Text formats: triple TSV, edge-list TSV and finite-algebra op tables.
//!
//! All formats are UTF-8 with LF line endings. Blank lines and lines whose
//! first character is `#` are skipped.
//!
//! Triples: `row<TAB>col<TAB>value`.
//!
//! Edge lists: `edge<TAB>src<TAB>dst[<TAB>out_weight[<TAB>in_weight]]`.
//! Omitted weights default to the algebra's one. Lines sharing an edge key
//! accumulate into one hyperedge.
//!
//! Finite algebras:
//!
//! ```text
//! elements: 0,1
//! zero: 0
//! one: 1
//! plus:
//! 0,1
//! 1,1
//! times:
//! 0,0
//! 0,1
//! ```
//!
//! Table cells name elements by their encoding; commas inside `{...}` do not
//! split cells.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{powerset, Algebra, FiniteAlgebraSpec, TableKind, Value};
use crate::array::{AssociativeArray, Key, Triple};
use crate::graph::{Graph, GraphBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileRole {
    Triples,
    EdgeList,
    FiniteAlgebra,
}

impl fmt::Display for FileRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileRole::Triples => "triples",
            FileRole::EdgeList => "edge list",
            FileRole::FiniteAlgebra => "finite algebra",
        })
    }
}

/// The first problem found in an input, located by 1-based line number.
/// Problems detected only at end of input point one past the last line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{role} line {line}, {column}: {message}")]
pub struct ParseDiagnostic {
    pub role: FileRole,
    pub line: usize,
    pub column: String,
    pub message: String,
}

impl ParseDiagnostic {
    fn new(
        role: FileRole,
        line: usize,
        column: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        ParseDiagnostic {
            role,
            line,
            column: column.into(),
            message: message.into(),
        }
    }
}

/// Numbered lines that carry content.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn end_line(text: &str) -> usize {
    text.lines().count() + 1
}

fn field(n: usize, what: &str) -> String {
    format!("field {} ({what})", n + 1)
}

fn is_section_header(l: &str) -> bool {
    l.split_once(':')
        .is_some_and(|(h, _)| matches!(h.trim(), "elements" | "zero" | "one" | "plus" | "times"))
}

fn parse_key(
    role: FileRole,
    line: usize,
    n: usize,
    what: &str,
    raw: &str,
) -> Result<Key, ParseDiagnostic> {
    Key::new(raw).map_err(|e| ParseDiagnostic::new(role, line, field(n, what), e.to_string()))
}

fn parse_value(
    role: FileRole,
    line: usize,
    n: usize,
    what: &str,
    raw: &str,
    alg: &Algebra,
) -> Result<Value, ParseDiagnostic> {
    alg.decode(raw)
        .map_err(|e| ParseDiagnostic::new(role, line, field(n, what), e.to_string()))
}

/// One triple per content line. Zero values are kept; building an array
/// from them drops them.
pub fn parse_triples(text: &str, alg: &Algebra) -> Result<Vec<Triple>, ParseDiagnostic> {
    let role = FileRole::Triples;
    content_lines(text)
        .map(|(line, l)| {
            let fields: Vec<&str> = l.split('\t').collect();
            if fields.len() != 3 {
                return Err(ParseDiagnostic::new(
                    role,
                    line,
                    "line",
                    format!("expected 3 tab-separated fields, found {}", fields.len()),
                ));
            }
            Ok(Triple::new(
                parse_key(role, line, 0, "row", fields[0])?,
                parse_key(role, line, 1, "col", fields[1])?,
                parse_value(role, line, 2, "value", fields[2], alg)?,
            ))
        })
        .collect()
}

pub fn parse_edge_list(text: &str, alg: &Algebra) -> Result<Graph, ParseDiagnostic> {
    let role = FileRole::EdgeList;
    let mut builder = GraphBuilder::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        if !(3..=5).contains(&fields.len()) {
            return Err(ParseDiagnostic::new(
                role,
                line,
                "line",
                format!(
                    "expected 3 to 5 tab-separated fields, found {}",
                    fields.len()
                ),
            ));
        }
        let edge = parse_key(role, line, 0, "edge", fields[0])?;
        let src = parse_key(role, line, 1, "source", fields[1])?;
        let dst = parse_key(role, line, 2, "target", fields[2])?;
        let mut weights = [alg.one().clone(), alg.one().clone()];
        for (slot, (n, what)) in weights
            .iter_mut()
            .zip([(3, "out weight"), (4, "in weight")])
        {
            if let Some(raw) = fields.get(n) {
                let w = parse_value(role, line, n, what, raw, alg)?;
                if alg.is_zero(&w) {
                    return Err(ParseDiagnostic::new(
                        role,
                        line,
                        field(n, what),
                        "zero weight is not allowed",
                    ));
                }
                *slot = w;
            }
        }
        let [w_out, w_in] = weights;
        builder
            .add(edge, src, dst, w_out, w_in)
            .map_err(|e| ParseDiagnostic::new(role, line, "line", e.to_string()))?;
    }
    Ok(builder.build())
}

/// Splits on commas outside `{...}`, trimming spaces around each cell.
fn split_cells(s: &str) -> Result<Vec<&str>, String> {
    let mut cells = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.checked_sub(1).ok_or("unbalanced '}'")?,
            ',' if depth == 0 => {
                cells.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced '{'".into());
    }
    cells.push(s[start..].trim());
    Ok(cells)
}

pub fn parse_finite_algebra(text: &str) -> Result<FiniteAlgebraSpec, ParseDiagnostic> {
    let role = FileRole::FiniteAlgebra;
    let diag =
        |line, column: &str, message: String| ParseDiagnostic::new(role, line, column, message);
    let mut lines = content_lines(text).peekable();
    let eof = end_line(text);

    fn header<'t>(
        lines: &mut impl Iterator<Item = (usize, &'t str)>,
        name: &str,
        eof: usize,
    ) -> Result<(usize, &'t str), ParseDiagnostic> {
        let role = FileRole::FiniteAlgebra;
        match lines.next() {
            None => Err(ParseDiagnostic::new(
                role,
                eof,
                "section",
                format!("missing `{name}:` section"),
            )),
            Some((line, l)) => match l.split_once(':') {
                Some((h, rest)) if h.trim() == name => Ok((line, rest.trim())),
                _ => Err(ParseDiagnostic::new(
                    role,
                    line,
                    "section",
                    format!("expected `{name}:` section"),
                )),
            },
        }
    }

    let (el_line, el_text) = header(&mut lines, "elements", eof)?;
    let mut elements: Vec<Value> = Vec::new();
    let cells = split_cells(el_text).map_err(|m| diag(el_line, "elements", m))?;
    for (i, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(diag(
                el_line,
                "elements",
                format!("element {} is empty", i + 1),
            ));
        }
        let v = Value::parse(cell);
        if elements.contains(&v) {
            return Err(diag(
                el_line,
                "elements",
                format!("duplicate element {cell}"),
            ));
        }
        elements.push(v);
    }
    let n = elements.len();
    let lookup = |line, column: &str, cell: &str| {
        elements
            .iter()
            .position(|e| *e == Value::parse(cell))
            .ok_or_else(|| diag(line, column, format!("unknown element {cell:?}")))
    };

    let (line, z) = header(&mut lines, "zero", eof)?;
    let zero = lookup(line, "zero", z)?;
    let (line, o) = header(&mut lines, "one", eof)?;
    let one = lookup(line, "one", o)?;

    let mut tables = Vec::new();
    for kind in [TableKind::Plus, TableKind::Times] {
        let name = kind.to_string();
        let (line, rest) = header(&mut lines, &name, eof)?;
        if !rest.is_empty() {
            return Err(diag(
                line,
                "section",
                format!("rows of `{name}:` start on the next line"),
            ));
        }
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let short = |line| {
                diag(
                    line,
                    "table",
                    format!("{name} table has {r} rows, expected {n}"),
                )
            };
            let (line, l) = match lines.peek() {
                None => return Err(short(eof)),
                Some(&(line, l)) if is_section_header(l) => return Err(short(line)),
                Some(&next) => next,
            };
            lines.next();
            let column = format!("{name} row {}", r + 1);
            let cells = split_cells(l).map_err(|m| diag(line, &column, m))?;
            if cells.len() != n {
                return Err(diag(
                    line,
                    &column,
                    format!("row has {} entries, expected {n}", cells.len()),
                ));
            }
            rows.push(
                cells
                    .iter()
                    .map(|c| lookup(line, &column, c))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        tables.push(rows);
    }
    if let Some((line, _)) = lines.next() {
        return Err(diag(
            line,
            "line",
            "unexpected content after `times:` table".into(),
        ));
    }
    let times = tables.pop().expect("two tables");
    let plus = tables.pop().expect("two tables");
    let spec = FiniteAlgebraSpec {
        elements,
        zero,
        one,
        plus,
        times,
    };
    // Construction above already enforces every table invariant.
    debug_assert!(spec.validate().is_ok());
    Ok(spec)
}

/// Set-valued triples over the power set of every token they mention.
/// Returns the array (empty sets dropped) and that algebra.
pub fn parse_document_triples(text: &str) -> Result<(AssociativeArray, Algebra), ParseDiagnostic> {
    let role = FileRole::Triples;
    let mut raw = Vec::new();
    let mut vocab = BTreeSet::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split('\t').collect();
        if fields.len() != 3 {
            return Err(ParseDiagnostic::new(
                role,
                line,
                "line",
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let row = parse_key(role, line, 0, "row", fields[0])?;
        let col = parse_key(role, line, 1, "col", fields[1])?;
        let value = crate::algebra::parse_set_value(fields[2]).ok_or_else(|| {
            ParseDiagnostic::new(
                role,
                line,
                field(2, "value"),
                format!("{:?} is not a token set", fields[2]),
            )
        })?;
        if let Value::Set(tokens) = &value {
            vocab.extend(tokens.iter().cloned());
        }
        raw.push(Triple::new(row, col, value));
    }
    let alg = powerset(vocab);
    let array = AssociativeArray::from_triples(raw, &alg)
        .expect("every value is in the vocabulary power set");
    Ok((array, alg))
}

/// Triples in `(row, col)` order, one per line.
pub fn serialize_triples(a: &AssociativeArray) -> String {
    let mut out = String::new();
    for (r, c, v) in a.iter() {
        writeln!(out, "{r}\t{c}\t{v}").expect("writing to a String");
    }
    out
}

/// One line per (source, target) pair of every edge, both weights explicit.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        for (s, w_out) in &e.sources {
            for (t, w_in) in &e.targets {
                writeln!(out, "{}\t{s}\t{t}\t{w_out}\t{w_in}", e.key).expect("writing to a String");
            }
        }
    }
    out
}

pub fn serialize_finite_algebra(spec: &FiniteAlgebraSpec) -> String {
    let names: Vec<String> = spec.elements.iter().map(Value::encode).collect();
    let mut out = String::new();
    writeln!(out, "elements: {}", names.join(",")).expect("writing to a String");
    writeln!(out, "zero: {}", names[spec.zero]).expect("writing to a String");
    writeln!(out, "one: {}", names[spec.one]).expect("writing to a String");
    for (kind, table) in [
        (TableKind::Plus, &spec.plus),
        (TableKind::Times, &spec.times),
    ] {
        writeln!(out, "{kind}:").expect("writing to a String");
        for row in table {
            let cells: Vec<&str> = row.iter().map(|&i| names[i].as_str()).collect();
            writeln!(out, "{}", cells.join(",")).expect("writing to a String");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_builtin, BuiltinParams};
    use crate::array::key;

    fn nat() -> Algebra {
        make_builtin("natural", &BuiltinParams::default()).unwrap()
    }

    fn boolean_text() -> &'static str {
        "elements: 0,1\nzero: 0\none: 1\nplus:\n0,1\n1,1\ntimes:\n0,0\n0,1\n"
    }

    #[test]
    fn triples() {
        assert_eq!(
            parse_triples("a\tb\t5\n", &nat()).unwrap(),
            vec![Triple::new(key("a"), key("b"), Value::int(5))]
        );
        let ps = make_builtin("powerset", &BuiltinParams::universe(["x", "y"])).unwrap();
        assert_eq!(
            parse_triples("# comment\n\na\tb\t{x,y}\n", &ps).unwrap(),
            vec![Triple::new(key("a"), key("b"), Value::set(["x", "y"]))]
        );
        assert_eq!(parse_triples("a\tb\t0\n", &nat()).unwrap().len(), 1);
    }

    #[test]
    fn triple_diagnostics() {
        let d = parse_triples("a\tb\n", &nat()).unwrap_err();
        assert_eq!(
            (d.role, d.line, d.column.as_str()),
            (FileRole::Triples, 1, "line")
        );
        assert!(d.message.contains("found 2"));

        let d = parse_triples("a\tb\t1\nx\ty\t-3\n", &nat()).unwrap_err();
        assert_eq!((d.line, d.column.as_str()), (2, "field 3 (value)"));

        let d = parse_triples("a\tb\tc\t1\n", &nat()).unwrap_err();
        assert_eq!(d.line, 1);
        assert_eq!(d, parse_triples("a\tb\tc\t1\n", &nat()).unwrap_err());

        let d = parse_triples("\tb\t1\n", &nat()).unwrap_err();
        assert_eq!(d.column, "field 1 (row)");
        assert_eq!(d.to_string(), "triples line 1, field 1 (row): key is empty");
    }

    #[test]
    fn edge_lists() {
        let one = Value::int(1);
        let g = parse_edge_list("k1\ta\tb\n", &nat()).unwrap();
        assert_eq!(
            g.edges(),
            &[crate::graph::EdgeRecord::simple(
                key("k1"),
                key("a"),
                key("b"),
                one.clone(),
                one.clone()
            )]
        );

        let g = parse_edge_list("k1\ta\tc\nk1\tb\tc\n", &nat()).unwrap();
        assert_eq!(g.edges().len(), 1);
        let e = &g.edges()[0];
        assert_eq!(
            e.sources.keys().map(Key::as_str).collect::<Vec<_>>(),
            ["a", "b"]
        );
        assert_eq!(e.targets.keys().map(Key::as_str).collect::<Vec<_>>(), ["c"]);

        let g = parse_edge_list("k\ta\tb\t3\t4\n", &nat()).unwrap();
        assert_eq!(g.edges()[0].sources[&key("a")], Value::int(3));
        assert_eq!(g.edges()[0].targets[&key("b")], Value::int(4));
    }

    #[test]
    fn edge_list_diagnostics() {
        let d = parse_edge_list("k1\ta\tb\t0\n", &nat()).unwrap_err();
        assert_eq!((d.line, d.column.as_str()), (1, "field 4 (out weight)"));
        assert!(d.message.contains("zero weight"));

        let d = parse_edge_list("k1\ta\tb\t1\t0\n", &nat()).unwrap_err();
        assert_eq!(d.column, "field 5 (in weight)");

        let d = parse_edge_list("# c\nk1\ta\n", &nat()).unwrap_err();
        assert_eq!((d.role, d.line), (FileRole::EdgeList, 2));

        let d = parse_edge_list("k\ta\tb\t1\t1\t1\n", &nat()).unwrap_err();
        assert!(d.message.contains("found 6"));

        let d = parse_edge_list("k\ta\tb\t1\nk\ta\tc\t2\n", &nat()).unwrap_err();
        assert_eq!(d.line, 2);
        assert!(d.message.contains("different weights"));
    }

    #[test]
    fn finite_algebra_round_trip() {
        let spec = parse_finite_algebra(boolean_text()).unwrap();
        assert_eq!(spec.elements, vec![Value::int(0), Value::int(1)]);
        assert_eq!(spec.plus, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(spec.times, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(serialize_finite_algebra(&spec), boolean_text());

        let ps = make_builtin("powerset", &BuiltinParams::universe(["x", "y"])).unwrap();
        let spec = FiniteAlgebraSpec::from_algebra(&ps).unwrap();
        let text = serialize_finite_algebra(&spec);
        assert!(text.starts_with("elements: {},{x},{y},{x,y}\n"));
        assert_eq!(parse_finite_algebra(&text).unwrap(), spec);
    }

    #[test]
    fn finite_algebra_diagnostics() {
        let ragged = "elements: 0,1\nzero: 0\none: 1\nplus:\n0,1\n1\ntimes:\n0,0\n0,1\n";
        let d = parse_finite_algebra(ragged).unwrap_err();
        assert_eq!((d.line, d.column.as_str()), (6, "plus row 2"));
        assert_eq!(d.message, "row has 1 entries, expected 2");

        let d = parse_finite_algebra("elements: 0,1\nzero: q\n").unwrap_err();
        assert_eq!((d.line, d.column.as_str()), (2, "zero"));
        assert!(d.message.contains("unknown element"));

        let d =
            parse_finite_algebra("elements: 0,1\nzero: 0\none: 1\nplus:\n0,1\n1,1\n").unwrap_err();
        assert_eq!(d.line, 7);
        assert_eq!(d.message, "missing `times:` section");

        let d = parse_finite_algebra("elements: 0,1\nzero: 0\none: 1\nplus:\n0,1\ntimes:\n")
            .unwrap_err();
        assert_eq!(d.line, 6);
        assert_eq!(d.message, "plus table has 1 rows, expected 2");

        let d = parse_finite_algebra("zero: 0\n").unwrap_err();
        assert_eq!(d.message, "expected `elements:` section");

        let d = parse_finite_algebra("elements: 0,0\n").unwrap_err();
        assert!(d.message.contains("duplicate"));

        let d =
            parse_finite_algebra("elements: 0,1\nzero: 0\none: 1\nplus:\n0,1\n1,x\n").unwrap_err();
        assert_eq!((d.line, d.message.as_str()), (6, "unknown element \"x\""));

        let extra = format!("{}0\n", boolean_text());
        assert_eq!(parse_finite_algebra(&extra).unwrap_err().line, 10);
    }

    #[test]
    fn cells_respect_braces() {
        assert_eq!(
            split_cells("{a,b}, {} ,c").unwrap(),
            vec!["{a,b}", "{}", "c"]
        );
        assert!(split_cells("{a,b").is_err());
        assert!(split_cells("a}").is_err());
    }

    #[test]
    fn serialization() {
        assert_eq!(serialize_triples(&AssociativeArray::empty(&nat())), "");
        let a = AssociativeArray::from_triples(
            [
                Triple::new(key("b"), key("a"), Value::int(1)),
                Triple::new(key("a"), key("b"), Value::int(2)),
            ],
            &nat(),
        )
        .unwrap();
        let text = serialize_triples(&a);
        assert_eq!(text, "a\tb\t2\nb\ta\t1\n");
        let back =
            AssociativeArray::from_triples(parse_triples(&text, &nat()).unwrap(), &nat()).unwrap();
        assert_eq!(back, a);

        let ps = make_builtin("powerset", &BuiltinParams::universe(["x", "y"])).unwrap();
        let b = AssociativeArray::from_triples(parse_triples("r\tc\t{y,x}\n", &ps).unwrap(), &ps)
            .unwrap();
        assert_eq!(serialize_triples(&b), "r\tc\t{x,y}\n");
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "k1\ta\tc\t1\t1\nk1\tb\tc\t2\t1\nk2\tc\tc\t3\t5\n";
        let g = parse_edge_list(text, &nat()).unwrap();
        assert_eq!(serialize_edge_list(&g), text);
        assert_eq!(
            parse_edge_list(&serialize_edge_list(&g), &nat()).unwrap(),
            g
        );
    }

    #[test]
    fn document_triples() {
        let (a, alg) = parse_document_triples(
            "d1\td1\t{apple,pear}\nd1\td2\t{pear}\nd2\td1\t{pear}\nd2\td2\t{pear,plum}\n",
        )
        .unwrap();
        assert_eq!(alg.name(), "powerset({apple,pear,plum})");
        assert_eq!(a.nnz(), 4);
        let d = parse_document_triples("d1\td1\t5\n").unwrap_err();
        assert_eq!(d.column, "field 3 (value)");
        let (empty, _) = parse_document_triples("").unwrap();
        assert!(empty.is_empty());
    }
}
