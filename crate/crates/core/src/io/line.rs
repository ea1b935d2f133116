//! One hyperedge per line: whitespace-separated node ids with an optional
//! trailing `t=<int>`. Blank lines and `#` comments are skipped, except for
//! a `# n <count>` header that fixes the node universe.

use std::fmt::Write as _;
use std::path::Path;

use super::{parse_error, read_text, write_atomic};
use crate::error::{Error, Result};
use crate::hypergraph::{canonicalize_timed, CanonicalizeOptions, Hypergraph};

pub fn parse_line_format(text: &str, path: &Path) -> Result<Hypergraph> {
    let mut raw: Vec<(Vec<i64>, Option<i64>)> = Vec::new();
    let mut n = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("n") {
                let v = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_error(path, lineno, "malformed `# n <count>` header"))?;
                n = Some(v);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut ids = Vec::new();
        let mut ts = None;
        let toks: Vec<&str> = line.split_whitespace().collect();
        for (j, t) in toks.iter().enumerate() {
            if let Some(v) = t.strip_prefix("t=") {
                if j + 1 != toks.len() {
                    return Err(parse_error(path, lineno, "timestamp must be the last token"));
                }
                ts = Some(v.parse::<i64>().map_err(|_| parse_error(path, lineno, format!("bad timestamp {t:?}")))?);
            } else {
                let id = t
                    .parse::<u32>()
                    .map_err(|_| parse_error(path, lineno, format!("bad node id {t:?}")))?;
                ids.push(i64::from(id));
            }
        }
        if ids.is_empty() {
            return Err(parse_error(path, lineno, "hyperedge without members"));
        }
        raw.push((ids, ts));
    }
    canonicalize_timed(raw, CanonicalizeOptions { n, dedup: false })
        .map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

pub fn read_line_format(path: &Path) -> Result<Hypergraph> {
    parse_line_format(&read_text(path)?, path)
}

pub fn format_line_format(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "# n {}", h.n()).unwrap();
    for e in h.edges() {
        for (i, v) in e.members().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        if let Some(t) = e.timestamp() {
            write!(out, " t={t}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_line_format(h: &Hypergraph, path: &Path) -> Result<()> {
    write_atomic(path, format_line_format(h).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hyperedge;
    use proptest::prelude::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn trailing_timestamp() {
        let h = parse_line_format("1 2 3 t=7\n", p()).unwrap();
        assert_eq!(h.edges(), &[Hyperedge::from_ids(&[1, 2, 3]).unwrap().with_timestamp(Some(7))]);
        assert_eq!(h.n(), 4);
    }

    #[test]
    fn normalizes_then_round_trips() {
        let h = parse_line_format("# comment\n3 1 3\n\n0 t=-2\n", p()).unwrap();
        let text = format_line_format(&h);
        assert_eq!(text, "# n 4\n1 3\n0 t=-2\n");
        assert_eq!(parse_line_format(&text, p()).unwrap(), h);
    }

    #[test]
    fn malformed_lines_name_their_line() {
        for (text, line) in [("1 2\n1 x\n", 2), ("t=3\n", 1), ("1 t=3 2\n", 1), ("1 -2\n", 1), ("# n q\n", 1)] {
            match parse_line_format(text, p()) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(edges in prop::collection::vec((prop::collection::vec(0u32..30, 1..6), prop::option::of(-50i64..50)), 0..30)) {
            let e: Vec<Hyperedge> = edges.iter().map(|(m, t)| Hyperedge::from_ids(m).unwrap().with_timestamp(*t)).collect();
            let h = Hypergraph::new(30, e).unwrap();
            let back = parse_line_format(&format_line_format(&h), p()).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
