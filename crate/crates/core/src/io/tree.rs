//! Tree files: a JSON document or the compact parenthesized form.
//!
//! The compact form nests children in parentheses, with an optional name
//! after the closing parenthesis: `(a,(b,c)x,d)r;`. Unnamed nodes get
//! generated ids `_1`, `_2`, ... that avoid every given name. Names may be
//! single-quoted (`'a b'`, with `''` for a quote).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::RootedTree;

/// JSON form of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub root: String,
    pub nodes: Vec<NodeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDocument {
    pub id: String,
    #[serde(default)]
    pub children: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TreeDocument {
    pub fn from_tree(tree: &RootedTree) -> Self {
        TreeDocument {
            root: tree.node(tree.root()).id.clone(),
            nodes: tree
                .nodes()
                .iter()
                .map(|n| NodeDocument {
                    id: n.id.clone(),
                    children: n
                        .children
                        .iter()
                        .map(|&c| tree.node(c).id.clone())
                        .collect(),
                    label: n.label.clone(),
                })
                .collect(),
        }
    }

    pub fn to_tree(&self) -> Result<RootedTree> {
        let records = self
            .nodes
            .iter()
            .map(|n| (n.id.clone(), n.children.clone(), n.label.clone()))
            .collect();
        RootedTree::from_records(&self.root, records)
    }
}

/// Converts a serde_json error into a positioned parse error.
pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line().max(1),
        column: e.column().max(1),
        message: strip_position(&e.to_string()),
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Parses either format; text whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_tree(text: &str) -> Result<RootedTree> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    if trimmed.starts_with('{') {
        let doc: TreeDocument = serde_json::from_str(text).map_err(json_error)?;
        doc.to_tree()
    } else {
        parse_compact(text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Lexer<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Reads an optional name and where it starts.
    fn name(&mut self) -> Result<Option<(String, Pos)>> {
        self.skip_blank();
        let at = self.pos;
        Ok(self.bare_or_quoted()?.map(|s| (s, at)))
    }

    fn bare_or_quoted(&mut self) -> Result<Option<String>> {
        match self.peek() {
            Some('\'') => {
                let start = self.pos;
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(err(start, "unterminated quoted name")),
                        Some('\'') if self.peek() == Some('\'') => {
                            self.bump();
                            s.push('\'');
                        }
                        Some('\'') => break,
                        Some(c) => s.push(c),
                    }
                }
                Ok(Some(s))
            }
            Some(c) if !is_special(c) => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if is_special(c) || c.is_whitespace() {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(s))
            }
            _ => Ok(None),
        }
    }
}

fn is_special(c: char) -> bool {
    matches!(c, '(' | ')' | ',' | ';' | '\'')
}

struct Raw {
    name: Option<(String, Pos)>,
    children: Vec<usize>,
}

fn parse_compact(text: &str) -> Result<RootedTree> {
    let mut lx = Lexer {
        chars: text.chars().peekable(),
        pos: Pos { line: 1, column: 1 },
    };
    let mut raw: Vec<Raw> = Vec::new();
    // Open parentheses: node index and the position of '('.
    let mut open: Vec<(usize, Pos)> = Vec::new();
    let new_node = |raw: &mut Vec<Raw>, parent: Option<usize>| {
        raw.push(Raw {
            name: None,
            children: Vec::new(),
        });
        let id = raw.len() - 1;
        if let Some(p) = parent {
            raw[p].children.push(id);
        }
        id
    };
    // Parse one node start: either '(' or a leaf name.
    let mut expect_node = true;
    loop {
        lx.skip_blank();
        let here = lx.pos;
        if expect_node {
            let parent = open.last().map(|&(p, _)| p);
            let id = new_node(&mut raw, parent);
            if lx.peek() == Some('(') {
                lx.bump();
                open.push((id, here));
                continue;
            }
            raw[id].name = lx.name()?;
            expect_node = false;
            continue;
        }
        match lx.peek() {
            Some(',') if !open.is_empty() => {
                lx.bump();
                expect_node = true;
            }
            Some(')') if !open.is_empty() => {
                lx.bump();
                let (id, _) = open.pop().expect("checked non-empty");
                raw[id].name = lx.name()?;
            }
            Some(')') => return Err(err(here, "unmatched ')'")),
            Some(';') if open.is_empty() => {
                lx.bump();
                lx.skip_blank();
                if lx.peek().is_some() {
                    return Err(err(lx.pos, "text after ';'"));
                }
                break;
            }
            None if open.is_empty() => break,
            None => {
                let (_, at) = open.last().expect("checked non-empty");
                return Err(err(*at, "unclosed '('"));
            }
            Some(_) if open.is_empty() => return Err(err(here, "text after the end of the tree")),
            Some(c) => return Err(err(here, format!("unexpected {c:?}"))),
        }
    }
    let mut seen = HashSet::new();
    for r in &raw {
        if let Some((name, at)) = &r.name {
            if !seen.insert(name.clone()) {
                return Err(err(*at, format!("duplicate node id {name:?}")));
            }
        }
    }
    let mut next = 0usize;
    let ids: Vec<String> = raw
        .iter()
        .map(|r| match &r.name {
            Some((n, _)) => n.clone(),
            None => loop {
                next += 1;
                let cand = format!("_{next}");
                if !seen.contains(&cand) {
                    break cand;
                }
            },
        })
        .collect();
    let records = raw
        .iter()
        .zip(&ids)
        .map(|(r, id)| {
            (
                id.clone(),
                r.children.iter().map(|&c| ids[c].clone()).collect(),
                None,
            )
        })
        .collect();
    RootedTree::from_records(&ids[0], records)
}

fn quote(name: &str) -> String {
    let plain = !name.is_empty() && !name.chars().any(|c| is_special(c) || c.is_whitespace());
    if plain {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\'', "''"))
    }
}

/// Compact form with every id written out and a trailing `;`. Labels are
/// not part of this form.
pub fn serialize_compact(tree: &RootedTree) -> String {
    let mut out = String::new();
    // Explicit stack: (node, next child index).
    let mut stack = vec![(tree.root(), 0usize)];
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        let kids = tree.children(v);
        if kids.is_empty() {
            out.push_str(&quote(&tree.node(v).id));
            stack.pop();
            continue;
        }
        if *i == kids.len() {
            out.push(')');
            out.push_str(&quote(&tree.node(v).id));
            stack.pop();
            continue;
        }
        out.push(if *i == 0 { '(' } else { ',' });
        let c = kids[*i];
        *i += 1;
        stack.push((c, 0));
    }
    out.push(';');
    out
}

/// Pretty JSON form, nodes in index order.
pub fn serialize_json(tree: &RootedTree) -> String {
    serde_json::to_string_pretty(&TreeDocument::from_tree(tree)).expect("tree documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_leaves() {
        let t = parse_tree("(a,b,c)").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.children(t.root()).len(), 3);
        assert_eq!(t.node(t.root()).id, "_1");
    }

    #[test]
    fn names_after_parentheses_and_quotes() {
        let t = parse_tree(" ( 'a b' , (c,'d''e')x ) r ;\n").unwrap();
        let r = t.root();
        assert_eq!(t.node(r).id, "r");
        let x = t.find("x").unwrap();
        assert_eq!(
            t.children(x)
                .iter()
                .map(|&c| t.node(c).id.as_str())
                .collect::<Vec<_>>(),
            ["c", "d'e"]
        );
        assert!(t.find("a b").is_some());
    }

    #[test]
    fn generated_ids_skip_used_names() {
        let t = parse_tree("(_1,(b))").unwrap();
        let ids: Vec<&str> = t.nodes().iter().map(|n| n.id.as_str()).collect();
        assert_eq!(ids, ["_2", "_1", "_3", "b"]);
    }

    #[test]
    fn duplicate_is_reported_at_second_use() {
        let e = parse_tree("(a,\n (b,a))").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 5,
                message: "duplicate node id \"a\"".into()
            }
        );
    }

    #[test]
    fn structural_errors_have_positions() {
        let cases = [
            ("(a,b", 1, 1, "unclosed"),
            ("(a,b))", 1, 6, "unmatched"),
            ("(a,b);x", 1, 7, "after ';'"),
            ("a b", 1, 3, "after the end"),
            ("(a,'b", 1, 4, "unterminated"),
            ("   \n ", 1, 1, "empty"),
        ];
        for (text, line, column, frag) in cases {
            match parse_tree(text).unwrap_err() {
                Error::Parse {
                    line: l,
                    column: c,
                    message,
                } => {
                    assert_eq!((l, c), (line, column), "{text:?}: {message}");
                    assert!(message.contains(frag), "{text:?}: {message}");
                }
                other => panic!("{text:?}: {other}"),
            }
        }
    }

    #[test]
    fn json_two_levels() {
        let text = r#"{"root": "r", "nodes": [
            {"id": "r", "children": ["a", "b"], "label": "top"},
            {"id": "a", "children": ["c"]},
            {"id": "b"}, {"id": "c"}]}"#;
        let t = parse_tree(text).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.node(t.root()).label.as_deref(), Some("top"));
        assert_eq!(t.children(t.find("a").unwrap()), [t.find("c").unwrap()]);
    }

    #[test]
    fn json_errors() {
        let dup =
            r#"{"root": "r", "nodes": [{"id": "r", "children": ["a"]}, {"id": "a"}, {"id": "a"}]}"#;
        assert!(matches!(parse_tree(dup), Err(Error::InvalidTree(m)) if m.contains("\"a\"")));
        let cyc = r#"{"root": "r", "nodes": [{"id": "r"}, {"id": "a", "children": ["b"]}, {"id": "b", "children": ["a"]}]}"#;
        assert!(matches!(parse_tree(cyc), Err(Error::InvalidTree(_))));
        let bad = "{\"root\": \"r\",\n \"nodes\": [}";
        assert!(matches!(parse_tree(bad), Err(Error::Parse { line: 2, .. })));
        let missing = r#"{"nodes": []}"#;
        assert!(
            matches!(parse_tree(missing), Err(Error::Parse { message, .. }) if message.contains("root"))
        );
    }

    #[test]
    fn round_trips() {
        for text in ["(a,(b,c)x,d)r;", "a;", "((('q r',s)))t;"] {
            let t = parse_tree(text).unwrap();
            assert_eq!(parse_tree(&serialize_compact(&t)).unwrap(), t);
            assert_eq!(parse_tree(&serialize_json(&t)).unwrap(), t);
        }
        assert_eq!(
            serialize_compact(&parse_tree("(a,(b,c)x,d)r").unwrap()),
            "(a,(b,c)x,d)r;"
        );
    }

    #[test]
    fn deep_paths_do_not_recurse() {
        let depth = 200_000;
        let text = format!("{}x{}", "(".repeat(depth), ")".repeat(depth));
        let t = parse_tree(&text).unwrap();
        assert_eq!(t.len(), depth + 1);
        assert_eq!(parse_tree(&serialize_compact(&t)).unwrap(), t);
    }
}
