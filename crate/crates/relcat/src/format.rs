//! The line-oriented `.rel` text format.
//!
//! ```text
//! # comment
//! relation tau1
//! dom 2 3
//! cod 2 3 5 7 11
//! pairs
//! 2 -> 2
//! 3 -> 5
//! end
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;

use relcat_core::{Carrier, IntCarrier, IntRelation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: relcat_core::Error,
    },
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. } | FormatError::Semantic { line, .. } => *line,
        }
    }
}

/// Named relations in file order; names are unique.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationFile {
    pub relations: Vec<(String, IntRelation)>,
    pub source: Option<PathBuf>,
}

impl RelationFile {
    pub fn get(&self, name: &str) -> Option<&IntRelation> {
        self.relations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.relations.iter().map(|(n, _)| n.as_str())
    }

    /// Appends a relation, rejecting a name already in use.
    pub fn insert(&mut self, name: impl Into<String>, r: IntRelation) -> bool {
        let name = name.into();
        if self.get(&name).is_some() {
            return false;
        }
        self.relations.push((name, r));
        true
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

struct Block {
    name: String,
    start: usize,
    dom: Option<IntCarrier>,
    cod: Option<IntCarrier>,
    pairs: Option<Vec<(i64, i64)>>,
}

pub fn parse_file(text: &str, strict: bool) -> Result<RelationFile, FormatError> {
    let mut file = RelationFile::default();
    let mut block: Option<Block> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        let syntax = |column: usize, message: String| FormatError::Syntax {
            line,
            column,
            message,
        };
        let semantic = |source| FormatError::Semantic { line, source };

        let Some(b) = block.as_mut() else {
            if head != "relation" {
                return Err(syntax(
                    col,
                    format!("expected `relation <name>`, found `{head}`"),
                ));
            }
            let name = match toks.as_slice() {
                [_, (_, name)] => name.to_string(),
                [_] => return Err(syntax(col + head.len(), "missing relation name".into())),
                [_, _, (c, extra), ..] => {
                    return Err(syntax(*c, format!("unexpected `{extra}` after name")))
                }
                [] => unreachable!(),
            };
            if file.get(&name).is_some() {
                return Err(syntax(
                    toks[1].0,
                    format!("duplicate relation name `{name}`"),
                ));
            }
            block = Some(Block {
                name,
                start: line,
                dom: None,
                cod: None,
                pairs: None,
            });
            continue;
        };

        let labels = |toks: &[(usize, &str)]| -> Result<Vec<i64>, FormatError> {
            toks.iter()
                .map(|&(c, t)| {
                    t.parse::<i64>()
                        .map_err(|_| syntax(c, format!("expected an integer label, found `{t}`")))
                })
                .collect()
        };

        match head {
            "dom" | "cod" if b.pairs.is_some() => {
                return Err(syntax(col, format!("`{head}` must precede `pairs`")));
            }
            "dom" | "cod" => {
                let slot = if head == "dom" {
                    &mut b.dom
                } else {
                    &mut b.cod
                };
                if slot.is_some() {
                    return Err(syntax(col, format!("duplicate `{head}` line")));
                }
                *slot = Some(Carrier::new(labels(&toks[1..])?, strict).map_err(semantic)?);
            }
            "pairs" => {
                if b.pairs.is_some() {
                    return Err(syntax(col, "duplicate `pairs` line".into()));
                }
                if b.dom.is_none() || b.cod.is_none() {
                    return Err(syntax(col, "`dom` and `cod` must precede `pairs`".into()));
                }
                if let Some(&(c, t)) = toks.get(1) {
                    return Err(syntax(c, format!("unexpected `{t}` after `pairs`")));
                }
                b.pairs = Some(Vec::new());
            }
            "end" => {
                if let Some(&(c, t)) = toks.get(1) {
                    return Err(syntax(c, format!("unexpected `{t}` after `end`")));
                }
                let Some(pairs) = b.pairs.take() else {
                    return Err(syntax(col, "`end` before `pairs`".into()));
                };
                let b = block.take().expect("inside a block");
                let r = IntRelation::new(b.dom.expect("checked"), b.cod.expect("checked"), pairs)
                    .map_err(semantic)?;
                file.relations.push((b.name, r));
            }
            "relation" => {
                return Err(syntax(
                    col,
                    format!("relation `{}` is not closed with `end`", b.name),
                ));
            }
            _ => {
                let Some(pairs) = b.pairs.as_mut() else {
                    return Err(syntax(
                        col,
                        format!("expected `dom`, `cod` or `pairs`, found `{head}`"),
                    ));
                };
                let [a, (arrow_col, arrow), c] = toks.as_slice() else {
                    let column = toks.get(3).map_or(col, |t| t.0);
                    return Err(syntax(column, "expected `<a> -> <b>`".into()));
                };
                if *arrow != "->" {
                    return Err(syntax(
                        *arrow_col,
                        format!("expected `->`, found `{arrow}`"),
                    ));
                }
                let ab = labels(&[*a, *c])?;
                let (x, y) = (ab[0], ab[1]);
                let (dom, cod) = (
                    b.dom.as_ref().expect("checked"),
                    b.cod.as_ref().expect("checked"),
                );
                if !dom.contains(x) || !cod.contains(y) {
                    return Err(semantic(relcat_core::Error::PairOutOfCarrier(
                        x.into(),
                        y.into(),
                    )));
                }
                pairs.push((x, y));
            }
        }
    }

    if let Some(b) = block {
        return Err(FormatError::Syntax {
            line: last_line + 1,
            column: 1,
            message: format!(
                "relation `{}` opened at line {} is not closed with `end`",
                b.name, b.start
            ),
        });
    }
    Ok(file)
}

fn write_labels(out: &mut String, key: &str, c: &IntCarrier) {
    out.push_str(key);
    for l in c.labels() {
        let _ = write!(out, " {l}");
    }
    out.push('\n');
}

/// One relation block, terminated by `end` and a newline.
pub fn serialize_relation(name: &str, r: &IntRelation) -> String {
    let mut out = format!("relation {name}\n");
    write_labels(&mut out, "dom", r.dom());
    write_labels(&mut out, "cod", r.cod());
    out.push_str("pairs\n");
    for (a, b) in r.pairs() {
        let _ = writeln!(out, "{a} -> {b}");
    }
    out.push_str("end\n");
    out
}

pub fn serialize_file(file: &RelationFile) -> String {
    file.relations
        .iter()
        .map(|(n, r)| serialize_relation(n, r))
        .collect::<Vec<_>>()
        .join("\n")
}
