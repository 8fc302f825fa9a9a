//! Text formats: code files and automorphism lists.
//!
//! A code file is UTF-8 text. Lines starting with `#` are comments, the first
//! significant line is `m q`, and every further significant line holds one
//! codeword as m integers in [0, q) separated by single spaces.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::autgroup::Automorphism;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::hamming::Vertex;
use crate::perms::Perm;

/// A code together with the comment lines of its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    /// Comment text after the leading `#`.
    pub comments: Vec<String>,
    pub code: Code,
}

impl CodeFile {
    pub fn new(code: Code) -> CodeFile {
        CodeFile {
            comments: Vec::new(),
            code,
        }
    }

    pub fn with_comment(mut self, text: impl Into<String>) -> CodeFile {
        self.comments.push(format!(" {}", text.into()));
        self
    }

    pub fn parse(text: &str) -> Result<CodeFile> {
        let mut comments = Vec::new();
        let mut header: Option<(usize, usize)> = None;
        let mut words = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.to_string());
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split(' ').collect();
            let numbers = fields
                .iter()
                .map(|f| {
                    f.parse::<usize>()
                        .map_err(|_| bad(format!("{f:?} is not a non-negative integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            match header {
                None => {
                    let [m, q] = numbers[..] else {
                        return Err(bad("header must be `m q`".into()));
                    };
                    if m == 0 || m > 256 || !(2..=256).contains(&q) {
                        return Err(bad(format!("unsupported parameters m={m} q={q}")));
                    }
                    header = Some((m, q));
                }
                Some((m, q)) => {
                    if numbers.len() != m {
                        return Err(bad(format!("expected {m} entries, found {}", numbers.len())));
                    }
                    if let Some(e) = numbers.iter().find(|&&e| e >= q) {
                        return Err(bad(format!("entry {e} outside alphabet of size {q}")));
                    }
                    let v = Vertex::new(numbers.iter().map(|&e| e as u8).collect(), q)?;
                    if !words.insert(v) {
                        return Err(bad("duplicate codeword".into()));
                    }
                }
            }
        }
        if header.is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: "missing `m q` header".into(),
            });
        }
        if words.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "code has no codewords".into(),
            });
        }
        Ok(CodeFile {
            comments,
            code: Code::new(words)?,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "#{c}");
        }
        let _ = writeln!(out, "{} {}", self.code.m(), self.code.q());
        for w in self.code.words() {
            let _ = writeln!(out, "{w}");
        }
        out
    }

    pub fn read(path: &Path) -> Result<CodeFile> {
        CodeFile::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render())?;
        Ok(())
    }
}

/// Splits on commas outside `[..]`.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Parses `g: <perm>,..,<perm> ; sigma: <perm>`. The number of coordinate
/// maps fixes m; q is taken from `q`.
pub fn parse_automorphism(text: &str, q: usize) -> Result<Automorphism> {
    let bad = |msg: &str| Error::Parameter(format!("cannot parse automorphism {text:?}: {msg}"));
    let (g_part, sigma_part) = text.split_once(';').ok_or_else(|| bad("missing `;`"))?;
    let g_list = g_part.trim().strip_prefix("g:").ok_or_else(|| bad("expected `g:`"))?;
    let sigma = sigma_part
        .trim()
        .strip_prefix("sigma:")
        .ok_or_else(|| bad("expected `sigma:`"))?;
    let maps = split_top_level(g_list)
        .into_iter()
        .map(|t| Perm::parse(t, q))
        .collect::<Result<Vec<_>>>()?;
    let position = Perm::parse(sigma, maps.len())?;
    Automorphism::new(&maps, &position)
}

/// An automorphism list: one automorphism per significant line, `#` comments.
pub fn parse_automorphism_list(text: &str, q: usize) -> Result<Vec<Automorphism>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let x = parse_automorphism(line, q).map_err(|e| Error::Parse {
            line: n + 1,
            msg: e.to_string(),
        })?;
        out.push(x);
    }
    Ok(out)
}
