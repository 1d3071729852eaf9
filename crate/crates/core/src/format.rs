//! The `sortnet v1` text format.
//!
//! ```text
//! sortnet v1
//! n 8
//! layer {1 2 3 4} {5 6 7 8}
//! layer {1 2 5 6} {3 4 7 8}
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Serialization is
//! canonical: members ascending, comparators ordered by smallest member.

use crate::error::{Error, Result};
use crate::network::Network;

pub const HEADER: &str = "sortnet v1";

pub fn serialize(network: &Network) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", network.n()));
    for layer in network.layers() {
        out.push_str("layer");
        for comp in layer.comparators() {
            out.push_str(" {");
            let members: Vec<String> = comp.members().iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&members.join(" "));
            out.push('}');
        }
        out.push('\n');
    }
    out
}

/// Lines that carry content, with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Column (1-based) of the first non-space character.
fn indent(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

pub fn parse(text: &str) -> Result<Network> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    if header.trim() != HEADER {
        return Err(syntax(lno, indent(header), format!("expected `{HEADER}`")));
    }
    let (lno, nline) = lines.next().ok_or_else(|| syntax(lno + 1, 1, "missing `n` line"))?;
    let n = parse_keyed_usize(lno, nline, "n")?;
    let mut layers = Vec::new();
    let mut last_line = lno;
    for (lno, line) in lines {
        last_line = lno;
        layers.push(parse_layer(lno, line)?);
    }
    if layers.is_empty() {
        return Err(syntax(last_line + 1, 1, "expected at least one `layer` line"));
    }
    Network::from_one_based(n, &layers)
}

pub(crate) fn parse_keyed_usize(lno: usize, line: &str, key: &str) -> Result<usize> {
    let col = indent(line);
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Err(syntax(lno, col, format!("expected `{key} <integer>`")));
    }
    let value = parts
        .next()
        .ok_or_else(|| syntax(lno, line.trim_end().len() + 1, format!("missing value for `{key}`")))?;
    let value_col = line.find(value).map_or(col, |p| p + 1);
    let parsed = value
        .parse::<usize>()
        .map_err(|_| syntax(lno, value_col, format!("`{value}` is not a non-negative integer")))?;
    if let Some(extra) = parts.next() {
        let c = line.rfind(extra).map_or(col, |p| p + 1);
        return Err(syntax(lno, c, format!("unexpected `{extra}`")));
    }
    Ok(parsed)
}

fn parse_layer(lno: usize, line: &str) -> Result<Vec<Vec<usize>>> {
    let start = line.len() - line.trim_start().len();
    let rest = &line[start..];
    if !rest.starts_with("layer") {
        return Err(syntax(lno, start + 1, "expected `layer`"));
    }
    let mut blocks = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number_start: Option<usize> = None;
    let bytes = line.as_bytes();
    let mut pos = start + "layer".len();
    if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'{' {
        return Err(syntax(lno, start + 1, "expected `layer`"));
    }
    let flush = |current: &mut Option<Vec<usize>>, from: usize, to: usize| -> Result<()> {
        let token = &line[from..to];
        let value = token
            .parse::<usize>()
            .map_err(|_| syntax(lno, from + 1, format!("`{token}` is not a cell index")))?;
        current.as_mut().expect("numbers only inside braces").push(value);
        Ok(())
    };
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b'{' => {
                if current.is_some() {
                    return Err(syntax(lno, pos + 1, "nested `{`"));
                }
                current = Some(Vec::new());
            }
            b'}' => {
                if let Some(s) = number_start.take() {
                    flush(&mut current, s, pos)?;
                }
                let block = current.take().ok_or_else(|| syntax(lno, pos + 1, "unmatched `}`"))?;
                if block.is_empty() {
                    return Err(syntax(lno, pos + 1, "empty comparator"));
                }
                blocks.push(block);
            }
            b'0'..=b'9' => {
                if current.is_none() {
                    return Err(syntax(lno, pos + 1, "cell index outside braces"));
                }
                if number_start.is_none() {
                    number_start = Some(pos);
                }
            }
            c if c.is_ascii_whitespace() => {
                if let Some(s) = number_start.take() {
                    flush(&mut current, s, pos)?;
                }
            }
            _ => {
                let ch = line[pos..].chars().next().unwrap_or('?');
                return Err(syntax(lno, pos + 1, format!("unexpected character {ch:?}")));
            }
        }
        pos += 1;
    }
    if current.is_some() {
        return Err(syntax(lno, line.len() + 1, "unterminated comparator, expected `}`"));
    }
    if blocks.is_empty() {
        return Err(syntax(lno, line.len() + 1, "layer has no comparators"));
    }
    Ok(blocks)
}
