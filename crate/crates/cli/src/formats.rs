//! Line-based text formats for models, tables, and margin vectors.
//!
//! Every file starts with `vars <n>`. Blank lines and anything after `#` are
//! ignored. Serialization is canonical, so `parse(write(x)) == x` and
//! `write(parse(s))` is idempotent.

use std::fmt::Write as _;

use cellbound_core::model::Entry;
use cellbound_core::{
    CellIndex, Flavor, MarginKey, MarginVector, RatTable, Rational, SimplicialComplex, Table,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// 1-based line number, 0 when the error concerns the whole file.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-empty content lines with their 1-based numbers and split tokens.
fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// A content line: its 1-based number and whitespace-separated tokens.
type Line<'a> = (usize, Vec<&'a str>);

/// Reads the `vars <n>` header and returns `n` with the remaining lines.
fn read_header(text: &str) -> Result<(usize, Vec<Line<'_>>), FormatError> {
    let mut lines = content_lines(text);
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| err(0, "missing `vars <n>` header"))?;
    if tokens.len() != 2 || tokens[0] != "vars" {
        return Err(err(line, "expected `vars <n>`"));
    }
    let n = tokens[1]
        .parse::<usize>()
        .map_err(|_| err(line, format!("invalid variable count `{}`", tokens[1])))?;
    Ok((n, lines.collect()))
}

fn parse_cell(line: usize, word: &str, n: usize) -> Result<CellIndex, FormatError> {
    let cell = CellIndex::parse(word).ok_or_else(|| err(line, format!("invalid cell `{word}`")))?;
    if cell.n() != n {
        return Err(err(
            line,
            format!("cell `{word}` has length {}, expected {n}", cell.n()),
        ));
    }
    Ok(cell)
}

fn parse_value(line: usize, word: &str) -> Result<Rational, FormatError> {
    word.parse::<Rational>()
        .map_err(|e| err(line, e.to_string()))
}

pub fn parse_instance(text: &str) -> Result<SimplicialComplex, FormatError> {
    let (n, lines) = read_header(text)?;
    let mut facets = Vec::new();
    for (line, tokens) in lines {
        if tokens[0] != "facet" || tokens.len() < 2 {
            return Err(err(line, "expected `facet <v1> <v2> ...`"));
        }
        let vertices = tokens[1..]
            .iter()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| err(line, format!("invalid vertex `{w}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(line, "facet vertices must be strictly ascending"));
        }
        facets.push(vertices);
    }
    SimplicialComplex::new(n, facets).map_err(|e| err(0, e.to_string()))
}

pub fn write_instance(model: &SimplicialComplex) -> String {
    let mut out = format!("vars {}\n", model.n());
    for facet in model.facets() {
        out.push_str("facet");
        for v in facet {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a table with signed rational values; omitted cells are zero.
pub fn parse_table(text: &str) -> Result<RatTable, FormatError> {
    let (n, lines) = read_header(text)?;
    if n == 0 || n > cellbound_core::model::MAX_VARS {
        return Err(err(0, format!("unsupported variable count {n}")));
    }
    let mut values = vec![None; 1usize << n];
    for (line, tokens) in lines {
        if tokens.len() != 3 || tokens[0] != "cell" {
            return Err(err(line, "expected `cell <bits> <value>`"));
        }
        let cell = parse_cell(line, tokens[1], n)?;
        let v = parse_value(line, tokens[2])?;
        if values[cell.index()].replace(v).is_some() {
            return Err(err(line, format!("duplicate cell `{}`", tokens[1])));
        }
    }
    let values = values.into_iter().map(Option::unwrap_or_default).collect();
    Table::new(n, values, Flavor::Signed).map_err(|e| err(0, e.to_string()))
}

pub fn write_table<V: Entry>(table: &Table<V>) -> String {
    let n = table.n();
    let mut out = format!("vars {n}\n");
    for (index, v) in table.support() {
        let cell = CellIndex::new(n, index).expect("index within table");
        writeln!(out, "cell {cell} {v}").unwrap();
    }
    out
}

/// Parses margins keyed against `model`; every key must appear exactly once.
pub fn parse_margins(
    model: &SimplicialComplex,
    text: &str,
) -> Result<MarginVector<Rational>, FormatError> {
    let (n, lines) = read_header(text)?;
    if n != model.n() {
        return Err(err(
            0,
            format!("margins declare {n} variables, model has {}", model.n()),
        ));
    }
    let mut entries = Vec::new();
    for (line, tokens) in lines {
        if tokens.len() != 4 || tokens[0] != "margin" {
            return Err(err(line, "expected `margin <v1,v2,...> <bits> <value>`"));
        }
        let facet = tokens[1]
            .split(',')
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| err(line, format!("invalid vertex `{w}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bits = tokens[2];
        if bits.len() != facet.len() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(err(
                line,
                format!("assignment `{bits}` does not fit facet `{}`", tokens[1]),
            ));
        }
        let assignment =
            usize::from_str_radix(bits, 2).map_err(|_| err(line, "invalid assignment"))?;
        entries.push((
            MarginKey { facet, assignment },
            parse_value(line, tokens[3])?,
        ));
    }
    MarginVector::from_entries(model, entries).map_err(|e| err(0, e.to_string()))
}

pub fn write_margins<V: Entry>(margins: &MarginVector<V>) -> String {
    let mut out = format!("vars {}\n", margins.n());
    for (key, v) in margins.entries() {
        let facet: Vec<String> = key.facet.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "margin {} {} {v}",
            facet.join(","),
            key.assignment_bits()
        )
        .unwrap();
    }
    out
}
