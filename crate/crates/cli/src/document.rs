//! The cone document format: a line-oriented, hand-editable description of a
//! cone with optional named vectors and maps. Rationals are written `p/q` or
//! as plain integers; floats are rejected.
//!
//! ```text
//! # the cone over the unit square
//! DIM 3
//! GEN 1 1 1
//! GEN 1 -1 1
//! GEN -1 1 1
//! GEN -1 -1 1
//! CHARGE 0 0 1
//! VEC axis 1 0 0
//! MAP collapse      # followed by DIM rows of DIM entries
//! 0 0 0
//! 0 0 0
//! 0 0 1
//! ```

use mcone_core::rational::{parse_rational, Rational};
use mcone_core::{PolyhedralCone, RMatrix, RVector};

/// Parse failure with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDocument {
    pub dimension: usize,
    pub generators: Vec<RVector>,
    pub charge: RVector,
    pub vectors: Vec<(String, RVector)>,
    pub maps: Vec<(String, RMatrix)>,
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch == '#' {
            if let Some(s) = start {
                out.push((s + 1, &line[s..i]));
            }
            return out;
        }
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_rational_token(line: usize, (col, tok): (usize, &str)) -> Result<Rational, ParseError> {
    parse_rational(tok).map_err(|m| err(line, col, m))
}

fn parse_row(
    line_no: usize,
    toks: &[(usize, &str)],
    expected: usize,
    what: &str,
) -> Result<RVector, ParseError> {
    if toks.len() != expected {
        let col = toks.first().map_or(1, |t| t.0);
        return Err(err(
            line_no,
            col,
            format!("{what} needs {expected} entries, found {}", toks.len()),
        ));
    }
    let mut coords = Vec::with_capacity(expected);
    for &t in toks {
        coords.push(parse_rational_token(line_no, t)?);
    }
    Ok(RVector::new(coords))
}

impl ConeDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut dimension: Option<usize> = None;
        let mut generators: Vec<RVector> = Vec::new();
        let mut charge: Option<RVector> = None;
        let mut vectors: Vec<(String, RVector)> = Vec::new();
        let mut maps: Vec<(String, RMatrix)> = Vec::new();
        // a MAP header waiting for its rows
        let mut pending_map: Option<(String, Vec<RVector>, usize)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let toks = tokens(raw);
            if toks.is_empty() {
                continue;
            }
            if let Some((name, mut rows, header_line)) = pending_map.take() {
                let n = dimension.expect("map rows only accepted after DIM");
                let row = parse_row(line_no, &toks, n, "map row")?;
                rows.push(row);
                if rows.len() == n {
                    maps.push((name, RMatrix::from_rows(rows)));
                } else {
                    pending_map = Some((name, rows, header_line));
                }
                continue;
            }

            let (kw_col, keyword) = toks[0];
            let rest = &toks[1..];
            match keyword {
                "DIM" => {
                    if dimension.is_some() {
                        return Err(err(line_no, kw_col, "duplicate DIM"));
                    }
                    let (col, tok) = *rest
                        .first()
                        .ok_or_else(|| err(line_no, kw_col, "DIM needs a positive integer"))?;
                    let n: usize = tok
                        .parse()
                        .map_err(|_| err(line_no, col, format!("invalid dimension '{tok}'")))?;
                    if n == 0 {
                        return Err(err(line_no, col, "dimension must be positive"));
                    }
                    dimension = Some(n);
                }
                "GEN" => {
                    let n = dimension.ok_or_else(|| err(line_no, kw_col, "GEN before DIM"))?;
                    generators.push(parse_row(line_no, rest, n, "generator")?);
                }
                "CHARGE" => {
                    let n = dimension.ok_or_else(|| err(line_no, kw_col, "CHARGE before DIM"))?;
                    if charge.is_some() {
                        return Err(err(line_no, kw_col, "duplicate CHARGE"));
                    }
                    charge = Some(parse_row(line_no, rest, n, "charge")?);
                }
                "VEC" => {
                    let n = dimension.ok_or_else(|| err(line_no, kw_col, "VEC before DIM"))?;
                    let (_, name) = *rest
                        .first()
                        .ok_or_else(|| err(line_no, kw_col, "VEC needs a name"))?;
                    let row = parse_row(line_no, &rest[1..], n, "vector")?;
                    if vectors.iter().any(|(existing, _)| existing == name) {
                        return Err(err(line_no, kw_col, format!("duplicate VEC '{name}'")));
                    }
                    vectors.push((name.to_string(), row));
                }
                "MAP" => {
                    if dimension.is_none() {
                        return Err(err(line_no, kw_col, "MAP before DIM"));
                    }
                    let (_, name) = *rest
                        .first()
                        .ok_or_else(|| err(line_no, kw_col, "MAP needs a name"))?;
                    if rest.len() > 1 {
                        return Err(err(
                            line_no,
                            rest[1].0,
                            "MAP header takes only a name; rows follow on their own lines",
                        ));
                    }
                    if maps.iter().any(|(existing, _)| existing == name) {
                        return Err(err(line_no, kw_col, format!("duplicate MAP '{name}'")));
                    }
                    pending_map = Some((name.to_string(), Vec::new(), line_no));
                }
                other => {
                    return Err(err(
                        line_no,
                        kw_col,
                        format!("unknown keyword '{other}' (expected DIM, GEN, CHARGE, VEC, MAP)"),
                    ));
                }
            }
        }

        if let Some((name, rows, header_line)) = pending_map {
            return Err(err(
                header_line,
                1,
                format!(
                    "MAP '{name}' is missing rows: got {}, need {}",
                    rows.len(),
                    dimension.unwrap_or(0)
                ),
            ));
        }
        let dimension = dimension.ok_or_else(|| err(1, 1, "missing DIM"))?;
        if generators.is_empty() {
            return Err(err(1, 1, "missing GEN lines"));
        }
        let charge = charge.ok_or_else(|| err(1, 1, "missing CHARGE"))?;
        Ok(Self {
            dimension,
            generators,
            charge,
            vectors,
            maps,
        })
    }

    /// Canonical serialization; parsing it back yields an equal document.
    #[allow(dead_code)] // exercised by the round-trip tests
    pub fn to_text(&self) -> String {
        let fmt_vec = |v: &RVector| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = String::new();
        out.push_str(&format!("DIM {}\n", self.dimension));
        for g in &self.generators {
            out.push_str(&format!("GEN {}\n", fmt_vec(g)));
        }
        out.push_str(&format!("CHARGE {}\n", fmt_vec(&self.charge)));
        for (name, v) in &self.vectors {
            out.push_str(&format!("VEC {name} {}\n", fmt_vec(v)));
        }
        for (name, m) in &self.maps {
            out.push_str(&format!("MAP {name}\n"));
            for r in 0..m.rows() {
                out.push_str(&format!("{}\n", fmt_vec(&m.row_vector(r))));
            }
        }
        out
    }

    pub fn cone(&self) -> mcone_core::Result<PolyhedralCone> {
        PolyhedralCone::new(self.dimension, self.generators.clone(), self.charge.clone())
    }

    pub fn vector(&self, name: &str) -> Option<&RVector> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn map(&self, name: &str) -> Option<&RMatrix> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}
