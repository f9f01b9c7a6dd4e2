//! Line-oriented text formats for lattices (`.lat`), groups (`.grp`) and
//! L-subsets (`.mu`, `.eta`, ...). `#` starts a comment.
//!
//! ```text
//! lattice M          group S4             lsubset mu
//! elem l             degree 4             over group S4 lattice M
//! cover l a          gen (1 2)            default d
//!                    gen (1 2 3 4)        val (1 2) u
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::lattice::{Elem, FiniteLattice};
use crate::lsub::LSubset;
use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// One-based; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, paired with one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((k, rest)) => (k, rest.trim()),
        None => (line, ""),
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, ParseError> {
    let mut name = None;
    let mut elems: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut header_line = 0;
    for (no, line) in content_lines(text) {
        let (kw, rest) = split_keyword(line);
        match kw {
            "lattice" if name.is_none() && !rest.is_empty() => {
                name = Some(rest.to_string());
                header_line = no;
            }
            "lattice" => return Err(err(no, "repeated or empty `lattice` header")),
            "elem" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 1 {
                    return Err(err(no, "expected `elem <name>`"));
                }
                elems.push(parts[0].to_string());
            }
            "cover" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err(no, "expected `cover <lower> <upper>`"));
                }
                covers.push((parts[0].to_string(), parts[1].to_string()));
            }
            other => return Err(err(no, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| err(0, "missing `lattice` header"))?;
    FiniteLattice::build(&name, &elems, &covers).map_err(|e| err(header_line, e.to_string()))
}

pub fn write_lattice(l: &FiniteLattice) -> String {
    let mut out = format!("lattice {}\n", l.name());
    for e in l.elements() {
        writeln!(out, "elem {}", l.name_of(e)).unwrap();
    }
    for &(a, b) in l.covers() {
        writeln!(out, "cover {} {}", l.name_of(a), l.name_of(b)).unwrap();
    }
    out
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, ParseError> {
    parse_group_capped(text, crate::group::DEFAULT_ORDER_CAP)
}

pub fn parse_group_capped(text: &str, cap: usize) -> Result<FiniteGroup, ParseError> {
    let mut name = None;
    let mut degree = None;
    let mut gens: Vec<(usize, &str)> = Vec::new();
    for (no, line) in content_lines(text) {
        let (kw, rest) = split_keyword(line);
        match kw {
            "group" if name.is_none() && !rest.is_empty() => name = Some(rest.to_string()),
            "group" => return Err(err(no, "repeated or empty `group` header")),
            "degree" if degree.is_none() => {
                degree = Some(
                    rest.parse::<usize>()
                        .map_err(|_| err(no, format!("bad degree `{rest}`")))?,
                )
            }
            "degree" => return Err(err(no, "repeated `degree`")),
            "gen" => gens.push((no, rest)),
            other => return Err(err(no, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| err(0, "missing `group` header"))?;
    let degree = degree.ok_or_else(|| err(0, "missing `degree`"))?;
    let perms = gens
        .iter()
        .map(|&(no, g)| Perm::parse(degree, g).map_err(|e| err(no, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    FiniteGroup::from_generators_capped(&name, degree, &perms, cap)
        .map_err(|e| err(0, e.to_string()))
}

pub fn write_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {}\ndegree {}\n", g.name(), g.degree());
    for &x in g.generators() {
        writeln!(out, "gen {}", g.perm(x)).unwrap();
    }
    out
}

/// Parses an L-subset file against an already loaded group and lattice,
/// whose names must match the `over` line. Returns the declared name too.
pub fn parse_lsubset(
    text: &str,
    group: &Arc<FiniteGroup>,
    lattice: &Arc<FiniteLattice>,
) -> Result<(String, LSubset), ParseError> {
    let mut name = None;
    let mut over = false;
    let mut default: Option<Elem> = None;
    let mut vals: Vec<Option<Elem>> = vec![None; group.order()];
    for (no, line) in content_lines(text) {
        let (kw, rest) = split_keyword(line);
        match kw {
            "lsubset" if name.is_none() && !rest.is_empty() => name = Some(rest.to_string()),
            "lsubset" => return Err(err(no, "repeated or empty `lsubset` header")),
            "over" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    ["group", g, "lattice", l] => {
                        if *g != group.name() {
                            return Err(err(
                                no,
                                format!("declared over group `{g}`, loaded `{}`", group.name()),
                            ));
                        }
                        if *l != lattice.name() {
                            return Err(err(
                                no,
                                format!("declared over lattice `{l}`, loaded `{}`", lattice.name()),
                            ));
                        }
                        over = true;
                    }
                    _ => return Err(err(no, "expected `over group <g> lattice <l>`")),
                }
            }
            "default" => {
                if default.is_some() {
                    return Err(err(no, "repeated `default`"));
                }
                default = Some(lattice.elem(rest).map_err(|e| err(no, e.to_string()))?);
            }
            "val" => {
                let (cyc, value) = rest
                    .rsplit_once(char::is_whitespace)
                    .ok_or_else(|| err(no, "expected `val <element> <lattice-elem>`"))?;
                let x = group.element(cyc.trim()).map_err(|e| err(no, e.to_string()))?;
                let v = lattice.elem(value).map_err(|e| err(no, e.to_string()))?;
                if vals[x].replace(v).is_some() {
                    return Err(err(no, format!("element {} assigned twice", group.perm(x))));
                }
            }
            other => return Err(err(no, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| err(0, "missing `lsubset` header"))?;
    if !over {
        return Err(err(0, "missing `over` line"));
    }
    let values = vals
        .iter()
        .enumerate()
        .map(|(x, v)| {
            v.or(default).ok_or_else(|| {
                err(0, format!("no value for {} and no default", group.perm(x)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ls = LSubset::new(group.clone(), lattice.clone(), values).map_err(|e| err(0, e.to_string()))?;
    Ok((name, ls))
}

/// Writes the most frequent value as the default (ties go to the earlier
/// lattice element) and one `val` line per exception, in element order.
pub fn write_lsubset(name: &str, s: &LSubset) -> String {
    let (g, l) = (s.group(), s.lattice());
    let mut counts: HashMap<Elem, usize> = HashMap::new();
    for &v in s.values() {
        *counts.entry(v).or_default() += 1;
    }
    let default = l
        .elements()
        .max_by_key(|e| (counts.get(e).copied().unwrap_or(0), std::cmp::Reverse(*e)))
        .expect("lattice is non-empty");
    let mut out = format!(
        "lsubset {}\nover group {} lattice {}\ndefault {}\n",
        name,
        g.name(),
        l.name(),
        l.name_of(default)
    );
    for x in g.ids() {
        if s.value(x) != default {
            writeln!(out, "val {} {}", g.perm(x), l.name_of(s.value(x))).unwrap();
        }
    }
    out
}
