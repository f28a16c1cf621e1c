//! Line-oriented text formats, version `v1`.
//!
//! Each file starts with a header `<TAG> v1` and continues with one record
//! per line, fields separated by spaces. Lines starting with `#` and blank
//! lines are ignored. Key records may appear in any order but only once.
//!
//! ```text
//! GUGP v1 | k <k> | n <n> | e <u> <v> <num>/<den> <img1> ... <imgk>
//! REL v1  | k1 <k1> | k2 <k2> | n <n> | bipartite <0|1> | s <v> <V|W>
//!         | e <u> <v> <num>/<den> <m> <a1> <b1> ... <am> <bm>
//! T22 v1  | k <k> | n <n> | e <u> <v> <num>/<den> pu <2k images> pv <2k images>
//! TSP v1  | n <n> | w <u> <v> <num>/<den>        (every pair, u < v)
//! LAB v1  | n <n> | f <v> <label>                (every vertex)
//! ```
//!
//! Serialization writes keys in the order above, records in stored order,
//! rationals as canonical `num/den` and LF line endings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::instance::{GugpEdge, GugpInstance, Labeling, RelationalEdge, RelationalInstance, Side};
use crate::perm::{Permutation, Relation};
use crate::rational::Rational;
use crate::reduce::{TspInstance, TwoToTwoEdge, TwoToTwoInstance};

/// File kind, as named by the header tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Gugp,
    Rel,
    T22,
    Tsp,
    Lab,
}

impl Format {
    pub fn tag(self) -> &'static str {
        match self {
            Format::Gugp => "GUGP",
            Format::Rel => "REL",
            Format::T22 => "T22",
            Format::Tsp => "TSP",
            Format::Lab => "LAB",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GUGP" => Ok(Format::Gugp),
            "REL" => Ok(Format::Rel),
            "T22" => Ok(Format::T22),
            "TSP" => Ok(Format::Tsp),
            "LAB" => Ok(Format::Lab),
            other => Err(Error::Usage(format!("unknown format tag {other:?}"))),
        }
    }
}

/// Any parsed file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Gugp(GugpInstance),
    Rel(RelationalInstance),
    T22(TwoToTwoInstance),
    Tsp(TspInstance),
    Lab(Labeling),
}

impl Document {
    pub fn format(&self) -> Format {
        match self {
            Document::Gugp(_) => Format::Gugp,
            Document::Rel(_) => Format::Rel,
            Document::T22(_) => Format::T22,
            Document::Tsp(_) => Format::Tsp,
            Document::Lab(_) => Format::Lab,
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Document::Gugp(g) => serialize_gugp(g),
            Document::Rel(r) => serialize_rel(r),
            Document::T22(t) => serialize_t22(t),
            Document::Tsp(t) => serialize_tsp(t),
            Document::Lab(f) => serialize_lab(f),
        }
    }
}

pub fn serialize_gugp(g: &GugpInstance) -> String {
    let mut out = format!("GUGP v1\nk {}\nn {}\n", g.k(), g.n());
    for e in g.edges() {
        let _ = write!(out, "e {} {} {}", e.u, e.v, e.weight);
        push_images(&mut out, e.pi.image());
        out.push('\n');
    }
    out
}

pub fn serialize_rel(r: &RelationalInstance) -> String {
    let mut out = format!(
        "REL v1\nk1 {}\nk2 {}\nn {}\nbipartite {}\n",
        r.k1(),
        r.k2(),
        r.n(),
        r.is_bipartite() as u8
    );
    if let Some(sides) = r.sides() {
        for (v, s) in sides.iter().enumerate() {
            let tag = if *s == Side::V { "V" } else { "W" };
            let _ = writeln!(out, "s {v} {tag}");
        }
    }
    for e in r.edges() {
        let _ = write!(out, "e {} {} {} {}", e.u, e.v, e.weight, e.rel.len());
        for (a, b) in e.rel.pairs() {
            let _ = write!(out, " {a} {b}");
        }
        out.push('\n');
    }
    out
}

pub fn serialize_t22(t: &TwoToTwoInstance) -> String {
    let mut out = format!("T22 v1\nk {}\nn {}\n", t.k(), t.n());
    for e in t.edges() {
        let _ = write!(out, "e {} {} {} pu", e.u, e.v, e.weight);
        push_images(&mut out, e.pi_u.image());
        out.push_str(" pv");
        push_images(&mut out, e.pi_v.image());
        out.push('\n');
    }
    out
}

pub fn serialize_tsp(t: &TspInstance) -> String {
    let mut out = format!("TSP v1\nn {}\n", t.n());
    for (u, v, w) in t.pairs() {
        let _ = writeln!(out, "w {u} {v} {w}");
    }
    out
}

pub fn serialize_lab(f: &Labeling) -> String {
    let mut out = format!("LAB v1\nn {}\n", f.len());
    for (v, label) in f.values().iter().enumerate() {
        let _ = writeln!(out, "f {v} {label}");
    }
    out
}

fn push_images(out: &mut String, image: &[usize]) {
    for x in image {
        let _ = write!(out, " {x}");
    }
}

/// One meaningful line, split into fields.
struct Record<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

impl<'a> Record<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.fields.len() != n {
            return Err(self.err(format!(
                "'{}' record takes {} fields, found {}",
                self.fields[0],
                n - 1,
                self.fields.len() - 1
            )));
        }
        Ok(())
    }

    fn int(&self, i: usize) -> Result<usize> {
        let s = self.field(i)?;
        s.parse()
            .map_err(|_| self.err(format!("expected a non-negative integer, found {s:?}")))
    }

    fn rational(&self, i: usize) -> Result<Rational> {
        let s = self.field(i)?;
        s.parse()
            .map_err(|e| self.err(format!("bad rational {s:?}: {e}")))
    }

    fn field(&self, i: usize) -> Result<&'a str> {
        self.fields
            .get(i)
            .copied()
            .ok_or_else(|| self.err(format!("'{}' record is missing field {i}", self.fields[0])))
    }

    fn ints(&self, range: std::ops::Range<usize>) -> Result<Vec<usize>> {
        range.map(|i| self.int(i)).collect()
    }
}

/// Header, keys, and the remaining records of a file.
struct Parsed<'a> {
    format: Format,
    header_line: usize,
    keys: BTreeMap<&'a str, (usize, usize)>,
    body: Vec<Record<'a>>,
}

impl Parsed<'_> {
    fn key(&self, name: &str) -> Result<usize> {
        self.keys
            .get(name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::Parse {
                line: self.header_line,
                message: format!("missing '{name}' record"),
            })
    }
}

fn split<'a>(
    text: &'a str,
    key_names: impl Fn(Format) -> &'static [&'static str],
) -> Result<Parsed<'a>> {
    let mut records = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| Record {
            line: i + 1,
            fields: line.split_whitespace().collect(),
        })
    });
    let header = records.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    if header.fields.len() != 2 {
        return Err(header.err("header must be '<TAG> v1'"));
    }
    let format: Format = header.fields[0]
        .parse()
        .map_err(|_| header.err(format!("unknown format tag {:?}", header.fields[0])))?;
    if header.fields[1] != "v1" {
        return Err(header.err(format!("unsupported version {:?}", header.fields[1])));
    }
    let names = key_names(format);
    let mut keys = BTreeMap::new();
    let mut body = Vec::new();
    for rec in records {
        if let Some(&name) = names.iter().find(|n| **n == rec.fields[0]) {
            rec.arity(2)?;
            let value = rec.int(1)?;
            if keys.insert(name, (rec.line, value)).is_some() {
                return Err(rec.err(format!("repeated '{name}' record")));
            }
        } else {
            body.push(rec);
        }
    }
    Ok(Parsed {
        format,
        header_line: header.line,
        keys,
        body,
    })
}

fn key_names(format: Format) -> &'static [&'static str] {
    match format {
        Format::Gugp | Format::T22 => &["k", "n"],
        Format::Rel => &["k1", "k2", "n", "bipartite"],
        Format::Tsp | Format::Lab => &["n"],
    }
}

/// Parses any supported file.
pub fn parse(text: &str) -> Result<Document> {
    let p = split(text, key_names)?;
    match p.format {
        Format::Gugp => parse_gugp_body(&p).map(Document::Gugp),
        Format::Rel => parse_rel_body(&p).map(Document::Rel),
        Format::T22 => parse_t22_body(&p).map(Document::T22),
        Format::Tsp => parse_tsp_body(&p).map(Document::Tsp),
        Format::Lab => parse_lab_body(&p).map(Document::Lab),
    }
}

fn expect(text: &str, want: Format) -> Result<Document> {
    let doc = parse(text)?;
    if doc.format() != want {
        return Err(Error::Usage(format!(
            "expected a {} file, found {}",
            want.tag(),
            doc.format().tag()
        )));
    }
    Ok(doc)
}

pub fn parse_gugp(text: &str) -> Result<GugpInstance> {
    match expect(text, Format::Gugp)? {
        Document::Gugp(g) => Ok(g),
        _ => unreachable!(),
    }
}

pub fn parse_rel(text: &str) -> Result<RelationalInstance> {
    match expect(text, Format::Rel)? {
        Document::Rel(r) => Ok(r),
        _ => unreachable!(),
    }
}

pub fn parse_t22(text: &str) -> Result<TwoToTwoInstance> {
    match expect(text, Format::T22)? {
        Document::T22(t) => Ok(t),
        _ => unreachable!(),
    }
}

pub fn parse_tsp(text: &str) -> Result<TspInstance> {
    match expect(text, Format::Tsp)? {
        Document::Tsp(t) => Ok(t),
        _ => unreachable!(),
    }
}

pub fn parse_lab(text: &str) -> Result<Labeling> {
    match expect(text, Format::Lab)? {
        Document::Lab(f) => Ok(f),
        _ => unreachable!(),
    }
}

fn tag(rec: &Record<'_>, want: &str) -> Result<()> {
    if rec.fields[0] != want {
        return Err(rec.err(format!("unexpected record '{}'", rec.fields[0])));
    }
    Ok(())
}

fn parse_gugp_body(p: &Parsed<'_>) -> Result<GugpInstance> {
    let (k, n) = (p.key("k")?, p.key("n")?);
    let edges = p
        .body
        .iter()
        .map(|rec| {
            tag(rec, "e")?;
            rec.arity(4 + k)?;
            Ok(GugpEdge {
                u: rec.int(1)?,
                v: rec.int(2)?,
                weight: rec.rational(3)?,
                pi: Permutation::new(rec.ints(4..4 + k)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GugpInstance::new(n, k, edges)
}

fn parse_rel_body(p: &Parsed<'_>) -> Result<RelationalInstance> {
    let (k1, k2, n) = (p.key("k1")?, p.key("k2")?, p.key("n")?);
    let bipartite = match p.key("bipartite")? {
        0 => false,
        1 => true,
        _ => {
            let line = p.keys["bipartite"].0;
            return Err(Error::Parse {
                line,
                message: "bipartite must be 0 or 1".into(),
            });
        }
    };
    let mut sides: Vec<Option<Side>> = vec![None; if bipartite { n } else { 0 }];
    let mut edges = Vec::new();
    // identical relations share one allocation
    let mut interned: BTreeMap<Vec<(usize, usize)>, Arc<Relation>> = BTreeMap::new();
    for rec in &p.body {
        match rec.fields[0] {
            "s" => {
                if !bipartite {
                    return Err(rec.err("side record in a non-bipartite file"));
                }
                rec.arity(3)?;
                let v = rec.int(1)?;
                if v >= n {
                    return Err(Error::validation("vertex out of range"));
                }
                let side = match rec.fields[2] {
                    "V" => Side::V,
                    "W" => Side::W,
                    other => return Err(rec.err(format!("side must be V or W, found {other:?}"))),
                };
                if sides[v].replace(side).is_some() {
                    return Err(rec.err(format!("repeated side for vertex {v}")));
                }
            }
            "e" => {
                let m = rec.int(4)?;
                rec.arity(5 + 2 * m)?;
                let flat = rec.ints(5..5 + 2 * m)?;
                let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
                let rel = Relation::new(k1, k2, pairs)?;
                let rel = interned
                    .entry(rel.pairs().to_vec())
                    .or_insert_with(|| Arc::new(rel))
                    .clone();
                edges.push(RelationalEdge {
                    u: rec.int(1)?,
                    v: rec.int(2)?,
                    weight: rec.rational(3)?,
                    rel,
                });
            }
            other => return Err(rec.err(format!("unexpected record '{other}'"))),
        }
    }
    let sides = if bipartite {
        let all: Option<Vec<Side>> = sides.into_iter().collect();
        Some(all.ok_or_else(|| Error::validation("side assignment must cover every vertex"))?)
    } else {
        None
    };
    RelationalInstance::new(n, k1, k2, sides, edges)
}

fn parse_t22_body(p: &Parsed<'_>) -> Result<TwoToTwoInstance> {
    let (k, n) = (p.key("k")?, p.key("n")?);
    let size = 2 * k;
    let edges = p
        .body
        .iter()
        .map(|rec| {
            tag(rec, "e")?;
            rec.arity(6 + 2 * size)?;
            if rec.fields[4] != "pu" || rec.fields[5 + size] != "pv" {
                return Err(rec.err("expected 'pu <2k images> pv <2k images>'"));
            }
            Ok(TwoToTwoEdge {
                u: rec.int(1)?,
                v: rec.int(2)?,
                weight: rec.rational(3)?,
                pi_u: Permutation::new(rec.ints(5..5 + size)?)?,
                pi_v: Permutation::new(rec.ints(6 + size..6 + 2 * size)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TwoToTwoInstance::new(n, k, edges)
}

fn parse_tsp_body(p: &Parsed<'_>) -> Result<TspInstance> {
    let n = p.key("n")?;
    let entries = p
        .body
        .iter()
        .map(|rec| {
            tag(rec, "w")?;
            rec.arity(4)?;
            let (u, v) = (rec.int(1)?, rec.int(2)?);
            if u >= v {
                return Err(Error::validation("tsp pair must have u < v"));
            }
            Ok((u, v, rec.rational(3)?))
        })
        .collect::<Result<Vec<_>>>()?;
    TspInstance::new(n, entries)
}

fn parse_lab_body(p: &Parsed<'_>) -> Result<Labeling> {
    let n = p.key("n")?;
    let mut labels: Vec<Option<usize>> = vec![None; n];
    for rec in &p.body {
        tag(rec, "f")?;
        rec.arity(3)?;
        let (v, label) = (rec.int(1)?, rec.int(2)?);
        if v >= n {
            return Err(Error::validation("vertex out of range"));
        }
        if label == 0 {
            return Err(Error::validation("label out of range"));
        }
        if labels[v].replace(label).is_some() {
            return Err(rec.err(format!("repeated label for vertex {v}")));
        }
    }
    let values: Option<Vec<usize>> = labels.into_iter().collect();
    values
        .map(Labeling::new)
        .ok_or_else(|| Error::validation("labeling must cover every vertex"))
}
