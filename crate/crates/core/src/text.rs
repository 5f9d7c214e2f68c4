//! Line-oriented text formats.
//!
//! ```text
//! digraph 3        lattice 4       product 4 5          cover v.poset
//! arc 2 1          le 0 1          interval 2 1 3 2     chain 2 0 1
//! arc 1 0          le 0 2          elem 0 0             chain 1 bot
//! ```
//!
//! Blank lines are ignored and `#` starts a comment. Interval coordinates are
//! 1-based and levels 0-based; `arc u v` means `u >= v`, `le u v` means
//! `u <= v`.

use std::fmt::Write as _;

use crate::digraph::{Digraph, Poset};
use crate::embeddings::PointedVertex;
use crate::error::{Error, Result};
use crate::intervals::{ChainProduct, Interval, IntervalFamily, Sublattice};
use crate::lattice::Lattice;

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    args: Vec<&'a str>,
}

impl Line<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn numbers(&self, count: Option<usize>) -> Result<Vec<usize>> {
        if let Some(c) = count {
            if self.args.len() != c {
                return Err(self.error(format!(
                    "`{}` takes {c} arguments, got {}",
                    self.keyword,
                    self.args.len()
                )));
            }
        }
        self.args
            .iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| self.error(format!("`{a}` is not a non-negative integer")))
            })
            .collect()
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let keyword = words.next()?;
        Some(Line {
            number: k + 1,
            keyword,
            args: words.collect(),
        })
    })
}

fn unexpected(line: &Line<'_>, expected: &str) -> Error {
    line.error(format!(
        "unexpected `{}`, expected {expected}",
        line.keyword
    ))
}

fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>, keyword: &str) -> Result<Line<'a>> {
    match it.next() {
        Some(line) if line.keyword == keyword => Ok(line),
        Some(line) => Err(unexpected(&line, &format!("`{keyword}` header"))),
        None => Err(Error::Parse {
            line: 0,
            message: format!("empty input, expected `{keyword}` header"),
        }),
    }
}

fn in_range(line: &Line<'_>, v: usize, n: usize) -> Result<usize> {
    if v < n {
        Ok(v)
    } else {
        Err(line.error(format!("vertex {v} is out of range for {n} vertices")))
    }
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut it = lines(text);
    let head = header(&mut it, "digraph")?;
    let n = head.numbers(Some(1))?[0];
    let mut g = Digraph::new(n);
    for line in it {
        if line.keyword != "arc" {
            return Err(unexpected(&line, "`arc`"));
        }
        let uv = line.numbers(Some(2))?;
        g.add_arc(in_range(&line, uv[0], n)?, in_range(&line, uv[1], n)?);
    }
    Ok(g)
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut s = format!("digraph {}\n", d.vertex_count());
    for (u, v) in d.arcs() {
        writeln!(s, "arc {u} {v}").unwrap();
    }
    s
}

/// Reads `le` pairs, closes them reflexively and transitively, and builds
/// the lattice.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    Lattice::from_order(parse_lattice_order(text)?)
}

pub fn parse_lattice_order(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let head = header(&mut it, "lattice")?;
    let n = head.numbers(Some(1))?[0];
    let mut pairs = Vec::new();
    for line in it {
        if line.keyword != "le" {
            return Err(unexpected(&line, "`le`"));
        }
        let uv = line.numbers(Some(2))?;
        pairs.push((in_range(&line, uv[0], n)?, in_range(&line, uv[1], n)?));
    }
    Poset::from_relation(n, pairs)
}

pub fn write_lattice(l: &Lattice) -> String {
    let mut s = format!("lattice {}\n", l.len());
    for (upper, lower) in l.covers() {
        writeln!(s, "le {lower} {upper}").unwrap();
    }
    s
}

/// `"4 5"` or `"4,5"`.
pub fn parse_product(text: &str) -> Result<ChainProduct> {
    let sizes = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse::<usize>().map_err(|_| Error::Parse {
                line: 0,
                message: format!("`{w}` is not a chain length"),
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    ChainProduct::new(sizes)
}

fn product_line(line: &Line<'_>) -> Result<ChainProduct> {
    let sizes = line.numbers(None)?;
    ChainProduct::new(sizes).map_err(|e| line.error(e.to_string()))
}

fn resolve_product(
    declared: Option<ChainProduct>,
    given: Option<ChainProduct>,
) -> Result<ChainProduct> {
    match (declared, given) {
        (Some(a), Some(b)) if a != b => Err(Error::Parse {
            line: 0,
            message: format!("file declares product {a} but {b} was given"),
        }),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::Parse {
            line: 0,
            message: "no `product` line and no product given".into(),
        }),
    }
}

/// Reads an interval family; the product comes from a `product` line or from
/// `product` (both must agree when present).
pub fn parse_intervals(text: &str, product: Option<ChainProduct>) -> Result<IntervalFamily> {
    let mut declared = None;
    let mut raw = Vec::new();
    for line in lines(text) {
        match line.keyword {
            "product" if declared.is_none() && raw.is_empty() => {
                declared = Some(product_line(&line)?)
            }
            "interval" => {
                let v = line.numbers(Some(4))?;
                raw.push((line.number, Interval::new(v[0], v[1], v[2], v[3])));
            }
            _ => return Err(unexpected(&line, "`product` or `interval`")),
        }
    }
    let p = resolve_product(declared, product)?;
    let mut fam = IntervalFamily::new(p);
    for (number, iv) in raw {
        fam.insert(iv).map_err(|e| Error::Parse {
            line: number,
            message: e.to_string(),
        })?;
    }
    Ok(fam)
}

pub fn write_intervals(fam: &IntervalFamily) -> String {
    let sizes: Vec<String> = fam
        .product()
        .sizes()
        .iter()
        .map(|n| n.to_string())
        .collect();
    let mut s = format!("product {}\n", sizes.join(" "));
    for iv in fam.non_mandatory() {
        writeln!(s, "interval {} {} {} {}", iv.i, iv.j, iv.alpha, iv.beta).unwrap();
    }
    s
}

pub fn parse_sublattice(text: &str, product: Option<ChainProduct>) -> Result<Sublattice> {
    let mut declared = None;
    let mut elems = Vec::new();
    for line in lines(text) {
        match line.keyword {
            "product" if declared.is_none() && elems.is_empty() => {
                declared = Some(product_line(&line)?)
            }
            "elem" => elems.push(line.numbers(None)?),
            _ => return Err(unexpected(&line, "`product` or `elem`")),
        }
    }
    let p = resolve_product(declared, product)?;
    Sublattice::new(p, elems)
}

pub fn write_sublattice(l: &Sublattice) -> String {
    let sizes: Vec<String> = l.product().sizes().iter().map(|n| n.to_string()).collect();
    let mut s = format!("product {}\n", sizes.join(" "));
    for x in l.elements() {
        let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        writeln!(s, "elem {}", parts.join(" ")).unwrap();
    }
    s
}

/// A cover file: the referenced poset file and the chain images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub poset_file: String,
    pub chains: Vec<Vec<PointedVertex>>,
}

pub fn parse_cover(text: &str) -> Result<CoverSpec> {
    let mut it = lines(text);
    let head = header(&mut it, "cover")?;
    if head.args.len() != 1 {
        return Err(head.error("`cover` takes the poset file name"));
    }
    let mut chains = Vec::new();
    for line in it {
        if line.keyword != "chain" {
            return Err(unexpected(&line, "`chain`"));
        }
        let (len, rest) = line
            .args
            .split_first()
            .ok_or_else(|| line.error("`chain` needs a length"))?;
        let len: usize = len
            .parse()
            .map_err(|_| line.error(format!("`{len}` is not a chain length")))?;
        if rest.len() != len {
            return Err(line.error(format!("chain of length {len} lists {} images", rest.len())));
        }
        let images = rest
            .iter()
            .map(|w| match *w {
                "bot" => Ok(PointedVertex::Bottom),
                "top" => Ok(PointedVertex::Top),
                _ => w
                    .parse()
                    .map(PointedVertex::Vertex)
                    .map_err(|_| line.error(format!("`{w}` is not a vertex, `bot` or `top`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        chains.push(images);
    }
    Ok(CoverSpec {
        poset_file: head.args[0].to_string(),
        chains,
    })
}
