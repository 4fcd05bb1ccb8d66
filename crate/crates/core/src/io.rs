//! Text formats.
//!
//! ```text
//! graph <n> <m>              setcover <n> <k>        intervals <n>
//! <u> <v>      (m lines)     <ids..>  (k lines)      <lo> <hi>   (n lines)
//! weights <w_0> .. <w_n-1>   (optional)
//! ```
//!
//! Interval endpoints are exact rationals written `num/den` (or integers).
//! Lines starting with `#` are comments. Blank lines are ignored, except that
//! a blank line in a `setcover` body is an empty set.

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Rational64;

use crate::apps::{GenotypePanel, JointTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::{Interval, IntervalSet};
use crate::setsystem::SetSystem;

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn err(&self, column: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.number, column, msg)
    }

    fn value<T: FromStr>(&self, (column, tok): (usize, &str), what: &str) -> Result<T> {
        tok.parse()
            .map_err(|_| self.err(column, format!("expected {what}, found {tok:?}")))
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, t)| Line {
            number: i + 1,
            text: t,
        })
        .filter(|l| !l.text.trim_start().starts_with('#'))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = Line<'a>>,
    keyword: &str,
    arity: usize,
) -> Result<(Line<'a>, Vec<usize>)> {
    let line = lines
        .find(|l| !l.text.trim().is_empty())
        .ok_or_else(|| Error::parse(1, 1, format!("missing `{keyword}` header")))?;
    let toks = line.tokens();
    if toks[0].1 != keyword {
        return Err(line.err(
            toks[0].0,
            format!("expected `{keyword}` header, found {:?}", toks[0].1),
        ));
    }
    if toks.len() != arity + 1 {
        return Err(line.err(1, format!("`{keyword}` header takes {arity} numbers")));
    }
    let nums = toks[1..]
        .iter()
        .map(|&t| line.value::<usize>(t, "a nonnegative integer"))
        .collect::<Result<Vec<_>>>()?;
    Ok((line, nums))
}

fn no_trailing<'a>(lines: impl Iterator<Item = Line<'a>>) -> Result<()> {
    for l in lines {
        if let Some(&(col, tok)) = l.tokens().first() {
            return Err(l.err(col, format!("unexpected trailing content {tok:?}")));
        }
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).filter(|l| !l.text.trim().is_empty());
    let (head, nums) = header(&mut lines, "graph", 2)?;
    let (n, m) = (nums[0], nums[1]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for k in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| head.err(1, format!("header announces {m} edges, found {k}")))?;
        let toks = line.tokens();
        if toks.len() != 2 {
            return Err(line.err(1, "edge lines hold exactly two vertex ids"));
        }
        let u: usize = line.value(toks[0], "a vertex id")?;
        let v: usize = line.value(toks[1], "a vertex id")?;
        for (t, x) in [(toks[0], u), (toks[1], v)] {
            if x >= n {
                return Err(line.err(t.0, format!("vertex {x} outside [0, {n})")));
            }
        }
        if u == v {
            return Err(line.err(toks[0].0, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(line.err(toks[0].0, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    let g = Graph::new(n, edges)?;
    let rest: Vec<Line> = lines.collect();
    let mut rest = rest.into_iter();
    let Some(line) = rest.next() else {
        return Ok(g);
    };
    let toks = line.tokens();
    if toks[0].1 != "weights" {
        return Err(line.err(toks[0].0, format!("unexpected content {:?}", toks[0].1)));
    }
    if toks.len() != n + 1 {
        return Err(line.err(
            1,
            format!("weights line needs {n} values, found {}", toks.len() - 1),
        ));
    }
    let weights = toks[1..]
        .iter()
        .map(|&t| line.value::<f64>(t, "a weight"))
        .collect::<Result<Vec<_>>>()?;
    let g = g
        .with_weights(weights)
        .map_err(|e| line.err(1, e.to_string()))?;
    no_trailing(rest)?;
    Ok(g)
}

/// Writes `g`; floats use the shortest representation that parses back exactly.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(w) = g.weights() {
        out.push_str("weights");
        for x in w {
            let _ = write!(out, " {x:?}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_setcover(text: &str) -> Result<SetSystem> {
    let mut lines = content_lines(text);
    let (head, nums) = header(&mut lines, "setcover", 2)?;
    let (n, k) = (nums[0], nums[1]);
    let mut sets = Vec::with_capacity(k);
    for i in 0..k {
        let line = lines
            .next()
            .ok_or_else(|| head.err(1, format!("header announces {k} sets, found {i}")))?;
        let mut set = Vec::new();
        for t in line.tokens() {
            let x: usize = line.value(t, "an element id")?;
            if x >= n {
                return Err(line.err(t.0, format!("element {x} outside [0, {n})")));
            }
            if set.contains(&x) {
                return Err(line.err(t.0, format!("element {x} repeated in set")));
            }
            set.push(x);
        }
        sets.push(set);
    }
    no_trailing(lines)?;
    SetSystem::new(n, sets).map_err(|e| head.err(1, e.to_string()))
}

pub fn write_setcover(s: &SetSystem) -> String {
    let mut out = format!("setcover {} {}\n", s.universe_size(), s.num_sets());
    for set in s.sets() {
        let line: Vec<String> = set.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse_rational(line: &Line, (col, tok): (usize, &str)) -> Result<Rational64> {
    let bad = || line.err(col, format!("expected a rational like 3/4, found {tok:?}"));
    match tok.split_once('/') {
        Some((a, b)) => {
            let num: i64 = a.parse().map_err(|_| bad())?;
            let den: i64 = b.parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(line.err(col, "zero denominator"));
            }
            Ok(Rational64::new(num, den))
        }
        None => tok
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|_| bad()),
    }
}

pub fn parse_intervals(text: &str) -> Result<IntervalSet> {
    let mut lines = content_lines(text).filter(|l| !l.text.trim().is_empty());
    let (head, nums) = header(&mut lines, "intervals", 1)?;
    let n = nums[0];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| head.err(1, format!("header announces {n} intervals, found {i}")))?;
        let toks = line.tokens();
        if toks.len() != 2 {
            return Err(line.err(1, "interval lines hold exactly two endpoints"));
        }
        let lo = parse_rational(&line, toks[0])?;
        let hi = parse_rational(&line, toks[1])?;
        out.push(Interval::new(lo, hi).map_err(|e| line.err(toks[0].0, e.to_string()))?);
    }
    no_trailing(lines)?;
    Ok(IntervalSet::new(out))
}

pub fn write_intervals(iv: &IntervalSet) -> String {
    let mut out = format!("intervals {}\n", iv.len());
    for i in iv.intervals() {
        let _ = writeln!(
            out,
            "{}/{} {}/{}",
            i.lo.numer(),
            i.lo.denom(),
            i.hi.numer(),
            i.hi.denom()
        );
    }
    out
}

/// One genotype per line.
pub fn parse_genotypes(text: &str) -> Result<GenotypePanel> {
    let mut genotypes = Vec::new();
    for line in content_lines(text).filter(|l| !l.text.trim().is_empty()) {
        let g = line.text.trim();
        if let Some((i, c)) = g
            .char_indices()
            .find(|(_, c)| !matches!(c, '0' | '1' | '?'))
        {
            return Err(line.err(
                line.text.find(g).unwrap_or(0) + i + 1,
                format!("genotype character {c:?} is not 0, 1 or ?"),
            ));
        }
        genotypes.push(g.to_string());
    }
    GenotypePanel::new(genotypes)
}

/// CSV with a header row of `y` labels (after one leading cell) and one row per
/// `x` label followed by its probabilities.
pub fn parse_joint_table(text: &str) -> Result<JointTable> {
    let mut lines = content_lines(text).filter(|l| !l.text.trim().is_empty());
    let head = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing header row"))?;
    let y_labels: Vec<String> = head
        .text
        .split(',')
        .skip(1)
        .map(|c| c.trim().to_string())
        .collect();
    if y_labels.is_empty() {
        return Err(head.err(1, "header row needs at least one y label"));
    }
    let mut x_labels = Vec::new();
    let mut probs = Vec::new();
    for line in lines {
        let mut col = 1;
        let mut cells = Vec::new();
        for cell in line.text.split(',') {
            cells.push((col, cell.trim()));
            col += cell.len() + 1;
        }
        if cells.len() != y_labels.len() + 1 {
            return Err(line.err(
                1,
                format!(
                    "row needs {} cells, found {}",
                    y_labels.len() + 1,
                    cells.len()
                ),
            ));
        }
        x_labels.push(cells[0].1.to_string());
        let row = cells[1..]
            .iter()
            .map(|&c| line.value::<f64>(c, "a probability"))
            .collect::<Result<Vec<_>>>()?;
        probs.push(row);
    }
    JointTable::new(x_labels, y_labels, probs)
}
