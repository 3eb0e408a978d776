//! graph6 (short form) and a plain edge-list format.

use super::Graph;
use crate::error::{Error, Result};

const MAX_SHORT_N: usize = 62;
const HEADER: &str = ">>graph6<<";

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses a single graph6 string (`n <= 62`). Surrounding whitespace and the
/// optional `>>graph6<<` header are accepted; anything else is rejected with
/// the byte offset of the first bad byte.
pub fn parse_graph6(input: &str) -> Result<Graph> {
    let lead = input.len() - input.trim_start().len();
    let mut s = input.trim();
    let mut base = lead;
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
        base += HEADER.len();
    }
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(perr(base, "empty graph6 input"));
    };
    if first == 126 {
        return Err(perr(
            base,
            format!("long-form graph6 (n > {MAX_SHORT_N}) is not supported"),
        ));
    }
    if !(63..=125).contains(&first) {
        return Err(perr(base, format!("invalid size byte {first:#04x}")));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != need {
        let off = base + 1 + data.len().min(need);
        return Err(perr(
            off,
            format!("expected {need} data bytes for n={n}, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(perr(base + 1 + i, format!("invalid data byte {b:#04x}")));
        }
        let val = b - 63;
        for bit in 0..6 {
            let set = val >> (5 - bit) & 1 == 1;
            if k < nbits {
                if set {
                    let (u, v) = pair_of(k);
                    edges.push((u, v));
                }
            } else if set {
                return Err(perr(base + 1 + i, "nonzero padding bits"));
            }
            k += 1;
        }
    }
    Ok(Graph::build(n, edges))
}

/// Position `k` in the column-wise upper triangle -> pair `(i, j)` with `i < j`.
fn pair_of(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

pub fn write_graph6(g: &Graph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::input("graph6 cannot encode loops"));
    }
    if g.n() > MAX_SHORT_N {
        return Err(Error::Guard {
            what: "graph6 short form",
            limit: MAX_SHORT_N,
            actual: g.n(),
        });
    }
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.adjacent(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses `"n m"` followed by `m` lines `"u v"` and any number of `"loop v"`
/// lines. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(input: &str) -> Result<Graph> {
    let mut lines = Vec::new();
    let mut off = 0;
    for raw in input.split_inclusive('\n') {
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            lines.push((off, content));
        }
        off += raw.len();
    }
    let Some(&(hoff, header)) = lines.first() else {
        return Err(perr(0, "empty edge-list input"));
    };
    let nums = parse_ints(header, hoff)?;
    let [n, m] = nums[..] else {
        return Err(perr(hoff, "header must be `n m`"));
    };
    let mut edges = Vec::with_capacity(m);
    let mut loops = Vec::new();
    for &(loff, line) in &lines[1..] {
        if let Some(rest) = line.strip_prefix("loop") {
            let v = parse_ints(rest, loff)?;
            let [v] = v[..] else {
                return Err(perr(loff, "loop line must be `loop v`"));
            };
            if v >= n {
                return Err(perr(loff, format!("loop vertex {v} out of range")));
            }
            loops.push(v);
            continue;
        }
        let uv = parse_ints(line, loff)?;
        let [u, v] = uv[..] else {
            return Err(perr(loff, "edge line must be `u v`"));
        };
        if u >= n || v >= n {
            return Err(perr(loff, format!("edge ({u},{v}) out of range for n={n}")));
        }
        if u == v {
            return Err(perr(loff, "self-pair; write loops as `loop v`"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(perr(
            input.len(),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::with_loops(n, edges, loops)
}

fn parse_ints(s: &str, off: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| perr(off, format!("expected a non-negative integer, found `{t}`")))
        })
        .collect()
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in g.loops().iter() {
        out.push_str(&format!("loop {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn known_strings() {
        assert_eq!(parse_graph6("A_").unwrap(), complete(2));
        assert_eq!(parse_graph6("Bw").unwrap(), complete(3));
        assert_eq!(write_graph6(&complete(3)).unwrap(), "Bw");
        assert_eq!(write_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), complete(3));
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("B "), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("Bw!"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("Bx"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn edge_list_with_loops() {
        let g = parse_edge_list("3 2\n0 1\n1 2 # path\nloop 2\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(g.has_loop(2));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        assert!(matches!(
            parse_edge_list("3 1\n0 5\n"),
            Err(Error::Parse { offset: 4, .. })
        ));
    }

    #[test]
    fn cycle_round_trip() {
        let c = cycle(7).unwrap();
        assert_eq!(parse_graph6(&write_graph6(&c).unwrap()).unwrap(), c);
    }
}
