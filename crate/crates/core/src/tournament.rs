//! Tournaments, compositions, and the recursive description of sectionable
//! tournaments.
//!
//! A *tournament* on `n` vertices is a complete graph with every edge given
//! exactly one orientation. Vertices are labelled `1..=n` throughout the
//! public API. The *highly regular* tournament `R_m` (odd `m = 2k+1`) places
//! its vertices on a cycle and orients `i -> j` exactly when `j` is one of
//! the `k` vertices following `i` clockwise. `R_1` is a single vertex and
//! `R_3` the directed triangle.
//!
//! The *composition* `Q(P^1, ..., P^m)` of blocks `P^i` along a quotient `Q`
//! replaces vertex `i` of `Q` by the whole block `P^i`, orienting every edge
//! between distinct blocks as the quotient dictates. Each block is then an
//! *equivalent set*: every outside vertex either beats all of the block or
//! loses to all of it.
//!
//! A *sectionable* tournament is anything generated from transitive
//! tournaments and highly regular quotients by composition. The recursive
//! recipe is captured syntactically by [`SectionableSpec`]; [`realize`]
//! produces the concrete tournament with a canonical depth-first, left-to-
//! right labelling, so that block contents occupy consecutive label
//! intervals.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// 1-based vertex label.
pub type Vertex = u32;

/// Hard ceiling on tournament order: adjacency rows are single machine words.
pub const MAX_TOURNAMENT_VERTICES: usize = 64;

/// A tournament on vertices `1..=n`, stored as one out-neighbour bitmask per
/// vertex (bit `u-1` of `out[v-1]` set iff `v -> u`).
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={})", self.n)
    }
}

impl Tournament {
    /// Builds a tournament from an explicit orientation oracle.
    /// `beats(u, v)` is consulted once per unordered pair `u < v`.
    pub fn from_orientation(n: usize, mut beats: impl FnMut(Vertex, Vertex) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a tournament needs at least one vertex"));
        }
        if n > MAX_TOURNAMENT_VERTICES {
            return Err(Error::ResourceLimit {
                what: "tournament vertices",
                actual: n,
                limit: MAX_TOURNAMENT_VERTICES,
            });
        }
        let mut out = vec![0u64; n];
        for u in 1..=n as Vertex {
            for v in (u + 1)..=n as Vertex {
                if beats(u, v) {
                    out[(u - 1) as usize] |= 1 << (v - 1);
                } else {
                    out[(v - 1) as usize] |= 1 << (u - 1);
                }
            }
        }
        Ok(Tournament { n, out })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// True iff `u -> v`. Both vertices must be in range and distinct.
    pub fn beats(&self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u != v && u >= 1 && v >= 1 && u as usize <= self.n && v as usize <= self.n);
        self.out[(u - 1) as usize] >> (v - 1) & 1 == 1
    }

    /// Out-neighbour mask of `v` (bit `u-1` set iff `v -> u`).
    pub fn out_mask(&self, v: Vertex) -> u64 {
        self.out[(v - 1) as usize]
    }

    /// Out-degree of `v` inside the vertex set `mask` (bit `u-1` ~ vertex `u`).
    pub fn out_degree_within(&self, v: Vertex, mask: u64) -> u32 {
        (self.out[(v - 1) as usize] & mask).count_ones()
    }

    /// All directed edges, lexicographically by (source, target).
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for u in 1..=self.n as Vertex {
            for v in 1..=self.n as Vertex {
                if u != v && self.beats(u, v) {
                    e.push((u, v));
                }
            }
        }
        e
    }

    /// Decides whether the vertex set `mask` induces a transitive (acyclic)
    /// subtournament, via the score criterion: a tournament on `s` vertices
    /// is transitive iff its out-degree multiset is `{0, 1, ..., s-1}`,
    /// equivalently iff all scores are distinct.
    pub fn is_acyclic_set(&self, mask: u64) -> bool {
        debug_assert_eq!(mask >> self.n, 0, "vertex set outside ground set");
        let mut seen: u64 = 0;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.out[v] & mask).count_ones();
            if seen >> d & 1 == 1 {
                return false;
            }
            seen |= 1 << d;
        }
        true
    }

    /// Finds a directed 3-cycle inside `mask`, if any, returned as
    /// `(a, b, c)` with `a` the least vertex of the cycle and `a->b->c->a`.
    /// In a tournament every directed cycle contains a directed triangle, so
    /// `None` certifies that `mask` induces a transitive set.
    pub fn find_dicycle(&self, mask: u64) -> Option<(Vertex, Vertex, Vertex)> {
        let verts: Vec<Vertex> = mask_to_vertices(mask);
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                for &c in verts.iter().skip(j + 1) {
                    // Orient the triangle starting from its least vertex a.
                    let (x, y) = if self.beats(a, b) { (b, c) } else { (c, b) };
                    if self.beats(a, x) && self.beats(x, y) && self.beats(y, a) {
                        return Some((a, x, y));
                    }
                }
            }
        }
        None
    }

    /// Serializes to the edge-list format: first line `n`, then one line
    /// `u v` per directed edge `u -> v`, lexicographically ordered.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u, v));
        }
        s
    }

    /// Parses the edge-list format produced by [`Tournament::to_edge_list`].
    /// Every unordered pair must be oriented exactly once.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines.next().ok_or(Error::MalformedInput {
            line: 1,
            msg: "empty input; expected vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::MalformedInput {
            line: first_no,
            msg: format!("expected vertex count, found {:?}", first),
        })?;
        if n == 0 || n > MAX_TOURNAMENT_VERTICES {
            return Err(Error::MalformedInput {
                line: first_no,
                msg: format!("vertex count {} out of range 1..={}", n, MAX_TOURNAMENT_VERTICES),
            });
        }
        let mut out = vec![0u64; n];
        let mut seen = vec![0u64; n];
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<Vertex> {
                let tok = tok.ok_or(Error::MalformedInput {
                    line,
                    msg: "expected `u v`".into(),
                })?;
                let v: Vertex = tok.parse().map_err(|_| Error::MalformedInput {
                    line,
                    msg: format!("not a vertex label: {:?}", tok),
                })?;
                if v == 0 || v as usize > n {
                    return Err(Error::MalformedInput {
                        line,
                        msg: format!("vertex {} out of range 1..={}", v, n),
                    });
                }
                Ok(v)
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::MalformedInput {
                    line,
                    msg: "trailing tokens after edge".into(),
                });
            }
            if u == v {
                return Err(Error::MalformedInput {
                    line,
                    msg: format!("loop on vertex {}", u),
                });
            }
            let (ui, vi) = ((u - 1) as usize, (v - 1) as usize);
            if seen[ui] >> vi & 1 == 1 {
                return Err(Error::MalformedInput {
                    line,
                    msg: format!("pair {{{}, {}}} oriented twice", u, v),
                });
            }
            seen[ui] |= 1 << vi;
            seen[vi] |= 1 << ui;
            out[ui] |= 1 << vi;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if seen[u] >> v & 1 == 0 {
                    return Err(Error::MalformedInput {
                        line: 0,
                        msg: format!("pair {{{}, {}}} has no orientation", u + 1, v + 1),
                    });
                }
            }
        }
        Ok(Tournament { n, out })
    }
}

/// Expands a bitmask into ascending 1-based vertex labels.
pub fn mask_to_vertices(mask: u64) -> Vec<Vertex> {
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        v.push(rest.trailing_zeros() as Vertex + 1);
        rest &= rest - 1;
    }
    v
}

/// Collapses ascending 1-based vertex labels into a bitmask.
pub fn vertices_to_mask(verts: &[Vertex]) -> u64 {
    verts.iter().fold(0u64, |m, &v| m | 1 << (v - 1))
}

/// The highly regular tournament `R_m` for odd `m`: `i -> j` iff
/// `j - i (mod m)` lies in `1..=(m-1)/2`.
pub fn highly_regular(m: usize) -> Result<Tournament> {
    if m % 2 == 0 || m == 0 {
        return Err(Error::invalid(format!(
            "highly regular tournaments have odd order, got {}",
            m
        )));
    }
    let k = (m - 1) / 2;
    Tournament::from_orientation(m, |u, v| {
        let d = (v as usize + m - u as usize) % m;
        d >= 1 && d <= k
    })
}

/// The transitive tournament `TT_k`: `i -> j` iff `i < j`.
pub fn transitive_tournament(k: usize) -> Result<Tournament> {
    if k == 0 {
        return Err(Error::invalid("transitive tournament needs at least one vertex"));
    }
    Tournament::from_orientation(k, |u, v| u < v)
}

/// Composes `blocks` along `quotient`: block `i` substitutes vertex `i` of
/// the quotient, blocks are labelled consecutively in order, and every edge
/// between blocks `i != j` follows the quotient edge `i -> j`.
pub fn compose(quotient: &Tournament, blocks: &[Tournament]) -> Result<Tournament> {
    if blocks.len() != quotient.order() {
        return Err(Error::invalid(format!(
            "quotient has {} vertices but {} blocks were supplied",
            quotient.order(),
            blocks.len()
        )));
    }
    let n: usize = blocks.iter().map(|b| b.order()).sum();
    let mut start = Vec::with_capacity(blocks.len());
    let mut acc = 0usize;
    for b in blocks {
        start.push(acc);
        acc += b.order();
    }
    let block_of = |v: Vertex| -> usize {
        let v0 = (v - 1) as usize;
        match start.binary_search(&v0) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    };
    Tournament::from_orientation(n, |u, v| {
        let (bu, bv) = (block_of(u), block_of(v));
        if bu == bv {
            let local_u = u - start[bu] as Vertex;
            let local_v = v - start[bu] as Vertex;
            blocks[bu].beats(local_u, local_v)
        } else {
            quotient.beats(bu as Vertex + 1, bv as Vertex + 1)
        }
    })
}

/// Syntactic description of a sectionable tournament.
///
/// * `Transitive(k)` — the transitive tournament on `k >= 1` vertices.
/// * `HighlyRegular(m)` — `R_m` as a leaf, odd `m >= 1`.
/// * `Compose(m, blocks)` — `R_m(P^1, ..., P^m)`, odd `m >= 3`, exactly `m`
///   children.
///
/// `R_1` and `TT_1` describe the same one-point tournament; [`crate::structure::normalize`]
/// maps both to `Transitive(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SectionableSpec {
    Transitive(usize),
    HighlyRegular(usize),
    Compose(usize, Vec<SectionableSpec>),
}

impl SectionableSpec {
    /// Checks the structural invariants of the whole tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SectionableSpec::Transitive(k) => {
                if *k == 0 {
                    return Err(Error::invalid("Transitive(0) is empty"));
                }
            }
            SectionableSpec::HighlyRegular(m) => {
                if *m == 0 || *m % 2 == 0 {
                    return Err(Error::invalid(format!(
                        "HighlyRegular({}) needs odd order",
                        m
                    )));
                }
            }
            SectionableSpec::Compose(m, blocks) => {
                if *m < 3 || *m % 2 == 0 {
                    return Err(Error::invalid(format!(
                        "Compose({}) needs odd quotient order >= 3",
                        m
                    )));
                }
                if blocks.len() != *m {
                    return Err(Error::invalid(format!(
                        "Compose({}) expects {} blocks, found {}",
                        m,
                        m,
                        blocks.len()
                    )));
                }
                for b in blocks {
                    b.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Number of vertices of the realization.
    pub fn order(&self) -> usize {
        match self {
            SectionableSpec::Transitive(k) => *k,
            SectionableSpec::HighlyRegular(m) => *m,
            SectionableSpec::Compose(_, blocks) => blocks.iter().map(|b| b.order()).sum(),
        }
    }

    /// True for the two leaf forms.
    pub fn is_leaf(&self) -> bool {
        !matches!(self, SectionableSpec::Compose(..))
    }

    /// A block is transitive exactly when it realizes a transitive
    /// tournament: `Transitive(k)` or `HighlyRegular(1)`.
    pub fn is_transitive(&self) -> bool {
        matches!(
            self,
            SectionableSpec::Transitive(_) | SectionableSpec::HighlyRegular(1)
        )
    }

    /// Canonical text form (the grammar accepted by the CLI parser):
    /// one-point blocks print as `R1`, transitive leaves as `TTk`, highly
    /// regular leaves as `Rm`, compositions as `Rm(...)`.
    pub fn canonical_text(&self) -> String {
        match self {
            SectionableSpec::Transitive(1) | SectionableSpec::HighlyRegular(1) => "R1".into(),
            SectionableSpec::Transitive(k) => format!("TT{}", k),
            SectionableSpec::HighlyRegular(m) => format!("R{}", m),
            SectionableSpec::Compose(m, blocks) => {
                let inner: Vec<String> = blocks.iter().map(|b| b.canonical_text()).collect();
                format!("R{}({})", m, inner.join(","))
            }
        }
    }
}

impl fmt::Display for SectionableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Path to a subblock: indices (1-based) chosen at each composition level.
/// The empty sequence addresses the whole spec.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSequence(pub Vec<u32>);

impl BlockSequence {
    pub fn root() -> Self {
        BlockSequence(Vec::new())
    }
}

impl fmt::Display for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Builds the tournament described by `spec` with canonical labels: blocks
/// are realized depth-first, left to right, so every subblock occupies a
/// consecutive label interval.
pub fn realize(spec: &SectionableSpec) -> Result<Tournament> {
    spec.validate()?;
    match spec {
        SectionableSpec::Transitive(k) => transitive_tournament(*k),
        SectionableSpec::HighlyRegular(m) => highly_regular(*m),
        SectionableSpec::Compose(m, blocks) => {
            let quotient = highly_regular(*m)?;
            let parts: Result<Vec<Tournament>> = blocks.iter().map(realize).collect();
            compose(&quotient, &parts?)
        }
    }
}

/// Resolves a block sequence to the addressed subtree together with the
/// 1-based label interval it occupies in `realize(spec)`.
pub fn resolve_block<'a>(
    spec: &'a SectionableSpec,
    seq: &BlockSequence,
) -> Result<(&'a SectionableSpec, std::ops::RangeInclusive<Vertex>)> {
    let mut node = spec;
    let mut offset = 0usize;
    for &idx in &seq.0 {
        match node {
            SectionableSpec::Compose(_, blocks) => {
                if idx == 0 || idx as usize > blocks.len() {
                    return Err(Error::invalid(format!(
                        "block index {} out of range 1..={}",
                        idx,
                        blocks.len()
                    )));
                }
                for b in &blocks[..(idx - 1) as usize] {
                    offset += b.order();
                }
                node = &blocks[(idx - 1) as usize];
            }
            _ => {
                return Err(Error::invalid(format!(
                    "block sequence {} descends below a leaf",
                    seq
                )))
            }
        }
    }
    let lo = offset as Vertex + 1;
    let hi = (offset + node.order()) as Vertex;
    Ok((node, lo..=hi))
}

/// Returns a copy of `spec` with the subtree at `seq` replaced by
/// `replacement`. The root may be replaced with an empty sequence.
pub fn replace_block(
    spec: &SectionableSpec,
    seq: &BlockSequence,
    replacement: SectionableSpec,
) -> Result<SectionableSpec> {
    replacement.validate()?;
    resolve_block(spec, seq)?; // validate the path (and the original tree)
    fn go(node: &SectionableSpec, path: &[u32], replacement: &SectionableSpec) -> SectionableSpec {
        match path.split_first() {
            None => replacement.clone(),
            Some((&idx, rest)) => match node {
                SectionableSpec::Compose(m, blocks) => {
                    let mut blocks = blocks.clone();
                    blocks[(idx - 1) as usize] = go(&blocks[(idx - 1) as usize], rest, replacement);
                    SectionableSpec::Compose(*m, blocks)
                }
                _ => unreachable!("path validated by resolve_block"),
            },
        }
    }
    Ok(go(spec, &seq.0, &replacement))
}

/// The worked-example tournament used across the test suite:
/// `R5(R1, R1, R3, R3, R1)` on nine vertices, blocks `{1} {2} {3,4,5} {6,7,8} {9}`.
pub fn example_spec() -> SectionableSpec {
    use SectionableSpec::*;
    Compose(
        5,
        vec![
            Transitive(1),
            Transitive(1),
            HighlyRegular(3),
            HighlyRegular(3),
            Transitive(1),
        ],
    )
}
