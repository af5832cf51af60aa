//! Pivot matchings on face families and the closed-form critical-cell
//! calculus for sectionable tournaments.
//!
//! A *pivot step* at vertex `p` pairs each face `I` (with `p ∉ I`) to
//! `I ∪ {p}` whenever both are in the family and `I` contains no *cyclic
//! pair of `p`* — a pair `{x, y}` with `p → x`, `x → y`, `y → p`, i.e. a
//! directed triangle through `p`. Iterating pivot steps on the unmatched
//! remainders yields an acyclic matching on the face poset (a discrete
//! Morse matching); the faces never matched are the *critical cells*, and
//! the complex is homotopy equivalent to a CW-complex with one cell per
//! critical face (plus the base cell absorbing the matched empty face).
//!
//! For sectionable tournaments the critical-cell counts obey a closed-form
//! recursion over the composition tree ([`cs_recursive`]), with a companion
//! recursion for the restriction families that drive its proof
//! ([`cs_sigma`]). Counts are tracked per dimension in a [`CellHistogram`];
//! the dot-join of families turns into a convolution of histograms.

use crate::complex::{
    acyclic_complex, canonical_face_cmp, face_to_braces, sigma, Dimension, Face, FaceFamily,
};
use crate::error::{Error, Result};
use crate::tournament::{
    realize, replace_block, resolve_block, BlockSequence, SectionableSpec, Tournament, Vertex,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

/// Cell counts per dimension. The map with no entries is the histogram of
/// the family with no members — the annihilator of [`CellHistogram::conv`] —
/// while `{-1: 1}` (the family `{∅}`) is its identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellHistogram(BTreeMap<i64, u64>);

impl CellHistogram {
    /// Histogram of the empty family: no cells in any dimension.
    pub fn zero() -> Self {
        CellHistogram(BTreeMap::new())
    }

    /// Histogram of `{∅}`: one cell of dimension −1; identity for `conv`.
    pub fn identity() -> Self {
        CellHistogram(BTreeMap::from([(-1, 1)]))
    }

    /// One cell in the given dimension.
    pub fn single(dim: i64) -> Self {
        CellHistogram(BTreeMap::from([(dim, 1)]))
    }

    pub fn from_family(family: &FaceFamily) -> Self {
        let mut h = BTreeMap::new();
        for face in family.iter() {
            *h.entry(face.count_ones() as i64 - 1).or_insert(0) += 1;
        }
        CellHistogram(h)
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.0
    }

    pub fn count_at(&self, dim: i64) -> u64 {
        self.0.get(&dim).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// True for the histogram of the empty family.
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top_dimension(&self) -> Dimension {
        self.0
            .keys()
            .next_back()
            .map(|&d| Dimension::Dim(d))
            .unwrap_or(Dimension::Empty)
    }

    /// Pointwise sum — the histogram of a disjoint union of families.
    pub fn add(&self, other: &CellHistogram) -> CellHistogram {
        let mut out = self.0.clone();
        for (&d, &c) in &other.0 {
            *out.entry(d).or_insert(0) += c;
        }
        CellHistogram(out)
    }

    /// Size convolution — the histogram of a dot-join of families on
    /// disjoint ground sets: dimensions combine as `d₁ + d₂ + 1` (face
    /// sizes add), counts multiply, and an empty operand annihilates.
    pub fn conv(&self, other: &CellHistogram) -> CellHistogram {
        let mut out: BTreeMap<i64, u64> = BTreeMap::new();
        for (&d1, &c1) in &self.0 {
            for (&d2, &c2) in &other.0 {
                *out.entry(d1 + d2 + 1).or_insert(0) +=
                    c1.checked_mul(c2).expect("cell count overflow");
            }
        }
        CellHistogram(out)
    }

    /// Convolution of a whole sequence; the empty sequence gives the
    /// identity `{-1: 1}`.
    pub fn conv_all<'a>(factors: impl IntoIterator<Item = &'a CellHistogram>) -> CellHistogram {
        factors
            .into_iter()
            .fold(CellHistogram::identity(), |acc, h| acc.conv(h))
    }
}

impl fmt::Display for CellHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|(d, c)| format!("{}:{}", d, c)).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// One matched pair of a Morse matching: `upper = lower ∪ {pivot}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub lower: Face,
    pub upper: Face,
    pub pivot: Vertex,
}

/// An acyclic matching assembled from successive pivot steps.
#[derive(Clone, Debug, Default)]
pub struct MorseMatching {
    pairs: Vec<MatchedPair>,
    pivot_sequence: Vec<Vertex>,
}

impl MorseMatching {
    /// Builds a matching from explicit pairs, checking each pair is a
    /// covering step through its pivot and that no face repeats.
    pub fn from_pairs(pairs: Vec<MatchedPair>, pivot_sequence: Vec<Vertex>) -> Result<Self> {
        let mut seen: HashSet<Face> = HashSet::new();
        for p in &pairs {
            if p.pivot == 0 || p.lower & (1 << (p.pivot - 1)) != 0 {
                return Err(Error::invalid(format!(
                    "pair {} -> {}: pivot {} must extend the lower face",
                    face_to_braces(p.lower),
                    face_to_braces(p.upper),
                    p.pivot
                )));
            }
            if p.upper != p.lower | 1 << (p.pivot - 1) {
                return Err(Error::invalid(format!(
                    "pair {} -> {} is not a single-vertex extension by {}",
                    face_to_braces(p.lower),
                    face_to_braces(p.upper),
                    p.pivot
                )));
            }
            if !seen.insert(p.lower) || !seen.insert(p.upper) {
                return Err(Error::invalid("a face appears in two matched pairs"));
            }
        }
        Ok(MorseMatching { pairs, pivot_sequence })
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn pivot_sequence(&self) -> &[Vertex] {
        &self.pivot_sequence
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The faces matched with a given pivot, as `(lower, upper)` pairs.
    pub fn pairs_for_pivot(&self, pivot: Vertex) -> Vec<(Face, Face)> {
        self.pairs
            .iter()
            .filter(|p| p.pivot == pivot)
            .map(|p| (p.lower, p.upper))
            .collect()
    }

    /// Dump lines `lower -> upper [pivot p]`, grouped by pivot round in
    /// sequence order, canonically ordered within a round.
    pub fn dump_lines(&self) -> Vec<String> {
        let round: HashMap<Vertex, usize> = self
            .pivot_sequence
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        let mut sorted: Vec<&MatchedPair> = self.pairs.iter().collect();
        sorted.sort_by(|a, b| {
            round
                .get(&a.pivot)
                .cmp(&round.get(&b.pivot))
                .then(canonical_face_cmp(a.lower, b.lower))
        });
        sorted
            .iter()
            .map(|p| {
                format!(
                    "{} -> {} [pivot {}]",
                    face_to_braces(p.lower),
                    face_to_braces(p.upper),
                    p.pivot
                )
            })
            .collect()
    }
}

/// Unmatched faces of a pivot run, with their dimension histogram and the
/// size of the family the run started from (its instance identity for
/// consistency checks against independently computed invariants).
#[derive(Clone, Debug)]
pub struct CriticalCells {
    pub cells: FaceFamily,
    pub histogram: CellHistogram,
    pub family_size: usize,
}

impl CriticalCells {
    pub fn new(cells: FaceFamily, family_size: usize) -> Self {
        let histogram = CellHistogram::from_family(&cells);
        CriticalCells { cells, histogram, family_size }
    }
}

/// The cyclic pairs of `p`: all `{x, y}` with `p → x`, `x → y`, `y → p`.
pub fn cyclic_pairs(t: &Tournament, p: Vertex) -> Vec<Face> {
    let n = t.order();
    let mut out = Vec::new();
    for x in 1..=n as Vertex {
        if x == p || !t.beats(p, x) {
            continue;
        }
        for y in 1..=n as Vertex {
            if y != p && y != x && t.beats(x, y) && t.beats(y, p) {
                out.push(1 << (x - 1) | 1 << (y - 1));
            }
        }
    }
    out.sort_by(|&a, &b| canonical_face_cmp(a, b));
    out.dedup();
    out
}

/// The members of `family` containing some cyclic pair of `p` — the
/// faces a pivot step at `p` can never match downward.
pub fn pivot_obstructions(t: &Tournament, family: &FaceFamily, p: Vertex) -> FaceFamily {
    let pairs = cyclic_pairs(t, p);
    let members: Vec<Face> = family
        .iter()
        .filter(|&f| pairs.iter().any(|&q| q & f == q))
        .collect();
    FaceFamily::new(family.ground(), members).expect("members subset of ground")
}

fn check_pivot(t: &Tournament, family: &FaceFamily, p: Vertex) -> Result<()> {
    if family.ground() != t.order() {
        return Err(Error::invalid(format!(
            "family ground {} does not match tournament order {}",
            family.ground(),
            t.order()
        )));
    }
    if p == 0 || p as usize > family.ground() {
        return Err(Error::invalid(format!(
            "pivot {} out of range 1..={}",
            p,
            family.ground()
        )));
    }
    Ok(())
}

/// One pivot round at `p`: pairs `(I, I ∪ {p})` over the family for every
/// `I` not containing `p` whose extension is a member and that contains no
/// cyclic pair of `p`; returns the pairs and the unmatched remainder.
///
/// On the full acyclic complex the remainder is exactly the family of faces
/// containing a cyclic pair of `p` ([`pivot_obstructions`]).
pub fn pivot_step(
    t: &Tournament,
    family: &FaceFamily,
    p: Vertex,
) -> Result<(Vec<(Face, Face)>, FaceFamily)> {
    check_pivot(t, family, p)?;
    let p_bit: Face = 1 << (p - 1);
    let cyc = cyclic_pairs(t, p);
    let mut pairs = Vec::new();
    let mut matched: HashSet<Face> = HashSet::new();
    for lower in family.iter() {
        if lower & p_bit != 0 {
            continue;
        }
        let upper = lower | p_bit;
        if family.contains(upper) && !cyc.iter().any(|&q| q & lower == q) {
            pairs.push((lower, upper));
            matched.insert(lower);
            matched.insert(upper);
        }
    }
    let rest: Vec<Face> = family.iter().filter(|f| !matched.contains(f)).collect();
    let unmatched = FaceFamily::new(family.ground(), rest)?;
    Ok((pairs, unmatched))
}

/// Iterates [`pivot_step`] along `pivots` (which must be distinct),
/// accumulating all pairs into one matching; the final remainder is the
/// set of critical cells.
pub fn run_pivots(
    t: &Tournament,
    complex: &FaceFamily,
    pivots: &[Vertex],
) -> Result<(MorseMatching, CriticalCells)> {
    let mut seen = HashSet::new();
    for &p in pivots {
        if !seen.insert(p) {
            return Err(Error::invalid(format!("pivot {} repeated in sequence", p)));
        }
    }
    let family_size = complex.len();
    let mut matching = MorseMatching {
        pairs: Vec::new(),
        pivot_sequence: pivots.to_vec(),
    };
    let mut rest = complex.clone();
    for &p in pivots {
        let (pairs, unmatched) = pivot_step(t, &rest, p)?;
        matching
            .pairs
            .extend(pairs.into_iter().map(|(lower, upper)| MatchedPair { lower, upper, pivot: p }));
        rest = unmatched;
    }
    Ok((matching, CriticalCells::new(rest, family_size)))
}

/// Checks that a matching is acyclic on the face poset of `complex`: in the
/// Hasse diagram of covering relations, matched edges are reversed upward
/// and everything else points downward; the matching is acyclic iff the
/// resulting digraph has no directed cycle.
pub fn verify_acyclic(matching: &MorseMatching, complex: &FaceFamily) -> Result<bool> {
    let mut matched_up: HashMap<Face, Face> = HashMap::new();
    let mut in_pair: HashSet<Face> = HashSet::new();
    for p in &matching.pairs {
        if !complex.contains(p.lower) || !complex.contains(p.upper) {
            return Err(Error::invalid(format!(
                "pair {} -> {} is not inside the complex",
                face_to_braces(p.lower),
                face_to_braces(p.upper)
            )));
        }
        if p.upper.count_ones() != p.lower.count_ones() + 1 || p.lower & p.upper != p.lower {
            return Err(Error::invalid(format!(
                "pair {} -> {} is not a covering relation",
                face_to_braces(p.lower),
                face_to_braces(p.upper)
            )));
        }
        if !in_pair.insert(p.lower) || !in_pair.insert(p.upper) {
            return Err(Error::invalid("a face appears in two matched pairs"));
        }
        matched_up.insert(p.lower, p.upper);
    }

    // adjacency: face -> faces it points to in the modified Hasse digraph
    let mut adj: HashMap<Face, Vec<Face>> = HashMap::new();
    for upper in complex.iter() {
        let mut rest = upper;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let lower = upper & !bit;
            if !complex.contains(lower) {
                continue;
            }
            if matched_up.get(&lower) == Some(&upper) {
                adj.entry(lower).or_default().push(upper);
            } else {
                adj.entry(upper).or_default().push(lower);
            }
        }
    }

    // iterative three-colour DFS; colour 1 = on stack, 2 = done
    let mut colour: HashMap<Face, u8> = HashMap::new();
    for start in complex.iter() {
        if colour.contains_key(&start) {
            continue;
        }
        // stack of (node, next child index)
        let mut stack: Vec<(Face, usize)> = vec![(start, 0)];
        colour.insert(start, 1);
        while let Some(&mut (node, ref mut idx)) = stack.last_mut() {
            let children = adj.get(&node).map(|v| v.as_slice()).unwrap_or(&[]);
            if *idx < children.len() {
                let child = children[*idx];
                *idx += 1;
                match colour.get(&child) {
                    Some(1) => return Ok(false),
                    Some(_) => {}
                    None => {
                        colour.insert(child, 1);
                        stack.push((child, 0));
                    }
                }
            } else {
                colour.insert(node, 2);
                stack.pop();
            }
        }
    }
    Ok(true)
}

/// Dot-join of two families: all unions `a ∪ b`. Empty if either operand
/// is empty; `{∅}` acts as identity. The ground set is the larger of the
/// two (callers wanting the product law must keep grounds disjoint).
pub fn dot_join(a: &FaceFamily, b: &FaceFamily) -> FaceFamily {
    let ground = a.ground().max(b.ground());
    let mut members: HashSet<Face> = HashSet::new();
    for x in a.iter() {
        for y in b.iter() {
            members.insert(x | y);
        }
    }
    FaceFamily::new(ground, members).expect("members stay in ground")
}

/// Structural equivalence of families: the same number of members of every
/// size, regardless of labels or ground sets.
pub fn equivalent(a: &FaceFamily, b: &FaceFamily) -> bool {
    let mut counts = [0i64; 33];
    for f in a.iter() {
        counts[f.count_ones() as usize] += 1;
    }
    for f in b.iter() {
        counts[f.count_ones() as usize] -= 1;
    }
    counts.iter().all(|&c| c == 0)
}

/// The deterministic pivot sequence realizing the critical-cell recursion
/// on the canonical labelling of a spec.
///
/// Leaves follow the regular-tournament matching: a transitive tournament
/// is perfectly matched by its least vertex alone, and `R_{2r+1}` needs the
/// triple `(v₁, v_{r+1}, v_{r+2})`. A composition is matched according to
/// the cyclic layout of its structurally nontrivial blocks:
///
/// * If every maximal cyclic run of nontrivial blocks is shorter than `r`
///   (so the complex collapses to a single top cell), the pivots are the
///   least vertices of three transitive blocks forming a directed triangle
///   in the quotient, taking the lexicographically least such block triple
///   in ascending order.
/// * Otherwise the longest run (ties broken towards the run ending latest
///   in the cyclic order), spanning blocks `a..b`, sets the order. A short
///   run (length ≤ `r`) is peeled from the top: block `b`, the transitive
///   neighbour above it, then `b−1` down to `a`, then the neighbour below.
///   A longer run bordered by two distinct transitive neighbours visits all
///   its blocks descending and both neighbours last. When at most one block
///   lies outside the run, the sequence instead starts with block `b`'s
///   first pivot, clears the far arc `b+r+1..b+2r` and then the near arc
///   `b+1..b+r` in full cyclic order, and ends with the remainder of block
///   `b`'s own sequence.
///
/// Each transitive block contributes its least vertex, each directed-
/// triangle block its apex (the vertex whose two cyclic successors form the
/// unmatched edge), each larger regular block its leaf triple, and nested
/// compositions recurse. The first triangle visited anywhere takes its
/// largest vertex as apex and all later ones their smallest — the choice of
/// apex never changes the resulting histogram (block rotation is an
/// automorphism), and this convention pins the exact critical cells of the
/// worked nine-vertex example. Wrap-around duplicates are dropped, keeping
/// first occurrences.
pub fn canonical_pivots(spec: &SectionableSpec) -> Result<Vec<Vertex>> {
    spec.validate()?;
    let mut out = Vec::new();
    match spec {
        SectionableSpec::Transitive(_) | SectionableSpec::HighlyRegular(1) => {
            out.push(1);
        }
        SectionableSpec::HighlyRegular(m) => {
            let r = (m - 1) / 2;
            out.push(1);
            out.push(r as Vertex + 1);
            out.push(r as Vertex + 2);
        }
        SectionableSpec::Compose(..) => {
            let mut first_triangle = true;
            emit_compose(spec, 0, &mut first_triangle, &mut out);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    out.retain(|&p| seen.insert(p));
    Ok(out)
}

/// Maximal cyclic runs of structurally nontrivial blocks as `(start, len)`
/// pairs with 1-based block indices; a full cycle is the single run
/// `(1, m)` and an all-transitive composition has none.
pub(crate) fn block_runs(m: usize, blocks: &[SectionableSpec]) -> Vec<(usize, usize)> {
    let structured: Vec<bool> = blocks.iter().map(|b| !b.is_transitive()).collect();
    if structured.iter().all(|&f| f) {
        return vec![(1, m)];
    }
    let mut out = Vec::new();
    for start in 1..=m {
        if structured[start - 1] && !structured[(start + m - 2) % m] {
            let mut len = 1;
            while structured[(start - 1 + len) % m] {
                len += 1;
            }
            out.push((start, len));
        }
    }
    out
}

/// Block triples forming directed triangles in the cyclic quotient on `m`
/// blocks (all three cyclic gaps at most `(m − 1) / 2`), ascending.
fn quotient_triangles(m: usize) -> Vec<[usize; 3]> {
    let r = (m - 1) / 2;
    let mut seen = std::collections::BTreeSet::new();
    for c in 1..=m {
        for d1 in 1..=r {
            for d2 in 1..=r {
                let d3 = m - d1 - d2;
                if d3 < 1 || d3 > r {
                    continue;
                }
                let mut tri = [c, (c - 1 + d1) % m + 1, (c - 1 + d1 + d2) % m + 1];
                tri.sort_unstable();
                seen.insert(tri);
            }
        }
    }
    seen.into_iter().collect()
}

fn emit_compose(
    spec: &SectionableSpec,
    offset: usize,
    first_triangle: &mut bool,
    out: &mut Vec<Vertex>,
) {
    let (m, blocks) = match spec {
        SectionableSpec::Compose(m, blocks) => (*m, blocks),
        _ => unreachable!("only compositions are emitted here"),
    };
    let r = (m - 1) / 2;
    let mut offsets = Vec::with_capacity(m);
    let mut acc = offset;
    for b in blocks {
        offsets.push(acc);
        acc += b.order();
    }
    let rep = |i: usize, out: &mut Vec<Vertex>| out.push(offsets[i - 1] as Vertex + 1);
    let runs = block_runs(m, blocks);
    let width = runs.iter().map(|&(_, len)| len).max().unwrap_or(0);
    if width < r {
        // collapses to a single top cell: three transitive blocks that form
        // a quotient triangle always exist here and carry the matching
        if let Some(tri) = quotient_triangles(m)
            .into_iter()
            .find(|tri| tri.iter().all(|&i| blocks[i - 1].is_transitive()))
        {
            for i in tri {
                rep(i, out);
            }
            return;
        }
    }
    let &(a, len) = runs
        .iter()
        .max_by_key(|&&(s, l)| (l, (s + l - 2) % m + 1))
        .expect("a composition without transitive quotient triangles has nontrivial blocks");
    let b = (a + len - 2) % m + 1;
    let above = b % m + 1;
    let below = (a + m - 2) % m + 1;
    if len == m || above == below {
        // At most one transitive block borders the run (the run covers every
        // block, or every block but one). Short-run interleavings leave an
        // extra adjacent critical pair here; the order that stays minimal
        // starts with the top block's first pivot, clears the far arc
        // (blocks b+r+1..b+2r) and then the near arc (b+1..b+r) in full,
        // and finishes with the rest of the top block's own sequence.
        let mut top_seq = Vec::new();
        emit_block(&blocks[b - 1], offsets[b - 1], first_triangle, &mut top_seq);
        out.push(top_seq[0]);
        for d in (r + 1)..=(2 * r) {
            let i = (b - 1 + d) % m + 1;
            emit_block(&blocks[i - 1], offsets[i - 1], first_triangle, out);
        }
        for d in 1..=r {
            let i = (b - 1 + d) % m + 1;
            emit_block(&blocks[i - 1], offsets[i - 1], first_triangle, out);
        }
        out.extend_from_slice(&top_seq[1..]);
    } else if len > r {
        // only two adjacent transitive neighbours survive: interleaving the
        // upper one between the top apexes breaks the matching, so visit the
        // whole run first and both neighbours afterwards
        for k in 0..len {
            let i = (b + m - k - 1) % m + 1;
            emit_block(&blocks[i - 1], offsets[i - 1], first_triangle, out);
        }
        rep(above, out);
        rep(below, out);
    } else {
        // short run with distinct transitive neighbours on both sides:
        // top block, the neighbour above it, the rest of the run downward,
        // then the neighbour below
        emit_block(&blocks[b - 1], offsets[b - 1], first_triangle, out);
        rep(above, out);
        for k in 1..len {
            let i = (b + m - k - 1) % m + 1;
            emit_block(&blocks[i - 1], offsets[i - 1], first_triangle, out);
        }
        rep(below, out);
    }
}

fn emit_block(
    block: &SectionableSpec,
    offset: usize,
    first_triangle: &mut bool,
    out: &mut Vec<Vertex>,
) {
    match block {
        SectionableSpec::Transitive(_) | SectionableSpec::HighlyRegular(1) => {
            out.push(offset as Vertex + 1);
        }
        SectionableSpec::HighlyRegular(3) => {
            let apex = if *first_triangle { offset + 3 } else { offset + 1 };
            *first_triangle = false;
            out.push(apex as Vertex);
        }
        SectionableSpec::HighlyRegular(m) => {
            let r = (m - 1) / 2;
            *first_triangle = false;
            out.push(offset as Vertex + 1);
            out.push((offset + r) as Vertex + 1);
            out.push((offset + r + 1) as Vertex + 1);
        }
        SectionableSpec::Compose(..) => {
            emit_compose(block, offset, first_triangle, out);
        }
    }
}

/// Realizes a spec, enumerates its acyclic complex, and runs the canonical
/// pivot sequence — the measured counterpart of [`cs_recursive`].
pub fn critical_cells_of_spec(spec: &SectionableSpec) -> Result<CriticalCells> {
    let t = realize(spec)?;
    let complex = acyclic_complex(&t)?;
    let pivots = canonical_pivots(spec)?;
    let (_, critical) = run_pivots(&t, &complex, &pivots)?;
    Ok(critical)
}

/// Splits the critical-cell computation at a directed-triangle subblock:
/// for the triangle `{v, w, z}` (oriented `v → w → z → v`) addressed by the
/// block sequence `seq`, returns the restriction family `Σ({w,z} : {v})`
/// over the whole tournament together with the residual spec in which that
/// block is collapsed to a single vertex. The critical cells of the whole
/// complex are exactly those of the two pieces combined.
pub fn split_by_deep_triangle(
    spec: &SectionableSpec,
    triangle: (Vertex, Vertex, Vertex),
    seq: &BlockSequence,
) -> Result<(FaceFamily, SectionableSpec)> {
    let (node, range) = resolve_block(spec, seq)?;
    if node != &SectionableSpec::HighlyRegular(3) {
        return Err(Error::invalid(format!(
            "block {} is {}, not a directed triangle",
            seq,
            node.canonical_text()
        )));
    }
    let (v, w, z) = triangle;
    let (a, b, c) = (*range.start(), range.start() + 1, *range.end());
    let rotations = [(a, b, c), (b, c, a), (c, a, b)];
    if !rotations.contains(&(v, w, z)) {
        return Err(Error::invalid(format!(
            "({}, {}, {}) does not trace the triangle on {{{},{},{}}}",
            v, w, z, a, b, c
        )));
    }
    let t = realize(spec)?;
    let part = sigma(&t, 1 << (w - 1) | 1 << (z - 1), &[1 << (v - 1)])?;
    let residual = replace_block(spec, seq, SectionableSpec::Transitive(1))?;
    Ok((part, residual))
}

/// Critical-cell histogram of the restriction family `Σ(wz : q¹₁)` of a
/// composition whose first block carries the deep structure, evaluated by
/// the closed-form window formula: with blocks listed in the wrap-around
/// order `r+2, …, 2r+1, 2, …, r+1`, sum the convolved block histograms over
/// all `r+1` windows of length `r` and, for each of the `r` windows of
/// length `r−1` starting at positions `1..=r`, the same convolution times a
/// single extra 0-cell (the first pivot of the block after the window);
/// finally convolve with the first block's own restriction histogram.
pub fn cs_sigma(spec: &SectionableSpec) -> Result<CellHistogram> {
    spec.validate()?;
    let (m, blocks) = match spec {
        SectionableSpec::Compose(m, blocks) => (*m, blocks),
        _ => {
            return Err(Error::invalid(
                "the restriction recursion needs a composition",
            ))
        }
    };
    let r = (m - 1) / 2;
    let base = match &blocks[0] {
        SectionableSpec::HighlyRegular(s) if *s >= 3 => CellHistogram::single(1),
        SectionableSpec::Compose(..) => cs_sigma(&blocks[0])?,
        _ => {
            return Err(Error::invalid(
                "block 1 is transitive: it carries no directed-triangle structure",
            ))
        }
    };
    let h: Vec<CellHistogram> = blocks.iter().map(cs_recursive).collect();
    // wrap-around listing of the other blocks (1-based indices)
    let l: Vec<usize> = (r + 2..=2 * r + 1).chain(2..=r + 1).collect();
    let mut bracket = CellHistogram::zero();
    for k in 0..=r {
        let window = l[k..k + r].iter().map(|&i| &h[i - 1]);
        bracket = bracket.add(&CellHistogram::conv_all(window));
    }
    for k in 1..=r {
        let window = l[k..k + r - 1].iter().map(|&i| &h[i - 1]);
        let term = CellHistogram::conv_all(window).conv(&CellHistogram::single(0));
        bracket = bracket.add(&term);
    }
    Ok(base.conv(&bracket))
}

/// Critical-cell histogram of the acyclic complex of a sectionable
/// tournament, computed bottom-up over the spec tree: a transitive leaf has
/// none, a regular leaf exactly one 1-cell, and a composition
/// `R_{2r+1}(P¹…P^m)` one 1-cell plus, for every cyclic window of `r+1`
/// consecutive blocks, the convolution of the first `r` block histograms
/// with the last block's histogram augmented by a single 0-cell.
pub fn cs_recursive(spec: &SectionableSpec) -> CellHistogram {
    match spec {
        SectionableSpec::Transitive(_) | SectionableSpec::HighlyRegular(1) => CellHistogram::zero(),
        SectionableSpec::HighlyRegular(_) => CellHistogram::single(1),
        SectionableSpec::Compose(m, blocks) => {
            let r = (m - 1) / 2;
            let h: Vec<CellHistogram> = blocks.iter().map(cs_recursive).collect();
            let mut acc = CellHistogram::single(1);
            for i in 0..*m {
                let window = (0..r).map(|k| &h[(i + k) % m]);
                let head = CellHistogram::conv_all(window);
                let tail = CellHistogram::single(0).add(&h[(i + r) % m]);
                acc = acc.add(&head.conv(&tail));
            }
            acc
        }
    }
}
