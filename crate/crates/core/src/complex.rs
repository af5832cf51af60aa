//! Explicit face families: the simplicial complex of acyclic vertex sets,
//! facets, dimension, circuits, restricted families `sigma`, generated
//! families, and edge contraction.
//!
//! Faces are vertex subsets encoded as `u32` bitmasks (bit `v-1` set iff
//! vertex `v` is in the face), so explicit enumeration is available for
//! ground sets of at most 32 vertices; the acyclic-complex enumerator
//! applies a stricter configurable vertex limit because the face count is
//! worst-case exponential.

use crate::error::{Error, Result};
use crate::tournament::{mask_to_vertices, Tournament, Vertex};
use std::collections::HashSet;
use std::fmt;

/// A face: vertex subset of the ground set, as a bitmask (bit `v-1` ~ `v`).
pub type Face = u32;

/// Representational ceiling for explicit face families.
pub const MAX_GROUND_VERTICES: usize = 32;

/// Default vertex limit for acyclic-complex enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Dimension of a face family: `Empty` for the family with no members at
/// all (a minus-infinity sentinel), `Dim(d)` otherwise. `Dim(-1)` is the
/// family `{∅}`, which is *not* empty. The distinction matters because the
/// cell-structure calculus uses the empty family as an annihilator and
/// `{∅}` as a neutral element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    /// No faces at all; compares below every finite dimension.
    Empty,
    /// Largest face has `d + 1` vertices.
    Dim(i64),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => f.write_str("-inf"),
            Dimension::Dim(d) => write!(f, "{}", d),
        }
    }
}

/// A finite family of distinct faces over a ground set `1..=ground`.
///
/// A family *tagged as a complex* (e.g. anything produced by
/// [`acyclic_complex`]) is downward closed and contains the empty face;
/// general families (`sigma`, generated families, critical cells) need not
/// be.
#[derive(Clone, PartialEq, Eq)]
pub struct FaceFamily {
    ground: usize,
    members: HashSet<Face>,
}

impl fmt::Debug for FaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FaceFamily(ground={}, members={})", self.ground, self.members.len())
    }
}

/// Canonical face order: by size first, then lexicographically on the
/// ascending vertex lists. (`{1,4}` precedes `{2,3}`: same size, and the
/// lists compare `[1,4] < [2,3]`.) For equal sizes the list order agrees
/// with comparing bit-reversed masks downward, which is how it is computed.
pub fn canonical_face_cmp(a: Face, b: Face) -> std::cmp::Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then(b.reverse_bits().cmp(&a.reverse_bits()))
}

/// Renders a face in brace notation: `{6,7}`, with `{}` for the empty face.
pub fn face_to_braces(face: Face) -> String {
    let verts = mask_to_vertices(face as u64);
    let inner: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

impl FaceFamily {
    /// Builds a family, checking every member fits the ground set.
    pub fn new(ground: usize, members: impl IntoIterator<Item = Face>) -> Result<Self> {
        if ground > MAX_GROUND_VERTICES {
            return Err(Error::ResourceLimit {
                what: "face family ground set",
                actual: ground,
                limit: MAX_GROUND_VERTICES,
            });
        }
        let members: HashSet<Face> = members.into_iter().collect();
        let ground_mask = ground_mask(ground);
        for &m in &members {
            if m & !ground_mask != 0 {
                return Err(Error::invalid(format!(
                    "face {} outside ground set 1..={}",
                    face_to_braces(m),
                    ground
                )));
            }
        }
        Ok(FaceFamily { ground, members })
    }

    /// The family with no members at all (dimension −∞).
    pub fn empty(ground: usize) -> Self {
        FaceFamily { ground, members: HashSet::new() }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(&face)
    }

    /// Unordered iteration; use [`FaceFamily::canonical_members`] for output.
    pub fn iter(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.iter().copied()
    }

    /// Members in canonical order: by size, then lexicographic vertex lists.
    pub fn canonical_members(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self.members.iter().copied().collect();
        v.sort_by(|&a, &b| canonical_face_cmp(a, b));
        v
    }

    /// Inclusion-maximal members.
    pub fn facets(&self) -> FaceFamily {
        let by_size = self.canonical_members();
        let mut maximal = Vec::new();
        // A member is a facet iff no strictly larger member contains it;
        // within the family it suffices to test against larger members.
        for (i, &m) in by_size.iter().enumerate() {
            let dominated = by_size[i + 1..]
                .iter()
                .any(|&bigger| bigger != m && bigger & m == m);
            if !dominated {
                maximal.push(m);
            }
        }
        FaceFamily { ground: self.ground, members: maximal.into_iter().collect() }
    }

    /// Max face size minus one; [`Dimension::Empty`] for the empty family.
    pub fn dimension(&self) -> Dimension {
        self.members
            .iter()
            .map(|m| Dimension::Dim(m.count_ones() as i64 - 1))
            .max()
            .unwrap_or(Dimension::Empty)
    }

    /// True iff every subset of every member is itself a member. (Implies
    /// containing ∅ whenever the family is nonempty.)
    pub fn is_downward_closed(&self) -> bool {
        self.members.iter().all(|&m| {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if !self.members.contains(&(m & !bit)) {
                    return false;
                }
            }
            true
        })
    }

    /// Newline-delimited canonical dump, one brace-rendered face per line.
    pub fn dump_braces(&self) -> String {
        let mut s = String::new();
        for m in self.canonical_members() {
            s.push_str(&face_to_braces(m));
            s.push('\n');
        }
        s
    }

    /// Set union with another family over the same ground set.
    pub fn union(&self, other: &FaceFamily) -> Result<FaceFamily> {
        if self.ground != other.ground {
            return Err(Error::invalid(format!(
                "ground mismatch: {} vs {}",
                self.ground, other.ground
            )));
        }
        let members: HashSet<Face> = self.members.union(&other.members).copied().collect();
        Ok(FaceFamily { ground: self.ground, members })
    }
}

fn ground_mask(ground: usize) -> u32 {
    if ground == 32 {
        u32::MAX
    } else {
        (1u32 << ground) - 1
    }
}

fn require_ground(t: &Tournament) -> Result<usize> {
    let n = t.order();
    if n > MAX_GROUND_VERTICES {
        return Err(Error::ResourceLimit {
            what: "face enumeration vertices",
            actual: n,
            limit: MAX_GROUND_VERTICES,
        });
    }
    Ok(n)
}

/// Enumerates the complex of acyclic vertex sets of `t` under the default
/// vertex limit of [`DEFAULT_ENUMERATION_LIMIT`].
pub fn acyclic_complex(t: &Tournament) -> Result<FaceFamily> {
    acyclic_complex_with_limit(t, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`acyclic_complex`] with an explicit vertex limit (at most 32).
///
/// Enumeration is breadth-first by cardinality: each face is extended only
/// by vertices above its maximum (so each face is generated exactly once),
/// and acyclicity is rechecked incrementally by looking only at directed
/// triangles through the new vertex — any directed cycle created by adding
/// `v` to an acyclic set yields a directed triangle containing `v`.
pub fn acyclic_complex_with_limit(t: &Tournament, limit: usize) -> Result<FaceFamily> {
    if limit > MAX_GROUND_VERTICES {
        return Err(Error::invalid(format!(
            "enumeration limit {} exceeds representational cap {}",
            limit, MAX_GROUND_VERTICES
        )));
    }
    let n = t.order();
    if n > limit {
        return Err(Error::ResourceLimit { what: "acyclic complex vertices", actual: n, limit });
    }
    let mut members: HashSet<Face> = HashSet::new();
    members.insert(0);
    let mut frontier: Vec<Face> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &face in &frontier {
            let max_v = 32 - face.leading_zeros(); // 0 for the empty face
            for v in (max_v + 1)..=n as u32 {
                if extension_stays_acyclic(t, face, v) {
                    let bigger = face | 1 << (v - 1);
                    members.insert(bigger);
                    next.push(bigger);
                }
            }
        }
        frontier = next;
    }
    Ok(FaceFamily { ground: n, members })
}

/// Given `face` acyclic, decides whether `face ∪ {v}` stays acyclic by
/// searching for a directed triangle `v -> a -> b -> v` with `a, b ∈ face`.
fn extension_stays_acyclic(t: &Tournament, face: Face, v: Vertex) -> bool {
    let face64 = face as u64;
    let into_v = face64 & !t.out_mask(v); // b with b -> v
    let mut from_v = face64 & t.out_mask(v); // a with v -> a
    while from_v != 0 {
        let a = from_v.trailing_zeros() as Vertex + 1;
        from_v &= from_v - 1;
        if t.out_mask(a) & into_v != 0 {
            return false;
        }
    }
    true
}

/// The minimal non-faces of the acyclic complex: exactly the vertex triples
/// inducing a directed triangle (every directed cycle in a tournament
/// contains one, and pairs are always acyclic).
pub fn circuits(t: &Tournament) -> Result<FaceFamily> {
    let n = require_ground(t)?;
    let mut members = HashSet::new();
    for a in 1..=n as Vertex {
        for b in (a + 1)..=n as Vertex {
            for c in (b + 1)..=n as Vertex {
                let (x, y) = if t.beats(a, b) { (b, c) } else { (c, b) };
                if t.beats(a, x) && t.beats(x, y) && t.beats(y, a) {
                    members.insert(1 << (a - 1) | 1 << (b - 1) | 1 << (c - 1));
                }
            }
        }
    }
    Ok(FaceFamily { ground: n, members })
}

/// The restriction family Σ(A:B) inside a given face family: all members
/// `I` with `A ⊆ I` and no `β ∈ B` with `β ⊆ I`.
pub fn sigma_within(family: &FaceFamily, a: Face, b: &[Face]) -> FaceFamily {
    let members: HashSet<Face> = family
        .members
        .iter()
        .copied()
        .filter(|&i| a & i == a && !b.iter().any(|&beta| beta & i == beta))
        .collect();
    FaceFamily { ground: family.ground, members }
}

/// Σ(A:B) over the full acyclic complex of `t`: the faces containing `A`
/// and containing no member of `B` whole. A singleton β acts as exclusion
/// of its vertex. `A` itself must be acyclic.
pub fn sigma(t: &Tournament, a: Face, b: &[Face]) -> Result<FaceFamily> {
    let n = require_ground(t)?;
    if a & !ground_mask(n) != 0 {
        return Err(Error::invalid(format!(
            "base face {} outside ground set 1..={}",
            face_to_braces(a),
            n
        )));
    }
    if !t.is_acyclic_set(a as u64) {
        return Err(Error::invalid(format!(
            "base face {} is not acyclic",
            face_to_braces(a)
        )));
    }
    let acy = acyclic_complex(t)?;
    Ok(sigma_within(&acy, a, b))
}

/// The parts of the family generated by ordered faces `β₁, …, β_k` against
/// pivot `p`: part `i` is Σ(βᵢ : {p}, β₁, …, β_{i−1}). The parts are
/// pairwise disjoint (a face belongs to the part of the first generator it
/// contains), and their union is the generated family.
pub fn generated_family_parts(
    t: &Tournament,
    p: Vertex,
    generators: &[Face],
) -> Result<Vec<FaceFamily>> {
    let n = require_ground(t)?;
    if p == 0 || p as usize > n {
        return Err(Error::invalid(format!("pivot {} out of range 1..={}", p, n)));
    }
    let p_bit: Face = 1 << (p - 1);
    for &g in generators {
        if g & p_bit != 0 {
            return Err(Error::invalid(format!(
                "generator {} contains the pivot {}",
                face_to_braces(g),
                p
            )));
        }
        if !t.is_acyclic_set(g as u64) {
            return Err(Error::invalid(format!(
                "generator {} is not a face",
                face_to_braces(g)
            )));
        }
    }
    let acy = acyclic_complex(t)?;
    let mut parts = Vec::with_capacity(generators.len());
    let mut exclusions: Vec<Face> = vec![p_bit];
    for &g in generators {
        parts.push(sigma_within(&acy, g, &exclusions));
        exclusions.push(g);
    }
    Ok(parts)
}

/// Union of [`generated_family_parts`]: the family ⟨β₁, …, β_k⟩ wrt `p`.
pub fn generated_family(t: &Tournament, p: Vertex, generators: &[Face]) -> Result<FaceFamily> {
    let n = require_ground(t)?;
    let mut acc = FaceFamily::empty(n);
    for part in generated_family_parts(t, p, generators)? {
        acc = acc.union(&part)?;
    }
    Ok(acc)
}

/// Contracts the edge `{x, y}` of a complex: both endpoints are identified
/// to a single vertex, each face is replaced by its image, and labels are
/// compacted so the result lives on `1..=ground-1` (the merged vertex keeps
/// the smaller label; labels above the larger shift down by one).
pub fn contract_edge(family: &FaceFamily, x: Vertex, y: Vertex) -> Result<FaceFamily> {
    let n = family.ground;
    if x == y || x == 0 || y == 0 || x as usize > n || y as usize > n {
        return Err(Error::invalid(format!(
            "contraction needs two distinct ground vertices, got {} and {}",
            x, y
        )));
    }
    let edge: Face = 1 << (x - 1) | 1 << (y - 1);
    if !family.contains(edge) {
        return Err(Error::invalid(format!(
            "cannot contract {}: not a face of the complex",
            face_to_braces(edge)
        )));
    }
    let lo = x.min(y) - 1; // 0-based bit of the surviving label
    let hi = x.max(y) - 1; // 0-based bit removed by compaction
    let members: HashSet<Face> = family
        .members
        .iter()
        .map(|&m| {
            let merged = if m & edge != 0 { (m & !edge) | 1 << lo } else { m };
            // delete bit position `hi`, shifting higher bits down
            let low_part = merged & ((1u32 << hi) - 1);
            let high_part = (merged >> (hi + 1)) << hi;
            low_part | high_part
        })
        .collect();
    Ok(FaceFamily { ground: n - 1, members })
}
