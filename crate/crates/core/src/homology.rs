//! Boundary matrices and reduced Betti numbers of face families — the
//! independent verification oracle for the pivot machinery.
//!
//! Ranks are computed by exact fraction-free integer elimination, so the
//! reported Betti numbers are dimensions of rational homology. Torsion is
//! invisible at this level and deliberately out of scope: the numbers here
//! are used to cross-check cell counts coming from matchings, where the
//! rational ranks are exactly what the inequalities speak about.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, FaceFamily};
use crate::error::{Error, Result};
use crate::morse::CriticalCells;

/// Hard cap on the number of faces accepted by [`betti_numbers`].
pub const MAX_HOMOLOGY_FACES: usize = 200_000;

/// Face counts, boundary ranks, and reduced Betti numbers of one complex.
///
/// Everything is indexed by dimension: entry `i` concerns faces with
/// `i + 1` vertices. The empty face is the augmentation — it is not listed
/// in `face_counts`, but the 0-dimensional boundary map sends every vertex
/// onto it, so `boundary_ranks[0]` is 1 whenever the complex has a vertex.
/// By construction `betti[i] = face_counts[i] − boundary_ranks[i] −
/// boundary_ranks[i + 1]` (the rank above the top dimension being zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexSummary {
    pub face_counts: Vec<usize>,
    pub boundary_ranks: Vec<usize>,
    pub betti: Vec<i64>,
}

impl ChainComplexSummary {
    /// Number of faces of dimension ≥ 0 (the augmentation excluded).
    pub fn total_faces(&self) -> usize {
        self.face_counts.iter().sum()
    }

    /// Alternating sum of face counts, `Σ (−1)ⁱ · face_counts[i]`.
    pub fn alternating_face_sum(&self) -> i64 {
        alternating(self.face_counts.iter().map(|&n| n as i64))
    }

    /// Reduced Euler characteristic, `Σ (−1)ⁱ · betti[i]`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.betti.iter().copied())
    }
}

fn alternating(values: impl Iterator<Item = i64>) -> i64 {
    values
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v } else { -v })
        .sum()
}

/// Reduced Betti numbers of a downward-closed family, via exact
/// fraction-free elimination of the simplicial boundary matrices (with the
/// empty face as augmentation, so `betti[0]` counts components minus one).
///
/// Faces are oriented by their ascending vertex list, facet signs
/// alternating by removed position. The homology of the degenerate family
/// `{∅}` sits in dimension −1 and is not reported.
pub fn betti_numbers(family: &FaceFamily) -> Result<ChainComplexSummary> {
    betti_numbers_with_limit(family, MAX_HOMOLOGY_FACES)
}

/// [`betti_numbers`] with an explicit face cap instead of
/// [`MAX_HOMOLOGY_FACES`].
pub fn betti_numbers_with_limit(family: &FaceFamily, limit: usize) -> Result<ChainComplexSummary> {
    if family.len() > limit {
        return Err(Error::ResourceLimit {
            what: "faces for homology",
            actual: family.len(),
            limit,
        });
    }
    if !family.is_downward_closed() {
        return Err(Error::invalid(
            "homology needs a downward-closed family (a simplicial complex)",
        ));
    }
    let levels = faces_by_size(family);
    let face_counts: Vec<usize> = levels.iter().skip(1).map(Vec::len).collect();
    let mut boundary_ranks = Vec::with_capacity(face_counts.len());
    for d in 0..face_counts.len() {
        let matrix = boundary_matrix(&levels[d], &levels[d + 1]);
        boundary_ranks.push(rank(matrix));
    }
    let betti = (0..face_counts.len())
        .map(|i| {
            let above = if i + 1 < face_counts.len() { boundary_ranks[i + 1] } else { 0 };
            face_counts[i] as i64 - boundary_ranks[i] as i64 - above as i64
        })
        .collect();
    Ok(ChainComplexSummary { face_counts, boundary_ranks, betti })
}

/// Members grouped by vertex count (index = size, so `[0]` holds the empty
/// face when present), each level in canonical face order.
fn faces_by_size(family: &FaceFamily) -> Vec<Vec<Face>> {
    let max = family.iter().map(|f| f.count_ones() as usize).max();
    let mut levels = vec![Vec::new(); max.map_or(0, |m| m + 1)];
    for face in family.canonical_members() {
        levels[face.count_ones() as usize].push(face);
    }
    levels
}

/// The boundary matrix from the faces in `upper` (columns) to the faces in
/// `lower` (rows): column `j` holds the signed facets of `upper[j]`, the
/// sign alternating along the ascending vertex list.
fn boundary_matrix(lower: &[Face], upper: &[Face]) -> Vec<Vec<i128>> {
    let mut index = HashMap::with_capacity(lower.len());
    for (i, &f) in lower.iter().enumerate() {
        index.insert(f, i);
    }
    let mut m = vec![vec![0i128; upper.len()]; lower.len()];
    for (j, &f) in upper.iter().enumerate() {
        let mut sign = 1i128;
        let mut rest = f;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            let facet = f & !low;
            m[index[&facet]][j] = sign;
            sign = -sign;
            rest &= rest - 1;
        }
    }
    m
}

/// Exact rank over the rationals. Machine-width fraction-free elimination
/// first; the rare overflow falls back to arbitrary precision on the
/// untouched matrix.
fn rank(matrix: Vec<Vec<i128>>) -> usize {
    match rank_fraction_free_i128(matrix.clone()) {
        Some(r) => r,
        None => rank_fraction_free_big(matrix),
    }
}

/// One-pass fraction-free (Bareiss) elimination on `i128`, skipping columns
/// without a pivot. Every intermediate entry is a minor determinant of the
/// input, so the division by the previous pivot is exact; `None` reports an
/// overflow.
fn rank_fraction_free_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let a = m[rank][c].checked_mul(m[i][j])?;
                let b = m[i][c].checked_mul(m[rank][j])?;
                let num = a.checked_sub(b)?;
                debug_assert_eq!(num % prev, 0, "fraction-free division must be exact");
                m[i][j] = num / prev;
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

/// The same elimination in arbitrary precision.
fn rank_fraction_free_big(m: Vec<Vec<i128>>) -> usize {
    let mut m: Vec<Vec<BigInt>> =
        m.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::from(0);
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Outcome of checking a critical-cell histogram against the Betti numbers
/// of the same complex.
///
/// `cell_counts[i]` is the number of critical cells of dimension `i`;
/// `betti` is copied from the summary and padded to the same length. The
/// histogram is consistent when every count dominates the matching Betti
/// number, the alternating sums agree, and — if the critical dimensions
/// are pairwise non-adjacent, the wedge-of-spheres situation — the counts
/// agree exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseHomologyReport {
    pub cell_counts: Vec<u64>,
    pub betti: Vec<i64>,
    pub inequalities_hold: bool,
    pub alternating_sums_agree: bool,
    pub wedge_shaped: bool,
    pub exact_match: Option<bool>,
    pub consistent: bool,
}

/// Checks a pivot run's critical cells against independently computed
/// Betti numbers of the same complex.
///
/// The two inputs must describe one complex: the family the matching ran
/// on contains the empty face, so its size must exceed the summary's face
/// total by exactly one — anything else is rejected as mismatched input,
/// as is a histogram that still contains the empty face (dimension −1:
/// comparisons here are against reduced Betti numbers, which presume the
/// empty face was matched away).
pub fn morse_consistency(
    critical: &CriticalCells,
    summary: &ChainComplexSummary,
) -> Result<MorseHomologyReport> {
    if critical.family_size != summary.total_faces() + 1 {
        return Err(Error::invalid(format!(
            "critical cells came from a family of {} faces but the summary describes {} + ∅",
            critical.family_size,
            summary.total_faces()
        )));
    }
    if critical.histogram.count_at(-1) != 0 {
        return Err(Error::invalid(
            "the empty face is critical; reduced comparison needs it matched",
        ));
    }
    let dims = summary.betti.len().max(
        critical
            .histogram
            .counts()
            .keys()
            .next_back()
            .map_or(0, |&d| d as usize + 1),
    );
    let cell_counts: Vec<u64> =
        (0..dims).map(|d| critical.histogram.count_at(d as i64)).collect();
    let betti: Vec<i64> = (0..dims)
        .map(|d| summary.betti.get(d).copied().unwrap_or(0))
        .collect();
    let inequalities_hold =
        cell_counts.iter().zip(&betti).all(|(&n, &b)| n as i64 >= b);
    let alternating_sums_agree =
        alternating(cell_counts.iter().map(|&n| n as i64)) == alternating(betti.iter().copied());
    let occupied: Vec<i64> = critical
        .histogram
        .counts()
        .iter()
        .filter(|&(_, &n)| n > 0)
        .map(|(&d, _)| d)
        .collect();
    let wedge_shaped = occupied.windows(2).all(|w| w[1] - w[0] >= 2);
    let exact_match = wedge_shaped
        .then(|| cell_counts.iter().zip(&betti).all(|(&n, &b)| n as i64 == b));
    let consistent = inequalities_hold && alternating_sums_agree && exact_match.unwrap_or(true);
    Ok(MorseHomologyReport {
        cell_counts,
        betti,
        inequalities_hold,
        alternating_sums_agree,
        wedge_shaped,
        exact_match,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::acyclic_complex;
    use crate::morse::{critical_cells_of_spec, run_pivots, CellHistogram};
    use crate::testutil::{naive_betti, random_tournament};
    use crate::tournament::{example_spec, realize, SectionableSpec};
    use proptest::prelude::*;
    use SectionableSpec::{Compose as Cx, HighlyRegular as HR, Transitive as TT};

    fn summary_of(spec: &SectionableSpec) -> ChainComplexSummary {
        let t = realize(spec).unwrap();
        betti_numbers(&acyclic_complex(&t).unwrap()).unwrap()
    }

    #[test]
    fn circle_and_simplex_profiles() {
        // the three-cycle's acyclic sets form a hollow triangle
        let s = summary_of(&HR(3));
        assert_eq!(s.face_counts, vec![3, 3]);
        assert_eq!(s.boundary_ranks, vec![1, 2]);
        assert_eq!(s.betti, vec![0, 1]);

        // transitive tournaments give full simplices: contractible
        for k in 1..=7 {
            let s = summary_of(&TT(k));
            assert!(s.betti.iter().all(|&b| b == 0), "TT({k}) not contractible");
            assert_eq!(s.total_faces(), (1 << k) - 1);
        }
    }

    #[test]
    fn worked_example_profile_and_consistency() {
        let spec = example_spec();
        let s = summary_of(&spec);
        assert_eq!(s.betti, vec![0, 1, 0, 0, 1]);

        let critical = critical_cells_of_spec(&spec).unwrap();
        let report = morse_consistency(&critical, &s).unwrap();
        assert!(report.consistent);
        assert!(report.wedge_shaped, "dims 1 and 4 are non-adjacent");
        assert_eq!(report.exact_match, Some(true));
        assert_eq!(report.cell_counts, vec![0, 1, 0, 0, 1]);
    }

    #[test]
    fn consistency_cases() {
        // perfectly matched transitive complex against all-zero homology
        let spec = TT(4);
        let critical = critical_cells_of_spec(&spec).unwrap();
        assert!(critical.histogram.is_zero());
        let report = morse_consistency(&critical, &summary_of(&spec)).unwrap();
        assert!(report.consistent && report.wedge_shaped);
        assert_eq!(report.exact_match, Some(true));

        // an elementary composition: a single 1-cell against a circle
        let spec = Cx(3, vec![TT(2), TT(1), TT(2)]);
        let critical = critical_cells_of_spec(&spec).unwrap();
        assert_eq!(critical.histogram, CellHistogram::single(1));
        let report = morse_consistency(&critical, &summary_of(&spec)).unwrap();
        assert_eq!(report.betti, vec![0, 1, 0, 0]);
        assert_eq!(report.exact_match, Some(true));

        // adjacent critical dimensions: inequalities only, no exactness claim
        let spec = Cx(3, vec![HR(3), HR(3), TT(1)]);
        let critical = critical_cells_of_spec(&spec).unwrap();
        let report = morse_consistency(&critical, &summary_of(&spec)).unwrap();
        assert!(!report.wedge_shaped);
        assert_eq!(report.exact_match, None);
        assert!(report.consistent);

        // mismatched inputs must be rejected
        let err = morse_consistency(&critical, &summary_of(&TT(3))).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));

        // an unmatched empty face is rejected: an empty pivot run leaves it
        let t = realize(&TT(2)).unwrap();
        let acy = acyclic_complex(&t).unwrap();
        let (_, critical) = run_pivots(&t, &acy, &[]).unwrap();
        assert_eq!(critical.histogram.count_at(-1), 1);
        let err = morse_consistency(&critical, &summary_of(&TT(2))).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn rejects_non_complexes_and_oversize_input() {
        let broken = FaceFamily::new(3, vec![0b000, 0b001, 0b011]).unwrap();
        assert!(matches!(betti_numbers(&broken), Err(Error::InvalidParameter(_))));

        let t = realize(&TT(4)).unwrap();
        let acy = acyclic_complex(&t).unwrap();
        assert!(matches!(
            betti_numbers_with_limit(&acy, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn euler_bookkeeping_holds_everywhere() {
        let subjects = vec![
            HR(3),
            HR(5),
            HR(7),
            TT(5),
            example_spec(),
            Cx(3, vec![HR(3), HR(3), HR(3)]),
            Cx(3, vec![HR(3), TT(2), TT(1)]),
            Cx(5, vec![HR(3), HR(3), HR(3), TT(1), TT(1)]),
        ];
        for spec in subjects {
            let s = summary_of(&spec);
            assert_eq!(
                s.alternating_face_sum(),
                s.euler_characteristic() + 1,
                "augmented bookkeeping broken for {}",
                spec.canonical_text()
            );
        }
    }

    #[test]
    fn boundary_operators_compose_to_zero() {
        let mut families = vec![
            acyclic_complex(&realize(&example_spec()).unwrap()).unwrap(),
            acyclic_complex(&realize(&HR(7)).unwrap()).unwrap(),
            acyclic_complex(&realize(&TT(6)).unwrap()).unwrap(),
        ];
        for seed in 0..6 {
            families.push(acyclic_complex(&random_tournament(7, seed)).unwrap());
        }
        for family in families {
            assert!(family.len() <= 10_000);
            let levels = faces_by_size(&family);
            for d in 1..levels.len().saturating_sub(1) {
                let lower = boundary_matrix(&levels[d - 1], &levels[d]);
                let upper = boundary_matrix(&levels[d], &levels[d + 1]);
                for j in 0..levels[d + 1].len() {
                    for i in 0..levels[d - 1].len() {
                        let entry: i128 =
                            (0..levels[d].len()).map(|k| lower[i][k] * upper[k][j]).sum();
                        assert_eq!(entry, 0, "∂∘∂ ≠ 0 at dimension {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_naive_row_reduction() {
        let mut families = vec![
            acyclic_complex(&realize(&HR(3)).unwrap()).unwrap(),
            acyclic_complex(&realize(&HR(5)).unwrap()).unwrap(),
            acyclic_complex(&realize(&TT(5)).unwrap()).unwrap(),
            acyclic_complex(&realize(&Cx(3, vec![HR(3), TT(1), TT(1)])).unwrap()).unwrap(),
        ];
        for seed in 0..10 {
            families.push(acyclic_complex(&random_tournament(6, 100 + seed)).unwrap());
        }
        for family in families {
            assert!(family.len() <= 500, "two-oracle rule is capped at 500 faces");
            let summary = betti_numbers(&family).unwrap();
            assert_eq!(summary.betti, naive_betti(&family), "oracles disagree");
        }
    }

    #[test]
    fn summary_serializes_round_trip() {
        let s = summary_of(&example_spec());
        let json = serde_json::to_string(&s).unwrap();
        let back: ChainComplexSummary = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }

    proptest! {
        /// Random tournaments: Betti numbers are non-negative, the
        /// bookkeeping identity holds, and a canonical pivot run on a
        /// realized spec yields a consistent report.
        #[test]
        fn random_summaries_are_coherent(n in 1usize..7, seed in 0u64..30) {
            let t = random_tournament(n, 3_000 + seed);
            let family = acyclic_complex(&t).unwrap();
            let s = betti_numbers(&family).unwrap();
            prop_assert!(s.betti.iter().all(|&b| b >= 0));
            prop_assert_eq!(s.alternating_face_sum(), s.euler_characteristic() + 1);
            prop_assert_eq!(s.total_faces() + 1, family.len());
        }
    }
}
