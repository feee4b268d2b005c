//! Is a paradox genuinely `M`-partite and genuinely `d`-dimensional?
//!
//! Multipartite: no proper subset of the parties, keeping only those columns,
//! still forms a paradox. Dimensional: each column's operators need a
//! representation space of dimension at least `d`. For a set of monomials the
//! smallest such dimension is `d / gcd(d, κ_ij)` over the pairwise
//! commutation exponents `κ_ij`: the commutation phases are powers of
//! `ω^g`, a primitive `(d/g)`-th root of unity, and one nontrivial such
//! relation already forces `d/g` distinct eigenvalues.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{validate_params, FamilyParams};
use crate::oracle::{
    build_word, kron_all, snap_phase, DenseOperator, OracleConfig, C64,
};
use crate::paradox::{check_classical_forced, verify, EntryWord, FailureWitness, ParadoxTable, Verdict};
use crate::weyl::{commutation_exponent, Dimension};
use nalgebra::DMatrix;

/// Largest party count for which all subsets are enumerated.
pub const MULTIPARTITE_GUARD: usize = 12;
/// Largest (deduplicated) row count for which row subsets are also tried.
pub const ROW_SUBSET_GUARD: usize = 8;

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Keeps the columns in `parties` (0-based) and drops repeated rows, keeping
/// the first occurrence of each.
pub fn restrict(t: &ParadoxTable, parties: &[usize]) -> Result<ParadoxTable> {
    let set: BTreeSet<usize> = parties.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::InvalidSubset("empty party subset".into()));
    }
    if set.len() >= t.parties() {
        return Err(Error::InvalidSubset("subset must be proper".into()));
    }
    if let Some(&bad) = set.iter().find(|&&j| j >= t.parties()) {
        return Err(Error::InvalidSubset(format!("party {bad} out of range")));
    }
    let cols: Vec<usize> = set.into_iter().collect();
    Ok(restrict_unchecked(t, &cols))
}

fn restrict_unchecked(t: &ParadoxTable, cols: &[usize]) -> ParadoxTable {
    let mut seen = BTreeSet::new();
    let rows: Vec<Vec<EntryWord>> = t
        .rows()
        .iter()
        .map(|r| cols.iter().map(|&j| r[j]).collect::<Vec<_>>())
        .filter(|r| seen.insert(r.clone()))
        .collect();
    let shown: Vec<String> = cols.iter().map(|j| (j + 1).to_string()).collect();
    ParadoxTable::new(
        t.dim(),
        rows,
        format!("{} restricted to parties {{{}}}", t.label, shown.join(",")),
    )
    .expect("restriction of a valid table is valid")
}

fn mask_to_subset(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|j| mask >> j & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartiteReport {
    /// Same as `genuine_rows_fixed`.
    pub genuine: bool,
    /// Proper party subsets (0-based) whose restriction is a paradox.
    pub reducing_subsets: Vec<Vec<usize>>,
    /// Complements of reducing subsets on which the restricted rows pairwise
    /// commute.
    pub commuting_complements: Vec<Vec<usize>>,
    pub genuine_rows_fixed: bool,
    /// `None` when the table has too many rows to try every row subset.
    pub genuine_rows_any: Option<bool>,
    /// `(parties, rows)` pairs: a subset of rows of a party restriction that
    /// forms a paradox on its own.
    pub row_reducing: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Exhaustive check over all nonempty proper party subsets, ordered by size
/// and then lexicographically.
pub fn check_multipartite(t: &ParadoxTable) -> Result<PartiteReport> {
    let m = t.parties();
    if m > MULTIPARTITE_GUARD {
        return Err(Error::Capacity {
            what: "parties for subset enumeration",
            needed: m as u128,
            limit: MULTIPARTITE_GUARD as u128,
        });
    }
    let full = (1u64 << m) - 1;
    let mut subsets: Vec<Vec<usize>> = (1..full).map(|mask| mask_to_subset(mask, m)).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let try_rows = t.len() <= ROW_SUBSET_GUARD;
    let per_subset: Vec<(bool, bool, Vec<Vec<usize>>)> = subsets
        .par_iter()
        .map(|s| {
            let r = restrict_unchecked(t, s);
            let is_paradox = verify(&r).is_paradox;
            let commuting = crate::paradox::check_commuting(&r).is_ok();
            let mut row_hits = Vec::new();
            if try_rows && r.len() >= 2 {
                let l = r.len();
                for rmask in 1u64..(1 << l) {
                    if rmask.count_ones() < 2 {
                        continue;
                    }
                    let rows = mask_to_subset(rmask, l);
                    if verify(&r.permute_rows(&rows)).is_paradox {
                        row_hits.push(rows);
                    }
                }
            }
            (is_paradox, commuting, row_hits)
        })
        .collect();

    let mut reducing_subsets = Vec::new();
    let mut row_reducing = Vec::new();
    for (s, (is_paradox, _, hits)) in subsets.iter().zip(&per_subset) {
        if *is_paradox {
            reducing_subsets.push(s.clone());
        }
        for rows in hits {
            row_reducing.push((s.clone(), rows.clone()));
        }
    }
    let mut commuting_complements = Vec::new();
    for s in &reducing_subsets {
        let comp: Vec<usize> = (0..m).filter(|j| !s.contains(j)).collect();
        let idx = subsets.iter().position(|x| *x == comp).expect("complement is proper");
        if per_subset[idx].1 && !commuting_complements.contains(&comp) {
            commuting_complements.push(comp);
        }
    }
    let genuine = reducing_subsets.is_empty();
    Ok(PartiteReport {
        genuine,
        reducing_subsets,
        commuting_complements,
        genuine_rows_fixed: genuine,
        genuine_rows_any: try_rows.then_some(row_reducing.is_empty()),
        row_reducing,
    })
}

/// Smallest Hilbert-space dimension that realizes the commutation relations
/// among the distinct non-identity entries of column `column`.
/// Rows-fixed multipartite genuineness with early exit; used by scans.
pub fn is_genuine_multipartite(t: &ParadoxTable) -> Result<bool> {
    let m = t.parties();
    if m > MULTIPARTITE_GUARD {
        return Err(Error::Capacity {
            what: "parties for subset enumeration",
            needed: m as u128,
            limit: MULTIPARTITE_GUARD as u128,
        });
    }
    let full = (1u64 << m) - 1;
    Ok((1..full).all(|mask| !verify(&restrict_unchecked(t, &mask_to_subset(mask, m))).is_paradox))
}

pub fn column_min_dimension(t: &ParadoxTable, column: usize) -> Result<u32> {
    if column >= t.parties() {
        return Err(Error::InvalidSubset(format!("column {column} out of range")));
    }
    Ok(min_dimension(t.dim(), t.column(column)))
}

pub fn min_dimension(d: Dimension, words: impl IntoIterator<Item = EntryWord>) -> u32 {
    let distinct: BTreeSet<EntryWord> = words.into_iter().filter(|w| !w.is_identity()).collect();
    let monos: Vec<_> = distinct
        .iter()
        .map(|w| w.compile(d).expect("table words are valid"))
        .collect();
    let mut g = d.get() as u64;
    for i in 0..monos.len() {
        for j in i + 1..monos.len() {
            g = gcd(g, commutation_exponent(monos[i], monos[j], d) as u64);
        }
    }
    (d.get() as u64 / g) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub genuine: bool,
    pub per_column_min_dim: Vec<u32>,
    pub limiting_column: usize,
}

pub fn check_dimensional(t: &ParadoxTable) -> DimensionReport {
    let per_column_min_dim: Vec<u32> = (0..t.parties())
        .map(|j| min_dimension(t.dim(), t.column(j)))
        .collect();
    let (limiting_column, &min) = per_column_min_dim
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .expect("tables have at least one party");
    DimensionReport {
        genuine: min >= t.dim().get(),
        per_column_min_dim,
        limiting_column,
    }
}

/// Closed-form genuineness of a family member: `(dimensional, multipartite)`.
///
/// Dimensional: `gcd(c, d) = 1` and `a` or `b` coprime to `d`. Multipartite:
/// after removing parties two rows are said to keep the commutation phase
/// `ω^{bc}`, so `b·c ≢ 0 (mod d)` is taken to rule out every reduction (this
/// holds whenever the dimensional condition does).
///
/// The argument overlooks rows that coincide after restriction, and the
/// direct check disagrees on e.g. `d=2 M=9 n=3 p=3 q=0 a=b=c=1`, which
/// restricts to Mermin's paradox on parties `{1,4,7}`. Use
/// [`check_multipartite`] for a decision.
pub fn check_family_genuineness(fp: &FamilyParams) -> Result<(bool, bool)> {
    let check = validate_params(fp);
    if !check.ok {
        return Err(Error::InvalidParams(format!("{fp}")));
    }
    let d = fp.d.get() as u64;
    let coprime = |x: u32| gcd(x as u64, d) == 1;
    let dimensional = coprime(fp.c) && (coprime(fp.a) || coprime(fp.b));
    let multipartite = (fp.b as u64 * fp.c as u64) % d != 0;
    Ok((dimensional, multipartite))
}

/// Result of compressing a table onto per-party subspaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionVerdict {
    pub verdict: Verdict,
    /// Dimension of each party's subspace.
    pub ranks: Vec<usize>,
    /// Every compressed single-party operator is proportional to a unitary.
    pub unitary: bool,
    /// Every subspace is invariant under its column's operators, so
    /// compression preserves products.
    pub invariant: bool,
}

/// Compresses every row to `Π_1⊗…⊗Π_M W Π_1⊗…⊗Π_M` and re-checks the paradox
/// conditions there. `projectors[j]` lists vectors spanning party `j`'s
/// subspace; they are normalized here and must be mutually orthogonal.
///
/// The compressed table counts as a paradox only if each subspace is
/// invariant under the operators of its column, the compressed operators are
/// proportional to unitaries, the compressed rows commute, and their product
/// is a scalar other than `+1`, with the column exponent sums unchanged.
pub fn project_and_verify(
    t: &ParadoxTable,
    projectors: &[Vec<Vec<C64>>],
    cfg: &OracleConfig,
) -> Result<ProjectionVerdict> {
    let d = t.dim();
    let dd = d.get() as usize;
    if projectors.len() != t.parties() {
        return Err(Error::ArityMismatch {
            left: t.parties(),
            right: projectors.len(),
        });
    }
    let tol = cfg.tol_eigen;

    let mut isometries = Vec::with_capacity(projectors.len());
    for (party, vectors) in projectors.iter().enumerate() {
        if vectors.is_empty() || vectors.len() >= dd || vectors.iter().any(|v| v.len() != dd) {
            return Err(Error::InvalidSubset(format!(
                "party {party}: need between 1 and {} vectors of length {dd}",
                dd - 1
            )));
        }
        let cols: Vec<_> = vectors
            .iter()
            .map(|v| {
                let v = nalgebra::DVector::from_column_slice(v);
                let n = v.norm();
                v / C64::new(n, 0.0)
            })
            .collect();
        for i in 0..cols.len() {
            if !cols[i].iter().all(|c| c.is_finite()) {
                return Err(Error::NonOrthogonal(party));
            }
            for j in i + 1..cols.len() {
                if cols[i].dotc(&cols[j]).norm() > tol {
                    return Err(Error::NonOrthogonal(party));
                }
            }
        }
        isometries.push(DMatrix::from_columns(&cols));
    }
    let ranks: Vec<usize> = isometries.iter().map(|p| p.ncols()).collect();
    let total: u128 = ranks.iter().map(|&r| r as u128).product();
    if total > cfg.capacity as u128 {
        return Err(Error::Capacity {
            what: "compressed dimension",
            needed: total,
            limit: cfg.capacity as u128,
        });
    }

    let mut unitary = true;
    let mut invariant = true;
    let mut compressed_rows: Vec<Vec<DenseOperator>> = vec![Vec::new(); t.len()];
    for (j, p) in isometries.iter().enumerate() {
        let r = p.ncols();
        for (row_idx, w) in t.column(j).enumerate() {
            let u = build_word(w, d).0;
            let up = &u * p;
            let c = p.adjoint() * &up;
            if (&up - p * &c).iter().any(|x| x.norm() > tol) {
                invariant = false;
            }
            let gram = c.adjoint() * &c;
            let scale = gram.trace().re / r as f64;
            let defect = (&gram - DMatrix::<C64>::identity(r, r) * C64::new(scale, 0.0))
                .iter()
                .map(|x| x.norm())
                .fold(0.0, f64::max);
            let normalized = if scale > tol && defect < tol {
                c / C64::new(scale.sqrt(), 0.0)
            } else {
                unitary = false;
                c
            };
            compressed_rows[row_idx].push(DenseOperator(normalized));
        }
    }

    let ops: Vec<DenseOperator> = compressed_rows.into_iter().map(kron_all).collect();
    let mut commuting = None;
    'outer: for i in 0..ops.len() {
        for k in i + 1..ops.len() {
            if ops[i].commutator_norm(&ops[k]) >= tol {
                commuting = Some(FailureWitness::NonCommuting {
                    rows: (i, k),
                    exponent: 0,
                });
                break 'outer;
            }
        }
    }
    let n = ops[0].dim();
    let product = ops.iter().fold(DenseOperator::identity(n), |acc, op| acc.mul(op));
    let phase = product.as_scalar(tol).and_then(|c| snap_phase(c, d, tol));
    let classical = check_classical_forced(t).err();
    let mut verdict = Verdict::assemble(commuting, phase, classical);
    if !(unitary && invariant) {
        verdict.is_paradox = false;
    }
    Ok(ProjectionVerdict {
        verdict,
        ranks,
        unitary,
        invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::catalog_entry;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn restrict_prc_to_first_three() {
        let t = catalog_entry("prc-5qubit").unwrap();
        let r = restrict(&t, &[0, 1, 2]).unwrap();
        let mermin = catalog_entry("mermin-3qubit").unwrap();
        assert_eq!(r.rows(), mermin.rows());
    }

    #[test]
    fn restrict_prc_to_last_two() {
        let t = catalog_entry("prc-5qubit").unwrap();
        let r = restrict(&t, &[3, 4]).unwrap();
        let e = ParadoxTable::parse(dim(2), &["X X", "Y Y"], "").unwrap();
        assert_eq!(r.rows(), e.rows());
        assert!(crate::paradox::check_commuting(&r).is_ok());
    }

    #[test]
    fn restrict_rejects_bad_subsets() {
        let t = catalog_entry("mermin-3qubit").unwrap();
        assert!(restrict(&t, &[]).is_err());
        assert!(restrict(&t, &[0, 1, 2]).is_err());
        assert!(restrict(&t, &[0, 5]).is_err());
    }

    #[test]
    fn dropping_an_identity_column_keeps_the_verdict() {
        let t = ParadoxTable::parse(dim(2), &["X X X I", "X Y Y I", "Y X Y I", "Y Y X I"], "").unwrap();
        let r = restrict(&t, &[0, 1, 2]).unwrap();
        assert_eq!(verify(&r), verify(&t));
    }

    #[test]
    fn min_dimension_examples() {
        let t = catalog_entry("example6-3ququat").unwrap();
        for j in 0..3 {
            assert_eq!(column_min_dimension(&t, j).unwrap(), 2);
        }
        let t = catalog_entry("ghz-ququat-5").unwrap();
        for j in 0..5 {
            assert_eq!(column_min_dimension(&t, j).unwrap(), 4);
        }
        let t = ParadoxTable::parse(dim(4), &["I X", "I X"], "").unwrap();
        assert_eq!(column_min_dimension(&t, 0).unwrap(), 1);
        assert_eq!(column_min_dimension(&t, 1).unwrap(), 1);
        assert!(column_min_dimension(&t, 2).is_err());
    }

    #[test]
    fn dimensional_reports() {
        let r = check_dimensional(&catalog_entry("example6-3ququat").unwrap());
        assert!(!r.genuine);
        assert_eq!(r.per_column_min_dim, vec![2, 2, 2]);
        assert!(check_dimensional(&catalog_entry("ghz-ququat-5").unwrap()).genuine);
        assert!(check_dimensional(&catalog_entry("example3-5qubit").unwrap()).genuine);
    }

    #[test]
    fn multipartite_guard() {
        let t = ParadoxTable::new(dim(2), vec![vec![EntryWord::x(1); 13]], "").unwrap();
        assert!(matches!(check_multipartite(&t), Err(Error::Capacity { .. })));
    }

    #[test]
    fn family_flags() {
        let fp = FamilyParams::odd_parties(5).unwrap();
        assert_eq!(check_family_genuineness(&fp).unwrap(), (true, true));
        let fp = FamilyParams::from_segments(3, dim(4), 1, 0, 1, 3, 2).unwrap();
        let (dimensional, _) = check_family_genuineness(&fp).unwrap();
        assert!(!dimensional);
    }

    #[test]
    fn projection_rejects_non_orthogonal() {
        let t = catalog_entry("example6-3ququat").unwrap();
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let bad = vec![vec![one, zero, zero, zero], vec![one, one, zero, zero]];
        let good = vec![vec![one, zero, zero, zero], vec![zero, one, zero, zero]];
        let err = project_and_verify(&t, &[bad, good.clone(), good], &OracleConfig::default()).unwrap_err();
        assert_eq!(err, Error::NonOrthogonal(0));
    }
}
