//! Bounded searches for paradox tables.
//!
//! Two modes:
//!
//! * `Family` walks the parametrised family in lexicographic order of
//!   `(d, M, n, q, a, b, c)` and keeps parameter sets that validate.
//! * `Exhaustive` enumerates every set of pairwise-commuting rows built from
//!   single-base entries (`I`, `X^e`, `Y^e`, `Z^e`) for tiny `(d, M)`.
//!
//! Results are deterministic: they do not depend on thread scheduling.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::ParadoxDocument;
use crate::error::{Error, Result};
use crate::family::{build_family_table, validate_params, FamilyCheck, FamilyParams};
use crate::genuine::{check_dimensional, is_genuine_multipartite, DimensionReport, MULTIPARTITE_GUARD};
use crate::paradox::{compile_row, verify, Base, EntryWord, ParadoxTable, Verdict};
use crate::weyl::{tensor_mul, Dimension, TensorMonomial};

pub const MAX_SEARCH_DIMENSION: u32 = 64;
/// Exhaustive mode needs `d^M` at or below this.
pub const EXHAUSTIVE_HILBERT_LIMIT: u64 = 4096;
pub const EXHAUSTIVE_ROW_LIMIT: usize = 8192;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;
/// Party count above which canonical forms are not attempted.
pub const CANONICAL_PARTY_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Family,
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub mode: SearchMode,
    pub d_min: u32,
    pub d_max: u32,
    pub m_min: usize,
    pub m_max: usize,
    /// Upper bound on `a, b, c` (family) or on entry exponents (exhaustive).
    #[serde(default)]
    pub exp_max: Option<u32>,
    /// Exhaustive mode only; defaults to and may not exceed `M + 2`.
    #[serde(default)]
    pub max_rows: Option<usize>,
    /// Family mode only: also report parameter sets that fail validation.
    #[serde(default)]
    pub include_all: bool,
    #[serde(default = "default_true")]
    pub dedupe: bool,
    #[serde(default = "default_budget")]
    pub node_budget: u64,
}

fn default_true() -> bool {
    true
}

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

impl SearchSpec {
    pub fn family(d: (u32, u32), m: (usize, usize)) -> Self {
        SearchSpec {
            mode: SearchMode::Family,
            d_min: d.0,
            d_max: d.1,
            m_min: m.0,
            m_max: m.1,
            exp_max: None,
            max_rows: None,
            include_all: false,
            dedupe: true,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn exhaustive(d: (u32, u32), m: (usize, usize)) -> Self {
        SearchSpec {
            mode: SearchMode::Exhaustive,
            ..Self::family(d, m)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSearch(msg));
        if self.d_min < 2 || self.d_min > self.d_max {
            return bad(format!("dimension range {}..={} is empty or below 2", self.d_min, self.d_max));
        }
        if self.d_max > MAX_SEARCH_DIMENSION {
            return bad(format!("d_max {} exceeds {MAX_SEARCH_DIMENSION}", self.d_max));
        }
        if self.m_min < 2 || self.m_min > self.m_max {
            return bad(format!("party range {}..={} is empty or below 2", self.m_min, self.m_max));
        }
        if self.exp_max == Some(0) {
            return bad("exp_max must be at least 1".into());
        }
        match self.mode {
            SearchMode::Family => {
                if self.m_max > MULTIPARTITE_GUARD {
                    return bad(format!("m_max {} exceeds {MULTIPARTITE_GUARD}", self.m_max));
                }
                if self.max_rows.is_some() {
                    return bad("max_rows applies to exhaustive mode only".into());
                }
            }
            SearchMode::Exhaustive => {
                if self.include_all {
                    return bad("include_all applies to family mode only".into());
                }
                let hilbert = (self.d_max as u64).checked_pow(self.m_max as u32);
                if hilbert.is_none_or(|h| h > EXHAUSTIVE_HILBERT_LIMIT) {
                    return bad(format!(
                        "d^M up to {}^{} exceeds {EXHAUSTIVE_HILBERT_LIMIT}",
                        self.d_max, self.m_max
                    ));
                }
                if let Some(l) = self.max_rows {
                    if l < 2 || l > self.m_min + 2 {
                        return bad(format!("max_rows {l} must lie in 2..=M+2 for every M searched"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub table: ParadoxTable,
    pub params: Option<FamilyParams>,
    pub check: Option<FamilyCheck>,
    pub verdict: Verdict,
    /// Rows-fixed multipartite genuineness; `None` for non-paradoxes.
    pub genuine_multipartite: Option<bool>,
    pub dimension: DimensionReport,
}

impl SearchResult {
    fn assess(table: ParadoxTable, params: Option<FamilyParams>, check: Option<FamilyCheck>) -> Result<Self> {
        let verdict = verify(&table);
        let genuine_multipartite = if verdict.is_paradox {
            Some(is_genuine_multipartite(&table)?)
        } else {
            None
        };
        let dimension = check_dimensional(&table);
        Ok(SearchResult {
            table,
            params,
            check,
            verdict,
            genuine_multipartite,
            dimension,
        })
    }

    /// Paradox, genuinely multipartite and genuinely `d`-dimensional.
    pub fn is_genuine(&self) -> bool {
        self.verdict.is_paradox && self.genuine_multipartite == Some(true) && self.dimension.genuine
    }

    pub fn to_json_line(&self) -> String {
        let value = serde_json::json!({
            "table": ParadoxDocument::from_table(&self.table),
            "params": self.params,
            "check": self.check,
            "verdict": self.verdict,
            "genuine_multipartite": self.genuine_multipartite,
            "dimension": self.dimension,
            "genuine": self.is_genuine(),
        });
        serde_json::to_string(&value).expect("results serialize")
    }
}

pub fn run_search(spec: &SearchSpec) -> Result<Vec<SearchResult>> {
    match spec.mode {
        SearchMode::Family => enumerate_family(spec),
        SearchMode::Exhaustive => enumerate_exhaustive(spec),
    }
}

/// Every structurally valid parameter set in range, in lexicographic order of
/// `(d, M, n, q, a, b, c)`.
pub fn family_parameters(spec: &SearchSpec) -> Result<Vec<FamilyParams>> {
    let mut out = Vec::new();
    for d in spec.d_min..=spec.d_max {
        let dim = Dimension::new(d)?;
        let top = spec.exp_max.map_or(d - 1, |e| e.min(d - 1));
        for m in spec.m_min..=spec.m_max {
            for n in 0..=m {
                for q in 0..=m - n {
                    for a in 1..=top {
                        for b in 1..=top {
                            for c in 1..=top {
                                if let Some(fp) = FamilyParams::from_segments(m, dim, n, q, a, b, c) {
                                    out.push(fp);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn enumerate_family(spec: &SearchSpec) -> Result<Vec<SearchResult>> {
    spec.validate()?;
    if spec.mode != SearchMode::Family {
        return Err(Error::InvalidSearch("expected a family-mode spec".into()));
    }
    let params = family_parameters(spec)?;
    let results: Vec<Option<SearchResult>> = params
        .par_iter()
        .map(|fp| {
            let check = validate_params(fp);
            if !check.ok && !spec.include_all {
                return Ok(None);
            }
            let table = build_family_table(fp)?;
            SearchResult::assess(table, Some(*fp), Some(check)).map(Some)
        })
        .collect::<Result<_>>()?;
    let results: Vec<SearchResult> = results.into_iter().flatten().collect();
    if spec.dedupe {
        dedupe(results)
    } else {
        Ok(results)
    }
}

/// Drops results whose tables share a canonical form, keeping the first.
pub fn dedupe(results: Vec<SearchResult>) -> Result<Vec<SearchResult>> {
    let keys: Vec<CanonicalKey> = results
        .par_iter()
        .map(|r| canonical_key(&r.table))
        .collect::<Result<_>>()?;
    let mut seen = std::collections::HashSet::new();
    Ok(results
        .into_iter()
        .zip(keys)
        .filter_map(|(r, k)| seen.insert(k).then_some(r))
        .collect())
}

/// `(d, M, L, entries)` with entries laid out column by column.
pub type CanonicalKey = (u32, usize, usize, Vec<u32>);

fn entry_code(w: EntryWord, d: u32) -> u32 {
    let b = match w.base {
        Base::I => 0,
        Base::X => 1,
        Base::Y => 2,
        Base::Z => 3,
    };
    b * d + w.exp
}

/// Lexicographically least column-major serialization over all party
/// permutations and all row orders.
///
/// Rows are sorted for each party order, so column `k` of the serialization
/// depends only on the first `k + 1` chosen parties; that makes a
/// branch-and-bound over party orders exact.
pub fn canonical_key(t: &ParadoxTable) -> Result<CanonicalKey> {
    Ok(canonical_form_codes(t)?.0)
}

/// The table rewritten in its canonical party and row order.
pub fn canonical_form(t: &ParadoxTable) -> Result<ParadoxTable> {
    let (_, perm) = canonical_form_codes(t)?;
    let mut rows: Vec<Vec<EntryWord>> = t
        .rows()
        .iter()
        .map(|r| perm.iter().map(|&j| r[j]).collect())
        .collect();
    let d = t.dim().get();
    rows.sort_by(|x, y| {
        let cx: Vec<u32> = x.iter().map(|w| entry_code(*w, d)).collect();
        let cy: Vec<u32> = y.iter().map(|w| entry_code(*w, d)).collect();
        cx.cmp(&cy)
    });
    ParadoxTable::new(t.dim(), rows, t.label.clone())
}

fn canonical_form_codes(t: &ParadoxTable) -> Result<(CanonicalKey, Vec<usize>)> {
    let m = t.parties();
    if m > CANONICAL_PARTY_GUARD {
        return Err(Error::Capacity {
            what: "parties for canonical form",
            needed: m as u128,
            limit: CANONICAL_PARTY_GUARD as u128,
        });
    }
    let d = t.dim().get();
    let codes: Vec<Vec<u32>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(|w| entry_code(*w, d)).collect())
        .collect();
    let mut state = Canon {
        codes: &codes,
        best: None,
        best_perm: Vec::new(),
    };
    let groups = vec![(0..codes.len()).collect::<Vec<_>>()];
    let mut used = vec![false; m];
    state.descend(&groups, &mut Vec::new(), &mut Vec::new(), &mut used);
    let key = state.best.expect("at least one party");
    Ok(((d, m, t.len(), key), state.best_perm))
}

struct Canon<'a> {
    codes: &'a [Vec<u32>],
    best: Option<Vec<u32>>,
    best_perm: Vec<usize>,
}

impl Canon<'_> {
    /// `groups` are runs of rows equal on the chosen parties, in sorted order.
    fn descend(&mut self, groups: &[Vec<usize>], prefix: &mut Vec<u32>, perm: &mut Vec<usize>, used: &mut [bool]) {
        let m = used.len();
        if perm.len() == m {
            if self.best.as_ref().is_none_or(|b| prefix[..] < b[..]) {
                self.best = Some(prefix.clone());
                self.best_perm = perm.clone();
            }
            return;
        }
        for c in 0..m {
            if used[c] {
                continue;
            }
            let mut next = Vec::with_capacity(groups.len());
            let start = prefix.len();
            for g in groups {
                let mut g = g.clone();
                g.sort_by_key(|&r| self.codes[r][c]);
                let mut run: Vec<usize> = Vec::new();
                for &r in &g {
                    prefix.push(self.codes[r][c]);
                    if let Some(&last) = run.last() {
                        if self.codes[last][c] != self.codes[r][c] {
                            next.push(std::mem::take(&mut run));
                        }
                    }
                    run.push(r);
                }
                next.push(run);
            }
            let worse = self
                .best
                .as_ref()
                .is_some_and(|b| prefix[..] > b[..prefix.len()]);
            if !worse {
                used[c] = true;
                perm.push(c);
                self.descend(&next, prefix, perm, used);
                perm.pop();
                used[c] = false;
            }
            prefix.truncate(start);
        }
    }
}

/// Single-base entries usable in exhaustive mode, in `EntryWord` order.
fn alphabet(d: u32, exp_max: Option<u32>) -> Vec<EntryWord> {
    let top = exp_max.map_or(d - 1, |e| e.min(d - 1));
    let mut words = vec![EntryWord::IDENTITY];
    for base in Base::NON_IDENTITY {
        for e in 1..=top {
            words.push(EntryWord { base, exp: e });
        }
    }
    words.sort();
    words
}

struct RowData {
    words: Vec<Vec<EntryWord>>,
    compiled: Vec<TensorMonomial>,
    /// `(column * 3 + base - 1, exp)` for each non-identity entry.
    contributions: Vec<Vec<(usize, u32)>>,
    /// `commute[i]` has bit `j` set when rows `i` and `j` commute and `j > i`.
    commute: Vec<Vec<u64>>,
}

fn row_data(d: Dimension, m: usize, exp_max: Option<u32>) -> Result<RowData> {
    let alpha = alphabet(d.get(), exp_max);
    let total = (alpha.len() as u128).pow(m as u32) - 1;
    if total > EXHAUSTIVE_ROW_LIMIT as u128 {
        return Err(Error::Capacity {
            what: "candidate rows",
            needed: total,
            limit: EXHAUSTIVE_ROW_LIMIT as u128,
        });
    }
    // index 0 is the all-identity row; party 0 is the most significant digit
    let base = alpha.len();
    let words: Vec<Vec<EntryWord>> = (1..=total as usize)
        .map(|mut code| {
            let mut row = vec![EntryWord::IDENTITY; m];
            for slot in row.iter_mut().rev() {
                *slot = alpha[code % base];
                code /= base;
            }
            row
        })
        .collect();
    let compiled: Vec<TensorMonomial> = words
        .iter()
        .map(|r| compile_row(r, d))
        .collect::<Result<_>>()?;
    let contributions = words
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, w)| w.base != Base::I)
                .map(|(j, w)| (j * 3 + w.base as usize - 1, w.exp))
                .collect()
        })
        .collect();
    let n = words.len();
    let blocks = n.div_ceil(64);
    let commute = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut bits = vec![0u64; blocks];
            for j in i + 1..n {
                let kappa = compiled[i]
                    .commutation_exponent(&compiled[j])
                    .expect("rows share shape");
                if kappa == 0 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    Ok(RowData {
        words,
        compiled,
        contributions,
        commute,
    })
}

struct Walk<'a> {
    data: &'a RowData,
    d: Dimension,
    m: usize,
    max_rows: usize,
    nodes: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
    hits: Vec<Vec<usize>>,
}

impl Walk<'_> {
    fn extend(&mut self, chosen: &mut Vec<usize>, cand: &[u64], sums: &mut [u32]) {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        let d = self.d.get();
        if chosen.len() >= 2 && sums.iter().all(|&s| s % d == 0) {
            let product = chosen.iter().fold(TensorMonomial::identity(self.d, self.m), |acc, &r| {
                tensor_mul(&acc, &self.data.compiled[r]).expect("rows share shape")
            });
            if product.as_scalar().is_some_and(|p| !p.is_one()) {
                self.hits.push(chosen.clone());
            }
        }
        if chosen.len() == self.max_rows {
            return;
        }
        for (blk, &word) in cand.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let j = blk * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next: Vec<u64> = cand
                    .iter()
                    .zip(&self.data.commute[j])
                    .map(|(a, b)| a & b)
                    .collect();
                for &(k, e) in &self.data.contributions[j] {
                    sums[k] += e;
                }
                chosen.push(j);
                self.extend(chosen, &next, sums);
                chosen.pop();
                for &(k, e) in &self.data.contributions[j] {
                    sums[k] -= e;
                }
            }
        }
    }
}

/// All paradoxes whose rows are distinct, pairwise-commuting, single-base
/// rows, with `2 ≤ L ≤ max_rows`.
pub fn enumerate_exhaustive(spec: &SearchSpec) -> Result<Vec<SearchResult>> {
    spec.validate()?;
    if spec.mode != SearchMode::Exhaustive {
        return Err(Error::InvalidSearch("expected an exhaustive-mode spec".into()));
    }
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut out = Vec::new();
    for d in spec.d_min..=spec.d_max {
        let dim = Dimension::new(d)?;
        for m in spec.m_min..=spec.m_max {
            let data = row_data(dim, m, spec.exp_max)?;
            let max_rows = spec.max_rows.unwrap_or(m + 2).min(m + 2);
            let branches: Vec<Vec<Vec<usize>>> = (0..data.words.len())
                .into_par_iter()
                .map(|i| {
                    let mut walk = Walk {
                        data: &data,
                        d: dim,
                        m,
                        max_rows,
                        nodes: &nodes,
                        budget: spec.node_budget,
                        aborted: &aborted,
                        hits: Vec::new(),
                    };
                    let mut sums = vec![0u32; 3 * m];
                    for &(k, e) in &data.contributions[i] {
                        sums[k] += e;
                    }
                    walk.extend(&mut vec![i], &data.commute[i], &mut sums);
                    walk.hits
                })
                .collect();
            if aborted.load(Ordering::Relaxed) {
                return Err(Error::Capacity {
                    what: "search nodes",
                    needed: nodes.load(Ordering::Relaxed) as u128,
                    limit: spec.node_budget as u128,
                });
            }
            let tables: Vec<ParadoxTable> = branches
                .into_iter()
                .flatten()
                .map(|rows| {
                    let words = rows.iter().map(|&r| data.words[r].clone()).collect();
                    ParadoxTable::new(dim, words, "")
                })
                .collect::<Result<_>>()?;
            let mut tables = if spec.dedupe {
                let keyed: Vec<(CanonicalKey, ParadoxTable)> = tables
                    .into_par_iter()
                    .map(|t| Ok((canonical_key(&t)?, canonical_form(&t)?)))
                    .collect::<Result<_>>()?;
                keyed.into_iter().collect::<BTreeMap<_, _>>().into_values().collect()
            } else {
                tables
            };
            for (k, t) in tables.iter_mut().enumerate() {
                t.label = format!("exhaustive d={d} M={m} #{}", k + 1);
            }
            let assessed: Vec<SearchResult> = tables
                .into_par_iter()
                .map(|t| SearchResult::assess(t, None, None))
                .collect::<Result<_>>()?;
            out.extend(assessed);
        }
    }
    Ok(out)
}

/// Tally of the predicate `d` even and `d < M` over genuine paradoxes found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub spec: SearchSpec,
    pub scope: String,
    pub paradoxes: usize,
    pub genuine: usize,
    pub satisfying: usize,
    /// `d -> (paradoxes, genuine)`.
    pub per_dimension: BTreeMap<u32, (usize, usize)>,
    pub counterexamples: Vec<SearchResult>,
    pub conclusion: String,
}

impl ConjectureReport {
    pub fn consistent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn conjecture_scan(spec: &SearchSpec) -> Result<ConjectureReport> {
    Ok(conjecture_report(spec, run_search(spec)?))
}

/// Tallies already computed search results against the conjecture.
pub fn conjecture_report(spec: &SearchSpec, results: Vec<SearchResult>) -> ConjectureReport {
    let mut per_dimension: BTreeMap<u32, (usize, usize)> =
        (spec.d_min..=spec.d_max).map(|d| (d, (0, 0))).collect();
    let mut counterexamples = Vec::new();
    let (mut paradoxes, mut genuine, mut satisfying) = (0, 0, 0);
    for r in results {
        if !r.verdict.is_paradox {
            continue;
        }
        paradoxes += 1;
        let slot = per_dimension.entry(r.table.dim().get()).or_default();
        slot.0 += 1;
        if !r.is_genuine() {
            continue;
        }
        genuine += 1;
        slot.1 += 1;
        let d = r.table.dim().get() as usize;
        if d % 2 == 0 && d < r.table.parties() {
            satisfying += 1;
        } else {
            counterexamples.push(r);
        }
    }
    let scope = match spec.mode {
        SearchMode::Family => format!(
            "family-restricted search, d in {}..={}, M in {}..={}",
            spec.d_min, spec.d_max, spec.m_min, spec.m_max
        ),
        SearchMode::Exhaustive => format!(
            "exhaustive single-base search, d in {}..={}, M in {}..={}, at most M+2 rows",
            spec.d_min, spec.d_max, spec.m_min, spec.m_max
        ),
    };
    let conclusion = if counterexamples.is_empty() {
        format!("consistent within searched bounds ({scope}); not a proof")
    } else {
        format!("{} counterexample(s) found ({scope})", counterexamples.len())
    };
    ConjectureReport {
        spec: spec.clone(),
        scope,
        paradoxes,
        genuine,
        satisfying,
        per_dimension,
        counterexamples,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::catalog_entry;

    #[test]
    fn rejects_unbounded_specs() {
        assert!(SearchSpec::family((2, 100), (3, 5)).validate().is_err());
        assert!(SearchSpec::family((2, 4), (3, 40)).validate().is_err());
        assert!(SearchSpec::exhaustive((2, 2), (3, 13)).validate().is_err());
        let mut s = SearchSpec::exhaustive((2, 2), (3, 3));
        s.max_rows = Some(6);
        assert!(s.validate().is_err());
    }

    #[test]
    fn family_scan_finds_flagship() {
        let results = enumerate_family(&SearchSpec::family((4, 4), (5, 5))).unwrap();
        let flagship = catalog_entry("ghz-ququat-5").unwrap();
        let key = canonical_key(&flagship).unwrap();
        assert!(results.iter().all(|r| r.verdict.is_paradox));
        assert!(results.iter().any(|r| canonical_key(&r.table).unwrap() == key));
    }

    #[test]
    fn canonical_form_ignores_order() {
        let t = catalog_entry("ghz-ququat-5").unwrap();
        let shuffled = t.permute_rows(&[3, 1, 5, 0, 2, 4]).permute_parties(&[2, 4, 0, 1, 3]);
        assert_eq!(canonical_key(&t).unwrap(), canonical_key(&shuffled).unwrap());
        assert_eq!(canonical_form(&t).unwrap().rows(), canonical_form(&shuffled).unwrap().rows());
        let other = catalog_entry("mermin-3qubit").unwrap();
        assert_ne!(canonical_key(&t).unwrap(), canonical_key(&other).unwrap());
    }

    #[test]
    fn exhaustive_three_qubits_contains_mermin() {
        let results = enumerate_exhaustive(&SearchSpec::exhaustive((2, 2), (3, 3))).unwrap();
        let mermin = canonical_key(&catalog_entry("mermin-3qubit").unwrap()).unwrap();
        assert!(results.iter().all(|r| r.verdict.is_paradox));
        assert!(results.iter().any(|r| canonical_key(&r.table).unwrap() == mermin));
    }

    #[test]
    fn node_budget_is_enforced() {
        let mut s = SearchSpec::exhaustive((2, 2), (3, 3));
        s.node_budget = 10;
        assert!(matches!(enumerate_exhaustive(&s), Err(Error::Capacity { .. })));
    }
}
