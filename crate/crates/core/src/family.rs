//! Parametrized paradox families and the built-in catalog.
//!
//! The odd-party family has `M + 1` rows:
//!
//! ```text
//! W_0 = X^a  X^a  ...  X^a
//! W_1 = X^b ×n | Y^c ×p | I ×q | Y^c ×p
//! W_k = W_1 cyclically shifted right by k-1 parties
//! ```
//!
//! with `2p = M - n - q`. The arithmetic conditions under which this is a
//! paradox are checked by [`validate_params`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paradox::{EntryWord, ParadoxTable};
use crate::weyl::{Dimension, PhaseExp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub parties: usize,
    pub d: Dimension,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl FamilyParams {
    /// Fills in `p` from `2p = M - n - q`; `None` if that has no solution.
    pub fn from_segments(
        parties: usize,
        d: Dimension,
        n: usize,
        q: usize,
        a: u32,
        b: u32,
        c: u32,
    ) -> Option<Self> {
        let rest = parties.checked_sub(n + q)?;
        (rest % 2 == 0).then_some(FamilyParams {
            parties,
            d,
            n,
            p: rest / 2,
            q,
            a,
            b,
            c,
        })
    }

    /// Parameters reproducing the `M`-party, `d = M - 1` table whose rows are
    /// `X…X` followed by `X^{d-1}` walking along a background of `Y`.
    pub fn odd_parties(parties: usize) -> Result<Self> {
        if parties < 3 || parties % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "party count must be odd and at least 3, got {parties}"
            )));
        }
        let d = Dimension::new(parties as u32 - 1)?;
        Ok(FamilyParams {
            parties,
            d,
            n: 1,
            p: (parties - 1) / 2,
            q: 0,
            a: 1,
            b: d.get() - 1,
            c: 1,
        })
    }

    /// The row-product phase `ω^{b·c·n·p·(M-n+1)}`, from the closed form.
    pub fn closed_form_phase(&self) -> PhaseExp {
        let d = self.d.get() as i64;
        let m_minus = self.parties as i64 - self.n as i64 + 1;
        let k = (self.b as i64 % d)
            * (self.c as i64 % d)
            % d
            * (self.n as i64 % d)
            % d
            * (self.p as i64 % d)
            % d
            * m_minus.rem_euclid(d)
            % d;
        PhaseExp::omega_pow(k, self.d)
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} M={} n={} p={} q={} a={} b={} c={}",
            self.d, self.parties, self.n, self.p, self.q, self.a, self.b, self.c
        )
    }
}

/// A condition the family parameters must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `a, b, c ∈ 1..d` and `n ≤ M`.
    ExponentRange,
    /// `2p = M - n - q`.
    SegmentLengths,
    /// `2pac = k·d`: `W_0` commutes with the shifted rows.
    FirstRowCommutes,
    /// `2pc = k'·d`: the `Y` exponents in every column sum to a multiple of `d`.
    YColumnsBalanced,
    /// `nb + a = k''·d`: the `X` exponents in every column sum to a multiple of `d`.
    XColumnsBalanced,
    /// `b·k'·n·(M-n+1)` odd: the row product is `-1`.
    OddProductPhase,
    /// Consequence: the number of parties is odd.
    PartiesOdd,
    /// Consequence: the dimension is even.
    DimensionEven,
    /// Consequence: `a` is odd.
    AOdd,
    /// Consequence: `q` is even.
    QEven,
}

impl Condition {
    pub const PRIMITIVE: [Condition; 6] = [
        Condition::ExponentRange,
        Condition::SegmentLengths,
        Condition::FirstRowCommutes,
        Condition::YColumnsBalanced,
        Condition::XColumnsBalanced,
        Condition::OddProductPhase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::ExponentRange => "exponent-range",
            Condition::SegmentLengths => "segment-lengths",
            Condition::FirstRowCommutes => "first-row-commutes",
            Condition::YColumnsBalanced => "y-columns-balanced",
            Condition::XColumnsBalanced => "x-columns-balanced",
            Condition::OddProductPhase => "odd-product-phase",
            Condition::PartiesOdd => "parties-odd",
            Condition::DimensionEven => "dimension-even",
            Condition::AOdd => "a-odd",
            Condition::QEven => "q-even",
        }
    }

    pub fn is_consequence(self) -> bool {
        !Self::PRIMITIVE.contains(&self)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub ok: bool,
    /// Least witnesses of the existential integers, when they exist.
    pub k: Option<u64>,
    pub k_prime: Option<u64>,
    pub k_dblprime: Option<u64>,
    pub l: Option<u64>,
    pub violated: Vec<Condition>,
}

impl FamilyCheck {
    /// True when none of the primitive conditions is violated.
    pub fn primitive_ok(&self) -> bool {
        self.violated.iter().all(|c| c.is_consequence())
    }
}

/// Checks the primitive arithmetic conditions, then independently re-checks
/// the parity consequences they should imply. Failures of either kind land in
/// `violated`.
pub fn validate_params(fp: &FamilyParams) -> FamilyCheck {
    let d = fp.d.get() as u64;
    let (m, n, p, q) = (fp.parties as u64, fp.n as u64, fp.p as u64, fp.q as u64);
    let (a, b, c) = (fp.a as u64, fp.b as u64, fp.c as u64);
    let mut violated = Vec::new();

    let in_range = |e: u64| (1..d).contains(&e);
    if !(in_range(a) && in_range(b) && in_range(c)) || n > m {
        violated.push(Condition::ExponentRange);
    }
    if n + q > m || 2 * p != m - n - q {
        violated.push(Condition::SegmentLengths);
    }

    let pac = 2 * p * a * c;
    let k = (pac % d == 0).then_some(pac / d);
    // k must be positive only when p·a·c > 0; p = 0 is caught below.
    if k.is_none() || (pac > 0 && k == Some(0)) {
        violated.push(Condition::FirstRowCommutes);
    }

    let pc = 2 * p * c;
    let k_prime = (pc % d == 0 && pc > 0).then_some(pc / d);
    if k_prime.is_none() {
        violated.push(Condition::YColumnsBalanced);
    }

    let xb = n * b + a;
    let k_dblprime = (xb % d == 0 && xb > 0).then_some(xb / d);
    if k_dblprime.is_none() {
        violated.push(Condition::XColumnsBalanced);
    }

    let l = k_prime.and_then(|kp| {
        let tail = (m + 1).checked_sub(n)?;
        let prod = b * kp * n * tail;
        (prod % 2 == 1).then(|| (prod - 1) / 2)
    });
    if l.is_none() {
        violated.push(Condition::OddProductPhase);
    }

    if m % 2 == 0 {
        violated.push(Condition::PartiesOdd);
    }
    if d % 2 == 1 {
        violated.push(Condition::DimensionEven);
    }
    if a % 2 == 0 {
        violated.push(Condition::AOdd);
    }
    if q % 2 == 1 {
        violated.push(Condition::QEven);
    }

    FamilyCheck {
        ok: violated.is_empty(),
        k,
        k_prime,
        k_dblprime,
        l,
        violated,
    }
}

fn rejected(fp: &FamilyParams, check: &FamilyCheck) -> Error {
    let names: Vec<_> = check.violated.iter().map(|c| c.name()).collect();
    Error::InvalidParams(format!("{fp}: violates {}", names.join(", ")))
}

/// Builds the `M + 1` row table for validated parameters.
pub fn generate(fp: &FamilyParams) -> Result<ParadoxTable> {
    let check = validate_params(fp);
    if !check.ok {
        return Err(rejected(fp, &check));
    }
    build_family_table(fp)
}

/// Same layout as [`generate`] but skipping the arithmetic conditions; only
/// the exponent ranges and segment lengths must make sense.
pub fn build_family_table(fp: &FamilyParams) -> Result<ParadoxTable> {
    let d = fp.d.get();
    let in_range = |e: u32| (1..d).contains(&e);
    if !(in_range(fp.a) && in_range(fp.b) && in_range(fp.c))
        || fp.n + 2 * fp.p + fp.q != fp.parties
    {
        return Err(Error::InvalidParams(format!("{fp}: malformed segments or exponents")));
    }
    let m = fp.parties;
    let mut first = Vec::with_capacity(m);
    first.extend(std::iter::repeat_n(EntryWord::x(fp.b), fp.n));
    first.extend(std::iter::repeat_n(EntryWord::y(fp.c), fp.p));
    first.extend(std::iter::repeat_n(EntryWord::IDENTITY, fp.q));
    first.extend(std::iter::repeat_n(EntryWord::y(fp.c), fp.p));

    let mut rows = vec![vec![EntryWord::x(fp.a); m]];
    for shift in 0..m {
        let mut row = first.clone();
        row.rotate_right(shift);
        rows.push(row);
    }
    ParadoxTable::new(fp.d, rows, format!("family {fp}"))
}

/// The `M = d + 2` party table with `M + 2` rows:
///
/// ```text
/// X        Y^{d-1}  ...  Y^{d-1}
/// X^{d-1}  Y        ...  Y
///   ...  X^{d-1} walks along the diagonal ...
/// Y        Y        ...  X^{d-1}
/// Y^{d-1}  X        ...  X
/// ```
pub fn generate_even_parties(d: Dimension) -> Result<ParadoxTable> {
    if !d.is_even() {
        return Err(Error::InvalidParams(format!(
            "even-party construction needs even d, got {d}"
        )));
    }
    let dm1 = d.get() - 1;
    let m = d.get() as usize + 2;
    let mut rows = Vec::with_capacity(m + 2);

    let mut top = vec![EntryWord::y(dm1); m];
    top[0] = EntryWord::x(1);
    rows.push(top);
    for k in 0..m {
        let mut row = vec![EntryWord::y(1); m];
        row[k] = EntryWord::x(dm1);
        rows.push(row);
    }
    let mut bottom = vec![EntryWord::x(1); m];
    bottom[0] = EntryWord::y(dm1);
    rows.push(bottom);

    ParadoxTable::new(d, rows, format!("even-parties d={d} M={m}"))
}

/// Per-`k` phase exponent (units of `iπ/d`) of the GHZ state shared by the
/// rows of [`generate_even_parties`]: `exp(-iπ·k(k+2)/d)`.
pub fn even_parties_state_phase(k: u32) -> i64 {
    -(k as i64) * (k as i64 + 2)
}

pub const ODD_PARTY_EXAMPLES: [usize; 3] = [3, 5, 7];
pub const EVEN_PARTY_EXAMPLES: [u32; 2] = [2, 4];

fn table(d: u32, rows: &[&str], label: &str) -> ParadoxTable {
    ParadoxTable::parse(Dimension::new(d).unwrap(), rows, label).expect("catalog tables are well formed")
}

fn named(name: &str) -> Option<ParadoxTable> {
    let t = match name {
        "ghz-ququat-5" => generate(&FamilyParams::odd_parties(5).ok()?).ok()?,
        "mermin-3qubit" => table(2, &["X X X", "X Y Y", "Y X Y", "Y Y X"], ""),
        "example3-5qubit" => {
            let d = Dimension::new(2).ok()?;
            generate(&FamilyParams::from_segments(5, d, 3, 0, 1, 1, 1)?).ok()?
        }
        "example4-5qubit-code" => {
            let d = Dimension::new(2).ok()?;
            generate(&FamilyParams::from_segments(5, d, 1, 2, 1, 1, 1)?).ok()?
        }
        "prc-5qubit" => table(2, &["X X X X X", "X Y Y X X", "Y X Y Y Y", "Y Y X Y Y"], ""),
        "example6-3ququat" => table(4, &["X X X", "X^3 Y^2 Y^2", "Y^2 X^3 Y^2", "Y^2 Y^2 X^3"], ""),
        _ => {
            if let Some(m) = name.strip_prefix("example2-m") {
                let m: usize = m.parse().ok()?;
                generate(&FamilyParams::odd_parties(m).ok()?).ok()?
            } else if let Some(d) = name.strip_prefix("example5-d") {
                let d = Dimension::new(d.parse().ok()?).ok()?;
                generate_even_parties(d).ok()?
            } else {
                return None;
            }
        }
    };
    Some(t.with_label(name))
}

/// Looks up a built-in table. Besides the fixed names, `example2-m<M>` (odd
/// `M ≥ 3`) and `example5-d<d>` (even `d`) are accepted for any size.
pub fn catalog_entry(name: &str) -> Result<ParadoxTable> {
    named(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn catalog_names() -> Vec<String> {
    let mut names = vec!["ghz-ququat-5".to_string(), "mermin-3qubit".to_string()];
    names.extend(ODD_PARTY_EXAMPLES.iter().map(|m| format!("example2-m{m}")));
    names.push("example3-5qubit".into());
    names.push("example4-5qubit-code".into());
    names.extend(EVEN_PARTY_EXAMPLES.iter().map(|d| format!("example5-d{d}")));
    names.push("prc-5qubit".into());
    names.push("example6-3ququat".into());
    names
}

pub fn catalog() -> Vec<(String, ParadoxTable)> {
    catalog_names()
        .into_iter()
        .map(|n| {
            let t = named(&n).expect("catalog names resolve");
            (n, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paradox::verify;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn fp(d: u32, m: usize, n: usize, q: usize, a: u32, b: u32, c: u32) -> FamilyParams {
        FamilyParams::from_segments(m, dim(d), n, q, a, b, c).unwrap()
    }

    #[test]
    fn flagship_params_validate() {
        let check = validate_params(&fp(4, 5, 1, 0, 1, 3, 1));
        assert!(check.ok, "{:?}", check.violated);
        assert_eq!(check.k_prime, Some(1));
        assert_eq!(check.k_dblprime, Some(1));
        assert_eq!(check.k, Some(1));
        assert_eq!(check.l, Some(7));
    }

    #[test]
    fn five_qubit_params_validate() {
        assert!(validate_params(&fp(2, 5, 3, 0, 1, 1, 1)).ok);
        assert!(validate_params(&fp(2, 5, 1, 2, 1, 1, 1)).ok);
    }

    #[test]
    fn odd_dimension_fails_parity() {
        for (m, n, q, a, b, c) in [(5, 1, 0, 1, 2, 1), (7, 1, 0, 2, 1, 2), (4, 1, 1, 1, 1, 1)] {
            let check = validate_params(&fp(3, m, n, q, a, b, c));
            assert!(!check.ok);
            assert!(check.violated.contains(&Condition::DimensionEven));
        }
    }

    #[test]
    fn segment_mismatch_is_reported() {
        let mut params = fp(4, 5, 1, 0, 1, 3, 1);
        params.p = 1;
        let check = validate_params(&params);
        assert!(check.violated.contains(&Condition::SegmentLengths));
    }

    #[test]
    fn generate_flagship_rows() {
        let t = generate(&fp(4, 5, 1, 0, 1, 3, 1)).unwrap();
        let expected = ParadoxTable::parse(
            dim(4),
            &[
                "X X X X X",
                "X^3 Y Y Y Y",
                "Y X^3 Y Y Y",
                "Y Y X^3 Y Y",
                "Y Y Y X^3 Y",
                "Y Y Y Y X^3",
            ],
            "",
        )
        .unwrap();
        assert_eq!(t.rows(), expected.rows());
    }

    #[test]
    fn generate_five_qubit_tables() {
        let t = generate(&fp(2, 5, 3, 0, 1, 1, 1)).unwrap();
        let e = ParadoxTable::parse(
            dim(2),
            &["X X X X X", "X X X Y Y", "Y X X X Y", "Y Y X X X", "X Y Y X X", "X X Y Y X"],
            "",
        )
        .unwrap();
        assert_eq!(t.rows(), e.rows());

        let t = generate(&fp(2, 5, 1, 2, 1, 1, 1)).unwrap();
        let e = ParadoxTable::parse(
            dim(2),
            &["X X X X X", "X Y I I Y", "Y X Y I I", "I Y X Y I", "I I Y X Y", "Y I I Y X"],
            "",
        )
        .unwrap();
        assert_eq!(t.rows(), e.rows());
    }

    #[test]
    fn generate_rejects_invalid() {
        let err = generate(&fp(3, 5, 1, 0, 1, 2, 1)).unwrap_err();
        assert!(err.to_string().contains("dimension-even"), "{err}");
    }

    #[test]
    fn even_parties_tables_are_paradoxes() {
        for d in [2, 4, 6] {
            let t = generate_even_parties(dim(d)).unwrap();
            assert_eq!(t.parties(), d as usize + 2);
            assert_eq!(t.len(), d as usize + 4);
            assert!(verify(&t).is_paradox, "d={d}");
        }
        assert!(generate_even_parties(dim(3)).is_err());
    }

    #[test]
    fn odd_party_tables_are_paradoxes() {
        for m in [3, 5, 7, 9, 11] {
            let t = generate(&FamilyParams::odd_parties(m).unwrap()).unwrap();
            assert!(verify(&t).is_paradox, "M={m}");
        }
        assert!(FamilyParams::odd_parties(4).is_err());
    }

    #[test]
    fn catalog_resolves() {
        for (name, t) in catalog() {
            assert_eq!(t.label, name);
        }
        assert_eq!(catalog_entry("example2-m3").unwrap().rows(), catalog_entry("mermin-3qubit").unwrap().rows());
        assert!(catalog_entry("example2-m4").is_err());
        assert!(matches!(catalog_entry("nope"), Err(Error::UnknownEntry(_))));
    }
}
