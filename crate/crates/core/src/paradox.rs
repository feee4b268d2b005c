//! GHZ paradox tables and their verification.
//!
//! A table has one row per operator and one column per party. Each entry is a
//! single base symbol raised to a power, the way the operators are written
//! down on paper. The base symbol is kept because the classical value
//! bookkeeping assigns one value per (party, base), and compiling `Y` into
//! `X^{d-1} Z` would erase that distinction.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{
    pow_unchecked, tensor_mul, Dimension, Monomial, PhaseExp, TensorMonomial,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    I,
    X,
    Y,
    Z,
}

impl Base {
    pub const NON_IDENTITY: [Base; 3] = [Base::X, Base::Y, Base::Z];

    pub fn letter(self) -> char {
        match self {
            Base::I => 'I',
            Base::X => 'X',
            Base::Y => 'Y',
            Base::Z => 'Z',
        }
    }

    pub fn generator(self, d: Dimension) -> Monomial {
        match self {
            Base::I => Monomial::IDENTITY,
            Base::X => Monomial::X,
            Base::Y => Monomial::y(d),
            Base::Z => Monomial::Z,
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Base {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(Base::I),
            "X" => Ok(Base::X),
            "Y" => Ok(Base::Y),
            "Z" => Ok(Base::Z),
            other => Err(Error::MalformedTable(format!("unknown base symbol `{other}`"))),
        }
    }
}

/// One table entry: `base^exp`, normalized so that `exp = 0` means `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EntryWord {
    pub base: Base,
    pub exp: u32,
}

impl EntryWord {
    pub const IDENTITY: EntryWord = EntryWord {
        base: Base::I,
        exp: 0,
    };

    /// Validates `exp < d`; `I` and exponent 0 both collapse to the identity.
    pub fn new(base: Base, exp: u32, d: Dimension) -> Result<Self> {
        if exp >= d.get() {
            return Err(Error::ExponentOutOfRange { exp, d: d.get() });
        }
        if base == Base::I || exp == 0 {
            return Ok(Self::IDENTITY);
        }
        Ok(EntryWord { base, exp })
    }

    pub fn x(exp: u32) -> Self {
        EntryWord { base: Base::X, exp }
    }

    pub fn y(exp: u32) -> Self {
        EntryWord { base: Base::Y, exp }
    }

    pub fn z(exp: u32) -> Self {
        EntryWord { base: Base::Z, exp }
    }

    pub fn is_identity(&self) -> bool {
        self.base == Base::I
    }

    fn validate(&self, d: Dimension) -> Result<()> {
        if self.exp >= d.get() {
            return Err(Error::ExponentOutOfRange {
                exp: self.exp,
                d: d.get(),
            });
        }
        if (self.base == Base::I) != (self.exp == 0) {
            return Err(Error::MalformedTable(format!(
                "entry {}^{} is not normalized",
                self.base, self.exp
            )));
        }
        Ok(())
    }

    pub fn compile(&self, d: Dimension) -> Result<Monomial> {
        self.validate(d)?;
        Ok(pow_unchecked(self.base.generator(d), self.exp as u64, d))
    }
}

impl fmt::Display for EntryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base, self.exp) {
            (Base::I, _) => write!(f, "I"),
            (b, 1) => write!(f, "{b}"),
            (b, e) => write!(f, "{b}^{e}"),
        }
    }
}

pub fn compile_row(row: &[EntryWord], d: Dimension) -> Result<TensorMonomial> {
    let parts = row.iter().map(|w| w.compile(d)).collect::<Result<Vec<_>>>()?;
    TensorMonomial::from_parts(d, parts)
}

/// `L` rows × `M` parties of entry words in dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParadoxTable {
    d: Dimension,
    parties: usize,
    rows: Vec<Vec<EntryWord>>,
    pub label: String,
}

impl ParadoxTable {
    /// Checks rectangularity and entry normalization. A table needs at least
    /// one party and one row; verification accepts single-row tables.
    pub fn new(d: Dimension, rows: Vec<Vec<EntryWord>>, label: impl Into<String>) -> Result<Self> {
        let parties = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() {
            return Err(Error::MalformedTable("table has no rows".into()));
        }
        if parties == 0 {
            return Err(Error::MalformedTable("table has no parties".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != parties {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {parties}",
                    row.len()
                )));
            }
            for w in row {
                w.validate(d)?;
            }
        }
        Ok(ParadoxTable {
            d,
            parties,
            rows,
            label: label.into(),
        })
    }

    /// Parses rows like `"X^3 Y Y I Y"`; entries separated by whitespace.
    pub fn parse(d: Dimension, rows: &[&str], label: impl Into<String>) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.split_whitespace().map(|w| parse_word(w, d)).collect())
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, rows, label)
    }

    pub fn dim(&self) -> Dimension {
        self.d
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<EntryWord>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = EntryWord> + '_ {
        self.rows.iter().map(move |r| r[j])
    }

    pub fn compiled(&self) -> Vec<TensorMonomial> {
        self.rows
            .iter()
            .map(|r| compile_row(r, self.d).expect("table entries are validated on construction"))
            .collect()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Same table with rows reordered by `order` (indices into the current rows).
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        ParadoxTable {
            rows: order.iter().map(|&i| self.rows[i].clone()).collect(),
            ..self.clone()
        }
    }

    /// Same table with party `j` of the result taken from party `perm[j]`.
    pub fn permute_parties(&self, perm: &[usize]) -> Self {
        ParadoxTable {
            rows: self
                .rows
                .iter()
                .map(|r| perm.iter().map(|&j| r[j]).collect())
                .collect(),
            ..self.clone()
        }
    }

    pub fn push_row(&mut self, row: Vec<EntryWord>) -> Result<()> {
        if row.len() != self.parties {
            return Err(Error::ArityMismatch {
                left: self.parties,
                right: row.len(),
            });
        }
        for w in &row {
            w.validate(self.d)?;
        }
        self.rows.push(row);
        Ok(())
    }
}

pub fn parse_word(word: &str, d: Dimension) -> Result<EntryWord> {
    let (base, exp) = match word.split_once('^') {
        Some((b, e)) => (
            b,
            e.parse::<u32>()
                .map_err(|_| Error::MalformedTable(format!("bad exponent in `{word}`")))?,
        ),
        None => (word, 1),
    };
    let base: Base = base.parse()?;
    let exp = if base == Base::I { 0 } else { exp };
    EntryWord::new(base, exp, d)
}

/// Why a table failed to be a paradox.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailureWitness {
    NonCommuting { rows: (usize, usize), exponent: u32 },
    NonScalarProduct,
    ClassicalUnforced { column: usize, base: Base, sum: u32 },
    TrivialPhase,
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureWitness::NonCommuting { rows, exponent } => write!(
                f,
                "rows {} and {} do not commute (phase exponent {exponent})",
                rows.0, rows.1
            ),
            FailureWitness::NonScalarProduct => write!(f, "row product is not a multiple of the identity"),
            FailureWitness::ClassicalUnforced { column, base, sum } => write!(
                f,
                "column {column}: {base}-exponents sum to {sum}, not a multiple of d"
            ),
            FailureWitness::TrivialPhase => write!(f, "row product is +1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub commuting: bool,
    /// `Some(φ)` iff the row product is `φ · 1`.
    pub quantum_phase: Option<PhaseExp>,
    pub scalar_product: bool,
    pub classical_forced: bool,
    pub is_paradox: bool,
    pub failure_witness: Option<FailureWitness>,
}

impl Verdict {
    pub(crate) fn assemble(
        commuting: Option<FailureWitness>,
        quantum_phase: Option<PhaseExp>,
        classical: Option<FailureWitness>,
    ) -> Self {
        let is_paradox = commuting.is_none()
            && classical.is_none()
            && quantum_phase.is_some_and(|p| !p.is_one());
        let failure_witness = commuting
            .clone()
            .or_else(|| quantum_phase.is_none().then_some(FailureWitness::NonScalarProduct))
            .or_else(|| classical.clone())
            .or_else(|| (!is_paradox).then_some(FailureWitness::TrivialPhase));
        Verdict {
            commuting: commuting.is_none(),
            quantum_phase,
            scalar_product: quantum_phase.is_some(),
            classical_forced: classical.is_none(),
            is_paradox,
            failure_witness,
        }
    }
}

/// `Ok(())` when all rows pairwise commute, else the first failing pair.
pub fn check_commuting(t: &ParadoxTable) -> std::result::Result<(), FailureWitness> {
    commuting_witness(&t.compiled())
}

pub(crate) fn commuting_witness(rows: &[TensorMonomial]) -> std::result::Result<(), FailureWitness> {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let kappa = rows[i]
                .commutation_exponent(&rows[j])
                .expect("rows of one table share shape");
            if kappa != 0 {
                return Err(FailureWitness::NonCommuting {
                    rows: (i, j),
                    exponent: kappa,
                });
            }
        }
    }
    Ok(())
}

/// Product of all rows in order; `Some(φ)` when it equals `φ · 1`.
pub fn quantum_product(t: &ParadoxTable) -> Option<PhaseExp> {
    row_product(&t.compiled(), t.dim(), t.parties()).as_scalar()
}

pub(crate) fn row_product(rows: &[TensorMonomial], d: Dimension, parties: usize) -> TensorMonomial {
    rows.iter().fold(TensorMonomial::identity(d, parties), |acc, r| {
        tensor_mul(&acc, r).expect("rows of one table share shape")
    })
}

/// Every column's per-base exponent sums vanish mod `d`, so any assignment of
/// `d`-th-root values to (party, base) multiplies out to `+1` over the rows.
pub fn check_classical_forced(t: &ParadoxTable) -> std::result::Result<(), FailureWitness> {
    let d = t.dim().get();
    for j in 0..t.parties() {
        for base in Base::NON_IDENTITY {
            let sum = t
                .column(j)
                .filter(|w| w.base == base)
                .map(|w| w.exp)
                .sum::<u32>()
                % d;
            if sum != 0 {
                return Err(FailureWitness::ClassicalUnforced { column: j, base, sum });
            }
        }
    }
    Ok(())
}

pub fn verify(t: &ParadoxTable) -> Verdict {
    let rows = t.compiled();
    let commuting = commuting_witness(&rows).err();
    let phase = row_product(&rows, t.dim(), t.parties()).as_scalar();
    let classical = check_classical_forced(t).err();
    Verdict::assemble(commuting, phase, classical)
}
