//! Exact arithmetic for generalized Pauli (Weyl) monomials on qudits.
//!
//! A single-party monomial is stored as `phase · X^x Z^z` with `0 ≤ x, z < d`
//! and the phase an exponent of the primitive `2d`-th root of unity, so the
//! represented scalar is `exp(iπ·s/d)`. `X` is the cyclic shift
//! `|k⟩ → |k+1 mod d⟩` and `Z = diag(ω^k)` with `ω = exp(2πi/d)`, giving
//! `Z^b X^a = ω^{ab} X^a Z^b`.
//!
//! `Y` is not a primitive: it is the monomial `exp(iπp/d) · X^{d-1} Z`, with
//! `p = d mod 2`, which makes `Y^d = 1` hold exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local dimension `d ≥ 2` of every party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    /// Largest supported local dimension. Keeps every intermediate product
    /// of exponents comfortably inside `u64`.
    pub const MAX: u32 = 1 << 16;

    pub fn new(d: u32) -> Result<Self> {
        if (2..=Self::MAX).contains(&d) {
            Ok(Self(d))
        } else {
            Err(Error::InvalidDimension(d))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `1` for even `d`, `0` for odd `d`; the exponent of the prefactor of `Y`.
    #[inline]
    pub fn parity(self) -> u32 {
        (self.0 % 2 == 0) as u32
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    /// Order of the phase group, `2d`.
    #[inline]
    pub fn phase_modulus(self) -> u32 {
        2 * self.0
    }

    fn check(self, other: Dimension) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Scalar `exp(iπ·s/d)`, stored as `s mod 2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhaseExp(u32);

impl PhaseExp {
    pub const ONE: PhaseExp = PhaseExp(0);

    pub fn new(s: i64, d: Dimension) -> Self {
        PhaseExp(s.rem_euclid(d.phase_modulus() as i64) as u32)
    }

    /// `-1`, which is `s = d`.
    pub fn minus_one(d: Dimension) -> Self {
        PhaseExp(d.get())
    }

    /// `ω^k = exp(2πik/d)`, which is `s = 2k`.
    pub fn omega_pow(k: i64, d: Dimension) -> Self {
        Self::new(2 * k, d)
    }

    #[inline]
    pub fn exponent(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, other: PhaseExp, d: Dimension) -> Self {
        PhaseExp((self.0 + other.0) % d.phase_modulus())
    }

    pub fn neg(self, d: Dimension) -> Self {
        PhaseExp((d.phase_modulus() - self.0) % d.phase_modulus())
    }

    /// `Some(k)` when the phase is the `d`-th root `ω^k`.
    pub fn as_dth_root(self) -> Option<u32> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }

    pub fn to_complex(self, d: Dimension) -> num_complex::Complex64 {
        let theta = std::f64::consts::PI * self.0 as f64 / d.get() as f64;
        num_complex::Complex64::from_polar(1.0, theta)
    }

    fn in_range(self, d: Dimension) -> bool {
        self.0 < d.phase_modulus()
    }
}

/// `phase · X^x Z^z` on one party, in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub phase: PhaseExp,
    pub x: u32,
    pub z: u32,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial {
        phase: PhaseExp::ONE,
        x: 0,
        z: 0,
    };

    /// Builds a canonical monomial from arbitrary integer exponents.
    pub fn new(phase: i64, x: i64, z: i64, d: Dimension) -> Self {
        let dd = d.get() as i64;
        Monomial {
            phase: PhaseExp::new(phase, d),
            x: x.rem_euclid(dd) as u32,
            z: z.rem_euclid(dd) as u32,
        }
    }

    pub const X: Monomial = Monomial {
        phase: PhaseExp::ONE,
        x: 1,
        z: 0,
    };

    pub const Z: Monomial = Monomial {
        phase: PhaseExp::ONE,
        x: 0,
        z: 1,
    };

    pub fn y(d: Dimension) -> Self {
        Monomial {
            phase: PhaseExp(d.parity()),
            x: d.get() - 1,
            z: 1,
        }
    }

    /// True for any scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// The same Pauli word with the phase stripped.
    pub fn unphased(&self) -> Self {
        Monomial {
            phase: PhaseExp::ONE,
            ..*self
        }
    }

    pub fn with_phase(&self, phase: PhaseExp) -> Self {
        Monomial { phase, ..*self }
    }

    pub fn is_canonical(&self, d: Dimension) -> bool {
        self.phase.in_range(d) && self.x < d.get() && self.z < d.get()
    }

    fn ensure_canonical(&self, d: Dimension) -> Result<()> {
        if self.is_canonical(d) {
            Ok(())
        } else {
            Err(Error::ExponentOutOfRange {
                exp: self.x.max(self.z).max(self.phase.0),
                d: d.get(),
            })
        }
    }

    pub fn inverse(&self, d: Dimension) -> Self {
        // (X^x Z^z)^{-1} = Z^{-z} X^{-x} = ω^{xz} X^{-x} Z^{-z}
        let xz = (self.x as u64 * self.z as u64) % d.get() as u64;
        Monomial::new(
            -(self.phase.0 as i64) + 2 * xz as i64,
            -(self.x as i64),
            -(self.z as i64),
            d,
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{}/d)·X^{}Z^{}", self.phase.0, self.x, self.z)
    }
}

/// Canonical product `lhs · rhs`.
///
/// Moving `Z^{z1}` past `X^{x2}` contributes `ω^{x2·z1}`, i.e. phase exponent
/// `2·x2·z1 mod 2d`.
pub fn monomial_mul(lhs: Monomial, rhs: Monomial, d: Dimension) -> Result<Monomial> {
    lhs.ensure_canonical(d)?;
    rhs.ensure_canonical(d)?;
    Ok(mul_unchecked(lhs, rhs, d))
}

#[inline]
pub(crate) fn mul_unchecked(lhs: Monomial, rhs: Monomial, d: Dimension) -> Monomial {
    let m = d.get() as u64;
    let modulus = d.phase_modulus() as u64;
    let reorder = (2 * rhs.x as u64 * lhs.z as u64) % modulus;
    Monomial {
        phase: PhaseExp(((lhs.phase.0 as u64 + rhs.phase.0 as u64 + reorder) % modulus) as u32),
        x: ((lhs.x as u64 + rhs.x as u64) % m) as u32,
        z: ((lhs.z as u64 + rhs.z as u64) % m) as u32,
    }
}

/// `m^k` in closed form: `(c·X^x Z^z)^k = c^k · ω^{xz·k(k-1)/2} · X^{kx} Z^{kz}`.
pub fn monomial_pow(m: Monomial, k: u64, d: Dimension) -> Result<Monomial> {
    m.ensure_canonical(d)?;
    Ok(pow_unchecked(m, k, d))
}

pub(crate) fn pow_unchecked(m: Monomial, k: u64, d: Dimension) -> Monomial {
    let dd = d.get() as u64;
    let modulus = d.phase_modulus() as u64;
    let k_mod = k % modulus;
    let km1_mod = (k + modulus - 1) % modulus;
    // ω^{xz·k(k-1)/2} has phase exponent xz·k(k-1), taken mod 2d.
    let pairs = (k_mod * km1_mod) % modulus;
    let xz = (m.x as u64 * m.z as u64) % modulus;
    let phase = (k_mod * m.phase.0 as u64 + xz * pairs) % modulus;
    Monomial {
        phase: PhaseExp(phase as u32),
        x: ((k % dd) * m.x as u64 % dd) as u32,
        z: ((k % dd) * m.z as u64 % dd) as u32,
    }
}

/// The `κ ∈ Z_d` with `m1·m2 = ω^κ · m2·m1`, namely `x2·z1 − x1·z2 mod d`.
pub fn commutation_exponent(m1: Monomial, m2: Monomial, d: Dimension) -> u32 {
    let dd = d.get() as u64;
    let a = (m2.x as u64 % dd) * (m1.z as u64 % dd) % dd;
    let b = (m1.x as u64 % dd) * (m2.z as u64 % dd) % dd;
    ((a + dd - b) % dd) as u32
}

/// Tensor product of single-party monomials with one global phase.
///
/// Parts are kept phase-free; all scalars live in `phase`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorMonomial {
    pub dim: Dimension,
    pub phase: PhaseExp,
    parts: Vec<Monomial>,
}

impl TensorMonomial {
    /// Folds the part phases into the global phase.
    pub fn from_parts(dim: Dimension, parts: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut phase = PhaseExp::ONE;
        let mut out = Vec::new();
        for part in parts {
            part.ensure_canonical(dim)?;
            phase = phase.add(part.phase, dim);
            out.push(part.unphased());
        }
        Ok(TensorMonomial {
            dim,
            phase,
            parts: out,
        })
    }

    pub fn identity(dim: Dimension, parties: usize) -> Self {
        TensorMonomial {
            dim,
            phase: PhaseExp::ONE,
            parts: vec![Monomial::IDENTITY; parties],
        }
    }

    pub fn parties(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Monomial] {
        &self.parts
    }

    /// `Some(phase)` when the operator is `phase · 1`.
    pub fn as_scalar(&self) -> Option<PhaseExp> {
        self.parts.iter().all(Monomial::is_scalar).then_some(self.phase)
    }

    fn check(&self, other: &TensorMonomial) -> Result<()> {
        self.dim.check(other.dim)?;
        if self.parts.len() != other.parts.len() {
            return Err(Error::ArityMismatch {
                left: self.parts.len(),
                right: other.parts.len(),
            });
        }
        Ok(())
    }

    /// Sum over parties of the single-party commutation exponents.
    pub fn commutation_exponent(&self, other: &TensorMonomial) -> Result<u32> {
        self.check(other)?;
        let dd = self.dim.get() as u64;
        let total = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| commutation_exponent(*a, *b, self.dim) as u64)
            .sum::<u64>();
        Ok((total % dd) as u32)
    }
}

pub fn tensor_mul(a: &TensorMonomial, b: &TensorMonomial) -> Result<TensorMonomial> {
    a.check(b)?;
    let d = a.dim;
    let mut phase = a.phase.add(b.phase, d);
    let parts = a
        .parts
        .iter()
        .zip(&b.parts)
        .map(|(l, r)| {
            let p = mul_unchecked(*l, *r, d);
            phase = phase.add(p.phase, d);
            p.unphased()
        })
        .collect();
    Ok(TensorMonomial {
        dim: d,
        phase,
        parts,
    })
}

pub fn tensor_commute(a: &TensorMonomial, b: &TensorMonomial) -> Result<bool> {
    Ok(a.commutation_exponent(b)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(Dimension::new(1), Err(Error::InvalidDimension(1)));
        assert!(Dimension::new(0).is_err());
    }

    #[test]
    fn x_times_y_at_d4() {
        let d = dim(4);
        let xy = monomial_mul(Monomial::X, Monomial::y(d), d).unwrap();
        assert_eq!(xy, Monomial::new(1, 0, 1, d));
        let yx = monomial_mul(Monomial::y(d), Monomial::X, d).unwrap();
        assert_eq!(yx, Monomial::new(3, 0, 1, d));
    }

    #[test]
    fn y_encoding_at_d4() {
        let d = dim(4);
        assert_eq!(Monomial::y(d), Monomial::new(1, 3, 1, d));
    }

    #[test]
    fn identity_is_neutral() {
        for d in 2..8 {
            let d = dim(d);
            let id = Monomial::IDENTITY;
            assert_eq!(monomial_mul(id, id, d).unwrap(), id);
        }
    }

    #[test]
    fn y_to_the_fourth_by_repeated_products() {
        let d = dim(4);
        let y = Monomial::y(d);
        let mut acc = Monomial::IDENTITY;
        for _ in 0..4 {
            acc = monomial_mul(acc, y, d).unwrap();
        }
        assert_eq!(acc, Monomial::IDENTITY);
    }

    #[test]
    fn order_relations_hold_symbolically() {
        for d in 2..=8 {
            let d = dim(d);
            for gen in [Monomial::X, Monomial::y(d), Monomial::Z] {
                assert_eq!(monomial_pow(gen, d.get() as u64, d).unwrap(), Monomial::IDENTITY);
            }
        }
    }

    #[test]
    fn pow_zero_and_large() {
        let d = dim(6);
        let m = Monomial::new(5, 2, 3, d);
        assert_eq!(monomial_pow(m, 0, d).unwrap(), Monomial::IDENTITY);
        let mut acc = Monomial::IDENTITY;
        for k in 0..50u64 {
            assert_eq!(monomial_pow(m, k, d).unwrap(), acc);
            acc = monomial_mul(acc, m, d).unwrap();
        }
        // Period divides 2d * d; very large k must agree with its residue.
        let big = 1_000_000_007u64 * 12;
        assert_eq!(
            monomial_pow(m, big + 7, d).unwrap(),
            monomial_pow(m, 7, d).unwrap()
        );
    }

    #[test]
    fn commutation_examples() {
        let d = dim(4);
        let x = Monomial::X;
        let y = Monomial::y(d);
        assert_eq!(commutation_exponent(y, x, d), 1);
        assert_eq!(commutation_exponent(x, y, d), 3);
        let y2 = monomial_pow(y, 2, d).unwrap();
        assert_eq!(commutation_exponent(x, y2, d), 2);
        assert_eq!(commutation_exponent(y2, y2, d), 0);
    }

    #[test]
    fn mismatched_dimension_is_rejected() {
        let d4 = dim(4);
        let d2 = dim(2);
        let y4 = Monomial::y(d4);
        assert!(monomial_mul(y4, Monomial::IDENTITY, d2).is_err());
        let a = TensorMonomial::identity(d4, 2);
        let b = TensorMonomial::identity(d2, 2);
        assert!(matches!(tensor_mul(&a, &b), Err(Error::DimensionMismatch { .. })));
        let c = TensorMonomial::identity(d4, 3);
        assert!(matches!(tensor_commute(&a, &c), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn single_party_x_y_do_not_commute() {
        let d = dim(4);
        let a = TensorMonomial::from_parts(d, [Monomial::X]).unwrap();
        let b = TensorMonomial::from_parts(d, [Monomial::y(d)]).unwrap();
        assert!(!tensor_commute(&a, &b).unwrap());
        assert!(tensor_commute(&a, &a).unwrap());
    }

    #[test]
    fn inverse_round_trips() {
        for d in 2..8 {
            let d = dim(d);
            for s in 0..d.phase_modulus() as i64 {
                for x in 0..d.get() as i64 {
                    for z in 0..d.get() as i64 {
                        let m = Monomial::new(s, x, z, d);
                        let inv = m.inverse(d);
                        assert_eq!(monomial_mul(m, inv, d).unwrap(), Monomial::IDENTITY);
                        assert_eq!(monomial_mul(inv, m, d).unwrap(), Monomial::IDENTITY);
                    }
                }
            }
        }
    }
}
